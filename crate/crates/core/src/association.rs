//! Silent/fast/slow role assignment and master selection.
//!
//! Hexagonal masters form the lattice `{(iτ, jτ) : i + j ≡ 0 mod 3}`, anchored
//! at the origin. A cell is silenced when its hex distance to the nearest
//! master equals `τ`; that ring separates neighbouring subnets.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{MgError, Result};
use crate::topology::{hex_distance, CellCoord, Model, Network, SectorKind, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    #[serde(rename = "X")]
    Silent,
    #[serde(rename = "F")]
    Fast,
    #[serde(rename = "S")]
    Slow,
}

impl Role {
    pub fn is_active(self) -> bool {
        self != Role::Silent
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeKind {
    #[serde(rename = "both-rx")]
    BothCompRx,
    #[serde(rename = "both-tx")]
    BothCompTx,
    #[serde(rename = "slow-rx")]
    SlowOnlyCompRx,
    #[serde(rename = "slow-tx")]
    SlowOnlyCompTx,
    NoCoop,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 5] = [
        SchemeKind::BothCompRx,
        SchemeKind::BothCompTx,
        SchemeKind::SlowOnlyCompRx,
        SchemeKind::SlowOnlyCompTx,
        SchemeKind::NoCoop,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::BothCompRx => "both-rx",
            SchemeKind::BothCompTx => "both-tx",
            SchemeKind::SlowOnlyCompRx => "slow-rx",
            SchemeKind::SlowOnlyCompTx => "slow-tx",
            SchemeKind::NoCoop => "no-coop",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| MgError::Parse(format!("unknown scheme {s:?}")))
    }

    pub fn is_both(self) -> bool {
        matches!(self, SchemeKind::BothCompRx | SchemeKind::BothCompTx)
    }

    pub fn is_slow_only(self) -> bool {
        matches!(self, SchemeKind::SlowOnlyCompRx | SchemeKind::SlowOnlyCompTx)
    }

    pub fn is_cooperative(self) -> bool {
        self != SchemeKind::NoCoop
    }

    /// CoMP transmission (masters are Txs) rather than reception.
    pub fn is_comp_tx(self) -> bool {
        matches!(self, SchemeKind::BothCompTx | SchemeKind::SlowOnlyCompTx)
    }
}

impl std::fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Association {
    pub scheme: SchemeKind,
    pub d: u32,
    /// One role per Tx node.
    pub roles: Vec<Role>,
    /// Master cooperation units, sorted. These are node ids, except in the
    /// sectorized model where they are cell indices.
    pub masters: Vec<usize>,
}

impl Association {
    pub fn count(&self, role: Role) -> usize {
        self.roles.iter().filter(|r| **r == role).count()
    }

    pub fn is_master(&self, unit: usize) -> bool {
        self.masters.binary_search(&unit).is_ok()
    }
}

#[derive(Serialize, Deserialize)]
struct AssociationWire {
    scheme: SchemeKind,
    #[serde(rename = "D")]
    d: u32,
    roles: BTreeMap<usize, Role>,
    masters: Vec<usize>,
}

impl Serialize for Association {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AssociationWire {
            scheme: self.scheme,
            d: self.d,
            roles: self.roles.iter().copied().enumerate().collect(),
            masters: self.masters.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Association {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = AssociationWire::deserialize(d)?;
        if w.roles.keys().copied().ne(0..w.roles.len()) {
            return Err(serde::de::Error::custom("role ids must be 0..n"));
        }
        Ok(Association { scheme: w.scheme, d: w.d, roles: w.roles.into_values().collect(), masters: w.masters })
    }
}

/// `((x + τ) mod 3τ) − τ`, a representative in `[−τ, 2τ)`.
pub fn shifted_mod(x: i64, tau: i64) -> Result<i64> {
    if tau < 1 {
        return Err(MgError::InvalidSize(format!("tau must be positive, got {tau}")));
    }
    Ok((x + tau).rem_euclid(3 * tau) - tau)
}

/// Ring test on shifted-modulo coordinates. It agrees with
/// [`nearest_master_distance`]` == τ` on most of the plane but misses ring
/// cells whose coordinates leave `[−τ, 2τ)`, e.g. `(τ + 1, 0)`.
pub fn shifted_ring(c: CellCoord, tau: i64) -> Result<bool> {
    let a = shifted_mod(c.a, tau)?;
    let b = shifted_mod(c.b, tau)?;
    Ok(CellCoord::new(a, b).norm() == tau)
}

pub fn is_master_cell(c: CellCoord, tau: i64) -> bool {
    c.a.rem_euclid(tau) == 0 && c.b.rem_euclid(tau) == 0 && (c.a + c.b).rem_euclid(3 * tau) == 0
}

/// Hex distance to the closest master and all masters attaining it, sorted.
pub fn nearest_masters(c: CellCoord, tau: i64) -> (i64, Vec<CellCoord>) {
    let (i0, j0) = (c.a.div_euclid(tau), c.b.div_euclid(tau));
    let mut best = i64::MAX;
    let mut out = Vec::new();
    for i in i0 - 2..=i0 + 3 {
        for j in j0 - 2..=j0 + 3 {
            if (i + j).rem_euclid(3) != 0 {
                continue;
            }
            let m = CellCoord::new(i * tau, j * tau);
            let d = hex_distance(c, m);
            match d.cmp(&best) {
                Ordering::Less => {
                    best = d;
                    out.clear();
                    out.push(m);
                }
                Ordering::Equal => out.push(m),
                Ordering::Greater => {}
            }
        }
    }
    out.sort();
    (best, out)
}

pub fn nearest_master_distance(c: CellCoord, tau: i64) -> i64 {
    nearest_masters(c, tau).0
}

/// Master period used by `scheme` in `model`.
pub fn subnet_tau(model: Model, scheme: SchemeKind, d: u32) -> u32 {
    match (model, scheme) {
        (Model::Hexagonal, s) if s.is_slow_only() => d / 2 + 1,
        _ => d / 2,
    }
}

fn even_d(d: u32) -> Result<()> {
    if d < 2 || !d.is_multiple_of(2) {
        return Err(MgError::InvalidD { d: d as i64, reason: "D must be even and at least 2".into() });
    }
    Ok(())
}

/// Checks that `d` is legal for `scheme` in `model`.
pub fn check_d(model: Model, scheme: SchemeKind, d: u32) -> Result<()> {
    if !scheme.is_cooperative() {
        return Ok(());
    }
    if model == Model::SectorizedHexagonal && scheme.is_comp_tx() {
        return Err(MgError::Unsupported { model: model.name().into(), scheme: scheme.name().into() });
    }
    even_d(d)?;
    if model == Model::Hexagonal && scheme.is_both() && !(d / 2 - 1).is_multiple_of(3) {
        return Err(MgError::InvalidD { d: d as i64, reason: "(D/2−1) mod 3 ≠ 0".into() });
    }
    Ok(())
}

/// Dispatches on the network's model.
pub fn assign(net: &Network, d: u32, scheme: SchemeKind) -> Result<Association> {
    match net.model {
        Model::WynerLinear => assign_wyner(net, d, scheme),
        Model::Hexagonal => assign_hex(net, d, scheme),
        Model::SectorizedHexagonal => assign_sectored(net, d, scheme),
    }
}

fn expect_model(net: &Network, model: Model) -> Result<()> {
    if net.model != model {
        return Err(MgError::Mismatch(format!("expected a {model} network, got {}", net.model)));
    }
    Ok(())
}

fn expect_period(net: &Network, tau: u32, scheme: SchemeKind) -> Result<()> {
    if let Shape::Torus { tau: t, .. } = net.shape {
        if scheme.is_cooperative() && t != tau {
            return Err(MgError::Mismatch(format!("torus period {t} does not match master period {tau}")));
        }
    }
    Ok(())
}

pub fn assign_wyner(net: &Network, d: u32, scheme: SchemeKind) -> Result<Association> {
    expect_model(net, Model::WynerLinear)?;
    check_d(net.model, scheme, d)?;
    let period = d as usize + 2;
    let roles = (1..=net.len())
        .map(|k| match scheme {
            SchemeKind::NoCoop if k % 2 == 0 => Role::Silent,
            SchemeKind::NoCoop => Role::Fast,
            _ if k % period == 0 => Role::Silent,
            s if s.is_both() && k % 2 == 1 => Role::Fast,
            _ => Role::Slow,
        })
        .collect();
    let masters = if scheme.is_cooperative() {
        (0..).map(|l| l * period + d as usize / 2 + 1).take_while(|&k| k <= net.len()).map(|k| k - 1).collect()
    } else {
        Vec::new()
    };
    Ok(Association { scheme, d, roles, masters })
}

pub fn assign_hex(net: &Network, d: u32, scheme: SchemeKind) -> Result<Association> {
    expect_model(net, Model::Hexagonal)?;
    check_d(net.model, scheme, d)?;
    let tau = subnet_tau(net.model, scheme, d);
    expect_period(net, tau, scheme)?;
    let t = tau as i64;
    let on_lattice = |c: CellCoord| (c.a + c.b).rem_euclid(3) == 0;
    let roles = net
        .tx_nodes()
        .map(|k| {
            let c = net.coord(k);
            match scheme {
                SchemeKind::NoCoop if on_lattice(c) => Role::Fast,
                SchemeKind::NoCoop => Role::Silent,
                _ if nearest_master_distance(c, t) == t => Role::Silent,
                s if s.is_both() && on_lattice(c) => Role::Fast,
                _ => Role::Slow,
            }
        })
        .collect();
    let masters = if scheme.is_cooperative() {
        net.tx_nodes().filter(|&k| is_master_cell(net.coord(k), t)).collect()
    } else {
        Vec::new()
    };
    Ok(Association { scheme, d, roles, masters })
}

fn sign(x: i64) -> i64 {
    x.signum()
}

/// Role of sector `kind` at offset `(x, y)` from its nearest master, for
/// master period `t`.
pub fn sector_role(x: i64, y: i64, kind: SectorKind, t: i64, both: bool) -> Role {
    use SectorKind::*;
    let d = CellCoord::new(x, y).norm();
    if d > t {
        return Role::Silent;
    }
    if d == t {
        let silent = match (x, y) {
            _ if (x, y) == (t, 0) || (x, y) == (0, t) || (x, y) == (-t, -t) => false,
            _ if (x, y) == (t, t) || (x, y) == (-t, 0) || (x, y) == (0, -t) => true,
            _ => match kind {
                W => y.abs() == t && sign(x) == sign(y),
                S => x.abs() == t && sign(x) == sign(y),
                E => sign(x) != sign(y),
            },
        };
        return match (silent, both) {
            (true, _) => Role::Silent,
            (false, true) => Role::Fast,
            (false, false) => Role::Slow,
        };
    }
    if !both {
        return Role::Slow;
    }
    let axis = (x == 0 && y <= 0) || (x == y && x >= 0) || (y == 0 && x <= 0);
    let fast = !axis
        && match kind {
            W => x > 0 && y < x,
            S => y > x && y > 0,
            E => x < 0 && y < 0,
        };
    if fast {
        Role::Fast
    } else {
        Role::Slow
    }
}

pub fn assign_sectored(net: &Network, d: u32, scheme: SchemeKind) -> Result<Association> {
    expect_model(net, Model::SectorizedHexagonal)?;
    check_d(net.model, scheme, d)?;
    let tau = subnet_tau(net.model, scheme, d);
    expect_period(net, tau, scheme)?;
    let t = tau as i64;
    let roles = net
        .tx_nodes()
        .map(|k| {
            let kind = net.kind_of[k].expect("sector node");
            if !scheme.is_cooperative() {
                return if kind == SectorKind::W { Role::Fast } else { Role::Silent };
            }
            let c = net.coord(k);
            let (_, masters) = nearest_masters(c, t);
            let rel = c.minus(masters[0]);
            sector_role(rel.a, rel.b, kind, t, scheme.is_both())
        })
        .collect();
    let masters = if scheme.is_cooperative() {
        net.rx_nodes().filter(|&c| is_master_cell(net.cells[c], t)).collect()
    } else {
        Vec::new()
    };
    Ok(Association { scheme, d, roles, masters })
}

/// Orders offsets `(a, b)` by the polar angle of `a·e_x + b·e_y` in `[0, 2π)`.
pub fn angle_cmp(u: CellCoord, v: CellCoord) -> Ordering {
    // Scaled Cartesian form is (√3·a, 2b − a); only the sign of x matters
    // for the half-plane split and the cross product stays integral.
    let half = |c: CellCoord| {
        let (x, y) = (c.a, 2 * c.b - c.a);
        if y > 0 || (y == 0 && x > 0) {
            0
        } else {
            1
        }
    };
    half(u).cmp(&half(v)).then_with(|| {
        let cross = u.a * (2 * v.b - v.a) - v.a * (2 * u.b - u.a);
        0.cmp(&cross)
    })
}

/// Assigns every cell of a hexagonal network to the master that owns it.
/// Ring cells shared by several subnets go to the master from which they
/// appear at the smallest polar angle.
pub fn cell_partition(net: &Network, assoc: &Association) -> Result<Vec<CellCoord>> {
    expect_model(net, Model::Hexagonal)?;
    if !assoc.scheme.is_cooperative() {
        return Err(MgError::Unsupported { model: net.model.name().into(), scheme: assoc.scheme.name().into() });
    }
    let t = subnet_tau(net.model, assoc.scheme, assoc.d) as i64;
    Ok(net
        .cells
        .iter()
        .map(|&c| {
            let (_, ms) = nearest_masters(c, t);
            ms.into_iter()
                .min_by(|m1, m2| angle_cmp(c.minus(*m1), c.minus(*m2)))
                .map(|m| net.canonical(m))
                .expect("at least one master")
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::*;
    use proptest::prelude::*;
    use std::collections::{HashMap, HashSet};

    fn subnet_cells(t: i64) -> Vec<CellCoord> {
        ball_cells(t as u32 - 1)
    }

    #[test]
    fn shifted_mod_examples() {
        for t in 1..6 {
            assert_eq!(shifted_mod(-t, t).unwrap(), -t);
            assert_eq!(shifted_mod(2 * t, t).unwrap(), -t);
        }
        assert_eq!(shifted_mod(5, 2).unwrap(), -1);
        assert!(shifted_mod(3, 0).is_err());
    }

    #[test]
    fn shifted_ring_misses_shared_ring_cells() {
        let t = 4;
        let c = CellCoord::new(t + 1, 0);
        assert_eq!(nearest_master_distance(c, t), t);
        assert!(!shifted_ring(c, t).unwrap());
    }

    #[test]
    fn wyner_both_subnet() {
        let net = build_wyner(16, 1).unwrap();
        let a = assign_wyner(&net, 6, SchemeKind::BothCompRx).unwrap();
        let ids = |r: Role| -> Vec<usize> { (0..16).filter(|&i| a.roles[i] == r).map(|i| i + 1).collect() };
        assert_eq!(ids(Role::Silent), vec![8, 16]);
        assert!([1, 3, 5, 7].iter().all(|k| ids(Role::Fast).contains(k)));
        assert!([2, 4, 6].iter().all(|k| ids(Role::Slow).contains(k)));
        assert_eq!(a.masters, vec![3, 11]);
    }

    #[test]
    fn wyner_no_coop_and_slow_only() {
        let net = build_wyner(16, 1).unwrap();
        let a = assign_wyner(&net, 6, SchemeKind::NoCoop).unwrap();
        assert_eq!(a.count(Role::Fast) + a.count(Role::Slow), 8);
        for i in 0..15 {
            assert!(!(a.roles[i].is_active() && a.roles[i + 1].is_active()));
        }
        let a = assign_wyner(&net, 6, SchemeKind::SlowOnlyCompRx).unwrap();
        assert_eq!(a.count(Role::Slow), 14);
        assert_eq!(a.masters.len(), 2);
        assert!(assign_wyner(&net, 5, SchemeKind::BothCompRx).is_err());
        assert!(assign_wyner(&net, 0, SchemeKind::BothCompTx).is_err());
    }

    #[test]
    fn hex_subnet_counts_by_enumeration() {
        for d in [2u32, 8, 14] {
            let t = (d / 2) as i64;
            let cells = subnet_cells(t);
            let fast = cells.iter().filter(|c| (c.a + c.b).rem_euclid(3) == 0).count();
            let slow = cells.len() - fast;
            let net = build_hex_torus(t as u32, 2, 1).unwrap();
            let a = assign_hex(&net, d, SchemeKind::BothCompRx).unwrap();
            assert_eq!(a.count(Role::Fast), 4 * fast);
            assert_eq!(a.count(Role::Slow), 4 * slow);
            assert_eq!(a.masters.len(), 4);
        }
        let t = 4;
        let cells = subnet_cells(t);
        assert_eq!(cells.iter().filter(|c| (c.a + c.b).rem_euclid(3) == 0).count(), 13);
        assert_eq!(cells.len() - 13, 24);
    }

    #[test]
    fn hex_slow_only_ring() {
        let t = 5;
        let ring: Vec<_> = ball_cells(t as u32).into_iter().filter(|c| c.norm() == t).collect();
        assert_eq!(ring.len(), 30);
        assert!(ring.iter().all(|c| nearest_master_distance(*c, t) == t));
        let net = build_hex(12, 1).unwrap();
        let a = assign_hex(&net, 8, SchemeKind::SlowOnlyCompRx).unwrap();
        let origin = net.cells.iter().position(|c| *c == CellCoord::ORIGIN).unwrap();
        for k in net.tx_nodes() {
            if net.coord(k).norm() == t {
                assert_eq!(a.roles[k], Role::Silent);
            }
        }
        assert!(a.is_master(origin));
    }

    #[test]
    fn hex_rejects_bad_d() {
        let net = build_hex(3, 1).unwrap();
        assert!(matches!(assign_hex(&net, 6, SchemeKind::BothCompRx), Err(MgError::InvalidD { .. })));
        assert!(assign_hex(&net, 6, SchemeKind::SlowOnlyCompRx).is_ok());
        assert!(assign_hex(&net, 7, SchemeKind::SlowOnlyCompTx).is_err());
        assert!(assign_hex(&net, 0, SchemeKind::NoCoop).is_ok());
    }

    #[test]
    fn hex_no_coop_is_independent() {
        let net = build_hex(6, 1).unwrap();
        let a = assign_hex(&net, 0, SchemeKind::NoCoop).unwrap();
        for k in net.tx_nodes() {
            if a.roles[k].is_active() {
                assert!(net.interference[k].iter().all(|&j| !a.roles[j].is_active()));
            }
        }
    }

    #[test]
    fn sectored_counts_by_subnet() {
        for d in [2u32, 4, 8] {
            let t = (d / 2) as i64;
            let net = build_sectored_torus(t as u32, 2, 1).unwrap();
            let both = assign_sectored(&net, d, SchemeKind::BothCompRx).unwrap();
            let slow = assign_sectored(&net, d, SchemeKind::SlowOnlyCompRx).unwrap();
            let d = d as usize;
            assert_eq!(both.count(Role::Fast), 4 * (3 * d * d / 4));
            assert_eq!(both.count(Role::Slow), 4 * (6 * d * d / 4 - 3 * d / 2));
            assert_eq!(slow.count(Role::Slow), 4 * (9 * d * d / 4 - 3 * d / 2));
            assert_eq!(slow.count(Role::Fast), 0);
        }
        let net = build_sectored_torus(2, 1, 1).unwrap();
        assert!(assign_sectored(&net, 4, SchemeKind::BothCompTx).is_err());
    }

    #[test]
    fn sectored_roles_agree_across_equidistant_masters() {
        for t in 1..6i64 {
            for a in -3 * t..=3 * t {
                for b in -3 * t..=3 * t {
                    let c = CellCoord::new(a, b);
                    let (_, ms) = nearest_masters(c, t);
                    for kind in SectorKind::ALL {
                        for both in [true, false] {
                            let roles: HashSet<_> = ms
                                .iter()
                                .map(|m| {
                                    let r = c.minus(*m);
                                    sector_role(r.a, r.b, kind, t, both)
                                })
                                .collect();
                            assert_eq!(roles.len(), 1, "cell {c:?} kind {kind:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn partition_gives_equal_shares() {
        for (d, scheme) in
            [(8, SchemeKind::SlowOnlyCompRx), (6, SchemeKind::SlowOnlyCompTx), (8, SchemeKind::BothCompRx)]
        {
            let tau = subnet_tau(Model::Hexagonal, scheme, d);
            let net = build_hex_torus(tau, 2, 1).unwrap();
            let a = assign_hex(&net, d, scheme).unwrap();
            let owner = cell_partition(&net, &a).unwrap();
            let mut sizes: HashMap<CellCoord, (usize, usize, usize)> = HashMap::new();
            let t = tau as i64;
            for (i, c) in net.cells.iter().enumerate() {
                let e = sizes.entry(owner[i]).or_default();
                e.0 += 1;
                let m = nearest_masters(*c, t).1.into_iter().find(|m| net.canonical(*m) == owner[i]).unwrap();
                let rel = c.minus(m);
                if rel.norm() == t {
                    let corner = rel.a == 0 || rel.b == 0 || rel.a == rel.b;
                    if corner {
                        e.1 += 1;
                    } else {
                        e.2 += 1;
                    }
                    assert_eq!(a.roles[i], Role::Silent);
                }
            }
            assert_eq!(sizes.len(), 4);
            for (s, corners, others) in sizes.values() {
                assert_eq!(*s as i64, 3 * t * t);
                assert_eq!(*corners, 2);
                assert_eq!(*others as i64, 3 * (t - 1));
            }
        }
    }

    #[test]
    fn association_json_round_trip() {
        let net = build_wyner(10, 1).unwrap();
        let a = assign_wyner(&net, 2, SchemeKind::BothCompTx).unwrap();
        let text = serde_json::to_string(&a).unwrap();
        assert!(text.contains("\"roles\":{\"0\":\"F\""));
        let back: Association = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
    }

    proptest! {
        #[test]
        fn shifted_mod_range(x in -1000i64..1000, t in 1i64..40) {
            let r = shifted_mod(x, t).unwrap();
            prop_assert!(-t <= r && r < 2 * t);
            prop_assert_eq!((r - x).rem_euclid(3 * t), 0);
        }

        #[test]
        fn masters_satisfy_lattice(a in -60i64..60, b in -60i64..60, t in 1i64..8) {
            let (d, ms) = nearest_masters(CellCoord::new(a, b), t);
            prop_assert!(!ms.is_empty());
            prop_assert!(d <= t);
            for m in &ms {
                prop_assert!(is_master_cell(*m, t));
                for n in [m.offset(t, -t), m.offset(t, 2 * t), m.offset(-t, t)] {
                    prop_assert!(is_master_cell(n, t));
                    prop_assert_eq!(hex_distance(*m, n), 2 * t);
                }
            }
        }

        #[test]
        fn roles_partition_nodes(r in 0u32..7, di in 0usize..3, si in 0usize..5) {
            let d = [2u32, 8, 14][di];
            let scheme = SchemeKind::ALL[si];
            let net = build_hex(r, 1).unwrap();
            let a = assign_hex(&net, d, scheme).unwrap();
            prop_assert_eq!(a.roles.len(), net.len());
            prop_assert_eq!(a.count(Role::Silent) + a.count(Role::Fast) + a.count(Role::Slow), net.len());
            for &m in &a.masters {
                prop_assert!(a.roles[m].is_active());
            }
        }

        #[test]
        fn fast_fraction_on_tilings(di in 0usize..3, m in 1u32..3) {
            let d = [2u32, 8, 14][di];
            let t = d / 2;
            prop_assume!(2 * t * m >= 3);
            let net = build_hex_torus(t, m, 1).unwrap();
            let a = assign_hex(&net, d, SchemeKind::BothCompTx).unwrap();
            let d = d as usize;
            prop_assert_eq!(a.count(Role::Fast) * 3 * d * d, net.len() * (d * d - 2 * d + 4));
        }
    }
}
