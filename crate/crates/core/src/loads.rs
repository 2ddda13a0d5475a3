//! Cooperation-message accounting and the closed-form MG/prelog expressions.
//!
//! [`message_ledger`] counts messages on an explicit network. On whole-subnet
//! tilings, dividing by the per-subnet link totals of [`subnet_links`]
//! reproduces the asymptotic values of [`closed_form`].

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::association::{check_d, subnet_tau, Association, Role, SchemeKind};
use crate::error::{MgError, Result};
use crate::rational::{q, qi, serde_q, Q};
use crate::topology::{Model, Network};
use crate::validation::{bfs, coop_graph, fast_noninterference, unit_of, Subnet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadReport {
    pub scheme: SchemeKind,
    /// Slow-signal descriptions sent to fast Txs for precancellation.
    pub precancel_msgs: u64,
    /// Decoded fast messages shared with slow Rxs.
    pub fast_share_msgs: u64,
    pub fanin_msgs: u64,
    pub fanout_msgs: u64,
    pub q_dedup: u64,
    pub master_share_dedup: u64,
    /// Subnets that have a master.
    pub subnets: usize,
    /// Largest number of messages on one directed Tx link before time sharing.
    pub max_link_tx: u64,
    pub max_link_rx: u64,
    #[serde(with = "serde_q")]
    pub mu_tx: Q,
    #[serde(with = "serde_q")]
    pub mu_rx: Q,
}

impl LoadReport {
    /// Message counts loading the Tx and Rx conferencing links.
    pub fn totals(&self) -> (u64, u64) {
        let fan = self.fanin_msgs + self.fanout_msgs;
        match self.scheme {
            SchemeKind::BothCompRx => (self.precancel_msgs, self.fast_share_msgs + fan - self.master_share_dedup),
            SchemeKind::BothCompTx => (fan + self.precancel_msgs - self.q_dedup, self.fast_share_msgs),
            SchemeKind::SlowOnlyCompRx => (0, fan),
            SchemeKind::SlowOnlyCompTx => (fan, 0),
            SchemeKind::NoCoop => (0, 0),
        }
    }
}

fn per_link(l: u32, msgs: u64, links: usize, side: &'static str) -> Result<Q> {
    match (msgs, links) {
        (0, _) => Ok(qi(0)),
        (_, 0) => Err(MgError::NoLinks { side }),
        _ => Ok(q(l as i128 * msgs as i128, links as i128)),
    }
}

/// Prelogs for explicit link totals.
pub fn normalized_prelogs(report: &LoadReport, l: u32, links_tx: usize, links_rx: usize) -> Result<(Q, Q)> {
    let (tx, rx) = report.totals();
    Ok((per_link(l, tx, links_tx, "Tx")?, per_link(l, rx, links_rx, "Rx")?))
}

/// Prelogs over the finite network's own link counts.
pub fn finite_prelogs(report: &LoadReport, net: &Network) -> Result<(Q, Q)> {
    normalized_prelogs(report, net.l, net.q_tx, net.q_rx)
}

/// Directed `(Tx, Rx)` cooperation links attributed to one subnet.
pub fn subnet_links(model: Model, scheme: SchemeKind, d: u32) -> (usize, usize) {
    let d = d as usize;
    match model {
        Model::WynerLinear => (2 * (d + 2), 2 * (d + 2)),
        Model::Hexagonal => {
            let t = subnet_tau(model, scheme, d as u32) as usize;
            (18 * t * t, 18 * t * t)
        }
        Model::SectorizedHexagonal => (9 * d * d, 9 * d * d / 2),
    }
}

/// Prelogs normalized by [`subnet_links`] for `report.subnets` subnets.
pub fn per_subnet_prelogs(report: &LoadReport, model: Model, d: u32, l: u32) -> Result<(Q, Q)> {
    let (tx, rx) = subnet_links(model, report.scheme, d);
    normalized_prelogs(report, l, tx * report.subnets, rx * report.subnets)
}

/// Per-node MG pair `L·(#fast, #slow)/#Tx`.
pub fn mg_pair(net: &Network, assoc: &Association) -> (Q, Q) {
    let n = net.len() as i128;
    let l = net.l as i128;
    (q(l * assoc.count(Role::Fast) as i128, n), q(l * assoc.count(Role::Slow) as i128, n))
}

#[derive(Default)]
struct LinkLoad(HashMap<(usize, usize), u64>);

impl LinkLoad {
    fn add(&mut self, from: usize, to: usize) {
        *self.0.entry((from, to)).or_default() += 1;
    }

    fn max(&self) -> u64 {
        self.0.values().copied().max().unwrap_or(0)
    }
}

/// Counts cooperation messages per category over validated subnets.
///
/// Routes toward the master follow a BFS tree that prefers fast parents.
/// Link loads charge precancellation to the direct Tx link, fast-message
/// sharing to the direct Rx link, and fan-in/fan-out to the route hops.
pub fn message_ledger(net: &Network, assoc: &Association, subnets: &[Subnet]) -> Result<LoadReport> {
    let fast_check = fast_noninterference(net, assoc)?;
    if !fast_check.ok() {
        return Err(MgError::Unvalidated("fast transmitters interfere".into()));
    }
    for s in subnets {
        if let Some(&k) = s.members.iter().find(|&&k| k >= net.len() || !assoc.roles[k].is_active()) {
            return Err(MgError::Unvalidated(format!("subnet member {k} is not active")));
        }
    }
    let scheme = assoc.scheme;
    let role = |k: usize| assoc.roles[k];
    let mut r = LoadReport {
        scheme,
        precancel_msgs: 0,
        fast_share_msgs: 0,
        fanin_msgs: 0,
        fanout_msgs: 0,
        q_dedup: 0,
        master_share_dedup: 0,
        subnets: 0,
        max_link_tx: 0,
        max_link_rx: 0,
        mu_tx: qi(0),
        mu_rx: qi(0),
    };
    if !scheme.is_cooperative() {
        return Ok(r);
    }
    let (mut tx_links, mut rx_links) = (LinkLoad::default(), LinkLoad::default());
    let shares = |f: usize| -> BTreeSet<usize> {
        net.interference[f].iter().filter(|&&k| role(k) == Role::Slow).map(|&k| net.cell_of[k]).collect()
    };
    let adj = coop_graph(net, scheme);
    let units_are_nodes = scheme.is_comp_tx() || net.model != Model::SectorizedHexagonal;
    let is_fast_unit = |u: usize| units_are_nodes && role(u) == Role::Fast;
    for s in subnets {
        for &f in &s.fast {
            for &j in net.interference[f].iter().filter(|&&j| role(j) == Role::Slow) {
                r.precancel_msgs += 1;
                tx_links.add(j, f);
            }
            for cell in shares(f) {
                r.fast_share_msgs += 1;
                rx_links.add(net.cell_of[f], cell);
            }
        }
        let Some(master) = s.master else { continue };
        r.subnets += 1;
        let dist = bfs(adj, master, &s.units);
        let parent = |u: usize| -> Option<usize> {
            let du = *dist.get(&u)?;
            if du == 0 {
                return None;
            }
            let mut cands: Vec<usize> = adj[u].iter().copied().filter(|v| dist.get(v) == Some(&(du - 1))).collect();
            cands.sort_by_key(|&v| (!is_fast_unit(v), v));
            cands.first().copied()
        };
        let fan_links = if scheme.is_comp_tx() { &mut tx_links } else { &mut rx_links };
        for &k in &s.slow {
            let Some(&g) = s.gamma.get(&k) else { continue };
            r.fanin_msgs += g as u64;
            r.fanout_msgs += g as u64;
            let mut u = unit_of(net, scheme, k);
            while let Some(p) = parent(u) {
                fan_links.add(u, p);
                fan_links.add(p, u);
                u = p;
            }
            if scheme == SchemeKind::BothCompTx && g > 0 {
                let shared = adj[k]
                    .iter()
                    .any(|&v| dist.get(&v) == Some(&(g - 1)) && role(v) == Role::Fast && net.interferes(v, k));
                if shared {
                    r.q_dedup += 1;
                }
            }
        }
        if scheme == SchemeKind::BothCompRx && net.model == Model::WynerLinear && role(master) == Role::Fast {
            r.master_share_dedup += shares(master).len() as u64;
        }
    }
    r.max_link_tx = tx_links.max();
    r.max_link_rx = rx_links.max();
    let (mu_tx, mu_rx) = finite_prelogs(&r, net)?;
    r.mu_tx = mu_tx;
    r.mu_rx = mu_rx;
    Ok(r)
}

/// Asymptotic MG pair and cooperation prelogs of a scheme.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForm {
    pub model: Model,
    pub scheme: SchemeKind,
    #[serde(rename = "D")]
    pub d: u32,
    #[serde(rename = "L")]
    pub l: u32,
    #[serde(with = "serde_q")]
    pub s_f: Q,
    #[serde(with = "serde_q")]
    pub s_s: Q,
    #[serde(with = "serde_q")]
    pub mu_tx: Q,
    #[serde(with = "serde_q")]
    pub mu_rx: Q,
}

/// Scheme thresholds and corner MG values of one model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thresholds {
    pub s_f_both: Q,
    pub s_s_both: Q,
    pub s_max: Q,
    pub s_no_coop: Q,
    pub tx_r: Q,
    pub rx_r: Q,
    /// CoMP-transmission requirements; absent in the sectorized model.
    pub tx_t: Option<Q>,
    pub rx_t: Option<Q>,
    /// Prelog of the slow-only scheme on its cooperating side.
    pub mu_s: Q,
}

fn wyner_rx_r(d: i128, l: i128) -> Q {
    let half_plus_one_even = (d / 2 + 1) % 2 == 0;
    let num = d + d * d / 4 - if half_plus_one_even { 1 } else { 2 };
    q(l * num, 2 * (d + 2))
}

fn hex_slow_only(d: i128, l: i128) -> (Q, Q) {
    (q(l * (4 + 3 * d * (d + 2)), 3 * (d + 2) * (d + 2)), q(l * d * (d + 1), 9 * (d + 2)))
}

/// All thresholds for the model; requires a D valid for the both-scheme.
pub fn thresholds(model: Model, d: u32, l: u32) -> Result<Thresholds> {
    check_d(model, SchemeKind::BothCompRx, d)?;
    let (d, l) = (d as i128, l as i128);
    Ok(match model {
        Model::WynerLinear => Thresholds {
            s_f_both: q(l, 2),
            s_s_both: q(l * d, 2 * (d + 2)),
            s_max: q(l * (d + 1), d + 2),
            s_no_coop: q(l, 2),
            tx_r: q(l * d, 2 * (d + 2)),
            rx_r: wyner_rx_r(d, l),
            tx_t: Some(q(l * d, 8)),
            rx_t: Some(q(l * d, 2 * (d + 2))),
            mu_s: q(l * d, 4),
        },
        Model::Hexagonal => {
            let (s_max, mu_s) = hex_slow_only(d, l);
            let tx_r = q(l * (d - 2) * (3 * d - 4), 9 * d * d);
            Thresholds {
                s_f_both: q(l * (d * d - 2 * d + 4), 3 * d * d),
                s_s_both: q(2 * l * (d - 2), 3 * d),
                s_max,
                s_no_coop: q(l, 3),
                tx_r,
                rx_r: q(l * (2 * d * d * d + 3 * d * d - 30 * d + 32), 27 * d * d),
                tx_t: Some(q(l * (2 * d * d * d - 12 * d - 28), 27 * d * d)),
                rx_t: Some(tx_r),
                mu_s,
            }
        }
        Model::SectorizedHexagonal => Thresholds {
            s_f_both: q(l, 3),
            s_s_both: q(l * (2 * d - 2), 3 * d),
            s_max: q(l * (3 * d - 2), 3 * d),
            s_no_coop: q(l, 3),
            tx_r: q(l * (d - 1), 3 * d),
            rx_r: q(l * (2 * d * d - 5), 9 * d),
            tx_t: None,
            rx_t: None,
            mu_s: q(l * (d - 1), 3),
        },
    })
}

pub fn closed_form(model: Model, scheme: SchemeKind, d: u32, l: u32) -> Result<ClosedForm> {
    check_d(model, scheme, d)?;
    let zero = qi(0);
    let (li, di) = (l as i128, d as i128);
    let no_coop = match model {
        Model::WynerLinear => q(li, 2),
        _ => q(li, 3),
    };
    let (s_f, s_s, mu_tx, mu_rx) = match scheme {
        SchemeKind::NoCoop => (no_coop, zero, zero, zero),
        s if s.is_slow_only() => {
            let (s_max, mu_s) = match model {
                Model::Hexagonal => hex_slow_only(di, li),
                _ => {
                    let t = thresholds(model, d, l)?;
                    (t.s_max, t.mu_s)
                }
            };
            if s.is_comp_tx() {
                (zero, s_max, mu_s, zero)
            } else {
                (zero, s_max, zero, mu_s)
            }
        }
        s => {
            let t = thresholds(model, d, l)?;
            if s.is_comp_tx() {
                let (tx, rx) = (t.tx_t.expect("comp-tx threshold"), t.rx_t.expect("comp-tx threshold"));
                (t.s_f_both, t.s_s_both, tx, rx)
            } else {
                (t.s_f_both, t.s_s_both, t.tx_r, t.rx_r)
            }
        }
    };
    Ok(ClosedForm { model, scheme, d, l, s_f, s_s, mu_tx, mu_rx })
}

/// Fast and slow cells per hexagonal both-scheme subnet.
pub fn hex_subnet_counts(d: u32) -> Result<(i64, i64)> {
    check_d(Model::Hexagonal, SchemeKind::BothCompRx, d)?;
    let d = d as i64;
    Ok((d * d / 4 - d / 2 + 1, d * d / 2 - d))
}

/// `(s, members)`: cells (sectors) attributed to one subnet and its active count.
pub fn subnet_sizes(model: Model, scheme: SchemeKind, d: u32) -> Result<(Q, i64)> {
    check_d(model, scheme, d)?;
    let di = d as i64;
    Ok(match (model, scheme) {
        (Model::WynerLinear, SchemeKind::NoCoop) => (qi(2), 1),
        (Model::SectorizedHexagonal, SchemeKind::NoCoop) => (qi(3), 1),
        (_, SchemeKind::NoCoop) => (qi(3), 1),
        (Model::WynerLinear, _) => (qi(di as i128 + 2), di + 1),
        (Model::Hexagonal, s) if s.is_slow_only() => (q(3 * (di as i128 + 2).pow(2), 4), 1 + 3 * di * (di + 2) / 4),
        (Model::Hexagonal, _) => (q(3 * (di as i128).pow(2), 4), 1 + 3 * di * (di - 2) / 4),
        (Model::SectorizedHexagonal, _) => (q(9 * (di as i128).pow(2), 4), 9 * di * di / 4 - 3 * di / 2),
    })
}

/// Closed-form per-subnet sums for the hexagonal both-scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexSums {
    pub fast: i64,
    pub slow: i64,
    pub sum_fast_is: i64,
    pub sum_slow_if_2gamma: Q2,
    pub sum_slow_gamma: Q2,
    pub q_dedup: i64,
    pub comp_tx_total: Q2,
}

/// Integer-or-fraction value of a closed-form polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Q2(#[serde(with = "serde_q")] pub Q);

pub fn hex_sums(d: u32) -> Result<HexSums> {
    let (fast, slow) = hex_subnet_counts(d)?;
    let di = d as i64;
    let dq = d as i128;
    Ok(HexSums {
        fast,
        slow,
        sum_fast_is: 3 * di * di / 2 - 5 * di + 4,
        sum_slow_if_2gamma: Q2(q(2 * dq.pow(3) + 3 * dq * dq - 30 * dq + 32, 6)),
        sum_slow_gamma: Q2(q(dq.pow(3) - 3 * dq * dq + 4, 6)),
        q_dedup: di * di / 2 - 3 * di + 10,
        comp_tx_total: Q2(q(2 * dq.pow(3) - 12 * dq - 28, 6)),
    })
}

/// `2·Σγ` of a hexagonal slow-only subnet.
pub fn hex_slow_only_double_gamma(d: u32) -> Result<Q> {
    check_d(Model::Hexagonal, SchemeKind::SlowOnlyCompRx, d)?;
    let d = d as i128;
    Ok(q(d * (d + 2) * (d + 1), 2))
}

/// Per-subnet sums for the sectorized model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorSums {
    pub s_active: i64,
    pub s_sectors: i64,
    pub fast: i64,
    pub sum_fast_is: i64,
    pub sum_slow_if_2gamma: Q2,
    pub slow_only_double_gamma: Q2,
}

pub fn sector_sums(d: u32) -> Result<SectorSums> {
    check_d(Model::SectorizedHexagonal, SchemeKind::BothCompRx, d)?;
    let di = d as i64;
    let dq = d as i128;
    Ok(SectorSums {
        s_active: 9 * di * di / 4 - 3 * di / 2,
        s_sectors: 9 * di * di / 4,
        fast: 3 * di * di / 4,
        sum_fast_is: 3 * di * (di - 1),
        sum_slow_if_2gamma: Q2(q(dq * (2 * dq * dq - 5), 2)),
        slow_only_double_gamma: Q2(q(3 * dq * dq * (dq - 1), 2)),
    })
}
