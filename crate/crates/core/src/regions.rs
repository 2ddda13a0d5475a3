//! Achievable MG regions, the Wyner outer bound, and exact polygon geometry.
//!
//! A case contributes its vertices whenever its prelog conditions hold
//! at some pair dominated by the given prelogs; the region is the convex hull
//! of every contributing vertex set.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{MgError, Result};
use crate::loads::{thresholds, Thresholds};
use crate::rational::{q, qi, serde_q, QJson, Q};
use crate::topology::Model;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "(QJson, QJson)", try_from = "(QJson, QJson)")]
pub struct MgPoint {
    pub s_f: Q,
    pub s_s: Q,
}

impl MgPoint {
    pub fn new(s_f: Q, s_s: Q) -> Self {
        MgPoint { s_f, s_s }
    }

    pub fn origin() -> Self {
        MgPoint::new(Q::zero(), Q::zero())
    }

    pub fn sum(&self) -> Q {
        self.s_f + self.s_s
    }
}

impl From<MgPoint> for (QJson, QJson) {
    fn from(p: MgPoint) -> Self {
        (p.s_f.into(), p.s_s.into())
    }
}

impl TryFrom<(QJson, QJson)> for MgPoint {
    type Error = MgError;
    fn try_from((f, s): (QJson, QJson)) -> Result<Self> {
        Ok(MgPoint::new(f.try_into()?, s.try_into()?))
    }
}

/// `a·S_F + b·S_S ≤ c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfPlane {
    #[serde(with = "serde_q")]
    pub a: Q,
    #[serde(with = "serde_q")]
    pub b: Q,
    #[serde(with = "serde_q")]
    pub c: Q,
}

impl HalfPlane {
    pub fn holds(&self, p: &MgPoint) -> bool {
        self.a * p.s_f + self.b * p.s_s <= self.c
    }
}

/// Convex polygon, counter-clockwise from its lexicographically smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MgRegion {
    pub vertices: Vec<MgPoint>,
}

fn cross(o: &MgPoint, a: &MgPoint, b: &MgPoint) -> Q {
    (a.s_f - o.s_f) * (b.s_s - o.s_s) - (a.s_s - o.s_s) * (b.s_f - o.s_f)
}

/// Monotone-chain hull; collinear and duplicate points are dropped.
pub fn convex_hull(points: &[MgPoint]) -> MgRegion {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return MgRegion { vertices: pts };
    }
    let mut hull: Vec<MgPoint> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &MgPoint>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for p in iter {
            while hull.len() >= start + 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= Q::zero() {
                hull.pop();
            }
            hull.push(*p);
        }
        hull.pop();
    }
    if hull.len() < 3 {
        // all points collinear: keep the two extremes
        hull = vec![pts[0], pts[pts.len() - 1]];
    }
    MgRegion { vertices: hull }
}

impl MgRegion {
    pub fn contains(&self, p: &MgPoint) -> bool {
        let v = &self.vertices;
        match v.len() {
            0 => false,
            1 => v[0] == *p,
            2 => {
                cross(&v[0], &v[1], p).is_zero()
                    && (p.s_f - v[0].s_f) * (p.s_f - v[1].s_f) <= Q::zero()
                    && (p.s_s - v[0].s_s) * (p.s_s - v[1].s_s) <= Q::zero()
            }
            n => (0..n).all(|i| cross(&v[i], &v[(i + 1) % n], p) >= Q::zero()),
        }
    }

    /// Every vertex satisfies every half-plane.
    pub fn is_subset(&self, planes: &[HalfPlane]) -> bool {
        self.vertices.iter().all(|p| planes.iter().all(|h| h.holds(p)))
    }

    /// Every vertex of `self` lies in `other`.
    pub fn is_within(&self, other: &MgRegion) -> bool {
        self.vertices.iter().all(|p| other.contains(p))
    }

    /// Largest value of `S_F + S_S` over the region.
    pub fn max_sum(&self) -> Q {
        self.vertices.iter().map(MgPoint::sum).max().unwrap_or_else(Q::zero)
    }

    /// Upper boundary for plotting: from the largest `S_S` on the vertical
    /// axis, clockwise down to the largest `S_F` on the horizontal axis.
    pub fn polyline(&self) -> Vec<MgPoint> {
        let mut pts: Vec<MgPoint> = self.vertices.iter().rev().filter(|p| **p != MgPoint::origin()).copied().collect();
        if let Some(i) = pts.iter().position(|p| p.s_f.is_zero()) {
            pts.rotate_left(i);
        }
        pts
    }
}

/// Nonnegativity, the fast-MG cap, and the sum-MG cap.
pub fn outer_bound_wyner(d: u32, l: u32) -> Vec<HalfPlane> {
    let (d, l) = (d as i128, l as i128);
    let (zero, one) = (Q::zero(), Q::one());
    vec![
        HalfPlane { a: -one, b: zero, c: zero },
        HalfPlane { a: zero, b: -one, c: zero },
        HalfPlane { a: one, b: zero, c: q(l, 2) },
        HalfPlane { a: one, b: one, c: q(l * (d + 1), d + 2) },
    ]
}

/// The outer bound as a polygon.
pub fn outer_polygon_wyner(d: u32, l: u32) -> MgRegion {
    let s_max = q(l as i128 * (d as i128 + 1), d as i128 + 2);
    let half = q(l as i128, 2);
    convex_hull(&[
        MgPoint::origin(),
        MgPoint::new(qi(0), s_max),
        MgPoint::new(half, s_max - half),
        MgPoint::new(half, qi(0)),
    ])
}

fn check_prelogs(mu_tx: Q, mu_rx: Q) -> Result<()> {
    if mu_tx < Q::zero() || mu_rx < Q::zero() {
        return Err(MgError::NegativePrelog(format!("mu_tx={mu_tx}, mu_rx={mu_rx}")));
    }
    Ok(())
}

/// `μ / required`, clamped to [0,1]; a non-positive requirement never binds.
fn ratio(mu: Q, required: Q) -> Q {
    if required <= Q::zero() {
        return Q::one();
    }
    (mu / required).min(Q::one())
}

fn both_alpha(t: &Thresholds, mu_tx: Q, mu_rx: Q) -> Q {
    let rx_branch = ratio(mu_tx, t.tx_r).min(ratio(mu_rx, t.rx_r));
    match (t.tx_t, t.rx_t) {
        (Some(tx_t), Some(rx_t)) => rx_branch.max(ratio(mu_tx, tx_t).min(ratio(mu_rx, rx_t))),
        _ => rx_branch,
    }
}

pub fn alpha_wyner(mu_tx: Q, mu_rx: Q, d: u32, l: u32) -> Result<Q> {
    check_prelogs(mu_tx, mu_rx)?;
    Ok(both_alpha(&thresholds(Model::WynerLinear, d, l)?, mu_tx, mu_rx))
}

pub fn alphas_hex(mu_tx: Q, mu_rx: Q, d: u32, l: u32) -> Result<(Q, Q)> {
    check_prelogs(mu_tx, mu_rx)?;
    let t = thresholds(Model::Hexagonal, d, l)?;
    Ok((both_alpha(&t, mu_tx, mu_rx), ratio(mu_tx, t.mu_s).max(ratio(mu_rx, t.mu_s))))
}

pub fn alphas_sectored(mu_tx: Q, mu_rx: Q, d: u32, l: u32) -> Result<(Q, Q)> {
    check_prelogs(mu_tx, mu_rx)?;
    let t = thresholds(Model::SectorizedHexagonal, d, l)?;
    let a1 = ratio(mu_tx, t.tx_r);
    Ok((a1, a1.min(ratio(mu_rx, t.rx_r))))
}

/// `lo ≤ μ < hi` on each coordinate.
#[derive(Debug, Clone, Copy, Default)]
struct Span {
    lo: Option<Q>,
    hi: Option<Q>,
}

impl Span {
    fn at_least(lo: Q) -> Self {
        Span { lo: Some(lo), hi: None }
    }

    fn below(hi: Q) -> Self {
        Span { lo: None, hi: Some(hi) }
    }

    fn between(lo: Q, hi: Q) -> Self {
        Span { lo: Some(lo), hi: Some(hi) }
    }

    /// Some value in `[0, mu]` lies in the span.
    fn reachable(&self, mu: Q) -> bool {
        let lo = self.lo.unwrap_or_else(Q::zero).max(Q::zero());
        lo <= mu && self.hi.is_none_or(|hi| lo < hi)
    }
}

/// Conjunction over (Tx, Rx).
type Clause = (Span, Span);

fn applies(clauses: &[Clause], mu_tx: Q, mu_rx: Q) -> bool {
    clauses.iter().any(|(tx, rx)| tx.reachable(mu_tx) && rx.reachable(mu_rx))
}

fn unbounded() -> Span {
    Span::default()
}

fn blend(a: Q, x: Q, y: Q) -> Q {
    a * x + (Q::one() - a) * y
}

fn pt(f: Q, s: Q) -> MgPoint {
    MgPoint::new(f, s)
}

fn region_cases(model: Model, t: &Thresholds, d: u32, l: u32, mu_tx: Q, mu_rx: Q) -> Result<Vec<Vec<MgPoint>>> {
    let zero = Q::zero();
    let o = MgPoint::origin();
    let no_coop = pt(t.s_no_coop, zero);
    let both = pt(t.s_f_both, t.s_s_both);
    let top = pt(zero, t.s_max);
    let trapezoid = vec![o, top, both, no_coop];
    let mut out = Vec::new();
    let mut case = |clauses: &[Clause], vertices: Vec<MgPoint>| {
        if applies(clauses, mu_tx, mu_rx) {
            out.push(vertices);
        }
    };
    match model {
        Model::WynerLinear => {
            let (tx_t, rx_t) = (t.tx_t.expect("wyner"), t.rx_t.expect("wyner"));
            let a = alpha_wyner(mu_tx, mu_rx, d, l)?;
            let sym1 = blend(a, t.s_max, t.s_no_coop);
            let sym2 = pt(blend(a, t.s_f_both, t.s_no_coop), a * t.s_s_both);
            let sym3 = pt(a * t.s_f_both, blend(a, t.s_s_both, t.s_max));
            case(
                &[(Span::at_least(t.tx_r), Span::at_least(t.rx_r)), (Span::at_least(tx_t), Span::at_least(rx_t))],
                trapezoid,
            );
            case(
                &[(Span::below(t.tx_r), Span::at_least(t.mu_s)), (Span::at_least(t.mu_s), Span::below(rx_t))],
                vec![o, top, sym3, sym2, no_coop],
            );
            case(
                &[(unbounded(), Span::below(t.rx_r)), (Span::below(tx_t), unbounded())],
                vec![o, pt(zero, sym1), sym2, no_coop],
            );
        }
        Model::Hexagonal => {
            let (tx_t, rx_t) = (t.tx_t.expect("hex"), t.rx_t.expect("hex"));
            let (a1, a2) = alphas_hex(mu_tx, mu_rx, d, l)?;
            let hexa1 = pt(a1 * t.s_f_both, blend(a1, t.s_s_both, t.s_max));
            let hexa2 = pt(blend(a1, t.s_f_both, t.s_no_coop), a1 * t.s_s_both);
            let hexa = blend(a2, t.s_max, t.s_no_coop);
            case(
                &[
                    (Span::at_least(t.tx_r), Span::at_least(t.rx_r.max(t.mu_s))),
                    (Span::at_least(tx_t.max(t.mu_s)), Span::at_least(rx_t)),
                ],
                trapezoid,
            );
            case(
                &[
                    (Span::at_least(t.tx_r), Span::between(t.rx_r, t.mu_s)),
                    (Span::between(tx_t, t.mu_s), Span::at_least(rx_t)),
                ],
                vec![o, pt(zero, t.s_f_both + t.s_s_both), both, no_coop],
            );
            case(
                &[(Span::below(t.tx_r), Span::at_least(t.mu_s)), (Span::at_least(t.mu_s), Span::below(rx_t))],
                vec![o, top, hexa1, hexa2, no_coop],
            );
            case(
                &[(unbounded(), Span::below(t.rx_r)), (Span::below(tx_t), unbounded())],
                vec![o, pt(zero, hexa), hexa2, no_coop],
            );
        }
        Model::SectorizedHexagonal => {
            let (a1, a2) = alphas_sectored(mu_tx, mu_rx, d, l)?;
            let sec = pt(a1 * t.s_f_both, blend(a1, t.s_s_both, t.s_max));
            let sec1 = pt(blend(a2, t.s_f_both, t.s_no_coop), a2 * t.s_s_both);
            let sec2 = blend(a2, t.s_max, t.s_no_coop);
            case(&[(Span::at_least(t.tx_r), Span::at_least(t.rx_r))], trapezoid);
            case(&[(Span::below(t.tx_r), Span::at_least(t.mu_s))], vec![o, top, sec, sec1, no_coop]);
            case(&[(Span::below(t.tx_r), Span::below(t.rx_r))], vec![o, pt(zero, sec2), sec1, no_coop]);
        }
    }
    Ok(out)
}

/// Inner bound on the MG region for the given cooperation prelogs.
pub fn achievable_region(model: Model, d: u32, l: u32, mu_tx: Q, mu_rx: Q) -> Result<MgRegion> {
    check_prelogs(mu_tx, mu_rx)?;
    let t = thresholds(model, d, l)?;
    let mut pts = vec![MgPoint::origin(), pt(t.s_no_coop, Q::zero())];
    for vs in region_cases(model, &t, d, l, mu_tx, mu_rx)? {
        pts.extend(vs);
    }
    Ok(convex_hull(&pts))
}

/// Serialized region with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub model: Model,
    #[serde(rename = "D")]
    pub d: u32,
    #[serde(rename = "L")]
    pub l: u32,
    #[serde(with = "serde_q")]
    pub mu_tx: Q,
    #[serde(with = "serde_q")]
    pub mu_rx: Q,
    pub vertices: Vec<MgPoint>,
}

impl RegionRecord {
    pub fn compute(model: Model, d: u32, l: u32, mu_tx: Q, mu_rx: Q) -> Result<Self> {
        let r = achievable_region(model, d, l, mu_tx, mu_rx)?;
        Ok(RegionRecord { model, d, l, mu_tx, mu_rx, vertices: r.vertices })
    }

    pub fn region(&self) -> MgRegion {
        MgRegion { vertices: self.vertices.clone() }
    }
}

/// Slope of the segment `a → b`; `None` when vertical.
pub fn slope(a: &MgPoint, b: &MgPoint) -> Option<Q> {
    match (b.s_f - a.s_f).cmp(&Q::zero()) {
        Ordering::Equal => None,
        _ => Some((b.s_s - a.s_s) / (b.s_f - a.s_f)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(f: Q, s: Q) -> MgPoint {
        MgPoint::new(f, s)
    }

    fn pi(f: i128, s: i128) -> MgPoint {
        p(qi(f), qi(s))
    }

    /// Brute-force extremality: a point is a hull vertex iff it is not a
    /// convex combination of two or three other input points.
    fn is_extreme(x: &MgPoint, pts: &[MgPoint]) -> bool {
        let others: Vec<&MgPoint> = pts.iter().filter(|y| *y != x).collect();
        for i in 0..others.len() {
            for j in 0..others.len() {
                let seg = MgRegion { vertices: vec![*others[i], *others[j]] };
                if i != j && seg.contains(x) {
                    return false;
                }
                for k in 0..others.len() {
                    let tri = convex_hull(&[*others[i], *others[j], *others[k]]);
                    if tri.vertices.len() == 3 && tri.contains(x) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn hull_examples() {
        let tri = convex_hull(&[pi(0, 0), pi(1, 0), pi(0, 1)]);
        assert_eq!(tri.vertices, vec![pi(0, 0), pi(1, 0), pi(0, 1)]);
        let with_inner = convex_hull(&[pi(0, 0), pi(1, 0), pi(0, 1), p(q(1, 4), q(1, 4))]);
        assert_eq!(with_inner, tri);
        let collinear = convex_hull(&[pi(0, 0), pi(1, 0), pi(2, 0), pi(0, 2), pi(1, 1)]);
        assert_eq!(collinear.vertices.len(), 3);
        assert_eq!(convex_hull(&[pi(0, 0), pi(0, 3), pi(0, 1)]).vertices, vec![pi(0, 0), pi(0, 3)]);
    }

    #[test]
    fn wyner_knee_set_is_pentagon() {
        let t = thresholds(Model::WynerLinear, 6, 3).unwrap();
        let a = q(4, 9);
        let pts = vec![
            MgPoint::origin(),
            p(qi(0), t.s_max),
            p(a * t.s_f_both, blend(a, t.s_s_both, t.s_max)),
            p(blend(a, t.s_f_both, t.s_no_coop), a * t.s_s_both),
            p(t.s_no_coop, qi(0)),
        ];
        let hull = convex_hull(&pts);
        assert_eq!(hull.vertices.len(), 5);
        assert!(pts.iter().all(|x| is_extreme(x, &pts)));
    }

    #[test]
    fn outer_bound_examples() {
        let ob = outer_bound_wyner(6, 3);
        assert_eq!((ob[2].c, ob[3].c), (q(3, 2), q(21, 8)));
        assert_eq!(outer_bound_wyner(10, 3)[3].c, q(11, 4));
        assert_eq!(outer_bound_wyner(0, 2)[3].c, qi(1));
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha_wyner(q(9, 8), q(21, 8), 6, 3).unwrap(), qi(1));
        assert_eq!(alpha_wyner(qi(0), qi(0), 6, 3).unwrap(), qi(0));
        assert_eq!(alpha_wyner(q(1, 2), q(9, 2), 6, 3).unwrap(), q(4, 9));
        assert!(alpha_wyner(q(-1, 2), qi(0), 6, 3).is_err());
        assert_eq!(alphas_hex(q(5, 8), q(7, 4), 8, 3).unwrap().0, qi(1));
        assert_eq!(alphas_hex(q(1, 10), q(12, 5), 8, 3).unwrap().1, qi(1));
        assert_eq!(alphas_hex(qi(0), qi(0), 8, 3).unwrap(), (qi(0), qi(0)));
        assert_eq!(alphas_sectored(q(3, 4), q(9, 4), 4, 3).unwrap(), (qi(1), qi(1)));
        assert_eq!(alphas_sectored(q(1, 10), qi(3), 4, 3).unwrap().0, q(2, 15));
        assert_eq!(alphas_sectored(qi(0), qi(5), 4, 3).unwrap(), (qi(0), qi(0)));
    }

    #[test]
    fn hex_negative_requirement_never_binds() {
        let (a1, _) = alphas_hex(qi(0), qi(1), 2, 3).unwrap();
        assert_eq!(a1, qi(1));
    }

    #[test]
    fn region_examples() {
        let r = achievable_region(Model::WynerLinear, 6, 3, q(9, 8), q(21, 8)).unwrap();
        assert_eq!(r.vertices, vec![pi(0, 0), p(q(3, 2), qi(0)), p(q(3, 2), q(9, 8)), p(qi(0), q(21, 8))]);
        assert_eq!(r, outer_polygon_wyner(6, 3));

        let r = achievable_region(Model::WynerLinear, 6, 3, q(1, 2), q(9, 2)).unwrap();
        let line = r.polyline();
        assert_eq!(line, vec![p(qi(0), q(21, 8)), p(q(2, 3), q(47, 24)), p(q(3, 2), q(1, 2)), p(q(3, 2), qi(0))]);
        assert_eq!(slope(&line[0], &line[1]), Some(qi(-1)));
        assert_eq!(slope(&line[1], &line[2]), Some(q(-7, 4)));

        let r = achievable_region(Model::SectorizedHexagonal, 4, 3, q(3, 4), q(9, 4)).unwrap();
        assert!(r.vertices.contains(&p(qi(1), q(3, 2))));

        let r = achievable_region(Model::Hexagonal, 8, 3, q(1, 10), q(12, 5)).unwrap();
        assert_eq!(
            r.polyline(),
            vec![p(qi(0), q(61, 25)), p(q(13, 100), q(2862, 1250)), p(q(97, 100), q(6, 25)), pi(1, 0)]
        );
        assert!(achievable_region(Model::Hexagonal, 6, 3, qi(1), qi(1)).is_err());
        assert!(achievable_region(Model::WynerLinear, 6, 3, qi(-1), qi(1)).is_err());
    }

    #[test]
    fn sectored_blue_curve() {
        let r = achievable_region(Model::SectorizedHexagonal, 4, 3, q(1, 10), qi(3)).unwrap();
        assert_eq!(r.polyline(), vec![p(qi(0), q(5, 2)), p(q(2, 15), q(71, 30)), p(qi(1), q(1, 5)), pi(1, 0)]);
    }

    #[test]
    fn contains_and_json() {
        let r = achievable_region(Model::WynerLinear, 6, 3, q(1, 2), q(9, 2)).unwrap();
        assert!(r.contains(&MgPoint::origin()));
        assert!(r.contains(&p(q(1, 3), q(1, 3))));
        assert!(!r.contains(&pi(2, 0)));
        let rec = RegionRecord::compute(Model::WynerLinear, 6, 3, q(1, 2), q(9, 2)).unwrap();
        let text = serde_json::to_string(&rec).unwrap();
        assert!(text.contains("\"vertices\":[[{\"num\":0,\"den\":1},{\"num\":0,\"den\":1}]"));
        assert_eq!(serde_json::from_str::<RegionRecord>(&text).unwrap(), rec);
    }

    fn prelog() -> impl Strategy<Value = Q> {
        (0i128..80, 1i128..9).prop_map(|(n, d)| q(n, d))
    }

    fn model_d() -> impl Strategy<Value = (Model, u32)> {
        prop_oneof![
            (1u32..7).prop_map(|h| (Model::WynerLinear, 2 * h)),
            (0u32..3).prop_map(|k| (Model::Hexagonal, 6 * k + 2)),
            (1u32..6).prop_map(|h| (Model::SectorizedHexagonal, 2 * h)),
        ]
    }

    proptest! {
        #[test]
        fn inner_within_outer(h in 1u32..8, l in 1u32..4, tx in prelog(), rx in prelog()) {
            let d = 2 * h;
            let r = achievable_region(Model::WynerLinear, d, l, tx, rx).unwrap();
            prop_assert!(r.is_subset(&outer_bound_wyner(d, l)));
            prop_assert!(r.contains(&MgPoint::origin()));
        }

        #[test]
        fn threshold_prelogs_reach_outer_bound(h in 1u32..8, l in 1u32..4, extra_tx in prelog(), extra_rx in prelog(), tx_side in any::<bool>()) {
            let d = 2 * h;
            let t = thresholds(Model::WynerLinear, d, l).unwrap();
            let (tx, rx) = if tx_side {
                (t.tx_t.unwrap() + extra_tx, t.rx_t.unwrap() + extra_rx)
            } else {
                (t.tx_r + extra_tx, t.rx_r + extra_rx)
            };
            prop_assert_eq!(achievable_region(Model::WynerLinear, d, l, tx, rx).unwrap(), outer_polygon_wyner(d, l));
        }

        #[test]
        fn knee_keeps_max_sum(h in 1u32..8, l in 1u32..4, n in 0i128..=100) {
            let d = 2 * h;
            let t = thresholds(Model::WynerLinear, d, l).unwrap();
            let a = q(n, 100);
            let sum = a * t.s_f_both + blend(a, t.s_s_both, t.s_max);
            prop_assert_eq!(sum, q(l as i128 * (d as i128 + 1), d as i128 + 2));
        }

        #[test]
        fn monotone_in_prelogs((model, d) in model_d(), tx in prelog(), rx in prelog(), dtx in prelog(), drx in prelog()) {
            let small = achievable_region(model, d, 3, tx, rx).unwrap();
            prop_assert!(small.is_within(&achievable_region(model, d, 3, tx + dtx, rx).unwrap()));
            prop_assert!(small.is_within(&achievable_region(model, d, 3, tx, rx + drx).unwrap()));
        }

        #[test]
        fn hex_sum_penalty(k in 1u32..3, tx in prelog(), rx in prelog()) {
            let d = 6 * k + 2;
            let t = thresholds(Model::Hexagonal, d, 3).unwrap();
            prop_assume!(t.s_f_both + t.s_s_both < t.s_max);
            let r = achievable_region(Model::Hexagonal, d, 3, tx, rx).unwrap();
            let at_zero = r.vertices.iter().filter(|v| v.s_f.is_zero()).map(|v| v.s_s).max().unwrap();
            prop_assume!(at_zero == t.s_max);
            for v in r.vertices.iter().filter(|v| v.s_f > Q::zero()) {
                prop_assert!(v.sum() < at_zero);
            }
        }

        #[test]
        fn hull_vertices_are_extreme(raw in proptest::collection::vec((0i128..12, 0i128..12), 1..9)) {
            let pts: Vec<MgPoint> = raw.iter().map(|&(a, b)| pi(a, b)).collect();
            let hull = convex_hull(&pts);
            for x in &pts {
                prop_assert!(hull.contains(x));
            }
            let mut uniq = pts.clone();
            uniq.sort();
            uniq.dedup();
            if hull.vertices.len() >= 3 {
                for v in &hull.vertices {
                    prop_assert!(is_extreme(v, &uniq));
                }
            }
        }

        #[test]
        fn region_json_round_trip((model, d) in model_d(), tx in prelog(), rx in prelog()) {
            let rec = RegionRecord::compute(model, d, 3, tx, rx).unwrap();
            let back: RegionRecord = serde_json::from_str(&serde_json::to_string(&rec).unwrap()).unwrap();
            prop_assert_eq!(back, rec);
        }
    }
}
