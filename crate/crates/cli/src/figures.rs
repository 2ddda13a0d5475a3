//! Datasets behind the region plots. Every legend prelog is taken from the
//! model thresholds, so nothing here is a hand-copied coordinate.

use std::str::FromStr;

use mgnet::loads::thresholds;
use mgnet::regions::{convex_hull, outer_polygon_wyner};
use mgnet::{achievable_region, q, MgPoint, Model, Result, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Fig5a,
    Fig5b,
    Fig8,
    Fig10,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [FigureId::Fig5a, FigureId::Fig5b, FigureId::Fig8, FigureId::Fig10];

    pub fn name(self) -> &'static str {
        match self {
            FigureId::Fig5a => "fig5a",
            FigureId::Fig5b => "fig5b",
            FigureId::Fig8 => "fig8",
            FigureId::Fig10 => "fig10",
        }
    }
}

impl FromStr for FigureId {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        FigureId::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown figure `{s}` (expected fig5a, fig5b, fig8 or fig10)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub id: String,
    pub color: &'static str,
    /// `None` for the outer bound.
    pub mu_tx: Option<Q>,
    pub mu_rx: Option<Q>,
    pub points: Vec<MgPoint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Figure {
    pub figure: FigureId,
    pub model: Model,
    pub d: u32,
    pub l: u32,
    pub curves: Vec<Curve>,
}

const L: u32 = 3;

fn inner(model: Model, d: u32, entries: &[(&'static str, Q, Q)]) -> Result<Vec<Curve>> {
    entries
        .iter()
        .enumerate()
        .map(|(i, &(color, tx, rx))| {
            Ok(Curve {
                id: format!("legend{}", i + 1),
                color,
                mu_tx: Some(tx),
                mu_rx: Some(rx),
                points: achievable_region(model, d, L, tx, rx)?.polyline(),
            })
        })
        .collect()
}

/// Wyner inner bounds may run fewer rounds than allowed; the plotted curves
/// take the best of every even budget from 6 up to `d`.
fn wyner_union(d: u32, tx: Q, rx: Q) -> Result<Vec<MgPoint>> {
    let mut pts = Vec::new();
    for dd in (6.min(d)..=d).step_by(2) {
        pts.extend(achievable_region(Model::WynerLinear, dd, L, tx, rx)?.vertices);
    }
    Ok(convex_hull(&pts).polyline())
}

fn wyner(d: u32) -> Result<Vec<Curve>> {
    let t = thresholds(Model::WynerLinear, d, L)?;
    let (tx_t, rx_t) = (t.tx_t.expect("wyner"), t.rx_t.expect("wyner"));
    let half = q(1, 2);
    let entries = [
        ("black", t.tx_r, t.rx_r),
        ("black", tx_t, rx_t),
        ("blue", half, t.mu_s),
        ("blue", t.mu_s, half),
        ("green", q(1, 1), half),
        ("orange", half, q(1, 1)),
    ];
    let mut curves = vec![Curve {
        id: "outer_bound".into(),
        color: "black",
        mu_tx: None,
        mu_rx: None,
        points: outer_polygon_wyner(d, L).polyline(),
    }];
    for (i, (color, tx, rx)) in entries.into_iter().enumerate() {
        curves.push(Curve {
            id: format!("legend{}", i + 1),
            color,
            mu_tx: Some(tx),
            mu_rx: Some(rx),
            points: wyner_union(d, tx, rx)?,
        });
    }
    Ok(curves)
}

fn hex() -> Result<Vec<Curve>> {
    let t = thresholds(Model::Hexagonal, 8, L)?;
    let (tx_t, rx_t) = (t.tx_t.expect("hex"), t.rx_t.expect("hex"));
    let (tenth, half, one) = (q(1, 10), q(1, 2), q(1, 1));
    inner(
        Model::Hexagonal,
        8,
        &[
            ("black", t.tx_r, t.rx_r.max(t.mu_s)),
            ("black", tx_t.max(t.mu_s), rx_t),
            ("blue", t.tx_r, t.rx_r),
            ("blue", tx_t, rx_t),
            ("green", tenth, t.mu_s),
            ("green", t.mu_s, tenth),
            ("orange", one, half),
            ("red", half, one),
        ],
    )
}

fn sectored() -> Result<Vec<Curve>> {
    let t = thresholds(Model::SectorizedHexagonal, 4, L)?;
    let tenth = q(1, 10);
    inner(Model::SectorizedHexagonal, 4, &[("black", t.tx_r, t.rx_r), ("blue", tenth, t.mu_s), ("red", tenth, q(2, 1))])
}

pub fn figure(id: FigureId) -> Result<Figure> {
    let (model, d, curves) = match id {
        FigureId::Fig5a => (Model::WynerLinear, 6, wyner(6)?),
        FigureId::Fig5b => (Model::WynerLinear, 10, wyner(10)?),
        FigureId::Fig8 => (Model::Hexagonal, 8, hex()?),
        FigureId::Fig10 => (Model::SectorizedHexagonal, 4, sectored()?),
    };
    Ok(Figure { figure: id, model, d, l: L, curves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use mgnet::qi;

    #[test]
    fn legend_prelogs_follow_thresholds() {
        let f = figure(FigureId::Fig5a).unwrap();
        assert_eq!(f.curves.len(), 7);
        assert_eq!((f.curves[1].mu_tx, f.curves[1].mu_rx), (Some(q(9, 8)), Some(q(21, 8))));
        assert_eq!((f.curves[2].mu_tx, f.curves[2].mu_rx), (Some(q(9, 4)), Some(q(9, 8))));
        let f = figure(FigureId::Fig5b).unwrap();
        assert_eq!((f.curves[1].mu_tx, f.curves[1].mu_rx), (Some(q(5, 4)), Some(q(17, 4))));
        assert_eq!((f.curves[3].mu_tx, f.curves[3].mu_rx), (Some(q(1, 2)), Some(q(15, 2))));
        let f = figure(FigureId::Fig8).unwrap();
        assert_eq!((f.curves[0].mu_tx, f.curves[0].mu_rx), (Some(q(5, 8)), Some(q(12, 5))));
        assert_eq!((f.curves[3].mu_tx, f.curves[3].mu_rx), (Some(q(25, 16)), Some(q(5, 8))));
        let f = figure(FigureId::Fig10).unwrap();
        assert_eq!(f.curves[1].mu_rx, Some(qi(3)));
    }

    #[test]
    fn outer_bound_curve() {
        let f = figure(FigureId::Fig5a).unwrap();
        let pts: Vec<(Q, Q)> = f.curves[0].points.iter().map(|p| (p.s_f, p.s_s)).collect();
        assert_eq!(pts, vec![(qi(0), q(21, 8)), (q(3, 2), q(9, 8)), (q(3, 2), qi(0))]);
    }

    #[test]
    fn figure_ids_parse() {
        for id in FigureId::ALL {
            assert_eq!(id.name().parse::<FigureId>().unwrap(), id);
        }
        assert!("fig9".parse::<FigureId>().is_err());
    }
}
