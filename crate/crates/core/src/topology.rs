//! Network construction for the three cellular models.
//!
//! A [`Network`] indexes its transmitters as nodes `0..n`. In the linear and
//! hexagonal models every node is one cell with a single Tx/Rx pair. In the
//! sectorized model node `3c + kind` is a sector of cell `c`, while receiver
//! cooperation runs between whole cells.
//!
//! Hexagonal cells use axial coordinates `(a, b)` over the basis vectors
//! `e_x` (pointing at -30 degrees) and `e_y` (pointing at 90 degrees). The six
//! neighbours of a cell sit at `±(1,0)`, `±(0,1)` and `±(1,1)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{MgError, Result};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "wyner")]
    WynerLinear,
    #[serde(rename = "hex")]
    Hexagonal,
    #[serde(rename = "sectorized")]
    SectorizedHexagonal,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::WynerLinear => "wyner",
            Model::Hexagonal => "hex",
            Model::SectorizedHexagonal => "sectorized",
        }
    }

    /// Interference degree of a node away from the network boundary.
    pub fn interior_degree(self) -> usize {
        match self {
            Model::WynerLinear => 2,
            Model::Hexagonal => 6,
            Model::SectorizedHexagonal => 4,
        }
    }
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellCoord {
    pub a: i64,
    pub b: i64,
}

pub const HEX_STEPS: [(i64, i64); 6] = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)];

impl CellCoord {
    pub const ORIGIN: CellCoord = CellCoord { a: 0, b: 0 };

    pub const fn new(a: i64, b: i64) -> Self {
        CellCoord { a, b }
    }

    pub fn offset(self, da: i64, db: i64) -> Self {
        CellCoord::new(self.a + da, self.b + db)
    }

    pub fn minus(self, o: CellCoord) -> Self {
        CellCoord::new(self.a - o.a, self.b - o.b)
    }

    /// Rotation by 2π/3 about the origin: `(a, b) -> (b - a, -a)`.
    pub fn rotate(self) -> Self {
        CellCoord::new(self.b - self.a, -self.a)
    }

    /// Rotation by π/3 about the origin.
    pub fn rotate60(self) -> Self {
        CellCoord::new(self.a - self.b, self.a)
    }

    pub fn norm(self) -> i64 {
        self.a.abs().max(self.b.abs()).max((self.a - self.b).abs())
    }

    pub fn neighbors(self) -> impl Iterator<Item = CellCoord> {
        HEX_STEPS.into_iter().map(move |(da, db)| self.offset(da, db))
    }
}

/// Hex distance `max{|Δa|, |Δb|, |Δa − Δb|}`.
pub fn hex_distance(c1: CellCoord, c2: CellCoord) -> i64 {
    c1.minus(c2).norm()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SectorKind {
    E,
    W,
    S,
}

impl SectorKind {
    pub const ALL: [SectorKind; 3] = [SectorKind::E, SectorKind::W, SectorKind::S];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Kind occupying this sector's position after a 2π/3 rotation.
    pub fn rotate(self) -> Self {
        match self {
            SectorKind::E => SectorKind::S,
            SectorKind::W => SectorKind::E,
            SectorKind::S => SectorKind::W,
        }
    }

    /// Interfering sectors as `(Δa, Δb, kind)`. E faces 30°, W faces 150°,
    /// S faces 270°; each sector touches the sectors across its two hex edges
    /// and the one sector wedged in between them.
    pub fn interferers(self) -> [(i64, i64, SectorKind); 4] {
        use SectorKind::*;
        match self {
            E => [(0, 1, S), (1, 0, W), (1, 1, S), (1, 1, W)],
            W => [(-1, -1, E), (-1, 0, E), (-1, 0, S), (0, 1, S)],
            S => [(-1, -1, E), (0, -1, E), (0, -1, W), (1, 0, W)],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SectorId {
    pub cell: CellCoord,
    pub kind: SectorKind,
}

/// Finite shape a network was built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Shape {
    Line {
        k: usize,
    },
    Ball {
        radius: u32,
    },
    /// `m × m` subnets of period `tau`, glued along the lattice
    /// `m·(τ, −τ)`, `m·(τ, 2τ)`.
    Torus {
        tau: u32,
        m: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    pub model: Model,
    pub l: u32,
    pub shape: Shape,
    /// Cell of each Rx cooperation unit; Wyner cell `i` is `(i, 0)`.
    pub cells: Vec<CellCoord>,
    /// Cell index of every node.
    pub cell_of: Vec<usize>,
    /// Sector kind of every node (sectorized model only).
    pub kind_of: Vec<Option<SectorKind>>,
    /// `interference[k]`: Txs heard by Rx unit `k` besides its own.
    pub interference: Vec<Vec<NodeId>>,
    pub tx_coop: Vec<Vec<NodeId>>,
    /// Adjacency between cells.
    pub rx_coop: Vec<Vec<usize>>,
    pub q_tx: usize,
    pub q_rx: usize,
}

impl Network {
    pub fn len(&self) -> usize {
        self.cell_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cell_of.is_empty()
    }

    pub fn tx_nodes(&self) -> std::ops::Range<NodeId> {
        0..self.len()
    }

    pub fn rx_nodes(&self) -> std::ops::Range<usize> {
        0..self.cells.len()
    }

    pub fn coord(&self, k: NodeId) -> CellCoord {
        self.cells[self.cell_of[k]]
    }

    /// Rx antenna groups per cooperation unit.
    pub fn rx_antennas(&self) -> u32 {
        match self.model {
            Model::SectorizedHexagonal => 3 * self.l,
            _ => self.l,
        }
    }

    pub fn is_boundary(&self, k: NodeId) -> bool {
        self.interference[k].len() < self.model.interior_degree()
    }

    pub fn interferes(&self, tx: NodeId, rx: NodeId) -> bool {
        self.interference[rx].contains(&tx)
    }

    /// Node of sector `kind` in cell index `c`.
    /// Torus representative of a cell coordinate; identity on other shapes.
    pub fn canonical(&self, c: CellCoord) -> CellCoord {
        match self.shape {
            Shape::Torus { tau, m } => {
                let p = tau as i64 * m as i64;
                reduce_torus(c, Some((p, 3 * p)))
            }
            _ => c,
        }
    }

    pub fn sector_node(&self, c: usize, kind: SectorKind) -> NodeId {
        3 * c + kind.index()
    }
}

/// Linear network of `k` cells; node `i` is Tx/Rx pair `i + 1` in one-based numbering.
pub fn build_wyner(k: usize, l: u32) -> Result<Network> {
    if k == 0 || l == 0 {
        return Err(MgError::InvalidSize("K and L must be positive".into()));
    }
    let adj: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            let mut v = Vec::with_capacity(2);
            if i > 0 {
                v.push(i - 1);
            }
            if i + 1 < k {
                v.push(i + 1);
            }
            v
        })
        .collect();
    let q = 2 * k - 2;
    Ok(Network {
        model: Model::WynerLinear,
        l,
        shape: Shape::Line { k },
        cells: (0..k as i64).map(|i| CellCoord::new(i, 0)).collect(),
        cell_of: (0..k).collect(),
        kind_of: vec![None; k],
        interference: adj.clone(),
        tx_coop: adj.clone(),
        rx_coop: adj,
        q_tx: q,
        q_rx: q,
    })
}

/// Cells within hex distance `radius` of the origin, row-major.
pub fn ball_cells(radius: u32) -> Vec<CellCoord> {
    let r = radius as i64;
    let mut out = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            let c = CellCoord::new(a, b);
            if c.norm() <= r {
                out.push(c);
            }
        }
    }
    out
}

fn reduce_torus(c: CellCoord, period: Option<(i64, i64)>) -> CellCoord {
    match period {
        None => c,
        Some((pa, pb)) => {
            let k = c.a.div_euclid(pa);
            CellCoord::new(c.a - k * pa, (c.b + k * pa).rem_euclid(pb))
        }
    }
}

/// Cell geometry shared by the hexagonal and sectorized builders.
struct Grid {
    cells: Vec<CellCoord>,
    index: HashMap<CellCoord, usize>,
    torus: Option<(i64, i64)>,
}

impl Grid {
    fn ball(radius: u32) -> Self {
        Self::from_cells(ball_cells(radius), None)
    }

    fn torus(tau: u32, m: u32) -> Result<Self> {
        let p = (tau as i64) * (m as i64);
        if tau == 0 || m == 0 || 2 * p < 3 {
            return Err(MgError::InvalidSize(format!("torus with tau={tau}, m={m} is too small to be a simple graph")));
        }
        let mut cells = Vec::with_capacity((3 * p * p) as usize);
        for a in 0..p {
            for b in 0..3 * p {
                cells.push(CellCoord::new(a, b));
            }
        }
        Ok(Self::from_cells(cells, Some((p, 3 * p))))
    }

    fn from_cells(cells: Vec<CellCoord>, torus: Option<(i64, i64)>) -> Self {
        let index = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        Grid { cells, index, torus }
    }

    fn reduce(&self, c: CellCoord) -> CellCoord {
        reduce_torus(c, self.torus)
    }

    fn find(&self, c: CellCoord) -> Option<usize> {
        self.index.get(&self.reduce(c)).copied()
    }

    fn cell_adjacency(&self) -> Vec<Vec<usize>> {
        self.cells.iter().map(|c| c.neighbors().filter_map(|n| self.find(n)).collect()).collect()
    }
}

fn hex_network(grid: Grid, l: u32, shape: Shape) -> Network {
    let adj = grid.cell_adjacency();
    let q: usize = adj.iter().map(Vec::len).sum();
    let n = grid.cells.len();
    Network {
        model: Model::Hexagonal,
        l,
        shape,
        cells: grid.cells,
        cell_of: (0..n).collect(),
        kind_of: vec![None; n],
        interference: adj.clone(),
        tx_coop: adj.clone(),
        rx_coop: adj,
        q_tx: q,
        q_rx: q,
    }
}

/// Hexagonal network on the hex-distance ball of the given radius.
pub fn build_hex(radius: u32, l: u32) -> Result<Network> {
    if l == 0 {
        return Err(MgError::InvalidSize("L must be positive".into()));
    }
    Ok(hex_network(Grid::ball(radius), l, Shape::Ball { radius }))
}

/// Hexagonal torus holding exactly `m²` subnets of master period `tau`.
pub fn build_hex_torus(tau: u32, m: u32, l: u32) -> Result<Network> {
    if l == 0 {
        return Err(MgError::InvalidSize("L must be positive".into()));
    }
    Ok(hex_network(Grid::torus(tau, m)?, l, Shape::Torus { tau, m }))
}

fn sectored_network(grid: Grid, l: u32, shape: Shape) -> Network {
    let rx_coop = grid.cell_adjacency();
    let n = 3 * grid.cells.len();
    let mut interference = vec![Vec::with_capacity(4); n];
    for (ci, c) in grid.cells.iter().enumerate() {
        for kind in SectorKind::ALL {
            let k = 3 * ci + kind.index();
            for (da, db, other) in kind.interferers() {
                if let Some(cj) = grid.find(c.offset(da, db)) {
                    interference[k].push(3 * cj + other.index());
                }
            }
        }
    }
    let q_tx = interference.iter().map(Vec::len).sum();
    let q_rx = rx_coop.iter().map(Vec::len).sum();
    Network {
        model: Model::SectorizedHexagonal,
        l,
        shape,
        cell_of: (0..n).map(|k| k / 3).collect(),
        kind_of: (0..n).map(|k| Some(SectorKind::ALL[k % 3])).collect(),
        cells: grid.cells,
        tx_coop: interference.clone(),
        interference,
        rx_coop,
        q_tx,
        q_rx,
    }
}

/// Sectorized hexagonal network on the hex-distance ball.
pub fn build_sectored_hex(radius: u32, l: u32) -> Result<Network> {
    if l == 0 {
        return Err(MgError::InvalidSize("L must be positive".into()));
    }
    Ok(sectored_network(Grid::ball(radius), l, Shape::Ball { radius }))
}

/// Sectorized torus holding exactly `m²` subnets of master period `tau`.
pub fn build_sectored_torus(tau: u32, m: u32, l: u32) -> Result<Network> {
    if l == 0 {
        return Err(MgError::InvalidSize("L must be positive".into()));
    }
    Ok(sectored_network(Grid::torus(tau, m)?, l, Shape::Torus { tau, m }))
}

#[derive(Serialize)]
#[serde(untagged)]
enum NodeWire {
    Line { id: NodeId, index: usize },
    Cell { id: NodeId, coord: CellCoord },
    Sector { id: NodeId, coord: CellCoord, kind: SectorKind },
}

#[derive(Serialize)]
struct NetworkWire {
    model: Model,
    #[serde(rename = "L")]
    l: u32,
    nodes: Vec<NodeWire>,
    interference: Vec<[usize; 2]>,
    tx_coop: Vec<[usize; 2]>,
    rx_coop: Vec<[usize; 2]>,
    q_tx: usize,
    q_rx: usize,
}

fn edge_list(adj: &[Vec<usize>]) -> Vec<[usize; 2]> {
    let mut out: Vec<[usize; 2]> =
        adj.iter().enumerate().flat_map(|(to, from)| from.iter().map(move |&f| [f, to])).collect();
    out.sort_unstable();
    out
}

impl Serialize for Network {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let nodes = self
            .tx_nodes()
            .map(|k| match (self.model, self.kind_of[k]) {
                (Model::WynerLinear, _) => NodeWire::Line { id: k, index: k + 1 },
                (_, Some(kind)) => NodeWire::Sector { id: k, coord: self.coord(k), kind },
                (_, None) => NodeWire::Cell { id: k, coord: self.coord(k) },
            })
            .collect();
        NetworkWire {
            model: self.model,
            l: self.l,
            nodes,
            interference: edge_list(&self.interference),
            tx_coop: edge_list(&self.tx_coop),
            rx_coop: edge_list(&self.rx_coop),
            q_tx: self.q_tx,
            q_rx: self.q_rx,
        }
        .serialize(s)
    }
}
