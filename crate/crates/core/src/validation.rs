//! Structural checks: fast-Tx independence, subnet separation and hop budgets.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::association::{Association, Role, SchemeKind};
use crate::error::{MgError, Result};
use crate::topology::{Model, Network, NodeId};

/// Connected component of active nodes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subnet {
    pub members: Vec<NodeId>,
    pub fast: Vec<NodeId>,
    pub slow: Vec<NodeId>,
    /// Cooperation units touched by the members (cells on the Rx side of the
    /// sectorized model, nodes otherwise).
    pub units: Vec<usize>,
    pub master: Option<usize>,
    /// Hop count from each member's unit to the master.
    pub gamma: BTreeMap<NodeId, u32>,
    /// Touches the network boundary.
    pub partial: bool,
}

impl Subnet {
    pub fn slow_gamma_sum(&self) -> u64 {
        self.slow.iter().filter_map(|k| self.gamma.get(k)).map(|&g| g as u64).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationCode {
    FastInterference,
    MultipleMasters,
    MissingMaster,
    Unreachable,
    HopBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub node: NodeId,
    pub code: ViolationCode,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub fast_independent: bool,
    pub subnets_disjoint: bool,
    pub master_reachable: bool,
    pub hop_budget: i64,
    pub violations: Vec<Violation>,
    /// Findings on subnets cut by the network boundary; informational only.
    pub relaxed: Vec<Violation>,
}

impl ValidationReport {
    fn pass(hop_budget: i64) -> Self {
        ValidationReport {
            fast_independent: true,
            subnets_disjoint: true,
            master_reachable: true,
            hop_budget,
            violations: Vec::new(),
            relaxed: Vec::new(),
        }
    }

    fn push(&mut self, v: Violation) {
        match v.code {
            ViolationCode::FastInterference => self.fast_independent = false,
            ViolationCode::MultipleMasters => self.subnets_disjoint = false,
            _ => self.master_reachable = false,
        }
        self.violations.push(v);
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(mut self, other: ValidationReport) -> Self {
        self.fast_independent &= other.fast_independent;
        self.subnets_disjoint &= other.subnets_disjoint;
        self.master_reachable &= other.master_reachable;
        self.hop_budget = self.hop_budget.max(other.hop_budget);
        self.violations.extend(other.violations);
        self.relaxed.extend(other.relaxed);
        self
    }
}

fn check_pair(net: &Network, assoc: &Association) -> Result<()> {
    if assoc.roles.len() != net.len() {
        return Err(MgError::Mismatch(format!("{} roles for {} nodes", assoc.roles.len(), net.len())));
    }
    let units = if net.model == Model::SectorizedHexagonal { net.cells.len() } else { net.len() };
    if let Some(m) = assoc.masters.iter().find(|&&m| m >= units) {
        return Err(MgError::Mismatch(format!("master {m} out of range")));
    }
    Ok(())
}

/// `(D_Tx, D_Rx)` conferencing rounds used by the scheme.
pub fn check_round_split(scheme: SchemeKind, d: u32) -> Result<(u32, u32)> {
    if scheme.is_both() && d < 2 {
        return Err(MgError::InvalidD { d: d as i64, reason: "both-message schemes need D ≥ 2".into() });
    }
    Ok(match scheme {
        SchemeKind::BothCompRx => (1, d - 1),
        SchemeKind::BothCompTx => (d - 1, 1),
        SchemeKind::SlowOnlyCompRx => (0, d),
        SchemeKind::SlowOnlyCompTx => (d, 0),
        SchemeKind::NoCoop => (0, 0),
    })
}

/// Rounds available to reach the master.
pub fn hop_budget(scheme: SchemeKind, d: u32) -> i64 {
    match scheme {
        s if s.is_both() => (d as i64 - 2).div_euclid(2),
        s if s.is_slow_only() => d as i64 / 2,
        _ => 0,
    }
}

pub fn fast_noninterference(net: &Network, assoc: &Association) -> Result<ValidationReport> {
    check_pair(net, assoc)?;
    let mut report = ValidationReport::pass(hop_budget(assoc.scheme, assoc.d));
    for k in net.tx_nodes().filter(|&k| assoc.roles[k] == Role::Fast) {
        for &j in &net.interference[k] {
            if assoc.roles[j] == Role::Fast {
                report.push(Violation {
                    node: j,
                    code: ViolationCode::FastInterference,
                    reason: format!("interferes with fast {k}"),
                });
            }
        }
    }
    Ok(report)
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Cooperation unit of node `k` for the scheme's cooperating side.
pub fn unit_of(net: &Network, scheme: SchemeKind, k: NodeId) -> usize {
    if scheme.is_comp_tx() {
        k
    } else {
        net.cell_of[k]
    }
}

/// Adjacency of the cooperation graph used by the scheme.
pub fn coop_graph(net: &Network, scheme: SchemeKind) -> &[Vec<usize>] {
    if scheme.is_comp_tx() {
        &net.tx_coop
    } else {
        &net.rx_coop
    }
}

/// BFS hop counts from `root` inside the unit set `allowed`.
pub fn bfs(adj: &[Vec<usize>], root: usize, allowed: &[usize]) -> HashMap<usize, u32> {
    let mut dist = HashMap::with_capacity(allowed.len());
    dist.insert(root, 0);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let du = dist[&u];
        for &v in &adj[u] {
            if allowed.binary_search(&v).is_ok() && !dist.contains_key(&v) {
                dist.insert(v, du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Splits the active nodes into interference-connected subnets.
pub fn subnet_decompose(net: &Network, assoc: &Association) -> Result<(Vec<Subnet>, ValidationReport)> {
    check_pair(net, assoc)?;
    let scheme = assoc.scheme;
    let mut report = ValidationReport::pass(hop_budget(scheme, assoc.d));
    let active = |k: usize| assoc.roles[k].is_active();
    let mut dsu = Dsu((0..net.len()).collect());
    for k in net.tx_nodes().filter(|&k| active(k)) {
        for &j in &net.interference[k] {
            if active(j) {
                dsu.union(j, k);
            }
        }
    }
    if net.model == Model::SectorizedHexagonal {
        for &m in &assoc.masters {
            let nodes: Vec<_> = (3 * m..3 * m + 3).filter(|&k| active(k)).collect();
            for w in nodes.windows(2) {
                dsu.union(w[0], w[1]);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<NodeId>> = BTreeMap::new();
    for k in net.tx_nodes().filter(|&k| active(k)) {
        groups.entry(dsu.find(k)).or_default().push(k);
    }
    let adj = coop_graph(net, scheme);
    let mut subnets = Vec::with_capacity(groups.len());
    for members in groups.into_values() {
        let mut units: Vec<usize> = members.iter().map(|&k| unit_of(net, scheme, k)).collect();
        units.sort_unstable();
        units.dedup();
        let masters: Vec<usize> = units.iter().copied().filter(|&u| assoc.is_master(u)).collect();
        let partial = members.iter().any(|&k| net.is_boundary(k));
        let first = members[0];
        let master = match masters.len() {
            1 => Some(masters[0]),
            0 => {
                if scheme.is_cooperative() {
                    let v = Violation {
                        node: first,
                        code: ViolationCode::MissingMaster,
                        reason: format!("subnet of {} nodes has no master", members.len()),
                    };
                    if partial {
                        report.relaxed.push(v);
                    } else {
                        report.push(v);
                    }
                }
                None
            }
            _ => {
                report.push(Violation {
                    node: first,
                    code: ViolationCode::MultipleMasters,
                    reason: format!("subnet joins masters {masters:?}"),
                });
                None
            }
        };
        if !scheme.is_cooperative() && members.len() > 1 {
            report.push(Violation {
                node: first,
                code: ViolationCode::MultipleMasters,
                reason: "active nodes interfere without cooperation".into(),
            });
        }
        let gamma = match master {
            Some(m) => {
                let dist = bfs(adj, m, &units);
                members.iter().filter_map(|&k| dist.get(&unit_of(net, scheme, k)).map(|&g| (k, g))).collect()
            }
            None => BTreeMap::new(),
        };
        let fast = members.iter().copied().filter(|&k| assoc.roles[k] == Role::Fast).collect();
        let slow = members.iter().copied().filter(|&k| assoc.roles[k] == Role::Slow).collect();
        subnets.push(Subnet { members, fast, slow, units, master, gamma, partial });
    }
    Ok((subnets, report))
}

/// Every slow node must reach its master within the hop budget.
pub fn master_reachability(subnets: &[Subnet], scheme: SchemeKind, d: u32) -> ValidationReport {
    let budget = hop_budget(scheme, d);
    let mut report = ValidationReport::pass(budget);
    for s in subnets.iter().filter(|s| s.master.is_some()) {
        for &k in &s.slow {
            let v = match s.gamma.get(&k) {
                None => Violation {
                    node: k,
                    code: ViolationCode::Unreachable,
                    reason: "no cooperation path to master".into(),
                },
                Some(&g) if g as i64 > budget => Violation {
                    node: k,
                    code: ViolationCode::HopBudget,
                    reason: format!("{g} hops exceed budget {budget}"),
                },
                Some(_) => continue,
            };
            if s.partial {
                report.relaxed.push(v);
            } else {
                report.push(v);
            }
        }
    }
    report
}

/// Runs all three checks.
pub fn validate(net: &Network, assoc: &Association) -> Result<(Vec<Subnet>, ValidationReport)> {
    let fast = fast_noninterference(net, assoc)?;
    let (subnets, split) = subnet_decompose(net, assoc)?;
    let reach = master_reachability(&subnets, assoc.scheme, assoc.d);
    Ok((subnets, fast.merge(split).merge(reach)))
}
