//! Exact solver for the discrete transportation problem between grid cells
//! (supplies `w_c`) and targets (demands `ν_i`).
//!
//! Primal network simplex on the bipartite transportation graph:
//!
//! * initial basis from the northwest-corner rule, `N + n − 1` arcs;
//! * potentials rooted at target 1 with `v_1 = 0`;
//! * Dantzig pricing (most negative reduced cost), entering only when the
//!   reduced cost is below `−PIVOT_EPSILON`;
//! * after 50 consecutive degenerate pivots, Bland's rule (lowest-index
//!   entering arc, lowest-index leaving arc) until the next nondegenerate
//!   pivot, which rules out cycling.
//!
//! Every spanning tree of this graph consists of at most `n − 1` cells with
//! several basic arcs plus leaf cells hanging off a single target. Only that
//! small core is searched when tracing a pivot cycle.

use std::collections::{BTreeMap, VecDeque};
use std::io::Write;

use crate::cost::CostSpec;
use crate::error::{Error, Result};
use crate::measure::QuadratureGrid;
use crate::numeric::CompensatedSum;
use crate::partition::{CostTable, TargetMeasure};

/// Largest `cells × targets` the oracle accepts.
pub const LP_SIZE_LIMIT: usize = 5_000_000;
/// Reduced-cost threshold for an improving pivot.
pub const PIVOT_EPSILON: f64 = 1e-12;
const DEGENERATE_RUN: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowEntry {
    pub cell: usize,
    pub target: usize,
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteLPResult {
    pub cost: f64,
    /// Nonzero basic flows ordered by cell, then target.
    pub flow: Vec<FlowEntry>,
    pub pivots: usize,
}

impl DiscreteLPResult {
    /// Writes `cell_index,target_index,mass` rows (0-based indices).
    pub fn write_flow_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "cell_index,target_index,mass")?;
        for f in &self.flow {
            writeln!(out, "{},{},{:e}", f.cell, f.target, f.mass)?;
        }
        Ok(())
    }

    pub fn cell_outflow(&self, cells: usize) -> Vec<f64> {
        let mut out = vec![0.0; cells];
        for f in &self.flow {
            out[f.cell] += f.mass;
        }
        out
    }

    pub fn target_inflow(&self, targets: usize) -> Vec<f64> {
        let mut out = vec![0.0; targets];
        for f in &self.flow {
            out[f.target] += f.mass;
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Node {
    Target(usize),
    Cell(usize),
}

struct Simplex<'a> {
    table: &'a CostTable,
    n: usize,
    /// Basic arcs of each cell: (target, flow).
    arcs: Vec<Vec<(usize, f64)>>,
    /// Cells with more than one basic arc.
    core: BTreeMap<usize, ()>,
    v: Vec<f64>,
    u_core: BTreeMap<usize, f64>,
    parent: BTreeMap<NodeKey, (Node, usize)>,
}

type NodeKey = (u8, usize);

fn key(node: Node) -> NodeKey {
    match node {
        Node::Target(t) => (0, t),
        Node::Cell(c) => (1, c),
    }
}

impl<'a> Simplex<'a> {
    fn northwest(table: &'a CostTable, w: &[f64], nu: &[f64]) -> Self {
        let (cells, n) = (table.cells(), table.targets());
        let mut arcs = vec![Vec::with_capacity(1); cells];
        let (mut c, mut t) = (0, 0);
        let mut rem_c = w[0];
        let mut rem_t = if n == 1 { f64::INFINITY } else { nu[0] };
        loop {
            let amt = rem_c.min(rem_t);
            arcs[c].push((t, amt));
            let cell_done = rem_c <= rem_t;
            rem_c -= amt;
            rem_t -= amt;
            if c == cells - 1 && t == n - 1 {
                break;
            }
            if (cell_done && c < cells - 1) || t == n - 1 {
                c += 1;
                rem_c = w[c];
            } else {
                t += 1;
                rem_t = if t == n - 1 { f64::INFINITY } else { nu[t] };
            }
        }
        let core = arcs
            .iter()
            .enumerate()
            .filter(|(_, a)| a.len() > 1)
            .map(|(c, _)| (c, ()))
            .collect();
        Simplex {
            table,
            n,
            arcs,
            core,
            v: vec![0.0; n],
            u_core: BTreeMap::new(),
            parent: BTreeMap::new(),
        }
    }

    /// Recomputes target potentials and the core tree rooted at target 0.
    fn potentials(&mut self) {
        let mut adj: BTreeMap<NodeKey, Vec<(Node, usize)>> = BTreeMap::new();
        for &c in self.core.keys() {
            for &(t, _) in &self.arcs[c] {
                adj.entry(key(Node::Cell(c))).or_default().push((Node::Target(t), t));
                adj.entry(key(Node::Target(t))).or_default().push((Node::Cell(c), t));
            }
        }
        self.parent.clear();
        self.u_core.clear();
        self.v[0] = 0.0;
        let mut seen = BTreeMap::new();
        seen.insert(key(Node::Target(0)), 0usize);
        let mut queue = VecDeque::from([Node::Target(0)]);
        while let Some(node) = queue.pop_front() {
            let depth = seen[&key(node)];
            let Some(next) = adj.get(&key(node)) else { continue };
            for &(nb, t) in next {
                if seen.contains_key(&key(nb)) {
                    continue;
                }
                match (node, nb) {
                    (Node::Target(t0), Node::Cell(c)) => {
                        self.u_core.insert(c, self.table.row(c)[t0] - self.v[t0]);
                    }
                    (Node::Cell(c), Node::Target(t1)) => {
                        self.v[t1] = self.table.row(c)[t] - self.u_core[&c];
                    }
                    _ => unreachable!("bipartite"),
                }
                seen.insert(key(nb), depth + 1);
                self.parent.insert(key(nb), (node, depth + 1));
                queue.push_back(nb);
            }
        }
    }

    fn u(&self, c: usize) -> f64 {
        match self.u_core.get(&c) {
            Some(&u) => u,
            None => {
                let t = self.arcs[c][0].0;
                self.table.row(c)[t] - self.v[t]
            }
        }
    }

    fn depth(&self, node: Node) -> usize {
        self.parent.get(&key(node)).map_or(0, |p| p.1)
    }

    fn up(&self, node: Node) -> Node {
        self.parent[&key(node)].0
    }

    /// Tree path from cell `c` to target `j`, as a node sequence.
    fn path(&self, c: usize, j: usize) -> Vec<Node> {
        let mut head = vec![Node::Cell(c)];
        let start = if self.core.contains_key(&c) {
            Node::Cell(c)
        } else {
            let t = Node::Target(self.arcs[c][0].0);
            head.push(t);
            t
        };
        let mut a = start;
        let mut b = Node::Target(j);
        let mut left = Vec::new();
        let mut right = vec![b];
        while self.depth(a) > self.depth(b) {
            a = self.up(a);
            left.push(a);
        }
        while self.depth(b) > self.depth(a) {
            b = self.up(b);
            right.push(b);
        }
        while a != b {
            a = self.up(a);
            left.push(a);
            b = self.up(b);
            right.push(b);
        }
        // `left` and `right` both end at the common ancestor.
        right.pop();
        let mut out = head;
        out.extend(left);
        if out.last() == Some(&Node::Target(j)) {
            return out;
        }
        out.extend(right.into_iter().rev());
        out
    }

    fn entering(&self, bland: bool) -> Option<(usize, usize)> {
        let mut best: Option<(f64, usize, usize)> = None;
        for c in 0..self.table.cells() {
            let row = self.table.row(c);
            let u = self.u(c);
            for (j, &cost) in row.iter().enumerate() {
                let rc = cost - u - self.v[j];
                if rc < -PIVOT_EPSILON && !self.arcs[c].iter().any(|&(t, _)| t == j) {
                    if bland {
                        return Some((c, j));
                    }
                    if best.is_none_or(|b| rc < b.0) {
                        best = Some((rc, c, j));
                    }
                }
            }
        }
        best.map(|(_, c, j)| (c, j))
    }

    fn flow_mut(&mut self, c: usize, t: usize) -> &mut f64 {
        &mut self.arcs[c].iter_mut().find(|a| a.0 == t).expect("basic arc").1
    }

    fn flow(&self, c: usize, t: usize) -> f64 {
        self.arcs[c].iter().find(|a| a.0 == t).expect("basic arc").1
    }

    /// Returns the amount of flow shifted around the cycle.
    fn pivot(&mut self, c: usize, j: usize, bland: bool) -> f64 {
        let nodes = self.path(c, j);
        let arc_of = |k: usize| match (nodes[k], nodes[k + 1]) {
            (Node::Cell(a), Node::Target(t)) | (Node::Target(t), Node::Cell(a)) => (a, t),
            _ => unreachable!("bipartite"),
        };
        let arcs: Vec<(usize, usize)> = (0..nodes.len() - 1).map(arc_of).collect();
        let mut theta = f64::INFINITY;
        let mut leaving = arcs[0];
        for &(a, t) in arcs.iter().step_by(2) {
            let f = self.flow(a, t);
            let better = f < theta || (bland && f == theta && (a, t) < leaving);
            if better {
                theta = f;
                leaving = (a, t);
            }
        }
        for (k, &(a, t)) in arcs.iter().enumerate() {
            let f = self.flow_mut(a, t);
            if k % 2 == 0 {
                *f -= theta;
            } else {
                *f += theta;
            }
        }
        *self.flow_mut(leaving.0, leaving.1) = 0.0;
        self.arcs[c].push((j, theta));
        self.arcs[leaving.0].retain(|&(t, _)| t != leaving.1);
        for cell in [c, leaving.0] {
            if self.arcs[cell].len() > 1 {
                self.core.insert(cell, ());
            } else {
                self.core.remove(&cell);
            }
        }
        theta
    }
}

/// Exact optimal transport between grid cells and targets with cost
/// `c(x_c, y_i)` at cell centers.
pub fn solve_discrete_lp(grid: &QuadratureGrid, spec: &CostSpec, targets: &TargetMeasure) -> Result<DiscreteLPResult> {
    let entries = grid.len().saturating_mul(targets.len());
    if entries > LP_SIZE_LIMIT {
        return Err(Error::SizeGuard {
            entries,
            limit: LP_SIZE_LIMIT,
        });
    }
    let table = CostTable::new(grid, spec, targets)?;
    let mut simplex = Simplex::northwest(&table, grid.weights(), targets.masses());
    let limit = 100 * (grid.len() + targets.len()) * targets.len();
    let mut pivots = 0;
    let mut degenerate = 0;
    loop {
        simplex.potentials();
        let bland = degenerate >= DEGENERATE_RUN;
        let Some((c, j)) = simplex.entering(bland) else { break };
        let theta = simplex.pivot(c, j, bland);
        pivots += 1;
        degenerate = if theta > 0.0 { 0 } else { degenerate + 1 };
        if pivots > limit {
            return Err(Error::invalid(format!(
                "transportation simplex exceeded {limit} pivots"
            )));
        }
    }
    let mut cost = CompensatedSum::default();
    let mut flow = Vec::with_capacity(grid.len() + simplex.n);
    for (c, arcs) in simplex.arcs.iter().enumerate() {
        let mut sorted = arcs.clone();
        sorted.sort_by_key(|a| a.0);
        for (t, f) in sorted {
            if f > 0.0 {
                cost.add(f * table.row(c)[t]);
                flow.push(FlowEntry {
                    cell: c,
                    target: t,
                    mass: f,
                });
            }
        }
    }
    Ok(DiscreteLPResult {
        cost: cost.value(),
        flow,
        pivots,
    })
}
