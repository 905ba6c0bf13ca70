//! Backtracking enumeration of maps between diagrams of finite
//! simplicial sets.
//!
//! A problem has nodes `v` with a source `S_v` and a target `T_v`, and
//! edges `e : v -> w` carrying `S_e : S_v -> S_w` and `T_e : T_v -> T_w`.
//! Solutions are families `h_v : S_v -> T_v` with `T_e ∘ h_v = h_w ∘ S_e`.
//! Variables are the nondegenerate cells, ordered by dimension; candidates
//! are looked up by their faces, and every edge constraint is checked as
//! soon as both of its cells are assigned.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::{Cell, FinSSet, SMap, Simplex};

/// Default cap on candidate assignments tried by one search.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub src_map: SMap,
    pub tgt_map: SMap,
}

#[derive(Clone, Debug)]
pub struct HomProblem {
    pub nodes: Vec<(Arc<FinSSet>, Arc<FinSSet>)>,
    pub edges: Vec<Edge>,
    /// nodes whose map is prescribed
    pub fixed: Vec<Option<SMap>>,
    /// within one inner dimension, nodes are assigned in increasing priority
    pub priority: Vec<i64>,
}

impl HomProblem {
    pub fn new() -> Self {
        HomProblem { nodes: vec![], edges: vec![], fixed: vec![], priority: vec![] }
    }

    /// Single maps `S -> T`.
    pub fn simple(s: Arc<FinSSet>, t: Arc<FinSSet>) -> Self {
        let mut p = HomProblem::new();
        p.add_node(s, t);
        p
    }

    pub fn add_node(&mut self, s: Arc<FinSSet>, t: Arc<FinSSet>) -> usize {
        self.nodes.push((s, t));
        self.fixed.push(None);
        self.priority.push(self.nodes.len() as i64);
        self.nodes.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize, src_map: SMap, tgt_map: SMap) {
        self.edges.push(Edge { from, to, src_map, tgt_map });
    }

    pub fn fix(&mut self, node: usize, map: SMap) {
        self.fixed[node] = Some(map);
    }
}

impl Default for HomProblem {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub budget: u64,
    /// require every free `h_v` to be an isomorphism
    pub iso: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, iso: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    /// every solution was visited
    Complete,
    /// the visitor asked to stop
    Stopped,
    /// the budget ran out
    Exhausted,
}

/// A solution: images of nondegenerate cells per node.
pub type Assignment = Vec<Vec<Vec<Simplex>>>;

/// Turn an assignment into maps.
pub fn assignment_maps(problem: &HomProblem, a: &Assignment) -> Vec<SMap> {
    problem
        .nodes
        .iter()
        .zip(a)
        .map(|((s, t), imgs)| SMap::new_unchecked(s.clone(), t.clone(), imgs.clone()))
        .collect()
}

#[derive(Clone, Copy)]
enum Slot {
    Fixed,
    Var(usize),
}

struct Constraint {
    edge: usize,
    /// cell of `S_from`
    cell: Cell,
    /// `S_e(cell)`, whose base lies in `S_to`
    image: Simplex,
}

struct Var {
    node: usize,
    cell: Cell,
    checks: Vec<Constraint>,
}

struct Engine<'a> {
    p: &'a HomProblem,
    opts: SearchOptions,
    vars: Vec<Var>,
    current: Assignment,
    index: HashMap<(usize, usize), HashMap<Vec<Simplex>, Vec<Simplex>>>,
    used: Vec<HashSet<Cell>>,
    spent: u64,
}

impl Engine<'_> {
    fn value(&self, node: usize, x: Simplex) -> Simplex {
        self.current[node][x.base().dim][x.base().idx].degenerate_by(&x.surjection())
    }

    fn holds(&self, c: &Constraint) -> bool {
        let e = &self.p.edges[c.edge];
        let lhs = e.tgt_map.apply(self.value(e.from, Simplex::nondegenerate(c.cell)));
        let rhs = self.value(e.to, c.image);
        lhs == rhs
    }

    fn run(&mut self, pos: usize, visit: &mut dyn FnMut(&Assignment) -> bool) -> Option<SearchStatus> {
        if pos == self.vars.len() {
            return if visit(&self.current) { None } else { Some(SearchStatus::Stopped) };
        }
        let (node, cell) = (self.vars[pos].node, self.vars[pos].cell);
        let src = &self.p.nodes[node].0;
        let faces: Vec<Simplex> = if cell.dim == 0 {
            vec![]
        } else {
            src.cell(cell).faces.iter().map(|&f| self.value(node, f)).collect()
        };
        let cands = {
            let c = self.index.get(&(node, cell.dim)).and_then(|m| m.get(&faces))?;
            c.clone()
        };
        for y in cands {
            self.spent += 1;
            if self.spent > self.opts.budget {
                return Some(SearchStatus::Exhausted);
            }
            if self.opts.iso && self.used[node].contains(&y.base()) {
                continue;
            }
            self.current[node][cell.dim][cell.idx] = y;
            let ok = self.vars[pos].checks.iter().all(|c| self.holds(c));
            if !ok {
                continue;
            }
            if self.opts.iso {
                self.used[node].insert(y.base());
            }
            let r = self.run(pos + 1, visit);
            if self.opts.iso {
                self.used[node].remove(&y.base());
            }
            if r.is_some() {
                return r;
            }
        }
        None
    }
}

/// Free cells, dimension by dimension. Within a dimension the next cell is
/// the one with most edge constraints to cells already placed, ties going
/// to lower node priority, so each constraint is checked early.
fn variable_order(problem: &HomProblem, top: usize) -> Vec<(usize, Cell)> {
    let mut order: Vec<usize> = (0..problem.nodes.len()).collect();
    order.sort_by_key(|&v| (problem.priority[v], v));
    let mut out = Vec::new();
    for d in 0..=top {
        let mut cand: Vec<(usize, Cell)> = Vec::new();
        for &v in &order {
            let s = &problem.nodes[v].0;
            if problem.fixed[v].is_none() && d <= s.trunc_dim() {
                cand.extend(s.cells(d).map(|c| (v, c)));
            }
        }
        let pos: HashMap<(usize, Cell), usize> = cand.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); cand.len()];
        for e in &problem.edges {
            for c in problem.nodes[e.from].0.cells(d) {
                let image = e.src_map.image_of_cell(c).base();
                if let (Some(&a), Some(&b)) = (pos.get(&(e.from, c)), pos.get(&(e.to, image))) {
                    if a != b {
                        adj[a].push(b);
                        adj[b].push(a);
                    }
                }
            }
        }
        let mut score = vec![0usize; cand.len()];
        let mut placed = vec![false; cand.len()];
        // max score first, then earliest position
        let mut heap: std::collections::BinaryHeap<(usize, std::cmp::Reverse<usize>)> =
            (0..cand.len()).map(|i| (0, std::cmp::Reverse(i))).collect();
        while let Some((sc, std::cmp::Reverse(i))) = heap.pop() {
            if placed[i] || sc != score[i] {
                continue;
            }
            placed[i] = true;
            out.push(cand[i]);
            for &j in &adj[i] {
                if !placed[j] {
                    score[j] += 1;
                    heap.push((score[j], std::cmp::Reverse(j)));
                }
            }
        }
    }
    out
}

/// Enumerate solutions, calling `visit` on each until it returns `false`.
pub fn search(
    problem: &HomProblem,
    opts: SearchOptions,
    mut visit: impl FnMut(&Assignment) -> bool,
) -> SearchStatus {
    let n = problem.nodes.len();
    let top = problem.nodes.iter().map(|(s, _)| s.trunc_dim()).max().unwrap_or(0);
    let mut current: Assignment = Vec::with_capacity(n);
    let mut slot: Vec<Vec<Vec<Slot>>> = Vec::with_capacity(n);
    let placeholder = Simplex::nondegenerate(Cell { dim: 0, idx: 0 });
    for (v, (s, t)) in problem.nodes.iter().enumerate() {
        if opts.iso && problem.fixed[v].is_none() {
            let counts_match = s.trunc_dim() == t.trunc_dim()
                && (0..=s.trunc_dim()).all(|d| s.num_cells(d) == t.num_cells(d));
            if !counts_match {
                return SearchStatus::Complete;
            }
        }
        match &problem.fixed[v] {
            Some(m) => {
                current.push(m.images().to_vec());
                slot.push((0..=s.trunc_dim()).map(|d| vec![Slot::Fixed; s.num_cells(d)]).collect());
            }
            None => {
                current.push((0..=s.trunc_dim()).map(|d| vec![placeholder; s.num_cells(d)]).collect());
                slot.push((0..=s.trunc_dim()).map(|d| vec![Slot::Fixed; s.num_cells(d)]).collect());
            }
        }
    }
    let mut vars = Vec::new();
    for (v, c) in variable_order(problem, top) {
        slot[v][c.dim][c.idx] = Slot::Var(vars.len());
        vars.push(Var { node: v, cell: c, checks: vec![] });
    }
    let rank = |v: usize, c: Cell| match slot[v][c.dim][c.idx] {
        Slot::Fixed => None,
        Slot::Var(i) => Some(i),
    };
    let mut static_checks = Vec::new();
    for (ei, e) in problem.edges.iter().enumerate() {
        let s = &problem.nodes[e.from].0;
        for c in s.all_cells() {
            let image = e.src_map.image_of_cell(c);
            let con = Constraint { edge: ei, cell: c, image };
            match (rank(e.from, c), rank(e.to, image.base())) {
                (None, None) => static_checks.push(con),
                (Some(a), None) => vars[a].checks.push(con),
                (None, Some(b)) => vars[b].checks.push(con),
                (Some(a), Some(b)) => vars[a.max(b)].checks.push(con),
            }
        }
    }
    let mut index = HashMap::new();
    for v in &vars {
        let key = (v.node, v.cell.dim);
        if index.contains_key(&key) {
            continue;
        }
        let t = &problem.nodes[v.node].1;
        let mut m: HashMap<Vec<Simplex>, Vec<Simplex>> = HashMap::new();
        for y in t.simplices(v.cell.dim) {
            if opts.iso && y.is_degenerate() {
                continue;
            }
            let faces = if v.cell.dim == 0 { vec![] } else { (0..=v.cell.dim).map(|i| t.face(y, i)).collect() };
            m.entry(faces).or_default().push(y);
        }
        index.insert(key, m);
    }
    let mut eng = Engine {
        p: problem,
        opts,
        vars,
        current,
        index,
        used: vec![HashSet::new(); n],
        spent: 0,
    };
    if !static_checks.iter().all(|c| eng.holds(c)) {
        return SearchStatus::Complete;
    }
    eng.run(0, &mut visit).unwrap_or(SearchStatus::Complete)
}

/// Count solutions; `None` if the budget ran out.
pub fn count(problem: &HomProblem, opts: SearchOptions) -> Option<u64> {
    let mut n = 0u64;
    match search(problem, opts, |_| {
        n += 1;
        true
    }) {
        SearchStatus::Exhausted => None,
        _ => Some(n),
    }
}

/// All solutions as maps; `None` if the budget ran out.
pub fn all_solutions(problem: &HomProblem, opts: SearchOptions) -> Option<Vec<Vec<SMap>>> {
    let mut out = Vec::new();
    let status = search(problem, opts, |a| {
        out.push(assignment_maps(problem, a));
        true
    });
    (status != SearchStatus::Exhausted).then_some(out)
}

/// The first solution; `Ok(None)` if there is none, `Err(())` on budget.
pub fn first_solution(problem: &HomProblem, opts: SearchOptions) -> Result<Option<Vec<SMap>>, ()> {
    let mut out = None;
    let status = search(problem, opts, |a| {
        out = Some(assignment_maps(problem, a));
        false
    });
    match status {
        SearchStatus::Exhausted => Err(()),
        _ => Ok(out),
    }
}

/// All maps `S -> T`; `None` on budget exhaustion.
pub fn all_maps(s: &Arc<FinSSet>, t: &Arc<FinSSet>, budget: u64) -> Option<Vec<SMap>> {
    let p = HomProblem::simple(s.clone(), t.clone());
    all_solutions(&p, SearchOptions { budget, iso: false })
        .map(|v| v.into_iter().map(|mut m| m.remove(0)).collect())
}

pub fn count_maps(s: &Arc<FinSSet>, t: &Arc<FinSSet>, budget: u64) -> Option<u64> {
    count(&HomProblem::simple(s.clone(), t.clone()), SearchOptions { budget, iso: false })
}

/// Search for an isomorphism `S -> T`.
pub fn find_iso(s: &Arc<FinSSet>, t: &Arc<FinSSet>, budget: u64) -> Result<Option<SMap>, ()> {
    let p = HomProblem::simple(s.clone(), t.clone());
    first_solution(&p, SearchOptions { budget, iso: true }).map(|o| o.map(|mut v| v.remove(0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(x: FinSSet) -> Arc<FinSSet> {
        Arc::new(x)
    }

    #[test]
    fn maps_between_simplices_are_monotone_maps() {
        // Hom(Δ[m], Δ[n]) = monotone maps [m] -> [n]
        for (m, n, expected) in [(1, 1, 3), (1, 2, 6), (2, 1, 4), (2, 2, 10)] {
            let s = arc(FinSSet::standard(m, 2));
            let t = arc(FinSSet::standard(n, 2));
            assert_eq!(count_maps(&s, &t, DEFAULT_BUDGET), Some(expected), "m={m} n={n}");
        }
    }

    #[test]
    fn iso_search() {
        let a = arc(FinSSet::boundary(2, 2));
        let b = arc(FinSSet::boundary(2, 2));
        assert!(find_iso(&a, &b, DEFAULT_BUDGET).unwrap().is_some());
        let c = arc(FinSSet::standard(2, 2));
        assert!(find_iso(&a, &c, DEFAULT_BUDGET).unwrap().is_none());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let s = arc(FinSSet::standard(2, 2));
        let t = arc(FinSSet::chaotic(&["a", "b", "c"], 2));
        assert_eq!(count_maps(&s, &t, 5), None);
    }
}
