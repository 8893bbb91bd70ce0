//! Minimum set cover and maximum independent set by branch and bound.
//!
//! Both searches count explored nodes and stop with
//! [`Error::CapExceeded`] once a configured budget is spent.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

const MODULE: &str = "setcover";

/// Subsets of `0..universe`, indexed by candidate.
#[derive(Debug, Clone)]
pub struct SetSystem {
    pub universe: usize,
    pub sets: Vec<FixedBitSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    /// Indices into the candidate list, ascending.
    pub chosen: Vec<usize>,
    pub nodes: u64,
}

impl SetSystem {
    pub fn new(universe: usize) -> Self {
        SetSystem {
            universe,
            sets: Vec::new(),
        }
    }

    pub fn push(&mut self, members: impl IntoIterator<Item = usize>) {
        let mut s = FixedBitSet::with_capacity(self.universe);
        s.extend(members);
        self.sets.push(s);
    }

    pub fn is_feasible(&self) -> bool {
        let mut all = FixedBitSet::with_capacity(self.universe);
        for s in &self.sets {
            all.union_with(s);
        }
        all.count_ones(..) == self.universe
    }

    fn check_feasible(&self) -> Result<()> {
        if self.is_feasible() {
            Ok(())
        } else {
            Err(Error::pre(MODULE, "candidate sets do not cover the universe"))
        }
    }
}

/// Classic greedy cover: repeatedly take the set covering most uncovered
/// elements, lowest index on ties.
pub fn greedy_cover(system: &SetSystem) -> Result<Vec<usize>> {
    system.check_feasible()?;
    let mut uncovered = FixedBitSet::with_capacity(system.universe);
    uncovered.insert_range(..);
    let mut chosen = Vec::new();
    while !uncovered.is_clear() {
        let (best, _) = system
            .sets
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.intersection_count(&uncovered)))
            .fold((0, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
        uncovered.difference_with(&system.sets[best]);
        chosen.push(best);
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Minimum cover. `node_cap = None` searches without a budget.
pub fn exact_cover(system: &SetSystem, node_cap: Option<u64>) -> Result<Solution> {
    let incumbent = greedy_cover(system)?;
    if system.universe == 0 {
        return Ok(Solution {
            chosen: Vec::new(),
            nodes: 0,
        });
    }

    // drop empty and dominated candidates; keep the lowest index among equals
    let mut keep: Vec<usize> = Vec::new();
    let mut order: Vec<usize> = (0..system.sets.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(system.sets[i].count_ones(..)));
    for &i in &order {
        let s = &system.sets[i];
        if s.is_clear() {
            continue;
        }
        if keep.iter().any(|&k| s.is_subset(&system.sets[k])) {
            continue;
        }
        keep.push(i);
    }
    keep.sort_unstable();

    let m = keep.len();
    let mut covering: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(m); system.universe];
    let mut degree = vec![0usize; system.universe];
    for (j, &i) in keep.iter().enumerate() {
        for e in system.sets[i].ones() {
            covering[e].insert(j);
            degree[e] += 1;
        }
    }
    let mut by_degree: Vec<usize> = (0..system.universe).collect();
    by_degree.sort_by_key(|&e| degree[e]);

    let mut search = CoverSearch {
        sets: keep.iter().map(|&i| system.sets[i].clone()).collect(),
        covering,
        by_degree,
        best: incumbent.len(),
        best_sets: None,
        stack: Vec::new(),
        nodes: 0,
        cap: node_cap,
    };
    let mut uncovered = FixedBitSet::with_capacity(system.universe);
    uncovered.insert_range(..);
    search.run(&uncovered)?;

    let chosen = match search.best_sets {
        Some(local) => {
            let mut c: Vec<usize> = local.into_iter().map(|j| keep[j]).collect();
            c.sort_unstable();
            c
        }
        None => incumbent,
    };
    Ok(Solution {
        chosen,
        nodes: search.nodes,
    })
}

struct CoverSearch {
    sets: Vec<FixedBitSet>,
    /// For each element, the candidates containing it.
    covering: Vec<FixedBitSet>,
    by_degree: Vec<usize>,
    best: usize,
    best_sets: Option<Vec<usize>>,
    stack: Vec<usize>,
    nodes: u64,
    cap: Option<u64>,
}

impl CoverSearch {
    fn run(&mut self, uncovered: &FixedBitSet) -> Result<()> {
        self.nodes += 1;
        if let Some(cap) = self.cap {
            if self.nodes > cap {
                return Err(Error::CapExceeded {
                    module: MODULE,
                    what: "branch-and-bound nodes",
                    limit: cap,
                    needed: self.nodes,
                });
            }
        }
        if uncovered.is_clear() {
            if self.stack.len() < self.best {
                self.best = self.stack.len();
                self.best_sets = Some(self.stack.clone());
            }
            return Ok(());
        }
        if self.stack.len() + self.lower_bound(uncovered) >= self.best {
            return Ok(());
        }
        // branch on the uncovered element with the fewest covering candidates
        let pivot = uncovered
            .ones()
            .min_by_key(|&e| self.covering[e].count_ones(..))
            .expect("nonempty");
        let mut options: Vec<(usize, usize)> = self.covering[pivot]
            .ones()
            .map(|j| (j, self.sets[j].intersection_count(uncovered)))
            .collect();
        options.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        for (j, _) in options {
            let mut next = uncovered.clone();
            next.difference_with(&self.sets[j]);
            self.stack.push(j);
            let r = self.run(&next);
            self.stack.pop();
            r?;
        }
        Ok(())
    }

    /// Number of uncovered elements that pairwise share no candidate; each
    /// needs its own set.
    fn lower_bound(&self, uncovered: &FixedBitSet) -> usize {
        let mut used = FixedBitSet::with_capacity(self.sets.len());
        let mut count = 0;
        for &e in &self.by_degree {
            if uncovered.contains(e) && self.covering[e].is_disjoint(&used) {
                used.union_with(&self.covering[e]);
                count += 1;
            }
        }
        count
    }
}

/// Conflict graph on `n` vertices: an edge joins two points that may not be
/// chosen together.
#[derive(Debug, Clone)]
pub struct Graph {
    pub adjacency: Vec<FixedBitSet>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adjacency: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.adjacency[a].insert(b);
        self.adjacency[b].insert(a);
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }
}

/// Greedy independent set in vertex order.
pub fn greedy_independent(graph: &Graph) -> Vec<usize> {
    let mut blocked = FixedBitSet::with_capacity(graph.len());
    let mut chosen = Vec::new();
    for v in 0..graph.len() {
        if !blocked.contains(v) {
            chosen.push(v);
            blocked.union_with(&graph.adjacency[v]);
            blocked.insert(v);
        }
    }
    chosen
}

/// Maximum independent set.
pub fn exact_independent(graph: &Graph, node_cap: Option<u64>) -> Result<Solution> {
    let incumbent = greedy_independent(graph);
    let mut search = MisSearch {
        graph,
        best: incumbent.clone(),
        stack: Vec::new(),
        nodes: 0,
        cap: node_cap,
    };
    let mut cand = FixedBitSet::with_capacity(graph.len());
    cand.insert_range(..);
    search.run(cand)?;
    let mut chosen = search.best;
    chosen.sort_unstable();
    Ok(Solution {
        chosen,
        nodes: search.nodes,
    })
}

struct MisSearch<'a> {
    graph: &'a Graph,
    best: Vec<usize>,
    stack: Vec<usize>,
    nodes: u64,
    cap: Option<u64>,
}

impl MisSearch<'_> {
    fn run(&mut self, mut cand: FixedBitSet) -> Result<()> {
        self.nodes += 1;
        if let Some(cap) = self.cap {
            if self.nodes > cap {
                return Err(Error::CapExceeded {
                    module: MODULE,
                    what: "branch-and-bound nodes",
                    limit: cap,
                    needed: self.nodes,
                });
            }
        }
        // isolated candidates can always be taken
        let isolated: Vec<usize> = cand
            .ones()
            .filter(|&v| self.graph.adjacency[v].is_disjoint(&cand))
            .collect();
        for &v in &isolated {
            cand.set(v, false);
            self.stack.push(v);
        }
        let result = self.branch(cand);
        for _ in &isolated {
            self.stack.pop();
        }
        result
    }

    fn branch(&mut self, cand: FixedBitSet) -> Result<()> {
        if cand.is_clear() {
            if self.stack.len() > self.best.len() {
                self.best = self.stack.clone();
            }
            return Ok(());
        }
        if self.stack.len() + self.clique_cover_bound(&cand) <= self.best.len() {
            return Ok(());
        }
        let v = cand
            .ones()
            .max_by_key(|&v| self.graph.adjacency[v].intersection_count(&cand))
            .expect("nonempty");
        let mut with = cand.clone();
        with.difference_with(&self.graph.adjacency[v]);
        with.set(v, false);
        self.stack.push(v);
        let r = self.run(with);
        self.stack.pop();
        r?;
        let mut without = cand;
        without.set(v, false);
        self.run(without)
    }

    /// Size of a greedy clique partition of the candidates: an independent
    /// set takes at most one vertex from each clique.
    fn clique_cover_bound(&self, cand: &FixedBitSet) -> usize {
        let mut left = cand.clone();
        let mut cliques = 0;
        while let Some(v) = left.ones().next() {
            let mut common = self.graph.adjacency[v].clone();
            common.intersect_with(&left);
            left.set(v, false);
            while let Some(u) = common.ones().next() {
                left.set(u, false);
                common.set(u, false);
                common.intersect_with(&self.graph.adjacency[u]);
            }
            cliques += 1;
        }
        cliques
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_cover(system: &SetSystem) -> usize {
        let m = system.sets.len();
        (0u32..1 << m)
            .filter(|mask| {
                let mut u = FixedBitSet::with_capacity(system.universe);
                for i in 0..m {
                    if mask >> i & 1 == 1 {
                        u.union_with(&system.sets[i]);
                    }
                }
                u.count_ones(..) == system.universe
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn greedy_is_suboptimal_on_classic_instance() {
        // greedy takes the big middle set first and then needs two more
        let mut s = SetSystem::new(6);
        s.push([0, 1, 2]);
        s.push([3, 4, 5]);
        s.push([1, 2, 3, 4]);
        s.push([0]);
        s.push([5]);
        assert_eq!(greedy_cover(&s).unwrap().len(), 3);
        let exact = exact_cover(&s, None).unwrap();
        assert_eq!(exact.chosen, vec![0, 1]);
    }

    #[test]
    fn exact_matches_brute_force_on_pseudorandom_systems() {
        let mut x: u64 = 0x9e3779b97f4a7c15;
        for _ in 0..100 {
            let universe = 8;
            let mut s = SetSystem::new(universe);
            for e in 0..universe {
                s.push([e]);
            }
            for _ in 0..6 {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                s.push((0..universe).filter(|&e| x >> e & 1 == 1));
            }
            let exact = exact_cover(&s, None).unwrap();
            assert_eq!(exact.chosen.len(), brute_cover(&s));
        }
    }

    #[test]
    fn infeasible_and_capped() {
        let mut s = SetSystem::new(3);
        s.push([0, 1]);
        assert!(exact_cover(&s, None).is_err());
        let mut s = SetSystem::new(40);
        for i in 0..40 {
            s.push([i, (i + 1) % 40, (i + 7) % 40]);
        }
        assert!(matches!(exact_cover(&s, Some(5)), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn independent_set_on_cycle_and_path() {
        let mut g = Graph::new(7);
        for i in 0..7 {
            g.add_edge(i, (i + 1) % 7);
        }
        assert_eq!(exact_independent(&g, None).unwrap().chosen.len(), 3);
        let mut g = Graph::new(5);
        for i in 0..4 {
            g.add_edge(i, i + 1);
        }
        assert_eq!(exact_independent(&g, None).unwrap().chosen, vec![0, 2, 4]);
        // star: greedy picks the center first, exact takes the leaves
        let mut g = Graph::new(5);
        for i in 1..5 {
            g.add_edge(0, i);
        }
        assert_eq!(greedy_independent(&g), vec![0]);
        assert_eq!(exact_independent(&g, None).unwrap().chosen, vec![1, 2, 3, 4]);
    }
}
