//! Graph minor containment by branch-set search.
//!
//! A minor model maps each pattern vertex to a connected branch set in the
//! host, sets pairwise disjoint, with a host edge realizing every pattern
//! edge. Pattern vertices are placed in decreasing-degree order; candidate
//! branch sets are enumerated as connected subsets of the unused host
//! vertices, each set required to touch every already-placed pattern
//! neighbor. Ties and enumeration order are fixed by vertex index so the
//! returned model is deterministic.

use crate::error::GraphError;
use crate::graph::{Graph, VertexSet};

/// Witness that `pattern` is a minor of some host graph.
#[derive(Clone, Debug)]
pub struct MinorModel {
    pub pattern: Graph,
    /// branch_sets[p] hosts pattern vertex p.
    pub branch_sets: Vec<VertexSet>,
    /// For each pattern edge (i, j) with i < j, a host edge between the
    /// corresponding branch sets.
    pub edge_witnesses: Vec<((usize, usize), (usize, usize))>,
}

impl MinorModel {
    /// Check every invariant against the host graph.
    pub fn verify(&self, host: &Graph) -> bool {
        if self.branch_sets.len() != self.pattern.order() {
            return false;
        }
        let mut union = VertexSet::EMPTY;
        for &s in &self.branch_sets {
            if s.is_empty() || !s.intersection(union).is_empty() || !s.is_subset(host.vertex_set())
            {
                return false;
            }
            union = union.union(s);
            let root = s.min().unwrap();
            if host.reach(root, s) != s {
                return false;
            }
        }
        let mut pattern_edges: Vec<(usize, usize)> = self.pattern.edges().collect();
        for &((i, j), (u, v)) in &self.edge_witnesses {
            if !host.has_edge(u, v) {
                return false;
            }
            let si = self.branch_sets[i];
            let sj = self.branch_sets[j];
            if !((si.contains(u) && sj.contains(v)) || (si.contains(v) && sj.contains(u))) {
                return false;
            }
            pattern_edges.retain(|&e| e != (i.min(j), i.max(j)));
        }
        pattern_edges.is_empty()
    }
}

/// Search for a minor model of `pattern` inside `g`. Patterns are capped at
/// 10 vertices; the search is exponential in the pattern.
pub fn has_minor(g: &Graph, pattern: &Graph) -> Result<Option<MinorModel>, GraphError> {
    if pattern.order() > 10 {
        return Err(GraphError::PatternTooLarge(pattern.order()));
    }
    if pattern.order() > g.order() || pattern.size() > g.size() {
        return Ok(None);
    }
    if pattern.order() == 0 {
        return Ok(Some(MinorModel {
            pattern: *pattern,
            branch_sets: Vec::new(),
            edge_witnesses: Vec::new(),
        }));
    }
    // a connected pattern lives inside a single host component
    if pattern.is_connected() && !g.is_connected() {
        for comp in g.components() {
            if comp.len() < pattern.order() {
                continue;
            }
            let sub = g.masked(comp);
            if let Some(mut model) = search(&sub, pattern) {
                // vertex labels are unchanged by masking
                model.pattern = *pattern;
                if model.verify(g) {
                    return Ok(Some(model));
                }
            }
        }
        return Ok(None);
    }
    Ok(search(g, pattern))
}

struct MinorSearch<'a> {
    host: &'a Graph,
    pattern: &'a Graph,
    /// pattern vertices in placement order (decreasing degree, then index)
    order: Vec<usize>,
    /// branch set per placement slot
    sets: Vec<VertexSet>,
    used: VertexSet,
}

fn search(host: &Graph, pattern: &Graph) -> Option<MinorModel> {
    let mut order: Vec<usize> = pattern.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(pattern.degree(v)), v));
    let k = pattern.order();
    let mut s = MinorSearch {
        host,
        pattern,
        order,
        sets: vec![VertexSet::EMPTY; k],
        used: VertexSet::EMPTY,
    };
    if !s.place(0) {
        return None;
    }
    // back-fill branch sets in pattern order and derive edge witnesses
    let mut branch_sets = vec![VertexSet::EMPTY; k];
    for (slot, &p) in s.order.iter().enumerate() {
        branch_sets[p] = s.sets[slot];
    }
    let mut edge_witnesses = Vec::new();
    for (i, j) in pattern.edges() {
        let w = find_witness(host, branch_sets[i], branch_sets[j])?;
        edge_witnesses.push(((i, j), w));
    }
    let model = MinorModel {
        pattern: *pattern,
        branch_sets,
        edge_witnesses,
    };
    debug_assert!(model.verify(host));
    Some(model)
}

fn find_witness(host: &Graph, a: VertexSet, b: VertexSet) -> Option<(usize, usize)> {
    for u in a.iter() {
        let hit = host.neighbors(u).intersection(b);
        if let Some(v) = hit.min() {
            return Some((u, v));
        }
    }
    None
}

impl MinorSearch<'_> {
    fn place(&mut self, slot: usize) -> bool {
        if slot == self.order.len() {
            return true;
        }
        let p = self.order[slot];
        // earlier slots this one must attach to
        let mut req_slots: Vec<usize> = Vec::new();
        for (e, &q) in self.order[..slot].iter().enumerate() {
            if self.pattern.has_edge(p, q) {
                req_slots.push(e);
            }
        }
        let free = self.host.vertex_set().difference(self.used);
        let remaining_after = self.order.len() - slot - 1;
        if free.len() < remaining_after + 1 {
            return false;
        }
        let max_size = free.len() - remaining_after;
        let req_sets: Vec<VertexSet> = req_slots.iter().map(|&e| self.sets[e]).collect();
        // sets whose least vertex is `root`, for each root in order
        for root in free.iter() {
            let allowed = free.difference(VertexSet::full(root));
            let stop = self.grow(
                slot,
                &req_sets,
                VertexSet::singleton(root),
                self.host.neighbors(root).intersection(allowed),
                VertexSet::EMPTY,
                allowed,
                max_size,
            );
            if stop {
                return true;
            }
        }
        self.sets[slot] = VertexSet::EMPTY;
        false
    }

    /// Enumerate connected candidate sets by growth; each connected subset of
    /// `allowed` containing the initial set is visited exactly once. Returns
    /// true as soon as a candidate completes the whole placement.
    #[allow(clippy::too_many_arguments)]
    fn grow(
        &mut self,
        slot: usize,
        req_sets: &[VertexSet],
        set: VertexSet,
        frontier: VertexSet,
        banned: VertexSet,
        allowed: VertexSet,
        max_size: usize,
    ) -> bool {
        if req_sets.iter().all(|&r| touches(self.host, set, r)) {
            self.sets[slot] = set;
            self.used = self.used.union(set);
            if self.place(slot + 1) {
                return true;
            }
            self.used = self.used.difference(set);
        }
        if set.len() == max_size {
            return false;
        }
        let mut frontier = frontier;
        let mut banned = banned;
        while let Some(v) = frontier.min() {
            frontier.remove(v);
            // branch: include v (frontier gains v's neighbors), with all
            // previously skipped vertices still banned
            let new_frontier = frontier
                .union(self.host.neighbors(v).intersection(allowed))
                .difference(set)
                .difference(banned)
                .difference(VertexSet::singleton(v));
            if self.grow(
                slot,
                req_sets,
                set.union(VertexSet::singleton(v)),
                new_frontier,
                banned,
                allowed,
                max_size,
            ) {
                return true;
            }
            // exclude v from any further set in this branch
            banned.insert(v);
        }
        false
    }
}

fn touches(host: &Graph, a: VertexSet, b: VertexSet) -> bool {
    a.iter().any(|u| !host.neighbors(u).intersection(b).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen() -> Graph {
        let mut g = Graph::empty(10).unwrap();
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5); // outer cycle
            g.add_edge(5 + i, 5 + (i + 2) % 5); // inner pentagram
            g.add_edge(i, 5 + i); // spokes
        }
        g
    }

    #[test]
    fn petersen_has_k5_minor() {
        let model = has_minor(&petersen(), &Graph::complete(5).unwrap())
            .unwrap()
            .expect("contract the spokes");
        assert!(model.verify(&petersen()));
    }

    #[test]
    fn k4_has_no_k5_minor() {
        assert!(has_minor(&Graph::complete(4).unwrap(), &Graph::complete(5).unwrap())
            .unwrap()
            .is_none());
    }

    #[test]
    fn split_k33_has_k33_minor() {
        // split a vertex of K3,3 into two: 7 vertices, 10 edges
        let mut g = Graph::empty(7).unwrap();
        // parts {0,1,2} and {3,4,5}; vertex 0 split into 0 and 6
        for u in [0, 1, 2] {
            for v in [3, 4, 5] {
                g.add_edge(u, v);
            }
        }
        g.remove_edge(0, 3);
        g.add_edge(6, 3);
        g.add_edge(0, 6);
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        let model = has_minor(&g, &k33).unwrap().expect("contract the split edge");
        assert!(model.verify(&g));
    }

    #[test]
    fn pattern_cap() {
        assert!(matches!(
            has_minor(&Graph::complete(12).unwrap(), &Graph::complete(11).unwrap()),
            Err(GraphError::PatternTooLarge(11))
        ));
    }

    #[test]
    fn minor_in_disconnected_host() {
        let g = Graph::cycle(4)
            .unwrap()
            .disjoint_union(&Graph::complete(5).unwrap())
            .unwrap();
        let model = has_minor(&g, &Graph::complete(5).unwrap()).unwrap().unwrap();
        assert!(model.verify(&g));
    }

    #[test]
    fn k7_minor_of_itself_only_when_present() {
        let k7 = Graph::complete(7).unwrap();
        assert!(has_minor(&k7, &k7).unwrap().is_some());
        let mut k7e = k7;
        k7e.remove_edge(0, 1);
        assert!(has_minor(&k7e, &k7).unwrap().is_none());
    }

    #[test]
    fn disconnected_pattern() {
        let pat = Graph::cycle(3)
            .unwrap()
            .disjoint_union(&Graph::cycle(3).unwrap())
            .unwrap();
        let host = Graph::complete(7).unwrap();
        assert!(has_minor(&host, &pat).unwrap().is_some());
        let small = Graph::complete(5).unwrap();
        assert!(has_minor(&small, &pat).unwrap().is_none());
    }
}
