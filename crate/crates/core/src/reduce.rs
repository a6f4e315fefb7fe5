//! Simple-graph topological reduction: strip degree-0/1 vertices and smooth
//! degree-2 vertices (dropping any parallel edge that appears) until the
//! minimum degree is at least 3 or nothing is left.
//!
//! Apex numbers are invariant under these moves in both directions: the
//! reduced graph is a minor of the input, and an apex set of the reduced
//! graph pulls back to the input. Solvers therefore reduce first.

use crate::graph::{Graph, VertexSet};

/// One reduction step, in the vertex labels of the *input* graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionStep {
    DeleteIsolated(usize),
    DeleteLeaf(usize),
    /// `c` smoothed between neighbors `d` and `e`; `simplified` records
    /// whether the edge `de` already existed (so a parallel copy was dropped).
    Smooth {
        c: usize,
        d: usize,
        e: usize,
        simplified: bool,
    },
}

/// Replayable record of a reduction run.
#[derive(Clone, Debug, Default)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    /// Relabeling of the output: `vertex_map[new] = old`.
    pub vertex_map: Vec<usize>,
}

impl ReductionTrace {
    /// Re-run the recorded steps against `input`; returns the reduced graph
    /// if every step applies exactly as recorded.
    pub fn replay(&self, input: &Graph) -> Option<Graph> {
        let mut g = *input;
        let mut alive = g.vertex_set();
        for step in &self.steps {
            match *step {
                ReductionStep::DeleteIsolated(v) => {
                    if !alive.contains(v) || g.degree(v) != 0 {
                        return None;
                    }
                    alive.remove(v);
                }
                ReductionStep::DeleteLeaf(v) => {
                    if !alive.contains(v) || g.degree(v) != 1 {
                        return None;
                    }
                    let u = g.neighbors(v).min().unwrap();
                    g.remove_edge(v, u);
                    alive.remove(v);
                }
                ReductionStep::Smooth { c, d, e, simplified } => {
                    if !alive.contains(c) || g.neighbors(c) != VertexSet::from_iter([d, e]) {
                        return None;
                    }
                    if g.has_edge(d, e) != simplified {
                        return None;
                    }
                    g.remove_edge(c, d);
                    g.remove_edge(c, e);
                    g.add_edge(d, e);
                    alive.remove(c);
                }
            }
        }
        let drop = g.vertex_set().difference(alive);
        let (out, map) = g.masked(alive).delete_vertices(drop).ok()?;
        if map == self.vertex_map {
            Some(out)
        } else {
            None
        }
    }
}

/// Fully reduce `g`, recording every step. The output has minimum degree
/// at least 3 or is empty.
pub fn reduce(g: &Graph) -> (Graph, ReductionTrace) {
    let mut work = *g;
    let mut alive = g.vertex_set();
    let mut steps = Vec::new();
    loop {
        let mut acted = false;
        for v in g.vertices() {
            if !alive.contains(v) {
                continue;
            }
            match work.degree(v) {
                0 => {
                    steps.push(ReductionStep::DeleteIsolated(v));
                    alive.remove(v);
                    acted = true;
                }
                1 => {
                    let u = work.neighbors(v).min().unwrap();
                    work.remove_edge(v, u);
                    steps.push(ReductionStep::DeleteLeaf(v));
                    alive.remove(v);
                    acted = true;
                }
                2 => {
                    let mut it = work.neighbors(v).iter();
                    let d = it.next().unwrap();
                    let e = it.next().unwrap();
                    let simplified = work.has_edge(d, e);
                    work.remove_edge(v, d);
                    work.remove_edge(v, e);
                    work.add_edge(d, e);
                    steps.push(ReductionStep::Smooth { c: v, d, e, simplified });
                    alive.remove(v);
                    acted = true;
                }
                _ => {}
            }
        }
        if !acted {
            break;
        }
    }
    let drop = g.vertex_set().difference(alive);
    let (out, vertex_map) = work.masked(alive).delete_vertices(drop).expect("alive set valid");
    (out, ReductionTrace { steps, vertex_map })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trees_reduce_to_nothing() {
        for t in [Graph::path(5).unwrap(), Graph::star(6).unwrap()] {
            let (r, trace) = reduce(&t);
            assert_eq!(r.order(), 0);
            assert_eq!(trace.steps.len(), t.order());
        }
    }

    #[test]
    fn cycles_reduce_to_nothing() {
        for n in 3..=6 {
            let (r, _) = reduce(&Graph::cycle(n).unwrap());
            assert_eq!(r.order(), 0, "cycle({}) should vanish", n);
        }
    }

    #[test]
    fn subdivided_k5_reduces_to_k5() {
        // subdivide edge 0-1 of K5 with a new vertex 5
        let mut g = Graph::complete(5).unwrap().disjoint_union(&Graph::empty(1).unwrap()).unwrap();
        g.remove_edge(0, 1);
        g.add_edge(0, 5);
        g.add_edge(1, 5);
        let (r, trace) = reduce(&g);
        assert_eq!(r, Graph::complete(5).unwrap());
        assert_eq!(trace.steps.len(), 1);
    }

    #[test]
    fn min_degree_or_empty() {
        let g = Graph::complete(4)
            .unwrap()
            .disjoint_union(&Graph::path(3).unwrap())
            .unwrap();
        let (r, _) = reduce(&g);
        assert!(r.order() == 0 || r.min_degree() >= 3);
        assert_eq!(r, Graph::complete(4).unwrap());
    }

    #[test]
    fn trace_replays() {
        for g in [
            Graph::cycle(5).unwrap(),
            Graph::complete(5).unwrap(),
            Graph::star(3).unwrap().disjoint_union(&Graph::complete(4).unwrap()).unwrap(),
        ] {
            let (r, trace) = reduce(&g);
            assert_eq!(trace.replay(&g), Some(r));
        }
    }
}
