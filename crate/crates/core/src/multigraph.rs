//! Multigraphs with loops, for multiplicity-preserving topological
//! simplification. The simple-graph pipeline ([`crate::reduce`]) collapses
//! parallel edges; this one keeps them, which is what topological
//! equivalence tests need.

use crate::graph::{Graph, VertexSet, MAX_VERTICES};

/// Undirected multigraph on at most 32 vertices. `mult[u][v]` is the edge
/// multiplicity; `mult[v][v]` counts loops at `v` (each loop adds 2 to the
/// degree).
#[derive(Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    mult: [[u8; MAX_VERTICES]; MAX_VERTICES],
}

impl Multigraph {
    pub fn empty(n: usize) -> Multigraph {
        assert!(n <= MAX_VERTICES);
        Multigraph {
            n,
            mult: [[0; MAX_VERTICES]; MAX_VERTICES],
        }
    }

    pub fn from_graph(g: &Graph) -> Multigraph {
        let mut m = Multigraph::empty(g.order());
        for (u, v) in g.edges() {
            m.add_edge(u, v);
        }
        m
    }

    /// Drop loops and collapse multiplicities.
    pub fn simplify_to_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("within capacity");
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.mult[u][v] > 0 {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.mult[u][v] as usize
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            self.mult[u][u] += 1;
        } else {
            self.mult[u][v] += 1;
            self.mult[v][u] += 1;
        }
    }

    /// Total edge count, loops included.
    pub fn size(&self) -> usize {
        let mut s = 0usize;
        for u in 0..self.n {
            s += self.mult[u][u] as usize;
            for v in u + 1..self.n {
                s += self.mult[u][v] as usize;
            }
        }
        s
    }

    /// Multigraph degree: one per edge endpoint, so a loop contributes 2.
    pub fn degree(&self, v: usize) -> usize {
        let mut d = 2 * self.mult[v][v] as usize;
        for u in 0..self.n {
            if u != v {
                d += self.mult[v][u] as usize;
            }
        }
        d
    }

    pub fn loops(&self, v: usize) -> usize {
        self.mult[v][v] as usize
    }

    /// Topological simplification preserving multiplicity: repeatedly delete
    /// degree-0 and degree-1 vertices and smooth degree-2 vertices, keeping
    /// loops and parallel edges. A vertex carrying only its own loop is a
    /// fixed point (there is nothing to smooth it into). The result is
    /// relabeled contiguously.
    pub fn simplified(&self) -> Multigraph {
        let mut m = self.clone();
        let mut alive: Vec<bool> = vec![true; m.n];
        loop {
            let mut acted = false;
            for v in 0..m.n {
                if !alive[v] {
                    continue;
                }
                match m.degree(v) {
                    0 => {
                        alive[v] = false;
                        acted = true;
                    }
                    1 => {
                        let u = (0..m.n).find(|&u| u != v && m.mult[v][u] > 0).unwrap();
                        m.mult[v][u] = 0;
                        m.mult[u][v] = 0;
                        alive[v] = false;
                        acted = true;
                    }
                    2 => {
                        if m.mult[v][v] == 1 {
                            // bare loop component: leave it be
                            continue;
                        }
                        let mut ends = Vec::with_capacity(2);
                        for u in 0..m.n {
                            if u != v {
                                for _ in 0..m.mult[v][u] {
                                    ends.push(u);
                                }
                            }
                        }
                        debug_assert_eq!(ends.len(), 2);
                        m.mult[v][ends[0]] = 0;
                        m.mult[ends[0]][v] = 0;
                        m.mult[v][ends[1]] = 0;
                        m.mult[ends[1]][v] = 0;
                        alive[v] = false;
                        m.add_edge(ends[0], ends[1]);
                        acted = true;
                    }
                    _ => {}
                }
            }
            if !acted {
                break;
            }
        }
        let keep: Vec<usize> = (0..m.n).filter(|&v| alive[v]).collect();
        let mut out = Multigraph::empty(keep.len());
        for (i, &u) in keep.iter().enumerate() {
            out.mult[i][i] = m.mult[u][u];
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                out.mult[i][j] = m.mult[u][v];
                out.mult[j][i] = m.mult[u][v];
            }
        }
        out
    }

    /// Exact isomorphism test (multiplicities and loops must match). Only
    /// intended for the small graphs that simplification leaves behind.
    pub fn is_isomorphic_to(&self, other: &Multigraph) -> bool {
        if self.n != other.n || self.size() != other.size() {
            return false;
        }
        let mut d1: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut d2: Vec<usize> = (0..other.n).map(|v| other.degree(v)).collect();
        d1.sort_unstable();
        d2.sort_unstable();
        if d1 != d2 {
            return false;
        }
        let mut perm: Vec<usize> = Vec::with_capacity(self.n);
        let mut used = VertexSet::EMPTY;
        self.iso_search(other, &mut perm, &mut used)
    }

    fn iso_search(&self, other: &Multigraph, perm: &mut Vec<usize>, used: &mut VertexSet) -> bool {
        let v = perm.len();
        if v == self.n {
            return true;
        }
        for img in 0..self.n {
            if used.contains(img) {
                continue;
            }
            if self.mult[v][v] != other.mult[img][img] {
                continue;
            }
            if (0..v).any(|u| self.mult[v][u] != other.mult[perm[u]][img]) {
                continue;
            }
            perm.push(img);
            used.insert(img);
            if self.iso_search(other, perm, used) {
                return true;
            }
            used.remove(img);
            perm.pop();
        }
        false
    }
}

impl std::fmt::Debug for Multigraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Multigraph(n={}, edges=[", self.n)?;
        let mut first = true;
        for u in 0..self.n {
            for v in u..self.n {
                if self.mult[u][v] > 0 {
                    if !first {
                        write!(f, " ")?;
                    }
                    write!(f, "{}-{}x{}", u, v, self.mult[u][v])?;
                    first = false;
                }
            }
        }
        write!(f, "])")
    }
}
