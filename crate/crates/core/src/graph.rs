//! Simple undirected graphs on at most 32 vertices.
//!
//! Vertices are `0..order()`. Neighborhoods are machine words ([`VertexSet`]),
//! so set operations (intersection, deletion masks, degree counts) are single
//! instructions. Every operation is a pure function of its inputs; `Graph` is
//! `Copy` and safe to share across workers.

use std::fmt;

use crate::error::GraphError;

/// Hard capacity: neighborhoods are `u32` bitmasks.
pub const MAX_VERTICES: usize = 32;

/// A set of vertices, represented as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn full(n: usize) -> Self {
        if n == 0 {
            VertexSet(0)
        } else {
            VertexSet(u32::MAX >> (32 - n))
        }
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = 0u32;
        for v in it {
            s |= 1 << v;
        }
        VertexSet(s)
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Simple undirected graph: no loops, no parallel edges, at most 32 vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: u8,
    adj: [u32; MAX_VERTICES],
}

impl Graph {
    /// The empty graph (no edges) on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n: n as u8,
            adj: [0; MAX_VERTICES],
        })
    }

    /// The complete graph K_n.
    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        let full = VertexSet::full(n).0;
        for v in 0..n {
            g.adj[v] = full & !(1 << v);
        }
        Ok(g)
    }

    /// The complete bipartite graph K_{m,n} with parts `{0..m}` and `{m..m+n}`.
    pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(m + n)?;
        let left = VertexSet::full(m).0;
        let right = VertexSet::full(m + n).0 & !left;
        for v in 0..m {
            g.adj[v] = right;
        }
        for v in m..m + n {
            g.adj[v] = left;
        }
        Ok(g)
    }

    /// The cycle C_n, n >= 3.
    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::CycleTooShort(n));
        }
        let mut g = Graph::empty(n)?;
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        Ok(g)
    }

    /// The path with `edges` edges (so `edges + 1` vertices).
    pub fn path(edges: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(edges + 1)?;
        for v in 0..edges {
            g.add_edge(v, v + 1);
        }
        Ok(g)
    }

    /// The star with `edges` edges: center 0 joined to `edges` leaves.
    pub fn star(edges: usize) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(edges + 1)?;
        for v in 1..=edges {
            g.add_edge(0, v);
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n as usize
    }

    /// Edge count.
    pub fn size(&self) -> usize {
        let mut s = 0usize;
        for v in 0..self.order() {
            s += self.adj[v].count_ones() as usize;
        }
        s / 2
    }

    /// Euler characteristic |G| - ||G||.
    pub fn euler_characteristic(&self) -> i32 {
        self.order() as i32 - self.size() as i32
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.order() && v < self.order());
        self.adj[u] & (1 << v) != 0
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u < self.order() && v < self.order() && u != v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        debug_assert!(v < self.order());
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    /// Edges as ordered pairs (u, v) with u < v, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.order()).flat_map(move |u| {
            VertexSet(self.adj[u] & !VertexSet::full(u + 1).0)
                .iter()
                .map(move |v| (u, v))
        })
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Degrees in non-increasing order.
    pub fn degree_sequence(&self) -> DegreeSequence {
        let mut d: Vec<usize> = self.vertices().map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence(d)
    }

    /// Vertex-disjoint union; vertices of `h` are shifted past those of `self`.
    pub fn disjoint_union(&self, h: &Graph) -> Result<Graph, GraphError> {
        let n = self.order() + h.order();
        let mut g = Graph::empty(n)?;
        g.adj[..self.order()].copy_from_slice(&self.adj[..self.order()]);
        for v in 0..h.order() {
            g.adj[self.order() + v] = h.adj[v] << self.order();
        }
        Ok(g)
    }

    /// Join: disjoint union plus all edges between the two vertex sets.
    pub fn join(&self, h: &Graph) -> Result<Graph, GraphError> {
        let mut g = self.disjoint_union(h)?;
        let left = VertexSet::full(self.order()).0;
        let right = VertexSet::full(g.order()).0 & !left;
        for v in 0..self.order() {
            g.adj[v] |= right;
        }
        for v in self.order()..g.order() {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let full = VertexSet::full(n).0;
        let mut g = Graph {
            n: self.n,
            adj: [0; MAX_VERTICES],
        };
        for v in 0..n {
            g.adj[v] = full & !self.adj[v] & !(1 << v);
        }
        g
    }

    /// Induced subgraph on `V(g) \ s`, relabeled contiguously.
    ///
    /// Returns the subgraph together with the relabeling: `map[new] = old`.
    pub fn delete_vertices(&self, s: VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if let Some(v) = s.difference(self.vertex_set()).min() {
            return Err(GraphError::UnknownVertex(v));
        }
        let keep: Vec<usize> = self.vertex_set().difference(s).iter().collect();
        let mut g = Graph::empty(keep.len()).expect("subgraph within capacity");
        for (i, &u) in keep.iter().enumerate() {
            for (j, &v) in keep.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok((g, keep))
    }

    /// Induced subgraph keeping original labels for the vertices in `keep`
    /// (other rows are cleared, order is unchanged). Internal helper for
    /// searches that must not relabel.
    pub(crate) fn masked(&self, keep: VertexSet) -> Graph {
        let mut g = *self;
        for v in 0..self.order() {
            if keep.contains(v) {
                g.adj[v] &= keep.0;
            } else {
                g.adj[v] = 0;
            }
        }
        g
    }

    /// Smooth the degree-2 vertex `c` and simplify: `c` is removed and the
    /// edge between its two neighbors is added unless already present.
    pub fn smooth_simplify(&self, c: usize) -> Result<Graph, GraphError> {
        if c >= self.order() {
            return Err(GraphError::UnknownVertex(c));
        }
        if self.degree(c) != 2 {
            return Err(GraphError::NotDegreeTwo {
                vertex: c,
                degree: self.degree(c),
            });
        }
        let mut nbrs = self.neighbors(c).iter();
        let d = nbrs.next().unwrap();
        let e = nbrs.next().unwrap();
        let mut g = *self;
        g.add_edge(d, e);
        let (mut h, _) = g.delete_vertices(VertexSet::singleton(c))?;
        h.n = g.n - 1;
        Ok(h)
    }

    /// Triangle-Y move: the triangle `t` is replaced by a new vertex joined
    /// to its three corners. Preserves the edge count.
    pub fn triangle_y(&self, t: [usize; 3]) -> Result<Graph, GraphError> {
        let [a, b, c] = t;
        for &v in &t {
            if v >= self.order() {
                return Err(GraphError::UnknownVertex(v));
            }
        }
        if !(self.has_edge(a, b) && self.has_edge(b, c) && self.has_edge(a, c)) {
            return Err(GraphError::NotATriangle(t));
        }
        if self.order() >= MAX_VERTICES {
            return Err(GraphError::TooManyVertices(self.order() + 1));
        }
        let mut g = *self;
        g.n += 1;
        let y = self.order();
        g.remove_edge(a, b);
        g.remove_edge(b, c);
        g.remove_edge(a, c);
        g.add_edge(y, a);
        g.add_edge(y, b);
        g.add_edge(y, c);
        Ok(g)
    }

    /// Y-triangle move: the degree-3 vertex `v` is deleted and its three
    /// neighbors made pairwise adjacent.
    pub fn y_triangle(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.order() {
            return Err(GraphError::UnknownVertex(v));
        }
        if self.degree(v) != 3 {
            return Err(GraphError::NotDegreeThree {
                vertex: v,
                degree: self.degree(v),
            });
        }
        let nbrs: Vec<usize> = self.neighbors(v).iter().collect();
        let mut g = *self;
        g.add_edge(nbrs[0], nbrs[1]);
        g.add_edge(nbrs[0], nbrs[2]);
        g.add_edge(nbrs[1], nbrs[2]);
        let (h, _) = g.delete_vertices(VertexSet::singleton(v))?;
        Ok(h)
    }

    /// Connected components as vertex sets, ordered by least vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for v in self.vertices() {
            if seen.contains(v) {
                continue;
            }
            let comp = self.reach(v, self.vertex_set());
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `start` inside `within`.
    pub(crate) fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut comp = VertexSet::singleton(start).intersection(within);
        loop {
            let mut next = comp;
            for v in comp.iter() {
                next = next.union(self.neighbors(v).intersection(within));
            }
            if next == comp {
                return comp;
            }
            comp = next;
        }
    }

    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.reach(0, self.vertex_set()) == self.vertex_set()
    }

    /// Relabel by a permutation: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.order());
        let mut g = Graph {
            n: self.n,
            adj: [0; MAX_VERTICES],
        };
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}-{}", u, v)?;
        }
        write!(f, "])")
    }
}

/// Vertex degrees in non-increasing order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeSequence(pub Vec<usize>);

impl DegreeSequence {
    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_sizes() {
        assert_eq!(Graph::complete(7).unwrap().size(), 21);
        assert_eq!(Graph::complete(1).unwrap().size(), 0);
        assert_eq!(Graph::complete(1).unwrap().order(), 1);
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.size(), 10);
        assert!(k5.vertices().all(|v| k5.degree(v) == 4));
        assert!(Graph::complete(33).is_err());
    }

    #[test]
    fn complete_bipartite_sizes() {
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        assert_eq!(k33.size(), 9);
        assert!(k33.vertices().all(|v| k33.degree(v) == 3));
        assert_eq!(Graph::complete_bipartite(1, 1).unwrap().size(), 1);
        let k23 = Graph::complete_bipartite(2, 3).unwrap();
        assert_eq!(k23.size(), 6);
        assert_eq!(k23.degree_sequence().0, vec![3, 3, 2, 2, 2]);
    }

    #[test]
    fn named_small_graphs() {
        let c3 = Graph::cycle(3).unwrap();
        assert_eq!((c3.order(), c3.size()), (3, 3));
        assert!(Graph::cycle(2).is_err());
        let s3 = Graph::star(3).unwrap();
        assert_eq!(s3.degree_sequence().0, vec![3, 1, 1, 1]);
        let p3 = Graph::path(3).unwrap();
        assert_eq!(p3.degree_sequence().0, vec![2, 2, 1, 1]);
    }

    #[test]
    fn union_and_join() {
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        let k2 = Graph::complete(2).unwrap();
        let u = k33.disjoint_union(&k2).unwrap();
        assert_eq!((u.order(), u.size()), (8, 10));
        let g = k33.disjoint_union(&Graph::empty(0).unwrap()).unwrap();
        assert_eq!(g, k33);
        let two_k33 = k33.disjoint_union(&k33).unwrap();
        assert_eq!((two_k33.order(), two_k33.size()), (12, 18));

        let k5 = Graph::complete(3).unwrap().join(&k2).unwrap();
        assert_eq!(k5, Graph::complete(5).unwrap());
        let k2j = Graph::empty(1)
            .unwrap()
            .join(&Graph::empty(1).unwrap())
            .unwrap();
        assert_eq!(k2j, Graph::complete(2).unwrap());
        let j = k33.join(&k2).unwrap();
        assert_eq!((j.order(), j.size()), (8, 22));
    }

    #[test]
    fn complement_involution() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.complement(), Graph::empty(5).unwrap());
        let j1 = Graph::complete(2)
            .unwrap()
            .disjoint_union(&Graph::cycle(6).unwrap())
            .unwrap()
            .complement();
        assert_eq!((j1.order(), j1.size()), (8, 21));
        assert_eq!(j1.complement().complement(), j1);
    }

    #[test]
    fn deletion() {
        let k7 = Graph::complete(7).unwrap();
        let (k5, map) = k7.delete_vertices(VertexSet::from_iter([1, 3])).unwrap();
        assert_eq!(k5, Graph::complete(5).unwrap());
        assert_eq!(map, vec![0, 2, 4, 5, 6]);
        let (same, _) = k7.delete_vertices(VertexSet::EMPTY).unwrap();
        assert_eq!(same, k7);
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        let (k23, _) = k33.delete_vertices(VertexSet::singleton(0)).unwrap();
        assert_eq!(k23, Graph::complete_bipartite(2, 3).unwrap());
        assert!(k7.delete_vertices(VertexSet::singleton(7)).is_err());
    }

    #[test]
    fn smoothing() {
        let p2 = Graph::path(2).unwrap();
        assert_eq!(p2.smooth_simplify(1).unwrap(), Graph::complete(2).unwrap());
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.smooth_simplify(0).unwrap(), Graph::cycle(3).unwrap());
        // parallel edge is dropped
        let c3 = Graph::cycle(3).unwrap();
        assert_eq!(c3.smooth_simplify(2).unwrap(), Graph::complete(2).unwrap());
        assert!(Graph::complete(4).unwrap().smooth_simplify(0).is_err());
    }

    #[test]
    fn triangle_y_moves() {
        let k7 = Graph::complete(7).unwrap();
        let h8 = k7.triangle_y([0, 1, 2]).unwrap();
        assert_eq!((h8.order(), h8.size()), (8, 21));
        assert_eq!(h8.degree_sequence().0, vec![6, 6, 6, 6, 5, 5, 5, 3]);
        // inverse move restores K7
        assert_eq!(h8.y_triangle(7).unwrap(), k7);
        let c3 = Graph::cycle(3).unwrap();
        let y = c3.triangle_y([0, 1, 2]).unwrap();
        assert_eq!(y.degree_sequence().0, vec![3, 1, 1, 1]);
        assert!(Graph::star(3).unwrap().y_triangle(1).is_err());
        assert!(c3.triangle_y([0, 1, 1]).is_err());
    }

    #[test]
    fn components_and_connectivity() {
        let g = Graph::cycle(3)
            .unwrap()
            .disjoint_union(&Graph::path(2).unwrap())
            .unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], VertexSet::from_iter([0, 1, 2]));
        assert!(!g.is_connected());
        assert!(Graph::empty(0).unwrap().is_connected());
    }
}
