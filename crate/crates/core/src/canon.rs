//! Canonical labeling and isomorphism testing.
//!
//! The canonical form of a graph is the lexicographically greatest
//! upper-triangle bit string (column-major, the graph6 bit order) over all
//! relabelings. Maximizing rather than minimizing makes the prefix greedy in
//! adjacency, which keeps the search tree thin on the sparse graphs the
//! enumeration works through.
//!
//! The search places one canonical position at a time. Candidates for the
//! next position are scored by their adjacency column against the already
//! placed prefix; only candidates achieving the maximal column can lead to
//! the maximum, so all others are cut. Remaining ties are pruned
//! by twin collapsing: if two tied candidates have identical neighborhoods
//! (off each other), swapping them is an automorphism fixing the prefix, so
//! only one branch is explored.

use crate::graph::{Graph, VertexSet, MAX_VERTICES};

/// Relabeling-invariant certificate: the canonical upper-triangle bits and
/// one permutation realizing them (`perm[old] = canonical position`).
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct CanonicalForm {
    order: u8,
    bits: [u64; 8],
    perm: [u8; MAX_VERTICES],
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order as usize
    }

    /// The permutation sending the original graph onto the canonical graph.
    pub fn permutation(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.perm[v] as usize).collect()
    }

    /// Upper-triangle bits under the canonical labeling, column-major.
    pub fn bit_string(&self) -> Vec<bool> {
        let n = self.order();
        (0..n * n.saturating_sub(1) / 2)
            .map(|i| self.bits[i / 64] >> (63 - i % 64) & 1 == 1)
            .collect()
    }

    /// The canonical representative graph.
    pub fn graph(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::empty(n).expect("within capacity");
        let mut idx = 0usize;
        for j in 1..n {
            for i in 0..j {
                if self.bits[idx / 64] >> (63 - idx % 64) & 1 == 1 {
                    g.add_edge(i, j);
                }
                idx += 1;
            }
        }
        g
    }

    /// Compact key for hashing/sorting: order byte plus packed bits.
    pub fn key(&self) -> CanonKey {
        (self.order, self.bits)
    }

    /// The edge of the *original* graph that maps to the last canonical
    /// bit position (the deletion the enumeration's parent rule uses).
    pub fn last_edge(&self) -> Option<(usize, usize)> {
        let n = self.order();
        let nbits = n * n.saturating_sub(1) / 2;
        let mut last = None;
        for b in (0..nbits).rev() {
            if self.bits[b / 64] >> (63 - b % 64) & 1 == 1 {
                last = Some(b);
                break;
            }
        }
        let b = last?;
        // column j holds bits [j(j-1)/2, j(j-1)/2 + j)
        let mut j = 1;
        while (j + 1) * j / 2 <= b {
            j += 1;
        }
        let i = b - j * (j - 1) / 2;
        // pull back through the permutation
        let mut inv = [0usize; MAX_VERTICES];
        for v in 0..n {
            inv[self.perm[v] as usize] = v;
        }
        let (u, v) = (inv[i], inv[j]);
        Some((u.min(v), u.max(v)))
    }
}

/// Order byte plus packed canonical bits.
pub type CanonKey = (u8, [u64; 8]);

struct Searcher<'a> {
    g: &'a Graph,
    n: usize,
    best: [u64; 8],
    best_perm: [u8; MAX_VERTICES],
    have_best: bool,
    // position[k] = original vertex placed at canonical position k
    position: [u8; MAX_VERTICES],
    placed: VertexSet,
    // bit cursor: bits of columns 0..k packed as we go
    bits: [u64; 8],
}

impl<'a> Searcher<'a> {
    fn new(g: &'a Graph) -> Self {
        Searcher {
            g,
            n: g.order(),
            best: [0; 8],
            best_perm: [0; MAX_VERTICES],
            have_best: false,
            position: [0; MAX_VERTICES],
            placed: VertexSet::EMPTY,
            bits: [0; 8],
        }
    }

    /// Column bits of candidate `v` at position `k`: adjacency to the placed
    /// prefix, packed little-index-first into a u32.
    fn column(&self, v: usize, k: usize) -> u32 {
        let mut col = 0u32;
        for i in 0..k {
            col = col << 1 | self.g.has_edge(self.position[i] as usize, v) as u32;
        }
        col
    }

    fn search(&mut self, k: usize, bit_cursor: usize) {
        if k == self.n {
            let cand = self.bits;
            if !self.have_best || cand > self.best {
                self.best = cand;
                self.have_best = true;
                for pos in 0..self.n {
                    self.best_perm[self.position[pos] as usize] = pos as u8;
                }
            }
            return;
        }
        // score all unplaced candidates; keep those with the max column
        let mut max_col = 0u32;
        let mut ties: [u8; MAX_VERTICES] = [0; MAX_VERTICES];
        let mut nties = 0usize;
        for v in 0..self.n {
            if self.placed.contains(v) {
                continue;
            }
            let col = self.column(v, k);
            if nties == 0 || col > max_col {
                max_col = col;
                ties[0] = v as u8;
                nties = 1;
            } else if col == max_col {
                ties[nties] = v as u8;
                nties += 1;
            }
        }
        // write the forced column bits
        let saved = self.bits;
        for i in 0..k {
            if (max_col >> (k - 1 - i)) & 1 == 1 {
                let pos = bit_cursor + i;
                self.bits[pos / 64] |= 1 << (63 - pos % 64);
            }
        }
        // prune a subtree whose written prefix already falls below the best
        if self.have_best && self.prefix_below_best(bit_cursor + k) {
            self.bits = saved;
            return;
        }
        // order ties by degree so a near-maximal labeling is found early
        let ties = &mut ties[..nties];
        ties.sort_unstable_by_key(|&v| std::cmp::Reverse(self.g.degree(v as usize)));
        // branch over non-twin tied candidates
        let mut tried: [u8; MAX_VERTICES] = [0; MAX_VERTICES];
        let mut ntried = 0usize;
        'cand: for t in 0..nties {
            let v = ties[t] as usize;
            let nv = self.g.neighbors(v);
            for e in 0..ntried {
                let u = tried[e] as usize;
                let nu = self.g.neighbors(u);
                if nv.difference(VertexSet::singleton(u)) == nu.difference(VertexSet::singleton(v)) {
                    continue 'cand; // twin of an already-tried candidate
                }
            }
            tried[ntried] = v as u8;
            ntried += 1;
            self.position[k] = v as u8;
            self.placed.insert(v);
            self.search(k + 1, bit_cursor + k);
            self.placed.remove(v);
        }
        self.bits = saved;
    }

    /// True when the first `nbits` written bits compare strictly below the
    /// best leaf found so far. Equality and strict dominance both continue:
    /// if the prefix beats the current best the subtree rewrites it anyway.
    fn prefix_below_best(&self, nbits: usize) -> bool {
        let full_words = nbits / 64;
        for w in 0..full_words {
            if self.bits[w] != self.best[w] {
                return self.bits[w] < self.best[w];
            }
        }
        let rem = nbits % 64;
        if rem > 0 {
            let mask = !0u64 << (64 - rem);
            let a = self.bits[full_words] & mask;
            let b = self.best[full_words] & mask;
            if a != b {
                return a < b;
            }
        }
        false
    }
}

/// Compute the canonical form. Deterministic; equal forms exactly for
/// isomorphic graphs.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let mut s = Searcher::new(g);
    s.search(0, 0);
    if g.order() == 0 {
        return CanonicalForm {
            order: 0,
            bits: [0; 8],
            perm: [0; MAX_VERTICES],
        };
    }
    CanonicalForm {
        order: g.order() as u8,
        bits: s.best,
        perm: s.best_perm,
    }
}

/// Isomorphism test with certificate: the permutation sends `g` onto `h`
/// (`perm[v in g] = image in h`).
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if g.order() != h.order() || g.size() != h.size() {
        return None;
    }
    let cg = canonical_form(g);
    let ch = canonical_form(h);
    if cg.key() != ch.key() {
        return None;
    }
    // perm = ch^{-1} . cg
    let pg = cg.permutation();
    let ph = ch.permutation();
    let mut inv_h = vec![0usize; h.order()];
    for (v, &p) in ph.iter().enumerate() {
        inv_h[p] = v;
    }
    let perm: Vec<usize> = (0..g.order()).map(|v| inv_h[pg[v]]).collect();
    debug_assert_eq!(&g.permuted(&perm), h);
    Some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn random_graph(rng: &mut StdRng, n: usize, p: f64) -> Graph {
        let mut g = Graph::empty(n).unwrap();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    #[test]
    fn invariant_under_relabeling() {
        let mut rng = StdRng::seed_from_u64(7);
        let base = Graph::complete_bipartite(3, 3).unwrap();
        let cf = canonical_form(&base);
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..6).collect();
            perm.shuffle(&mut rng);
            assert_eq!(canonical_form(&base.permuted(&perm)).key(), cf.key());
        }
    }

    #[test]
    fn permutation_realizes_canonical_graph() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..=10);
            let g = random_graph(&mut rng, n, 0.4);
            let cf = canonical_form(&g);
            assert_eq!(g.permuted(&cf.permutation()), cf.graph());
        }
    }

    /// Factorial-time oracle: distinct canonical forms over all labeled
    /// graphs on 4 vertices must number exactly 11.
    #[test]
    fn eleven_classes_on_four_vertices() {
        let mut forms = std::collections::HashSet::new();
        for mask in 0u32..64 {
            let mut g = Graph::empty(4).unwrap();
            let pairs = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)];
            for (b, &(u, v)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            forms.insert(canonical_form(&g).key());
        }
        assert_eq!(forms.len(), 11);
    }

    /// Oracle cross-check: the canonical graph equals the max over all
    /// permutations, for every graph on up to 5 vertices.
    #[test]
    fn matches_bruteforce_up_to_n5() {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        fn bits_of(g: &Graph) -> Vec<bool> {
            let n = g.order();
            let mut bits = Vec::new();
            for j in 1..n {
                for i in 0..j {
                    bits.push(g.has_edge(i, j));
                }
            }
            bits
        }
        for n in 0..=5usize {
            let nbits = n * n.saturating_sub(1) / 2;
            let all_perms = perms(n);
            for mask in 0u32..(1 << nbits) {
                let mut g = Graph::empty(n).unwrap();
                let mut b = 0;
                for j in 1..n {
                    for i in 0..j {
                        if mask >> b & 1 == 1 {
                            g.add_edge(i, j);
                        }
                        b += 1;
                    }
                }
                let expect = all_perms
                    .iter()
                    .map(|p| bits_of(&g.permuted(p)))
                    .max()
                    .unwrap();
                assert_eq!(canonical_form(&g).bit_string(), expect, "n={} mask={}", n, mask);
            }
        }
    }

    #[test]
    fn distinguishes_same_degree_sequence() {
        let c6 = Graph::cycle(6).unwrap();
        let two_c3 = Graph::cycle(3)
            .unwrap()
            .disjoint_union(&Graph::cycle(3).unwrap())
            .unwrap();
        assert_ne!(canonical_form(&c6).key(), canonical_form(&two_c3).key());
        assert!(are_isomorphic(&c6, &two_c3).is_none());
    }

    #[test]
    fn iso_certificates() {
        let mut rng = StdRng::seed_from_u64(3);
        let c6 = Graph::cycle(6).unwrap();
        let mut perm: Vec<usize> = (0..6).collect();
        perm.shuffle(&mut rng);
        let h = c6.permuted(&perm);
        let cert = are_isomorphic(&c6, &h).expect("isomorphic");
        assert_eq!(c6.permuted(&cert), h);

        // all triangles of K7 are equivalent
        let k7 = Graph::complete(7).unwrap();
        let h8a = k7.triangle_y([0, 1, 2]).unwrap();
        let h8b = k7.triangle_y([2, 4, 6]).unwrap();
        assert!(are_isomorphic(&h8a, &h8b).is_some());
    }

    #[test]
    fn symmetric_worst_cases_stay_fast() {
        // these all have huge automorphism groups; twin collapsing must keep
        // the search linear-ish
        for g in [
            Graph::empty(13).unwrap(),
            Graph::complete(13).unwrap(),
            Graph::complete_bipartite(6, 6).unwrap(),
            Graph::complete_bipartite(3, 3)
                .unwrap()
                .disjoint_union(&Graph::complete_bipartite(3, 3).unwrap())
                .unwrap(),
        ] {
            let cf = canonical_form(&g);
            assert_eq!(cf.graph().size(), g.size());
        }
    }
}
