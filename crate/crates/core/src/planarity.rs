//! Planarity with certificates in both directions: a rotation system whose
//! face count satisfies Euler's formula, or a K5/K3,3 minor model.
//!
//! The decision procedure is face-by-face path addition (Demoucron) run per
//! biconnected block; block embeddings merge at cut vertices by rotation
//! concatenation. Obstructions come from edge-minimizing the input down to a
//! Kuratowski subdivision. Correctness is anchored to the Wagner
//! cross-check in the test suite rather than to trust in either routine.

use crate::error::GraphError;
use crate::graph::{Graph, VertexSet};
use crate::minor::MinorModel;

/// Rotation system: cyclic neighbor order per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarEmbedding {
    pub rotation: Vec<Vec<usize>>,
}

impl PlanarEmbedding {
    /// Trace all faces. Each dart (u, v) lies on exactly one face; the next
    /// dart after (u, v) is (v, w) where w follows u in the rotation at v.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.rotation.len();
        let mut seen = std::collections::HashSet::new();
        let mut faces = Vec::new();
        for u in 0..n {
            for &v in &self.rotation[u] {
                if seen.contains(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                loop {
                    face.push((a, b));
                    seen.insert((a, b));
                    let rot = &self.rotation[b];
                    let i = rot.iter().position(|&x| x == a).expect("dart endpoint in rotation");
                    let w = rot[(i + 1) % rot.len()];
                    a = b;
                    b = w;
                    if (a, b) == (u, v) {
                        break;
                    }
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Euler check: every component satisfies V - E + F = 2, where a
    /// component with no edges counts a single face.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.rotation.len() != g.order() {
            return false;
        }
        for v in g.vertices() {
            let mut rot = self.rotation[v].clone();
            rot.sort_unstable();
            let nbrs: Vec<usize> = g.neighbors(v).iter().collect();
            if rot != nbrs {
                return false;
            }
        }
        let faces = self.faces();
        for comp in g.components() {
            let vc = comp.len();
            let ec: usize = comp.iter().map(|v| g.neighbors(v).len()).sum::<usize>() / 2;
            let fc = if ec == 0 {
                1
            } else {
                faces.iter().filter(|f| comp.contains(f[0].0)).count()
            };
            if vc as i64 - ec as i64 + fc as i64 != 2 {
                return false;
            }
        }
        true
    }
}

/// Outcome of a planarity test: exactly one certificate.
#[derive(Clone, Debug)]
pub enum Planarity {
    Planar(PlanarEmbedding),
    NonPlanar(MinorModel),
}

impl Planarity {
    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

/// Minimum edge count of a non-planar graph on `n >= 6` vertices with
/// minimum degree at least 1: n + 3 - floor((n-6)/2).
pub fn nonplanar_edge_lower_bound(n: usize) -> Result<usize, GraphError> {
    if n < 6 {
        return Err(GraphError::EdgeBoundDomain(n));
    }
    Ok(n + 3 - (n - 6) / 2)
}

/// Planarity decision with certificate.
pub fn is_planar(g: &Graph) -> Planarity {
    match try_embed(g) {
        Some(emb) => {
            debug_assert!(emb.verify(g));
            Planarity::Planar(emb)
        }
        None => {
            let model = extract_kuratowski(g);
            debug_assert!(model.verify(g));
            Planarity::NonPlanar(model)
        }
    }
}

/// Decision only, with cheap shortcuts. Used in inner loops.
pub fn is_planar_bool(g: &Graph) -> bool {
    let m = g.size();
    // any Kuratowski subdivision needs at least 9 edges
    if m <= 8 {
        return true;
    }
    let support = g.vertices().filter(|&v| g.degree(v) > 0).count();
    if support >= 3 && m > 3 * support - 6 {
        return false;
    }
    decide(g)
}

fn decide(g: &Graph) -> bool {
    for comp in g.components() {
        for (vs, edges) in blocks(g, comp) {
            if edges.len() >= 9 && embed_block(vs, &edges).is_none() {
                return false;
            }
        }
    }
    true
}

/// Full embedding: per-block Demoucron embeddings merged at cut vertices.
fn try_embed(g: &Graph) -> Option<PlanarEmbedding> {
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    for comp in g.components() {
        for (vs, edges) in blocks(g, comp) {
            if edges.len() == 1 {
                let (u, v) = edges[0];
                rotation[u].push(v);
                rotation[v].push(u);
                continue;
            }
            let faces = embed_block(vs, &edges)?;
            // derive the rotation: for consecutive face entries u, v, w the
            // successor of u at v is w
            let mut succ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.order()];
            for f in &faces {
                let k = f.len();
                for i in 0..k {
                    let u = f[i];
                    let v = f[(i + 1) % k];
                    let w = f[(i + 2) % k];
                    succ[v].push((u, w));
                }
            }
            for v in vs.iter() {
                let pairs = &succ[v];
                if pairs.is_empty() {
                    continue;
                }
                let mut cycle = Vec::with_capacity(pairs.len());
                let start = pairs[0].0;
                let mut cur = start;
                loop {
                    cycle.push(cur);
                    let next = pairs
                        .iter()
                        .find(|&&(a, _)| a == cur)
                        .expect("face walks cover every dart")
                        .1;
                    cur = next;
                    if cur == start {
                        break;
                    }
                }
                assert_eq!(
                    cycle.len(),
                    pairs.len(),
                    "face successors at a vertex must form one cycle"
                );
                rotation[v].extend(cycle);
            }
        }
    }
    let emb = PlanarEmbedding { rotation };
    assert!(emb.verify(g), "derived embedding failed the Euler check");
    Some(emb)
}

/// Biconnected blocks of the component `comp`, as (vertex set, edge list).
fn blocks(g: &Graph, comp: VertexSet) -> Vec<(VertexSet, Vec<(usize, usize)>)> {
    let root = match comp.min() {
        Some(r) => r,
        None => return Vec::new(),
    };
    let n = g.order();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    let mut timer = 0usize;

    struct Dfs<'a> {
        g: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        stack: Vec<(usize, usize)>,
        out: Vec<(VertexSet, Vec<(usize, usize)>)>,
        timer: usize,
    }
    impl Dfs<'_> {
        fn run(&mut self, u: usize, parent: usize) {
            self.disc[u] = self.timer;
            self.low[u] = self.timer;
            self.timer += 1;
            for v in self.g.neighbors(u).iter() {
                if self.disc[v] == usize::MAX {
                    self.stack.push((u, v));
                    self.run(v, u);
                    self.low[u] = self.low[u].min(self.low[v]);
                    if self.low[v] >= self.disc[u] {
                        // everything pushed after (u, v) is one block
                        let mut edges = Vec::new();
                        let mut vs = VertexSet::EMPTY;
                        loop {
                            let (a, b) = self.stack.pop().expect("block edge on stack");
                            vs.insert(a);
                            vs.insert(b);
                            edges.push((a, b));
                            if (a, b) == (u, v) {
                                break;
                            }
                        }
                        self.out.push((vs, edges));
                    }
                } else if v != parent && self.disc[v] < self.disc[u] {
                    self.stack.push((u, v));
                    self.low[u] = self.low[u].min(self.disc[v]);
                }
            }
        }
    }

    let mut dfs = Dfs {
        g,
        disc: std::mem::take(&mut disc),
        low: std::mem::take(&mut low),
        stack: std::mem::take(&mut stack),
        out: std::mem::take(&mut out),
        timer,
    };
    dfs.run(root, usize::MAX);
    timer = dfs.timer;
    let _ = timer;
    dfs.out
}

/// Demoucron path addition on one biconnected block (>= 2 edges). Returns
/// the face list (each face a simple vertex cycle), or None if non-planar.
fn embed_block(
    block_vs: VertexSet,
    block_edges: &[(usize, usize)],
) -> Option<Vec<Vec<usize>>> {
    // initial cycle by walking from the least vertex
    let start = block_vs.min().expect("nonempty block");
    let cycle = find_cycle(block_vs, block_edges, start).expect("block with >= 2 edges has a cycle");
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().cloned().collect()];
    let mut embedded_vs = VertexSet::from_iter(cycle.iter().cloned());
    let mut embedded_edges: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        embedded_edges.insert((a.min(b), a.max(b)));
    }
    let total_edges = block_edges.len();

    while embedded_edges.len() < total_edges {
        // fragments: chords between embedded vertices, and components of the
        // block minus the embedded vertices together with their attachments
        let mut fragments: Vec<(VertexSet, VertexSet)> = Vec::new(); // (interior, attachments)
        let mut chords: Vec<(usize, usize)> = Vec::new();
        for &(u, v) in block_edges {
            if embedded_vs.contains(u)
                && embedded_vs.contains(v)
                && !embedded_edges.contains(&(u.min(v), u.max(v)))
            {
                chords.push((u.min(v), u.max(v)));
            }
        }
        chords.sort_unstable();
        let free = block_vs.difference(embedded_vs);
        let mut seen = VertexSet::EMPTY;
        for v in free.iter() {
            if seen.contains(v) {
                continue;
            }
            let comp = reach_in_edges(block_edges, v, free);
            seen = seen.union(comp);
            let mut attach = VertexSet::EMPTY;
            for &(a, b) in block_edges {
                if comp.contains(a) && embedded_vs.contains(b) {
                    attach.insert(b);
                }
                if comp.contains(b) && embedded_vs.contains(a) {
                    attach.insert(a);
                }
            }
            fragments.push((comp, attach));
        }

        // admissible face sets; pick the fragment with the fewest
        let mut best: Option<(usize, bool, usize, Vec<usize>)> = None; // (count, is_chord, index, faces)
        for (ci, &(u, v)) in chords.iter().enumerate() {
            let adm: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| f.contains(&u) && f.contains(&v))
                .map(|(i, _)| i)
                .collect();
            if best.as_ref().map_or(true, |b| adm.len() < b.0) {
                best = Some((adm.len(), true, ci, adm));
            }
        }
        for (fi, (_, attach)) in fragments.iter().enumerate() {
            let adm: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| attach.iter().all(|a| f.contains(&a)))
                .map(|(i, _)| i)
                .collect();
            if best.as_ref().map_or(true, |b| adm.len() < b.0) {
                best = Some((adm.len(), false, fi, adm));
            }
        }
        let (count, is_chord, idx, adm) = best.expect("unembedded edges imply a fragment");
        if count == 0 {
            return None;
        }
        let face_idx = adm[0];

        // a path through the fragment between two attachments
        let path: Vec<usize> = if is_chord {
            let (u, v) = chords[idx];
            vec![u, v]
        } else {
            let (comp, attach) = &fragments[idx];
            fragment_path(block_edges, *comp, *attach)
        };

        // split the face
        let face = faces.swap_remove(face_idx);
        let a1 = path[0];
        let a2 = *path.last().unwrap();
        let p1 = face.iter().position(|&x| x == a1).expect("attachment on face");
        let rotated: Vec<usize> = face[p1..].iter().chain(face[..p1].iter()).cloned().collect();
        let p2 = rotated.iter().position(|&x| x == a2).expect("attachment on face");
        let interior: Vec<usize> = path[1..path.len() - 1].to_vec();
        let mut f1: Vec<usize> = rotated[..=p2].to_vec();
        f1.extend(interior.iter().rev());
        let mut f2: Vec<usize> = vec![a1];
        f2.extend(interior.iter());
        f2.extend(rotated[p2..].iter());
        faces.push(f1);
        faces.push(f2);

        for w in &path {
            embedded_vs.insert(*w);
        }
        for w in path.windows(2) {
            embedded_edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    Some(faces)
}

/// Reachable set from `v` inside `within`, using only the given edges.
fn reach_in_edges(edges: &[(usize, usize)], v: usize, within: VertexSet) -> VertexSet {
    let mut comp = VertexSet::singleton(v);
    loop {
        let mut next = comp;
        for &(a, b) in edges {
            if comp.contains(a) && within.contains(b) {
                next.insert(b);
            }
            if comp.contains(b) && within.contains(a) {
                next.insert(a);
            }
        }
        if next == comp {
            return comp;
        }
        comp = next;
    }
}

/// Shortest path from one attachment through the fragment interior to a
/// different attachment: a1, interior..., a2.
fn fragment_path(
    edges: &[(usize, usize)],
    comp: VertexSet,
    attach: VertexSet,
) -> Vec<usize> {
    let a1 = attach.min().expect("fragment attaches somewhere");
    // BFS from a1 through comp until another attachment is reached
    let mut prev: Vec<Option<usize>> = vec![None; 32];
    let mut queue = std::collections::VecDeque::new();
    let mut seen = VertexSet::singleton(a1);
    queue.push_back(a1);
    while let Some(u) = queue.pop_front() {
        for &(x, y) in edges {
            for (s, t) in [(x, y), (y, x)] {
                if s != u || seen.contains(t) {
                    continue;
                }
                if !comp.contains(t) && !(attach.contains(t) && t != a1) {
                    continue;
                }
                // never step directly a1 -> attachment: the path must pass
                // through the fragment interior (direct edges are chords)
                if u == a1 && !comp.contains(t) {
                    continue;
                }
                seen.insert(t);
                prev[t] = Some(u);
                if attach.contains(t) && t != a1 {
                    let mut path = vec![t];
                    let mut cur = t;
                    while let Some(p) = prev[cur] {
                        path.push(p);
                        cur = p;
                    }
                    path.reverse();
                    return path;
                }
                queue.push_back(t);
            }
        }
    }
    unreachable!("fragment of a biconnected block reaches a second attachment");
}

/// Any cycle through the block. Blocks with two or more edges have minimum
/// degree two, so a walk that never backtracks must close on itself.
fn find_cycle(
    block_vs: VertexSet,
    edges: &[(usize, usize)],
    start: usize,
) -> Option<Vec<usize>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 32];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    for v in block_vs.iter() {
        adj[v].sort_unstable();
    }
    let mut walk = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    for _ in 0..=block_vs.len() {
        let next = *adj[cur].iter().find(|&&x| x != prev)?;
        if let Some(pos) = walk.iter().position(|&x| x == next) {
            return Some(walk[pos..].to_vec());
        }
        walk.push(next);
        prev = cur;
        cur = next;
    }
    None
}

/// Edge-minimize a non-planar graph down to a Kuratowski subdivision, then
/// read off the minor model.
fn extract_kuratowski(g: &Graph) -> MinorModel {
    let mut k = *g;
    for (u, v) in g.edges() {
        let mut t = k;
        t.remove_edge(u, v);
        if !is_planar_bool(&t) {
            k = t;
        }
    }
    // k is now a Kuratowski subdivision plus isolated vertices
    let branch: Vec<usize> = k.vertices().filter(|&v| k.degree(v) >= 3).collect();
    let is_k5 = branch.len() == 5;
    debug_assert!(
        (is_k5 && branch.iter().all(|&v| k.degree(v) == 4))
            || (branch.len() == 6 && branch.iter().all(|&v| k.degree(v) == 3)),
        "edge-minimal non-planar graph must be a K5 or K3,3 subdivision"
    );
    let branch_set = VertexSet::from_iter(branch.iter().cloned());

    // trace subdivision paths between branch vertices
    let mut sets: Vec<VertexSet> = branch.iter().map(|&b| VertexSet::singleton(b)).collect();
    let mut pattern_edges: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for (bi, &b) in branch.iter().enumerate() {
        for first in k.neighbors(b).iter() {
            let mut prev = b;
            let mut cur = first;
            let mut interior = Vec::new();
            while !branch_set.contains(cur) {
                interior.push(cur);
                let next = k
                    .neighbors(cur)
                    .iter()
                    .find(|&x| x != prev)
                    .expect("degree-2 interior continues");
                prev = cur;
                cur = next;
            }
            let bj = branch.iter().position(|&x| x == cur).unwrap();
            if branch[bj] < b {
                continue; // traced from the other end
            }
            for &x in &interior {
                sets[bi].insert(x);
            }
            let witness = if interior.is_empty() { (b, cur) } else { (prev, cur) };
            pattern_edges.push(((bi, bj), witness));
        }
    }

    let (pattern, order) = if is_k5 {
        (Graph::complete(5).unwrap(), (0..5).collect::<Vec<_>>())
    } else {
        // bipartition: one side is branch 0 plus its non-neighbors
        let nbrs0: Vec<usize> = pattern_edges
            .iter()
            .filter_map(|&((i, j), _)| {
                if i == 0 {
                    Some(j)
                } else if j == 0 {
                    Some(i)
                } else {
                    None
                }
            })
            .collect();
        let mut order = vec![0usize; 6];
        let mut left = vec![0usize];
        let mut right = Vec::new();
        for x in 1..6 {
            if nbrs0.contains(&x) {
                right.push(x);
            } else {
                left.push(x);
            }
        }
        debug_assert_eq!((left.len(), right.len()), (3, 3));
        for (pos, &x) in left.iter().chain(right.iter()).enumerate() {
            order[x] = pos;
        }
        (Graph::complete_bipartite(3, 3).unwrap(), order)
    };

    let mut branch_sets = vec![VertexSet::EMPTY; sets.len()];
    for (i, s) in sets.iter().enumerate() {
        branch_sets[order[i]] = *s;
    }
    let edge_witnesses = pattern_edges
        .iter()
        .map(|&((i, j), w)| {
            let (a, b) = (order[i], order[j]);
            ((a.min(b), a.max(b)), w)
        })
        .collect();
    MinorModel {
        pattern,
        branch_sets,
        edge_witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_values() {
        assert_eq!(nonplanar_edge_lower_bound(6).unwrap(), 9);
        assert_eq!(nonplanar_edge_lower_bound(9).unwrap(), 11);
        assert_eq!(nonplanar_edge_lower_bound(11).unwrap(), 12);
        assert!(nonplanar_edge_lower_bound(5).is_err());
    }

    #[test]
    fn k5_and_k33_obstructions() {
        match is_planar(&Graph::complete(5).unwrap()) {
            Planarity::NonPlanar(m) => assert_eq!(m.pattern, Graph::complete(5).unwrap()),
            _ => panic!("K5 must be non-planar"),
        }
        match is_planar(&Graph::complete_bipartite(3, 3).unwrap()) {
            Planarity::NonPlanar(m) => {
                assert_eq!(m.pattern, Graph::complete_bipartite(3, 3).unwrap())
            }
            _ => panic!("K3,3 must be non-planar"),
        }
    }

    #[test]
    fn k4_embeds_with_four_faces() {
        match is_planar(&Graph::complete(4).unwrap()) {
            Planarity::Planar(emb) => {
                assert!(emb.verify(&Graph::complete(4).unwrap()));
                assert_eq!(emb.faces().len(), 4);
            }
            _ => panic!("K4 is planar"),
        }
    }

    #[test]
    fn empty_and_small() {
        assert!(is_planar(&Graph::empty(0).unwrap()).is_planar());
        assert!(is_planar(&Graph::empty(5).unwrap()).is_planar());
        assert!(is_planar(&Graph::path(4).unwrap()).is_planar());
        assert!(is_planar(&Graph::cycle(8).unwrap()).is_planar());
    }

    #[test]
    fn planar_classics() {
        // maximal planar: octahedron = K2,2,2
        let mut oct = Graph::complete(6).unwrap();
        oct.remove_edge(0, 1);
        oct.remove_edge(2, 3);
        oct.remove_edge(4, 5);
        assert!(is_planar(&oct).is_planar());
        // K5 minus an edge
        let mut k5e = Graph::complete(5).unwrap();
        k5e.remove_edge(0, 1);
        assert!(is_planar(&k5e).is_planar());
        // disjoint unions and cut vertices
        let two = Graph::complete(4)
            .unwrap()
            .disjoint_union(&Graph::complete(4).unwrap())
            .unwrap();
        assert!(is_planar(&two).is_planar());
    }

    #[test]
    fn nonplanar_classics() {
        assert!(!is_planar_bool(&Graph::complete(6).unwrap()));
        let mut g = Graph::complete_bipartite(3, 3).unwrap();
        g.add_edge(0, 1);
        assert!(!is_planar_bool(&g));
        // K3,3 with an edge subdivided stays non-planar
        let mut sub = Graph::complete_bipartite(3, 3)
            .unwrap()
            .disjoint_union(&Graph::empty(1).unwrap())
            .unwrap();
        sub.remove_edge(0, 3);
        sub.add_edge(0, 6);
        sub.add_edge(3, 6);
        assert!(!is_planar_bool(&sub));
        match is_planar(&sub) {
            Planarity::NonPlanar(m) => {
                assert!(m.verify(&sub));
                assert_eq!(m.pattern, Graph::complete_bipartite(3, 3).unwrap());
            }
            _ => panic!(),
        }
    }

    #[test]
    fn nonplanar_in_one_component() {
        let g = Graph::complete(5)
            .unwrap()
            .disjoint_union(&Graph::cycle(4).unwrap())
            .unwrap();
        match is_planar(&g) {
            Planarity::NonPlanar(m) => assert!(m.verify(&g)),
            _ => panic!("K5 component"),
        }
    }

    #[test]
    fn certificates_verify_on_randoms() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..300 {
            let n = rng.gen_range(1..=12);
            let mut g = Graph::empty(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.3) {
                        g.add_edge(u, v);
                    }
                }
            }
            match is_planar(&g) {
                Planarity::Planar(emb) => assert!(emb.verify(&g)),
                Planarity::NonPlanar(m) => assert!(m.verify(&g)),
            }
        }
    }

    #[test]
    fn monotone_under_edge_addition() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let n = rng.gen_range(3..=10);
            let mut g = Graph::empty(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.35) {
                        g.add_edge(u, v);
                    }
                }
            }
            if !is_planar_bool(&g) {
                let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if u != v {
                    let mut h = g;
                    h.add_edge(u, v);
                    assert!(!is_planar_bool(&h));
                }
            }
        }
    }
}
