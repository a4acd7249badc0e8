//! Undirected simple graphs on dense vertex indices, with the structural
//! primitives the factor deciders are built from: degrees, deletion, induced
//! subgraphs, components, independence, induced-star search, joins, and a
//! brute-force canonical form for isomorphism deduplication.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Hard limit imposed by the bitset adjacency representation.
pub const MAX_VERTICES: usize = 64;

/// Cap for [`canonical_form`]; permutation search is not meant to scale past
/// the sizes the enumeration harness deduplicates.
pub const CANONICAL_CAP: usize = 10;

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An undirected simple graph on vertices `0..n`.
///
/// Adjacency is stored as one neighbor bitset per vertex; the relation is kept
/// symmetric and irreflexive by construction. Values are immutable once built
/// and cheap to clone, so they can be shared freely across worker threads.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices. `n = 0` is allowed; it is the identity
    /// of [`disjoint_union`] and [`join`].
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.adj[u] |= bit(v);
            g.adj[v] |= bit(u);
        }
        Ok(g)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Bitmask with one bit per vertex of the graph.
    pub fn full_mask(&self) -> u64 {
        mask_below(self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Neighbor bitset of `v`.
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter(self.adj[v])
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in BitIter(self.adj[u] & !mask_below(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || components(self).len() == 1
    }

    /// Induced subgraph on the vertices of `mask`, together with the map from
    /// new indices back to the original ones.
    pub fn induced(&self, mask: u64) -> (Graph, Vec<usize>) {
        let original: Vec<usize> = BitIter(mask & self.full_mask()).collect();
        let mut g = Graph {
            n: original.len(),
            adj: vec![0; original.len()],
        };
        for (i, &u) in original.iter().enumerate() {
            for (j, &v) in original.iter().enumerate().skip(i + 1) {
                if self.adj[u] & bit(v) != 0 {
                    g.adj[i] |= bit(j);
                    g.adj[j] |= bit(i);
                }
            }
        }
        (g, original)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// Iterate the vertices of a bitmask in increasing order.
pub(crate) fn iter_bits(mask: u64) -> impl Iterator<Item = usize> {
    BitIter(mask)
}

/// A subset of the vertices of an associated graph, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(bit(v))
    }

    pub fn from_slice(vs: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &v in vs {
            if v >= MAX_VERTICES {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: MAX_VERTICES,
                });
            }
            bits |= bit(v);
        }
        Ok(VertexSet(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 & bit(v) != 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= bit(v);
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        BitIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// True when every member is a vertex of `g`.
    pub fn is_within(self, g: &Graph) -> bool {
        self.0 & !g.full_mask() == 0
    }

    pub(crate) fn check_within(self, g: &Graph) -> Result<()> {
        if self.is_within(g) {
            Ok(())
        } else {
            let worst = 63 - self.0.leading_zeros() as usize;
            Err(Error::VertexOutOfRange {
                vertex: worst,
                n: g.n(),
            })
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for v in self.iter() {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let vs = Vec::<usize>::deserialize(deserializer)?;
        VertexSet::from_slice(&vs).map_err(serde::de::Error::custom)
    }
}

/// Witness that a graph contains an induced star: a center together with `r`
/// pairwise non-adjacent neighbors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K1rWitness {
    pub center: usize,
    pub leaves: Vec<usize>,
}

impl K1rWitness {
    /// Re-check the witness against the adjacency of `g`.
    pub fn is_valid(&self, g: &Graph) -> bool {
        if self.center >= g.n() {
            return false;
        }
        for (i, &u) in self.leaves.iter().enumerate() {
            if u >= g.n() || !g.has_edge(self.center, u) {
                return false;
            }
            for &v in &self.leaves[i + 1..] {
                if u == v || g.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }
}

/// The standard small graphs used as building blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedGraph {
    /// `K_m`
    Complete(usize),
    /// Path on `k` vertices, numbered in traversal order.
    Path(usize),
    /// Cycle on `k` vertices (`k >= 3`), numbered in traversal order.
    Cycle(usize),
    /// Star `K_{1,r}`; vertex 0 is the center.
    Star(usize),
    /// Edgeless graph on `m` vertices.
    Empty(usize),
}

pub fn make_named_graph(kind: NamedGraph) -> Result<Graph> {
    match kind {
        NamedGraph::Complete(m) => {
            require_size("complete", m, 1)?;
            let mut g = Graph::new(m)?;
            for u in 0..m {
                g.adj[u] = mask_below(m) & !bit(u);
            }
            Ok(g)
        }
        NamedGraph::Path(k) => {
            require_size("path", k, 1)?;
            let edges: Vec<_> = (1..k).map(|v| (v - 1, v)).collect();
            Graph::from_edges(k, &edges)
        }
        NamedGraph::Cycle(k) => {
            require_size("cycle", k, 3)?;
            let mut edges: Vec<_> = (1..k).map(|v| (v - 1, v)).collect();
            edges.push((k - 1, 0));
            Graph::from_edges(k, &edges)
        }
        NamedGraph::Star(r) => {
            require_size("star", r, 1)?;
            let edges: Vec<_> = (1..=r).map(|v| (0, v)).collect();
            Graph::from_edges(r + 1, &edges)
        }
        NamedGraph::Empty(m) => {
            require_size("empty", m, 1)?;
            Graph::new(m)
        }
    }
}

fn require_size(kind: &'static str, got: usize, min: usize) -> Result<()> {
    if got < min {
        Err(Error::SizeTooSmall { kind, min, got })
    } else {
        Ok(())
    }
}

/// Minimum degree over all vertices; rejects the empty graph.
pub fn min_degree(g: &Graph) -> Result<usize> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(g.vertices().map(|v| g.degree(v)).min().unwrap())
}

/// Result of deleting a vertex set: the induced subgraph on the remaining
/// vertices, plus the map from its indices back to the caller's labeling.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub original_index: Vec<usize>,
}

/// `G - X`: the induced subgraph on `V(G) - X`.
pub fn delete_vertices(g: &Graph, x: VertexSet) -> Result<InducedSubgraph> {
    x.check_within(g)?;
    let (graph, original_index) = g.induced(g.full_mask() & !x.bits());
    Ok(InducedSubgraph {
        graph,
        original_index,
    })
}

/// Connected components as vertex sets, ordered by smallest member.
pub fn components(g: &Graph) -> Vec<VertexSet> {
    let mut seen = 0u64;
    let mut out = Vec::new();
    for v in g.vertices() {
        if seen & bit(v) != 0 {
            continue;
        }
        let mut comp = bit(v);
        let mut frontier = bit(v);
        while frontier != 0 {
            let mut next = 0u64;
            for u in BitIter(frontier) {
                next |= g.adj[u];
            }
            frontier = next & !comp;
            comp |= frontier;
        }
        seen |= comp;
        out.push(VertexSet(comp));
    }
    out
}

/// `i(G - X)`: the number of isolated vertices left after deleting `X`.
pub fn isolated_count(g: &Graph, x: VertexSet) -> Result<usize> {
    x.check_within(g)?;
    let keep = g.full_mask() & !x.bits();
    Ok(iter_bits(keep).filter(|&v| g.adj[v] & keep == 0).count())
}

/// `N_G(S)`: the union of the neighborhoods of the members of `S`. May
/// intersect `S`.
pub fn neighborhood_of_set(g: &Graph, s: VertexSet) -> Result<VertexSet> {
    s.check_within(g)?;
    let mut out = 0u64;
    for v in s.iter() {
        out |= g.adj[v];
    }
    Ok(VertexSet(out))
}

/// True when no two members of `S` are adjacent; the empty set and singletons
/// are independent.
pub fn is_independent(g: &Graph, s: VertexSet) -> Result<bool> {
    s.check_within(g)?;
    Ok(s.iter().all(|v| g.adj[v] & s.bits() == 0))
}

/// Search for an induced `K_{1,r}`: a vertex with `r` pairwise non-adjacent
/// neighbors. Returns the lexicographically first witness, if any.
///
/// The search backtracks over each vertex's neighborhood instead of testing
/// all `(r+1)`-subsets, and stops at the first independent set of size `r`.
pub fn find_induced_star(g: &Graph, r: usize) -> Option<K1rWitness> {
    assert!(r >= 2, "induced-star search requires r >= 2");
    for center in g.vertices() {
        if g.degree(center) < r {
            continue;
        }
        let mut leaves = Vec::with_capacity(r);
        if pick_independent(g, g.adj[center], r, 0, &mut leaves) {
            return Some(K1rWitness { center, leaves });
        }
    }
    None
}

fn pick_independent(g: &Graph, cand: u64, need: usize, from: usize, acc: &mut Vec<usize>) -> bool {
    if need == 0 {
        return true;
    }
    let remaining = cand & !mask_below(from);
    if (remaining.count_ones() as usize) < need {
        return false;
    }
    for v in BitIter(remaining) {
        if acc.iter().any(|&u| g.adj[u] & bit(v) != 0) {
            continue;
        }
        acc.push(v);
        if pick_independent(g, cand, need - 1, v + 1, acc) {
            return true;
        }
        acc.pop();
    }
    false
}

/// True when `g` has no induced `K_{1,r}` (`r = 3` is claw-free).
pub fn is_k1r_free(g: &Graph, r: usize) -> bool {
    find_induced_star(g, r).is_none()
}

/// Join `G1 ∨ G2`: disjoint union plus all edges between the two sides.
/// `G1`'s vertices keep the lower indices.
pub fn join(g1: &Graph, g2: &Graph) -> Result<Graph> {
    let mut g = disjoint_union(&[g1.clone(), g2.clone()])?;
    let n1 = g1.n();
    let left = mask_below(n1);
    let right = g.full_mask() & !left;
    for v in 0..n1 {
        g.adj[v] |= right;
    }
    for v in n1..g.n() {
        g.adj[v] |= left;
    }
    Ok(g)
}

/// Index-shifted disjoint union, in the given order.
pub fn disjoint_union(parts: &[Graph]) -> Result<Graph> {
    let total: usize = parts.iter().map(|p| p.n()).sum();
    let mut g = Graph::new(total)?;
    let mut offset = 0;
    for p in parts {
        for v in p.vertices() {
            g.adj[offset + v] = p.adj[v] << offset;
        }
        offset += p.n();
    }
    Ok(g)
}

/// Canonical label: the lexicographically smallest upper-triangle bit
/// encoding of the adjacency matrix over all vertex permutations, packed as
/// bytes with the order prepended. Two graphs get the same label iff they are
/// isomorphic.
///
/// The permutation search places vertices one position at a time, keeping
/// only the placements whose next adjacency column is minimal, and collapsing
/// candidates that are twins (swapping them is an automorphism). Capped at
/// [`CANONICAL_CAP`] vertices.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>> {
    let n = g.n();
    if n > CANONICAL_CAP {
        return Err(Error::CanonicalCapExceeded {
            n,
            cap: CANONICAL_CAP,
        });
    }
    if n == 0 {
        return Ok(vec![0]);
    }

    // Each frontier entry is a placement order achieving the minimal bit
    // prefix so far; all entries share the same accumulated bit string.
    let mut frontier: Vec<Vec<usize>> = twin_reduce(g, (0..n).collect(), &[])
        .into_iter()
        .map(|v| vec![v])
        .collect();
    let mut bits: Vec<bool> = Vec::with_capacity(n * (n - 1) / 2);

    for level in 1..n {
        let mut best: Option<u32> = None;
        let mut kept: Vec<(usize, usize)> = Vec::new();
        for (si, order) in frontier.iter().enumerate() {
            let placed: u64 = order.iter().fold(0, |m, &v| m | bit(v));
            let unplaced: Vec<usize> = (0..n).filter(|&v| placed & bit(v) == 0).collect();
            for u in twin_reduce(g, unplaced, order) {
                let mut col = 0u32;
                for (i, &p) in order.iter().enumerate() {
                    if g.adj[p] & bit(u) != 0 {
                        col |= 1 << (level - 1 - i);
                    }
                }
                match best {
                    None => {
                        best = Some(col);
                        kept.push((si, u));
                    }
                    Some(b) if col < b => {
                        best = Some(col);
                        kept.clear();
                        kept.push((si, u));
                    }
                    Some(b) if col == b => kept.push((si, u)),
                    _ => {}
                }
            }
        }
        let col = best.expect("frontier is never empty");
        for i in 0..level {
            bits.push(col & (1 << (level - 1 - i)) != 0);
        }
        frontier = kept
            .into_iter()
            .map(|(si, u)| {
                let mut order = frontier[si].clone();
                order.push(u);
                order
            })
            .collect();
    }

    Ok(pack_label(n, &bits))
}

/// Drop candidates that are twins of an earlier one: `u` and `v` are twins
/// when their neighborhoods agree outside `{u, v}`, so swapping them is an
/// automorphism and their subtrees produce identical encodings.
fn twin_reduce(g: &Graph, candidates: Vec<usize>, _placed: &[usize]) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::with_capacity(candidates.len());
    'cand: for u in candidates {
        for &v in &reps {
            let other = !(bit(u) | bit(v));
            if g.adj[u] & other == g.adj[v] & other {
                continue 'cand;
            }
        }
        reps.push(u);
    }
    reps
}

fn pack_label(n: usize, bits: &[bool]) -> Vec<u8> {
    let mut out = Vec::with_capacity(1 + bits.len().div_ceil(8));
    out.push(n as u8);
    for chunk in bits.chunks(8) {
        let mut byte = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 0x80 >> i;
            }
        }
        out.push(byte);
    }
    out
}

/// Rebuild a graph from a label produced by [`canonical_form`].
pub fn graph_from_label(label: &[u8]) -> Result<Graph> {
    if label.is_empty() {
        return Err(Error::invalid("label", "empty canonical label"));
    }
    let n = label[0] as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    if label.len() != 1 + nbits.div_ceil(8) {
        return Err(Error::invalid("label", "canonical label has wrong length"));
    }
    let mut g = Graph::new(n)?;
    let mut k = 0usize;
    for col in 1..n {
        for row in 0..col {
            let byte = label[1 + k / 8];
            if byte & (0x80 >> (k % 8)) != 0 {
                g.adj[row] |= bit(col);
                g.adj[col] |= bit(row);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Relabel `g` by `perm`, where `perm[old] = new`.
pub fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let n = g.n();
    debug_assert_eq!(perm.len(), n);
    let mut out = Graph {
        n,
        adj: vec![0; n],
    };
    for (u, v) in g.edges() {
        out.adj[perm[u]] |= bit(perm[v]);
        out.adj[perm[v]] |= bit(perm[u]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn complete(m: usize) -> Graph {
        make_named_graph(NamedGraph::Complete(m)).unwrap()
    }

    fn path(k: usize) -> Graph {
        make_named_graph(NamedGraph::Path(k)).unwrap()
    }

    fn cycle(k: usize) -> Graph {
        make_named_graph(NamedGraph::Cycle(k)).unwrap()
    }

    fn star(r: usize) -> Graph {
        make_named_graph(NamedGraph::Star(r)).unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        VertexSet::from_slice(vs).unwrap()
    }

    /// Upper-triangle encoding of `g` under a single permutation; the naive
    /// minimum over all permutations is the reference for `canonical_form`.
    fn naive_canonical(g: &Graph) -> Vec<u8> {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<bool>> = None;
        permute(&mut perm, 0, &mut |p| {
            let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
            for col in 1..n {
                for row in 0..col {
                    // position p[i] in the relabeled graph holds original
                    // vertex i; invert: find originals mapped to row/col
                    let u = p.iter().position(|&x| x == row).unwrap();
                    let v = p.iter().position(|&x| x == col).unwrap();
                    bits.push(g.has_edge(u, v));
                }
            }
            if best.as_ref().is_none_or(|b| bits < *b) {
                best = Some(bits);
            }
        });
        pack_label(n, &best.unwrap_or_default())
    }

    fn permute(perm: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == perm.len() {
            f(perm);
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            permute(perm, k + 1, f);
            perm.swap(k, i);
        }
    }

    #[test]
    fn named_graphs() {
        assert_eq!(complete(3).edge_count(), 3);
        let s = star(4);
        assert_eq!(s.degree(0), 4);
        assert!((1..=4).all(|v| s.degree(v) == 1));
        assert_eq!(path(2).edges(), vec![(0, 1)]);
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(
            make_named_graph(NamedGraph::Empty(3)).unwrap().edge_count(),
            0
        );
        assert!(matches!(
            make_named_graph(NamedGraph::Complete(0)),
            Err(Error::SizeTooSmall { .. })
        ));
        assert!(matches!(
            make_named_graph(NamedGraph::Cycle(2)),
            Err(Error::SizeTooSmall { .. })
        ));
        assert!(matches!(
            make_named_graph(NamedGraph::Star(0)),
            Err(Error::SizeTooSmall { .. })
        ));
    }

    #[test]
    fn min_degree_examples() {
        assert_eq!(min_degree(&complete(4)).unwrap(), 3);
        assert_eq!(min_degree(&path(4)).unwrap(), 1);
        // 3K_1 joined to K_2: the independent side sees exactly the two
        // clique vertices.
        let g = join(
            &make_named_graph(NamedGraph::Empty(3)).unwrap(),
            &complete(2),
        )
        .unwrap();
        assert_eq!(min_degree(&g).unwrap(), 2);
        assert!(matches!(
            min_degree(&Graph::new(0).unwrap()),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn delete_vertices_examples() {
        let d = delete_vertices(&complete(3), set(&[0])).unwrap();
        assert_eq!(d.graph, complete(2));
        assert_eq!(d.original_index, vec![1, 2]);

        let g = cycle(6);
        let d = delete_vertices(&g, VertexSet::EMPTY).unwrap();
        assert_eq!(d.graph, g);

        let d = delete_vertices(&star(4), set(&[0])).unwrap();
        assert_eq!(d.graph.edge_count(), 0);
        assert_eq!(d.graph.n(), 4);

        assert!(matches!(
            delete_vertices(&complete(3), set(&[7])),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn components_examples() {
        assert_eq!(components(&complete(3)), vec![set(&[0, 1, 2])]);
        let two_k2 = disjoint_union(&[complete(2), complete(2)]).unwrap();
        assert_eq!(components(&two_k2), vec![set(&[0, 1]), set(&[2, 3])]);
        let e3 = make_named_graph(NamedGraph::Empty(3)).unwrap();
        assert_eq!(components(&e3).len(), 3);
    }

    #[test]
    fn isolated_count_examples() {
        assert_eq!(isolated_count(&star(4), set(&[0])).unwrap(), 4);
        assert_eq!(isolated_count(&cycle(5), set(&[2])).unwrap(), 0);
        // 4K_1 joined to K_1 is a star with the center last; deleting the
        // core isolates the other side.
        let g = join(
            &make_named_graph(NamedGraph::Empty(4)).unwrap(),
            &complete(1),
        )
        .unwrap();
        assert_eq!(isolated_count(&g, set(&[4])).unwrap(), 4);
    }

    #[test]
    fn neighborhood_examples() {
        assert_eq!(
            neighborhood_of_set(&star(3), set(&[0])).unwrap(),
            set(&[1, 2, 3])
        );
        assert_eq!(
            neighborhood_of_set(&path(3), set(&[0, 2])).unwrap(),
            set(&[1])
        );
        assert_eq!(
            neighborhood_of_set(&complete(3), set(&[0])).unwrap(),
            set(&[1, 2])
        );
    }

    #[test]
    fn independence_examples() {
        assert!(!is_independent(&complete(3), set(&[0, 1])).unwrap());
        assert!(is_independent(&star(3), set(&[1, 2, 3])).unwrap());
        assert!(is_independent(&complete(3), VertexSet::EMPTY).unwrap());
    }

    #[test]
    fn k1r_free_examples() {
        let w = find_induced_star(&star(3), 3).expect("K_{1,3} contains itself");
        assert_eq!(w.center, 0);
        assert_eq!(w.leaves, vec![1, 2, 3]);
        assert!(w.is_valid(&star(3)));

        assert!(is_k1r_free(&cycle(6), 3));

        let g = join(
            &make_named_graph(NamedGraph::Empty(3)).unwrap(),
            &complete(2),
        )
        .unwrap();
        assert!(is_k1r_free(&g, 4));
        assert!(!is_k1r_free(&g, 3));
    }

    #[test]
    fn join_examples() {
        assert_eq!(join(&complete(1), &complete(1)).unwrap(), complete(2));
        let p3 = join(
            &make_named_graph(NamedGraph::Empty(2)).unwrap(),
            &complete(1),
        )
        .unwrap();
        // two leaves joined to one center: P_3 up to labeling
        assert_eq!(p3.edge_count(), 2);
        assert_eq!(p3.degree(2), 2);

        let k4_minus = join(
            &make_named_graph(NamedGraph::Empty(2)).unwrap(),
            &complete(2),
        )
        .unwrap();
        assert_eq!(k4_minus.n(), 4);
        assert_eq!(k4_minus.edge_count(), 5);
    }

    #[test]
    fn disjoint_union_examples() {
        let g = disjoint_union(&[complete(2), complete(2)]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (4, 2));
        let empty = disjoint_union(&[]).unwrap();
        assert_eq!(empty.n(), 0);
        let g = disjoint_union(&[complete(3), complete(1)]).unwrap();
        assert_eq!((g.n(), g.edge_count(), components(&g).len()), (4, 3, 2));
    }

    #[test]
    fn canonical_form_examples() {
        let p3a = path(3);
        let p3b = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(
            canonical_form(&p3a).unwrap(),
            canonical_form(&p3b).unwrap()
        );
        assert_ne!(
            canonical_form(&complete(3)).unwrap(),
            canonical_form(&p3a).unwrap()
        );
        assert!(matches!(
            canonical_form(&path(11)),
            Err(Error::CanonicalCapExceeded { .. })
        ));
    }

    #[test]
    fn canonical_form_all_p3_labelings_agree() {
        let p3 = path(3);
        let mut labels = std::collections::BTreeSet::new();
        let mut perm = vec![0, 1, 2];
        permute(&mut perm, 0, &mut |p| {
            labels.insert(canonical_form(&relabel(&p3, p)).unwrap());
        });
        assert_eq!(labels.len(), 1);
    }

    #[test]
    fn canonical_form_matches_naive_minimum_for_small_graphs() {
        for n in 0..=5usize {
            let pairs = n * n.saturating_sub(1) / 2;
            for mask in 0u32..(1 << pairs) {
                let g = graph_from_pair_mask(n, mask as u64);
                assert_eq!(
                    canonical_form(&g).unwrap(),
                    naive_canonical(&g),
                    "mismatch on n={n} mask={mask}"
                );
            }
        }
    }

    /// Build the labeled graph whose upper-triangle bits (column order) are
    /// the bits of `mask`.
    fn graph_from_pair_mask(n: usize, mask: u64) -> Graph {
        let mut edges = Vec::new();
        let mut k = 0;
        for col in 1..n {
            for row in 0..col {
                if mask & (1 << k) != 0 {
                    edges.push((row, col));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (Just(n), 0..(1u64 << pairs).max(1))
                .prop_map(|(n, mask)| graph_from_pair_mask(n, mask))
        })
    }

    proptest! {
        #[test]
        fn degree_sum_is_twice_edge_count(g in arb_graph(7)) {
            let sum: usize = g.vertices().map(|v| g.degree(v)).sum();
            prop_assert_eq!(sum, 2 * g.edge_count());
        }

        #[test]
        fn deleting_nothing_is_identity(g in arb_graph(7)) {
            let d = delete_vertices(&g, VertexSet::EMPTY).unwrap();
            prop_assert_eq!(d.graph, g);
        }

        #[test]
        fn deletion_refines_components(g in arb_graph(7), xbits in any::<u64>()) {
            let x = VertexSet::from_bits(xbits & g.full_mask());
            let d = delete_vertices(&g, x).unwrap();
            let big = components(&g);
            for comp in components(&d.graph) {
                let orig: Vec<usize> = comp.iter().map(|v| d.original_index[v]).collect();
                prop_assert!(big.iter().any(|b| orig.iter().all(|&v| b.contains(v))));
            }
        }

        #[test]
        fn k1r_freeness_is_monotone_in_r(g in arb_graph(7), r in 2usize..5) {
            if is_k1r_free(&g, r) {
                prop_assert!(is_k1r_free(&g, r + 1));
            }
        }

        #[test]
        fn induced_star_witnesses_validate(g in arb_graph(7), r in 2usize..5) {
            if let Some(w) = find_induced_star(&g, r) {
                prop_assert_eq!(w.leaves.len(), r);
                prop_assert!(w.is_valid(&g));
            }
        }

        #[test]
        fn join_edge_count_and_degree(g1 in arb_graph(5), g2 in arb_graph(5)) {
            let j = join(&g1, &g2).unwrap();
            prop_assert_eq!(
                j.edge_count(),
                g1.n() * g2.n() + g1.edge_count() + g2.edge_count()
            );
            // each side sees the whole other side
            prop_assert!(min_degree(&j).unwrap() >= g1.n().min(g2.n()));
        }

        #[test]
        fn canonical_form_is_permutation_invariant(
            g in arb_graph(7),
            seed in any::<u64>(),
        ) {
            let n = g.n();
            let mut perm: Vec<usize> = (0..n).collect();
            // cheap deterministic shuffle
            let mut s = seed | 1;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let h = relabel(&g, &perm);
            prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        }

        #[test]
        fn canonical_label_round_trips(g in arb_graph(7)) {
            let label = canonical_form(&g).unwrap();
            let back = graph_from_label(&label).unwrap();
            prop_assert_eq!(canonical_form(&back).unwrap(), label);
        }
    }
}
