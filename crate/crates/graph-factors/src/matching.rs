//! Maximum matching in general graphs via blossom contraction, plus the
//! perfect-matching and factor-critical tests built on it.

use serde::Serialize;

use crate::error::Result;
use crate::graph::{components, min_degree, Graph};

const NONE: usize = usize::MAX;

/// A matching: a set of pairwise vertex-disjoint edges, stored as `(u, v)`
/// pairs with `u < v` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Re-check the matching against `g`: every pair is an edge and no two
    /// pairs share a vertex.
    pub fn is_valid(&self, g: &Graph) -> bool {
        let mut used = 0u64;
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return false;
            }
            let pair = (1u64 << u) | (1u64 << v);
            if used & pair != 0 {
                return false;
            }
            used |= pair;
        }
        true
    }

    pub fn is_perfect(&self, g: &Graph) -> bool {
        2 * self.size() == g.n()
    }
}

/// Size of a maximum matching. Exact on non-bipartite graphs: augmenting
/// paths are found by BFS with blossom contraction.
pub fn max_matching_size(g: &Graph) -> usize {
    blossom_mates(g).iter().filter(|&&m| m != NONE).count() / 2
}

/// A maximum matching with a deterministic tie-break: the lexicographically
/// smallest edge set among all maximum matchings.
///
/// Built greedily edge by edge; an edge is kept when the rest of the graph
/// still supports a matching of the required size, so the result is stable
/// across runs and platforms.
pub fn max_matching(g: &Graph) -> Matching {
    let total = max_matching_size(g);
    let mut alive = g.full_mask();
    let mut edges = Vec::with_capacity(total);
    let mut need = total;
    for (u, v) in g.edges() {
        if need == 0 {
            break;
        }
        let pair = (1u64 << u) | (1u64 << v);
        if alive & pair != pair {
            continue;
        }
        let (sub, _) = g.induced(alive & !pair);
        if max_matching_size(&sub) + 1 == need {
            edges.push((u, v));
            alive &= !pair;
            need -= 1;
        }
    }
    debug_assert_eq!(edges.len(), total);
    Matching { edges }
}

/// True iff a maximum matching covers every vertex. Odd order always fails;
/// the empty graph vacuously succeeds.
pub fn has_perfect_matching(g: &Graph) -> bool {
    2 * max_matching_size(g) == g.n()
}

/// True iff `G - v` has a perfect matching for every vertex `v`. `K_1` is
/// factor-critical (deleting its vertex leaves the empty graph); the empty
/// graph is not considered factor-critical.
pub fn is_factor_critical(g: &Graph) -> bool {
    let n = g.n();
    if n == 0 || n.is_multiple_of(2) {
        return false;
    }
    for v in g.vertices() {
        let (sub, _) = g.induced(g.full_mask() & !(1u64 << v));
        if !has_perfect_matching(&sub) {
            return false;
        }
    }
    // structural facts about factor-critical graphs, cheap to re-check
    debug_assert!(n == 1 || components(g).len() == 1);
    debug_assert!(n < 3 || min_degree(g).unwrap_or(0) >= 2);
    true
}

/// Returns `mate[v]` for every vertex (`usize::MAX` when unmatched).
fn blossom_mates(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut mate = vec![NONE; n];
    // greedy seed in lexicographic order
    for u in 0..n {
        if mate[u] == NONE {
            for v in g.neighbors(u) {
                if mate[v] == NONE {
                    mate[u] = v;
                    mate[v] = u;
                    break;
                }
            }
        }
    }
    let mut search = BlossomSearch {
        g,
        parent: vec![NONE; n],
        base: (0..n).collect(),
        in_queue: vec![false; n],
        queue: std::collections::VecDeque::new(),
    };
    for start in 0..n {
        if mate[start] == NONE {
            if let Some(finish) = search.find_augmenting_path(start, &mate) {
                augment(start, finish, &mut mate, &search.parent);
            }
        }
    }
    mate
}

struct BlossomSearch<'g> {
    g: &'g Graph,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_queue: Vec<bool>,
    queue: std::collections::VecDeque<usize>,
}

impl BlossomSearch<'_> {
    fn reset(&mut self, start: usize) {
        let n = self.g.n();
        for v in 0..n {
            self.parent[v] = NONE;
            self.base[v] = v;
            self.in_queue[v] = false;
        }
        self.queue.clear();
        self.queue.push_back(start);
        self.in_queue[start] = true;
    }

    /// BFS for an augmenting path from the free vertex `start`; odd cycles
    /// met along the way are contracted by rebasing their vertices.
    fn find_augmenting_path(&mut self, start: usize, mate: &[usize]) -> Option<usize> {
        self.reset(start);
        while let Some(v) = self.queue.pop_front() {
            for u in self.g.neighbors(v) {
                if self.base[v] == self.base[u] || mate[v] == u {
                    continue;
                }
                if u == start || (mate[u] != NONE && self.parent[mate[u]] != NONE) {
                    // v and u are both even vertices: their tree paths close
                    // an odd cycle through the least common ancestor
                    let b = self.lowest_common_base(v, u, mate);
                    let mut in_blossom = vec![false; self.g.n()];
                    self.mark_path(v, b, u, mate, &mut in_blossom);
                    self.mark_path(u, b, v, mate, &mut in_blossom);
                    for i in 0..self.g.n() {
                        if in_blossom[self.base[i]] {
                            self.base[i] = b;
                            if !self.in_queue[i] {
                                self.in_queue[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[u] == NONE {
                    self.parent[u] = v;
                    if mate[u] == NONE {
                        return Some(u);
                    }
                    let w = mate[u];
                    if !self.in_queue[w] {
                        self.in_queue[w] = true;
                        self.queue.push_back(w);
                    }
                }
            }
        }
        None
    }

    fn lowest_common_base(&self, v: usize, u: usize, mate: &[usize]) -> usize {
        let mut marked = vec![false; self.g.n()];
        let mut x = v;
        loop {
            x = self.base[x];
            marked[x] = true;
            if mate[x] == NONE {
                break;
            }
            x = self.parent[mate[x]];
        }
        let mut y = u;
        loop {
            y = self.base[y];
            if marked[y] {
                return y;
            }
            y = self.parent[mate[y]];
        }
    }

    fn mark_path(
        &mut self,
        mut v: usize,
        b: usize,
        mut child: usize,
        mate: &[usize],
        in_blossom: &mut [bool],
    ) {
        while self.base[v] != b {
            in_blossom[self.base[v]] = true;
            in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }
}

fn augment(start: usize, finish: usize, mate: &mut [usize], parent: &[usize]) {
    let mut cur = finish;
    loop {
        let prev = parent[cur];
        let next = mate[prev];
        mate[cur] = prev;
        mate[prev] = cur;
        if prev == start || next == NONE {
            break;
        }
        cur = next;
    }
}

/// Maximum matching size by exhaustive search over edge subsets. Independent
/// of the blossom implementation; intended as a test oracle and for the
/// definition-level sun check.
pub fn brute_force_matching_size(g: &Graph) -> usize {
    fn rec(edges: &[(usize, usize)], used: u64) -> usize {
        match edges.split_first() {
            None => 0,
            Some((&(u, v), rest)) => {
                let skip = rec(rest, used);
                let pair = (1u64 << u) | (1u64 << v);
                if used & pair == 0 {
                    skip.max(1 + rec(rest, used | pair))
                } else {
                    skip
                }
            }
        }
    }
    rec(&g.edges(), 0)
}

/// Maximum over `X ⊆ V` of `odd_components(G - X) - |X|`; by the Tutte-Berge
/// formula this equals `n - 2·maximum_matching(G)`. Exhaustive over subsets,
/// so only usable at small orders.
pub fn tutte_berge_deficiency(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > 24 {
        return Err(crate::error::Error::EnumerationCapExceeded { n, cap: 24 });
    }
    let full = g.full_mask();
    let mut best = 0isize;
    for xbits in 0..(1u64 << n) {
        let keep = full & !xbits;
        let mut odd = 0isize;
        let mut rest = keep;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let mut comp = 1u64 << v;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for u in crate::graph::iter_bits(frontier) {
                    next |= g.neighbor_mask(u);
                }
                frontier = next & keep & !comp;
                comp |= frontier;
            }
            if comp.count_ones() % 2 == 1 {
                odd += 1;
            }
            rest &= !comp;
        }
        best = best.max(odd - xbits.count_ones() as isize);
    }
    Ok(best as usize)
}
