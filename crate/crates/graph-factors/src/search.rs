//! Constructive factor search by exhaustive partition backtracking. This is
//! the ground truth the characterization deciders are cross-validated
//! against: it finds an actual spanning factor (or proves none exists)
//! without ever looking at a deficiency bound.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{iter_bits, Graph};

/// Default cap on the partition search; deliberately below the decider cap
/// because the search is the expensive side.
pub const DEFAULT_SEARCH_CAP: usize = 16;

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
fn below(v: usize) -> u64 {
    if v >= 64 {
        u64::MAX
    } else {
        bit(v) - 1
    }
}

/// The component families a factor can be drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FactorFamily {
    /// Stars `K_{1,1},...,K_{1,n}` (`K_{1,1}` is a single edge).
    Stars { max_leaves: usize },
    /// Paths on at least `min_order` vertices.
    PathsAtLeast { min_order: usize },
    /// Paths on exactly 2 or 3 vertices.
    P2P3,
}

impl FactorFamily {
    fn validate(&self) -> Result<()> {
        match *self {
            FactorFamily::Stars { max_leaves } if max_leaves < 2 => Err(Error::invalid(
                "family",
                format!("star family needs max_leaves >= 2, got {max_leaves}"),
            )),
            FactorFamily::PathsAtLeast { min_order } if !(2..=3).contains(&min_order) => {
                Err(Error::invalid(
                    "family",
                    format!("path family supports min_order 2 or 3, got {min_order}"),
                ))
            }
            _ => Ok(()),
        }
    }
}

impl std::fmt::Display for FactorFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FactorFamily::Stars { max_leaves } => write!(f, "S_{max_leaves}"),
            FactorFamily::PathsAtLeast { min_order } => write!(f, "P>={min_order}"),
            FactorFamily::P2P3 => write!(f, "{{P2,P3}}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ComponentKind {
    Path,
    Star,
}

/// One component of a factor: a path in traversal order, or a star listed
/// center-first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorComponent {
    pub kind: ComponentKind,
    pub vertices: Vec<usize>,
}

impl FactorComponent {
    fn star(center: usize, mut leaves: Vec<usize>) -> Self {
        leaves.sort_unstable();
        let mut vertices = Vec::with_capacity(1 + leaves.len());
        vertices.push(center);
        vertices.extend(leaves);
        FactorComponent {
            kind: ComponentKind::Star,
            vertices,
        }
    }

    fn path(vertices: Vec<usize>) -> Self {
        FactorComponent {
            kind: ComponentKind::Path,
            vertices,
        }
    }

    /// Edges of the component as a subgraph: consecutive pairs of a path, or
    /// center-leaf pairs of a star.
    pub fn component_edges(&self) -> Vec<(usize, usize)> {
        match self.kind {
            ComponentKind::Path => self
                .vertices
                .windows(2)
                .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
                .collect(),
            ComponentKind::Star => {
                let c = self.vertices[0];
                self.vertices[1..]
                    .iter()
                    .map(|&l| (c.min(l), c.max(l)))
                    .collect()
            }
        }
    }
}

/// A spanning factor: components that partition the vertices, each drawn
/// from the declared family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub components: Vec<FactorComponent>,
    pub family: FactorFamily,
}

impl Factor {
    /// True when some component contains `e` as one of its own edges.
    pub fn covers_edge(&self, e: (usize, usize)) -> bool {
        let e = (e.0.min(e.1), e.0.max(e.1));
        self.components
            .iter()
            .any(|c| c.component_edges().contains(&e))
    }
}

/// Re-check a factor against `g`: the components partition the vertex set,
/// their internal adjacencies hold in `g`, and each belongs to the family.
pub fn verify_factor(g: &Graph, f: &Factor) -> bool {
    let mut covered = 0u64;
    for comp in &f.components {
        let len = comp.vertices.len();
        if len == 0 {
            return false;
        }
        let mut mask = 0u64;
        for &v in &comp.vertices {
            if v >= g.n() || mask & bit(v) != 0 {
                return false;
            }
            mask |= bit(v);
        }
        if covered & mask != 0 {
            return false;
        }
        covered |= mask;
        let shape_ok = match comp.kind {
            ComponentKind::Path => comp.vertices.windows(2).all(|w| g.has_edge(w[0], w[1])),
            ComponentKind::Star => comp.vertices[1..]
                .iter()
                .all(|&l| g.has_edge(comp.vertices[0], l)),
        };
        if !shape_ok {
            return false;
        }
        let family_ok = match f.family {
            FactorFamily::Stars { max_leaves } => {
                comp.kind == ComponentKind::Star && len >= 2 && len <= max_leaves + 1
            }
            FactorFamily::PathsAtLeast { min_order } => {
                comp.kind == ComponentKind::Path && len >= min_order
            }
            FactorFamily::P2P3 => comp.kind == ComponentKind::Path && (len == 2 || len == 3),
        };
        if !family_ok {
            return false;
        }
    }
    covered == g.full_mask()
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    if g.n() > cap {
        return Err(Error::SearchCapExceeded { n: g.n(), cap });
    }
    Ok(())
}

/// Spanning star factor with components `K_{1,1},...,K_{1,n}`, or `None`.
/// Deterministic first find: the search branches on the lowest uncovered
/// vertex, trying it first as a center, then as a leaf.
pub fn find_sn_factor(g: &Graph, n: usize) -> Result<Option<Factor>> {
    find_sn_factor_capped(g, n, DEFAULT_SEARCH_CAP)
}

pub fn find_sn_factor_capped(g: &Graph, n: usize, cap: usize) -> Result<Option<Factor>> {
    find_factor_capped(g, FactorFamily::Stars { max_leaves: n }, cap)
}

/// Spanning path factor with every path on at least `k` vertices (`k` is 2
/// or 3), or `None`.
pub fn find_pgek_factor(g: &Graph, k: usize) -> Result<Option<Factor>> {
    find_pgek_factor_capped(g, k, DEFAULT_SEARCH_CAP)
}

pub fn find_pgek_factor_capped(g: &Graph, k: usize, cap: usize) -> Result<Option<Factor>> {
    find_factor_capped(g, FactorFamily::PathsAtLeast { min_order: k }, cap)
}

pub fn find_factor(g: &Graph, family: FactorFamily) -> Result<Option<Factor>> {
    find_factor_capped(g, family, DEFAULT_SEARCH_CAP)
}

pub fn find_factor_capped(g: &Graph, family: FactorFamily, cap: usize) -> Result<Option<Factor>> {
    family.validate()?;
    check_cap(g, cap)?;
    let components = match family {
        FactorFamily::Stars { max_leaves } => StarSearcher::new(g, max_leaves).search(0),
        FactorFamily::PathsAtLeast { min_order } => {
            PathSearcher::new(g, min_order, usize::MAX).search(0)
        }
        FactorFamily::P2P3 => PathSearcher::new(g, 2, 3).search(0),
    };
    Ok(components.map(|components| Factor { components, family }))
}

/// A factor in the family with some component containing `e` as a component
/// edge (consecutive on a path, or center-leaf in a star), or `None`.
pub fn find_factor_covering_edge(
    g: &Graph,
    family: FactorFamily,
    e: (usize, usize),
) -> Result<Option<Factor>> {
    find_factor_covering_edge_capped(g, family, e, DEFAULT_SEARCH_CAP)
}

pub fn find_factor_covering_edge_capped(
    g: &Graph,
    family: FactorFamily,
    e: (usize, usize),
    cap: usize,
) -> Result<Option<Factor>> {
    family.validate()?;
    check_cap(g, cap)?;
    let (a, b) = (e.0.min(e.1), e.0.max(e.1));
    if !g.has_edge(a, b) {
        return Err(Error::NotAnEdge(e.0, e.1));
    }
    let components = match family {
        FactorFamily::Stars { max_leaves } => {
            let mut s = StarSearcher::new(g, max_leaves);
            // the covering component either centers at a with b among the
            // leaves, or the other way round
            let mut first = vec![b];
            let cand = g.neighbor_mask(a) & !bit(b);
            s.star_with_center(0, a, &mut first, cand, 0).or_else(|| {
                let mut first = vec![a];
                let cand = g.neighbor_mask(b) & !bit(a);
                s.star_with_center(0, b, &mut first, cand, 0)
            })
        }
        FactorFamily::PathsAtLeast { min_order } => {
            PathSearcher::new(g, min_order, usize::MAX).covering_edge(a, b)
        }
        FactorFamily::P2P3 => PathSearcher::new(g, 2, 3).covering_edge(a, b),
    };
    let factor = components.map(|components| Factor { components, family });
    debug_assert!(factor.as_ref().is_none_or(|f| f.covers_edge((a, b))));
    Ok(factor)
}

/// True iff every edge of the connected graph `g` lies in some factor from
/// the family. Edgeless graphs fall back to plain factor existence, so `K_1`
/// is not covered.
pub fn is_covered_bruteforce(g: &Graph, family: FactorFamily) -> Result<bool> {
    is_covered_bruteforce_capped(g, family, DEFAULT_SEARCH_CAP)
}

pub fn is_covered_bruteforce_capped(
    g: &Graph,
    family: FactorFamily,
    cap: usize,
) -> Result<bool> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let edges = g.edges();
    if edges.is_empty() {
        return Ok(find_factor_capped(g, family, cap)?.is_some());
    }
    for e in edges {
        if find_factor_covering_edge_capped(g, family, e, cap)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Star partition search over a covered-vertices bitmask, with memoized
/// failed states. Memoization never changes which factor is found first:
/// a state's subtree depends only on the mask.
struct StarSearcher<'g> {
    g: &'g Graph,
    max_leaves: usize,
    full: u64,
    failed: HashSet<u64>,
}

impl<'g> StarSearcher<'g> {
    fn new(g: &'g Graph, max_leaves: usize) -> Self {
        StarSearcher {
            g,
            max_leaves,
            full: g.full_mask(),
            failed: HashSet::new(),
        }
    }

    fn search(&mut self, covered: u64) -> Option<Vec<FactorComponent>> {
        if covered == self.full {
            return Some(Vec::new());
        }
        if self.failed.contains(&covered) {
            return None;
        }
        let v = (!covered & self.full).trailing_zeros() as usize;
        let nbrs = self.g.neighbor_mask(v) & !covered;
        let mut leaves = Vec::new();
        if let Some(r) = self.star_with_center(covered, v, &mut leaves, nbrs, 0) {
            return Some(r);
        }
        // v as a leaf of a neighboring center
        for u in iter_bits(nbrs) {
            let mut seeded = vec![v];
            let cand = self.g.neighbor_mask(u) & !covered & !bit(v);
            if let Some(r) = self.star_with_center(covered, u, &mut seeded, cand, 0) {
                return Some(r);
            }
        }
        self.failed.insert(covered);
        None
    }

    /// Try the current leaf set (when nonempty), then extend it with larger
    /// candidates, in lexicographic order of the leaf sequences.
    fn star_with_center(
        &mut self,
        covered: u64,
        center: usize,
        leaves: &mut Vec<usize>,
        cand: u64,
        from: usize,
    ) -> Option<Vec<FactorComponent>> {
        if !leaves.is_empty() {
            let mask = leaves.iter().fold(bit(center), |m, &l| m | bit(l));
            if let Some(mut rest) = self.search(covered | mask) {
                rest.insert(0, FactorComponent::star(center, leaves.clone()));
                return Some(rest);
            }
        }
        if leaves.len() < self.max_leaves {
            // candidates above previous choices keep leaf sets unique
            for l in iter_bits(cand & !below(from)) {
                leaves.push(l);
                if let Some(r) = self.star_with_center(covered, center, leaves, cand, l + 1) {
                    return Some(r);
                }
                leaves.pop();
            }
        }
        None
    }
}

/// Path partition search; paths containing the branch vertex are enumerated
/// as two arms so the vertex may sit anywhere on its path.
struct PathSearcher<'g> {
    g: &'g Graph,
    min_order: usize,
    max_order: usize,
    full: u64,
    failed: HashSet<u64>,
}

impl<'g> PathSearcher<'g> {
    fn new(g: &'g Graph, min_order: usize, max_order: usize) -> Self {
        PathSearcher {
            g,
            min_order,
            max_order,
            full: g.full_mask(),
            failed: HashSet::new(),
        }
    }

    fn search(&mut self, covered: u64) -> Option<Vec<FactorComponent>> {
        if covered == self.full {
            return Some(Vec::new());
        }
        if self.failed.contains(&covered) {
            return None;
        }
        let v = (!covered & self.full).trailing_zeros() as usize;
        let mut right = Vec::new();
        if let Some(r) = self.grow_right(covered, v, &mut right) {
            return Some(r);
        }
        self.failed.insert(covered);
        None
    }

    /// Paths with `v` as left endpoint, extended rightwards; once the right
    /// arm is nonempty the left arm may grow too (its first vertex kept
    /// below the right arm's first, so each undirected path is tried once).
    fn grow_right(
        &mut self,
        covered: u64,
        v: usize,
        right: &mut Vec<usize>,
    ) -> Option<Vec<FactorComponent>> {
        let used = right.iter().fold(bit(v), |m, &w| m | bit(w));
        let order = 1 + right.len();
        if order >= self.min_order {
            if let Some(mut rest) = self.search(covered | used) {
                let mut verts = Vec::with_capacity(order);
                verts.push(v);
                verts.extend_from_slice(right);
                rest.insert(0, FactorComponent::path(verts));
                return Some(rest);
            }
        }
        if order < self.max_order {
            let tip = *right.last().unwrap_or(&v);
            for w in iter_bits(self.g.neighbor_mask(tip) & !covered & !used) {
                right.push(w);
                if let Some(r) = self.grow_right(covered, v, right) {
                    return Some(r);
                }
                right.pop();
            }
            if let Some(&r1) = right.first() {
                let cand = self.g.neighbor_mask(v) & !covered & !used & below(r1);
                for l in iter_bits(cand) {
                    let mut left = vec![l];
                    if let Some(r) = self.grow_left(covered, v, right, &mut left) {
                        return Some(r);
                    }
                }
            }
        }
        None
    }

    fn grow_left(
        &mut self,
        covered: u64,
        v: usize,
        right: &[usize],
        left: &mut Vec<usize>,
    ) -> Option<Vec<FactorComponent>> {
        let used = right
            .iter()
            .chain(left.iter())
            .fold(bit(v), |m, &w| m | bit(w));
        let order = 1 + right.len() + left.len();
        if order >= self.min_order {
            if let Some(mut rest) = self.search(covered | used) {
                let mut verts: Vec<usize> = left.iter().rev().copied().collect();
                verts.push(v);
                verts.extend_from_slice(right);
                rest.insert(0, FactorComponent::path(verts));
                return Some(rest);
            }
        }
        if order < self.max_order {
            let tip = *left.last().expect("left arm is nonempty");
            for w in iter_bits(self.g.neighbor_mask(tip) & !covered & !used) {
                left.push(w);
                if let Some(r) = self.grow_left(covered, v, right, left) {
                    return Some(r);
                }
                left.pop();
            }
        }
        None
    }

    /// First component anchored on the edge `a-b`, then the regular search
    /// on what remains.
    fn covering_edge(&mut self, a: usize, b: usize) -> Option<Vec<FactorComponent>> {
        let mut bside = Vec::new();
        self.grow_edge_b(a, b, &mut bside)
    }

    fn grow_edge_b(
        &mut self,
        a: usize,
        b: usize,
        bside: &mut Vec<usize>,
    ) -> Option<Vec<FactorComponent>> {
        let used = bside.iter().fold(bit(a) | bit(b), |m, &w| m | bit(w));
        let order = 2 + bside.len();
        if order >= self.min_order {
            if let Some(mut rest) = self.search(used) {
                let mut verts = vec![a, b];
                verts.extend_from_slice(bside);
                rest.insert(0, FactorComponent::path(verts));
                return Some(rest);
            }
        }
        if order < self.max_order {
            let tip = *bside.last().unwrap_or(&b);
            for w in iter_bits(self.g.neighbor_mask(tip) & !used) {
                bside.push(w);
                if let Some(r) = self.grow_edge_b(a, b, bside) {
                    return Some(r);
                }
                bside.pop();
            }
            for l in iter_bits(self.g.neighbor_mask(a) & !used) {
                let mut aside = vec![l];
                if let Some(r) = self.grow_edge_a(a, b, bside, &mut aside) {
                    return Some(r);
                }
            }
        }
        None
    }

    fn grow_edge_a(
        &mut self,
        a: usize,
        b: usize,
        bside: &[usize],
        aside: &mut Vec<usize>,
    ) -> Option<Vec<FactorComponent>> {
        let used = bside
            .iter()
            .chain(aside.iter())
            .fold(bit(a) | bit(b), |m, &w| m | bit(w));
        let order = 2 + bside.len() + aside.len();
        if order >= self.min_order {
            if let Some(mut rest) = self.search(used) {
                let mut verts: Vec<usize> = aside.iter().rev().copied().collect();
                verts.push(a);
                verts.push(b);
                verts.extend_from_slice(bside);
                rest.insert(0, FactorComponent::path(verts));
                return Some(rest);
            }
        }
        if order < self.max_order {
            let tip = *aside.last().expect("a-side arm is nonempty");
            for w in iter_bits(self.g.neighbor_mask(tip) & !used) {
                aside.push(w);
                if let Some(r) = self.grow_edge_a(a, b, bside, aside) {
                    return Some(r);
                }
                aside.pop();
            }
        }
        None
    }
}
