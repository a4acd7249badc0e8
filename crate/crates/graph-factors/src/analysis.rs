//! The decision layer: sun recognition, the epsilon adjustment terms, and the
//! characterization-based deciders for star factors, path factors, and
//! factor-covered graphs. Every negative answer carries a vertex set whose
//! deficiency certifiably exceeds its bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    components, delete_vertices, is_independent, iter_bits, Graph, VertexSet,
};
use crate::matching::is_factor_critical;

/// Default cap on subset enumeration inside the deciders (2^24 subsets).
pub const DEFAULT_DECIDER_CAP: usize = 24;

/// How a connected graph decomposes as a sun: a single vertex, a single
/// edge, or a factor-critical base with one pendant hung on each base vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SunKind {
    K1,
    K2,
    BigSun,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SunDecomposition {
    pub kind: SunKind,
    /// The factor-critical base (empty for `K1`/`K2`).
    pub base: VertexSet,
    /// `(base vertex, pendant vertex)` pairs, sorted by base vertex.
    pub pendants: Vec<(usize, usize)>,
}

impl SunDecomposition {
    /// Re-check the decomposition against the component graph it was
    /// produced for.
    pub fn is_valid(&self, g: &Graph) -> bool {
        match self.kind {
            SunKind::K1 => g.n() == 1 && self.base.is_empty() && self.pendants.is_empty(),
            SunKind::K2 => {
                g.n() == 2 && g.has_edge(0, 1) && self.base.is_empty() && self.pendants.is_empty()
            }
            SunKind::BigSun => {
                let b = self.base.len();
                if b < 3 || b.is_multiple_of(2) || self.pendants.len() != b {
                    return false;
                }
                let mut covered = self.base.bits();
                for &(v, u) in &self.pendants {
                    if !self.base.contains(v) || self.base.contains(u) {
                        return false;
                    }
                    if u >= g.n() || g.degree(u) != 1 || !g.has_edge(v, u) {
                        return false;
                    }
                    if covered & (1u64 << u) != 0 {
                        return false;
                    }
                    covered |= 1u64 << u;
                }
                if covered != g.full_mask() {
                    return false;
                }
                let (base_graph, _) = g.induced(self.base.bits());
                is_factor_critical(&base_graph)
            }
        }
    }
}

/// Recognize a sun. The input must be nonempty and connected (components are
/// fed individually).
///
/// For orders past 2 this requires: even order, the degree-1 vertices form
/// exactly half the graph, their neighbor map into the rest is a bijection,
/// and the rest induces a factor-critical graph. In a big sun the pendants
/// are precisely the degree-1 vertices, because a factor-critical base on 3+
/// vertices has minimum degree 2.
pub fn is_sun(g: &Graph) -> Result<Option<SunDecomposition>> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    if n == 1 {
        return Ok(Some(SunDecomposition {
            kind: SunKind::K1,
            base: VertexSet::EMPTY,
            pendants: Vec::new(),
        }));
    }
    if n == 2 {
        return Ok(Some(SunDecomposition {
            kind: SunKind::K2,
            base: VertexSet::EMPTY,
            pendants: Vec::new(),
        }));
    }
    if n % 2 == 1 {
        return Ok(None);
    }
    let pendant_bits: u64 = g
        .vertices()
        .filter(|&v| g.degree(v) == 1)
        .fold(0, |m, v| m | (1u64 << v));
    if pendant_bits.count_ones() as usize != n / 2 {
        return Ok(None);
    }
    let mut pairs = Vec::with_capacity(n / 2);
    let mut hit = 0u64;
    for u in iter_bits(pendant_bits) {
        let v = g.neighbors(u).next().expect("degree-1 vertex has a neighbor");
        if pendant_bits & (1u64 << v) != 0 || hit & (1u64 << v) != 0 {
            return Ok(None);
        }
        hit |= 1u64 << v;
        pairs.push((v, u));
    }
    let base_bits = g.full_mask() & !pendant_bits;
    let (base_graph, _) = g.induced(base_bits);
    if !is_factor_critical(&base_graph) {
        return Ok(None);
    }
    pairs.sort_unstable();
    Ok(Some(SunDecomposition {
        kind: SunKind::BigSun,
        base: VertexSet::from_bits(base_bits),
        pendants: pairs,
    }))
}

/// `sun(G - X)`: the number of components of `G - X` that are suns (`K_1`
/// and `K_2` components count).
pub fn sun_count(g: &Graph, x: VertexSet) -> Result<usize> {
    x.check_within(g)?;
    Ok(sun_count_after(g, x.bits()))
}

fn sun_count_after(g: &Graph, xbits: u64) -> usize {
    let (rest, _) = g.induced(g.full_mask() & !xbits);
    components(&rest)
        .iter()
        .filter(|c| {
            let (comp, _) = rest.induced(c.bits());
            is_sun(&comp)
                .expect("components are nonempty and connected")
                .is_some()
        })
        .count()
}

fn isolated_after(g: &Graph, xbits: u64) -> usize {
    let keep = g.full_mask() & !xbits;
    iter_bits(keep)
        .filter(|&v| g.neighbor_mask(v) & keep == 0)
        .count()
}

/// Adjustment term for the `P>=2`-covered characterization: 2 when `S` is
/// nonempty and not independent; 1 when `S` is nonempty, independent and
/// `G - S` has a component on 2+ vertices; 0 otherwise.
pub fn epsilon1(g: &Graph, s: VertexSet) -> Result<usize> {
    s.check_within(g)?;
    if s.is_empty() {
        return Ok(0);
    }
    if !is_independent(g, s)? {
        return Ok(2);
    }
    let del = delete_vertices(g, s)?;
    if components(&del.graph).iter().any(|c| c.len() >= 2) {
        Ok(1)
    } else {
        Ok(0)
    }
}

/// Adjustment term for the `P>=3`-covered characterization: as
/// [`epsilon1`], but the middle case asks for a non-sun component of `G - S`.
pub fn epsilon2(g: &Graph, s: VertexSet) -> Result<usize> {
    s.check_within(g)?;
    if s.is_empty() {
        return Ok(0);
    }
    if !is_independent(g, s)? {
        return Ok(2);
    }
    let del = delete_vertices(g, s)?;
    let has_non_sun = components(&del.graph).iter().any(|c| {
        let (comp, _) = del.graph.induced(c.bits());
        is_sun(&comp)
            .expect("components are nonempty and connected")
            .is_none()
    });
    Ok(if has_non_sun { 1 } else { 0 })
}

/// Adjustment term for the `{P_2,P_3}`-covered characterization: 3 when `S`
/// is nonempty and not independent, 0 otherwise.
pub fn epsilon3(g: &Graph, s: VertexSet) -> Result<usize> {
    s.check_within(g)?;
    if !s.is_empty() && !is_independent(g, s)? {
        Ok(3)
    } else {
        Ok(0)
    }
}

/// A vertex set whose deficiency exceeds its bound: the non-existence
/// certificate common to all the deciders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ViolationWitness {
    /// The deleted set (`X` or `S`).
    pub set: VertexSet,
    /// `i(G - set)` or `sun(G - set)`, or `|S|` for the independent form.
    pub deficiency: usize,
    /// The right-hand side the deficiency must not exceed.
    pub bound: usize,
    /// The epsilon value entering the bound, for the covered deciders.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<usize>,
}

/// Outcome of a decider: a verdict, with a violation witness exactly when
/// the verdict is negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ViolationWitness>,
}

impl Decision {
    fn holds() -> Self {
        Decision {
            verdict: true,
            witness: None,
        }
    }

    fn violated(witness: ViolationWitness) -> Self {
        Decision {
            verdict: false,
            witness: Some(witness),
        }
    }
}

/// Subsets of `0..n` in increasing cardinality, lexicographic within each
/// cardinality, so the first violation found is the canonical minimal one.
fn scan_subsets(
    n: usize,
    cap: usize,
    mut violation: impl FnMut(VertexSet) -> Option<ViolationWitness>,
) -> Result<Decision> {
    if n > cap {
        return Err(Error::EnumerationCapExceeded { n, cap });
    }
    for c in 0..=n {
        let mut comb: Vec<usize> = (0..c).collect();
        loop {
            let set = VertexSet::from_bits(comb.iter().fold(0u64, |m, &v| m | (1u64 << v)));
            if let Some(w) = violation(set) {
                return Ok(Decision::violated(w));
            }
            if !next_combination(&mut comb, n) {
                break;
            }
        }
    }
    Ok(Decision::holds())
}

/// Advance `comb` to the next `c`-combination of `0..n` in lexicographic
/// order; false when exhausted.
fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let c = comb.len();
    if c == 0 {
        return false;
    }
    let mut i = c;
    while i > 0 {
        i -= 1;
        if comb[i] < n - c + i {
            comb[i] += 1;
            for j in i + 1..c {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Independent sets of `g` in the same order as [`scan_subsets`], pruned
/// during generation rather than filtered afterwards.
fn scan_independent_sets(
    g: &Graph,
    cap: usize,
    mut violation: impl FnMut(VertexSet) -> Option<ViolationWitness>,
) -> Result<Decision> {
    let n = g.n();
    if n > cap {
        return Err(Error::EnumerationCapExceeded { n, cap });
    }
    fn rec(
        g: &Graph,
        need: usize,
        from: usize,
        acc: u64,
        violation: &mut impl FnMut(VertexSet) -> Option<ViolationWitness>,
    ) -> Option<ViolationWitness> {
        if need == 0 {
            return violation(VertexSet::from_bits(acc));
        }
        let n = g.n();
        let mut v = from;
        while v + need <= n {
            if g.neighbor_mask(v) & acc == 0 {
                if let Some(w) = rec(g, need - 1, v + 1, acc | (1u64 << v), violation) {
                    return Some(w);
                }
            }
            v += 1;
        }
        None
    }
    for c in 0..=n {
        if let Some(w) = rec(g, c, 0, 0, &mut violation) {
            return Ok(Decision::violated(w));
        }
    }
    Ok(Decision::holds())
}

/// Does `g` have a spanning subgraph whose components are stars
/// `K_{1,1},...,K_{1,n}`? Decided by checking `i(G - X) <= n|X|` over all
/// subsets, with the lexicographically smallest violating set of smallest
/// cardinality as witness.
pub fn has_sn_factor(g: &Graph, n: usize) -> Result<Decision> {
    has_sn_factor_capped(g, n, DEFAULT_DECIDER_CAP)
}

pub fn has_sn_factor_capped(g: &Graph, n: usize, cap: usize) -> Result<Decision> {
    check_star_width(n)?;
    scan_subsets(g.n(), cap, |x| {
        let deficiency = isolated_after(g, x.bits());
        let bound = n * x.len();
        (deficiency > bound).then_some(ViolationWitness {
            set: x,
            deficiency,
            bound,
            epsilon: None,
        })
    })
}

fn check_star_width(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::invalid("n", format!("star width must be >= 2, got {n}")));
    }
    Ok(())
}

/// Same decision as [`has_sn_factor`], via the dual criterion
/// `|S| <= n|N_G(S)|` over independent sets only.
pub fn has_sn_factor_independent_form(g: &Graph, n: usize) -> Result<Decision> {
    has_sn_factor_independent_form_capped(g, n, DEFAULT_DECIDER_CAP)
}

pub fn has_sn_factor_independent_form_capped(
    g: &Graph,
    n: usize,
    cap: usize,
) -> Result<Decision> {
    check_star_width(n)?;
    scan_independent_sets(g, cap, |s| {
        let neighborhood = s
            .iter()
            .fold(0u64, |m, v| m | g.neighbor_mask(v))
            .count_ones() as usize;
        let deficiency = s.len();
        let bound = n * neighborhood;
        (deficiency > bound).then_some(ViolationWitness {
            set: s,
            deficiency,
            bound,
            epsilon: None,
        })
    })
}

/// Does `g` have a spanning set of paths, each on 2+ vertices? Equivalent to
/// an `S_2`-factor; kept separate because path factors are the named case.
pub fn has_p2_factor(g: &Graph) -> Result<Decision> {
    has_sn_factor(g, 2)
}

pub fn has_p2_factor_capped(g: &Graph, cap: usize) -> Result<Decision> {
    has_sn_factor_capped(g, 2, cap)
}

/// Does `g` have a spanning set of paths, each on 3+ vertices? Decided by
/// `sun(G - X) <= 2|X|` over all subsets.
pub fn has_p3_factor(g: &Graph) -> Result<Decision> {
    has_p3_factor_capped(g, DEFAULT_DECIDER_CAP)
}

pub fn has_p3_factor_capped(g: &Graph, cap: usize) -> Result<Decision> {
    scan_subsets(g.n(), cap, |x| {
        let deficiency = sun_count_after(g, x.bits());
        let bound = 2 * x.len();
        (deficiency > bound).then_some(ViolationWitness {
            set: x,
            deficiency,
            bound,
            epsilon: None,
        })
    })
}

fn check_connected(g: &Graph) -> Result<()> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Is every edge of `g` contained in some spanning set of paths on 2+
/// vertices? Connected input only; decided by
/// `i(G - S) <= 2|S| - epsilon1(S)` over all subsets.
pub fn is_p2_covered(g: &Graph) -> Result<Decision> {
    is_p2_covered_capped(g, DEFAULT_DECIDER_CAP)
}

pub fn is_p2_covered_capped(g: &Graph, cap: usize) -> Result<Decision> {
    check_connected(g)?;
    scan_subsets(g.n(), cap, |s| {
        let eps = epsilon1(g, s).expect("set comes from the scan");
        let deficiency = isolated_after(g, s.bits());
        let bound = 2 * s.len() - eps;
        (deficiency > bound).then_some(ViolationWitness {
            set: s,
            deficiency,
            bound,
            epsilon: Some(eps),
        })
    })
}

/// Is every edge of `g` contained in some spanning set of paths on 3+
/// vertices? Decided by `sun(G - S) <= 2|S| - epsilon2(S)`.
pub fn is_p3_covered(g: &Graph) -> Result<Decision> {
    is_p3_covered_capped(g, DEFAULT_DECIDER_CAP)
}

pub fn is_p3_covered_capped(g: &Graph, cap: usize) -> Result<Decision> {
    check_connected(g)?;
    scan_subsets(g.n(), cap, |s| {
        let eps = epsilon2(g, s).expect("set comes from the scan");
        let deficiency = sun_count_after(g, s.bits());
        let bound = 2 * s.len() - eps;
        (deficiency > bound).then_some(ViolationWitness {
            set: s,
            deficiency,
            bound,
            epsilon: Some(eps),
        })
    })
}

/// Is every edge of `g` contained in some spanning set of paths on exactly 2
/// or 3 vertices? Decided by `i(G - S) <= 2|S| - epsilon3(S)`.
pub fn is_p2p3_covered(g: &Graph) -> Result<Decision> {
    is_p2p3_covered_capped(g, DEFAULT_DECIDER_CAP)
}

pub fn is_p2p3_covered_capped(g: &Graph, cap: usize) -> Result<Decision> {
    check_connected(g)?;
    scan_subsets(g.n(), cap, |s| {
        let eps = epsilon3(g, s).expect("set comes from the scan");
        let deficiency = isolated_after(g, s.bits());
        let bound = 2 * s.len() - eps;
        (deficiency > bound).then_some(ViolationWitness {
            set: s,
            deficiency,
            bound,
            epsilon: Some(eps),
        })
    })
}

/// The decidable properties, as one dispatchable value (this is what the
/// command line and the verification sweeps select on).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Property {
    SnFactor { n: usize },
    P2Factor,
    P3Factor,
    P2Covered,
    P3Covered,
    P2P3Covered,
}

impl Property {
    pub fn decide(&self, g: &Graph) -> Result<Decision> {
        self.decide_capped(g, DEFAULT_DECIDER_CAP)
    }

    pub fn decide_capped(&self, g: &Graph, cap: usize) -> Result<Decision> {
        match *self {
            Property::SnFactor { n } => has_sn_factor_capped(g, n, cap),
            Property::P2Factor => has_p2_factor_capped(g, cap),
            Property::P3Factor => has_p3_factor_capped(g, cap),
            Property::P2Covered => is_p2_covered_capped(g, cap),
            Property::P3Covered => is_p3_covered_capped(g, cap),
            Property::P2P3Covered => is_p2p3_covered_capped(g, cap),
        }
    }

    /// The covered-graph characterizations are stated for connected graphs.
    pub fn requires_connected(&self) -> bool {
        matches!(
            self,
            Property::P2Covered | Property::P3Covered | Property::P2P3Covered
        )
    }

    /// Recompute deficiency, bound and epsilon for the witness's set and
    /// check they reproduce the stored violation.
    pub fn revalidate(&self, g: &Graph, w: &ViolationWitness) -> bool {
        if !w.set.is_within(g) {
            return false;
        }
        let (deficiency, bound, epsilon) = match *self {
            Property::SnFactor { n } => (
                isolated_after(g, w.set.bits()),
                n * w.set.len(),
                None,
            ),
            Property::P2Factor => (isolated_after(g, w.set.bits()), 2 * w.set.len(), None),
            Property::P3Factor => (sun_count_after(g, w.set.bits()), 2 * w.set.len(), None),
            Property::P2Covered => {
                let eps = epsilon1(g, w.set).expect("set checked above");
                (
                    isolated_after(g, w.set.bits()),
                    2 * w.set.len() - eps,
                    Some(eps),
                )
            }
            Property::P3Covered => {
                let eps = epsilon2(g, w.set).expect("set checked above");
                (
                    sun_count_after(g, w.set.bits()),
                    2 * w.set.len() - eps,
                    Some(eps),
                )
            }
            Property::P2P3Covered => {
                let eps = epsilon3(g, w.set).expect("set checked above");
                (
                    isolated_after(g, w.set.bits()),
                    2 * w.set.len() - eps,
                    Some(eps),
                )
            }
        };
        deficiency == w.deficiency
            && bound == w.bound
            && epsilon == w.epsilon
            && deficiency > bound
    }
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Property::SnFactor { n } => write!(f, "sn-factor(n={n})"),
            Property::P2Factor => write!(f, "p2-factor"),
            Property::P3Factor => write!(f, "p3-factor"),
            Property::P2Covered => write!(f, "p2-covered"),
            Property::P3Covered => write!(f, "p3-covered"),
            Property::P2P3Covered => write!(f, "p2p3-covered"),
        }
    }
}
