//! Generators for the extremal join constructions that show each
//! minimum-degree bound is tight, and for suns over factor-critical bases.

use serde::Serialize;

use crate::analysis::{epsilon1, epsilon2, epsilon3, sun_count, Property, ViolationWitness};
use crate::error::{Error, Result};
use crate::graph::{
    disjoint_union, is_k1r_free, isolated_count, join, make_named_graph, min_degree, Graph,
    NamedGraph, VertexSet,
};
use crate::matching::is_factor_critical;

/// The minimum-degree statements the sweeps and constructions refer to.
/// `T1-*` are factor-existence statements, `T2-*` are covered-graph
/// statements, `C1-1` is the `P>=2` corollary of `T1-1` at `n = 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TheoremId {
    T1_1,
    T1_2,
    T2_1,
    T2_2,
    T2_3,
    Cor1_1,
}

impl TheoremId {
    pub const ALL: [TheoremId; 6] = [
        TheoremId::T1_1,
        TheoremId::T1_2,
        TheoremId::T2_1,
        TheoremId::T2_2,
        TheoremId::T2_3,
        TheoremId::Cor1_1,
    ];

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "T1-1" => Ok(TheoremId::T1_1),
            "T1-2" => Ok(TheoremId::T1_2),
            "T2-1" => Ok(TheoremId::T2_1),
            "T2-2" => Ok(TheoremId::T2_2),
            "T2-3" => Ok(TheoremId::T2_3),
            "C1-1" | "COR1-1" => Ok(TheoremId::Cor1_1),
            other => Err(Error::invalid(
                "theorem",
                format!("unknown theorem id `{other}` (expected T1-1, T1-2, T2-1, T2-2, T2-3 or C1-1)"),
            )),
        }
    }

    /// Whether the statement takes the star width `n` as a second parameter.
    pub fn takes_n(&self) -> bool {
        matches!(self, TheoremId::T1_1)
    }

    /// The minimum-degree hypothesis: a `K_{1,r}`-free graph with at least
    /// this minimum degree has the concluded property.
    pub fn degree_bound(&self, r: usize, n: Option<usize>) -> Result<usize> {
        check_r(r)?;
        let n = self.check_n(n)?;
        Ok(match self {
            TheoremId::T1_1 => (r + n.unwrap() - 2) / n.unwrap(),
            TheoremId::T1_2 | TheoremId::T2_1 => r / 2 + 1,
            TheoremId::T2_2 => r / 2 + 2,
            TheoremId::T2_3 => r.div_ceil(2) + 1,
            TheoremId::Cor1_1 => r / 2,
        })
    }

    fn check_n(&self, n: Option<usize>) -> Result<Option<usize>> {
        match (self.takes_n(), n) {
            (true, Some(n)) if n >= 2 => Ok(Some(n)),
            (true, Some(n)) => Err(Error::invalid(
                "n",
                format!("star width must be >= 2, got {n}"),
            )),
            (true, None) => Err(Error::invalid("n", "T1-1 requires the star width n")),
            (false, None) => Ok(None),
            (false, Some(_)) => Err(Error::invalid("n", format!("{self} does not take n"))),
        }
    }

    /// The concluded property at the given parameters.
    pub fn property(&self, n: Option<usize>) -> Result<Property> {
        let n = self.check_n(n)?;
        Ok(match self {
            TheoremId::T1_1 => Property::SnFactor { n: n.unwrap() },
            TheoremId::T1_2 => Property::P3Factor,
            TheoremId::T2_1 => Property::P2Covered,
            TheoremId::T2_2 => Property::P3Covered,
            TheoremId::T2_3 => Property::P2P3Covered,
            TheoremId::Cor1_1 => Property::P2Factor,
        })
    }

    /// Covered-graph statements are about connected graphs.
    pub fn requires_connected(&self) -> bool {
        matches!(self, TheoremId::T2_1 | TheoremId::T2_2 | TheoremId::T2_3)
    }

    /// The corollary inherits its tightness example from `T1-1`; it has no
    /// construction of its own.
    pub fn has_sharpness_construction(&self) -> bool {
        !matches!(self, TheoremId::Cor1_1)
    }
}

impl std::fmt::Display for TheoremId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TheoremId::T1_1 => "T1-1",
            TheoremId::T1_2 => "T1-2",
            TheoremId::T2_1 => "T2-1",
            TheoremId::T2_2 => "T2-2",
            TheoremId::T2_3 => "T2-3",
            TheoremId::Cor1_1 => "C1-1",
        };
        f.write_str(s)
    }
}

fn check_r(r: usize) -> Result<()> {
    if r < 3 {
        return Err(Error::invalid("r", format!("r must be >= 3, got {r}")));
    }
    Ok(())
}

/// An extremal case: a `K_{1,r}`-free graph whose minimum degree sits one
/// below a theorem's hypothesis, together with the deleted set that defeats
/// the concluded property.
///
/// `violating` is false for the small-`r` degeneracies where the stated set
/// does not actually violate the characterization (T2-1 and T2-2 at `r = 3`,
/// where the clique side is a lone vertex and the epsilon term collapses);
/// the evaluation is reported as-is instead of being forced.
#[derive(Clone, Debug, Serialize)]
pub struct SharpnessCase {
    pub theorem: TheoremId,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip)]
    pub graph: Graph,
    pub expected_delta: usize,
    pub expected_witness: ViolationWitness,
    pub violating: bool,
}

/// Build the tightness example for a theorem at parameters `r` (and `n` for
/// `T1-1`): an independent or matching side of `r - 1` pieces joined to a
/// small clique. The clique side occupies the last vertex indices and is the
/// deleted set of the reported witness.
pub fn sharpness_graph(theorem: TheoremId, r: usize, n: Option<usize>) -> Result<SharpnessCase> {
    check_r(r)?;
    if !theorem.has_sharpness_construction() {
        return Err(Error::invalid(
            "theorem",
            format!("{theorem} has no dedicated sharpness construction"),
        ));
    }
    let bound = theorem.degree_bound(r, n)?;

    let k1_side = |copies: usize| make_named_graph(NamedGraph::Empty(copies));
    let k2_side = |copies: usize| {
        let k2 = make_named_graph(NamedGraph::Complete(2))?;
        disjoint_union(&vec![k2; copies])
    };
    let clique = |m: usize| -> Result<Graph> {
        if m == 0 {
            Graph::new(0)
        } else {
            make_named_graph(NamedGraph::Complete(m))
        }
    };

    let (side, clique_size) = match theorem {
        TheoremId::T1_1 => (k1_side(r - 1)?, bound - 1),
        TheoremId::T1_2 => (k2_side(r - 1)?, r / 2 - 1),
        TheoremId::T2_1 => (k1_side(r - 1)?, r / 2),
        TheoremId::T2_2 => (k2_side(r - 1)?, r / 2),
        TheoremId::T2_3 => (k1_side(r - 1)?, r.div_ceil(2)),
        TheoremId::Cor1_1 => unreachable!("rejected above"),
    };
    let graph = join(&side, &clique(clique_size)?)?;

    let set_bits = (graph.full_mask() >> side.n()) << side.n();
    let set = VertexSet::from_bits(set_bits);
    debug_assert_eq!(set.len(), clique_size);

    let (deficiency, bound_value, epsilon) = match theorem {
        TheoremId::T1_1 => (isolated_count(&graph, set)?, n.unwrap() * set.len(), None),
        TheoremId::T1_2 => (sun_count(&graph, set)?, 2 * set.len(), None),
        TheoremId::T2_1 => {
            let eps = epsilon1(&graph, set)?;
            (isolated_count(&graph, set)?, 2 * set.len() - eps, Some(eps))
        }
        TheoremId::T2_2 => {
            let eps = epsilon2(&graph, set)?;
            (sun_count(&graph, set)?, 2 * set.len() - eps, Some(eps))
        }
        TheoremId::T2_3 => {
            let eps = epsilon3(&graph, set)?;
            (isolated_count(&graph, set)?, 2 * set.len() - eps, Some(eps))
        }
        TheoremId::Cor1_1 => unreachable!(),
    };

    let expected_delta = min_degree(&graph)?;
    debug_assert_eq!(expected_delta, bound - 1);
    debug_assert!(is_k1r_free(&graph, r));

    Ok(SharpnessCase {
        theorem,
        r,
        n,
        graph,
        expected_delta,
        expected_witness: ViolationWitness {
            set,
            deficiency,
            bound: bound_value,
            epsilon,
        },
        violating: deficiency > bound_value,
    })
}

/// Attach one pendant vertex to every vertex of the factor-critical graph
/// `h`. Pendant for base vertex `i` gets index `|V(h)| + i`. The result is a
/// sun with base `V(h)`.
pub fn big_sun(h: &Graph) -> Result<Graph> {
    if !is_factor_critical(h) {
        return Err(Error::invalid(
            "base",
            "a sun needs a factor-critical base",
        ));
    }
    let b = h.n();
    let mut edges = h.edges();
    for v in 0..b {
        edges.push((v, b + v));
    }
    Graph::from_edges(2 * b, &edges)
}

/// The odd cycle `C_k`, the standard factor-critical family.
pub fn odd_cycle(k: usize) -> Result<Graph> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::invalid(
            "k",
            format!("odd cycle needs an odd k >= 3, got {k}"),
        ));
    }
    make_named_graph(NamedGraph::Cycle(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{is_sun, SunKind};

    #[test]
    fn sharpness_t1_1_at_r5_n2_is_the_star() {
        let case = sharpness_graph(TheoremId::T1_1, 5, Some(2)).unwrap();
        // 4K_1 joined to K_1 is K_{1,4} with the center last
        assert_eq!(case.graph.n(), 5);
        assert_eq!(case.graph.degree(4), 4);
        assert_eq!(case.expected_delta, 1);
        let w = &case.expected_witness;
        assert_eq!(w.set.to_vec(), vec![4]);
        assert_eq!((w.deficiency, w.bound), (4, 2));
        assert!(case.violating);
        assert!(Property::SnFactor { n: 2 }.revalidate(&case.graph, w));
    }

    #[test]
    fn sharpness_t2_3_at_r3() {
        let case = sharpness_graph(TheoremId::T2_3, 3, None).unwrap();
        assert_eq!(case.graph.n(), 4);
        assert_eq!(case.expected_delta, 2);
        let w = &case.expected_witness;
        assert_eq!(w.set.to_vec(), vec![2, 3]);
        assert_eq!((w.deficiency, w.bound, w.epsilon), (2, 1, Some(3)));
        assert!(case.violating);
    }

    #[test]
    fn sharpness_t2_1_and_t2_2_degenerate_at_r3() {
        let case = sharpness_graph(TheoremId::T2_1, 3, None).unwrap();
        assert!(!case.violating);
        // P_3 with the center last: the singleton core is independent, the
        // epsilon term vanishes, and the inequality is met with equality
        let w = &case.expected_witness;
        assert_eq!((w.deficiency, w.bound, w.epsilon), (2, 2, Some(0)));

        let case = sharpness_graph(TheoremId::T2_2, 3, None).unwrap();
        assert!(!case.violating);
        let w = &case.expected_witness;
        assert_eq!((w.deficiency, w.bound, w.epsilon), (2, 2, Some(0)));

        for (theorem, r) in [(TheoremId::T2_1, 4), (TheoremId::T2_2, 4)] {
            let case = sharpness_graph(theorem, r, None).unwrap();
            assert!(case.violating, "{theorem} should violate at r = 4");
        }
    }

    #[test]
    fn sharpness_small_r_existence_cases() {
        // T1-1 at r = 3, n = 2 degenerates to 2K_1, which is still violating
        let case = sharpness_graph(TheoremId::T1_1, 3, Some(2)).unwrap();
        assert_eq!(case.graph.n(), 2);
        assert_eq!(case.graph.edge_count(), 0);
        assert!(case.violating);
        assert_eq!(case.expected_witness.set, VertexSet::EMPTY);

        // T1-2 at r = 3 is 2K_2
        let case = sharpness_graph(TheoremId::T1_2, 3, None).unwrap();
        assert_eq!((case.graph.n(), case.graph.edge_count()), (4, 2));
        assert!(case.violating);
        assert_eq!(case.expected_witness.deficiency, 2);
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            sharpness_graph(TheoremId::T1_1, 2, Some(2)),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            sharpness_graph(TheoremId::T1_1, 4, None),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            sharpness_graph(TheoremId::T1_2, 4, Some(2)),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            sharpness_graph(TheoremId::Cor1_1, 4, None),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(TheoremId::parse("t2-3").is_ok());
        assert!(TheoremId::parse("T9-9").is_err());
    }

    #[test]
    fn big_sun_examples() {
        let k2 = big_sun(&make_named_graph(NamedGraph::Complete(1)).unwrap()).unwrap();
        assert_eq!((k2.n(), k2.edge_count()), (2, 1));

        let net = big_sun(&odd_cycle(3).unwrap()).unwrap();
        assert_eq!((net.n(), net.edge_count()), (6, 6));
        let d = is_sun(&net).unwrap().unwrap();
        assert_eq!(d.kind, SunKind::BigSun);
        assert_eq!(d.base.to_vec(), vec![0, 1, 2]);

        let sun10 = big_sun(&odd_cycle(5).unwrap()).unwrap();
        assert_eq!(sun10.n(), 10);
        assert!(is_sun(&sun10).unwrap().is_some());

        assert!(big_sun(&make_named_graph(NamedGraph::Complete(2)).unwrap()).is_err());
    }

    #[test]
    fn odd_cycle_examples() {
        assert_eq!(odd_cycle(3).unwrap().edge_count(), 3);
        assert!(is_factor_critical(&odd_cycle(5).unwrap()));
        assert!(odd_cycle(4).is_err());
        assert!(odd_cycle(1).is_err());
    }

    #[test]
    fn sharpness_invariants_across_the_parameter_grid() {
        for r in 3..=8 {
            for theorem in [
                TheoremId::T1_1,
                TheoremId::T1_2,
                TheoremId::T2_1,
                TheoremId::T2_2,
                TheoremId::T2_3,
            ] {
                let n_values: Vec<Option<usize>> = if theorem.takes_n() {
                    vec![Some(2), Some(3)]
                } else {
                    vec![None]
                };
                for n in n_values {
                    let case = sharpness_graph(theorem, r, n).unwrap();
                    let bound = theorem.degree_bound(r, n).unwrap();
                    assert_eq!(
                        case.expected_delta,
                        bound - 1,
                        "{theorem} r={r} n={n:?}"
                    );
                    assert_eq!(min_degree(&case.graph).unwrap(), case.expected_delta);
                    assert!(is_k1r_free(&case.graph, r));
                    assert_eq!(case.expected_witness.deficiency, r - 1);
                    let degenerate =
                        r == 3 && matches!(theorem, TheoremId::T2_1 | TheoremId::T2_2);
                    assert_eq!(case.violating, !degenerate, "{theorem} r={r}");
                    if case.violating {
                        // covered-theorem graphs are always connected here,
                        // so the deciders accept every violating case
                        let prop = theorem.property(n).unwrap();
                        assert!(
                            prop.revalidate(&case.graph, &case.expected_witness),
                            "{theorem} r={r} n={n:?} witness must revalidate"
                        );
                        assert!(!prop.decide(&case.graph).unwrap().verdict);
                    }
                }
            }
        }
    }
}
