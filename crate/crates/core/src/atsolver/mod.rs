//! Alon-Tarsi numbers: lower bounds, the bipartite closed form, exhaustive
//! search with certificates, and the chromatic number used as a lower bound.

mod chromatic;
mod orient;
mod search;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use chromatic::{chromatic_number, is_colorable};
pub use orient::{bounded_outdegree_orientation, degeneracy_orientation};

use crate::budget::Budget;
use crate::density::max_density;
use crate::error::{Error, Result};
use crate::eulerian::{eulerian_diff, Engine, Orientation};
use crate::graph::Graph;
use search::{search_level, LevelOutcome};

/// An orientation certifying `AT(G) <= level`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtCertificate {
    pub level: usize,
    pub orientation: Orientation,
    /// Exact `diff`, when an engine computed it. Parity-only certificates
    /// (bipartite bases) carry `None`.
    pub diff: Option<BigInt>,
    pub method: Engine,
}

impl AtCertificate {
    /// Wraps `orientation` at level `max outdegree + 1`, computing `diff` when
    /// an engine fits and falling back to bipartite parity otherwise.
    pub fn certify(orientation: Orientation, budget: &Budget) -> Result<Self> {
        let level = orientation.max_outdegree() + 1;
        match eulerian_diff(&orientation, budget) {
            Ok((diff, method)) => {
                if diff.is_zero() {
                    return Err(Error::Precondition(
                        "orientation has diff 0 and certifies nothing".into(),
                    ));
                }
                Ok(AtCertificate {
                    level,
                    orientation,
                    diff: Some(diff),
                    method,
                })
            }
            Err(Error::Capacity { .. }) if orientation.graph().is_bipartite() => {
                Ok(AtCertificate {
                    level,
                    orientation,
                    diff: None,
                    method: Engine::BipartiteParity,
                })
            }
            Err(e) => Err(e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AtValue {
    Exact(usize),
    Bracket { lo: usize, hi: usize },
}

impl AtValue {
    pub fn exact(self) -> Option<usize> {
        match self {
            AtValue::Exact(v) => Some(v),
            AtValue::Bracket { .. } => None,
        }
    }

    pub fn bounds(self) -> (usize, usize) {
        match self {
            AtValue::Exact(v) => (v, v),
            AtValue::Bracket { lo, hi } => (lo, hi),
        }
    }

    /// Collapses to `Exact` when the ends meet.
    pub fn from_bounds(lo: usize, hi: usize) -> Self {
        if lo == hi {
            AtValue::Exact(lo)
        } else {
            AtValue::Bracket { lo, hi }
        }
    }
}

impl fmt::Display for AtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtValue::Exact(v) => write!(f, "{v}"),
            AtValue::Bracket { lo, hi } => write!(f, "[{lo},{hi}]"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LowerBoundReason {
    /// Some subgraph forces a vertex of outdegree `ceil(density)`.
    DensityPigeonhole,
    Chromatic,
    Subgraph,
    ExhaustiveRefutation,
}

impl fmt::Display for LowerBoundReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LowerBoundReason::DensityPigeonhole => "density-pigeonhole",
            LowerBoundReason::Chromatic => "chromatic",
            LowerBoundReason::Subgraph => "subgraph",
            LowerBoundReason::ExhaustiveRefutation => "exhaustive-refutation",
        })
    }
}

/// A level at which every orientation within the cap was checked and found to
/// have `diff = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Refutation {
    pub level: usize,
    pub orientations_checked: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtResult {
    pub value: AtValue,
    pub certificate: Option<AtCertificate>,
    pub lower_bound_reason: LowerBoundReason,
    pub refutations: Vec<Refutation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LowerBound {
    pub value: usize,
    pub reason: LowerBoundReason,
}

/// A lower bound known for some subgraph, e.g. the Alon-Tarsi number of a factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphBound {
    pub name: String,
    pub at_least: usize,
}

/// `ceil(max density) + 1`: any orientation of a densest subgraph has a vertex
/// with at least that many arcs minus one.
pub fn pigeonhole_bound(g: &Graph) -> Result<usize> {
    if g.is_empty() {
        return Ok(1);
    }
    Ok(max_density(g)?.ceiling() + 1)
}

/// The best of the pigeonhole bound, the chromatic number (skipped when over
/// budget) and any registered subgraph bounds. On ties the chromatic term is
/// reported, then the density term.
pub fn at_lower_bound(g: &Graph, known: &[SubgraphBound], budget: &Budget) -> Result<LowerBound> {
    let mut best = LowerBound {
        value: pigeonhole_bound(g)?,
        reason: LowerBoundReason::DensityPigeonhole,
    };
    match chromatic_number(g, budget) {
        Ok(chi) if chi >= best.value => {
            best = LowerBound {
                value: chi,
                reason: LowerBoundReason::Chromatic,
            }
        }
        Ok(_) | Err(Error::Capacity { .. }) => {}
        Err(e) => return Err(e),
    }
    if let Some(sub) = known.iter().map(|s| s.at_least).max() {
        if sub > best.value {
            best = LowerBound {
                value: sub,
                reason: LowerBoundReason::Subgraph,
            };
        }
    }
    Ok(best)
}

/// Closed form for bipartite graphs: `ceil(max density) + 1`, with a certificate
/// orientation meeting that cap. Every orientation of a bipartite graph is
/// Alon-Tarsi, and its `diff` is checked directly when an engine fits.
pub fn at_bipartite(g: impl Into<Arc<Graph>>, budget: &Budget) -> Result<AtResult> {
    let g: Arc<Graph> = g.into();
    if !g.is_bipartite() {
        return Err(Error::Precondition("graph is not bipartite".into()));
    }
    let cap = if g.is_empty() {
        0
    } else {
        max_density(&g)?.ceiling()
    };
    let orientation = bounded_outdegree_orientation(g.clone(), cap)
        .expect("the density ceiling is always a feasible cap");
    let mut cert = AtCertificate::certify(orientation, budget)?;
    cert.level = cap + 1;
    Ok(AtResult {
        value: AtValue::Exact(cap + 1),
        certificate: Some(cert),
        lower_bound_reason: LowerBoundReason::DensityPigeonhole,
        refutations: Vec::new(),
    })
}

/// Where [`at_exact_with`] starts its level sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartLevel {
    /// `ceil(max density) + 1`; every level from there is refuted by search.
    Pigeonhole,
    /// [`at_lower_bound`], which may skip levels the chromatic number excludes.
    LowerBound,
}

#[derive(Debug, Clone)]
pub struct ExactOptions {
    pub budget: Budget,
    /// Answer bipartite graphs with [`at_bipartite`] instead of searching.
    pub bipartite_shortcut: bool,
    pub start: StartLevel,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            budget: Budget::default(),
            bipartite_shortcut: true,
            start: StartLevel::Pigeonhole,
        }
    }
}

pub fn at_exact(g: impl Into<Arc<Graph>>, budget: &Budget) -> Result<AtResult> {
    at_exact_with(
        g,
        &ExactOptions {
            budget: budget.clone(),
            ..ExactOptions::default()
        },
    )
}

/// Smallest level with an Alon-Tarsi orientation, by exhaustive search over
/// orientations meeting each level's outdegree cap. Levels below the start are
/// excluded by the starting bound; each level searched without success is
/// recorded as a refutation. The acyclic degeneracy orientation caps the sweep.
///
/// Graphs with more than `budget.search_edges` edges get a single search at the
/// starting level; if that does not settle the value a bracket is returned.
pub fn at_exact_with(g: impl Into<Arc<Graph>>, opts: &ExactOptions) -> Result<AtResult> {
    let g: Arc<Graph> = g.into();
    let budget = &opts.budget;
    if opts.bipartite_shortcut && g.is_bipartite() {
        return at_bipartite(g, budget);
    }
    let start = match opts.start {
        StartLevel::Pigeonhole => LowerBound {
            value: pigeonhole_bound(&g)?,
            reason: LowerBoundReason::DensityPigeonhole,
        },
        StartLevel::LowerBound => at_lower_bound(&g, &[], budget)?,
    };
    let acyclic = degeneracy_orientation(g.clone());
    let hi = acyclic.max_outdegree() + 1;
    let fallback = AtCertificate::certify(acyclic, budget)?;
    let mut refutations = Vec::new();
    let wide = g.edge_count() > budget.search_edges;
    let mut level = start.value;
    while level < hi {
        match search_level(&g, level - 1, budget)? {
            LevelOutcome::Found {
                orientation,
                diff,
                engine,
                ..
            } => {
                let reason = if refutations.is_empty() {
                    start.reason
                } else {
                    LowerBoundReason::ExhaustiveRefutation
                };
                return Ok(AtResult {
                    value: AtValue::Exact(level),
                    certificate: Some(AtCertificate {
                        level,
                        orientation,
                        diff: Some(diff),
                        method: engine,
                    }),
                    lower_bound_reason: reason,
                    refutations,
                });
            }
            LevelOutcome::Exhausted { checked } => {
                refutations.push(Refutation {
                    level,
                    orientations_checked: checked,
                });
                level += 1;
                if wide {
                    break;
                }
            }
            LevelOutcome::Interrupted => break,
        }
    }
    let reason = if refutations.is_empty() {
        start.reason
    } else {
        LowerBoundReason::ExhaustiveRefutation
    };
    Ok(AtResult {
        value: AtValue::from_bounds(level.min(hi), hi),
        certificate: Some(fallback),
        lower_bound_reason: reason,
        refutations,
    })
}

/// `chi(G) = AT(G)`, returned with both numbers.
pub fn is_chromatic_at_choosable(
    g: impl Into<Arc<Graph>>,
    budget: &Budget,
) -> Result<(bool, usize, usize)> {
    let g: Arc<Graph> = g.into();
    let chi = chromatic_number(&g, budget)?;
    let at = at_exact(g, budget)?;
    let at = at.value.exact().ok_or(Error::Capacity {
        what: "Alon-Tarsi search left a bracket",
        actual: 0,
        limit: 0,
        hint: "",
    })?;
    Ok((chi == at, chi, at))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        cartesian_product, complete, corona, cycle, hypercube, path, star, tree_from_pruefer,
    };

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn lower_bound_examples() {
        let q4 = at_lower_bound(&hypercube(4).unwrap(), &[], &b()).unwrap();
        assert_eq!(
            (q4.value, q4.reason),
            (3, LowerBoundReason::DensityPigeonhole)
        );
        let c = corona(&cycle(3).unwrap(), &cycle(4).unwrap()).unwrap();
        let lb = at_lower_bound(&c, &[], &b()).unwrap();
        assert_eq!((lb.value, lb.reason), (3, LowerBoundReason::Chromatic));
        assert_eq!(
            at_lower_bound(&path(2).unwrap(), &[], &b()).unwrap().value,
            2
        );
        let hint = [SubgraphBound {
            name: "K5".into(),
            at_least: 5,
        }];
        let lb = at_lower_bound(&path(2).unwrap(), &hint, &b()).unwrap();
        assert_eq!((lb.value, lb.reason), (5, LowerBoundReason::Subgraph));
    }

    #[test]
    fn bipartite_closed_form() {
        for n in 1..=10 {
            let r = at_bipartite(hypercube(n).unwrap(), &b()).unwrap();
            assert_eq!(r.value, AtValue::Exact(n.div_ceil(2) + 1), "Q_{n}");
            let cert = r.certificate.unwrap();
            assert!(cert.orientation.max_outdegree() < cert.level);
        }
        for k in 2..=5 {
            assert_eq!(
                at_bipartite(cycle(2 * k).unwrap(), &b()).unwrap().value,
                AtValue::Exact(2)
            );
        }
        for t in [
            path(2).unwrap(),
            star(6).unwrap(),
            tree_from_pruefer(&[2, 2, 0]).unwrap(),
        ] {
            assert_eq!(at_bipartite(t, &b()).unwrap().value, AtValue::Exact(2));
        }
        assert!(matches!(
            at_bipartite(cycle(5).unwrap(), &b()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn odd_cycle_needs_three() {
        let r = at_exact(cycle(5).unwrap(), &b()).unwrap();
        assert_eq!(r.value, AtValue::Exact(3));
        assert_eq!(r.lower_bound_reason, LowerBoundReason::ExhaustiveRefutation);
        // the two cyclic orientations are the only ones with outdegree <= 1
        assert_eq!(
            r.refutations,
            vec![Refutation {
                level: 2,
                orientations_checked: 2
            }]
        );
    }

    #[test]
    fn complete_four() {
        let r = at_exact(complete(4).unwrap(), &b()).unwrap();
        assert_eq!(r.value, AtValue::Exact(4));
        assert_eq!(
            r.refutations.iter().map(|x| x.level).collect::<Vec<_>>(),
            vec![3]
        );
        let cert = r.certificate.unwrap();
        assert!(cert.orientation.max_outdegree() <= 3);
    }

    #[test]
    fn without_shortcut_bipartite_search_agrees() {
        let opts = ExactOptions {
            bipartite_shortcut: false,
            ..ExactOptions::default()
        };
        for g in [
            hypercube(3).unwrap(),
            cycle(6).unwrap(),
            complete(1).unwrap(),
        ] {
            let searched = at_exact_with(g.clone(), &opts).unwrap();
            let closed = at_bipartite(g, &b()).unwrap();
            assert_eq!(searched.value, closed.value);
        }
    }

    #[test]
    fn wide_graph_brackets_when_interrupted() {
        let tight = Budget {
            search_leaves: 0,
            ..Budget::default()
        };
        let g = cartesian_product(&cycle(3).unwrap(), &cycle(3).unwrap()).unwrap();
        let r = at_exact(g, &tight).unwrap();
        assert_eq!(r.value, AtValue::Bracket { lo: 3, hi: 5 });
        assert_eq!(r.certificate.unwrap().level, 5);
    }

    #[test]
    fn choosability_examples() {
        assert_eq!(
            is_chromatic_at_choosable(hypercube(3).unwrap(), &b()).unwrap(),
            (false, 2, 3)
        );
        assert_eq!(
            is_chromatic_at_choosable(cycle(4).unwrap(), &b()).unwrap(),
            (true, 2, 2)
        );
        assert_eq!(
            is_chromatic_at_choosable(cycle(3).unwrap(), &b()).unwrap(),
            (true, 3, 3)
        );
    }
}
