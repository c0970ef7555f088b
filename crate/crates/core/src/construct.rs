//! Orientations of Cartesian products and coronas assembled from orientations
//! of the factors, and certificate verification.
//!
//! Product rules: `R1` orients every copy of the first factor as `D1`; `R2`
//! orients the edges between copies as `D2` orients the corresponding edge of
//! the second factor. Corona rules: `R1` orients the hub graph as `D1`, `R2`
//! orients each pendant copy as `D2`, `R3` points every link from the copy to
//! its hub vertex.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::eulerian::{engine_fits, eulerian_diff, eulerian_diff_with, Engine, Orientation};
use crate::graph::product::{cartesian_product_with_origin, corona_with_origin, EdgeOrigin};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    R1,
    R2,
    R3,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecipeKind {
    Product,
    Corona,
}

/// Which rule oriented a composite edge, and what it inherited: for `R1`/`R2`
/// the arc index in the factor orientation, for `R3` the pendant vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleUse {
    pub rule: Rule,
    pub copy: usize,
    pub source: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionRecipe {
    pub kind: RecipeKind,
    pub first: Orientation,
    pub second: Orientation,
    /// One entry per composite edge, in composite edge order.
    pub rules: Vec<RuleUse>,
}

fn check_factor(g: &Graph, d: &Orientation, which: &str) -> Result<()> {
    if d.graph() != g {
        return Err(Error::input(format!(
            "{which} orientation does not orient the {which} graph"
        )));
    }
    Ok(())
}

fn assemble(
    kind: RecipeKind,
    composite: Graph,
    origin: Vec<EdgeOrigin>,
    d1: &Orientation,
    d2: &Orientation,
    hubs: usize,
    copy_size: usize,
) -> (Orientation, ConstructionRecipe) {
    let leaf = |i: usize, j: usize| hubs + i * copy_size + j;
    let n2 = d2.vertex_count();
    let product_idx = |u: usize, v: usize| u * n2 + v;
    let mut arcs = Vec::with_capacity(origin.len());
    let mut rules = Vec::with_capacity(origin.len());
    for o in origin {
        let (arc, used) = match o {
            EdgeOrigin::First { copy, edge } => {
                let (t, h) = d1.arcs()[edge];
                let r = RuleUse {
                    rule: Rule::R1,
                    copy,
                    source: edge,
                };
                ((product_idx(t, copy), product_idx(h, copy)), r)
            }
            EdgeOrigin::Second { at, edge } => {
                let (t, h) = d2.arcs()[edge];
                let r = RuleUse {
                    rule: Rule::R2,
                    copy: at,
                    source: edge,
                };
                ((product_idx(at, t), product_idx(at, h)), r)
            }
            EdgeOrigin::Hub { edge } => {
                let r = RuleUse {
                    rule: Rule::R1,
                    copy: 0,
                    source: edge,
                };
                (d1.arcs()[edge], r)
            }
            EdgeOrigin::Leaf { copy, edge } => {
                let (t, h) = d2.arcs()[edge];
                let r = RuleUse {
                    rule: Rule::R2,
                    copy,
                    source: edge,
                };
                ((leaf(copy, t), leaf(copy, h)), r)
            }
            EdgeOrigin::Link { copy, vertex } => {
                let r = RuleUse {
                    rule: Rule::R3,
                    copy,
                    source: vertex,
                };
                ((leaf(copy, vertex), copy), r)
            }
        };
        arcs.push(arc);
        rules.push(used);
    }
    let orientation = Orientation::from_checked_arcs(Arc::new(composite), arcs);
    let recipe = ConstructionRecipe {
        kind,
        first: d1.clone(),
        second: d2.clone(),
        rules,
    };
    (orientation, recipe)
}

/// Orientation of `G1 □ G2`; the outdegree of `(u, v)` is `d1(u) + d2(v)`.
pub fn product_orientation(
    g1: &Graph,
    d1: &Orientation,
    g2: &Graph,
    d2: &Orientation,
) -> Result<(Orientation, ConstructionRecipe)> {
    check_factor(g1, d1, "first")?;
    check_factor(g2, d2, "second")?;
    let (composite, origin) = cartesian_product_with_origin(g1, g2)?;
    Ok(assemble(
        RecipeKind::Product,
        composite,
        origin,
        d1,
        d2,
        0,
        0,
    ))
}

/// Orientation of `G1 ∘ G2`; hub `i` keeps outdegree `d1(i)` and pendant
/// vertex `(i, j)` gets `d2(j) + 1`. The pendant copies and the hub graph form
/// a one-way cut, so `diff = diff(D1) * diff(D2)^|V(G1)|`.
pub fn corona_orientation(
    g1: &Graph,
    d1: &Orientation,
    g2: &Graph,
    d2: &Orientation,
) -> Result<(Orientation, ConstructionRecipe)> {
    check_factor(g1, d1, "first")?;
    check_factor(g2, d2, "second")?;
    let (composite, origin) = corona_with_origin(g1, g2)?;
    let (m, k) = (g1.vertex_count(), g2.vertex_count());
    Ok(assemble(
        RecipeKind::Corona,
        composite,
        origin,
        d1,
        d2,
        m,
        k,
    ))
}

/// `(pendant vertices, hub vertices)` of a corona with `m` hubs and pendant
/// copies of size `k`: every link arc of [`corona_orientation`] crosses from the
/// first set to the second.
pub fn corona_cut(m: usize, k: usize) -> (Vec<usize>, Vec<usize>) {
    ((m..m + m * k).collect(), (0..m).collect())
}

/// `diff` implied for a corona orientation by its factors, or `None` when a
/// factor is beyond every engine. A bipartite factor beyond the engines only
/// contributes its sign-free nonzeroness, reported as `Ok(None)` magnitude with
/// `nonzero = true`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LawValue {
    Exact(BigInt),
    NonzeroByParity,
}

pub fn corona_product_law(
    recipe: &ConstructionRecipe,
    budget: &Budget,
) -> Result<Option<LawValue>> {
    if recipe.kind != RecipeKind::Corona {
        return Err(Error::input("the product law applies to corona recipes"));
    }
    let factor = |d: &Orientation| -> Result<Option<LawValue>> {
        match eulerian_diff(d, budget) {
            Ok((diff, _)) => Ok(Some(LawValue::Exact(diff))),
            Err(Error::Capacity { .. }) if d.graph().is_bipartite() => {
                Ok(Some(LawValue::NonzeroByParity))
            }
            Err(Error::Capacity { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let (Some(hub), Some(leaf)) = (factor(&recipe.first)?, factor(&recipe.second)?) else {
        return Ok(None);
    };
    let copies = recipe.first.vertex_count() as u32;
    Ok(Some(match (hub, leaf) {
        (LawValue::Exact(a), LawValue::Exact(b)) => LawValue::Exact(a * b.pow(copies)),
        (LawValue::Exact(a), _) if a.is_zero() => LawValue::Exact(a),
        (_, LawValue::Exact(b)) if b.is_zero() && copies > 0 => LawValue::Exact(b),
        _ => LawValue::NonzeroByParity,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Outdegrees fit and `diff != 0` was established by `engine`.
    Accepted {
        engine: Engine,
        diff: Option<BigInt>,
    },
    /// Outdegrees fit; no engine could evaluate `diff` within budget.
    OutdegreeCheckedOnly,
    Rejected(Rejection),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rejection {
    Outdegree {
        vertex: usize,
        outdegree: usize,
        level: usize,
    },
    DiffZero {
        engine: Engine,
    },
    ProductLawMismatch {
        direct: BigInt,
        law: BigInt,
    },
    RecipeMismatch,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Outdegree {
                vertex,
                outdegree,
                level,
            } => write!(
                f,
                "vertex {vertex} has outdegree {outdegree}, level {level} allows {}",
                level.saturating_sub(1)
            ),
            Rejection::DiffZero { engine } => write!(f, "diff = 0 ({engine})"),
            Rejection::ProductLawMismatch { direct, law } => {
                write!(f, "direct diff {direct} but product law gives {law}")
            }
            Rejection::RecipeMismatch => f.write_str("orientation does not match its recipe"),
        }
    }
}

/// Checks that `d` certifies `AT <= level`: every outdegree is below `level` and
/// `diff(D) != 0`. The diff is recomputed with an engine other than `recorded`
/// when both fit. Corona recipes are rebuilt from their factors and the product
/// law is compared against the direct value.
pub fn verify_certificate(
    d: &Orientation,
    level: usize,
    recorded: Option<Engine>,
    recipe: Option<&ConstructionRecipe>,
    budget: &Budget,
) -> Result<Verdict> {
    if let Some((vertex, &outdegree)) = d
        .outdegrees()
        .iter()
        .enumerate()
        .find(|&(_, &o)| o + 1 > level)
    {
        return Ok(Verdict::Rejected(Rejection::Outdegree {
            vertex,
            outdegree,
            level,
        }));
    }
    let fitting: Vec<Engine> = [Engine::Enumeration, Engine::Polynomial]
        .into_iter()
        .filter(|&e| engine_fits(d, e, budget))
        .collect();
    let engine = fitting
        .iter()
        .copied()
        .find(|&e| Some(e) != recorded)
        .or_else(|| fitting.first().copied());
    let direct = match engine {
        Some(e) => {
            let diff = eulerian_diff_with(d, e, budget)?;
            if diff.is_zero() {
                return Ok(Verdict::Rejected(Rejection::DiffZero { engine: e }));
            }
            Some((e, diff))
        }
        None => None,
    };

    if let Some(recipe) = recipe {
        let rebuilt = match recipe.kind {
            RecipeKind::Product => product_orientation(
                recipe.first.graph(),
                &recipe.first,
                recipe.second.graph(),
                &recipe.second,
            ),
            RecipeKind::Corona => corona_orientation(
                recipe.first.graph(),
                &recipe.first,
                recipe.second.graph(),
                &recipe.second,
            ),
        }?;
        if rebuilt.0.arcs() != d.arcs() || rebuilt.0.graph() != d.graph() {
            return Ok(Verdict::Rejected(Rejection::RecipeMismatch));
        }
        if recipe.kind == RecipeKind::Corona {
            let law = corona_product_law(recipe, budget)?;
            match (&direct, law) {
                (Some((_, direct)), Some(LawValue::Exact(law))) if *direct != law => {
                    return Ok(Verdict::Rejected(Rejection::ProductLawMismatch {
                        direct: direct.clone(),
                        law,
                    }));
                }
                (None, Some(LawValue::Exact(law))) => {
                    return Ok(if law.is_zero() {
                        Verdict::Rejected(Rejection::DiffZero {
                            engine: Engine::ProductLaw,
                        })
                    } else {
                        Verdict::Accepted {
                            engine: Engine::ProductLaw,
                            diff: Some(law),
                        }
                    });
                }
                (None, Some(LawValue::NonzeroByParity)) => {
                    return Ok(Verdict::Accepted {
                        engine: Engine::ProductLaw,
                        diff: None,
                    });
                }
                _ => {}
            }
        }
    }

    Ok(match direct {
        Some((engine, diff)) => Verdict::Accepted {
            engine,
            diff: Some(diff),
        },
        None if d.graph().is_bipartite() => Verdict::Accepted {
            engine: Engine::BipartiteParity,
            diff: None,
        },
        None => Verdict::OutdegreeCheckedOnly,
    })
}

/// `|diff|` of a verdict, when known.
pub fn verdict_magnitude(v: &Verdict) -> Option<BigInt> {
    match v {
        Verdict::Accepted { diff: Some(d), .. } => Some(d.abs()),
        _ => None,
    }
}
