//! Orientations and the signed Eulerian subdigraph count `diff(D)`.
//!
//! Two independent engines compute `diff`: a Gray-code walk over all arc
//! subsets (small instances, also yields the even/odd split) and the capped
//! coefficient extraction in [`poly`]. Both agree exactly, including sign.

mod enumerate;
mod orientation;
mod poly;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub use orientation::Orientation;

use crate::budget::Budget;
use crate::error::{Error, Result};

/// How a `diff` value (or its nonzeroness) was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    Enumeration,
    Polynomial,
    /// Bipartite digraphs have no odd Eulerian subdigraph, so `diff >= 1`.
    BipartiteParity,
    /// Multiplied out across a one-way cut from separately computed factors.
    ProductLaw,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Enumeration => "enumeration",
            Engine::Polynomial => "polynomial",
            Engine::BipartiteParity => "bipartite-parity",
            Engine::ProductLaw => "product-law",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Engine::Enumeration,
            Engine::Polynomial,
            Engine::BipartiteParity,
            Engine::ProductLaw,
        ]
        .into_iter()
        .find(|e| e.as_str() == s)
        .ok_or_else(|| Error::input(format!("unknown engine {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianTally {
    pub even: u64,
    pub odd: u64,
    pub diff: BigInt,
}

/// Counts even and odd Eulerian subdigraphs by visiting every arc subset.
pub fn eulerian_tally_enumerate(d: &Orientation, budget: &Budget) -> Result<EulerianTally> {
    let m = d.arcs().len();
    let cap = budget.enum_cap.min(40);
    if m > cap {
        return Err(Error::Capacity {
            what: "arcs for subset enumeration",
            actual: m as u128,
            limit: cap as u128,
            hint: "; use the polynomial coefficient engine",
        });
    }
    let (even, odd) = enumerate::count_balanced_subsets(d.vertex_count(), d.arcs());
    Ok(EulerianTally {
        even,
        odd,
        diff: BigInt::from(even) - BigInt::from(odd),
    })
}

/// `diff(D)` as the coefficient of `prod x_v^{outdeg(v)}` in `prod (x_tail - x_head)`.
pub fn eulerian_diff_poly(d: &Orientation, budget: &Budget) -> Result<BigInt> {
    poly::signed_eulerian_count(d.vertex_count(), d.arcs(), budget.poly_states)
}

fn poly_cost(d: &Orientation, budget: &Budget) -> Option<u128> {
    let layout = poly::Layout::new(d.vertex_count(), d.arcs(), d.outdegrees()).ok()?;
    (layout.peak_states <= budget.poly_states).then(|| {
        layout
            .peak_states
            .saturating_mul(d.arcs().len().max(1) as u128)
    })
}

fn enum_cost(d: &Orientation, budget: &Budget) -> Option<u128> {
    let m = d.arcs().len();
    (m <= budget.enum_cap.min(40)).then(|| 1u128 << m)
}

/// `diff(D)` by whichever exact engine is cheaper for this instance.
pub fn eulerian_diff(d: &Orientation, budget: &Budget) -> Result<(BigInt, Engine)> {
    match (enum_cost(d, budget), poly_cost(d, budget)) {
        (Some(e), Some(p)) if p < e => Ok((eulerian_diff_poly(d, budget)?, Engine::Polynomial)),
        (Some(_), _) => Ok((
            eulerian_tally_enumerate(d, budget)?.diff,
            Engine::Enumeration,
        )),
        (None, Some(_)) => Ok((eulerian_diff_poly(d, budget)?, Engine::Polynomial)),
        (None, None) => Err(over_budget(d, budget)),
    }
}

/// `diff(D)` with a specific engine.
pub fn eulerian_diff_with(d: &Orientation, engine: Engine, budget: &Budget) -> Result<BigInt> {
    match engine {
        Engine::Enumeration => Ok(eulerian_tally_enumerate(d, budget)?.diff),
        Engine::Polynomial => eulerian_diff_poly(d, budget),
        other => Err(Error::input(format!(
            "{other} does not compute diff directly"
        ))),
    }
}

pub(crate) fn engine_fits(d: &Orientation, engine: Engine, budget: &Budget) -> bool {
    match engine {
        Engine::Enumeration => enum_cost(d, budget).is_some(),
        Engine::Polynomial => poly_cost(d, budget).is_some(),
        _ => false,
    }
}

fn over_budget(d: &Orientation, budget: &Budget) -> Error {
    Error::Capacity {
        what: "arcs beyond both diff engines",
        actual: d.arcs().len() as u128,
        limit: budget.enum_cap as u128,
        hint: "; coefficient engine state bound also exceeded",
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtCheck {
    pub is_at: bool,
    pub diff: BigInt,
    pub engine: Engine,
}

/// Whether `D` is Alon-Tarsi (`diff(D) != 0`). Enumeration is used up to the
/// enumeration cap, the coefficient engine beyond it.
pub fn is_at_orientation(d: &Orientation, budget: &Budget) -> Result<AtCheck> {
    let (diff, engine) = if enum_cost(d, budget).is_some() {
        (
            eulerian_tally_enumerate(d, budget)?.diff,
            Engine::Enumeration,
        )
    } else if poly_cost(d, budget).is_some() {
        (eulerian_diff_poly(d, budget)?, Engine::Polynomial)
    } else {
        return Err(over_budget(d, budget));
    };
    Ok(AtCheck {
        is_at: !diff.is_zero(),
        diff,
        engine,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutReport {
    /// Every arc between the two sides goes from the first side to the second.
    pub one_way: bool,
    pub whole: Option<BigInt>,
    pub first: Option<BigInt>,
    pub second: Option<BigInt>,
}

impl CutReport {
    /// `diff(D) = diff(D[X1]) * diff(D[X2])`, when all three were computed.
    pub fn product_law_holds(&self) -> Option<bool> {
        match (&self.whole, &self.first, &self.second) {
            (Some(w), Some(a), Some(b)) => Some(*w == a * b),
            _ => None,
        }
    }
}

/// Checks that `(first, second)` is a one-way cut of `D` and, if so, computes the
/// diff of `D` and of both induced sides.
pub fn one_way_cut_check(
    d: &Orientation,
    first: &[usize],
    second: &[usize],
    budget: &Budget,
) -> Result<CutReport> {
    let n = d.vertex_count();
    let mut side = vec![None; n];
    for (&v, s) in first
        .iter()
        .map(|v| (v, 0u8))
        .chain(second.iter().map(|v| (v, 1u8)))
    {
        if v >= n {
            return Err(Error::input(format!("vertex {v} out of range")));
        }
        if side[v].replace(s).is_some() {
            return Err(Error::input(format!(
                "vertex {v} on both sides or listed twice"
            )));
        }
    }
    if side.iter().any(Option::is_none) {
        return Err(Error::input("split does not cover every vertex"));
    }
    let one_way = d
        .arcs()
        .iter()
        .all(|&(t, h)| side[t] == side[h] || side[t] == Some(0));
    if !one_way {
        return Ok(CutReport {
            one_way,
            whole: None,
            first: None,
            second: None,
        });
    }
    Ok(CutReport {
        one_way,
        whole: Some(eulerian_diff(d, budget)?.0),
        first: Some(eulerian_diff(&d.induced(first)?, budget)?.0),
        second: Some(eulerian_diff(&d.induced(second)?, budget)?.0),
    })
}

/// `|diff|`, which is all the Alon-Tarsi property depends on.
pub fn magnitude(diff: &BigInt) -> BigInt {
    diff.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, hypercube, path, Graph};
    use std::sync::Arc;

    fn cyclic(n: usize) -> Orientation {
        let g = cycle(n).unwrap();
        let tails: Vec<usize> = (0..n).collect();
        Orientation::new(g, &tails).unwrap()
    }

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn single_arc() {
        let d = Orientation::new(path(2).unwrap(), &[0]).unwrap();
        let t = eulerian_tally_enumerate(&d, &budget()).unwrap();
        assert_eq!((t.even, t.odd, t.diff.clone()), (1, 0, BigInt::from(1)));
        assert_eq!(eulerian_diff_poly(&d, &budget()).unwrap(), BigInt::from(1));
    }

    #[test]
    fn cyclic_triangle_and_square() {
        let t3 = eulerian_tally_enumerate(&cyclic(3), &budget()).unwrap();
        assert_eq!((t3.even, t3.odd), (1, 1));
        assert!(t3.diff.is_zero());
        let t4 = eulerian_tally_enumerate(&cyclic(4), &budget()).unwrap();
        assert_eq!((t4.even, t4.odd), (2, 0));
        assert_eq!(t4.diff, BigInt::from(2));
        assert!(eulerian_diff_poly(&cyclic(3), &budget()).unwrap().is_zero());
        assert_eq!(
            eulerian_diff_poly(&cyclic(4), &budget()).unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn at_decisions() {
        assert!(!is_at_orientation(&cyclic(3), &budget()).unwrap().is_at);
        let c4 = is_at_orientation(&cyclic(4), &budget()).unwrap();
        assert!(c4.is_at);
        assert_eq!(c4.engine, Engine::Enumeration);
        let q3 = Arc::new(hypercube(3).unwrap());
        for mask in [0u32, 0xfff, 0x5a5, 0x3c3] {
            let fwd: Vec<bool> = (0..12).map(|i| mask >> i & 1 == 1).collect();
            let d = Orientation::from_forward(q3.clone(), &fwd).unwrap();
            assert!(is_at_orientation(&d, &budget()).unwrap().is_at);
        }
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        let q3 = hypercube(5).unwrap();
        let fwd = vec![true; q3.edge_count()];
        let d = Orientation::from_forward(q3, &fwd).unwrap();
        assert!(matches!(
            eulerian_tally_enumerate(&d, &budget()),
            Err(Error::Capacity { .. })
        ));
        let tight = Budget {
            poly_states: 2,
            ..Budget::default()
        };
        assert!(matches!(
            is_at_orientation(&d, &tight),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn polynomial_engine_beyond_enumeration_cap() {
        // Acyclic orientations have only the empty Eulerian subdigraph.
        let q4 = hypercube(4).unwrap();
        let fwd = vec![true; q4.edge_count()];
        let d = Orientation::from_forward(q4, &fwd).unwrap();
        let check = is_at_orientation(&d, &budget()).unwrap();
        assert_eq!(check.engine, Engine::Polynomial);
        assert_eq!(check.diff, BigInt::from(1));
    }

    #[test]
    fn one_way_cut_examples() {
        let two_arcs =
            Orientation::new(Graph::from_edges(4, vec![(0, 1), (2, 3)]).unwrap(), &[0, 2]).unwrap();
        let r = one_way_cut_check(&two_arcs, &[0, 1], &[2, 3], &budget()).unwrap();
        assert!(r.one_way);
        assert_eq!(r.product_law_holds(), Some(true));
        assert_eq!(r.whole, Some(BigInt::from(1)));

        // cyclic C4 on 0..4 plus arc 0 -> 4
        let g = Graph::from_edges(5, vec![(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)]).unwrap();
        let d = Orientation::new(g, &[0, 1, 2, 3, 0]).unwrap();
        let r = one_way_cut_check(&d, &[0, 1, 2, 3], &[4], &budget()).unwrap();
        assert_eq!(
            (r.whole.clone(), r.first.clone(), r.second.clone()),
            (
                Some(BigInt::from(2)),
                Some(BigInt::from(2)),
                Some(BigInt::from(1))
            )
        );
        assert_eq!(r.product_law_holds(), Some(true));

        let back = one_way_cut_check(&d, &[4], &[0, 1, 2, 3], &budget()).unwrap();
        assert!(!back.one_way);
        assert_eq!(back.product_law_holds(), None);
    }

    #[test]
    fn bad_splits_rejected() {
        let d = cyclic(4);
        assert!(one_way_cut_check(&d, &[0, 1], &[2], &budget()).is_err());
        assert!(one_way_cut_check(&d, &[0, 1, 2], &[2, 3], &budget()).is_err());
        assert!(one_way_cut_check(&d, &[0, 1, 9], &[2, 3], &budget()).is_err());
    }

    #[test]
    fn engine_names_round_trip() {
        for e in [
            Engine::Enumeration,
            Engine::Polynomial,
            Engine::BipartiteParity,
            Engine::ProductLaw,
        ] {
            assert_eq!(e.as_str().parse::<Engine>().unwrap(), e);
        }
    }
}
