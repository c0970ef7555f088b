//! Checkers for closed-form Alon-Tarsi and chromatic values of hypercubes,
//! their Cartesian products with trees and even cycles, toroidal grids and
//! coronas.
//!
//! Every checker evaluates the closed form for its instance, computes the
//! value independently with the solvers, and reports both with the bounds that
//! settled the computed value. A computed value that is only bracketed yields
//! an inconclusive report, never a failure.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atsolver::{
    at_bipartite, at_exact_with, at_lower_bound, chromatic_number, degeneracy_orientation, AtValue,
    ExactOptions, LowerBoundReason, StartLevel, SubgraphBound,
};
use crate::budget::Budget;
use crate::construct::{corona_orientation, product_orientation, verify_certificate, Verdict};
use crate::error::{Error, Result};
use crate::eulerian::Orientation;
use crate::graph::{
    broom, cartesian_product, complete, complete_bipartite, corona, cycle, hypercube, path, star,
    tree_from_pruefer, Graph,
};

/// Bipartite instances up to this many edges are also solved by exhaustive
/// search as a cross-check of the closed form.
pub const CROSS_CHECK_EDGES: usize = 14;

/// A graph with a short display name such as `Q3`, `C5` or `K3,3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub graph: Graph,
}

impl Instance {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        Instance {
            name: name.into(),
            graph,
        }
    }

    pub fn hypercube(n: usize) -> Result<Self> {
        Ok(Self::new(format!("Q{n}"), hypercube(n)?))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        Ok(Self::new(format!("C{n}"), cycle(n)?))
    }

    pub fn path(n: usize) -> Result<Self> {
        Ok(Self::new(format!("P{n}"), path(n)?))
    }

    pub fn star(n: usize) -> Result<Self> {
        Ok(Self::new(format!("S{n}"), star(n)?))
    }

    pub fn complete(n: usize) -> Result<Self> {
        Ok(Self::new(format!("K{n}"), complete(n)?))
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        Ok(Self::new(format!("K{a},{b}"), complete_bipartite(a, b)?))
    }

    pub fn broom(n: usize, bristles: usize) -> Result<Self> {
        Ok(Self::new(format!("B{n},{bristles}"), broom(n, bristles)?))
    }

    pub fn pruefer(sequence: &[usize]) -> Result<Self> {
        let body: Vec<String> = sequence.iter().map(|s| s.to_string()).collect();
        Ok(Self::new(
            format!("T[{}]", body.join(",")),
            tree_from_pruefer(sequence)?,
        ))
    }
}

/// Trees on `m` vertices for every `m` in `sizes`: the path, the star, every
/// broom, and `random_per_size` seeded Prüfer trees (for `m >= 4`), without
/// duplicate names.
pub fn tree_catalog(
    sizes: RangeInclusive<usize>,
    random_per_size: usize,
    seed: u64,
) -> Result<Vec<Instance>> {
    let mut out: Vec<Instance> = Vec::new();
    let mut push = |inst: Instance| {
        if !out.iter().any(|t| t.name == inst.name) {
            out.push(inst);
        }
    };
    for m in sizes {
        if m < 2 {
            return Err(Error::input(format!(
                "trees need at least 2 vertices, got {m}"
            )));
        }
        push(Instance::path(m)?);
        if m >= 4 {
            push(Instance::star(m)?);
            for bristles in 2..m - 1 {
                push(Instance::broom(m, bristles)?);
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (m as u64));
            for _ in 0..random_per_size {
                let seq: Vec<usize> = (0..m - 2).map(|_| rng.gen_range(0..m)).collect();
                push(Instance::pruefer(&seq)?);
            }
        }
    }
    Ok(out)
}

/// `count` seeded pairs of Erdős–Rényi graphs with 1 to `max_vertices`
/// vertices each and edge probability one half.
pub fn random_graph_pairs(
    count: usize,
    max_vertices: usize,
    seed: u64,
) -> Result<Vec<(Instance, Instance)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut one = |tag: String| -> Result<Instance> {
        let n = rng.gen_range(1..=max_vertices);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.5) {
                    edges.push((i, j));
                }
            }
        }
        Ok(Instance::new(tag, Graph::from_edges(n, edges)?))
    };
    (0..count)
        .map(|i| Ok((one(format!("R{i}a"))?, one(format!("R{i}b"))?)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    /// `AT = ceil(d/2) + 1` for d-regular bipartite graphs.
    RegularBipartite,
    /// `AT(Q_n) = ceil(n/2) + 1`.
    Hypercube,
    /// `AT(Q_n □ T_m)`: `ceil(n/2) + 1` when n is odd and m = 2, else `ceil(n/2) + 2`.
    CubeTree,
    /// `AT(Q_n □ C_2k) = ceil(n/2) + 2`.
    CubeEvenCycle,
    /// `chi(G1 ∘ G2)` is `chi(G1)` when `chi(G2) < chi(G1)`, else `chi(G2) + 1`.
    CoronaChromatic,
    /// `AT(G1 ∘ G2)` is `AT(G1)` when `AT(G2) < AT(G1)`, else `AT(G2)` or `AT(G2) + 1`.
    CoronaBracket,
    /// `chi = AT = AT(G2) + 1` for `G1 ∘ G2` when `AT(G2) >= AT(G1)` and
    /// `chi(G2) = AT(G2)`.
    CoronaChoosable,
    /// `AT(Q_n ∘ G2)` for `AT(G2) = 2`: 3 when n <= 2, else `ceil(n/2) + 1`.
    CubeCorona,
    /// `AT(Q_n ∘ C_2k)`: 3 when n <= 2, else `ceil(n/2) + 1`.
    CubeCoronaEvenCycle,
    /// `AT(Q_n ∘ C_2k+1)`: 4 when n <= 4, else `ceil(n/2) + 1`.
    CubeCoronaOddCycle,
    /// `AT(C_m □ C_n)`: 4 when both are odd, else 3.
    Toroidal,
    /// `chi(G □ H) = max(chi(G), chi(H))`.
    ChiProduct,
    /// `chi < AT` for hypercubes, their tree and even-cycle products, and
    /// hypercube coronas.
    NotChoosable,
}

impl Claim {
    pub const ALL: [Claim; 13] = [
        Claim::RegularBipartite,
        Claim::Hypercube,
        Claim::CubeTree,
        Claim::CubeEvenCycle,
        Claim::CoronaChromatic,
        Claim::CoronaBracket,
        Claim::CoronaChoosable,
        Claim::CubeCorona,
        Claim::CubeCoronaEvenCycle,
        Claim::CubeCoronaOddCycle,
        Claim::Toroidal,
        Claim::ChiProduct,
        Claim::NotChoosable,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::RegularBipartite => "regular-bipartite",
            Claim::Hypercube => "hypercube",
            Claim::CubeTree => "cube-tree",
            Claim::CubeEvenCycle => "cube-even-cycle",
            Claim::CoronaChromatic => "corona-chromatic",
            Claim::CoronaBracket => "corona-bracket",
            Claim::CoronaChoosable => "corona-choosable",
            Claim::CubeCorona => "cube-corona",
            Claim::CubeCoronaEvenCycle => "cube-corona-even-cycle",
            Claim::CubeCoronaOddCycle => "cube-corona-odd-cycle",
            Claim::Toroidal => "toroidal",
            Claim::ChiProduct => "chi-product",
            Claim::NotChoosable => "not-choosable",
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL.into_iter().find(|c| c.id() == s).ok_or_else(|| {
            let ids: Vec<&str> = Claim::ALL.iter().map(|c| c.id()).collect();
            Error::input(format!(
                "unknown claim {s:?}; expected one of {}",
                ids.join(", ")
            ))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Prediction {
    Exact(usize),
    /// Any of these values.
    OneOf(Vec<usize>),
    /// Strictly greater than this value.
    Exceeds(usize),
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Prediction::Exact(v) => write!(f, "{v}"),
            Prediction::OneOf(vs) => {
                let body: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
                write!(f, "{{{}}}", body.join(","))
            }
            Prediction::Exceeds(v) => write!(f, ">{v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Inconclusive => "inconclusive",
        })
    }
}

/// Compares a prediction with a computed value or bracket. A bracket passes
/// only if every value in it satisfies the prediction and fails only if none
/// does.
pub fn judge(predicted: &Prediction, computed: AtValue) -> Outcome {
    let (lo, hi) = computed.bounds();
    let ok = |v: usize| match predicted {
        Prediction::Exact(p) => v == *p,
        Prediction::OneOf(ps) => ps.contains(&v),
        Prediction::Exceeds(p) => v > *p,
    };
    let hits = (lo..=hi).filter(|&v| ok(v)).count();
    if hits == hi - lo + 1 {
        Outcome::Pass
    } else if hits == 0 {
        Outcome::Fail
    } else {
        Outcome::Inconclusive
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    AlonTarsi,
    Chromatic,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::AlonTarsi => "AT",
            Quantity::Chromatic => "chi",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bound {
    pub value: usize,
    pub source: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub lower: Option<Bound>,
    pub upper: Option<Bound>,
    /// `(level, orientations checked)` for every level refuted by search.
    pub refutations: Vec<(usize, u64)>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim: Claim,
    pub instance: String,
    pub quantity: Quantity,
    pub predicted: Prediction,
    pub computed: AtValue,
    pub outcome: Outcome,
    pub evidence: Evidence,
    pub millis: u64,
}

impl ClaimReport {
    /// Equality of everything except the timing.
    pub fn same_result(&self, other: &ClaimReport) -> bool {
        self.claim == other.claim
            && self.instance == other.instance
            && self.quantity == other.quantity
            && self.predicted == other.predicted
            && self.computed == other.computed
            && self.outcome == other.outcome
            && self.evidence == other.evidence
    }
}

fn ceil_half(n: usize) -> usize {
    n.div_ceil(2)
}

pub fn predict_hypercube(n: usize) -> usize {
    ceil_half(n) + 1
}

pub fn predict_regular_bipartite(d: usize) -> usize {
    ceil_half(d) + 1
}

pub fn predict_cube_tree(n: usize, m: usize) -> usize {
    if n % 2 == 1 && m == 2 {
        ceil_half(n) + 1
    } else {
        ceil_half(n) + 2
    }
}

pub fn predict_cube_even_cycle(n: usize) -> usize {
    ceil_half(n) + 2
}

pub fn predict_corona_chromatic(chi1: usize, chi2: usize) -> usize {
    if chi2 < chi1 {
        chi1
    } else {
        chi2 + 1
    }
}

pub fn predict_corona_bracket(at1: usize, at2: usize) -> Prediction {
    if at2 < at1 {
        Prediction::Exact(at1)
    } else {
        Prediction::OneOf(vec![at2, at2 + 1])
    }
}

pub fn predict_cube_corona(n: usize) -> usize {
    if n <= 2 {
        3
    } else {
        ceil_half(n) + 1
    }
}

pub fn predict_cube_corona_odd_cycle(n: usize) -> usize {
    if n <= 4 {
        4
    } else {
        ceil_half(n) + 1
    }
}

pub fn predict_toroidal(m: usize, n: usize) -> usize {
    if m % 2 == 1 && n % 2 == 1 {
        4
    } else {
        3
    }
}

/// A computed Alon-Tarsi value with the bounds behind it and an orientation
/// attaining the upper bound.
#[derive(Debug, Clone)]
struct Settled {
    value: AtValue,
    lower: Bound,
    upper: Bound,
    refutations: Vec<(usize, u64)>,
    certificate: Orientation,
}

impl Settled {
    fn exact(&self, name: &str) -> Result<usize> {
        self.value.exact().ok_or_else(|| {
            Error::Precondition(format!("AT({name}) is only bracketed: {}", self.value))
        })
    }

    fn evidence(&self, notes: Vec<String>) -> Evidence {
        Evidence {
            lower: Some(self.lower.clone()),
            upper: Some(self.upper.clone()),
            refutations: self.refutations.clone(),
            notes,
        }
    }
}

/// Bipartite graphs use the closed form. Otherwise the lower bound (density,
/// chromatic number, `known` subgraphs) is compared with the best of the
/// acyclic orientation and `construction`; if they differ, exhaustive search
/// narrows the gap.
fn settle(
    g: Arc<Graph>,
    known: &[SubgraphBound],
    construction: Option<(Orientation, &str)>,
    budget: &Budget,
) -> Result<Settled> {
    if g.is_bipartite() {
        let r = at_bipartite(g, budget)?;
        let cert = r.certificate.expect("closed form carries a certificate");
        return Ok(Settled {
            value: r.value,
            lower: Bound {
                value: cert.level,
                source: LowerBoundReason::DensityPigeonhole.to_string(),
            },
            upper: Bound {
                value: cert.level,
                source: format!("bipartite orientation ({})", cert.method),
            },
            refutations: Vec::new(),
            certificate: cert.orientation,
        });
    }
    let lb = at_lower_bound(&g, known, budget)?;
    let lower_source = match lb.reason {
        LowerBoundReason::Subgraph => {
            let best = known
                .iter()
                .max_by_key(|s| s.at_least)
                .expect("subgraph reason implies a registered bound");
            format!("subgraph {}", best.name)
        }
        reason => reason.to_string(),
    };
    let mut lower = Bound {
        value: lb.value,
        source: lower_source,
    };
    let mut certificate = degeneracy_orientation(g.clone());
    let mut upper = Bound {
        value: certificate.max_outdegree() + 1,
        source: "acyclic orientation".into(),
    };
    if let Some((o, source)) = construction {
        if o.max_outdegree() < upper.value {
            upper = Bound {
                value: o.max_outdegree() + 1,
                source: source.into(),
            };
            certificate = o;
        }
    }
    if lower.value > upper.value {
        return Err(Error::Precondition(format!(
            "lower bound {} ({}) exceeds certificate level {} ({})",
            lower.value, lower.source, upper.value, upper.source
        )));
    }
    let mut refutations = Vec::new();
    if lower.value < upper.value {
        let r = at_exact_with(
            g,
            &ExactOptions {
                budget: budget.clone(),
                bipartite_shortcut: false,
                start: StartLevel::LowerBound,
            },
        )?;
        let (lo, hi) = r.value.bounds();
        refutations = r
            .refutations
            .iter()
            .map(|x| (x.level, x.orientations_checked))
            .collect();
        if lo > lower.value {
            lower = Bound {
                value: lo,
                source: LowerBoundReason::ExhaustiveRefutation.to_string(),
            };
        }
        if hi < upper.value {
            let cert = r.certificate.expect("search always returns a certificate");
            upper = Bound {
                value: hi,
                source: format!("search ({})", cert.method),
            };
            certificate = cert.orientation;
        }
    }
    Ok(Settled {
        value: AtValue::from_bounds(lower.value, upper.value),
        lower,
        upper,
        refutations,
        certificate,
    })
}

fn settle_instance(inst: &Instance, budget: &Budget) -> Result<Settled> {
    settle(Arc::new(inst.graph.clone()), &[], None, budget)
}

/// Exhaustive search on a bipartite graph, bypassing the closed form. Returns
/// a note, and whether the search agreed with `expected`.
fn cross_check(g: &Graph, expected: usize, budget: &Budget) -> Result<(bool, String)> {
    let r = at_exact_with(
        g.clone(),
        &ExactOptions {
            budget: budget.clone(),
            bipartite_shortcut: false,
            start: StartLevel::Pigeonhole,
        },
    )?;
    let agrees = r.value == AtValue::Exact(expected);
    Ok((agrees, format!("exhaustive search gives {}", r.value)))
}

struct Report {
    claim: Claim,
    instance: String,
    quantity: Quantity,
    predicted: Prediction,
    computed: AtValue,
    evidence: Evidence,
    /// Forces a failure on top of the prediction comparison.
    failed: bool,
}

impl Report {
    fn finish(self, started: Instant) -> ClaimReport {
        let mut outcome = judge(&self.predicted, self.computed);
        if self.failed {
            outcome = Outcome::Fail;
        }
        ClaimReport {
            claim: self.claim,
            instance: self.instance,
            quantity: self.quantity,
            predicted: self.predicted,
            computed: self.computed,
            outcome,
            evidence: self.evidence,
            millis: started.elapsed().as_millis() as u64,
        }
    }
}

/// Alon-Tarsi value of a bipartite instance with an optional search
/// cross-check.
fn bipartite_report(
    claim: Claim,
    inst: &Instance,
    predicted: usize,
    mut notes: Vec<String>,
    budget: &Budget,
    started: Instant,
) -> Result<ClaimReport> {
    let s = settle_instance(inst, budget)?;
    let mut failed = false;
    if inst.graph.edge_count() <= CROSS_CHECK_EDGES {
        if let Some(v) = s.value.exact() {
            let (agrees, note) = cross_check(&inst.graph, v, budget)?;
            failed |= !agrees;
            notes.push(note);
        }
    }
    Ok(Report {
        claim,
        instance: inst.name.clone(),
        quantity: Quantity::AlonTarsi,
        predicted: Prediction::Exact(predicted),
        computed: s.value,
        evidence: s.evidence(notes),
        failed,
    }
    .finish(started))
}

pub fn check_regular_bipartite(inst: &Instance, budget: &Budget) -> Result<ClaimReport> {
    let started = Instant::now();
    let d = inst
        .graph
        .regular_degree()
        .ok_or_else(|| Error::input(format!("{} is not regular", inst.name)))?;
    if !inst.graph.is_bipartite() {
        return Err(Error::input(format!("{} is not bipartite", inst.name)));
    }
    bipartite_report(
        Claim::RegularBipartite,
        inst,
        predict_regular_bipartite(d),
        vec![format!("{d}-regular")],
        budget,
        started,
    )
}

pub fn check_hypercube(n: usize, budget: &Budget) -> Result<ClaimReport> {
    let started = Instant::now();
    let inst = Instance::hypercube(n)?;
    bipartite_report(
        Claim::Hypercube,
        &inst,
        predict_hypercube(n),
        Vec::new(),
        budget,
        started,
    )
}

/// Notes the level reached by the product construction from factor
/// certificates; it is an upper bound only and may exceed the true value.
fn product_construction_note(
    g1: &Instance,
    s1: &Settled,
    g2: &Instance,
    s2: &Settled,
    budget: &Budget,
) -> Result<String> {
    let (o, recipe) = product_orientation(&g1.graph, &s1.certificate, &g2.graph, &s2.certificate)?;
    let level = o.max_outdegree() + 1;
    let verdict = verify_certificate(&o, level, None, Some(&recipe), budget)?;
    Ok(match verdict {
        Verdict::Accepted { engine, .. } => {
            format!("product construction certifies level {level} ({engine})")
        }
        other => format!("product construction at level {level} not accepted: {other:?}"),
    })
}

pub fn check_cube_tree(n: usize, tree: &Instance, budget: &Budget) -> Result<ClaimReport> {
    let started = Instant::now();
    let m = tree.graph.vertex_count();
    if !tree.graph.is_tree() || m < 2 {
        return Err(Error::input(format!(
            "{} is not a tree on at least 2 vertices",
            tree.name
        )));
    }
    let q = Instance::hypercube(n)?;
    let product = Instance::new(
        format!("{}□{}", q.name, tree.name),
        cartesian_product(&q.graph, &tree.graph)?,
    );
    let sq = settle_instance(&q, budget)?;
    let st = settle_instance(tree, budget)?;
    let mut notes = vec![product_construction_note(&q, &sq, tree, &st, budget)?];
    if n % 2 == 1 && m == 2 {
        let next = settle_instance(&Instance::hypercube(n + 1)?, budget)?;
        notes.push(format!("AT(Q{}) = {}", n + 1, next.value));
    }
    bipartite_report(
        Claim::CubeTree,
        &product,
        predict_cube_tree(n, m),
        notes,
        budget,
        started,
    )
}

pub fn check_cube_even_cycle(n: usize, k: usize, budget: &Budget) -> Result<ClaimReport> {
    let started = Instant::now();
    if k < 2 {
        return Err(Error::input("even cycle needs k >= 2"));
    }
    let q = Instance::hypercube(n)?;
    let c = Instance::cycle(2 * k)?;
    let product = Instance::new(
        format!("{}□{}", q.name, c.name),
        cartesian_product(&q.graph, &c.graph)?,
    );
    let sq = settle_instance(&q, budget)?;
    let sc = settle_instance(&c, budget)?;
    let notes = vec![product_construction_note(&q, &sq, &c, &sc, budget)?];
    bipartite_report(
        Claim::CubeEvenCycle,
        &product,
        predict_cube_even_cycle(n),
        notes,
        budget,
        started,
    )
}

fn corona_name(g1: &Instance, g2: &Instance) -> String {
    format!("{}∘{}", g1.name, g2.name)
}

pub fn check_corona_chromatic(
    g1: &Instance,
    g2: &Instance,
    budget: &Budget,
) -> Result<ClaimReport> {
    let started = Instant::now();
    if g1.graph.is_empty() || g2.graph.is_empty() {
        return Err(Error::input("corona factors need at least one vertex"));
    }
    let chi1 = chromatic_number(&g1.graph, budget)?;
    let chi2 = chromatic_number(&g2.graph, budget)?;
    let chi = chromatic_number(&corona(&g1.graph, &g2.graph)?, budget)?;
    Ok(Report {
        claim: Claim::CoronaChromatic,
        instance: corona_name(g1, g2),
        quantity: Quantity::Chromatic,
        predicted: Prediction::Exact(predict_corona_chromatic(chi1, chi2)),
        computed: AtValue::Exact(chi),
        evidence: Evidence {
            notes: vec![format!(
                "chi({}) = {chi1}, chi({}) = {chi2}",
                g1.name, g2.name
            )],
            ..Evidence::default()
        },
        failed: false,
    }
    .finish(started))
}

/// A corona settled with the factor values as subgraph bounds and the corona
/// construction as an upper bound.
struct CoronaRun {
    at1: usize,
    at2: usize,
    settled: Settled,
    notes: Vec<String>,
    /// The construction exceeded its outdegree bound or was rejected.
    construction_failed: bool,
}

fn run_corona(g1: &Instance, g2: &Instance, budget: &Budget) -> Result<CoronaRun> {
    if g1.graph.is_empty() || g2.graph.is_empty() {
        return Err(Error::input("corona factors need at least one vertex"));
    }
    let s1 = settle_instance(g1, budget)?;
    let s2 = settle_instance(g2, budget)?;
    let (at1, at2) = (s1.exact(&g1.name)?, s2.exact(&g2.name)?);
    let (o, recipe) = corona_orientation(&g1.graph, &s1.certificate, &g2.graph, &s2.certificate)?;
    let level = o.max_outdegree() + 1;
    let allowed = (at1 - 1).max(at2);
    let mut notes = vec![format!("AT({}) = {at1}, AT({}) = {at2}", g1.name, g2.name)];
    let mut construction_failed = false;
    if o.max_outdegree() > allowed {
        construction_failed = true;
        notes.push(format!(
            "construction outdegree {} exceeds {allowed}",
            o.max_outdegree()
        ));
    }
    let verdict = verify_certificate(&o, level, None, Some(&recipe), budget)?;
    let construction = match verdict {
        Verdict::Accepted { engine, .. } => {
            notes.push(format!(
                "corona construction certifies level {level} ({engine})"
            ));
            Some((o, "corona construction"))
        }
        other => {
            construction_failed = true;
            notes.push(format!("corona construction not accepted: {other:?}"));
            None
        }
    };
    let known = [
        SubgraphBound {
            name: format!("AT({}) = {at1}", g1.name),
            at_least: at1,
        },
        SubgraphBound {
            name: format!("AT({}) = {at2}", g2.name),
            at_least: at2,
        },
    ];
    let g = Arc::new(corona(&g1.graph, &g2.graph)?);
    let settled = settle(g, &known, construction, budget)?;
    Ok(CoronaRun {
        at1,
        at2,
        settled,
        notes,
        construction_failed,
    })
}

pub fn check_corona_bracket(g1: &Instance, g2: &Instance, budget: &Budget) -> Result<ClaimReport> {
    let started = Instant::now();
    let run = run_corona(g1, g2, budget)?;
    Ok(Report {
        claim: Claim::CoronaBracket,
        instance: corona_name(g1, g2),
        quantity: Quantity::AlonTarsi,
        predicted: predict_corona_bracket(run.at1, run.at2),
        computed: run.settled.value,
        evidence: run.settled.evidence(run.notes),
        failed: run.construction_failed,
    }
    .finish(started))
}

/// Requires `AT(G2) >= AT(G1)` and `chi(G2) = AT(G2)`; passes when both the
/// chromatic number and the Alon-Tarsi number of the corona equal `AT(G2) + 1`.
pub fn check_corona_choosable(
    g1: &Instance,
    g2: &Instance,
    budget: &Budget,
) -> Result<ClaimReport> {
    let started = Instant::now();
    let run = run_corona(g1, g2, budget)?;
    let chi2 = chromatic_number(&g2.graph, budget)?;
    if run.at2 < run.at1 || chi2 != run.at2 {
        return Err(Error::input(format!(
            "{}∘{} does not meet the hypotheses: AT = {}, {}; chi({}) = {chi2}",
            g1.name, g2.name, run.at1, run.at2, g2.name
        )));
    }
    let predicted = run.at2 + 1;
    let chi = chromatic_number(&corona(&g1.graph, &g2.graph)?, budget)?;
    let mut notes = run.notes;
    notes.push(format!("chi = {chi}"));
    Ok(Report {
        claim: Claim::CoronaChoosable,
        instance: corona_name(g1, g2),
        quantity: Quantity::AlonTarsi,
        predicted: Prediction::Exact(predicted),
        computed: run.settled.value,
        evidence: run.settled.evidence(notes),
        failed: run.construction_failed || chi != predicted,
    }
    .finish(started))
}

fn cube_corona_report(
    claim: Claim,
    n: usize,
    g2: &Instance,
    predicted: usize,
    budget: &Budget,
    started: Instant,
) -> Result<ClaimReport> {
    let q = Instance::hypercube(n)?;
    let run = run_corona(&q, g2, budget)?;
    let mut notes = run.notes;
    if claim == Claim::CubeCorona {
        if run.at2 != 2 {
            return Err(Error::input(format!(
                "AT({}) = {}, expected 2",
                g2.name, run.at2
            )));
        }
        // AT = 2 forces an edge, and any edge of a pendant copy closes a
        // triangle with its hub.
        if g2.graph.edge_count() == 0 {
            return Err(Error::Precondition(format!(
                "{} has AT 2 but no edge",
                g2.name
            )));
        }
        notes.push(format!(
            "{} has an edge, so the corona has a triangle",
            g2.name
        ));
    }
    if claim == Claim::CubeCoronaOddCycle {
        let chi = chromatic_number(&corona(&q.graph, &g2.graph)?, budget)?;
        notes.push(format!("chi = {chi}"));
    }
    Ok(Report {
        claim,
        instance: corona_name(&q, g2),
        quantity: Quantity::AlonTarsi,
        predicted: Prediction::Exact(predicted),
        computed: run.settled.value,
        evidence: run.settled.evidence(notes),
        failed: run.construction_failed,
    }
    .finish(started))
}

pub fn check_cube_corona(n: usize, g2: &Instance, budget: &Budget) -> Result<ClaimReport> {
    let started = Instant::now();
    if g2.graph.vertex_count() < 2 {
        return Err(Error::input("the pendant graph needs at least 2 vertices"));
    }
    cube_corona_report(
        Claim::CubeCorona,
        n,
        g2,
        predict_cube_corona(n),
        budget,
        started,
    )
}

pub fn check_cube_corona_even_cycle(n: usize, k: usize, budget: &Budget) -> Result<ClaimReport> {
    let started = Instant::now();
    if k < 2 {
        return Err(Error::input("even cycle needs k >= 2"));
    }
    let c = Instance::cycle(2 * k)?;
    cube_corona_report(
        Claim::CubeCoronaEvenCycle,
        n,
        &c,
        predict_cube_corona(n),
        budget,
        started,
    )
}

pub fn check_cube_corona_odd_cycle(n: usize, k: usize, budget: &Budget) -> Result<ClaimReport> {
    let started = Instant::now();
    if k < 1 {
        return Err(Error::input("odd cycle needs k >= 1"));
    }
    let c = Instance::cycle(2 * k + 1)?;
    cube_corona_report(
        Claim::CubeCoronaOddCycle,
        n,
        &c,
        predict_cube_corona_odd_cycle(n),
        budget,
        started,
    )
}

pub fn check_toroidal(m: usize, n: usize, budget: &Budget) -> Result<ClaimReport> {
    let started = Instant::now();
    let (cm, cn) = (Instance::cycle(m)?, Instance::cycle(n)?);
    let g = cartesian_product(&cm.graph, &cn.graph)?;
    let s = settle(Arc::new(g), &[], None, budget)?;
    Ok(Report {
        claim: Claim::Toroidal,
        instance: format!("{}□{}", cm.name, cn.name),
        quantity: Quantity::AlonTarsi,
        predicted: Prediction::Exact(predict_toroidal(m, n)),
        computed: s.value,
        evidence: s.evidence(Vec::new()),
        failed: false,
    }
    .finish(started))
}

pub fn check_chi_product(g: &Instance, h: &Instance, budget: &Budget) -> Result<ClaimReport> {
    let started = Instant::now();
    let chi_g = chromatic_number(&g.graph, budget)?;
    let chi_h = chromatic_number(&h.graph, budget)?;
    let chi = chromatic_number(&cartesian_product(&g.graph, &h.graph)?, budget)?;
    Ok(Report {
        claim: Claim::ChiProduct,
        instance: format!("{}□{}", g.name, h.name),
        quantity: Quantity::Chromatic,
        predicted: Prediction::Exact(chi_g.max(chi_h)),
        computed: AtValue::Exact(chi),
        evidence: Evidence {
            notes: vec![format!(
                "chi({}) = {chi_g}, chi({}) = {chi_h}",
                g.name, h.name
            )],
            ..Evidence::default()
        },
        failed: false,
    }
    .finish(started))
}

/// Passes when `AT(G) > chi(G)`.
pub fn check_not_choosable(inst: &Instance, budget: &Budget) -> Result<ClaimReport> {
    let started = Instant::now();
    let chi = chromatic_number(&inst.graph, budget)?;
    let s = settle_instance(inst, budget)?;
    Ok(Report {
        claim: Claim::NotChoosable,
        instance: inst.name.clone(),
        quantity: Quantity::AlonTarsi,
        predicted: Prediction::Exceeds(chi),
        computed: s.value,
        evidence: s.evidence(vec![format!("chi = {chi}")]),
        failed: false,
    }
    .finish(started))
}

/// [`check_not_choosable`] for a corona, using the corona construction as the
/// upper bound.
pub fn check_not_choosable_corona(
    g1: &Instance,
    g2: &Instance,
    budget: &Budget,
) -> Result<ClaimReport> {
    let started = Instant::now();
    let run = run_corona(g1, g2, budget)?;
    let chi = chromatic_number(&corona(&g1.graph, &g2.graph)?, budget)?;
    let mut notes = run.notes;
    notes.push(format!("chi = {chi}"));
    Ok(Report {
        claim: Claim::NotChoosable,
        instance: corona_name(g1, g2),
        quantity: Quantity::AlonTarsi,
        predicted: Prediction::Exceeds(chi),
        computed: run.settled.value,
        evidence: run.settled.evidence(notes),
        failed: run.construction_failed,
    }
    .finish(started))
}

/// One checker invocation.
#[derive(Debug, Clone)]
pub enum Job {
    RegularBipartite(Instance),
    Hypercube(usize),
    CubeTree(usize, Instance),
    CubeEvenCycle(usize, usize),
    CoronaChromatic(Instance, Instance),
    CoronaBracket(Instance, Instance),
    CoronaChoosable(Instance, Instance),
    CubeCorona(usize, Instance),
    CubeCoronaEvenCycle(usize, usize),
    CubeCoronaOddCycle(usize, usize),
    Toroidal(usize, usize),
    ChiProduct(Instance, Instance),
    NotChoosable(Instance),
    NotChoosableCorona(Instance, Instance),
}

impl Job {
    pub fn claim(&self) -> Claim {
        match self {
            Job::RegularBipartite(..) => Claim::RegularBipartite,
            Job::Hypercube(..) => Claim::Hypercube,
            Job::CubeTree(..) => Claim::CubeTree,
            Job::CubeEvenCycle(..) => Claim::CubeEvenCycle,
            Job::CoronaChromatic(..) => Claim::CoronaChromatic,
            Job::CoronaBracket(..) => Claim::CoronaBracket,
            Job::CoronaChoosable(..) => Claim::CoronaChoosable,
            Job::CubeCorona(..) => Claim::CubeCorona,
            Job::CubeCoronaEvenCycle(..) => Claim::CubeCoronaEvenCycle,
            Job::CubeCoronaOddCycle(..) => Claim::CubeCoronaOddCycle,
            Job::Toroidal(..) => Claim::Toroidal,
            Job::ChiProduct(..) => Claim::ChiProduct,
            Job::NotChoosable(..) | Job::NotChoosableCorona(..) => Claim::NotChoosable,
        }
    }

    pub fn run(&self, budget: &Budget) -> Result<ClaimReport> {
        match self {
            Job::RegularBipartite(g) => check_regular_bipartite(g, budget),
            Job::Hypercube(n) => check_hypercube(*n, budget),
            Job::CubeTree(n, t) => check_cube_tree(*n, t, budget),
            Job::CubeEvenCycle(n, k) => check_cube_even_cycle(*n, *k, budget),
            Job::CoronaChromatic(a, b) => check_corona_chromatic(a, b, budget),
            Job::CoronaBracket(a, b) => check_corona_bracket(a, b, budget),
            Job::CoronaChoosable(a, b) => check_corona_choosable(a, b, budget),
            Job::CubeCorona(n, g) => check_cube_corona(*n, g, budget),
            Job::CubeCoronaEvenCycle(n, k) => check_cube_corona_even_cycle(*n, *k, budget),
            Job::CubeCoronaOddCycle(n, k) => check_cube_corona_odd_cycle(*n, *k, budget),
            Job::Toroidal(m, n) => check_toroidal(*m, *n, budget),
            Job::ChiProduct(g, h) => check_chi_product(g, h, budget),
            Job::NotChoosable(g) => check_not_choosable(g, budget),
            Job::NotChoosableCorona(a, b) => check_not_choosable_corona(a, b, budget),
        }
    }
}

/// Runs the jobs concurrently; results come back in job order.
pub fn run_jobs(jobs: &[Job], budget: &Budget) -> Vec<Result<ClaimReport>> {
    jobs.par_iter().map(|j| j.run(budget)).collect()
}

/// Overrides for [`jobs_for`]; `None` picks the claim's default sweep.
#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    pub n: Option<RangeInclusive<usize>>,
    pub k: Option<RangeInclusive<usize>>,
    /// Largest cycle length for the toroidal sweep.
    pub max: Option<usize>,
    pub trees: Option<Vec<Instance>>,
    pub seed: u64,
}

/// Seed of the default tree catalog and random corona pairs.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// A fixed set of small named graphs: standard families, trees, products,
/// coronas and a few classic examples.
pub fn corpus() -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push(Instance::hypercube(n)?);
    }
    for n in 3..=10 {
        out.push(Instance::cycle(n)?);
    }
    for n in 1..=6 {
        out.push(Instance::complete(n)?);
    }
    for a in 1..=4 {
        for b in a..=4 {
            out.push(Instance::complete_bipartite(a, b)?);
        }
    }
    out.extend(tree_catalog(2..=8, 2, DEFAULT_SEED)?);
    let product = |g: Instance, h: Instance| -> Result<Instance> {
        let graph = cartesian_product(&g.graph, &h.graph)?;
        Ok(Instance::new(format!("{}□{}", g.name, h.name), graph))
    };
    let coronas = |g: Instance, h: Instance| -> Result<Instance> {
        let graph = corona(&g.graph, &h.graph)?;
        Ok(Instance::new(format!("{}∘{}", g.name, h.name), graph))
    };
    out.push(product(Instance::path(3)?, Instance::path(3)?)?);
    out.push(product(Instance::hypercube(2)?, Instance::path(3)?)?);
    out.push(product(Instance::hypercube(2)?, Instance::cycle(4)?)?);
    out.push(product(Instance::complete(2)?, Instance::cycle(5)?)?);
    out.push(product(Instance::cycle(3)?, Instance::cycle(3)?)?);
    out.push(product(Instance::cycle(3)?, Instance::cycle(4)?)?);
    out.push(product(Instance::cycle(4)?, Instance::cycle(4)?)?);
    out.push(product(Instance::hypercube(1)?, Instance::star(4)?)?);
    out.push(coronas(Instance::complete(2)?, Instance::complete(1)?)?);
    out.push(coronas(Instance::complete(2)?, Instance::cycle(3)?)?);
    out.push(coronas(Instance::complete(2)?, Instance::cycle(4)?)?);
    out.push(coronas(Instance::path(3)?, Instance::complete(3)?)?);
    out.push(coronas(Instance::cycle(3)?, Instance::cycle(4)?)?);
    out.push(coronas(Instance::cycle(4)?, Instance::cycle(3)?)?);
    out.push(coronas(Instance::cycle(4)?, Instance::complete(2)?)?);
    out.push(coronas(Instance::cycle(5)?, Instance::complete(1)?)?);
    out.push(coronas(Instance::hypercube(2)?, Instance::path(3)?)?);
    out.push(Instance::new(
        "Petersen",
        Graph::from_edges(
            10,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (0, 4),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (6, 9),
                (6, 8),
                (5, 8),
            ],
        )?,
    ));
    out.push(Instance::new(
        "Moser",
        Graph::from_edges(
            7,
            vec![
                (0, 1),
                (0, 2),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (0, 5),
                (4, 5),
                (4, 6),
                (5, 6),
                (3, 6),
            ],
        )?,
    ));
    Ok(out)
}

/// The default tree catalog: sizes 2 to 6, two random Prüfer trees per size.
pub fn default_tree_catalog() -> Result<Vec<Instance>> {
    tree_catalog(2..=6, 2, DEFAULT_SEED)
}

pub fn jobs_for(claim: Claim, p: &SuiteParams) -> Result<Vec<Job>> {
    let n_or = |d: RangeInclusive<usize>| p.n.clone().unwrap_or(d);
    let k_or = |d: RangeInclusive<usize>| p.k.clone().unwrap_or(d);
    let mut jobs = Vec::new();
    match claim {
        Claim::RegularBipartite => {
            for d in n_or(1..=4) {
                jobs.push(Job::RegularBipartite(Instance::complete_bipartite(d, d)?));
                jobs.push(Job::RegularBipartite(Instance::hypercube(d)?));
            }
            for k in k_or(2..=4) {
                jobs.push(Job::RegularBipartite(Instance::cycle(2 * k)?));
            }
        }
        Claim::Hypercube => jobs.extend(n_or(1..=10).map(Job::Hypercube)),
        Claim::CubeTree => {
            let trees = match &p.trees {
                Some(t) => t.clone(),
                None => default_tree_catalog()?,
            };
            for n in n_or(1..=4) {
                for t in &trees {
                    jobs.push(Job::CubeTree(n, t.clone()));
                }
            }
        }
        Claim::CubeEvenCycle => {
            for n in n_or(1..=4) {
                for k in k_or(2..=4) {
                    jobs.push(Job::CubeEvenCycle(n, k));
                }
            }
        }
        Claim::CoronaChromatic => {
            jobs.push(Job::CoronaChromatic(
                Instance::cycle(3)?,
                Instance::cycle(4)?,
            ));
            jobs.push(Job::CoronaChromatic(
                Instance::cycle(4)?,
                Instance::cycle(3)?,
            ));
            jobs.push(Job::CoronaChromatic(
                Instance::complete(2)?,
                Instance::complete(1)?,
            ));
            for (a, b) in random_graph_pairs(20, 8, p.seed)? {
                jobs.push(Job::CoronaChromatic(a, b));
            }
        }
        Claim::CoronaBracket => {
            jobs.push(Job::CoronaBracket(
                Instance::cycle(4)?,
                Instance::complete(2)?,
            ));
            jobs.push(Job::CoronaBracket(
                Instance::cycle(5)?,
                Instance::complete(1)?,
            ));
            jobs.push(Job::CoronaBracket(
                Instance::hypercube(2)?,
                Instance::path(4)?,
            ));
            jobs.push(Job::CoronaBracket(
                Instance::complete(3)?,
                Instance::cycle(5)?,
            ));
        }
        Claim::CoronaChoosable => {
            jobs.push(Job::CoronaChoosable(
                Instance::complete(2)?,
                Instance::cycle(3)?,
            ));
            jobs.push(Job::CoronaChoosable(
                Instance::path(3)?,
                Instance::complete(3)?,
            ));
            jobs.push(Job::CoronaChoosable(
                Instance::complete(2)?,
                Instance::cycle(4)?,
            ));
        }
        Claim::CubeCorona => {
            for n in n_or(1..=6) {
                for g2 in [
                    Instance::complete(2)?,
                    Instance::path(3)?,
                    Instance::path(4)?,
                    Instance::cycle(4)?,
                ] {
                    jobs.push(Job::CubeCorona(n, g2));
                }
            }
        }
        Claim::CubeCoronaEvenCycle => {
            for n in n_or(1..=4) {
                for k in k_or(2..=3) {
                    jobs.push(Job::CubeCoronaEvenCycle(n, k));
                }
            }
        }
        Claim::CubeCoronaOddCycle => {
            for n in n_or(1..=6) {
                for k in k_or(1..=2) {
                    jobs.push(Job::CubeCoronaOddCycle(n, k));
                }
            }
        }
        Claim::Toroidal => {
            let max = p.max.unwrap_or(4);
            for m in 3..=max {
                for n in m..=max {
                    jobs.push(Job::Toroidal(m, n));
                }
            }
        }
        Claim::ChiProduct => {
            let pairs = [
                (Instance::complete(2)?, Instance::cycle(5)?),
                (Instance::cycle(3)?, Instance::cycle(3)?),
                (Instance::hypercube(2)?, Instance::hypercube(2)?),
                (Instance::complete(4)?, Instance::cycle(5)?),
                (Instance::cycle(5)?, Instance::path(3)?),
            ];
            jobs.extend(pairs.into_iter().map(|(g, h)| Job::ChiProduct(g, h)));
        }
        Claim::NotChoosable => {
            for n in n_or(2..=6) {
                jobs.push(Job::NotChoosable(Instance::hypercube(n)?));
            }
            let q2 = Instance::hypercube(2)?;
            for other in [Instance::path(4)?, Instance::cycle(4)?] {
                jobs.push(Job::NotChoosable(Instance::new(
                    format!("{}□{}", q2.name, other.name),
                    cartesian_product(&q2.graph, &other.graph)?,
                )));
            }
            let q3 = Instance::hypercube(3)?;
            jobs.push(Job::NotChoosableCorona(q3.clone(), Instance::path(3)?));
            jobs.push(Job::NotChoosableCorona(q3, Instance::cycle(3)?));
        }
    }
    Ok(jobs)
}

/// One line per report: claim, instance, predicted, computed, outcome, millis.
pub fn render_table(reports: &[ClaimReport]) -> String {
    let mut rows = vec![[
        "claim".to_string(),
        "instance".into(),
        "predicted".into(),
        "computed".into(),
        "verdict".into(),
        "millis".into(),
    ]];
    for r in reports {
        rows.push([
            r.claim.to_string(),
            r.instance.clone(),
            format!("{}={}", r.quantity, r.predicted),
            r.computed.to_string(),
            r.outcome.to_string(),
            r.millis.to_string(),
        ]);
    }
    let mut widths = [0usize; 6];
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    for row in &rows {
        let cells: Vec<String> = row
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}
