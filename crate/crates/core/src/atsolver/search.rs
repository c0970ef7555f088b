//! Exhaustive search for an Alon-Tarsi orientation under an outdegree cap.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::Result;
use crate::eulerian::{eulerian_diff, Engine, Orientation};
use crate::graph::Graph;

#[derive(Debug, Clone)]
pub(crate) enum LevelOutcome {
    Found {
        orientation: Orientation,
        diff: BigInt,
        engine: Engine,
    },
    /// Every orientation within the cap was tested and none is Alon-Tarsi.
    Exhausted { checked: u64 },
    /// Time or leaf budget ran out first.
    Interrupted,
}

struct Shared<'a> {
    graph: &'a Arc<Graph>,
    cap: usize,
    budget: &'a Budget,
    deadline: Option<Instant>,
    checked: AtomicU64,
    stop: AtomicBool,
}

impl Shared<'_> {
    fn out_of_budget(&self) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        let over = self.checked.load(Ordering::Relaxed) >= self.budget.search_leaves
            || self.deadline.is_some_and(|d| Instant::now() >= d);
        if over {
            self.stop.store(true, Ordering::Relaxed);
        }
        over
    }
}

type Hit = (Orientation, BigInt, Engine);

/// Depth-first over edges in graph order, tail = smaller endpoint tried first.
fn dfs(s: &Shared<'_>, i: usize, tails: &mut Vec<usize>, out: &mut [usize]) -> Result<Option<Hit>> {
    let g = s.graph;
    if i == g.edge_count() {
        if s.out_of_budget() {
            return Ok(None);
        }
        s.checked.fetch_add(1, Ordering::Relaxed);
        let arcs = tails
            .iter()
            .zip(g.edges())
            .map(|(&t, &(u, v))| if t == u { (u, v) } else { (v, u) })
            .collect();
        let d = Orientation::from_checked_arcs(g.clone(), arcs);
        let (diff, engine) = eulerian_diff(&d, s.budget)?;
        return Ok((!diff.is_zero()).then_some((d, diff, engine)));
    }
    let (u, v) = g.edge(i);
    for t in [u, v] {
        if out[t] >= s.cap {
            continue;
        }
        out[t] += 1;
        tails.push(t);
        let hit = dfs(s, i + 1, tails, out)?;
        tails.pop();
        out[t] -= 1;
        if hit.is_some() {
            return Ok(hit);
        }
        if s.stop.load(Ordering::Relaxed) {
            return Ok(None);
        }
    }
    Ok(None)
}

/// Partial assignments of the first `depth` edges that respect the cap.
fn prefixes(g: &Graph, cap: usize, depth: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    fn go(
        g: &Graph,
        cap: usize,
        depth: usize,
        tails: &mut Vec<usize>,
        out: &mut [usize],
        acc: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        let i = tails.len();
        if i == depth {
            acc.push((tails.clone(), out.to_vec()));
            return;
        }
        let (u, v) = g.edge(i);
        for t in [u, v] {
            if out[t] < cap {
                out[t] += 1;
                tails.push(t);
                go(g, cap, depth, tails, out, acc);
                tails.pop();
                out[t] -= 1;
            }
        }
    }
    let mut acc = Vec::new();
    let mut out = vec![0; g.vertex_count()];
    go(g, cap, depth, &mut Vec::new(), &mut out, &mut acc);
    acc
}

/// Looks for an Alon-Tarsi orientation with every outdegree at most `cap`. The
/// search tree is cut after `budget.split_depth` edges and the subtrees run in
/// parallel; the reported orientation is the first one in sequential DFS order.
pub(crate) fn search_level(g: &Arc<Graph>, cap: usize, budget: &Budget) -> Result<LevelOutcome> {
    let shared = Shared {
        graph: g,
        cap,
        budget,
        deadline: budget.time.map(|t| Instant::now() + t),
        checked: AtomicU64::new(0),
        stop: AtomicBool::new(false),
    };
    let depth = budget.split_depth.min(g.edge_count());
    let tasks = prefixes(g, cap, depth);
    let hit = tasks
        .into_par_iter()
        .map(|(mut tails, mut out)| dfs(&shared, depth, &mut tails, &mut out))
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        });
    let checked = shared.checked.load(Ordering::Relaxed);
    match hit {
        Some(Err(e)) => Err(e),
        Some(Ok(Some((orientation, diff, engine)))) => Ok(LevelOutcome::Found {
            orientation,
            diff,
            engine,
        }),
        _ if shared.stop.load(Ordering::Relaxed) => Ok(LevelOutcome::Interrupted),
        _ => Ok(LevelOutcome::Exhausted { checked }),
    }
}
