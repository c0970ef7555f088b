//! Exact maximum subgraph density `max |E(H)| / |V(H)|`.
//!
//! [`max_density`] binary-searches guesses `a / L` with `L = |V|^2` and decides
//! each guess with one minimum cut; all capacities are integers scaled by `L`.
//! Two achievable densities differ by more than `1 / L`, so once the upper end
//! of the bracket is within one grid step of the best witness found, that
//! witness is optimal.

mod flow;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::graph::Graph;
use flow::FlowNetwork;

pub const BRUTEFORCE_MAX_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityWitness {
    pub density: Rational64,
    /// Sorted vertex indices of a densest subgraph.
    pub witness: Vec<usize>,
    pub induced_edges: usize,
}

impl DensityWitness {
    fn new(g: &Graph, witness: Vec<usize>) -> Self {
        let member = membership(g, &witness);
        let induced_edges = g.induced_edge_count(&member);
        DensityWitness {
            density: Rational64::new(induced_edges as i64, witness.len() as i64),
            witness,
            induced_edges,
        }
    }

    /// Witness is nonempty, in range, and induces exactly `density * |witness|` edges.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut sorted = self.witness.clone();
        sorted.dedup();
        !self.witness.is_empty()
            && sorted.len() == self.witness.len()
            && self.witness.windows(2).all(|w| w[0] < w[1])
            && self.witness.iter().all(|&v| v < g.vertex_count())
            && {
                let e = g.induced_edge_count(&membership(g, &self.witness));
                e == self.induced_edges
                    && Rational64::new(e as i64, self.witness.len() as i64) == self.density
            }
    }

    /// `ceil(density)`, the smallest outdegree cap any orientation can meet.
    pub fn ceiling(&self) -> usize {
        self.density.ceil().to_integer() as usize
    }
}

fn membership(g: &Graph, vertices: &[usize]) -> Vec<bool> {
    let mut member = vec![false; g.vertex_count()];
    for &v in vertices {
        member[v] = true;
    }
    member
}

/// Maximum density by minimum cuts.
pub fn max_density(g: &Graph) -> Result<DensityWitness> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::input("density of the empty graph is undefined"));
    }
    if g.edge_count() == 0 {
        return Ok(DensityWitness::new(g, vec![0]));
    }
    let scale = (n as i128) * (n as i128);
    let mut best = DensityWitness::new(g, (0..n).collect());
    // Nothing is denser than half the maximum degree.
    let mut hi = (g.max_degree() as i128 * scale + 1) / 2;
    loop {
        let lo = (best.induced_edges as i128 * scale) / best.witness.len() as i128;
        if hi <= lo + 1 {
            break;
        }
        let mid = lo + (hi - lo) / 2;
        match denser_than(g, mid, scale) {
            Some(witness) => best = DensityWitness::new(g, witness),
            None => hi = mid,
        }
    }
    Ok(peel(g, best))
}

/// A vertex set with `|E(S)| / |S| > guess / scale`, if one exists.
fn denser_than(g: &Graph, guess: i128, scale: i128) -> Option<Vec<usize>> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let (source, sink) = (0, 1);
    let edge_node = |e: usize| 2 + e;
    let vertex_node = |v: usize| 2 + m + v;
    let unbounded = m as i128 * scale + 1;
    let mut net = FlowNetwork::new(2 + m + n);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        net.add_edge(source, edge_node(e), scale);
        net.add_edge(edge_node(e), vertex_node(u), unbounded);
        net.add_edge(edge_node(e), vertex_node(v), unbounded);
    }
    for v in 0..n {
        net.add_edge(vertex_node(v), sink, guess);
    }
    let cut = net.max_flow(source, sink);
    if cut >= m as i128 * scale {
        return None;
    }
    let side = net.source_side(source);
    let witness: Vec<usize> = (0..n).filter(|&v| side[vertex_node(v)]).collect();
    debug_assert!(!witness.is_empty());
    Some(witness)
}

/// Drops vertices whose induced degree is at most the density; the density is
/// unchanged and the witness shrinks to a core where every degree exceeds it.
fn peel(g: &Graph, mut best: DensityWitness) -> DensityWitness {
    let mut member = membership(g, &best.witness);
    let mut k = best.witness.len() as i64;
    let mut e = best.induced_edges as i64;
    loop {
        let drop = best.witness.iter().copied().find(|&v| {
            if !member[v] || k <= 1 {
                return false;
            }
            let d = g.neighbors(v).filter(|&w| member[w]).count() as i64;
            // d <= e / k
            d * k <= e
        });
        match drop {
            Some(v) => {
                let d = g.neighbors(v).filter(|&w| member[w]).count() as i64;
                member[v] = false;
                k -= 1;
                e -= d;
            }
            None => break,
        }
    }
    best.witness.retain(|&v| member[v]);
    best.induced_edges = e as usize;
    debug_assert_eq!(Rational64::new(e, k), best.density);
    best
}

/// Exhaustive scan of nonempty vertex subsets. Ties go to the smaller subset,
/// then to the lexicographically least sorted index list.
pub fn max_density_bruteforce(g: &Graph) -> Result<DensityWitness> {
    let n = g.vertex_count();
    if n > BRUTEFORCE_MAX_VERTICES {
        return Err(Error::Capacity {
            what: "vertices for brute-force density",
            actual: n as u128,
            limit: BRUTEFORCE_MAX_VERTICES as u128,
            hint: "",
        });
    }
    if n == 0 {
        return Err(Error::input("density of the empty graph is undefined"));
    }
    let adj = g.adjacency_masks();
    let mut best: Option<(u64, u64, u32)> = None; // (edges, mask, size)
    for mask in 1u64..1 << n {
        let size = mask.count_ones();
        let mut twice = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice += (adj[v] & mask).count_ones();
        }
        let edges = (twice / 2) as u64;
        let better = match best {
            None => true,
            Some((be, bm, bs)) => {
                let lhs = edges * bs as u64;
                let rhs = be * size as u64;
                lhs > rhs || (lhs == rhs && (size < bs || (size == bs && lex_less(mask, bm))))
            }
        };
        if better {
            best = Some((edges, mask, size));
        }
    }
    let (_, mask, _) = best.expect("at least one subset");
    Ok(DensityWitness::new(
        g,
        (0..n).filter(|&v| mask >> v & 1 == 1).collect(),
    ))
}

/// Equal-size subsets compare by their sorted element lists: the lower the first
/// differing element, the smaller.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a >> diff.trailing_zeros() & 1 == 1
}

/// Maximum average degree, twice the maximum density.
pub fn mad(g: &Graph) -> Result<Rational64> {
    Ok(max_density(g)?.density * 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, hypercube, path, star, tree_from_pruefer};

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn hypercubes_are_their_own_densest_subgraph() {
        for n in 1..=6 {
            let q = hypercube(n).unwrap();
            let w = max_density(&q).unwrap();
            assert_eq!(w.density, r(n as i64, 2));
            assert_eq!(w.witness.len(), 1 << n);
            assert!(w.is_valid_for(&q));
        }
    }

    #[test]
    fn trees_have_density_below_one() {
        for (g, m) in [
            (path(4).unwrap(), 4),
            (star(5).unwrap(), 5),
            (tree_from_pruefer(&[0, 0, 1, 4]).unwrap(), 6),
        ] {
            let w = max_density(&g).unwrap();
            assert_eq!(w.density, r(m - 1, m));
            assert_eq!(w.witness.len(), m as usize);
        }
    }

    #[test]
    fn pendant_on_five_cycle() {
        let mut edges = cycle(5).unwrap().edges().to_vec();
        edges.push((0, 5));
        let g = Graph::from_edges(6, edges).unwrap();
        let flow = max_density(&g).unwrap();
        let brute = max_density_bruteforce(&g).unwrap();
        assert_eq!(flow.density, r(1, 1));
        assert_eq!(flow.witness, vec![0, 1, 2, 3, 4]);
        assert_eq!(brute.witness, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn bruteforce_examples() {
        let k4 = max_density_bruteforce(&complete(4).unwrap()).unwrap();
        assert_eq!(
            (k4.density, k4.witness.clone()),
            (r(3, 2), vec![0, 1, 2, 3])
        );
        let e = max_density_bruteforce(&path(2).unwrap()).unwrap();
        assert_eq!(e.density, r(1, 2));
        let q3 = max_density_bruteforce(&hypercube(3).unwrap()).unwrap();
        assert_eq!(q3.density, r(3, 2));
        assert!(matches!(
            max_density_bruteforce(&hypercube(5).unwrap()),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn bruteforce_tie_break_prefers_small_then_lex() {
        // Two disjoint triangles: both have density 1, so does their union.
        let g = Graph::from_edges(6, vec![(3, 4), (4, 5), (3, 5), (0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(max_density_bruteforce(&g).unwrap().witness, vec![0, 1, 2]);
        assert!(lex_less(0b0111, 0b1011));
        assert!(!lex_less(0b1011, 0b0111));
    }

    #[test]
    fn mad_values() {
        assert_eq!(mad(&hypercube(4).unwrap()).unwrap(), r(4, 1));
        assert_eq!(mad(&path(4).unwrap()).unwrap(), r(3, 2));
        assert_eq!(mad(&cycle(6).unwrap()).unwrap(), r(2, 1));
    }

    #[test]
    fn edgeless_graph() {
        let g = crate::graph::empty(3).unwrap();
        let w = max_density(&g).unwrap();
        assert_eq!((w.density, w.witness), (r(0, 1), vec![0]));
    }
}
