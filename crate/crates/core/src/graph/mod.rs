//! Simple undirected graphs with provenance-carrying vertex labels.
//!
//! Vertex and edge order are fixed by the constructing routine, so building the
//! same graph twice yields identical indices. Everything downstream (orientations,
//! certificates, search order) is keyed on those indices.

mod families;

mod label;
pub(crate) mod product;

use std::collections::{HashMap, HashSet, VecDeque};

pub use families::{
    broom, complete, complete_bipartite, cycle, empty, hypercube, path, star, tree_from_edges,
    tree_from_pruefer, HYPERCUBE_MAX_DIM,
};
pub use label::Label;
pub use product::{cartesian_product, corona};

use crate::error::{Error, Result};

/// Largest vertex count any constructor will produce.
pub const DEFAULT_VERTEX_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<Label>,
    edges: Vec<(usize, usize)>,
    /// `(neighbor, edge index)` per vertex, in edge order.
    incidence: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph from labels and an edge list. Edge endpoints are stored as
    /// `(min, max)`; edge order is preserved.
    pub fn new(labels: Vec<Label>, edges: Vec<(usize, usize)>) -> Result<Self> {
        if labels.len() > DEFAULT_VERTEX_CAP {
            return Err(Error::Size {
                what: "vertex count",
                actual: labels.len(),
                limit: DEFAULT_VERTEX_CAP,
            });
        }
        let n = labels.len();
        let mut seen_labels = HashSet::with_capacity(n);
        for l in &labels {
            if !seen_labels.insert(l) {
                return Err(Error::input(format!("duplicate vertex label {l}")));
            }
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut normalized = Vec::with_capacity(edges.len());
        let mut incidence = vec![Vec::new(); n];
        for (idx, &(u, v)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(Error::input(format!(
                    "edge {idx} = ({u}, {v}) references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::input(format!("edge {idx} is a loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::input(format!("edge ({u}, {v}) appears twice")));
            }
            incidence[e.0].push((e.1, idx));
            incidence[e.1].push((e.0, idx));
            normalized.push(e);
        }
        Ok(Graph {
            labels,
            edges: normalized,
            incidence,
        })
    }

    /// Vertices labelled `0..n` by their index.
    pub fn from_edges(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        Graph::new((0..n).map(Label::index).collect(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &Label {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// `(neighbor, edge index)` pairs of `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.incidence[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incidence[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// The common degree, if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.incidence.first()?.len();
        self.incidence
            .iter()
            .all(|i| i.len() == first)
            .then_some(first)
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.incidence
            .get(u)?
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    /// Adjacency as bitmasks; only valid for graphs with at most 64 vertices.
    pub(crate) fn adjacency_masks(&self) -> Vec<u64> {
        assert!(
            self.vertex_count() <= 64,
            "bitmask adjacency needs <= 64 vertices"
        );
        let mut masks = vec![0u64; self.vertex_count()];
        for &(u, v) in &self.edges {
            masks[u] |= 1 << v;
            masks[v] |= 1 << u;
        }
        masks
    }

    /// Subgraph induced by `vertices`, in the given order, keeping labels. Edges
    /// keep their relative order from `self`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut position = HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.vertex_count() {
                return Err(Error::input(format!("vertex {v} out of range")));
            }
            if position.insert(v, i).is_some() {
                return Err(Error::input(format!("vertex {v} listed twice")));
            }
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((*position.get(&u)?, *position.get(&v)?)))
            .collect();
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        Graph::new(labels, edges)
    }

    /// Number of edges with both endpoints in `subset` (given as a membership mask).
    pub fn induced_edge_count(&self, member: &[bool]) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v)| member[u] && member[v])
            .count()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// A connected graph with `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.edge_count() + 1 == self.vertex_count() && self.is_connected()
    }

    /// Vertex order repeatedly removing a minimum-degree vertex, and the largest
    /// degree seen at removal time (the degeneracy).
    pub fn degeneracy_order(&self) -> (Vec<usize>, usize) {
        let n = self.vertex_count();
        let mut deg = self.degrees();
        let mut removed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut degeneracy = 0;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (deg[v], v))
                .expect("a vertex remains");
            degeneracy = degeneracy.max(deg[v]);
            removed[v] = true;
            order.push(v);
            for w in self.neighbors(v) {
                if !removed[w] {
                    deg[w] -= 1;
                }
            }
        }
        (order, degeneracy)
    }

    /// BFS 2-colouring. Each component's smallest vertex goes on the left.
    pub fn two_coloring(&self) -> std::result::Result<Bipartition, OddCycle> {
        let n = self.vertex_count();
        let mut side: Vec<Option<bool>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            if side[root].is_some() {
                continue;
            }
            side[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].expect("queued vertices are coloured");
                for w in self.neighbors(u) {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            parent[w] = u;
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => {
                            return Err(OddCycle::from_conflict(&parent, u, w));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let (mut left, mut right) = (Vec::new(), Vec::new());
        for (v, s) in side.into_iter().enumerate() {
            if s == Some(false) {
                left.push(v);
            } else {
                right.push(v);
            }
        }
        Ok(Bipartition { left, right })
    }

    pub fn bipartition(&self) -> Option<Bipartition> {
        self.two_coloring().ok()
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl Bipartition {
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let n = g.vertex_count();
        let mut side = vec![None; n];
        for (&v, s) in self
            .left
            .iter()
            .map(|v| (v, false))
            .chain(self.right.iter().map(|v| (v, true)))
        {
            if v >= n || side[v].is_some() {
                return false;
            }
            side[v] = Some(s);
        }
        side.iter().all(Option::is_some) && g.edges().iter().all(|&(u, v)| side[u] != side[v])
    }
}

/// Closed walk of odd length, returned when a graph is not bipartite. The first
/// vertex is repeated implicitly: `walk[last]` is adjacent to `walk[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCycle {
    pub walk: Vec<usize>,
}

impl OddCycle {
    fn from_conflict(parent: &[usize], u: usize, w: usize) -> Self {
        let up = |mut x: usize| {
            let mut p = vec![x];
            while parent[x] != usize::MAX {
                x = parent[x];
                p.push(x);
            }
            p
        };
        // u and w sit at equal BFS depth parity, so root..u plus w..root closes an odd walk.
        let mut from_u = up(u);
        let from_w = up(w);
        from_u.reverse();
        let mut walk = from_u;
        walk.extend(from_w);
        walk.pop();
        OddCycle { walk }
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let k = self.walk.len();
        k % 2 == 1 && (0..k).all(|i| g.has_edge(self.walk[i], self.walk[(i + 1) % k]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(matches!(
            Graph::from_edges(2, vec![(0, 0)]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            Graph::from_edges(2, vec![(0, 1), (1, 0)]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            Graph::from_edges(2, vec![(0, 2)]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn odd_cycle_evidence_is_a_closed_odd_walk() {
        for n in [3, 5, 7, 9] {
            let g = cycle(n).unwrap();
            let odd = g.two_coloring().unwrap_err();
            assert!(odd.is_valid_for(&g), "C_{n}: {:?}", odd.walk);
        }
        let g = corona(&cycle(3).unwrap(), &cycle(4).unwrap()).unwrap();
        assert!(g.bipartition().is_none());
        assert!(g.two_coloring().unwrap_err().is_valid_for(&g));
    }

    #[test]
    fn hypercube_sides_follow_weight_parity() {
        let q3 = hypercube(3).unwrap();
        let b = q3.bipartition().unwrap();
        assert_eq!((b.left.len(), b.right.len()), (4, 4));
        assert!(b.is_valid_for(&q3));
        for &v in &b.left {
            let w = q3
                .label(v)
                .to_string()
                .chars()
                .filter(|&c| c == '1')
                .count();
            assert_eq!(w % 2, 0);
        }
        assert!(cycle(5).unwrap().bipartition().is_none());
    }

    #[test]
    fn degeneracy_of_small_families() {
        assert_eq!(complete(5).unwrap().degeneracy_order().1, 4);
        assert_eq!(cycle(7).unwrap().degeneracy_order().1, 2);
        assert_eq!(
            tree_from_pruefer(&[3, 3, 4]).unwrap().degeneracy_order().1,
            1
        );
    }

    #[test]
    fn induced_subgraph_keeps_labels() {
        let q2 = hypercube(2).unwrap();
        let h = q2.induced_subgraph(&[0, 1, 3]).unwrap();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.label(2), q2.label(3));
    }
}
