use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// An orientation of every edge of a base graph. Arcs are `(tail, head)` and
/// follow the base graph's edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    graph: Arc<Graph>,
    arcs: Vec<(usize, usize)>,
    out: Vec<usize>,
    inn: Vec<usize>,
}

impl Orientation {
    /// `tails[e]` is the tail of edge `e`, which must be one of its endpoints.
    pub fn new(graph: impl Into<Arc<Graph>>, tails: &[usize]) -> Result<Self> {
        let graph = graph.into();
        if tails.len() != graph.edge_count() {
            return Err(Error::input(format!(
                "{} tail choices for {} edges",
                tails.len(),
                graph.edge_count()
            )));
        }
        let mut arcs = Vec::with_capacity(tails.len());
        for (e, (&(u, v), &t)) in graph.edges().iter().zip(tails).enumerate() {
            let arc = if t == u {
                (u, v)
            } else if t == v {
                (v, u)
            } else {
                return Err(Error::input(format!(
                    "tail {t} is not an endpoint of edge {e} = ({u}, {v})"
                )));
            };
            arcs.push(arc);
        }
        Ok(Self::from_checked_arcs(graph, arcs))
    }

    /// `forward[e]` directs edge `e = (u, v)` (with `u < v`) as `u -> v`.
    pub fn from_forward(graph: impl Into<Arc<Graph>>, forward: &[bool]) -> Result<Self> {
        let graph = graph.into();
        if forward.len() != graph.edge_count() {
            return Err(Error::input(format!(
                "{} directions for {} edges",
                forward.len(),
                graph.edge_count()
            )));
        }
        let arcs = graph
            .edges()
            .iter()
            .zip(forward)
            .map(|(&(u, v), &f)| if f { (u, v) } else { (v, u) })
            .collect();
        Ok(Self::from_checked_arcs(graph, arcs))
    }

    /// Arcs in any order; together they must cover each edge exactly once.
    pub fn from_arcs(graph: impl Into<Arc<Graph>>, arcs: &[(usize, usize)]) -> Result<Self> {
        let graph = graph.into();
        let mut tails = vec![usize::MAX; graph.edge_count()];
        for &(t, h) in arcs {
            let e = graph
                .edge_index(t, h)
                .ok_or_else(|| Error::input(format!("arc ({t}, {h}) is not an edge")))?;
            if tails[e] != usize::MAX {
                return Err(Error::input(format!("edge ({t}, {h}) oriented twice")));
            }
            tails[e] = t;
        }
        if let Some(e) = tails.iter().position(|&t| t == usize::MAX) {
            let (u, v) = graph.edge(e);
            return Err(Error::input(format!("edge ({u}, {v}) has no orientation")));
        }
        Self::new(graph, &tails)
    }

    pub(crate) fn from_checked_arcs(graph: Arc<Graph>, arcs: Vec<(usize, usize)>) -> Self {
        let n = graph.vertex_count();
        let mut out = vec![0; n];
        let mut inn = vec![0; n];
        for &(t, h) in &arcs {
            out[t] += 1;
            inn[h] += 1;
        }
        Orientation {
            graph,
            arcs,
            out,
            inn,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn shared_graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn tails(&self) -> Vec<usize> {
        self.arcs.iter().map(|&(t, _)| t).collect()
    }

    pub fn outdegrees(&self) -> &[usize] {
        &self.out
    }

    pub fn indegrees(&self) -> &[usize] {
        &self.inn
    }

    pub fn max_outdegree(&self) -> usize {
        self.out.iter().copied().max().unwrap_or(0)
    }

    /// Every arc flipped.
    pub fn reversed(&self) -> Orientation {
        let arcs = self.arcs.iter().map(|&(t, h)| (h, t)).collect();
        Self::from_checked_arcs(self.graph.clone(), arcs)
    }

    /// The sub-orientation induced by `vertices` (in that order).
    pub fn induced(&self, vertices: &[usize]) -> Result<Orientation> {
        let sub = self.graph.induced_subgraph(vertices)?;
        let mut position = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            position[v] = i;
        }
        let arcs: Vec<_> = self
            .arcs
            .iter()
            .filter(|&&(t, h)| position[t] != usize::MAX && position[h] != usize::MAX)
            .map(|&(t, h)| (position[t], position[h]))
            .collect();
        Orientation::from_arcs(sub, &arcs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, hypercube, path};

    #[test]
    fn single_edge_profile() {
        let d = Orientation::new(path(2).unwrap(), &[0]).unwrap();
        assert_eq!(d.outdegrees(), &[1, 0]);
        assert_eq!(d.indegrees(), &[0, 1]);
    }

    #[test]
    fn cyclic_c4_is_balanced() {
        let g = cycle(4).unwrap();
        // edges (0,1) (1,2) (2,3) (0,3); cyclic 0->1->2->3->0
        let d = Orientation::new(g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(d.outdegrees(), &[1, 1, 1, 1]);
        assert_eq!(d.arcs()[3], (3, 0));
    }

    #[test]
    fn source_vertex_of_q2() {
        let g = hypercube(2).unwrap();
        let tails: Vec<usize> = g
            .edges()
            .iter()
            .map(|&(u, v)| if u == 0 || v == 0 { 0 } else { u })
            .collect();
        let d = Orientation::new(g, &tails).unwrap();
        assert_eq!(d.outdegrees()[0], 2);
        assert_eq!(d.outdegrees().iter().sum::<usize>(), d.arcs().len());
    }

    #[test]
    fn bad_tails_rejected() {
        let g = Arc::new(path(3).unwrap());
        assert!(Orientation::new(g.clone(), &[0]).is_err());
        assert!(Orientation::new(g.clone(), &[0, 0]).is_err());
        assert!(Orientation::from_arcs(g.clone(), &[(0, 1)]).is_err());
        assert!(Orientation::from_arcs(g.clone(), &[(0, 1), (1, 0)]).is_err());
        assert!(Orientation::from_arcs(g, &[(0, 1), (2, 1)]).is_ok());
    }
}
