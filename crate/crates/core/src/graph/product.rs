use super::{Graph, Label, DEFAULT_VERTEX_CAP};
use crate::error::{Error, Result};

/// Where a composite edge comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum EdgeOrigin {
    /// Edge `edge` of the first factor inside the copy indexed by second-factor vertex `copy`.
    First { copy: usize, edge: usize },
    /// Edge `edge` of the second factor between copies, at first-factor vertex `at`.
    Second { at: usize, edge: usize },
    /// Corona: edge `edge` of the hub graph.
    Hub { edge: usize },
    /// Corona: edge `edge` of the pendant copy attached to hub vertex `copy`.
    Leaf { copy: usize, edge: usize },
    /// Corona: link from vertex `vertex` of copy `copy` to its hub vertex.
    Link { copy: usize, vertex: usize },
}

fn check_cap(count: usize) -> Result<()> {
    if count > DEFAULT_VERTEX_CAP {
        return Err(Error::Size {
            what: "product vertex count",
            actual: count,
            limit: DEFAULT_VERTEX_CAP,
        });
    }
    Ok(())
}

/// `G □ H`. Vertex `(u, v)` has index `u * |V(H)| + v`; the edges of the copies of
/// `G` come first (copy by copy, in `H`'s vertex order), then the edges of the
/// copies of `H`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    cartesian_product_with_origin(g, h).map(|(p, _)| p)
}

pub(crate) fn cartesian_product_with_origin(
    g: &Graph,
    h: &Graph,
) -> Result<(Graph, Vec<EdgeOrigin>)> {
    if g.is_empty() || h.is_empty() {
        return Err(Error::input("Cartesian product factors must be nonempty"));
    }
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    check_cap(ng.saturating_mul(nh))?;
    let idx = |u: usize, v: usize| u * nh + v;
    let mut labels = Vec::with_capacity(ng * nh);
    for lu in g.labels() {
        for lv in h.labels() {
            labels.push(Label::pair(lu.clone(), lv.clone()));
        }
    }
    let total = g.edge_count() * nh + ng * h.edge_count();
    let mut edges = Vec::with_capacity(total);
    let mut origin = Vec::with_capacity(total);
    for v in 0..nh {
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            edges.push((idx(a, v), idx(b, v)));
            origin.push(EdgeOrigin::First { copy: v, edge: e });
        }
    }
    for u in 0..ng {
        for (e, &(a, b)) in h.edges().iter().enumerate() {
            edges.push((idx(u, a), idx(u, b)));
            origin.push(EdgeOrigin::Second { at: u, edge: e });
        }
    }
    Ok((Graph::new(labels, edges)?, origin))
}

/// `G1 ∘ G2`. The hub copy of `G1` occupies indices `0..m` with labels `(i,hub)`;
/// copy `i` of `G2` follows at `m + i*|V(G2)| + j` with labels `(i,j)`. Edge
/// order: hub edges, then per copy its own edges followed by its links to the hub.
pub fn corona(g1: &Graph, g2: &Graph) -> Result<Graph> {
    corona_with_origin(g1, g2).map(|(c, _)| c)
}

pub(crate) fn corona_with_origin(g1: &Graph, g2: &Graph) -> Result<(Graph, Vec<EdgeOrigin>)> {
    if g1.is_empty() {
        return Err(Error::input("corona needs a nonempty first graph"));
    }
    let (m, k) = (g1.vertex_count(), g2.vertex_count());
    check_cap(m.saturating_mul(k + 1))?;
    let leaf = |i: usize, j: usize| m + i * k + j;
    let mut labels: Vec<Label> = g1
        .labels()
        .iter()
        .map(|l| Label::pair(l.clone(), Label::Hub))
        .collect();
    for li in g1.labels() {
        for lj in g2.labels() {
            labels.push(Label::pair(li.clone(), lj.clone()));
        }
    }
    let total = g1.edge_count() + m * (g2.edge_count() + k);
    let mut edges = Vec::with_capacity(total);
    let mut origin = Vec::with_capacity(total);
    for (e, &edge) in g1.edges().iter().enumerate() {
        edges.push(edge);
        origin.push(EdgeOrigin::Hub { edge: e });
    }
    for i in 0..m {
        for (e, &(a, b)) in g2.edges().iter().enumerate() {
            edges.push((leaf(i, a), leaf(i, b)));
            origin.push(EdgeOrigin::Leaf { copy: i, edge: e });
        }
        for j in 0..k {
            edges.push((i, leaf(i, j)));
            origin.push(EdgeOrigin::Link { copy: i, vertex: j });
        }
    }
    Ok((Graph::new(labels, edges)?, origin))
}

#[cfg(test)]
mod tests {
    use super::super::{complete, cycle, hypercube, path, tree_from_pruefer};
    use super::*;

    #[test]
    fn product_counts() {
        let k2 = path(2).unwrap();
        let c4 = cartesian_product(&k2, &k2).unwrap();
        assert_eq!((c4.vertex_count(), c4.edge_count()), (4, 4));
        assert_eq!(c4.regular_degree(), Some(2));
        let p = cartesian_product(&hypercube(2).unwrap(), &path(4).unwrap()).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (16, 28));
        let t = cartesian_product(&cycle(3).unwrap(), &cycle(3).unwrap()).unwrap();
        assert_eq!((t.vertex_count(), t.edge_count()), (9, 18));
        assert_eq!(t.label(4).to_string(), "(1,1)");
    }

    #[test]
    fn corona_counts() {
        let c = corona(&cycle(3).unwrap(), &cycle(4).unwrap()).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count()), (15, 27));
        let p = corona(&path(2).unwrap(), &complete(1).unwrap()).unwrap();
        assert_eq!((p.vertex_count(), p.edge_count()), (4, 3));
        assert_eq!(p.degrees(), vec![2, 2, 1, 1]);
        let f4 = corona(&hypercube(2).unwrap(), &tree_from_pruefer(&[1, 2]).unwrap()).unwrap();
        assert_eq!((f4.vertex_count(), f4.edge_count()), (20, 32));
        assert_eq!(f4.label(0).to_string(), "(00,hub)");
        assert_eq!(f4.label(4).to_string(), "(00,0)");
    }

    #[test]
    fn empty_factor_rejected() {
        let e = crate::graph::empty(0).unwrap();
        assert!(cartesian_product(&e, &path(2).unwrap()).is_err());
        assert!(corona(&e, &path(2).unwrap()).is_err());
    }
}
