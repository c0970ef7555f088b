use std::collections::VecDeque;
use std::sync::Arc;

use crate::eulerian::Orientation;
use crate::graph::Graph;

/// An orientation with every outdegree at most `cap`, or `None` when some
/// subgraph has more than `cap` edges per vertex.
///
/// Edges start pointing away from the endpoint with fewer arcs so far; then,
/// while a vertex exceeds the cap, a directed path from it to a vertex below the
/// cap is reversed. If no such path exists, the vertices reachable from the
/// overloaded one span more than `cap * |R|` edges.
pub fn bounded_outdegree_orientation(g: impl Into<Arc<Graph>>, cap: usize) -> Option<Orientation> {
    let g: Arc<Graph> = g.into();
    let n = g.vertex_count();
    let mut out = vec![0usize; n];
    let mut tail: Vec<usize> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let t = if out[v] < out[u] { v } else { u };
            out[t] += 1;
            t
        })
        .collect();
    let mut parent_edge = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    for start in 0..n {
        while out[start] > cap {
            seen.fill(false);
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            let mut target = None;
            'bfs: while let Some(x) = queue.pop_front() {
                for &(y, e) in g.incident(x) {
                    if tail[e] != x || seen[y] {
                        continue;
                    }
                    seen[y] = true;
                    parent_edge[y] = e;
                    if out[y] < cap {
                        target = Some(y);
                        break 'bfs;
                    }
                    queue.push_back(y);
                }
            }
            let mut y = target?;
            out[y] += 1;
            while y != start {
                let e = parent_edge[y];
                let (a, b) = g.edge(e);
                let x = if a == y { b } else { a };
                tail[e] = y;
                y = x;
            }
            out[start] -= 1;
        }
    }
    Some(Orientation::new(g, &tail).expect("tails are endpoints"))
}

/// Acyclic orientation along a degeneracy order: every arc points from the
/// endpoint removed first, so each vertex's outdegree is its degree at removal
/// time. Its only Eulerian subdigraph is the empty one.
pub fn degeneracy_orientation(g: impl Into<Arc<Graph>>) -> Orientation {
    let g: Arc<Graph> = g.into();
    let (order, _) = g.degeneracy_order();
    let mut rank = vec![0; g.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let tails: Vec<usize> = g
        .edges()
        .iter()
        .map(|&(u, v)| if rank[u] < rank[v] { u } else { v })
        .collect();
    Orientation::new(g, &tails).expect("tails are endpoints")
}
