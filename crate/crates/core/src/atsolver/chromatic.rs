//! Exact chromatic number.
//!
//! The graph is split into blocks (maximal 2-connected pieces): colourings of
//! blocks can be permuted to agree on cut vertices, so `chi` is the maximum over
//! blocks. Each block is decided colour count by colour count with a
//! saturation-ordered backtracker. A `k`-colouring is refuted early if some
//! closed neighbourhood is already not `k`-colourable.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub fn chromatic_number(g: &Graph, budget: &Budget) -> Result<usize> {
    if g.is_empty() {
        return Ok(0);
    }
    if g.edge_count() == 0 {
        return Ok(1);
    }
    let mut chi = 1;
    for block in blocks(g) {
        let sub = g.induced_subgraph(&block)?;
        chi = chi.max(block_chromatic(&sub, budget)?);
    }
    Ok(chi)
}

/// Whether `k` colours suffice.
pub fn is_colorable(g: &Graph, k: usize, budget: &Budget) -> Result<bool> {
    Ok(chromatic_number(g, budget)? <= k)
}

fn block_chromatic(g: &Graph, budget: &Budget) -> Result<usize> {
    if g.edge_count() == 1 {
        return Ok(2);
    }
    if g.is_bipartite() {
        return Ok(2);
    }
    let lower = greedy_clique(g).max(3);
    let upper = dsatur_greedy(g);
    for k in lower..upper {
        if decide(g, k, budget, true)? {
            return Ok(k);
        }
    }
    Ok(upper)
}

/// Largest clique found by greedily extending from each vertex.
fn greedy_clique(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut best = 1;
    for v in 0..n {
        let mut nbrs: Vec<usize> = g.neighbors(v).collect();
        nbrs.sort_by_key(|&w| (std::cmp::Reverse(g.degree(w)), w));
        let mut clique = vec![v];
        for w in nbrs {
            if clique.iter().all(|&c| g.has_edge(c, w)) {
                clique.push(w);
            }
        }
        best = best.max(clique.len());
    }
    best
}

fn pick_next(g: &Graph, colour: &[usize], sat: &[usize]) -> Option<usize> {
    (0..g.vertex_count())
        .filter(|&v| colour[v] == usize::MAX)
        .max_by_key(|&v| (sat[v], g.degree(v), std::cmp::Reverse(v)))
}

/// Colours used by DSATUR without backtracking.
fn dsatur_greedy(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut colour = vec![usize::MAX; n];
    let mut seen = vec![vec![0u32; n + 1]; n];
    let mut sat = vec![0usize; n];
    let mut used = 0;
    while let Some(v) = pick_next(g, &colour, &sat) {
        let c = (0..=n)
            .find(|&c| seen[v][c] == 0)
            .expect("n+1 colours always suffice");
        colour[v] = c;
        used = used.max(c + 1);
        for w in g.neighbors(v) {
            if seen[w][c] == 0 {
                sat[w] += 1;
            }
            seen[w][c] += 1;
        }
    }
    used
}

struct Decider<'a> {
    g: &'a Graph,
    k: usize,
    colour: Vec<usize>,
    seen: Vec<Vec<u32>>,
    sat: Vec<usize>,
    nodes: u64,
    limit: u64,
}

impl Decider<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = c;
        for w in self.g.neighbors(v) {
            if self.seen[w][c] == 0 {
                self.sat[w] += 1;
            }
            self.seen[w][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.colour[v] = usize::MAX;
        for w in self.g.neighbors(v) {
            self.seen[w][c] -= 1;
            if self.seen[w][c] == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    /// `used` colours are in play; a fresh colour is always `used` itself.
    fn search(&mut self, used: usize) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return Err(Error::Capacity {
                what: "chromatic search nodes",
                actual: self.nodes as u128,
                limit: self.limit as u128,
                hint: "",
            });
        }
        let Some(v) = pick_next(self.g, &self.colour, &self.sat) else {
            return Ok(true);
        };
        if self.sat[v] >= self.k {
            return Ok(false);
        }
        for c in 0..(used + 1).min(self.k) {
            if self.seen[v][c] != 0 {
                continue;
            }
            self.assign(v, c);
            let found = self.search(used.max(c + 1))?;
            self.unassign(v, c);
            if found {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Is `g` `k`-colourable?
fn decide(g: &Graph, k: usize, budget: &Budget, neighbourhood_check: bool) -> Result<bool> {
    let n = g.vertex_count();
    if k >= n {
        return Ok(true);
    }
    if neighbourhood_check {
        for v in 0..n {
            if g.degree(v) + 1 >= n || g.degree(v) < k {
                continue;
            }
            let mut closed: Vec<usize> = g.neighbors(v).collect();
            closed.push(v);
            closed.sort_unstable();
            let local = g.induced_subgraph(&closed)?;
            if !decide(&local, k, budget, false)? {
                return Ok(false);
            }
        }
    }
    let mut d = Decider {
        g,
        k,
        colour: vec![usize::MAX; n],
        seen: vec![vec![0u32; k]; n],
        sat: vec![0; n],
        nodes: 0,
        limit: budget.chromatic_nodes,
    };
    d.search(0)
}

/// Vertex sets of the blocks of `g` (bridges count as blocks); isolated
/// vertices are omitted.
pub(crate) fn blocks(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX || g.degree(root) == 0 {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, parent edge, next incidence position)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent_edge, ref mut pos)) = stack.last_mut() {
            let inc = g.incident(v);
            if *pos < inc.len() {
                let (w, e) = inc[*pos];
                *pos += 1;
                if e == parent_edge {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push((v, w));
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    low[v] = low[v].min(disc[w]);
                    edge_stack.push((v, w));
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut verts = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            verts.push(a);
                            verts.push(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        verts.sort_unstable();
                        verts.dedup();
                        out.push(verts);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cartesian_product, complete, corona, cycle, hypercube, path, star};

    fn chi(g: &Graph) -> usize {
        chromatic_number(g, &Budget::default()).unwrap()
    }

    /// Tries every assignment of `k` colours.
    fn brute_colorable(g: &Graph, k: usize) -> bool {
        let n = g.vertex_count();
        let mut colour = vec![0usize; n];
        loop {
            if g.edges().iter().all(|&(u, v)| colour[u] != colour[v]) {
                return true;
            }
            let mut i = 0;
            while i < n {
                colour[i] += 1;
                if colour[i] < k {
                    break;
                }
                colour[i] = 0;
                i += 1;
            }
            if i == n {
                return false;
            }
        }
    }

    fn brute_chi(g: &Graph) -> usize {
        (1..=g.vertex_count())
            .find(|&k| brute_colorable(g, k))
            .unwrap()
    }

    #[test]
    fn families() {
        for n in 1..=6 {
            assert_eq!(chi(&hypercube(n).unwrap()), 2);
        }
        for k in 1..=5 {
            assert_eq!(chi(&cycle(2 * k + 1).unwrap()), 3);
        }
        assert_eq!(chi(&complete(5).unwrap()), 5);
        assert_eq!(chi(&star(6).unwrap()), 2);
        assert_eq!(chi(&path(1).unwrap()), 1);
        assert_eq!(chi(&crate::graph::empty(0).unwrap()), 0);
    }

    #[test]
    fn coronas_from_figure_three() {
        let c3 = cycle(3).unwrap();
        let c4 = cycle(4).unwrap();
        assert_eq!(chi(&corona(&c3, &c4).unwrap()), 3);
        assert_eq!(chi(&corona(&c4, &c3).unwrap()), 4);
    }

    #[test]
    fn wheel_needs_four() {
        // Odd wheel: no K4 but chi = 4, found by the neighbourhood check.
        let q4 = hypercube(4).unwrap();
        let g = corona(&q4, &cycle(7).unwrap()).unwrap();
        assert_eq!(chi(&g), 4);
    }

    #[test]
    fn agrees_with_brute_force_on_small_graphs() {
        let graphs = vec![
            cartesian_product(&cycle(3).unwrap(), &cycle(3).unwrap()).unwrap(),
            cartesian_product(&path(2).unwrap(), &cycle(5).unwrap()).unwrap(),
            // Petersen graph
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
            )
            .unwrap(),
            // Moser spindle
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
            )
            .unwrap(),
        ];
        for g in &graphs {
            assert_eq!(chi(g), brute_chi(g));
        }
    }

    #[test]
    fn blocks_of_a_bowtie_with_tail() {
        // two triangles sharing vertex 2, then a pendant path 4-5-6
        let g = Graph::from_edges(
            7,
            vec![
                (0, 1),
                (1, 2),
                (0, 2),
                (2, 3),
                (3, 4),
                (2, 4),
                (4, 5),
                (5, 6),
            ],
        )
        .unwrap();
        let mut b = blocks(&g);
        b.sort();
        assert_eq!(
            b,
            vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5], vec![5, 6]]
        );
    }

    #[test]
    fn node_budget_is_reported() {
        let tiny = Budget {
            chromatic_nodes: 3,
            ..Budget::default()
        };
        let g = cartesian_product(&cycle(5).unwrap(), &cycle(5).unwrap()).unwrap();
        assert!(matches!(
            decide(&g, 3, &tiny, false),
            Err(Error::Capacity { .. })
        ));
        assert!(decide(&g, 3, &Budget::default(), false).unwrap());
    }
}
