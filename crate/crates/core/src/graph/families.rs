use super::{Graph, Label};
use crate::error::{Error, Result};

/// Largest hypercube dimension the generator accepts (2^16 vertices).
pub const HYPERCUBE_MAX_DIM: usize = 16;

/// The n-cube on binary strings of length `n`; vertex `i` is labelled by the
/// `n`-bit binary expansion of `i`, most significant bit first.
pub fn hypercube(n: usize) -> Result<Graph> {
    if n == 0 || n > HYPERCUBE_MAX_DIM {
        return Err(Error::Size {
            what: "hypercube dimension",
            actual: n,
            limit: HYPERCUBE_MAX_DIM,
        });
    }
    let count = 1usize << n;
    let labels = (0..count)
        .map(|i| Label::Atom(format!("{i:0n$b}")))
        .collect();
    let mut edges = Vec::with_capacity(n * count / 2);
    for i in 0..count {
        for bit in (0..n).rev() {
            let j = i ^ (1 << bit);
            if j > i {
                edges.push((i, j));
            }
        }
    }
    Graph::new(labels, edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::input(format!(
            "cycle needs at least 3 vertices, got {n}"
        )));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)).collect())
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("path needs at least 1 vertex"));
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)).collect())
}

/// `K_{1,n-1}`: vertex 0 is the centre.
pub fn star(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("star needs at least 1 vertex"));
    }
    Graph::from_edges(n, (1..n).map(|i| (0, i)).collect())
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::input("complete graph needs at least 1 vertex"));
    }
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Graph::from_edges(n, edges)
}

/// `K_{a,b}` with the left side on `0..a`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a + b == 0 {
        return Err(Error::input("complete bipartite graph needs a vertex"));
    }
    let edges = (0..a)
        .flat_map(|i| (a..a + b).map(move |j| (i, j)))
        .collect();
    Graph::from_edges(a + b, edges)
}

/// `n` isolated vertices.
pub fn empty(n: usize) -> Result<Graph> {
    Graph::from_edges(n, Vec::new())
}

/// Decodes a Prüfer sequence over `0..len+2`. The empty sequence gives `K_2`.
pub fn tree_from_pruefer(sequence: &[usize]) -> Result<Graph> {
    let n = sequence.len() + 2;
    if let Some(&bad) = sequence.iter().find(|&&a| a >= n) {
        return Err(Error::input(format!(
            "Prüfer entry {bad} out of range 0..{n}"
        )));
    }
    let mut degree = vec![1usize; n];
    for &a in sequence {
        degree[a] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &a in sequence {
        let leaf = (0..n)
            .find(|&v| degree[v] == 1)
            .expect("a Prüfer sequence always leaves a leaf");
        edges.push((leaf, a));
        degree[leaf] -= 1;
        degree[a] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, edges)
}

/// A tree on `n` vertices given by its edges; rejects anything that is not a tree.
pub fn tree_from_edges(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
    let g = Graph::from_edges(n, edges)?;
    if !g.is_tree() {
        return Err(Error::input("edge list does not describe a tree"));
    }
    Ok(g)
}

/// A path on `n - bristles` vertices whose last vertex carries `bristles`
/// extra leaves.
pub fn broom(n: usize, bristles: usize) -> Result<Graph> {
    if bristles == 0 || bristles >= n {
        return Err(Error::input(format!(
            "broom on {n} vertices cannot have {bristles} bristles"
        )));
    }
    let handle = n - bristles;
    let mut edges: Vec<(usize, usize)> = (1..handle).map(|i| (i - 1, i)).collect();
    edges.extend((handle..n).map(|j| (handle - 1, j)));
    Graph::from_edges(n, edges)
}
