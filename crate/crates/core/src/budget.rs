use std::time::Duration;

/// Size limits shared by the solvers. Every exponential routine checks its
/// instance against one of these before starting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Budget {
    /// Largest arc count the subset-enumeration engine accepts.
    pub enum_cap: usize,
    /// Largest bound on live monomials the coefficient engine accepts.
    pub poly_states: u128,
    /// Largest edge count for which exhaustive refutation sweeps are attempted.
    pub search_edges: usize,
    /// Wall-clock limit for a single orientation search.
    pub time: Option<Duration>,
    /// Complete orientations tested per search level before giving up.
    pub search_leaves: u64,
    /// Backtracking nodes allowed per chromatic-number decision.
    pub chromatic_nodes: u64,
    /// Orientation search is split into independent subtrees after this many edges.
    pub split_depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            enum_cap: 24,
            poly_states: 1 << 22,
            search_edges: 20,
            time: None,
            search_leaves: 20_000_000,
            chromatic_nodes: 50_000_000,
            split_depth: 8,
        }
    }
}
