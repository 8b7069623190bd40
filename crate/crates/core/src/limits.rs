use serde::{Deserialize, Serialize};

/// Resource caps shared by the expensive operations.
///
/// Exceeding any of them yields [`crate::Error::Resource`]; no operation
/// truncates silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Longest word a substitution iterate may produce.
    pub max_word_len: usize,
    /// Most iterates tried when waiting for a language to stabilize.
    pub max_iterates: usize,
    /// Largest `|S|^|A|` the finite-image scan will enumerate.
    pub enum_cap: u64,
    /// Largest group order accepted by the brute-force rank computation.
    pub rank_cap: usize,
    /// Largest permutation group the closure routine will build.
    pub closure_cap: usize,
    /// Largest block-length considered while searching a recurrence bound.
    pub max_recurrence: usize,
    /// Worker threads used by the functional-graph scan (1 = sequential).
    pub jobs: usize,
    /// Longest language word examined by the bounded-delay report of a presentation.
    pub delay_bound: usize,
    /// Delay `N` tested by that report.
    pub delay_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_word_len: 10_000_000,
            max_iterates: 64,
            enum_cap: 10_000_000,
            rank_cap: 360,
            closure_cap: 100_000,
            max_recurrence: 4096,
            jobs: 1,
            delay_bound: 16,
            delay_n: 4,
        }
    }
}
