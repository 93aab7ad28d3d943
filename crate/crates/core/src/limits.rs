//! Tractability caps shared by the search routines.

/// Size caps for the exponential routines. Every cap is explicit so callers
/// can raise it knowingly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest pattern accepted by containment queries.
    pub max_pattern_rows: usize,
    pub max_pattern_cols: usize,
    /// `brute_force_min_edit` enumerates `s^(mn)` matrices; `mn` is capped here.
    pub brute_force_cells: usize,
    pub brute_force_symbols: usize,
    /// Exhaustive regularity checking walks `2^m * 2^n` subset pairs.
    pub exhaustive_regularity_vertices: usize,
    /// Number of raw matrices `s^(mn)` `extremal_f` may enumerate.
    pub extremal_matrices: u64,
    /// Number of row x column permutations used for symmetry reduction.
    pub extremal_permutations: u64,
    /// Occurrence sweeps enumerate `s^(l*l)` target colorings.
    pub sweep_max_side: usize,
    pub sweep_max_colors: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_pattern_rows: 4,
            max_pattern_cols: 4,
            brute_force_cells: 12,
            brute_force_symbols: 3,
            exhaustive_regularity_vertices: 16,
            extremal_matrices: 1 << 16,
            extremal_permutations: 40_320,
            sweep_max_side: 2,
            sweep_max_colors: 3,
        }
    }
}
