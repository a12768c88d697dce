mod isomorphism;
mod recurrences;
mod system;
mod tree;

pub use recurrences::{
    b_power_w, f_from_system, f_poly, g1_coefficients, h_poly, h_poly_recurrence, p_from_system,
    p_poly, w_power_bw,
};
pub use system::{
    assemble_system, assemble_system_from_word, bareiss_det, default_depth_cap, expand_all,
    h_limit, limit_report, LimitReport, LinearSystem,
};
pub use tree::{
    expand_degenerate_tree, DegenerateTerm, Roots, TermKind, TreeExpansion, MAX_TREE_NODES,
};
pub use isomorphism::{
    alternating_b, alternating_w, same_moves, verify_same_denominator, verify_tree_isomorphism,
    verify_tree_isomorphism_words, DenominatorReport,
};
