//! Reference data for three particles on the bundled four-edge theta graph
//! (`fixtures/theta4_appendix.json`): critical cells, relators and the reduced one-relator form.

/// Critical 1-cells g0, …, g24 in `{e_τ^ι, …}` notation.
pub const THETA4_GENERATORS: [&str; 25] = [
    "{e2^7,3,8}", "{e2^5,3,7}", "{e8^11,0,9}", "{e8^13,11,12}", "{e8^13,9,11}",
    "{e2^5,3,4}", "{e4^12,0,1}", "{e8^13,9,14}", "{e2^5,3,6}", "{e8^13,0,11}",
    "{e8^11,9,13}", "{e8^11,9,12}", "{e8^13,9,10}", "{e8^13,11,14}", "{e8^11,9,10}",
    "{e2^7,3,5}", "{e2^7,5,8}", "{e8^13,0,9}", "{e2^5,0,3}", "{e0^14,1,2}",
    "{e2^7,0,3}", "{e2^7,0,5}", "{e6^10,0,1}", "{e2^7,5,6}", "{e2^7,3,4}",
];

/// Critical 2-cells with their reduced boundary words. The listed vertex label is one
/// above the vertex of the cell as enumerated here; the edge pair identifies the cell.
pub const THETA4_RELATORS: [(&str, &str); 21] = [
    ("{e0^14,e2^7,6}", "g19 g21^-1 g19^-1 g16"),
    ("{e2^7,e4^12,6}", "g15 g18 g6^-1 g16^-1 g6 g20^-1 g1^-1"),
    ("{e6^10,e8^13,10}", "g22 g21^-1 g16^-1 g17^-1 g16 g21 g22^-1 g17^-1 g12"),
    ("{e4^12,e8^13,10}", "g6 g20^-1 g0^-1 g17^-1 g0 g20 g6^-1 g9^-1 g4"),
    ("{e0^14,e6^10,2}", "g19 g22^-1 g19^-1 g17 g22 g21^-1"),
    ("{e0^14,e8^13,10}", "g19 g17^-1 g19^-1 g7"),
    ("{e4^12,e8^13,12}", "g6 g20^-1 g0^-1 g9^-1 g0 g20 g6^-1 g9^-1 g3"),
    ("{e2^7,e4^12,4}", "g24 g6^-1 g0^-1 g6 g20^-1"),
    ("{e2^7,e6^10,6}", "g23 g22^-1 g16^-1 g22 g21^-1"),
    ("{e0^14,e8^11,10}", "g19 g2^-1 g19^-1 g10"),
    ("{e6^10,e8^13,12}", "g2 g22 g21^-1 g16^-1 g9^-1 g16 g21 g22^-1 g17^-1 g10^-1 g4"),
    ("{e2^5,e4^12,4}", "g5 g6^-1 g1^-1 g6 g18^-1"),
    ("{e4^12,e8^11,10}", "g6 g20^-1 g0^-1 g2^-1 g0 g20 g6^-1 g11"),
    ("{e0^14,e2^7,4}", "g19 g20^-1 g19^-1 g0"),
    ("{e6^10,e8^11,10}", "g22 g21^-1 g16^-1 g2^-1 g16 g21 g22^-1 g2^-1 g14"),
    ("{e4^12,e6^10,1}", "g6 g18^-1 g22^-1 g20 g6^-1 g2 g22 g21^-1"),
    ("{e0^14,e8^13,12}", "g19 g9^-1 g19^-1 g13"),
    ("{e2^5,e6^10,4}", "g8 g22^-1 g1^-1 g22"),
    ("{e0^14,e2^5,4}", "g19 g18^-1 g19^-1 g1"),
    ("{e2^7,e6^10,4}", "g15 g22^-1 g0^-1 g22 g21^-1"),
    ("{e0^14,e4^12,2}", "g19 g6^-1 g19^-1 g9 g6 g20^-1"),
];

/// Surviving generators of the one-relator form.
pub const THETA4_REDUCED_GENERATORS: [&str; 6] = ["g18", "g20", "g21", "g22", "g6", "g19"];

pub const THETA4_REDUCED_RELATOR: &str =
    "g21 g22^-1 g19 g20 g19^-1 g22 g18 g6^-1 g19 g21^-1 g19^-1 g6 g20^-1 g19 g18^-1 g19^-1";

/// Geometric meaning of the surviving generators.
pub const THETA4_DICTIONARY: [(&str, &str); 6] = [
    ("g18", "sigma1[2;2,1]"),
    ("g20", "sigma1[2;3,1]"),
    ("g21", "sigma1[2;3,2]"),
    ("g22", "gamma1"),
    ("g6", "gamma2"),
    ("g19", "delta"),
];

/// Names g0, …, g24.
pub fn theta4_names() -> Vec<String> {
    (0..THETA4_GENERATORS.len()).map(|i| format!("g{i}")).collect()
}
