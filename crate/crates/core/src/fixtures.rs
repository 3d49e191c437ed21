//! Tables that appear in the source material, bundled for tests and the CLI.

use crate::magma::Magma;

fn named(rows: &[[usize; 4]], names: [&str; 4]) -> Magma {
    Magma::from_rows(rows)
        .and_then(|m| m.with_names(names))
        .expect("fixture is well formed")
}

/// The right modular idempotent quasigroup of order 4 (elements `1..4`).
pub fn w() -> Magma {
    named(
        &[[0, 2, 3, 1], [3, 1, 0, 2], [1, 3, 2, 0], [2, 0, 1, 3]],
        ["1", "2", "3", "4"],
    )
}

/// The chain `{a, b}` with `ab = ba = b`.
pub fn chain() -> Magma {
    Magma::from_rows(&[[0, 1], [1, 1]])
        .and_then(|m| m.with_names(["a", "b"]))
        .expect("fixture is well formed")
}

/// The chain with an identity `1` adjoined, on `{a, b, 1}`.
pub fn c1() -> Magma {
    Magma::from_rows(&[[0, 1, 0], [1, 1, 1], [0, 1, 2]])
        .and_then(|m| m.with_names(["a", "b", "1"]))
        .expect("fixture is well formed")
}

/// `C¹ ∪ {x}` as originally tabulated, on `{a, b, 1, x}`; its cell `a·x` is `b`.
pub fn ex2_printed() -> Magma {
    named(
        &[[0, 1, 0, 1], [1, 1, 1, 1], [0, 1, 2, 2], [1, 1, 2, 2]],
        ["a", "b", "1", "x"],
    )
}

/// `C¹ ∪ {x}` generated from the stated maps through the product law. It differs
/// from [`ex2_printed`] only at `a·x`, which is `a·(β_x a) = a·a = a`.
pub fn ex2_derived() -> Magma {
    named(
        &[[0, 1, 0, 0], [1, 1, 1, 1], [0, 1, 2, 2], [1, 1, 2, 2]],
        ["a", "b", "1", "x"],
    )
}

pub const NAMES: [&str; 5] = ["W", "EX2_PRINTED", "EX2_DERIVED", "C1", "C"];

pub fn all() -> Vec<(&'static str, Magma)> {
    vec![
        ("W", w()),
        ("EX2_PRINTED", ex2_printed()),
        ("EX2_DERIVED", ex2_derived()),
        ("C1", c1()),
        ("C", chain()),
    ]
}

pub fn by_name(name: &str) -> Option<Magma> {
    all()
        .into_iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|(_, m)| m)
}
