//! Deterministic workloads shared by the benchmarks.

use absectors_core::{build_net, CausalPoset, DiamondId, FieldLetter, FieldWord, NetKind};

pub fn fixture(kind: NetKind) -> CausalPoset {
    build_net(kind).expect("fixture nets are valid")
}

/// A word of `len` letters cycling through the diamonds with a fixed stride.
pub fn striding_word(p: &CausalPoset, len: usize) -> FieldWord {
    let n = p.len();
    let letters = (0..len).map(|k| FieldLetter { o: DiamondId((k * 7 + k / 3) % n), dag: k % 3 == 1 }).collect();
    FieldWord::from_letters(letters)
}
