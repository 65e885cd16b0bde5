//! Fixed inputs shared by the benchmarks.

use polyaut::{random_tame, PolyMap, TameWord};

/// Seeded tame words of increasing length in `n` variables.
pub fn words(n: usize, lengths: &[usize]) -> Vec<(usize, TameWord)> {
    lengths
        .iter()
        .map(|&len| (len, random_tame(n, len, 3, 17 + len as u64)))
        .collect()
}

/// The evaluated words of [`words`].
pub fn maps(n: usize, lengths: &[usize]) -> Vec<(usize, PolyMap)> {
    words(n, lengths)
        .into_iter()
        .map(|(len, w)| (len, w.eval_map()))
        .collect()
}
