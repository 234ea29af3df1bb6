//! Representative subsets of pairings.
//!
//! A pairing of a vertex set `U` is compatible with a cut of `U` when no
//! pair crosses it. Over GF(2), the rows of the pairing-versus-cut
//! compatibility matrix span the space relevant to every future completion,
//! so a lightest-first basis of the rows preserves all optima.

use alloc::vec;
use alloc::vec::Vec;

/// Larger universes are left unreduced.
pub const MAX_REDUCED_UNIVERSE: usize = 16;

/// For pairings given lightest first, flags those kept by a greedy basis.
pub fn independent_pairings(universe: &[u8], pairings: &[Vec<(u8, u8)>]) -> Vec<bool> {
    let m = universe.len();
    if m < 4 || m > MAX_REDUCED_UNIVERSE {
        return vec![true; pairings.len()];
    }
    let mut position = [usize::MAX; 64];
    for (i, &p) in universe.iter().enumerate() {
        position[p as usize] = i;
    }
    // The first universe element is always on side 0.
    let cuts = 1usize << (m - 1);
    let words = cuts.div_ceil(64);
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut keep = Vec::with_capacity(pairings.len());
    for pairing in pairings {
        let mut row = vec![0u64; words];
        for cut in 0..cuts {
            let side = |p: u8| {
                let i = position[p as usize];
                i > 0 && cut >> (i - 1) & 1 == 1
            };
            if pairing.iter().all(|&(a, b)| side(a) == side(b)) {
                row[cut / 64] |= 1 << (cut % 64);
            }
        }
        for (pivot, base) in &basis {
            if row[pivot / 64] >> (pivot % 64) & 1 == 1 {
                for (r, b) in row.iter_mut().zip(base) {
                    *r ^= b;
                }
            }
        }
        let pivot = row
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize);
        keep.push(pivot.is_some());
        if let Some(pivot) = pivot {
            basis.push((pivot, row));
        }
    }
    keep
}
