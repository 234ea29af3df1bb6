//! `(n, k)`-universal families: every `k`-subset `S` of `0..n` sees all
//! `2^k` patterns `A ∩ S` for `A` in the family.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest ground set a family can be built over; members are `u128` masks.
pub const MAX_GROUND_SET: usize = 128;

/// Up to this many `(subset, pattern)` pairs the family is built greedily
/// and verified exhaustively.
const EXHAUSTIVE_PAIR_BUDGET: u128 = 1 << 16;
/// Exhaustive verification cost cap, counted in subset-member intersections.
const EXHAUSTIVE_CHECK_BUDGET: u128 = 1 << 30;
const SAMPLED_SUBSETS: usize = 20_000;
const FAMILY_SEED: u64 = 0x5eed_u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalSetFamily {
    pub n: usize,
    pub k: usize,
    /// Members as bit masks over `0..n`.
    pub sets: Vec<u128>,
}

impl UniversalSetFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, member: usize, element: usize) -> bool {
        self.sets[member] >> element & 1 == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniversalityCheck {
    Universal {
        /// False when only sampled subsets were checked.
        exhaustive: bool,
    },
    /// `subset` never meets a member in exactly `pattern`.
    Missing {
        subset: Vec<usize>,
        pattern: Vec<usize>,
    },
}

impl UniversalityCheck {
    pub fn is_universal(&self) -> bool {
        matches!(self, UniversalityCheck::Universal { .. })
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn full_mask(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

/// Calls `visit` with every `k`-subset of `0..n` as a mask, in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(u128) -> bool) {
    let mut picked: Vec<usize> = (0..k).collect();
    loop {
        let mask = picked.iter().fold(0u128, |m, &i| m | 1 << i);
        if !visit(mask) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| picked[i] < n - k + i) else {
            return;
        };
        picked[i] += 1;
        for j in i + 1..k {
            picked[j] = picked[j - 1] + 1;
        }
    }
}

fn bits(mask: u128) -> Vec<usize> {
    (0..128).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Compresses the bits of `value` selected by `mask` into the low bits.
fn extract(value: u128, mask: u128) -> usize {
    let mut out = 0usize;
    for (j, i) in bits(mask).into_iter().enumerate() {
        out |= ((value >> i & 1) as usize) << j;
    }
    out
}

/// Builds a verified `(n, k)`-universal family.
///
/// `k = n` gives all subsets. Small instances are covered greedily, fixing
/// one element at a time so as to maximise the expected number of newly
/// covered `(subset, pattern)` pairs; this always covers at least one pair
/// per member. Larger ones draw seeded random members until verification
/// passes.
pub fn build_universal_set(n: usize, k: usize) -> Result<UniversalSetFamily> {
    if k > n {
        return Err(Error::InvalidInput(alloc::format!(
            "universal set with k = {k} > n = {n}"
        )));
    }
    if n > MAX_GROUND_SET {
        return Err(Error::ParameterTooLarge {
            parameter: "universal set ground size",
            value: n,
            limit: MAX_GROUND_SET,
        });
    }
    let family = if k == 0 {
        UniversalSetFamily {
            n,
            k,
            sets: vec![0],
        }
    } else if k == n {
        if n > 24 {
            return Err(Error::ParameterTooLarge {
                parameter: "universal set size exponent",
                value: n,
                limit: 24,
            });
        }
        UniversalSetFamily {
            n,
            k,
            sets: (0..1u128 << n).collect(),
        }
    } else if binomial(n, k) << k <= EXHAUSTIVE_PAIR_BUDGET {
        greedy_family(n, k)
    } else {
        random_family(n, k)
    };
    debug_assert!(verify_universal(&family).is_universal());
    Ok(family)
}

fn greedy_family(n: usize, k: usize) -> UniversalSetFamily {
    // Uncovered pairs as (subset mask, pattern mask within the subset).
    let mut pending: Vec<(u128, u128)> = Vec::new();
    for_each_subset(n, k, |subset| {
        let members = bits(subset);
        for code in 0..1usize << k {
            let pattern = members
                .iter()
                .enumerate()
                .filter(|(j, _)| code >> j & 1 == 1)
                .fold(0u128, |m, (_, &i)| m | 1 << i);
            pending.push((subset, pattern));
        }
        true
    });
    let mut sets = Vec::new();
    while !pending.is_empty() {
        let mut decided = 0u128;
        let mut chosen = 0u128;
        for element in 0..n {
            let bit = 1u128 << element;
            let score = |with: bool| -> f64 {
                let decided = decided | bit;
                let chosen = if with { chosen | bit } else { chosen };
                pending
                    .iter()
                    .filter(|&&(subset, pattern)| (chosen ^ pattern) & subset & decided == 0)
                    .map(|&(subset, _)| 0.5f64.powi((subset & !decided).count_ones() as i32))
                    .sum()
            };
            if score(true) > score(false) {
                chosen |= bit;
            }
            decided |= bit;
        }
        pending.retain(|&(subset, pattern)| chosen & subset != pattern);
        sets.push(chosen);
    }
    UniversalSetFamily { n, k, sets }
}

fn random_family(n: usize, k: usize) -> UniversalSetFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(FAMILY_SEED);
    // Expected uncovered pairs below 1/e^3 for this many uniform members.
    let pairs = binomial(n, k) as f64 * (1u64 << k) as f64;
    let target = ((pairs.ln() + 3.0) * (1u64 << k) as f64).ceil() as usize;
    let mask = full_mask(n);
    let mut sets: Vec<u128> = (0..target).map(|_| rng.gen::<u128>() & mask).collect();
    loop {
        let family = UniversalSetFamily { n, k, sets };
        if verify_universal(&family).is_universal() {
            return family;
        }
        sets = family.sets;
        sets.extend((0..1usize << k).map(|_| rng.gen::<u128>() & mask));
    }
}

fn check_subset(
    family: &UniversalSetFamily,
    subset: u128,
    seen: &mut [bool],
) -> Option<UniversalityCheck> {
    seen.iter_mut().for_each(|s| *s = false);
    for &set in &family.sets {
        seen[extract(set, subset)] = true;
    }
    let code = seen.iter().position(|&s| !s)?;
    let members = bits(subset);
    let pattern = members
        .iter()
        .enumerate()
        .filter(|(j, _)| code >> j & 1 == 1)
        .map(|(_, &i)| i)
        .collect();
    Some(UniversalityCheck::Missing {
        subset: members,
        pattern,
    })
}

/// Checks every `k`-subset when that is affordable, otherwise a seeded
/// sample of them.
pub fn verify_universal(family: &UniversalSetFamily) -> UniversalityCheck {
    let (n, k) = (family.n, family.k);
    if k > n || k > 24 {
        return UniversalityCheck::Missing {
            subset: Vec::new(),
            pattern: Vec::new(),
        };
    }
    let mut seen = vec![false; 1 << k];
    let mut missing = None;
    if binomial(n, k) * family.sets.len().max(1) as u128 <= EXHAUSTIVE_CHECK_BUDGET {
        for_each_subset(n, k, |subset| {
            missing = check_subset(family, subset, &mut seen);
            missing.is_none()
        });
        return missing.unwrap_or(UniversalityCheck::Universal { exhaustive: true });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(FAMILY_SEED ^ 1);
    for _ in 0..SAMPLED_SUBSETS {
        let mut members: Vec<usize> = rand::seq::index::sample(&mut rng, n, k).into_vec();
        members.sort_unstable();
        let subset = members.iter().fold(0u128, |m, &i| m | 1 << i);
        if let Some(found) = check_subset(family, subset, &mut seen) {
            return found;
        }
    }
    UniversalityCheck::Universal { exhaustive: false }
}
