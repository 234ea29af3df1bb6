//! Exact rational edge weights.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, Zero};

/// An exact rational weight backed by `Ratio<i64>`.
///
/// Arithmetic is checked; overflow of the 64-bit numerator or denominator
/// panics instead of wrapping.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(Ratio<i64>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse weight `{text}`")]
pub struct ParseWeightError {
    pub text: String,
}

impl Weight {
    pub const ZERO: Weight = Weight(Ratio::new_raw(0, 1));
    pub const ONE: Weight = Weight(Ratio::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator in weight");
        Weight(Ratio::new(numer, denom))
    }

    pub fn from_integer(value: i64) -> Self {
        Weight(Ratio::from_integer(value))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Weight(self.0.abs())
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        self.0.checked_add(&other.0).map(Weight)
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0.checked_sub(&other.0).map(Weight)
    }

    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        self.0.checked_mul(&other.0).map(Weight)
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        self.0.checked_div(&other.0).map(Weight)
    }

    /// Divides by a positive count, as when spreading a weight over edges.
    pub fn div_count(&self, count: usize) -> Self {
        let count = i64::try_from(count).expect("count fits in i64");
        *self / Weight::from_integer(count)
    }

    /// Approximate value, for display and statistics only.
    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

fn overflow() -> ! {
    panic!("weight arithmetic overflowed 64-bit rationals")
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        self.checked_add(&rhs).unwrap_or_else(|| overflow())
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, rhs: Weight) {
        *self = *self + rhs;
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        self.checked_sub(&rhs).unwrap_or_else(|| overflow())
    }
}

impl SubAssign for Weight {
    fn sub_assign(&mut self, rhs: Weight) {
        *self = *self - rhs;
    }
}

impl Mul for Weight {
    type Output = Weight;
    fn mul(self, rhs: Weight) -> Weight {
        self.checked_mul(&rhs).unwrap_or_else(|| overflow())
    }
}

impl Div for Weight {
    type Output = Weight;
    fn div(self, rhs: Weight) -> Weight {
        assert!(!rhs.is_zero(), "division of a weight by zero");
        self.checked_div(&rhs).unwrap_or_else(|| overflow())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight::ZERO - self
    }
}

impl Sum for Weight {
    fn sum<I: Iterator<Item = Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, |acc, w| acc + w)
    }
}

impl<'a> Sum<&'a Weight> for Weight {
    fn sum<I: Iterator<Item = &'a Weight>>(iter: I) -> Weight {
        iter.fold(Weight::ZERO, |acc, w| acc + *w)
    }
}

impl From<i64> for Weight {
    fn from(value: i64) -> Self {
        Weight::from_integer(value)
    }
}

impl From<i32> for Weight {
    fn from(value: i32) -> Self {
        Weight::from_integer(i64::from(value))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts integers (`-3`), fractions (`7/2`) and finite decimals (`1.25`).
impl FromStr for Weight {
    type Err = ParseWeightError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || ParseWeightError {
            text: String::from(text),
        };
        let trimmed = text.trim();
        if let Some((num, den)) = trimmed.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| err())?;
            let den: i64 = den.trim().parse().map_err(|_| err())?;
            if den == 0 {
                return Err(err());
            }
            return Ok(Weight(Ratio::new(num, den)));
        }
        if let Some((int_part, frac_part)) = trimmed.split_once('.') {
            let negative = int_part.starts_with('-');
            let digits = int_part.trim_start_matches(['-', '+']);
            if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let int_value: i64 = if digits.is_empty() {
                0
            } else {
                digits.parse().map_err(|_| err())?
            };
            let scale = 10i64.checked_pow(frac_part.len() as u32).ok_or_else(err)?;
            let frac_value: i64 = frac_part.parse().map_err(|_| err())?;
            let magnitude = int_value
                .checked_mul(scale)
                .and_then(|v| v.checked_add(frac_value))
                .ok_or_else(err)?;
            let numer = if negative { -magnitude } else { magnitude };
            return Ok(Weight(Ratio::new(numer, scale)));
        }
        let value: i64 = trimmed.parse().map_err(|_| err())?;
        Ok(Weight::from_integer(value))
    }
}

/// Integer images of a list of weights under a common positive scale.
///
/// `values[i] == weights[i] * scale` exactly. Used by the combinatorial
/// subroutines (matching, flows, dynamic programming) that run on integers.
#[derive(Debug, Clone)]
pub struct ScaledWeights {
    pub values: Vec<i64>,
    pub scale: i64,
}

impl ScaledWeights {
    pub fn new<'a>(weights: impl IntoIterator<Item = &'a Weight>) -> Self {
        let weights: Vec<Weight> = weights.into_iter().copied().collect();
        let scale = weights.iter().fold(1i64, |acc, w| acc.lcm(&w.denom()));
        let values = weights
            .iter()
            .map(|w| {
                w.numer()
                    .checked_mul(scale / w.denom())
                    .unwrap_or_else(|| overflow())
            })
            .collect();
        ScaledWeights { values, scale }
    }

    pub fn unscale(&self, value: i64) -> Weight {
        Weight::new(value, self.scale)
    }

    pub fn unscale_wide(&self, value: i128) -> Weight {
        let value = i64::try_from(value).unwrap_or_else(|_| overflow());
        self.unscale(value)
    }
}

/// Total order used to break ties between equal-weight candidates:
/// weight, then number of vertices, then lexicographic vertex sequence.
pub fn compare_candidates(a: (&Weight, &[usize]), b: (&Weight, &[usize])) -> Ordering {
    a.0.cmp(b.0)
        .then_with(|| a.1.len().cmp(&b.1.len()))
        .then_with(|| a.1.cmp(b.1))
}
