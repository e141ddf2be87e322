//! Ensemble weight distribution of the Plotkin concatenation
//! `{(u + vP, v) : u in C0, v in C1}` over a uniformly random interleaver `P`.
//!
//! For components of length `n` the coefficient of `X^w` in the combined
//! enumerator is
//!
//! ```text
//! A_w = sum_{w1 = max(0, w-n)}^{min(w, n)} sum_{i = max(0, w-n)}^{min(w1, w-w1)}
//!           a(w1, i) * A1_{w1} * A0_{w-2i}
//! ```
//!
//! with `a(w1, i)` from [`crate::combinatorics::plotkin_coefficient`].
//!
//! The evaluation rewrites `a(w1, i) A1_{w1} A0_{w-2i}` as
//! `C(n, w-w1) C(w-w1, i) C(n-w+w1, w1-i) * (A1_{w1} / C(n, w1)) * (A0_{w-2i} / C(n, w-2i))`
//! and scales both normalized spectra to integers over a shared denominator,
//! so every weight is a pure big-integer sum followed by one reduction.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinatorics::BinomialTable;
use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};

/// `min(d0, 2 d1)`: minimum distance of the concatenation of codes with
/// minimum distances `d0` and `d1`.
pub fn min_distance_combine(d0: usize, d1: usize) -> usize {
    d0.min(2 * d1)
}

/// Full combined enumerator of length `2n`.
pub fn combine(a0: &WeightEnumerator, a1: &WeightEnumerator) -> Result<WeightEnumerator> {
    let n = check_lengths(a0, a1)?;
    let table = BinomialTable::new(n);
    combine_with_table(&table, a0, a1)
}

/// [`combine`] reusing a prebuilt binomial table (of size at least `n`).
pub fn combine_with_table(
    table: &BinomialTable,
    a0: &WeightEnumerator,
    a1: &WeightEnumerator,
) -> Result<WeightEnumerator> {
    let c = Combiner::new(table, a0, a1)?;
    Ok(WeightEnumerator::from_vec_unchecked(
        c.coefficients(2 * c.n),
    ))
}

/// Coefficient `A_w` of the combined enumerator, in `O(n^2)` big-integer
/// operations and without touching other weights.
pub fn combine_single_weight(
    a0: &WeightEnumerator,
    a1: &WeightEnumerator,
    w: usize,
) -> Result<BigRational> {
    let n = check_lengths(a0, a1)?;
    check_weight(w, 2 * n)?;
    let table = BinomialTable::new(n);
    Ok(Combiner::new(&table, a0, a1)?.coefficient(w))
}

/// Coefficients `A_0..=A_max_w` of the combined enumerator.
pub fn combine_partial(
    a0: &WeightEnumerator,
    a1: &WeightEnumerator,
    max_w: usize,
) -> Result<Vec<BigRational>> {
    let n = check_lengths(a0, a1)?;
    check_weight(max_w, 2 * n)?;
    let table = BinomialTable::new(n);
    combine_partial_with_table(&table, a0, a1, max_w)
}

pub fn combine_partial_with_table(
    table: &BinomialTable,
    a0: &WeightEnumerator,
    a1: &WeightEnumerator,
    max_w: usize,
) -> Result<Vec<BigRational>> {
    let c = Combiner::new(table, a0, a1)?;
    check_weight(max_w, 2 * c.n)?;
    Ok(c.coefficients(max_w))
}

fn check_lengths(a0: &WeightEnumerator, a1: &WeightEnumerator) -> Result<usize> {
    if a0.length() != a1.length() {
        return Err(Error::LengthMismatch {
            left: a0.length(),
            right: a1.length(),
        });
    }
    if a0.length() == 0 {
        return Err(Error::Domain("component length must be at least 1".into()));
    }
    Ok(a0.length())
}

fn check_weight(w: usize, max: usize) -> Result<()> {
    if w > max {
        return Err(Error::Range {
            what: "weight",
            value: w as i64,
            min: 0,
            max: max as i64,
        });
    }
    Ok(())
}

/// Component spectra normalized by sphere sizes and scaled to integers.
struct Combiner<'t> {
    n: usize,
    table: &'t BinomialTable,
    /// `A0_j / C(n, j) * d0`
    scaled0: Vec<BigUint>,
    /// `A1_j / C(n, j) * d1`
    scaled1: Vec<BigUint>,
    /// `d0 * d1`
    denominator: BigInt,
}

impl<'t> Combiner<'t> {
    fn new(table: &'t BinomialTable, a0: &WeightEnumerator, a1: &WeightEnumerator) -> Result<Self> {
        let n = check_lengths(a0, a1)?;
        if table.max_n() < n {
            return Err(Error::Domain(format!(
                "binomial table of size {} too small for length {n}",
                table.max_n()
            )));
        }
        let (scaled0, d0) = normalize(table, a0);
        let (scaled1, d1) = normalize(table, a1);
        Ok(Combiner {
            n,
            table,
            scaled0,
            scaled1,
            denominator: BigInt::from(d0 * d1),
        })
    }

    fn coefficients(&self, max_w: usize) -> Vec<BigRational> {
        (0..=max_w)
            .into_par_iter()
            .map(|w| self.coefficient(w))
            .collect()
    }

    fn coefficient(&self, w: usize) -> BigRational {
        let n = self.n;
        let lo = w.saturating_sub(n);
        let mut total = BigUint::zero();
        for w1 in lo..=w.min(n) {
            let s1 = &self.scaled1[w1];
            if s1.is_zero() {
                continue;
            }
            let outer = w - w1;
            let mut inner = BigUint::zero();
            for i in lo..=w1.min(outer) {
                let s0 = &self.scaled0[w - 2 * i];
                if s0.is_zero() {
                    continue;
                }
                // Zero when w1 - i exceeds n - w + w1, i.e. below the overlap floor.
                let overlaps =
                    self.table.get(outer, i as i64) * self.table.get(n - outer, (w1 - i) as i64);
                inner += overlaps * s0;
            }
            if inner.is_zero() {
                continue;
            }
            total += inner * self.table.get(n, outer as i64) * s1;
        }
        BigRational::new(BigInt::from(total), self.denominator.clone())
    }
}

/// Returns `(s, d)` with `s_j = d * A_j / C(n, j)` integral and `d` the least
/// such positive integer.
fn normalize(table: &BinomialTable, a: &WeightEnumerator) -> (Vec<BigUint>, BigUint) {
    let n = a.length();
    let ratios: Vec<BigRational> = a
        .coeffs()
        .iter()
        .enumerate()
        .map(|(j, c)| c / BigRational::from_integer(BigInt::from(table.get(n, j as i64).clone())))
        .collect();
    let mut d = BigInt::one();
    for r in &ratios {
        if !r.is_zero() {
            d = d.lcm(r.denom());
        }
    }
    let scaled = ratios
        .iter()
        .map(|r| {
            let v = r.numer() * (&d / r.denom());
            v.to_biguint()
                .expect("enumerator coefficients are nonnegative")
        })
        .collect();
    (scaled, d.to_biguint().expect("positive denominator"))
}
