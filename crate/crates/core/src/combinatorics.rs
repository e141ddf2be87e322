//! Exact binomial coefficients and the ensemble coefficient `a(w1, i)` of the
//! Plotkin combine.
//!
//! Binomials outside their support (`k < 0` or `k > n`) are zero. The combine
//! sums are written over loose index ranges and rely on this.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `C(n, k)` by the multiplicative formula, zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: i64) -> BigUint {
    if k < 0 || k as u64 > n as u64 {
        return BigUint::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

/// Pascal's triangle up to row `max_n`, built once and read-only afterwards.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<BigUint>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=max_n {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigUint::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigUint::one());
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// `C(n, k)`; zero outside the support.
    ///
    /// Panics if `n` exceeds the table size.
    pub fn get(&self, n: usize, k: i64) -> &BigUint {
        static ZERO: std::sync::OnceLock<BigUint> = std::sync::OnceLock::new();
        let row = &self.rows[n];
        if k < 0 || k as usize > n {
            return ZERO.get_or_init(BigUint::zero);
        }
        &row[k as usize]
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    /// `a(w1, i)` for components of length `n`, read from the table.
    pub fn plotkin_coefficient(
        &self,
        n: usize,
        w: usize,
        w1: usize,
        i: usize,
    ) -> Result<BigRational> {
        check_coefficient_domain(n, w, w1, i)?;
        if n > self.max_n() {
            return Err(Error::Domain(format!(
                "length {n} exceeds binomial table size {}",
                self.max_n()
            )));
        }
        let (n_, w_, w1_, i_) = (n as i64, w as i64, w1 as i64, i as i64);
        let num = self.get(n, w_ - w1_)
            * self.get((w_ - w1_) as usize, i_)
            * self.get((n_ - w_ + w1_) as usize, w1_ - i_);
        let den = self.get(n, w1_) * self.get(n, w_ - 2 * i_);
        Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

fn check_coefficient_domain(n: usize, w: usize, w1: usize, i: usize) -> Result<()> {
    let lo = w.saturating_sub(n);
    if w > 2 * n {
        return Err(Error::Domain(format!("weight {w} exceeds 2n = {}", 2 * n)));
    }
    if w1 < lo || w1 > w.min(n) {
        return Err(Error::Domain(format!(
            "w1 = {w1} outside {lo}..={} for n = {n}, w = {w}",
            w.min(n)
        )));
    }
    if i < lo || i > w1.min(w - w1) {
        return Err(Error::Domain(format!(
            "i = {i} outside {lo}..={} for n = {n}, w = {w}, w1 = {w1}",
            w1.min(w - w1)
        )));
    }
    Ok(())
}

/// The ensemble coefficient
///
/// ```text
///             C(n, w-w1) C(w-w1, i) C(n-w+w1, w1-i)
/// a(w1, i) = -----------------------------------
///                   C(n, w1) C(n, w-2i)
/// ```
///
/// i.e. the number of weight-`w` words of length `2n` whose right half has
/// weight `w1` and whose halves overlap in `i` positions after interleaving,
/// normalized by the two component sphere sizes.
pub fn plotkin_coefficient(n: usize, w: usize, w1: usize, i: usize) -> Result<BigRational> {
    check_coefficient_domain(n, w, w1, i)?;
    let (n_, w_, w1_, i_) = (n as i64, w as i64, w1 as i64, i as i64);
    let num = binomial(n, w_ - w1_)
        * binomial((w_ - w1_) as usize, i_)
        * binomial((n_ - w_ + w1_) as usize, w1_ - i_);
    let den = binomial(n, w1_) * binomial(n, w_ - 2 * i_);
    Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
}
