#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use plotkin_wef::{BinaryMatrix, WeightEnumerator};
use rand::Rng;

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn poly(s: &str, n: usize) -> WeightEnumerator {
    WeightEnumerator::parse_poly(s, n).unwrap()
}

pub fn mat(n: usize, rows: &[&str]) -> BinaryMatrix {
    BinaryMatrix::from_strings(n, rows).unwrap()
}

/// `k` uniformly random rows of length `n` (possibly dependent).
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, k: usize) -> BinaryMatrix {
    let rows: Vec<Vec<bool>> = (0..k)
        .map(|_| (0..n).map(|_| rng.gen_bool(0.5)).collect())
        .collect();
    BinaryMatrix::from_bool_rows(n, &rows).unwrap()
}

/// Random nonnegative rational spectrum of length `n` with `A_0 = 1`.
pub fn random_spectrum<R: Rng>(rng: &mut R, n: usize) -> WeightEnumerator {
    let mut coeffs = vec![ratio(1, 1)];
    for _ in 0..n {
        let c = if rng.gen_bool(0.3) {
            ratio(0, 1)
        } else {
            ratio(rng.gen_range(0..1000), rng.gen_range(1..50))
        };
        coeffs.push(c);
    }
    WeightEnumerator::new(coeffs).unwrap()
}
