//! Ground truth for the closed-form combine.
//!
//! * [`exact_wef_bruteforce`] enumerates the row space of a generator matrix.
//! * [`ensemble_wef_exhaustive`] averages the spectrum of
//!   `{(u + vP, v)}` over all `n!` interleavers `P`.
//! * [`ensemble_wef_montecarlo`] samples interleavers from a seeded
//!   `ChaCha8Rng` (`rand_chacha`, seeded with `seed_from_u64`) and
//!   Fisher-Yates shuffles.
//!
//! None of these use the combine formula; they build the generator
//! `[(G0 | 0); (G1 P | G1)]` of each concatenated code and count codewords.

mod matrix;
mod permutation;

pub use matrix::BinaryMatrix;
pub use permutation::{uniform_permutation, AllPermutations, Permutation};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};
use matrix::words_for;

/// Largest number of generator rows enumerated by brute force.
pub const MAX_BRUTEFORCE_ROWS: usize = 24;
/// Largest component length averaged over all permutations.
pub const MAX_EXHAUSTIVE_LENGTH: usize = 7;
/// Largest `k0 + k1` averaged over all permutations.
pub const MAX_EXHAUSTIVE_ROWS: usize = 16;

/// Exact spectrum of the row space of `g`. Dependent rows are reduced first,
/// so the mass is `2^rank(g)`.
pub fn exact_wef_bruteforce(g: &BinaryMatrix) -> Result<WeightEnumerator> {
    if g.rows() > MAX_BRUTEFORCE_ROWS {
        return Err(Error::Budget(format!(
            "{} generator rows exceed the brute-force limit of {MAX_BRUTEFORCE_ROWS}",
            g.rows()
        )));
    }
    let basis = g.row_basis();
    let mut counts = vec![0u64; g.cols() + 1];
    accumulate_row_space(basis.packed_rows(), words_for(g.cols()), &mut counts);
    WeightEnumerator::from_counts(counts)
}

/// Adds the weight histogram of the span of `rows` (assumed independent)
/// to `counts`, walking the span in Gray-code order.
fn accumulate_row_space(rows: &[Vec<u64>], words: usize, counts: &mut [u64]) {
    let mut word = vec![0u64; words];
    counts[0] += 1;
    for step in 1u64..(1u64 << rows.len()) {
        let flip = step.trailing_zeros() as usize;
        word.iter_mut().zip(&rows[flip]).for_each(|(a, b)| *a ^= b);
        let w: u32 = word.iter().map(|x| x.count_ones()).sum();
        counts[w as usize] += 1;
    }
}

/// Packed rows of the generator of `{(u + vP, v)}`: `(g0 | 0)` for each row
/// of `basis0` and `(g1 P | g1)` for each row of `basis1`.
fn concatenated_rows(
    basis0: &BinaryMatrix,
    basis1: &BinaryMatrix,
    perm: &Permutation,
) -> Result<Vec<Vec<u64>>> {
    let n = basis0.cols();
    let permuted = basis1.permute_columns(perm)?;
    let mut out = Vec::with_capacity(basis0.rows() + basis1.rows());
    let mut push = |left: Option<&[u64]>, right: Option<&[u64]>| {
        let mut row = vec![0u64; words_for(2 * n)];
        for (offset, half) in [(0, left), (n, right)] {
            let Some(half) = half else { continue };
            for j in 0..n {
                if half[j / 64] >> (j % 64) & 1 == 1 {
                    let t = offset + j;
                    row[t / 64] |= 1 << (t % 64);
                }
            }
        }
        out.push(row);
    };
    for g in basis0.packed_rows() {
        push(Some(g), None);
    }
    for (gp, g) in permuted.packed_rows().iter().zip(basis1.packed_rows()) {
        push(Some(gp), Some(g));
    }
    Ok(out)
}

fn check_pair(g0: &BinaryMatrix, g1: &BinaryMatrix) -> Result<usize> {
    if g0.cols() != g1.cols() {
        return Err(Error::LengthMismatch {
            left: g0.cols(),
            right: g1.cols(),
        });
    }
    if g0.cols() == 0 {
        return Err(Error::InvalidMatrix(
            "component length must be at least 1".into(),
        ));
    }
    Ok(g0.cols())
}

/// Average spectrum of `{(u + vP, v) : u in rowspace(g0), v in rowspace(g1)}`
/// over all `n!` permutations `P`, as exact rationals.
pub fn ensemble_wef_exhaustive(g0: &BinaryMatrix, g1: &BinaryMatrix) -> Result<WeightEnumerator> {
    let n = check_pair(g0, g1)?;
    if n > MAX_EXHAUSTIVE_LENGTH {
        return Err(Error::Budget(format!(
            "length {n} exceeds the exhaustive-permutation limit of {MAX_EXHAUSTIVE_LENGTH}"
        )));
    }
    if g0.rows() + g1.rows() > MAX_EXHAUSTIVE_ROWS {
        return Err(Error::Budget(format!(
            "k0 + k1 = {} exceeds the exhaustive limit of {MAX_EXHAUSTIVE_ROWS}",
            g0.rows() + g1.rows()
        )));
    }
    let (b0, b1) = (g0.row_basis(), g1.row_basis());
    let mut counts = vec![0u64; 2 * n + 1];
    let mut perms = 0u64;
    for perm in Permutation::all(n) {
        let rows = concatenated_rows(&b0, &b1, &perm)?;
        accumulate_row_space(&rows, words_for(2 * n), &mut counts);
        perms += 1;
    }
    let denom = BigInt::from(perms);
    WeightEnumerator::new(
        counts
            .into_iter()
            .map(|c| BigRational::new(BigInt::from(c), denom.clone()))
            .collect(),
    )
}

/// Sample mean spectrum and per-weight standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloEstimate {
    /// Exact mean of the sampled spectra.
    pub mean: WeightEnumerator,
    /// Sample standard deviation over `sqrt(samples)`, per weight.
    pub std_errors: Vec<f64>,
    pub samples: u64,
}

/// Mean spectrum of `{(u + vP, v)}` over `samples` interleavers drawn with
/// `ChaCha8Rng::seed_from_u64(seed)`.
pub fn ensemble_wef_montecarlo(
    g0: &BinaryMatrix,
    g1: &BinaryMatrix,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    let n = check_pair(g0, g1)?;
    if samples == 0 {
        return Err(Error::Range {
            what: "samples",
            value: 0,
            min: 1,
            max: i64::MAX,
        });
    }
    if g0.rows() + g1.rows() > MAX_BRUTEFORCE_ROWS {
        return Err(Error::Budget(format!(
            "k0 + k1 = {} exceeds the Monte-Carlo limit of {MAX_BRUTEFORCE_ROWS}",
            g0.rows() + g1.rows()
        )));
    }
    let (b0, b1) = (g0.row_basis(), g1.row_basis());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = vec![0u64; 2 * n + 1];
    let mut sum_sq = vec![0u128; 2 * n + 1];
    let mut counts = vec![0u64; 2 * n + 1];
    for _ in 0..samples {
        let perm = uniform_permutation(n, &mut rng);
        counts.iter_mut().for_each(|c| *c = 0);
        let rows = concatenated_rows(&b0, &b1, &perm)?;
        accumulate_row_space(&rows, words_for(2 * n), &mut counts);
        for (w, &c) in counts.iter().enumerate() {
            sum[w] += c;
            sum_sq[w] += u128::from(c) * u128::from(c);
        }
    }
    let s = samples as f64;
    let std_errors = sum
        .iter()
        .zip(&sum_sq)
        .map(|(&t, &q)| {
            if samples < 2 {
                return 0.0;
            }
            let mean = t as f64 / s;
            let var = ((q as f64) - s * mean * mean).max(0.0) / (s - 1.0);
            (var / s).sqrt()
        })
        .collect();
    let denom = BigInt::from(samples);
    let mean = WeightEnumerator::new(
        sum.into_iter()
            .map(|t| BigRational::new(BigInt::from(t), denom.clone()))
            .collect(),
    )?;
    Ok(MonteCarloEstimate {
        mean,
        std_errors,
        samples,
    })
}
