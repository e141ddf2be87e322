use rand::Rng;

use crate::error::{Error, Result};

/// A bijection on `{0, ..., n-1}`; `image(j)` is where coordinate `j` goes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub fn from_vec(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &t in &map {
            if t >= map.len() || std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{map:?} is not a bijection"
                )));
            }
        }
        Ok(Permutation { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn image(&self, j: usize) -> usize {
        self.map[j]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (j, &t) in self.map.iter().enumerate() {
            inv[t] = j;
        }
        Permutation { map: inv }
    }

    /// Permutes the low `len()` bits of `mask`: bit `j` moves to bit `image(j)`.
    pub fn apply_to_mask(&self, mask: u64) -> u64 {
        self.map
            .iter()
            .enumerate()
            .filter(|&(j, _)| mask >> j & 1 == 1)
            .fold(0, |acc, (_, &t)| acc | 1 << t)
    }

    /// Steps to the lexicographic successor; returns `false` (leaving `self`
    /// sorted ascending again) after the last permutation.
    pub fn advance_lexicographic(&mut self) -> bool {
        let v = &mut self.map;
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            v.reverse();
            return false;
        };
        let j = (i..v.len())
            .rev()
            .find(|&j| v[j] > v[i - 1])
            .expect("successor exists");
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    /// All `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some(Permutation::identity(n)),
        }
    }
}

pub struct AllPermutations {
    next: Option<Permutation>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if succ.advance_lexicographic() {
            self.next = Some(succ);
        }
        Some(current)
    }
}

/// Uniform draw by Fisher-Yates: for `i = n-1` down to `1`, swap position
/// `i` with a uniform position in `0..=i`.
pub fn uniform_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
    let mut map: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        map.swap(i, j);
    }
    Permutation { map }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::{BTreeSet, HashMap};

    #[test]
    fn validation() {
        assert!(Permutation::from_vec(vec![1, 0, 2]).is_ok());
        assert!(Permutation::from_vec(vec![1, 1, 2]).is_err());
        assert!(Permutation::from_vec(vec![0, 3]).is_err());
    }

    #[test]
    fn enumerates_all_in_order() {
        let all: Vec<_> = Permutation::all(4).map(|p| p.as_slice().to_vec()).collect();
        assert_eq!(all.len(), 24);
        assert_eq!(all.iter().collect::<BTreeSet<_>>().len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Permutation::all(7).count(), 5040);
        assert_eq!(Permutation::all(1).count(), 1);
    }

    #[test]
    fn mask_application_and_inverse() {
        let p = Permutation::from_vec(vec![2, 0, 1]).unwrap();
        assert_eq!(p.apply_to_mask(0b001), 0b100);
        assert_eq!(p.apply_to_mask(0b011), 0b101);
        let q = p.inverse();
        for m in 0..8u64 {
            assert_eq!(q.apply_to_mask(p.apply_to_mask(m)), m);
        }
    }

    #[test]
    fn uniform_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(uniform_permutation(1, &mut rng), Permutation::identity(1));

        // Pinned output of ChaCha8Rng::seed_from_u64(2024) with this draw order.
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let p = uniform_permutation(3, &mut rng);
        assert_eq!(p.as_slice(), PINNED_N3_SEED_2024);
    }

    const PINNED_N3_SEED_2024: &[usize] = &[2, 1, 0];

    #[test]
    fn chi_square_over_s3() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let draws = 60_000;
        let mut counts: HashMap<Vec<usize>, u64> = HashMap::new();
        for _ in 0..draws {
            *counts
                .entry(uniform_permutation(3, &mut rng).map)
                .or_default() += 1;
        }
        assert_eq!(counts.len(), 6);
        let expected = draws as f64 / 6.0;
        let chi2: f64 = counts
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // Upper 0.001 quantile of chi-square with 5 degrees of freedom.
        assert!(chi2 < 20.515, "chi2 = {chi2}");
    }
}
