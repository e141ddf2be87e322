//! Truncated union bound on the block error probability of BPSK over AWGN.
//!
//! This is the only module that uses floating point; exact coefficients are
//! rounded to `f64` on entry.

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};

/// Code rate and `Eb/N0` in decibels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelPoint {
    rate: f64,
    ebn0_db: f64,
}

impl ChannelPoint {
    pub fn new(rate: f64, ebn0_db: f64) -> Result<Self> {
        if !(rate > 0.0 && rate <= 1.0) {
            return Err(Error::InvalidChannel(format!("rate {rate} not in (0, 1]")));
        }
        if !ebn0_db.is_finite() {
            return Err(Error::InvalidChannel(format!(
                "Eb/N0 {ebn0_db} dB is not finite"
            )));
        }
        Ok(ChannelPoint { rate, ebn0_db })
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn ebn0_db(&self) -> f64 {
        self.ebn0_db
    }

    /// Pairwise error probability for two codewords at distance `w`:
    /// `Q(sqrt(2 w R Eb/N0))`.
    pub fn pairwise_error(&self, w: usize) -> f64 {
        let ebn0 = 10f64.powf(self.ebn0_db / 10.0);
        q_function((2.0 * w as f64 * self.rate * ebn0).sqrt())
    }
}

/// Gaussian tail `Q(x) = P(N(0,1) > x) = erfc(x / sqrt 2) / 2`.
pub fn q_function(x: f64) -> f64 {
    0.5 * libm::erfc(x / std::f64::consts::SQRT_2)
}

/// `sum_{w=1}^{W} A_w Q(sqrt(2 w R Eb/N0))`.
pub fn truncated_union_bound(a: &WeightEnumerator, max_w: usize, ch: ChannelPoint) -> Result<f64> {
    if max_w < 1 || max_w > a.length() {
        return Err(Error::Range {
            what: "truncation weight",
            value: max_w as i64,
            min: 1,
            max: a.length() as i64,
        });
    }
    Ok(union_bound_terms(&a.coeffs()[..=max_w], ch))
}

/// The bound over a partial spectrum `A_0..=A_W`, e.g. from
/// [`crate::plotkin::combine_partial`]. `A_0` is ignored.
pub fn union_bound_terms(coeffs: &[BigRational], ch: ChannelPoint) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(w, c)| {
            let c = c.to_f64().unwrap_or(f64::INFINITY);
            if c == 0.0 {
                0.0
            } else {
                c * ch.pairwise_error(w)
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rm13() -> WeightEnumerator {
        WeightEnumerator::parse_poly("1 + 14x^4 + x^8", 8).unwrap()
    }

    #[test]
    fn q_reference_points() {
        assert_eq!(q_function(0.0), 0.5);
        // Q(1), Q(3) to 16 significant digits.
        assert!((q_function(1.0) - 0.158_655_253_931_457_05).abs() < 1e-16);
        assert!((q_function(3.0) / 1.349_898_031_630_094_5e-3 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn single_term_closed_form() {
        let a = WeightEnumerator::parse_poly("1 + 5x^3", 6).unwrap();
        let ch = ChannelPoint::new(0.5, 2.0).unwrap();
        let expect = 5.0 * q_function((2.0 * 3.0 * 0.5 * 10f64.powf(0.2)).sqrt());
        assert_eq!(truncated_union_bound(&a, 6, ch).unwrap(), expect);
    }

    #[test]
    fn monotone_in_truncation_and_snr() {
        let a = rm13();
        let ch = ChannelPoint::new(0.5, 3.0).unwrap();
        let mut prev = 0.0;
        for w in 1..=8 {
            let b = truncated_union_bound(&a, w, ch).unwrap();
            assert!(b >= prev && b >= 0.0);
            prev = b;
        }
        let mut prev = f64::INFINITY;
        for db in [-2.0, 0.0, 1.5, 3.0, 6.0] {
            let b = truncated_union_bound(&a, 8, ChannelPoint::new(0.5, db).unwrap()).unwrap();
            assert!(b <= prev);
            prev = b;
        }
    }

    #[test]
    fn range_and_channel_errors() {
        let ch = ChannelPoint::new(0.5, 3.0).unwrap();
        assert!(truncated_union_bound(&rm13(), 0, ch).is_err());
        assert!(truncated_union_bound(&rm13(), 9, ch).is_err());
        assert!(ChannelPoint::new(0.0, 1.0).is_err());
        assert!(ChannelPoint::new(1.5, 1.0).is_err());
        assert!(ChannelPoint::new(0.5, f64::NAN).is_err());
        assert!(ChannelPoint::new(1.0, -3.0).is_ok());
    }
}
