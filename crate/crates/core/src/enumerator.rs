//! Weight enumerator polynomials `A(X) = sum_j A_j X^j` with exact rational
//! coefficients, plus their text and JSON forms.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense coefficient vector `A_0..=A_n` of a length-`n` code or code ensemble.
///
/// Coefficients are nonnegative rationals. Spectra of specific linear codes
/// are integral, ensemble averages in general are not.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightEnumerator {
    coeffs: Vec<BigRational>,
}

impl WeightEnumerator {
    /// Builds an enumerator of length `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidEnumerator("no coefficients".into()));
        }
        if let Some(w) = coeffs.iter().position(|c| c.is_negative()) {
            return Err(Error::InvalidEnumerator(format!(
                "coefficient of x^{w} is negative"
            )));
        }
        Ok(WeightEnumerator { coeffs })
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<BigRational>) -> Self {
        debug_assert!(!coeffs.is_empty());
        WeightEnumerator { coeffs }
    }

    /// Integer spectrum, e.g. a codeword count per weight.
    pub fn from_counts<I, T>(counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::new(
            counts
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// The enumerator `1` of the all-zero code of length `n`.
    pub fn zero_code(n: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[0] = BigRational::one();
        WeightEnumerator { coeffs }
    }

    /// `1 + X`, the full space of length one.
    pub fn single_bit() -> Self {
        WeightEnumerator {
            coeffs: vec![BigRational::one(), BigRational::one()],
        }
    }

    pub fn length(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    /// `A_w`, zero past the length.
    pub fn coeff(&self, w: usize) -> BigRational {
        self.coeffs
            .get(w)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_mass(&self) -> BigRational {
        self.coeffs.iter().sum()
    }

    pub fn min_positive_weight(&self) -> Option<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| c.is_positive())
            .map(|(w, _)| w)
    }

    /// `log2` of the total mass when it is an integral power of two, i.e.
    /// the dimension of a linear code with this spectrum.
    pub fn dimension(&self) -> Option<u64> {
        let mass = self.total_mass();
        if !mass.is_integer() || !mass.is_positive() {
            return None;
        }
        let m = mass.to_integer().to_biguint()?;
        let k = m.bits() - 1;
        (m == BigUint::one() << k).then_some(k)
    }

    /// Same coefficients padded with zeros to length `n`.
    pub fn padded(&self, n: usize) -> Result<Self> {
        if n < self.length() {
            if let Some(w) = self.coeffs[n + 1..].iter().position(|c| !c.is_zero()) {
                return Err(Error::ExponentTooLarge {
                    exponent: n + 1 + w,
                    length: n,
                });
            }
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n + 1, BigRational::zero());
        Ok(WeightEnumerator { coeffs })
    }

    /// Parses `"1 + 14x^4 + x^8"` style text into a length-`n` enumerator.
    pub fn parse_poly(text: &str, n: usize) -> Result<Self> {
        let terms = PolyParser::new(text).parse()?;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (exponent, c) in terms {
            if exponent > n {
                return Err(Error::ExponentTooLarge {
                    exponent,
                    length: n,
                });
            }
            coeffs[exponent] += c;
        }
        Ok(WeightEnumerator { coeffs })
    }

    /// Canonical text form: ascending exponents, zero terms omitted.
    pub fn format_poly(&self) -> String {
        format_terms(self.coeffs.iter().enumerate())
    }

    /// Coefficients rounded to `f64` (for consumers that need floats).
    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("enumerator serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_poly())
    }
}

/// Formats `(exponent, coefficient)` pairs as a polynomial, skipping zeros.
pub fn format_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (usize, &'a BigRational)>,
{
    let mut out = String::new();
    for (j, c) in terms {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        let coeff = format_rational(c);
        match (j, c.is_one()) {
            (0, _) => out.push_str(&coeff),
            (1, true) => out.push('x'),
            (1, false) => {
                out.push_str(&coeff);
                out.push('x');
            }
            (_, true) => out.push_str(&format!("x^{j}")),
            (_, false) => out.push_str(&format!("{coeff}x^{j}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `"p"` or `"p/q"` (nonnegative, `q > 0`).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let mut p = PolyParser::new(s);
    p.skip_ws();
    let v = p.rational()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("trailing characters after number"));
    }
    Ok(v)
}

struct PolyParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn new(text: &'a str) -> Self {
        PolyParser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn parse(mut self) -> Result<Vec<(usize, BigRational)>> {
        let mut terms = Vec::new();
        loop {
            self.skip_ws();
            terms.push(self.term()?);
            self.skip_ws();
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => self.pos += 1,
                Some(_) => return Err(self.error("expected '+' or end of input")),
            }
        }
    }

    fn term(&mut self) -> Result<(usize, BigRational)> {
        let coeff = match self.peek() {
            Some(b) if b.is_ascii_digit() => Some(self.rational()?),
            Some(b'x' | b'X') => None,
            Some(_) => return Err(self.error("expected coefficient or 'x'")),
            None => return Err(self.error("expected a term")),
        };
        self.skip_ws();
        if coeff.is_some() && self.peek() == Some(b'*') {
            self.pos += 1;
            self.skip_ws();
            if !matches!(self.peek(), Some(b'x' | b'X')) {
                return Err(self.error("expected 'x' after '*'"));
            }
        }
        let exponent = if matches!(self.peek(), Some(b'x' | b'X')) {
            self.pos += 1;
            self.skip_ws();
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.skip_ws();
                let start = self.pos;
                let e = self.integer()?;
                e.to_usize().ok_or(Error::Parse {
                    pos: start,
                    msg: "exponent too large".into(),
                })?
            } else {
                1
            }
        } else {
            0
        };
        Ok((exponent, coeff.unwrap_or_else(BigRational::one)))
    }

    fn integer(&mut self) -> Result<BigUint> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("ascii digits parse"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let p = self.integer()?;
        if self.peek() != Some(b'/') {
            return Ok(BigRational::from_integer(p.into()));
        }
        self.pos += 1;
        let q_pos = self.pos;
        let q = self.integer()?;
        if q.is_zero() {
            return Err(Error::Parse {
                pos: q_pos,
                msg: "zero denominator".into(),
            });
        }
        Ok(BigRational::new(p.into(), q.into()))
    }
}

impl Serialize for WeightEnumerator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        struct Coeffs<'a>(&'a [BigRational]);
        impl Serialize for Coeffs<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let nonzero = self.0.iter().filter(|c| !c.is_zero()).count();
                let mut map = s.serialize_map(Some(nonzero))?;
                for (w, c) in self.0.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                    map.serialize_entry(&w.to_string(), &format_rational(c))?;
                }
                map.end()
            }
        }
        let mut st = serializer.serialize_struct("WeightEnumerator", 2)?;
        st.serialize_field("n", &self.length())?;
        st.serialize_field("coeffs", &Coeffs(&self.coeffs))?;
        st.end()
    }
}

/// Coefficient values in JSON may be strings (`"2/3"`) or plain integers.
#[derive(Deserialize)]
#[serde(untagged)]
enum JsonCoeff {
    Int(u64),
    Text(String),
}

struct CoeffMap(Vec<(usize, BigRational)>);

impl<'de> Deserialize<'de> for CoeffMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = CoeffMap;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from weight to coefficient")
            }
            fn visit_map<A: MapAccess<'de>>(
                self,
                mut m: A,
            ) -> std::result::Result<CoeffMap, A::Error> {
                let mut out = Vec::new();
                while let Some((k, v)) = m.next_entry::<String, JsonCoeff>()? {
                    let w: usize = k
                        .trim()
                        .parse()
                        .map_err(|_| de::Error::custom(format!("bad weight key {k:?}")))?;
                    let c = match v {
                        JsonCoeff::Int(i) => BigRational::from_integer(i.into()),
                        JsonCoeff::Text(s) => parse_rational(&s).map_err(de::Error::custom)?,
                    };
                    out.push((w, c));
                }
                Ok(CoeffMap(out))
            }
        }
        d.deserialize_map(V)
    }
}

impl<'de> Deserialize<'de> for WeightEnumerator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            n: usize,
            coeffs: CoeffMap,
        }
        let raw = Raw::deserialize(d)?;
        let mut coeffs = vec![BigRational::zero(); raw.n + 1];
        for (w, c) in raw.coeffs.0 {
            if w > raw.n {
                return Err(de::Error::custom(Error::ExponentTooLarge {
                    exponent: w,
                    length: raw.n,
                }));
            }
            coeffs[w] += c;
        }
        Ok(WeightEnumerator { coeffs })
    }
}
