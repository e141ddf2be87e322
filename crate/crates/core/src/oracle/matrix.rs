use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::Permutation;

/// A `k x n` matrix over GF(2), one bit-packed row per codeword generator.
///
/// Coordinate `j` of a row lives in bit `j % 64` of word `j / 64`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    n: usize,
    rows: Vec<Vec<u64>>,
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl BinaryMatrix {
    /// A `0 x n` matrix (generator of the zero code).
    pub fn empty(n: usize) -> Self {
        BinaryMatrix {
            n,
            rows: Vec::new(),
        }
    }

    pub fn from_bool_rows(n: usize, rows: &[Vec<bool>]) -> Result<Self> {
        let mut packed = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "row {r} has {} columns, expected {n}",
                    row.len()
                )));
            }
            let mut words = vec![0u64; words_for(n)];
            for (j, _) in row.iter().enumerate().filter(|(_, &b)| b) {
                words[j / 64] |= 1 << (j % 64);
            }
            packed.push(words);
        }
        Ok(BinaryMatrix { n, rows: packed })
    }

    /// Rows as `'0'`/`'1'` strings, leftmost character is coordinate 0.
    pub fn from_strings<S: AsRef<str>>(n: usize, rows: &[S]) -> Result<Self> {
        let bools = rows
            .iter()
            .enumerate()
            .map(|(r, s)| {
                s.as_ref()
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(Error::InvalidMatrix(format!(
                            "row {r} contains {other:?}, expected '0' or '1'"
                        ))),
                    })
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bool_rows(n, &bools)
    }

    pub fn to_strings(&self) -> Vec<String> {
        (0..self.rows.len())
            .map(|r| {
                (0..self.n)
                    .map(|j| if self.get(r, j) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    /// Number of rows `k`.
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns `n`.
    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, j: usize) -> bool {
        self.rows[r][j / 64] >> (j % 64) & 1 == 1
    }

    pub(crate) fn packed_rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Linearly independent rows spanning the same row space (echelon form).
    pub fn row_basis(&self) -> BinaryMatrix {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let (w, b) = (col / 64, col % 64);
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] >> b & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[w] >> b & 1 == 1 {
                    row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= y);
                }
            }
            rank += 1;
        }
        rows.truncate(rank);
        BinaryMatrix { n: self.n, rows }
    }

    pub fn rank(&self) -> usize {
        self.row_basis().rows()
    }

    /// Moves coordinate `j` of every row to `perm.image(j)`.
    pub fn permute_columns(&self, perm: &Permutation) -> Result<BinaryMatrix> {
        if perm.len() != self.n {
            return Err(Error::InvalidPermutation(format!(
                "permutation of {} points applied to {} columns",
                perm.len(),
                self.n
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut out = vec![0u64; row.len()];
                for j in 0..self.n {
                    if row[j / 64] >> (j % 64) & 1 == 1 {
                        let t = perm.image(j);
                        out[t / 64] |= 1 << (t % 64);
                    }
                }
                out
            })
            .collect();
        Ok(BinaryMatrix { n: self.n, rows })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixJson {
            n: self.n,
            rows: self.to_strings(),
        })
        .expect("matrix serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MatrixJson = serde_json::from_str(text)?;
        Self::from_strings(raw.n, &raw.rows)
    }
}

/// `{"n": 3, "rows": ["110", "011"]}`
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixJson {
    n: usize,
    rows: Vec<String>,
}

impl Serialize for BinaryMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson {
            n: self.n,
            rows: self.to_strings(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinaryMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        BinaryMatrix::from_strings(raw.n, &raw.rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strings_round_trip() {
        let g = BinaryMatrix::from_strings(3, &["110", "011"]).unwrap();
        assert_eq!(g.to_strings(), vec!["110", "011"]);
        assert_eq!((g.rows(), g.cols()), (2, 3));
        assert!(g.get(0, 0) && g.get(0, 1) && !g.get(0, 2));
        assert_eq!(g.to_json(), r#"{"n":3,"rows":["110","011"]}"#);
        assert_eq!(BinaryMatrix::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn wide_rows() {
        let row: String = (0..130)
            .map(|j| if j % 7 == 0 { '1' } else { '0' })
            .collect();
        let g = BinaryMatrix::from_strings(130, &[row.as_str()]).unwrap();
        assert_eq!(g.to_strings(), vec![row]);
    }

    #[test]
    fn malformed() {
        assert!(BinaryMatrix::from_strings(3, &["11"]).is_err());
        assert!(BinaryMatrix::from_strings(3, &["1a1"]).is_err());
        assert!(BinaryMatrix::from_json(r#"{"n":2,"rows":["111"]}"#).is_err());
    }

    #[test]
    fn rank_and_basis() {
        let g = BinaryMatrix::from_strings(4, &["1100", "0110", "1010", "0000"]).unwrap();
        assert_eq!(g.rank(), 2);
        assert_eq!(BinaryMatrix::empty(5).rank(), 0);
        let id = BinaryMatrix::from_strings(3, &["100", "010", "001"]).unwrap();
        assert_eq!(id.row_basis(), id);
    }

    #[test]
    fn column_permutation() {
        let g = BinaryMatrix::from_strings(3, &["110"]).unwrap();
        let p = Permutation::from_vec(vec![2, 0, 1]).unwrap();
        assert_eq!(g.permute_columns(&p).unwrap().to_strings(), vec!["101"]);
        assert!(g.permute_columns(&Permutation::identity(2)).is_err());
    }
}
