//! Multilevel Plotkin constructions over a full binary tree.
//!
//! Every internal node forms `(u + v, v)` from its left child (the `u` code)
//! and its right child (the `v` code). Leaves are single coordinates that are
//! either frozen to zero or active.
//!
//! Leaf indexing: leaf `i` of a depth-`m` tree is reached by reading the `m`
//! bits of `i` from most to least significant, going left on `0` and right on
//! `1`. An in-order walk visits leaves `0, 1, ..., 2^m - 1`.
//!
//! Structurally identical subtrees are shared behind [`Arc`]s, so a depth-`m`
//! Reed-Muller tree holds `O(m^2)` distinct nodes.

use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};
use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::combinatorics::BinomialTable;
use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};
use crate::oracle::BinaryMatrix;
use crate::plotkin;

/// Trees deeper than this are rejected by the builders (`2^24` leaves).
pub const MAX_DEPTH: u32 = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LeafKind {
    Frozen,
    Active,
}

#[derive(Debug, Clone)]
enum Node {
    Leaf(LeafKind),
    Branch(Arc<CodeTree>, Arc<CodeTree>),
}

#[derive(Debug, Clone)]
pub struct CodeTree {
    node: Node,
    depth: u32,
    dimension: usize,
    fingerprint: u64,
}

impl PartialEq for CodeTree {
    fn eq(&self, other: &Self) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        if self.fingerprint != other.fingerprint
            || self.depth != other.depth
            || self.dimension != other.dimension
        {
            return false;
        }
        match (&self.node, &other.node) {
            (Node::Leaf(a), Node::Leaf(b)) => a == b,
            (Node::Branch(l0, r0), Node::Branch(l1, r1)) => {
                (Arc::ptr_eq(l0, l1) || l0 == l1) && (Arc::ptr_eq(r0, r1) || r0 == r1)
            }
            _ => false,
        }
    }
}

impl Eq for CodeTree {}

impl Hash for CodeTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.fingerprint.hash(state);
    }
}

impl CodeTree {
    pub fn leaf(kind: LeafKind) -> Self {
        let mut h = DefaultHasher::new();
        (0u8, kind).hash(&mut h);
        CodeTree {
            node: Node::Leaf(kind),
            depth: 0,
            dimension: usize::from(kind == LeafKind::Active),
            fingerprint: h.finish(),
        }
    }

    pub fn frozen() -> Self {
        Self::leaf(LeafKind::Frozen)
    }

    pub fn active() -> Self {
        Self::leaf(LeafKind::Active)
    }

    /// Joins a `u` subtree (left) and a `v` subtree (right) of equal length.
    pub fn branch(left: Arc<CodeTree>, right: Arc<CodeTree>) -> Result<Self> {
        if left.depth != right.depth {
            return Err(Error::InvalidTree(format!(
                "children have lengths {} and {}",
                left.length(),
                right.length()
            )));
        }
        let mut h = DefaultHasher::new();
        (1u8, left.fingerprint, right.fingerprint).hash(&mut h);
        Ok(CodeTree {
            depth: left.depth + 1,
            dimension: left.dimension + right.dimension,
            fingerprint: h.finish(),
            node: Node::Branch(left, right),
        })
    }

    /// All leaves of kind `kind` at depth `m`.
    pub fn uniform(m: u32, kind: LeafKind) -> Result<Self> {
        check_depth(m)?;
        let mut t = Arc::new(Self::leaf(kind));
        for _ in 0..m {
            t = Arc::new(Self::branch(t.clone(), t)?);
        }
        Ok(Arc::unwrap_or_clone(t))
    }

    /// `RM(r, m)` as the tree `RM(r, m) = (RM(r-1, m-1), RM(r, m-1))`, with
    /// `RM(r, 0)` active iff `r >= 0`.
    pub fn reed_muller(r: i64, m: u32) -> Result<Self> {
        check_depth(m)?;
        let mut memo = HashMap::new();
        Ok(Arc::unwrap_or_clone(rm_node(r, m, &mut memo)))
    }

    /// Depth-`m` tree whose leaf `i` is active iff `i` is in `active`.
    pub fn from_active_set(m: u32, active: &[usize]) -> Result<Self> {
        check_depth(m)?;
        let len = 1usize << m;
        let mut is_active = vec![false; len];
        for &i in active {
            if i >= len {
                return Err(Error::Range {
                    what: "leaf index",
                    value: i as i64,
                    min: 0,
                    max: len as i64 - 1,
                });
            }
            is_active[i] = true;
        }
        let frozen = Arc::new(Self::frozen());
        let act = Arc::new(Self::active());
        let mut level: Vec<Arc<CodeTree>> = is_active
            .into_iter()
            .map(|a| if a { act.clone() } else { frozen.clone() })
            .collect();
        // Children are interned, so pointer identity is structural identity.
        let mut interned: HashMap<(*const CodeTree, *const CodeTree), Arc<CodeTree>> =
            HashMap::new();
        while level.len() > 1 {
            let mut next = Vec::with_capacity(level.len() / 2);
            for pair in level.chunks_exact(2) {
                let key = (Arc::as_ptr(&pair[0]), Arc::as_ptr(&pair[1]));
                let node = match interned.get(&key) {
                    Some(n) => n.clone(),
                    None => {
                        let n = Arc::new(Self::branch(pair[0].clone(), pair[1].clone())?);
                        interned.insert(key, n.clone());
                        n
                    }
                };
                next.push(node);
            }
            level = next;
        }
        Ok(Arc::unwrap_or_clone(level.pop().expect("nonempty level")))
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn length(&self) -> usize {
        1usize << self.depth
    }

    /// Number of active leaves.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn leaf_kind(&self) -> Option<LeafKind> {
        match self.node {
            Node::Leaf(k) => Some(k),
            Node::Branch(..) => None,
        }
    }

    /// `(left, right)` for a branch.
    pub fn children(&self) -> Option<(&CodeTree, &CodeTree)> {
        match &self.node {
            Node::Leaf(_) => None,
            Node::Branch(l, r) => Some((l, r)),
        }
    }

    /// Active leaf indices in increasing order.
    pub fn active_leaves(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dimension);
        self.collect_active(0, &mut out);
        out
    }

    fn collect_active(&self, offset: usize, out: &mut Vec<usize>) {
        if self.dimension == 0 {
            return;
        }
        match &self.node {
            Node::Leaf(_) => out.push(offset),
            Node::Branch(l, r) => {
                l.collect_active(offset, out);
                r.collect_active(offset + l.length(), out);
            }
        }
    }

    /// Ensemble-average spectrum with an independent uniform interleaver at
    /// every internal node: frozen leaves start as `1`, active leaves as
    /// `1 + X`, and every branch combines `(left, right)` as `(A0, A1)`.
    pub fn ensemble_wef(&self) -> WeightEnumerator {
        let table = BinomialTable::new(self.length() / 2);
        let mut memo = HashMap::new();
        ensemble_node(self, &table, &mut memo)
    }

    /// Coefficients `A_0..=A_max_w` of [`ensemble_wef`](Self::ensemble_wef);
    /// the root combine only evaluates the requested weights.
    pub fn ensemble_wef_partial(&self, max_w: usize) -> Result<Vec<BigRational>> {
        if max_w > self.length() {
            return Err(Error::Range {
                what: "weight",
                value: max_w as i64,
                min: 0,
                max: self.length() as i64,
            });
        }
        match &self.node {
            Node::Leaf(_) => Ok(leaf_enumerator(self).coeffs()[..=max_w].to_vec()),
            Node::Branch(l, r) => {
                let table = BinomialTable::new(self.length() / 2);
                let mut memo = HashMap::new();
                let a0 = ensemble_node(l, &table, &mut memo);
                let a1 = ensemble_node(r, &table, &mut memo);
                plotkin::combine_partial_with_table(&table, &a0, &a1, max_w)
            }
        }
    }

    /// Generator matrix of the identity-interleaver instance: a left-subtree
    /// row `g` becomes `(g | 0)`, a right-subtree row becomes `(g | g)`, and
    /// rows are ordered by leaf index.
    pub fn generator_matrix(&self) -> BinaryMatrix {
        let n = self.length();
        let rows = self.generator_rows();
        BinaryMatrix::from_bool_rows(n, &rows).expect("rows have the tree length")
    }

    fn generator_rows(&self) -> Vec<Vec<bool>> {
        match &self.node {
            Node::Leaf(LeafKind::Active) => vec![vec![true]],
            Node::Leaf(LeafKind::Frozen) => Vec::new(),
            Node::Branch(l, r) => {
                let half = l.length();
                let mut rows = Vec::with_capacity(self.dimension);
                for g in l.generator_rows() {
                    let mut row = g;
                    row.resize(2 * half, false);
                    rows.push(row);
                }
                for g in r.generator_rows() {
                    let mut row = g.clone();
                    row.extend_from_slice(&g);
                    rows.push(row);
                }
                rows
            }
        }
    }

    pub fn to_spec(&self) -> TreeSpec {
        TreeSpec::Active {
            m: self.depth,
            active: self.active_leaves(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_spec()).expect("tree serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: TreeSpec = serde_json::from_str(text)?;
        spec.build()
    }
}

fn check_depth(m: u32) -> Result<()> {
    if m > MAX_DEPTH {
        return Err(Error::Budget(format!("tree depth {m} exceeds {MAX_DEPTH}")));
    }
    Ok(())
}

fn rm_node(r: i64, m: u32, memo: &mut HashMap<(i64, u32), Arc<CodeTree>>) -> Arc<CodeTree> {
    // Orders outside [-1, m] give the same tree as the nearest end.
    let r = r.clamp(-1, m as i64);
    if let Some(t) = memo.get(&(r, m)) {
        return t.clone();
    }
    let t = if m == 0 {
        Arc::new(CodeTree::leaf(if r >= 0 {
            LeafKind::Active
        } else {
            LeafKind::Frozen
        }))
    } else {
        let left = rm_node(r - 1, m - 1, memo);
        let right = rm_node(r, m - 1, memo);
        Arc::new(CodeTree::branch(left, right).expect("equal depths"))
    };
    memo.insert((r, m), t.clone());
    t
}

fn leaf_enumerator(t: &CodeTree) -> WeightEnumerator {
    match t.leaf_kind() {
        Some(LeafKind::Active) => WeightEnumerator::single_bit(),
        _ => WeightEnumerator::zero_code(1),
    }
}

fn ensemble_node<'a>(
    t: &'a CodeTree,
    table: &BinomialTable,
    memo: &mut HashMap<&'a CodeTree, WeightEnumerator>,
) -> WeightEnumerator {
    if t.dimension == 0 {
        return WeightEnumerator::zero_code(t.length());
    }
    if let Some(a) = memo.get(t) {
        return a.clone();
    }
    let a = match &t.node {
        Node::Leaf(_) => leaf_enumerator(t),
        Node::Branch(l, r) => {
            let a0 = ensemble_node(l, table, memo);
            let a1 = ensemble_node(r, table, memo);
            plotkin::combine_with_table(table, &a0, &a1).expect("children have equal length")
        }
    };
    memo.insert(t, a.clone());
    a
}

/// JSON description of a tree: either an explicit active set or an RM code.
///
/// ```json
/// {"m": 3, "active": [3, 5, 6, 7]}
/// {"rm": {"r": 1, "m": 3}}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum TreeSpec {
    Active { m: u32, active: Vec<usize> },
    ReedMuller { rm: RmParams },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RmParams {
    pub r: i64,
    pub m: u32,
}

impl TreeSpec {
    pub fn depth(&self) -> u32 {
        match self {
            TreeSpec::Active { m, .. } => *m,
            TreeSpec::ReedMuller { rm } => rm.m,
        }
    }

    pub fn build(&self) -> Result<CodeTree> {
        match self {
            TreeSpec::Active { m, active } => CodeTree::from_active_set(*m, active),
            TreeSpec::ReedMuller { rm } => CodeTree::reed_muller(rm.r, rm.m),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;
    use crate::oracle::exact_wef_bruteforce;
    use proptest::prelude::*;

    fn rm(r: i64, m: u32) -> CodeTree {
        CodeTree::reed_muller(r, m).unwrap()
    }

    #[test]
    fn rm_1_3_structure() {
        let t = rm(1, 3);
        assert_eq!(t.active_leaves(), vec![3, 5, 6, 7]);
        assert_eq!((t.dimension(), t.length()), (4, 8));
        assert_eq!(t, CodeTree::from_active_set(3, &[3, 5, 6, 7]).unwrap());
    }

    #[test]
    fn small_rm_trees() {
        let t = rm(0, 1);
        let (l, r) = t.children().unwrap();
        assert_eq!(l.leaf_kind(), Some(LeafKind::Frozen));
        assert_eq!(r.leaf_kind(), Some(LeafKind::Active));
        assert_eq!(rm(3, 3).active_leaves(), (0..8).collect::<Vec<_>>());
        assert_eq!(rm(-1, 3).dimension(), 0);
        assert_eq!(rm(7, 3), rm(3, 3));
    }

    #[test]
    fn rm_closed_form_and_dimension() {
        for m in 0..=8u32 {
            for r in -1..=(m as i64 + 1) {
                let t = rm(r, m);
                let expect: Vec<usize> = (0..1usize << m)
                    .filter(|i| i.count_ones() as i64 >= m as i64 - r)
                    .collect();
                assert_eq!(t.active_leaves(), expect, "RM({r},{m})");
                let k: usize = (0..=r.min(m as i64))
                    .map(|j| binomial(m as usize, j))
                    .sum::<num_bigint::BigUint>()
                    .try_into()
                    .unwrap();
                assert_eq!(t.dimension(), k);
                if m > 0 {
                    assert_eq!(
                        t.dimension(),
                        rm(r - 1, m - 1).dimension() + rm(r, m - 1).dimension()
                    );
                }
            }
        }
    }

    #[test]
    fn active_set_edge_cases() {
        let t = CodeTree::from_active_set(0, &[]).unwrap();
        assert_eq!(t.leaf_kind(), Some(LeafKind::Frozen));
        let full = CodeTree::from_active_set(1, &[0, 1]).unwrap();
        assert_eq!(full.ensemble_wef().format_poly(), "1 + 2x + x^2");
        assert!(matches!(
            CodeTree::from_active_set(3, &[8]),
            Err(Error::Range { value: 8, .. })
        ));
        assert!(matches!(
            CodeTree::from_active_set(40, &[]),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn branch_rejects_unequal_children() {
        let a = Arc::new(CodeTree::active());
        let b = Arc::new(CodeTree::uniform(1, LeafKind::Active).unwrap());
        assert!(matches!(CodeTree::branch(a, b), Err(Error::InvalidTree(_))));
    }

    #[test]
    fn ensemble_spectra() {
        assert_eq!(rm(1, 3).ensemble_wef().format_poly(), "1 + 14x^4 + x^8");
        assert_eq!(
            rm(2, 4).ensemble_wef().format_poly(),
            "1 + 140x^4 + 448x^6 + 870x^8 + 448x^10 + 140x^12 + x^16"
        );
        let z = CodeTree::uniform(5, LeafKind::Frozen)
            .unwrap()
            .ensemble_wef();
        assert_eq!(z, WeightEnumerator::zero_code(32));
        assert_eq!(rm(0, 3).ensemble_wef().format_poly(), "1 + x^8");
    }

    #[test]
    fn partial_matches_full() {
        let t = rm(2, 5);
        let full = t.ensemble_wef();
        for w in [0, 1, 8, 20, 32] {
            assert_eq!(
                t.ensemble_wef_partial(w).unwrap(),
                full.coeffs()[..=w].to_vec()
            );
        }
        assert!(t.ensemble_wef_partial(33).is_err());
        assert_eq!(
            CodeTree::active().ensemble_wef_partial(0).unwrap(),
            vec![BigRational::from_integer(1.into())]
        );
    }

    #[test]
    fn generator_rows() {
        let g = rm(0, 1).generator_matrix();
        assert_eq!(g.to_strings(), vec!["11"]);
        assert_eq!(
            CodeTree::active().generator_matrix().to_strings(),
            vec!["1"]
        );
        assert_eq!(CodeTree::frozen().generator_matrix().rows(), 0);
        assert_eq!(
            rm(1, 2).generator_matrix().to_strings(),
            vec!["1100", "1010", "1111"]
        );
    }

    #[test]
    fn generator_matches_subset_rule() {
        // Row for leaf i has coordinate j set iff the bits of j are a subset of those of i.
        for m in 0..=6u32 {
            let t = CodeTree::uniform(m, LeafKind::Active).unwrap();
            let g = t.generator_matrix();
            for (row, i) in g.to_strings().iter().zip(t.active_leaves()) {
                let expect: String = (0..1usize << m)
                    .map(|j| if j & !i == 0 { '1' } else { '0' })
                    .collect();
                assert_eq!(row, &expect);
            }
        }
    }

    #[test]
    fn invariant_right_child_matches_bruteforce() {
        let mut cases = vec![(1, 3), (1, 4), (2, 4)];
        for m in 1..=4u32 {
            for r in [0, m as i64 - 1, m as i64] {
                cases.push((r, m));
            }
        }
        for (r, m) in cases {
            let t = rm(r, m);
            let bf = exact_wef_bruteforce(&t.generator_matrix()).unwrap();
            assert_eq!(t.ensemble_wef(), bf, "RM({r},{m})");
        }
    }

    #[test]
    fn rm_minimum_distance() {
        for m in 0..=4u32 {
            for r in 0..=m as i64 {
                let a = rm(r, m).ensemble_wef();
                assert_eq!(
                    a.min_positive_weight(),
                    Some(1usize << (m as i64 - r)),
                    "RM({r},{m})"
                );
            }
        }
    }

    #[test]
    fn json_forms() {
        let t = CodeTree::from_json(r#"{"rm":{"r":1,"m":3}}"#).unwrap();
        assert_eq!(t.to_json(), r#"{"m":3,"active":[3,5,6,7]}"#);
        assert_eq!(CodeTree::from_json(&t.to_json()).unwrap(), t);
        assert!(CodeTree::from_json(r#"{"m":2,"active":[4]}"#).is_err());
        assert!(CodeTree::from_json(r#"{"depth":2}"#).is_err());
    }

    proptest! {
        #[test]
        fn mass_is_two_to_the_dimension(m in 0u32..=6, bits in any::<u64>()) {
            let active: Vec<usize> = (0..1usize << m).filter(|i| bits >> i & 1 == 1).collect();
            let t = CodeTree::from_active_set(m, &active).unwrap();
            prop_assert_eq!(t.dimension(), active.len());
            let mass = t.ensemble_wef().total_mass();
            let expect = BigRational::from_integer(num_bigint::BigInt::from(1) << active.len());
            prop_assert_eq!(mass, expect);
            prop_assert_eq!(t.active_leaves(), active);
        }
    }
}
