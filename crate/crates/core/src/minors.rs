//! Quantum minors `D^K_L`, column-label replacement and q-commutation probes.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, Generator, QMatrixAlgebra};
use crate::coeffs::{Field, Laurent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("index set must be nonempty")]
    Empty,
    #[error("index set labels must be strictly increasing: {0:?}")]
    NotIncreasing(Vec<u8>),
    #[error("label {label} outside 1..={n}")]
    OutOfRange { label: u8, n: u8 },
    #[error("row and column sets differ in size ({rows} vs {cols})")]
    CardinalityMismatch { rows: usize, cols: usize },
    #[error("label {0} is already present")]
    LabelPresent(u8),
    #[error("position {pos} out of range for a set of size {len}")]
    BadPosition { pos: usize, len: usize },
    #[error("q-commutation probe needs nonzero inputs")]
    ZeroInput,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl MinorError {
    pub fn exceeds_degree_cap(&self) -> bool {
        matches!(self, MinorError::Algebra(e) if e.exceeds_degree_cap())
    }
}

/// Strictly increasing, nonempty list of labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct IndexSet(Vec<u8>);

impl IndexSet {
    pub fn new(labels: Vec<u8>) -> Result<Self, MinorError> {
        if labels.is_empty() {
            return Err(MinorError::Empty);
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) || labels[0] == 0 {
            return Err(MinorError::NotIncreasing(labels));
        }
        Ok(IndexSet(labels))
    }

    /// Sorts and deduplicates-checks an arbitrary label list.
    pub fn from_unsorted(mut labels: Vec<u8>) -> Result<Self, MinorError> {
        labels.sort_unstable();
        Self::new(labels)
    }

    pub fn labels(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, label: u8) -> bool {
        self.0.binary_search(&label).is_ok()
    }

    pub fn min_label(&self) -> u8 {
        self.0[0]
    }

    pub fn max_label(&self) -> u8 {
        *self.0.last().unwrap()
    }

    pub fn check_range(&self, n: u8) -> Result<(), MinorError> {
        match self.0.iter().find(|&&l| l > n) {
            Some(&label) => Err(MinorError::OutOfRange { label, n }),
            None => Ok(()),
        }
    }

    /// Replace the label at 0-based `pos` by `label`, re-sorted into subset
    /// order.
    pub fn replace(&self, pos: usize, label: u8) -> Result<IndexSet, MinorError> {
        if pos >= self.0.len() {
            return Err(MinorError::BadPosition { pos, len: self.0.len() });
        }
        if self.contains(label) {
            return Err(MinorError::LabelPresent(label));
        }
        let mut v = self.0.clone();
        v[pos] = label;
        IndexSet::from_unsorted(v)
    }

    /// Number of labels strictly below `label`.
    pub fn rank_below(&self, label: u8) -> usize {
        self.0.iter().filter(|&&l| l < label).count()
    }

    /// Labels reflected through `l -> n + 1 - l`.
    pub fn reflect(&self, n: u8) -> IndexSet {
        IndexSet::from_unsorted(self.0.iter().map(|&l| n + 1 - l).collect()).unwrap()
    }

    /// All subsets of `1..=n` of the given size, in lexicographic order.
    pub fn all_of_size(n: u8, size: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(size);
        fn rec(start: u8, n: u8, size: usize, cur: &mut Vec<u8>, out: &mut Vec<IndexSet>) {
            if cur.len() == size {
                out.push(IndexSet(cur.clone()));
                return;
            }
            for l in start..=n {
                cur.push(l);
                rec(l + 1, n, size, cur, out);
                cur.pop();
            }
        }
        if size > 0 {
            rec(1, n, size, &mut cur, &mut out);
        }
        out
    }
}

impl TryFrom<Vec<u8>> for IndexSet {
    type Error = MinorError;
    fn try_from(v: Vec<u8>) -> Result<Self, MinorError> {
        IndexSet::new(v)
    }
}

impl From<IndexSet> for Vec<u8> {
    fn from(s: IndexSet) -> Vec<u8> {
        s.0
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

/// Names the minor `D^K_L` with rows `K` and columns `L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinorId {
    pub rows: IndexSet,
    pub cols: IndexSet,
}

impl MinorId {
    pub fn new(rows: IndexSet, cols: IndexSet) -> Result<Self, MinorError> {
        if rows.len() != cols.len() {
            return Err(MinorError::CardinalityMismatch {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        Ok(MinorId { rows, cols })
    }

    pub fn from_labels(rows: &[u8], cols: &[u8]) -> Result<Self, MinorError> {
        Self::new(IndexSet::new(rows.to_vec())?, IndexSet::new(cols.to_vec())?)
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn transposed(&self) -> MinorId {
        MinorId {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
        }
    }

    /// The minor matched with this one by the order-reversing label map.
    pub fn reflected(&self, n: u8) -> MinorId {
        MinorId {
            rows: self.rows.reflect(n),
            cols: self.cols.reflect(n),
        }
    }

    /// Lower-right corner minor of size `m` in `M_q(n)`.
    pub fn principal(n: u8, m: usize) -> MinorId {
        let labels: Vec<u8> = ((n as usize - m + 1) as u8..=n).collect();
        MinorId::from_labels(&labels, &labels).unwrap()
    }

    /// Every minor of `M_q(n)` with size in `sizes`.
    pub fn all(n: u8, sizes: impl IntoIterator<Item = usize>) -> Vec<MinorId> {
        let mut out = Vec::new();
        for m in sizes {
            for rows in IndexSet::all_of_size(n, m) {
                for cols in IndexSet::all_of_size(n, m) {
                    out.push(MinorId {
                        rows: rows.clone(),
                        cols,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for MinorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D[{},{}]", self.rows, self.cols)
    }
}

/// Inversion count of a permutation of `0..m`.
pub fn inversions(perm: &[usize]) -> u32 {
    let mut count = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                count += 1;
            }
        }
    }
    count
}

/// All permutations of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..m).collect();
    loop {
        out.push(perm.clone());
        // next lexicographic permutation
        let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..m).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    out
}

/// The permutation-sum terms of `D^K_L`: `((-q)^{inv(σ)}, t^{k_1}_{l_σ(1)} ⋯ t^{k_m}_{l_σ(m)})`,
/// words left unreduced.
pub fn minor_words<F: Field>(id: &MinorId) -> Vec<(Laurent<F>, Vec<Generator>)> {
    let k = id.rows.labels();
    let l = id.cols.labels();
    permutations(k.len())
        .into_iter()
        .map(|sigma| {
            let inv = inversions(&sigma);
            let sign = if inv.is_multiple_of(2) { F::one() } else { -F::one() };
            let word = (0..k.len()).map(|i| Generator::new(k[i], l[sigma[i]])).collect();
            (Laurent::monomial(sign, inv as i32), word)
        })
        .collect()
}

/// `D^K_L` in normal form.
pub fn quantum_minor<F: Field>(alg: &QMatrixAlgebra<F>, id: &MinorId) -> Result<Element<F>, MinorError> {
    id.rows.check_range(alg.n())?;
    id.cols.check_range(alg.n())?;
    Ok(alg.normal_form(minor_words(id))?)
}

/// `Some(r)` with `a b = q^r b a`, `None` when no such exponent exists.
pub fn qcommutation_probe<F: Field>(
    alg: &QMatrixAlgebra<F>,
    a: &Element<F>,
    b: &Element<F>,
) -> Result<Option<i32>, MinorError> {
    if a.is_zero() || b.is_zero() {
        return Err(MinorError::ZeroInput);
    }
    let ab = alg.multiply(a, b)?;
    let ba = alg.multiply(b, a)?;
    Ok(proportionality(&ab, &ba).and_then(|c| match c.as_unit() {
        Some((k, e)) if k.is_one() => Some(e),
        _ => None,
    }))
}

/// `Some(c)` with `x = c * y` for a Laurent scalar `c`, if one exists.
pub fn proportionality<F: Field>(x: &Element<F>, y: &Element<F>) -> Option<Laurent<F>> {
    if x.len() != y.len() || y.is_zero() {
        return None;
    }
    let mut ratio: Option<Laurent<F>> = None;
    for ((mx, cx), (my, cy)) in x.terms().zip(y.terms()) {
        if mx != my {
            return None;
        }
        // ratio must be an exact Laurent quotient cx / cy
        let r = crate::coeffs::RatFunc::new(cx.clone(), cy.clone()).ok()?;
        let r = r.as_laurent()?.clone();
        match &ratio {
            None => ratio = Some(r),
            Some(prev) if *prev == r => {}
            Some(_) => return None,
        }
    }
    ratio
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QAlgebra;

    fn set(v: &[u8]) -> IndexSet {
        IndexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn one_by_one_minor() {
        let a = QAlgebra::new(2).unwrap();
        let d = quantum_minor(&a, &MinorId::from_labels(&[1], &[1]).unwrap()).unwrap();
        assert_eq!(d, a.t(1, 1));
    }

    #[test]
    fn two_by_two_minor() {
        let a = QAlgebra::new(2).unwrap();
        let d = quantum_minor(&a, &MinorId::from_labels(&[1, 2], &[1, 2]).unwrap()).unwrap();
        assert_eq!(d.to_string(), "(1) * t[1,1] t[2,2] + (-q) * t[1,2] t[2,1]");
    }

    #[test]
    fn non_contiguous_columns() {
        let a = QAlgebra::new(3).unwrap();
        let d = quantum_minor(&a, &MinorId::from_labels(&[1, 2], &[1, 3]).unwrap()).unwrap();
        assert_eq!(d.to_string(), "(1) * t[1,1] t[2,3] + (-q) * t[1,3] t[2,1]");
    }

    #[test]
    fn cardinality_mismatch() {
        assert!(matches!(
            MinorId::from_labels(&[1, 2], &[1]),
            Err(MinorError::CardinalityMismatch { .. })
        ));
        assert!(IndexSet::new(vec![2, 1]).is_err());
        assert!(IndexSet::new(vec![]).is_err());
    }

    #[test]
    fn column_replacement() {
        assert_eq!(set(&[1, 3]).replace(0, 2).unwrap(), set(&[2, 3]));
        assert_eq!(set(&[1, 2, 5]).replace(2, 4).unwrap(), set(&[1, 2, 4]));
        assert_eq!(set(&[2, 3]).replace(0, 1).unwrap(), set(&[1, 3]));
        assert!(matches!(set(&[1, 3]).replace(0, 3), Err(MinorError::LabelPresent(3))));
    }

    #[test]
    fn permutation_tables() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(inversions(&[2, 1, 0]), 3);
        assert_eq!(inversions(&[0, 1, 2]), 0);
        assert_eq!(permutations(1), vec![vec![0]]);
    }

    #[test]
    fn probe_basics() {
        let a = QAlgebra::new(2).unwrap();
        let d = quantum_minor(&a, &MinorId::from_labels(&[1, 2], &[1, 2]).unwrap()).unwrap();
        assert_eq!(qcommutation_probe(&a, &d, &d).unwrap(), Some(0));
        assert_eq!(qcommutation_probe(&a, &d, &a.t(1, 1)).unwrap(), Some(0));
        assert_eq!(qcommutation_probe(&a, &a.t(1, 2), &a.t(1, 1)).unwrap(), Some(-1));
        assert_eq!(qcommutation_probe(&a, &a.t(1, 1), &a.t(2, 2)).unwrap(), None);
        assert!(qcommutation_probe(&a, &a.zero(), &d).is_err());
    }
}
