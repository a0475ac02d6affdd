//! Machine checks of the commutation identities between generators and
//! quantum minors, with exact residuals.
//!
//! Where the printed statements leave a sign, an index or a factor order
//! open, the checks measure the constant by normal-form computation and
//! record it; see [`suite::ConventionRow`].

mod checks;
mod e0;
mod formulas;
pub mod suite;

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, Generator};
use crate::coeffs::Field;
use crate::minors::{IndexSet, MinorId};

pub use checks::{
    check_centrality, check_gap_one, check_gap_r, check_minor_transpose, check_muir, check_qcommutation, check_row_gap,
};
pub use e0::{
    check_e0_membership, elementary_commutator, expand_commutator, E0Certificate, E0Expr, E0Leaf, Elementary,
};
pub use formulas::{col_gap_terms, row_gap_terms, GapTerm};
pub use suite::{run_suite, ConventionRow, Counts, ResultRecord, SuiteConfig, SuiteReport};

/// Where a generator `t^k_l` sits relative to a minor `D^K_L`.
///
/// `Col*` means `k ∈ K` and the column label `l ∉ L`; `Row*` means `l ∈ L`
/// and the row label `k ∉ K`. `Below`/`Above` place the outside label under
/// the minimum or over the maximum of its set; `Gap(r)` puts it between the
/// `r`-th and `(r+1)`-th labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Placement {
    Inside,
    ColBelow,
    ColAbove,
    ColGap(usize),
    RowBelow,
    RowAbove,
    RowGap(usize),
    Outside,
}

impl Placement {
    pub fn of(minor: &MinorId, g: Generator) -> Placement {
        let in_rows = minor.rows.contains(g.row);
        let in_cols = minor.cols.contains(g.col);
        match (in_rows, in_cols) {
            (true, true) => Placement::Inside,
            (false, false) => Placement::Outside,
            (true, false) => match side_of(&minor.cols, g.col) {
                Side3::Below => Placement::ColBelow,
                Side3::Above => Placement::ColAbove,
                Side3::Gap(r) => Placement::ColGap(r),
            },
            (false, true) => match side_of(&minor.rows, g.row) {
                Side3::Below => Placement::RowBelow,
                Side3::Above => Placement::RowAbove,
                Side3::Gap(r) => Placement::RowGap(r),
            },
        }
    }

    /// Class name without the gap index, used as a key in convention tables.
    pub fn class(self) -> &'static str {
        match self {
            Placement::Inside => "inside",
            Placement::ColBelow => "column-below",
            Placement::ColAbove => "column-above",
            Placement::ColGap(_) => "column-gap",
            Placement::RowBelow => "row-below",
            Placement::RowAbove => "row-above",
            Placement::RowGap(_) => "row-gap",
            Placement::Outside => "outside",
        }
    }

    pub fn is_outside_range(self) -> bool {
        matches!(
            self,
            Placement::ColBelow | Placement::ColAbove | Placement::RowBelow | Placement::RowAbove
        )
    }
}

enum Side3 {
    Below,
    Above,
    Gap(usize),
}

fn side_of(set: &IndexSet, label: u8) -> Side3 {
    let r = set.rank_below(label);
    if r == 0 {
        Side3::Below
    } else if r == set.len() {
        Side3::Above
    } else {
        Side3::Gap(r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Verified,
    Failed,
    NotApplicable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityName {
    Centrality,
    QCommutation,
    Muir,
    GapOne,
    GapR,
    RowGap,
    MinorTranspose,
    E0Membership,
}

impl IdentityName {
    pub fn as_str(self) -> &'static str {
        match self {
            IdentityName::Centrality => "centrality",
            IdentityName::QCommutation => "q-commutation",
            IdentityName::Muir => "muir",
            IdentityName::GapOne => "gap-one",
            IdentityName::GapR => "gap-r",
            IdentityName::RowGap => "row-gap",
            IdentityName::MinorTranspose => "minor-transpose",
            IdentityName::E0Membership => "e0-membership",
        }
    }
}

/// The configuration a check was run on. `other` is the second column set of
/// a Muir pair; `r` is the gap index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Configuration {
    pub n: u8,
    pub rows: IndexSet,
    pub cols: IndexSet,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other: Option<IndexSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
}

impl Configuration {
    pub fn new(n: u8, minor: &MinorId) -> Self {
        Configuration {
            n,
            rows: minor.rows.clone(),
            cols: minor.cols.clone(),
            k: None,
            l: None,
            other: None,
            r: None,
        }
    }

    pub fn with_generator(mut self, k: u8, l: u8) -> Self {
        self.k = Some(k);
        self.l = Some(l);
        self
    }

    pub fn minor(&self) -> MinorId {
        MinorId {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
        }
    }
}

/// A measured constant: the class of configuration it belongs to, and what
/// was measured (an exponent, or which reading of a formula verified).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ResolvedConvention {
    pub class: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheckResult<F> {
    pub identity: IdentityName,
    pub configuration: Configuration,
    pub status: CheckStatus,
    /// Exact `LHS - RHS` in normal form; zero for `NotApplicable`.
    pub residual: Element<F>,
    pub convention: Option<ResolvedConvention>,
    pub note: Option<String>,
}

impl<F: Field> IdentityCheckResult<F> {
    pub(crate) fn from_residual(identity: IdentityName, configuration: Configuration, residual: Element<F>) -> Self {
        let status = if residual.is_zero() {
            CheckStatus::Verified
        } else {
            CheckStatus::Failed
        };
        IdentityCheckResult {
            identity,
            configuration,
            status,
            residual,
            convention: None,
            note: None,
        }
    }

    pub(crate) fn not_applicable(identity: IdentityName, configuration: Configuration, why: &str) -> Self {
        let n = configuration.n;
        IdentityCheckResult {
            identity,
            configuration,
            status: CheckStatus::NotApplicable,
            residual: Element::zero(n),
            convention: None,
            note: Some(why.to_string()),
        }
    }

    pub(crate) fn with_convention(mut self, class: impl Into<String>, value: impl Into<String>) -> Self {
        self.convention = Some(ResolvedConvention {
            class: class.into(),
            value: value.into(),
        });
        self
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_verified(&self) -> bool {
        self.status == CheckStatus::Verified
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdentityError {
    #[error(transparent)]
    Minor(#[from] crate::minors::MinorError),
    #[error(transparent)]
    Algebra(#[from] crate::algebra::AlgebraError),
    #[error("configuration is {found}, expected {expected}")]
    Placement {
        expected: &'static str,
        found: &'static str,
    },
    #[error("{0} is not a polynomial in the generators of E_0")]
    NotInE0(String),
}

impl IdentityError {
    pub fn exceeds_degree_cap(&self) -> bool {
        match self {
            IdentityError::Minor(e) => e.exceeds_degree_cap(),
            IdentityError::Algebra(e) => e.exceeds_degree_cap(),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minor(r: &[u8], c: &[u8]) -> MinorId {
        MinorId::from_labels(r, c).unwrap()
    }

    #[test]
    fn placement_classes() {
        let d = minor(&[1, 2], &[1, 3]);
        assert_eq!(Placement::of(&d, Generator::new(1, 1)), Placement::Inside);
        assert_eq!(Placement::of(&d, Generator::new(1, 2)), Placement::ColGap(1));
        assert_eq!(Placement::of(&d, Generator::new(3, 3)), Placement::RowAbove);
        assert_eq!(Placement::of(&d, Generator::new(3, 2)), Placement::Outside);
        let d = minor(&[2, 3], &[2, 3]);
        assert_eq!(Placement::of(&d, Generator::new(1, 2)), Placement::RowBelow);
        assert_eq!(Placement::of(&d, Generator::new(2, 1)), Placement::ColBelow);
    }
}
