use crate::algebra::{Element, Generator, QMatrixAlgebra};
use crate::coeffs::{Field, Laurent};
use crate::minors::{quantum_minor, MinorId};

use super::{IdentityError, Placement};

/// One summand `coeff * t * D'` of a gap formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapTerm<F> {
    pub coeff: Laurent<F>,
    pub generator: Generator,
    pub minor: MinorId,
}

impl<F: Field> GapTerm<F> {
    pub fn element(&self, alg: &QMatrixAlgebra<F>, generator_first: bool) -> Result<Element<F>, IdentityError> {
        let t = alg.gen(self.generator.row as usize, self.generator.col as usize)?;
        let d = quantum_minor(alg, &self.minor)?;
        let p = if generator_first {
            alg.multiply(&t, &d)?
        } else {
            alg.multiply(&d, &t)?
        };
        Ok(p.scale(&self.coeff))
    }
}

/// `q^-1 (q - q^-1) (-q)^{u-r}`
fn gap_coeff<F: Field>(u: usize, r: usize) -> Laurent<F> {
    let d = u as i32 - r as i32;
    let sign = if d.rem_euclid(2) == 0 { F::one() } else { -F::one() };
    Laurent::monomial(sign, d - 1) * Laurent::q_minus_q_inv()
}

/// Right-hand side of `D t^k_l - q^-1 t^k_l D` for a column gap
/// `l_r < l < l_{r+1}`, `k ∈ K`: summands
/// `q^-1 (q - q^-1) (-q)^{u-r} t^{row}_{l_u} D^K_{L(l_u -> l)}` for `u = 1..=r`.
/// `row` is the row label of the generator factor; the identity holds with
/// `row = k`.
pub fn col_gap_terms<F: Field>(minor: &MinorId, k: u8, l: u8, row: u8) -> Result<Vec<GapTerm<F>>, IdentityError> {
    let r = match Placement::of(minor, Generator::new(k, l)) {
        Placement::ColGap(r) => r,
        p => {
            return Err(IdentityError::Placement {
                expected: "column-gap",
                found: p.class(),
            })
        }
    };
    let labels = minor.cols.labels();
    (1..=r)
        .map(|u| {
            let lu = labels[u - 1];
            Ok(GapTerm {
                coeff: gap_coeff(u, r),
                generator: Generator::new(row, lu),
                minor: MinorId::new(minor.rows.clone(), minor.cols.replace(u - 1, l)?)?,
            })
        })
        .collect()
}

/// Row-gap analogue, `k_r < k < k_{r+1}`, `l ∈ L`: summands
/// `q^-1 (q - q^-1) (-q)^{u-r} t^{k_u}_l D^{K(k_u -> k)}_L`.
pub fn row_gap_terms<F: Field>(minor: &MinorId, k: u8, l: u8) -> Result<Vec<GapTerm<F>>, IdentityError> {
    let t = col_gap_terms::<F>(&minor.transposed(), l, k, l)?;
    Ok(t.into_iter()
        .map(|g| GapTerm {
            coeff: g.coeff,
            generator: g.generator.transpose(),
            minor: g.minor.transposed(),
        })
        .collect())
}
