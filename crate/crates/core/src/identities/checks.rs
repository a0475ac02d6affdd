use crate::algebra::{Element, Generator, QMatrixAlgebra};
use crate::coeffs::{Field, Laurent};
use crate::minors::{proportionality, quantum_minor, MinorId};

use super::formulas::{col_gap_terms, row_gap_terms, GapTerm};
use super::{Configuration, IdentityCheckResult, IdentityError, IdentityName, Placement};

type CheckResult<F> = Result<IdentityCheckResult<F>, IdentityError>;

fn generator<F: Field>(alg: &QMatrixAlgebra<F>, k: u8, l: u8) -> Result<Element<F>, IdentityError> {
    Ok(alg.gen(k as usize, l as usize)?)
}

/// `D t - q^-1 t D`
fn gap_lhs<F: Field>(alg: &QMatrixAlgebra<F>, d: &Element<F>, t: &Element<F>) -> Result<Element<F>, IdentityError> {
    let dt = alg.multiply(d, t)?;
    let td = alg.multiply(t, d)?;
    Ok(&dt - &td.scale(&Laurent::q_pow(-1)))
}

fn sum_terms<F: Field>(
    alg: &QMatrixAlgebra<F>,
    terms: &[GapTerm<F>],
    generator_first: bool,
) -> Result<Element<F>, IdentityError> {
    let mut acc = alg.zero();
    for t in terms {
        acc = &acc + &t.element(alg, generator_first)?;
    }
    Ok(acc)
}

/// `t^k_l D^K_L = D^K_L t^k_l` for `k ∈ K`, `l ∈ L`.
pub fn check_centrality<F: Field>(alg: &QMatrixAlgebra<F>, minor: &MinorId, k: u8, l: u8) -> CheckResult<F> {
    let config = Configuration::new(alg.n(), minor).with_generator(k, l);
    if Placement::of(minor, Generator::new(k, l)) != Placement::Inside {
        return Ok(IdentityCheckResult::not_applicable(
            IdentityName::Centrality,
            config,
            "needs k in K and l in L",
        ));
    }
    let t = generator(alg, k, l)?;
    let d = quantum_minor(alg, minor)?;
    let residual = alg.commutator(&t, &d)?;
    Ok(IdentityCheckResult::from_residual(
        IdentityName::Centrality,
        config,
        residual,
    ))
}

/// `t^k_l D^K_L = q^e D^K_L t^k_l` when exactly one label lies in its set and
/// the other lies outside the range of its set. The exponent is measured.
pub fn check_qcommutation<F: Field>(alg: &QMatrixAlgebra<F>, minor: &MinorId, k: u8, l: u8) -> CheckResult<F> {
    let config = Configuration::new(alg.n(), minor).with_generator(k, l);
    let placement = Placement::of(minor, Generator::new(k, l));
    if !placement.is_outside_range() {
        return Ok(IdentityCheckResult::not_applicable(
            IdentityName::QCommutation,
            config,
            "needs one label inside its set and the other outside its range",
        ));
    }
    let t = generator(alg, k, l)?;
    let d = quantum_minor(alg, minor)?;
    let td = alg.multiply(&t, &d)?;
    let dt = alg.multiply(&d, &t)?;
    let exponent = measured_exponent(&td, &dt);
    let e = exponent.unwrap_or(0);
    let residual = &td - &dt.scale(&Laurent::q_pow(e));
    let res = IdentityCheckResult::from_residual(IdentityName::QCommutation, config, residual);
    Ok(match exponent {
        Some(e) if e == 1 || e == -1 => res.with_convention(placement.class(), format!("q^{e}")),
        Some(e) => res
            .with_convention(placement.class(), format!("q^{e}"))
            .with_note("exponent outside {+1, -1}"),
        None => res.with_note("no q-commutation exponent exists"),
    })
}

/// `Some(e)` when `x = q^e y`.
fn measured_exponent<F: Field>(x: &Element<F>, y: &Element<F>) -> Option<i32> {
    proportionality(x, y).and_then(|c| match c.as_unit() {
        Some((a, e)) if a.is_one() => Some(e),
        _ => None,
    })
}

/// Which labels two sets exchange: `Some((removed, added))` when they differ
/// in exactly one label.
fn single_exchange(a: &[u8], b: &[u8]) -> Option<(u8, u8)> {
    if a.len() != b.len() {
        return None;
    }
    let removed: Vec<u8> = a.iter().copied().filter(|x| !b.contains(x)).collect();
    let added: Vec<u8> = b.iter().copied().filter(|x| !a.contains(x)).collect();
    match (removed.as_slice(), added.as_slice()) {
        ([r], [s]) => Some((*r, *s)),
        _ => None,
    }
}

/// Muir-type q-commutation `D D' = q^e D' D` for two minors that share one
/// index set and differ in a single label of the other.
pub fn check_muir<F: Field>(alg: &QMatrixAlgebra<F>, minor: &MinorId, other: &MinorId) -> CheckResult<F> {
    let mut config = Configuration::new(alg.n(), minor);
    let (side, exchange) = if minor.rows == other.rows {
        config.other = Some(other.cols.clone());
        ("column", single_exchange(minor.cols.labels(), other.cols.labels()))
    } else if minor.cols == other.cols {
        config.other = Some(other.rows.clone());
        ("row", single_exchange(minor.rows.labels(), other.rows.labels()))
    } else {
        return Ok(IdentityCheckResult::not_applicable(
            IdentityName::Muir,
            config,
            "minors must share their row set or their column set",
        ));
    };
    let d = quantum_minor(alg, minor)?;
    let dp = quantum_minor(alg, other)?;
    if minor == other {
        let residual = alg.commutator(&d, &dp)?;
        return Ok(IdentityCheckResult::from_residual(IdentityName::Muir, config, residual)
            .with_convention("identical", "q^0"));
    }
    let Some((removed, added)) = exchange else {
        return Ok(IdentityCheckResult::not_applicable(
            IdentityName::Muir,
            config,
            "sets differ in more than one label",
        ));
    };
    let ddp = alg.multiply(&d, &dp)?;
    let dpd = alg.multiply(&dp, &d)?;
    let exponent = measured_exponent(&ddp, &dpd);
    let residual = &ddp - &dpd.scale(&Laurent::q_pow(exponent.unwrap_or(0)));
    let class = if removed < added {
        format!("{side}: removed < added")
    } else {
        format!("{side}: removed > added")
    };
    let res = IdentityCheckResult::from_residual(IdentityName::Muir, config, residual);
    Ok(match exponent {
        Some(e) if e == 1 || e == -1 => res.with_convention(class, format!("q^{e}")),
        Some(e) => res
            .with_convention(class, format!("q^{e}"))
            .with_note("exponent outside {+1, -1}"),
        None => res.with_note("no q-commutation exponent exists"),
    })
}

/// The single-gap identity `l_1 < l < l_2`, `k ∈ K`:
/// `D t^k_l - q^-1 t^k_l D = (1 - q^-2) D^K_{L(l_1 -> l)} t^k_{l_1}`.
/// The printed factor order is tried first, then the swapped order
/// `t^k_{l_1} D^K_{L(l_1 -> l)}`; the reading that verifies is recorded.
pub fn check_gap_one<F: Field>(alg: &QMatrixAlgebra<F>, minor: &MinorId, k: u8, l: u8) -> CheckResult<F> {
    let mut config = Configuration::new(alg.n(), minor).with_generator(k, l);
    if Placement::of(minor, Generator::new(k, l)) != Placement::ColGap(1) {
        return Ok(IdentityCheckResult::not_applicable(
            IdentityName::GapOne,
            config,
            "needs k in K and l_1 < l < l_2",
        ));
    }
    config.r = Some(1);
    let t = generator(alg, k, l)?;
    let d = quantum_minor(alg, minor)?;
    let lhs = gap_lhs(alg, &d, &t)?;
    let terms = col_gap_terms::<F>(minor, k, l, k)?;
    let printed = &lhs - &sum_terms(alg, &terms, false)?;
    if printed.is_zero() {
        return Ok(
            IdentityCheckResult::from_residual(IdentityName::GapOne, config, printed)
                .with_convention("gap-one factor order", "D' t"),
        );
    }
    let swapped = &lhs - &sum_terms(alg, &terms, true)?;
    if swapped.is_zero() {
        // how far the printed order is off: t D' = q^x D' t
        let g = terms[0].generator;
        let tg = generator(alg, g.row, g.col)?;
        let dp = quantum_minor(alg, &terms[0].minor)?;
        let x = measured_exponent(&alg.multiply(&tg, &dp)?, &alg.multiply(&dp, &tg)?);
        let note = match x {
            Some(x) => format!("t D' = q^{x} D' t"),
            None => "t and D' do not q-commute".to_string(),
        };
        return Ok(
            IdentityCheckResult::from_residual(IdentityName::GapOne, config, swapped)
                .with_convention("gap-one factor order", "t D'")
                .with_note(note),
        );
    }
    Ok(
        IdentityCheckResult::from_residual(IdentityName::GapOne, config, printed)
            .with_note("neither factor order verifies"),
    )
}

/// The general column-gap identity `l_r < l < l_{r+1}`, `k ∈ K`:
/// `D t^k_l - q^-1 t^k_l D = q^-1 (q - q^-1) Σ_u (-q)^{u-r} t^{k_m}_{l_u} D^K_{L(l_u -> l)}`.
/// The row index `k_m` is tried as `k`, then as `max K`.
pub fn check_gap_r<F: Field>(alg: &QMatrixAlgebra<F>, minor: &MinorId, k: u8, l: u8) -> CheckResult<F> {
    let mut config = Configuration::new(alg.n(), minor).with_generator(k, l);
    let r = match Placement::of(minor, Generator::new(k, l)) {
        Placement::ColGap(r) => r,
        _ => {
            return Ok(IdentityCheckResult::not_applicable(
                IdentityName::GapR,
                config,
                "needs k in K and l_r < l < l_{r+1}",
            ))
        }
    };
    config.r = Some(r);
    let t = generator(alg, k, l)?;
    let d = quantum_minor(alg, minor)?;
    let lhs = gap_lhs(alg, &d, &t)?;
    let natural = &lhs - &sum_terms(alg, &col_gap_terms::<F>(minor, k, l, k)?, true)?;
    if natural.is_zero() {
        return Ok(IdentityCheckResult::from_residual(IdentityName::GapR, config, natural)
            .with_convention("gap-r row index", "k"));
    }
    let km = minor.rows.max_label();
    let literal = &lhs - &sum_terms(alg, &col_gap_terms::<F>(minor, k, l, km)?, true)?;
    if literal.is_zero() {
        return Ok(IdentityCheckResult::from_residual(IdentityName::GapR, config, literal)
            .with_convention("gap-r row index", "max K"));
    }
    Ok(IdentityCheckResult::from_residual(IdentityName::GapR, config, natural)
        .with_note("neither row index reading verifies"))
}

/// Transposed gap identity `k_r < k < k_{r+1}`, `l ∈ L`:
/// `D t^k_l - q^-1 t^k_l D = q^-1 (q - q^-1) Σ_u (-q)^{u-r} t^{k_u}_l D^{K(k_u -> k)}_L`.
pub fn check_row_gap<F: Field>(alg: &QMatrixAlgebra<F>, minor: &MinorId, k: u8, l: u8) -> CheckResult<F> {
    let mut config = Configuration::new(alg.n(), minor).with_generator(k, l);
    let r = match Placement::of(minor, Generator::new(k, l)) {
        Placement::RowGap(r) => r,
        _ => {
            return Ok(IdentityCheckResult::not_applicable(
                IdentityName::RowGap,
                config,
                "needs l in L and k_r < k < k_{r+1}",
            ))
        }
    };
    config.r = Some(r);
    let t = generator(alg, k, l)?;
    let d = quantum_minor(alg, minor)?;
    let lhs = gap_lhs(alg, &d, &t)?;
    let residual = &lhs - &sum_terms(alg, &row_gap_terms::<F>(minor, k, l)?, true)?;
    Ok(IdentityCheckResult::from_residual(
        IdentityName::RowGap,
        config,
        residual,
    ))
}

/// The transpose map sends `D^K_L` to `D^L_K`.
pub fn check_minor_transpose<F: Field>(alg: &QMatrixAlgebra<F>, minor: &MinorId) -> CheckResult<F> {
    let config = Configuration::new(alg.n(), minor);
    let d = quantum_minor(alg, minor)?;
    let dt = quantum_minor(alg, &minor.transposed())?;
    let residual = &alg.transpose(&d)? - &dt;
    Ok(IdentityCheckResult::from_residual(
        IdentityName::MinorTranspose,
        config,
        residual,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::CheckStatus;
    use crate::QAlgebra;

    fn minor(r: &[u8], c: &[u8]) -> MinorId {
        MinorId::from_labels(r, c).unwrap()
    }

    #[test]
    fn central_determinant() {
        let a = QAlgebra::new(2).unwrap();
        let res = check_centrality(&a, &minor(&[1, 2], &[1, 2]), 1, 1).unwrap();
        assert!(res.is_verified());
        let a = QAlgebra::new(3).unwrap();
        assert!(check_centrality(&a, &minor(&[1, 3], &[2, 3]), 3, 2)
            .unwrap()
            .is_verified());
        let a = QAlgebra::new(2).unwrap();
        assert!(check_centrality(&a, &minor(&[2], &[2]), 2, 2).unwrap().is_verified());
    }

    #[test]
    fn qcommutation_exponents() {
        let a = QAlgebra::new(3).unwrap();
        let res = check_qcommutation(&a, &minor(&[1, 2], &[1, 2]), 3, 1).unwrap();
        assert!(res.is_verified());
        assert_eq!(res.convention.unwrap().value, "q^-1");
        let res = check_qcommutation(&a, &minor(&[2, 3], &[2, 3]), 1, 2).unwrap();
        assert!(res.is_verified());
        assert_eq!(res.convention.unwrap().value, "q^1");
        let a = QAlgebra::new(2).unwrap();
        let res = check_qcommutation(&a, &minor(&[1, 2], &[1, 2]), 1, 1).unwrap();
        assert_eq!(res.status, CheckStatus::NotApplicable);
    }

    #[test]
    fn muir_pairs() {
        let a = QAlgebra::new(3).unwrap();
        let res = check_muir(&a, &minor(&[1, 2], &[1, 3]), &minor(&[1, 2], &[2, 3])).unwrap();
        assert!(res.is_verified());
        let same = check_muir(&a, &minor(&[1, 2], &[1, 3]), &minor(&[1, 2], &[1, 3])).unwrap();
        assert!(same.is_verified());
        assert_eq!(same.convention.unwrap().value, "q^0");
        let a = QAlgebra::new(4).unwrap();
        assert!(check_muir(&a, &minor(&[1, 2], &[1, 4]), &minor(&[1, 2], &[3, 4]))
            .unwrap()
            .is_verified());
    }

    #[test]
    fn gap_one_verifies_with_generator_first() {
        let a = QAlgebra::new(3).unwrap();
        for k in [1, 2] {
            let res = check_gap_one(&a, &minor(&[1, 2], &[1, 3]), k, 2).unwrap();
            assert!(res.is_verified());
            assert_eq!(res.convention.unwrap().value, "t D'");
        }
        let a = QAlgebra::new(4).unwrap();
        assert!(check_gap_one(&a, &minor(&[2, 3], &[1, 4]), 3, 3).unwrap().is_verified());
    }

    #[test]
    fn gap_r_reading() {
        let a = QAlgebra::new(4).unwrap();
        assert!(MinorId::from_labels(&[1, 4], &[1, 2, 4]).is_err());
        let res = check_gap_r(&a, &minor(&[1, 2, 4], &[1, 2, 4]), 4, 3).unwrap();
        assert!(res.is_verified());
        assert_eq!(res.configuration.r, Some(2));
        let res = check_gap_r(&a, &minor(&[1, 2, 4], &[1, 2, 4]), 1, 3).unwrap();
        assert!(res.is_verified());
        assert_eq!(res.convention.unwrap().value, "k");
    }

    #[test]
    fn row_gap_and_transpose() {
        let a = QAlgebra::new(3).unwrap();
        assert!(check_row_gap(&a, &minor(&[1, 3], &[1, 2]), 2, 1).unwrap().is_verified());
        assert!(check_minor_transpose(&a, &minor(&[1, 3], &[1, 2]))
            .unwrap()
            .is_verified());
    }
}
