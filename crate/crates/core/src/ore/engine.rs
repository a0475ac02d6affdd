use std::sync::Arc;

use crate::algebra::{Element, Generator, QMatrixAlgebra};
use crate::coeffs::{Field, Laurent};
use crate::minors::MinorId;

use super::plan::{frame_minor, Cleared, Engine, Plan, PlanKind};
use super::solver::{self, denominator_zeros, Frame};
use super::witness::{DerivationNode, OreWitness, Rule, Side};
use super::OreError;

/// How [`OreEngine::witness_for_element`] builds its witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    Solver,
    Constructive,
    /// Both, cross-validated; the solver's witness is returned with the
    /// constructive derivation attached as a child.
    Both,
}

impl std::str::FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "solver" => Ok(Strategy::Solver),
            "constructive" => Ok(Strategy::Constructive),
            "both" => Ok(Strategy::Both),
            _ => Err(format!(
                "unknown strategy {s:?} (expected solver, constructive or both)"
            )),
        }
    }
}

/// Witness builder for one minor on one side. Generator plans and cleared
/// plans are cached, so reuse an engine across many elements of the same
/// minor.
pub struct OreEngine<'a, F> {
    alg: &'a QMatrixAlgebra<F>,
    minor: MinorId,
    side: Side,
    engine: Engine<'a, F>,
    direct: Frame<F>,
}

impl<'a, F: Field> OreEngine<'a, F> {
    pub fn new(alg: &'a QMatrixAlgebra<F>, minor: &MinorId, side: Side) -> Result<Self, OreError> {
        minor.rows.check_range(alg.n())?;
        minor.cols.check_range(alg.n())?;
        Ok(OreEngine {
            alg,
            minor: minor.clone(),
            side,
            engine: Engine::new(alg, &frame_minor(minor, side, alg.n()))?,
            direct: Frame::new(alg, minor)?,
        })
    }

    pub fn minor(&self) -> &MinorId {
        &self.minor
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// `e` in the engine's frame.
    fn to_frame(&self, e: &Element<F>) -> Result<Element<F>, OreError> {
        match self.side {
            Side::Left => Ok(e.clone()),
            Side::Right => Ok(self.alg.reverse(e)?),
        }
    }

    fn unframe_node(&self, node: &DerivationNode<F>) -> Result<DerivationNode<F>, OreError> {
        match self.side {
            Side::Left => Ok(node.clone()),
            Side::Right => {
                let n = self.alg.n();
                node.map_elements(&|e| Ok(self.alg.reverse(e)?), &|m| m.reflected(n))
            }
        }
    }

    fn check_nonzero(&self, e: &Element<F>) -> Result<(), OreError> {
        if e.n() != self.alg.n() {
            return Err(crate::algebra::AlgebraError::ContextMismatch {
                left: self.alg.n(),
                right: e.n(),
            }
            .into());
        }
        if e.is_zero() {
            return Err(OreError::ZeroElement);
        }
        Ok(())
    }

    /// Assembles and certifies a witness from a cleared plan.
    fn finish(
        &self,
        element: &Element<F>,
        plan: Arc<Plan<F>>,
        cleared: &Cleared<F>,
        derivation: DerivationNode<F>,
        attempts: Vec<super::PowerAttempt>,
    ) -> Result<OreWitness<F>, OreError> {
        let cofactor = match self.side {
            Side::Left => cleared.cofactor.clone(),
            Side::Right => self.alg.reverse(&cleared.cofactor)?,
        };
        let mut w = OreWitness {
            minor: self.minor.clone(),
            side: self.side,
            element: element.clone(),
            power: cleared.power,
            target: cleared.target,
            cofactor,
            scale: cleared.scale.clone(),
            denominator_zeros: denominator_zeros(&cleared.denominators),
            certified: false,
            derivation,
            attempts,
            plan: Some(plan),
        };
        let residual = w.residual(self.alg)?;
        if !residual.is_zero() {
            return Err(OreError::CertificateFailed(format!(
                "witness for {element} against {} leaves residual {residual}",
                self.minor
            )));
        }
        w.certified = true;
        Ok(w)
    }

    fn witness_from_plan(
        &self,
        element: &Element<F>,
        plan: Arc<Plan<F>>,
        target: u32,
    ) -> Result<OreWitness<F>, OreError> {
        let cleared = self.engine.clear(&plan, target)?;
        let node = self.unframe_node(&cleared.node)?;
        self.finish(element, plan, &cleared, node, Vec::new())
    }

    /// Default power bound `|K| + deg(element)`.
    pub fn default_max_power(&self, element: &Element<F>) -> u32 {
        (self.minor.size() + element.degree()) as u32
    }

    /// Minimal power `m ≤ m_max` found by exact linear solving in the
    /// multidegree-forced component. Powers below the returned one are
    /// recorded as infeasible attempts.
    pub fn solve(&self, element: &Element<F>, m_max: Option<u32>) -> Result<OreWitness<F>, OreError> {
        self.check_nonzero(element)?;
        let m_max = m_max.unwrap_or_else(|| self.default_max_power(element));
        let sol = match solver::solve(self.alg, &self.direct, element, self.side, 1, m_max)? {
            Ok(s) => s,
            Err(attempts) => return Err(OreError::Unsat { m_max, attempts }),
        };
        let node = DerivationNode {
            rule: Rule::Solver,
            minor: self.minor.clone(),
            element: element.clone(),
            power: sol.power,
            target: 1,
            scale: sol.scale.clone(),
            cofactor: sol.cofactor.clone(),
            note: (sol.power > 1).then(|| format!("powers 1..{} infeasible by rank", sol.power - 1)),
            children: Vec::new(),
        };
        let plan = self.engine.solved(self.to_frame(element)?);
        let cleared = Cleared {
            power: sol.power,
            target: 1,
            scale: sol.scale,
            cofactor: self.to_frame(&sol.cofactor)?,
            denominators: sol.denominators,
            node: node.clone(),
        };
        self.finish(element, plan, &cleared, node, sol.attempts)
    }

    /// Witness for `t^k_l` built from the placement of the generator relative
    /// to the minor, without generic linear solving.
    pub fn generator(&self, k: u8, l: u8) -> Result<OreWitness<F>, OreError> {
        let t = self.alg.gen(k as usize, l as usize)?;
        let g = match self.side {
            Side::Left => Generator::new(k, l),
            Side::Right => Generator::new(k, l).reverse(self.alg.n()),
        };
        let plan = self.engine.generator(g)?;
        self.witness_from_plan(&t, plan, 1)
    }

    /// Constructive witness for an arbitrary element: q-commuting elements
    /// directly, otherwise monomial by monomial from generator witnesses.
    pub fn constructive(&self, element: &Element<F>) -> Result<OreWitness<F>, OreError> {
        self.check_nonzero(element)?;
        let plan = self.engine.decompose(&self.to_frame(element)?)?;
        self.witness_from_plan(element, plan, 1)
    }

    pub fn witness_for_element(&self, element: &Element<F>, strategy: Strategy) -> Result<OreWitness<F>, OreError> {
        match strategy {
            Strategy::Solver => self.solve(element, None),
            Strategy::Constructive => self.constructive(element),
            Strategy::Both => {
                let c = self.constructive(element)?;
                let mut s = self.solve(element, None)?;
                s.derivation.note = Some(format!(
                    "cross-validated against a constructive witness of power {}",
                    c.power
                ));
                s.derivation.children.push(c.derivation);
                Ok(s)
            }
        }
    }

    fn plan_of<'w>(&self, w: &'w OreWitness<F>) -> Result<&'w Arc<Plan<F>>, OreError> {
        if w.minor != self.minor || w.side != self.side {
            return Err(OreError::Mismatch(format!(
                "witness for {} ({}) used with {} ({})",
                w.minor, w.side, self.minor, self.side
            )));
        }
        if w.target != 1 {
            return Err(OreError::Mismatch(
                "witness already extended to a power of the minor".into(),
            ));
        }
        w.plan
            .as_ref()
            .ok_or_else(|| OreError::Mismatch("witness carries no derivation plan".into()))
    }

    /// Witness for `e1 · e2`: `e2` is cleared first and `e1` is then cleared
    /// against the power that produced.
    pub fn compose_product(&self, w1: &OreWitness<F>, w2: &OreWitness<F>) -> Result<OreWitness<F>, OreError> {
        let (p1, p2) = (self.plan_of(w1)?.clone(), self.plan_of(w2)?.clone());
        let element = self.alg.multiply(&w1.element, &w2.element)?;
        let (a, b) = match self.side {
            Side::Left => (p1, p2),
            Side::Right => (p2, p1),
        };
        let frame_element = self.alg.multiply(&a.element, &b.element)?;
        self.check_nonzero(&element)?;
        self.witness_from_plan(&element, Plan::new(frame_element, PlanKind::Product(a, b)), 1)
    }

    /// Witness for `e1 + e2`, aligned to the larger of the two powers.
    pub fn compose_sum(&self, w1: &OreWitness<F>, w2: &OreWitness<F>) -> Result<OreWitness<F>, OreError> {
        let (p1, p2) = (self.plan_of(w1)?.clone(), self.plan_of(w2)?.clone());
        let element = &w1.element + &w2.element;
        self.check_nonzero(&element)?;
        let frame_element = &p1.element + &p2.element;
        let plan = Plan::new(
            frame_element,
            PlanKind::Sum(vec![(Laurent::one(), p1), (Laurent::one(), p2)]),
        );
        self.witness_from_plan(&element, plan, 1)
    }

    /// Witness for `r` from a relation `r' D - D^m r = e` (left form) or
    /// `D r' - r D^m = e` (right form) and a witness for `e`; `None` stands
    /// for `e = 0`.
    pub fn reduce_relative(
        &self,
        r: &Element<F>,
        r_prime: &Element<F>,
        m: u32,
        e: Option<&OreWitness<F>>,
    ) -> Result<OreWitness<F>, OreError> {
        self.check_nonzero(r)?;
        let d = &self.direct.d;
        let dm = self.direct.pow(self.alg, m)?;
        let actual = match self.side {
            Side::Left => &self.alg.multiply(r_prime, d)? - &self.alg.multiply(&dm, r)?,
            Side::Right => &self.alg.multiply(d, r_prime)? - &self.alg.multiply(r, &dm)?,
        };
        let claimed = e.map(|w| w.element.clone()).unwrap_or_else(|| self.alg.zero());
        if actual != claimed {
            return Err(OreError::ResidualMismatch(format!(
                "relation gives {actual}, witness clears {claimed}"
            )));
        }
        let correction = match e {
            Some(w) => Some(self.plan_of(w)?.clone()),
            None => None,
        };
        let plan = Plan::new(
            self.to_frame(r)?,
            PlanKind::Relative {
                r_prime: self.to_frame(r_prime)?,
                m,
                correction,
            },
        );
        self.witness_from_plan(r, plan, 1)
    }

    /// Clears `w.element` against `D^j` by iterating the witness: the
    /// cofactor at each stage is cleared again against `D`, by the solver for
    /// solver witnesses and constructively otherwise.
    pub fn extend_to_power(&self, w: &OreWitness<F>, j: u32) -> Result<OreWitness<F>, OreError> {
        if j < 1 {
            return Err(OreError::BadPower(j));
        }
        let plan = self.plan_of(w)?.clone();
        if j == 1 {
            return Ok(w.clone());
        }
        let cleared = match &plan.kind {
            PlanKind::Normal { .. } => (*self.engine.clear(&plan, j)?).clone(),
            PlanKind::Solved => self
                .engine
                .power_chain(&plan, j, &|e| Ok(self.engine.solved(e.clone())))?,
            _ => self.engine.power_chain(&plan, j, &|e| self.engine.decompose(e))?,
        };
        let node = self.unframe_node(&cleared.node)?;
        let node = if node.rule == Rule::Power {
            node
        } else {
            DerivationNode {
                rule: Rule::Power,
                children: vec![node.clone()],
                ..node
            }
        };
        self.finish(&w.element, plan, &cleared, node, Vec::new())
    }
}

/// Free-standing form of [`OreEngine::solve`].
pub fn solve_witness<F: Field>(
    alg: &QMatrixAlgebra<F>,
    minor: &MinorId,
    element: &Element<F>,
    side: Side,
    m_max: Option<u32>,
) -> Result<OreWitness<F>, OreError> {
    OreEngine::new(alg, minor, side)?.solve(element, m_max)
}

pub fn witness_generator_constructive<F: Field>(
    alg: &QMatrixAlgebra<F>,
    minor: &MinorId,
    k: u8,
    l: u8,
    side: Side,
) -> Result<OreWitness<F>, OreError> {
    OreEngine::new(alg, minor, side)?.generator(k, l)
}

pub fn witness_for_element<F: Field>(
    alg: &QMatrixAlgebra<F>,
    minor: &MinorId,
    element: &Element<F>,
    side: Side,
    strategy: Strategy,
) -> Result<OreWitness<F>, OreError> {
    OreEngine::new(alg, minor, side)?.witness_for_element(element, strategy)
}

fn engine_for<'a, F: Field>(alg: &'a QMatrixAlgebra<F>, w: &OreWitness<F>) -> Result<OreEngine<'a, F>, OreError> {
    OreEngine::new(alg, &w.minor, w.side)
}

pub fn compose_product<F: Field>(
    alg: &QMatrixAlgebra<F>,
    w1: &OreWitness<F>,
    w2: &OreWitness<F>,
) -> Result<OreWitness<F>, OreError> {
    engine_for(alg, w1)?.compose_product(w1, w2)
}

pub fn compose_sum<F: Field>(
    alg: &QMatrixAlgebra<F>,
    w1: &OreWitness<F>,
    w2: &OreWitness<F>,
) -> Result<OreWitness<F>, OreError> {
    engine_for(alg, w1)?.compose_sum(w1, w2)
}

#[allow(clippy::too_many_arguments)]
pub fn reduce_relative<F: Field>(
    alg: &QMatrixAlgebra<F>,
    minor: &MinorId,
    side: Side,
    r: &Element<F>,
    r_prime: &Element<F>,
    m: u32,
    e: Option<&OreWitness<F>>,
) -> Result<OreWitness<F>, OreError> {
    OreEngine::new(alg, minor, side)?.reduce_relative(r, r_prime, m, e)
}

pub fn extend_to_power<F: Field>(
    alg: &QMatrixAlgebra<F>,
    w: &OreWitness<F>,
    j: u32,
) -> Result<OreWitness<F>, OreError> {
    engine_for(alg, w)?.extend_to_power(w, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minors::quantum_minor;
    use crate::text::parse_expression;
    use crate::QAlgebra;

    fn minor(r: &[u8], c: &[u8]) -> MinorId {
        MinorId::from_labels(r, c).unwrap()
    }

    fn parse(a: &QAlgebra, s: &str) -> Element<crate::Rational> {
        parse_expression(a, s).unwrap()
    }

    #[test]
    fn minor_clears_itself() {
        let a = QAlgebra::new(3).unwrap();
        let m = minor(&[1, 2], &[1, 3]);
        let d = quantum_minor(&a, &m).unwrap();
        for side in [Side::Left, Side::Right] {
            let w = solve_witness(&a, &m, &d, side, None).unwrap();
            assert_eq!((w.power, &w.cofactor), (1, &d));
            assert!(w.certified);
        }
    }

    #[test]
    fn corner_generator_needs_power_two() {
        let a = QAlgebra::new(2).unwrap();
        let m = minor(&[2], &[2]);
        let w = solve_witness(&a, &m, &a.t(1, 1), Side::Left, None).unwrap();
        assert_eq!(w.power, 2);
        assert_eq!(w.attempts.len(), 1);
        assert!(!w.attempts[0].feasible);
        let expected = parse(&a, "t[1,1] t[2,2] - (q - q^-1)(1 + q^-2) t[1,2] t[2,1]");
        assert_eq!(w.cofactor, expected);
        assert!(w.scale.is_one());
        assert!(matches!(
            solve_witness(&a, &m, &a.t(1, 1), Side::Left, Some(1)),
            Err(OreError::Unsat { m_max: 1, .. })
        ));
    }

    #[test]
    fn central_determinant() {
        let a = QAlgebra::new(2).unwrap();
        let m = minor(&[1, 2], &[1, 2]);
        let w = solve_witness(&a, &m, &a.t(1, 1), Side::Left, None).unwrap();
        assert_eq!((w.power, &w.cofactor), (1, &a.t(1, 1)));
    }

    #[test]
    fn constructive_cases() {
        let a = QAlgebra::new(3).unwrap();
        let m = minor(&[1, 2], &[1, 2]);
        let w = witness_generator_constructive(&a, &m, 1, 2, Side::Left).unwrap();
        assert_eq!(w.derivation.rule, Rule::Centrality);
        assert_eq!((w.power, &w.cofactor), (1, &a.t(1, 2)));
        let w = witness_generator_constructive(&a, &m, 3, 1, Side::Left).unwrap();
        assert_eq!(w.derivation.rule, Rule::QCommutation);
        assert_eq!(w.power, 1);
        assert!(crate::minors::proportionality(&w.cofactor, &a.t(3, 1))
            .unwrap()
            .is_unit());

        let m = minor(&[1, 2], &[1, 3]);
        for side in [Side::Left, Side::Right] {
            let c = witness_generator_constructive(&a, &m, 1, 2, side).unwrap();
            assert_eq!(c.derivation.rule, Rule::GapRecursion);
            assert!(c.replay(&a).unwrap().is_none());
            let s = solve_witness(&a, &m, &a.t(1, 2), side, None).unwrap();
            assert!(s.power <= c.power);
        }
    }

    #[test]
    fn every_generator_both_sides_small() {
        for n in 2..=3u8 {
            let a = QAlgebra::new(n as usize).unwrap();
            for m in MinorId::all(n, 1..n as usize) {
                for side in [Side::Left, Side::Right] {
                    let eng = OreEngine::new(&a, &m, side).unwrap();
                    for k in 1..=n {
                        for l in 1..=n {
                            let c = eng.generator(k, l).unwrap();
                            assert!(c.certified);
                            assert!(c.replay(&a).unwrap().is_none(), "{m} t[{k},{l}] {side}");
                            let s = eng.solve(&a.t(k as usize, l as usize), None).unwrap();
                            assert!(s.power <= 3 && s.power <= c.power, "{m} t[{k},{l}] {side}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn products_and_sums() {
        let a = QAlgebra::new(2).unwrap();
        let m = minor(&[2], &[2]);
        let eng = OreEngine::new(&a, &m, Side::Left).unwrap();
        let w1 = eng.solve(&a.t(1, 1), None).unwrap();
        let p = eng.compose_product(&w1, &w1).unwrap();
        assert_eq!(p.element, a.pow(&a.t(1, 1), 2).unwrap());
        let s = eng.solve(&p.element, None).unwrap();
        assert!(s.power <= p.power);

        let d = quantum_minor(&a, &m).unwrap();
        let wd = eng.solve(&d, None).unwrap();
        let dd = eng.compose_product(&wd, &wd).unwrap();
        assert_eq!((dd.power, &dd.cofactor), (1, &a.pow(&d, 2).unwrap()));

        let w2 = eng.constructive(&parse(&a, "t[1,2] t[2,1]")).unwrap();
        let sum = eng.compose_sum(&w1, &w2).unwrap();
        assert!(sum.certified);
        assert_eq!(sum.power, w1.power.max(w2.power));

        let det = minor(&[1, 2], &[1, 2]);
        let e = OreEngine::new(&a, &det, Side::Right).unwrap();
        let s = e
            .compose_sum(&e.solve(&a.t(1, 1), None).unwrap(), &e.solve(&a.t(1, 2), None).unwrap())
            .unwrap();
        assert_eq!(s.power, 1);

        let other = OreEngine::new(&a, &m, Side::Right).unwrap();
        let w3 = other.solve(&a.t(1, 1), None).unwrap();
        assert!(matches!(eng.compose_sum(&w1, &w3), Err(OreError::Mismatch(_))));
    }

    #[test]
    fn relative_reduction_reproduces_solver() {
        let a = QAlgebra::new(2).unwrap();
        let m = minor(&[2], &[2]);
        let eng = OreEngine::new(&a, &m, Side::Left).unwrap();
        let r = a.t(1, 1);
        let d = quantum_minor(&a, &m).unwrap();
        let e = a.commutator(&r, &d).unwrap();
        assert_eq!(e, parse(&a, "(q - q^-1) t[1,2] t[2,1]"));
        let we = eng.constructive(&e).unwrap();
        assert_eq!(we.power, 1);
        let w = eng.reduce_relative(&r, &r, 1, Some(&we)).unwrap();
        let s = eng.solve(&r, None).unwrap();
        assert_eq!((w.power, &w.cofactor), (s.power, &s.cofactor));
        assert_eq!(w.derivation.rule, Rule::Relative);

        assert!(matches!(
            eng.reduce_relative(&r, &a.t(1, 2), 1, Some(&we)),
            Err(OreError::ResidualMismatch(_))
        ));
        let zero = eng.reduce_relative(&d, &d, 1, None).unwrap();
        assert_eq!((zero.power, &zero.cofactor), (1, &d));
    }

    #[test]
    fn relative_outside_generator() {
        let a = QAlgebra::new(3).unwrap();
        let m = minor(&[1, 2], &[1, 2]);
        let eng = OreEngine::new(&a, &m, Side::Left).unwrap();
        let d = quantum_minor(&a, &m).unwrap();
        let r = a.t(3, 3);
        let e = a.commutator(&r, &d).unwrap();
        let we = eng.solve(&e, None).unwrap();
        let w = eng.reduce_relative(&r, &r, 1, Some(&we)).unwrap();
        assert!(w.certified);
        assert_eq!(w.power, 1 + we.power);
    }

    #[test]
    fn extension_to_powers() {
        let a = QAlgebra::new(2).unwrap();
        let m = minor(&[2], &[2]);
        for side in [Side::Left, Side::Right] {
            let eng = OreEngine::new(&a, &m, side).unwrap();
            let w = eng.solve(&a.t(1, 1), None).unwrap();
            assert_eq!(eng.extend_to_power(&w, 1).unwrap().target, 1);
            let w2 = eng.extend_to_power(&w, 2).unwrap();
            assert_eq!(w2.target, 2);
            assert!(w2.residual(&a).unwrap().is_zero());
            assert!(w2.replay(&a).unwrap().is_none());
            let c = eng.constructive(&a.t(1, 1)).unwrap();
            let c3 = eng.extend_to_power(&c, 3).unwrap();
            assert!(c3.replay(&a).unwrap().is_none());
            let unit = eng.solve(&a.one(), None).unwrap();
            let u3 = eng.extend_to_power(&unit, 3).unwrap();
            assert_eq!((u3.power, u3.target), (3, 3));
            assert!(matches!(eng.extend_to_power(&w, 0), Err(OreError::BadPower(0))));
        }
    }

    #[test]
    fn strategies_agree() {
        let a = QAlgebra::new(3).unwrap();
        let m = minor(&[2, 3], &[2, 3]);
        let e = parse(&a, "t[1,3] t[3,1] + q t[2,2]");
        for side in [Side::Left, Side::Right] {
            let w = witness_for_element(&a, &m, &e, side, Strategy::Both).unwrap();
            assert!(w.certified);
            assert!(w.replay(&a).unwrap().is_none());
        }
        let unit = witness_for_element(&a, &m, &a.one(), Side::Left, Strategy::Solver).unwrap();
        assert_eq!((unit.power, &unit.cofactor), (1, &a.one()));
        assert!(matches!(
            witness_for_element(&a, &m, &a.zero(), Side::Left, Strategy::Solver),
            Err(OreError::ZeroElement)
        ));
    }
}
