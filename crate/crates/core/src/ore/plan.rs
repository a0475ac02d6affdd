//! Constructive witnesses.
//!
//! A [`Plan`] records how an element relates to `D`; clearing a plan against
//! `D^j` produces `scale · D^N · e = R · D^j` together with a derivation node.
//! All plans live in a left-form frame; right-form witnesses are obtained by
//! running the engine on the reflected minor and mapping back through the
//! order-reversing anti-automorphism.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::{Element, Generator, QMatrixAlgebra};
use crate::coeffs::{Field, Laurent};
use crate::identities::{col_gap_terms, expand_commutator, row_gap_terms, E0Expr, GapTerm, Placement};
use crate::minors::{proportionality, quantum_minor, MinorId};

use super::solver::{self, Frame};
use super::witness::{DerivationNode, Rule, Side};
use super::OreError;

#[derive(Debug)]
pub(crate) enum PlanKind<F> {
    /// `D e = factor · e · D`
    Normal { factor: Laurent<F>, rule: Rule },
    /// Cleared by the linear solver.
    Solved,
    /// `element = a · b`
    Product(Arc<Plan<F>>, Arc<Plan<F>>),
    /// `element = Σ c_i e_i`
    Sum(Vec<(Laurent<F>, Arc<Plan<F>>)>),
    /// `D r = factor · r · D - correction`
    Twisted {
        factor: Laurent<F>,
        correction: Arc<Plan<F>>,
        rule: Rule,
    },
    /// `D^m r = r' · D - correction`; no correction means it is zero.
    Relative {
        r_prime: Element<F>,
        m: u32,
        correction: Option<Arc<Plan<F>>>,
    },
}

#[derive(Debug)]
pub(crate) struct Plan<F> {
    pub element: Element<F>,
    pub kind: PlanKind<F>,
    pub note: Option<String>,
}

impl<F: Field> Plan<F> {
    pub fn new(element: Element<F>, kind: PlanKind<F>) -> Arc<Self> {
        Arc::new(Plan {
            element,
            kind,
            note: None,
        })
    }

    fn with_note(element: Element<F>, kind: PlanKind<F>, note: String) -> Arc<Self> {
        Arc::new(Plan {
            element,
            kind,
            note: Some(note),
        })
    }
}

/// `scale · D^power · element = cofactor · D^target`
#[derive(Clone, Debug)]
pub(crate) struct Cleared<F> {
    pub power: u32,
    pub target: u32,
    pub scale: Laurent<F>,
    pub cofactor: Element<F>,
    pub denominators: Vec<Laurent<F>>,
    pub node: DerivationNode<F>,
}

/// A cleared plan together with the plan it keeps alive.
type Memo<F> = (Arc<Plan<F>>, Arc<Cleared<F>>);

pub(crate) type PlanFor<'f, F> = dyn Fn(&Element<F>) -> Result<Arc<Plan<F>>, OreError> + 'f;

pub(crate) struct Engine<'a, F> {
    pub alg: &'a QMatrixAlgebra<F>,
    pub frame: Frame<F>,
    gens: Mutex<HashMap<Generator, Arc<Plan<F>>>>,
    memo: Mutex<HashMap<(usize, u32), Memo<F>>>,
}

impl<'a, F: Field> Engine<'a, F> {
    pub fn new(alg: &'a QMatrixAlgebra<F>, frame_minor: &MinorId) -> Result<Self, OreError> {
        Ok(Engine {
            alg,
            frame: Frame::new(alg, frame_minor)?,
            gens: Mutex::new(HashMap::new()),
            memo: Mutex::new(HashMap::new()),
        })
    }

    fn d(&self) -> &Element<F> {
        &self.frame.d
    }

    fn pow(&self, k: u32) -> Result<Element<F>, OreError> {
        self.frame.pow(self.alg, k)
    }

    fn mul(&self, a: &Element<F>, b: &Element<F>) -> Result<Element<F>, OreError> {
        Ok(self.alg.multiply(a, b)?)
    }

    /// `Some(u)` with `D e = u · e · D`, `u` a unit.
    fn normal_factor(&self, e: &Element<F>) -> Result<Option<Laurent<F>>, OreError> {
        let de = self.mul(self.d(), e)?;
        let ed = self.mul(e, self.d())?;
        Ok(proportionality(&de, &ed).filter(|u| u.is_unit()))
    }

    fn normal_plan(&self, e: Element<F>, factor: Laurent<F>, note: Option<String>) -> Arc<Plan<F>> {
        let rule = if factor.is_one() {
            Rule::Centrality
        } else {
            Rule::QCommutation
        };
        let kind = PlanKind::Normal { factor, rule };
        match note {
            Some(n) => Plan::with_note(e, kind, n),
            None => Plan::new(e, kind),
        }
    }

    pub fn solved(&self, e: Element<F>) -> Arc<Plan<F>> {
        Plan::new(e, PlanKind::Solved)
    }

    /// Plan for a single generator, by the position of `t^k_l` relative to `D`.
    pub fn generator(&self, g: Generator) -> Result<Arc<Plan<F>>, OreError> {
        if let Some(p) = self.gens.lock().unwrap().get(&g) {
            return Ok(p.clone());
        }
        let p = self.build_generator(g)?;
        self.gens.lock().unwrap().insert(g, p.clone());
        Ok(p)
    }

    fn build_generator(&self, g: Generator) -> Result<Arc<Plan<F>>, OreError> {
        let alg = self.alg;
        let t = alg.gen(g.row as usize, g.col as usize)?;
        let minor = &self.frame.minor;
        let placement = Placement::of(minor, g);
        match placement {
            Placement::Inside => Ok(self.normal_plan(t, Laurent::one(), Some("k in K, l in L".into()))),
            Placement::ColGap(_) | Placement::RowGap(_) => {
                let terms = if let Placement::ColGap(_) = placement {
                    col_gap_terms::<F>(minor, g.row, g.col, g.row)?
                } else {
                    row_gap_terms::<F>(minor, g.row, g.col)?
                };
                self.gap_plan(t, &terms, placement)
            }
            Placement::Outside => {
                if let Some(u) = self.normal_factor(&t)? {
                    return Ok(self.normal_plan(t, u, Some("outside, q-commuting".into())));
                }
                self.outside_plan(g, t)
            }
            _ => match self.normal_factor(&t)? {
                Some(u) => Ok(self.normal_plan(t, u, Some(placement.class().into()))),
                None => Ok(self.solved(t)),
            },
        }
    }

    /// `D t = q^-1 t D + Σ c_u t_u D'_u`, each `t_u` central and each `D'_u`
    /// q-commuting with `D`.
    fn gap_plan(&self, t: Element<F>, terms: &[GapTerm<F>], placement: Placement) -> Result<Arc<Plan<F>>, OreError> {
        let mut parts = Vec::new();
        let mut correction = Element::zero(self.alg.n());
        for term in terms {
            let tu = self.generator(term.generator)?;
            let dp = quantum_minor(self.alg, &term.minor)?;
            let dp_plan = self.decompose(&dp)?;
            let elem = self.mul(&tu.element, &dp)?;
            let neg = -&term.coeff;
            correction = &correction + &elem.scale(&neg);
            parts.push((neg, Plan::new(elem, PlanKind::Product(tu, dp_plan))));
        }
        let lhs = &self.mul(self.d(), &t)? - &self.mul(&t, self.d())?.scale(&Laurent::q_pow(-1));
        if &lhs + &correction != Element::zero(self.alg.n()) {
            return Err(OreError::Internal(format!("gap identity fails for {t}")));
        }
        let correction = Plan::new(correction, PlanKind::Sum(parts));
        Ok(Plan::with_note(
            t,
            PlanKind::Twisted {
                factor: Laurent::q_pow(-1),
                correction,
                rule: Rule::GapRecursion,
            },
            placement.class().into(),
        ))
    }

    /// `D t = t D - [t, D]` with `[t, D]` expanded into `E_0` words.
    fn outside_plan(&self, g: Generator, t: Element<F>) -> Result<Arc<Plan<F>>, OreError> {
        let cert = expand_commutator(self.alg, g, &E0Expr::minor_expansion(&self.frame.minor))?;
        if !cert.is_complete() {
            return Err(OreError::Internal(format!(
                "commutator of {g} with the minor leaves E_0"
            )));
        }
        let mut parts = Vec::new();
        for (c, word) in &cert.expression {
            parts.push((c.clone(), self.word(word)?));
        }
        let e = cert.re_expand(self.alg)?;
        if e != self.alg.commutator(&t, self.d())? {
            return Err(OreError::Internal(format!(
                "commutator expansion of {g} does not re-expand"
            )));
        }
        let correction = Plan::new(e, PlanKind::Sum(parts));
        Ok(Plan::with_note(
            t,
            PlanKind::Twisted {
                factor: Laurent::one(),
                correction,
                rule: Rule::Relative,
            },
            "outside".into(),
        ))
    }

    /// Right-nested product plan for a word.
    pub fn word(&self, word: &[Generator]) -> Result<Arc<Plan<F>>, OreError> {
        match word {
            [] => Ok(self.normal_plan(self.alg.one(), Laurent::one(), None)),
            [g] => self.generator(*g),
            [g, rest @ ..] => {
                let a = self.generator(*g)?;
                let b = self.word(rest)?;
                let e = self.mul(&a.element, &b.element)?;
                Ok(Plan::new(e, PlanKind::Product(a, b)))
            }
        }
    }

    /// Constructive plan for an arbitrary element: q-commuting elements
    /// directly, otherwise term by term as products of generator plans.
    pub fn decompose(&self, e: &Element<F>) -> Result<Arc<Plan<F>>, OreError> {
        if e.is_zero() {
            return Err(OreError::ZeroElement);
        }
        if e.as_scalar().is_some() {
            return Ok(self.normal_plan(e.clone(), Laurent::one(), None));
        }
        if let Some((m, c)) = e.terms().next() {
            if e.len() == 1 && c.is_one() && m.factors().len() == 1 {
                return self.generator(m.factors()[0]);
            }
        }
        if let Some(u) = self.normal_factor(e)? {
            return Ok(self.normal_plan(e.clone(), u, None));
        }
        let mut parts = Vec::new();
        for (m, c) in e.terms() {
            parts.push((c.clone(), self.word(m.factors())?));
        }
        if parts.len() == 1 && parts[0].0.is_one() {
            return Ok(parts.pop().unwrap().1);
        }
        Ok(Plan::new(e.clone(), PlanKind::Sum(parts)))
    }

    fn node(&self, plan: &Plan<F>, rule: Rule, c: &Cleared<F>, children: Vec<DerivationNode<F>>) -> DerivationNode<F> {
        DerivationNode {
            rule,
            minor: self.frame.minor.clone(),
            element: plan.element.clone(),
            power: c.power,
            target: c.target,
            scale: c.scale.clone(),
            cofactor: c.cofactor.clone(),
            note: plan.note.clone(),
            children,
        }
    }

    /// Clears `plan` against `D^target`.
    pub fn clear(&self, plan: &Arc<Plan<F>>, target: u32) -> Result<Arc<Cleared<F>>, OreError> {
        let key = (Arc::as_ptr(plan) as usize, target);
        if let Some((_, hit)) = self.memo.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let out = Arc::new(self.clear_uncached(plan, target)?);
        self.memo.lock().unwrap().insert(key, (plan.clone(), out.clone()));
        Ok(out)
    }

    fn clear_uncached(&self, plan: &Arc<Plan<F>>, j: u32) -> Result<Cleared<F>, OreError> {
        let n = self.alg.n();
        let e = &plan.element;
        let mut c = Cleared {
            power: j,
            target: j,
            scale: Laurent::one(),
            cofactor: e.clone(),
            denominators: Vec::new(),
            node: DerivationNode {
                rule: Rule::Centrality,
                minor: self.frame.minor.clone(),
                element: e.clone(),
                power: 0,
                target: 0,
                scale: Laurent::one(),
                cofactor: e.clone(),
                note: None,
                children: Vec::new(),
            },
        };
        if j == 0 {
            c.power = 0;
            c.node.note = Some("trivial at D^0".into());
            return Ok(c);
        }
        let (rule, children) = match &plan.kind {
            PlanKind::Normal { factor, rule } => {
                c.cofactor = e.scale(&factor.pow(j));
                (*rule, Vec::new())
            }
            PlanKind::Solved => {
                let m_max = j - 1 + self.frame.minor.size() as u32 + e.degree().max(1) as u32;
                match solver::solve(self.alg, &self.frame, e, Side::Left, j, m_max)? {
                    Ok(s) => {
                        c.power = s.power;
                        c.scale = s.scale;
                        c.cofactor = s.cofactor;
                        c.denominators = s.denominators;
                    }
                    Err(attempts) => return Err(OreError::Unsat { m_max, attempts }),
                }
                (Rule::Solver, Vec::new())
            }
            PlanKind::Product(a, b) => {
                let cb = self.clear(b, j)?;
                let ca = self.clear(a, cb.power)?;
                c.power = ca.power;
                c.scale = &ca.scale * &cb.scale;
                c.cofactor = self.mul(&ca.cofactor, &cb.cofactor)?;
                c.denominators = [ca.denominators.clone(), cb.denominators.clone()].concat();
                (Rule::Product, vec![ca.node.clone(), cb.node.clone()])
            }
            PlanKind::Sum(parts) => {
                let cleared: Vec<Arc<Cleared<F>>> =
                    parts.iter().map(|(_, p)| self.clear(p, j)).collect::<Result<_, _>>()?;
                let power = cleared.iter().map(|x| x.power).max().unwrap_or(j);
                let scale = cleared.iter().fold(Laurent::one(), |acc, x| &acc * &x.scale);
                let mut cof = Element::zero(n);
                for (i, ((coef, _), x)) in parts.iter().zip(&cleared).enumerate() {
                    let others = cleared
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != i)
                        .fold(coef.clone(), |acc, (_, y)| &acc * &y.scale);
                    let term = self.mul(&self.pow(power - x.power)?, &x.cofactor)?;
                    cof = &cof + &term.scale(&others);
                    c.denominators.extend(x.denominators.iter().cloned());
                }
                c.power = power;
                c.scale = scale;
                c.cofactor = cof;
                (Rule::Sum, cleared.iter().map(|x| x.node.clone()).collect())
            }
            PlanKind::Twisted {
                factor,
                correction,
                rule,
            } => {
                // D^N r = f^N r D^N - Σ_{i<N} f^{N-1-i} D^i E D^{N-1-i}, N = P + j;
                // terms with i < P already end in D^j, the others clear E against D^t
                let ce: Vec<Arc<Cleared<F>>> = (1..=j).map(|t| self.clear(correction, t)).collect::<Result<_, _>>()?;
                let p = ce
                    .iter()
                    .zip(1..=j)
                    .map(|(x, t)| (x.power as i64 - t as i64 + 1).max(0))
                    .max()
                    .unwrap_or(0) as u32;
                let big_n = p + j;
                let s = ce.iter().fold(Laurent::one(), |acc, x| &acc * &x.scale);
                let mut cof = self.mul(e, &self.pow(p)?)?.scale(&(&s * &factor.pow(big_n)));
                let corr = &correction.element;
                for i in 0..p {
                    let term = self.mul(&self.mul(&self.pow(i)?, corr)?, &self.pow(p - 1 - i)?)?;
                    cof = &cof - &term.scale(&(&s * &factor.pow(big_n - 1 - i)));
                }
                for (idx, x) in ce.iter().enumerate() {
                    let t = idx as u32 + 1;
                    let others = ce
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != idx)
                        .fold(factor.pow(j - t), |acc, (_, y)| &acc * &y.scale);
                    let left = self.pow(p + t - 1 - x.power)?;
                    let term = self.mul(&left, &x.cofactor)?;
                    cof = &cof - &term.scale(&others);
                    c.denominators.extend(x.denominators.iter().cloned());
                }
                c.power = big_n;
                c.scale = s;
                c.cofactor = cof;
                (*rule, ce.iter().map(|x| x.node.clone()).collect())
            }
            PlanKind::Relative { r_prime, m, correction } => {
                if j > 1 {
                    return self.power_chain(plan, j, &|e| self.decompose(e));
                }
                // s D^M (D^m r) = s D^M r' D - R D
                match correction {
                    None => {
                        c.power = *m;
                        c.cofactor = r_prime.clone();
                        (Rule::Relative, Vec::new())
                    }
                    Some(corr) => {
                        let x = self.clear(corr, 1)?;
                        c.power = x.power + m;
                        c.scale = x.scale.clone();
                        c.cofactor = &self.mul(&self.pow(x.power)?, r_prime)?.scale(&x.scale) - &x.cofactor;
                        c.denominators = x.denominators.clone();
                        (Rule::Relative, vec![x.node.clone()])
                    }
                }
            }
        };
        c.node = self.node(plan, rule, &c, children);
        Ok(c)
    }

    /// Clears against `D^j` by clearing against `D^{j-1}` and then clearing
    /// the cofactor against `D`.
    pub fn power_chain(&self, plan: &Arc<Plan<F>>, j: u32, next: &PlanFor<'_, F>) -> Result<Cleared<F>, OreError> {
        let first = if j == 2 {
            self.clear(plan, 1)?
        } else {
            Arc::new(self.power_chain(plan, j - 1, next)?)
        };
        let rest_plan = next(&first.cofactor)?;
        let rest = self.clear(&rest_plan, 1)?;
        let mut c = Cleared {
            power: first.power + rest.power,
            target: j,
            scale: &first.scale * &rest.scale,
            cofactor: rest.cofactor.clone(),
            denominators: [first.denominators.clone(), rest.denominators.clone()].concat(),
            node: first.node.clone(),
        };
        c.node = self.node(plan, Rule::Power, &c, vec![first.node.clone(), rest.node.clone()]);
        Ok(c)
    }
}

/// The frame minor for a side: the minor itself for left-form witnesses, the
/// reflected minor for right-form ones.
pub(crate) fn frame_minor(minor: &MinorId, side: Side, n: u8) -> MinorId {
    match side {
        Side::Left => minor.clone(),
        Side::Right => minor.reflected(n),
    }
}
