use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, QMatrixAlgebra};
use crate::coeffs::{Field, Laurent};
use crate::minors::{quantum_minor, MinorId};

use super::plan::Plan;
use super::OreError;

/// Which Ore equation a witness satisfies, for `D = D^K_L`:
/// left form `scale · D^m · e = r' · D^j`, right form `scale · e · D^m = D^j · r'`.
/// `j` is 1 unless the witness was extended to a power of `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl std::str::FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "left" | "left-form" => Ok(Side::Left),
            "right" | "right-form" => Ok(Side::Right),
            _ => Err(format!("unknown side {s:?} (expected left or right)")),
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    Solver,
    Centrality,
    QCommutation,
    GapRecursion,
    #[serde(rename = "Lemma1-product")]
    Product,
    #[serde(rename = "Lemma1-sum")]
    Sum,
    #[serde(rename = "Lemma1-relative")]
    Relative,
    #[serde(rename = "Lemma1-power")]
    Power,
    Chain,
}

/// One node of a derivation: an Ore equation for `element` that holds on its
/// own, justified by its children.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationNode<F> {
    pub rule: Rule,
    pub minor: MinorId,
    pub element: Element<F>,
    pub power: u32,
    pub target: u32,
    pub scale: Laurent<F>,
    pub cofactor: Element<F>,
    pub note: Option<String>,
    pub children: Vec<DerivationNode<F>>,
}

impl<F: Field> DerivationNode<F> {
    pub fn count(&self) -> usize {
        1 + self.children.iter().map(|c| c.count()).sum::<usize>()
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub(crate) fn map_elements(
        &self,
        f: &impl Fn(&Element<F>) -> Result<Element<F>, OreError>,
        minor: &impl Fn(&MinorId) -> MinorId,
    ) -> Result<Self, OreError> {
        Ok(DerivationNode {
            rule: self.rule,
            minor: minor(&self.minor),
            element: f(&self.element)?,
            power: self.power,
            target: self.target,
            scale: self.scale.clone(),
            cofactor: f(&self.cofactor)?,
            note: self.note.clone(),
            children: self
                .children
                .iter()
                .map(|c| c.map_elements(f, minor))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// Outcome of the solver at one power.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerAttempt {
    pub power: u32,
    pub unknowns: usize,
    pub equations: usize,
    pub rank: usize,
    pub augmented_rank: usize,
    pub feasible: bool,
}

#[derive(Clone, Debug)]
pub struct OreWitness<F> {
    pub minor: MinorId,
    pub side: Side,
    pub element: Element<F>,
    pub power: u32,
    pub target: u32,
    pub cofactor: Element<F>,
    /// Central scalar clearing the solver's denominators; 1 when there were none.
    pub scale: Laurent<F>,
    /// Pairwise coprime factors of every denominator met on the way; the
    /// witness specializes to a numeric `q` that is not a root of any of them.
    pub denominator_zeros: Vec<Laurent<F>>,
    pub certified: bool,
    pub derivation: DerivationNode<F>,
    /// Solver attempts at powers below the returned one, when the solver ran.
    pub attempts: Vec<PowerAttempt>,
    pub(crate) plan: Option<Arc<Plan<F>>>,
}

/// `scale · D^m · e - r' · D^j` (left) or `scale · e · D^m - D^j · r'` (right).
#[allow(clippy::too_many_arguments)]
pub fn ore_residual<F: Field>(
    alg: &QMatrixAlgebra<F>,
    minor: &MinorId,
    side: Side,
    element: &Element<F>,
    power: u32,
    target: u32,
    scale: &Laurent<F>,
    cofactor: &Element<F>,
) -> Result<Element<F>, OreError> {
    let d = quantum_minor(alg, minor)?;
    let dm = alg.pow(&d, power)?;
    let dj = alg.pow(&d, target)?;
    let (lhs, rhs) = match side {
        Side::Left => (alg.multiply(&dm, element)?, alg.multiply(cofactor, &dj)?),
        Side::Right => (alg.multiply(element, &dm)?, alg.multiply(&dj, cofactor)?),
    };
    Ok(&lhs.scale(scale) - &rhs)
}

impl<F: Field> OreWitness<F> {
    /// Recomputes the defining equation from scratch.
    pub fn residual(&self, alg: &QMatrixAlgebra<F>) -> Result<Element<F>, OreError> {
        ore_residual(
            alg,
            &self.minor,
            self.side,
            &self.element,
            self.power,
            self.target,
            &self.scale,
            &self.cofactor,
        )
    }

    /// Checks every node of the derivation tree. Returns the first node whose
    /// equation does not hold, if any.
    pub fn replay(&self, alg: &QMatrixAlgebra<F>) -> Result<Option<DerivationNode<F>>, OreError> {
        replay_node(alg, self.side, &self.derivation)
    }
}

pub(crate) fn replay_node<F: Field>(
    alg: &QMatrixAlgebra<F>,
    side: Side,
    node: &DerivationNode<F>,
) -> Result<Option<DerivationNode<F>>, OreError> {
    let r = ore_residual(
        alg,
        &node.minor,
        side,
        &node.element,
        node.power,
        node.target,
        &node.scale,
        &node.cofactor,
    )?;
    if !r.is_zero() {
        return Ok(Some(node.clone()));
    }
    for c in &node.children {
        if let Some(bad) = replay_node(alg, side, c)? {
            return Ok(Some(bad));
        }
    }
    Ok(None)
}
