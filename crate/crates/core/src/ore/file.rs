//! JSON witness files. Elements and scalars are stored as canonical text and
//! parsed back on verification, so a file is checked independently of the
//! process that wrote it.

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, QMatrixAlgebra};
use crate::coeffs::{Field, Laurent};
use crate::minors::MinorId;
use crate::text::{parse_expression, ParseError};

use super::chain::ChainWitness;
use super::witness::{ore_residual, DerivationNode, OreWitness, PowerAttempt, Rule, Side};
use super::OreError;

pub const WITNESS_FORMAT: &str = "qmb-witness/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorRecord {
    pub rows: Vec<u8>,
    pub cols: Vec<u8>,
}

impl MinorRecord {
    fn of(m: &MinorId) -> Self {
        MinorRecord {
            rows: m.rows.labels().to_vec(),
            cols: m.cols.labels().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub rule: Rule,
    pub minor: MinorRecord,
    pub element: String,
    pub power: u32,
    pub target: u32,
    pub scale: String,
    pub cofactor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<NodeRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub minor: MinorRecord,
    pub side: Side,
    pub element: String,
    pub power: u32,
    pub target: u32,
    pub scale: String,
    pub cofactor: String,
    pub certified: bool,
    pub denominator_zeros: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub attempts: Vec<PowerAttempt>,
    pub derivation: NodeRecord,
}

/// A witness file: one witness, or the links of a chain against a product
/// of minors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub format: String,
    pub n: u8,
    pub witness: Option<WitnessRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<ChainRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainRecord {
    pub minors: Vec<MinorRecord>,
    pub side: Side,
    pub element: String,
    pub powers: Vec<u32>,
    pub scale: String,
    pub cofactor: String,
    pub certified: bool,
    pub links: Vec<WitnessRecord>,
}

fn node_record<F: Field>(node: &DerivationNode<F>) -> NodeRecord {
    NodeRecord {
        rule: node.rule,
        minor: MinorRecord::of(&node.minor),
        element: node.element.to_string(),
        power: node.power,
        target: node.target,
        scale: node.scale.to_string(),
        cofactor: node.cofactor.to_string(),
        note: node.note.clone(),
        children: node.children.iter().map(node_record).collect(),
    }
}

impl WitnessRecord {
    pub fn from_witness<F: Field>(w: &OreWitness<F>) -> Self {
        WitnessRecord {
            minor: MinorRecord::of(&w.minor),
            side: w.side,
            element: w.element.to_string(),
            power: w.power,
            target: w.target,
            scale: w.scale.to_string(),
            cofactor: w.cofactor.to_string(),
            certified: w.certified,
            denominator_zeros: w.denominator_zeros.iter().map(|d| d.to_string()).collect(),
            attempts: w.attempts.clone(),
            derivation: node_record(&w.derivation),
        }
    }
}

impl WitnessFile {
    pub fn from_witness<F: Field>(n: u8, w: &OreWitness<F>) -> Self {
        WitnessFile {
            format: WITNESS_FORMAT.into(),
            n,
            witness: Some(WitnessRecord::from_witness(w)),
            chain: None,
        }
    }

    pub fn from_chain<F: Field>(n: u8, c: &ChainWitness<F>) -> Self {
        WitnessFile {
            format: WITNESS_FORMAT.into(),
            n,
            witness: None,
            chain: Some(ChainRecord {
                minors: c.minors.iter().map(MinorRecord::of).collect(),
                side: c.side,
                element: c.element.to_string(),
                powers: c.powers(),
                scale: c.scale.to_string(),
                cofactor: c.cofactor.to_string(),
                certified: c.certified,
                links: c.links.iter().map(WitnessRecord::from_witness).collect(),
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness records serialize")
    }

    pub fn from_json(s: &str) -> Result<Self, VerifyError> {
        serde_json::from_str(s).map_err(|e| VerifyError::Format(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("malformed witness file: {0}")]
    Format(String),
    #[error("in {field}: {source}")]
    Parse { field: String, source: ParseError },
    #[error(transparent)]
    Ore(#[from] OreError),
}

/// Outcome of re-checking a witness file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// Top-level equations hold exactly.
    pub certified: bool,
    /// Every derivation node holds exactly.
    pub derivation_ok: bool,
    pub nodes_checked: usize,
    pub residual: String,
    /// The first failing node, as `element @ minor`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_node: Option<String>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.certified && self.derivation_ok
    }
}

struct Reader<'a, F> {
    alg: &'a QMatrixAlgebra<F>,
}

impl<F: Field> Reader<'_, F> {
    fn elem(&self, field: &str, s: &str) -> Result<Element<F>, VerifyError> {
        parse_expression(self.alg, s).map_err(|source| VerifyError::Parse {
            field: field.into(),
            source,
        })
    }

    fn scalar(&self, field: &str, s: &str) -> Result<Laurent<F>, VerifyError> {
        self.elem(field, s)?
            .as_scalar()
            .ok_or_else(|| VerifyError::Format(format!("{field} is not a scalar: {s}")))
    }

    fn minor(&self, m: &MinorRecord) -> Result<MinorId, VerifyError> {
        let id = MinorId::from_labels(&m.rows, &m.cols).map_err(OreError::from)?;
        id.rows.check_range(self.alg.n()).map_err(OreError::from)?;
        id.cols.check_range(self.alg.n()).map_err(OreError::from)?;
        Ok(id)
    }

    #[allow(clippy::too_many_arguments)]
    fn residual(
        &self,
        minor: &MinorRecord,
        side: Side,
        element: &str,
        power: u32,
        target: u32,
        scale: &str,
        cofactor: &str,
    ) -> Result<Element<F>, VerifyError> {
        Ok(ore_residual(
            self.alg,
            &self.minor(minor)?,
            side,
            &self.elem("element", element)?,
            power,
            target,
            &self.scalar("scale", scale)?,
            &self.elem("cofactor", cofactor)?,
        )?)
    }

    /// Number of nodes checked, and the first failing one.
    fn replay(&self, side: Side, node: &NodeRecord) -> Result<(usize, Option<String>), VerifyError> {
        let r = self.residual(
            &node.minor,
            side,
            &node.element,
            node.power,
            node.target,
            &node.scale,
            &node.cofactor,
        )?;
        if !r.is_zero() {
            let m = self.minor(&node.minor)?;
            return Ok((1, Some(format!("{} @ {m}", node.element))));
        }
        let mut count = 1;
        for c in &node.children {
            let (k, bad) = self.replay(side, c)?;
            count += k;
            if bad.is_some() {
                return Ok((count, bad));
            }
        }
        Ok((count, None))
    }

    fn witness(&self, w: &WitnessRecord) -> Result<VerifyReport, VerifyError> {
        let residual = self.residual(&w.minor, w.side, &w.element, w.power, w.target, &w.scale, &w.cofactor)?;
        let (nodes_checked, failing_node) = self.replay(w.side, &w.derivation)?;
        Ok(VerifyReport {
            certified: residual.is_zero(),
            derivation_ok: failing_node.is_none(),
            nodes_checked,
            residual: residual.to_string(),
            failing_node,
        })
    }

    fn chain(&self, c: &ChainRecord) -> Result<VerifyReport, VerifyError> {
        if c.minors.is_empty() || c.links.len() != c.minors.len() {
            return Err(VerifyError::Format("chain needs one link per minor".into()));
        }
        let minors: Vec<MinorId> = c.minors.iter().map(|m| self.minor(m)).collect::<Result<_, _>>()?;
        let chain = ChainWitness {
            minors,
            side: c.side,
            element: self.elem("element", &c.element)?,
            links: Vec::new(),
            scale: self.scalar("scale", &c.scale)?,
            cofactor: self.elem("cofactor", &c.cofactor)?,
            certified: false,
        };
        let residual = chain.residual_with_powers(self.alg, &c.powers)?;
        let mut nodes_checked = 0;
        let mut failing_node = None;
        for link in &c.links {
            let r = self.witness(link)?;
            nodes_checked += r.nodes_checked;
            if !r.ok() {
                failing_node = r.failing_node.or(Some(format!("link for {}", link.element)));
                break;
            }
        }
        Ok(VerifyReport {
            certified: residual.is_zero(),
            derivation_ok: failing_node.is_none(),
            nodes_checked,
            residual: residual.to_string(),
            failing_node,
        })
    }
}

/// Re-checks every equation in a witness file against a fresh algebra of
/// the recorded size.
pub fn verify_witness_file<F: Field>(alg: &QMatrixAlgebra<F>, file: &WitnessFile) -> Result<VerifyReport, VerifyError> {
    if file.format != WITNESS_FORMAT {
        return Err(VerifyError::Format(format!("unknown format {:?}", file.format)));
    }
    if file.n != alg.n() {
        return Err(VerifyError::Format(format!(
            "file is for n = {}, algebra has n = {}",
            file.n,
            alg.n()
        )));
    }
    let reader = Reader { alg };
    match (&file.witness, &file.chain) {
        (Some(w), None) => reader.witness(w),
        (None, Some(c)) => reader.chain(c),
        _ => Err(VerifyError::Format("expected exactly one of witness or chain".into())),
    }
}
