//! JSON documents for states, operators and operator sets.
//!
//! Amplitudes are stored as `[re, im]` pairs in basis-index order under the
//! `q1-msb` convention. Floats are written in shortest round-trip form and
//! parsed with correct rounding, so a write/read cycle is bit-exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix};
use crate::operators::OperatorSet;
use crate::state::{LocalOperator, PureState, MAX_QUBITS};

pub const FORMAT_VERSION: u32 = 1;
pub const CONVENTION: &str = "q1-msb";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Document {
    State {
        format_version: u32,
        num_qubits: usize,
        convention: String,
        amplitudes: Vec<[f64; 2]>,
    },
    Operator {
        format_version: u32,
        arity: usize,
        convention: String,
        matrix: Vec<Vec<[f64; 2]>>,
    },
    OperatorSet {
        format_version: u32,
        level: usize,
        convention: String,
        members: Vec<Vec<Vec<[f64; 2]>>>,
    },
}

impl Document {
    pub fn from_state(state: &PureState) -> Self {
        Document::State {
            format_version: FORMAT_VERSION,
            num_qubits: state.num_qubits(),
            convention: CONVENTION.into(),
            amplitudes: state.amplitudes().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn from_operator(op: &LocalOperator) -> Self {
        Document::Operator {
            format_version: FORMAT_VERSION,
            arity: op.arity(),
            convention: CONVENTION.into(),
            matrix: matrix_rows(op),
        }
    }

    pub fn from_operator_set(set: &OperatorSet) -> Self {
        Document::OperatorSet {
            format_version: FORMAT_VERSION,
            level: set.level_index(),
            convention: CONVENTION.into(),
            members: set.members().iter().map(matrix_rows).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let (version, convention) = match &doc {
            Document::State { format_version, convention, .. }
            | Document::Operator { format_version, convention, .. }
            | Document::OperatorSet { format_version, convention, .. } => (*format_version, convention),
        };
        if version != FORMAT_VERSION {
            return Err(Error::Parse(format!("unsupported format_version {version}")));
        }
        if convention != CONVENTION {
            return Err(Error::Parse(format!("unsupported convention {convention:?}")));
        }
        Ok(doc)
    }

    pub fn into_state(self) -> Result<PureState> {
        match self {
            Document::State { num_qubits, amplitudes, .. } => {
                if num_qubits == 0 || num_qubits > MAX_QUBITS {
                    return Err(Error::TooManyQubits { num_qubits, limit: MAX_QUBITS });
                }
                if amplitudes.len() != 1 << num_qubits {
                    return Err(Error::DimensionMismatch { expected: 1 << num_qubits, found: amplitudes.len() });
                }
                PureState::new(amplitudes.into_iter().map(|[re, im]| c(re, im)).collect())
            }
            _ => Err(Error::Parse("document is not a state".into())),
        }
    }

    pub fn into_operator(self) -> Result<LocalOperator> {
        match self {
            Document::Operator { arity, matrix, .. } => operator_from_rows(arity, matrix),
            _ => Err(Error::Parse("document is not an operator".into())),
        }
    }

    pub fn into_operator_set(self) -> Result<OperatorSet> {
        match self {
            Document::OperatorSet { level, members, .. } => {
                let ops = members
                    .into_iter()
                    .map(|m| operator_from_rows(level, m))
                    .collect::<Result<Vec<_>>>()?;
                OperatorSet::new(ops)
            }
            _ => Err(Error::Parse("document is not an operator set".into())),
        }
    }
}

fn matrix_rows(op: &LocalOperator) -> Vec<Vec<[f64; 2]>> {
    let m = op.matrix();
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|col| [m[(r, col)].re, m[(r, col)].im]).collect())
        .collect()
}

fn operator_from_rows(arity: usize, rows: Vec<Vec<[f64; 2]>>) -> Result<LocalOperator> {
    if arity == 0 || arity > MAX_QUBITS / 2 {
        return Err(Error::InvalidParameter(format!("operator arity {arity} out of range")));
    }
    let d = 1usize << arity;
    if rows.len() != d {
        return Err(Error::DimensionMismatch { expected: d, found: rows.len() });
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, found: bad.len() });
    }
    LocalOperator::new(CMatrix::from_fn(d, d, |r, col| {
        let [re, im] = rows[r][col];
        c(re, im)
    }))
}

pub fn state_to_json(state: &PureState) -> String {
    Document::from_state(state).to_json()
}

pub fn state_from_json(text: &str) -> Result<PureState> {
    Document::parse(text)?.into_state()
}

pub fn operator_to_json(op: &LocalOperator) -> String {
    Document::from_operator(op).to_json()
}

pub fn operator_from_json(text: &str) -> Result<LocalOperator> {
    Document::parse(text)?.into_operator()
}
