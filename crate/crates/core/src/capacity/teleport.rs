use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, CVector, C64, ZERO};
use crate::partition::Partition;
use crate::pauli::{i_sigma2, sigma, string_from_index};
use crate::random::{haar_state, seeded};
use crate::state::{LocalOperator, PureState};

use super::teleport_capacity;

/// One joint measurement outcome on payload + sender qubits.
#[derive(Debug, Clone)]
pub struct MeasurementOutcome {
    /// Pauli label of the outcome over the payload qubits.
    pub label: Vec<u8>,
    /// Orthonormal vectors spanning the outcome's projector. The space is
    /// payload qubits (most significant) followed by the sender qubits in
    /// ascending order. A single vector unless the resource carries extra
    /// entanglement beyond the teleported block.
    pub basis: Vec<CVector>,
    /// Correction on the receiver's logical payload register.
    pub correction: LocalOperator,
}

/// Measurement family and corrections for teleporting `n_payload` qubits.
#[derive(Debug, Clone)]
pub struct TeleportProtocol {
    pub cut: Partition,
    pub n_payload: usize,
    pub outcomes: Vec<MeasurementOutcome>,
    /// Unitary on the receiver qubits mapping logical `|m⟩|t⟩` (payload
    /// register `m` most significant) onto the resource's receiver Schmidt
    /// vectors. The receiver decodes with its adjoint before correcting.
    pub receiver_frame: CMatrix,
}

impl TeleportProtocol {
    /// All measurement vectors, flattened in outcome order.
    pub fn measurement_vectors(&self) -> impl Iterator<Item = &CVector> {
        self.outcomes.iter().flat_map(|o| o.basis.iter())
    }

    /// Largest deviation of the measurement vectors' Gram matrix from identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let vs: Vec<&CVector> = self.measurement_vectors().collect();
        let mut worst = 0.0f64;
        for (i, a) in vs.iter().enumerate() {
            for (j, b) in vs.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.dotc(b) - c(target, 0.0)).norm());
            }
        }
        worst
    }

    /// Correction for outcome `index` expressed on the physical receiver qubits.
    pub fn physical_correction(&self, index: usize) -> Result<LocalOperator> {
        let outcome = self
            .outcomes
            .get(index)
            .ok_or_else(|| Error::InvalidParameter(format!("outcome {index} out of range")))?;
        let rest = self.cut.receiver().len() - self.n_payload;
        let logical = if rest == 0 {
            outcome.correction.matrix().clone()
        } else {
            outcome.correction.tensor(&LocalOperator::identity(rest)).matrix().clone()
        };
        LocalOperator::new(&self.receiver_frame * logical * self.receiver_frame.adjoint())
    }
}

/// Build the protocol after checking the spectral capacity.
pub fn build_teleport_protocol(state: &PureState, cut: &Partition, n_payload: usize) -> Result<TeleportProtocol> {
    let capacity = teleport_capacity(state, cut)?;
    if n_payload == 0 || capacity < n_payload {
        return Err(Error::CapacityInsufficient { capacity, requested: n_payload });
    }
    assemble_protocol(state, cut, n_payload)
}

/// Assemble the protocol from the Schmidt decomposition without checking
/// that the blocks are uniform. Schmidt terms are taken in descending order
/// and chunked into groups of `2^n_payload`, padding with zero-weight
/// completion vectors. The result is exact only when the capacity allows it.
pub fn assemble_protocol(state: &PureState, cut: &Partition, n_payload: usize) -> Result<TeleportProtocol> {
    let s_qubits = cut.sender().len();
    let r_qubits = cut.receiver().len();
    if n_payload == 0 || n_payload > s_qubits.min(r_qubits) {
        return Err(Error::InvalidParameter(format!(
            "payload of {n_payload} qubits does not fit cut {cut}"
        )));
    }
    let dec = state.schmidt_decomposition(cut)?;
    let block = 1usize << n_payload;
    let rank = dec.terms.len();
    let padded = rank.div_ceil(block) * block;
    let chunks = padded / block;

    let sender: Vec<CVector> = dec.terms.iter().map(|t| t.sender.clone()).collect();
    let receiver: Vec<CVector> = dec.terms.iter().map(|t| t.receiver.clone()).collect();
    let sender = linalg::complete_basis(&sender, 1 << s_qubits);
    let receiver = linalg::complete_basis(&receiver, 1 << r_qubits);

    // logical receiver index (m, t) -> m * 2^(r - k) + t
    let rest_dim = 1usize << (r_qubits - n_payload);
    let r_dim = 1usize << r_qubits;
    let mut columns: Vec<Option<CVector>> = vec![None; r_dim];
    for t in 0..chunks {
        for m in 0..block {
            columns[m * rest_dim + t] = Some(receiver[t * block + m].clone());
        }
    }
    let mut spare = receiver[padded..].iter();
    let mut frame = CMatrix::zeros(r_dim, r_dim);
    for (col, v) in columns.into_iter().enumerate() {
        let v = v.or_else(|| spare.next().cloned()).expect("completed basis covers receiver space");
        frame.set_column(col, &v);
    }

    let payload_dim = block;
    let s_dim = 1usize << s_qubits;
    let scale = c(1.0 / (block as f64).sqrt(), 0.0);
    let outcomes = (0..block * block)
        .map(|p| {
            let label = string_from_index(p, n_payload);
            let pauli = real_pauli_string(&label)?;
            let basis = (0..chunks)
                .map(|t| {
                    let mut v = CVector::zeros(payload_dim * s_dim);
                    for m in 0..block {
                        let col = pauli.matrix().column(m);
                        let a = &sender[t * block + m];
                        for (x, px) in col.iter().enumerate() {
                            if *px == ZERO {
                                continue;
                            }
                            for (y, ay) in a.iter().enumerate() {
                                v[x * s_dim + y] += px * ay * scale;
                            }
                        }
                    }
                    v
                })
                .collect();
            Ok(MeasurementOutcome { label, basis, correction: pauli })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(TeleportProtocol { cut: cut.clone(), n_payload, outcomes, receiver_frame: frame })
}

/// Tensor product of `{σ0, σ1, iσ2, σ3}`.
fn real_pauli_string(label: &[u8]) -> Result<LocalOperator> {
    let single = |p: u8| if p == 2 { Ok(i_sigma2()) } else { sigma(p) };
    let (first, rest) = label.split_first().expect("non-empty label");
    rest.iter().try_fold(single(*first)?, |acc, &p| Ok(acc.tensor(&single(p)?)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeResult {
    pub label: Vec<u8>,
    pub probability: f64,
    /// Fidelity of the corrected receiver register with the payload; `None`
    /// when the outcome has zero probability.
    pub fidelity: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TeleportationRun {
    pub outcomes: Vec<OutcomeResult>,
}

impl TeleportationRun {
    pub fn total_probability(&self) -> f64 {
        self.outcomes.iter().map(|o| o.probability).sum()
    }

    pub fn min_fidelity(&self) -> f64 {
        self.outcomes.iter().filter_map(|o| o.fidelity).fold(1.0, f64::min)
    }

    /// Probability-weighted fidelity.
    pub fn average_fidelity(&self) -> f64 {
        self.outcomes.iter().map(|o| o.probability * o.fidelity.unwrap_or(0.0)).sum()
    }

    pub fn max_probability_deviation(&self, expected: f64) -> f64 {
        self.outcomes.iter().map(|o| (o.probability - expected).abs()).fold(0.0, f64::max)
    }
}

/// Teleport `payload` through `resource` across `cut` and report every outcome.
pub fn simulate_teleportation(resource: &PureState, cut: &Partition, payload: &PureState) -> Result<TeleportationRun> {
    let protocol = build_teleport_protocol(resource, cut, payload.num_qubits())?;
    run_protocol(&protocol, resource, payload)
}

/// Run an already assembled protocol exactly: joint measurement on
/// payload + sender, receiver decode and correction, fidelity of the
/// logical payload register.
pub fn run_protocol(protocol: &TeleportProtocol, resource: &PureState, payload: &PureState) -> Result<TeleportationRun> {
    let k = protocol.n_payload;
    if payload.num_qubits() != k {
        return Err(Error::DimensionMismatch { expected: k, found: payload.num_qubits() });
    }
    if resource.num_qubits() != protocol.cut.num_qubits() {
        return Err(Error::DimensionMismatch { expected: protocol.cut.num_qubits(), found: resource.num_qubits() });
    }
    let joint = payload.tensor(resource)?;
    let rows: Vec<usize> = (1..=k).chain(protocol.cut.sender().iter().map(|q| q + k)).collect();
    let cols: Vec<usize> = protocol.cut.receiver().iter().map(|q| q + k).collect();
    let j = joint.reshape(&rows, &cols);
    let decode = protocol.receiver_frame.adjoint();
    let rest_dim = 1usize << (cols.len() - k);
    let psi = payload.to_vector();

    let mut outcomes = Vec::with_capacity(protocol.outcomes.len());
    for outcome in &protocol.outcomes {
        let correction = if rest_dim == 1 {
            outcome.correction.matrix().clone()
        } else {
            outcome.correction.tensor(&LocalOperator::identity(cols.len() - k)).matrix().clone()
        };
        let mut probability = 0.0;
        let mut overlap = 0.0;
        for o in &outcome.basis {
            // receiver's unnormalized conditional state (⟨o| ⊗ I)|J⟩
            let phi: CVector = j.transpose() * o.conjugate();
            let v = &correction * (&decode * phi);
            probability += v.norm_squared();
            for t in 0..rest_dim {
                let amp: C64 = (0..1usize << k).map(|m| psi[m].conj() * v[m * rest_dim + t]).sum();
                overlap += amp.norm_sqr();
            }
        }
        let fidelity = (probability > 1e-14).then(|| overlap / probability);
        outcomes.push(OutcomeResult { label: outcome.label.clone(), probability, fidelity });
    }
    Ok(TeleportationRun { outcomes })
}

/// Haar-random payload on `num_qubits` qubits for a given seed.
pub fn random_payload(num_qubits: usize, seed: u64) -> Result<PureState> {
    haar_state(num_qubits, &mut seeded(seed))
}
