//! Pauli strings in the `σ0..σ3` labelling (`σ0 = I, σ1 = X, σ2 = Y, σ3 = Z`).
//!
//! A string over `k` qubits is indexed by `Σ p_i 4^{k-1-i}` (first qubit most
//! significant), which is the vertex order used by every search in the crate.

use crate::error::{Error, Result};
use crate::linalg::{C64, I, ONE, ZERO};
use crate::partition::checked_set;
use crate::state::{LocalOperator, PureState};

/// `σ_i` as a 2×2 matrix, `σ2 = [[0, −i], [i, 0]]`.
pub fn sigma(i: u8) -> Result<LocalOperator> {
    let m = match i {
        0 => [ONE, ZERO, ZERO, ONE],
        1 => [ZERO, ONE, ONE, ZERO],
        2 => [ZERO, -I, I, ZERO],
        3 => [ONE, ZERO, ZERO, -ONE],
        _ => return Err(Error::InvalidParameter(format!("Pauli index {i} not in 0..=3"))),
    };
    LocalOperator::from_rows(&[&m[..2], &m[2..]])
}

/// `iσ2 = [[0, 1], [−1, 0]]`, the real counterpart of `σ2`.
pub fn i_sigma2() -> LocalOperator {
    LocalOperator::from_rows(&[&[ZERO, ONE], &[-ONE, ZERO]]).expect("2x2")
}

/// `σ_{i1} ⊗ σ_{i2} ⊗ …` in listed order.
pub fn pauli_string(indices: &[u8]) -> Result<LocalOperator> {
    let (first, rest) = indices
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("empty Pauli string".into()))?;
    rest.iter().try_fold(sigma(*first)?, |acc, &i| Ok(acc.tensor(&sigma(i)?)))
}

/// Digits of string number `index` over `len` qubits.
pub fn string_from_index(index: usize, len: usize) -> Vec<u8> {
    (0..len).map(|i| ((index >> (2 * (len - 1 - i))) & 3) as u8).collect()
}

pub fn index_from_string(paulis: &[u8]) -> usize {
    paulis.iter().fold(0, |acc, &p| (acc << 2) | p as usize)
}

/// Binary symplectic label of a single Pauli: `(x, z)`.
fn xz(p: u8) -> (usize, usize) {
    match p {
        0 => (0, 0),
        1 => (1, 0),
        2 => (1, 1),
        _ => (0, 1),
    }
}

/// Index of the string proportional to `σ_a σ_b` (phases dropped).
pub fn product_index(a: usize, b: usize, len: usize) -> usize {
    let sa = string_from_index(a, len);
    let sb = string_from_index(b, len);
    let prod: Vec<u8> = sa
        .iter()
        .zip(&sb)
        .map(|(&p, &q)| {
            let (x1, z1) = xz(p);
            let (x2, z2) = xz(q);
            match (x1 ^ x2, z1 ^ z2) {
                (0, 0) => 0,
                (1, 0) => 1,
                (1, _) => 2,
                _ => 3,
            }
        })
        .collect();
    index_from_string(&prod)
}

/// Global x/z masks and Y count for a string placed on `targets`.
struct Masks {
    x: usize,
    z: usize,
    y_phase: C64,
}

fn masks(paulis: &[u8], targets: &[usize], num_qubits: usize) -> Result<Masks> {
    if paulis.len() != targets.len() {
        return Err(Error::ArityMismatch { arity: paulis.len(), targets: targets.len() });
    }
    checked_set(targets, num_qubits)?;
    let mut m = Masks { x: 0, z: 0, y_phase: ONE };
    for (&p, &q) in paulis.iter().zip(targets) {
        if p > 3 {
            return Err(Error::InvalidParameter(format!("Pauli index {p} not in 0..=3")));
        }
        let bit = 1usize << (num_qubits - q);
        let (x, z) = xz(p);
        if x == 1 {
            m.x |= bit;
        }
        if z == 1 {
            m.z |= bit;
        }
        if p == 2 {
            m.y_phase *= I;
        }
    }
    Ok(m)
}

/// Apply a Pauli string on `targets` without forming its matrix.
pub fn apply_pauli(state: &PureState, paulis: &[u8], targets: &[usize]) -> Result<PureState> {
    let m = masks(paulis, targets, state.num_qubits())?;
    let amps = state.amplitudes();
    let mut out = vec![ZERO; amps.len()];
    for (g, a) in amps.iter().enumerate() {
        // σ2 = i·σ1·σ3: phase from Z parts, flip from X parts, then i per Y
        let sign = if (g & m.z).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[g ^ m.x] = a * m.y_phase * sign;
    }
    PureState::new(out)
}

/// `⟨ψ| P |ψ⟩` for a Pauli string on `targets`.
pub fn expectation(state: &PureState, paulis: &[u8], targets: &[usize]) -> Result<C64> {
    let m = masks(paulis, targets, state.num_qubits())?;
    let amps = state.amplitudes();
    let mut acc = ZERO;
    for (g, a) in amps.iter().enumerate() {
        let sign = if (g & m.z).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        acc += amps[g ^ m.x].conj() * a * sign;
    }
    Ok(acc * m.y_phase)
}
