//! Dense pure-state engine.
//!
//! Basis convention: for an `n`-qubit state, qubit 1 is the most significant
//! bit of the amplitude index, so `|q1 q2 … qn⟩` reads left to right as the
//! binary expansion of the index. All qubit labels in the public API are
//! 1-based.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64, ONE, ZERO};
use crate::partition::{checked_set, Partition};
use crate::tol;

/// Hard limit on the register size; dense vectors beyond this are impractical.
pub const MAX_QUBITS: usize = 16;

/// Normalized amplitude vector over `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Wrap an amplitude vector; its length must be `2^n` with `1 ≤ n ≤ MAX_QUBITS`
    /// and its norm 1 within [`tol::NORM`].
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > tol::NORM {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { num_qubits, amplitudes })
    }

    /// Rescale an arbitrary non-zero vector to unit norm.
    pub fn normalized(mut amplitudes: Vec<C64>) -> Result<Self> {
        let num_qubits = qubits_for_len(amplitudes.len())?;
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::NotNormalized(norm * norm));
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self { num_qubits, amplitudes })
    }

    /// Computational basis state from a bit string such as `"0110"`.
    pub fn basis(bits: &str) -> Result<Self> {
        let index = parse_bits(bits)?;
        Self::basis_index(bits.len(), index)
    }

    pub fn basis_index(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits { num_qubits, limit: MAX_QUBITS });
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::InvalidParameter(format!("basis index {index} >= {dim}")));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Self { num_qubits, amplitudes })
    }

    /// Build from `(bit string, amplitude)` terms and normalize.
    pub fn from_terms(num_qubits: usize, terms: &[(&str, C64)]) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits { num_qubits, limit: MAX_QUBITS });
        }
        let mut amplitudes = vec![ZERO; 1 << num_qubits];
        for (bits, amp) in terms {
            if bits.len() != num_qubits {
                return Err(Error::DimensionMismatch { expected: num_qubits, found: bits.len() });
            }
            amplitudes[parse_bits(bits)?] += amp;
        }
        Self::normalized(amplitudes)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// Amplitude of the basis state labelled by `bits`.
    pub fn amplitude(&self, bits: &str) -> Result<C64> {
        if bits.len() != self.num_qubits {
            return Err(Error::DimensionMismatch { expected: self.num_qubits, found: bits.len() });
        }
        Ok(self.amplitudes[parse_bits(bits)?])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn to_vector(&self) -> CVector {
        CVector::from_column_slice(&self.amplitudes)
    }

    /// Kronecker product with `self`'s qubits first.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let num_qubits = self.num_qubits + other.num_qubits;
        if num_qubits > MAX_QUBITS {
            return Err(Error::TooManyQubits { num_qubits, limit: MAX_QUBITS });
        }
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Ok(PureState { num_qubits, amplitudes })
    }

    /// Apply a `k`-qubit operator to the listed qubits. The first target is
    /// the most significant bit of the operator's own basis.
    ///
    /// Fails if the result is not normalized, which only happens for
    /// non-unitary operators.
    pub fn apply_local(&self, op: &LocalOperator, targets: &[usize]) -> Result<PureState> {
        let amplitudes = apply_matrix(&self.amplitudes, self.num_qubits, op.matrix(), targets)?;
        PureState::new(amplitudes)
    }

    /// ⟨self|other⟩.
    pub fn overlap(&self, other: &PureState) -> Result<C64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch { expected: self.num_qubits, found: other.num_qubits });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Largest amplitude-wise distance to `other`.
    pub fn max_abs_diff(&self, other: &PureState) -> f64 {
        if self.dim() != other.dim() {
            return f64::INFINITY;
        }
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Reduced density matrix on `keep` (ascending order, first kept qubit most significant).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let keep: Vec<usize> = checked_set(keep, self.num_qubits)?.into_iter().collect();
        if keep.is_empty() {
            return Err(Error::InvalidParameter("keep set must be non-empty".into()));
        }
        let rest: Vec<usize> = (1..=self.num_qubits).filter(|q| !keep.contains(q)).collect();
        let m = self.reshape(&keep, &rest);
        Ok(DensityMatrix {
            num_qubits: keep.len(),
            matrix: &m * m.adjoint(),
        })
    }

    /// Amplitudes as a matrix with rows indexed by `rows` qubits and columns by `cols`.
    pub(crate) fn reshape(&self, rows: &[usize], cols: &[usize]) -> CMatrix {
        let n = self.num_qubits;
        let mut m = CMatrix::zeros(1 << rows.len(), 1 << cols.len());
        for (g, amp) in self.amplitudes.iter().enumerate() {
            if *amp == ZERO {
                continue;
            }
            m[(gather(g, rows, n), gather(g, cols, n))] = *amp;
        }
        m
    }

    /// Schmidt coefficients squared across `cut`, from the smaller side's reduced state.
    pub fn schmidt_spectrum(&self, cut: &Partition) -> Result<SchmidtSpectrum> {
        self.check_cut(cut)?;
        let rho = self.partial_trace(cut.smaller_side())?;
        Ok(SchmidtSpectrum::from_eigenvalues(rho.eigenvalues()))
    }

    /// Full Schmidt decomposition `|ψ⟩ = Σ_j √λ_j |a_j⟩_sender |b_j⟩_receiver`,
    /// terms sorted by descending `λ_j`, zero terms dropped.
    pub fn schmidt_decomposition(&self, cut: &Partition) -> Result<SchmidtDecomposition> {
        self.check_cut(cut)?;
        let m = self.reshape(cut.sender(), cut.receiver());
        let rho_sender = &m * m.adjoint();
        let (values, vectors) = linalg::hermitian_eigen(&rho_sender);
        let mut terms = Vec::new();
        for (j, &lambda) in values.iter().enumerate() {
            if lambda < tol::ZERO_EIGENVALUE {
                continue;
            }
            let a = vectors.column(j).into_owned();
            // b_j = (⟨a_j| ⊗ I)|ψ⟩ / √λ_j
            let b = (m.transpose() * a.conjugate()) / C64::from(lambda.sqrt());
            terms.push(SchmidtTerm { weight: lambda, sender: a, receiver: b });
        }
        Ok(SchmidtDecomposition { cut: cut.clone(), terms })
    }

    /// Negativity across `cut`: sum of |negative eigenvalues| of the partial
    /// transpose taken on the receiver side.
    pub fn negativity(&self, cut: &Partition) -> Result<f64> {
        self.check_cut(cut)?;
        let m = self.reshape(cut.sender(), cut.receiver());
        let ds = m.nrows();
        let dr = m.ncols();
        let dim = ds * dr;
        // (ρ^{T_B})_{(a b),(a' b')} = ρ_{(a b'),(a' b)} = ψ_{a b'} ψ*_{a' b}
        let pt = CMatrix::from_fn(dim, dim, |row, col| {
            let (a, b) = (row / dr, row % dr);
            let (ap, bp) = (col / dr, col % dr);
            m[(a, bp)] * m[(ap, b)].conj()
        });
        Ok(linalg::hermitian_eigenvalues(&pt)
            .into_iter()
            .filter(|&v| v < 0.0)
            .map(f64::abs)
            .sum())
    }

    fn check_cut(&self, cut: &Partition) -> Result<()> {
        if cut.num_qubits() != self.num_qubits {
            return Err(Error::InvalidPartition(format!(
                "cut {cut} does not cover a {}-qubit state",
                self.num_qubits
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PureState {
    /// Ket listing of the non-negligible amplitudes.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, a) in self.amplitudes.iter().enumerate() {
            if a.norm() < tol::EXACT {
                continue;
            }
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(
                f,
                "{:+.6}{:+.6}i |{:0width$b}⟩",
                a.re,
                a.im,
                i,
                width = self.num_qubits
            )?;
        }
        Ok(())
    }
}

/// One term of a Schmidt decomposition.
#[derive(Debug, Clone)]
pub struct SchmidtTerm {
    pub weight: f64,
    pub sender: CVector,
    pub receiver: CVector,
}

#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    pub cut: Partition,
    pub terms: Vec<SchmidtTerm>,
}

impl SchmidtDecomposition {
    pub fn spectrum(&self) -> SchmidtSpectrum {
        SchmidtSpectrum::from_eigenvalues(self.terms.iter().map(|t| t.weight).collect())
    }
}

/// A `k`-qubit operator given by its `2^k × 2^k` matrix in the computational basis.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalOperator {
    arity: usize,
    matrix: CMatrix,
}

impl LocalOperator {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch { expected: matrix.nrows(), found: matrix.ncols() });
        }
        let arity = qubits_for_len(matrix.nrows())?;
        Ok(Self { arity, matrix })
    }

    /// Row-major real/imaginary pairs.
    pub fn from_rows(rows: &[&[C64]]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: rows.iter().map(|r| r.len()).max().unwrap_or(0) });
        }
        Self::new(CMatrix::from_fn(n, n, |r, col| rows[r][col]))
    }

    pub fn identity(arity: usize) -> Self {
        Self { arity, matrix: CMatrix::identity(1 << arity, 1 << arity) }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn unitarity_defect(&self) -> f64 {
        linalg::unitarity_defect(&self.matrix)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// `self ⊗ other`, acting on `self`'s qubits first.
    pub fn tensor(&self, other: &LocalOperator) -> LocalOperator {
        LocalOperator {
            arity: self.arity + other.arity,
            matrix: linalg::kron(&self.matrix, &other.matrix),
        }
    }

    pub fn scaled(&self, factor: C64) -> LocalOperator {
        LocalOperator { arity: self.arity, matrix: self.matrix.map(|z| z * factor) }
    }

    pub fn adjoint(&self) -> LocalOperator {
        LocalOperator { arity: self.arity, matrix: self.matrix.adjoint() }
    }

    /// Product `self · other` (apply `other` first).
    pub fn compose(&self, other: &LocalOperator) -> Result<LocalOperator> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { arity: self.arity, targets: other.arity });
        }
        Ok(LocalOperator { arity: self.arity, matrix: &self.matrix * &other.matrix })
    }

    /// Entries in row-major order.
    pub fn flattened(&self) -> Vec<C64> {
        let d = self.matrix.nrows();
        (0..d).flat_map(|r| (0..d).map(move |col| (r, col))).map(|(r, col)| self.matrix[(r, col)]).collect()
    }

    pub fn max_abs_diff(&self, other: &LocalOperator) -> f64 {
        if self.matrix.shape() != other.matrix.shape() {
            return f64::INFINITY;
        }
        (&self.matrix - &other.matrix).iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }
}

/// Density matrix over `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    /// Largest entrywise distance to `I / 2^n`.
    pub fn distance_from_maximally_mixed(&self) -> f64 {
        let d = self.matrix.nrows();
        let target = CMatrix::identity(d, d).map(|z| z / d as f64);
        (&self.matrix - target).iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn is_maximally_mixed(&self, tol: f64) -> bool {
        self.distance_from_maximally_mixed() <= tol
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        if self.matrix.shape() != other.shape() {
            return f64::INFINITY;
        }
        (&self.matrix - other).iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }
}

/// Descending, strictly positive eigenvalues of a reduced state.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchmidtSpectrum {
    eigenvalues: Vec<f64>,
}

impl SchmidtSpectrum {
    /// Clamp tiny negatives, drop values below [`tol::ZERO_EIGENVALUE`], sort descending.
    pub fn from_eigenvalues(mut raw: Vec<f64>) -> Self {
        raw.retain(|&v| v >= tol::ZERO_EIGENVALUE);
        raw.sort_by(|a, b| b.total_cmp(a));
        Self { eigenvalues: raw }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Schmidt rank.
    pub fn rank(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Von Neumann entropy in bits, with `0 log 0 = 0`.
    pub fn entropy(&self) -> f64 {
        self.eigenvalues
            .iter()
            .filter(|&&l| l > 0.0)
            .map(|&l| -l * l.log2())
            .sum::<f64>()
            .max(0.0)
    }

    /// Group eigenvalues into `(value, multiplicity)` clusters using a relative tolerance.
    pub fn clusters(&self, rel_tol: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &v in &self.eigenvalues {
            match out.last_mut() {
                Some((head, count)) if (*head - v).abs() <= rel_tol * head.abs().max(v.abs()) => *count += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }

    /// Elementwise comparison with relative tolerance; differing ranks never match.
    pub fn approx_eq(&self, other: &SchmidtSpectrum, rel_tol: f64) -> bool {
        self.rank() == other.rank()
            && self
                .eigenvalues
                .iter()
                .zip(&other.eigenvalues)
                .all(|(a, b)| (a - b).abs() <= rel_tol * a.abs().max(b.abs()).max(tol::ZERO_EIGENVALUE))
    }
}

impl fmt::Display for SchmidtSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.eigenvalues.iter().map(|v| format!("{v:.6}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Apply `matrix` (a `2^k × 2^k` operator) to `targets` of a raw amplitude vector.
pub(crate) fn apply_matrix(amps: &[C64], num_qubits: usize, matrix: &CMatrix, targets: &[usize]) -> Result<Vec<C64>> {
    let k = targets.len();
    if matrix.nrows() != 1 << k || !matrix.is_square() {
        return Err(Error::ArityMismatch { arity: qubits_for_len(matrix.nrows()).unwrap_or(0), targets: k });
    }
    checked_set(targets, num_qubits)?;
    let shifts: Vec<usize> = targets.iter().map(|&q| num_qubits - q).collect();
    let local = 1usize << k;
    // offset of local basis index j within the global index
    let offsets: Vec<usize> = (0..local)
        .map(|j| {
            (0..k)
                .filter(|&b| j >> (k - 1 - b) & 1 == 1)
                .map(|b| 1usize << shifts[b])
                .sum()
        })
        .collect();
    let target_mask: usize = shifts.iter().map(|s| 1usize << s).sum();
    let mut out = vec![ZERO; amps.len()];
    let mut gathered = vec![ZERO; local];
    for base in (0..amps.len()).filter(|g| g & target_mask == 0) {
        for (j, off) in offsets.iter().enumerate() {
            gathered[j] = amps[base + off];
        }
        for (row, off) in offsets.iter().enumerate() {
            let mut acc = ZERO;
            for (col, g) in gathered.iter().enumerate() {
                acc += matrix[(row, col)] * g;
            }
            out[base + off] = acc;
        }
    }
    Ok(out)
}

/// Collect the bits of global index `g` at `qubits` into a local index (first qubit most significant).
#[inline]
pub(crate) fn gather(g: usize, qubits: &[usize], num_qubits: usize) -> usize {
    qubits.iter().fold(0, |acc, &q| (acc << 1) | ((g >> (num_qubits - q)) & 1))
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("length {len} is not 2^n with n >= 1")));
    }
    let n = len.trailing_zeros() as usize;
    if n > MAX_QUBITS {
        return Err(Error::TooManyQubits { num_qubits: n, limit: MAX_QUBITS });
    }
    Ok(n)
}

fn parse_bits(bits: &str) -> Result<usize> {
    if bits.is_empty() || bits.len() > MAX_QUBITS {
        return Err(Error::Parse(format!("bit string {bits:?} must have 1..={MAX_QUBITS} characters")));
    }
    bits.chars().try_fold(0usize, |acc, ch| match ch {
        '0' => Ok(acc << 1),
        '1' => Ok((acc << 1) | 1),
        other => Err(Error::Parse(format!("invalid bit {other:?}"))),
    })
}
