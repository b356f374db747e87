//! Local-unitary invariants: spectra across every bipartition, certificates
//! that a conversion by a unitary on a qubit subset is impossible, genuine
//! multipartite entanglement, and orthogonal families generated by Pauli
//! strings.

use serde::Serialize;

use crate::clique::{max_clique, Graph};
use crate::error::{Error, Result};
use crate::partition::{checked_set, subsets_of_size, Partition};
use crate::pauli::{apply_pauli, string_from_index};
use crate::state::{PureState, SchmidtSpectrum};
use crate::tol;

/// Largest register for which all `2^{n−1} − 1` cuts are enumerated.
pub const MAX_CUT_QUBITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutSpectrum {
    /// Canonical label: the smaller side, or on a tie the side holding qubit 1.
    pub side: Vec<usize>,
    pub cut: Partition,
    pub spectrum: SchmidtSpectrum,
}

/// Canonical cuts ordered by side size, then lexicographically.
pub fn canonical_cuts(num_qubits: usize) -> Result<Vec<Partition>> {
    if num_qubits < 2 {
        return Ok(Vec::new());
    }
    if num_qubits > MAX_CUT_QUBITS {
        return Err(Error::TooManyQubits { num_qubits, limit: MAX_CUT_QUBITS });
    }
    let mut cuts = Vec::new();
    for size in 1..=num_qubits / 2 {
        for side in subsets_of_size(num_qubits, size) {
            if 2 * size == num_qubits && side[0] != 1 {
                continue;
            }
            cuts.push(Partition::from_sender(&side, num_qubits)?);
        }
    }
    Ok(cuts)
}

pub fn all_bipartition_spectra(state: &PureState) -> Result<Vec<CutSpectrum>> {
    canonical_cuts(state.num_qubits())?
        .into_iter()
        .map(|cut| {
            Ok(CutSpectrum {
                side: cut.sender().to_vec(),
                spectrum: state.schmidt_spectrum(&cut)?,
                cut,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub side: Vec<usize>,
    pub source: SchmidtSpectrum,
    pub target: SchmidtSpectrum,
}

/// Cuts on which a unitary restricted to `acting_subset` cannot explain the
/// spectral change from source to target. An empty list means no obstruction
/// was found, which does not prove the conversion possible.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObstructionReport {
    pub acting_subset: Vec<usize>,
    pub cuts_checked: usize,
    pub violated_cuts: Vec<Violation>,
}

impl ObstructionReport {
    pub fn is_obstructed(&self) -> bool {
        !self.violated_cuts.is_empty()
    }
}

/// Compare spectra on every cut that keeps `acting_subset` on one side; a
/// unitary on the subset preserves each of those spectra.
pub fn conversion_obstruction(source: &PureState, target: &PureState, acting_subset: &[usize]) -> Result<ObstructionReport> {
    let n = source.num_qubits();
    if target.num_qubits() != n {
        return Err(Error::DimensionMismatch { expected: n, found: target.num_qubits() });
    }
    let subset: Vec<usize> = checked_set(acting_subset, n)?.into_iter().collect();
    let mut report = ObstructionReport { acting_subset: subset.clone(), cuts_checked: 0, violated_cuts: Vec::new() };
    for cut in canonical_cuts(n)? {
        if !cut.keeps_together(&subset) {
            continue;
        }
        report.cuts_checked += 1;
        let a = source.schmidt_spectrum(&cut)?;
        let b = target.schmidt_spectrum(&cut)?;
        if !a.approx_eq(&b, tol::CLUSTER_REL) {
            report.violated_cuts.push(Violation { side: cut.sender().to_vec(), source: a, target: b });
        }
    }
    Ok(report)
}

/// No bipartition is a product (Schmidt rank 1 everywhere excluded).
pub fn genuine_multipartite(state: &PureState) -> Result<bool> {
    if state.num_qubits() < 2 {
        return Err(Error::InvalidParameter("need at least two qubits".into()));
    }
    Ok(all_bipartition_spectra(state)?.iter().all(|c| c.spectrum.rank() > 1))
}

/// States obtained by every Pauli string on a qubit subset.
#[derive(Debug, Clone)]
pub struct OrthogonalFamily {
    pub subset: Vec<usize>,
    pub labels: Vec<Vec<u8>>,
    pub states: Vec<PureState>,
    /// `|⟨s_i|s_j⟩|`.
    pub gram: Vec<Vec<f64>>,
}

impl OrthogonalFamily {
    /// Largest deviation of the Gram moduli from the identity matrix.
    pub fn identity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, row) in self.gram.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let t = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v - t).abs());
            }
        }
        worst
    }

    pub fn all_orthogonal(&self, tol: f64) -> bool {
        self.identity_defect() <= tol
    }

    /// Indices of a largest mutually orthogonal subfamily (deterministic).
    pub fn max_orthogonal_subfamily(&self, tol: f64) -> Vec<usize> {
        let g = Graph::from_fn(self.states.len(), |a, b| self.gram[a][b] <= tol);
        let mut c = max_clique(&g);
        c.sort_unstable();
        c
    }

    /// Number of classes of states equal up to phase.
    pub fn distinct_up_to_phase(&self, tol: f64) -> usize {
        let mut reps: Vec<usize> = Vec::new();
        for i in 0..self.states.len() {
            if !reps.iter().any(|&r| (self.gram[r][i] - 1.0).abs() <= tol) {
                reps.push(i);
            }
        }
        reps.len()
    }
}

pub fn orthogonal_family(state: &PureState, subset: &[usize]) -> Result<OrthogonalFamily> {
    let subset: Vec<usize> = checked_set(subset, state.num_qubits())?.into_iter().collect();
    if subset.is_empty() {
        return Err(Error::InvalidParameter("subset must be non-empty".into()));
    }
    let k = subset.len();
    let labels: Vec<Vec<u8>> = (0..1usize << (2 * k)).map(|i| string_from_index(i, k)).collect();
    let states: Vec<PureState> = labels.iter().map(|p| apply_pauli(state, p, &subset)).collect::<Result<_>>()?;
    let gram = states
        .iter()
        .map(|a| states.iter().map(|b| a.overlap(b).map(|z| z.norm())).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(OrthogonalFamily { subset, labels, states, gram })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_state, StateSpec};

    fn st(spec: &str) -> PureState {
        make_state(&spec.parse::<StateSpec>().unwrap()).unwrap()
    }

    #[test]
    fn cut_enumeration() {
        assert_eq!(canonical_cuts(2).unwrap().len(), 1);
        assert_eq!(canonical_cuts(4).unwrap().len(), 7);
        assert_eq!(canonical_cuts(5).unwrap().len(), 15);
        assert!(canonical_cuts(13).is_err());
        let sides: Vec<Vec<usize>> = canonical_cuts(4).unwrap().iter().map(|c| c.sender().to_vec()).collect();
        assert_eq!(sides, vec![vec![1], vec![2], vec![3], vec![4], vec![1, 2], vec![1, 3], vec![1, 4]]);
    }

    #[test]
    fn ghz4_every_cut_is_a_bit() {
        let spectra = all_bipartition_spectra(&st("ghz:4")).unwrap();
        assert_eq!(spectra.len(), 7);
        for c in spectra {
            assert_eq!(c.spectrum.rank(), 2);
            assert!(c.spectrum.eigenvalues().iter().all(|v| (v - 0.5).abs() < 1e-12));
        }
    }

    #[test]
    fn bell_pairs_product_cut() {
        let spectra = all_bipartition_spectra(&st("bell-product:2")).unwrap();
        let c = spectra.iter().find(|c| c.side == vec![1, 2]).unwrap();
        assert_eq!(c.spectrum.rank(), 1);
        let spectra = all_bipartition_spectra(&st("phi+")).unwrap();
        assert_eq!(spectra.len(), 1);
        assert_eq!(spectra[0].spectrum.rank(), 2);
    }

    #[test]
    fn obstructions() {
        let pairs = st("bell-product:2");
        let r = conversion_obstruction(&pairs, &st("chain:2"), &[1, 3]).unwrap();
        assert!(!r.is_obstructed());
        let r = conversion_obstruction(&pairs, &st("ghz:4"), &[1, 3]).unwrap();
        assert!(r.is_obstructed());
        let v = r.violated_cuts.iter().find(|v| v.side == vec![1, 3]).unwrap();
        assert_eq!(v.source.rank(), 4);
        assert_eq!(v.target.rank(), 2);
        let src = st("odd-resource:1");
        for pair in [[1, 2], [1, 3], [2, 3]] {
            assert!(conversion_obstruction(&src, &st("w:2"), &pair).unwrap().is_obstructed());
        }
        assert!(conversion_obstruction(&src, &pairs, &[1]).is_err());
    }

    #[test]
    fn gme() {
        assert!(genuine_multipartite(&st("chain:2")).unwrap());
        assert!(genuine_multipartite(&st("ghz:3")).unwrap());
        assert!(genuine_multipartite(&st("chi")).unwrap());
        assert!(!genuine_multipartite(&st("bell-product:2")).unwrap());
        assert!(genuine_multipartite(&PureState::basis("0").unwrap()).is_err());
    }

    #[test]
    fn families() {
        let f = orthogonal_family(&st("chain:2"), &[1, 3]).unwrap();
        assert_eq!(f.states.len(), 16);
        assert!(f.all_orthogonal(1e-9));
        let f = orthogonal_family(&PureState::basis("00").unwrap(), &[1]).unwrap();
        assert_eq!(f.states.len(), 4);
        assert_eq!(f.distinct_up_to_phase(1e-9), 2);
        assert_eq!(f.max_orthogonal_subfamily(1e-9).len(), 2);
        assert!(orthogonal_family(&st("phi+"), &[]).is_err());
    }
}
