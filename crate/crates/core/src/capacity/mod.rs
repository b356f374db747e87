//! Operational capacities of a resource state: how many qubits it can
//! teleport across a cut, how many messages superdense coding can carry, and
//! the combined maximality verdict.

mod sdc;
mod teleport;
mod tmes;

pub use sdc::{
    build_sdc_codebook, sdc_analysis, sdc_analysis_with, sdc_max_messages, simulate_sdc, SdcAnalysis,
    SdcCodebook, SdcDecode, SdcOptions,
};
pub use teleport::{
    assemble_protocol, build_teleport_protocol, random_payload, run_protocol, simulate_teleportation,
    MeasurementOutcome, OutcomeResult, TeleportProtocol, TeleportationRun,
};
pub use tmes::{is_tmes, TmesVerdict};

use crate::error::Result;
use crate::partition::Partition;
use crate::state::{PureState, SchmidtSpectrum};
use crate::tol;

/// Largest `k ≤ |receiver|` such that every distinct Schmidt coefficient
/// across `cut` has multiplicity divisible by `2^k`, i.e. the resource is
/// locally equivalent to `k` Bell pairs across the cut times a leftover state.
pub fn teleport_capacity(state: &PureState, cut: &Partition) -> Result<usize> {
    let spectrum = state.schmidt_spectrum(cut)?;
    Ok(capacity_from_spectrum(&spectrum, cut.receiver().len()))
}

pub fn capacity_from_spectrum(spectrum: &SchmidtSpectrum, receiver_qubits: usize) -> usize {
    let clusters = spectrum.clusters(tol::CLUSTER_REL);
    let mut k = 0;
    while k < receiver_qubits && clusters.iter().all(|&(_, mult)| mult % (1 << (k + 1)) == 0) {
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_state, StateSpec};

    fn cut(s: &[usize], r: &[usize]) -> Partition {
        Partition::new(s, r, s.len() + r.len()).unwrap()
    }

    #[test]
    fn capacity_examples() {
        let ghz4 = make_state(&StateSpec::Ghz(4)).unwrap();
        assert_eq!(teleport_capacity(&ghz4, &cut(&[1, 3], &[2, 4])).unwrap(), 1);
        let cluster = make_state(&StateSpec::CnotChain { pairs: 2, extra_qubit: false }).unwrap();
        assert_eq!(teleport_capacity(&cluster, &cut(&[1, 3], &[2, 4])).unwrap(), 2);
        let pairs = make_state(&StateSpec::BellProduct(2)).unwrap();
        assert_eq!(teleport_capacity(&pairs, &cut(&[1, 3], &[2, 4])).unwrap(), 2);
        assert_eq!(teleport_capacity(&pairs, &cut(&[1, 2], &[3, 4])).unwrap(), 0);
        let w2 = make_state(&StateSpec::W(2)).unwrap();
        assert_eq!(teleport_capacity(&w2, &cut(&[1, 2], &[3])).unwrap(), 1);
        assert_eq!(teleport_capacity(&w2, &cut(&[2, 3], &[1])).unwrap(), 0);
    }

    #[test]
    fn capacity_bounded_by_receiver() {
        let pairs = make_state(&StateSpec::BellProduct(2)).unwrap();
        // rank 4 uniform, but only one receiver qubit
        let s = pairs.tensor(&PureState::basis("0").unwrap()).unwrap();
        assert_eq!(teleport_capacity(&s, &cut(&[1, 3, 5], &[2, 4])).unwrap(), 2);
        let spectrum = SchmidtSpectrum::from_eigenvalues(vec![0.25; 4]);
        assert_eq!(capacity_from_spectrum(&spectrum, 1), 1);
        let mixed = SchmidtSpectrum::from_eigenvalues(vec![0.4, 0.4, 0.1, 0.1]);
        assert_eq!(capacity_from_spectrum(&mixed, 2), 1);
    }
}
