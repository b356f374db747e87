use crate::clique::{max_clique, max_clique_within, Graph};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::pauli::{apply_pauli, expectation, product_index, string_from_index};
use crate::state::PureState;
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdcOptions {
    /// Overlaps with modulus at most this count as orthogonal.
    pub tol: f64,
    /// Return `4^|sender|` immediately when the sender marginal is maximally mixed.
    pub fast_path: bool,
    /// Pin the identity encoding into the clique. Exact because the
    /// orthogonality graph is invariant under Pauli translations.
    pub pin_identity: bool,
}

impl Default for SdcOptions {
    fn default() -> Self {
        Self { tol: tol::NORM, fast_path: true, pin_identity: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdcAnalysis {
    pub sender: Vec<usize>,
    pub max_messages: usize,
    /// Pauli-string indices of a maximum set of mutually orthogonal encodings, ascending.
    pub encodings: Vec<usize>,
    pub fast_path: bool,
    /// `min(4^s, 2^s · Schmidt rank)`: dimension of the reachable span.
    pub upper_bound: usize,
}

/// Orthogonal encodings: Pauli strings on the sender qubits and the global
/// states they produce.
#[derive(Debug, Clone)]
pub struct SdcCodebook {
    pub sender: Vec<usize>,
    pub encodings: Vec<Vec<u8>>,
    pub encoded_states: Vec<PureState>,
}

impl SdcCodebook {
    pub fn len(&self) -> usize {
        self.encodings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.encodings.is_empty()
    }

    /// Largest pairwise overlap modulus among encoded states.
    pub fn max_cross_overlap(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.encoded_states.iter().enumerate() {
            for b in &self.encoded_states[i + 1..] {
                worst = worst.max(a.overlap(b).map(|z| z.norm()).unwrap_or(f64::INFINITY));
            }
        }
        worst
    }
}

pub fn sdc_max_messages(state: &PureState, sender: &[usize]) -> Result<usize> {
    Ok(sdc_analysis(state, sender)?.max_messages)
}

pub fn sdc_analysis(state: &PureState, sender: &[usize]) -> Result<SdcAnalysis> {
    sdc_analysis_with(state, sender, SdcOptions::default())
}

/// Maximum number of Pauli encodings on `sender` whose encoded states are
/// pairwise orthogonal, found by exact maximum-clique search.
pub fn sdc_analysis_with(state: &PureState, sender: &[usize], opts: SdcOptions) -> Result<SdcAnalysis> {
    let n = state.num_qubits();
    let cut = Partition::from_sender(sender, n)?;
    let sender = cut.sender().to_vec();
    let s = sender.len();
    let vertices = 1usize << (2 * s);

    if opts.fast_path && state.partial_trace(&sender)?.is_maximally_mixed(tol::NORM) {
        return Ok(SdcAnalysis {
            sender,
            max_messages: vertices,
            encodings: (0..vertices).collect(),
            fast_path: true,
            upper_bound: vertices,
        });
    }

    let rank = state.schmidt_spectrum(&cut)?.rank();
    let upper_bound = vertices.min((1 << s) * rank);

    // ⟨ψ|P_a† P_b|ψ⟩ depends only on the product string, up to phase
    let expect: Vec<f64> = (0..vertices)
        .map(|p| expectation(state, &string_from_index(p, s), &sender).map(|z| z.norm()))
        .collect::<Result<_>>()?;
    let graph = Graph::from_fn(vertices, |a, b| expect[product_index(a, b, s)] <= opts.tol);

    let mut encodings = if opts.pin_identity {
        let mut rest = max_clique_within(&graph, graph.neighbours(0), upper_bound.saturating_sub(1));
        rest.push(0);
        rest
    } else {
        max_clique(&graph)
    };
    encodings.sort_unstable();
    Ok(SdcAnalysis { sender, max_messages: encodings.len(), encodings, fast_path: false, upper_bound })
}

/// A codebook of `messages` orthogonal encodings, or an error if fewer exist.
pub fn build_sdc_codebook(state: &PureState, sender: &[usize], messages: usize) -> Result<SdcCodebook> {
    let analysis = sdc_analysis(state, sender)?;
    if messages == 0 || analysis.max_messages < messages {
        return Err(Error::CodebookTooSmall { available: analysis.max_messages, requested: messages });
    }
    let s = analysis.sender.len();
    let encodings: Vec<Vec<u8>> = analysis.encodings[..messages].iter().map(|&i| string_from_index(i, s)).collect();
    let encoded_states = encodings
        .iter()
        .map(|p| apply_pauli(state, p, &analysis.sender))
        .collect::<Result<_>>()?;
    Ok(SdcCodebook { sender: analysis.sender, encodings, encoded_states })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdcDecode {
    pub decoded: usize,
    /// Probability that the projective decoding returns `decoded`.
    pub probability: f64,
}

/// Encode `message` on the sender qubits and decode by projecting onto the
/// codebook's encoded states.
pub fn simulate_sdc(state: &PureState, codebook: &SdcCodebook, message: usize) -> Result<SdcDecode> {
    let encoding = codebook
        .encodings
        .get(message)
        .ok_or(Error::MessageOutOfRange { index: message, size: codebook.len() })?;
    let sent = apply_pauli(state, encoding, &codebook.sender)?;
    let mut best = SdcDecode { decoded: 0, probability: -1.0 };
    for (j, e) in codebook.encoded_states.iter().enumerate() {
        let p = e.overlap(&sent)?.norm_sqr();
        if p > best.probability {
            best = SdcDecode { decoded: j, probability: p };
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_state, BellKind, StateSpec};

    #[test]
    fn examples() {
        let ghz4 = make_state(&StateSpec::Ghz(4)).unwrap();
        assert_eq!(sdc_max_messages(&ghz4, &[1, 3]).unwrap(), 8);
        let cluster = make_state(&StateSpec::CnotChain { pairs: 2, extra_qubit: false }).unwrap();
        let a = sdc_analysis(&cluster, &[1, 3]).unwrap();
        assert!(a.fast_path);
        assert_eq!(a.max_messages, 16);
        let w2 = make_state(&StateSpec::W(2)).unwrap();
        assert_eq!(sdc_max_messages(&w2, &[1, 2]).unwrap(), 8);
        assert_eq!(sdc_max_messages(&PureState::basis("0000").unwrap(), &[1, 3]).unwrap(), 4);
    }

    #[test]
    fn invalid_sender_sets() {
        let bell = make_state(&StateSpec::Bell(BellKind::PhiPlus)).unwrap();
        assert!(sdc_max_messages(&bell, &[]).is_err());
        assert!(sdc_max_messages(&bell, &[1, 2]).is_err());
        assert!(sdc_max_messages(&bell, &[3]).is_err());
    }

    #[test]
    fn bell_codebook_decodes() {
        let bell = make_state(&StateSpec::Bell(BellKind::PhiPlus)).unwrap();
        let book = build_sdc_codebook(&bell, &[1], 4).unwrap();
        assert!(book.max_cross_overlap() < 1e-12);
        for m in 0..4 {
            let d = simulate_sdc(&bell, &book, m).unwrap();
            assert_eq!(d.decoded, m);
            assert!((d.probability - 1.0).abs() < 1e-12);
        }
        assert!(matches!(simulate_sdc(&bell, &book, 4), Err(Error::MessageOutOfRange { .. })));
    }

    #[test]
    fn ghz4_cannot_carry_sixteen() {
        let ghz4 = make_state(&StateSpec::Ghz(4)).unwrap();
        assert!(matches!(
            build_sdc_codebook(&ghz4, &[1, 3], 16),
            Err(Error::CodebookTooSmall { available: 8, requested: 16 })
        ));
    }

    #[test]
    fn pinned_search_agrees_with_plain_search() {
        let slow = SdcOptions { fast_path: false, pin_identity: false, ..SdcOptions::default() };
        for spec in ["ghz:4", "w:2", "hs", "chi", "omega"] {
            let s = make_state(&spec.parse().unwrap()).unwrap();
            for sender in [vec![1], vec![1, 3], vec![2, 3], vec![1, 2, 3]] {
                if sender.len() >= s.num_qubits() {
                    continue;
                }
                let a = sdc_analysis(&s, &sender).unwrap().max_messages;
                let b = sdc_analysis_with(&s, &sender, slow).unwrap().max_messages;
                assert_eq!(a, b, "{spec} {sender:?}");
            }
        }
    }
}
