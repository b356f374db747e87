use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{subsets_of_size, Partition};
use crate::state::PureState;

use super::{sdc_analysis, teleport_capacity};

/// Combined verdict on maximal teleportation and maximal superdense coding.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TmesVerdict {
    pub is_tmes: bool,
    /// Best teleportation capacity found over the searched partitions.
    pub teleport_qubits: usize,
    /// Best superdense-coding message count found over the searched sender sets.
    pub sdc_messages: usize,
    pub teleport_threshold: usize,
    pub sdc_threshold: usize,
    /// Partition realising `teleport_qubits`.
    pub witnessing_partition: Option<Partition>,
    /// Sender set realising `sdc_messages`.
    pub sdc_sender: Option<Vec<usize>>,
}

/// Decide maximality for an `n`-qubit state (`n ≥ 2`).
///
/// Even `n`: some `n/2 | n/2` cut must teleport `n/2` qubits and some
/// `n/2`-qubit sender set must carry `2^n` messages. Odd `n`: a cut with
/// `(n+1)/2` senders must teleport `(n−1)/2` qubits and some `(n+1)/2`-qubit
/// sender set must carry `2^n` messages. Both searches are existential and
/// try the odd-indexed sender set first.
pub fn is_tmes(state: &PureState) -> Result<TmesVerdict> {
    let n = state.num_qubits();
    if n < 2 {
        return Err(Error::InvalidParameter("maximality needs at least two qubits".into()));
    }
    let teleport_threshold = n / 2;
    let sender_size = n.div_ceil(2);
    let sdc_threshold = 1usize << n;

    let odd: Vec<usize> = (1..=n).step_by(2).collect();
    let mut candidates = vec![odd.clone()];
    candidates.extend(subsets_of_size(n, sender_size).into_iter().filter(|s| *s != odd));

    let mut teleport_qubits = 0;
    let mut witnessing_partition = None;
    for sender in &candidates {
        let cut = Partition::from_sender(sender, n)?;
        let cap = teleport_capacity(state, &cut)?;
        if witnessing_partition.is_none() || cap > teleport_qubits {
            teleport_qubits = cap;
            witnessing_partition = Some(cut);
        }
        if teleport_qubits >= teleport_threshold {
            break;
        }
    }

    let mut sdc_messages = 0;
    let mut sdc_sender = None;
    for sender in &candidates {
        let cut = Partition::from_sender(sender, n)?;
        let bound = (1usize << (2 * sender.len())).min((1 << sender.len()) * state.schmidt_spectrum(&cut)?.rank());
        if bound <= sdc_messages {
            continue;
        }
        let analysis = sdc_analysis(state, sender)?;
        if sdc_sender.is_none() || analysis.max_messages > sdc_messages {
            sdc_messages = analysis.max_messages;
            sdc_sender = Some(analysis.sender);
        }
        if sdc_messages >= sdc_threshold {
            break;
        }
    }

    Ok(TmesVerdict {
        is_tmes: teleport_qubits >= teleport_threshold && sdc_messages >= sdc_threshold,
        teleport_qubits,
        sdc_messages,
        teleport_threshold,
        sdc_threshold,
        witnessing_partition,
        sdc_sender,
    })
}
