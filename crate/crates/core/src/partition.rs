use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bipartition of qubits `1..=n` into a sender and a receiver side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    sender: Vec<usize>,
    receiver: Vec<usize>,
}

impl Partition {
    pub fn new(sender: &[usize], receiver: &[usize], num_qubits: usize) -> Result<Self> {
        let s = checked_set(sender, num_qubits)?;
        let r = checked_set(receiver, num_qubits)?;
        if s.is_empty() || r.is_empty() {
            return Err(Error::InvalidPartition("both sides must be non-empty".into()));
        }
        if let Some(q) = s.intersection(&r).next() {
            return Err(Error::InvalidPartition(format!("qubit {q} on both sides")));
        }
        if s.len() + r.len() != num_qubits {
            return Err(Error::InvalidPartition(format!(
                "sides cover {} of {num_qubits} qubits",
                s.len() + r.len()
            )));
        }
        Ok(Self {
            sender: s.into_iter().collect(),
            receiver: r.into_iter().collect(),
        })
    }

    /// Sender side as given, receiver = every other qubit.
    pub fn from_sender(sender: &[usize], num_qubits: usize) -> Result<Self> {
        let s = checked_set(sender, num_qubits)?;
        let receiver: Vec<usize> = (1..=num_qubits).filter(|q| !s.contains(q)).collect();
        Self::new(sender, &receiver, num_qubits)
    }

    /// Odd-indexed qubits send, even-indexed qubits receive.
    pub fn odd_even(num_qubits: usize) -> Result<Self> {
        let odd: Vec<usize> = (1..=num_qubits).step_by(2).collect();
        Self::from_sender(&odd, num_qubits)
    }

    pub fn sender(&self) -> &[usize] {
        &self.sender
    }

    pub fn receiver(&self) -> &[usize] {
        &self.receiver
    }

    pub fn num_qubits(&self) -> usize {
        self.sender.len() + self.receiver.len()
    }

    /// The side with fewer qubits; on a tie, the side holding qubit 1.
    pub fn smaller_side(&self) -> &[usize] {
        match self.sender.len().cmp(&self.receiver.len()) {
            std::cmp::Ordering::Less => &self.sender,
            std::cmp::Ordering::Greater => &self.receiver,
            std::cmp::Ordering::Equal => {
                if self.sender[0] < self.receiver[0] {
                    &self.sender
                } else {
                    &self.receiver
                }
            }
        }
    }

    /// Same cut with the sides exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            sender: self.receiver.clone(),
            receiver: self.sender.clone(),
        }
    }

    /// True if every qubit in `subset` lies on one side of the cut.
    pub fn keeps_together(&self, subset: &[usize]) -> bool {
        subset.iter().all(|q| self.sender.contains(q)) || subset.iter().all(|q| self.receiver.contains(q))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{{{}}}|{{{}}}", join(&self.sender), join(&self.receiver))
    }
}

/// Validate a list of 1-based qubit labels: in range, no repeats.
pub(crate) fn checked_set(qubits: &[usize], num_qubits: usize) -> Result<BTreeSet<usize>> {
    let mut set = BTreeSet::new();
    for &q in qubits {
        if q == 0 || q > num_qubits {
            return Err(Error::QubitOutOfRange { qubit: q, num_qubits });
        }
        if !set.insert(q) {
            return Err(Error::DuplicateQubit(q));
        }
    }
    Ok(set)
}

/// Parse a comma-separated qubit list such as `"1,3,5"`.
pub fn parse_qubit_list(text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty qubit list".into()));
    }
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad qubit label {tok:?}: {e}")))
        })
        .collect()
}


/// All `k`-element subsets of `1..=n`, lexicographic.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for q in start..=n {
            if n - q + 1 < k - cur.len() {
                break;
            }
            cur.push(q);
            rec(q + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(1, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

#[cfg(test)]
mod subset_tests {
    use super::subsets_of_size;

    #[test]
    fn counts_and_order() {
        assert_eq!(subsets_of_size(4, 2).len(), 6);
        assert_eq!(subsets_of_size(4, 2)[0], vec![1, 2]);
        assert_eq!(subsets_of_size(5, 3).len(), 10);
        assert!(subsets_of_size(2, 3).is_empty());
        assert_eq!(subsets_of_size(3, 0), vec![Vec::<usize>::new()]);
    }
}
