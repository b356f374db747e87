//! Independent brute-force oracles checked against the library.

use tmes_core::capacity::{assemble_protocol, random_payload, run_protocol, sdc_max_messages, teleport_capacity};
use tmes_core::linalg::{c, numerical_rank, CMatrix, C64};
use tmes_core::lu::{conversion_obstruction, orthogonal_family};
use tmes_core::operators::independence_rank;
use tmes_core::pauli::pauli_string;
use tmes_core::random::{haar_state, seeded};
use tmes_core::{make_state, Partition, PureState, StateSpec};

fn bit(index: usize, n: usize, q: usize) -> usize {
    (index >> (n - q)) & 1
}

/// Reduced density matrix by summing over every basis string of the traced qubits.
fn brute_partial_trace(psi: &PureState, keep: &[usize]) -> Vec<Vec<C64>> {
    let n = psi.num_qubits();
    let d = 1 << keep.len();
    let sub = |i: usize| keep.iter().fold(0, |acc, &q| (acc << 1) | bit(i, n, q));
    let rest = |i: usize| (1..=n).filter(|q| !keep.contains(q)).fold(0, |acc, q| (acc << 1) | bit(i, n, q));
    let mut rho = vec![vec![c(0.0, 0.0); d]; d];
    let amps = psi.amplitudes();
    for i in 0..amps.len() {
        for j in 0..amps.len() {
            if rest(i) == rest(j) {
                rho[sub(i)][sub(j)] += amps[i] * amps[j].conj();
            }
        }
    }
    rho
}

fn brute_pauli(psi: &PureState, paulis: &[u8], targets: &[usize]) -> Vec<C64> {
    let n = psi.num_qubits();
    let mut out = psi.amplitudes().to_vec();
    for (&p, &q) in paulis.iter().zip(targets) {
        let mask = 1 << (n - q);
        let prev = out.clone();
        for (i, slot) in out.iter_mut().enumerate() {
            let b = bit(i, n, q);
            *slot = match p {
                0 => prev[i],
                1 => prev[i ^ mask],
                2 => prev[i ^ mask] * if b == 1 { c(0.0, 1.0) } else { c(0.0, -1.0) },
                _ => prev[i] * if b == 1 { -1.0 } else { 1.0 },
            };
        }
    }
    out
}

/// Largest set of Pauli strings on `sender` giving mutually orthogonal states, by exhaustive subset search.
fn brute_sdc(psi: &PureState, sender: &[usize]) -> usize {
    let k = sender.len();
    let strings: Vec<Vec<u8>> = (0..1usize << (2 * k))
        .map(|idx| (0..k).map(|i| ((idx >> (2 * (k - 1 - i))) & 3) as u8).collect())
        .collect();
    let states: Vec<Vec<C64>> = strings.iter().map(|p| brute_pauli(psi, p, sender)).collect();
    let m = states.len();
    let mut ortho = vec![0u64; m];
    for a in 0..m {
        for b in 0..m {
            let ov: C64 = states[a].iter().zip(&states[b]).map(|(x, y)| x.conj() * y).sum();
            if a != b && ov.norm() <= 1e-9 {
                ortho[a] |= 1 << b;
            }
        }
    }
    let mut best = 0;
    for set in 0u64..(1u64 << m) {
        let size = set.count_ones() as usize;
        if size <= best {
            continue;
        }
        let clique = (0..m).filter(|&a| set >> a & 1 == 1).all(|a| (set & !(1 << a)) & !ortho[a] == 0);
        if clique {
            best = size;
        }
    }
    best
}

fn state(spec: StateSpec) -> PureState {
    make_state(&spec).unwrap()
}

#[test]
fn partial_trace_matches_branch_expansion() {
    let ghz = state(StateSpec::Ghz(4));
    let rho = ghz.partial_trace(&[2, 4]).unwrap();
    let brute = brute_partial_trace(&ghz, &[2, 4]);
    assert!((brute[0][0].re - 0.5).abs() < 1e-15 && (brute[3][3].re - 0.5).abs() < 1e-15);
    assert!(brute[0][3].norm() < 1e-15);
    for spec in [StateSpec::Ghz(4), StateSpec::Omega, StateSpec::Chi, StateSpec::Hs] {
        let s = state(spec);
        for keep in [vec![2, 4], vec![1], vec![1, 3], vec![3, 2]] {
            let lib = s.partial_trace(&keep).unwrap();
            let brute = brute_partial_trace(&s, &keep);
            for (a, row) in brute.iter().enumerate() {
                for (b, v) in row.iter().enumerate() {
                    assert!((lib.matrix()[(a, b)] - v).norm() < 1e-12);
                }
            }
        }
    }
    assert!(rho.matrix()[(1, 1)].norm() < 1e-15);
}

#[test]
fn w2_spectrum_and_entropy() {
    let w2 = state(StateSpec::W(2));
    let spec = w2.schmidt_spectrum(&Partition::new(&[1], &[2, 3], 3).unwrap()).unwrap();
    assert!((spec.eigenvalues()[0] - 5.0 / 6.0).abs() < 1e-12);
    assert!((spec.eigenvalues()[1] - 1.0 / 6.0).abs() < 1e-12);
    let h = -(5.0f64 / 6.0) * (5.0f64 / 6.0).log2() - (1.0f64 / 6.0) * (1.0f64 / 6.0).log2();
    assert!((spec.entropy() - h).abs() < 1e-12);
    assert!((spec.entropy() - 0.6500).abs() < 1e-3);
}

#[test]
fn negativity_matches_schmidt_formula() {
    let mut rng = seeded(11);
    for n in 2..=5 {
        let s = haar_state(n, &mut rng).unwrap();
        for cut in tmes_core::lu::canonical_cuts(n).unwrap() {
            let sum_sqrt: f64 = s.schmidt_spectrum(&cut).unwrap().eigenvalues().iter().map(|l| l.max(0.0).sqrt()).sum();
            let expected = (sum_sqrt * sum_sqrt - 1.0) / 2.0;
            assert!((s.negativity(&cut).unwrap() - expected).abs() < 1e-9, "n={n} cut {cut}");
        }
    }
}

#[test]
fn two_qubit_pauli_strings_are_independent() {
    let ops: Vec<_> = (0..16u8).map(|i| pauli_string(&[i / 4, i % 4]).unwrap()).collect();
    assert_eq!(independence_rank(&ops).unwrap(), 16);
}

#[test]
fn pauli_action_matches_brute_force() {
    let s = haar_state(3, &mut seeded(5)).unwrap();
    for idx in 0..16u8 {
        let p = [idx / 4, idx % 4];
        let lib = s.apply_local(&pauli_string(&p).unwrap(), &[3, 1]).unwrap();
        let brute = brute_pauli(&s, &p, &[3, 1]);
        assert!(lib.amplitudes().iter().zip(&brute).all(|(a, b)| (a - b).norm() < 1e-12));
    }
}

#[test]
fn sdc_matches_exhaustive_search() {
    let cases = [
        (PureState::basis("0000").unwrap(), vec![1, 3], 4),
        (state(StateSpec::Ghz(4)), vec![1, 3], 8),
        (state(StateSpec::W(2)), vec![1, 2], 8),
        (state(StateSpec::W(2)), vec![1, 3], 4),
        (state(StateSpec::CnotChain { pairs: 2, extra_qubit: false }), vec![1, 3], 16),
        (state(StateSpec::Hs), vec![1, 2], 4),
    ];
    for (s, sender, want) in cases {
        let brute = brute_sdc(&s, &sender);
        assert_eq!(brute, want, "{sender:?}");
        assert_eq!(sdc_max_messages(&s, &sender).unwrap(), brute, "{sender:?}");
    }
    let mut rng = seeded(3);
    for _ in 0..6 {
        let s = haar_state(3, &mut rng).unwrap();
        assert_eq!(sdc_max_messages(&s, &[2]).unwrap(), brute_sdc(&s, &[2]));
        assert_eq!(sdc_max_messages(&s, &[1, 3]).unwrap(), brute_sdc(&s, &[1, 3]));
    }
}

#[test]
fn pauli_message_count_depends_on_sender_basis() {
    let ghz = state(StateSpec::Ghz(4));
    let u = tmes_core::random::haar_unitary(2, &mut seeded(0)).unwrap();
    let rotated = ghz.apply_local(&u, &[1, 3]).unwrap();
    assert_eq!(sdc_max_messages(&ghz, &[1, 3]).unwrap(), 8);
    assert_eq!(brute_sdc(&rotated, &[1, 3]), sdc_max_messages(&rotated, &[1, 3]).unwrap());
    assert!(sdc_max_messages(&rotated, &[1, 3]).unwrap() < 8);
    let cut = Partition::from_sender(&[1, 3], 4).unwrap();
    assert_eq!(teleport_capacity(&ghz, &cut).unwrap(), teleport_capacity(&rotated, &cut).unwrap());
}

#[test]
fn obstruction_spectra() {
    let pairs = state(StateSpec::BellProduct(2));
    let report = conversion_obstruction(&pairs, &state(StateSpec::Ghz(4)), &[1, 3]).unwrap();
    let v = report.violated_cuts.iter().find(|v| v.side == [1, 3]).expect("cut {1,3}|{2,4} violated");
    assert!(v.source.eigenvalues().iter().all(|l| (l - 0.25).abs() < 1e-12));
    assert_eq!(v.target.eigenvalues().len(), 2);

    let odd = state(StateSpec::OddResource(1));
    let w2 = state(StateSpec::W(2));
    let v = conversion_obstruction(&odd, &w2, &[2, 3]).unwrap();
    let one = v.violated_cuts.iter().find(|v| v.side == [1]).unwrap();
    assert!((one.source.eigenvalues()[0] - 0.5).abs() < 1e-12);
    assert!((one.target.eigenvalues()[0] - 5.0 / 6.0).abs() < 1e-12);
}

#[test]
fn five_qubit_family_spans_thirty_two_dimensions() {
    let s = state(StateSpec::CnotChain { pairs: 2, extra_qubit: true });
    let mut m = CMatrix::zeros(32, 64);
    for idx in 0..64u8 {
        let p = [idx / 16, (idx / 4) % 4, idx % 4];
        for (row, a) in brute_pauli(&s, &p, &[1, 3, 5]).into_iter().enumerate() {
            m[(row, usize::from(idx))] = a;
        }
    }
    assert_eq!(numerical_rank(&m, 1e-9), 32);
    let family = orthogonal_family(&s, &[1, 3, 5]).unwrap();
    assert_eq!(family.max_orthogonal_subfamily(1e-9).len(), 32);
}

#[test]
fn capacity_is_the_largest_working_protocol() {
    let mut cases: Vec<(PureState, Vec<usize>)> = vec![
        (state(StateSpec::Ghz(4)), vec![1, 3]),
        (state(StateSpec::Hs), vec![1, 2]),
        (state(StateSpec::W(2)), vec![1, 2]),
        (state(StateSpec::W(2)), vec![1]),
        (state(StateSpec::CnotChain { pairs: 2, extra_qubit: true }), vec![1, 3, 5]),
    ];
    let mut rng = seeded(21);
    cases.push((haar_state(4, &mut rng).unwrap(), vec![1, 2]));
    for (s, sender) in cases {
        let cut = Partition::from_sender(&sender, s.num_qubits()).unwrap();
        let cap = teleport_capacity(&s, &cut).unwrap();
        let fidelity = |k: usize| {
            let protocol = assemble_protocol(&s, &cut, k).unwrap();
            (0..5).map(|seed| run_protocol(&protocol, &s, &random_payload(k, seed).unwrap()).unwrap().min_fidelity()).fold(1.0, f64::min)
        };
        if cap > 0 {
            assert!(fidelity(cap) > 1.0 - 1e-9, "{cut}");
        }
        if cap < cut.receiver().len() {
            assert!(fidelity(cap + 1) < 1.0 - 1e-6, "{cut} at {}", cap + 1);
        }
    }
}
