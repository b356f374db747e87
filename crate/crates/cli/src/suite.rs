//! The claim suite: every identity, capacity and protocol result the tool
//! certifies, each evaluated independently and reported once.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use tmes_core::capacity::{
    build_sdc_codebook, build_teleport_protocol, is_tmes, random_payload, run_protocol, sdc_max_messages,
    simulate_sdc, teleport_capacity,
};
use tmes_core::lu::{conversion_obstruction, genuine_multipartite, orthogonal_family};
use tmes_core::operators::{
    find_realizing_application, gamma, independence_rank, named_operator, sigma_construct, NamedOperator, OperatorSet,
};
use tmes_core::random::{haar_unitary, seeded};
use tmes_core::{make_state, Partition, PureState, Result, SchmidtSpectrum, StateSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub tol: f64,
    pub seed: u64,
    /// Restrict to these claim ids; `None` runs everything.
    pub claims: Option<Vec<String>>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { tol: 1e-9, seed: 0, claims: None }
    }
}

impl SuiteConfig {
    /// Tolerance for amplitude-exact identities.
    pub fn exact_tol(&self) -> f64 {
        self.tol * 1e-3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Recorded,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub anchor: String,
    pub verdict: Verdict,
    pub details: String,
    pub values: BTreeMap<String, Value>,
}

#[derive(Debug, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),
}

struct Outcome {
    verdict: Verdict,
    details: String,
    values: BTreeMap<String, Value>,
}

impl Outcome {
    fn check(ok: bool, details: impl Into<String>) -> Self {
        Self { verdict: if ok { Verdict::Pass } else { Verdict::Fail }, details: details.into(), values: BTreeMap::new() }
    }

    fn recorded(details: impl Into<String>) -> Self {
        Self { verdict: Verdict::Recorded, details: details.into(), values: BTreeMap::new() }
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.values.insert(key.to_string(), value.into());
        self
    }
}

type ClaimFn = fn(&SuiteConfig) -> Result<Outcome>;

const CLAIMS: &[(&str, &str, ClaimFn)] = &[
    ("capacity-cluster", "four-qubit cluster: teleports two qubits, carries sixteen messages", capacity_cluster),
    ("capacity-five-qubit", "five-qubit CNOT chain: teleports two qubits, carries thirty-two messages", capacity_five),
    ("capacity-ghz4", "four-qubit GHZ: teleports one qubit, carries eight messages", capacity_ghz4),
    ("capacity-w2", "W2: teleports one qubit across {1,2}|{3}, eight messages from {1,2}", capacity_w2),
    ("diagnostics-entropy", "entropy of Bell and of {5/6, 1/6}", diagnostics_entropy),
    ("diagnostics-gme", "genuine multipartite entanglement of catalog states", diagnostics_gme),
    ("diagnostics-negativity", "negativity of phi+ and GHZ4", diagnostics_negativity),
    ("eq11-chi", "U_chi converts two Bell pairs into the chi state", eq11_chi),
    ("cnot-ghz3", "CNOT(1,3) on phi+ x |0> gives GHZ3", eq13_ghz3),
    ("eq15-w2", "U_W2 converts phi+ x |0> into W2", eq15_w2),
    ("cnot-five-qubit", "CNOT(1,3) then CNOT(3,5) on phi+ phi+ |0>", eq16_five),
    ("cnot-cluster", "CNOT(1,3) on two Bell pairs gives the cluster state", eq9_cluster),
    ("gamma-table", "sixteen two-qubit unitaries: unitary, independent, equal to the lifted Pauli set", gamma_table),
    ("obstruction-soundness", "spectral obstructions flag impossible conversions only", obstruction_soundness),
    ("orthogonal-families", "Pauli-generated orthogonal families of the cluster and five-qubit states", orthogonal_families),
    ("sdc-decoding", "superdense coding decodes every message", sdc_decoding),
    ("sender-invariance", "capacities unchanged by random unitaries on the sender qubits", sender_invariance),
    ("sigma-level2", "lift of the sixteen-member set to 64 three-qubit unitaries", sigma_level2),
    ("sigma-level3", "lift of the 64-member set to 256 four-qubit unitaries", sigma_level3),
    ("teleport-bell", "one-qubit teleportation through phi+", teleport_bell),
    ("teleport-cluster", "two-qubit teleportation through the cluster state", teleport_cluster),
    ("teleport-five-qubit", "two-qubit teleportation through the five-qubit chain, sender {1,3,5}", teleport_five),
    ("tmes-chi", "chi is maximal for teleportation and superdense coding", tmes_chi),
    ("tmes-ghz5", "five-qubit GHZ is not maximal", tmes_ghz5),
    ("tmes-hs", "HS is not maximal", tmes_hs),
    ("tmes-omega", "Omega is maximal", tmes_omega),
];

/// Ids of every claim, sorted.
pub fn claim_ids() -> Vec<&'static str> {
    let mut ids: Vec<&str> = CLAIMS.iter().map(|c| c.0).collect();
    ids.sort_unstable();
    ids
}

/// Run the selected claims (in parallel) and return reports sorted by id.
pub fn run_claim_suite(cfg: &SuiteConfig) -> std::result::Result<Vec<ClaimReport>, SuiteError> {
    let selected: Vec<&(&str, &str, ClaimFn)> = match &cfg.claims {
        None => CLAIMS.iter().collect(),
        Some(ids) => {
            let mut out = Vec::new();
            for id in ids {
                let claim = CLAIMS.iter().find(|c| c.0 == id).ok_or_else(|| SuiteError::UnknownClaim(id.clone()))?;
                if !out.iter().any(|c: &&(&str, &str, ClaimFn)| c.0 == claim.0) {
                    out.push(claim);
                }
            }
            out
        }
    };
    let mut reports: Vec<ClaimReport> = selected
        .par_iter()
        .map(|(id, anchor, f)| {
            let outcome = f(cfg).unwrap_or_else(|e| Outcome::check(false, format!("error: {e}")));
            ClaimReport {
                claim_id: id.to_string(),
                anchor: anchor.to_string(),
                verdict: outcome.verdict,
                details: outcome.details,
                values: outcome.values,
            }
        })
        .collect();
    reports.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    Ok(reports)
}

pub fn suite_passed(reports: &[ClaimReport]) -> bool {
    reports.iter().all(|r| r.verdict != Verdict::Fail)
}

/// Human-readable table.
pub fn render_table(reports: &[ClaimReport]) -> String {
    let width = reports.iter().map(|r| r.claim_id.len()).max().unwrap_or(8).max(8);
    let mut out = format!("{:<width$}  {:<8}  details\n", "claim", "verdict");
    for r in reports {
        let v = match r.verdict {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::Recorded => "recorded",
        };
        out.push_str(&format!("{:<width$}  {:<8}  {}\n", r.claim_id, v, r.details));
    }
    let fails = reports.iter().filter(|r| r.verdict == Verdict::Fail).count();
    out.push_str(&format!("{} claims, {} failed\n", reports.len(), fails));
    out
}

/// Machine-readable report; only `generated_at_unix` varies between runs.
pub fn report_json(cfg: &SuiteConfig, reports: &[ClaimReport], generated_at_unix: u64) -> String {
    let doc = json!({
        "generated_at_unix": generated_at_unix,
        "tol": cfg.tol,
        "seed": cfg.seed,
        "passed": suite_passed(reports),
        "claims": reports,
    });
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

fn st(spec: StateSpec) -> Result<PureState> {
    make_state(&spec)
}

fn cluster() -> Result<PureState> {
    st(StateSpec::CnotChain { pairs: 2, extra_qubit: false })
}

fn five_chain() -> Result<PureState> {
    st(StateSpec::CnotChain { pairs: 2, extra_qubit: true })
}

fn from_terms(n: usize, amp: f64, kets: &[&str]) -> Result<PureState> {
    let terms: Vec<(&str, tmes_core::linalg::C64)> = kets.iter().map(|k| (*k, tmes_core::linalg::c(amp, 0.0))).collect();
    PureState::from_terms(n, &terms)
}

fn cnot() -> Result<tmes_core::LocalOperator> {
    named_operator(NamedOperator::Cnot)
}

fn eq9_cluster(cfg: &SuiteConfig) -> Result<Outcome> {
    let out = st(StateSpec::BellProduct(2))?.apply_local(&cnot()?, &[1, 3])?;
    let expected = from_terms(4, 0.5, &["0000", "0011", "1110", "1101"])?;
    let diff = out.max_abs_diff(&expected);
    Ok(Outcome::check(diff <= cfg.exact_tol(), format!("max amplitude difference {diff:.1e}")).with("max_abs_diff", diff))
}

fn eq13_ghz3(cfg: &SuiteConfig) -> Result<Outcome> {
    let out = st(StateSpec::OddResource(1))?.apply_local(&cnot()?, &[1, 3])?;
    let diff = out.max_abs_diff(&st(StateSpec::Ghz(3))?);
    Ok(Outcome::check(diff <= cfg.exact_tol(), format!("max amplitude difference {diff:.1e}")).with("max_abs_diff", diff))
}

fn eq16_five(cfg: &SuiteConfig) -> Result<Outcome> {
    let u = cnot()?;
    let out = st(StateSpec::OddResource(2))?.apply_local(&u, &[1, 3])?.apply_local(&u, &[3, 5])?;
    let expected = from_terms(5, 0.5, &["00000", "00111", "11101", "11010"])?;
    let diff = out.max_abs_diff(&expected);
    Ok(Outcome::check(diff <= cfg.exact_tol(), format!("max amplitude difference {diff:.1e}")).with("max_abs_diff", diff))
}

fn gamma_table(cfg: &SuiteConfig) -> Result<Outcome> {
    let table: Vec<_> = (1..=16).map(gamma).collect::<Result<_>>()?;
    let worst_unitary = table.iter().map(|g| g.unitarity_defect()).fold(0.0, f64::max);
    let rank = independence_rank(&table)?;
    let lifted = sigma_construct(&OperatorSet::paulis())?;
    let worst_match = lifted.members().iter().zip(&table).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max);
    let ok = worst_unitary <= cfg.exact_tol() && rank == 16 && worst_match == 0.0;
    Ok(Outcome::check(ok, format!("unitarity defect {worst_unitary:.1e}, rank {rank}/16, lift mismatch {worst_match:.1e}"))
        .with("rank", rank)
        .with("unitarity_defect", worst_unitary)
        .with("lift_mismatch", worst_match))
}

fn sigma_level(cfg: &SuiteConfig, base_level: usize) -> Result<Outcome> {
    let start = Instant::now();
    let base = OperatorSet::level(base_level)?;
    let lifted = sigma_construct(&base)?;
    let defect = lifted.max_unitarity_defect();
    let rank = independence_rank(lifted.members())?;
    let fast = start.elapsed().as_secs_f64() < 10.0;
    let full = 1usize << (2 * (base_level + 1));
    let ok = lifted.len() == full && defect <= cfg.tol && fast;
    let mut outcome = if ok {
        Outcome::recorded(format!(
            "{} members, unitarity defect {defect:.1e}, independence rank {rank}/{full}",
            lifted.len()
        ))
    } else {
        Outcome::check(false, format!("{} members, unitarity defect {defect:.1e}, under 10 s: {fast}", lifted.len()))
    };
    outcome = outcome
        .with("members", lifted.len())
        .with("rank", rank)
        .with("full_rank", rank == full)
        .with("runtime_under_10s", fast);
    Ok(outcome)
}

fn sigma_level2(cfg: &SuiteConfig) -> Result<Outcome> {
    sigma_level(cfg, 2)
}

fn sigma_level3(cfg: &SuiteConfig) -> Result<Outcome> {
    sigma_level(cfg, 3)
}

fn capacities(state: &PureState, sender: &[usize]) -> Result<(usize, usize)> {
    let cut = Partition::from_sender(sender, state.num_qubits())?;
    Ok((teleport_capacity(state, &cut)?, sdc_max_messages(state, sender)?))
}

fn capacity_check(state: &PureState, sender: &[usize], teleport: usize, messages: usize) -> Result<Outcome> {
    let (t, m) = capacities(state, sender)?;
    Ok(Outcome::check(
        t == teleport && m == messages,
        format!("sender {sender:?}: teleport {t} (want {teleport}), messages {m} (want {messages})"),
    )
    .with("teleport_capacity", t)
    .with("sdc_messages", m))
}

fn capacity_ghz4(_: &SuiteConfig) -> Result<Outcome> {
    capacity_check(&st(StateSpec::Ghz(4))?, &[1, 3], 1, 8)
}

fn capacity_cluster(_: &SuiteConfig) -> Result<Outcome> {
    capacity_check(&cluster()?, &[1, 3], 2, 16)
}

fn capacity_five(_: &SuiteConfig) -> Result<Outcome> {
    let five = five_chain()?;
    let verdict = is_tmes(&five)?;
    let base = capacity_check(&five, &[1, 3, 5], 2, 32)?;
    let ok = base.verdict == Verdict::Pass && verdict.is_tmes;
    Ok(Outcome { verdict: if ok { Verdict::Pass } else { Verdict::Fail }, ..base }.with("is_tmes", verdict.is_tmes))
}

fn capacity_w2(_: &SuiteConfig) -> Result<Outcome> {
    let w2 = st(StateSpec::W(2))?;
    let cut = Partition::new(&[1, 2], &[3], 3)?;
    let t = teleport_capacity(&w2, &cut)?;
    let mut per_pair = BTreeMap::new();
    for pair in [[1, 2], [1, 3], [2, 3]] {
        per_pair.insert(format!("{},{}", pair[0], pair[1]), sdc_max_messages(&w2, &pair)?);
    }
    let m = per_pair["1,2"];
    Ok(Outcome::check(
        t == 1 && m == 8,
        format!("teleport {t} across {{1,2}}|{{3}}; messages by sender pair {per_pair:?}"),
    )
    .with("teleport_capacity", t)
    .with("sdc_messages_by_sender", json!(per_pair)))
}

fn tmes_check(state: PureState, expected: bool) -> Result<Outcome> {
    let v = is_tmes(&state)?;
    Ok(Outcome::check(
        v.is_tmes == expected,
        format!(
            "is_tmes {} (want {expected}): teleport {}/{}, messages {}/{}",
            v.is_tmes, v.teleport_qubits, v.teleport_threshold, v.sdc_messages, v.sdc_threshold
        ),
    )
    .with("is_tmes", v.is_tmes)
    .with("teleport_qubits", v.teleport_qubits)
    .with("sdc_messages", v.sdc_messages))
}

fn tmes_chi(_: &SuiteConfig) -> Result<Outcome> {
    tmes_check(st(StateSpec::Chi)?, true)
}

fn tmes_omega(_: &SuiteConfig) -> Result<Outcome> {
    tmes_check(st(StateSpec::Omega)?, true)
}

fn tmes_hs(_: &SuiteConfig) -> Result<Outcome> {
    tmes_check(st(StateSpec::Hs)?, false)
}

fn tmes_ghz5(_: &SuiteConfig) -> Result<Outcome> {
    tmes_check(st(StateSpec::Ghz(5))?, false)
}

const PAYLOAD_TRIALS: u64 = 20;

fn teleport_check(cfg: &SuiteConfig, resource: PureState, sender: &[usize], k: usize) -> Result<Outcome> {
    let cut = Partition::from_sender(sender, resource.num_qubits())?;
    let protocol = build_teleport_protocol(&resource, &cut, k)?;
    let uniform = 1.0 / f64::from(1u32 << (2 * k));
    let mut min_fidelity = 1.0f64;
    let mut max_dev = 0.0f64;
    for trial in 0..PAYLOAD_TRIALS {
        let payload = random_payload(k, cfg.seed.wrapping_add(trial))?;
        let run = run_protocol(&protocol, &resource, &payload)?;
        min_fidelity = min_fidelity.min(run.min_fidelity());
        max_dev = max_dev.max(run.max_probability_deviation(uniform)).max((run.total_probability() - 1.0).abs());
    }
    Ok(Outcome::check(
        min_fidelity >= 1.0 - cfg.tol && max_dev <= cfg.tol,
        format!(
            "{PAYLOAD_TRIALS} payloads, {} outcomes: min fidelity 1-{:.1e}, probability deviation {max_dev:.1e}",
            protocol.outcomes.len(),
            1.0 - min_fidelity
        ),
    )
    .with("min_fidelity", min_fidelity)
    .with("max_probability_deviation", max_dev))
}

fn teleport_bell(cfg: &SuiteConfig) -> Result<Outcome> {
    teleport_check(cfg, st(StateSpec::BellProduct(1))?, &[1], 1)
}

fn teleport_cluster(cfg: &SuiteConfig) -> Result<Outcome> {
    teleport_check(cfg, cluster()?, &[1, 3], 2)
}

fn teleport_five(cfg: &SuiteConfig) -> Result<Outcome> {
    teleport_check(cfg, five_chain()?, &[1, 3, 5], 2)
}

fn sdc_decoding(cfg: &SuiteConfig) -> Result<Outcome> {
    let cases: [(&str, PureState, Vec<usize>, usize); 3] = [
        ("bell", st(StateSpec::BellProduct(1))?, vec![1], 4),
        ("cluster", cluster()?, vec![1, 3], 16),
        ("five", five_chain()?, vec![1, 3, 5], 32),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    let mut outcome_values = BTreeMap::new();
    for (name, state, sender, size) in cases {
        let book = build_sdc_codebook(&state, &sender, size)?;
        let mut correct = 0;
        for m in 0..size {
            let d = simulate_sdc(&state, &book, m)?;
            if d.decoded == m && (d.probability - 1.0).abs() <= cfg.tol {
                correct += 1;
            }
        }
        ok &= correct == size;
        parts.push(format!("{name} {correct}/{size}"));
        outcome_values.insert(name.to_string(), json!(correct));
    }
    let mut out = Outcome::check(ok, parts.join(", "));
    out.values = outcome_values;
    Ok(out)
}

const INVARIANCE_TRIALS: u64 = 50;

fn sender_invariance(cfg: &SuiteConfig) -> Result<Outcome> {
    let state = cluster()?;
    let sender = [1, 3];
    let base = capacities(&state, &sender)?;
    let mut rng = seeded(cfg.seed ^ 0x5eed);
    let mut changed = 0;
    for _ in 0..INVARIANCE_TRIALS {
        let u = haar_unitary(2, &mut rng)?;
        let rotated = state.apply_local(&u, &sender)?;
        if capacities(&rotated, &sender)? != base {
            changed += 1;
        }
    }
    Ok(Outcome::check(
        changed == 0,
        format!("{INVARIANCE_TRIALS} random sender unitaries, {changed} changed (teleport {}, messages {})", base.0, base.1),
    )
    .with("trials", INVARIANCE_TRIALS)
    .with("changed", changed))
}

fn obstruction_soundness(cfg: &SuiteConfig) -> Result<Outcome> {
    let pairs = st(StateSpec::BellProduct(2))?;
    let odd1 = st(StateSpec::OddResource(1))?;
    let odd2 = st(StateSpec::OddResource(2))?;
    let w2 = st(StateSpec::W(2))?;
    let mut problems = Vec::new();

    if !conversion_obstruction(&pairs, &st(StateSpec::Ghz(4))?, &[1, 3])?.is_obstructed() {
        problems.push("Bell pairs -> GHZ4 not flagged".to_string());
    }
    for pair in [[1, 2], [1, 3], [2, 3]] {
        if !conversion_obstruction(&odd1, &w2, &pair)?.is_obstructed() {
            problems.push(format!("phi+|0> -> W2 on {pair:?} not flagged"));
        }
    }
    let five = five_chain()?;
    let constructive: [(&PureState, PureState, Vec<usize>); 3] = [
        (&pairs, cluster()?, vec![1, 3]),
        (&odd1, st(StateSpec::Ghz(3))?, vec![1, 3]),
        (&odd2, five.clone(), vec![1, 3, 5]),
    ];
    for (src, tgt, subset) in &constructive {
        if conversion_obstruction(src, tgt, subset)?.is_obstructed() {
            problems.push(format!("constructive conversion on {subset:?} flagged"));
        }
    }
    let u = cnot()?;
    for (src, tgt) in [(&pairs, cluster()?), (&odd1, st(StateSpec::Ghz(3))?)] {
        if find_realizing_application(&u, src, &tgt, cfg.tol)?.exact.is_none() {
            problems.push("CNOT placement not found".to_string());
        }
    }
    // the five-qubit construction uses two CNOTs; realise it as one three-qubit unitary on {1,3,5}
    let two_cnots = u.tensor(&tmes_core::LocalOperator::identity(1));
    let second = tmes_core::LocalOperator::identity(1).tensor(&u);
    let combined = second.compose(&two_cnots)?;
    if find_realizing_application(&combined, &odd2, &five, cfg.tol)?.exact.is_none() {
        problems.push("CNOT(1,3)·CNOT(3,5) placement not found".to_string());
    }
    let ok = problems.is_empty();
    Ok(Outcome::check(ok, if ok { "all impossible conversions flagged; constructive ones realised".into() } else { problems.join("; ") }))
}

fn orthogonal_families(cfg: &SuiteConfig) -> Result<Outcome> {
    let cl = orthogonal_family(&cluster()?, &[1, 3])?;
    let cl_ok = cl.states.len() == 16 && cl.all_orthogonal(cfg.tol);
    let five = orthogonal_family(&five_chain()?, &[1, 3, 5])?;
    let sub = five.max_orthogonal_subfamily(cfg.tol);
    let ok = cl_ok && !five.all_orthogonal(cfg.tol) && sub.len() == 32;
    Ok(Outcome::check(
        ok,
        format!("cluster: 16 orthogonal = {cl_ok}; five-qubit: largest orthogonal subfamily {} of 64", sub.len()),
    )
    .with("five_qubit_subfamily", sub.len()))
}

fn eq11_chi(cfg: &SuiteConfig) -> Result<Outcome> {
    let src = st(StateSpec::BellProduct(2))?;
    let chi = st(StateSpec::Chi)?;
    let u = named_operator(NamedOperator::UChi)?;
    let report = find_realizing_application(&u, &src, &chi, cfg.tol)?;
    let produced = src.apply_local(&u, &[1, 3])?;
    let on_13 = produced.overlap(&chi)?.norm();
    let verdict = is_tmes(&produced)?;
    let placement = match &report.exact {
        Some(t) => format!("exact placement {t:?}"),
        None => format!("no exact placement; best {:?} overlap {:.6}", report.best_targets, report.best_overlap),
    };
    let details = format!("{placement}; overlap on (1,3) {on_13:.6}; state from (1,3) is_tmes {}", verdict.is_tmes);
    let outcome = if verdict.is_tmes { Outcome::recorded(details) } else { Outcome::check(false, details) };
    Ok(outcome
        .with("exact_placement", json!(report.exact))
        .with("best_overlap", report.best_overlap)
        .with("overlap_on_1_3", on_13)
        .with("produced_is_tmes", verdict.is_tmes))
}

fn eq15_w2(cfg: &SuiteConfig) -> Result<Outcome> {
    let src = st(StateSpec::OddResource(1))?;
    let w2 = st(StateSpec::W(2))?;
    let u = named_operator(NamedOperator::UW2)?;
    let report = find_realizing_application(&u, &src, &w2, cfg.tol)?;
    let mut obstructed = Vec::new();
    let mut certificates = Vec::new();
    for pair in [[1, 2], [1, 3], [2, 3]] {
        let ob = conversion_obstruction(&src, &w2, &pair)?;
        if let Some(v) = ob.violated_cuts.first() {
            obstructed.push(pair);
            certificates.push(format!("{pair:?}: cut {:?} {} vs {}", v.side, v.source, v.target));
        }
    }
    let placement = match &report.exact {
        Some(t) => format!("exact placement {t:?}"),
        None => format!("no exact placement; best {:?} overlap {:.6}", report.best_targets, report.best_overlap),
    };
    Ok(Outcome::recorded(format!("{placement}; obstructed on {} of 3 pairs ({})", obstructed.len(), certificates.join("; ")))
        .with("exact_placement", json!(report.exact))
        .with("best_overlap", report.best_overlap)
        .with("obstructed_pairs", json!(obstructed)))
}

fn diagnostics_entropy(cfg: &SuiteConfig) -> Result<Outcome> {
    let bell = st(StateSpec::BellProduct(1))?;
    let e_bell = bell.schmidt_spectrum(&Partition::new(&[1], &[2], 2)?)?.entropy();
    let e_w = SchmidtSpectrum::from_eigenvalues(vec![5.0 / 6.0, 1.0 / 6.0]).entropy();
    let ok = (e_bell - 1.0).abs() <= cfg.tol && (e_w - 0.65).abs() <= 1e-3;
    Ok(Outcome::check(ok, format!("Bell {e_bell:.12}, {{5/6,1/6}} {e_w:.6}"))
        .with("bell", e_bell)
        .with("five_sixths", e_w))
}

fn diagnostics_negativity(cfg: &SuiteConfig) -> Result<Outcome> {
    let n_bell = st(StateSpec::BellProduct(1))?.negativity(&Partition::new(&[1], &[2], 2)?)?;
    let n_ghz = st(StateSpec::Ghz(4))?.negativity(&Partition::new(&[1, 2], &[3, 4], 4)?)?;
    let ok = (n_bell - 0.5).abs() <= cfg.tol && (n_ghz - 0.5).abs() <= cfg.tol;
    Ok(Outcome::check(ok, format!("phi+ {n_bell:.12}, GHZ4 {{1,2}}|{{3,4}} {n_ghz:.12}"))
        .with("phi_plus", n_bell)
        .with("ghz4", n_ghz))
}

fn diagnostics_gme(_: &SuiteConfig) -> Result<Outcome> {
    let c = genuine_multipartite(&cluster()?)?;
    let g = genuine_multipartite(&st(StateSpec::Ghz(3))?)?;
    let x = genuine_multipartite(&st(StateSpec::Chi)?)?;
    let p = genuine_multipartite(&st(StateSpec::BellProduct(2))?)?;
    Ok(Outcome::check(
        c && g && x && !p,
        format!("cluster {c}, GHZ3 {g}, chi {x}, Bell pairs {p}"),
    ))
}
