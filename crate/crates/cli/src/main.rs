use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};

use tmes_cli::suite::{self, SuiteConfig};
use tmes_core::capacity::{
    build_sdc_codebook, build_teleport_protocol, is_tmes, random_payload, run_protocol, sdc_analysis, simulate_sdc,
    teleport_capacity,
};
use tmes_core::io::Document;
use tmes_core::lu::conversion_obstruction;
use tmes_core::operators::{named_operator, NamedOperator, OperatorSet};
use tmes_core::partition::parse_qubit_list;
use tmes_core::{make_state, Partition, PureState, StateSpec};

#[derive(Parser)]
#[command(name = "tmes", version, about = "Teleportation and superdense-coding capacities of multi-qubit states")]
struct Cli {
    /// Numerical tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Seed for random payloads and unitaries.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or inspect state documents.
    State {
        #[command(subcommand)]
        action: StateAction,
    },
    /// Generate operator documents.
    Op {
        #[command(subcommand)]
        action: OpAction,
    },
    /// Teleportation capacity and superdense-coding message count for one cut.
    Capacity {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        sender: String,
    },
    /// Run the teleportation protocol on a seeded random payload.
    Teleport {
        #[arg(long)]
        resource: PathBuf,
        #[arg(long)]
        sender: String,
        #[arg(long = "payload-qubits")]
        payload_qubits: usize,
    },
    /// Build a superdense-coding codebook and decode every message.
    Sdc {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        sender: String,
    },
    /// Decide whether a state is maximal for teleportation and superdense coding.
    Tmes {
        #[arg(long)]
        state: PathBuf,
    },
    /// Look for spectral obstructions to converting source into target with a unitary on a subset.
    Obstruct {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        subset: String,
    },
    /// Run the claim suite.
    Verify {
        /// Comma-separated claim ids; all claims when omitted.
        #[arg(long, value_delimiter = ',')]
        claims: Option<Vec<String>>,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// List claim ids and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Subcommand)]
enum StateAction {
    /// Build a catalog state, e.g. `ghz:4`, `chi`, `chain:2`, `0101`.
    Build {
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a state document as a ket listing with its cut spectra.
    Show { file: PathBuf },
}

#[derive(Subcommand)]
enum OpAction {
    /// Operator set at level d (4^d members on d qubits).
    Gen {
        #[arg(long)]
        level: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A named operator, e.g. `cnot`, `u_chi`, `gamma3`.
    Named {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
    /// Output already printed; exit non-zero.
    Failed,
}

impl From<tmes_core::Error> for Failure {
    fn from(e: tmes_core::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Failed) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::State { action: StateAction::Build { spec, out } } => {
            let spec: StateSpec = spec.parse().map_err(|e: tmes_core::Error| Failure::Usage(e.to_string()))?;
            let state = make_state(&spec)?;
            emit(&Document::from_state(&state).to_json(), out.as_deref())
        }
        Command::State { action: StateAction::Show { file } } => show_state(&load_state(&file)?),
        Command::Op { action: OpAction::Gen { level, out } } => {
            let set = OperatorSet::level(level).map_err(|e| Failure::Usage(e.to_string()))?;
            emit(&Document::from_operator_set(&set).to_json(), out.as_deref())
        }
        Command::Op { action: OpAction::Named { name, out } } => {
            let name: NamedOperator = name.parse().map_err(|e: tmes_core::Error| Failure::Usage(e.to_string()))?;
            emit(&Document::from_operator(&named_operator(name)?).to_json(), out.as_deref())
        }
        Command::Capacity { state, sender } => {
            let state = load_state(&state)?;
            let cut = partition(&sender, state.num_qubits())?;
            let spectrum = state.schmidt_spectrum(&cut)?;
            let t = teleport_capacity(&state, &cut)?;
            let sdc = sdc_analysis(&state, cut.sender())?;
            println!("cut            {cut}");
            println!("spectrum       {spectrum}");
            println!("entropy        {:.6} bits", spectrum.entropy());
            println!("teleport       {t} qubit(s)");
            println!("sdc messages   {} (upper bound {})", sdc.max_messages, sdc.upper_bound);
            Ok(())
        }
        Command::Teleport { resource, sender, payload_qubits } => {
            let resource = load_state(&resource)?;
            let cut = partition(&sender, resource.num_qubits())?;
            let protocol = build_teleport_protocol(&resource, &cut, payload_qubits)?;
            let payload = random_payload(payload_qubits, cli.seed)?;
            let run = run_protocol(&protocol, &resource, &payload)?;
            println!("cut {cut}, {payload_qubits} payload qubit(s), seed {}", cli.seed);
            println!("{:<10} {:>12} {:>16}", "outcome", "probability", "fidelity");
            for o in &run.outcomes {
                let f = o.fidelity.map_or("-".to_string(), |f| format!("{f:.12}"));
                let label: String = o.label.iter().map(|p| char::from(b'0' + p)).collect();
                println!("{:<10} {:>12.6} {:>16}", label, o.probability, f);
            }
            let min = run.min_fidelity();
            println!("total probability {:.12}, min fidelity {min:.12}", run.total_probability());
            if min < 1.0 - cli.tol {
                return Err(Failure::Failed);
            }
            Ok(())
        }
        Command::Sdc { state, sender } => {
            let state = load_state(&state)?;
            let sender = qubits(&sender)?;
            let analysis = sdc_analysis(&state, &sender)?;
            let book = build_sdc_codebook(&state, &sender, analysis.max_messages)?;
            let mut correct = 0;
            for m in 0..book.len() {
                let d = simulate_sdc(&state, &book, m)?;
                if d.decoded == m && (d.probability - 1.0).abs() <= cli.tol {
                    correct += 1;
                }
            }
            println!("sender {:?}: {} messages ({:.3} bits), decoded {correct}/{}", sender, book.len(), (book.len() as f64).log2(), book.len());
            println!("max cross overlap {:.1e}", book.max_cross_overlap());
            if correct != book.len() {
                return Err(Failure::Failed);
            }
            Ok(())
        }
        Command::Tmes { state } => {
            let v = is_tmes(&load_state(&state)?)?;
            println!("is_tmes        {}", v.is_tmes);
            println!("teleport       {} (threshold {})", v.teleport_qubits, v.teleport_threshold);
            println!("sdc messages   {} (threshold {})", v.sdc_messages, v.sdc_threshold);
            if let Some(p) = &v.witnessing_partition {
                println!("teleport cut   {p}");
            }
            if let Some(s) = &v.sdc_sender {
                println!("sdc sender     {s:?}");
            }
            Ok(())
        }
        Command::Obstruct { source, target, subset } => {
            let source = load_state(&source)?;
            let target = load_state(&target)?;
            let subset = qubits(&subset)?;
            let report = conversion_obstruction(&source, &target, &subset)?;
            println!("acting subset {:?}, {} cut(s) checked", report.acting_subset, report.cuts_checked);
            if report.is_obstructed() {
                for v in &report.violated_cuts {
                    println!("obstructed at {:?}: {} vs {}", v.side, v.source, v.target);
                }
            } else {
                println!("no obstruction found");
            }
            Ok(())
        }
        Command::Verify { claims, report, list } => {
            if list {
                for id in suite::claim_ids() {
                    println!("{id}");
                }
                return Ok(());
            }
            let cfg = SuiteConfig { tol: cli.tol, seed: cli.seed, claims };
            let reports = suite::run_claim_suite(&cfg).map_err(|e| Failure::Usage(e.to_string()))?;
            print!("{}", suite::render_table(&reports));
            if let Some(path) = report {
                let now = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
                fs::write(&path, suite::report_json(&cfg, &reports, now))
                    .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
            }
            if suite::suite_passed(&reports) {
                Ok(())
            } else {
                Err(Failure::Failed)
            }
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Outcome {
    match out {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load_state(path: &Path) -> Result<PureState, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    Document::parse(&text)
        .and_then(Document::into_state)
        .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn qubits(text: &str) -> Result<Vec<usize>, Failure> {
    parse_qubit_list(text).map_err(|e| Failure::Usage(e.to_string()))
}

fn partition(sender: &str, n: usize) -> Result<Partition, Failure> {
    Partition::from_sender(&qubits(sender)?, n).map_err(|e| Failure::Usage(e.to_string()))
}

fn show_state(state: &PureState) -> Outcome {
    println!("{} qubit(s)", state.num_qubits());
    println!("{state}");
    if state.num_qubits() >= 2 {
        for cut in tmes_core::lu::canonical_cuts(state.num_qubits())? {
            println!("{:<16} {}", format!("{:?}", cut.sender()), state.schmidt_spectrum(&cut)?);
        }
    }
    Ok(())
}
