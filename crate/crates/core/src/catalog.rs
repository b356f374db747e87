//! Named resource states.
//!
//! Every constructor reproduces the printed ket expansion term by term; the
//! only floating-point inputs are `1/√2`, `1/√6`, `√n` and the cube root of
//! unity `ω = e^{2πi/3}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{c, C64};
use crate::operators::{named_operator, NamedOperator};
use crate::state::{PureState, MAX_QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

/// Description of a catalog state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StateSpec {
    Bell(BellKind),
    /// `(|0…0⟩ + |1…1⟩)/√2` on `n` qubits.
    Ghz(usize),
    /// Four-qubit cluster-type state `½(|0000⟩+|0110⟩+|1001⟩−|1111⟩)`.
    Omega,
    Chi,
    /// Higuchi–Sudbery state with phases `ω`, `ω²`.
    Hs,
    /// Three-qubit W-class member `(|100⟩+√n|010⟩+√(n+1)|001⟩)/√(2+2n)`.
    W(u32),
    /// `|φ⁺⟩^{⊗d}`, pairs on qubits `(2k−1, 2k)`.
    BellProduct(usize),
    /// `|φ⁺⟩^{⊗d} ⊗ |0⟩`.
    OddResource(usize),
    /// CNOTs on `(1,3), (3,5), …` applied in order to `|φ⁺⟩^{⊗d}`, or to
    /// `|φ⁺⟩^{⊗d}|0⟩` when `extra_qubit` is set (then the chain reaches qubit `2d+1`).
    CnotChain { pairs: usize, extra_qubit: bool },
    Basis(String),
}

pub fn omega() -> C64 {
    let angle = 2.0 * std::f64::consts::PI / 3.0;
    c(angle.cos(), angle.sin())
}

pub fn make_state(spec: &StateSpec) -> Result<PureState> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let r = |x: f64| c(x, 0.0);
    match spec {
        StateSpec::Bell(kind) => {
            let terms: [(&str, C64); 2] = match kind {
                BellKind::PhiPlus => [("00", r(h)), ("11", r(h))],
                BellKind::PhiMinus => [("00", r(h)), ("11", r(-h))],
                BellKind::PsiPlus => [("01", r(h)), ("10", r(h))],
                BellKind::PsiMinus => [("01", r(h)), ("10", r(-h))],
            };
            exact(2, &terms)
        }
        StateSpec::Ghz(n) => {
            let n = *n;
            if n == 0 || n > MAX_QUBITS {
                return Err(Error::InvalidParameter(format!("ghz qubit count {n} out of range")));
            }
            let zeros = "0".repeat(n);
            let ones = "1".repeat(n);
            exact(n, &[(&zeros, r(h)), (&ones, r(h))])
        }
        StateSpec::Omega => exact(
            4,
            &[("0000", r(0.5)), ("0110", r(0.5)), ("1001", r(0.5)), ("1111", r(-0.5))],
        ),
        StateSpec::Chi => {
            let a = 1.0 / (2.0 * 2f64.sqrt());
            exact(
                4,
                &[
                    ("0000", r(a)),
                    ("0011", r(-a)),
                    ("0101", r(-a)),
                    ("0110", r(a)),
                    ("1001", r(a)),
                    ("1010", r(a)),
                    ("1100", r(a)),
                    ("1111", r(a)),
                ],
            )
        }
        StateSpec::Hs => {
            let a = 1.0 / 6f64.sqrt();
            let w = omega() * a;
            let w2 = omega() * omega() * a;
            exact(
                4,
                &[
                    ("0011", r(a)),
                    ("1100", r(a)),
                    ("1010", w),
                    ("0101", w),
                    ("1001", w2),
                    ("0110", w2),
                ],
            )
        }
        StateSpec::W(n) => {
            if *n == 0 {
                return Err(Error::InvalidParameter("W-class parameter must be >= 1".into()));
            }
            let n = f64::from(*n);
            let norm = 1.0 / (2.0 + 2.0 * n).sqrt();
            exact(
                3,
                &[("100", r(norm)), ("010", r(n.sqrt() * norm)), ("001", r((n + 1.0).sqrt() * norm))],
            )
        }
        StateSpec::BellProduct(d) => bell_product(*d),
        StateSpec::OddResource(d) => bell_product(*d)?.tensor(&PureState::basis("0")?),
        StateSpec::CnotChain { pairs, extra_qubit } => {
            let mut state = if *extra_qubit {
                make_state(&StateSpec::OddResource(*pairs))?
            } else {
                bell_product(*pairs)?
            };
            let cnot = named_operator(NamedOperator::Cnot)?;
            let last = state.num_qubits() - usize::from(!*extra_qubit);
            let mut control = 1;
            while control + 2 <= last {
                state = state.apply_local(&cnot, &[control, control + 2])?;
                control += 2;
            }
            Ok(state)
        }
        StateSpec::Basis(bits) => PureState::basis(bits),
    }
}

fn bell_product(d: usize) -> Result<PureState> {
    if d == 0 || 2 * d > MAX_QUBITS {
        return Err(Error::InvalidParameter(format!("Bell pair count {d} out of range")));
    }
    let pair = make_state(&StateSpec::Bell(BellKind::PhiPlus))?;
    let mut state = pair.clone();
    for _ in 1..d {
        state = state.tensor(&pair)?;
    }
    Ok(state)
}

/// Place amplitudes exactly as listed; the listed terms must already be normalized.
fn exact(num_qubits: usize, terms: &[(&str, C64)]) -> Result<PureState> {
    let mut amps = vec![C64::new(0.0, 0.0); 1 << num_qubits];
    for (bits, amp) in terms {
        let idx = usize::from_str_radix(bits, 2).map_err(|e| Error::Parse(e.to_string()))?;
        amps[idx] = *amp;
    }
    PureState::new(amps)
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Bell(BellKind::PhiPlus) => write!(f, "phi+"),
            StateSpec::Bell(BellKind::PhiMinus) => write!(f, "phi-"),
            StateSpec::Bell(BellKind::PsiPlus) => write!(f, "psi+"),
            StateSpec::Bell(BellKind::PsiMinus) => write!(f, "psi-"),
            StateSpec::Ghz(n) => write!(f, "ghz:{n}"),
            StateSpec::Omega => write!(f, "omega"),
            StateSpec::Chi => write!(f, "chi"),
            StateSpec::Hs => write!(f, "hs"),
            StateSpec::W(n) => write!(f, "w:{n}"),
            StateSpec::BellProduct(d) => write!(f, "bell-product:{d}"),
            StateSpec::OddResource(d) => write!(f, "odd-resource:{d}"),
            StateSpec::CnotChain { pairs, extra_qubit: false } => write!(f, "chain:{pairs}"),
            StateSpec::CnotChain { pairs, extra_qubit: true } => write!(f, "chain-odd:{pairs}"),
            StateSpec::Basis(bits) => write!(f, "basis:{bits}"),
        }
    }
}

impl FromStr for StateSpec {
    type Err = Error;

    /// Accepts the forms produced by `Display`, plus `bell:<kind>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let int = |a: Option<&str>| -> Result<usize> {
            a.ok_or_else(|| Error::Parse(format!("{head} needs a numeric argument")))?
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("{head}: {e}")))
        };
        let bell = |k: &str| match k {
            "phi+" => Ok(BellKind::PhiPlus),
            "phi-" => Ok(BellKind::PhiMinus),
            "psi+" => Ok(BellKind::PsiPlus),
            "psi-" => Ok(BellKind::PsiMinus),
            other => Err(Error::Parse(format!("unknown Bell state {other:?}"))),
        };
        let no_arg = |spec: StateSpec| match arg {
            None => Ok(spec),
            Some(_) => Err(Error::Parse(format!("{head} takes no argument"))),
        };
        match head {
            "phi+" | "phi-" | "psi+" | "psi-" => no_arg(StateSpec::Bell(bell(head)?)),
            "bell" => Ok(StateSpec::Bell(bell(arg.unwrap_or(""))?)),
            "ghz" => Ok(StateSpec::Ghz(int(arg)?)),
            "omega" => no_arg(StateSpec::Omega),
            "chi" => no_arg(StateSpec::Chi),
            "hs" => no_arg(StateSpec::Hs),
            "w" => {
                let n = u32::try_from(int(arg)?).map_err(|e| Error::Parse(e.to_string()))?;
                Ok(StateSpec::W(n))
            }
            "bell-product" => Ok(StateSpec::BellProduct(int(arg)?)),
            "odd-resource" => Ok(StateSpec::OddResource(int(arg)?)),
            "chain" => Ok(StateSpec::CnotChain { pairs: int(arg)?, extra_qubit: false }),
            "chain-odd" => Ok(StateSpec::CnotChain { pairs: int(arg)?, extra_qubit: true }),
            "basis" => {
                let bits = arg.unwrap_or("");
                validate_bits(bits)?;
                Ok(StateSpec::Basis(bits.to_string()))
            }
            bits if arg.is_none() && validate_bits(bits).is_ok() => Ok(StateSpec::Basis(bits.to_string())),
            other => Err(Error::Parse(format!("unknown state kind {other:?}"))),
        }
    }
}

fn validate_bits(bits: &str) -> Result<()> {
    if bits.is_empty() || bits.len() > MAX_QUBITS || !bits.chars().all(|c| c == '0' || c == '1') {
        return Err(Error::Parse(format!("invalid bit string {bits:?}")));
    }
    Ok(())
}
