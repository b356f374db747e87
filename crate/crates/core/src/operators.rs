//! Named unitaries, the sixteen-member two-qubit table and the recursive
//! block construction that lifts a `d`-qubit operator basis to `d+1` qubits.
//!
//! Block notation `[[A, B], [C, D]]` means the first acted-on qubit selects
//! the block row/column, so `[[σ0, 0], [0, σ1]]` is CNOT with the first
//! target as control.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, C64, ONE, ZERO};
use crate::pauli::{i_sigma2, sigma};
use crate::state::{LocalOperator, PureState};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedOperator {
    Sigma(u8),
    Cnot,
    /// Controlled-σ2.
    UY,
    /// Controlled-σ3.
    UZ,
    UChi,
    UW2,
    /// Member `1..=16` of the two-qubit table.
    Gamma(u8),
}

pub fn named_operator(name: NamedOperator) -> Result<LocalOperator> {
    let s = |i: u8| sigma(i).expect("valid Pauli index");
    match name {
        NamedOperator::Sigma(i) => sigma(i),
        NamedOperator::Cnot => Ok(block_diag(&s(0), &s(1))),
        NamedOperator::UY => Ok(block_diag(&s(0), &s(2))),
        NamedOperator::UZ => Ok(block_diag(&s(0), &s(3))),
        NamedOperator::UChi => {
            let m = blocks(&s(3), &s(1), &i_sigma2(), &s(0));
            Ok(m.scaled(c(std::f64::consts::FRAC_1_SQRT_2, 0.0)))
        }
        NamedOperator::UW2 => {
            let h = c(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            LocalOperator::from_rows(&[
                &[ZERO, h, h, ZERO],
                &[ZERO, ZERO, ZERO, ONE],
                &[ONE, ZERO, ZERO, ZERO],
                &[ZERO, h, -h, ZERO],
            ])
        }
        NamedOperator::Gamma(i) => gamma(i),
    }
}

/// The printed table, entry by entry: `(antidiagonal, upper σ, lower σ, lower sign)`.
const GAMMA_TABLE: [(bool, u8, u8, f64); 16] = [
    (false, 0, 1, 1.0),
    (false, 1, 2, 1.0),
    (false, 2, 3, 1.0),
    (false, 3, 0, 1.0),
    (false, 0, 1, -1.0),
    (false, 1, 2, -1.0),
    (false, 2, 3, -1.0),
    (false, 3, 0, -1.0),
    (true, 0, 1, 1.0),
    (true, 1, 2, 1.0),
    (true, 2, 3, 1.0),
    (true, 3, 0, 1.0),
    (true, 0, 1, -1.0),
    (true, 1, 2, -1.0),
    (true, 2, 3, -1.0),
    (true, 3, 0, -1.0),
];

/// `Γ_i`, `i` in `1..=16`.
pub fn gamma(i: u8) -> Result<LocalOperator> {
    if !(1..=16).contains(&i) {
        return Err(Error::InvalidParameter(format!("Γ index {i} not in 1..=16")));
    }
    let (anti, upper, lower, sign) = GAMMA_TABLE[usize::from(i - 1)];
    let up = sigma(upper)?;
    let low = sigma(lower)?.scaled(c(sign, 0.0));
    let zero = LocalOperator::new(CMatrix::zeros(2, 2))?;
    Ok(if anti {
        blocks(&zero, &up, &low, &zero)
    } else {
        blocks(&up, &zero, &zero, &low)
    })
}

/// Assemble `[[a, b], [c, d]]` from equally sized blocks.
pub fn blocks(a: &LocalOperator, b: &LocalOperator, cc: &LocalOperator, d: &LocalOperator) -> LocalOperator {
    let n = a.matrix().nrows();
    let mut m = CMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(a.matrix());
    m.view_mut((0, n), (n, n)).copy_from(b.matrix());
    m.view_mut((n, 0), (n, n)).copy_from(cc.matrix());
    m.view_mut((n, n), (n, n)).copy_from(d.matrix());
    LocalOperator::new(m).expect("square power-of-two block matrix")
}

fn block_diag(a: &LocalOperator, d: &LocalOperator) -> LocalOperator {
    let zero = LocalOperator::new(CMatrix::zeros(a.matrix().nrows(), a.matrix().nrows())).expect("square");
    blocks(a, &zero, &zero, d)
}

impl fmt::Display for NamedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedOperator::Sigma(i) => write!(f, "sigma{i}"),
            NamedOperator::Cnot => write!(f, "cnot"),
            NamedOperator::UY => write!(f, "u_y"),
            NamedOperator::UZ => write!(f, "u_z"),
            NamedOperator::UChi => write!(f, "u_chi"),
            NamedOperator::UW2 => write!(f, "u_w2"),
            NamedOperator::Gamma(i) => write!(f, "gamma{i}"),
        }
    }
}

impl FromStr for NamedOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let indexed = |prefix: &str| -> Option<u8> {
            let rest = s.strip_prefix(prefix)?;
            let rest = rest.trim_start_matches(['(', ':']).trim_end_matches(')');
            rest.parse().ok()
        };
        match s.as_str() {
            "cnot" => return Ok(NamedOperator::Cnot),
            "u_y" => return Ok(NamedOperator::UY),
            "u_z" => return Ok(NamedOperator::UZ),
            "u_chi" => return Ok(NamedOperator::UChi),
            "u_w2" => return Ok(NamedOperator::UW2),
            _ => {}
        }
        if let Some(i) = indexed("sigma").filter(|i| *i <= 3) {
            return Ok(NamedOperator::Sigma(i));
        }
        if let Some(i) = indexed("gamma").filter(|i| (1..=16).contains(i)) {
            return Ok(NamedOperator::Gamma(i));
        }
        Err(Error::Parse(format!("unknown operator {s:?}")))
    }
}

/// `4^d` operators on `d` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSet {
    level: usize,
    members: Vec<LocalOperator>,
}

impl OperatorSet {
    pub fn new(members: Vec<LocalOperator>) -> Result<Self> {
        let level = members
            .first()
            .map(LocalOperator::arity)
            .ok_or_else(|| Error::InvalidParameter("empty operator set".into()))?;
        if let Some(bad) = members.iter().find(|m| m.arity() != level) {
            return Err(Error::ArityMismatch { arity: level, targets: bad.arity() });
        }
        Ok(Self { level, members })
    }

    /// `{σ0, σ1, σ2, σ3}`.
    pub fn paulis() -> Self {
        Self { level: 1, members: (0..4).map(|i| sigma(i).expect("Pauli")).collect() }
    }

    /// Level `d` set obtained from the Pauli set by `d − 1` block lifts.
    pub fn level(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameter("level must be >= 1".into()));
        }
        let mut set = Self::paulis();
        for _ in 1..d {
            set = sigma_construct(&set)?;
        }
        Ok(set)
    }

    pub fn level_index(&self) -> usize {
        self.level
    }

    pub fn members(&self) -> &[LocalOperator] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn max_unitarity_defect(&self) -> f64 {
        self.members.iter().map(LocalOperator::unitarity_defect).fold(0.0, f64::max)
    }
}

/// Lift a level-`d` set `{γ_a}` to `4^{d+1}` operators on `d+1` qubits.
///
/// Output order, `a = 1..=4^d` within each family with `γ_{4^d+1} ≡ γ_1`:
/// `diag(γ_a, γ_{a+1})`, `diag(γ_a, −γ_{a+1})`,
/// `[[0, γ_a], [γ_{a+1}, 0]]`, `[[0, γ_a], [−γ_{a+1}, 0]]`.
pub fn sigma_construct(base: &OperatorSet) -> Result<OperatorSet> {
    let d = base.level;
    let expected = 1usize << (2 * d);
    if base.members.len() != expected {
        return Err(Error::WrongCardinality { expected, found: base.members.len() });
    }
    for m in &base.members {
        let defect = m.unitarity_defect();
        if defect > tol::NORM {
            return Err(Error::NotUnitary(defect));
        }
    }
    let gammas = &base.members;
    let zero = LocalOperator::new(CMatrix::zeros(1 << d, 1 << d))?;
    let minus = c(-1.0, 0.0);
    let mut out = Vec::with_capacity(4 * expected);
    for family in 0..4 {
        for a in 0..expected {
            let upper = &gammas[a];
            let next = &gammas[(a + 1) % expected];
            let lower = if family % 2 == 1 { next.scaled(minus) } else { next.clone() };
            out.push(if family < 2 {
                blocks(upper, &zero, &zero, &lower)
            } else {
                blocks(&zero, upper, &lower, &zero)
            });
        }
    }
    Ok(OperatorSet { level: d + 1, members: out })
}

/// Rank of the stack of row-major flattened matrices, counting singular
/// values above `1e-9 × σ_max`.
pub fn independence_rank(ops: &[LocalOperator]) -> Result<usize> {
    let Some(first) = ops.first() else {
        return Ok(0);
    };
    if let Some(bad) = ops.iter().find(|o| o.arity() != first.arity()) {
        return Err(Error::ArityMismatch { arity: first.arity(), targets: bad.arity() });
    }
    let cols = first.matrix().len();
    let mut stacked = CMatrix::zeros(ops.len(), cols);
    for (r, op) in ops.iter().enumerate() {
        let flat = op.flattened();
        let norm = flat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for (col, z) in flat.into_iter().enumerate() {
            stacked[(r, col)] = if norm > 0.0 { z / norm } else { z };
        }
    }
    Ok(linalg::numerical_rank(&stacked, 1e-9))
}

/// Result of searching for a qubit placement that maps `source` onto `target`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizationReport {
    /// First placement (lexicographic) with `|⟨target|U source⟩| = 1` within tolerance.
    pub exact: Option<Vec<usize>>,
    pub best_targets: Vec<usize>,
    pub best_overlap: f64,
    /// `1 − best_overlap`.
    pub residual: f64,
    pub placements_tried: usize,
}

/// Try `op` on every ordered tuple of distinct qubits.
pub fn find_realizing_application(
    op: &LocalOperator,
    source: &PureState,
    target: &PureState,
    tol: f64,
) -> Result<RealizationReport> {
    let n = source.num_qubits();
    if target.num_qubits() != n {
        return Err(Error::DimensionMismatch { expected: n, found: target.num_qubits() });
    }
    if op.arity() > n {
        return Err(Error::ArityMismatch { arity: op.arity(), targets: n });
    }
    let mut report = RealizationReport {
        exact: None,
        best_targets: Vec::new(),
        best_overlap: -1.0,
        residual: f64::INFINITY,
        placements_tried: 0,
    };
    for targets in ordered_tuples(n, op.arity()) {
        report.placements_tried += 1;
        let amps = crate::state::apply_matrix(source.amplitudes(), n, op.matrix(), &targets)?;
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let ov: C64 = target.amplitudes().iter().zip(&amps).map(|(t, a)| t.conj() * a).sum();
        let fid = if norm > 0.0 { ov.norm() / norm } else { 0.0 };
        if fid > report.best_overlap + 1e-15 {
            report.best_overlap = fid;
            report.best_targets = targets.clone();
        }
        if report.exact.is_none() && (fid - 1.0).abs() <= tol && (norm - 1.0).abs() <= tol {
            report.exact = Some(targets);
            break;
        }
    }
    report.residual = (1.0 - report.best_overlap).max(0.0);
    Ok(report)
}

/// Ordered tuples of `k` distinct labels from `1..=n`, lexicographic.
pub fn ordered_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for q in 1..=n {
            if !cur.contains(&q) {
                cur.push(q);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_state, StateSpec};

    #[test]
    fn cnot_truth_table() {
        let cnot = named_operator(NamedOperator::Cnot).unwrap();
        for (input, output) in [("00", "00"), ("01", "01"), ("10", "11"), ("11", "10")] {
            let s = PureState::basis(input).unwrap().apply_local(&cnot, &[1, 2]).unwrap();
            assert_eq!(s, PureState::basis(output).unwrap());
        }
        assert_eq!(gamma(1).unwrap(), cnot);
    }

    #[test]
    fn named_operators_unitary() {
        let mut names = vec![
            NamedOperator::Cnot,
            NamedOperator::UY,
            NamedOperator::UZ,
            NamedOperator::UChi,
            NamedOperator::UW2,
        ];
        names.extend((0..4).map(NamedOperator::Sigma));
        names.extend((1..=16).map(NamedOperator::Gamma));
        for name in names {
            let op = named_operator(name).unwrap();
            assert!(op.is_unitary(1e-12), "{name}");
            assert_eq!(name.to_string().parse::<NamedOperator>().unwrap(), name);
        }
    }

    #[test]
    fn u_chi_blocks() {
        let u = named_operator(NamedOperator::UChi).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [
            [h, 0.0, 0.0, h],
            [0.0, -h, h, 0.0],
            [0.0, h, h, 0.0],
            [-h, 0.0, 0.0, h],
        ];
        for (r, row) in expected.iter().enumerate() {
            for (col, v) in row.iter().enumerate() {
                assert!((u.matrix()[(r, col)] - c(*v, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn bad_names() {
        assert!("gamma17".parse::<NamedOperator>().is_err());
        assert!("sigma4".parse::<NamedOperator>().is_err());
        assert!("swap".parse::<NamedOperator>().is_err());
        assert!(gamma(0).is_err());
        assert_eq!("gamma(3)".parse::<NamedOperator>().unwrap(), NamedOperator::Gamma(3));
    }

    #[test]
    fn sigma_from_paulis_is_gamma_table() {
        let set = sigma_construct(&OperatorSet::paulis()).unwrap();
        assert_eq!(set.len(), 16);
        for (i, m) in set.members().iter().enumerate() {
            assert_eq!(m, &gamma(i as u8 + 1).unwrap(), "Γ{}", i + 1);
        }
    }

    #[test]
    fn sigma_construct_rejects_bad_bases() {
        let three = OperatorSet::new(OperatorSet::paulis().members()[..3].to_vec()).unwrap();
        assert!(matches!(sigma_construct(&three), Err(Error::WrongCardinality { expected: 4, found: 3 })));
        let mut members = OperatorSet::paulis().members().to_vec();
        members[2] = members[2].scaled(c(2.0, 0.0));
        let bad = OperatorSet::new(members).unwrap();
        assert!(matches!(sigma_construct(&bad), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn ranks() {
        let paulis = OperatorSet::paulis();
        assert_eq!(independence_rank(paulis.members()).unwrap(), 4);
        let gammas: Vec<_> = (1..=16).map(|i| gamma(i).unwrap()).collect();
        assert_eq!(independence_rank(&gammas).unwrap(), 16);
        let dup = vec![sigma(0).unwrap(), sigma(0).unwrap()];
        assert_eq!(independence_rank(&dup).unwrap(), 1);
        assert!(independence_rank(&[sigma(0).unwrap(), gamma(1).unwrap()]).is_err());
    }

    #[test]
    fn level_three_set() {
        let set = OperatorSet::level(3).unwrap();
        assert_eq!(set.len(), 64);
        assert_eq!(set.level_index(), 3);
        assert!(set.max_unitarity_defect() < 1e-12);
        assert_eq!(independence_rank(set.members()).unwrap(), 64);
    }

    #[test]
    fn realizing_cluster_and_ghz() {
        let cnot = named_operator(NamedOperator::Cnot).unwrap();
        let source = make_state(&StateSpec::BellProduct(2)).unwrap();
        let target = make_state(&StateSpec::CnotChain { pairs: 2, extra_qubit: false }).unwrap();
        let r = find_realizing_application(&cnot, &source, &target, 1e-9).unwrap();
        assert_eq!(r.exact, Some(vec![1, 3]));
        let source = make_state(&StateSpec::OddResource(1)).unwrap();
        let ghz = make_state(&StateSpec::Ghz(3)).unwrap();
        let r = find_realizing_application(&cnot, &source, &ghz, 1e-9).unwrap();
        assert_eq!(r.exact, Some(vec![1, 3]));
        assert!(r.residual.abs() < 1e-9);
    }

    #[test]
    fn tuple_order() {
        assert_eq!(ordered_tuples(3, 2), vec![vec![1, 2], vec![1, 3], vec![2, 1], vec![2, 3], vec![3, 1], vec![3, 2]]);
    }
}
