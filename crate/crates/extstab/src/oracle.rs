//! Brute-force dense reference simulator.
//!
//! Runs a [`Circuit`] on literal state vectors (or density matrices) with
//! exact gate matrices and projector arithmetic. This is the ground truth the
//! decomposition simulator is differentially tested against; it is slower but
//! strictly more general (it accepts any number of single-qubit rotations).
//!
//! Qubit 0 sits on the least significant index bit. State vectors are capped
//! at 12 qubits and density matrices at 9 by default; the
//! `EXTSTAB_DENSE_LIMIT` environment variable overrides both caps.

use crate::circuit::{Circuit, Instruction};
use crate::dense::{self, CMatrix, CVector, C_ONE, C_ZERO};
use crate::error::{Error, Result};
use crate::extended::{OutcomeRecord, PROB_EPS};
use crate::pauli::{CliffordGate, InitBasis, PhasedPauli};
use num_complex::Complex64;
use rand::prelude::*;
use std::collections::HashMap;

const DEFAULT_VECTOR_LIMIT: usize = 12;
const DEFAULT_DENSITY_LIMIT: usize = 9;

fn env_limit() -> Option<usize> {
    std::env::var("EXTSTAB_DENSE_LIMIT")
        .ok()
        .and_then(|v| v.parse().ok())
}

/// Largest qubit count simulated densely as a state vector.
pub fn vector_limit() -> usize {
    env_limit().unwrap_or(DEFAULT_VECTOR_LIMIT)
}

/// Largest qubit count simulated densely as a density matrix.
pub fn density_limit() -> usize {
    env_limit().unwrap_or(DEFAULT_DENSITY_LIMIT)
}

/// A dense quantum state in either representation.
#[derive(Clone, Debug)]
pub enum DenseState {
    Vector(CVector),
    Density(CMatrix),
}

impl DenseState {
    pub fn from_inits(inits: &[InitBasis], density: bool) -> Result<Self> {
        let n = inits.len();
        let limit = if density { density_limit() } else { vector_limit() };
        if n > limit {
            return Err(Error::DenseLimit { n, limit });
        }
        let dim = 1usize << n;
        let mut v = CVector::basis(dim, 0);
        let inv_sqrt2 = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        for (q, init) in inits.iter().enumerate() {
            match init {
                InitBasis::Zero => {}
                InitBasis::Plus => {
                    dense::apply_1q(&mut v, &dense::hadamard_matrix(), q);
                }
                InitBasis::Y => {
                    // Prepares (|0⟩ + i|1⟩)/√2 from |0⟩.
                    let i_amp = inv_sqrt2 * Complex64::new(0.0, 1.0);
                    let u = [[inv_sqrt2, i_amp], [i_amp, inv_sqrt2]];
                    dense::apply_1q(&mut v, &u, q);
                }
            }
        }
        Ok(if density {
            DenseState::Density(v.outer())
        } else {
            DenseState::Vector(v)
        })
    }

    pub fn num_qubits(&self) -> usize {
        let dim = match self {
            DenseState::Vector(v) => v.dim(),
            DenseState::Density(m) => m.dim(),
        };
        dim.trailing_zeros() as usize
    }

    pub fn vector(&self) -> Option<&CVector> {
        match self {
            DenseState::Vector(v) => Some(v),
            DenseState::Density(_) => None,
        }
    }

    /// The density matrix of the state, in either representation.
    pub fn density(&self) -> CMatrix {
        match self {
            DenseState::Vector(v) => v.outer(),
            DenseState::Density(m) => m.clone(),
        }
    }

    pub fn apply_unitary_1q(&mut self, u: &[[Complex64; 2]; 2], qubit: usize) {
        match self {
            DenseState::Vector(v) => dense::apply_1q(v, u, qubit),
            DenseState::Density(m) => dense::apply_1q_density(m, u, qubit),
        }
    }

    pub fn apply_gate(&mut self, gate: CliffordGate, targets: &[usize]) -> Result<()> {
        gate.check_targets(self.num_qubits(), targets)?;
        let i = Complex64::new(0.0, 1.0);
        match gate {
            CliffordGate::H => self.apply_unitary_1q(&dense::hadamard_matrix(), targets[0]),
            CliffordGate::S => {
                self.apply_unitary_1q(&[[C_ONE, C_ZERO], [C_ZERO, i]], targets[0])
            }
            CliffordGate::Sdg => {
                self.apply_unitary_1q(&[[C_ONE, C_ZERO], [C_ZERO, -i]], targets[0])
            }
            CliffordGate::X => {
                self.apply_unitary_1q(&[[C_ZERO, C_ONE], [C_ONE, C_ZERO]], targets[0])
            }
            CliffordGate::Y => self.apply_unitary_1q(&[[C_ZERO, -i], [i, C_ZERO]], targets[0]),
            CliffordGate::Z => {
                self.apply_unitary_1q(&[[C_ONE, C_ZERO], [C_ZERO, -C_ONE]], targets[0])
            }
            CliffordGate::Cnot => self.apply_permutation(|index| {
                if index >> targets[0] & 1 == 1 {
                    index ^ (1 << targets[1])
                } else {
                    index
                }
            }),
            CliffordGate::Swap => self.apply_permutation(|index| {
                let (a, b) = (targets[0], targets[1]);
                let (ba, bb) = (index >> a & 1, index >> b & 1);
                (index & !(1 << a) & !(1 << b)) | (bb << a) | (ba << b)
            }),
            CliffordGate::Cz => {
                let (a, b) = (targets[0], targets[1]);
                self.apply_diagonal(|index| {
                    if index >> a & 1 == 1 && index >> b & 1 == 1 {
                        -C_ONE
                    } else {
                        C_ONE
                    }
                });
            }
        }
        Ok(())
    }

    fn apply_permutation(&mut self, f: impl Fn(usize) -> usize) {
        match self {
            DenseState::Vector(v) => {
                let mut out = CVector::zeros(v.dim());
                for (index, amp) in v.data.iter().enumerate() {
                    out.data[f(index)] = *amp;
                }
                *v = out;
            }
            DenseState::Density(m) => {
                let dim = m.dim();
                let mut out = CMatrix::zeros(dim);
                for r in 0..dim {
                    for c in 0..dim {
                        out.set(f(r), f(c), m.get(r, c));
                    }
                }
                *m = out;
            }
        }
    }

    fn apply_diagonal(&mut self, f: impl Fn(usize) -> Complex64) {
        match self {
            DenseState::Vector(v) => {
                for (index, amp) in v.data.iter_mut().enumerate() {
                    *amp *= f(index);
                }
            }
            DenseState::Density(m) => {
                let dim = m.dim();
                for r in 0..dim {
                    for c in 0..dim {
                        let v = m.get(r, c) * f(r) * f(c).conj();
                        m.set(r, c, v);
                    }
                }
            }
        }
    }

    pub fn apply_rz(&mut self, theta: f64, qubit: usize) {
        self.apply_unitary_1q(&dense::rz_matrix(theta), qubit);
    }

    pub fn apply_pauli(&mut self, p: &PhasedPauli) {
        match self {
            DenseState::Vector(v) => *v = v.apply_pauli(p),
            DenseState::Density(m) => {
                m.pauli_mul_left(p);
                m.pauli_mul_right(&p.adjoint());
            }
        }
    }

    /// Project onto the ±1 eigenspace of `q` and renormalize; returns the
    /// outcome probability.
    pub fn project(&mut self, q: &PhasedPauli, bit: bool) -> Result<f64> {
        if !q.is_hermitian() {
            return Err(Error::NonHermitian(q.phase_exp()));
        }
        let sign = if bit { -C_ONE } else { C_ONE };
        let half = Complex64::new(0.5, 0.0);
        match self {
            DenseState::Vector(v) => {
                let mut proj = v.apply_pauli(q);
                proj.scale(sign);
                proj.add_scaled(v, C_ONE);
                proj.scale(half);
                let prob = proj.norm_sqr();
                if prob > PROB_EPS {
                    proj.normalize();
                }
                *v = proj;
                Ok(prob)
            }
            DenseState::Density(m) => {
                // (I ± Q)/2 · ρ · (I ± Q)/2
                let mut left = m.clone();
                left.pauli_mul_left(q);
                left.scale(sign);
                left.add_scaled(m, C_ONE);
                left.scale(half);
                let mut both = left.clone();
                both.pauli_mul_right(q);
                both.scale(sign);
                both.add_scaled(&left, C_ONE);
                both.scale(half);
                let prob = both.trace().re;
                if prob > PROB_EPS {
                    both.scale(Complex64::new(1.0 / prob, 0.0));
                }
                *m = both;
                Ok(prob.max(0.0))
            }
        }
    }

    /// Debug dump of the nonzero amplitudes (or diagonal populations in
    /// density mode), one basis state per line.
    pub fn dump_amplitudes(&self) -> String {
        use std::fmt::Write as _;
        let n = self.num_qubits();
        let mut out = String::new();
        match self {
            DenseState::Vector(v) => {
                for (index, amp) in v.data.iter().enumerate() {
                    if amp.norm() > 1e-12 {
                        let _ = writeln!(out, "|{index:0n$b}⟩ {amp}", n = n);
                    }
                }
            }
            DenseState::Density(m) => {
                for index in 0..m.dim() {
                    let p = m.get(index, index).re;
                    if p > 1e-12 {
                        let _ = writeln!(out, "|{index:0n$b}⟩ p={p:.6}", n = n);
                    }
                }
            }
        }
        out
    }

    /// Squared overlap with a normalized pure target vector.
    pub fn fidelity_with_vector(&self, target: &CVector) -> f64 {
        match self {
            DenseState::Vector(v) => target.inner(v).norm_sqr(),
            DenseState::Density(m) => {
                let mut acc = C_ZERO;
                for r in 0..m.dim() {
                    for c in 0..m.dim() {
                        acc += target.data[r].conj() * m.get(r, c) * target.data[c];
                    }
                }
                acc.re
            }
        }
    }
}

/// Execution options shared by the dense and decomposition runners.
#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Branch on every unpinned measurement instead of sampling it.
    pub enumerate: bool,
    /// Honor `postselect=` fields on measurements.
    pub honor_postselect: bool,
    /// Seed for sampled measurements.
    pub seed: u64,
    /// Guard for enumeration blow-up.
    pub max_branches: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            enumerate: true,
            honor_postselect: false,
            seed: 0,
            max_branches: 1 << 16,
        }
    }
}

/// One surviving execution path of the dense run.
#[derive(Clone, Debug)]
pub struct DenseBranch {
    pub state: DenseState,
    /// Joint probability of this path (product of conditionals).
    pub probability: f64,
    /// Product of the post-selected conditionals only.
    pub postselect_probability: f64,
    pub outcomes: Vec<OutcomeRecord>,
}

#[derive(Clone, Debug)]
pub struct DenseRunOutput {
    pub branches: Vec<DenseBranch>,
    /// Total probability mass of surviving paths (1 unless post-selection
    /// rejected some).
    pub accepted_probability: f64,
}

/// Gather per-qubit initializations (default |0⟩).
pub(crate) fn gather_inits(c: &Circuit) -> Vec<InitBasis> {
    let mut inits = vec![InitBasis::Zero; c.n];
    for instr in &c.instructions {
        if let Instruction::Init { qubit, basis } = instr {
            inits[*qubit] = *basis;
        }
    }
    inits
}

/// Map from measurement label to the Pauli errors to apply just before it.
pub(crate) fn gather_errors(c: &Circuit) -> HashMap<String, Vec<PhasedPauli>> {
    let mut map: HashMap<String, Vec<PhasedPauli>> = HashMap::new();
    for instr in &c.instructions {
        if let Instruction::InsertError { pauli, before } = instr {
            map.entry(before.clone()).or_default().push(pauli.clone());
        }
    }
    map
}

pub(crate) fn check_branch_budget(c: &Circuit, opts: &RunOptions) -> Result<()> {
    if !opts.enumerate {
        return Ok(());
    }
    let free = c
        .instructions
        .iter()
        .filter(|i| match i {
            Instruction::Measure { postselect, .. } => {
                !(opts.honor_postselect && postselect.is_some())
            }
            _ => false,
        })
        .count();
    if free >= usize::BITS as usize || (1usize << free) > opts.max_branches {
        return Err(Error::TooManyBranches {
            measurements: free,
            max: opts.max_branches,
        });
    }
    Ok(())
}

/// Run a circuit densely. With `enumerate`, all outcome paths with nonzero
/// probability are explored; otherwise unpinned measurements are sampled
/// with the seeded generator. Post-selected paths that die contribute to
/// `1 − accepted_probability`.
pub fn run_dense(c: &Circuit, opts: &RunOptions, density: bool) -> Result<DenseRunOutput> {
    check_branch_budget(c, opts)?;
    let inits = gather_inits(c);
    let errors = gather_errors(c);
    let initial = DenseState::from_inits(&inits, density)?;
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let mut branches = vec![DenseBranch {
        state: initial,
        probability: 1.0,
        postselect_probability: 1.0,
        outcomes: Vec::new(),
    }];
    for instr in &c.instructions {
        match instr {
            Instruction::Init { .. } | Instruction::InsertError { .. } => {}
            Instruction::Gate { gate, targets } => {
                for b in &mut branches {
                    b.state.apply_gate(*gate, targets)?;
                }
            }
            Instruction::Conditioned {
                condition,
                gate,
                targets,
            } => {
                for b in &mut branches {
                    let bit = b
                        .outcomes
                        .iter()
                        .find(|o| &o.label == condition)
                        .map(|o| o.bit)
                        .ok_or_else(|| {
                            Error::Invalid(format!("condition `{condition}` not yet measured"))
                        })?;
                    if bit {
                        b.state.apply_gate(*gate, targets)?;
                    }
                }
            }
            Instruction::NonClifford { theta, qubit } => {
                for b in &mut branches {
                    b.state.apply_rz(theta.radians(), *qubit);
                }
            }
            Instruction::Measure {
                label,
                pauli,
                postselect,
            } => {
                for b in &mut branches {
                    if let Some(errs) = errors.get(label) {
                        for e in errs {
                            b.state.apply_pauli(e);
                        }
                    }
                }
                let mut next = Vec::with_capacity(branches.len());
                for b in branches {
                    let pinned = if opts.honor_postselect { *postselect } else { None };
                    let choices: Vec<bool> = match pinned {
                        Some(bit) => vec![bit],
                        None if opts.enumerate => vec![false, true],
                        None => {
                            let mut probe = b.state.clone();
                            let p_plus = probe.project(pauli, false)?;
                            let bit = if p_plus >= 1.0 - PROB_EPS {
                                false
                            } else if p_plus < PROB_EPS {
                                true
                            } else {
                                rng.gen::<f64>() >= p_plus
                            };
                            vec![bit]
                        }
                    };
                    for bit in choices {
                        let mut branch = DenseBranch {
                            state: b.state.clone(),
                            probability: b.probability,
                            postselect_probability: b.postselect_probability,
                            outcomes: b.outcomes.clone(),
                        };
                        let p = branch.state.project(pauli, bit)?;
                        if p < PROB_EPS {
                            continue;
                        }
                        branch.probability *= p;
                        if pinned.is_some() {
                            branch.postselect_probability *= p;
                        }
                        branch.outcomes.push(OutcomeRecord {
                            label: label.clone(),
                            bit,
                            probability: p,
                        });
                        next.push(branch);
                    }
                }
                branches = next;
            }
        }
    }
    let accepted_probability = if opts.enumerate {
        branches.iter().map(|b| b.probability).sum()
    } else {
        branches
            .iter()
            .map(|b| b.postselect_probability)
            .sum::<f64>()
    };
    Ok(DenseRunOutput {
        branches,
        accepted_probability,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;

    const TELEPORT: &str = "\
qubits 2
init 0 +
init 1 +
t 1
cnot 0 1
mpp alpha Z1
cif alpha s 0
";

    fn t_vector() -> CVector {
        let mut v = CVector::zeros(2);
        v.data[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        v.data[1] = Complex64::from_polar(
            std::f64::consts::FRAC_1_SQRT_2,
            std::f64::consts::FRAC_PI_4,
        );
        v
    }

    #[test]
    fn teleportation_enumerates_two_even_outcomes() {
        let c = Circuit::parse(TELEPORT).unwrap();
        let out = run_dense(&c, &RunOptions::default(), false).unwrap();
        assert_eq!(out.branches.len(), 2);
        assert!((out.accepted_probability - 1.0).abs() < 1e-12);
        // Both final states are |T⟩ on qubit 0 (up to the measured qubit 1).
        let t = t_vector();
        for b in &out.branches {
            assert!((b.probability - 0.5).abs() < 1e-12);
            let v = b.state.vector().unwrap();
            // Extract qubit 0 amplitudes conditioned on the measured bit.
            let bit = b.outcomes[0].bit;
            let offset = if bit { 2 } else { 0 };
            let sub = CVector {
                data: vec![v.data[offset], v.data[offset + 1]],
            };
            let overlap = t.inner(&sub).norm_sqr();
            assert!((overlap - 1.0).abs() < 1e-12, "bit={bit}");
        }
    }

    #[test]
    fn zero_state_measures_plus_deterministically() {
        let text = "qubits 1\ninit 0 0\nmpp m Z0\n";
        let c = Circuit::parse(text).unwrap();
        let out = run_dense(&c, &RunOptions::default(), false).unwrap();
        assert_eq!(out.branches.len(), 1);
        assert!(!out.branches[0].outcomes[0].bit);
        assert!((out.branches[0].probability - 1.0).abs() < 1e-14);
    }

    #[test]
    fn density_mode_matches_vector_mode() {
        let c = Circuit::parse(TELEPORT).unwrap();
        let vec_out = run_dense(&c, &RunOptions::default(), false).unwrap();
        let den_out = run_dense(&c, &RunOptions::default(), true).unwrap();
        assert_eq!(vec_out.branches.len(), den_out.branches.len());
        for (a, b) in vec_out.branches.iter().zip(&den_out.branches) {
            assert!((a.probability - b.probability).abs() < 1e-12);
            let rho_a = a.state.density();
            let rho_b = b.state.density();
            assert!(rho_a.max_abs_diff(&rho_b) < 1e-12);
        }
    }

    #[test]
    fn unitarity_preserves_norm() {
        use rand::prelude::*;
        let mut rng = StdRng::seed_from_u64(3);
        let mut state = DenseState::from_inits(
            &[InitBasis::Plus, InitBasis::Y, InitBasis::Zero],
            false,
        )
        .unwrap();
        let gates = [
            CliffordGate::H,
            CliffordGate::S,
            CliffordGate::Sdg,
            CliffordGate::X,
            CliffordGate::Y,
            CliffordGate::Z,
            CliffordGate::Cnot,
            CliffordGate::Cz,
            CliffordGate::Swap,
        ];
        for step in 0..200 {
            let g = gates[rng.gen_range(0..gates.len())];
            let targets: Vec<usize> = if g.arity() == 1 {
                vec![rng.gen_range(0..3)]
            } else {
                let a = rng.gen_range(0..3);
                let mut b = rng.gen_range(0..3);
                while b == a {
                    b = rng.gen_range(0..3);
                }
                vec![a, b]
            };
            state.apply_gate(g, &targets).unwrap();
            if step % 3 == 0 {
                state.apply_rz(rng.gen_range(-3.2..3.2), rng.gen_range(0..3));
            }
            let norm = state.vector().unwrap().norm_sqr();
            assert!((norm - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn postselect_rejection_shrinks_accepted_probability() {
        // |0⟩ post-selected on the −1 outcome of Z is impossible.
        let text = "qubits 1\ninit 0 0\nmpp m Z0 postselect=1\n";
        let c = Circuit::parse(text).unwrap();
        let opts = RunOptions {
            honor_postselect: true,
            ..RunOptions::default()
        };
        let out = run_dense(&c, &opts, false).unwrap();
        assert!(out.branches.is_empty());
        assert_eq!(out.accepted_probability, 0.0);
    }

    #[test]
    fn branch_budget_guard() {
        let mut text = String::from("qubits 1\ninit 0 +\n");
        for i in 0..24 {
            text.push_str(&format!("mpp m{i} Z0\n"));
        }
        let c = Circuit::parse(&text).unwrap();
        let opts = RunOptions {
            max_branches: 1 << 10,
            ..RunOptions::default()
        };
        assert!(matches!(
            run_dense(&c, &opts, false),
            Err(Error::TooManyBranches { .. })
        ));
    }

    #[test]
    fn amplitude_dump_lists_support() {
        let state = DenseState::from_inits(&[InitBasis::Plus, InitBasis::Zero], false).unwrap();
        let dump = state.dump_amplitudes();
        assert!(dump.contains("|00⟩"));
        assert!(dump.contains("|01⟩"));
        assert!(!dump.contains("|10⟩"));
    }

    #[test]
    fn limits_respected() {
        let inits = vec![InitBasis::Zero; 13];
        assert!(matches!(
            DenseState::from_inits(&inits, false),
            Err(Error::DenseLimit { .. })
        ));
        let inits = vec![InitBasis::Zero; 10];
        assert!(matches!(
            DenseState::from_inits(&inits, true),
            Err(Error::DenseLimit { .. })
        ));
    }
}
