//! The stabilizer-decomposed density matrix and its update rules.
//!
//! An [`ExtendedState`] represents
//!
//! ρ′ = 2^L · Σ_{i,k} c_{i,k} · P_{i,k} · Π_j (I + (−1)^{ε_{j,k}} g_j) / 2^r
//!
//! with one shared unsigned tableau of generators g_j, one sign vector ε per
//! branch k, a ν×ν [`CoefficientMatrix`] of (c_{i,k}, P_{i,k}) pairs, and an
//! integer L absorbing the factors of two produced by measurements. A fresh
//! stabilizer state has ν = 1, c₀₀ = 1 and P₀₀ = I.
//!
//! Three kinds of update are supported:
//!
//! - one non-Clifford single-qubit unitary, expanded over the Pauli basis,
//!   which sets ν and fills the coefficient matrix;
//! - Clifford gates, which conjugate the tableau and all P_{i,k} but leave
//!   the coefficients alone;
//! - Pauli-product measurements. When the measured operator commutes with
//!   every generator it lies in the group, each branch assigns it a
//!   deterministic sign, and entries that disagree with the outcome (or
//!   anticommute with the operator) are annihilated. Otherwise the
//!   anticommuting generators are rewritten to leave a single pivot; entries
//!   commuting with the operator pass through unchanged, while anticommuting
//!   entries absorb the pivot row and the pivot's branch sign.
//!
//! Entries are kept phase-canonical: every stored P_{i,k} has phase +1 and
//! any i-powers arising from Pauli products fold into the coefficient.
//!
//! A state is single-owner and mutates in place; outcome enumeration clones,
//! and clones are fully independent and can be sent to other threads.

use crate::dense::{CMatrix, C_ONE, C_ZERO};
use crate::error::{Error, Result};
use crate::oracle;
use crate::pauli::{CliffordGate, InitBasis, PauliKind, PhasedPauli, Sign};
use crate::tableau::{BranchSigns, GeneratorTableau};
use crate::target::TargetState;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Outcomes whose probability falls below this are treated as impossible.
pub(crate) const PROB_EPS: f64 = 1e-12;

/// Tolerance for the "trace is real" assertion.
const TRACE_IMAG_TOL: f64 = 1e-12;

/// One coefficient-matrix slot: a complex weight and a phase-free Pauli.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientEntry {
    pub c: Complex64,
    pub p: PhasedPauli,
}

/// ν×ν matrix of (c_{i,k}, P_{i,k}) pairs, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientMatrix {
    nu: usize,
    entries: Vec<CoefficientEntry>,
}

impl CoefficientMatrix {
    fn scalar(n: usize, w: Complex64) -> Self {
        Self {
            nu: 1,
            entries: vec![CoefficientEntry {
                c: w,
                p: PhasedPauli::identity(n),
            }],
        }
    }

    pub fn num_branches(&self) -> usize {
        self.nu
    }

    pub fn entry(&self, i: usize, k: usize) -> &CoefficientEntry {
        &self.entries[i * self.nu + k]
    }

    fn entry_mut(&mut self, i: usize, k: usize) -> &mut CoefficientEntry {
        &mut self.entries[i * self.nu + k]
    }

    fn zero_entry(&mut self, n: usize, i: usize, k: usize) {
        let e = self.entry_mut(i, k);
        e.c = C_ZERO;
        e.p = PhasedPauli::identity(n);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &CoefficientEntry)> {
        let nu = self.nu;
        self.entries
            .iter()
            .enumerate()
            .map(move |(idx, e)| (idx / nu, idx % nu, e))
    }
}

/// A recorded measurement: label, outcome bit (0 ↔ +1), and the conditional
/// probability with which that outcome occurred.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutcomeRecord {
    pub label: String,
    pub bit: bool,
    pub probability: f64,
}

/// Decomposed density matrix; see the module docs.
#[derive(Clone, Debug)]
pub struct ExtendedState {
    t: GeneratorTableau,
    signs: BranchSigns,
    d: CoefficientMatrix,
    log2_norm: i32,
    outcomes: Vec<OutcomeRecord>,
    nonclifford_used: bool,
}

/// Expand a single-qubit unitary over the Pauli basis via trace inner
/// products; coefficients below 1e−14 are dropped.
pub fn decompose_unitary(u: &[[Complex64; 2]; 2]) -> Result<Vec<(Complex64, PauliKind)>> {
    crate::dense::check_unitary_2x2(u, 1e-12)?;
    let i = Complex64::new(0.0, 1.0);
    let half = Complex64::new(0.5, 0.0);
    let coeffs = [
        (PauliKind::I, (u[0][0] + u[1][1]) * half),
        (PauliKind::X, (u[0][1] + u[1][0]) * half),
        (PauliKind::Y, (u[0][1] - u[1][0]) * i * half),
        (PauliKind::Z, (u[0][0] - u[1][1]) * half),
    ];
    Ok(coeffs
        .into_iter()
        .filter(|(_, c)| c.norm() > 1e-14)
        .map(|(k, c)| (c, k))
        .collect())
}

/// The two-term Pauli expansion of R_Z(θ): ((1+e^{iθ})/2)·I + ((1−e^{iθ})/2)·Z.
pub fn rz_terms(theta: f64) -> [(Complex64, PauliKind); 2] {
    let phase = Complex64::from_polar(1.0, theta);
    let half = Complex64::new(0.5, 0.0);
    [
        ((C_ONE + phase) * half, PauliKind::I),
        ((C_ONE - phase) * half, PauliKind::Z),
    ]
}

impl ExtendedState {
    /// ν = 1 stabilizer state with one generator per qubit.
    pub fn from_stabilizer(inits: &[InitBasis]) -> Self {
        assert!(!inits.is_empty(), "need at least one qubit");
        let n = inits.len();
        Self {
            t: GeneratorTableau::from_inits(inits),
            signs: BranchSigns::new(1, n),
            d: CoefficientMatrix::scalar(n, C_ONE),
            log2_norm: 0,
            outcomes: Vec::new(),
            nonclifford_used: false,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.t.num_qubits()
    }

    pub fn num_branches(&self) -> usize {
        self.d.num_branches()
    }

    pub fn tableau(&self) -> &GeneratorTableau {
        &self.t
    }

    pub fn branch_signs(&self) -> &BranchSigns {
        &self.signs
    }

    pub fn coefficients(&self) -> &CoefficientMatrix {
        &self.d
    }

    pub fn log2_norm(&self) -> i32 {
        self.log2_norm
    }

    pub fn outcomes(&self) -> &[OutcomeRecord] {
        &self.outcomes
    }

    pub fn outcome_bit(&self, label: &str) -> Option<bool> {
        self.outcomes
            .iter()
            .find(|o| o.label == label)
            .map(|o| o.bit)
    }

    /// Conjugate the whole state by an elementary Clifford gate.
    pub fn apply_clifford(&mut self, gate: CliffordGate, targets: &[usize]) -> Result<()> {
        self.t.conjugate_all(&mut self.signs, gate, targets)?;
        let nu = self.d.num_branches();
        for i in 0..nu {
            for k in 0..nu {
                let e = self.d.entry_mut(i, k);
                if e.c == C_ZERO {
                    continue;
                }
                let conj = e.p.conjugate(gate, targets)?;
                debug_assert!(conj.is_hermitian());
                e.c *= conj.phase();
                e.p = conj.unsigned();
            }
        }
        Ok(())
    }

    /// Conjugate by a Pauli operator (a deterministic error insertion):
    /// generators and entries anticommuting with it flip sign.
    pub fn apply_pauli_error(&mut self, p: &PhasedPauli) -> Result<()> {
        if p.num_qubits() != self.num_qubits() {
            return Err(Error::DimensionMismatch(p.num_qubits(), self.num_qubits()));
        }
        for j in 0..self.t.num_generators() {
            if self.t.stabilizer(j).omega(p)? {
                self.signs.flip_row_all(j);
            }
        }
        let nu = self.d.num_branches();
        for i in 0..nu {
            for k in 0..nu {
                let e = self.d.entry_mut(i, k);
                if e.c != C_ZERO && e.p.omega(p)? {
                    e.c = -e.c;
                }
            }
        }
        Ok(())
    }

    /// Apply a non-Clifford single-qubit unitary given as Pauli-basis terms.
    ///
    /// Only one non-Clifford application is supported per run, and the state
    /// must still be a plain stabilizer state (ν = 1 with a scalar weight).
    pub fn apply_nonclifford(
        &mut self,
        terms: &[(Complex64, PauliKind)],
        qubit: usize,
    ) -> Result<()> {
        let n = self.num_qubits();
        if qubit >= n {
            return Err(Error::QubitOutOfRange(qubit, n));
        }
        if self.nonclifford_used || self.d.num_branches() != 1 {
            return Err(Error::SecondNonClifford);
        }
        if terms.is_empty() {
            return Err(Error::Invalid("empty Pauli decomposition".into()));
        }
        let w = self.d.entry(0, 0).c;
        if !self.d.entry(0, 0).p.is_identity_bits() || w.im.abs() > 1e-12 || w.re <= 0.0 {
            return Err(Error::Invalid(
                "state is not a weighted stabilizer state".into(),
            ));
        }
        let nu = terms.len();
        let paulis: Vec<PhasedPauli> = terms
            .iter()
            .map(|(_, kind)| PhasedPauli::single(n, qubit, *kind))
            .collect::<Result<_>>()?;

        // Branch signs: commuting each P_k through the projectors flips the
        // sign of every generator that anticommutes with it.
        let base = self.signs.branch(0).clone();
        let mut eps = Vec::with_capacity(nu);
        for p_k in &paulis {
            let mut e = base.clone();
            for j in 0..self.t.num_generators() {
                if self.t.stabilizer(j).omega(p_k)? {
                    e.flip(j);
                }
            }
            eps.push(e);
        }
        self.signs = BranchSigns::from_vectors(eps);

        let mut entries = Vec::with_capacity(nu * nu);
        for (i, (c_i, _)) in terms.iter().enumerate() {
            for (k, (c_k, _)) in terms.iter().enumerate() {
                let prod = paulis[i].mul(&paulis[k])?;
                let c = w * c_i * c_k.conj() * prod.phase();
                entries.push(CoefficientEntry {
                    c,
                    p: if c == C_ZERO {
                        PhasedPauli::identity(n)
                    } else {
                        prod.unsigned()
                    },
                });
            }
        }
        self.d = CoefficientMatrix { nu, entries };
        self.nonclifford_used = true;
        Ok(())
    }

    /// Apply R_Z(θ) on one qubit via its exact two-term I/Z expansion.
    pub fn apply_rz(&mut self, theta: f64, qubit: usize) -> Result<()> {
        let terms = rz_terms(theta);
        self.apply_nonclifford(&terms, qubit)
    }

    /// Unnormalized trace. The imaginary part must vanish and is dropped.
    pub fn trace(&self) -> f64 {
        let mut total = C_ZERO;
        for (_, k, e) in self.d.iter() {
            if e.c == C_ZERO {
                continue;
            }
            if let Some(sign) = self
                .t
                .membership_with_sign(self.signs.branch(k), &e.p)
                .expect("stored entries are Hermitian")
            {
                total += e.c * sign.to_f64();
            }
        }
        let total = total * self.pow2_norm();
        assert!(
            total.im.abs() <= TRACE_IMAG_TOL * total.re.abs().max(1.0),
            "trace has a non-real part: {total}"
        );
        total.re
    }

    fn pow2_norm(&self) -> f64 {
        (self.log2_norm as f64).exp2()
    }

    /// Rescale coefficients so the trace is exactly 1.
    pub fn normalize(&mut self) -> Result<()> {
        let sum = self.trace() / self.pow2_norm();
        if sum.is_nan() || sum <= PROB_EPS {
            return Err(Error::ZeroTrace);
        }
        let inv = Complex64::new(1.0 / sum, 0.0);
        let nu = self.d.num_branches();
        for i in 0..nu {
            for k in 0..nu {
                let e = self.d.entry_mut(i, k);
                if e.c != C_ZERO {
                    e.c *= inv;
                }
            }
        }
        self.log2_norm = 0;
        Ok(())
    }

    /// tr(ρ′ · a) without normalization; `a` may carry any phase.
    fn trace_with(&self, a: &PhasedPauli) -> Result<Complex64> {
        let mut total = C_ZERO;
        for (_, k, e) in self.d.iter() {
            if e.c == C_ZERO {
                continue;
            }
            // tr(P_{i,k} ρ_k a) = tr(ρ_k · a·P_{i,k})
            let prod = a.mul(&e.p)?;
            if let Some(sign) = self
                .t
                .membership_with_sign(self.signs.branch(k), &prod.unsigned())
                .expect("unsigned operators are Hermitian")
            {
                total += e.c * sign.to_f64() * prod.phase();
            }
        }
        Ok(total * self.pow2_norm())
    }

    /// Normalized expectation value tr(ρ′·p)/tr(ρ′).
    pub fn expectation(&self, p: &PhasedPauli) -> Result<Complex64> {
        if p.num_qubits() != self.num_qubits() {
            return Err(Error::DimensionMismatch(p.num_qubits(), self.num_qubits()));
        }
        let tr = self.trace();
        if tr.is_nan() || tr <= 0.0 {
            return Err(Error::ZeroTrace);
        }
        Ok(self.trace_with(p)? / tr)
    }

    /// Project onto the `bit` outcome of `q` and return the conditional
    /// probability. The state is left unnormalized.
    fn project(&mut self, q: &PhasedPauli, bit: bool) -> Result<f64> {
        self.project_inner(q, bit, None)
    }

    /// Projection with an explicit pivot row. Outcomes are pivot-invariant;
    /// verification suites exercise that through this hook.
    pub fn project_with_pivot(&mut self, q: &PhasedPauli, bit: bool, pivot: usize) -> Result<f64> {
        self.project_inner(q, bit, Some(pivot))
    }

    /// Internal projection with an optional forced pivot row.
    pub(crate) fn project_inner(
        &mut self,
        q: &PhasedPauli,
        bit: bool,
        forced_pivot: Option<usize>,
    ) -> Result<f64> {
        let n = self.num_qubits();
        if q.num_qubits() != n {
            return Err(Error::DimensionMismatch(q.num_qubits(), n));
        }
        if !q.is_hermitian() {
            return Err(Error::NonHermitian(q.phase_exp()));
        }
        if q.is_identity_bits() {
            return Err(Error::TrivialMeasurement);
        }
        let before = self.trace();
        if before.is_nan() || before <= 0.0 {
            return Err(Error::ZeroTrace);
        }
        let outcome = Sign::from_bit(bit);
        let nu = self.d.num_branches();
        let anti = self.t.anticommuting_rows(q);
        if anti.is_empty() {
            // The operator is in the group; each branch fixes its sign.
            let mut branch_sign = Vec::with_capacity(nu);
            for k in 0..nu {
                let sigma = self
                    .t
                    .membership_with_sign(self.signs.branch(k), q)?
                    .ok_or_else(|| {
                        Error::Invalid(
                            "operator commutes with all generators but is not in the group"
                                .into(),
                        )
                    })?;
                branch_sign.push(sigma);
            }
            for i in 0..nu {
                for k in 0..nu {
                    if self.d.entry(i, k).c == C_ZERO {
                        continue;
                    }
                    let keep = branch_sign[k] == outcome && !self.d.entry(i, k).p.omega(q)?;
                    if keep {
                        // Hermiticity ties the row-side sign to the column's.
                        debug_assert_eq!(branch_sign[i], branch_sign[k]);
                    } else {
                        self.d.zero_entry(n, i, k);
                    }
                }
            }
        } else {
            let pivot = match forced_pivot {
                Some(p) => {
                    self.t
                        .rewrite_anticommuting_with_pivot(&mut self.signs, q, p, &anti)?;
                    p
                }
                None => self.t.rewrite_anticommuting(&mut self.signs, q)?,
            };
            let pivot_row = self.t.stabilizer(pivot).clone();
            for i in 0..nu {
                for k in 0..nu {
                    let e = self.d.entry(i, k);
                    if e.c == C_ZERO || !e.p.omega(q)? {
                        continue;
                    }
                    // Anticommuting entry: absorb the pivot row, pick up the
                    // pivot's current branch sign, fold phases into c.
                    let sign = if self.signs.get(k, pivot) { -C_ONE } else { C_ONE };
                    let prod = e.p.mul(&pivot_row)?;
                    let e = self.d.entry_mut(i, k);
                    e.c *= sign * prod.phase();
                    e.p = prod.unsigned();
                }
            }
            self.t.replace_generator(pivot, &q.unsigned())?;
            self.signs
                .set_row_all(pivot, bit ^ (q.phase_exp() / 2 == 1));
            self.log2_norm -= 1;
        }
        self.debug_check_pairing();
        let after = self.trace();
        Ok(after / before)
    }

    /// Post-select an outcome; a (near-)zero-probability outcome is reported
    /// as a typed rejection so protocol drivers can restart.
    pub fn measure_postselect(
        &mut self,
        q: &PhasedPauli,
        label: &str,
        bit: bool,
    ) -> Result<f64> {
        let p = self.project(q, bit)?;
        if p < PROB_EPS {
            return Err(Error::Rejected {
                label: label.to_string(),
                bit: u8::from(bit),
                probability: p,
            });
        }
        self.outcomes.push(OutcomeRecord {
            label: label.to_string(),
            bit,
            probability: p,
        });
        Ok(p)
    }

    /// Both measurement branches with their conditional probabilities;
    /// impossible outcomes are omitted. Probabilities sum to 1.
    pub fn measure_enumerate(
        &self,
        q: &PhasedPauli,
        label: &str,
    ) -> Result<Vec<(ExtendedState, f64, bool)>> {
        let mut out = Vec::with_capacity(2);
        for bit in [false, true] {
            let mut branch = self.clone();
            let p = branch.project(q, bit)?;
            if p >= PROB_EPS {
                branch.outcomes.push(OutcomeRecord {
                    label: label.to_string(),
                    bit,
                    probability: p,
                });
                out.push((branch, p, bit));
            }
        }
        Ok(out)
    }

    /// Sample one outcome with the given randomness source.
    pub fn measure_sample<R: Rng>(
        &mut self,
        q: &PhasedPauli,
        label: &str,
        rng: &mut R,
    ) -> Result<(bool, f64)> {
        let mut plus = self.clone();
        let p_plus = plus.project(q, false)?;
        let bit = if p_plus >= 1.0 - PROB_EPS {
            false
        } else if p_plus < PROB_EPS {
            true
        } else {
            rng.gen::<f64>() >= p_plus
        };
        let p = if bit {
            self.project(q, true)?
        } else {
            *self = plus;
            p_plus
        };
        self.outcomes.push(OutcomeRecord {
            label: label.to_string(),
            bit,
            probability: p,
        });
        Ok((bit, p))
    }

    /// Materialize ρ′ literally as a dense matrix (unnormalized, includes
    /// the 2^L weight).
    pub fn to_dense(&self) -> Result<CMatrix> {
        let n = self.num_qubits();
        let limit = oracle::density_limit();
        if n > limit {
            return Err(Error::DenseLimit { n, limit });
        }
        let dim = 1usize << n;
        let r = self.t.num_generators();
        let nu = self.d.num_branches();
        let mut rho = CMatrix::zeros(dim);
        for k in 0..nu {
            if (0..nu).all(|i| self.d.entry(i, k).c == C_ZERO) {
                continue;
            }
            // Branch projector Π_j (I + (−1)^{ε_{j,k}} g_j) / 2^r.
            let mut proj = CMatrix::identity(dim);
            for j in 0..r {
                let mut flipped = proj.clone();
                flipped.pauli_mul_left(self.t.stabilizer(j));
                let sign = if self.signs.get(k, j) { -C_ONE } else { C_ONE };
                proj.add_scaled(&flipped, sign);
                proj.scale(Complex64::new(0.5, 0.0));
            }
            for i in 0..nu {
                let e = self.d.entry(i, k);
                if e.c == C_ZERO {
                    continue;
                }
                let mut term = proj.clone();
                term.pauli_mul_left(&e.p);
                rho.add_scaled(&term, e.c);
            }
        }
        rho.scale(Complex64::new(self.pow2_norm(), 0.0));
        Ok(rho)
    }

    /// ⟨target|ρ′|target⟩ / tr(ρ′): dense below the size limit, otherwise via
    /// expectations of the target's projector expansion.
    pub fn fidelity(&self, target: &TargetState) -> Result<f64> {
        let n = self.num_qubits();
        if target.num_qubits() != n {
            return Err(Error::DimensionMismatch(target.num_qubits(), n));
        }
        if n <= oracle::density_limit() {
            let rho = self.to_dense()?;
            let v = target.to_dense_vector()?;
            let mut overlap = C_ZERO;
            for i in 0..v.dim() {
                for j in 0..v.dim() {
                    overlap += v.data[i].conj() * rho.get(i, j) * v.data[j];
                }
            }
            let tr = self.trace();
            if tr.is_nan() || tr <= 0.0 {
                return Err(Error::ZeroTrace);
            }
            return Ok((overlap.re / tr).clamp(0.0, 1.0 + 1e-9));
        }
        self.fidelity_by_expectation(target)
    }

    /// Projector-expansion route: tr(ρM)/tr(ρ) with M expanded over all
    /// subset products of the target's generators.
    pub fn fidelity_by_expectation(&self, target: &TargetState) -> Result<f64> {
        let gens = target.generators();
        let k = gens.len();
        if k > 16 {
            return Err(Error::Invalid(format!(
                "projector expansion over {k} generators is too large"
            )));
        }
        let logical = target.logical_terms()?;
        let mut acc = C_ZERO;
        for subset in 0..(1u64 << k) {
            let mut g = PhasedPauli::identity(self.num_qubits());
            for (j, gen) in gens.iter().enumerate() {
                if subset >> j & 1 == 1 {
                    g = g.mul(gen)?;
                }
            }
            acc += self.trace_with(&g)?;
            if let Some((lx, ly, theta)) = &logical {
                acc += theta.cos() * self.trace_with(&g.mul(lx)?)?;
                acc += theta.sin() * self.trace_with(&g.mul(ly)?)?;
            }
        }
        let dividers = k + usize::from(logical.is_some());
        let tr = self.trace();
        if tr.is_nan() || tr <= 0.0 {
            return Err(Error::ZeroTrace);
        }
        Ok((acc.re / (1u64 << dividers) as f64 / tr).clamp(0.0, 1.0 + 1e-9))
    }

    /// Versioned snapshot for golden tests and debugging.
    pub fn snapshot(&self) -> Snapshot {
        let r = self.t.num_generators();
        let nu = self.d.num_branches();
        Snapshot {
            version: 1,
            num_qubits: self.num_qubits(),
            num_generators: r,
            num_branches: nu,
            log2_norm: self.log2_norm,
            stabilizers: (0..r).map(|j| self.t.stabilizer(j).sparse_string()).collect(),
            destabilizers: (0..r)
                .map(|j| self.t.destabilizer(j).sparse_string())
                .collect(),
            branch_signs: (0..nu)
                .map(|k| {
                    (0..r)
                        .map(|j| if self.signs.get(k, j) { '1' } else { '0' })
                        .collect()
                })
                .collect(),
            coefficients: self
                .d
                .iter()
                .map(|(_, _, e)| SnapshotEntry {
                    re: e.c.re,
                    im: e.c.im,
                    pauli: e.p.sparse_string(),
                })
                .collect(),
            outcomes: self.outcomes.clone(),
        }
    }

    fn debug_check_pairing(&self) {
        #[cfg(debug_assertions)]
        {
            let nu = self.d.num_branches();
            for i in 0..nu {
                for k in 0..nu {
                    let a = self.d.entry(i, k);
                    let b = self.d.entry(k, i);
                    if a.c == C_ZERO && b.c == C_ZERO {
                        continue;
                    }
                    debug_assert!(
                        (a.c - b.c.conj()).norm() <= 1e-9 * (1.0 + a.c.norm()),
                        "coefficient Hermiticity pairing broken at ({i},{k})"
                    );
                    debug_assert!(a.p.same_bits(&b.p), "entry operators differ at ({i},{k})");
                }
            }
        }
    }
}

/// Self-describing state snapshot (schema `version` = 1).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub version: u32,
    pub num_qubits: usize,
    pub num_generators: usize,
    pub num_branches: usize,
    pub log2_norm: i32,
    pub stabilizers: Vec<String>,
    pub destabilizers: Vec<String>,
    pub branch_signs: Vec<String>,
    pub coefficients: Vec<SnapshotEntry>,
    pub outcomes: Vec<OutcomeRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnapshotEntry {
    pub re: f64,
    pub im: f64,
    pub pauli: String,
}
