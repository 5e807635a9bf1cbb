//! Shared stabilizer generator bookkeeping.
//!
//! All decomposition branches stabilize the same unsigned generator rows; the
//! branches differ only by per-row signs, so one [`GeneratorTableau`] is
//! shared and a [`BranchSigns`] carries one sign vector per branch. Every
//! structural rewrite (Clifford conjugation, re-multiplying the pivot into
//! other anticommuting rows) is sign-independent and therefore applies to all
//! branches in lockstep; signs produced along the way fold into every branch.
//!
//! Each generator row is paired with a destabilizer row that anticommutes
//! with it and commutes with every other generator. Membership queries then
//! read off which generators participate in a product by taking symplectic
//! inner products against the destabilizers, instead of running a Gaussian
//! elimination per query. The elimination route survives in [`crate::gf2`]
//! for differential testing.
//!
//! Only pure states are supported: the generator count always equals the
//! qubit count. A tableau mutates in place under exclusive access; snapshots
//! are plain clones and can move across threads.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::gf2::Echelon;
use crate::pauli::{CliffordGate, InitBasis, PauliKind, PhasedPauli, Sign};
use std::fmt::Write as _;

/// Unsigned stabilizer generators plus paired destabilizers over n qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorTableau {
    n: usize,
    stab: Vec<PhasedPauli>,
    destab: Vec<PhasedPauli>,
}

/// One sign vector per decomposition branch; bit j set means generator j
/// carries sign −1 in that branch.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchSigns {
    eps: Vec<BitVec>,
}

impl BranchSigns {
    pub fn new(num_branches: usize, r: usize) -> Self {
        assert!(num_branches >= 1);
        Self {
            eps: vec![BitVec::zeros(r); num_branches],
        }
    }

    pub fn from_vectors(eps: Vec<BitVec>) -> Self {
        assert!(!eps.is_empty());
        Self { eps }
    }

    pub fn num_branches(&self) -> usize {
        self.eps.len()
    }

    pub fn branch(&self, k: usize) -> &BitVec {
        &self.eps[k]
    }

    pub fn get(&self, k: usize, row: usize) -> bool {
        self.eps[k].get(row)
    }

    pub fn set(&mut self, k: usize, row: usize, v: bool) {
        self.eps[k].set(row, v);
    }

    /// Flip the sign of `row` in every branch.
    pub fn flip_row_all(&mut self, row: usize) {
        for e in &mut self.eps {
            e.flip(row);
        }
    }

    /// Set the sign bit of `row` to `v` in every branch.
    pub fn set_row_all(&mut self, row: usize, v: bool) {
        for e in &mut self.eps {
            e.set(row, v);
        }
    }
}

impl GeneratorTableau {
    /// Tableau of a product state, one generator per qubit.
    pub fn from_inits(inits: &[InitBasis]) -> Self {
        let n = inits.len();
        let mut stab = Vec::with_capacity(n);
        let mut destab = Vec::with_capacity(n);
        for (q, init) in inits.iter().enumerate() {
            let (s_kind, d_kind) = match init {
                InitBasis::Zero => (PauliKind::Z, PauliKind::X),
                InitBasis::Plus => (PauliKind::X, PauliKind::Z),
                InitBasis::Y => (PauliKind::Y, PauliKind::X),
            };
            stab.push(PhasedPauli::single(n, q, s_kind).expect("qubit in range"));
            destab.push(PhasedPauli::single(n, q, d_kind).expect("qubit in range"));
        }
        let t = Self { n, stab, destab };
        t.debug_check();
        t
    }

    /// Build from explicit generator rows (signs are the caller's business;
    /// any phases on the rows are discarded). Rows must be independent,
    /// pairwise commuting, and as many as there are qubits.
    pub fn from_rows(n: usize, rows: &[PhasedPauli]) -> Result<Self> {
        if rows.len() < n {
            return Err(Error::MixedState);
        }
        if rows.len() > n {
            return Err(Error::Invalid(format!(
                "{} generators for {} qubits",
                rows.len(),
                n
            )));
        }
        for (j, row) in rows.iter().enumerate() {
            if row.num_qubits() != n {
                return Err(Error::DimensionMismatch(row.num_qubits(), n));
            }
            for other in &rows[..j] {
                if row.omega(other)? {
                    return Err(Error::Invalid(format!(
                        "generators {} and {} anticommute",
                        other, row
                    )));
                }
            }
        }
        // Independence: no row may factor over the previous ones.
        for j in 0..rows.len() {
            let prefix = Echelon::build(&rows[..j]);
            if prefix.factorize(&rows[j]).is_some() {
                return Err(Error::Invalid(format!(
                    "generator {} is dependent on earlier rows",
                    rows[j]
                )));
            }
        }
        // Destabilizers via elimination: find, for each row, a Pauli that
        // anticommutes with it and commutes with the rest.
        let stab: Vec<PhasedPauli> = rows.iter().map(PhasedPauli::unsigned).collect();
        let destab = solve_destabilizers(n, &stab)?;
        let t = Self { n, stab, destab };
        t.debug_check();
        Ok(t)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Generator count r; always equal to the qubit count (pure states).
    pub fn num_generators(&self) -> usize {
        self.stab.len()
    }

    pub fn stabilizer(&self, j: usize) -> &PhasedPauli {
        &self.stab[j]
    }

    pub fn destabilizer(&self, j: usize) -> &PhasedPauli {
        &self.destab[j]
    }

    pub fn stabilizers(&self) -> &[PhasedPauli] {
        &self.stab
    }

    /// Conjugate every row by an elementary Clifford gate. A −1 produced on a
    /// generator row folds into every branch's sign for that row;
    /// destabilizer signs are irrelevant and dropped.
    pub fn conjugate_all(
        &mut self,
        signs: &mut BranchSigns,
        gate: CliffordGate,
        targets: &[usize],
    ) -> Result<()> {
        gate.check_targets(self.n, targets)?;
        for (j, row) in self.stab.iter_mut().enumerate() {
            row.conjugate_mut(gate, targets)?;
            if row.phase_exp() != 0 {
                debug_assert_eq!(row.phase_exp(), 2);
                *row = row.unsigned();
                signs.flip_row_all(j);
            }
        }
        for row in &mut self.destab {
            row.conjugate_mut(gate, targets)?;
            *row = row.unsigned();
        }
        self.debug_check();
        Ok(())
    }

    /// Which generator rows anticommute with `p`.
    pub fn anticommuting_rows(&self, p: &PhasedPauli) -> Vec<usize> {
        (0..self.stab.len())
            .filter(|&j| self.stab[j].omega(p).expect("dimensions checked"))
            .collect()
    }

    /// Decide whether `p` (Hermitian) lies in the signed stabilizer group of
    /// one branch, and with which sign.
    ///
    /// Destabilizer pairing selects the candidate generator subset in one
    /// pass; the product of that subset is then compared bit-for-bit, which
    /// simultaneously rejects operators outside the group.
    pub fn membership_with_sign(
        &self,
        eps_k: &BitVec,
        p: &PhasedPauli,
    ) -> Result<Option<Sign>> {
        if p.num_qubits() != self.n {
            return Err(Error::DimensionMismatch(p.num_qubits(), self.n));
        }
        if !p.is_hermitian() {
            return Err(Error::NonHermitian(p.phase_exp()));
        }
        let mut prod = PhasedPauli::identity(self.n);
        let mut eps_parity = false;
        for j in 0..self.stab.len() {
            if self.destab[j].omega(p)? {
                prod = prod.mul(&self.stab[j])?;
                eps_parity ^= eps_k.get(j);
            }
        }
        if !prod.same_bits(p) {
            return Ok(None);
        }
        debug_assert!(prod.is_hermitian());
        let phase_bit = ((4 + p.phase_exp() - prod.phase_exp()) / 2) % 2 == 1;
        Ok(Some(Sign::from_bit(phase_bit ^ eps_parity)))
    }

    /// Same contract as [`Self::membership_with_sign`], via plain Gaussian
    /// elimination. Slow path for differential testing.
    pub fn membership_with_sign_gauss(
        &self,
        eps_k: &BitVec,
        p: &PhasedPauli,
    ) -> Result<Option<Sign>> {
        if p.num_qubits() != self.n {
            return Err(Error::DimensionMismatch(p.num_qubits(), self.n));
        }
        if !p.is_hermitian() {
            return Err(Error::NonHermitian(p.phase_exp()));
        }
        let echelon = Echelon::build(&self.stab);
        let Some((prod, combo)) = echelon.factorize(p) else {
            return Ok(None);
        };
        let eps_parity = combo.iter_ones().fold(false, |acc, j| acc ^ eps_k.get(j));
        let phase_bit = ((4 + p.phase_exp() - prod.phase_exp()) / 2) % 2 == 1;
        Ok(Some(Sign::from_bit(phase_bit ^ eps_parity)))
    }

    /// Re-multiply the pivot row into every other generator that anticommutes
    /// with `q`, leaving exactly one anticommuting row (the pivot, chosen as
    /// the lowest index). Branch signs absorb both the pivot's sign and any
    /// −1 arising from the row product; destabilizers are repaired to keep
    /// the pairing invariant.
    pub fn rewrite_anticommuting(
        &mut self,
        signs: &mut BranchSigns,
        q: &PhasedPauli,
    ) -> Result<usize> {
        let anti = self.anticommuting_rows(q);
        let Some(&pivot) = anti.first() else {
            return Err(Error::NoAnticommutingRow);
        };
        self.rewrite_anticommuting_with_pivot(signs, q, pivot, &anti)?;
        Ok(pivot)
    }

    /// Internal variant taking an explicit pivot, used to exercise pivot
    /// invariance in tests.
    pub(crate) fn rewrite_anticommuting_with_pivot(
        &mut self,
        signs: &mut BranchSigns,
        q: &PhasedPauli,
        pivot: usize,
        anti: &[usize],
    ) -> Result<()> {
        if q.num_qubits() != self.n {
            return Err(Error::DimensionMismatch(q.num_qubits(), self.n));
        }
        debug_assert!(anti.contains(&pivot));
        let pivot_row = self.stab[pivot].clone();
        for &j in anti {
            if j == pivot {
                continue;
            }
            let prod = pivot_row.mul(&self.stab[j])?;
            // Commuting Hermitian rows multiply to a Hermitian product; any
            // −1 folds into the branch signs.
            debug_assert!(prod.is_hermitian());
            let extra = prod.phase_exp() / 2 == 1;
            self.stab[j] = prod.unsigned();
            for k in 0..signs.num_branches() {
                let v = signs.get(k, j) ^ signs.get(k, pivot) ^ extra;
                signs.set(k, j, v);
            }
            // The pivot's destabilizer now anticommutes with the rewritten
            // row too; multiplying in that row's destabilizer restores the
            // pairing.
            let fixed = self.destab[pivot].mul(&self.destab[j])?.unsigned();
            self.destab[pivot] = fixed;
        }
        self.debug_check();
        Ok(())
    }

    /// Replace the pivot generator with a freshly measured operator `q̂`
    /// (unsigned); the old pivot row becomes the new destabilizer, and other
    /// destabilizers that anticommute with `q̂` absorb the old pivot row.
    ///
    /// Callers must have made the pivot the only anticommuting row first.
    pub fn replace_generator(&mut self, pivot: usize, q_unsigned: &PhasedPauli) -> Result<()> {
        debug_assert!(self.stab[pivot].omega(q_unsigned).expect("dims"));
        let old = std::mem::replace(&mut self.stab[pivot], q_unsigned.unsigned());
        for m in 0..self.destab.len() {
            if m != pivot && self.destab[m].omega(q_unsigned)? {
                self.destab[m] = self.destab[m].mul(&old)?.unsigned();
            }
        }
        self.destab[pivot] = old;
        self.debug_check();
        Ok(())
    }

    /// Debug dump: one generator per line in sparse form, with one sign
    /// column per branch.
    pub fn dump(&self, signs: &BranchSigns) -> String {
        let mut out = String::new();
        for j in 0..self.stab.len() {
            let cols: Vec<&str> = (0..signs.num_branches())
                .map(|k| if signs.get(k, j) { "-" } else { "+" })
                .collect();
            let _ = writeln!(out, "{:>3} [{}] {}", j, cols.join(""), self.stab[j]);
        }
        out
    }

    /// Validate the three structural invariants. Active in debug builds.
    pub fn check_invariants(&self) -> Result<()> {
        for j in 0..self.stab.len() {
            if self.stab[j].phase_exp() != 0 || self.destab[j].phase_exp() != 0 {
                return Err(Error::Invalid("rows must be unsigned".into()));
            }
            for m in 0..self.stab.len() {
                if self.stab[j].omega(&self.stab[m])? {
                    return Err(Error::Invalid(format!(
                        "stabilizer rows {j} and {m} anticommute"
                    )));
                }
                let pair = self.destab[j].omega(&self.stab[m])?;
                if pair != (j == m) {
                    return Err(Error::Invalid(format!(
                        "destabilizer {j} pairing broken against row {m}"
                    )));
                }
            }
        }
        // GF(2) independence.
        for j in 0..self.stab.len() {
            let prefix = Echelon::build(&self.stab[..j]);
            if prefix.factorize(&self.stab[j]).is_some() {
                return Err(Error::Invalid(format!("row {j} is dependent")));
            }
        }
        Ok(())
    }

    #[inline]
    fn debug_check(&self) {
        #[cfg(debug_assertions)]
        self.check_invariants().expect("tableau invariants");
    }
}

/// Solve for destabilizers of an arbitrary independent commuting row set.
fn solve_destabilizers(n: usize, stab: &[PhasedPauli]) -> Result<Vec<PhasedPauli>> {
    // Brute-force over single-qubit Paulis and their products is hopeless;
    // instead solve the linear system ω(d, g_m) = δ_{jm} over GF(2) for each
    // j. Build the 2n-dimensional symplectic vectors of the generators and
    // invert by elimination.
    let r = stab.len();
    let mut destab = Vec::with_capacity(r);
    for j in 0..r {
        // Unknown d as 2n bits (x | z). Constraint rows: for each generator
        // g_m: Σ x_d·z_gm + z_d·x_gm = δ_{jm}.
        let mut rows: Vec<(BitVec, bool)> = Vec::with_capacity(r);
        for (m, g) in stab.iter().enumerate() {
            let mut coeff = BitVec::zeros(2 * n);
            for q in 0..n {
                if g.z_bits().get(q) {
                    coeff.set(q, true);
                }
                if g.x_bits().get(q) {
                    coeff.set(n + q, true);
                }
            }
            rows.push((coeff, m == j));
        }
        let solution = solve_affine(2 * n, &rows)?;
        let mut d = PhasedPauli::identity(n);
        for q in 0..n {
            if solution.get(q) {
                d = d.mul(&PhasedPauli::single(n, q, PauliKind::X)?)?;
            }
            if solution.get(n + q) {
                d = d.mul(&PhasedPauli::single(n, q, PauliKind::Z)?)?;
            }
        }
        destab.push(d.unsigned());
    }
    Ok(destab)
}

/// Solve an affine GF(2) system given as (coefficient row, rhs) pairs.
fn solve_affine(vars: usize, rows: &[(BitVec, bool)]) -> Result<BitVec> {
    let mut pivot_rows: Vec<(usize, BitVec, bool)> = Vec::new();
    for (coeff, rhs) in rows {
        let mut row = coeff.clone();
        let mut b = *rhs;
        for (p, prow, pb) in &pivot_rows {
            if row.get(*p) {
                row.xor_assign(prow);
                b ^= *pb;
            }
        }
        let first = row.iter_ones().next();
        match first {
            None => {
                if b {
                    return Err(Error::Invalid("inconsistent GF(2) system".into()));
                }
            }
            Some(p) => {
                for (_, prow, pb) in &mut pivot_rows {
                    if prow.get(p) {
                        prow.xor_assign(&row);
                        *pb ^= b;
                    }
                }
                pivot_rows.push((p, row, b));
            }
        }
    }
    let mut solution = BitVec::zeros(vars);
    for (p, _, b) in &pivot_rows {
        if *b {
            solution.set(*p, true);
        }
    }
    Ok(solution)
}
