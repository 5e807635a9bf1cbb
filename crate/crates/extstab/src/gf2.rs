//! GF(2) elimination over Pauli rows.
//!
//! The tableau answers membership queries through its destabilizers; the
//! routines here are the plain Gaussian-elimination route. They are kept as an
//! independent slow path for differential testing, and double as the solver
//! that extracts pure-Z constraints when materializing target states densely.

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::pauli::PhasedPauli;

/// Reduced row-echelon basis of a set of commuting Pauli rows, with each
/// echelon row tracked as an exact operator product of the originals.
pub struct Echelon {
    num_rows: usize,
    /// (pivot coordinate, accumulated product, combination over input rows).
    /// Kept fully reduced: no row has support on another row's pivot.
    rows: Vec<(usize, PhasedPauli, BitVec)>,
}

impl Echelon {
    /// Build from mutually commuting rows.
    pub fn build(rows_in: &[PhasedPauli]) -> Self {
        let mut echelon = Self {
            num_rows: rows_in.len(),
            rows: Vec::with_capacity(rows_in.len()),
        };
        for (index, row) in rows_in.iter().enumerate() {
            let mut combo = BitVec::zeros(rows_in.len());
            combo.set(index, true);
            let mut cur = row.clone();
            for (pivot, prod, pc) in &echelon.rows {
                if coordinate(&cur, *pivot) {
                    cur = cur.mul(prod).expect("row dimensions match");
                    combo.xor_assign(pc);
                }
            }
            if let Some(pivot) = first_coordinate(&cur) {
                for (_, prod, pc) in &mut echelon.rows {
                    if coordinate(prod, pivot) {
                        *prod = prod.mul(&cur).expect("row dimensions match");
                        pc.xor_assign(&combo);
                    }
                }
                echelon.rows.push((pivot, cur, combo));
            }
        }
        echelon
    }

    /// Express the unsigned part of `p` as a product of input rows.
    ///
    /// Returns the exact product (with accumulated phase) and which input
    /// rows participate, or `None` when `p` is not in the span.
    pub fn factorize(&self, p: &PhasedPauli) -> Option<(PhasedPauli, BitVec)> {
        let mut cur = p.unsigned();
        let mut prod = PhasedPauli::identity(p.num_qubits());
        let mut combo = BitVec::zeros(self.num_rows);
        for (pivot, row, rc) in &self.rows {
            if coordinate(&cur, *pivot) {
                cur = cur.mul(&row.unsigned()).expect("row dimensions match");
                prod = prod.mul(row).expect("row dimensions match");
                combo.xor_assign(rc);
            }
        }
        if cur.is_identity_bits() {
            Some((prod, combo))
        } else {
            None
        }
    }
}

/// First set symplectic coordinate (x bits first, then z bits), if any.
fn first_coordinate(p: &PhasedPauli) -> Option<usize> {
    let n = p.num_qubits();
    (0..2 * n).find(|&c| coordinate(p, c))
}

fn coordinate(p: &PhasedPauli, c: usize) -> bool {
    let n = p.num_qubits();
    if c < n {
        p.x_bits().get(c)
    } else {
        p.z_bits().get(c - n)
    }
}

/// Products of `gens` whose X part vanishes, as signed Z-type operators.
///
/// Generators must pairwise commute. An all-identity product with sign −1
/// means the group contains −I and is rejected.
pub fn pure_z_constraints(gens: &[PhasedPauli]) -> Result<Vec<PhasedPauli>> {
    let n = match gens.first() {
        Some(g) => g.num_qubits(),
        None => return Ok(Vec::new()),
    };
    let mut xrows: Vec<(usize, PhasedPauli)> = Vec::new();
    let mut constraints = Vec::new();
    for g in gens {
        let mut cur = g.clone();
        while let Some(pivot) = (0..n).find(|&q| cur.x_bits().get(q)) {
            match xrows.iter().find(|(p, _)| *p == pivot) {
                Some((_, row)) => cur = cur.mul(row).expect("row dimensions match"),
                None => {
                    xrows.push((pivot, cur));
                    cur = PhasedPauli::identity(n);
                    break;
                }
            }
        }
        if cur.is_identity_bits() {
            if cur.phase_exp() == 2 {
                return Err(Error::Invalid(
                    "generator set is inconsistent: the group contains -I".into(),
                ));
            }
        } else {
            if !cur.is_hermitian() {
                return Err(Error::NonHermitian(cur.phase_exp()));
            }
            constraints.push(cur);
        }
    }
    Ok(constraints)
}

/// Find a computational basis state satisfying every signed pure-Z constraint:
/// for each constraint i^s·Ẑ the state must obey (−1)^{|z∧b|} = i^s.
pub fn solve_z_basis_state(n: usize, constraints: &[PhasedPauli]) -> Result<usize> {
    let mut pivot_rows: Vec<(usize, BitVec, bool)> = Vec::new();
    for c in constraints {
        debug_assert_eq!(c.num_qubits(), n);
        if !c.is_hermitian() {
            return Err(Error::NonHermitian(c.phase_exp()));
        }
        let mut row = c.z_bits().clone();
        let mut sign = c.phase_exp() / 2 == 1;
        for (p, prow, psign) in &pivot_rows {
            if row.get(*p) {
                row.xor_assign(prow);
                sign ^= *psign;
            }
        }
        let first = row.iter_ones().next();
        match first {
            None => {
                if sign {
                    return Err(Error::Invalid(
                        "unsatisfiable Z-type sign constraints".into(),
                    ));
                }
            }
            Some(p) => {
                for (_, prow, psign) in &mut pivot_rows {
                    if prow.get(p) {
                        prow.xor_assign(&row);
                        *psign ^= sign;
                    }
                }
                pivot_rows.push((p, row, sign));
            }
        }
    }
    // Fully reduced rows touch their own pivot plus free variables only; with
    // free variables fixed to 0 the assignment reads off directly.
    debug_assert!(pivot_rows.iter().all(|(p, _, _)| *p < n));
    let mut b = 0usize;
    for (p, _, sign) in &pivot_rows {
        if *sign {
            b |= 1 << p;
        }
    }
    Ok(b)
}
