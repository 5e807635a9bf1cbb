//! Small dense complex matrices and vectors for the brute-force oracle.
//!
//! Everything here targets desk-scale systems (state vectors up to ~2^12,
//! density matrices up to ~2^9), so the representations are plain row-major
//! `Vec<Complex64>`. Pauli operators act as signed permutations, which keeps
//! every operation that matters O(4^n) instead of a general matrix product.
//!
//! Qubit 0 lives on the least significant bit of every index and that
//! convention is used by every dense comparison in the crate.

use crate::error::{Error, Result};
use crate::pauli::{CliffordGate, PhasedPauli};
use num_complex::Complex64;

pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C_ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, C_ONE);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, v: Complex64) {
        self.data[row * self.dim + col] = v;
    }

    pub fn scale(&mut self, factor: Complex64) {
        for v in &mut self.data {
            *v *= factor;
        }
    }

    /// self += factor * other
    pub fn add_scaled(&mut self, other: &Self, factor: Complex64) {
        debug_assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += factor * b;
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == C_ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Left-multiply in place by a Pauli: M ← P · M.
    pub fn pauli_mul_left(&mut self, p: &PhasedPauli) {
        let (xmask, zmask, base) = p.action();
        debug_assert_eq!(1usize << p.num_qubits(), self.dim);
        let n = self.dim;
        let old = std::mem::replace(&mut self.data, vec![C_ZERO; n * n]);
        for row in 0..n {
            let target = row ^ xmask;
            let factor = base * sign64(row & zmask);
            for col in 0..n {
                self.data[target * n + col] = factor * old[row * n + col];
            }
        }
    }

    /// Right-multiply in place by a Pauli: M ← M · P.
    pub fn pauli_mul_right(&mut self, p: &PhasedPauli) {
        let (xmask, zmask, base) = p.action();
        debug_assert_eq!(1usize << p.num_qubits(), self.dim);
        let n = self.dim;
        let old = std::mem::replace(&mut self.data, vec![C_ZERO; n * n]);
        // (M·P)[r, c] = M[r, c ⊕ xmask] · P[c ⊕ xmask, c]; P[x⊕m, x] = base·(−1)^(x∧z).
        for col in 0..n {
            let src = col ^ xmask;
            let factor = base * sign64(col & zmask);
            for row in 0..n {
                self.data[row * n + col] = factor * old[row * n + src];
            }
        }
    }

    /// Largest eigenvalue deviation below zero, via Gershgorin-style check is
    /// too loose; instead verify v†Mv ≥ −tol for random unit vectors.
    pub fn min_rayleigh(&self, samples: usize, seed: u64) -> f64 {
        use rand::prelude::*;
        let mut rng = StdRng::seed_from_u64(seed);
        let mut worst = f64::INFINITY;
        for _ in 0..samples {
            let mut v: Vec<Complex64> = (0..self.dim)
                .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
                .collect();
            let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            for a in &mut v {
                *a /= norm;
            }
            let mut q = C_ZERO;
            for i in 0..self.dim {
                for j in 0..self.dim {
                    q += v[i].conj() * self.get(i, j) * v[j];
                }
            }
            worst = worst.min(q.re);
        }
        worst
    }
}

/// Column state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct CVector {
    pub data: Vec<Complex64>,
}

impl CVector {
    pub fn zeros(dim: usize) -> Self {
        Self {
            data: vec![C_ZERO; dim],
        }
    }

    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.data[index] = C_ONE;
        v
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn scale(&mut self, factor: Complex64) {
        for a in &mut self.data {
            *a *= factor;
        }
    }

    pub fn normalize(&mut self) {
        let norm = self.norm_sqr().sqrt();
        if norm > 0.0 {
            self.scale(Complex64::new(1.0 / norm, 0.0));
        }
    }

    /// ⟨self|other⟩ with conjugation on self.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn add_scaled(&mut self, other: &Self, factor: Complex64) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += factor * b;
        }
    }

    pub fn apply_pauli(&self, p: &PhasedPauli) -> Self {
        let (xmask, zmask, base) = p.action();
        debug_assert_eq!(1usize << p.num_qubits(), self.dim());
        let mut out = Self::zeros(self.dim());
        for (index, amp) in self.data.iter().enumerate() {
            out.data[index ^ xmask] = base * sign64(index & zmask) * amp;
        }
        out
    }

    /// Outer product |self⟩⟨self|.
    pub fn outer(&self) -> CMatrix {
        let n = self.dim();
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.data[i] * self.data[j].conj());
            }
        }
        m
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[inline]
fn sign64(masked: usize) -> Complex64 {
    if masked.count_ones() & 1 == 1 {
        Complex64::new(-1.0, 0.0)
    } else {
        C_ONE
    }
}

/// Apply a single-qubit unitary to a state vector in place.
pub fn apply_1q(v: &mut CVector, u: &[[Complex64; 2]; 2], qubit: usize) {
    let dim = v.dim();
    let bit = 1usize << qubit;
    for base in 0..dim {
        if base & bit != 0 {
            continue;
        }
        let hi = base | bit;
        let a = v.data[base];
        let b = v.data[hi];
        v.data[base] = u[0][0] * a + u[0][1] * b;
        v.data[hi] = u[1][0] * a + u[1][1] * b;
    }
}

/// ρ ← U ρ U† for a single-qubit unitary.
pub fn apply_1q_density(m: &mut CMatrix, u: &[[Complex64; 2]; 2], qubit: usize) {
    let dim = m.dim();
    let bit = 1usize << qubit;
    // Row side: ρ ← U ρ
    for col in 0..dim {
        for base in 0..dim {
            if base & bit != 0 {
                continue;
            }
            let hi = base | bit;
            let a = m.get(base, col);
            let b = m.get(hi, col);
            m.set(base, col, u[0][0] * a + u[0][1] * b);
            m.set(hi, col, u[1][0] * a + u[1][1] * b);
        }
    }
    // Column side: ρ ← ρ U†
    for row in 0..dim {
        for base in 0..dim {
            if base & bit != 0 {
                continue;
            }
            let hi = base | bit;
            let a = m.get(row, base);
            let b = m.get(row, hi);
            m.set(row, base, a * u[0][0].conj() + b * u[0][1].conj());
            m.set(row, hi, a * u[1][0].conj() + b * u[1][1].conj());
        }
    }
}

pub fn rz_matrix(theta: f64) -> [[Complex64; 2]; 2] {
    [
        [C_ONE, C_ZERO],
        [C_ZERO, Complex64::from_polar(1.0, theta)],
    ]
}

pub fn hadamard_matrix() -> [[Complex64; 2]; 2] {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

/// Dense unitary of an elementary Clifford gate on `n` qubits.
pub fn gate_unitary(gate: CliffordGate, targets: &[usize], n: usize) -> CMatrix {
    let dim = 1usize << n;
    let mut out = CMatrix::zeros(dim);
    let s = Complex64::new(0.0, 1.0);
    match gate {
        CliffordGate::H | CliffordGate::S | CliffordGate::Sdg
        | CliffordGate::X | CliffordGate::Y | CliffordGate::Z => {
            let u = match gate {
                CliffordGate::H => hadamard_matrix(),
                CliffordGate::S => [[C_ONE, C_ZERO], [C_ZERO, s]],
                CliffordGate::Sdg => [[C_ONE, C_ZERO], [C_ZERO, -s]],
                CliffordGate::X => [[C_ZERO, C_ONE], [C_ONE, C_ZERO]],
                CliffordGate::Y => [[C_ZERO, -s], [s, C_ZERO]],
                CliffordGate::Z => [[C_ONE, C_ZERO], [C_ZERO, -C_ONE]],
                _ => unreachable!(),
            };
            let q = targets[0];
            for col in 0..dim {
                let cb = usize::from(col >> q & 1 == 1);
                for rb in 0..2usize {
                    let row = (col & !(1 << q)) | (rb << q);
                    if u[rb][cb] != C_ZERO {
                        out.set(row, col, u[rb][cb]);
                    }
                }
            }
        }
        CliffordGate::Cnot => {
            let (c, t) = (targets[0], targets[1]);
            for col in 0..dim {
                let row = if col >> c & 1 == 1 { col ^ (1 << t) } else { col };
                out.set(row, col, C_ONE);
            }
        }
        CliffordGate::Cz => {
            let (a, b) = (targets[0], targets[1]);
            for col in 0..dim {
                let sign = if col >> a & 1 == 1 && col >> b & 1 == 1 {
                    -C_ONE
                } else {
                    C_ONE
                };
                out.set(col, col, sign);
            }
        }
        CliffordGate::Swap => {
            let (a, b) = (targets[0], targets[1]);
            for col in 0..dim {
                let (ba, bb) = (col >> a & 1, col >> b & 1);
                let row = (col & !(1 << a) & !(1 << b)) | (bb << a) | (ba << b);
                out.set(row, col, C_ONE);
            }
        }
    }
    out
}

/// Check a 2×2 matrix is unitary; returns the deviation of U†U from I.
pub fn unitarity_error_2x2(u: &[[Complex64; 2]; 2]) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let mut dot = C_ZERO;
            for k in 0..2 {
                dot += u[k][i].conj() * u[k][j];
            }
            let expect = if i == j { C_ONE } else { C_ZERO };
            worst = worst.max((dot - expect).norm());
        }
    }
    worst
}

pub fn check_unitary_2x2(u: &[[Complex64; 2]; 2], tol: f64) -> Result<()> {
    let err = unitarity_error_2x2(u);
    if err > tol {
        return Err(Error::NotUnitary(err));
    }
    Ok(())
}
