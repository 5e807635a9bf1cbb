//! Phased n-qubit Pauli operators.
//!
//! A [`PhasedPauli`] is i^s · σ_{n−1} ⊗ … ⊗ σ_1 ⊗ σ_0, with each σ_q ∈
//! {I, X, Y, Z} encoded by an (x, z) bit pair and s ∈ {0,1,2,3} a global
//! power of the imaginary unit. Y is the literal Hermitian Pauli matrix, so
//! Y = i·X·Z holds with the phase carried by s: the product of the stored
//! X and Z parts on one qubit yields x=1, z=1, s=3, i.e. −i·Y. An operator
//! is Hermitian exactly when s is even.
//!
//! Values are immutable in practice: every operation returns a new operator,
//! so they can be shared and sent across threads freely.

use crate::bits::BitVec;
use crate::dense::CMatrix;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Single-qubit Pauli kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliKind {
    I,
    X,
    Y,
    Z,
}

impl PauliKind {
    pub fn xz(self) -> (bool, bool) {
        match self {
            PauliKind::I => (false, false),
            PauliKind::X => (true, false),
            PauliKind::Y => (true, true),
            PauliKind::Z => (false, true),
        }
    }

    pub fn from_xz(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliKind::I,
            (true, false) => PauliKind::X,
            (true, true) => PauliKind::Y,
            (false, true) => PauliKind::Z,
        }
    }

    pub fn letter(self) -> char {
        match self {
            PauliKind::I => 'I',
            PauliKind::X => 'X',
            PauliKind::Y => 'Y',
            PauliKind::Z => 'Z',
        }
    }
}

/// Sign of a Pauli operator relative to a stabilizer group: ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn bit(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Per-qubit initialization basis for stabilizer states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitBasis {
    /// |0⟩, stabilized by +Z.
    Zero,
    /// |+⟩, stabilized by +X.
    Plus,
    /// (|0⟩ + i|1⟩)/√2, stabilized by +Y.
    Y,
}

/// Elementary Clifford gates understood by this crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CliffordGate {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    Cnot,
    Cz,
    Swap,
}

impl CliffordGate {
    pub fn arity(self) -> usize {
        match self {
            CliffordGate::Cnot | CliffordGate::Cz | CliffordGate::Swap => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CliffordGate::H => "h",
            CliffordGate::S => "s",
            CliffordGate::Sdg => "sdg",
            CliffordGate::X => "x",
            CliffordGate::Y => "y",
            CliffordGate::Z => "z",
            CliffordGate::Cnot => "cnot",
            CliffordGate::Cz => "cz",
            CliffordGate::Swap => "swap",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "h" => CliffordGate::H,
            "s" => CliffordGate::S,
            "sdg" => CliffordGate::Sdg,
            "x" => CliffordGate::X,
            "y" => CliffordGate::Y,
            "z" => CliffordGate::Z,
            "cnot" | "cx" => CliffordGate::Cnot,
            "cz" => CliffordGate::Cz,
            "swap" => CliffordGate::Swap,
        _ => return None,
        })
    }

    pub(crate) fn check_targets(self, n: usize, targets: &[usize]) -> Result<()> {
        if targets.len() != self.arity() {
            return Err(Error::BadTargets {
                gate: self.name(),
                expected: self.arity(),
                got: targets.to_vec(),
            });
        }
        if self.arity() == 2 && targets[0] == targets[1] {
            return Err(Error::BadTargets {
                gate: self.name(),
                expected: 2,
                got: targets.to_vec(),
            });
        }
        for &t in targets {
            if t >= n {
                return Err(Error::QubitOutOfRange(t, n));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CliffordGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An n-qubit Pauli operator with global phase i^s.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PhasedPauli {
    n: usize,
    x: BitVec,
    z: BitVec,
    s: u8,
}

impl PhasedPauli {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            s: 0,
        }
    }

    pub fn single(n: usize, qubit: usize, kind: PauliKind) -> Result<Self> {
        if qubit >= n {
            return Err(Error::QubitOutOfRange(qubit, n));
        }
        let mut p = Self::identity(n);
        let (x, z) = kind.xz();
        p.x.set(qubit, x);
        p.z.set(qubit, z);
        Ok(p)
    }

    /// Build from per-qubit kinds plus a phase exponent.
    pub fn from_kinds(kinds: &[PauliKind], s: u8) -> Self {
        let mut p = Self::identity(kinds.len());
        for (q, k) in kinds.iter().enumerate() {
            let (x, z) = k.xz();
            p.x.set(q, x);
            p.z.set(q, z);
        }
        p.s = s % 4;
        p
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn kind(&self, qubit: usize) -> PauliKind {
        PauliKind::from_xz(self.x.get(qubit), self.z.get(qubit))
    }

    /// Phase exponent s, meaning a global factor i^s.
    pub fn phase_exp(&self) -> u8 {
        self.s
    }

    pub fn phase(&self) -> Complex64 {
        match self.s {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        }
    }

    /// The same operator with phase forced to +1.
    pub fn unsigned(&self) -> Self {
        let mut p = self.clone();
        p.s = 0;
        p
    }

    pub fn with_phase_exp(&self, s: u8) -> Self {
        let mut p = self.clone();
        p.s = s % 4;
        p
    }

    pub fn is_identity_bits(&self) -> bool {
        !self.x.any() && !self.z.any()
    }

    pub fn is_identity(&self) -> bool {
        self.is_identity_bits() && self.s == 0
    }

    pub fn is_hermitian(&self) -> bool {
        self.s.is_multiple_of(2)
    }

    /// True when the X/Z bit patterns agree, ignoring phase.
    pub fn same_bits(&self, other: &Self) -> bool {
        self.x == other.x && self.z == other.z
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        (0..self.n)
            .filter(|&q| self.x.get(q) || self.z.get(q))
            .count()
    }

    pub(crate) fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub(crate) fn z_bits(&self) -> &BitVec {
        &self.z
    }

    /// Hermitian adjoint: flips the sign of odd phase exponents.
    pub fn adjoint(&self) -> Self {
        let mut p = self.clone();
        p.s = (4 - self.s) % 4;
        p
    }

    /// Operator product a·b with exact phase tracking.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        // Per-qubit products σ_a σ_b = i^g σ_{a⊕b} contribute g ∈ {−1, 0, +1}:
        //   +1 for XY, YZ, ZX; −1 for XZ, YX, ZY.
        let mut plus = 0u32;
        let mut minus = 0u32;
        for (((&x1, &z1), &x2), &z2) in self
            .x
            .words()
            .iter()
            .zip(self.z.words())
            .zip(other.x.words())
            .zip(other.z.words())
        {
            let p = (x1 & !z1 & x2 & z2) | (x1 & z1 & !x2 & z2) | (!x1 & z1 & x2 & !z2);
            let m = (x1 & !z1 & !x2 & z2) | (x1 & z1 & x2 & !z2) | (!x1 & z1 & x2 & z2);
            plus += p.count_ones();
            minus += m.count_ones();
        }
        let mut out = self.clone();
        out.x.xor_assign(&other.x);
        out.z.xor_assign(&other.z);
        out.s = (self.s as i32 + other.s as i32 + plus as i32 - minus as i32).rem_euclid(4) as u8;
        Ok(out)
    }

    /// Symplectic inner product: false when the operators commute, true when
    /// they anticommute. Independent of either phase.
    pub fn omega(&self, other: &Self) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(self.x.parity_and(&other.z) ^ self.z.parity_and(&other.x))
    }

    /// Conjugation U p U† by an elementary Clifford gate, with exact sign.
    pub fn conjugate(&self, gate: CliffordGate, targets: &[usize]) -> Result<Self> {
        let mut p = self.clone();
        p.conjugate_mut(gate, targets)?;
        Ok(p)
    }

    pub fn conjugate_mut(&mut self, gate: CliffordGate, targets: &[usize]) -> Result<()> {
        gate.check_targets(self.n, targets)?;
        let mut flip = false;
        match gate {
            CliffordGate::H => {
                let q = targets[0];
                let (x, z) = (self.x.get(q), self.z.get(q));
                flip = x && z;
                self.x.set(q, z);
                self.z.set(q, x);
            }
            CliffordGate::S => {
                let q = targets[0];
                let (x, z) = (self.x.get(q), self.z.get(q));
                flip = x && z;
                self.z.set(q, x ^ z);
            }
            CliffordGate::Sdg => {
                let q = targets[0];
                let (x, z) = (self.x.get(q), self.z.get(q));
                flip = x && !z;
                self.z.set(q, x ^ z);
            }
            CliffordGate::X => {
                let q = targets[0];
                flip = self.z.get(q);
            }
            CliffordGate::Y => {
                let q = targets[0];
                flip = self.x.get(q) ^ self.z.get(q);
            }
            CliffordGate::Z => {
                let q = targets[0];
                flip = self.x.get(q);
            }
            CliffordGate::Cnot => {
                let (c, t) = (targets[0], targets[1]);
                let (xc, zc) = (self.x.get(c), self.z.get(c));
                let (xt, zt) = (self.x.get(t), self.z.get(t));
                flip = xc && zt && !(xt ^ zc);
                self.x.set(t, xt ^ xc);
                self.z.set(c, zc ^ zt);
            }
            CliffordGate::Cz => {
                let (a, b) = (targets[0], targets[1]);
                let (xa, za) = (self.x.get(a), self.z.get(a));
                let (xb, zb) = (self.x.get(b), self.z.get(b));
                flip = xa && xb && (za ^ zb);
                self.z.set(a, za ^ xb);
                self.z.set(b, zb ^ xa);
            }
            CliffordGate::Swap => {
                let (a, b) = (targets[0], targets[1]);
                let (xa, za) = (self.x.get(a), self.z.get(a));
                let (xb, zb) = (self.x.get(b), self.z.get(b));
                self.x.set(a, xb);
                self.z.set(a, zb);
                self.x.set(b, xa);
                self.z.set(b, za);
            }
        }
        if flip {
            self.s = (self.s + 2) % 4;
        }
        Ok(())
    }

    /// Dense 2^n × 2^n matrix, qubit 0 on the least significant axis.
    pub fn to_dense(&self, limit: usize) -> Result<CMatrix> {
        if self.n > limit {
            return Err(Error::DenseLimit {
                n: self.n,
                limit,
            });
        }
        let dim = 1usize << self.n;
        let mut m = CMatrix::zeros(dim);
        let (xmask, zmask, base) = self.action();
        for col in 0..dim {
            m.set(col ^ xmask, col, base * z_sign(col, zmask));
        }
        Ok(m)
    }

    /// Signed-permutation action: P|x⟩ = base · (−1)^{|x∧zmask|} |x ⊕ xmask⟩.
    pub(crate) fn action(&self) -> (usize, usize, Complex64) {
        debug_assert!(self.n < usize::BITS as usize);
        let mut xmask = 0usize;
        let mut zmask = 0usize;
        let mut ys = 0u32;
        for q in 0..self.n {
            if self.x.get(q) {
                xmask |= 1 << q;
            }
            if self.z.get(q) {
                zmask |= 1 << q;
            }
            if self.x.get(q) && self.z.get(q) {
                ys += 1;
            }
        }
        let exp = (self.s as u32 + ys) % 4;
        let base = match exp {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        (xmask, zmask, base)
    }

    /// Dense string form `[+|-][i]?[IXYZ]{n}`, qubit 0 first.
    pub fn dense_string(&self) -> String {
        let mut out = String::with_capacity(self.n + 2);
        out.push_str(match self.s {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        });
        for q in 0..self.n {
            out.push(self.kind(q).letter());
        }
        out
    }

    /// Sparse string form like `X0*Z3*Z5`; the identity renders as `I`.
    pub fn sparse_string(&self) -> String {
        let mut out = String::new();
        out.push_str(match self.s {
            0 => "",
            1 => "i*",
            2 => "-",
            _ => "-i*",
        });
        let mut first = true;
        for q in 0..self.n {
            let k = self.kind(q);
            if k == PauliKind::I {
                continue;
            }
            if !first {
                out.push('*');
            }
            out.push(k.letter());
            out.push_str(&q.to_string());
            first = false;
        }
        if first {
            out.push('I');
        }
        out
    }

    /// Parse the dense form `[+|-][i]?[IXYZ]{n}`.
    pub fn parse_dense(text: &str) -> Result<Self> {
        let (s, rest) = strip_phase(text);
        let mut kinds = Vec::with_capacity(rest.len());
        for ch in rest.chars() {
            kinds.push(match ch {
                'I' | 'i' => PauliKind::I,
                'X' | 'x' => PauliKind::X,
                'Y' | 'y' => PauliKind::Y,
                'Z' | 'z' => PauliKind::Z,
                _ => {
                    return Err(Error::Invalid(format!(
                        "invalid Pauli letter `{ch}` in `{text}`"
                    )))
                }
            });
        }
        if kinds.is_empty() {
            return Err(Error::Invalid(format!("empty Pauli string `{text}`")));
        }
        Ok(Self::from_kinds(&kinds, s))
    }

    /// Parse the sparse form `X0*Z3*Z5` (or `I`) over `n` qubits. Repeated
    /// factors on a qubit multiply, so `X0*Z0` is −i·Y0.
    pub fn parse_sparse(n: usize, text: &str) -> Result<Self> {
        let (s, rest) = strip_phase(text);
        let mut p = Self::identity(n).with_phase_exp(s);
        if rest == "I" || rest == "i" {
            return Ok(p);
        }
        for factor in rest.split('*') {
            if factor.is_empty() {
                return Err(Error::Invalid(format!("empty factor in `{text}`")));
            }
            let mut chars = factor.chars();
            let kind = match chars.next().unwrap() {
                'X' | 'x' => PauliKind::X,
                'Y' | 'y' => PauliKind::Y,
                'Z' | 'z' => PauliKind::Z,
                c => {
                    return Err(Error::Invalid(format!(
                        "invalid Pauli letter `{c}` in `{text}`"
                    )))
                }
            };
            let qubit: usize = chars.as_str().parse().map_err(|_| {
                Error::Invalid(format!("invalid qubit index in factor `{factor}`"))
            })?;
            if qubit >= n {
                return Err(Error::QubitOutOfRange(qubit, n));
            }
            p = p.mul(&Self::single(n, qubit, kind)?)?;
        }
        Ok(p)
    }
}

fn strip_phase(text: &str) -> (u8, &str) {
    let mut s = 0u8;
    let mut rest = text;
    if let Some(r) = rest.strip_prefix('+') {
        rest = r;
    } else if let Some(r) = rest.strip_prefix('-') {
        s = 2;
        rest = r;
    }
    if let Some(r) = rest.strip_prefix("i*") {
        s = (s + 1) % 4;
        rest = r;
    } else if rest.starts_with('i') && rest.len() >= 2 {
        s = (s + 1) % 4;
        rest = &rest[1..];
    }
    (s, rest)
}

fn z_sign(index: usize, zmask: usize) -> Complex64 {
    if (index & zmask).count_ones() & 1 == 1 {
        Complex64::new(-1.0, 0.0)
    } else {
        Complex64::new(1.0, 0.0)
    }
}

impl fmt::Debug for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dense_string())
    }
}

impl fmt::Display for PhasedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.sparse_string())
    }
}

impl Serialize for PhasedPauli {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.dense_string())
    }
}

impl<'de> Deserialize<'de> for PhasedPauli {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        PhasedPauli::parse_dense(&text).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::CMatrix;
    use rand::prelude::*;

    const DENSE_TEST_LIMIT: usize = 8;

    fn p(text: &str) -> PhasedPauli {
        PhasedPauli::parse_dense(text).unwrap()
    }

    #[test]
    fn x_times_z_is_minus_i_y() {
        let prod = p("X").mul(&p("Z")).unwrap();
        assert_eq!(prod.kind(0), PauliKind::Y);
        assert_eq!(prod.phase_exp(), 3);
        assert_eq!(prod, p("-iY"));
    }

    #[test]
    fn zz_squares_to_identity() {
        let zz = p("IZZ");
        let sq = zz.mul(&zz).unwrap();
        assert!(sq.is_identity());
    }

    #[test]
    fn sandwich_by_z_negates_anticommuting_part() {
        // Z1 · (X1 X2) · Z1 = −X1X2, checked against the dense product.
        let z1 = PhasedPauli::single(3, 1, PauliKind::Z).unwrap();
        let xx = p("IXX");
        let sandwich = z1.mul(&xx).unwrap().mul(&z1).unwrap();
        assert_eq!(sandwich, p("-IXX").with_phase_exp(2));
        let dense = z1
            .to_dense(DENSE_TEST_LIMIT)
            .unwrap()
            .matmul(&xx.to_dense(DENSE_TEST_LIMIT).unwrap())
            .matmul(&z1.to_dense(DENSE_TEST_LIMIT).unwrap());
        assert!(dense.max_abs_diff(&sandwich.to_dense(DENSE_TEST_LIMIT).unwrap()) < 1e-15);
    }

    #[test]
    fn omega_basics() {
        assert!(p("X").omega(&p("Z")).unwrap());
        assert!(!p("ZZ").omega(&p("XX")).unwrap());
        assert!(p("XXXX").omega(&p("IIIZ")).unwrap());
        // Phases never matter.
        assert!(p("-iY").omega(&p("+Z")).unwrap());
    }

    #[test]
    fn conjugation_table_spot_checks() {
        let x1 = PhasedPauli::single(3, 1, PauliKind::X).unwrap();
        let y1 = x1.conjugate(CliffordGate::S, &[1]).unwrap();
        assert_eq!(y1, PhasedPauli::single(3, 1, PauliKind::Y).unwrap());

        let spread = x1.conjugate(CliffordGate::Cnot, &[1, 2]).unwrap();
        assert_eq!(spread, p("IXX"));

        let z1 = PhasedPauli::single(3, 1, PauliKind::Z).unwrap();
        assert_eq!(z1.conjugate(CliffordGate::Cnot, &[1, 2]).unwrap(), z1);
    }

    #[test]
    fn to_dense_examples() {
        let id = PhasedPauli::identity(1).to_dense(DENSE_TEST_LIMIT).unwrap();
        assert!(id.max_abs_diff(&CMatrix::identity(2)) < 1e-15);

        let z = p("Z").to_dense(DENSE_TEST_LIMIT).unwrap();
        assert_eq!(z.get(0, 0), Complex64::new(1.0, 0.0));
        assert_eq!(z.get(1, 1), Complex64::new(-1.0, 0.0));
        assert_eq!(z.get(0, 1), Complex64::new(0.0, 0.0));

        // −i·Y = [[0, −1], [1, 0]]
        let miy = p("-iY").to_dense(DENSE_TEST_LIMIT).unwrap();
        assert_eq!(miy.get(0, 1), Complex64::new(-1.0, 0.0));
        assert_eq!(miy.get(1, 0), Complex64::new(1.0, 0.0));
        assert_eq!(miy.get(0, 0), Complex64::new(0.0, 0.0));
    }

    fn random_pauli(rng: &mut StdRng, n: usize) -> PhasedPauli {
        let kinds: Vec<PauliKind> = (0..n)
            .map(|_| match rng.gen_range(0..4) {
                0 => PauliKind::I,
                1 => PauliKind::X,
                2 => PauliKind::Y,
                _ => PauliKind::Z,
            })
            .collect();
        PhasedPauli::from_kinds(&kinds, rng.gen_range(0..4))
    }

    #[test]
    fn group_laws_random_triples() {
        // Associativity, identity neutrality, inverses, and element order
        // dividing 4, over 10^4 random triples on up to 8 qubits.
        let mut rng = StdRng::seed_from_u64(0xA11CE);
        for _ in 0..10_000 {
            let n = rng.gen_range(1..=8);
            let a = random_pauli(&mut rng, n);
            let b = random_pauli(&mut rng, n);
            let c = random_pauli(&mut rng, n);
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);

            let id = PhasedPauli::identity(n);
            assert_eq!(a.mul(&id).unwrap(), a);
            assert_eq!(id.mul(&a).unwrap(), a);

            let a2 = a.mul(&a).unwrap();
            let a4 = a2.mul(&a2).unwrap();
            assert!(a4.is_identity(), "order must divide 4: {a:?}");

            // mul(P, inverse(P)) = identity with s = 0; the inverse is a^3.
            let a3 = a2.mul(&a).unwrap();
            assert!(a.mul(&a3).unwrap().is_identity());
        }
    }

    #[test]
    fn square_of_hermitian_is_plus_or_minus_identity() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..2000 {
            let n = rng.gen_range(1..=6);
            let mut a = random_pauli(&mut rng, n);
            a = a.with_phase_exp(if rng.gen() { 0 } else { 2 });
            let sq = a.mul(&a).unwrap();
            assert!(sq.is_identity_bits());
            assert!(sq.phase_exp().is_multiple_of(2));
        }
    }

    #[test]
    fn omega_symmetry_and_bilinearity() {
        let mut rng = StdRng::seed_from_u64(99);
        for _ in 0..5000 {
            let n = rng.gen_range(1..=8);
            let a = random_pauli(&mut rng, n);
            let b = random_pauli(&mut rng, n);
            let c = random_pauli(&mut rng, n);
            assert_eq!(a.omega(&b).unwrap(), b.omega(&a).unwrap());
            let lhs = a.omega(&b.mul(&c).unwrap()).unwrap();
            let rhs = a.omega(&b).unwrap() ^ a.omega(&c).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn mul_matches_dense_products() {
        let mut rng = StdRng::seed_from_u64(0xD15C0);
        for _ in 0..400 {
            let n = rng.gen_range(1..=4);
            let a = random_pauli(&mut rng, n);
            let b = random_pauli(&mut rng, n);
            let prod = a.mul(&b).unwrap();
            let dense = a
                .to_dense(DENSE_TEST_LIMIT)
                .unwrap()
                .matmul(&b.to_dense(DENSE_TEST_LIMIT).unwrap());
            assert!(
                dense.max_abs_diff(&prod.to_dense(DENSE_TEST_LIMIT).unwrap()) < 1e-15,
                "a={a:?} b={b:?}"
            );
        }
    }

    fn random_gate(rng: &mut StdRng, n: usize) -> (CliffordGate, Vec<usize>) {
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
        loop {
            let g = gates[rng.gen_range(0..gates.len())];
            if g.arity() == 1 {
                return (g, vec![rng.gen_range(0..n)]);
            }
            if n < 2 {
                continue;
            }
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n);
            while b == a {
                b = rng.gen_range(0..n);
            }
            return (g, vec![a, b]);
        }
    }

    #[test]
    fn conjugation_matches_dense_exhaustively() {
        // Every gate against every 2-qubit Pauli with every phase; the dense
        // route U P U† is the ground truth.
        let n = 2;
        let gates: Vec<(CliffordGate, Vec<usize>)> = vec![
            (CliffordGate::H, vec![0]),
            (CliffordGate::H, vec![1]),
            (CliffordGate::S, vec![0]),
            (CliffordGate::S, vec![1]),
            (CliffordGate::Sdg, vec![0]),
            (CliffordGate::X, vec![0]),
            (CliffordGate::Y, vec![1]),
            (CliffordGate::Z, vec![0]),
            (CliffordGate::Cnot, vec![0, 1]),
            (CliffordGate::Cnot, vec![1, 0]),
            (CliffordGate::Cz, vec![0, 1]),
            (CliffordGate::Swap, vec![0, 1]),
        ];
        for (gate, targets) in gates {
            let u = crate::dense::gate_unitary(gate, &targets, n);
            for code in 0..16usize {
                for s in 0..4u8 {
                    let kinds = [
                        PauliKind::from_xz(code & 1 != 0, code & 2 != 0),
                        PauliKind::from_xz(code & 4 != 0, code & 8 != 0),
                    ];
                    let p = PhasedPauli::from_kinds(&kinds, s);
                    let conj = p.conjugate(gate, &targets).unwrap();
                    let dense = u
                        .matmul(&p.to_dense(DENSE_TEST_LIMIT).unwrap())
                        .matmul(&u.dagger());
                    assert!(
                        dense.max_abs_diff(&conj.to_dense(DENSE_TEST_LIMIT).unwrap()) < 1e-12,
                        "{gate:?} {targets:?} {p:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn conjugation_preserves_omega() {
        let mut rng = StdRng::seed_from_u64(31337);
        for _ in 0..5000 {
            let n = rng.gen_range(2..=8);
            let a = random_pauli(&mut rng, n);
            let b = random_pauli(&mut rng, n);
            let (g, t) = random_gate(&mut rng, n);
            let om = a.omega(&b).unwrap();
            let om2 = a
                .conjugate(g, &t)
                .unwrap()
                .omega(&b.conjugate(g, &t).unwrap())
                .unwrap();
            assert_eq!(om, om2, "gate {g:?} {t:?}");
        }
    }

    #[test]
    fn string_round_trips() {
        let mut rng = StdRng::seed_from_u64(5150);
        for _ in 0..500 {
            let n = rng.gen_range(1..=9);
            let a = random_pauli(&mut rng, n);
            assert_eq!(PhasedPauli::parse_dense(&a.dense_string()).unwrap(), a);
            assert_eq!(PhasedPauli::parse_sparse(n, &a.sparse_string()).unwrap(), a);
        }
        assert_eq!(
            PhasedPauli::parse_sparse(6, "X0*Z3*Z5").unwrap().sparse_string(),
            "X0*Z3*Z5"
        );
        assert!(PhasedPauli::parse_sparse(2, "X5").is_err());
        assert!(PhasedPauli::parse_dense("XQ").is_err());
    }

    #[test]
    fn mul_rejects_dimension_mismatch() {
        assert!(p("XX").mul(&p("X")).is_err());
        assert!(p("XX").omega(&p("X")).is_err());
    }

    #[test]
    fn bad_targets_rejected() {
        let a = p("XX");
        assert!(a.conjugate(CliffordGate::Cnot, &[0, 0]).is_err());
        assert!(a.conjugate(CliffordGate::H, &[5]).is_err());
        assert!(a.conjugate(CliffordGate::H, &[0, 1]).is_err());
    }
}
