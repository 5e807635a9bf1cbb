//! Pure-state targets for fidelity computations.
//!
//! A target is either a full stabilizer state (n signed generators) or a
//! single-qubit-style phase state on an encoded qubit: (|0̄⟩ + e^{iθ}|1̄⟩)/√2
//! with |0̄⟩ fixed by n−1 signed generators plus Z̄ = +1, and |1̄⟩ = X̄|0̄⟩.
//! The plain |m_θ⟩ = (|0⟩ + e^{iθ}|1⟩)/√2 on one qubit is the special case
//! with no generators and X̄ = X, Z̄ = Z.

use crate::dense::CVector;
use crate::error::{Error, Result};
use crate::gf2;
use crate::pauli::PhasedPauli;

#[derive(Clone, Debug)]
pub enum TargetState {
    /// A full stabilizer state given by n independent signed generators.
    Stabilizer { gens: Vec<PhasedPauli> },
    /// (|0̄⟩ + e^{iθ}|1̄⟩)/√2 on the logical qubit of a code with the given
    /// signed generators.
    LogicalPhase {
        gens: Vec<PhasedPauli>,
        logical_x: PhasedPauli,
        logical_z: PhasedPauli,
        theta: f64,
    },
}

impl TargetState {
    pub fn stabilizer(gens: Vec<PhasedPauli>) -> Result<Self> {
        let t = Self::Stabilizer { gens };
        t.validate()?;
        Ok(t)
    }

    pub fn logical_phase(
        gens: Vec<PhasedPauli>,
        logical_x: PhasedPauli,
        logical_z: PhasedPauli,
        theta: f64,
    ) -> Result<Self> {
        let t = Self::LogicalPhase {
            gens,
            logical_x,
            logical_z,
            theta,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn num_qubits(&self) -> usize {
        match self {
            Self::Stabilizer { gens } => gens.first().map_or(0, PhasedPauli::num_qubits),
            Self::LogicalPhase { logical_x, .. } => logical_x.num_qubits(),
        }
    }

    pub fn generators(&self) -> &[PhasedPauli] {
        match self {
            Self::Stabilizer { gens } | Self::LogicalPhase { gens, .. } => gens,
        }
    }

    /// The (X̄, Ȳ = i·X̄·Z̄, θ) triple of a logical-phase target: the phase
    /// factor of |m_θ⟩⟨m_θ| = (I + cosθ·X̄ + sinθ·Ȳ)/2.
    pub fn logical_terms(&self) -> Result<Option<(PhasedPauli, PhasedPauli, f64)>> {
        match self {
            Self::Stabilizer { .. } => Ok(None),
            Self::LogicalPhase {
                logical_x,
                logical_z,
                theta,
                ..
            } => {
                let prod = logical_x.mul(logical_z)?;
                let y = prod.with_phase_exp(prod.phase_exp() + 1);
                debug_assert!(y.is_hermitian());
                Ok(Some((logical_x.clone(), y, *theta)))
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_qubits();
        if n == 0 {
            return Err(Error::Invalid("empty target".into()));
        }
        for g in self.generators() {
            if g.num_qubits() != n {
                return Err(Error::DimensionMismatch(g.num_qubits(), n));
            }
            if !g.is_hermitian() {
                return Err(Error::NonHermitian(g.phase_exp()));
            }
            if g.is_identity_bits() {
                return Err(Error::Invalid("identity generator in target".into()));
            }
        }
        for (j, a) in self.generators().iter().enumerate() {
            for b in &self.generators()[..j] {
                if a.omega(b)? {
                    return Err(Error::Invalid(
                        "target generators must pairwise commute".into(),
                    ));
                }
            }
        }
        match self {
            Self::Stabilizer { gens } => {
                if gens.len() != n {
                    return Err(Error::Invalid(format!(
                        "stabilizer target needs {n} generators, got {}",
                        gens.len()
                    )));
                }
            }
            Self::LogicalPhase {
                gens,
                logical_x,
                logical_z,
                ..
            } => {
                if gens.len() + 1 != n {
                    return Err(Error::Invalid(format!(
                        "logical target needs {} generators, got {}",
                        n - 1,
                        gens.len()
                    )));
                }
                if !logical_x.omega(logical_z)? {
                    return Err(Error::Invalid(
                        "logical X and Z must anticommute".into(),
                    ));
                }
                for g in gens {
                    if g.omega(logical_x)? || g.omega(logical_z)? {
                        return Err(Error::Invalid(
                            "logical operators must commute with the generators".into(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Materialize the target as a normalized dense state vector by projecting
    /// a suitable computational basis state onto every constraint.
    pub fn to_dense_vector(&self) -> Result<CVector> {
        let n = self.num_qubits();
        if n > 24 {
            return Err(Error::DenseLimit { n, limit: 24 });
        }
        match self {
            Self::Stabilizer { gens } => project_onto(n, gens),
            Self::LogicalPhase {
                gens,
                logical_x,
                logical_z,
                theta,
            } => {
                // |0̄⟩ is fixed by the generators plus Z̄ = +1.
                let mut zero_gens = gens.clone();
                zero_gens.push(logical_z.clone());
                let zero = project_onto(n, &zero_gens)?;
                let one = zero.apply_pauli(logical_x);
                let mut v = zero;
                v.scale(num_complex::Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
                v.add_scaled(
                    &one,
                    num_complex::Complex64::from_polar(std::f64::consts::FRAC_1_SQRT_2, *theta),
                );
                debug_assert!((v.norm_sqr() - 1.0).abs() < 1e-9);
                Ok(v)
            }
        }
    }
}

/// Normalized projection of a compatible basis state onto Π (I + g_j)/2.
fn project_onto(n: usize, gens: &[PhasedPauli]) -> Result<CVector> {
    // Pick a basis state consistent with every pure-Z product of the
    // generators, then project; the X-type factors never annihilate it.
    let constraints = gf2::pure_z_constraints(gens)?;
    let basis = gf2::solve_z_basis_state(n, &constraints)?;
    let mut v = CVector::basis(1 << n, basis);
    for g in gens {
        let flipped = v.apply_pauli(g);
        v.add_scaled(&flipped, num_complex::Complex64::new(1.0, 0.0));
        v.scale(num_complex::Complex64::new(0.5, 0.0));
    }
    let norm = v.norm_sqr();
    if norm < 1e-12 {
        return Err(Error::Invalid(
            "target projector annihilated the seed basis state".into(),
        ));
    }
    v.normalize();
    Ok(v)
}
