//! Builders and checkers for the magic state protocols.
//!
//! Three studies are covered:
//!
//! - T-gate teleportation on two qubits (one magic qubit consumed by a CNOT,
//!   a Z measurement, and a conditional S correction);
//! - injection on the four-qubit distance-2 code (two weight-2 Z checks and
//!   one weight-4 X check);
//! - corner injection on the distance-d rotated surface code, with the
//!   deterministic plaquettes post-selected on +1.
//!
//! The surface-code layout places data qubit (col, row) at index col·d + row,
//! with the magic qubit at the top-left corner (0, d−1). Qubits on or below
//! the main anti-diagonal start in |+⟩, the rest in |0⟩. Bulk plaquettes
//! alternate X/Z on a checkerboard; boundary halves are Z-type on the left
//! and right edges and X-type on the top and bottom.
//!
//! The post-selection set is every plaquette whose first measurement is
//! deterministically +1 under clean initialization: X-type plaquettes fully
//! supported on |+⟩ data qubits and Z-type plaquettes fully supported on |0⟩
//! qubits. Injection measures the protocol rounds in this order: the Z checks
//! next to the |+⟩ column (excluding the one touching the corner), the X
//! checks along the top rows (again excluding the corner's), the rotation
//! itself, the two corner-adjacent checks (Z first), then everything else.

use crate::circuit::{Angle, Circuit};
use crate::error::{Error, Result};
use crate::extended::{ExtendedState, OutcomeRecord};
use crate::oracle::{self, RunOptions};
use crate::pauli::{CliffordGate, InitBasis, PauliKind, PhasedPauli, Sign};
use crate::run::{self, RunOutput};
use crate::target::TargetState;
use serde::{Deserialize, Serialize};

/// One stabilizer check of the layout.
#[derive(Clone, Debug)]
pub struct Plaquette {
    pub name: String,
    pub is_x: bool,
    pub qubits: Vec<usize>,
    pub operator: PhasedPauli,
}

/// Rotated surface code layout for corner injection.
#[derive(Clone, Debug)]
pub struct SurfaceCodeLayout {
    pub distance: usize,
    pub n: usize,
    /// (col, row) per qubit index.
    pub coords: Vec<(usize, usize)>,
    pub inits: Vec<InitBasis>,
    pub magic_qubit: usize,
    pub x_plaquettes: Vec<Plaquette>,
    pub z_plaquettes: Vec<Plaquette>,
    /// Names of the post-selected plaquettes.
    pub postselect: Vec<String>,
    pub logical_x: PhasedPauli,
    pub logical_z: PhasedPauli,
}

impl SurfaceCodeLayout {
    pub fn new(distance: usize) -> Result<Self> {
        if distance < 2 {
            return Err(Error::UnsupportedDistance(distance));
        }
        let d = distance;
        let n = d * d;
        let index = |col: usize, row: usize| col * d + row;
        let coords: Vec<(usize, usize)> = (0..n).map(|q| (q / d, q % d)).collect();
        let magic_qubit = index(0, d - 1);
        let inits: Vec<InitBasis> = coords
            .iter()
            .map(|&(col, row)| {
                if col + row < d {
                    InitBasis::Plus
                } else {
                    InitBasis::Zero
                }
            })
            .collect();

        // Plaquette (i, j) covers cols {i, i+1} × rows {j, j+1} clipped to
        // the grid; X-type when i+j is even. Boundary halves survive only on
        // the matching edges.
        let mut x_plaquettes = Vec::new();
        let mut z_plaquettes = Vec::new();
        let mut push = |is_x: bool, qubits: Vec<usize>| {
            let mut p = PhasedPauli::identity(n);
            let kind = if is_x { PauliKind::X } else { PauliKind::Z };
            for &q in &qubits {
                p = p
                    .mul(&PhasedPauli::single(n, q, kind).expect("qubit in range"))
                    .expect("dimensions match");
            }
            let list = if is_x { &mut x_plaquettes } else { &mut z_plaquettes };
            let name = format!("{}{}", if is_x { "x" } else { "z" }, list.len());
            list.push(Plaquette {
                name,
                is_x,
                qubits,
                operator: p,
            });
        };
        for i in -1i64..d as i64 {
            for j in -1i64..d as i64 {
                let is_x = (i + j).rem_euclid(2) == 0;
                let cols: Vec<usize> = [i, i + 1]
                    .into_iter()
                    .filter(|&c| c >= 0 && c < d as i64)
                    .map(|c| c as usize)
                    .collect();
                let rows: Vec<usize> = [j, j + 1]
                    .into_iter()
                    .filter(|&r| r >= 0 && r < d as i64)
                    .map(|r| r as usize)
                    .collect();
                let interior = cols.len() == 2 && rows.len() == 2;
                if interior {
                    let qubits: Vec<usize> = cols
                        .iter()
                        .flat_map(|&c| rows.iter().map(move |&r| index(c, r)))
                        .collect();
                    push(is_x, qubits);
                } else if cols.len() == 2 && rows.len() == 1 {
                    // Top or bottom boundary: X-type only.
                    if is_x {
                        push(true, cols.iter().map(|&c| index(c, rows[0])).collect());
                    }
                } else if cols.len() == 1 && rows.len() == 2 {
                    // Left or right boundary: Z-type only.
                    if !is_x {
                        push(false, rows.iter().map(|&r| index(cols[0], r)).collect());
                    }
                }
            }
        }
        // Deterministic ordering: by smallest touched qubit.
        for list in [&mut x_plaquettes, &mut z_plaquettes] {
            list.sort_by_key(|p| *p.qubits.iter().min().unwrap());
            for (i, p) in list.iter_mut().enumerate() {
                p.name = format!("{}{}", if p.is_x { "x" } else { "z" }, i);
            }
        }

        let mut logical_x = PhasedPauli::identity(n);
        for row in 0..d {
            logical_x = logical_x.mul(&PhasedPauli::single(n, index(0, row), PauliKind::X)?)?;
        }
        let mut logical_z = PhasedPauli::identity(n);
        for col in 0..d {
            logical_z = logical_z.mul(&PhasedPauli::single(n, index(col, d - 1), PauliKind::Z)?)?;
        }

        let postselect: Vec<String> = x_plaquettes
            .iter()
            .filter(|p| {
                p.qubits
                    .iter()
                    .all(|&q| inits[q] == InitBasis::Plus && q != magic_qubit)
            })
            .chain(
                z_plaquettes
                    .iter()
                    .filter(|p| p.qubits.iter().all(|&q| inits[q] == InitBasis::Zero)),
            )
            .map(|p| p.name.clone())
            .collect();

        let layout = Self {
            distance,
            n,
            coords,
            inits,
            magic_qubit,
            x_plaquettes,
            z_plaquettes,
            postselect,
            logical_x,
            logical_z,
        };
        layout.check_invariants()?;
        Ok(layout)
    }

    pub fn plaquettes(&self) -> impl Iterator<Item = &Plaquette> {
        self.z_plaquettes.iter().chain(self.x_plaquettes.iter())
    }

    pub fn plaquette(&self, name: &str) -> Option<&Plaquette> {
        self.plaquettes().find(|p| p.name == name)
    }

    /// Commutation of all checks, logical anticommutation, check count.
    pub fn check_invariants(&self) -> Result<()> {
        let all: Vec<&Plaquette> = self.plaquettes().collect();
        if all.len() != self.n - 1 {
            return Err(Error::Invalid(format!(
                "expected {} checks, built {}",
                self.n - 1,
                all.len()
            )));
        }
        for (a_idx, a) in all.iter().enumerate() {
            for b in &all[..a_idx] {
                if a.operator.omega(&b.operator)? {
                    return Err(Error::Invalid(format!(
                        "plaquettes {} and {} anticommute",
                        a.name, b.name
                    )));
                }
            }
            if a.operator.omega(&self.logical_x)? || a.operator.omega(&self.logical_z)? {
                return Err(Error::Invalid(format!(
                    "plaquette {} anticommutes with a logical operator",
                    a.name
                )));
            }
        }
        if !self.logical_x.omega(&self.logical_z)? {
            return Err(Error::Invalid(
                "logical X and Z must anticommute".into(),
            ));
        }
        Ok(())
    }

    /// Serializable layout description (JSON-friendly).
    pub fn export(&self) -> LayoutExport {
        LayoutExport {
            distance: self.distance,
            n: self.n,
            coords: self.coords.clone(),
            inits: self
                .inits
                .iter()
                .map(|b| match b {
                    InitBasis::Zero => "0".to_string(),
                    InitBasis::Plus => "+".to_string(),
                    InitBasis::Y => "Y".to_string(),
                })
                .collect(),
            magic_qubit: self.magic_qubit,
            x_plaquettes: self
                .x_plaquettes
                .iter()
                .map(|p| (p.name.clone(), p.operator.sparse_string()))
                .collect(),
            z_plaquettes: self
                .z_plaquettes
                .iter()
                .map(|p| (p.name.clone(), p.operator.sparse_string()))
                .collect(),
            postselect: self.postselect.clone(),
            logical_x: self.logical_x.sparse_string(),
            logical_z: self.logical_z.sparse_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LayoutExport {
    pub distance: usize,
    pub n: usize,
    pub coords: Vec<(usize, usize)>,
    pub inits: Vec<String>,
    pub magic_qubit: usize,
    pub x_plaquettes: Vec<(String, String)>,
    pub z_plaquettes: Vec<(String, String)>,
    pub postselect: Vec<String>,
    pub logical_x: String,
    pub logical_z: String,
}

/// T-gate teleportation: data |+⟩ on qubit 0, magic qubit 1, CNOT(0→1),
/// Z measurement on 1, conditional S on 0.
pub fn build_t_teleportation() -> Circuit {
    let mut c = Circuit::new(2);
    c.init(0, InitBasis::Plus)
        .init(1, InitBasis::Plus)
        .rz(Angle::PI_4, 1)
        .gate(CliffordGate::Cnot, &[0, 1])
        .measure("alpha", PhasedPauli::parse_sparse(2, "Z1").expect("valid"))
        .conditioned("alpha", CliffordGate::S, &[0]);
    c
}

/// Magic state injection on the four-qubit distance-2 code: T on qubit 1,
/// then Z0Z1 (n0), Z2Z3 (n1), X0X1X2X3 (m).
pub fn build_412_injection() -> Circuit {
    injection_circuit_d2(Angle::PI_4)
}

fn injection_circuit_d2(theta: Angle) -> Circuit {
    let mut c = Circuit::new(4);
    c.init(0, InitBasis::Plus)
        .init(1, InitBasis::Plus)
        .init(2, InitBasis::Plus)
        .init(3, InitBasis::Zero)
        .rz(theta, 1)
        .measure("n0", PhasedPauli::parse_sparse(4, "Z0*Z1").expect("valid"))
        .measure("n1", PhasedPauli::parse_sparse(4, "Z2*Z3").expect("valid"))
        .measure("m", PhasedPauli::parse_sparse(4, "X0*X1*X2*X3").expect("valid"));
    c
}

/// Corner injection on the distance-d rotated surface code.
///
/// At d = 2 the pre-rotation reduced rounds are empty and the builder emits
/// the canonical four-qubit toy circuit (the lone far Z check commutes with
/// everything before it, so deferring it past the rotation is the same
/// protocol instruction-for-instruction).
pub fn build_surface_injection(distance: usize, theta: Angle) -> Result<(Circuit, SurfaceCodeLayout)> {
    let layout = SurfaceCodeLayout::new(distance)?;
    if distance == 2 {
        let c = injection_circuit_d2(theta);
        // Rename layout plaquettes to the toy labels n0/n1/m.
        let mut layout = layout;
        for p in &mut layout.z_plaquettes {
            p.name = if p.qubits == vec![0, 1] { "n0".into() } else { "n1".into() };
        }
        layout.x_plaquettes[0].name = "m".into();
        layout.postselect.clear();
        c.validate()?;
        return Ok((c, layout));
    }
    let d = distance;
    let magic = layout.magic_qubit;
    let in_cols01 = |p: &Plaquette| p.qubits.iter().all(|&q| q / d <= 1);
    let in_top_rows = |p: &Plaquette| p.qubits.iter().all(|&q| q % d >= d - 2);
    let touches_magic = |p: &Plaquette| p.qubits.contains(&magic);

    let reduced_z: Vec<&Plaquette> = layout
        .z_plaquettes
        .iter()
        .filter(|p| in_cols01(p) && !touches_magic(p))
        .collect();
    let reduced_x: Vec<&Plaquette> = layout
        .x_plaquettes
        .iter()
        .filter(|p| in_top_rows(p) && !touches_magic(p))
        .collect();
    let corner_z = layout
        .z_plaquettes
        .iter()
        .find(|p| touches_magic(p))
        .ok_or_else(|| Error::Invalid("no Z check touches the corner".into()))?;
    let corner_x = layout
        .x_plaquettes
        .iter()
        .find(|p| touches_magic(p))
        .ok_or_else(|| Error::Invalid("no X check touches the corner".into()))?;

    let mut c = Circuit::new(layout.n);
    for (q, basis) in layout.inits.iter().enumerate() {
        c.init(q, *basis);
    }
    let mut measured: Vec<&str> = Vec::new();
    let add_measure = |c: &mut Circuit, p: &Plaquette, measured: &mut Vec<&str>| {
        // Names are unique, so a second request is a builder bug.
        debug_assert!(!measured.contains(&p.name.as_str()));
        if layout.postselect.contains(&p.name) {
            c.measure_postselect(&p.name, p.operator.clone(), false);
        } else {
            c.measure(&p.name, p.operator.clone());
        }
    };
    for p in &reduced_z {
        add_measure(&mut c, p, &mut measured);
        measured.push(&p.name);
    }
    for p in &reduced_x {
        add_measure(&mut c, p, &mut measured);
        measured.push(&p.name);
    }
    c.rz(theta, magic);
    add_measure(&mut c, corner_z, &mut measured);
    measured.push(&corner_z.name);
    add_measure(&mut c, corner_x, &mut measured);
    measured.push(&corner_x.name);
    let remaining: Vec<&Plaquette> = layout
        .z_plaquettes
        .iter()
        .chain(layout.x_plaquettes.iter())
        .filter(|p| !measured.contains(&p.name.as_str()))
        .collect();
    for p in remaining {
        add_measure(&mut c, p, &mut measured);
        measured.push(&p.name);
    }
    c.validate()?;
    Ok((c, layout))
}

/// Signed stabilizer target for one outcome frame: every plaquette with its
/// measured sign, plus the layout logicals at angle θ.
pub fn frame_target(
    layout: &SurfaceCodeLayout,
    outcomes: &[OutcomeRecord],
    theta: f64,
) -> Result<TargetState> {
    let mut gens = Vec::with_capacity(layout.n - 1);
    for p in layout.plaquettes() {
        let bit = outcomes
            .iter()
            .find(|o| o.label == p.name)
            .map(|o| o.bit)
            .ok_or_else(|| {
                Error::Invalid(format!("plaquette `{}` was never measured", p.name))
            })?;
        gens.push(p.operator.with_phase_exp(if bit { 2 } else { 0 }));
    }
    TargetState::logical_phase(gens, layout.logical_x.clone(), layout.logical_z.clone(), theta)
}

/// Report of the symbolic logical-form check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LogicalFormReport {
    /// Plaquettes whose recorded frame sign fails to stabilize some branch.
    pub plaquette_failures: Vec<String>,
    /// Off-diagonal entries equal ±Z̄ modulo the signed group.
    pub offdiagonal_ok: bool,
    /// Witness sign of P₀₁·Z̄ in the branch group, when it is a member.
    pub offdiagonal_sign: Option<i8>,
    /// X̄ is a signed member of every branch group, with opposite signs in
    /// the two branches.
    pub branch_operator_ok: bool,
    /// Witness sign of X̄ in branch 0.
    pub branch_operator_sign: Option<i8>,
    /// Coefficient magnitudes match {cos²(θ/2), |sinθ|/2, sin²(θ/2)}.
    pub coefficients_ok: bool,
}

impl LogicalFormReport {
    pub fn passed(&self) -> bool {
        self.plaquette_failures.is_empty()
            && self.offdiagonal_ok
            && self.branch_operator_ok
            && self.coefficients_ok
    }
}

/// Verify, via tableau membership only, that a final state has the injected
/// logical form: every plaquette stabilizes every branch with its recorded
/// sign, the off-diagonal Pauli is ±Z̄ modulo the signed group, and the
/// branch signs differ exactly by X̄.
pub fn check_logical_form(
    state: &ExtendedState,
    layout: &SurfaceCodeLayout,
    theta: f64,
) -> Result<LogicalFormReport> {
    let mut normalized = state.clone();
    normalized.normalize()?;
    let state = &normalized;
    let nu = state.num_branches();
    if nu != 2 {
        return Err(Error::Invalid(format!(
            "logical-form check expects 2 branches, found {nu}"
        )));
    }
    let t = state.tableau();
    let signs = state.branch_signs();

    let mut plaquette_failures = Vec::new();
    for p in layout.plaquettes() {
        let Some(bit) = state.outcome_bit(&p.name) else {
            plaquette_failures.push(format!("{}: never measured", p.name));
            continue;
        };
        let expected = Sign::from_bit(bit);
        for k in 0..nu {
            match t.membership_with_sign(signs.branch(k), &p.operator)? {
                Some(sign) if sign == expected => {}
                Some(sign) => plaquette_failures.push(format!(
                    "{}: branch {k} has sign {sign:?}, frame says {expected:?}",
                    p.name
                )),
                None => plaquette_failures
                    .push(format!("{}: not in the branch {k} group", p.name)),
            }
        }
    }

    // Off-diagonal entries ≡ ±Z̄ modulo the signed group of their column.
    let d = state.coefficients();
    let mut offdiagonal_ok = true;
    let mut offdiagonal_sign = None;
    for (i, k, e) in d.iter() {
        if i == k || e.c == crate::dense::C_ZERO {
            continue;
        }
        let prod = e.p.mul(&layout.logical_z)?;
        if !prod.is_hermitian() {
            offdiagonal_ok = false;
            continue;
        }
        match t.membership_with_sign(signs.branch(k), &prod)? {
            Some(sign) => {
                // Record the first witness; the Hermitian partner entry can
                // legitimately carry the opposite one.
                if offdiagonal_sign.is_none() {
                    offdiagonal_sign = Some(if sign == Sign::Plus { 1 } else { -1 });
                }
            }
            None => offdiagonal_ok = false,
        }
    }

    // Branch operator: X̄ signed membership, opposite in the two branches.
    let mut branch_operator_ok = true;
    let mut branch_operator_sign = None;
    let m0 = t.membership_with_sign(signs.branch(0), &layout.logical_x)?;
    let m1 = t.membership_with_sign(signs.branch(1), &layout.logical_x)?;
    match (m0, m1) {
        (Some(a), Some(b)) if a != b => {
            branch_operator_sign = Some(if a == Sign::Plus { 1 } else { -1 });
        }
        _ => branch_operator_ok = false,
    }

    // Coefficient magnitudes of the normalized state.
    let half = theta / 2.0;
    let expect = [
        half.cos().powi(2),
        (theta.sin() / 2.0).abs(),
        (theta.sin() / 2.0).abs(),
        half.sin().powi(2),
    ];
    let got = [
        d.entry(0, 0).c.norm(),
        d.entry(0, 1).c.norm(),
        d.entry(1, 0).c.norm(),
        d.entry(1, 1).c.norm(),
    ];
    let coefficients_ok = expect
        .iter()
        .zip(&got)
        .all(|(e, g)| (e - g).abs() < 1e-9);

    Ok(LogicalFormReport {
        plaquette_failures,
        offdiagonal_ok,
        offdiagonal_sign,
        branch_operator_ok,
        branch_operator_sign,
        coefficients_ok,
    })
}

/// Execute an injection circuit honoring its post-selection fields. Outcome
/// paths are enumerated when that stays within budget (distance ≤ 3),
/// otherwise a single path is sampled. The flag reports which mode ran.
pub fn run_injection(c: &Circuit, seed: u64) -> Result<(RunOutput, bool)> {
    let opts = RunOptions {
        enumerate: true,
        honor_postselect: true,
        seed,
        max_branches: 1 << 10,
    };
    match run::run_extended(c, &opts) {
        Err(Error::TooManyBranches { .. }) => {
            let opts = RunOptions {
                enumerate: false,
                ..opts
            };
            run::run_extended(c, &opts).map(|out| (out, false))
        }
        other => other.map(|out| (out, true)),
    }
}

/// Classification of one swept error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepClass {
    /// Post-selection rejected the run.
    Rejected,
    /// Accepted with logical fidelity 1.
    Accepted,
    /// Accepted, but the encoded state is wrong: an undetected logical error.
    LogicalError,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepCase {
    pub error: String,
    pub position: String,
    pub accepted: bool,
    pub acceptance_probability: f64,
    pub fidelity: Option<f64>,
    pub class: SweepClass,
    pub oracle_accepted: Option<bool>,
    pub oracle_fidelity: Option<f64>,
    pub oracle_class: Option<SweepClass>,
    /// Extended-simulator classification agrees with the oracle's.
    pub agrees: Option<bool>,
}

pub struct SweepOptions {
    /// Labels before which errors are inserted; defaults to every
    /// measurement after the non-Clifford rotation.
    pub positions: Option<Vec<String>>,
    /// Pauli kinds swept per qubit.
    pub paulis: Vec<PauliKind>,
    /// Run the dense oracle alongside for agreement checks.
    pub with_oracle: bool,
    pub seed: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            positions: None,
            paulis: vec![PauliKind::X, PauliKind::Y, PauliKind::Z],
            with_oracle: true,
            seed: 0,
        }
    }
}

/// Measurement labels occurring after the non-Clifford rotation.
pub fn post_rotation_labels(c: &Circuit) -> Vec<String> {
    let mut seen_rotation = false;
    let mut labels = Vec::new();
    for instr in &c.instructions {
        match instr {
            crate::circuit::Instruction::NonClifford { .. } => seen_rotation = true,
            crate::circuit::Instruction::Measure { label, .. } if seen_rotation => {
                labels.push(label.clone());
            }
            _ => {}
        }
    }
    labels
}

fn classify(accepted: bool, fidelity: Option<f64>) -> SweepClass {
    match (accepted, fidelity) {
        (false, _) => SweepClass::Rejected,
        (true, Some(f)) if f >= 1.0 - 1e-9 => SweepClass::Accepted,
        (true, _) => SweepClass::LogicalError,
    }
}

/// Sweep single-qubit Pauli errors over the given positions of an injection
/// circuit, recording acceptance and logical fidelity, with an optional dense
/// oracle column for agreement checking.
pub fn insert_error_sweep(
    c: &Circuit,
    layout: &SurfaceCodeLayout,
    theta: f64,
    opts: &SweepOptions,
) -> Result<Vec<SweepCase>> {
    let positions = match &opts.positions {
        Some(p) => p.clone(),
        None => post_rotation_labels(c),
    };
    if positions.is_empty() {
        return Err(Error::Invalid("no sweep positions".into()));
    }
    let mut cases = Vec::new();
    for position in &positions {
        for qubit in 0..layout.n {
            for kind in &opts.paulis {
                let error = PhasedPauli::single(layout.n, qubit, *kind)?;
                let mut circuit = c.clone();
                circuit.insert_error(error.clone(), position);
                circuit.validate()?;

                let (out, _) = run_injection(&circuit, opts.seed)?;
                let accepted = !out.rejected();
                let fidelity = if accepted {
                    let mut acc = 0.0;
                    for b in &out.branches {
                        let target = frame_target(layout, b.state.outcomes(), theta)?;
                        acc += b.probability * b.state.fidelity_by_expectation(&target)?;
                    }
                    Some(acc / out.accepted_probability)
                } else {
                    None
                };
                let class = classify(accepted, fidelity);

                let (oracle_accepted, oracle_fidelity, oracle_class, agrees) = if opts.with_oracle
                {
                    let dense_opts = RunOptions {
                        enumerate: true,
                        honor_postselect: true,
                        seed: opts.seed,
                        max_branches: 1 << 14,
                    };
                    let dense = oracle::run_dense(&circuit, &dense_opts, false)?;
                    let o_accepted = !dense.branches.is_empty();
                    let o_fidelity = if o_accepted {
                        let mut acc = 0.0;
                        for b in &dense.branches {
                            let target = frame_target(layout, &b.outcomes, theta)?;
                            let v = target.to_dense_vector()?;
                            acc += b.probability * b.state.fidelity_with_vector(&v);
                        }
                        Some(acc / dense.accepted_probability)
                    } else {
                        None
                    };
                    let o_class = classify(o_accepted, o_fidelity);
                    (
                        Some(o_accepted),
                        o_fidelity,
                        Some(o_class),
                        Some(o_class == class),
                    )
                } else {
                    (None, None, None, None)
                };

                cases.push(SweepCase {
                    error: error.sparse_string(),
                    position: position.clone(),
                    accepted,
                    acceptance_probability: out.accepted_probability,
                    fidelity,
                    class,
                    oracle_accepted,
                    oracle_fidelity,
                    oracle_class,
                    agrees,
                });
            }
        }
    }
    Ok(cases)
}
