//! Acceptance suite: one test per acceptance criterion, each printing a
//! PASS line and enforcing its runtime budget.
//!
//! Run with `cargo test -p extstab --test acceptance -- --nocapture` to see
//! the per-criterion lines.

mod common;

use extstab::circuit::Angle;
use extstab::oracle::{self, RunOptions};
use extstab::pauli::{InitBasis, PauliKind, PhasedPauli, Sign};
use extstab::protocols::{
    self, build_412_injection, build_surface_injection, build_t_teleportation, frame_target,
    SweepClass, SweepOptions,
};
use extstab::run::run_extended;
use extstab::tableau::{BranchSigns, GeneratorTableau};
use extstab::target::TargetState;
use num_complex::Complex64;
use rand::prelude::*;
use std::f64::consts::PI;
use std::time::Instant;

fn pd(s: &str) -> PhasedPauli {
    PhasedPauli::parse_dense(s).unwrap()
}

fn check_runtime(started: Instant, budget_s: f64, criterion: &str) {
    let elapsed = started.elapsed().as_secs_f64();
    assert!(
        elapsed < budget_s,
        "{criterion} exceeded its {budget_s}s budget: {elapsed:.2}s"
    );
    println!("acceptance {criterion}: PASS ({elapsed:.2}s < {budget_s}s)");
}

#[test]
fn criterion_1_teleportation_reproduction() {
    let started = Instant::now();
    let c = build_t_teleportation();
    let out = run_extended(&c, &RunOptions::default()).unwrap();

    // Exactly two outcomes at probability 1/2.
    assert_eq!(out.branches.len(), 2);
    for b in &out.branches {
        assert!((b.probability - 0.5).abs() <= 1e-12);
    }
    let total: f64 = out.branches.iter().map(|b| b.probability).sum();
    assert!((total - 1.0).abs() <= 1e-12);

    // After the conditioned S both branches hold |T⟩ on qubit 0 (the data
    // qubit), with the measured qubit in |α⟩.
    for b in &out.branches {
        let alpha = b.state.outcomes()[0].bit;
        let frame = pd("IZ").with_phase_exp(if alpha { 2 } else { 0 });
        let target =
            TargetState::logical_phase(vec![frame], pd("XI"), pd("ZI"), PI / 4.0).unwrap();
        let f = b.state.fidelity(&target).unwrap();
        assert!((f - 1.0).abs() <= 1e-12, "alpha={alpha}: fidelity {f}");
    }

    // The α=0 branch's normalized coefficient matrix carries the canonical
    // entries {cos²(π/8), ±(i/2)sin(π/4), sin²(π/8)}.
    let alpha0 = out
        .branches
        .iter()
        .find(|b| !b.state.outcomes()[0].bit)
        .unwrap();
    let mut state = alpha0.state.clone();
    state.normalize().unwrap();
    let d = state.coefficients();
    let cos2 = (PI / 8.0).cos().powi(2);
    let sin2 = (PI / 8.0).sin().powi(2);
    let half_sin = 0.5 * (PI / 4.0).sin();
    assert!((d.entry(0, 0).c - Complex64::new(cos2, 0.0)).norm() <= 1e-12);
    assert!((d.entry(1, 1).c - Complex64::new(sin2, 0.0)).norm() <= 1e-12);
    let off = d.entry(0, 1).c;
    assert!(off.re.abs() <= 1e-12, "off-diagonal must be imaginary");
    assert!((off.im.abs() - half_sin).abs() <= 1e-12);
    assert!((d.entry(1, 0).c - off.conj()).norm() <= 1e-12);

    check_runtime(started, 1.0, "criterion 1 (teleportation)");
}

#[test]
fn criterion_2_412_injection_all_frames() {
    let started = Instant::now();
    let c = build_412_injection();
    let (_, layout) = build_surface_injection(2, Angle::PI_4).unwrap();
    assert_eq!(layout.logical_z.sparse_string(), "Z1*Z3");
    assert_eq!(layout.logical_x.sparse_string(), "X0*X1");

    let opts = RunOptions::default();
    let ext = run_extended(&c, &opts).unwrap();
    let dense = oracle::run_dense(&c, &opts, false).unwrap();
    assert_eq!(ext.branches.len(), 8);
    assert_eq!(dense.branches.len(), 8);

    for (eb, db) in ext.branches.iter().zip(&dense.branches) {
        // Frames align between the two simulators.
        assert_eq!(
            eb.state
                .outcomes()
                .iter()
                .map(|o| (o.label.clone(), o.bit))
                .collect::<Vec<_>>(),
            db.outcomes
                .iter()
                .map(|o| (o.label.clone(), o.bit))
                .collect::<Vec<_>>()
        );
        assert!((eb.probability - 0.125).abs() <= 1e-12);

        // Dense forms agree elementwise (unnormalized comparison).
        let ours = eb.state.to_dense().unwrap();
        let mut reference = db.state.density();
        reference.scale(Complex64::new(db.probability, 0.0));
        assert!(ours.max_abs_diff(&reference) <= 1e-10);

        // Frame-corrected logical fidelity is exactly 1.
        let target = frame_target(&layout, eb.state.outcomes(), PI / 4.0).unwrap();
        let f = eb.state.fidelity(&target).unwrap();
        assert!((f - 1.0).abs() <= 1e-12, "frame {:?}", eb.state.outcomes());
    }

    check_runtime(started, 5.0, "criterion 2 (four-qubit injection)");
}

#[test]
fn criterion_3_distance3_injection() {
    let started = Instant::now();
    let (c, layout) = build_surface_injection(3, Angle::PI_4).unwrap();
    let opts = RunOptions {
        enumerate: true,
        honor_postselect: true,
        ..RunOptions::default()
    };
    let ext = run_extended(&c, &opts).unwrap();
    // 9-qubit density-matrix oracle run.
    let dense = oracle::run_dense(&c, &opts, true).unwrap();
    assert!(!ext.branches.is_empty());
    assert_eq!(ext.branches.len(), dense.branches.len());

    for db in &dense.branches {
        let target = frame_target(&layout, &db.outcomes, PI / 4.0).unwrap();
        let v = target.to_dense_vector().unwrap();
        let f = db.state.fidelity_with_vector(&v);
        assert!((f - 1.0).abs() <= 1e-10, "oracle fidelity {f}");
    }
    assert!(
        (ext.accepted_probability - dense.accepted_probability).abs() <= 1e-10,
        "acceptance probability {} vs oracle {}",
        ext.accepted_probability,
        dense.accepted_probability
    );

    check_runtime(started, 60.0, "criterion 3 (distance-3 injection)");
}

#[test]
fn criterion_4_distance5_symbolic_check() {
    let started = Instant::now();
    let (c, layout) = build_surface_injection(5, Angle::PI_4).unwrap();
    // The layout logicals are the column-0 X string and the top-row Z string.
    assert_eq!(layout.logical_x.sparse_string(), "X0*X1*X2*X3*X4");
    assert_eq!(layout.logical_z.sparse_string(), "Z4*Z9*Z14*Z19*Z24");

    for seed in [0, 1, 2] {
        let (out, enumerated) = protocols::run_injection(&c, seed).unwrap();
        assert!(!enumerated, "distance 5 samples a single path");
        assert_eq!(out.branches.len(), 1);
        assert!((out.accepted_probability - 1.0).abs() <= 1e-12);
        let report =
            protocols::check_logical_form(&out.branches[0].state, &layout, PI / 4.0).unwrap();
        assert!(
            report.passed(),
            "seed {seed}: {report:?}"
        );
        assert!(report.branch_operator_sign.is_some());
        assert!(report.offdiagonal_sign.is_some());
    }

    check_runtime(started, 5.0, "criterion 4 (distance-5 symbolic check)");
}

#[test]
fn criterion_5_differential_fuzzing() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5EED_CAFE);
    for case in 0..200 {
        let c = common::random_circuit(&mut rng, 5, 30, common::RotationChoice::Mixed, 3);
        let opts = RunOptions::default();
        let ext = run_extended(&c, &opts).unwrap();
        let dense = oracle::run_dense(&c, &opts, false).unwrap();
        assert_eq!(
            ext.branches.len(),
            dense.branches.len(),
            "case {case}: branch structure mismatch\n{}",
            c.to_text()
        );
        let mut total = 0.0;
        for (eb, db) in ext.branches.iter().zip(&dense.branches) {
            assert!(
                eb.state
                    .outcomes()
                    .iter()
                    .map(|o| (o.label.as_str(), o.bit))
                    .eq(db.outcomes.iter().map(|o| (o.label.as_str(), o.bit))),
                "case {case}: outcome ordering mismatch"
            );
            let ours = eb.state.to_dense().unwrap();
            let mut reference = db.state.density();
            reference.scale(Complex64::new(db.probability, 0.0));
            let dev = ours.max_abs_diff(&reference);
            assert!(
                dev <= 1e-10,
                "case {case}: dense deviation {dev}\n{}",
                c.to_text()
            );
            total += eb.probability;
        }
        assert!(
            (total - 1.0).abs() <= 1e-12,
            "case {case}: probabilities sum to {total}"
        );
    }
    check_runtime(started, 120.0, "criterion 5 (differential fuzzing, 200 circuits)");
}

#[test]
fn criterion_6_error_sweep_consistency() {
    let started = Instant::now();
    let (c, layout) = build_surface_injection(3, Angle::PI_4).unwrap();
    let sweep = protocols::insert_error_sweep(&c, &layout, PI / 4.0, &SweepOptions::default())
        .unwrap();
    // Every post-rotation position × 9 qubits × {X, Y, Z}.
    assert_eq!(sweep.len(), protocols::post_rotation_labels(&c).len() * 9 * 3);

    for case in &sweep {
        assert_eq!(
            case.agrees,
            Some(true),
            "classification disagrees with the oracle: {case:?}"
        );
    }

    // At least one accepted-but-logical error on the X̄ or Z̄ support.
    let logical_support: Vec<usize> = (0..layout.n)
        .filter(|&q| {
            let x = PhasedPauli::single(layout.n, q, PauliKind::X).unwrap();
            let z = PhasedPauli::single(layout.n, q, PauliKind::Z).unwrap();
            layout.logical_x.omega(&z).unwrap() || layout.logical_z.omega(&x).unwrap()
        })
        .collect();
    let has_logical_on_support = sweep.iter().any(|case| {
        case.class == SweepClass::LogicalError
            && logical_support
                .iter()
                .any(|q| case.error.contains(&q.to_string()))
    });
    assert!(
        has_logical_on_support,
        "expected an undetected logical fault on the logical supports"
    );

    // At least one rejection caused by flipping a post-selected plaquette.
    let has_detected_flip = sweep.iter().any(|case| {
        if case.class != SweepClass::Rejected {
            return false;
        }
        let error = PhasedPauli::parse_sparse(layout.n, &case.error).unwrap();
        layout
            .postselect
            .iter()
            .any(|name| layout.plaquette(name).unwrap().operator.omega(&error).unwrap())
    });
    assert!(has_detected_flip, "expected a rejection from a flipped plaquette");

    check_runtime(started, 600.0, "criterion 6 (error-sweep consistency)");
}

#[test]
fn criterion_7_property_suites() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x7777);

    let random_pauli = |rng: &mut StdRng, n: usize| {
        let kinds: Vec<PauliKind> = (0..n)
            .map(|_| match rng.gen_range(0..4) {
                0 => PauliKind::I,
                1 => PauliKind::X,
                2 => PauliKind::Y,
                _ => PauliKind::Z,
            })
            .collect();
        PhasedPauli::from_kinds(&kinds, rng.gen_range(0..4))
    };

    // Group laws over 10^4 random triples, n ≤ 8.
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=8);
        let (a, b, c) = (
            random_pauli(&mut rng, n),
            random_pauli(&mut rng, n),
            random_pauli(&mut rng, n),
        );
        assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        let id = PhasedPauli::identity(n);
        assert_eq!(a.mul(&id).unwrap(), a);
        let a2 = a.mul(&a).unwrap();
        assert!(a2.mul(&a2).unwrap().is_identity());

        // ω symmetry and bilinearity.
        assert_eq!(a.omega(&b).unwrap(), b.omega(&a).unwrap());
        assert_eq!(
            a.omega(&b.mul(&c).unwrap()).unwrap(),
            a.omega(&b).unwrap() ^ a.omega(&c).unwrap()
        );

        // Conjugation preserves ω.
        let gate = common::GATES[rng.gen_range(0..common::GATES.len())];
        let targets = common::random_targets(&mut rng, gate, n);
        if targets.len() == gate.arity() {
            assert_eq!(
                a.omega(&b).unwrap(),
                a.conjugate(gate, &targets)
                    .unwrap()
                    .omega(&b.conjugate(gate, &targets).unwrap())
                    .unwrap()
            );
        }
    }

    // Tableau invariants hold after every mutation (also enforced by debug
    // assertions inside the tableau itself).
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let inits: Vec<InitBasis> = (0..n)
            .map(|_| match rng.gen_range(0..3) {
                0 => InitBasis::Zero,
                1 => InitBasis::Plus,
                _ => InitBasis::Y,
            })
            .collect();
        let mut t = GeneratorTableau::from_inits(&inits);
        let mut signs = BranchSigns::new(2, n);
        for _ in 0..10 {
            let gate = common::GATES[rng.gen_range(0..common::GATES.len())];
            let targets = common::random_targets(&mut rng, gate, n);
            if targets.len() == gate.arity() {
                t.conjugate_all(&mut signs, gate, &targets).unwrap();
                t.check_invariants().unwrap();
            }
        }
        let q = common::random_hermitian_pauli(&mut rng, n);
        if !t.anticommuting_rows(&q).is_empty() {
            t.rewrite_anticommuting(&mut signs, &q).unwrap();
            t.check_invariants().unwrap();
            assert_eq!(t.anticommuting_rows(&q).len(), 1);
        }
    }

    // Trace after normalize, double-measurement idempotence, and pivot
    // invariance on random one-rotation states.
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let c = common::random_circuit(&mut rng, n, 12, common::RotationChoice::Mixed, 1);
        let out = run_extended(&c, &RunOptions::default()).unwrap();
        for b in &out.branches {
            let mut s = b.state.clone();
            s.normalize().unwrap();
            assert!((s.trace() - 1.0).abs() <= 1e-12);

            // Measuring q and then q again: the second measurement is
            // deterministic with the same outcome.
            let fresh = common::random_hermitian_pauli(&mut rng, s.num_qubits());
            for (mut branch, _, bit) in s.measure_enumerate(&fresh, "first").unwrap() {
                let p = branch.measure_postselect(&fresh, "again", bit).unwrap();
                assert!((p - 1.0).abs() <= 1e-12);
            }

            // Pivot invariance of a fresh anticommuting measurement.
            let q = common::random_hermitian_pauli(&mut rng, s.num_qubits());
            let anti = s.tableau().anticommuting_rows(&q);
            if anti.len() >= 2 {
                let mut first = s.clone();
                first.project_with_pivot(&q, false, anti[0]).unwrap();
                let mut second = s.clone();
                second.project_with_pivot(&q, false, anti[1]).unwrap();
                let dev = first
                    .to_dense()
                    .unwrap()
                    .max_abs_diff(&second.to_dense().unwrap());
                assert!(dev <= 1e-12, "pivot choice changed the state: {dev}");
            }
        }
    }

    // Coefficient-matrix Hermiticity and dense positivity on a handful of
    // random states.
    for _ in 0..20 {
        let c = common::random_circuit(&mut rng, 4, 15, common::RotationChoice::Mixed, 2);
        let out = run_extended(&c, &RunOptions::default()).unwrap();
        for b in &out.branches {
            let rho = b.state.to_dense().unwrap();
            assert!(rho.hermiticity_error() <= 1e-12);
            assert!(rho.min_rayleigh(16, 11) >= -1e-10);
        }
    }

    check_runtime(started, 120.0, "criterion 7 (property suites)");
}

/// ν = 1 fast path: pure Clifford circuits reproduce plain stabilizer
/// simulation with exactly dyadic probabilities, matching the dense oracle.
#[test]
fn clifford_only_path_is_exact() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0xC11F);
    for case in 0..150 {
        let c = common::random_circuit(&mut rng, 5, 20, common::RotationChoice::None, 3);
        let opts = RunOptions::default();
        let ext = run_extended(&c, &opts).unwrap();
        let dense = oracle::run_dense(&c, &opts, false).unwrap();
        assert_eq!(ext.branches.len(), dense.branches.len(), "case {case}");
        for (eb, db) in ext.branches.iter().zip(&dense.branches) {
            for o in eb.state.outcomes() {
                assert!(
                    o.probability == 1.0 || o.probability == 0.5,
                    "case {case}: Clifford probability must be exactly 1 or 1/2, got {}",
                    o.probability
                );
            }
            assert!(eb
                .state
                .outcomes()
                .iter()
                .map(|o| (o.label.as_str(), o.bit))
                .eq(db.outcomes.iter().map(|o| (o.label.as_str(), o.bit))));
            assert!((eb.probability - db.probability).abs() <= 1e-12);
        }
    }
    check_runtime(started, 60.0, "clifford-only exactness");
}

/// Membership signs from the two branch groups differ exactly on the logical
/// X̄ character: a compact version of the branch-sign consistency relation.
#[test]
fn branch_sign_difference_matches_offdiagonal_character() {
    let (c, layout) = build_surface_injection(3, Angle::PI_4).unwrap();
    let opts = RunOptions {
        enumerate: true,
        honor_postselect: true,
        ..RunOptions::default()
    };
    let out = run_extended(&c, &opts).unwrap();
    let state = &out.branches[0].state;
    let t = state.tableau();
    let signs = state.branch_signs();
    for j in 0..t.num_generators() {
        let diff = signs.get(0, j) ^ signs.get(1, j);
        // The sign difference between branches is the commutation character
        // with the off-diagonal Pauli entry.
        let offdiag = &state.coefficients().entry(0, 1).p;
        assert_eq!(diff, t.stabilizer(j).omega(offdiag).unwrap(), "row {j}");
    }
    // And X̄ has opposite signs in the two branches.
    let m0 = t
        .membership_with_sign(signs.branch(0), &layout.logical_x)
        .unwrap()
        .unwrap();
    let m1 = t
        .membership_with_sign(signs.branch(1), &layout.logical_x)
        .unwrap()
        .unwrap();
    assert_ne!(m0, m1);
    assert_eq!(m0, Sign::Plus);
}
