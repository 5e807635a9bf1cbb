//! Shared helpers for integration tests.
#![allow(dead_code)]

use extstab::circuit::{Angle, Circuit};
use extstab::pauli::{CliffordGate, InitBasis, PauliKind, PhasedPauli};
use rand::prelude::*;

pub const GATES: [CliffordGate; 9] = [
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

pub fn random_targets(rng: &mut StdRng, gate: CliffordGate, n: usize) -> Vec<usize> {
    if gate.arity() == 1 || n < 2 {
        vec![rng.gen_range(0..n)]
    } else {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n);
        while b == a {
            b = rng.gen_range(0..n);
        }
        vec![a, b]
    }
}

pub fn random_hermitian_pauli(rng: &mut StdRng, n: usize) -> PhasedPauli {
    loop {
        let kinds: Vec<PauliKind> = (0..n)
            .map(|_| match rng.gen_range(0..4) {
                0 => PauliKind::I,
                1 => PauliKind::X,
                2 => PauliKind::Y,
                _ => PauliKind::Z,
            })
            .collect();
        let p = PhasedPauli::from_kinds(&kinds, if rng.gen() { 0 } else { 2 });
        if !p.is_identity_bits() {
            return p;
        }
    }
}

pub enum RotationChoice {
    None,
    /// θ drawn from {π/4, −π/4, π/3, uniform(−π, π)}.
    Mixed,
}

/// Random circuit: random initializations, up to `max_cliffords` gates, an
/// optional single rotation at a random position, and up to
/// `max_measurements` random Pauli-product measurements.
pub fn random_circuit(
    rng: &mut StdRng,
    max_qubits: usize,
    max_cliffords: usize,
    rotation: RotationChoice,
    max_measurements: usize,
) -> Circuit {
    let n = rng.gen_range(1..=max_qubits.max(1));
    let mut c = Circuit::new(n);
    for q in 0..n {
        let basis = match rng.gen_range(0..3) {
            0 => InitBasis::Zero,
            1 => InitBasis::Plus,
            _ => InitBasis::Y,
        };
        c.init(q, basis);
    }
    let num_cliffords = rng.gen_range(0..=max_cliffords);
    let num_measurements = rng.gen_range(1..=max_measurements.max(1));
    // Event stream: gates, measurements and the rotation, shuffled.
    #[derive(Clone, Copy, PartialEq)]
    enum Event {
        Gate,
        Measure,
        Rotation,
    }
    let mut events: Vec<Event> = Vec::new();
    events.extend(std::iter::repeat_n(Event::Gate, num_cliffords));
    events.extend(std::iter::repeat_n(Event::Measure, num_measurements));
    if matches!(rotation, RotationChoice::Mixed) {
        events.push(Event::Rotation);
    }
    events.shuffle(rng);
    let mut measure_index = 0usize;
    for event in events {
        match event {
            Event::Gate => {
                let gate = GATES[rng.gen_range(0..GATES.len())];
                let targets = random_targets(rng, gate, n);
                if targets.len() == gate.arity() {
                    c.gate(gate, &targets);
                }
            }
            Event::Measure => {
                let label = format!("m{measure_index}");
                measure_index += 1;
                c.measure(&label, random_hermitian_pauli(rng, n));
            }
            Event::Rotation => {
                let theta = match rng.gen_range(0..4) {
                    0 => Angle::PI_4,
                    1 => Angle::pi_times(-1, 4),
                    2 => Angle::pi_times(1, 3),
                    _ => Angle::Radians(rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI)),
                };
                c.rz(theta, rng.gen_range(0..n));
            }
        }
    }
    c.validate().expect("generated circuit is valid");
    c
}
