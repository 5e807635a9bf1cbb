//! Circuit representation and its line-oriented text format.
//!
//! The grammar is one instruction per line; `#` starts a comment:
//!
//! ```text
//! qubits 2
//! init 0 +            # bases: 0, +, Y
//! init 1 +
//! rz pi/4 1           # angles are rational multiples of pi, or decimals
//! cnot 0 1
//! mpp alpha Z1        # Pauli products in sparse form, optional leading -
//! cif alpha s 0       # apply gate when the labelled outcome was 1
//! error X1@alpha      # insert a Pauli error just before instruction `alpha`
//! ```
//!
//! `t q` is shorthand for `rz pi/4 q`. Measurements may carry
//! `postselect=0|1`. Labels are unique; a conditioned gate must reference an
//! earlier measurement. At most one non-Clifford rotation is allowed.

use crate::error::{Error, Result};
use crate::pauli::{CliffordGate, InitBasis, PhasedPauli};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An angle, kept exact when written as a rational multiple of π.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Angle {
    /// num·π / den with den > 0 and gcd(num, den) = 1.
    PiTimes(i64, u64),
    Radians(f64),
}

impl Angle {
    pub const ZERO: Angle = Angle::PiTimes(0, 1);
    pub const PI_4: Angle = Angle::PiTimes(1, 4);

    pub fn pi_times(num: i64, den: u64) -> Self {
        assert!(den > 0);
        if num == 0 {
            return Angle::PiTimes(0, 1);
        }
        let g = gcd(num.unsigned_abs(), den);
        Angle::PiTimes(num / g as i64, den / g)
    }

    pub fn radians(&self) -> f64 {
        match self {
            Angle::PiTimes(num, den) => *num as f64 * std::f64::consts::PI / *den as f64,
            Angle::Radians(r) => *r,
        }
    }

    fn parse(text: &str) -> Option<Self> {
        let t = text.trim();
        if let Some(idx) = t.find("pi") {
            let (pre, post) = (&t[..idx], &t[idx + 2..]);
            let num: i64 = match pre {
                "" | "+" => 1,
                "-" => -1,
                _ => pre.parse().ok()?,
            };
            let den: u64 = match post.strip_prefix('/') {
                Some(d) => d.parse().ok()?,
                None if post.is_empty() => 1,
                None => return None,
            };
            if den == 0 {
                return None;
            }
            Some(Angle::pi_times(num, den))
        } else if t == "0" {
            Some(Angle::ZERO)
        } else {
            t.parse().ok().map(Angle::Radians)
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::PiTimes(0, _) => write!(f, "0"),
            Angle::PiTimes(1, 1) => write!(f, "pi"),
            Angle::PiTimes(-1, 1) => write!(f, "-pi"),
            Angle::PiTimes(1, den) => write!(f, "pi/{den}"),
            Angle::PiTimes(-1, den) => write!(f, "-pi/{den}"),
            Angle::PiTimes(num, 1) => write!(f, "{num}pi"),
            Angle::PiTimes(num, den) => write!(f, "{num}pi/{den}"),
            Angle::Radians(r) => write!(f, "{r:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Instruction {
    Init {
        qubit: usize,
        basis: InitBasis,
    },
    Gate {
        gate: CliffordGate,
        targets: Vec<usize>,
    },
    NonClifford {
        theta: Angle,
        qubit: usize,
    },
    Measure {
        label: String,
        pauli: PhasedPauli,
        postselect: Option<bool>,
    },
    Conditioned {
        condition: String,
        gate: CliffordGate,
        targets: Vec<usize>,
    },
    InsertError {
        pauli: PhasedPauli,
        before: String,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub n: usize,
    pub instructions: Vec<Instruction>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            instructions: Vec::new(),
        }
    }

    pub fn init(&mut self, qubit: usize, basis: InitBasis) -> &mut Self {
        self.instructions.push(Instruction::Init { qubit, basis });
        self
    }

    pub fn gate(&mut self, gate: CliffordGate, targets: &[usize]) -> &mut Self {
        self.instructions.push(Instruction::Gate {
            gate,
            targets: targets.to_vec(),
        });
        self
    }

    pub fn rz(&mut self, theta: Angle, qubit: usize) -> &mut Self {
        self.instructions.push(Instruction::NonClifford { theta, qubit });
        self
    }

    pub fn measure(&mut self, label: &str, pauli: PhasedPauli) -> &mut Self {
        self.instructions.push(Instruction::Measure {
            label: label.to_string(),
            pauli,
            postselect: None,
        });
        self
    }

    pub fn measure_postselect(&mut self, label: &str, pauli: PhasedPauli, bit: bool) -> &mut Self {
        self.instructions.push(Instruction::Measure {
            label: label.to_string(),
            pauli,
            postselect: Some(bit),
        });
        self
    }

    pub fn conditioned(&mut self, condition: &str, gate: CliffordGate, targets: &[usize]) -> &mut Self {
        self.instructions.push(Instruction::Conditioned {
            condition: condition.to_string(),
            gate,
            targets: targets.to_vec(),
        });
        self
    }

    pub fn insert_error(&mut self, pauli: PhasedPauli, before: &str) -> &mut Self {
        self.instructions.push(Instruction::InsertError {
            pauli,
            before: before.to_string(),
        });
        self
    }

    pub fn measurement_labels(&self) -> Vec<&str> {
        self.instructions
            .iter()
            .filter_map(|i| match i {
                Instruction::Measure { label, .. } => Some(label.as_str()),
                _ => None,
            })
            .collect()
    }

    pub fn count_nonclifford(&self) -> usize {
        self.instructions
            .iter()
            .filter(|i| matches!(i, Instruction::NonClifford { .. }))
            .count()
    }

    pub fn count_conditioned(&self) -> usize {
        self.instructions
            .iter()
            .filter(|i| matches!(i, Instruction::Conditioned { .. }))
            .count()
    }

    /// Structural validation: target ranges, unique labels, condition and
    /// error references, at most one non-Clifford rotation.
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Invalid("circuit has no qubits".into()));
        }
        if self.count_nonclifford() > 1 {
            return Err(Error::Invalid(
                "at most one non-Clifford rotation is supported".into(),
            ));
        }
        let mut seen_labels: Vec<&str> = Vec::new();
        for instr in &self.instructions {
            match instr {
                Instruction::Init { qubit, .. } => {
                    if *qubit >= self.n {
                        return Err(Error::QubitOutOfRange(*qubit, self.n));
                    }
                }
                Instruction::Gate { gate, targets }
                | Instruction::Conditioned { gate, targets, .. } => {
                    gate.check_targets(self.n, targets)?;
                    if let Instruction::Conditioned { condition, .. } = instr {
                        if !seen_labels.contains(&condition.as_str()) {
                            return Err(Error::Invalid(format!(
                                "conditioned gate references unknown or later label `{condition}`"
                            )));
                        }
                    }
                }
                Instruction::NonClifford { qubit, .. } => {
                    if *qubit >= self.n {
                        return Err(Error::QubitOutOfRange(*qubit, self.n));
                    }
                }
                Instruction::Measure { label, pauli, .. } => {
                    if pauli.num_qubits() != self.n {
                        return Err(Error::DimensionMismatch(pauli.num_qubits(), self.n));
                    }
                    if !pauli.is_hermitian() {
                        return Err(Error::NonHermitian(pauli.phase_exp()));
                    }
                    if pauli.is_identity_bits() {
                        return Err(Error::TrivialMeasurement);
                    }
                    if seen_labels.contains(&label.as_str()) {
                        return Err(Error::Invalid(format!("duplicate label `{label}`")));
                    }
                    seen_labels.push(label);
                }
                Instruction::InsertError { pauli, before } => {
                    if pauli.num_qubits() != self.n {
                        return Err(Error::DimensionMismatch(pauli.num_qubits(), self.n));
                    }
                    let exists = self.instructions.iter().any(|i| {
                        matches!(i, Instruction::Measure { label, .. } if label == before)
                    });
                    if !exists {
                        return Err(Error::Invalid(format!(
                            "error insertion references unknown label `{before}`"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Canonical text form; parsing it back yields the same instructions.
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.n);
        for instr in &self.instructions {
            match instr {
                Instruction::Init { qubit, basis } => {
                    let b = match basis {
                        InitBasis::Zero => "0",
                        InitBasis::Plus => "+",
                        InitBasis::Y => "Y",
                    };
                    out.push_str(&format!("init {qubit} {b}\n"));
                }
                Instruction::Gate { gate, targets } => {
                    out.push_str(&format!("{} {}\n", gate, join(targets)));
                }
                Instruction::NonClifford { theta, qubit } => {
                    out.push_str(&format!("rz {theta} {qubit}\n"));
                }
                Instruction::Measure {
                    label,
                    pauli,
                    postselect,
                } => {
                    let ps = match postselect {
                        Some(bit) => format!(" postselect={}", u8::from(*bit)),
                        None => String::new(),
                    };
                    out.push_str(&format!("mpp {label} {}{}\n", pauli.sparse_string(), ps));
                }
                Instruction::Conditioned {
                    condition,
                    gate,
                    targets,
                } => {
                    out.push_str(&format!("cif {condition} {} {}\n", gate, join(targets)));
                }
                Instruction::InsertError { pauli, before } => {
                    out.push_str(&format!("error {}@{}\n", pauli.sparse_string(), before));
                }
            }
        }
        out
    }

    /// Parse the text format. Errors carry 1-based line and column numbers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut circuit: Option<Circuit> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let words = words_with_columns(content);
            if words.is_empty() {
                continue;
            }
            let (head, head_col) = words[0];
            let rest = &words[1..];
            if head == "qubits" {
                if circuit.is_some() {
                    return Err(parse_err(line, head_col, "duplicate `qubits` line"));
                }
                let n = parse_num(line, rest.first().copied(), head_col)?;
                if n == 0 {
                    return Err(parse_err(line, rest[0].1, "qubit count must be positive"));
                }
                circuit = Some(Circuit::new(n));
                continue;
            }
            let c = circuit
                .as_mut()
                .ok_or_else(|| parse_err(line, head_col, "`qubits N` must come first"))?;
            let n = c.n;
            match head {
                "init" => {
                    if rest.len() != 2 {
                        return Err(parse_err(line, head_col, "usage: init QUBIT 0|+|Y"));
                    }
                    let qubit = parse_num(line, Some(rest[0]), head_col)?;
                    let basis = match rest[1].0 {
                        "0" => InitBasis::Zero,
                        "+" => InitBasis::Plus,
                        "Y" | "y" => InitBasis::Y,
                        other => {
                            return Err(parse_err(
                                line,
                                rest[1].1,
                                &format!("unknown basis `{other}`"),
                            ))
                        }
                    };
                    c.init(qubit, basis);
                }
                "rz" => {
                    if rest.len() != 2 {
                        return Err(parse_err(line, head_col, "usage: rz ANGLE QUBIT"));
                    }
                    let theta = Angle::parse(rest[0].0).ok_or_else(|| {
                        parse_err(line, rest[0].1, &format!("bad angle `{}`", rest[0].0))
                    })?;
                    let qubit = parse_num(line, Some(rest[1]), head_col)?;
                    c.rz(theta, qubit);
                }
                "t" => {
                    if rest.len() != 1 {
                        return Err(parse_err(line, head_col, "usage: t QUBIT"));
                    }
                    let qubit = parse_num(line, Some(rest[0]), head_col)?;
                    c.rz(Angle::PI_4, qubit);
                }
                "mpp" => {
                    if rest.len() < 2 || rest.len() > 3 {
                        return Err(parse_err(
                            line,
                            head_col,
                            "usage: mpp LABEL PAULI [postselect=0|1]",
                        ));
                    }
                    let label = rest[0].0.to_string();
                    let pauli = PhasedPauli::parse_sparse(n, rest[1].0)
                        .map_err(|e| parse_err(line, rest[1].1, &e.to_string()))?;
                    let postselect = match rest.get(2) {
                        None => None,
                        Some(("postselect=0", _)) => Some(false),
                        Some(("postselect=1", _)) => Some(true),
                        Some((other, col)) => {
                            return Err(parse_err(line, *col, &format!("bad option `{other}`")))
                        }
                    };
                    c.instructions.push(Instruction::Measure {
                        label,
                        pauli,
                        postselect,
                    });
                }
                "cif" => {
                    if rest.len() < 3 {
                        return Err(parse_err(line, head_col, "usage: cif LABEL GATE TARGETS..."));
                    }
                    let condition = rest[0].0.to_string();
                    let gate = CliffordGate::from_name(rest[1].0).ok_or_else(|| {
                        parse_err(line, rest[1].1, &format!("unknown gate `{}`", rest[1].0))
                    })?;
                    let targets = parse_targets(line, &rest[2..])?;
                    c.instructions.push(Instruction::Conditioned {
                        condition,
                        gate,
                        targets,
                    });
                }
                "error" => {
                    if rest.len() != 1 {
                        return Err(parse_err(line, head_col, "usage: error PAULI@LABEL"));
                    }
                    let (pauli_text, label) = rest[0]
                        .0
                        .split_once('@')
                        .ok_or_else(|| parse_err(line, rest[0].1, "usage: error PAULI@LABEL"))?;
                    let pauli = PhasedPauli::parse_sparse(n, pauli_text)
                        .map_err(|e| parse_err(line, rest[0].1, &e.to_string()))?;
                    c.insert_error(pauli, label);
                }
                gate_name => {
                    let gate = CliffordGate::from_name(gate_name).ok_or_else(|| {
                        parse_err(line, head_col, &format!("unknown instruction `{gate_name}`"))
                    })?;
                    let targets = parse_targets(line, rest)?;
                    c.instructions.push(Instruction::Gate { gate, targets });
                }
            }
        }
        let circuit = circuit.ok_or_else(|| parse_err(0, 0, "missing `qubits N` line"))?;
        circuit.validate()?;
        Ok(circuit)
    }
}

/// Whitespace-separated words of a line with their 1-based start columns.
fn words_with_columns(line: &str) -> Vec<(&str, usize)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((&line[s..i], s + 1));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((&line[s..], s + 1));
    }
    out
}

fn join(targets: &[usize]) -> String {
    targets
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_err(line: usize, col: usize, msg: &str) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.to_string(),
    }
}

fn parse_num(line: usize, word: Option<(&str, usize)>, fallback_col: usize) -> Result<usize> {
    let (text, col) = word.ok_or_else(|| parse_err(line, fallback_col, "missing number"))?;
    text.parse()
        .map_err(|_| parse_err(line, col, &format!("expected a number, got `{text}`")))
}

fn parse_targets(line: usize, words: &[(&str, usize)]) -> Result<Vec<usize>> {
    words
        .iter()
        .map(|w| parse_num(line, Some(*w), w.1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TELEPORT: &str = "\
qubits 2
init 0 +
init 1 +
t 1
cnot 0 1
mpp alpha Z1
cif alpha s 0
";

    #[test]
    fn parse_and_print_round_trip() {
        let c = Circuit::parse(TELEPORT).unwrap();
        assert_eq!(c.n, 2);
        assert_eq!(c.count_nonclifford(), 1);
        assert_eq!(c.count_conditioned(), 1);
        let printed = c.to_text();
        let again = Circuit::parse(&printed).unwrap();
        assert_eq!(c, again);
        // The t sugar canonicalizes to rz pi/4.
        assert!(printed.contains("rz pi/4 1"));
    }

    #[test]
    fn angles_parse_exactly() {
        assert_eq!(Angle::parse("pi/4"), Some(Angle::PiTimes(1, 4)));
        assert_eq!(Angle::parse("-pi/4"), Some(Angle::PiTimes(-1, 4)));
        assert_eq!(Angle::parse("2pi/3"), Some(Angle::PiTimes(2, 3)));
        assert_eq!(Angle::parse("pi"), Some(Angle::PiTimes(1, 1)));
        assert_eq!(Angle::parse("-2pi/8"), Some(Angle::PiTimes(-1, 4)));
        assert_eq!(Angle::parse("0"), Some(Angle::ZERO));
        assert_eq!(Angle::parse("0.5"), Some(Angle::Radians(0.5)));
        assert_eq!(Angle::parse("pi/0"), None);
        assert_eq!(Angle::parse("florp"), None);
        assert!((Angle::PiTimes(1, 4).radians() - std::f64::consts::FRAC_PI_4).abs() < 1e-18);
    }

    #[test]
    fn angle_display_round_trips() {
        for a in [
            Angle::ZERO,
            Angle::PI_4,
            Angle::pi_times(-1, 4),
            Angle::pi_times(3, 4),
            Angle::pi_times(2, 1),
            Angle::pi_times(-5, 7),
            Angle::Radians(0.12345678901234567),
        ] {
            assert_eq!(Angle::parse(&a.to_string()), Some(a), "{a}");
        }
    }

    #[test]
    fn two_rotations_rejected_at_parse() {
        let text = "qubits 1\ninit 0 +\nt 0\nt 0\n";
        match Circuit::parse(text) {
            Err(Error::Invalid(msg)) => assert!(msg.contains("one non-Clifford")),
            other => panic!("expected invalid, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_and_column() {
        let text = "qubits 1\ninit 0 +\nfrobnicate 0\n";
        match Circuit::parse(text) {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(col, 1);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        // Bad tokens point at themselves.
        let text = "qubits 1\ninit 0 +\nrz florp 0\n";
        match Circuit::parse(text) {
            Err(Error::Parse { line, col, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(col, 4);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn conditioned_must_reference_earlier_label() {
        let text = "qubits 1\ninit 0 +\ncif alpha s 0\nmpp alpha Z0\n";
        assert!(Circuit::parse(text).is_err());
    }

    #[test]
    fn error_instruction_round_trips() {
        let text = "qubits 2\ninit 0 +\nmpp m Z0*Z1 postselect=0\nerror X1@m\n";
        let c = Circuit::parse(text).unwrap();
        let again = Circuit::parse(&c.to_text()).unwrap();
        assert_eq!(c, again);
        match &c.instructions[2] {
            Instruction::InsertError { pauli, before } => {
                assert_eq!(before, "m");
                assert_eq!(pauli.sparse_string(), "X1");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn error_with_unknown_label_rejected() {
        let text = "qubits 1\ninit 0 +\nmpp m Z0\nerror X0@nope\n";
        assert!(Circuit::parse(text).is_err());
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let text = "# header\n\nqubits 1\ninit 0 + # plus state\nmpp m Z0\n";
        let c = Circuit::parse(text).unwrap();
        assert_eq!(c.instructions.len(), 2);
    }

    #[test]
    fn postselect_field_parses() {
        let text = "qubits 1\ninit 0 +\nmpp m X0 postselect=1\n";
        let c = Circuit::parse(text).unwrap();
        match &c.instructions[1] {
            Instruction::Measure { postselect, .. } => assert_eq!(*postselect, Some(true)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
