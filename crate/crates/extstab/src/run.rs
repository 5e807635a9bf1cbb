//! Circuit executor for the decomposition simulator.
//!
//! Walks a [`Circuit`] over an [`ExtendedState`], resolving measurements
//! according to [`RunOptions`]: pinned outcomes are projected, unpinned ones
//! are either enumerated (depth-one breadth-first, deterministic ordering) or
//! sampled with the seeded generator. States stay unnormalized along the way,
//! so a branch's trace equals its joint path probability.

use crate::circuit::{Circuit, Instruction};
use crate::error::{Error, Result};
use crate::extended::{ExtendedState, PROB_EPS};
use crate::oracle::{self, RunOptions};
use rand::prelude::*;

/// One surviving execution path.
#[derive(Clone, Debug)]
pub struct Branch {
    pub state: ExtendedState,
    /// Joint probability of the path (product of conditional probabilities).
    pub probability: f64,
    /// Product of the post-selected conditionals only: the probability that
    /// this path survives its pinned measurements.
    pub postselect_probability: f64,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub branches: Vec<Branch>,
    /// Probability mass that survived post-selection. In enumerate mode this
    /// marginalizes over all surviving paths; in sampling mode it is the
    /// acceptance probability conditioned on the sampled frame.
    pub accepted_probability: f64,
}

impl RunOutput {
    /// Did every path die on a post-selected measurement?
    pub fn rejected(&self) -> bool {
        self.branches.is_empty()
    }
}

/// Execute `c` on the decomposition simulator.
pub fn run_extended(c: &Circuit, opts: &RunOptions) -> Result<RunOutput> {
    c.validate()?;
    oracle::check_branch_budget(c, opts)?;
    let inits = oracle::gather_inits(c);
    let errors = oracle::gather_errors(c);
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let mut branches = vec![Branch {
        state: ExtendedState::from_stabilizer(&inits),
        probability: 1.0,
        postselect_probability: 1.0,
    }];
    for instr in &c.instructions {
        match instr {
            Instruction::Init { .. } | Instruction::InsertError { .. } => {}
            Instruction::Gate { gate, targets } => {
                for b in &mut branches {
                    b.state.apply_clifford(*gate, targets)?;
                }
            }
            Instruction::Conditioned {
                condition,
                gate,
                targets,
            } => {
                for b in &mut branches {
                    let bit = b.state.outcome_bit(condition).ok_or_else(|| {
                        Error::Invalid(format!("condition `{condition}` not yet measured"))
                    })?;
                    if bit {
                        b.state.apply_clifford(*gate, targets)?;
                    }
                }
            }
            Instruction::NonClifford { theta, qubit } => {
                for b in &mut branches {
                    b.state.apply_rz(theta.radians(), *qubit)?;
                }
            }
            Instruction::Measure {
                label,
                pauli,
                postselect,
            } => {
                for b in &mut branches {
                    if let Some(errs) = errors.get(label) {
                        for e in errs {
                            b.state.apply_pauli_error(e)?;
                        }
                    }
                }
                let mut next = Vec::with_capacity(branches.len());
                for mut b in branches {
                    let pinned = if opts.honor_postselect { *postselect } else { None };
                    match pinned {
                        Some(bit) => match b.state.measure_postselect(pauli, label, bit) {
                            Ok(p) => {
                                b.probability *= p;
                                b.postselect_probability *= p;
                                next.push(b);
                            }
                            Err(Error::Rejected { .. }) => {}
                            Err(e) => return Err(e),
                        },
                        None if opts.enumerate => {
                            for (state, p, _) in b.state.measure_enumerate(pauli, label)? {
                                next.push(Branch {
                                    state,
                                    probability: b.probability * p,
                                    postselect_probability: b.postselect_probability,
                                });
                            }
                        }
                        None => {
                            let (_, p) = b.state.measure_sample(pauli, label, &mut rng)?;
                            b.probability *= p;
                            next.push(b);
                        }
                    }
                }
                branches = next;
            }
        }
    }
    branches.retain(|b| b.probability >= PROB_EPS);
    let accepted_probability = if opts.enumerate {
        branches.iter().map(|b| b.probability).sum()
    } else {
        branches
            .iter()
            .map(|b| b.postselect_probability)
            .sum::<f64>()
    };
    Ok(RunOutput {
        branches,
        accepted_probability,
    })
}
