//! Golden-file test for the versioned state snapshot format.

use extstab::oracle::RunOptions;
use extstab::protocols::build_t_teleportation;
use extstab::run::run_extended;

/// The α=0 teleportation branch, normalized, as frozen JSON. A change here
/// means the snapshot schema or the simulation itself changed; bump the
/// schema version when that is intentional.
const GOLDEN: &str = include_str!("golden/teleport_alpha0.json");

#[test]
fn teleportation_snapshot_matches_golden_file() {
    let c = build_t_teleportation();
    let out = run_extended(&c, &RunOptions::default()).unwrap();
    let branch = out
        .branches
        .iter()
        .find(|b| !b.state.outcomes()[0].bit)
        .unwrap();
    let mut state = branch.state.clone();
    state.normalize().unwrap();
    let json = serde_json::to_string_pretty(&state.snapshot()).unwrap();
    assert_eq!(json.trim(), GOLDEN.trim());
}

#[test]
fn snapshot_parses_back() {
    let golden: extstab::extended::Snapshot = serde_json::from_str(GOLDEN).unwrap();
    assert_eq!(golden.version, 1);
    assert_eq!(golden.num_qubits, 2);
    assert_eq!(golden.num_branches, 2);
    assert_eq!(golden.stabilizers.len(), 2);
}
