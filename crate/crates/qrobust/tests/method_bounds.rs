//! The `--method bounds` CLI path must stay deterministic: it may never
//! fall back to the stochastic solver, no matter how often it runs.

use std::fs;
use std::path::Path;

use clap::Parser;
use num_complex::Complex64;
use qrobust::cli::{run, Cli};
use qrobust::solver::walk_invocation_count;
use qrobust::state::{DensityMatrix, PartyStructure, PureState};

/// An entangled two-qubit state outside every recognized closed-form
/// family: three parts singlet, one part |00⟩.
fn fixture_state() -> DensityMatrix {
    let s = PartyStructure::bipartite(2, 2).unwrap();
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let singlet = PureState::new(
        s.clone(),
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(r, 0.0),
            Complex64::new(-r, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    )
    .unwrap();
    let mut m = DensityMatrix::from_pure(&singlet).matrix().scale(0.75);
    let zero = PureState::basis_state(s.clone(), &[0, 0]);
    m.add_scaled(DensityMatrix::from_pure(&zero).matrix(), 0.25);
    DensityMatrix::new(s, m).unwrap()
}

fn run_mixed(path: &Path, extra: &[&str]) -> i32 {
    let mut args = vec!["qrobust", "mixed", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let cli = Cli::try_parse_from(args).expect("arguments should parse");
    let mut out = Vec::new();
    let mut err = Vec::new();
    run(&cli, &mut out, &mut err)
}

#[test]
fn bounds_method_never_reaches_the_walk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.json");
    fs::write(&path, serde_json::to_string(&fixture_state()).unwrap()).unwrap();

    let before = walk_invocation_count();
    for _ in 0..3 {
        let code = run_mixed(&path, &["--method", "bounds"]);
        assert_eq!(code, 0, "bounds run should succeed");
    }
    assert_eq!(
        walk_invocation_count(),
        before,
        "bounds runs must not invoke the stochastic solver"
    );

    // Contrast: an explicit solve on the same state does hit the walk, so
    // the counter above was live, not dead.
    run_mixed(&path, &["--method", "solve", "--restarts", "1", "--max-iters", "2000"]);
    assert!(
        walk_invocation_count() > before,
        "solve run should invoke the stochastic solver"
    );
}
