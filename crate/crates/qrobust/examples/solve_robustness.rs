//! Numerical robustness for mixed states of total dimension ≤ 6.
//!
//! The solver minimizes the subtracted weight over separable directions with
//! a conditional random walk plus a projection-refinement stage, restarted
//! from independent RNG streams; the spread across restarts is reported as a
//! convergence diagnostic, and the minimizer is returned as an explicit
//! pseudomixture witness.
//!
//! ```sh
//! cargo run --example solve_robustness
//! ```

use qrobust::bounds::{werner_robustness, WernerParams};
use qrobust::sep::is_separable_small;
use qrobust::solver::{absolute_robustness, relative_robustness, SolverConfig};
use qrobust::state::DensityMatrix;

fn main() {
    let cfg = SolverConfig::default();
    println!(
        "solver config: {} restarts, ≤ {} iterations each, agreement tol {:.0e}\n",
        cfg.restarts, cfg.max_iters, cfg.agreement_tol
    );

    for fidelity in [0.6, 0.75, 0.9, 1.0] {
        let params = WernerParams::new(fidelity).unwrap();
        let rho = params.state();
        let result = absolute_robustness(&rho, &cfg).unwrap();
        println!("Werner state, fidelity {fidelity}");
        println!(
            "  solver value     = {:.6}   (closed form {:.6})",
            result.value,
            werner_robustness(&params)
        );
        println!(
            "  converged: {}, iterations: {}, restart spread: {:.2e}",
            result.converged, result.iterations, result.restart_spread
        );
        let witness = &result.pseudomixture;
        println!(
            "  witness: defect {:.2e}, ρ⁺ separable {}, ρ⁻ separable {}",
            witness.reconstruction_defect(&rho),
            is_separable_small(&witness.plus).unwrap().separable,
            is_separable_small(&witness.minus).unwrap().separable,
        );
        println!();
    }

    // Robustness relative to a fixed separable reference: how much of THIS
    // noise must be mixed in.  Against the maximally mixed state the answer
    // is the random robustness.
    let bell = WernerParams::new(1.0).unwrap().state();
    let noise = DensityMatrix::maximally_mixed(bell.structure().clone());
    let relative = relative_robustness(&bell, &noise).unwrap();
    println!("Bell state vs maximally mixed reference: t = {relative:.6}");
}
