//! Computable robustness bounds for mixed states.
//!
//! For a density matrix the exact robustness needs the numerical solver, but
//! cheap spectral quantities already bracket it: negativity of the partial
//! transpose from below; local ranks, support restrictions, the two-qubit
//! eigenvector angle, and concurrence from above.  `combined_interval` takes
//! the best of each side and reports where the winners came from.
//!
//! ```sh
//! cargo run --example mixed_bounds
//! ```

use qrobust::bounds::{
    combined_interval, concurrence, diagonal_family_robustness, random_robustness_bounds,
    werner_robustness, DiagonalFamilyParams, WernerParams,
};
use qrobust::state::DensityMatrix;

fn show(label: &str, rho: &DensityMatrix, exact: Option<f64>) {
    let interval = combined_interval(rho).unwrap();
    println!("{label}");
    println!(
        "  robustness ∈ [{:.6}, {:.6}]   (lower: {}, upper: {})",
        interval.lower, interval.upper, interval.lower_source, interval.upper_source
    );
    if let Some(value) = exact {
        println!("  closed form: {value:.6}");
        assert!(interval.lower <= value + 1e-9 && value <= interval.upper + 1e-9);
    }
    if let Ok(c) = concurrence(rho) {
        println!("  concurrence: {c:.6}");
    }
    let random = random_robustness_bounds(rho).unwrap();
    println!(
        "  random robustness ∈ [{:.6}, {:.6}]",
        random.lower, random.upper
    );
    println!();
}

fn main() {
    // Werner states: the closed form R = max(0, 2F − 1) calibrates the bounds.
    for fidelity in [0.5, 0.75, 1.0] {
        let params = WernerParams::new(fidelity).unwrap();
        show(
            &format!("Werner state, fidelity {fidelity}"),
            &params.state(),
            Some(werner_robustness(&params)),
        );
    }

    // A diagonal-plus-pure family member with its own closed form.
    let params = DiagonalFamilyParams::new(0.4, [0.3, 0.4, 0.3], 0.6).unwrap();
    show(
        "diagonal family, p = 0.4, q = (0.3, 0.4, 0.3), θ = 0.6",
        &params.state(),
        Some(diagonal_family_robustness(&params)),
    );
}
