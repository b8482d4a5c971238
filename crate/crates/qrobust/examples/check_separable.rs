//! Separability verdicts with numerical certificates.
//!
//! For total dimension ≤ 6, positivity of the partial transpose decides
//! separability exactly; the verdict carries the minimum eigenvalue (and, for
//! two qubits, the determinant fast path) as its certificate.
//!
//! ```sh
//! cargo run --example check_separable
//! ```

use num_complex::Complex64;
use qrobust::bounds::WernerParams;
use qrobust::mat::ComplexMatrix;
use qrobust::sep::{is_separable_small, partial_transpose_spectrum};
use qrobust::state::{DensityMatrix, PartyStructure, PureState};

fn verdict(label: &str, rho: &DensityMatrix) {
    let v = is_separable_small(rho).unwrap();
    println!("{label}");
    println!("  separable: {}", v.separable);
    println!("  min partial-transpose eigenvalue: {:+.6}", v.min_eigenvalue);
    if let Some(det) = v.determinant {
        println!("  det ρ^(T_B): {det:+.6e}");
    }
    println!();
}

fn main() {
    let structure = PartyStructure::bipartite(2, 2).unwrap();

    verdict(
        "maximally mixed state on [2, 2]",
        &DensityMatrix::maximally_mixed(structure.clone()),
    );

    let c = |re: f64| Complex64::new(re, 0.0);
    let bell = PureState::normalized(
        structure.clone(),
        vec![c(1.0), c(0.0), c(0.0), c(1.0)],
    )
    .unwrap();
    let bell_rho = DensityMatrix::new(
        structure.clone(),
        ComplexMatrix::outer(bell.amplitudes(), bell.amplitudes()),
    )
    .unwrap();
    verdict("Bell projector", &bell_rho);

    // Walk the Werner family across its separability threshold F = 1/2.
    for fidelity in [0.4, 0.5, 0.6] {
        verdict(
            &format!("Werner state, fidelity {fidelity}"),
            &WernerParams::new(fidelity).unwrap().state(),
        );
    }

    // The spectrum view also names the entangled eigenvector(s) behind a
    // negative partial transpose.
    let spectrum = partial_transpose_spectrum(&bell_rho).unwrap();
    println!(
        "Bell projector: partial-transpose eigenvalues {:?}",
        spectrum.eigenvalues
    );
}
