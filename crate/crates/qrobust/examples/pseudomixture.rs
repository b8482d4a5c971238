//! Explicit local pseudomixtures for pure states.
//!
//! Every state ρ can be written ρ = (1 + t)ρ⁺ − tρ⁻ with both parts
//! separable; the minimal weight t is the robustness.  For pure states the
//! optimal construction is known in closed form, and ρ⁺ decomposes further
//! into a finite ensemble of product vectors with engineered phases.
//!
//! ```sh
//! cargo run --example pseudomixture
//! ```

use num_complex::Complex64;
use qrobust::pure::{
    identity_decomposition, maximally_mixed_pseudomixture, optimal_pseudomixture,
    phase_product_ensemble,
};
use qrobust::sep::is_separable_small;
use qrobust::state::{DensityMatrix, PartyStructure, PureState};

fn main() {
    let c = |re: f64| Complex64::new(re, 0.0);
    let psi = PureState::normalized(
        PartyStructure::bipartite(2, 2).unwrap(),
        vec![c(2.0), c(0.0), c(0.0), c(1.0)],
    )
    .unwrap();
    let rho = DensityMatrix::new(
        psi.structure().clone(),
        qrobust::mat::ComplexMatrix::outer(psi.amplitudes(), psi.amplitudes()),
    )
    .unwrap();

    // The optimal pseudomixture: subtracted weight t equals the robustness.
    let pm = optimal_pseudomixture(&psi).unwrap();
    println!("optimal pseudomixture of (2|00⟩ + |11⟩)/√5");
    println!("  t (robustness)          = {:.12}", pm.t);
    println!("  reconstruction defect   = {:.3e}", pm.reconstruction_defect(&rho));
    println!(
        "  ρ⁺ separable: {}, ρ⁻ separable: {}",
        is_separable_small(&pm.plus).unwrap().separable,
        is_separable_small(&pm.minus).unwrap().separable,
    );

    // ρ⁺ as an explicit uniform mixture of product vectors with phases
    // stepped by powers of two: 2^m − 1 vectors for m Schmidt terms.
    let ensemble = phase_product_ensemble(&psi).unwrap();
    println!("\nproduct-vector ensemble for ρ⁺");
    println!("  vectors: {}", ensemble.len());
    println!("  phase exponents αⱼ = 2^(j−1) − 1: {:?}", ensemble.alphas());
    let mixture = ensemble.mixture().unwrap();
    let defect: f64 = mixture
        .matrix()
        .entries()
        .iter()
        .zip(pm.plus.matrix().entries())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    println!("  max |mixture − ρ⁺| entry: {defect:.3e}");

    // The variant that subtracts the maximally mixed state instead: a larger
    // weight (the random robustness), but a universal noise model.
    let mm = maximally_mixed_pseudomixture(&psi).unwrap();
    println!("\nmaximally mixed variant");
    println!("  t (random robustness)   = {:.12}", mm.t);
    println!("  reconstruction defect   = {:.3e}", mm.reconstruction_defect(&rho));

    // Behind it: the identity splits into the optimal subtracted part plus a
    // separable residual.
    let split = identity_decomposition(&psi).unwrap();
    println!("\nidentity decomposition I/n = w·ρ⁻ + (1 − w)·ρ̃");
    println!("  w = {:.12}", split.subtracted_weight);
    println!(
        "  residual separable: {}",
        is_separable_small(&split.residual).unwrap().separable
    );
}
