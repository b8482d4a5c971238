//! Closed-form analysis of pure states: Schmidt coefficients, entropy of
//! entanglement, robustness, and random robustness.
//!
//! ```sh
//! cargo run --example pure_robustness
//! ```

use num_complex::Complex64;
use qrobust::pure::{entropy_of_entanglement, pure_random_robustness, pure_robustness};
use qrobust::schmidt::schmidt_decompose;
use qrobust::state::{PartyStructure, PureState};

fn analyze(label: &str, psi: &PureState) {
    let schmidt = schmidt_decompose(psi).unwrap();
    println!("{label}");
    println!("  Schmidt coefficients: {:?}", schmidt.coefficients());
    println!(
        "  entropy of entanglement:  {:.6}",
        entropy_of_entanglement(psi).unwrap()
    );
    println!("  robustness (Σaᵢ)² − 1:    {:.6}", pure_robustness(psi).unwrap());
    println!(
        "  random robustness n·a₁a₂: {:.6}",
        pure_random_robustness(psi).unwrap()
    );
    println!();
}

fn main() {
    let c = |re: f64| Complex64::new(re, 0.0);

    // Bell state: maximal entanglement of two qubits, robustness 1.
    let bell = PureState::normalized(
        PartyStructure::bipartite(2, 2).unwrap(),
        vec![c(1.0), c(0.0), c(0.0), c(1.0)],
    )
    .unwrap();
    analyze("Bell state (|00⟩ + |11⟩)/√2 on [2, 2]", &bell);

    // A tilted superposition: less entangled than the Bell state.
    let tilted = PureState::normalized(
        PartyStructure::bipartite(2, 2).unwrap(),
        vec![c(2.0), c(0.0), c(0.0), c(1.0)],
    )
    .unwrap();
    analyze("tilted state (2|00⟩ + |11⟩)/√5 on [2, 2]", &tilted);

    // A qubit–qutrit state with three Schmidt terms.
    let qutrit = PureState::normalized(
        PartyStructure::bipartite(2, 3).unwrap(),
        vec![c(3.0), c(0.0), c(0.0), c(0.0), c(2.0), c(1.0)],
    )
    .unwrap();
    analyze("(3|00⟩ + 2|11⟩ + |12⟩)/√14 on [2, 3]", &qutrit);

    // Product states carry no entanglement at all.
    let product = PureState::basis_state(PartyStructure::bipartite(2, 2).unwrap(), &[0, 1]);
    analyze("product state |01⟩ on [2, 2]", &product);
}
