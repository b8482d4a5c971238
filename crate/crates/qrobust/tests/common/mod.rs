//! Shared helpers for the acceptance suite.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use qrobust::state::{PartyStructure, PureState};
use rand::Rng;
use rand_distr::StandardNormal;

/// A Haar-random pure state: complex Gaussian amplitudes, normalized.
pub fn random_pure(structure: PartyStructure, rng: &mut impl Rng) -> PureState {
    let n = structure.total_dim();
    let amplitudes: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    PureState::normalized(structure, amplitudes).expect("gaussian amplitudes normalize")
}

/// A Haar-random unit vector in ℂⁿ.
pub fn random_unit_vector(n: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let raw: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    raw.into_iter().map(|z| z / norm).collect()
}

/// Wall-clock bookkeeping for one acceptance criterion.
///
/// `begin` starts the clock; `pass` prints the criterion's result line and
/// panics if the run exceeded its budget.  Assertion failures inside the
/// criterion body panic with their own message, which serves as the FAIL
/// line for that criterion.
pub struct Criterion {
    number: usize,
    budget: Duration,
    start: Instant,
}

impl Criterion {
    pub fn begin(number: usize, budget_secs: u64) -> Self {
        Self {
            number,
            budget: Duration::from_secs(budget_secs),
            start: Instant::now(),
        }
    }

    pub fn pass(self, detail: &str) {
        let elapsed = self.start.elapsed();
        if elapsed <= self.budget {
            println!(
                "criterion {}: PASS ({detail}; {:.1}s of {:.0}s budget)",
                self.number,
                elapsed.as_secs_f64(),
                self.budget.as_secs_f64()
            );
        } else {
            println!(
                "criterion {}: FAIL (checks passed but exceeded the {:.0}s budget: {:.1}s)",
                self.number,
                self.budget.as_secs_f64(),
                elapsed.as_secs_f64()
            );
            panic!(
                "criterion {} exceeded its {:.0}s budget ({:.1}s)",
                self.number,
                self.budget.as_secs_f64(),
                elapsed.as_secs_f64()
            );
        }
    }
}
