//! Built-in example systems: the two-level model and the H3+ stationarity
//! system derived from the shipped objective.

use crate::groebner::{EnergyObjective, PolySystem};
use crate::hf;
use crate::poly::{MonomialOrder, OrderKind, Polynomial, Ring};
use crate::solution::ValidityWindow;

/// Polynomializaton of the 2×2 symmetric eigenproblem
/// [[0, −1], [−1, 0]]·(x, y)ᵀ = e·(x, y)ᵀ with unit normalization:
/// {e·y + x, e·x + y, x² + y² − 1} in the ring (x, y, e).
pub fn two_level() -> PolySystem {
    let ring = Ring::new(&["x", "y", "e"]);
    let gens = ["e*y + x", "e*x + y", "x**2 + y**2 - 1"]
        .iter()
        .map(|t| Polynomial::parse(&ring, t).expect("builtin parses"))
        .collect();
    PolySystem::new(gens, MonomialOrder::new(OrderKind::DegRevLex, 3)).expect("valid system")
}

/// Stationarity system of the shipped H3+ objective, degrevlex x ≻ e ≻ R.
pub fn h3_stationarity() -> PolySystem {
    let obj = hf::reference_objective();
    let order = MonomialOrder::new(OrderKind::DegRevLex, 3);
    PolySystem::stationarity(&obj, order).expect("stationarity system")
}

/// The shipped objective as an energy evaluator (Hartree units).
pub fn h3_energy() -> EnergyObjective {
    EnergyObjective {
        poly: hf::reference_objective(),
        scale: 1e8,
    }
}

/// Validity window for the H3+ expansion: |R − 1.8| ≤ 1.2, real roots only.
pub fn h3_validity() -> ValidityWindow {
    ValidityWindow {
        var: "R".into(),
        center: 1.8,
        radius: 1.2,
    }
}
