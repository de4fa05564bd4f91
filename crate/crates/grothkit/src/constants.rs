//! Universal constants of the underlying inequalities.
//!
//! `KRIVINE_UPPER` is the best proven upper bound taken as the working
//! constant throughout the crate (the true bilinear constant lies strictly
//! between `KG_LOWER` and `KRIVINE_UPPER`; its exact value is unknown).

/// ln(1 + √2); satisfies sinh(BETA) = 1.
pub const BETA: f64 = 0.881_373_587_019_542_9;

/// π / (2·ln(1+√2)) = 1.782..., Krivine's upper bound on the bilinear constant.
pub const KRIVINE_UPPER: f64 = std::f64::consts::PI / (2.0 * BETA);

/// 2·ln(1+√2)/π, the expected-value factor of the hyperplane sign rounding.
pub const KRIVINE_C: f64 = 1.0 / KRIVINE_UPPER;

/// η₀ in the best known lower bound (π/2)·exp(η₀²) = 1.676... (informational).
pub const ETA0: f64 = 0.25573;

/// (π/2)·exp(η₀²) (informational).
pub const KG_LOWER: f64 = 1.676_956_491_383_648_8;

/// Best known bounds on the complex bilinear constant (informational).
pub const KG_COMPLEX_BOUNDS: (f64, f64) = (1.338, 1.4049);

/// Sharp constant for positive semidefinite instances.
pub const PSD_CONSTANT: f64 = std::f64::consts::FRAC_PI_2;
