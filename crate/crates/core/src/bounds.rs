//! Closed-form success-probability bounds.
//!
//! For per-block measures `(C_l, M_l)`:
//!
//! ```text
//! lower = (4/pi^2) (phi(r)/r) prod (1 + C_l M_l) / 2
//! upper = min{ (phi(r)/2^L) (1 + 2 floor(2^L/r^2)) prod (1 + C_l M_l), 1 }
//! ```
//!
//! and the classical interval is `f_bounds / 2^L`.

use std::f64::consts::PI;

use num_rational::Ratio;
use serde::Serialize;

use crate::numtheory::{self, FactorInstance};
use crate::protocol::ProtocolConfig;

/// `4 / pi^2`, the infinite Viete-Euler product.
pub const FOUR_OVER_PI_SQ: f64 = 4.0 / (PI * PI);

/// Prefactor used by [`upper_bound`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperBoundForm {
    /// `1 + 2 floor(2^L / r^2)`.
    #[default]
    DoubleFloor,
    /// `1 + floor(2^L / r^2)`. Not a bound in general: with no coherence at
    /// `N = 15, x = 7` it gives 34/256 against an exact 44/256.
    SingleFloor,
}

fn to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn product(measures: &[(f64, f64)], halved: bool) -> f64 {
    let d = if halved { 2.0 } else { 1.0 };
    measures.iter().map(|(c, m)| (1.0 + c * m) / d).product()
}

pub fn lower_bound(instance: &FactorInstance, measures: &[(f64, f64)]) -> f64 {
    FOUR_OVER_PI_SQ * to_f64(numtheory::totient_ratio(instance.order())) * product(measures, true)
}

/// Rational prefactor `phi(r) (1 + w floor(2^L / r^2)) / 2^L`.
pub fn upper_prefactor(instance: &FactorInstance, form: UpperBoundForm) -> Ratio<u64> {
    let r2 = instance.order() as u128 * instance.order() as u128;
    let floor = (instance.q() as u128 / r2) as u64;
    let weight = match form {
        UpperBoundForm::DoubleFloor => 2,
        UpperBoundForm::SingleFloor => 1,
    };
    Ratio::new(
        numtheory::euler_totient(instance.order()) * (1 + weight * floor),
        instance.q(),
    )
}

pub fn upper_bound(instance: &FactorInstance, measures: &[(f64, f64)], form: UpperBoundForm) -> f64 {
    (to_f64(upper_prefactor(instance, form)) * product(measures, false)).min(1.0)
}

pub fn classical_bounds_ratio(instance: &FactorInstance) -> (Ratio<u64>, Ratio<u64>) {
    let (lo, hi) = numtheory::f_bounds(instance);
    (Ratio::new(lo, instance.q()), Ratio::new(hi, instance.q()))
}

pub fn classical_bounds(instance: &FactorInstance) -> (f64, f64) {
    let (lo, hi) = classical_bounds_ratio(instance);
    (to_f64(lo), to_f64(hi))
}

/// `prod_{l=1}^{L} cos^2(pi / 2^{l+1})`.
pub fn viete_product(bits: u32) -> f64 {
    (1..=bits)
        .map(|l| (PI / 2f64.powi(l as i32 + 1)).cos().powi(2))
        .product()
}

/// The three products compared by [`product_sandwich_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductSandwich {
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
}

pub fn product_sandwich(a: &[f64]) -> ProductSandwich {
    let upper: f64 = a.iter().map(|x| (1.0 + x) / 2.0).product();
    let middle: f64 = a
        .iter()
        .enumerate()
        .map(|(i, x)| (1.0 + x * (PI / 2f64.powi(i as i32 + 1)).cos()) / 2.0)
        .product();
    ProductSandwich {
        lower: FOUR_OVER_PI_SQ * upper,
        middle,
        upper,
    }
}

/// `(4/pi^2) prod (1+a_l)/2 <= prod (1 + a_l cos(pi/2^l))/2 <= prod (1+a_l)/2`.
pub fn product_sandwich_check(a: &[f64]) -> bool {
    let s = product_sandwich(a);
    s.lower <= s.middle && s.middle <= s.upper
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub lower: f64,
    pub upper: f64,
    pub classical_lo: f64,
    pub classical_hi: f64,
    pub exact: Option<f64>,
    pub per_block_factors: Vec<(f64, f64)>,
}

impl BoundReport {
    pub fn new(config: &ProtocolConfig, exact: Option<f64>, form: UpperBoundForm) -> Self {
        let inst = config.instance();
        let measures = config.per_block_measures();
        let (classical_lo, classical_hi) = classical_bounds(inst);
        Self {
            lower: lower_bound(inst, &measures),
            upper: upper_bound(inst, &measures, form),
            classical_lo,
            classical_hi,
            exact,
            per_block_factors: measures,
        }
    }

    /// `lower <= exact <= upper` with `slack` of arithmetic headroom; `true`
    /// when no exact value is attached.
    pub fn sandwich_holds(&self, slack: f64) -> bool {
        self.exact
            .is_none_or(|e| self.lower <= e + slack && e <= self.upper + slack)
    }
}
