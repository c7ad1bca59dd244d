//! Integer arithmetic for order finding.
//!
//! Every comparison between fractions is done by cross-multiplication in
//! `i128`/`u128`; no floating point enters a membership test. The modulus is
//! capped below `2^31`, so `q = 2^L < 2N^2 < 2^63` and all products of two
//! operands stay well inside 128 bits.

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::{Error, Result};

/// Largest supported modulus (exclusive).
pub const MODULUS_CAP: u64 = 1 << 31;

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Least `r >= 1` with `x^r = 1 (mod n)`, by iterated modular multiplication.
pub fn multiplicative_order(n: u64, x: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::ModulusTooSmall(n));
    }
    if n >= MODULUS_CAP {
        return Err(Error::ModulusTooLarge(n));
    }
    if x == 0 || x >= n {
        return Err(Error::BaseOutOfRange { x, n });
    }
    if gcd(x, n) != 1 {
        return Err(Error::NotCoprime { x, n });
    }
    let mut value = x;
    let mut r = 1;
    while value != 1 {
        value = value * x % n;
        r += 1;
    }
    Ok(r)
}

/// Euler's totient by direct gcd count, with `phi(1) = 1`.
pub fn euler_totient(r: u64) -> u64 {
    if r == 1 {
        return 1;
    }
    (1..=r).filter(|&j| gcd(j, r) == 1).count() as u64
}

/// `phi(r) / r` in lowest terms.
pub fn totient_ratio(r: u64) -> Ratio<u64> {
    Ratio::new(euler_totient(r), r)
}

/// The unique `L` with `N^2 < 2^L < 2N^2`, if one exists.
pub fn canonical_bits(n: u64) -> Option<u32> {
    if n < 2 {
        return None;
    }
    let n2 = (n as u128) * (n as u128);
    // Smallest power of two strictly above N^2.
    let bits = 128 - n2.leading_zeros();
    let q = 1u128 << bits;
    (q > n2 && q < 2 * n2 && bits < 64).then_some(bits)
}

/// The pair `(N, x)` together with its order `r` and control-register size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FactorInstance {
    n: u64,
    x: u64,
    order: u64,
    bits: u32,
}

impl FactorInstance {
    /// Instance with the canonical register size `N^2 < 2^L < 2N^2`.
    pub fn new(n: u64, x: u64) -> Result<Self> {
        let order = multiplicative_order(n, x)?;
        let bits = canonical_bits(n).ok_or(Error::NoCanonicalRegister(n))?;
        Ok(Self { n, x, order, bits })
    }

    /// Test-mode instance: any `L >= 1` is accepted.
    pub fn with_bits(n: u64, x: u64, bits: u32) -> Result<Self> {
        let order = multiplicative_order(n, x)?;
        if bits == 0 || bits > 62 {
            return Err(Error::InvalidRegister {
                n,
                bits,
                canonical: canonical_bits(n),
            });
        }
        Ok(Self { n, x, order, bits })
    }

    /// Canonical instance when `bits` is `None`; an explicit `bits` must be
    /// canonical unless `test_mode` is set.
    pub fn build(n: u64, x: u64, bits: Option<u32>, test_mode: bool) -> Result<Self> {
        match bits {
            None => Self::new(n, x),
            Some(b) if test_mode => Self::with_bits(n, x, b),
            Some(b) => {
                let canonical = canonical_bits(n);
                if canonical == Some(b) {
                    Self::new(n, x)
                } else {
                    Err(Error::InvalidRegister {
                        n,
                        bits: b,
                        canonical,
                    })
                }
            }
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// `q = 2^L`.
    pub fn q(&self) -> u64 {
        1u64 << self.bits
    }

    pub fn is_canonical(&self) -> bool {
        canonical_bits(self.n) == Some(self.bits)
    }
}

/// Non-trivial factors among `gcd(x^{r/2} +- 1, N)`, sorted.
pub fn extract_factor(instance: &FactorInstance) -> Result<Vec<u64>> {
    let n = instance.n();
    let r = instance.order();
    if r % 2 == 1 {
        return Err(Error::OddOrder(r));
    }
    let a = mod_pow(instance.x(), r / 2, n);
    if a == n - 1 {
        return Err(Error::TrivialRoot);
    }
    let mut factors: Vec<u64> = [gcd(a + 1, n), gcd(a + n - 1, n)]
        .into_iter()
        .filter(|&d| d != 1 && d != n)
        .collect();
    factors.sort_unstable();
    factors.dedup();
    Ok(factors)
}

/// Finite simple continued fraction of a non-negative rational.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    coefficients: Vec<u64>,
    convergents: Vec<(u64, u64)>,
}

impl ContinuedFraction {
    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    /// Convergents `p_i / q_i`, each in lowest terms.
    pub fn convergents(&self) -> &[(u64, u64)] {
        &self.convergents
    }

    /// Fold the coefficients back into a fraction `(num, den)` in lowest terms.
    pub fn fold(&self) -> (u64, u64) {
        let mut iter = self.coefficients.iter().rev();
        let last = *iter.next().expect("at least one coefficient");
        let (mut num, mut den) = (last as u128, 1u128);
        for &a in iter {
            // a + 1 / (num / den) = (a * num + den) / num
            let next_num = a as u128 * num + den;
            den = num;
            num = next_num;
        }
        (num as u64, den as u64)
    }
}

/// Continued-fraction expansion of `num / den` by Euclidean steps.
pub fn continued_fraction(num: u64, den: u64) -> Result<ContinuedFraction> {
    if den == 0 {
        return Err(Error::ZeroDenominator);
    }
    let mut coefficients = Vec::new();
    let (mut a, mut b) = (num, den);
    loop {
        coefficients.push(a / b);
        let rem = a % b;
        if rem == 0 {
            break;
        }
        a = b;
        b = rem;
    }

    let mut convergents = Vec::with_capacity(coefficients.len());
    let (mut p_prev, mut q_prev) = (1u128, 0u128);
    let (mut p, mut q) = (coefficients[0] as u128, 1u128);
    convergents.push((p as u64, q as u64));
    for &c in &coefficients[1..] {
        let p_next = c as u128 * p + p_prev;
        let q_next = c as u128 * q + q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        convergents.push((p as u64, q as u64));
    }
    Ok(ContinuedFraction {
        coefficients,
        convergents,
    })
}

/// Result of post-processing one outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CfaOutcome {
    /// First convergent denominator below `N` that passes `x^d = 1 (mod N)`.
    pub estimate: Option<u64>,
    /// Whether `estimate` equals the true order.
    pub success: bool,
}

/// Scan the convergents of `k / q` in increasing index and accept the first
/// denominator `d < N` with `x^d = 1 (mod N)`.
///
/// The scan never consults the true order; `success` compares afterwards.
pub fn cfa_estimate_order(k: u64, instance: &FactorInstance) -> Result<CfaOutcome> {
    let q = instance.q();
    if k >= q {
        return Err(Error::OutcomeOutOfRange { k, q });
    }
    let n = instance.n();
    let x = instance.x();
    let cf = continued_fraction(k, q)?;
    let estimate = cf
        .convergents()
        .iter()
        .map(|&(_, d)| d)
        .take_while(|&d| d < n)
        .find(|&d| mod_pow(x, d, n) == 1);
    Ok(CfaOutcome {
        estimate,
        success: estimate == Some(instance.order()),
    })
}

/// Signed numerator of `j/r - k/q` over the common denominator `r q`.
fn offset(j: u64, r: u64, k: u64, q: u64) -> i128 {
    j as i128 * q as i128 - k as i128 * r as i128
}

/// `|j/r - k/q| < 1/(2q)`.
pub fn within_half_step(j: u64, r: u64, k: u64, q: u64) -> bool {
    2 * offset(j, r, k, q).abs() < r as i128
}

/// `|j/r - k/q| <= beta / (2q)` with `beta = (q - 1) / r^2`.
pub fn within_guaranteed(j: u64, r: u64, k: u64, q: u64) -> bool {
    2 * r as i128 * offset(j, r, k, q).abs() < q as i128
}

/// `|j/r - k/q| <= 1 / r^2`.
pub fn within_permitted(j: u64, r: u64, k: u64, q: u64) -> bool {
    r as i128 * offset(j, r, k, q).abs() <= q as i128
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateKind {
    /// Outcomes guaranteed to yield `j/r`: `|j/r - k/q| <= beta/(2q)`.
    Guaranteed,
    /// Outcomes that may yield `j/r`: `|j/r - k/q| <= 1/r^2`.
    Permitted,
}

impl CandidateKind {
    fn contains(self, j: u64, r: u64, k: u64, q: u64) -> bool {
        match self {
            CandidateKind::Guaranteed => within_guaranteed(j, r, k, q),
            CandidateKind::Permitted => within_permitted(j, r, k, q),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub j: u64,
    pub kind: CandidateKind,
    /// Sorted outcomes in `[0, q)`.
    pub members: Vec<u64>,
}

impl CandidateSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Outcomes `k` in `[0, q)` near `j / r`, for `0 <= j < r` with `gcd(j, r) = 1`
/// (so `j = 0` only for `r = 1`).
pub fn candidate_set(j: u64, instance: &FactorInstance, kind: CandidateKind) -> Result<CandidateSet> {
    let r = instance.order();
    let q = instance.q();
    if j >= r || gcd(j, r) != 1 {
        return Err(Error::NotCoprime { x: j, n: r });
    }
    // Both sets are integer intervals around j q / r; the nearest integers
    // below and above the centre lie inside whenever the set is non-empty.
    let floor = (j as u128 * q as u128 / r as u128) as u64;
    let mut members = Vec::new();
    let mut k = floor as i128;
    while k >= 0 && kind.contains(j, r, k as u64, q) {
        members.push(k as u64);
        k -= 1;
    }
    members.reverse();
    let mut k = floor + 1;
    while k < q && kind.contains(j, r, k, q) {
        members.push(k);
        k += 1;
    }
    Ok(CandidateSet { j, kind, members })
}

/// Numerators `j` in `[0, r)` coprime to `r` (just `0` when `r = 1`).
pub fn coprime_numerators(r: u64) -> impl Iterator<Item = u64> {
    (0..r).filter(move |&j| gcd(j, r) == 1)
}

/// Sorted union of the permitted sets over all coprime numerators: the only
/// outcomes whose post-processing can return `r`.
pub fn permitted_outcomes(instance: &FactorInstance) -> Vec<u64> {
    let mut all: Vec<u64> = coprime_numerators(instance.order())
        .flat_map(|j| {
            candidate_set(j, instance, CandidateKind::Permitted)
                .expect("coprime numerator")
                .members
        })
        .collect();
    all.sort_unstable();
    all.dedup();
    all
}

/// Outcome enumeration strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Enumeration {
    /// Only outcomes in the union of permitted sets.
    #[default]
    Candidates,
    /// Every outcome in `[0, q)`.
    Exhaustive,
}

/// Outcomes `k` for which [`cfa_estimate_order`] succeeds, in increasing order.
pub fn successful_outcomes(instance: &FactorInstance, mode: Enumeration) -> Vec<u64> {
    let succeeds = |&k: &u64| {
        cfa_estimate_order(k, instance)
            .map(|o| o.success)
            .unwrap_or(false)
    };
    match mode {
        Enumeration::Candidates => permitted_outcomes(instance)
            .into_iter()
            .filter(succeeds)
            .collect(),
        Enumeration::Exhaustive => (0..instance.q()).filter(succeeds).collect(),
    }
}

/// `f(N, r)`: the number of outcomes whose post-processing returns `r`.
pub fn count_f(instance: &FactorInstance, mode: Enumeration) -> u64 {
    successful_outcomes(instance, mode).len() as u64
}

/// `(2 phi(r) floor((q-1)/(2r^2)), phi(r) (1 + 2 floor(q/r^2)))`.
pub fn f_bounds_for(r: u64, q: u64) -> (u64, u64) {
    let phi = euler_totient(r);
    let r2 = r as u128 * r as u128;
    let lower = 2 * phi as u128 * ((q as u128 - 1) / (2 * r2));
    let upper = phi as u128 * (1 + 2 * (q as u128 / r2));
    (lower as u64, upper as u64)
}

pub fn f_bounds(instance: &FactorInstance) -> (u64, u64) {
    f_bounds_for(instance.order(), instance.q())
}

/// Trial-division primality, adequate below the modulus cap.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some(p)` when `n = p^e` for a prime `p` and `e >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut m = n;
            while m.is_multiple_of(d) {
                m /= d;
            }
            return (m == 1).then_some(d);
        }
        d += 1;
    }
    Some(n)
}
