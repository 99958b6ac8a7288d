//! Bessel functions J_nu of integer and half-integer order, their positive
//! zeros, Gamma at half-integer arguments, and unit-ball volumes.
//!
//! Orders are carried doubled (`twice_nu`), so nu = 0, 1/2, 1, 3/2, ... are
//! all exact integers internally. Three evaluation regimes cover the
//! (nu, x) plane:
//!
//! * power series in double-double arithmetic for x <= 30, and whenever
//!   (x/2)^2 <= (nu+1)/2 (the terms then decay from the start at any order);
//! * forward recurrence in the order, seeded at nu = 0, 1 (Hankel asymptotic
//!   expansion) or nu = 1/2, 3/2 (closed forms), when nu <= x and x > 30;
//! * backward (Miller) recurrence normalized against the same seeds when
//!   nu > x > 30.
//!
//! The series needs extended precision because the alternating sum cancels
//! down from a largest term of order e^x * x^{-1/2}; at the regime edge
//! x = 30 that is ~10 decimal digits of cancellation, which the 32-digit
//! accumulator absorbs without loss. The naive alternative of pushing the
//! series to x ~ 2*nu is hopeless in fixed precision (at nu = 200, x = 400
//! it would need ~154 digits).
//!
//! Zeros are bracketed by a unit-step sign scan (the spacing between
//! consecutive zeros of any J_nu is at least ~3.11, so a step of 1 cannot
//! jump over a pair), polished by safeguarded Newton, and cached per order
//! in tables that only ever grow.

use std::collections::HashMap;
use std::fmt;
use std::f64::consts::PI;
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::dd::{Dd, DD_PI, DD_SQRT_PI, DD_TWO_OVER_SQRT_PI};

#[derive(Debug, Error)]
pub enum SpecFunError {
    #[error("J_nu is defined here for x >= 0 only, got x = {x}")]
    NegativeArgument { x: f64 },
    #[error("this operation needs x > 0, got x = {x}")]
    NonPositiveArgument { x: f64 },
    #[error("Gamma({twice_a}/2) overflows f64")]
    GammaOverflow { twice_a: u32 },
    #[error("zero index n is 1-based; n = 0 is not a zero")]
    ZeroIndexZero,
    #[error(
        "no sign change while bracketing zero #{n} of J_({twice_nu}/2): \
         scanned [{x_start}, {x_end}] in unit steps"
    )]
    BracketScanFailed {
        twice_nu: u32,
        n: u32,
        x_start: f64,
        x_end: f64,
    },
    #[error(
        "zero #{n} of J_({twice_nu}/2) did not converge: bracket [{lo}, {hi}], \
         last step {step:e}"
    )]
    ZeroNotConverged {
        twice_nu: u32,
        n: u32,
        lo: f64,
        hi: f64,
        step: f64,
    },
    #[error("radial profile functions need dimension d >= 2, got d = {d}")]
    DimensionTooSmall { d: u32 },
}

/// A nonnegative integer or half-integer order, stored as 2*nu so that no
/// rounding is involved.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct HalfIntegerOrder {
    twice_nu: u32,
}

impl HalfIntegerOrder {
    pub fn from_twice(twice_nu: u32) -> Self {
        HalfIntegerOrder { twice_nu }
    }

    pub fn integer(nu: u32) -> Self {
        HalfIntegerOrder { twice_nu: 2 * nu }
    }

    pub fn twice(self) -> u32 {
        self.twice_nu
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.twice_nu) * 0.5
    }

    pub fn is_integer(self) -> bool {
        self.twice_nu % 2 == 0
    }
}

impl fmt::Display for HalfIntegerOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice_nu / 2)
        } else {
            write!(f, "{}/2", self.twice_nu)
        }
    }
}

/// The n-th positive zero of J_nu together with the residual |J_nu(value)|
/// left by the solver.
#[derive(Clone, Copy, Debug)]
pub struct BesselZero {
    pub order: HalfIntegerOrder,
    pub n: u32,
    pub value: f64,
    pub residual: f64,
}

/// Gamma(twice_a / 2) for twice_a >= 1, by exact recurrence in double-double
/// from Gamma(1/2) = sqrt(pi) and Gamma(1) = 1. Overflows f64 past
/// Gamma(343/2) = Gamma(171.5).
pub fn gamma_half(twice_a: u32) -> Result<f64, SpecFunError> {
    debug_assert!(twice_a >= 1);
    let g = dd_gamma_half(twice_a);
    if !g.hi.is_finite() {
        return Err(SpecFunError::GammaOverflow { twice_a });
    }
    Ok(g.to_f64())
}

fn dd_gamma_half(twice_a: u32) -> Dd {
    let (mut g, mut k) = if twice_a % 2 == 0 {
        (Dd::from_f64(1.0), 2u32)
    } else {
        (DD_SQRT_PI, 1u32)
    };
    while k + 2 <= twice_a {
        g = g.mul_f64(f64::from(k) * 0.5);
        k += 2;
        if !g.hi.is_finite() {
            break;
        }
    }
    g
}

/// Volume of the unit ball in R^d, with B_0 = 1 for the empty product.
pub fn unit_ball_volume(d: u32) -> f64 {
    // B_d = pi^{d/2} / Gamma(d/2 + 1)
    let mut p = Dd::from_f64(1.0);
    for _ in 0..d / 2 {
        p = p.mul(DD_PI);
    }
    if d % 2 == 1 {
        p = p.mul(DD_SQRT_PI);
    }
    p.div(dd_gamma_half(d + 2)).to_f64()
}

/// J_nu(x) for x >= 0.
pub fn bessel_j(order: HalfIntegerOrder, x: f64) -> Result<f64, SpecFunError> {
    if !(x >= 0.0) {
        return Err(SpecFunError::NegativeArgument { x });
    }
    if x == 0.0 {
        return Ok(if order.twice() == 0 { 1.0 } else { 0.0 });
    }
    Ok(eval_pair(order.twice(), x).0)
}

/// d/dx J_nu(x) through J_nu'(x) = (nu/x) J_nu(x) - J_{nu+1}(x); x > 0.
pub fn bessel_j_prime(order: HalfIntegerOrder, x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) {
        return Err(SpecFunError::NonPositiveArgument { x });
    }
    let (j, j1) = eval_pair(order.twice(), x);
    Ok((order.as_f64() / x) * j - j1)
}

/// McMahon's large-n approximation to the n-th positive zero of J_nu:
/// beta - (4 nu^2 - 1) / (8 beta), beta = (n + nu/2 - 1/4) pi.
pub fn mcmahon_guess(order: HalfIntegerOrder, n: u32) -> f64 {
    // 4 beta / pi = 4n + 2 nu - 1 is an exact integer
    let four_beta_over_pi = f64::from(4 * n + order.twice()) - 1.0;
    let beta = four_beta_over_pi * (0.25 * PI);
    let mu_minus_one = f64::from(order.twice()).powi(2) - 1.0;
    beta - mu_minus_one / (8.0 * beta)
}

/// The radial profile function z^{1 - d/2} J_{d/2 - 1 + l}(z); d >= 2, z > 0.
pub fn ultraspherical_j(d: u32, l: u32, z: f64) -> Result<f64, SpecFunError> {
    if d < 2 {
        return Err(SpecFunError::DimensionTooSmall { d });
    }
    if !(z > 0.0) {
        return Err(SpecFunError::NonPositiveArgument { x: z });
    }
    let twice_nu = 2 * l + d - 2;
    let j = eval_pair(twice_nu, z).0;
    Ok(z.powf(1.0 - 0.5 * f64::from(d)) * j)
}

/// The n-th positive zero of J_nu (n >= 1), from the shared per-order cache.
pub fn bessel_zero(order: HalfIntegerOrder, n: u32) -> Result<BesselZero, SpecFunError> {
    if n == 0 {
        return Err(SpecFunError::ZeroIndexZero);
    }
    let t = table(order.twice());
    t.ensure_count(n as usize)?;
    let zeros = t.zeros.read().unwrap();
    let rec = zeros[n as usize - 1];
    Ok(BesselZero {
        order,
        n,
        value: rec.value,
        residual: rec.residual,
    })
}

/// All positive zeros x of J_nu with x^2 < z, in increasing order. The
/// comparison is done on x^2 exactly as the eigenvalue counting functions do
/// it, so a borderline zero lands on the same side everywhere.
pub fn zeros_below_sq(order: HalfIntegerOrder, z: f64) -> Result<Vec<f64>, SpecFunError> {
    if !(z > 0.0) {
        return Ok(Vec::new());
    }
    let t = table(order.twice());
    t.ensure_past(z.sqrt() + 1.0)?;
    let zeros = t.zeros.read().unwrap();
    let cut = zeros.partition_point(|r| r.value * r.value < z);
    Ok(zeros[..cut].iter().map(|r| r.value).collect())
}

/// Number of positive zeros x of J_nu with x^2 < z.
pub fn count_zeros_below_sq(order: HalfIntegerOrder, z: f64) -> Result<u64, SpecFunError> {
    if !(z > 0.0) {
        return Ok(0);
    }
    let t = table(order.twice());
    t.ensure_past(z.sqrt() + 1.0)?;
    let zeros = t.zeros.read().unwrap();
    Ok(zeros.partition_point(|r| r.value * r.value < z) as u64)
}

// ---------------------------------------------------------------------------
// evaluation kernels

const SERIES_X_MAX: f64 = 30.0;

/// (J_nu(x), J_{nu+1}(x)) for x > 0.
pub(crate) fn eval_pair(twice_nu: u32, x: f64) -> (f64, f64) {
    let nu = f64::from(twice_nu) * 0.5;
    let half_x = 0.5 * x;
    if x <= SERIES_X_MAX || half_x * half_x <= 0.5 * (nu + 1.0) {
        (series_j(twice_nu, x), series_j(twice_nu + 2, x))
    } else if nu <= x {
        forward_pair(twice_nu, x)
    } else {
        miller_pair(twice_nu, x)
    }
}

/// Power series sum_k (-1)^k (x/2)^{nu+2k} / (k! Gamma(nu+k+1)), summed in
/// double-double. The prefactor is built as a running product
/// prod (x/2)/(k'), so it underflows to zero gracefully for huge orders
/// instead of overflowing intermediates.
fn series_j(twice_nu: u32, x: f64) -> f64 {
    let half_x = 0.5 * x;

    let (mut pref, mut k2) = if twice_nu % 2 == 0 {
        (Dd::from_f64(1.0), 0u32)
    } else {
        // (x/2)^{1/2} / Gamma(3/2)
        (
            Dd::from_f64(half_x).sqrt().mul(DD_TWO_OVER_SQRT_PI),
            1u32,
        )
    };
    while k2 + 2 <= twice_nu {
        pref = pref.mul_f64(half_x).div_f64(f64::from(k2 + 2) * 0.5);
        k2 += 2;
    }
    if pref.hi == 0.0 || !pref.hi.is_finite() {
        return pref.hi;
    }

    let q = Dd::from_f64(half_x).mul_f64(half_x);
    let nu = f64::from(twice_nu) * 0.5;
    let mut term = Dd::from_f64(1.0);
    let mut sum = term;
    let mut peak = 1.0f64;
    for k in 1..10_000u32 {
        let kf = f64::from(k);
        term = term.mul(q).div_f64(kf * (nu + kf)).neg();
        sum = sum.add(term);
        let t = term.hi.abs();
        if t > peak {
            peak = t;
        }
        if t < peak * 1e-34 {
            break;
        }
    }
    pref.mul(sum).to_f64()
}

/// Hankel asymptotic expansion at x > 30 for the seed orders (0 and 1 in
/// doubled units 0 and 2). The phase x - (2 nu + 1) pi / 4 is formed in
/// double-double, so sin/cos see an argument accurate well below 1 ulp.
fn hankel_j(twice_nu: u32, x: f64) -> f64 {
    let mu = f64::from(twice_nu * twice_nu); // 4 nu^2
    let mut p = 1.0f64;
    let mut q = 0.0f64;
    let mut t = 1.0f64;
    let mut prev = f64::INFINITY;
    for m in 0..40u32 {
        let odd = f64::from(2 * m + 1);
        t *= (mu - odd * odd) / (f64::from(8 * (m + 1)) * x);
        let mag = t.abs();
        if mag >= prev {
            break;
        }
        prev = mag;
        match m % 4 {
            0 => q += t,
            1 => p -= t,
            2 => q -= t,
            _ => p += t,
        }
        if mag < 1e-19 {
            break;
        }
    }
    let chi = Dd::from_f64(x).sub(DD_PI.mul_f64(f64::from(twice_nu + 1) * 0.25));
    let (s0, c0) = chi.hi.sin_cos();
    let s = s0 + chi.lo * c0;
    let c = c0 - chi.lo * s0;
    (2.0 / (PI * x)).sqrt() * (p * c - q * s)
}

/// J_{1/2} and J_{3/2} in closed form.
fn half_integer_base(x: f64) -> (f64, f64) {
    let amp = (2.0 / (PI * x)).sqrt();
    let (s, c) = x.sin_cos();
    (amp * s, amp * (s / x - c))
}

fn base_pair(frac: u32, x: f64) -> (f64, f64) {
    if frac == 0 {
        (hankel_j(0, x), hankel_j(2, x))
    } else {
        half_integer_base(x)
    }
}

/// Upward recurrence J_{k+1} = (2k/x) J_k - J_{k-1} from the seed pair;
/// stable as long as the order stays below x.
fn forward_pair(twice_nu: u32, x: f64) -> (f64, f64) {
    let frac = twice_nu % 2;
    let (mut jm, mut j) = base_pair(frac, x);
    let mut k2 = frac + 2; // twice the order of `j`
    while k2 < twice_nu + 2 {
        let next = (f64::from(k2) / x) * j - jm;
        jm = j;
        j = next;
        k2 += 2;
    }
    (jm, j)
}

/// Backward (Miller) recurrence for nu > x > 30: start 66 orders above nu
/// with the pair (tiny, 0), recur down to the seed orders, and normalize
/// against whichever seed component is larger. Every downward step from
/// order k > nu multiplies the wanted solution by more than 2k/x > 2, so the
/// arbitrary starting values are suppressed by better than 2^66 by the time
/// the target order is passed.
fn miller_pair(twice_nu: u32, x: f64) -> (f64, f64) {
    const MARGIN: u32 = 66;
    let frac = twice_nu % 2;
    let mut k2 = twice_nu + 2 * MARGIN; // twice the current order
    let mut jp = 0.0f64; // \tilde J at order k2/2 + 1
    let mut j = 1e-250f64; // \tilde J at order k2/2
    let mut tgt = 0.0f64;
    let mut tgt_p1 = 0.0f64;
    while k2 > frac {
        if k2 == twice_nu + 2 {
            tgt_p1 = j;
        } else if k2 == twice_nu {
            tgt = j;
        }
        let jm = (f64::from(k2) / x) * j - jp;
        jp = j;
        j = jm;
        k2 -= 2;
        if j.abs() > 1e250 {
            j *= 1e-250;
            jp *= 1e-250;
            tgt *= 1e-250;
            tgt_p1 *= 1e-250;
        }
    }
    // j, jp now hold the unnormalized values at the seed orders frac/2 and
    // frac/2 + 1
    let (b0, b1) = base_pair(frac, x);
    let ratio = if j.abs() >= jp.abs() { b0 / j } else { b1 / jp };
    (tgt * ratio, tgt_p1 * ratio)
}

// ---------------------------------------------------------------------------
// zero cache

#[derive(Clone, Copy)]
struct ZeroRec {
    value: f64,
    residual: f64,
}

struct ZeroTable {
    twice_nu: u32,
    zeros: RwLock<Vec<ZeroRec>>,
}

static REGISTRY: OnceLock<RwLock<HashMap<u32, Arc<ZeroTable>>>> = OnceLock::new();

fn table(twice_nu: u32) -> Arc<ZeroTable> {
    let reg = REGISTRY.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = reg.read().unwrap().get(&twice_nu) {
        return Arc::clone(t);
    }
    let mut w = reg.write().unwrap();
    Arc::clone(w.entry(twice_nu).or_insert_with(|| {
        Arc::new(ZeroTable {
            twice_nu,
            zeros: RwLock::new(Vec::new()),
        })
    }))
}

impl ZeroTable {
    fn ensure_count(&self, n: usize) -> Result<(), SpecFunError> {
        if self.zeros.read().unwrap().len() >= n {
            return Ok(());
        }
        let mut zeros = self.zeros.write().unwrap();
        while zeros.len() < n {
            self.push_next(&mut zeros)?;
        }
        Ok(())
    }

    /// Extend until the last stored zero lies strictly beyond x_limit, so
    /// every zero <= x_limit is present.
    fn ensure_past(&self, x_limit: f64) -> Result<(), SpecFunError> {
        {
            let zeros = self.zeros.read().unwrap();
            if zeros.last().is_some_and(|r| r.value > x_limit) {
                return Ok(());
            }
        }
        let mut zeros = self.zeros.write().unwrap();
        while zeros.last().is_none_or(|r| r.value <= x_limit) {
            self.push_next(&mut zeros)?;
        }
        Ok(())
    }

    fn push_next(&self, zeros: &mut Vec<ZeroRec>) -> Result<(), SpecFunError> {
        let n = zeros.len() as u32 + 1;
        let nu = f64::from(self.twice_nu) * 0.5;

        // bracket by a unit-step sign scan; J_nu is positive on (0, nu], so
        // starting the very first scan there cannot skip the first zero
        let start = match zeros.last() {
            Some(r) => r.value + 0.5,
            None => nu.max(0.1),
        };
        let mut lo = start;
        let mut f_lo = eval_pair(self.twice_nu, lo).0;
        let mut hi = lo;
        let mut bracketed = false;
        for _ in 0..4000 {
            hi = lo + 1.0;
            let f_hi = eval_pair(self.twice_nu, hi).0;
            if (f_lo > 0.0) != (f_hi > 0.0) {
                bracketed = true;
                break;
            }
            lo = hi;
            f_lo = f_hi;
        }
        if !bracketed {
            return Err(SpecFunError::BracketScanFailed {
                twice_nu: self.twice_nu,
                n,
                x_start: start,
                x_end: hi,
            });
        }

        // safeguarded Newton: every iterate stays inside the bracket, which
        // shrinks on both failure and success
        let sign_lo = f_lo > 0.0;
        let guess = mcmahon_guess(HalfIntegerOrder::from_twice(self.twice_nu), n);
        let mut x = if guess > lo && guess < hi {
            guess
        } else {
            0.5 * (lo + hi)
        };
        let mut converged = false;
        let mut last_step = f64::INFINITY;
        for _ in 0..100 {
            let (j, j1) = eval_pair(self.twice_nu, x);
            if (j > 0.0) == sign_lo {
                lo = x;
            } else {
                hi = x;
            }
            let dj = (nu / x) * j - j1;
            let mut next = x - j / dj;
            if !next.is_finite() || next <= lo || next >= hi {
                next = 0.5 * (lo + hi);
            }
            last_step = (next - x).abs();
            x = next;
            if last_step <= 1e-13 * x {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(SpecFunError::ZeroNotConverged {
                twice_nu: self.twice_nu,
                n,
                lo,
                hi,
                step: last_step,
            });
        }
        let residual = eval_pair(self.twice_nu, x).0.abs();
        zeros.push(ZeroRec { value: x, residual });
        Ok(())
    }
}
