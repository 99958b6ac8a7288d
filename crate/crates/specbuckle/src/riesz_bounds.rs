//! Counting functions, Riesz means R_p(z) = sum_j m_j (z - v_j)_+^p, Weyl
//! model coefficients, and the inequality checks that relate them: the
//! Berezin-Li-Yau upper bound on R_1, the dual lower bound on eigenvalue
//! sums, the Legendre-transform comparison between the two, the averaged
//! variational chain between buckling, Laplacian, and Bilaplacian spectra,
//! the test-function lower bound on the weighted mean sum (z - sigma)_+ sigma,
//! and Tauberian ratio diagnostics for R_1 against N and R_2 against R_1.
//!
//! A `Spectrum` stores distinct eigenvalues with multiplicities plus prefix
//! tables, so counting, partial sums, and Riesz means over millions of
//! virtual eigenvalues stay cheap. All floating sums of spectral data are
//! compensated (Neumaier) so cancellation in (z - v)_+ tails near z does not
//! contaminate the bound margins.

use thiserror::Error;

use crate::specfun::{gamma_half, unit_ball_volume, SpecFunError};

#[derive(Debug, Error)]
pub enum RieszError {
    #[error("entry {index} breaks the ascending value order")]
    Unsorted { index: usize },
    #[error("entry {index} has zero multiplicity")]
    ZeroMultiplicity { index: usize },
    #[error("entry {index} has a non-finite value")]
    NonFiniteValue { index: usize },
    #[error("query at z = {z} exceeds the enumerated range z_max = {z_max}")]
    QueryBeyondEnumeration { z: f64, z_max: f64 },
    #[error("Riesz order must be positive and finite, got p = {p}")]
    BadRieszOrder { p: f64 },
    #[error("index {k} outside the {len} enumerated eigenvalues")]
    IndexOutOfRange { k: u64, len: u64 },
    #[error("Legendre argument w = {w} needs eigenvalue {need} but only {len} are enumerated")]
    LegendreOutOfRange { w: f64, need: u64, len: u64 },
    #[error("relation needs the Bilaplacian spectrum but none was supplied")]
    MissingBilaplacian,
    #[error("not enough spectrum enumerated: {need}")]
    InsufficientSpectrum { need: String },
    #[error("need at least 4 fit windows, got {n_windows}")]
    BadWindows { n_windows: u32 },
    #[error("bad fit range [{lo}, {hi}]")]
    BadRange { lo: f64, hi: f64 },
    #[error("model dimension is {got}, this check needs d = {expected}")]
    WrongDimension { expected: u32, got: u32 },
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

/// Compensated (Neumaier) accumulator.
#[derive(Clone, Copy, Default)]
pub(crate) struct Accum {
    s: f64,
    c: f64,
}

impl Accum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.s + x;
        if self.s.abs() >= x.abs() {
            self.c += (self.s - t) + x;
        } else {
            self.c += (x - t) + self.s;
        }
        self.s = t;
    }

    pub(crate) fn total(self) -> f64 {
        self.s + self.c
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumMeta {
    pub domain: String,
    pub kind: String,
    pub d: u32,
    /// Queries (counting, Riesz means) are answered only for z <= z_max,
    /// the threshold up to which the enumeration is known complete.
    pub z_max: f64,
}

/// Distinct eigenvalues in ascending order with multiplicities, plus
/// inclusive prefix tables for counts and value sums.
#[derive(Clone, Debug)]
pub struct Spectrum {
    entries: Vec<(f64, u64)>,
    prefix_count: Vec<u64>,
    prefix_sum: Vec<f64>,
    pub meta: SpectrumMeta,
}

impl Spectrum {
    pub fn new(entries: Vec<(f64, u64)>, meta: SpectrumMeta) -> Result<Self, RieszError> {
        let mut prefix_count = Vec::with_capacity(entries.len());
        let mut prefix_sum = Vec::with_capacity(entries.len());
        let mut count = 0u64;
        let mut sum = Accum::default();
        for (i, &(v, m)) in entries.iter().enumerate() {
            if !v.is_finite() {
                return Err(RieszError::NonFiniteValue { index: i });
            }
            if m == 0 {
                return Err(RieszError::ZeroMultiplicity { index: i });
            }
            if i > 0 && v < entries[i - 1].0 {
                return Err(RieszError::Unsorted { index: i });
            }
            count += m;
            sum.add(v * m as f64);
            prefix_count.push(count);
            prefix_sum.push(sum.total());
        }
        Ok(Spectrum {
            entries,
            prefix_count,
            prefix_sum,
            meta,
        })
    }

    pub fn entries(&self) -> &[(f64, u64)] {
        &self.entries
    }

    /// Total eigenvalue count including multiplicities.
    pub fn len_virtual(&self) -> u64 {
        self.prefix_count.last().copied().unwrap_or(0)
    }

    fn check_z(&self, z: f64) -> Result<(), RieszError> {
        if !(z <= self.meta.z_max) {
            return Err(RieszError::QueryBeyondEnumeration {
                z,
                z_max: self.meta.z_max,
            });
        }
        Ok(())
    }

    /// N(z) = #{ j : v_j < z }, strict below z.
    pub fn counting(&self, z: f64) -> Result<u64, RieszError> {
        self.check_z(z)?;
        let idx = self.entries.partition_point(|&(v, _)| v < z);
        Ok(if idx == 0 {
            0
        } else {
            self.prefix_count[idx - 1]
        })
    }

    /// The k-th eigenvalue counted with multiplicity, 1-based.
    pub fn eigenvalue(&self, k: u64) -> Result<f64, RieszError> {
        if k == 0 || k > self.len_virtual() {
            return Err(RieszError::IndexOutOfRange {
                k,
                len: self.len_virtual(),
            });
        }
        let idx = self.prefix_count.partition_point(|&c| c < k);
        Ok(self.entries[idx].0)
    }

    /// Sum of the first k eigenvalues counted with multiplicity.
    pub fn sum_first(&self, k: u64) -> Result<f64, RieszError> {
        if k == 0 {
            return Ok(0.0);
        }
        if k > self.len_virtual() {
            return Err(RieszError::IndexOutOfRange {
                k,
                len: self.len_virtual(),
            });
        }
        let idx = self.prefix_count.partition_point(|&c| c < k);
        let below = if idx == 0 {
            (0, 0.0)
        } else {
            (self.prefix_count[idx - 1], self.prefix_sum[idx - 1])
        };
        let inside = (k - below.0) as f64 * self.entries[idx].0;
        Ok(below.1 + inside)
    }

    /// R_p(z) = sum over v_j < z of m_j (z - v_j)^p, p > 0.
    pub fn riesz_mean(&self, p: f64, z: f64) -> Result<f64, RieszError> {
        if !(p > 0.0 && p.is_finite()) {
            return Err(RieszError::BadRieszOrder { p });
        }
        self.check_z(z)?;
        let mut acc = Accum::default();
        for &(v, m) in &self.entries {
            if v >= z {
                break;
            }
            acc.add(m as f64 * (z - v).powf(p));
        }
        Ok(acc.total())
    }

    /// sum over v_j < z of m_j (z - v_j) v_j, the weighted mean that the
    /// averaged variational bounds control.
    pub fn riesz_weighted(&self, z: f64) -> Result<f64, RieszError> {
        self.check_z(z)?;
        let mut acc = Accum::default();
        for &(v, m) in &self.entries {
            if v >= z {
                break;
            }
            acc.add(m as f64 * (z - v) * v);
        }
        Ok(acc.total())
    }
}

/// One checked inequality: `pass` asserts lhs against rhs in the direction
/// the name states, `margin` is the slack in that direction, and `params`
/// records the inputs (and any side conditions) that produced it.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub name: String,
    pub params: Vec<(String, f64)>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

fn slack_tol(lhs: f64, rhs: f64) -> f64 {
    1e-9 * lhs.abs().max(rhs.abs()).max(1.0)
}

/// Leading Weyl data for a domain: c0 z^{d/2} counts eigenvalues to first
/// order, and the boundary term subtracts
/// boundary_factor (2 pi)^{1-d} B_{d-1} |dOmega| z^{(d-1)/2}.
#[derive(Clone, Copy, Debug)]
pub struct WeylModel {
    pub d: u32,
    pub volume: f64,
    pub surface: f64,
    pub boundary_factor: f64,
}

impl WeylModel {
    /// Dirichlet Laplacian boundary factor.
    pub const DIRICHLET_FACTOR: f64 = 0.25;

    /// Buckling boundary factor 1/4 + Gamma(d/2) / (2 sqrt(pi) Gamma((d+1)/2)).
    pub fn buckling_factor(d: u32) -> Result<f64, RieszError> {
        let num = gamma_half(d)?;
        let den = gamma_half(d + 1)?;
        Ok(0.25 + num / (2.0 * std::f64::consts::PI.sqrt() * den))
    }

    pub fn dirichlet_ball(d: u32) -> Self {
        let bd = unit_ball_volume(d);
        WeylModel {
            d,
            volume: bd,
            surface: f64::from(d) * bd,
            boundary_factor: Self::DIRICHLET_FACTOR,
        }
    }

    pub fn buckling_ball(d: u32) -> Result<Self, RieszError> {
        let bd = unit_ball_volume(d);
        Ok(WeylModel {
            d,
            volume: bd,
            surface: f64::from(d) * bd,
            boundary_factor: Self::buckling_factor(d)?,
        })
    }

    pub fn dirichlet_interval(l: f64) -> Self {
        WeylModel {
            d: 1,
            volume: l,
            surface: 2.0,
            boundary_factor: Self::DIRICHLET_FACTOR,
        }
    }

    pub fn buckling_interval(l: f64) -> Self {
        // Gamma(1/2) / (2 sqrt(pi) Gamma(1)) = 1/2
        WeylModel {
            d: 1,
            volume: l,
            surface: 2.0,
            boundary_factor: 0.75,
        }
    }

    /// c0 = (2 pi)^{-d} B_d |Omega|, the coefficient of z^{d/2} in N.
    pub fn weyl_c0(&self) -> f64 {
        let bd = unit_ball_volume(self.d);
        (2.0 * std::f64::consts::PI).powi(-(self.d as i32)) * bd * self.volume
    }

    /// c1 = boundary_factor (2 pi)^{1-d} B_{d-1} |dOmega|, the coefficient
    /// of z^{(d-1)/2} in the two-term model (entering with a minus sign).
    pub fn boundary_c1(&self) -> f64 {
        let bd1 = unit_ball_volume(self.d - 1);
        self.boundary_factor
            * (2.0 * std::f64::consts::PI).powi(1 - self.d as i32)
            * bd1
            * self.surface
    }

    /// Coefficient 2 c0 / (d + 2) of z^{1 + d/2} in the R_1 upper bound.
    pub fn bly_constant(&self) -> f64 {
        2.0 / (f64::from(self.d) + 2.0) * self.weyl_c0()
    }

    /// Coefficient 8 c0 / ((d+2)(d+4)) of z^{2 + d/2} in the leading R_2 term.
    pub fn r2_constant(&self) -> f64 {
        let d = f64::from(self.d);
        8.0 / ((d + 2.0) * (d + 4.0)) * self.weyl_c0()
    }

    /// C_d = 4 pi^2 / B_d^{2/d}, the constant in the eigenvalue-sum lower
    /// bound (d/(d+2)) C_d k (k/|Omega|)^{2/d} appearing through its mean.
    pub fn berezin_constant(&self) -> f64 {
        let bd = unit_ball_volume(self.d);
        4.0 * std::f64::consts::PI.powi(2) / bd.powf(2.0 / f64::from(self.d))
    }

    /// Two-term models (N_model, R1_model) at z.
    pub fn two_term(&self, z: f64) -> (f64, f64) {
        let d = f64::from(self.d);
        let c0 = self.weyl_c0();
        let c1 = self.boundary_c1();
        let n = c0 * z.powf(0.5 * d) - c1 * z.powf(0.5 * (d - 1.0));
        let r1 = 2.0 / (d + 2.0) * c0 * z.powf(0.5 * d + 1.0)
            - 2.0 / (d + 1.0) * c1 * z.powf(0.5 * (d + 1.0));
        (n, r1)
    }
}

/// R_1(z) <= (2/(d+2)) (2 pi)^{-d} B_d |Omega| z^{1 + d/2}.
pub fn bly_upper_check(spec: &Spectrum, model: &WeylModel, z: f64) -> Result<BoundReport, RieszError> {
    let lhs = spec.riesz_mean(1.0, z)?;
    let rhs = model.bly_constant() * z.powf(0.5 * f64::from(model.d) + 1.0);
    Ok(BoundReport {
        name: "riesz1_upper".to_string(),
        params: vec![("z".to_string(), z), ("d".to_string(), f64::from(model.d))],
        lhs,
        rhs,
        margin: rhs - lhs,
        pass: lhs <= rhs + slack_tol(lhs, rhs),
    })
}

/// ((d+2)/d) (1/k) sum_{j<=k} sigma_j >= C_d (k / |Omega|)^{2/d}.
pub fn sum_lower_check(spec: &Spectrum, model: &WeylModel, k: u64) -> Result<BoundReport, RieszError> {
    let d = f64::from(model.d);
    let mean = spec.sum_first(k)? / k as f64;
    let lhs = (d + 2.0) / d * mean;
    let rhs = model.berezin_constant() * (k as f64 / model.volume).powf(2.0 / d);
    Ok(BoundReport {
        name: "sum_lower".to_string(),
        params: vec![("k".to_string(), k as f64), ("d".to_string(), d)],
        lhs,
        rhs,
        margin: lhs - rhs,
        pass: lhs >= rhs - slack_tol(lhs, rhs),
    })
}

/// Legendre transform of R_1 at w: (w - floor(w)) v_{floor(w)+1} plus the
/// sum of the first floor(w) eigenvalues.
pub fn legendre_transform_r1(spec: &Spectrum, w: f64) -> Result<f64, RieszError> {
    if !(w >= 0.0 && w.is_finite()) {
        return Err(RieszError::BadRange { lo: w, hi: w });
    }
    let fl = w.floor();
    let k = fl as u64;
    let frac = w - fl;
    let head = spec.sum_first(k)?;
    if frac == 0.0 {
        return Ok(head);
    }
    if k + 1 > spec.len_virtual() {
        return Err(RieszError::LegendreOutOfRange {
            w,
            need: k + 1,
            len: spec.len_virtual(),
        });
    }
    Ok(frac * spec.eigenvalue(k + 1)? + head)
}

/// Legendre transform of the model upper bound on R_1:
/// (d/(d+2)) C_d w (w/|Omega|)^{2/d}.
pub fn legendre_model(model: &WeylModel, w: f64) -> f64 {
    let d = f64::from(model.d);
    d / (d + 2.0) * model.berezin_constant() * w * (w / model.volume).powf(2.0 / d)
}

/// Legendre duality check at one w: transforming the R_1 upper bound flips
/// it into L[R_1](w) >= L[model](w).
pub fn legendre_dual_check(
    spec: &Spectrum,
    model: &WeylModel,
    w: f64,
) -> Result<BoundReport, RieszError> {
    let lhs = legendre_transform_r1(spec, w)?;
    let rhs = legendre_model(model, w);
    Ok(BoundReport {
        name: "legendre_dual_lower".to_string(),
        params: vec![("w".to_string(), w), ("d".to_string(), f64::from(model.d))],
        lhs,
        rhs,
        margin: lhs - rhs,
        pass: lhs >= rhs - slack_tol(lhs, rhs),
    })
}

/// Windowed extraction of the second asymptotic coefficient from a counting
/// function or first Riesz mean: on each geometric window the rescaled
/// remainder y(z) = (F(z) - leading(z)) / z^q is averaged, and c1_hat is the
/// mean of the window means, signed as the coefficient appears in the
/// expansion (negative for these boundary-dominated problems).
#[derive(Clone, Debug)]
pub struct AsymptoticFit {
    pub c0: f64,
    pub c1_hat: f64,
    pub window: (f64, f64),
    pub n_windows: u32,
    pub residual_rms: f64,
}

fn windowed_fit(
    spec: &Spectrum,
    z_lo: f64,
    z_hi: f64,
    n_windows: u32,
    c0: f64,
    lead_pow: f64,
    next_pow: f64,
    eval: impl Fn(&Spectrum, f64) -> Result<f64, RieszError>,
) -> Result<AsymptoticFit, RieszError> {
    if n_windows < 4 {
        return Err(RieszError::BadWindows { n_windows });
    }
    if !(z_lo > 0.0 && z_hi > z_lo && z_hi.is_finite()) {
        return Err(RieszError::BadRange { lo: z_lo, hi: z_hi });
    }
    let ratio = (z_hi / z_lo).powf(1.0 / f64::from(n_windows));
    let samples_per_window = 128;
    let mut means = Vec::with_capacity(n_windows as usize);
    for w in 0..n_windows {
        let a = z_lo * ratio.powi(w as i32);
        let b = a * ratio;
        let mut acc = Accum::default();
        for s in 0..samples_per_window {
            let z = a + (b - a) * (f64::from(s) + 0.5) / f64::from(samples_per_window);
            let y = (eval(spec, z)? - c0 * z.powf(lead_pow)) / z.powf(next_pow);
            acc.add(y);
        }
        means.push(acc.total() / f64::from(samples_per_window));
    }
    let mean_of_means = means.iter().sum::<f64>() / means.len() as f64;
    let residual_rms = (means
        .iter()
        .map(|m| (m - mean_of_means).powi(2))
        .sum::<f64>()
        / means.len() as f64)
        .sqrt();
    Ok(AsymptoticFit {
        c0,
        c1_hat: mean_of_means,
        window: (z_lo, z_hi),
        n_windows,
        residual_rms,
    })
}

/// Extract the boundary coefficient from the counting function:
/// c1_hat estimates c1 in N(z) ~ c0 z^{d/2} - c1 z^{(d-1)/2}.
pub fn asymptotic_fit(
    spec: &Spectrum,
    model: &WeylModel,
    z_lo: f64,
    z_hi: f64,
    n_windows: u32,
) -> Result<AsymptoticFit, RieszError> {
    let d = f64::from(model.d);
    windowed_fit(
        spec,
        z_lo,
        z_hi,
        n_windows,
        model.weyl_c0(),
        0.5 * d,
        0.5 * (d - 1.0),
        |s, z| s.counting(z).map(|n| n as f64),
    )
}

/// Same extraction from R_1: c1_hat estimates the coefficient of
/// z^{(d+1)/2} in R_1, which the two-term model predicts as -(2/(d+1)) c1.
pub fn asymptotic_fit_r1(
    spec: &Spectrum,
    model: &WeylModel,
    z_lo: f64,
    z_hi: f64,
    n_windows: u32,
) -> Result<AsymptoticFit, RieszError> {
    let d = f64::from(model.d);
    windowed_fit(
        spec,
        z_lo,
        z_hi,
        n_windows,
        model.bly_constant(),
        0.5 * d + 1.0,
        0.5 * (d + 1.0),
        |s, z| s.riesz_mean(1.0, z),
    )
}

/// Order relations between the buckling values sigma_j, Dirichlet Laplacian
/// values lambda_j, and Dirichlet Bilaplacian values Lambda_j on one domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectralRelation {
    /// lambda_j <= sqrt(Lambda_j) <= sigma_j.
    SqrtChain,
    /// Lambda_j >= max(lambda_1 sigma_j, lambda_j sigma_1).
    ProductLower,
    /// lambda_2 <= sigma_1.
    SecondBelowFirst,
    /// Lambda_j > lambda_j sigma_j (strict; holds on intervals).
    StrictProduct,
}

pub fn chain_and_payne_checks(
    sigma: &Spectrum,
    lambda: &Spectrum,
    bilaplacian: Option<&Spectrum>,
    relation: SpectralRelation,
    j: u64,
) -> Result<BoundReport, RieszError> {
    let need_bilap = !matches!(relation, SpectralRelation::SecondBelowFirst);
    let bilap = match (need_bilap, bilaplacian) {
        (true, None) => return Err(RieszError::MissingBilaplacian),
        (true, Some(b)) => Some(b),
        (false, _) => None,
    };
    match relation {
        SpectralRelation::SqrtChain => {
            let lam = lambda.eigenvalue(j)?;
            let sig = sigma.eigenvalue(j)?;
            let sqrt_big = bilap.unwrap().eigenvalue(j)?.sqrt();
            let tol = slack_tol(lam, sig);
            Ok(BoundReport {
                name: "sqrt_bilaplacian_chain".to_string(),
                params: vec![
                    ("j".to_string(), j as f64),
                    ("sqrt_Lambda_j".to_string(), sqrt_big),
                ],
                lhs: lam,
                rhs: sig,
                margin: (sqrt_big - lam).min(sig - sqrt_big),
                pass: lam <= sqrt_big + tol && sqrt_big <= sig + tol,
            })
        }
        SpectralRelation::ProductLower => {
            let lhs = bilap.unwrap().eigenvalue(j)?;
            let a = lambda.eigenvalue(1)? * sigma.eigenvalue(j)?;
            let b = lambda.eigenvalue(j)? * sigma.eigenvalue(1)?;
            let rhs = a.max(b);
            Ok(BoundReport {
                name: "bilaplacian_product_lower".to_string(),
                params: vec![
                    ("j".to_string(), j as f64),
                    ("lambda_1_sigma_j".to_string(), a),
                    ("lambda_j_sigma_1".to_string(), b),
                ],
                lhs,
                rhs,
                margin: lhs - rhs,
                pass: lhs >= rhs - slack_tol(lhs, rhs),
            })
        }
        SpectralRelation::SecondBelowFirst => {
            let lhs = lambda.eigenvalue(2)?;
            let rhs = sigma.eigenvalue(1)?;
            Ok(BoundReport {
                name: "second_laplacian_below_first_buckling".to_string(),
                params: vec![],
                lhs,
                rhs,
                margin: rhs - lhs,
                pass: lhs <= rhs + slack_tol(lhs, rhs),
            })
        }
        SpectralRelation::StrictProduct => {
            let lhs = bilap.unwrap().eigenvalue(j)?;
            let rhs = lambda.eigenvalue(j)? * sigma.eigenvalue(j)?;
            Ok(BoundReport {
                name: "bilaplacian_above_product".to_string(),
                params: vec![("j".to_string(), j as f64)],
                lhs,
                rhs,
                margin: lhs - rhs,
                pass: lhs > rhs,
            })
        }
    }
}

/// The three averaged variational consequences tying the buckling spectrum
/// to the Laplacian and Bilaplacian ones, evaluated at (z, k):
///
///   sum_j (z - sigma_j)_+ sigma_j >= sum_{j<=k} (z lambda_j - Lambda_j),
///   (1/k) sum_{j<=k} (sigma_j^2 - Lambda_j)
///       <= sigma_{k+1} (1/k) sum_{j<=k} (sigma_j - lambda_j),
///   sum_j (z - sigma_j)_+^2 >= sum_j (lambda_j^2 / Lambda_j) (z - Lambda_j/lambda_j)_+^2.
///
/// One report is returned; the three margins ride in `params` and `pass`
/// requires all of them.
pub fn corollary_checks(
    sigma: &Spectrum,
    lambda: &Spectrum,
    bilaplacian: &Spectrum,
    z: f64,
    k: u64,
) -> Result<BoundReport, RieszError> {
    if k + 1 > sigma.len_virtual() {
        return Err(RieszError::InsufficientSpectrum {
            need: format!("sigma_{} for the shifted-sum bound", k + 1),
        });
    }
    if k > lambda.len_virtual() || k > bilaplacian.len_virtual() {
        return Err(RieszError::InsufficientSpectrum {
            need: format!("lambda and Lambda through index {k}"),
        });
    }

    // weighted Riesz mean against the (z lambda - Lambda) partial sum
    let lhs1 = sigma.riesz_weighted(z)?;
    let mut rhs1_acc = Accum::default();
    for j in 1..=k {
        rhs1_acc.add(z * lambda.eigenvalue(j)? - bilaplacian.eigenvalue(j)?);
    }
    let rhs1 = rhs1_acc.total();
    let m1 = lhs1 - rhs1;
    let ok1 = m1 >= -slack_tol(lhs1, rhs1);

    // averaged square-versus-Bilaplacian comparison at k
    let mut quad = Accum::default();
    let mut gap = Accum::default();
    for j in 1..=k {
        let s = sigma.eigenvalue(j)?;
        quad.add(s * s - bilaplacian.eigenvalue(j)?);
        gap.add(s - lambda.eigenvalue(j)?);
    }
    let lhs2 = quad.total() / k as f64;
    let rhs2 = sigma.eigenvalue(k + 1)? * gap.total() / k as f64;
    let m2 = rhs2 - lhs2;
    let ok2 = m2 >= -slack_tol(lhs2, rhs2);

    // quadratic Riesz mean against the transplanted Bilaplacian one; terms
    // vanish once Lambda_j / lambda_j >= z, which happens no later than
    // lambda_j >= z, so the Laplacian count below z bounds the loop.
    let lhs3 = sigma.riesz_mean(2.0, z)?;
    let needed = lambda.counting(z)?;
    if needed > bilaplacian.len_virtual() {
        return Err(RieszError::InsufficientSpectrum {
            need: format!("Lambda through index {needed} for the quadratic bound"),
        });
    }
    let mut rhs3_acc = Accum::default();
    for j in 1..=needed {
        let lam = lambda.eigenvalue(j)?;
        let big = bilaplacian.eigenvalue(j)?;
        let shifted = z - big / lam;
        if shifted > 0.0 {
            rhs3_acc.add(lam * lam / big * shifted * shifted);
        }
    }
    let rhs3 = rhs3_acc.total();
    let m3 = lhs3 - rhs3;
    let ok3 = m3 >= -slack_tol(lhs3, rhs3);

    Ok(BoundReport {
        name: "averaged_variational_corollaries".to_string(),
        params: vec![
            ("z".to_string(), z),
            ("k".to_string(), k as f64),
            ("weighted_margin".to_string(), m1),
            ("shifted_sum_margin".to_string(), m2),
            ("quadratic_margin".to_string(), m3),
        ],
        lhs: lhs1,
        rhs: rhs1,
        margin: m1.min(m2).min(m3),
        pass: ok1 && ok2 && ok3,
    })
}

/// Norm data for a fixed test function phi on the domain.
#[derive(Clone, Copy, Debug)]
pub struct PhiNorms {
    pub sup: f64,
    pub l2_sq: f64,
    pub grad_l2_sq: f64,
}

/// Test-function lower bound on the weighted mean:
///
///   ||phi||_inf^2 sum_j (z - sigma_j)_+ sigma_j
///     >= (2 d B_d ||phi||_2^2 / ((d+2)(d+4))) (2 pi)^{-d} z^{2 + d/2}
///        - B_d (2 pi)^{-d} ||grad phi||_2^2 z^{1 + d/2}
///        - B_d (2 pi)^{-d} z^{d/2}.
pub fn phi_bound_check(
    sigma: &Spectrum,
    model: &WeylModel,
    z: f64,
    phi: PhiNorms,
) -> Result<BoundReport, RieszError> {
    let d = f64::from(model.d);
    let bd = unit_ball_volume(model.d);
    let two_pi_pow = (2.0 * std::f64::consts::PI).powi(-(model.d as i32));
    let lhs = phi.sup * phi.sup * sigma.riesz_weighted(z)?;
    let rhs = 2.0 * d * bd * phi.l2_sq / ((d + 2.0) * (d + 4.0)) * two_pi_pow
        * z.powf(2.0 + 0.5 * d)
        - bd * two_pi_pow * phi.grad_l2_sq * z.powf(1.0 + 0.5 * d)
        - bd * two_pi_pow * z.powf(0.5 * d);
    Ok(BoundReport {
        name: "phi_averaged_lower".to_string(),
        params: vec![
            ("z".to_string(), z),
            ("phi_sup".to_string(), phi.sup),
            ("phi_l2_sq".to_string(), phi.l2_sq),
            ("phi_grad_l2_sq".to_string(), phi.grad_l2_sq),
        ],
        lhs,
        rhs,
        margin: lhs - rhs,
        pass: lhs >= rhs - slack_tol(lhs, rhs),
    })
}

/// Which integrated/density pair a Tauberian diagnostic compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauberianPair {
    /// F = R_1 with density f = N, p = d/2.
    RieszOneVsCounting,
    /// F = R_2 with density f = 2 R_1, p = d/2 + 1.
    RieszTwoVsRieszOne,
}

#[derive(Clone, Copy, Debug)]
pub struct TauberianRow {
    pub z: f64,
    /// F(z) / (c z^{p+1}).
    pub integrated_ratio: f64,
    /// f(z) / ((p+1) c z^p).
    pub density_ratio: f64,
}

#[derive(Clone, Debug)]
pub struct TauberianReport {
    pub p: f64,
    pub c: f64,
    pub rows: Vec<TauberianRow>,
}

/// Ratios of an integrated Riesz mean and its density against the shared
/// Weyl constant: both columns tend to 1, the integrated one monotonically
/// faster, which is the numerical content of the one-sided Tauberian step.
pub fn tauberian_diagnostic(
    spec: &Spectrum,
    model: &WeylModel,
    pair: TauberianPair,
    z_grid: &[f64],
) -> Result<TauberianReport, RieszError> {
    let d = f64::from(model.d);
    let (p, c) = match pair {
        TauberianPair::RieszOneVsCounting => (0.5 * d, model.bly_constant()),
        TauberianPair::RieszTwoVsRieszOne => (0.5 * d + 1.0, model.r2_constant()),
    };
    let mut rows = Vec::with_capacity(z_grid.len());
    for &z in z_grid {
        if !(z > 0.0) {
            return Err(RieszError::BadRange { lo: z, hi: z });
        }
        let (big_f, small_f) = match pair {
            TauberianPair::RieszOneVsCounting => {
                (spec.riesz_mean(1.0, z)?, spec.counting(z)? as f64)
            }
            TauberianPair::RieszTwoVsRieszOne => {
                (spec.riesz_mean(2.0, z)?, 2.0 * spec.riesz_mean(1.0, z)?)
            }
        };
        rows.push(TauberianRow {
            z,
            integrated_ratio: big_f / (c * z.powf(p + 1.0)),
            density_ratio: small_f / ((p + 1.0) * c * z.powf(p)),
        });
    }
    Ok(TauberianReport { p, c, rows })
}

/// Bilaplacian first Riesz mean in the square-root variable, normalized by
/// its growth: lhs = z^{-(2+d/2)} sum_j (z^2 - Lambda_j)_+ compared against
/// the limit (4/(d+4)) (2 pi)^{-d} B_d |Omega|. On the interval the limit is
/// 4L/(5 pi) and is approached from below, so the report doubles as an
/// upper-bound check; `params` carries the ratio of the two sides.
pub fn bilaplacian_riesz_1d_check(
    bilaplacian: &Spectrum,
    model: &WeylModel,
    z: f64,
) -> Result<BoundReport, RieszError> {
    if model.d != 1 {
        return Err(RieszError::WrongDimension {
            expected: 1,
            got: model.d,
        });
    }
    let lhs = bilaplacian.riesz_mean(1.0, z * z)? / z.powf(2.5);
    let rhs = 0.8 * model.weyl_c0();
    Ok(BoundReport {
        name: "bilaplacian_riesz1_interval_upper".to_string(),
        params: vec![("z".to_string(), z), ("ratio".to_string(), lhs / rhs)],
        lhs,
        rhs,
        margin: rhs - lhs,
        pass: lhs <= rhs + slack_tol(lhs, rhs),
    })
}
