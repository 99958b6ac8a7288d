//! Eigenvalues on the unit ball in dimension d >= 2. Separation into radial
//! and spherical parts reduces both problems to Bessel zeros: the buckling
//! value with angular momentum l is x_{l+d/2,n}^2, the Dirichlet Laplacian
//! one is x_{l-1+d/2,n}^2, each carrying the spherical-harmonic multiplicity
//! M_{l,d}. Enumeration, the counting functions, the exact cross-problem
//! counting identity, the dimension-(d-1) counting defect, and the radial
//! eigenfunction residual all live here.

use rayon::prelude::*;
use thiserror::Error;

use crate::riesz_bounds::{Spectrum, SpectrumMeta};
use crate::specfun::{
    bessel_j, bessel_zero, count_zeros_below_sq, ultraspherical_j, zeros_below_sq,
    HalfIntegerOrder, SpecFunError,
};

#[derive(Debug, Error)]
pub enum BallError {
    #[error("dimension must be at least 2, got d = {d}")]
    BadDimension { d: u32 },
    #[error("multiplicity M(l={l}, d={d}) exceeds the 64-bit integer range")]
    MultiplicityOverflow { l: u32, d: u32 },
    #[error("count exceeds the 64-bit integer range at l = {l}")]
    CountOverflow { l: u32 },
    #[error("threshold must be positive and finite, got z = {z}")]
    BadThreshold { z: f64 },
    #[error("projected mode count {projected} exceeds the cap {cap}")]
    ResourceLimit { projected: u64, cap: u64 },
    #[error("count difference {diff} at l = {l} falls outside {{0, 1}}")]
    DefectOutOfRange { l: u32, diff: i64 },
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallKind {
    Buckling,
    DirichletLaplacian,
}

impl BallKind {
    pub fn label(self) -> &'static str {
        match self {
            BallKind::Buckling => "buckling",
            BallKind::DirichletLaplacian => "laplacian",
        }
    }

    /// Twice the Bessel order whose zeros give the radial eigenvalues at
    /// angular momentum l: nu = l + d/2 for buckling, l + d/2 - 1 for the
    /// Dirichlet Laplacian.
    fn twice_order(self, d: u32, l: u32) -> u32 {
        match self {
            BallKind::Buckling => 2 * l + d,
            BallKind::DirichletLaplacian => 2 * l + d - 2,
        }
    }
}

/// One radial eigenvalue: the n-th value at angular momentum l, entering the
/// spectrum with the multiplicity M_{l,d} of its spherical harmonics.
#[derive(Clone, Copy, Debug)]
pub struct RadialMode {
    pub d: u32,
    pub l: u32,
    pub n: u32,
    pub kind: BallKind,
    pub value: f64,
    pub multiplicity: u64,
}

/// Every mode with value < z_max, sorted by value.
#[derive(Clone, Debug)]
pub struct BallSpectrum {
    pub d: u32,
    pub kind: BallKind,
    pub z_max: f64,
    pub modes: Vec<RadialMode>,
}

impl BallSpectrum {
    /// Total eigenvalue count including multiplicities.
    pub fn virtual_count(&self) -> u64 {
        self.modes.iter().map(|m| m.multiplicity).sum()
    }

    /// Repackage for the Riesz-mean machinery.
    pub fn to_spectrum(&self) -> Spectrum {
        let entries: Vec<(f64, u64)> = self
            .modes
            .iter()
            .map(|m| (m.value, m.multiplicity))
            .collect();
        Spectrum::new(
            entries,
            SpectrumMeta {
                domain: format!("ball d={}", self.d),
                kind: self.kind.label().to_string(),
                d: self.d,
                z_max: self.z_max,
            },
        )
        .expect("enumerated ball modes are sorted with positive multiplicities")
    }
}

fn check_dim(d: u32) -> Result<(), BallError> {
    if d < 2 {
        return Err(BallError::BadDimension { d });
    }
    Ok(())
}

fn check_threshold(z: f64) -> Result<(), BallError> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(BallError::BadThreshold { z });
    }
    Ok(())
}

/// C(n, k) exactly, 0 when n < k. The running product is divided down at
/// every step, so intermediate values stay within u128 for every argument
/// this module can produce.
fn binom(n: i64, k: i64) -> u128 {
    if n < k || n < 0 || k < 0 {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul(n - i)
            .expect("binomial overflow beyond u128");
        acc /= i + 1;
    }
    acc
}

/// Dimension of the space of spherical harmonics of degree l in R^d:
/// M_{l,d} = C(l+d-1, d-1) - C(l+d-3, d-1).
pub fn multiplicity(l: u32, d: u32) -> Result<u64, BallError> {
    check_dim(d)?;
    let (l, d) = (i64::from(l), i64::from(d));
    let m = binom(l + d - 1, d - 1) - binom(l + d - 3, d - 1);
    u64::try_from(m).map_err(|_| BallError::MultiplicityOverflow {
        l: l as u32,
        d: d as u32,
    })
}

/// The n-th buckling eigenvalue with angular momentum l: x_{l+d/2,n}^2.
pub fn buckling_eigenvalue(d: u32, l: u32, n: u32) -> Result<f64, BallError> {
    check_dim(d)?;
    let order = HalfIntegerOrder::from_twice(BallKind::Buckling.twice_order(d, l));
    let x = bessel_zero(order, n)?.value;
    Ok(x * x)
}

/// The n-th Dirichlet Laplacian eigenvalue with angular momentum l:
/// x_{l-1+d/2,n}^2.
pub fn dirichlet_eigenvalue(d: u32, l: u32, n: u32) -> Result<f64, BallError> {
    check_dim(d)?;
    let order = HalfIntegerOrder::from_twice(BallKind::DirichletLaplacian.twice_order(d, l));
    let x = bessel_zero(order, n)?.value;
    Ok(x * x)
}

/// Number of eigenvalues below z (strict) at a single angular momentum,
/// without the multiplicity weight.
pub fn counting_for_angular_momentum(
    d: u32,
    kind: BallKind,
    l: u32,
    z: f64,
) -> Result<u64, BallError> {
    check_dim(d)?;
    let order = HalfIntegerOrder::from_twice(kind.twice_order(d, l));
    Ok(count_zeros_below_sq(order, z)?)
}

/// N(z) = sum_l M_{l,d} #{n : value_{l,n} < z}. The l-sum stops at the first
/// angular momentum whose lowest eigenvalue already clears z, which happens
/// because the first zero of J_nu exceeds nu.
pub fn counting(d: u32, kind: BallKind, z: f64) -> Result<u64, BallError> {
    check_dim(d)?;
    check_threshold(z)?;
    let mut total: u128 = 0;
    for l in 0.. {
        let per_l = counting_for_angular_momentum(d, kind, l, z)?;
        if per_l == 0 {
            break;
        }
        total += u128::from(multiplicity(l, d)?) * u128::from(per_l);
    }
    u64::try_from(total).map_err(|_| BallError::CountOverflow { l: 0 })
}

/// All modes with value < z_max. Work is split by angular momentum; the
/// per-l zero tables are independent, so the fills run in parallel before a
/// single deterministic sort by (value, l).
pub fn enumerate(
    d: u32,
    kind: BallKind,
    z_max: f64,
    max_modes: u64,
) -> Result<BallSpectrum, BallError> {
    check_dim(d)?;
    check_threshold(z_max)?;

    // crude over-count of the radial (l, n) lattice below z_max
    let projected = (z_max / (2.0 * std::f64::consts::PI) * 1.1 + z_max.sqrt() + 16.0) as u64;
    if projected > max_modes {
        return Err(BallError::ResourceLimit {
            projected,
            cap: max_modes,
        });
    }

    let l_max = z_max.sqrt().ceil() as u32;
    let per_l: Vec<Vec<RadialMode>> = (0..=l_max)
        .into_par_iter()
        .map(|l| -> Result<Vec<RadialMode>, BallError> {
            let mult = multiplicity(l, d)?;
            let order = HalfIntegerOrder::from_twice(kind.twice_order(d, l));
            let zeros = zeros_below_sq(order, z_max)?;
            Ok(zeros
                .iter()
                .enumerate()
                .map(|(i, &x)| RadialMode {
                    d,
                    l,
                    n: (i + 1) as u32,
                    kind,
                    value: x * x,
                    multiplicity: mult,
                })
                .collect())
        })
        .collect::<Result<_, _>>()?;

    let mut modes: Vec<RadialMode> = per_l.into_iter().flatten().collect();
    modes.sort_unstable_by(|a, b| a.value.total_cmp(&b.value).then(a.l.cmp(&b.l)));
    Ok(BallSpectrum {
        d,
        kind,
        z_max,
        modes,
    })
}

/// N^B_d(z) - N^D_d(z) + sum_l M_{l,d-1} N^D_{d,l}(z), which telescopes to
/// exactly zero: the buckling count at angular momentum l equals the
/// Dirichlet count at l+1, and M_{l,d} - M_{l-1,d} = M_{l,d-1}.
pub fn counting_identity_gap(d: u32, z: f64) -> Result<i64, BallError> {
    if d < 3 {
        return Err(BallError::BadDimension { d });
    }
    check_threshold(z)?;
    let nb = counting(d, BallKind::Buckling, z)? as i128;
    let nd = counting(d, BallKind::DirichletLaplacian, z)? as i128;
    let mut weighted: i128 = 0;
    for l in 0.. {
        let per_l = counting_for_angular_momentum(d, BallKind::DirichletLaplacian, l, z)?;
        if per_l == 0 {
            break;
        }
        weighted += i128::from(multiplicity(l, d - 1)?) * i128::from(per_l);
    }
    i64::try_from(nb - nd + weighted).map_err(|_| BallError::CountOverflow { l: 0 })
}

/// sum_l M_{l,d-1} (N^D_{d-1,l}(z) - N^D_{d,l}(z)). Interlacing of Bessel
/// zeros half an order apart keeps every per-l difference in {0, 1}; that is
/// checked term by term. The total equals N^B_d(z) - N^D_d(z) + N^D_{d-1}(z)
/// and measures the second-order counting defect between dimensions.
pub fn cross_dimension_defect(d: u32, z: f64) -> Result<i64, BallError> {
    if d < 3 {
        return Err(BallError::BadDimension { d });
    }
    check_threshold(z)?;
    let mut total: i128 = 0;
    for l in 0.. {
        let lower = counting_for_angular_momentum(d - 1, BallKind::DirichletLaplacian, l, z)?;
        let upper = counting_for_angular_momentum(d, BallKind::DirichletLaplacian, l, z)?;
        if lower == 0 {
            break;
        }
        let diff = lower as i64 - upper as i64;
        if !(0..=1).contains(&diff) {
            return Err(BallError::DefectOutOfRange { l, diff });
        }
        total += i128::from(multiplicity(l, d - 1)?) * i128::from(diff);
    }
    i64::try_from(total).map_err(|_| BallError::CountOverflow { l: 0 })
}

/// Clamped-plate residual data for one buckling mode. The radial factor
/// R(r) = j_l(x) r^l - j_l(x r) (with x = sqrt(sigma) and j_l the
/// ultraspherical Bessel function) vanishes at r = 1 by construction; its
/// derivative there vanishes exactly when x is a true zero of J_{l+d/2},
/// so `boundary_derivative` measures the quality of the computed zero.
#[derive(Clone, Copy, Debug)]
pub struct RadialResidual {
    pub boundary_value: f64,
    pub boundary_derivative: f64,
    /// max |R| over the interior grid, the natural normalization.
    pub scale: f64,
    pub interior_sign_changes: u32,
}

/// d/dz of the ultraspherical j_l, via z^{-d/2} (l J_nu(z) - z J_{nu+1}(z))
/// with nu = l + d/2 - 1.
fn ultraspherical_j_prime(d: u32, l: u32, z: f64) -> Result<f64, BallError> {
    let nu = HalfIntegerOrder::from_twice(2 * l + d - 2);
    let nu_up = HalfIntegerOrder::from_twice(2 * l + d);
    let j = bessel_j(nu, z)?;
    let j_up = bessel_j(nu_up, z)?;
    Ok(z.powf(-0.5 * f64::from(d)) * (f64::from(l) * j - z * j_up))
}

/// Evaluate the buckling radial factor for mode (d, l, n) on [0, 1]:
/// boundary value and derivative at r = 1, interior scale, and the count of
/// interior sign changes (which must be n - 1).
pub fn radial_residual(d: u32, l: u32, n: u32) -> Result<RadialResidual, BallError> {
    check_dim(d)?;
    let order = HalfIntegerOrder::from_twice(BallKind::Buckling.twice_order(d, l));
    let x = bessel_zero(order, n)?.value;
    let jl_at_x = ultraspherical_j(d, l, x)?;

    let profile = |r: f64| -> Result<f64, BallError> {
        Ok(jl_at_x * r.powi(l as i32) - ultraspherical_j(d, l, x * r)?)
    };

    let boundary_value = profile(1.0)?.abs();
    let boundary_derivative =
        (f64::from(l) * jl_at_x - x * ultraspherical_j_prime(d, l, x)?).abs();

    let m = (8.0 * x / std::f64::consts::PI).ceil() as usize + 64;
    let mut scale = 0.0f64;
    let mut sign_changes = 0u32;
    let mut prev_sign = 0i8;
    for i in 1..m {
        let v = profile(i as f64 / m as f64)?;
        scale = scale.max(v.abs());
        let sign = if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        };
        if sign != 0 {
            if prev_sign != 0 && sign != prev_sign {
                sign_changes += 1;
            }
            prev_sign = sign;
        }
    }
    Ok(RadialResidual {
        boundary_value,
        boundary_derivative,
        scale,
        interior_sign_changes: sign_changes,
    })
}
