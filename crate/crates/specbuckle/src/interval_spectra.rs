//! One-dimensional spectra on the interval (0, L): the Dirichlet Laplacian
//! lambda_j = (pi j / L)^2, the clamped buckling values
//! sigma_j = ((pi (j+1) - t_j) / L)^2, and the clamped-beam Bilaplacian
//! values Lambda_j = (x_j / L)^4 with cos(x_j) cosh(x_j) = 1.
//!
//! For odd j the buckling phase t_j is exactly 0 (sigma_j then coincides
//! with lambda_{j+1}); for even j it is the unique root in (0, pi) of
//! tan(t/2) = 2 / (pi (j+1) - t), solved here in the equivalent form
//! sin(t/2) - 2 cos(t/2) / (pi (j+1) - t) = 0, which is increasing across
//! the bracket. The beam equation is solved as cos x = sech x, with sech
//! written as 2 e^{-x} / (1 + e^{-2x}) so nothing overflows at large x.

use std::f64::consts::PI;

use thiserror::Error;

use crate::riesz_bounds::{BoundReport, Spectrum, SpectrumMeta};

#[derive(Debug, Error)]
pub enum IntervalError {
    #[error("eigenvalue index j is 1-based, got j = 0")]
    IndexZero,
    #[error("interval length must be positive and finite, got L = {l}")]
    BadLength { l: f64 },
    #[error("the buckling phase t_j is defined for even j, got j = {j}")]
    OddIndex { j: u32 },
    #[error("defining relation residual {residual:e} exceeds {budget:e} at j = {j}")]
    RelationResidual { j: u32, residual: f64, budget: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IntervalKind {
    Laplacian,
    Buckling,
    Bilaplacian,
}

impl IntervalKind {
    pub fn label(self) -> &'static str {
        match self {
            IntervalKind::Laplacian => "laplacian",
            IntervalKind::Buckling => "buckling",
            IntervalKind::Bilaplacian => "bilaplacian",
        }
    }
}

/// One interval eigenvalue. `aux` carries the quantity that pins the value
/// beyond the index: the phase t_j for buckling (0 when j is odd), the gap
/// s_j = |pi (j + 1/2) - x_j| for the beam, and 0 for the Laplacian.
#[derive(Clone, Copy, Debug)]
pub struct IntervalEigenvalue {
    pub j: u32,
    pub kind: IntervalKind,
    pub value: f64,
    pub aux: f64,
}

fn check_args(j: u32, l: f64) -> Result<(), IntervalError> {
    if j == 0 {
        return Err(IntervalError::IndexZero);
    }
    if !(l > 0.0 && l.is_finite()) {
        return Err(IntervalError::BadLength { l });
    }
    Ok(())
}

/// lambda_j = (pi j / L)^2.
pub fn lambda_1d(j: u32, l: f64) -> Result<IntervalEigenvalue, IntervalError> {
    check_args(j, l)?;
    let q = PI * f64::from(j) / l;
    Ok(IntervalEigenvalue {
        j,
        kind: IntervalKind::Laplacian,
        value: q * q,
        aux: 0.0,
    })
}

/// The phase t_j in (0, pi) for even j, solved to machine accuracy by
/// bisection on the increasing form sin(t/2) - 2 cos(t/2) / (pi (j+1) - t).
pub fn buckling_t(j: u32) -> Result<f64, IntervalError> {
    if j == 0 {
        return Err(IntervalError::IndexZero);
    }
    if j % 2 != 0 {
        return Err(IntervalError::OddIndex { j });
    }
    let theta0 = PI * f64::from(j + 1);
    let f = |t: f64| (0.5 * t).sin() - 2.0 * (0.5 * t).cos() / (theta0 - t);
    let (mut lo, mut hi) = (0.0f64, PI);
    debug_assert!(f(lo) < 0.0 && f(hi) > 0.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 {
            break;
        }
    }
    let t = 0.5 * (lo + hi);

    // the root must satisfy the original relation tan(t/2) (pi(j+1) - t) = 2
    let residual = ((0.5 * t).tan() * (theta0 - t) - 2.0).abs();
    if residual > 1e-10 {
        return Err(IntervalError::RelationResidual {
            j,
            residual,
            budget: 1e-10,
        });
    }
    Ok(t)
}

/// sigma_j = ((pi (j+1) - t_j) / L)^2, with t_j = 0 for odd j.
pub fn sigma_1d(j: u32, l: f64) -> Result<IntervalEigenvalue, IntervalError> {
    check_args(j, l)?;
    let t = if j % 2 == 0 { buckling_t(j)? } else { 0.0 };
    let q = (PI * f64::from(j + 1) - t) / l;
    Ok(IntervalEigenvalue {
        j,
        kind: IntervalKind::Buckling,
        value: q * q,
        aux: t,
    })
}

/// Lambda_j = (x_j / L)^4 where x_j is the j-th root of cos x cosh x = 1,
/// bracketed in (pi j, pi (j+1)). `aux` is s_j = |pi (j + 1/2) - x_j|; at
/// the root |sin s_j| = sech x_j, which is verified before returning.
pub fn biharmonic_1d(j: u32, l: f64) -> Result<IntervalEigenvalue, IntervalError> {
    check_args(j, l)?;
    let sech = |x: f64| 2.0 * (-x).exp() / (1.0 + (-2.0 * x).exp());
    let g = |x: f64| x.cos() - sech(x);
    let (mut lo, mut hi) = (PI * f64::from(j), PI * f64::from(j + 1));
    // g has the sign of cos at the bracket ends: (-1)^j on the left
    let left_positive = j % 2 == 0;
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) == left_positive {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-16 * lo {
            break;
        }
    }
    let x = 0.5 * (lo + hi);
    let s = (PI * (f64::from(j) + 0.5) - x).abs();

    let residual = (s.sin().powi(2) - sech(x).powi(2)).abs();
    if residual > 1e-10 {
        return Err(IntervalError::RelationResidual {
            j,
            residual,
            budget: 1e-10,
        });
    }
    let r = x / l;
    Ok(IntervalEigenvalue {
        j,
        kind: IntervalKind::Bilaplacian,
        value: (r * r) * (r * r),
        aux: s,
    })
}

/// For even j, the beam phase gap s_j against half the buckling phase t_j.
/// The report also carries the enabling comparison sigma_j <= 4 sqrt(Lambda_j)
/// under which the strict inequality s_j < t_j / 2 is asserted.
pub fn sj_lt_half_tj(j: u32) -> Result<BoundReport, IntervalError> {
    let t = buckling_t(j)?;
    let beam = biharmonic_1d(j, 1.0)?;
    let sigma = sigma_1d(j, 1.0)?;
    let s = beam.aux;
    let four_sqrt_lambda = 4.0 * beam.value.sqrt();
    let enabled = sigma.value <= four_sqrt_lambda;
    Ok(BoundReport {
        name: "beam_phase_gap_below_half_buckling_phase".to_string(),
        params: vec![
            ("j".to_string(), f64::from(j)),
            ("sigma_j".to_string(), sigma.value),
            ("four_sqrt_Lambda_j".to_string(), four_sqrt_lambda),
            ("t_j".to_string(), t),
            ("s_j".to_string(), s),
        ],
        lhs: s,
        rhs: 0.5 * t,
        margin: 0.5 * t - s,
        pass: enabled && s < 0.5 * t,
    })
}

/// Boundary residual of the closed-form buckling eigenfunction, after
/// normalizing its maximum over [0, L] to 1. The mode is
/// u = A (cos(g x) - 1) + sin(g x) - g x with g = sqrt(sigma_j) and A fixed
/// by u(L) = 0; for odd j that degenerates (cos(gL) = 1) and the mode is
/// u = 1 - cos(g x). Returned is max(|u(L)|, |u'(L)| / g) / max|u|.
pub fn buckling_mode_residual(j: u32, l: f64) -> Result<f64, IntervalError> {
    let sigma = sigma_1d(j, l)?;
    let g = sigma.value.sqrt();
    let odd = j % 2 == 1;
    let a = if odd {
        0.0
    } else {
        let theta = g * l;
        (theta.sin() - theta) / (1.0 - theta.cos())
    };
    let u = |x: f64| {
        let gx = g * x;
        if odd {
            1.0 - gx.cos()
        } else {
            a * (gx.cos() - 1.0) + gx.sin() - gx
        }
    };
    let du_over_g = |x: f64| {
        let gx = g * x;
        if odd {
            gx.sin()
        } else {
            -a * gx.sin() + gx.cos() - 1.0
        }
    };
    let mut peak = 0.0f64;
    let m = 2000;
    for i in 0..=m {
        let x = l * f64::from(i) / f64::from(m);
        peak = peak.max(u(x).abs());
    }
    Ok(u(l).abs().max(du_over_g(l).abs()) / peak)
}

/// The first j_max eigenvalues of the requested kind.
pub fn enumerate(
    kind: IntervalKind,
    l: f64,
    j_max: u32,
) -> Result<Vec<IntervalEigenvalue>, IntervalError> {
    check_args(j_max.max(1), l)?;
    (1..=j_max)
        .map(|j| match kind {
            IntervalKind::Laplacian => lambda_1d(j, l),
            IntervalKind::Buckling => sigma_1d(j, l),
            IntervalKind::Bilaplacian => biharmonic_1d(j, l),
        })
        .collect()
}

/// The same enumeration packaged for the Riesz-mean machinery (all interval
/// eigenvalues are simple).
pub fn interval_spectrum(
    kind: IntervalKind,
    l: f64,
    j_max: u32,
) -> Result<Spectrum, IntervalError> {
    let values = enumerate(kind, l, j_max)?;
    let entries: Vec<(f64, u64)> = values.iter().map(|e| (e.value, 1)).collect();
    let z_max = entries.last().map_or(0.0, |&(v, _)| v);
    Ok(Spectrum::new(
        entries,
        SpectrumMeta {
            domain: format!("interval L={l}"),
            kind: kind.label().to_string(),
            d: 1,
            z_max,
        },
    )
    .expect("interval eigenvalues are sorted and simple"))
}
