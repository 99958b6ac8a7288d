//! Spectral computations for the clamped buckling problem on balls and
//! intervals: Bessel machinery, exact spectra, Riesz-mean and Weyl-law
//! diagnostics, and finite-dimensional averaged variational checks.

pub mod avp_finite;
pub mod ball_spectra;
mod dd;
pub mod interval_spectra;
pub mod riesz_bounds;
pub mod specfun;
