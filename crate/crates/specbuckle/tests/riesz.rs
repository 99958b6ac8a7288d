use std::f64::consts::PI;

use specbuckle::ball_spectra::{enumerate, BallKind};
use specbuckle::interval_spectra::{interval_spectrum, IntervalKind};
use specbuckle::riesz_bounds::{
    asymptotic_fit, asymptotic_fit_r1, bilaplacian_riesz_1d_check, bly_upper_check,
    chain_and_payne_checks, corollary_checks, legendre_dual_check, legendre_transform_r1,
    phi_bound_check, sum_lower_check, tauberian_diagnostic, PhiNorms, RieszError, SpectralRelation,
    Spectrum, SpectrumMeta, TauberianPair, WeylModel,
};

const CAP: u64 = 50_000_000;

// grid offset keeping verification points off exact eigenvalues
const TIE_OFFSET: f64 = PI * 1e-3;

fn buckling_1d(j_max: u32) -> Spectrum {
    interval_spectrum(IntervalKind::Buckling, 1.0, j_max).unwrap()
}

fn laplacian_1d(j_max: u32) -> Spectrum {
    interval_spectrum(IntervalKind::Laplacian, 1.0, j_max).unwrap()
}

fn bilaplacian_1d(j_max: u32) -> Spectrum {
    interval_spectrum(IntervalKind::Bilaplacian, 1.0, j_max).unwrap()
}

fn disc_buckling(z_max: f64) -> Spectrum {
    enumerate(2, BallKind::Buckling, z_max, CAP)
        .unwrap()
        .to_spectrum()
}

/// Composite Simpson quadrature on an even number of panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    assert!(panels % 2 == 0);
    let h = (b - a) / panels as f64;
    let mut acc = f(a) + f(b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + h * i as f64);
    }
    acc * h / 3.0
}

#[test]
fn counting_basics() {
    let sigma = buckling_1d(200);
    assert_eq!(sigma.counting(1.0).unwrap(), 0);
    assert_eq!(sigma.counting(40.0).unwrap(), 1);
    // strict at an exact eigenvalue
    let s2 = sigma.eigenvalue(2).unwrap();
    assert_eq!(sigma.counting(s2).unwrap(), 1);

    // multiplicity jump on the disc, where l >= 1 modes are double
    let disc = disc_buckling(100.0);
    let (v, m) = disc
        .entries()
        .iter()
        .copied()
        .find(|&(_, m)| m == 2)
        .expect("the disc has double eigenvalues");
    let below = disc.counting(v - 1e-9).unwrap();
    let above = disc.counting(v + 1e-9).unwrap();
    assert_eq!(above - below, m);
}

#[test]
fn riesz_mean_values() {
    let sigma = buckling_1d(200);
    assert_eq!(sigma.riesz_mean(1.0, 30.0).unwrap(), 0.0);
    let r1 = sigma.riesz_mean(1.0, 100.0).unwrap();
    assert!(
        (r1 - 79.7586681699).abs() < 1e-9,
        "R_1(100) = {r1} against the frozen two-term value"
    );
}

#[test]
fn query_guards() {
    let sigma = buckling_1d(10);
    assert!(matches!(
        sigma.counting(sigma.meta.z_max + 1.0),
        Err(RieszError::QueryBeyondEnumeration { .. })
    ));
    assert!(matches!(
        sigma.riesz_mean(0.0, 50.0),
        Err(RieszError::BadRieszOrder { .. })
    ));
    assert!(matches!(
        sigma.eigenvalue(0),
        Err(RieszError::IndexOutOfRange { .. })
    ));
    assert!(matches!(
        sigma.eigenvalue(11),
        Err(RieszError::IndexOutOfRange { .. })
    ));

    let meta = SpectrumMeta {
        domain: "test".to_string(),
        kind: "test".to_string(),
        d: 1,
        z_max: 10.0,
    };
    assert!(matches!(
        Spectrum::new(vec![(2.0, 1), (1.0, 1)], meta.clone()),
        Err(RieszError::Unsorted { index: 1 })
    ));
    assert!(matches!(
        Spectrum::new(vec![(1.0, 0)], meta),
        Err(RieszError::ZeroMultiplicity { index: 0 })
    ));
}

#[test]
fn legendre_transform_values() {
    let sigma = buckling_1d(50);
    assert_eq!(legendre_transform_r1(&sigma, 0.0).unwrap(), 0.0);

    let w1 = legendre_transform_r1(&sigma, 1.0).unwrap();
    assert!(((w1 - 4.0 * PI * PI) / w1).abs() < 1e-15);

    let w15 = legendre_transform_r1(&sigma, 1.5).unwrap();
    assert!((w15 - 79.859874717211).abs() < 1e-9, "L[R_1](1.5) = {w15}");

    assert!(legendre_transform_r1(&sigma, 50.5).is_err());
    assert!(legendre_transform_r1(&sigma, 50.0).is_ok());
}

#[test]
fn legendre_transform_is_the_sup() {
    // L[R_1](w) = sup_z (z w - R_1(z)), checked on a fine grid whose
    // resolution bounds how far the discrete sup can fall short
    let sigma = buckling_1d(50);
    let z_hi = sigma.eigenvalue(10).unwrap();
    let steps = 40_000usize;
    for &w in &[0.5, 1.0, 2.5, 3.0, 7.25] {
        let formula = legendre_transform_r1(&sigma, w).unwrap();
        let mut sup = f64::NEG_INFINITY;
        for i in 0..=steps {
            let z = z_hi * i as f64 / steps as f64;
            sup = sup.max(z * w - sigma.riesz_mean(1.0, z).unwrap());
        }
        let grid_tol = (z_hi / steps as f64) * (w + 1.0);
        assert!(
            (formula - sup).abs() <= grid_tol,
            "w = {w}: formula {formula}, grid sup {sup}"
        );
        assert!(sup <= formula + 1e-9, "grid sup cannot exceed the transform");
    }
}

#[test]
fn riesz_integral_identities_1d() {
    let sigma = buckling_1d(60);
    let z = 900.0 + TIE_OFFSET;

    // R_2(z) = 2 int_0^z R_1(t) dt; the integrand is continuous
    let r2 = sigma.riesz_mean(2.0, z).unwrap();
    let quad = 2.0 * simpson(|t| sigma.riesz_mean(1.0, t).unwrap(), 0.0, z, 10_000);
    assert!(((r2 - quad) / r2).abs() < 1e-6, "R_2 = {r2}, 2 int R_1 = {quad}");

    // R_2(z) = 2 int_0^z (z - t) N(t) dt; the integrand jumps at every
    // eigenvalue, so this form needs the same fine grid as int N below
    let quad_n = 2.0 * simpson(
        |t| (z - t) * sigma.counting(t).unwrap() as f64,
        0.0,
        z,
        2_000_000,
    );
    assert!(((r2 - quad_n) / r2).abs() < 1e-6);

    // R_1(z) = int_0^z N(t) dt; a piecewise-constant integrand needs many
    // more panels for the same accuracy
    let r1 = sigma.riesz_mean(1.0, z).unwrap();
    let quad_r1 = simpson(|t| sigma.counting(t).unwrap() as f64, 0.0, z, 2_000_000);
    assert!(((r1 - quad_r1) / r1).abs() < 1e-6, "R_1 = {r1}, int N = {quad_r1}");
}

#[test]
fn riesz_integral_identities_disc() {
    let sigma = disc_buckling(2100.0);
    let z = 2000.0 + TIE_OFFSET;
    let r2 = sigma.riesz_mean(2.0, z).unwrap();

    let quad = 2.0 * simpson(|t| sigma.riesz_mean(1.0, t).unwrap(), 0.0, z, 10_000);
    assert!(((r2 - quad) / r2).abs() < 1e-6);

    let quad_n = 2.0 * simpson(
        |t| (z - t) * sigma.counting(t).unwrap() as f64,
        0.0,
        z,
        2_000_000,
    );
    assert!(((r2 - quad_n) / r2).abs() < 1e-6);
}

#[test]
fn bly_upper_bound() {
    let sigma = buckling_1d(420);
    let model = WeylModel::buckling_interval(1.0);

    let at_100 = bly_upper_check(&sigma, &model, 100.0).unwrap();
    assert!(at_100.pass);
    let expected_rhs = 2000.0 / (3.0 * PI);
    assert!(((at_100.rhs - expected_rhs) / expected_rhs).abs() < 1e-12);

    let trivial = bly_upper_check(&sigma, &model, 4.0 * PI * PI).unwrap();
    assert_eq!(trivial.lhs, 0.0);
    assert!(trivial.pass);

    let mut z = 1.0;
    while z <= 1e6 {
        assert!(bly_upper_check(&sigma, &model, z + TIE_OFFSET).unwrap().pass);
        z *= 2.0;
    }

    let disc = disc_buckling(1e6);
    let disc_model = WeylModel::buckling_ball(2).unwrap();
    let mut z = 16.0;
    while z <= 1e6 {
        assert!(
            bly_upper_check(&disc, &disc_model, z + TIE_OFFSET).unwrap().pass,
            "disc at z = {z}"
        );
        z *= 2.0;
    }
}

#[test]
fn sum_lower_bound() {
    let sigma = buckling_1d(420);
    let model = WeylModel::buckling_interval(1.0);
    let k1 = sum_lower_check(&sigma, &model, 1).unwrap();
    assert!(k1.pass);
    assert!(((k1.lhs - 12.0 * PI * PI) / k1.lhs).abs() < 1e-12);
    assert!(((k1.rhs - PI * PI) / k1.rhs).abs() < 1e-12);
    for k in 1..=400 {
        assert!(sum_lower_check(&sigma, &model, k).unwrap().pass, "1D k = {k}");
    }

    let disc = disc_buckling(1e6);
    let disc_model = WeylModel::buckling_ball(2).unwrap();
    for k in 1..=100u64 {
        assert!(sum_lower_check(&disc, &disc_model, k).unwrap().pass);
    }
    let mut k = 128;
    while k <= 8192 {
        assert!(sum_lower_check(&disc, &disc_model, k).unwrap().pass);
        k *= 2;
    }
    assert!(sum_lower_check(&disc, &disc_model, 10_000).unwrap().pass);
}

#[test]
fn legendre_duality() {
    let sigma = buckling_1d(420);
    let model = WeylModel::buckling_interval(1.0);
    for w in 1..=300u32 {
        assert!(
            legendre_dual_check(&sigma, &model, f64::from(w)).unwrap().pass,
            "1D w = {w}"
        );
    }

    let disc = disc_buckling(1e6);
    let disc_model = WeylModel::buckling_ball(2).unwrap();
    let mut w = 1.0;
    while w <= 2e5 {
        assert!(
            legendre_dual_check(&disc, &disc_model, w).unwrap().pass,
            "disc w = {w}"
        );
        w *= 2.0;
    }
}

#[test]
fn two_term_model_formulas() {
    let interval = WeylModel::buckling_interval(1.0);
    assert_eq!(interval.boundary_factor, 0.75);
    let z = 1e4;
    let (_, r1_model) = interval.two_term(z);
    let explicit = 2.0 / (3.0 * PI) * z.powf(1.5) - 1.5 * z;
    assert!(((r1_model - explicit) / explicit).abs() < 1e-12);

    let disc = WeylModel::buckling_ball(2).unwrap();
    assert!((disc.boundary_factor - (0.25 + 1.0 / PI)).abs() < 1e-14);
    let (n_model, _) = disc.two_term(z);
    let explicit_n = z / 4.0 - (0.5 + 2.0 / PI) * z.sqrt();
    assert!(((n_model - explicit_n) / explicit_n).abs() < 1e-12);

    // leading coefficients
    assert!((disc.weyl_c0() - 0.25).abs() < 1e-14);
    assert!((interval.weyl_c0() - 1.0 / PI).abs() < 1e-14);
    let ball3 = WeylModel::buckling_ball(3).unwrap();
    assert!((ball3.weyl_c0() - 2.0 / (9.0 * PI)).abs() < 1e-14);
    assert!((ball3.boundary_factor - 0.5).abs() < 1e-14);
    assert_eq!(WeylModel::dirichlet_ball(2).boundary_factor, 0.25);
}

#[test]
fn weyl_and_riesz2_convergence() {
    // N z^{-d/2} -> c0 and R_2 z^{-2-d/2} -> 8 c0 / ((d+2)(d+4)), both
    // within 1% at the top of the enumerated range
    struct Case {
        name: &'static str,
        spec: Spectrum,
        model: WeylModel,
        z: f64,
    }
    let cases = [
        Case {
            name: "interval",
            spec: buckling_1d(330),
            model: WeylModel::buckling_interval(1.0),
            z: 1e6,
        },
        Case {
            name: "disc",
            spec: disc_buckling(1.0001e6),
            model: WeylModel::buckling_ball(2).unwrap(),
            z: 1e6,
        },
        Case {
            name: "ball d=3",
            spec: enumerate(3, BallKind::Buckling, 1.3001e6, CAP)
                .unwrap()
                .to_spectrum(),
            model: WeylModel::buckling_ball(3).unwrap(),
            z: 1.3e6,
        },
    ];
    for c in cases {
        let d = f64::from(c.model.d);
        let z = c.z + TIE_OFFSET;
        let n_ratio = c.spec.counting(z).unwrap() as f64 / (c.model.weyl_c0() * z.powf(0.5 * d));
        assert!(
            (n_ratio - 1.0).abs() < 0.01,
            "{}: N ratio {n_ratio}",
            c.name
        );
        let r2_ratio =
            c.spec.riesz_mean(2.0, z).unwrap() / (c.model.r2_constant() * z.powf(2.0 + 0.5 * d));
        assert!(
            (r2_ratio - 1.0).abs() < 0.01,
            "{}: R_2 ratio {r2_ratio}",
            c.name
        );
    }
}

#[test]
fn chain_and_payne_relations() {
    let sigma = buckling_1d(520);
    let lambda = laplacian_1d(520);
    let bilap = bilaplacian_1d(520);

    let strict = chain_and_payne_checks(
        &sigma,
        &lambda,
        Some(&bilap),
        SpectralRelation::StrictProduct,
        1,
    )
    .unwrap();
    assert!(strict.pass);
    assert!((strict.lhs - 500.5639017404).abs() < 1e-8);
    assert!(((strict.rhs - 4.0 * PI.powi(4)) / strict.rhs).abs() < 1e-12);

    for j in 1..=500 {
        for relation in [
            SpectralRelation::SqrtChain,
            SpectralRelation::ProductLower,
            SpectralRelation::StrictProduct,
        ] {
            let report =
                chain_and_payne_checks(&sigma, &lambda, Some(&bilap), relation, j).unwrap();
            assert!(report.pass, "j = {j}, {relation:?}: {report:?}");
        }
    }

    let second = chain_and_payne_checks(
        &sigma,
        &lambda,
        None,
        SpectralRelation::SecondBelowFirst,
        1,
    )
    .unwrap();
    assert!(second.pass);
    assert_eq!(second.lhs, second.rhs, "1D lambda_2 = sigma_1 exactly");

    // equality case on the ball
    let ball_sigma = enumerate(3, BallKind::Buckling, 200.0, CAP)
        .unwrap()
        .to_spectrum();
    let ball_lambda = enumerate(3, BallKind::DirichletLaplacian, 200.0, CAP)
        .unwrap()
        .to_spectrum();
    let ball_second = chain_and_payne_checks(
        &ball_sigma,
        &ball_lambda,
        None,
        SpectralRelation::SecondBelowFirst,
        1,
    )
    .unwrap();
    assert!(ball_second.pass);
    assert_eq!(ball_second.lhs, ball_second.rhs);

    assert!(matches!(
        chain_and_payne_checks(&sigma, &lambda, None, SpectralRelation::SqrtChain, 1),
        Err(RieszError::MissingBilaplacian)
    ));
}

#[test]
fn corollary_inequalities() {
    let sigma = buckling_1d(520);
    let lambda = laplacian_1d(520);
    let bilap = bilaplacian_1d(520);

    for &z in &[30.0, 100.0, 500.0, 2000.0, 5000.0] {
        for &k in &[1u64, 2, 3, 5, 10, 20] {
            let report = corollary_checks(&sigma, &lambda, &bilap, z, k).unwrap();
            assert!(report.pass, "z = {z}, k = {k}: {report:?}");
        }
    }

    // small z leaves the weighted mean empty while the right side is negative
    let small = corollary_checks(&sigma, &lambda, &bilap, 30.0, 2).unwrap();
    assert_eq!(small.lhs, 0.0);
    assert!(small.rhs < 0.0);

    // k = 1 shifted-sum bound with the frozen 1D numbers:
    // sigma_1^2 - Lambda_1 against sigma_2 (sigma_1 - lambda_1)
    let k1 = corollary_checks(&sigma, &lambda, &bilap, 100.0, 1).unwrap();
    let shifted_margin = k1
        .params
        .iter()
        .find(|(name, _)| name == "shifted_sum_margin")
        .map(|&(_, v)| v)
        .unwrap();
    let s1 = 4.0 * PI * PI;
    let lhs2 = s1 * s1 - 500.5639017404;
    let rhs2 = 80.762914225707 * (s1 - PI * PI);
    assert!(
        (shifted_margin - (rhs2 - lhs2)).abs() < 1e-6,
        "shifted-sum margin {shifted_margin} vs direct {}",
        rhs2 - lhs2
    );

    assert!(matches!(
        corollary_checks(&sigma, &lambda, &bilap, 100.0, 520),
        Err(RieszError::InsufficientSpectrum { .. })
    ));
}

#[test]
fn phi_bound_on_the_interval() {
    // phi(x) = 16 x^2 (1-x)^2 on (0,1): sup = 1 at x = 1/2, and the
    // polynomial integrals are exact rationals:
    //   int phi^2 = 256 B(5,5) = 128/315
    //   int phi'^2 = 1024 int x^2(1-x)^2(1-2x)^2 = 1024/210 = 512/105
    let phi = |x: f64| 16.0 * x * x * (1.0 - x) * (1.0 - x);
    let dphi = |x: f64| 32.0 * x * (1.0 - x) * (1.0 - 2.0 * x);
    let l2_sq = 128.0 / 315.0;
    let grad_l2_sq = 512.0 / 105.0;

    // cross-check the exact rationals by quadrature; the integrands are
    // degree 8 and 6 polynomials, so Simpson converges at O(h^4)
    let l2_quad = simpson(|x| phi(x) * phi(x), 0.0, 1.0, 20_000);
    assert!((l2_quad - l2_sq).abs() < 1e-12);
    let grad_quad = simpson(|x| dphi(x) * dphi(x), 0.0, 1.0, 20_000);
    assert!((grad_quad - grad_l2_sq).abs() < 1e-12);
    let sup = (0..=1000)
        .map(|i| phi(i as f64 / 1000.0))
        .fold(0.0f64, f64::max);
    assert!((sup - 1.0).abs() < 1e-12);

    let norms = PhiNorms {
        sup: 1.0,
        l2_sq,
        grad_l2_sq,
    };
    let sigma = buckling_1d(120);
    let model = WeylModel::buckling_interval(1.0);
    for &z in &[1e3, 1e4] {
        let report = phi_bound_check(&sigma, &model, z, norms).unwrap();
        assert!(report.pass, "z = {z}: {report:?}");
        assert!(report.lhs / report.rhs >= 1.0, "z = {z}");
    }
}

#[test]
fn tauberian_ratios() {
    let disc = disc_buckling(1.0001e6);
    let disc_model = WeylModel::buckling_ball(2).unwrap();
    let grid: Vec<f64> = [1.25e5, 2.5e5, 5e5, 1e6]
        .iter()
        .map(|z| z + TIE_OFFSET)
        .collect();
    let report =
        tauberian_diagnostic(&disc, &disc_model, TauberianPair::RieszOneVsCounting, &grid)
            .unwrap();
    assert_eq!(report.p, 1.0);
    let last = report.rows.last().unwrap();
    assert!((last.integrated_ratio - 1.0).abs() < 0.01);
    assert!((last.density_ratio - 1.0).abs() < 0.01);

    let sigma = buckling_1d(330);
    let model = WeylModel::buckling_interval(1.0);
    let report = tauberian_diagnostic(
        &sigma,
        &model,
        TauberianPair::RieszTwoVsRieszOne,
        &[1e6 + TIE_OFFSET],
    )
    .unwrap();
    assert_eq!(report.p, 1.5);
    let row = &report.rows[0];
    assert!((row.integrated_ratio - 1.0).abs() < 0.01);
    assert!((row.density_ratio - 1.0).abs() < 0.01);

    // calibration on a synthetic spectrum sigma_j = j with c0 = 1
    let entries: Vec<(f64, u64)> = (1..=100_000u64).map(|j| (j as f64, 1)).collect();
    let synthetic = Spectrum::new(
        entries,
        SpectrumMeta {
            domain: "synthetic".to_string(),
            kind: "calibration".to_string(),
            d: 2,
            z_max: 1e5,
        },
    )
    .unwrap();
    let flat_model = WeylModel {
        d: 2,
        volume: 4.0 * PI,
        surface: 0.0,
        boundary_factor: 0.0,
    };
    let report = tauberian_diagnostic(
        &synthetic,
        &flat_model,
        TauberianPair::RieszOneVsCounting,
        &[1e4 + TIE_OFFSET],
    )
    .unwrap();
    let row = &report.rows[0];
    assert!((row.integrated_ratio - 1.0).abs() < 1e-3);
    assert!((row.density_ratio - 1.0).abs() < 1e-3);
}

#[test]
fn asymptotic_fit_recovers_boundary_coefficients() {
    // synthetic sigma_j = j: N(z) = z + O(1), second coefficient 0
    let entries: Vec<(f64, u64)> = (1..=100_000u64).map(|j| (j as f64, 1)).collect();
    let synthetic = Spectrum::new(
        entries,
        SpectrumMeta {
            domain: "synthetic".to_string(),
            kind: "calibration".to_string(),
            d: 2,
            z_max: 1e5,
        },
    )
    .unwrap();
    let flat_model = WeylModel {
        d: 2,
        volume: 4.0 * PI,
        surface: 0.0,
        boundary_factor: 0.0,
    };
    let fit = asymptotic_fit(&synthetic, &flat_model, 1e3, 1e5, 8).unwrap();
    assert!((fit.c0 - 1.0).abs() < 1e-14);
    assert!(fit.c1_hat.abs() < 0.05, "synthetic c1_hat = {}", fit.c1_hat);
    assert!(fit.residual_rms < 0.05);

    // disc counting function: second coefficient -(1/2 + 2/pi)
    let disc = disc_buckling(1.0001e6);
    let disc_model = WeylModel::buckling_ball(2).unwrap();
    let fit = asymptotic_fit(&disc, &disc_model, 1e6 / 4096.0, 1e6, 12).unwrap();
    let expected = -(0.5 + 2.0 / PI);
    assert!(
        ((fit.c1_hat - expected) / expected).abs() < 0.02,
        "disc c1_hat = {} vs {expected}",
        fit.c1_hat
    );

    // interval R_1: second coefficient -3/2
    let sigma = buckling_1d(420);
    let model = WeylModel::buckling_interval(1.0);
    let fit = asymptotic_fit_r1(&sigma, &model, 1e2, 1e6, 12).unwrap();
    assert!(
        ((fit.c1_hat - (-1.5)) / 1.5).abs() < 0.02,
        "interval R_1 coefficient = {}",
        fit.c1_hat
    );

    assert!(matches!(
        asymptotic_fit(&sigma, &model, 1e2, 1e4, 3),
        Err(RieszError::BadWindows { .. })
    ));
}

#[test]
fn bilaplacian_interval_bound() {
    let bilap = bilaplacian_1d(1100);
    let model = WeylModel::buckling_interval(1.0);

    let report = bilaplacian_riesz_1d_check(&bilap, &model, 1e3).unwrap();
    assert!(report.pass);
    assert!(((report.rhs - 4.0 / (5.0 * PI)) / report.rhs).abs() < 1e-14);
    let ratio = report
        .params
        .iter()
        .find(|(name, _)| name == "ratio")
        .map(|&(_, v)| v)
        .unwrap();
    assert!((ratio - 0.877724).abs() < 1e-4, "ratio at z = 1e3: {ratio}");

    // empty below the first eigenvalue
    let low = bilaplacian_riesz_1d_check(&bilap, &model, 20.0).unwrap();
    assert_eq!(low.lhs, 0.0);

    // the normalized mean climbs toward its limit on a dyadic grid
    let mut prev = 0.0;
    let mut z = 125.0;
    while z <= 4000.0 {
        let r = bilaplacian_riesz_1d_check(&bilap, &model, z + TIE_OFFSET).unwrap();
        assert!(r.pass);
        assert!(r.lhs >= prev, "normalized mean fell at z = {z}");
        prev = r.lhs;
        z *= 2.0;
    }

    let wrong = WeylModel::buckling_ball(2).unwrap();
    assert!(matches!(
        bilaplacian_riesz_1d_check(&bilap, &wrong, 1e3),
        Err(RieszError::WrongDimension { .. })
    ));
}
