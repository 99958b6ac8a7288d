//! Command-line front end: eigenvalue tables, counting-function and
//! Riesz-mean grids, the bound-verification battery, two-term asymptotic
//! fits, and the random finite-model suite. Every command writes to stdout
//! or `--out`, formats numbers with 17 significant digits so doubles round
//! trip, and exits 0 on success, 1 when a verification check fails, and 2
//! on usage or computation errors.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use specbuckle::avp_finite::run_suite;
use specbuckle::ball_spectra::{self, BallKind};
use specbuckle::interval_spectra::{self, sj_lt_half_tj, IntervalKind};
use specbuckle::riesz_bounds::{
    asymptotic_fit, bilaplacian_riesz_1d_check, bly_upper_check, chain_and_payne_checks,
    corollary_checks, legendre_dual_check, phi_bound_check, sum_lower_check, BoundReport,
    PhiNorms, SpectralRelation, Spectrum, WeylModel,
};

const CAP: u64 = 50_000_000;

#[derive(Parser)]
#[command(
    name = "specbuckle",
    version,
    about = "Spectra and spectral bounds for clamped buckling, Dirichlet Laplacian, and \
             clamped Bilaplacian problems on unit balls and intervals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an eigenvalue table
    Spectrum(TableArgs),
    /// Evaluate the counting function on a geometric grid
    Counting(TableArgs),
    /// Evaluate the Riesz mean R_p on a geometric grid
    Riesz(RieszArgs),
    /// Run the bound battery for one domain and write a JSON report
    Verify(VerifyArgs),
    /// Fit the two-term expansion and write the remainder table
    Asymptotics(AsymptoticsArgs),
    /// Check the averaged variational principle on random finite models
    Avp(AvpArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Domain {
    Ball,
    Interval,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Buckling,
    Laplacian,
    Bilaplacian,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plotdata,
}

#[derive(Args)]
struct SelectArgs {
    /// Domain family
    #[arg(long, value_enum)]
    domain: Domain,
    /// Ambient dimension (ball domains, default 2)
    #[arg(long)]
    dim: Option<u32>,
    /// Which spectrum
    #[arg(long, value_enum, default_value_t = Kind::Buckling)]
    kind: Kind,
    /// Interval length (interval domains, default 1)
    #[arg(long)]
    length: Option<f64>,
    /// Enumerate all eigenvalues below this threshold (ball domains)
    #[arg(long)]
    z_max: Option<f64>,
    /// Enumerate this many eigenvalues (interval domains, default 500)
    #[arg(long, alias = "jmax")]
    j_max: Option<u32>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write here instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    select: SelectArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct RieszArgs {
    #[command(flatten)]
    select: SelectArgs,
    /// Riesz order
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    select: SelectArgs,
    /// Also require the leading-order ratio N(z_max) / (c0 z_max^(d/2)) to
    /// sit within this relative window of 1
    #[arg(long)]
    weyl_window: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct AsymptoticsArgs {
    #[command(flatten)]
    select: SelectArgs,
    /// Number of geometric fit windows
    #[arg(long, default_value_t = 12)]
    windows: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct AvpArgs {
    /// Base seed; model i uses seed + i
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Model dimension
    #[arg(long, default_value_t = 50)]
    dim: usize,
    /// Number of random models
    #[arg(long, default_value_t = 1000)]
    n_models: u32,
    /// Trial vectors per model
    #[arg(long, default_value_t = 50)]
    n_trials: usize,
    #[command(flatten)]
    output: OutputArgs,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(message) = configure_threads() {
        eprintln!("error: {message}");
        return ExitCode::from(2);
    }
    match dispatch(&cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let raw = match std::env::var("SPECBUCKLE_THREADS") {
        Ok(raw) => raw,
        Err(std::env::VarError::NotPresent) => return Ok(()),
        Err(e) => return Err(format!("SPECBUCKLE_THREADS: {e}")),
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("SPECBUCKLE_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn dispatch(command: &Command) -> Result<ExitCode, String> {
    match command {
        Command::Spectrum(args) => cmd_spectrum(args),
        Command::Counting(args) => cmd_counting(args),
        Command::Riesz(args) => cmd_riesz(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Asymptotics(args) => cmd_asymptotics(args),
        Command::Avp(args) => cmd_avp(args),
    }
}

fn fnum(x: f64) -> String {
    format!("{x:.16e}")
}

fn jstr(s: &str) -> String {
    let escaped: String = s
        .chars()
        .flat_map(|c| match c {
            '"' | '\\' => vec!['\\', c],
            _ => vec![c],
        })
        .collect();
    format!("\"{escaped}\"")
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), String> {
    match &output.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn ball_params(select: &SelectArgs) -> Result<(u32, BallKind, f64), String> {
    if select.length.is_some() {
        return Err("ball domains are unit balls; --length applies to --domain interval".into());
    }
    if select.j_max.is_some() {
        return Err("--j-max applies to --domain interval; ball domains take --z-max".into());
    }
    let kind = match select.kind {
        Kind::Buckling => BallKind::Buckling,
        Kind::Laplacian => BallKind::DirichletLaplacian,
        Kind::Bilaplacian => {
            return Err("the Bilaplacian spectrum is implemented on intervals only".into())
        }
    };
    let z_max = select
        .z_max
        .ok_or("--z-max is required for ball domains")?;
    if !(z_max > 0.0 && z_max.is_finite()) {
        return Err(format!("--z-max must be positive and finite, got {z_max}"));
    }
    Ok((select.dim.unwrap_or(2), kind, z_max))
}

fn interval_params(select: &SelectArgs) -> Result<(IntervalKind, f64, u32), String> {
    if select.dim.is_some() {
        return Err("--dim applies to --domain ball".into());
    }
    if select.z_max.is_some() {
        return Err("--z-max applies to --domain ball; intervals take --j-max".into());
    }
    let kind = match select.kind {
        Kind::Buckling => IntervalKind::Buckling,
        Kind::Laplacian => IntervalKind::Laplacian,
        Kind::Bilaplacian => IntervalKind::Bilaplacian,
    };
    let length = select.length.unwrap_or(1.0);
    if !(length > 0.0 && length.is_finite()) {
        return Err(format!("--length must be positive and finite, got {length}"));
    }
    let j_max = select.j_max.unwrap_or(500);
    if j_max == 0 {
        return Err("--j-max must be at least 1".into());
    }
    Ok((kind, length, j_max))
}

/// The spectrum a grid command operates on, plus its natural upper end.
fn resolve_spectrum(select: &SelectArgs) -> Result<Spectrum, String> {
    match select.domain {
        Domain::Ball => {
            let (d, kind, z_max) = ball_params(select)?;
            Ok(ball_spectra::enumerate(d, kind, z_max, CAP)
                .map_err(|e| e.to_string())?
                .to_spectrum())
        }
        Domain::Interval => {
            let (kind, length, j_max) = interval_params(select)?;
            interval_spectra::interval_spectrum(kind, length, j_max).map_err(|e| e.to_string())
        }
    }
}

fn geometric_grid(lo: f64, hi: f64, steps: u32) -> Vec<f64> {
    (0..=steps)
        .map(|i| (lo * (hi / lo).powf(f64::from(i) / f64::from(steps))).min(hi))
        .collect()
}

fn dyadic_grid(hi: f64) -> Vec<f64> {
    let mut grid = Vec::new();
    let mut z = 1.0;
    while z <= hi {
        grid.push(z);
        z *= 2.0;
    }
    grid
}

fn cmd_spectrum(args: &TableArgs) -> Result<ExitCode, String> {
    let mut text = String::new();
    match args.select.domain {
        Domain::Ball => {
            let (d, kind, z_max) = ball_params(&args.select)?;
            let spectrum =
                ball_spectra::enumerate(d, kind, z_max, CAP).map_err(|e| e.to_string())?;
            match args.output.format {
                Format::Csv => {
                    text.push_str("d,kind,l,n,value,multiplicity\n");
                    for m in &spectrum.modes {
                        writeln!(
                            text,
                            "{},{},{},{},{},{}",
                            m.d,
                            m.kind.label(),
                            m.l,
                            m.n,
                            fnum(m.value),
                            m.multiplicity
                        )
                        .unwrap();
                    }
                }
                Format::Plotdata => {
                    let mut cumulative: u64 = 0;
                    for m in &spectrum.modes {
                        cumulative += m.multiplicity;
                        writeln!(text, "{cumulative} {}", fnum(m.value)).unwrap();
                    }
                }
                Format::Json => {
                    writeln!(text, "{{").unwrap();
                    writeln!(text, "  \"schema\": 1,").unwrap();
                    writeln!(text, "  \"command\": \"spectrum\",").unwrap();
                    writeln!(text, "  \"domain\": \"ball\",").unwrap();
                    writeln!(text, "  \"d\": {d},").unwrap();
                    writeln!(text, "  \"kind\": {},", jstr(kind.label())).unwrap();
                    writeln!(text, "  \"z_max\": {},", fnum(z_max)).unwrap();
                    writeln!(text, "  \"modes\": [").unwrap();
                    for (i, m) in spectrum.modes.iter().enumerate() {
                        let comma = if i + 1 == spectrum.modes.len() { "" } else { "," };
                        writeln!(
                            text,
                            "    {{\"l\": {}, \"n\": {}, \"value\": {}, \"multiplicity\": {}}}{comma}",
                            m.l,
                            m.n,
                            fnum(m.value),
                            m.multiplicity
                        )
                        .unwrap();
                    }
                    writeln!(text, "  ]").unwrap();
                    writeln!(text, "}}").unwrap();
                }
            }
        }
        Domain::Interval => {
            let (kind, length, j_max) = interval_params(&args.select)?;
            let values =
                interval_spectra::enumerate(kind, length, j_max).map_err(|e| e.to_string())?;
            match args.output.format {
                Format::Csv => {
                    text.push_str("j,kind,L,value,aux\n");
                    for e in &values {
                        writeln!(
                            text,
                            "{},{},{},{},{}",
                            e.j,
                            e.kind.label(),
                            fnum(length),
                            fnum(e.value),
                            fnum(e.aux)
                        )
                        .unwrap();
                    }
                }
                Format::Plotdata => {
                    for e in &values {
                        writeln!(text, "{} {}", e.j, fnum(e.value)).unwrap();
                    }
                }
                Format::Json => {
                    writeln!(text, "{{").unwrap();
                    writeln!(text, "  \"schema\": 1,").unwrap();
                    writeln!(text, "  \"command\": \"spectrum\",").unwrap();
                    writeln!(text, "  \"domain\": \"interval\",").unwrap();
                    writeln!(text, "  \"kind\": {},", jstr(kind.label())).unwrap();
                    writeln!(text, "  \"length\": {},", fnum(length)).unwrap();
                    writeln!(text, "  \"eigenvalues\": [").unwrap();
                    for (i, e) in values.iter().enumerate() {
                        let comma = if i + 1 == values.len() { "" } else { "," };
                        writeln!(
                            text,
                            "    {{\"j\": {}, \"value\": {}, \"aux\": {}}}{comma}",
                            e.j,
                            fnum(e.value),
                            fnum(e.aux)
                        )
                        .unwrap();
                    }
                    writeln!(text, "  ]").unwrap();
                    writeln!(text, "}}").unwrap();
                }
            }
        }
    }
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn grid_table(
    args: &TableArgs,
    column: &str,
    command: &str,
    value_at: impl Fn(&Spectrum, f64) -> Result<f64, String>,
    integer_column: bool,
) -> Result<ExitCode, String> {
    let spectrum = resolve_spectrum(&args.select)?;
    let hi = spectrum.meta.z_max;
    let grid = geometric_grid(hi / 1024.0, hi, 128);
    let mut rows = Vec::with_capacity(grid.len());
    for &z in &grid {
        rows.push((z, value_at(&spectrum, z)?));
    }
    let format_value = |v: f64| {
        if integer_column {
            format!("{}", v as u64)
        } else {
            fnum(v)
        }
    };
    let mut text = String::new();
    match args.output.format {
        Format::Csv => {
            writeln!(text, "z,{column}").unwrap();
            for &(z, v) in &rows {
                writeln!(text, "{},{}", fnum(z), format_value(v)).unwrap();
            }
        }
        Format::Plotdata => {
            for &(z, v) in &rows {
                writeln!(text, "{} {}", fnum(z), format_value(v)).unwrap();
            }
        }
        Format::Json => {
            writeln!(text, "{{").unwrap();
            writeln!(text, "  \"schema\": 1,").unwrap();
            writeln!(text, "  \"command\": {},", jstr(command)).unwrap();
            writeln!(text, "  \"domain\": {},", jstr(&spectrum.meta.domain)).unwrap();
            writeln!(text, "  \"kind\": {},", jstr(&spectrum.meta.kind)).unwrap();
            writeln!(text, "  \"rows\": [").unwrap();
            for (i, &(z, v)) in rows.iter().enumerate() {
                let comma = if i + 1 == rows.len() { "" } else { "," };
                writeln!(
                    text,
                    "    {{\"z\": {}, \"{column}\": {}}}{comma}",
                    fnum(z),
                    format_value(v)
                )
                .unwrap();
            }
            writeln!(text, "  ]").unwrap();
            writeln!(text, "}}").unwrap();
        }
    }
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_counting(args: &TableArgs) -> Result<ExitCode, String> {
    grid_table(
        args,
        "N",
        "counting",
        |spectrum, z| {
            spectrum
                .counting(z)
                .map(|n| n as f64)
                .map_err(|e| e.to_string())
        },
        true,
    )
}

fn cmd_riesz(args: &RieszArgs) -> Result<ExitCode, String> {
    let p = args.p;
    let table = TableArgs {
        select: SelectArgs {
            domain: args.select.domain,
            dim: args.select.dim,
            kind: args.select.kind,
            length: args.select.length,
            z_max: args.select.z_max,
            j_max: args.select.j_max,
        },
        output: OutputArgs {
            format: args.output.format,
            out: args.output.out.clone(),
        },
    };
    grid_table(
        &table,
        "R_p",
        "riesz",
        move |spectrum, z| spectrum.riesz_mean(p, z).map_err(|e| e.to_string()),
        false,
    )
}

fn push_weyl_window(
    reports: &mut Vec<BoundReport>,
    spectrum: &Spectrum,
    model: &WeylModel,
    window: f64,
) -> Result<(), String> {
    let z = spectrum.meta.z_max;
    let n = spectrum.counting(z).map_err(|e| e.to_string())? as f64;
    let ratio = n / (model.weyl_c0() * z.powf(0.5 * f64::from(model.d)));
    reports.push(BoundReport {
        name: "weyl_window".to_string(),
        params: vec![("z".to_string(), z), ("ratio".to_string(), ratio)],
        lhs: (ratio - 1.0).abs(),
        rhs: window,
        margin: window - (ratio - 1.0).abs(),
        pass: (ratio - 1.0).abs() <= window,
    });
    Ok(())
}

fn interval_battery(
    length: f64,
    j_max: u32,
    weyl_window: Option<f64>,
) -> Result<Vec<BoundReport>, String> {
    let err = |e: interval_spectra::IntervalError| e.to_string();
    let sigma = interval_spectra::interval_spectrum(IntervalKind::Buckling, length, j_max + 1)
        .map_err(err)?;
    let lambda = interval_spectra::interval_spectrum(IntervalKind::Laplacian, length, j_max + 1)
        .map_err(err)?;
    let bilap = interval_spectra::interval_spectrum(IntervalKind::Bilaplacian, length, j_max + 1)
        .map_err(err)?;
    let model = WeylModel::buckling_interval(length);

    let rerr = |e: specbuckle::riesz_bounds::RieszError| e.to_string();
    let mut reports = Vec::new();
    for &z in &dyadic_grid(sigma.meta.z_max) {
        reports.push(bly_upper_check(&sigma, &model, z).map_err(rerr)?);
    }
    let mut k = 1u64;
    while k <= u64::from(j_max) {
        reports.push(sum_lower_check(&sigma, &model, k).map_err(rerr)?);
        reports.push(legendre_dual_check(&sigma, &model, k as f64).map_err(rerr)?);
        k *= 2;
    }
    for j in 1..=u64::from(j_max) {
        for relation in [
            SpectralRelation::SqrtChain,
            SpectralRelation::ProductLower,
            SpectralRelation::StrictProduct,
        ] {
            reports.push(
                chain_and_payne_checks(&sigma, &lambda, Some(&bilap), relation, j)
                    .map_err(rerr)?,
            );
        }
    }
    reports.push(
        chain_and_payne_checks(&sigma, &lambda, None, SpectralRelation::SecondBelowFirst, 1)
            .map_err(rerr)?,
    );
    for z in [1e2, 1e3, 1e4] {
        if z > sigma.meta.z_max {
            continue;
        }
        for k in [1u64, 5, 25, 100] {
            if k + 1 > u64::from(j_max) {
                continue;
            }
            reports.push(corollary_checks(&sigma, &lambda, &bilap, z, k).map_err(rerr)?);
        }
    }
    // quartic bump 16 (x/L)^2 (1 - x/L)^2 with exact polynomial norms
    let phi = PhiNorms {
        sup: 1.0,
        l2_sq: length * 128.0 / 315.0,
        grad_l2_sq: 512.0 / (105.0 * length),
    };
    for z in [1e3, 1e4] {
        if z <= sigma.meta.z_max {
            reports.push(phi_bound_check(&sigma, &model, z, phi).map_err(rerr)?);
        }
    }
    for z in [1e2, 1e3] {
        if z * z <= bilap.meta.z_max {
            reports.push(bilaplacian_riesz_1d_check(&bilap, &model, z).map_err(rerr)?);
        }
    }
    for j in (2..=40u32.min(j_max)).step_by(2) {
        reports.push(sj_lt_half_tj(j).map_err(err)?);
    }
    if let Some(window) = weyl_window {
        push_weyl_window(&mut reports, &sigma, &model, window)?;
    }
    Ok(reports)
}

fn ball_battery(
    d: u32,
    z_max: f64,
    weyl_window: Option<f64>,
) -> Result<Vec<BoundReport>, String> {
    let berr = |e: ball_spectra::BallError| e.to_string();
    let sigma = ball_spectra::enumerate(d, BallKind::Buckling, z_max, CAP)
        .map_err(berr)?
        .to_spectrum();
    let lambda = ball_spectra::enumerate(d, BallKind::DirichletLaplacian, z_max, CAP)
        .map_err(berr)?
        .to_spectrum();
    let model = WeylModel::buckling_ball(d).map_err(|e| e.to_string())?;

    let rerr = |e: specbuckle::riesz_bounds::RieszError| e.to_string();
    let mut reports = Vec::new();
    for &z in &dyadic_grid(z_max) {
        reports.push(bly_upper_check(&sigma, &model, z).map_err(rerr)?);
    }
    let mut k = 1u64;
    while k <= sigma.len_virtual() {
        reports.push(sum_lower_check(&sigma, &model, k).map_err(rerr)?);
        reports.push(legendre_dual_check(&sigma, &model, k as f64).map_err(rerr)?);
        k *= 2;
    }
    if sigma.len_virtual() >= 1 && lambda.len_virtual() >= 2 {
        reports.push(
            chain_and_payne_checks(&sigma, &lambda, None, SpectralRelation::SecondBelowFirst, 1)
                .map_err(rerr)?,
        );
    }
    for &z in &dyadic_grid(z_max) {
        if d >= 3 {
            let gap = ball_spectra::counting_identity_gap(d, z).map_err(berr)?;
            reports.push(BoundReport {
                name: "counting_identity_gap".to_string(),
                params: vec![("d".to_string(), f64::from(d)), ("z".to_string(), z)],
                lhs: gap as f64,
                rhs: 0.0,
                margin: -(gap.unsigned_abs() as f64),
                pass: gap == 0,
            });
        } else {
            let nb = ball_spectra::counting(2, BallKind::Buckling, z).map_err(berr)?;
            let nd = ball_spectra::counting(2, BallKind::DirichletLaplacian, z).map_err(berr)?;
            let nd0 =
                ball_spectra::counting_for_angular_momentum(2, BallKind::DirichletLaplacian, 0, z)
                    .map_err(berr)?;
            let nd1 =
                ball_spectra::counting_for_angular_momentum(2, BallKind::DirichletLaplacian, 1, z)
                    .map_err(berr)?;
            let gap = nb as i128 - (nd as i128 - nd0 as i128 - nd1 as i128);
            reports.push(BoundReport {
                name: "plane_counting_identity".to_string(),
                params: vec![("z".to_string(), z)],
                lhs: gap as f64,
                rhs: 0.0,
                margin: -(gap.unsigned_abs() as f64),
                pass: gap == 0,
            });
        }
    }
    if let Some(window) = weyl_window {
        push_weyl_window(&mut reports, &sigma, &model, window)?;
    }
    Ok(reports)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, String> {
    if args.output.format != Format::Json {
        return Err("verify writes a JSON report; use --format json".into());
    }
    let (domain_label, reports) = match args.select.domain {
        Domain::Ball => {
            let (d, kind, z_max) = ball_params(&args.select)?;
            if kind != BallKind::Buckling {
                return Err(
                    "verify covers all ball kinds at once; drop the --kind flag".into(),
                );
            }
            ("ball", ball_battery(d, z_max, args.weyl_window)?)
        }
        Domain::Interval => {
            let (kind, length, j_max) = interval_params(&args.select)?;
            if kind != IntervalKind::Buckling {
                return Err(
                    "verify covers all interval kinds at once; drop the --kind flag".into(),
                );
            }
            ("interval", interval_battery(length, j_max, args.weyl_window)?)
        }
    };
    let failures = reports.iter().filter(|r| !r.pass).count();

    let mut text = String::new();
    writeln!(text, "{{").unwrap();
    writeln!(text, "  \"schema\": 1,").unwrap();
    writeln!(text, "  \"command\": \"verify\",").unwrap();
    writeln!(text, "  \"domain\": {},", jstr(domain_label)).unwrap();
    writeln!(text, "  \"total\": {},", reports.len()).unwrap();
    writeln!(text, "  \"failures\": {failures},").unwrap();
    writeln!(text, "  \"checks\": [").unwrap();
    for (i, report) in reports.iter().enumerate() {
        let params: Vec<String> = report
            .params
            .iter()
            .map(|(key, value)| format!("{}: {}", jstr(key), fnum(*value)))
            .collect();
        let comma = if i + 1 == reports.len() { "" } else { "," };
        writeln!(
            text,
            "    {{\"name\": {}, \"pass\": {}, \"lhs\": {}, \"rhs\": {}, \"margin\": {}, \
             \"params\": {{{}}}}}{comma}",
            jstr(&report.name),
            report.pass,
            fnum(report.lhs),
            fnum(report.rhs),
            fnum(report.margin),
            params.join(", ")
        )
        .unwrap();
    }
    writeln!(text, "  ]").unwrap();
    writeln!(text, "}}").unwrap();
    emit(&args.output, &text)?;
    if failures > 0 {
        eprintln!("{failures} of {} checks failed", reports.len());
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn cmd_asymptotics(args: &AsymptoticsArgs) -> Result<ExitCode, String> {
    let (spectrum, model) = match args.select.domain {
        Domain::Ball => {
            let (d, kind, z_max) = ball_params(&args.select)?;
            let spectrum = ball_spectra::enumerate(d, kind, z_max, CAP)
                .map_err(|e| e.to_string())?
                .to_spectrum();
            let model = match kind {
                BallKind::Buckling => WeylModel::buckling_ball(d).map_err(|e| e.to_string())?,
                BallKind::DirichletLaplacian => WeylModel::dirichlet_ball(d),
            };
            (spectrum, model)
        }
        Domain::Interval => {
            let (kind, length, j_max) = interval_params(&args.select)?;
            let model = match kind {
                IntervalKind::Buckling => WeylModel::buckling_interval(length),
                IntervalKind::Laplacian => WeylModel::dirichlet_interval(length),
                IntervalKind::Bilaplacian => {
                    return Err(
                        "no two-term counting model for the interval Bilaplacian; use \
                         --kind buckling or --kind laplacian"
                            .into(),
                    )
                }
            };
            let spectrum = interval_spectra::interval_spectrum(kind, length, j_max)
                .map_err(|e| e.to_string())?;
            (spectrum, model)
        }
    };

    let hi = spectrum.meta.z_max;
    let lo = hi / 100.0;
    let fit = asymptotic_fit(&spectrum, &model, lo, hi, args.windows).map_err(|e| e.to_string())?;

    let mut rows = Vec::new();
    for &z in &geometric_grid(lo, hi, 128) {
        let n = spectrum.counting(z).map_err(|e| e.to_string())? as f64;
        let r1 = spectrum.riesz_mean(1.0, z).map_err(|e| e.to_string())?;
        let (n_model, r1_model) = model.two_term(z);
        rows.push((z, n, n_model, r1, r1_model, n - n_model));
    }

    let mut text = String::new();
    match args.output.format {
        Format::Csv => {
            writeln!(text, "z,N,N_model,R1,R1_model,remainder").unwrap();
            for &(z, n, n_model, r1, r1_model, remainder) in &rows {
                writeln!(
                    text,
                    "{},{},{},{},{},{}",
                    fnum(z),
                    n as u64,
                    fnum(n_model),
                    fnum(r1),
                    fnum(r1_model),
                    fnum(remainder)
                )
                .unwrap();
            }
            eprintln!(
                "fit over [{}, {}]: c0 = {}, c1_hat = {}",
                fnum(lo),
                fnum(hi),
                fnum(fit.c0),
                fnum(fit.c1_hat)
            );
        }
        Format::Plotdata => {
            for &(z, _, _, _, _, remainder) in &rows {
                writeln!(text, "{} {}", fnum(z), fnum(remainder)).unwrap();
            }
            eprintln!(
                "fit over [{}, {}]: c0 = {}, c1_hat = {}",
                fnum(lo),
                fnum(hi),
                fnum(fit.c0),
                fnum(fit.c1_hat)
            );
        }
        Format::Json => {
            writeln!(text, "{{").unwrap();
            writeln!(text, "  \"schema\": 1,").unwrap();
            writeln!(text, "  \"command\": \"asymptotics\",").unwrap();
            writeln!(text, "  \"domain\": {},", jstr(&spectrum.meta.domain)).unwrap();
            writeln!(text, "  \"kind\": {},", jstr(&spectrum.meta.kind)).unwrap();
            writeln!(text, "  \"fit\": {{").unwrap();
            writeln!(text, "    \"c0\": {},", fnum(fit.c0)).unwrap();
            writeln!(text, "    \"c1_hat\": {},", fnum(fit.c1_hat)).unwrap();
            writeln!(text, "    \"window_lo\": {},", fnum(fit.window.0)).unwrap();
            writeln!(text, "    \"window_hi\": {},", fnum(fit.window.1)).unwrap();
            writeln!(text, "    \"n_windows\": {},", fit.n_windows).unwrap();
            writeln!(text, "    \"residual_rms\": {}", fnum(fit.residual_rms)).unwrap();
            writeln!(text, "  }},").unwrap();
            writeln!(text, "  \"model\": {{").unwrap();
            writeln!(text, "    \"weyl_c0\": {},", fnum(model.weyl_c0())).unwrap();
            writeln!(text, "    \"boundary_c1\": {},", fnum(model.boundary_c1())).unwrap();
            writeln!(
                text,
                "    \"boundary_factor\": {}",
                fnum(model.boundary_factor)
            )
            .unwrap();
            writeln!(text, "  }},").unwrap();
            writeln!(text, "  \"rows\": [").unwrap();
            for (i, &(z, n, n_model, r1, r1_model, remainder)) in rows.iter().enumerate() {
                let comma = if i + 1 == rows.len() { "" } else { "," };
                writeln!(
                    text,
                    "    {{\"z\": {}, \"N\": {}, \"N_model\": {}, \"R1\": {}, \"R1_model\": {}, \
                     \"remainder\": {}}}{comma}",
                    fnum(z),
                    n as u64,
                    fnum(n_model),
                    fnum(r1),
                    fnum(r1_model),
                    fnum(remainder)
                )
                .unwrap();
            }
            writeln!(text, "  ]").unwrap();
            writeln!(text, "}}").unwrap();
        }
    }
    emit(&args.output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_avp(args: &AvpArgs) -> Result<ExitCode, String> {
    if args.dim == 0 || args.n_trials == 0 || args.n_models == 0 {
        return Err("--dim, --n-models, and --n-trials must all be positive".into());
    }
    if args.output.format == Format::Plotdata {
        return Err("avp emits json or csv; there is no two-column series".into());
    }
    let summary = run_suite(args.seed, args.n_models, args.dim, args.n_trials)
        .map_err(|e| e.to_string())?;
    let mut text = String::new();
    match args.output.format {
        Format::Json => {
            writeln!(text, "{{").unwrap();
            writeln!(text, "  \"schema\": 1,").unwrap();
            writeln!(text, "  \"command\": \"avp\",").unwrap();
            writeln!(text, "  \"seed\": {},", args.seed).unwrap();
            writeln!(text, "  \"dim\": {},", args.dim).unwrap();
            writeln!(text, "  \"n_trials\": {},", args.n_trials).unwrap();
            writeln!(text, "  \"models\": {},", summary.models).unwrap();
            writeln!(text, "  \"checks\": {},", summary.checks).unwrap();
            writeln!(text, "  \"failures\": {},", summary.failures).unwrap();
            writeln!(
                text,
                "  \"worst_margin\": {}",
                fnum(summary.worst_margin)
            )
            .unwrap();
            writeln!(text, "}}").unwrap();
        }
        Format::Csv => {
            writeln!(text, "models,checks,failures,worst_margin").unwrap();
            writeln!(
                text,
                "{},{},{},{}",
                summary.models,
                summary.checks,
                summary.failures,
                fnum(summary.worst_margin)
            )
            .unwrap();
        }
        Format::Plotdata => unreachable!("rejected before the suite runs"),
    }
    emit(&args.output, &text)?;
    if summary.failures > 0 {
        eprintln!("{} of {} checks failed", summary.failures, summary.checks);
        Ok(ExitCode::from(1))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}
