//! Subcommand implementations. The CLI is a thin adapter: every number it
//! prints is the untouched result of the corresponding library call.

use std::io::Write;
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use specloc_core::hermitian::{hermitian_eigenvalues, operator_norm, HermitianForm};
use specloc_core::ktheory::{
    apply_permutation, classify as classify_form, invert_permutation, jmath_shuffle,
    SystemDescriptor,
};
use specloc_core::localizer::{
    build_localizer, compute_row, sweep as run_sweep, SweepParams, SweepReport, SweepRow,
    SWEEP_CSV_HEADER,
};
use specloc_core::matjson;
use specloc_core::torus::{
    amplified_dirac, compressed_y, default_pad, profile_residuals, profile_with_bandwidth,
};
use specloc_core::CMatrix;

use crate::config::{
    load, resolve_bandwidth, resolve_format, resolve_singularity_tol, resolve_threads,
    validate_pad, validate_point,
};
use crate::{
    ClassifyArgs, CliError, CliResult, FormArgs, ReportFormat, SelftestArgs, SweepArgs, TextFormat,
    TorusArgs,
};

fn single_row_report(row: &SweepRow, format: ReportFormat) -> CliResult<String> {
    match format {
        ReportFormat::Csv => {
            let report = SweepReport {
                rows: vec![row.clone()],
            };
            Ok(report.to_csv())
        }
        ReportFormat::Json => {
            serde_json::to_string_pretty(row).map_err(|e| CliError::Compute(e.to_string()))
        }
    }
}

fn write_spectrum(path: &Path, eigenvalues: &[f64]) -> CliResult<()> {
    let mut out = String::new();
    for v in eigenvalues {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    std::fs::write(path, out).map_err(|e| CliError::Compute(format!("{}: {e}", path.display())))
}

pub fn torus(args: TorusArgs) -> CliResult<()> {
    let file = load(args.config.as_deref())?;
    validate_point(args.m, args.rho, args.kappa)?;
    let bandwidth = resolve_bandwidth(args.bandwidth, &file)?;
    let pad = validate_pad(args.pad.or(file.pad))?;
    let tol_factor = resolve_singularity_tol(args.singularity_tol, &file)?;
    let format = resolve_format(args.format, &file)?;

    let profile = profile_with_bandwidth(bandwidth);
    let keep_spectrum = args.dump_spectrum.is_some();
    let params = SweepParams {
        m: args.m,
        rho: args.rho,
        kappa: args.kappa,
    };
    let row = compute_row(params, &profile, pad, keep_spectrum, tol_factor);
    if let Some(error) = &row.error {
        return Err(CliError::Compute(error.clone()));
    }
    if let (Some(kappa0), true) = (row.kappa0, row.kappa0.is_some_and(|k0| args.kappa >= k0)) {
        eprintln!(
            "warning: kappa = {} is at or above kappa0 = {kappa0}; the invertibility bound and \
             signature plateau are not guaranteed here",
            args.kappa
        );
    }
    print!("{}", single_row_report(&row, format)?);
    if format == ReportFormat::Json {
        println!();
    }

    if let Some(path) = &args.dump_spectrum {
        let spectrum = row
            .spectrum
            .as_ref()
            .expect("spectrum retained when dumping");
        write_spectrum(path, spectrum)?;
    }
    if let Some(dir) = &args.dump_operators {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Compute(format!("{}: {e}", dir.display())))?;
        let compressed = compressed_y(
            args.m,
            args.rho,
            &profile,
            pad.unwrap_or_else(|| default_pad(&profile, args.m)),
        )?;
        let dirac = amplified_dirac(&compressed.lattice, 2);
        let localizer = build_localizer(&compressed.form, &dirac, args.kappa)?;
        matjson::write_matrix(&dir.join("x.json"), compressed.form.data())?;
        matjson::write_matrix(&dir.join("dirac.json"), &dirac)?;
        matjson::write_matrix(&dir.join("localizer.json"), localizer.matrix())?;
    }
    Ok(())
}

pub fn form(args: FormArgs) -> CliResult<()> {
    let matrix = matjson::read_matrix(&args.path)?;
    let form = HermitianForm::new(matrix, None)?;
    let desc = SystemDescriptor::new(args.blocks.clone().unwrap_or_else(|| vec![1]))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let label = classify_form(&desc, &form)?;
    let witt_rank = args.witt.then(|| {
        let p = form.witt_projection();
        hermitian_eigenvalues(&p).iter().filter(|&&v| v > 0.5).count()
    });
    match args.format {
        TextFormat::Text => {
            println!("n = {}", form.size());
            println!("gap = {}", form.gap());
            println!("signature = {}", form.signature());
            println!(
                "inertia = [{}]",
                label
                    .inertia
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            if let Some(rank) = witt_rank {
                println!("witt_rank = {rank}");
            }
        }
        TextFormat::Json => {
            let mut value = json!({
                "n": form.size(),
                "gap": form.gap(),
                "signature": form.signature(),
                "label": label,
            });
            if let Some(rank) = witt_rank {
                value["witt_rank"] = json!(rank);
            }
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
    }
    Ok(())
}

fn parse_sweep_input(path: &Path) -> CliResult<Vec<SweepParams>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if idx == 0 && fields.first().is_some_and(|f| f.parse::<f64>().is_err()) {
            continue; // header row
        }
        if fields.len() != 3 {
            return Err(CliError::Usage(format!(
                "{} line {}: expected m,rho,kappa",
                path.display(),
                idx + 1
            )));
        }
        let parse_err = |field: &str, what: &str| {
            CliError::Usage(format!(
                "{} line {}: bad {what} '{field}'",
                path.display(),
                idx + 1
            ))
        };
        rows.push(SweepParams {
            m: fields[0].parse().map_err(|_| parse_err(fields[0], "m"))?,
            rho: fields[1].parse().map_err(|_| parse_err(fields[1], "rho"))?,
            kappa: fields[2]
                .parse()
                .map_err(|_| parse_err(fields[2], "kappa"))?,
        });
    }
    Ok(rows)
}

pub fn sweep(args: SweepArgs) -> CliResult<()> {
    let file = load(args.config.as_deref())?;
    let bandwidth = resolve_bandwidth(args.bandwidth, &file)?;
    let pad = validate_pad(args.pad.or(file.pad))?;
    let threads = resolve_threads(args.threads, &file);
    let format = resolve_format(args.format, &file)?;
    let params = parse_sweep_input(&args.input)?;
    for p in &params {
        validate_point(p.m, p.rho, p.kappa)?;
    }

    let profile = profile_with_bandwidth(bandwidth);
    let keep_spectra = args.dump_spectrum.is_some();
    let report = run_sweep(&params, &profile, pad, threads, keep_spectra)?;

    let rendered = match format {
        ReportFormat::Csv => report.to_csv(),
        ReportFormat::Json => {
            let mut text = report.to_json()?;
            text.push('\n');
            text
        }
    };
    match &args.output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::Compute(format!("{}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rendered.as_bytes())
                .map_err(|e| CliError::Compute(e.to_string()))?;
        }
    }

    if let Some(prefix) = &args.dump_spectrum {
        for (i, row) in report.rows.iter().enumerate() {
            if let Some(spectrum) = &row.spectrum {
                let path = prefix.with_extension(format!(
                    "{}{}",
                    prefix
                        .extension()
                        .map(|e| format!("{}.", e.to_string_lossy()))
                        .unwrap_or_default(),
                    i
                ));
                write_spectrum(&path, spectrum)?;
            }
        }
    }

    if !params.is_empty() && !report.any_succeeded() {
        return Err(CliError::Compute(
            "every sweep row failed; see the error column".into(),
        ));
    }
    Ok(())
}

pub fn classify(args: ClassifyArgs) -> CliResult<()> {
    let matrix = matjson::read_matrix(&args.path)?;
    let form = HermitianForm::new(matrix, None)?;
    let desc =
        SystemDescriptor::new(args.blocks.clone()).map_err(|e| CliError::Usage(e.to_string()))?;
    let label = classify_form(&desc, &form)?;
    match args.format {
        TextFormat::Json => println!("{}", serde_json::to_string_pretty(&label).unwrap()),
        TextFormat::Text => {
            println!("blocks = {:?}", label.desc.blocks());
            println!("n = {}", label.n);
            println!("inertia = {:?}", label.inertia);
        }
    }
    Ok(())
}

pub fn selftest(args: SelftestArgs) -> CliResult<()> {
    let file = load(args.config.as_deref())?;
    let seed = args.seed.or(file.seed).unwrap_or(0);
    let mut failures = 0usize;
    let mut check = |name: &str, pass: bool, detail: String| {
        println!("{} {name}: {detail}", if pass { "ok  " } else { "FAIL" });
        if !pass {
            failures += 1;
        }
    };

    // profile residuals must sit below 1e-3 and shrink as the bandwidth
    // doubles
    let mut previous: Option<specloc_core::torus::ProfileResiduals> = None;
    for bandwidth in [64usize, 128, 256] {
        let profile = profile_with_bandwidth(bandwidth);
        let residuals = profile_residuals(&profile, 1);
        let below = residuals.projection_sup <= 1e-3
            && residuals.cross_sup <= 1e-3
            && residuals.sum_rule_sup <= 1e-3;
        let shrinking = previous.is_none_or(|prev| {
            residuals.projection_sup < prev.projection_sup
                && residuals.cross_sup < prev.cross_sup
                && residuals.sum_rule_sup < prev.sum_rule_sup
        });
        check(
            &format!("residuals B={bandwidth}"),
            below && shrinking,
            format!(
                "projection={} cross={} sum_rule={}",
                residuals.projection_sup, residuals.cross_sup, residuals.sum_rule_sup
            ),
        );
        previous = Some(residuals);
    }

    // Witt projection spot check on a seeded random form
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 6;
    let mut data = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            data[(i, j)] = specloc_core::C64::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
        }
    }
    let data = (&data + data.adjoint()) * specloc_core::C64::new(0.5, 0.0);
    match HermitianForm::new(data, None) {
        Ok(form) => {
            let p = form.witt_projection();
            let idem = operator_norm(&(&p * &p - &p));
            let rank = hermitian_eigenvalues(&p).iter().filter(|&&v| v > 0.5).count();
            check(
                "witt projection",
                idem <= 1e-10 && rank == form.negative_inertia(),
                format!("|p^2-p|={idem:e} rank={rank} inertia={}", form.negative_inertia()),
            );
        }
        Err(err) => check("witt projection", false, err.to_string()),
    }

    // stabilization shuffle must be exact
    let desc = SystemDescriptor::scalar();
    let x = CMatrix::from_fn(2, 2, |i, j| {
        if i == j {
            specloc_core::C64::new(if i == 0 { 2.0 } else { -1.0 }, 0.0)
        } else {
            specloc_core::C64::new(0.25, if i < j { 0.5 } else { -0.5 })
        }
    });
    match jmath_shuffle(&desc, &x, 2, 1, 2) {
        Ok(shuffle) => {
            let recovered =
                apply_permutation(&shuffle.image, &invert_permutation(&shuffle.permutation));
            check(
                "stabilization shuffle",
                recovered == shuffle.padded,
                "permutation conjugation recovers x + e exactly".into(),
            );
        }
        Err(err) => check("stabilization shuffle", false, err.to_string()),
    }

    if failures > 0 {
        return Err(CliError::Compute(format!("{failures} selftest check(s) failed")));
    }
    println!("selftest passed");
    Ok(())
}

// keep the header constant linked so the CLI and library cannot drift
#[allow(dead_code)]
const _: &str = SWEEP_CSV_HEADER;
