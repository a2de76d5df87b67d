//! The four subcommands.

use crate::input::{
    parse_alphas, parse_domain, parse_function, parse_region, parse_sample_spec, parse_vertex,
    InputError,
};
use crate::output::{csv_float, verdict_text, write_out, CliError};
use crate::{ClassifyArgs, GrowthArgs, RegionArgs, VerifyArgs};
use koranyi::limits::{classify_with, growth_verdict, ClassifyOptions, ProbeConfig};
use koranyi::regions::sample_region;
use koranyi::verify::run_suites;
use koranyi::CVec;
use std::process::ExitCode;

pub fn classify(args: ClassifyArgs) -> Result<ExitCode, CliError> {
    let domain = parse_domain(&args.domain.domain, args.domain.curvature)?;
    let vertex = parse_vertex(&args.domain.vertex, &domain)?;
    let f = parse_function(&args.function.function, &args.function.catalog, domain.dim())?;
    let alphas = parse_alphas(&args.alphas)?;
    let cfg = ProbeConfig::<f64>::default()
        .with_seed(args.seed)
        .with_tol(args.tol);
    let opts = ClassifyOptions {
        k_cap: args.k_cap,
        beta: args.beta,
        ..ClassifyOptions::default()
    };
    let verdict = classify_with(&f, &domain, &vertex, &alphas, &cfg, &opts)?;
    let content = match args.format.as_str() {
        "json" => {
            let mut s = serde_json::to_string_pretty(&report_json(
                "classify",
                serde_json::to_value(&verdict)?,
            ))?;
            s.push('\n');
            s
        }
        "text" => verdict_text(&verdict),
        other => return Err(InputError::Format(other.to_string()).into()),
    };
    write_out(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn report_json(command: &str, body: serde_json::Value) -> serde_json::Value {
    serde_json::json!({
        "tool": format!("koranyi {}", env!("CARGO_PKG_VERSION")),
        "command": command,
        "report": body,
    })
}

pub fn region(args: RegionArgs) -> Result<ExitCode, CliError> {
    let domain = parse_domain(&args.domain, args.curvature)?;
    let regions: Vec<_> = args
        .region
        .iter()
        .map(|spec| parse_region(spec, &domain))
        .collect::<Result<_, _>>()?;

    let mut csv = String::new();
    let n = domain.dim();
    for j in 1..=n {
        csv.push_str(&format!("re_z{j},im_z{j},"));
    }
    csv.push_str("delta");
    for r in &regions {
        csv.push_str(&format!(",in_{}", r.to_flag().replace([':', '@', '(', ')', ','], "_")));
    }
    csv.push('\n');

    let mut emit_row = |z: &CVec<f64>, delta: f64| {
        for c in z.entries() {
            csv.push_str(&csv_float(c.re));
            csv.push(',');
            csv.push_str(&csv_float(c.im));
            csv.push(',');
        }
        csv.push_str(&csv_float(delta));
        for r in &regions {
            csv.push_str(if r.contains(z) { ",1" } else { ",0" });
        }
        csv.push('\n');
    };

    match (&args.grid, &args.sample) {
        (Some(res), None) => {
            // Cross-section through the first region's vertex: depth along
            // the inner normal x first tangential real axis.
            let chart = regions[0].chart();
            let radius = chart.radius();
            let res = (*res).max(2);
            for a in 0..res {
                for b in 0..res {
                    let x1 = radius * (a as f64 + 0.5) / res as f64;
                    let tang = radius * (2.0 * (b as f64 + 0.5) / res as f64 - 1.0);
                    let mut w = CVec::zeros(n);
                    w.entries_mut()[0] = koranyi::C64::new(x1, 0.0);
                    if n > 1 {
                        w.entries_mut()[1] = koranyi::C64::new(tang, 0.0);
                    } else {
                        w.entries_mut()[0] = koranyi::C64::new(x1, tang);
                    }
                    let z = chart.from_chart(&w);
                    if !domain.contains(&z) {
                        continue;
                    }
                    let delta = domain.boundary_distance(&z).map_err(koranyi::Error::from)?;
                    emit_row(&z, delta);
                }
            }
        }
        (None, Some(spec)) => {
            let (d_target, count) = parse_sample_spec(spec)?;
            let rep = sample_region(&regions[0], d_target, count, args.seed)
                .map_err(koranyi::Error::from)?;
            for z in &rep.points {
                let delta = domain.boundary_distance(z).map_err(koranyi::Error::from)?;
                emit_row(z, delta);
            }
        }
        _ => {
            return Err(InputError::Sample(
                "exactly one of --grid or --sample is required".into(),
            )
            .into())
        }
    }
    write_out(&args.out, &csv)?;
    Ok(ExitCode::SUCCESS)
}

pub fn growth(args: GrowthArgs) -> Result<ExitCode, CliError> {
    let domain = parse_domain(&args.domain.domain, args.domain.curvature)?;
    let vertex = parse_vertex(&args.domain.vertex, &domain)?;
    let f = parse_function(&args.function.function, &args.function.catalog, domain.dim())?;
    let cfg = ProbeConfig::<f64>::default().with_seed(args.seed);
    let report = growth_verdict(&f, &domain, &vertex, args.alpha, None, &cfg)?;
    let content = match args.format.as_str() {
        "json" => {
            let mut s = serde_json::to_string_pretty(&report_json(
                "growth",
                serde_json::to_value(&report)?,
            ))?;
            s.push('\n');
            s
        }
        "text" => {
            let mut s = String::new();
            s.push_str(&format!(
                "alpha {}: normal o(1/d)={} tangential o(1/sqrt d)={} ({})\n",
                report.alpha, report.normal_little_o, report.tangential_little_o, report.label
            ));
            if let Some(e) = report.pooled_normal_exponent {
                s.push_str(&format!("pooled normal exponent:     {e:.4}\n"));
            }
            if let Some(e) = report.pooled_tangential_exponent {
                s.push_str(&format!("pooled tangential exponent: {e:.4}\n"));
            }
            for p in &report.paths {
                s.push_str(&format!(
                    "  {}: normal {:?} tangential {:?}\n",
                    p.label, p.normal_trend, p.tangential_trend
                ));
            }
            s
        }
        "csv" => {
            let mut s = String::from("path,exponent_normal,exponent_tangential\n");
            for p in &report.paths {
                let en = p
                    .normal_fit
                    .as_ref()
                    .map(|f| csv_float(f.exponent))
                    .unwrap_or_else(|| "0".into());
                let et = p
                    .tangential_fit
                    .as_ref()
                    .map(|f| csv_float(f.exponent))
                    .unwrap_or_else(|| "0".into());
                s.push_str(&format!("{},{},{}\n", p.label, en, et));
            }
            s
        }
        other => return Err(InputError::Format(other.to_string()).into()),
    };
    write_out(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    let suites = run_suites(args.filter.as_deref(), args.seed);
    let all_pass = suites.iter().all(|s| s.passed());
    let content = match args.format.as_str() {
        "json" => {
            let mut s = serde_json::to_string_pretty(&report_json(
                "verify",
                serde_json::to_value(&suites)?,
            ))?;
            s.push('\n');
            s
        }
        "text" => {
            let mut s = String::new();
            let mut total = 0usize;
            let mut failed = 0usize;
            for suite in &suites {
                for check in &suite.checks {
                    total += 1;
                    let status = if check.passed() { "ok  " } else { "FAIL" };
                    if !check.passed() {
                        failed += 1;
                    }
                    s.push_str(&format!(
                        "{status} {}/{} ({} violations / {} trials)\n",
                        suite.suite, check.name, check.violations, check.trials
                    ));
                }
            }
            s.push_str(&format!(
                "summary: {} checks, {} failed, seed {}\n",
                total, failed, args.seed
            ));
            s
        }
        other => return Err(InputError::Format(other.to_string()).into()),
    };
    write_out(&args.out, &content)?;
    if all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        // Invariant breach.
        Ok(ExitCode::from(4))
    }
}
