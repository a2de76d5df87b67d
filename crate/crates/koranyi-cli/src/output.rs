//! Report rendering and the exit-code contract.

use crate::input::InputError;
use koranyi::limits::Verdict;
use koranyi::ExtComplex64;
use std::io::Write;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error(transparent)]
    Lib(#[from] koranyi::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization: {0}")]
    Json(#[from] serde_json::Error),
}

impl From<koranyi::limits::LimitError> for CliError {
    fn from(e: koranyi::limits::LimitError) -> Self {
        CliError::Lib(e.into())
    }
}

/// 2 = input error, 3 = geometry/sampling failure, 4 = internal breach.
pub fn exit_code_for(err: &CliError) -> u8 {
    match err {
        CliError::Input(InputError::Lib(lib)) => lib_code(lib),
        CliError::Input(_) => 2,
        CliError::Lib(lib) => lib_code(lib),
        CliError::Io(_) => 3,
        CliError::Json(_) => 4,
    }
}

fn lib_code(err: &koranyi::Error) -> u8 {
    use koranyi::derivatives::SphericalError;
    use koranyi::limits::LimitError;
    use koranyi::Error as E;
    match err {
        E::Parse(_) | E::Catalog(_) | E::Dimension(_) | E::Eval(_) => 2,
        E::Geometry(_) | E::Region(_) | E::Chain(_) | E::Fit(_) => 3,
        E::Spherical(SphericalError::Eval(_) | SphericalError::NotOneVariable(_)) => 2,
        E::Spherical(_) => 3,
        E::Limit(LimitError::Eval(_)) => 2,
        E::Limit(_) => 3,
    }
}

/// Full-precision decimal text: 17 significant digits, lossless for f64.
pub fn csv_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_out(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let mut file = std::fs::File::create(path)?;
            file.write_all(content.as_bytes())?;
        }
        None => {
            print!("{content}");
            std::io::stdout().flush()?;
        }
    }
    Ok(())
}

fn ext_to_string(v: &ExtComplex64) -> String {
    v.to_string()
}

fn opt_flag(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "NO",
        None => "n/a",
    }
}

/// Human-readable verdict summary.
pub fn verdict_text(v: &Verdict<f64>) -> String {
    use koranyi::limits::{AdmissibleStatus, CriterionFlag};
    let mut s = String::new();
    s.push_str(&format!("function:      {}\n", v.function));
    s.push_str(&format!("domain:        {}  vertex {}\n", v.domain, v.vertex));
    s.push_str(&format!(
        "apertures:     {}\n",
        v.apertures
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    s.push_str(&format!(
        "normal limit:  {} ({}, {} probes, last delta {:.3e})\n",
        ext_to_string(&v.normal_limit.value),
        if v.normal_limit.converged {
            "converged"
        } else {
            "not converged"
        },
        v.normal_limit.probes,
        v.normal_limit.last_delta,
    ));
    match &v.admissible {
        AdmissibleStatus::Holds { value } => {
            s.push_str(&format!("admissible:    holds({})\n", ext_to_string(value)));
        }
        AdmissibleStatus::Fails {
            alpha,
            witness,
            expected,
            got,
            deviation,
        } => {
            s.push_str(&format!(
                "admissible:    FAILS at alpha={alpha} witness={witness} expected={} got={} (chordal {:.3})\n",
                ext_to_string(expected),
                ext_to_string(got),
                deviation
            ));
        }
        AdmissibleStatus::Inconclusive { reason } => {
            s.push_str(&format!("admissible:    inconclusive ({reason})\n"));
        }
    }
    match &v.criterion_t1 {
        CriterionFlag::Satisfied { trailing_max } => {
            s.push_str(&format!(
                "criterion:     satisfied (trailing max {trailing_max:.3e})\n"
            ));
        }
        CriterionFlag::Violated {
            liminf,
            alpha,
            witness,
        } => {
            s.push_str(&format!(
                "criterion:     VIOLATED at alpha={alpha} along {witness} (liminf {liminf:.3})\n"
            ));
        }
        CriterionFlag::Inconclusive { reason } => {
            s.push_str(&format!("criterion:     inconclusive ({reason})\n"));
        }
    }
    s.push_str(&format!(
        "growth:        normal o(1/d)={}  tangential o(1/sqrt d)={}  predicts admissible: {}\n",
        v.growth.normal_little_o,
        v.growth.tangential_little_o,
        match v.growth.predicts_admissible {
            Some(true) => "yes",
            Some(false) => "no",
            None => "n/a",
        }
    ));
    let t3 = &v.lindelof;
    s.push_str(&format!(
        "lindelof(K={}): caps {} | {} omitted {} | predicts {}\n",
        t3.caps.k,
        if t3.caps.holds { "hold" } else { "FAIL" },
        ext_to_string(&t3.omitted.target),
        if t3.omitted.attained {
            "attained (not applicable)"
        } else if t3.omitted.empirical {
            "empirically"
        } else {
            "certainly"
        },
        match &t3.predicts_admissible {
            Some(l) => format!("admissible {}", ext_to_string(l)),
            None => "n/a".to_string(),
        }
    ));
    if let Some(t4) = &v.single_region {
        s.push_str(&format!(
            "single-region(beta={}): limit {} | predicts {} | cross-checks {:?}\n",
            t4.beta,
            match &t4.limit_in_beta {
                Some(l) => ext_to_string(l),
                None => "none".to_string(),
            },
            match &t4.predicts_admissible {
                Some(l) => format!("admissible {}", ext_to_string(l)),
                None => "n/a".to_string(),
            },
            t4.cross_checks,
        ));
    }
    for b in &v.boundedness.per_aperture {
        let sup = match b.sup_f {
            Some(s) => format!("{s:.6}"),
            None => "pole (unbounded)".to_string(),
        };
        s.push_str(&format!(
            "sup |f| A_{}:  {} over {} samples{}\n",
            b.alpha,
            sup,
            b.samples,
            if b.growing { "  [growing]" } else { "" }
        ));
    }
    s.push_str(&format!(
        "flags:         t1_forward={} t1_reverse={} teor2={} t3={} t4={} proposition={}\n",
        v.theorem_flags.t1_forward_consistent,
        v.theorem_flags.t1_reverse_consistent,
        opt_flag(v.theorem_flags.teor2_agrees),
        opt_flag(v.theorem_flags.t3_agrees),
        opt_flag(v.theorem_flags.t4_agrees),
        opt_flag(v.theorem_flags.proposition_consistent),
    ));
    s
}
