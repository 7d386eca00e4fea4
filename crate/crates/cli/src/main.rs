//! `algsp`: generate transforms and model matrices, export them, and run the
//! verification suites.
//!
//! Exit status is 0 on success, 1 when a check fails or a computation errors,
//! and 2 on a usage error (bad flags or an unparseable spec string).

mod render;

use std::process::ExitCode;
use std::thread;

use algsp::checks::{self, Criterion};
use algsp::gmrf::{klt_vs_fourier, GmrfModel};
use algsp::model::{AnyModel, ModelSpec};
use algsp::poly::Poly;
use algsp::spectral::{convolve, Report};
use algsp::transforms::{generate, to_csv, to_json, TransformSpec};
use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::render::{
    complex_json, complex_text, matrix_csv, matrix_json, matrix_text, report_line,
};

#[derive(Parser)]
#[command(
    name = "algsp",
    version,
    about = "Signal-model transforms and their verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Print a transform matrix, e.g. `dct2:8`, `dft1:4:variant=unitary`, `skew-dct3:5:r=1/3`.
    Transform {
        spec: String,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Print the shift matrix of a model, e.g. `dct2-model:8`, `time:6:a=-1`.
    ShiftMatrix {
        model: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the coordinates of the virtual basis elements `b_k` for k in a range.
    Extension {
        model: String,
        /// First index, default `-n`.
        #[arg(long, allow_hyphen_values = true)]
        from: Option<i64>,
        /// Last index, default `2n - 1`.
        #[arg(long, allow_hyphen_values = true)]
        to: Option<i64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the model's visualization graph.
    Graph {
        model: String,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Run verification suites: `all`, a suite name, or a suite number.
    Check {
        #[arg(default_value = "all")]
        suite: String,
        /// Sizes for `dtt-pairing`, as `2..12` (inclusive) or `4,8,12`.
        #[arg(long)]
        sizes: Option<String>,
        /// Replace every check's tolerance.
        #[arg(long)]
        tolerance: Option<f64>,
        /// Print every individual check, not only the suite summaries.
        #[arg(long, short)]
        verbose: bool,
        /// Run suites on separate threads.
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Filter a signal directly and through the Fourier transform, and compare.
    Convolve {
        model: String,
        /// Filter as monomial coefficients `h_0,h_1,...`.
        #[arg(long, allow_hyphen_values = true)]
        filter: String,
        /// Signal coordinates `s_0,...,s_{n-1}`.
        #[arg(long, allow_hyphen_values = true)]
        signal: String,
        /// Largest acceptable relative error between the two paths.
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Treat `scale` times a model's shift matrix as the interaction matrix of a
    /// Gauss-Markov field and compare its KLTs with the model's Fourier transforms.
    Gmrf {
        model: String,
        #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
        scale: f64,
        #[arg(long, default_value_t = 1.0)]
        sigma2: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
    ChecksFailed,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(anyhow!(msg.into()))
}

fn formats(format: Format, allowed: &[Format]) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let names: Vec<String> = allowed
            .iter()
            .map(|f| format!("{f:?}").to_lowercase())
            .collect();
        Err(usage(format!(
            "supported formats here: {}",
            names.join(", ")
        )))
    }
}

fn parse_model(text: &str) -> Result<AnyModel, Failure> {
    let spec: ModelSpec = text
        .parse()
        .map_err(|e| Failure::Usage(anyhow::Error::new(e)))?;
    spec.build()
        .with_context(|| format!("building {spec}"))
        .map_err(Failure::Runtime)
}

fn parse_list(text: &str, what: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            usage(format!(
                "{what} must be comma-separated numbers, got '{text}'"
            ))
        })
}

fn parse_sizes(text: &str) -> Result<Vec<usize>, Failure> {
    let bad = || {
        usage(format!(
            "sizes must look like 2..12 or 4,8,12, got '{text}'"
        ))
    };
    if let Some((lo, hi)) = text.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|v| v.trim().parse().map_err(|_| bad()))
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Transform { spec, format } => {
            formats(format, &[Format::Csv, Format::Json, Format::Text])?;
            let spec: TransformSpec = spec
                .parse()
                .map_err(|e| Failure::Usage(anyhow::Error::new(e)))?;
            let t = generate(&spec).context("generating transform")?;
            match format {
                Format::Csv => print!("{}", to_csv(&t).context("writing csv")?),
                Format::Json => println!("{}", to_json(&t)),
                _ => {
                    println!("{} (n = {}, {})", t.spec, t.n(), t.spec.variant);
                    if t.is_real() {
                        print!("{}", matrix_text(&t.entries.map(|z| z.re)));
                    } else {
                        for row in t.entries.row_iter() {
                            let cells: Vec<String> = row.iter().map(|z| complex_text(*z)).collect();
                            println!("{}", cells.join("  "));
                        }
                    }
                }
            }
        }
        Command::ShiftMatrix { model, format } => {
            formats(format, &[Format::Csv, Format::Json, Format::Text])?;
            let model = parse_model(&model)?;
            let a = model.shift_matrix().context("shift matrix")?;
            match format {
                Format::Csv => print!("{}", matrix_csv(model.name(), &a)),
                Format::Json => println!(
                    "{}",
                    json!({"model": model.name(), "n": model.n(), "entries": matrix_json(&a)})
                ),
                _ => print!("{}\n{}", model.name(), matrix_text(&a)),
            }
        }
        Command::Extension {
            model,
            from,
            to,
            format,
        } => {
            formats(format, &[Format::Csv, Format::Json, Format::Text])?;
            let model = parse_model(&model)?;
            let n = model.n() as i64;
            let (from, to) = (from.unwrap_or(-n), to.unwrap_or(2 * n - 1));
            if from > to {
                return Err(usage("--from must not exceed --to"));
            }
            let rows = (from..=to)
                .map(|k| model.extension(k).map(|c| (k, c)))
                .collect::<Result<Vec<_>, _>>()
                .context("signal extension")?;
            let period = model.extension_period(8 * model.n()).ok().flatten();
            match format {
                Format::Csv => {
                    println!(
                        "k,{}",
                        (0..n)
                            .map(|i| format!("b{i}"))
                            .collect::<Vec<_>>()
                            .join(",")
                    );
                    for (k, c) in rows {
                        println!("{k},{}", c.join(","));
                    }
                }
                Format::Json => {
                    let items: Vec<_> = rows
                        .iter()
                        .map(|(k, c)| json!({"k": k, "coords": c}))
                        .collect();
                    println!(
                        "{}",
                        json!({"model": model.name(), "period": period, "extension": items})
                    );
                }
                _ => {
                    println!("{}", model.name());
                    match period {
                        Some(p) => println!("period {p}"),
                        None => println!("not periodic within {}", 8 * n),
                    }
                    for (k, c) in rows {
                        println!("b_{k:<4} = [{}]", c.join(", "));
                    }
                }
            }
        }
        Command::Graph { model, format } => {
            formats(format, &[Format::Dot, Format::Json, Format::Text])?;
            let model = parse_model(&model)?;
            let g = model.visualize().context("graph")?;
            match format {
                Format::Dot => print!("{}", g.to_dot()),
                Format::Json => {
                    let edges: Vec<_> = g
                        .edges()
                        .iter()
                        .map(|(i, j, w)| json!({"from": i, "to": j, "weight": w}))
                        .collect();
                    println!(
                        "{}",
                        json!({"name": g.name, "vertices": g.vertex_count(), "undirected": g.is_undirected(), "edges": edges})
                    );
                }
                _ => {
                    println!("{} ({} vertices)", g.name, g.vertex_count());
                    for (i, j, w) in g.edges() {
                        println!("{i} -> {j}  {w}");
                    }
                }
            }
        }
        Command::Check {
            suite,
            sizes,
            tolerance,
            verbose,
            parallel,
            format,
        } => {
            formats(format, &[Format::Json, Format::Text])?;
            return check(
                &suite,
                sizes.as_deref(),
                tolerance,
                verbose,
                parallel,
                format,
            );
        }
        Command::Convolve {
            model,
            filter,
            signal,
            tolerance,
            format,
        } => {
            formats(format, &[Format::Csv, Format::Json, Format::Text])?;
            let model = parse_model(&model)?.real();
            let h = Poly::new(parse_list(&filter, "filter")?);
            let s: Vec<Complex64> = parse_list(&signal, "signal")?
                .into_iter()
                .map(|v| Complex64::new(v, 0.0))
                .collect();
            if s.len() != model.n() {
                return Err(usage(format!(
                    "signal needs {} values, got {}",
                    model.n(),
                    s.len()
                )));
            }
            let ones = vec![Complex64::new(1.0, 0.0); model.n()];
            let out = convolve(&model, &h, &s, &ones).context("convolution")?;
            let pass = out.relative_error < tolerance;
            match format {
                Format::Csv => {
                    println!("direct_re,direct_im,spectral_re,spectral_im");
                    for (a, b) in out.direct.iter().zip(&out.spectral) {
                        println!("{:e},{:e},{:e},{:e}", a.re, a.im, b.re, b.im);
                    }
                }
                Format::Json => println!(
                    "{}",
                    json!({
                        "model": model.name,
                        "direct": complex_json(&out.direct),
                        "spectral": complex_json(&out.spectral),
                        "relative_error": out.relative_error,
                        "pass": pass,
                    })
                ),
                _ => {
                    println!("{}", model.name);
                    for (k, (a, b)) in out.direct.iter().zip(&out.spectral).enumerate() {
                        println!(
                            "{k:>3}  direct {:>24}  spectral {:>24}",
                            complex_text(*a),
                            complex_text(*b)
                        );
                    }
                    println!(
                        "[{}] relative error {:.3e} (tolerance {tolerance:.1e})",
                        if pass { "PASS" } else { "FAIL" },
                        out.relative_error
                    );
                }
            }
            if !pass {
                return Err(Failure::ChecksFailed);
            }
        }
        Command::Gmrf {
            model,
            scale,
            sigma2,
            format,
        } => {
            formats(format, &[Format::Json, Format::Text])?;
            let model = parse_model(&model)?;
            let a = model.shift_matrix().context("shift matrix")? * scale;
            let field = GmrfModel::new(a, sigma2).context("building the field")?;
            let sigma = field.covariance().context("covariance")?;
            let consistency = field.consistency_residual(&sigma);
            let cmp = klt_vs_fourier(&field).context("comparing KLTs")?;
            match format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "model": model.name(),
                        "scale": scale,
                        "sigma2": sigma2,
                        "case": field.case,
                        "covariance": matrix_json(&sigma),
                        "consistency_residual": consistency,
                        "comparison": cmp,
                    })
                ),
                _ => {
                    println!(
                        "{} scaled by {scale}, noise variance {sigma2}",
                        model.name()
                    );
                    println!("case: {:?}", field.case);
                    println!("covariance consistency residual {consistency:.3e}");
                    print!("covariance:\n{}", matrix_text(&sigma));
                    println!("in scope: {}", cmp.in_scope);
                    println!(
                        "Fourier transforms are KLTs: {} (residual {:.3e})",
                        cmp.fourier_is_klt, cmp.fourier_klt_residual
                    );
                    println!("every KLT is a Fourier transform: {}", cmp.converse_holds);
                    println!("{}", cmp.detail);
                }
            }
        }
    }
    Ok(())
}

fn suite_parts(c: &Criterion, sizes: Option<&[usize]>) -> Result<Vec<Report>, String> {
    let parts = match sizes {
        Some(sizes) => checks::dtt_pairing(sizes),
        None => c.details(),
    };
    parts.map_err(|e| e.to_string())
}

fn summarize(c: &Criterion, parts: &Result<Vec<Report>, String>) -> Report {
    match parts {
        Ok(parts) => Report::combine(c.name, parts),
        Err(e) => Report::new(
            &format!("{} (error: {e})", c.name),
            Vec::new(),
            f64::NAN,
            0.0,
        ),
    }
}

fn check(
    suite: &str,
    sizes: Option<&str>,
    tolerance: Option<f64>,
    verbose: bool,
    parallel: bool,
    format: Format,
) -> Result<(), Failure> {
    let selected: Vec<Criterion> = if suite == "all" {
        checks::criteria()
    } else {
        let names: Vec<&str> = checks::criteria().iter().map(|c| c.name).collect();
        vec![checks::find(suite).ok_or_else(|| {
            usage(format!(
                "unknown suite '{suite}'; valid suites: all, {}",
                names.join(", ")
            ))
        })?]
    };
    let sizes = sizes.map(parse_sizes).transpose()?;
    if sizes.is_some() && !(selected.len() == 1 && selected[0].name == "dtt-pairing") {
        return Err(usage("--sizes applies only to the dtt-pairing suite"));
    }
    if let Some(t) = tolerance {
        if t.is_nan() || t <= 0.0 {
            return Err(usage("--tolerance must be positive"));
        }
    }

    let mut results: Vec<Result<Vec<Report>, String>> = if parallel {
        thread::scope(|scope| {
            let handles: Vec<_> = selected
                .iter()
                .map(|c| scope.spawn(|| suite_parts(c, sizes.as_deref())))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().unwrap_or_else(|_| Err("suite panicked".into())))
                .collect()
        })
    } else {
        selected
            .iter()
            .map(|c| suite_parts(c, sizes.as_deref()))
            .collect()
    };
    if let Some(t) = tolerance {
        for parts in results.iter_mut().flatten() {
            for r in parts.iter_mut() {
                r.tolerance = t;
                r.pass = r.residual < t;
            }
        }
    }

    let summaries: Vec<Report> = selected
        .iter()
        .zip(&results)
        .map(|(c, p)| summarize(c, p))
        .collect();
    let all_pass = summaries.iter().all(|r| r.pass);
    match format {
        Format::Json => {
            let suites: Vec<_> = selected
                .iter()
                .zip(&results)
                .zip(&summaries)
                .map(|((c, parts), summary)| {
                    json!({
                        "id": c.id,
                        "summary": summary,
                        "checks": parts.as_ref().ok(),
                    })
                })
                .collect();
            println!("{}", json!({"pass": all_pass, "suites": suites}));
        }
        _ => {
            for ((c, parts), summary) in selected.iter().zip(&results).zip(&summaries) {
                println!("{:>2} {}", c.id, report_line(summary));
                if let Ok(parts) = parts {
                    for r in parts.iter().filter(|r| verbose || !r.pass) {
                        println!("     {}", report_line(r));
                    }
                }
            }
            let passed = summaries.iter().filter(|r| r.pass).count();
            println!("{passed}/{} suites passed", summaries.len());
        }
    }
    if all_pass {
        Ok(())
    } else {
        Err(Failure::ChecksFailed)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::ChecksFailed) => ExitCode::from(1),
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("usage error: {e:#}");
            ExitCode::from(2)
        }
    }
}
