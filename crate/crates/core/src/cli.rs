//! Command-line front end. [`run`] parses arguments, writes the report to
//! `out` and returns the process exit code: 0 on success, 1 when a check
//! finds a violation, 2 on a usage error (one line on `err`).

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::checks::{delta0_sweep, nagata_check, prop34_sweep, shgh_dagger_check};
use crate::cone::{
    count_outside_q_eps_orbits, degree_profile, project_k_perp, shade_discriminant, shade_position,
    shade_witness,
};
use crate::enumeration::{enumerate_kind, enumerate_orbits, write_catalog, ClassKind};
use crate::error::{Error, Result};
use crate::facets::facet_report;
use crate::lattice::DivisorClass;
use crate::report::{
    cluster_report, delta0_report, emit_plot_data, facet_summary, prop34_report, verdict_report,
    write_catalog_csv, FacetSelection, StructuredReport,
};

#[derive(Parser, Debug)]
#[command(
    name = "blowup-cones",
    version,
    about = "Exact cone geometry for blow-ups of the plane at very general points"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the classes of one kind up to a degree bound
    Enumerate {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_parser = parse_kind)]
        kind: ClassKind,
        /// Write to this file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Position of R(beta) against the shade Q + R(alpha)
    Shade {
        #[arg(long)]
        r: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Run one of the arithmetic checks
    Check {
        #[arg(long, value_enum)]
        law: Law,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        max_degree: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        class: Option<String>,
    },
    /// Reductions to the plane and conic-bundle facets
    Facets {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum)]
        kind: Option<FacetKind>,
    },
    /// Distances of the (-1)-rays to Q and to R(-K), per degree
    Cluster {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        max_degree: u32,
    },
    /// Projection to the orthogonal complement of K
    Project {
        #[arg(long)]
        r: usize,
        #[arg(long, allow_hyphen_values = true)]
        class: String,
    },
    /// Write plot data as CSV
    Plot {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        max_degree: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Law {
    Delta0,
    Prop34,
    Nagata,
    Dagger,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FacetKind {
    Reduction,
    Conic,
}

fn parse_kind(s: &str) -> std::result::Result<ClassKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_class(text: &str, r: usize) -> Result<DivisorClass> {
    let c: DivisorClass = text.parse()?;
    if c.r() != r {
        return Err(Error::InvalidArgument(format!(
            "class {text:?} has {} multiplicities but --r is {r}",
            c.r()
        )));
    }
    Ok(c)
}

fn one_line(text: &str) -> String {
    text.lines()
        .map(str::trim)
        .filter(|l| {
            !l.is_empty() && !l.starts_with("Usage:") && !l.starts_with("For more information")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let _ = writeln!(err, "{}", one_line(&e.to_string()));
            return 2;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", one_line(&e.to_string()));
            2
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Enumerate {
            r,
            max_degree,
            kind,
            out: path,
            format,
        } => {
            let catalog = enumerate_kind(r, max_degree, kind)?;
            let write = |w: &mut dyn Write| match format {
                Format::Jsonl => write_catalog(&catalog, w),
                Format::Csv => write_catalog_csv(&catalog, w),
            };
            match path {
                Some(p) => {
                    let mut file = BufWriter::new(File::create(&p)?);
                    write(&mut file)?;
                    StructuredReport::new(json!({
                        "report": "enumerate",
                        "r": r,
                        "max_degree": max_degree,
                        "kind": kind.to_string(),
                        "count": catalog.len(),
                        "out": p.display().to_string(),
                    }))
                    .write_to(out)?;
                }
                None => write(out)?,
            }
            Ok(0)
        }
        Command::Shade { r, alpha, beta } => {
            let alpha = parse_class(&alpha, r)?;
            let beta = parse_class(&beta, r)?;
            let position = shade_position(&beta, &alpha)?;
            let witness = shade_witness(&beta, &alpha)?.expect("shade_position found a witness");
            StructuredReport::new(json!({
                "report": "shade",
                "r": r,
                "alpha": alpha.to_string(),
                "beta": beta.to_string(),
                "discriminant": shade_discriminant(&beta, &alpha)?.to_string(),
                "witness": witness.to_string(),
                "position": position.to_string(),
            }))
            .write_to(out)?;
            Ok(0)
        }
        Command::Check {
            law,
            r,
            max_degree,
            class,
        } => check(law, r, max_degree, class, out),
        Command::Facets {
            r,
            max_degree,
            kind,
        } => {
            let rep = facet_report(r, max_degree)?;
            let select = match kind {
                None => FacetSelection {
                    reductions: true,
                    conic: true,
                },
                Some(FacetKind::Reduction) => FacetSelection {
                    reductions: true,
                    conic: false,
                },
                Some(FacetKind::Conic) => FacetSelection {
                    reductions: false,
                    conic: true,
                },
            };
            facet_summary(&rep, select).write_to(out)?;
            Ok(0)
        }
        Command::Cluster { r, eps, max_degree } => {
            if eps.is_nan() || eps <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "--eps must be positive, got {eps}"
                )));
            }
            let orbits = enumerate_orbits(r, max_degree, ClassKind::MinusOne)?;
            let outside = count_outside_q_eps_orbits(&orbits, eps);
            let profile = degree_profile(&orbits);
            cluster_report(r, max_degree, eps, &outside, &orbits.total(), &profile)
                .write_to(out)?;
            Ok(0)
        }
        Command::Project { r, class } => {
            let c = parse_class(&class, r)?;
            let p = project_k_perp(&c)?;
            StructuredReport::new(json!({
                "report": "project",
                "r": r,
                "class": c.to_string(),
                "projection": p.to_string(),
                "square": p.square().to_string(),
            }))
            .write_to(out)?;
            Ok(0)
        }
        Command::Plot {
            r,
            max_degree,
            out: path,
        } => {
            let rows = emit_plot_data(r, max_degree, &path)?;
            StructuredReport::new(json!({
                "report": "plot",
                "r": r,
                "max_degree": max_degree,
                "rows": rows,
                "out": path.display().to_string(),
            }))
            .write_to(out)?;
            Ok(0)
        }
    }
}

fn check(
    law: Law,
    r: usize,
    max_degree: Option<u32>,
    class: Option<String>,
    out: &mut dyn Write,
) -> Result<i32> {
    let need_degree =
        || max_degree.ok_or_else(|| Error::InvalidArgument("this law needs --max-degree".into()));
    let need_class = |name: &str| -> Result<DivisorClass> {
        let text = class
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument(format!("--law {name} needs --class")))?;
        parse_class(text, r)
    };
    let (report, ok) = match law {
        Law::Delta0 => {
            let rep = delta0_sweep(r, need_degree()?)?;
            (delta0_report(&rep), rep.holds())
        }
        Law::Prop34 => {
            let rep = prop34_sweep(r, need_degree()?)?;
            (prop34_report(&rep), rep.holds())
        }
        Law::Nagata => {
            let c = need_class("nagata")?;
            let v = nagata_check(&c)?;
            (verdict_report("nagata", &c, &v), v.holds)
        }
        Law::Dagger => {
            let c = need_class("dagger")?;
            let v = shgh_dagger_check(&c)?;
            (verdict_report("dagger", &c, &v), v.holds)
        }
    };
    report.write_to(out)?;
    Ok(if ok { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("blowup-cones").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn enumerate_del_pezzo() {
        let (code, out, _) = call(&[
            "enumerate",
            "--r",
            "6",
            "--max-degree",
            "6",
            "--kind",
            "minus-one",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 28);
        let (_, csv, _) = call(&[
            "enumerate",
            "--r",
            "6",
            "--max-degree",
            "6",
            "--kind",
            "minus-one",
            "--format",
            "csv",
        ]);
        assert_eq!(csv.lines().next(), Some("d,m1,m2,m3,m4,m5,m6"));
        assert_eq!(csv.lines().count(), 28);
    }

    #[test]
    fn usage_errors_exit_two_with_one_line() {
        for args in [
            vec!["enumerate", "--r", "6"],
            vec![
                "enumerate",
                "--r",
                "6",
                "--max-degree",
                "2",
                "--kind",
                "conic",
            ],
            vec![
                "shade", "--r", "3", "--alpha", "1;1,1", "--beta", "0;-1,0,0",
            ],
            vec!["shade", "--r", "2", "--alpha", "x;1", "--beta", "0;-1,0"],
            vec!["project", "--r", "9", "--class", "0;-1,0,0,0,0,0,0,0,0"],
            vec!["check", "--law", "nagata", "--r", "3"],
            vec!["check", "--law", "delta0", "--r", "3"],
            vec!["cluster", "--r", "9", "--eps", "0", "--max-degree", "2"],
            vec!["frobnicate"],
        ] {
            let (code, out, err) = call(&args);
            assert_eq!(code, 2, "{args:?}");
            assert!(out.is_empty(), "{args:?}");
            assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        }
    }

    #[test]
    fn check_exit_codes() {
        let (code, out, _) = call(&["check", "--law", "delta0", "--r", "10", "--max-degree", "8"]);
        assert_eq!(code, 0);
        assert!(out.contains("0 violations"), "{out}");
        let (code, _, _) = call(&[
            "check",
            "--law",
            "nagata",
            "--r",
            "10",
            "--class",
            "3;1,1,1,1,1,1,1,1,1,1",
        ]);
        assert_eq!(code, 1);
        let (code, _, _) = call(&[
            "check",
            "--law",
            "dagger",
            "--r",
            "9",
            "--class",
            "3;1,1,1,1,1,1,1,1,1",
        ]);
        assert_eq!(code, 0);
    }

    #[test]
    fn shade_outside_beyond_ten() {
        let (code, out, err) = call(&[
            "shade",
            "--r",
            "11",
            "--alpha",
            "-3;-1,-1,-1,-1,-1,-1,-1,-1,-1,-1,-1",
            "--beta",
            "0;-1,0,0,0,0,0,0,0,0,0,0",
        ]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("\"position\":\"Outside\""), "{out}");
    }

    #[test]
    fn help_goes_to_out() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("enumerate"));
    }
}
