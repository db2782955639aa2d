use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use fibonav::atlas::Atlas;
use fibonav::cli::{build_navigator, generate, verify_suite, GenWhat, Resource, TargetSpec};
use fibonav::io::{write_hopf_csv, write_hopf_svg, Table};
use fibonav::navigator::DEFAULT_DRESSING_WIDTH;
use fibonav::quat::distinct_hopf_points;

#[derive(Parser)]
#[command(
    name = "fibonav",
    version,
    about = "Compile SU(2) gates into Fibonacci-anyon braids"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the braid, group and pseudo-generator relations.
    Verify,
    /// Write a group, the Y~ table, a mesh or a dictionary as CSV.
    Gen {
        /// group:T|O|Y, ytilde, mesh:P0..P2|Q0..Q1 or dict:L
        #[arg(long)]
        what: GenWhat,
        #[arg(long)]
        out: PathBuf,
        /// Also write the Hopf map of the rows.
        #[arg(long)]
        hopf: Option<PathBuf>,
    },
    /// Find a braid approximating a target gate.
    Compile {
        /// id, ix, iy, iz, "w x y z" or eight reals of a 2x2 matrix
        #[arg(long, allow_hyphen_values = true)]
        target: TargetSpec,
        #[arg(long, default_value_t = 1e-2)]
        eps: f64,
        /// ytilde, dict:L, mesh:P1 or a file written by gen; repeatable
        #[arg(long = "use", required = true)]
        resources: Vec<Resource>,
        /// Stand-in words tried on each side of the core.
        #[arg(long, default_value_t = DEFAULT_DRESSING_WIDTH)]
        dressing: usize,
    },
    /// Map the rows of a CSV file to the complex plane.
    Hopf {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Clustering tolerance on the sphere when counting base points.
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.cmd {
        Cmd::Verify => {
            let checks = verify_suite();
            for c in &checks {
                println!("{c}");
            }
            Ok(checks.iter().all(|c| c.pass))
        }
        Cmd::Gen { what, out, hopf } => {
            let table = generate(Atlas::shared(), what)?;
            table
                .save(&out)
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "{} rows, max err {:.4e} -> {}",
                table.rows.len(),
                table.max_err(),
                out.display()
            );
            if let Some(h) = hopf {
                write_hopf_csv(BufWriter::new(File::create(&h)?), &table.points())?;
                println!("hopf -> {}", h.display());
            }
            Ok(true)
        }
        Cmd::Compile {
            target,
            eps,
            resources,
            dressing,
        } => {
            let atlas = Atlas::shared();
            let mut nav = build_navigator(atlas, &resources)?;
            nav.set_dressing_width(dressing);
            let r = nav.compile(target.0, eps)?;
            println!("word: {}", r.word);
            println!("core length: {}", r.core_len);
            println!("total length: {}", r.total_len);
            println!("err: {:.6e}", r.err);
            println!("source: {}", r.source);
            if !r.met {
                println!("eps {eps:e} not met");
            }
            Ok(r.met)
        }
        Cmd::Hopf {
            input,
            out,
            svg,
            tol,
        } => {
            let table =
                Table::load(&input).with_context(|| format!("reading {}", input.display()))?;
            let pts = table.points();
            write_hopf_csv(BufWriter::new(File::create(&out)?), &pts)?;
            if let Some(s) = svg {
                write_hopf_svg(BufWriter::new(File::create(&s)?), &pts, 3.0)?;
            }
            let hp: Vec<_> = pts.iter().map(|&q| fibonav::hopf_map(q)).collect();
            let (distinct, inf) = distinct_hopf_points(&hp, tol);
            let inf_points = usize::from(inf > 0);
            println!(
                "{} rows, {inf} at infinity; {distinct} distinct base points ({} finite, {inf_points} at infinity)",
                pts.len(),
                distinct - inf_points
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("FIBONAV_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
