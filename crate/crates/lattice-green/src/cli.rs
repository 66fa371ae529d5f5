//! Command-line front end: exact and numeric tables for every tabulated
//! result, oracle runs, and the built-in regression selftest.

use crate::branched::{g_sigma_a, Branch};
use crate::exact::RingElem;
use crate::oracle::{
    certified_green_solve, quadrature_green, wilson_sample, FiniteProblem, StripSpec,
};
use crate::tripod::{tripod_statistics, tripod_table};
use crate::trunk::{monomer_dimer_probability, trunk_table, Dir};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "lattice-green", version, about = "Exact lattice Green's functions and determinantal statistics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Pretty,
    Csv,
    Json,
}

#[derive(Args)]
pub struct OutputSpec {
    /// Window as X0:X1,Y0:Y1 (inclusive)
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    /// Radius of a centered square window
    #[arg(long)]
    pub radius: Option<i64>,
    #[arg(long, value_enum, default_value = "pretty")]
    pub format: Format,
    /// Fractional decimal digits, or "exact-only"
    #[arg(long, default_value = "6")]
    pub digits: String,
    /// Compare the emitted table against a fixture file; exit 4 on mismatch
    #[arg(long)]
    pub fixture: Option<String>,
}

impl OutputSpec {
    fn window_or(&self, d: (i64, i64, i64, i64)) -> Result<(i64, i64, i64, i64), String> {
        if let Some(w) = &self.window {
            let parts: Vec<&str> = w.split(',').collect();
            if parts.len() != 2 {
                return Err(format!("bad --window `{w}`"));
            }
            let range = |s: &str| -> Result<(i64, i64), String> {
                let (a, b) = s.split_once(':').ok_or_else(|| format!("bad range `{s}`"))?;
                Ok((
                    a.parse().map_err(|_| format!("bad bound `{a}`"))?,
                    b.parse().map_err(|_| format!("bad bound `{b}`"))?,
                ))
            };
            let (x0, x1) = range(parts[0])?;
            let (y0, y1) = range(parts[1])?;
            Ok((x0, x1, y0, y1))
        } else if let Some(r) = self.radius {
            Ok((-r, r, -r, r))
        } else {
            Ok(d)
        }
    }

    fn digits(&self) -> Result<Option<usize>, String> {
        if self.digits == "exact-only" {
            Ok(None)
        } else {
            self.digits
                .parse()
                .map(Some)
                .map_err(|_| format!("bad --digits `{}`", self.digits))
        }
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Potential kernel of the square lattice over a window
    Potential(OutputSpec),
    /// Half-plane slit Green's function table
    Slit(OutputSpec),
    /// Branched-cover antisymmetric Green's function (source (1,0))
    Branched(OutputSpec),
    /// Directed-edge probabilities near the conditioned trunk edge
    Trunk(OutputSpec),
    /// Dimer probabilities around the monomer at the origin
    Monomer(OutputSpec),
    /// Tripod-point statistics and directed-edge table
    Tripod {
        #[command(flatten)]
        out: OutputSpec,
        /// Print headline statistics instead of a table
        #[arg(long)]
        stats: bool,
    },
    /// Triangular-lattice tables: face-branched values and series
    Triangular(OutputSpec),
    /// Finite-grid and Monte Carlo verification runs
    Oracle {
        #[arg(long, default_value = "1")]
        seed: u64,
        #[arg(long, default_value = "2000")]
        samples: u64,
        /// Radius for the finite-grid convergence checks
        #[arg(long, default_value = "16")]
        radius: i64,
    },
    /// Run the embedded figure-regression suite; exit 4 on any mismatch
    Selftest,
}

/// A table row: key text, exact value, optional extra note.
struct Row {
    key: String,
    value: RingElem,
}

fn emit(rows: &[Row], out: &OutputSpec) -> Result<String, String> {
    let digits = out.digits()?;
    let mut s = String::new();
    match out.format {
        Format::Pretty => {
            let width = rows.iter().map(|r| r.key.len()).max().unwrap_or(0);
            for r in rows {
                let exact = r.value.render();
                match digits {
                    Some(d) => s.push_str(&format!(
                        "{:width$}  {}  =  {}\n",
                        r.key,
                        exact,
                        r.value.to_decimal(d)
                    )),
                    None => s.push_str(&format!("{:width$}  {}\n", r.key, exact)),
                }
            }
        }
        Format::Csv => {
            for r in rows {
                match digits {
                    Some(d) => s.push_str(&format!("{},{},{}\n", r.key, r.value.render(), r.value.to_decimal(d))),
                    None => s.push_str(&format!("{},{}\n", r.key, r.value.render())),
                }
            }
        }
        Format::Json => {
            let arr: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let mut o = serde_json::Map::new();
                    o.insert("key".into(), r.key.clone().into());
                    o.insert("value".into(), r.value.to_json());
                    if let Some(d) = digits {
                        o.insert("decimal".into(), r.value.to_decimal(d).into());
                    }
                    serde_json::Value::Object(o)
                })
                .collect();
            s = serde_json::to_string_pretty(&arr).unwrap();
            s.push('\n');
        }
    }
    Ok(s)
}

/// Compare rows against a fixture file of {entries: [{...,"value": expr}]}
/// with keys rebuilt the same way; returns mismatch descriptions.
fn compare_fixture(rows: &[Row], path: &str, rad: u32) -> Result<Vec<String>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| format!("bad fixture: {e}"))?;
    let entries = v
        .get("entries")
        .and_then(|e| e.as_array())
        .ok_or_else(|| "fixture has no entries".to_string())?;
    let by_key: std::collections::HashMap<&str, &Row> =
        rows.iter().map(|r| (r.key.as_str(), r)).collect();
    let mut mismatches = Vec::new();
    for e in entries {
        let key = match (e.get("key"), e.get("tail"), e.get("x")) {
            (Some(k), _, _) => k.as_str().unwrap_or_default().to_string(),
            (None, Some(t), _) => format!(
                "({},{}),{}",
                t[0], t[1],
                e.get("dir").and_then(|d| d.as_str()).unwrap_or("?")
            ),
            (None, None, Some(x)) => format!("({},{})", x, e.get("y").and_then(|y| y.as_i64()).unwrap_or(0)),
            _ => continue,
        };
        let expr = e.get("value").and_then(|s| s.as_str()).unwrap_or("0");
        let expected = crate::exact::parse_expr(expr, rad).map_err(|er| format!("{er}"))?;
        match by_key.get(key.as_str()) {
            Some(r) if r.value == expected => {}
            Some(r) => mismatches.push(format!("{key}: fixture {} != computed {}", expected.render(), r.value.render())),
            None => mismatches.push(format!("{key}: not in the emitted window")),
        }
    }
    Ok(mismatches)
}

/// Run the CLI; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match run_inner(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            3
        }
    }
}

fn run_inner(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Potential(out) => {
            let (x0, x1, y0, y1) = out.window_or((-3, 3, -3, 3))?;
            let mut rows = Vec::new();
            for x in x0..=x1 {
                for y in y0..=y1 {
                    rows.push(Row { key: format!("({x},{y})"), value: crate::plane::potential((x, y)) });
                }
            }
            finish(rows, &out, 2)
        }
        Command::Slit(out) => {
            let (x0, x1, y0, y1) = out.window_or((-4, 4, 0, 4))?;
            let mut rows = Vec::new();
            for x in x0..=x1 {
                for y in y0.max(0)..=y1 {
                    if (x + y) % 2 != 0 {
                        continue;
                    }
                    rows.push(Row { key: format!("({x},{y})"), value: crate::slit::gh((x, y)) });
                }
            }
            finish(rows, &out, 2)
        }
        Command::Branched(out) => {
            let (x0, x1, y0, y1) = out.window_or((-2, 2, -2, 2))?;
            let mut rows = Vec::new();
            for x in x0..=x1 {
                for y in y0..=y1 {
                    let v = g_sigma_a((1, 0), (x, y), Branch::Principal, Branch::Principal)
                        .map_err(|e| format!("{e}"))?;
                    rows.push(Row { key: format!("({x},{y})"), value: v });
                }
            }
            finish(rows, &out, 2)
        }
        Command::Trunk(out) => {
            let (x0, x1, y0, y1) = out.window_or((-1, 3, 0, 3))?;
            let table = trunk_table(x0, x1, y0, y1).map_err(|e| format!("{e}"))?;
            let rows: Vec<Row> = table
                .into_iter()
                .map(|(e, v)| Row {
                    key: format!("({},{}),{}", e.tail.0, e.tail.1, e.dir.letter()),
                    value: v,
                })
                .collect();
            finish(rows, &out, 2)
        }
        Command::Monomer(out) => {
            let (x0, x1, y0, y1) = out.window_or((-3, 3, -3, 3))?;
            let mut rows = Vec::new();
            for x in x0..=x1 {
                for y in y0..=y1 {
                    // horizontal dimer with white end at (x, y)
                    if (x + y).rem_euclid(2) == 0 {
                        continue;
                    }
                    let b = (x + 1, y);
                    if b == (0, 0) || (x - 1, y) == (0, 0) {
                        continue;
                    }
                    let v = monomer_dimer_probability(b, (x, y)).map_err(|e| format!("{e}"))?;
                    rows.push(Row { key: format!("({x},{y})-E"), value: v });
                }
            }
            finish(rows, &out, 2)
        }
        Command::Tripod { out, stats } => {
            if stats {
                let s = tripod_statistics().map_err(|e| format!("{e}"))?;
                let rows = vec![
                    Row { key: "edge_probability".into(), value: s.edge_probability },
                    Row { key: "degree4_probability".into(), value: s.degree4 },
                    Row { key: "degree3_probability".into(), value: s.degree3 },
                    Row { key: "expected_degree".into(), value: s.expected_degree },
                ];
                return finish(rows, &out, 2);
            }
            let (x0, x1, y0, y1) = out.window_or((-2, 2, -2, 2))?;
            let table = tripod_table(x0, x1, y0, y1).map_err(|e| format!("{e}"))?;
            let rows: Vec<Row> = table
                .into_iter()
                .map(|(t, d, v)| Row { key: format!("({},{}),{}", t.0, t.1, d.letter()), value: v })
                .collect();
            finish(rows, &out, 2)
        }
        Command::Triangular(out) => {
            let (x0, x1, y0, y1) = out.window_or((-3, 3, -3, 3))?;
            let mut rows = Vec::new();
            for x in x0..=x1 {
                for y in y0..=y1 {
                    if (x - y).abs() > x1.max(-x0).max(y1.max(-y0)) {
                        continue;
                    }
                    let v = crate::triangular::tri_face_branched((x, y)).map_err(|e| format!("{e}"))?;
                    rows.push(Row { key: format!("({x},{y})"), value: v });
                }
            }
            finish(rows, &out, 3)
        }
        Command::Oracle { seed, samples, radius } => {
            // Finite-grid convergence of the zipper diagonal toward 1/2.
            let p = FiniteProblem::square_box(radius).with_zipper();
            let g = certified_green_solve(&p, (0, 0), (0, 0)).map_err(|e| format!("{e}"))?;
            println!(
                "zipper diagonal at radius {radius}: {:.6} (error bound {:.2e}, limit 0.5)",
                g.to_f64(),
                crate::exact::ring::rat_f64(&g.error)
            );
            let q = quadrature_green(crate::oracle::quadrature::QuadLattice::Square, (1, 1), 1e-10);
            println!("quadrature G(1,1): {q:.9} (closed form {:.9})", -1.0 / std::f64::consts::PI);
            let spec = StripSpec { rows: 21, cols: 41 };
            let run = wilson_sample(&spec, &[((0, 0), Dir::E)], seed, samples)
                .map_err(|e| format!("{e}"))?;
            let est = &run.estimates[0];
            println!(
                "wilson straight-continuation: {:.4} +- {:.4} ({} accepted of {} attempts; limit {:.4})",
                est.mean,
                est.std_err,
                run.accepted,
                run.attempted,
                2f64.sqrt() - 1.0
            );
            Ok(0)
        }
        Command::Selftest => {
            let mut failed = 0;
            for (name, mismatches) in crate::fixtures::run_all(6, 3) {
                if mismatches.is_empty() {
                    println!("selftest {name}: ok");
                } else {
                    failed += mismatches.len();
                    println!("selftest {name}: {} mismatches", mismatches.len());
                    for m in mismatches {
                        println!("  {}: fixture {} != computed {}", m.key, m.expected, m.computed);
                    }
                }
            }
            Ok(if failed == 0 { 0 } else { 4 })
        }
    }
}

fn finish(rows: Vec<Row>, out: &OutputSpec, rad: u32) -> Result<i32, String> {
    print!("{}", emit(&rows, out)?);
    if let Some(path) = &out.fixture {
        let mismatches = compare_fixture(&rows, path, rad)?;
        if !mismatches.is_empty() {
            for m in &mismatches {
                eprintln!("mismatch: {m}");
            }
            return Ok(4);
        }
    }
    Ok(0)
}
