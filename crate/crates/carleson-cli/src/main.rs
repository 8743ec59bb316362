//! Command-line frontend: generators, decompositions, norms and the
//! scripted reproduction suites. All commands read and write the plain text
//! measure/set formats and emit JSON (or CSV for rasters and suite tables).

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use carleson::circle::{AtomicMeasure, ClosedSet};
use carleson::corona::{
    corona_decompose, extract_bc_sets, sublevel_area_integral, thm_hardy_pipeline,
    thm_nevanlinna_pipeline, PipelineParams,
};
use carleson::gauge::{build_grid, check_regularity, Gauge, LambdaTable, RegularityCeilings};
use carleson::generators::{
    cantor_measure, cantor_set, equally_spaced_atoms, pruned_cantor, CantorSpec, PrunedSpec,
};
use carleson::inner::{
    besov_integral, hp_norm_boundary, hp_test_sum, nevanlinna_norm, s_mu,
};
use carleson::pde::{
    condition1_sum, maximal_solution_radial, mu_average_condition2, params_of_p,
    restoring_iteration, tent_heights,
};
use carleson::roberts::{charges_bc_test, light_arc_entropy, roberts_decompose};
use carleson::suites;

const EXIT_IO: u8 = 3;
const EXIT_RANGE: u8 = 4;
const EXIT_UNKNOWN_SUITE: u8 = 5;
const EXIT_STRICT: u8 = 6;

#[derive(Parser)]
#[command(name = "carleson", version, about = "Beurling-Carleson set diagnostics on the unit circle")]
struct Cli {
    /// Exit nonzero when a computed report flags an invariant violation.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the standard example measures and sets.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// The four comparable gauge quantities of a closed set.
    BcNorm {
        /// Closed-set file ("-" for stdin).
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "entropy")]
        gauge: String,
        #[arg(long, default_value_t = 12)]
        depth: u32,
    },
    /// Gauge regularity report (doubling and geometric-sum constants).
    Gauge {
        #[arg(long, default_value = "entropy")]
        gauge: String,
        #[arg(long, default_value_t = 6)]
        grid_depth: u32,
    },
    /// Grating decomposition of a measure.
    Roberts {
        #[arg(long, default_value = "-")]
        measure: String,
        #[arg(long, default_value = "entropy")]
        gauge: String,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value_t = 0)]
        j0: usize,
        #[arg(long, default_value_t = 4)]
        layers: usize,
        /// Optional closed-set file for the charging decay table.
        #[arg(long)]
        test_set: Option<String>,
    },
    /// Corona-type heavy/light decomposition.
    Corona {
        #[arg(long, default_value = "-")]
        measure: String,
        #[arg(long, default_value_t = 10.0)]
        m: f64,
        #[arg(long, default_value_t = 14)]
        depth: u32,
        #[arg(long, default_value_t = 100.0)]
        light_divisor: f64,
    },
    /// Sublevel-set area integral of the singular inner function.
    Area {
        #[arg(long, default_value = "-")]
        measure: String,
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0.5)]
        level: f64,
        #[arg(long, default_value_t = 16)]
        depth: u32,
    },
    /// Singular-inner-function diagnostics.
    Inner {
        #[arg(long, default_value = "-")]
        measure: String,
        #[arg(long, value_enum)]
        op: InnerOp,
        /// Carrier set file; defaults to the support of the measure.
        #[arg(long)]
        set: Option<String>,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 1.0)]
        q: f64,
        #[arg(long, default_value_t = 14)]
        depth: u32,
        /// Output CSV path for rasters.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 256)]
        theta_steps: u32,
        #[arg(long, default_value_t = 64)]
        r_steps: u32,
    },
    /// Radial blow-up machinery.
    Pde {
        #[command(subcommand)]
        what: PdeCommand,
    },
    /// Run a scripted experiment suite and write its tables.
    Reproduce {
        name: String,
        #[arg(long, default_value = "reproduce-out")]
        out_dir: PathBuf,
    },
    /// Implication-chain reports for a measure.
    Pipeline {
        #[arg(long, default_value = "-")]
        measure: String,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 16)]
        depth: u32,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    Cantor {
        #[arg(long, default_value_t = 4.0)]
        ratio: f64,
        #[arg(long, default_value_t = 8)]
        generations: u32,
        #[arg(long)]
        out_set: Option<PathBuf>,
        #[arg(long)]
        out_measure: Option<PathBuf>,
    },
    Pruned {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        alpha_exp: f64,
        #[arg(long, default_value_t = 12)]
        generations: u32,
        #[arg(long)]
        out_set: Option<PathBuf>,
        #[arg(long)]
        out_measure: Option<PathBuf>,
    },
    Atoms {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum InnerOp {
    Hp,
    HpTest,
    Nev,
    Besov,
    Raster,
}

#[derive(Subcommand)]
enum PdeCommand {
    Maximal {
        #[arg(long)]
        p: f64,
    },
    Restore {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        a0: f64,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    Tents {
        #[arg(long, default_value = "-")]
        measure: String,
        #[arg(long)]
        set: String,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 1.0)]
        psi: f64,
    },
}

enum CliError {
    Io(String),
    Range(String),
    UnknownSuite(String),
    Strict(String),
}

impl From<carleson::Error> for CliError {
    fn from(e: carleson::Error) -> Self {
        match e {
            carleson::Error::Parse(msg) => CliError::Io(msg),
            other => CliError::Range(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(threads) = std::env::var("CARLESON_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_IO)
        }
        Err(CliError::Range(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_RANGE)
        }
        Err(CliError::UnknownSuite(msg)) => {
            eprintln!("error: unknown suite '{msg}'");
            ExitCode::from(EXIT_UNKNOWN_SUITE)
        }
        Err(CliError::Strict(msg)) => {
            eprintln!("strict: {msg}");
            ExitCode::from(EXIT_STRICT)
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
    }
}

fn read_measure(path: &str) -> Result<AtomicMeasure, CliError> {
    Ok(AtomicMeasure::from_text(&read_input(path)?).map_err(|e| CliError::Io(e.to_string()))?)
}

fn read_set(path: &str) -> Result<ClosedSet, CliError> {
    Ok(ClosedSet::from_text(&read_input(path)?).map_err(|e| CliError::Io(e.to_string()))?)
}

fn parse_gauge(spec: &str) -> Result<Gauge, CliError> {
    if spec == "entropy" {
        return Ok(Gauge::entropy());
    }
    if let Some(alpha) = spec.strip_prefix("power:") {
        let alpha: f64 =
            alpha.parse().map_err(|e| CliError::Range(format!("gauge alpha: {e}")))?;
        return Ok(Gauge::power(alpha)?);
    }
    if let Some(alpha) = spec.strip_prefix("power-exact:") {
        let alpha: f64 =
            alpha.parse().map_err(|e| CliError::Range(format!("gauge alpha: {e}")))?;
        return Ok(Gauge::power_exact(alpha)?);
    }
    if let Some(path) = spec.strip_prefix("custom:") {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
        let mut samples = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("t,") {
                continue;
            }
            let mut parts = line.split(',');
            let t: f64 = parts
                .next()
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| CliError::Io(format!("{path}:{}: bad t", lineno + 1)))?;
            let lambda: f64 = parts
                .next()
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| CliError::Io(format!("{path}:{}: bad lambda", lineno + 1)))?;
            samples.push((t, lambda));
        }
        return Ok(Gauge::custom(LambdaTable::from_samples(&samples)?));
    }
    Err(CliError::Range(format!(
        "gauge '{spec}' not recognized (entropy | power:<alpha> | power-exact:<alpha> | custom:<csv>)"
    )))
}

/// Print to stdout, treating a closed pipe as a normal end of output.
fn print_stdout(content: &str) -> Result<(), CliError> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(content.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(CliError::Io(e.to_string())),
    }
}

fn emit_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Io(format!("serialization: {e}")))?;
    text.push('\n');
    print_stdout(&text)
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            fs::write(p, content).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            Ok(())
        }
        None => print_stdout(content),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let strict = cli.strict;
    match cli.command {
        Command::Gen { what } => run_gen(what),
        Command::BcNorm { set, gauge, depth } => {
            let e = read_set(&set)?;
            let g = parse_gauge(&gauge)?;
            let report = carleson::bcnorm::comparability_report(&e, &g, depth)?;
            emit_json(&report)?;
            let flagged = report.arc_sum.diverging
                || report.distance_integral.diverging
                || report.dyadic_arc_sum.diverging
                || report.privalov_integral.diverging;
            if strict && flagged {
                return Err(CliError::Strict("a gauge quantity is divergence-flagged".into()));
            }
            Ok(())
        }
        Command::Gauge { gauge, grid_depth } => {
            let g = parse_gauge(&gauge)?;
            let regularity = check_regularity(&g, RegularityCeilings::default());
            let grid = build_grid(&g, grid_depth)?;
            #[derive(Serialize)]
            struct GaugeReport {
                name: String,
                regularity: carleson::gauge::RegularityReport,
                grid: carleson::gauge::PhiDyadicGrid,
            }
            let violations = !regularity.violations.is_empty();
            emit_json(&GaugeReport { name: g.name(), regularity, grid })?;
            if strict && violations {
                return Err(CliError::Strict("gauge regularity ceilings exceeded".into()));
            }
            Ok(())
        }
        Command::Roberts { measure, gauge, c, j0, layers, test_set } => {
            let mu = read_measure(&measure)?;
            let g = parse_gauge(&gauge)?;
            let depth_needed = (j0 + layers).max(1) as u32;
            let grid = build_grid(&g, depth_needed)?;
            let d = roberts_decompose(&mu, &g, &grid, c, j0, layers)?;
            let violations = d.verify(&mu, &g);
            let entropy = light_arc_entropy(&d, &g, mu.total_mass());
            #[derive(Serialize)]
            struct LayerRow {
                generation: u32,
                mass: f64,
                heavy_count: usize,
            }
            #[derive(Serialize)]
            struct RobertsReport {
                layers: Vec<LayerRow>,
                residual_mass: f64,
                light_entropy: f64,
                light_entropy_bound: f64,
                grid: carleson::gauge::PhiDyadicGrid,
                violations: Vec<String>,
                charges: Option<Vec<carleson::roberts::ChargesRow>>,
            }
            let charges = match test_set {
                Some(path) => {
                    let e = read_set(&path)?;
                    let offsets: Vec<usize> = (0..grid.len().saturating_sub(1)).collect();
                    Some(charges_bc_test(&mu, &g, &grid, c, &offsets, &e)?)
                }
                None => None,
            };
            let report = RobertsReport {
                layers: d
                    .layers
                    .iter()
                    .map(|l| LayerRow {
                        generation: l.generation,
                        mass: l.measure.total_mass(),
                        heavy_count: l.heavy.len(),
                    })
                    .collect(),
                residual_mass: d.residual_mass(),
                light_entropy: entropy.value,
                light_entropy_bound: entropy.bound,
                grid: d.grid.clone(),
                violations: violations.clone(),
                charges,
            };
            emit_json(&report)?;
            if strict && !violations.is_empty() {
                return Err(CliError::Strict(format!("{} invariant violations", violations.len())));
            }
            Ok(())
        }
        Command::Corona { measure, m, depth, light_divisor } => {
            let mu = read_measure(&measure)?;
            let d = corona_decompose(&mu, m, depth, light_divisor)?;
            #[derive(Serialize)]
            struct CoronaReport {
                forest: carleson::corona::CoronaDecomposition,
                heavy_count: usize,
                carriers: Vec<CarrierRow>,
            }
            #[derive(Serialize)]
            struct CarrierRow {
                gaps: usize,
                residual_arcs: usize,
                gap_length: f64,
            }
            let carriers = extract_bc_sets(&d)?
                .iter()
                .map(|s| CarrierRow {
                    gaps: s.gaps().len(),
                    residual_arcs: s.residual().len(),
                    gap_length: s.gap_length(),
                })
                .collect();
            emit_json(&CoronaReport { heavy_count: d.heavy_count(), forest: d, carriers })?;
            Ok(())
        }
        Command::Area { measure, sigma, level, depth } => {
            let mu = read_measure(&measure)?;
            let report = sublevel_area_integral(&mu, level, sigma, depth)?;
            emit_json(&report)?;
            if strict && report.diverging {
                return Err(CliError::Strict("area integral divergence-flagged".into()));
            }
            Ok(())
        }
        Command::Inner { measure, op, set, p, q, depth, out, theta_steps, r_steps } => {
            let mu = read_measure(&measure)?;
            let e = match set {
                Some(path) => read_set(&path)?,
                None => mu.support_set()?,
            };
            match op {
                InnerOp::Hp => emit_json(&hp_norm_boundary(&mu, &e, p)?)?,
                InnerOp::HpTest => emit_json(&hp_test_sum(&mu, &e, p)?)?,
                InnerOp::Nev => emit_json(&nevanlinna_norm(&mu, &e))?,
                InnerOp::Besov => emit_json(&besov_integral(&mu, p, q, depth)?)?,
                InnerOp::Raster => {
                    let mut csv = String::from("theta,r,value\n");
                    for it in 0..theta_steps {
                        let theta = it as f64 / theta_steps as f64;
                        for ir in 0..r_steps {
                            let r = ir as f64 / r_steps as f64;
                            let z = num_complex_from_polar(r, theta);
                            let value = s_mu(&mu, z).norm();
                            csv.push_str(&format!("{theta},{r},{value}\n"));
                        }
                    }
                    write_or_print(&out, &csv)?;
                }
            }
            Ok(())
        }
        Command::Pde { what } => run_pde(what),
        Command::Reproduce { name, out_dir } => run_reproduce(&name, &out_dir, strict),
        Command::Pipeline { measure, p, depth } => {
            let mu = read_measure(&measure)?;
            let params = PipelineParams { depth, ..Default::default() };
            #[derive(Serialize)]
            struct Pipelines {
                nevanlinna: carleson::corona::ImplicationReport,
                hardy: carleson::corona::ImplicationReport,
            }
            let report = Pipelines {
                nevanlinna: thm_nevanlinna_pipeline(&mu, &params)?,
                hardy: thm_hardy_pipeline(&mu, p, &params)?,
            };
            let consistent = report.nevanlinna.consistent && report.hardy.consistent;
            emit_json(&report)?;
            if strict && !consistent {
                return Err(CliError::Strict("implication chain inconsistency".into()));
            }
            Ok(())
        }
    }
}

fn num_complex_from_polar(r: f64, turns: f64) -> num_complex::Complex64 {
    num_complex::Complex64::from_polar(r, std::f64::consts::TAU * turns)
}

fn run_gen(what: GenCommand) -> Result<(), CliError> {
    match what {
        GenCommand::Cantor { ratio, generations, out_set, out_measure } => {
            let spec = CantorSpec { ratio, generations };
            let (set, _) = cantor_set(&spec)?;
            let mu = cantor_measure(&spec)?;
            if let Some(path) = &out_set {
                fs::write(path, set.to_text())
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            write_or_print(&out_measure, &mu.to_text())
        }
        GenCommand::Pruned { p, alpha_exp, generations, out_set, out_measure } => {
            let build = pruned_cantor(&PrunedSpec { p, alpha_exp, generations })?;
            if let Some(path) = &out_set {
                fs::write(path, build.set.to_text())
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            write_or_print(&out_measure, &build.measure.to_text())
        }
        GenCommand::Atoms { n, eps, out } => {
            let mu = equally_spaced_atoms(n, eps)?;
            write_or_print(&out, &mu.to_text())
        }
    }
}

fn run_pde(what: PdeCommand) -> Result<(), CliError> {
    match what {
        PdeCommand::Maximal { p } => {
            let params = params_of_p(p)?;
            let grid = [0.5, 0.9, 0.99, 1.0 - 1e-3, 1.0 - 1e-4, 1.0 - 1e-5];
            let sol = maximal_solution_radial(p, &grid)?;
            #[derive(Serialize)]
            struct MaximalReport {
                params: carleson::pde::PdeParams,
                solution: carleson::pde::RadialSolution,
            }
            emit_json(&MaximalReport { params, solution: sol })
        }
        PdeCommand::Restore { alpha, a0, max_iter, tol } => {
            emit_json(&restoring_iteration(a0, alpha, max_iter, tol)?)
        }
        PdeCommand::Tents { measure, set, p, beta, psi } => {
            let mu = read_measure(&measure)?;
            let e = read_set(&set)?;
            let params = params_of_p(p)?;
            let heights = tent_heights(&e, &mu, &params, psi)?;
            #[derive(Serialize)]
            struct TentRow {
                left: f64,
                length: f64,
                height: f64,
            }
            #[derive(Serialize)]
            struct TentsReport {
                params: carleson::pde::PdeParams,
                heights: Vec<TentRow>,
                condition1: carleson::pde::Condition1Sum,
                mu_average_condition2: carleson::pde::MuAverageCondition2,
            }
            let report = TentsReport {
                params,
                heights: heights
                    .iter()
                    .map(|(arc, h)| TentRow {
                        left: arc.left().turns(),
                        length: arc.length(),
                        height: *h,
                    })
                    .collect(),
                condition1: condition1_sum(&e, &mu, &params, beta)?,
                mu_average_condition2: mu_average_condition2(&e, &mu, &params)?,
            };
            emit_json(&report)
        }
    }
}

fn write_csv(dir: &Path, name: &str, header: &str, rows: &[String]) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    let mut content = String::from(header);
    content.push('\n');
    for row in rows {
        content.push_str(row);
        content.push('\n');
    }
    fs::write(&path, content).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn run_reproduce(name: &str, out_dir: &Path, strict: bool) -> Result<(), CliError> {
    let pass = match name {
        "roberts-conservation" => {
            let s = suites::roberts_conservation_suite()?;
            write_csv(
                out_dir,
                "roberts-conservation.csv",
                "measure,gauge,layers,residual_mass,light_entropy,light_bound,violations,ok",
                &s.rows
                    .iter()
                    .map(|r| {
                        format!(
                            "{},{},{},{},{},{},{},{}",
                            r.measure,
                            r.gauge,
                            r.layers,
                            r.residual_mass,
                            r.light_entropy,
                            r.light_bound,
                            r.violations,
                            r.ok
                        )
                    })
                    .collect::<Vec<_>>(),
            )?;
            println!("roberts-conservation: measures={} pass={}", s.measures, s.pass);
            s.pass
        }
        "lemma31-ratios" => {
            let s = suites::lemma31_ratio_suite()?;
            write_csv(
                out_dir,
                "lemma31-ratios.csv",
                "ratio_a,gauge,generation,dyadic_depth,max_ratio",
                &s.rows
                    .iter()
                    .map(|r| {
                        format!(
                            "{},{},{},{},{}",
                            r.ratio_a, r.gauge, r.generation, r.dyadic_depth, r.max_ratio
                        )
                    })
                    .collect::<Vec<_>>(),
            )?;
            for f in &s.families {
                println!(
                    "lemma31-ratios: A={} gauge={} K in [{:.3}, {:.3}] spread={:.3}",
                    f.ratio_a, f.gauge, f.k_min, f.k_max, f.spread
                );
            }
            println!("lemma31-ratios: pass={}", s.pass);
            s.pass
        }
        "thm12-slope" => {
            let s = suites::hp_growth_suite()?;
            write_csv(
                out_dir,
                "thm12-slope.csv",
                "n,hp_norm,area_integral",
                &s.rows
                    .iter()
                    .map(|r| format!("{},{},{}", r.n, r.hp_norm, r.area_integral))
                    .collect::<Vec<_>>(),
            )?;
            println!(
                "thm12-slope: hp slope {:.4} (expect {:.4}), area slope {:.4} (expect {:.4}), pass={}",
                s.hp_slope, s.hp_slope_expected, s.area_slope, s.area_slope_expected, s.pass
            );
            s.pass
        }
        "sharpness-pruned" => {
            let s = suites::pruned_sharpness_suite()?;
            write_csv(
                out_dir,
                "sharpness-pruned.csv",
                "generation,weight_partial,divergent_partial",
                &s.weight_partials
                    .iter()
                    .zip(&s.divergent_partials)
                    .enumerate()
                    .map(|(i, (w, d))| format!("{},{},{}", i + 1, w, d))
                    .collect::<Vec<_>>(),
            )?;
            println!(
                "sharpness-pruned: convergent increment {:.4}%, divergent increment {:.4}%, growth {:.3}, pass={}",
                100.0 * s.convergent_last3_increment,
                100.0 * s.divergent_last3_increment,
                s.divergent_growth,
                s.pass
            );
            s.pass
        }
        "sharpness-cantor" => {
            let s = suites::cantor_invisibility_suite()?;
            write_csv(
                out_dir,
                "sharpness-cantor.csv",
                "generation,hp_test_increment",
                &s.per_generation
                    .iter()
                    .map(|(n, v)| format!("{n},{v}"))
                    .collect::<Vec<_>>(),
            )?;
            println!(
                "sharpness-cantor: fitted ratio {:.4} vs expected {:.4}, pass={}",
                s.fitted_ratio, s.expected_ratio, s.pass
            );
            s.pass
        }
        "pipelines" => {
            let s = suites::pipeline_consistency_suite()?;
            write_csv(
                out_dir,
                "pipelines.csv",
                "measure,nevanlinna_consistent,hardy_consistent",
                &s.rows
                    .iter()
                    .map(|r| {
                        format!("{},{},{}", r.measure, r.nevanlinna_consistent, r.hardy_consistent)
                    })
                    .collect::<Vec<_>>(),
            )?;
            println!("pipelines: {} measures, pass={}", s.rows.len(), s.pass);
            s.pass
        }
        "restoring" => {
            let s = suites::restoring_suite()?;
            println!(
                "restoring: max iterations {}, monotone={}, fixed point exact={}, pass={}",
                s.max_iterations, s.monotone_ok, s.fixed_point_exact, s.pass
            );
            s.pass
        }
        "maximal" => {
            let s = suites::maximal_asymptotics_suite()?;
            println!(
                "maximal: u(r)(1-r)^(1/2) = {:.6} vs C_alpha = {:.6} (rel err {:.4}), pass={}",
                s.normalized_at_1e5, s.c_alpha, s.relative_error, s.pass
            );
            s.pass
        }
        "identities" => {
            let s = suites::identity_suite()?;
            println!(
                "identities: {} pairs, max log-domain error {:.3e}, Ahern-Clark checked {} points ok={}, pass={}",
                s.pairs, s.max_identity_error, s.ahern_clark_checked, s.ahern_clark_ok, s.pass
            );
            s.pass
        }
        "besov-coherence" => {
            let s = suites::besov_coherence_suite()?;
            write_csv(
                out_dir,
                "besov-coherence.csv",
                "measure,besov_q1_diverging,besov_q2_diverging,area_diverging",
                &s.rows
                    .iter()
                    .map(|r| {
                        format!(
                            "{},{},{},{}",
                            r.measure, r.besov_q1_diverging, r.besov_q2_diverging, r.area_diverging
                        )
                    })
                    .collect::<Vec<_>>(),
            )?;
            println!("besov-coherence: {} measures, pass={}", s.rows.len(), s.pass);
            s.pass
        }
        other => return Err(CliError::UnknownSuite(other.to_string())),
    };
    if strict && !pass {
        return Err(CliError::Strict(format!("suite {name} failed")));
    }
    Ok(())
}
