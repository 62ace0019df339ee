//! Command-line front end: instance validation, flatness classification,
//! Yang-Baxter checks and construction, bialgebra certification, and
//! reproducible instance generation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};

use rlie_core::io::{self, InstanceFile};
use rlie_core::report::{
    structure_json, validation_json, yang_baxter_json, BialgebraJson, ClassificationJson,
    DualConnectionJson, GeneratedJson, InputEcho, Report,
};
use rlie_core::{
    bialgebra_report, classify, dual_connection_check, named, solution_report, abelian_image_check, random_flat,
    random_metric, subspace_form_to_r, Error, Result, DEFAULT_TOL,
};

#[derive(Parser)]
#[command(
    name = "rlie",
    version,
    about = "Flatness and Poisson structure of Lie algebras with scalar products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Numerical tolerance; thresholds are scaled internally by the size
    /// of the data.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Emit the machine-readable JSON report instead of the text summary.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the structural invariants of an instance file.
    Validate { path: PathBuf },

    /// Classify the algebra-with-metric: flatness conditions, splitting,
    /// Killing form, center and derived algebra.
    Analyze { path: PathBuf },

    /// Yang-Baxter bivectors: verify one, or construct one from the
    /// symplectic subspace section.
    #[command(group(ArgGroup::new("mode").required(true).args(["check", "construct"])))]
    Yb {
        path: PathBuf,
        /// Check the bivector section of the file.
        #[arg(long)]
        check: bool,
        /// Build a bivector from the subspace section of the file.
        #[arg(long)]
        construct: bool,
        /// Write the resulting instance file here (construct mode).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Certify the full bialgebra construction from the metric and the
    /// symplectic subspace.
    Bialgebra { path: PathBuf },

    /// Write a reproducible instance file.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
    },
}

#[derive(Subcommand)]
enum GenerateKind {
    /// A flat instance from the two-parameter family.
    Flat {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A named catalog instance with the identity metric.
    Named {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Attach a random metric of the given signature to an existing file.
    Metric {
        #[arg(long)]
        base: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Positive part of the signature (defaults to the dimension).
        #[arg(long)]
        plus: Option<usize>,
        /// Negative part of the signature (defaults to 0).
        #[arg(long)]
        minus: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    // Die silently on a closed pipe (`rlie ... | head`) instead of
    // panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run(&cli);
    match outcome {
        Ok((mut report, ok)) => {
            report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
            if cli.json {
                println!("{}", report.to_json());
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            let code = if err.is_parse_or_io() { 2 } else { 1 };
            if cli.json {
                let mut report = Report::new(
                    command_name(&cli.command),
                    InputEcho {
                        name: String::new(),
                        dim: 0,
                        path: None,
                    },
                    cli.tol,
                )
                .fail(&err.to_string());
                report.timing_ms = start.elapsed().as_secs_f64() * 1e3;
                println!("{}", report.to_json());
            }
            eprintln!("error: {err}");
            ExitCode::from(code)
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Validate { .. } => "validate",
        Command::Analyze { .. } => "analyze",
        Command::Yb { .. } => "yb",
        Command::Bialgebra { .. } => "bialgebra",
        Command::Generate { .. } => "generate",
    }
}

/// Returns the report plus whether the command counts as passing for the
/// exit code.
fn run(cli: &Cli) -> Result<(Report, bool)> {
    let tol = cli.tol;
    match &cli.command {
        Command::Validate { path } => cmd_validate(path, tol, cli.json),
        Command::Analyze { path } => cmd_analyze(path, tol, cli.json),
        Command::Yb {
            path,
            check,
            construct: _,
            out,
        } => {
            if *check {
                cmd_yb_check(path, tol, cli.json)
            } else {
                cmd_yb_construct(path, out.as_deref(), tol, cli.json)
            }
        }
        Command::Bialgebra { path } => cmd_bialgebra(path, tol, cli.json),
        Command::Generate { kind } => cmd_generate(kind, tol, cli.json),
    }
}

fn echo(file: &InstanceFile, path: &Path) -> InputEcho {
    InputEcho {
        name: file.name.clone(),
        dim: file.dim,
        path: Some(path.display().to_string()),
    }
}

fn cmd_validate(path: &Path, tol: f64, json: bool) -> Result<(Report, bool)> {
    let file = io::read_file(path)?;
    let mut report = Report::new("validate", echo(&file, path), tol);

    let alg = file.to_algebra_unchecked()?;
    let metric = file.to_metric(tol)?;
    let bivector = file.to_bivector()?;
    let subspace = file.to_symplectic(tol)?;

    let validation = validation_json(
        &alg,
        metric.as_ref(),
        bivector.is_some(),
        subspace.is_some(),
        file.brackets.len(),
        tol,
    );
    let ok = validation.ok;
    if !json {
        println!("instance: {} (dim {})", file.name, file.dim);
        println!("bracket pairs: {}", validation.bracket_pairs);
        println!(
            "jacobi defect: {:.3e} ({})",
            validation.jacobi_defect,
            if validation.jacobi_ok { "ok" } else { "VIOLATED" }
        );
        match &validation.metric_signature {
            Some([p, q]) => println!("metric: signature ({p},{q})"),
            None => println!("metric: absent"),
        }
        println!(
            "bivector: {}",
            if validation.has_bivector { "present" } else { "absent" }
        );
        println!(
            "subspace: {}",
            if validation.has_subspace { "present" } else { "absent" }
        );
        println!("{}", if ok { "VALID" } else { "INVALID" });
    }
    if !ok {
        report.status = "failed".to_string();
        report.error = Some(format!(
            "Jacobi defect {:.3e} exceeds tolerance",
            validation.jacobi_defect
        ));
    }
    report.validation = Some(validation);
    Ok((report, ok))
}

fn cmd_analyze(path: &Path, tol: f64, json: bool) -> Result<(Report, bool)> {
    let file = io::read_file(path)?;
    let mut report = Report::new("analyze", echo(&file, path), tol);
    let alg = file.to_algebra(tol)?;
    let metric = file
        .to_metric(tol)?
        .ok_or(Error::MissingSection { section: "metric" })?;

    let outcome = classify(&alg, &metric, tol)?;
    let classification = ClassificationJson::from_classification(&outcome);
    let structure = structure_json(&alg, tol);

    if !json {
        println!("instance: {} (dim {})", file.name, file.dim);
        let (p, q) = outcome.signature;
        println!(
            "scalar product: signature ({p},{q}){}",
            if outcome.riemannian {
                ", positive-definite"
            } else {
                ""
            }
        );
        if !outcome.riemannian {
            println!(
                "note: indefinite scalar product (pseudo-Riemannian); the four \
                 conditions are reported independently"
            );
        }
        println!("threshold: {:.3e}", outcome.threshold);
        println!();
        print_condition("riemann_lie", outcome.riemann_lie_defect, outcome.condition_riemann_lie);
        print_condition("parallel_dtheta", outcome.dtheta_defect, outcome.condition_dtheta);
        print_condition("flat_curvature", outcome.curvature_defect, outcome.condition_curvature);
        match &outcome.milnor {
            rlie_core::MilnorOutcome::Split { rotations, translations } => println!(
                "  milnor_split       yes (rotations dim {}, translations dim {})",
                rotations.dim(),
                translations.dim()
            ),
            rlie_core::MilnorOutcome::Failed { clause } => {
                println!("  milnor_split       no ({clause})")
            }
        }
        println!("  flat_dual          equivalent to riemann_lie; not separately computed");
        println!();
        println!(
            "orthogonal subalgebra dimension: {}",
            outcome.orthogonal.dim()
        );
        println!("killing form: {}", structure.killing_verdict);
        println!(
            "center dim {}, derived algebra dim {}",
            structure.center.len(),
            structure.derived_algebra.len()
        );
        if let Some(flag) = outcome.consistent {
            println!(
                "condition agreement: {}",
                if flag { "consistent" } else { "INCONSISTENT" }
            );
        }
        println!(
            "RIEMANN-LIE: {}",
            if outcome.is_riemann_lie { "yes" } else { "no" }
        );
    }

    report.classification = Some(classification);
    report.structure = Some(structure);
    Ok((report, true))
}

fn print_condition(name: &str, defect: f64, holds: bool) {
    println!(
        "  {:<18} defect {:<12.3e} {}",
        name,
        defect,
        if holds { "yes" } else { "no" }
    );
}

fn cmd_yb_check(path: &Path, tol: f64, json: bool) -> Result<(Report, bool)> {
    let file = io::read_file(path)?;
    let mut report = Report::new("yb", echo(&file, path), tol);
    let alg = file.to_algebra(tol)?;
    let r = file.to_bivector()?.ok_or(Error::MissingSection {
        section: "bivector",
    })?;

    let solution = solution_report(&alg, &r, tol)?;
    let mut yb = yang_baxter_json(&r, &solution);
    if let Some(metric) = file.to_metric(tol)? {
        yb.connection_check = Some(DualConnectionJson::from_report(&dual_connection_check(&alg, &metric, &r, tol)?));
        yb.image_abelian = abelian_image_check(&alg, &metric, &r, tol).ok();
    }

    if !json {
        println!("instance: {} (dim {})", file.name, file.dim);
        println!("schouten norm: {:.3e}", solution.schouten_norm);
        println!("morphism defect: {:.3e}", solution.morphism_defect);
        println!(
            "image is subalgebra: {}",
            yesno(solution.image_is_subalgebra)
        );
        if let Some(d) = solution.delta_omega {
            println!("closedness of the induced form: defect {:.3e}", d);
        }
        println!("dual jacobi defect: {:.3e}", solution.dual_jacobi_defect);
        println!(
            "verdicts: schouten {}, morphism {}, symplectic {} (agree: {})",
            yesno(solution.verdict_schouten),
            yesno(solution.verdict_morphism),
            yesno(solution.verdict_symplectic),
            yesno(solution.verdicts_agree)
        );
        if let Some(dual_connection) = &yb.connection_check {
            println!(
                "dual connection identity: defect {:.3e} ({})",
                dual_connection.defect,
                yesno(dual_connection.holds)
            );
        }
        if let Some(flag) = yb.image_abelian {
            println!("image abelian: {}", yesno(flag));
        }
        println!(
            "YANG-BAXTER: {}",
            if solution.verdict_schouten { "yes" } else { "no" }
        );
    }

    report.yang_baxter = Some(yb);
    Ok((report, true))
}

fn cmd_yb_construct(
    path: &Path,
    out: Option<&Path>,
    tol: f64,
    json: bool,
) -> Result<(Report, bool)> {
    let file = io::read_file(path)?;
    let mut report = Report::new("yb", echo(&file, path), tol);
    let alg = file.to_algebra(tol)?;
    let sf = file.to_symplectic(tol)?.ok_or(Error::MissingSection {
        section: "subspace",
    })?;

    let r = subspace_form_to_r(&alg, &sf)?;
    let solution = solution_report(&alg, &r, tol)?;

    let mut updated = file.clone();
    updated.bivector.clear();
    for i in 0..alg.dim() {
        for j in (i + 1)..alg.dim() {
            if r.entry(i, j) != 0.0 {
                updated.bivector.push(io::BivectorEntry {
                    i,
                    j,
                    v: r.entry(i, j),
                });
            }
        }
    }
    let text = io::canonical_string(&updated);
    if let Some(out_path) = out {
        std::fs::write(out_path, &text)?;
    }

    if !json {
        match out {
            Some(out_path) => println!("wrote {}", out_path.display()),
            None => print!("{text}"),
        }
        println!("schouten norm: {:.3e}", solution.schouten_norm);
        println!(
            "YANG-BAXTER: {}",
            if solution.verdict_schouten { "yes" } else { "no" }
        );
    }

    report.yang_baxter = Some(yang_baxter_json(&r, &solution));
    Ok((report, true))
}

fn cmd_bialgebra(path: &Path, tol: f64, json: bool) -> Result<(Report, bool)> {
    let file = io::read_file(path)?;
    let mut report = Report::new("bialgebra", echo(&file, path), tol);
    let alg = file.to_algebra(tol)?;
    let metric = file
        .to_metric(tol)?
        .ok_or(Error::MissingSection { section: "metric" })?;
    let sf = file.to_symplectic(tol)?.ok_or(Error::MissingSection {
        section: "subspace",
    })?;

    let bialgebra = bialgebra_report(&alg, &metric, &sf, tol)?;
    let section = BialgebraJson::from_report(&bialgebra);

    if !json {
        println!("instance: {} (dim {})", file.name, file.dim);
        println!("schouten norm: {:.3e}", section.schouten_norm);
        println!("dual jacobi defect: {:.3e}", section.dual_jacobi_defect);
        println!(
            "dual connection identity: defect {:.3e} ({})",
            section.connection_check.defect,
            yesno(section.connection_check.holds)
        );
        println!("image abelian: {}", yesno(section.image_abelian));
        println!(
            "compatibility defect: {:.3e}",
            section.compatibility_defect
        );
        println!(
            "dual algebra riemann-lie: {}",
            yesno(section.dual_classification.is_riemann_lie)
        );
        println!("primal riemann-lie: {}", yesno(section.primal_riemann_lie));
        println!(
            "both primal and dual riemann-lie: {}",
            yesno(section.double_riemann_lie)
        );
        println!("CERTIFIED: {}", yesno(section.certified));
    }

    report.bialgebra = Some(section);
    Ok((report, true))
}

fn cmd_generate(kind: &GenerateKind, tol: f64, json: bool) -> Result<(Report, bool)> {
    let (file, seed, out) = match kind {
        GenerateKind::Flat { p, q, seed, out } => (
            InstanceFile::from_instance(&random_flat(*p, *q, *seed)?),
            Some(*seed),
            out,
        ),
        GenerateKind::Named { name, out } => {
            (InstanceFile::from_instance(&named(name)?), None, out)
        }
        GenerateKind::Metric {
            base,
            seed,
            plus,
            minus,
            out,
        } => {
            let mut file = io::read_file(base)?;
            let alg = file.to_algebra(tol)?;
            let n = alg.dim();
            let signature = (plus.unwrap_or(n - minus.unwrap_or(0)), minus.unwrap_or(0));
            let metric = random_metric(n, *seed, signature)?;
            file.metric = Some(io::matrix_to_rows(metric.gram()));
            file.name = format!("{}+metric#{}", file.name, seed);
            (file, Some(*seed), out)
        }
    };

    let text = io::canonical_string(&file);
    if let Some(out_path) = out {
        std::fs::write(out_path, &text)?;
    }
    let mut report = Report::new(
        "generate",
        InputEcho {
            name: file.name.clone(),
            dim: file.dim,
            path: None,
        },
        tol,
    );
    report.generated = Some(GeneratedJson {
        name: file.name.clone(),
        dim: file.dim,
        seed,
        path: out.as_ref().map(|p| p.display().to_string()),
    });

    if !json {
        match out {
            Some(out_path) => println!("wrote {}", out_path.display()),
            None => print!("{text}"),
        }
    }
    Ok((report, true))
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
