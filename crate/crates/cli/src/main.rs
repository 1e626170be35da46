//! `trimatcat`: exact-arithmetic constructions over triangular matrix
//! categories.
//!
//! Exit codes: 0 success, 1 usage/parse/I-O errors, 2 input validation
//! failures, 3 property-suite failures.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use trimatcat::apps::{
    hom_matrix_category, one_point_extension, splitting_equivalence, SplittingEquivalence,
    TorsionPairSpec,
};
use trimatcat::category::LinearCategory;
use trimatcat::error::Error as CoreError;
use trimatcat::field::Field;
use trimatcat::fixtures;
use trimatcat::json;
use trimatcat::quiver::{parse_quiver, path_category};
use trimatcat::suites::{run_all, run_suite, RunConfig, SuiteInputs, SuiteReport};
use trimatcat::trimat::{build_lambda, lambda_radical, LambdaCategory};

#[derive(Parser)]
#[command(name = "trimatcat", version, about = "triangular matrix category toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build Λ = [𝒯 0; M 𝒰] from quiver presentations and a bimodule.
    Build(BuildArgs),
    /// Run property suites over the fixture corpus or supplied inputs.
    Check(CheckArgs),
    /// Run one construction and emit its witness JSON.
    Apply(ApplyArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// quiver presentation for 𝒯 (file path or fixture name)
    #[arg(long)]
    tcat: String,
    /// quiver presentation for 𝒰 (file path or fixture name)
    #[arg(long)]
    ucat: String,
    /// bimodule: `hom` (Hom of the union quiver), `zero`, or a JSON file
    #[arg(long)]
    bimod: String,
    /// output path for the Λ JSON
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct CheckArgs {
    /// one of: axioms, radical, equivalence, adjunction, duality,
    /// applications, all
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// ground field: `q` or `f<p>`
    #[arg(long, default_value = "q")]
    field: String,
    /// Λ JSON to check instead of the fixtures (axioms / radical /
    /// equivalence suites)
    #[arg(long)]
    lambda: Option<PathBuf>,
    /// triple JSON over the Λ bimodule (equivalence suite)
    #[arg(long)]
    triple: Option<PathBuf>,
    /// write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ApplyArgs {
    #[command(subcommand)]
    what: ApplyCommand,
}

#[derive(Subcommand)]
enum ApplyCommand {
    /// One-point extension at a source vertex.
    OnePoint {
        /// quiver presentation (file path or fixture name)
        #[arg(long)]
        quiver: String,
        /// the source vertex to split off
        #[arg(long)]
        source: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Splitting torsion pair equivalence C ≅ [𝒯 0; Ĥom 𝒰].
    TorsionPair {
        /// ambient category (file path or fixture name)
        #[arg(long)]
        cat: String,
        /// comma-separated 𝒰 objects
        #[arg(long)]
        u: String,
        /// comma-separated 𝒯 objects
        #[arg(long)]
        t: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Hom matrix category [C 0; Ĥom C].
    HomMatrix {
        #[arg(long)]
        cat: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Ext¹ matrix category over the simple representations of an
    /// acyclic quiver.
    Ext1Matrix {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Radical basis of one Hom-space of a Λ built previously.
    Radical {
        #[arg(long)]
        lambda: PathBuf,
        /// Λ object name, e.g. `(t,u)`
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dual of a finite module over the 𝒯 side of a Λ.
    Dualize {
        #[arg(long)]
        lambda: PathBuf,
        /// module JSON over the 𝒯 component
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Duality-square evaluation on a triple.
    NuCheck {
        #[arg(long)]
        lambda: PathBuf,
        #[arg(long)]
        triple: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err);
            ExitCode::from(exit_code_for(&err))
        }
    }
}

#[derive(Debug)]
enum CliError {
    Core(CoreError),
    Io(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{}", e),
            CliError::Io(e) => write!(f, "{}", e),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

fn exit_code_for(err: &CliError) -> u8 {
    match err {
        CliError::Io(_) => 1,
        CliError::Core(e) => match e {
            CoreError::Parse { .. }
            | CoreError::BadFieldSpec(_)
            | CoreError::BadScalar(_)
            | CoreError::UnsupportedField(_)
            | CoreError::InvalidInput(_) => 1,
            _ => 2,
        },
    }
}

fn color_enabled() -> bool {
    matches!(std::env::var("TRIMATCAT_COLOR").as_deref(), Ok("1"))
}

fn status_line(name: &str, pass: bool, witness: Option<&str>) {
    let (tag, plain) = if pass { ("\x1b[32mPASS\x1b[0m", "PASS") } else { ("\x1b[31mFAIL\x1b[0m", "FAIL") };
    let shown = if color_enabled() { tag } else { plain };
    match witness {
        Some(w) if !pass => eprintln!("{} {} — {}", shown, name, w),
        _ => eprintln!("{} {}", shown, name),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {}", path.display(), e)))
}

fn write_output(path: Option<&PathBuf>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, contents)
            .map_err(|e| CliError::Io(format!("cannot write {}: {}", p.display(), e))),
        None => {
            println!("{}", contents);
            Ok(())
        }
    }
}

/// The vertex names declared in a presentation document, in order.
fn declared_vertices(text: &str) -> Vec<String> {
    text.lines()
        .filter_map(|raw| {
            let line = raw.split('#').next().unwrap_or("").trim();
            line.strip_prefix("vertex ").map(|v| v.trim().to_string())
        })
        .collect()
}

/// Loads a quiver presentation from a fixture name or a file path.
fn load_presentation(spec: &str) -> Result<String, CliError> {
    if let Ok(text) = fixtures::presentation(spec) {
        return Ok(text);
    }
    read_file(Path::new(spec))
}

fn dispatch(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Check(args) => cmd_check(args),
        Command::Apply(args) => cmd_apply(args.what),
    }
}

#[derive(serde::Serialize)]
struct BuildReport {
    schema_version: u32,
    objects: usize,
    end_dims: Vec<(String, usize)>,
}

fn cmd_build(args: BuildArgs) -> Result<ExitCode, CliError> {
    let t_text = load_presentation(&args.tcat)?;
    let u_text = load_presentation(&args.ucat)?;
    let lambda = match args.bimod.as_str() {
        "hom" => {
            // the union of the two files is the ambient category; the two
            // files' vertex declarations form the (T, U) partition
            let merged = format!("{}\n{}", t_text, u_text);
            let q = parse_quiver(&merged)?;
            let cat = Arc::new(path_category(&q)?);
            let m = Arc::new(trimatcat::bimodule::bimodule_from_hom(
                &cat,
                &declared_vertices(&u_text),
                &declared_vertices(&t_text),
            )?);
            build_lambda(Arc::clone(&m.t_cat), Arc::clone(&m.u_cat), m)?
        }
        "zero" => {
            let t_cat = Arc::new(path_category(&parse_quiver(&t_text)?)?);
            let u_cat = Arc::new(path_category(&parse_quiver(&u_text)?)?);
            let m = Arc::new(trimatcat::bimodule::zero_bimodule(
                Arc::clone(&t_cat),
                Arc::clone(&u_cat),
            ));
            build_lambda(t_cat, u_cat, m)?
        }
        file => {
            let t_cat = Arc::new(path_category(&parse_quiver(&t_text)?)?);
            let u_cat = Arc::new(path_category(&parse_quiver(&u_text)?)?);
            let text = read_file(Path::new(file))?;
            let bj: json::BimoduleJson = serde_json::from_str(&text)
                .map_err(|e| CliError::Io(format!("bad bimodule JSON: {}", e)))?;
            let m = Arc::new(json::bimodule_from_json(&bj, t_cat, u_cat)?);
            build_lambda(Arc::clone(&m.t_cat), Arc::clone(&m.u_cat), m)?
        }
    };
    let lj = json::lambda_to_json(&lambda);
    let out = serde_json::to_string_pretty(&lj)
        .map_err(|e| CliError::Io(e.to_string()))?;
    std::fs::write(&args.out, out)
        .map_err(|e| CliError::Io(format!("cannot write {}: {}", args.out.display(), e)))?;
    let report = BuildReport {
        schema_version: json::SCHEMA_VERSION,
        objects: lambda.object_count(),
        end_dims: (0..lambda.object_count())
            .map(|i| (lambda.object_name(i).to_string(), lambda.cat.hom_dim(i, i)))
            .collect(),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).map_err(|e| CliError::Io(e.to_string()))?
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode, CliError> {
    let field = Field::parse(&args.field)?;
    let cfg = RunConfig { seed: args.seed, trials: args.trials, field };
    let mut inputs = SuiteInputs::default();
    if let Some(path) = &args.lambda {
        let text = read_file(path)?;
        let lj: json::LambdaJson = serde_json::from_str(&text)
            .map_err(|e| CliError::Io(format!("bad lambda JSON: {}", e)))?;
        // load without validation so the suites can observe breakage
        let lambda = json::lambda_from_json(&lj, false)?;
        if let Some(tpath) = &args.triple {
            let ttext = read_file(tpath)?;
            let tj: json::TripleJson = serde_json::from_str(&ttext)
                .map_err(|e| CliError::Io(format!("bad triple JSON: {}", e)))?;
            inputs.triple = Some(json::triple_from_json(&tj, &lambda.bimodule)?);
        }
        inputs.lambda = Some(lambda);
    } else if args.triple.is_some() {
        return Err(CliError::Core(CoreError::InvalidInput(
            "--triple requires --lambda".into(),
        )));
    }

    let reports: Vec<SuiteReport> = if args.suite == "all" {
        run_all(&cfg, &inputs)?
    } else {
        vec![run_suite(&args.suite, &cfg, &inputs)?]
    };
    for report in &reports {
        for entry in &report.entries {
            status_line(&entry.name, entry.pass, entry.witness.as_deref());
        }
    }
    let payload = serde_json::json!({
        "schema_version": json::SCHEMA_VERSION,
        "reports": reports,
    });
    let body = serde_json::to_string_pretty(&payload).map_err(|e| CliError::Io(e.to_string()))?;
    write_output(args.out.as_ref(), &body)?;
    if reports.iter().all(|r| r.is_pass()) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(3))
    }
}

#[derive(serde::Serialize)]
struct EquivalenceWitnessJson {
    schema_version: u32,
    object_map: Vec<(String, String)>,
    hom_maps: Vec<HomMapJson>,
}

#[derive(serde::Serialize)]
struct HomMapJson {
    from: String,
    to: String,
    matrix: json::SparseMatrix,
}

fn equivalence_witness(cat: &LinearCategory, eq: &SplittingEquivalence) -> EquivalenceWitnessJson {
    EquivalenceWitnessJson {
        schema_version: json::SCHEMA_VERSION,
        object_map: (0..cat.object_count())
            .map(|x| {
                (
                    cat.objects[x].clone(),
                    eq.lambda.object_name(eq.object_map[x]).to_string(),
                )
            })
            .collect(),
        hom_maps: eq
            .hom_maps
            .iter()
            .map(|(&(x, y), m)| HomMapJson {
                from: cat.objects[x].clone(),
                to: cat.objects[y].clone(),
                matrix: m
                    .entries
                    .iter()
                    .enumerate()
                    .flat_map(|(r, row)| {
                        row.iter().enumerate().filter_map(move |(c, v)| {
                            if v.is_zero() {
                                None
                            } else {
                                Some((r, c, v.to_string()))
                            }
                        })
                    })
                    .collect(),
            })
            .collect(),
    }
}

fn load_lambda(path: &Path) -> Result<LambdaCategory, CliError> {
    let text = read_file(path)?;
    let lj: json::LambdaJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Io(format!("bad lambda JSON: {}", e)))?;
    Ok(json::lambda_from_json(&lj, true)?)
}

fn cmd_apply(what: ApplyCommand) -> Result<ExitCode, CliError> {
    match what {
        ApplyCommand::OnePoint { quiver, source, out } => {
            let q = parse_quiver(&load_presentation(&quiver)?)?;
            let cat = path_category(&q)?;
            let ext = one_point_extension(&q, &source)?;
            let witness = serde_json::json!({
                "schema_version": json::SCHEMA_VERSION,
                "source": source,
                "m_dims": ext
                    .q_prime
                    .vertices
                    .iter()
                    .zip(&ext.m_dims)
                    .map(|(v, d)| serde_json::json!({"vertex": v, "dim": d}))
                    .collect::<Vec<_>>(),
                "lambda": json::lambda_to_json(&ext.equivalence.lambda),
                "equivalence": equivalence_witness(&cat, &ext.equivalence),
            });
            write_output(
                out.as_ref(),
                &serde_json::to_string_pretty(&witness).map_err(|e| CliError::Io(e.to_string()))?,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        ApplyCommand::TorsionPair { cat, u, t, out } => {
            let q = parse_quiver(&load_presentation(&cat)?)?;
            let category = Arc::new(path_category(&q)?);
            let spec = TorsionPairSpec {
                cat: Arc::clone(&category),
                u_objs: u.split(',').map(|s| s.trim().to_string()).collect(),
                t_objs: t.split(',').map(|s| s.trim().to_string()).collect(),
            };
            let eq = splitting_equivalence(&spec)?;
            let witness = serde_json::json!({
                "schema_version": json::SCHEMA_VERSION,
                "lambda": json::lambda_to_json(&eq.lambda),
                "equivalence": equivalence_witness(&category, &eq),
            });
            write_output(
                out.as_ref(),
                &serde_json::to_string_pretty(&witness).map_err(|e| CliError::Io(e.to_string()))?,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        ApplyCommand::HomMatrix { cat, out } => {
            let q = parse_quiver(&load_presentation(&cat)?)?;
            let category = path_category(&q)?;
            let lambda = hom_matrix_category(&category)?;
            let body = serde_json::to_string_pretty(&json::lambda_to_json(&lambda))
                .map_err(|e| CliError::Io(e.to_string()))?;
            write_output(out.as_ref(), &body)?;
            Ok(ExitCode::SUCCESS)
        }
        ApplyCommand::Ext1Matrix { quiver, out } => {
            let q = parse_quiver(&load_presentation(&quiver)?)?;
            let category = Arc::new(path_category(&q)?);
            let names: Vec<String> =
                q.vertices.iter().map(|v| format!("S_{}", v)).collect();
            let reps: Vec<_> = (0..q.vertices.len())
                .map(|v| fixtures::simple_rep(&category, v))
                .collect();
            let lambda =
                trimatcat::apps::ext1_matrix_category(&q, &category, &names, &reps)?;
            let body = serde_json::to_string_pretty(&json::lambda_to_json(&lambda))
                .map_err(|e| CliError::Io(e.to_string()))?;
            write_output(out.as_ref(), &body)?;
            Ok(ExitCode::SUCCESS)
        }
        ApplyCommand::Radical { lambda, from, to, out } => {
            let l = load_lambda(&lambda)?;
            let from = l.cat.object_index(&from)?;
            let to = l.cat.object_index(&to)?;
            let basis = lambda_radical(&l, from, to)?;
            let witness = serde_json::json!({
                "schema_version": json::SCHEMA_VERSION,
                "from": l.object_name(from),
                "to": l.object_name(to),
                "dim": basis.dim(),
                "basis": basis
                    .rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(_, v)| !v.is_zero())
                            .map(|(i, v)| {
                                serde_json::json!({
                                    "basis": l.cat.hom_space(from, to).labels[i],
                                    "coeff": v.to_string(),
                                })
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect::<Vec<_>>(),
            });
            write_output(
                out.as_ref(),
                &serde_json::to_string_pretty(&witness).map_err(|e| CliError::Io(e.to_string()))?,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        ApplyCommand::Dualize { lambda, module, out } => {
            let l = load_lambda(&lambda)?;
            let text = read_file(&module)?;
            let mj: json::ModuleJson = serde_json::from_str(&text)
                .map_err(|e| CliError::Io(format!("bad module JSON: {}", e)))?;
            let m = json::module_from_json(&mj, Arc::clone(&l.t_cat))?;
            let bad = m.check_functorial();
            if !bad.is_empty() {
                return Err(CliError::Core(CoreError::InvalidModule(bad[0].clone())));
            }
            let dual = trimatcat::duality::dualize_module(&m);
            let body = serde_json::to_string_pretty(&json::module_to_json(&dual))
                .map_err(|e| CliError::Io(e.to_string()))?;
            write_output(out.as_ref(), &body)?;
            Ok(ExitCode::SUCCESS)
        }
        ApplyCommand::NuCheck { lambda, triple, out } => {
            let l = load_lambda(&lambda)?;
            let ttext = read_file(&triple)?;
            let tj: json::TripleJson = serde_json::from_str(&ttext)
                .map_err(|e| CliError::Io(format!("bad triple JSON: {}", e)))?;
            let tr = json::triple_from_json(&tj, &l.bimodule)?;
            let failures = tr.check();
            if !failures.is_empty() {
                return Err(CliError::Core(CoreError::InvalidTriple(failures[0].clone())));
            }
            let w = trimatcat::duality::nu_square_check(&tr, &l)?;
            let ledger = serde_json::json!({
                "schema_version": json::SCHEMA_VERSION,
                "pass": w.is_pass(),
                "objects": w
                    .object_dims
                    .iter()
                    .zip(&w.nu_components)
                    .map(|((name, d1, d2), m)| serde_json::json!({
                        "object": name, "path1_dim": d1, "path2_dim": d2,
                        "bijection": m
                            .entries
                            .iter()
                            .enumerate()
                            .flat_map(|(r, row)| {
                                row.iter().enumerate().filter_map(move |(c, v)| {
                                    if v.is_zero() {
                                        None
                                    } else {
                                        Some(serde_json::json!([r, c, v.to_string()]))
                                    }
                                })
                            })
                            .collect::<Vec<_>>(),
                    }))
                    .collect::<Vec<_>>(),
                "failures": w.failures,
            });
            write_output(
                out.as_ref(),
                &serde_json::to_string_pretty(&ledger).map_err(|e| CliError::Io(e.to_string()))?,
            )?;
            if w.is_pass() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(3))
            }
        }
    }
}
