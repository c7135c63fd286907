use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use lefschetz::complex::{cohomology, ChainComplex, ChainMap};
use lefschetz::homotopy::{hom_k_presentation, minimize};
use lefschetz::io::{
    generate_instance, instance_hash, parse_certificate, parse_instance, serialize_certificate, serialize_instance,
    GeneratorProfile, Instance,
};
use lefschetz::lefschetz::{hard_lefschetz_check, LefschetzData, LefschetzFamily, LefschetzMap};
use lefschetz::linalg::ModulePresentation;
use lefschetz::{deligne_decompose, verify_certificate, Error};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "lefschetz", version, about = "Exact hard Lefschetz decompositions with checkable certificates")]
struct Cli {
    /// Print machine-readable JSON reports.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an instance and report hard Lefschetz for each n.
    Check { instance: PathBuf },
    /// Invariant factors of every cohomology module.
    Cohomology { instance: PathBuf },
    /// Decompose an instance and write the certificate.
    Decompose {
        instance: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a certificate against its instance, or every `NAME.cert.json`
    /// against `NAME.json` in a directory.
    Verify {
        #[arg(required_unless_present = "all")]
        instance: Option<PathBuf>,
        #[arg(required_unless_present = "all")]
        certificate: Option<PathBuf>,
        #[arg(long, value_name = "DIR", conflicts_with_all = ["instance", "certificate"])]
        all: Option<PathBuf>,
    },
    /// Hom from the first complex to the second in the homotopy category.
    Hom { a: PathBuf, b: PathBuf },
    /// Replace the complex by a homotopy equivalent one without unit entries.
    Minimize {
        instance: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Generate a scrambled instance from a profile.
    Generate {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        profile: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// Exit status 1: a mathematical failure. Status 2: bad input.
enum Failure {
    Math(String),
    Input(String),
}

type Outcome = Result<Report, Failure>;

struct Report {
    text: String,
    json: Value,
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn classify(e: Error) -> Failure {
    match e {
        Error::HardLefschetzViolation(_) | Error::AmplitudeViolation(_) | Error::InternalWitnessFailure(_) => {
            Failure::Math(e.to_string())
        }
        other => Failure::Input(other.to_string()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn module_json(m: &ModulePresentation) -> Value {
    let ring = m.ring();
    json!({
        "free_rank": m.free_rank(),
        "invariant_factors": m.invariant_factors().iter().map(|d| ring.format_element(d)).collect::<Vec<_>>(),
        "description": m.describe(),
    })
}

fn check(path: &Path) -> Outcome {
    let inst = load_instance(path)?;
    let reports = hard_lefschetz_check(&inst.data).map_err(classify)?;
    let mut text = String::new();
    for r in &reports {
        text += &format!(
            "n={}: H^-{} = {} -> H^{} = {}: {}\n",
            r.n,
            r.n,
            r.source.describe(),
            r.n,
            r.target.describe(),
            if r.passes { "PASS" } else { "FAIL" }
        );
    }
    if reports.is_empty() {
        text += "no cohomology outside degree 0: nothing to check\n";
    }
    let json = json!({
        "valid": true,
        "hard_lefschetz": reports.iter().map(|r| json!({
            "n": r.n, "source": module_json(&r.source), "target": module_json(&r.target), "passes": r.passes,
        })).collect::<Vec<_>>(),
    });
    match reports.iter().find(|r| !r.passes) {
        Some(r) => Err(Failure::Math(format!("{text}hard Lefschetz fails at n={}", r.n))),
        None => Ok(Report { text, json }),
    }
}

fn cohomology_report(path: &Path) -> Outcome {
    let inst = load_instance(path)?;
    let a = &inst.complex;
    let mut text = String::new();
    let mut degrees = Vec::new();
    for k in a.degrees() {
        let h = cohomology(a, k);
        text += &format!("H^{k} = {}\n", h.describe());
        let mut entry = module_json(&h);
        entry["degree"] = json!(k);
        degrees.push(entry);
    }
    if degrees.is_empty() {
        text += "zero complex\n";
    }
    Ok(Report { text, json: json!({ "ring": a.ring().to_string(), "cohomology": degrees }) })
}

fn decompose(path: &Path, output: &Path) -> Outcome {
    let inst = load_instance(path)?;
    let cert = deligne_decompose(&inst.complex, &inst.data).map_err(classify)?;
    write(output, &serialize_certificate(&cert, &inst.complex, &instance_hash(&inst)))?;
    let mut text = format!("{} summands written to {}\n", cert.summands.len(), output.display());
    let mut summands = Vec::new();
    for s in &cert.summands {
        let h = cohomology(&s.complex, -s.k);
        text += &format!("R_{} ~ ({})[{}], twist weight {}\n", s.k, h.describe(), s.k, s.twist_weight);
        summands.push(json!({ "k": s.k, "twist_weight": s.twist_weight, "cohomology": module_json(&h) }));
    }
    Ok(Report { text, json: json!({ "output": output.display().to_string(), "summands": summands }) })
}

fn verify_pair(instance: &Path, certificate: &Path) -> Outcome {
    let inst = load_instance(instance)?;
    let (cert, hash) = parse_certificate(&read(certificate)?, &inst.complex)
        .map_err(|e| Failure::Input(format!("{}: {e}", certificate.display())))?;
    if hash != instance_hash(&inst) {
        return Err(Failure::Input(format!(
            "{} was produced for a different instance than {}",
            certificate.display(),
            instance.display()
        )));
    }
    match verify_certificate(&inst.complex, &cert) {
        Ok(()) => Ok(Report {
            text: format!("PASS ({} summands)\n", cert.summands.len()),
            json: json!({ "passes": true, "summands": cert.summands.len() }),
        }),
        Err(f) => Err(Failure::Math(format!("FAIL at {}: {}", f.location, f.message))),
    }
}

fn verify_all(dir: &Path) -> Outcome {
    let mut certs: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.to_string_lossy().ends_with(".cert.json"))
        .collect();
    certs.sort();
    if certs.is_empty() {
        return Err(Failure::Input(format!("no *.cert.json files in {}", dir.display())));
    }
    let mut text = String::new();
    let mut results = Vec::new();
    let (mut math, mut bad_input) = (false, false);
    for cert in &certs {
        let name = cert.file_name().unwrap().to_string_lossy().trim_end_matches(".cert.json").to_string();
        let instance = dir.join(format!("{name}.json"));
        let (status, detail) = match verify_pair(&instance, cert) {
            Ok(_) => ("PASS", String::new()),
            Err(Failure::Math(m)) => {
                math = true;
                ("FAIL", m)
            }
            Err(Failure::Input(m)) => {
                bad_input = true;
                ("ERROR", m)
            }
        };
        text +=
            &format!("{name}: {status}{}\n", if detail.is_empty() { String::new() } else { format!(" ({detail})") });
        results.push(json!({ "name": name, "status": status, "detail": detail }));
    }
    if bad_input {
        Err(Failure::Input(text.trim_end().to_string()))
    } else if math {
        Err(Failure::Math(text.trim_end().to_string()))
    } else {
        Ok(Report { text, json: json!({ "results": results }) })
    }
}

fn hom(a: &Path, b: &Path) -> Outcome {
    let (x, y) = (load_instance(a)?, load_instance(b)?);
    let m = hom_k_presentation(&x.complex, &y.complex).map_err(classify)?;
    Ok(Report { text: format!("Hom = {}\n", m.describe()), json: module_json(&m) })
}

/// `to[s] o f o from[-s]` for a map `f: A[-s] -> A[s]`.
fn transport(f: &ChainMap, to: &ChainMap, from: &ChainMap, s: i64) -> Result<ChainMap, Failure> {
    to.shift(s).compose(f).and_then(|g| g.compose(&from.shift(-s))).map_err(classify)
}

fn minimize_instance(path: &Path, output: &Path) -> Outcome {
    let inst = load_instance(path)?;
    let m = minimize(&inst.complex).map_err(classify)?;
    let b: Arc<ChainComplex> = m.complex.clone();
    let data = match &inst.data {
        LefschetzData::Power(phi) => {
            let moved = transport(phi.as_chain_map(), &m.to_min, &m.from_min, 1)?;
            let comps: BTreeMap<i64, _> = moved.source().degrees().zip(moved.components().iter().cloned()).collect();
            LefschetzData::Power(LefschetzMap::new(b.clone(), &comps).map_err(classify)?)
        }
        LefschetzData::Family(fam) => {
            let maps = fam
                .maps()
                .iter()
                .enumerate()
                .map(|(i, f)| transport(f, &m.to_min, &m.from_min, i as i64 + 1))
                .collect::<Result<Vec<_>, _>>()?;
            LefschetzData::Family(LefschetzFamily::new(b.clone(), maps).map_err(classify)?)
        }
    };
    let out = Instance { complex: b.clone(), data, metadata: None };
    write(output, &serialize_instance(&out))?;
    Ok(Report {
        text: format!("ranks {:?} -> {:?} from degree {}\n", inst.complex.ranks(), b.ranks(), b.min_degree()),
        json: json!({ "min_degree": b.min_degree(), "ranks": b.ranks(), "before": inst.complex.ranks() }),
    })
}

fn generate(seed: Option<u64>, profile: &Path, output: &Path) -> Outcome {
    let mut p: GeneratorProfile =
        serde_json::from_str(&read(profile)?).map_err(|e| Failure::Input(format!("{}: {e}", profile.display())))?;
    if let Some(s) = seed {
        p.seed = s;
    }
    let inst = generate_instance(&p).map_err(input)?;
    write(output, &serialize_instance(&inst))?;
    let mode = match inst.data {
        LefschetzData::Power(_) => "power",
        LefschetzData::Family(_) => "family",
    };
    Ok(Report {
        text: format!("wrote {} ({mode} mode, ranks {:?})\n", output.display(), inst.complex.ranks()),
        json: json!({ "output": output.display().to_string(), "mode": mode, "ranks": inst.complex.ranks() }),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check { instance } => check(instance),
        Command::Cohomology { instance } => cohomology_report(instance),
        Command::Decompose { instance, output } => decompose(instance, output),
        Command::Verify { all: Some(dir), .. } => verify_all(dir),
        Command::Verify { instance: Some(i), certificate: Some(c), .. } => verify_pair(i, c),
        Command::Verify { .. } => Err(Failure::Input("verify needs an instance and a certificate, or --all".into())),
        Command::Hom { a, b } => hom(a, b),
        Command::Minimize { instance, output } => minimize_instance(instance, output),
        Command::Generate { seed, profile, output } => generate(*seed, profile, output),
    };
    match outcome {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("serializable"));
            } else {
                print!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let (code, kind, message) = match failure {
                Failure::Math(m) => (1, "failure", m),
                Failure::Input(m) => (2, "input_error", m),
            };
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&json!({ kind: message })).expect("serializable"));
            }
            eprintln!("{message}");
            ExitCode::from(code)
        }
    }
}
