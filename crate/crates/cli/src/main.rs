use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use sl3web::certify::{certify_indecomposable, certify_not_isomorphic, verify_key_lemma, Certificate};
use sl3web::classify::Classification;
use sl3web::enumerate::{
    default_budget, enumerate_non_elliptic_seeded, enumerate_superficial_non_elliptic, invariant_dim,
};
use sl3web::foam::{parse_foams, PreFoam};
use sl3web::skein::{graded_hom_dim, reduce_to_nonelliptic};
use sl3web::web::text::{parse_webs, write_web};
use sl3web::{kuperberg_bracket, LaurentPoly, SignSequence, Web};

#[derive(Parser)]
#[command(name = "sl3web", version, about = "Skein calculus for sl3 webs and closed pre-foams")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "text")]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: Option<u16>,
    /// Seed for commands that shuffle their search order.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate web files.
    Validate { files: Vec<PathBuf> },
    /// Kuperberg bracket of every closed web.
    Bracket { files: Vec<PathBuf> },
    /// Expand every web in the non-elliptic basis.
    Reduce { files: Vec<PathBuf> },
    /// Faces, blocks and the ellipticity classes of every web.
    Classify { files: Vec<PathBuf> },
    /// All non-elliptic webs on a boundary such as `+-+-`.
    Enum {
        #[arg(allow_hyphen_values = true)]
        signs: String,
        /// Vertex budget (default 2·l²).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        budget: Option<u64>,
        /// Keep only superficial webs.
        #[arg(long)]
        superficial: bool,
    },
    /// Dimension of the invariant space for a boundary.
    Invdim {
        #[arg(allow_hyphen_values = true)]
        signs: String,
    },
    /// Graded hom dimension between the first webs of two files.
    Homdim { left: PathBuf, right: PathBuf },
    /// Indecomposability and non-isomorphism certificates.
    Certify {
        #[command(subcommand)]
        which: CertifyCommand,
    },
    /// Check every superficial non-elliptic pair up to a boundary length.
    Keylemma {
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        budget: Option<u64>,
    },
    /// Closed pre-foams.
    Foam {
        #[command(subcommand)]
        which: FoamCommand,
    },
}

#[derive(Subcommand)]
enum CertifyCommand {
    /// Certify every web of the file.
    Indec { file: PathBuf },
    /// Compare the first webs of two files.
    Noniso { left: PathBuf, right: PathBuf },
}

#[derive(Subcommand)]
enum FoamCommand {
    /// Evaluate every pre-foam of the file.
    Eval { file: PathBuf },
}

#[derive(Serialize)]
struct Poly {
    text: String,
    coefficients: LaurentPoly,
}

impl From<LaurentPoly> for Poly {
    fn from(p: LaurentPoly) -> Self {
        Poly {
            text: p.to_string(),
            coefficients: p,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn webs(paths: &[PathBuf]) -> Result<Vec<(String, Web)>> {
    if paths.is_empty() {
        bail!("no input files");
    }
    let mut out = Vec::new();
    for p in paths {
        let parsed = parse_webs(&read(p)?).map_err(|e| anyhow!("{}: {e}", p.display()))?;
        out.extend(parsed);
    }
    Ok(out)
}

fn first_web(path: &Path) -> Result<Web> {
    webs(&[path.to_path_buf()])?
        .into_iter()
        .next()
        .map(|(_, w)| w)
        .ok_or_else(|| anyhow!("{}: no web found", path.display()))
}

fn foams(path: &Path) -> Result<Vec<(String, PreFoam)>> {
    parse_foams(&read(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn signs(s: &str) -> Result<SignSequence> {
    s.parse().map_err(|e| anyhow!("bad sign sequence `{s}`: {e}"))
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value)?),
        Format::Text => print!("{}", text()),
    }
    Ok(())
}

fn boundary_text(eps: &SignSequence) -> String {
    if eps.is_empty() {
        "empty".into()
    } else {
        eps.to_string()
    }
}

#[derive(Serialize)]
struct Validated {
    name: String,
    boundary: SignSequence,
    vertices: usize,
    edges: usize,
    circles: usize,
}

#[derive(Serialize)]
struct Bracketed {
    name: String,
    bracket: Poly,
}

#[derive(Serialize)]
struct Term {
    coefficient: Poly,
    web: String,
}

#[derive(Serialize)]
struct Reduced {
    name: String,
    boundary: SignSequence,
    terms: Vec<Term>,
}

#[derive(Serialize)]
struct Classified {
    name: String,
    #[serde(flatten)]
    classification: Classification,
}

#[derive(Serialize)]
struct Enumerated {
    boundary: SignSequence,
    budget: usize,
    superficial_only: bool,
    count: usize,
    invariant_dim: u128,
    webs: Vec<String>,
}

#[derive(Serialize)]
struct Certified {
    name: String,
    question: sl3web::certify::Question,
    verdict: sl3web::certify::Verdict,
    witness: Poly,
    leading_coefficient: String,
    boundary_length: usize,
}

impl Certified {
    fn new(name: String, c: Certificate) -> Self {
        Certified {
            name,
            question: c.question,
            verdict: c.verdict,
            leading_coefficient: c.witness.leading_coefficient().to_string(),
            witness: c.witness.into(),
            boundary_length: c.boundary_length,
        }
    }

    fn text(&self) -> String {
        format!(
            "{}: {}\n  witness: {}\n  leading coefficient: {}, boundary length: {}\n",
            self.name, self.verdict, self.witness.text, self.leading_coefficient, self.boundary_length
        )
    }
}

#[derive(Serialize)]
struct Evaluated {
    name: String,
    degree: i64,
    value: String,
}

fn run(cli: Cli) -> Result<bool> {
    let format = cli.format;
    match cli.command {
        Command::Validate { files } => {
            let out: Vec<Validated> = webs(&files)?
                .into_iter()
                .map(|(name, w)| Validated {
                    name,
                    boundary: w.boundary().clone(),
                    vertices: w.vertex_count(),
                    edges: w.edge_count(),
                    circles: w.circle_count(),
                })
                .collect();
            emit(format, &out, || {
                out.iter()
                    .map(|v| {
                        let b = boundary_text(&v.boundary);
                        format!("{}: ok, boundary {b}, {} vertices, {} edges, {} circles\n", v.name, v.vertices, v.edges, v.circles)
                    })
                    .collect()
            })?;
        }
        Command::Bracket { files } => {
            let ws = webs(&files)?;
            let out: Vec<Bracketed> = ws
                .par_iter()
                .map(|(name, w)| {
                    let b = kuperberg_bracket(w).map_err(|e| anyhow!("{name}: {e}"))?;
                    Ok(Bracketed {
                        name: name.clone(),
                        bracket: b.into(),
                    })
                })
                .collect::<Result<_>>()?;
            emit(format, &out, || out.iter().map(|b| format!("{}: {}\n", b.name, b.bracket.text)).collect())?;
        }
        Command::Reduce { files } => {
            let ws = webs(&files)?;
            let out: Vec<Reduced> = ws
                .par_iter()
                .map(|(name, w)| {
                    let terms = reduce_to_nonelliptic(w)
                        .terms()
                        .enumerate()
                        .map(|(i, (x, c))| Term {
                            coefficient: c.clone().into(),
                            web: write_web(&format!("{name}_{i}"), x),
                        })
                        .collect();
                    Reduced {
                        name: name.clone(),
                        boundary: w.boundary().clone(),
                        terms,
                    }
                })
                .collect();
            emit(format, &out, || {
                let mut s = String::new();
                for r in &out {
                    s += &format!("# {}: {} non-elliptic terms\n", r.name, r.terms.len());
                    for t in &r.terms {
                        s += &format!("# coefficient {}\n{}", t.coefficient.text, t.web);
                    }
                }
                s
            })?;
        }
        Command::Classify { files } => {
            let out: Vec<Classified> = webs(&files)?
                .into_par_iter()
                .map(|(name, w)| Classified {
                    name,
                    classification: Classification::of(&w),
                })
                .collect();
            emit(format, &out, || {
                out.iter()
                    .map(|c| {
                        let k = &c.classification;
                        format!(
                            "{}: boundary {}, {} vertices, {} edges, {} circles\n  bounded faces {:?}, blocks {:?}, nested {:?}\n  non-elliptic {}, superficial {}, semi-non-elliptic {}, 1-elliptic {}, semi-superficial {}\n",
                            c.name,
                            if k.boundary.is_empty() { "empty" } else { &k.boundary },
                            k.vertices,
                            k.edges,
                            k.circles,
                            k.bounded_face_profile,
                            k.blocks,
                            k.nested_faces,
                            k.non_elliptic,
                            k.superficial,
                            k.semi_non_elliptic,
                            k.one_elliptic,
                            k.semi_superficial
                        )
                    })
                    .collect()
            })?;
        }
        Command::Enum {
            signs: s,
            budget,
            superficial,
        } => {
            let eps = signs(&s)?;
            let budget = budget.map_or_else(|| default_budget(&eps), |b| b as usize);
            let found = if superficial {
                enumerate_superficial_non_elliptic(&eps, budget)?
            } else {
                enumerate_non_elliptic_seeded(&eps, budget, cli.seed)?
            };
            let out = Enumerated {
                boundary: eps.clone(),
                budget,
                superficial_only: superficial,
                count: found.len(),
                invariant_dim: invariant_dim(&eps),
                webs: found.iter().enumerate().map(|(i, w)| write_web(&format!("w{i}"), w)).collect(),
            };
            emit(format, &out, || {
                let kind = if superficial { "superficial non-elliptic" } else { "non-elliptic" };
                let mut t = format!(
                    "# {}: {} {kind} webs, invariant dimension {}\n",
                    boundary_text(&eps),
                    out.count,
                    out.invariant_dim
                );
                for w in &out.webs {
                    t += w;
                }
                t
            })?;
        }
        Command::Invdim { signs: s } => {
            let eps = signs(&s)?;
            let d = invariant_dim(&eps);
            emit(format, &serde_json::json!({ "boundary": eps, "invariant_dim": d }), || format!("{d}\n"))?;
        }
        Command::Homdim { left, right } => {
            let (a, b) = (first_web(&left)?, first_web(&right)?);
            let p: Poly = graded_hom_dim(&a, &b)?.into();
            emit(format, &serde_json::json!({ "boundary": a.boundary(), "homdim": p }), || format!("{}\n", p.text))?;
        }
        Command::Certify { which } => match which {
            CertifyCommand::Indec { file } => {
                let ws = webs(&[file])?;
                let out: Vec<Certified> = ws
                    .par_iter()
                    .map(|(name, w)| {
                        let c = certify_indecomposable(w).map_err(|e| anyhow!("{name}: {e}"))?;
                        Ok(Certified::new(name.clone(), c))
                    })
                    .collect::<Result<_>>()?;
                emit(format, &out, || out.iter().map(Certified::text).collect())?;
            }
            CertifyCommand::Noniso { left, right } => {
                let (a, b) = (first_web(&left)?, first_web(&right)?);
                let c = certify_not_isomorphic(&a, &b)?;
                let name = format!("{} vs {}", left.display(), right.display());
                let out = Certified::new(name, c);
                emit(format, &out, || out.text())?;
            }
        },
        Command::Keylemma { max_len, budget } => {
            let report = verify_key_lemma(max_len, budget.map(|b| b as usize))?;
            let ok = report.all_nice();
            emit(
                format,
                &serde_json::json!({ "report": report, "all_nice": ok }),
                || {
                    let mut t = String::new();
                    for b in &report.boundaries {
                        let eps = boundary_text(&b.boundary);
                        t += &format!("{eps}: {} webs, {}/{} pairs nice\n", b.webs, b.nice, b.pairs);
                    }
                    for c in &report.counterexamples {
                        t += &format!("counterexample on {}: webs {} and {}, witness {}\n", c.boundary, c.left, c.right, c.witness);
                    }
                    if ok {
                        t += &format!("all pairs nice ({} pairs)\n", report.pairs);
                    } else {
                        t += &format!("{} counterexamples among {} pairs\n", report.counterexamples.len(), report.pairs);
                    }
                    t
                },
            )?;
            return Ok(ok);
        }
        Command::Foam {
            which: FoamCommand::Eval { file },
        } => {
            let fs = foams(&file)?;
            let out: Vec<Evaluated> = fs
                .par_iter()
                .map(|(name, f)| {
                    let v = f.evaluate().map_err(|e| anyhow!("{name}: {e}"))?;
                    Ok(Evaluated {
                        name: name.clone(),
                        degree: f.degree(),
                        value: v.to_string(),
                    })
                })
                .collect::<Result<_>>()?;
            emit(format, &out, || out.iter().map(|e| format!("{}: {}\n", e.name, e.value)).collect())?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
