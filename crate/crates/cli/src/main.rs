use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use setcat::double::{drinfeld_double_abelian, rep_abelian};
use setcat::embedding::SymmetryEmbedding;
use setcat::equiv::find_equivalence;
use setcat::group::AbelianGroup;
use setcat::io::{serialize_embedding, to_pretty};
use setcat::pointed::{random_isotropic, random_metric_group, random_nondegenerate};
use setcat::premodular::Premodular;
use setcat::relprod::{
    condense_by_invertible_bosons, condense_with_budget, is_deconfined, relative_centralizer, relative_tensor_product, verify_stacking_identity,
    verify_unit_law, CondenseError, Verdict, DEFAULT_NODE_BUDGET,
};

mod load;
mod report;

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Fault { invariant: &'static str, msg: String },
}

impl From<CondenseError> for Failure {
    fn from(e: CondenseError) -> Self {
        let invariant = match &e {
            CondenseError::TwistNotConstant { .. } => "twist-constancy",
            CondenseError::NoConsistentFusion => "splitting-consistency",
            CondenseError::EngineLimit(_) => "splitting-budget",
            _ => return Failure::Input(e.to_string()),
        };
        Failure::Fault { invariant, msg: e.to_string() }
    }
}

impl From<setcat::equiv::EquivError> for Failure {
    fn from(e: setcat::equiv::EquivError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<setcat::premodular::PremodularError> for Failure {
    fn from(e: setcat::premodular::PremodularError) -> Self {
        match e {
            setcat::premodular::PremodularError::InconsistentNondegeneracy(_) => {
                Failure::Fault { invariant: "nondegeneracy-agreement", msg: e.to_string() }
            }
            e => Failure::Input(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "setcat", version, about = "Exact modular data, condensation and relative tensor products")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Categories are file paths or catalog keys (`toric_code`); embeddings likewise (`toric_code.e`).
#[derive(Subcommand)]
enum Command {
    /// Check every premodular invariant.
    Validate { file: String },
    /// Modular data, Muger center and global invariants.
    Info { file: String },
    /// Deligne product.
    Product { a: String, b: String },
    /// Muger center as a subcategory.
    Center { file: String },
    /// Centralizer of the embedded symmetry.
    Centralizer {
        file: String,
        #[arg(long = "emb")]
        emb: Vec<String>,
    },
    /// Condense a set of invertible bosons given by label.
    Condense {
        file: String,
        /// Comma-separated labels; commas inside brackets belong to the label.
        #[arg(long, required = true)]
        bosons: Vec<String>,
        /// Search-node budget for the splitting enumeration.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Relative tensor product over the embedded symmetry.
    Relprod {
        a: String,
        b: String,
        #[arg(long = "emb")]
        emb: Vec<String>,
    },
    /// Drinfeld double of a finite abelian group, given by invariant factors.
    Double {
        #[arg(long, value_delimiter = ',')]
        group: Vec<u64>,
        /// Also write the canonical embedding file here.
        #[arg(long)]
        emb_out: Option<PathBuf>,
    },
    /// Representation category of a finite abelian group.
    Rep {
        #[arg(long, value_delimiter = ',')]
        group: Vec<u64>,
        #[arg(long)]
        emb_out: Option<PathBuf>,
    },
    /// Search for a data equivalence, respecting embeddings when two are given.
    Equiv {
        a: String,
        b: String,
        #[arg(long = "emb")]
        emb: Vec<String>,
    },
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Subcommand)]
enum Verify {
    /// Z(E) relative product C is equivalent to C, respecting E.
    UnitLaw {
        file: String,
        #[arg(long = "emb")]
        emb: Vec<String>,
    },
    /// Relative product of centralizers against the centralizer of the relative product.
    Stacking {
        a: String,
        b: String,
        #[arg(long = "emb")]
        emb: Vec<String>,
    },
    /// The relative product of nondegenerate inputs is nondegenerate.
    Nondegeneracy {
        a: String,
        b: String,
        #[arg(long = "emb")]
        emb: Vec<String>,
    },
    /// The centralizer of E equals the labels deconfined against Vec.
    Centralizer {
        file: String,
        #[arg(long = "emb")]
        emb: Vec<String>,
    },
    /// Randomized pointed condensations against the metric-group quotient.
    PointedOracle {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
        #[arg(long, default_value_t = 64)]
        max_order: u64,
    },
}

struct Outcome {
    text: String,
    json: Value,
    code: u8,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome { text, json, code: 0 }
    }

    fn verdict(verdict: Verdict, text: String, mut json: Value) -> Self {
        json["verdict"] = json!(verdict.as_str());
        let text = format!("{text}verdict: {}\n", verdict.as_str());
        Outcome { text, json, code: if verdict == Verdict::True { 0 } else { 1 } }
    }
}

fn group(factors: &[u64]) -> Result<AbelianGroup, Failure> {
    AbelianGroup::new(factors).map_err(|e| Failure::Input(format!("--group: {e}")))
}

fn write_aux(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => Ok(()),
    }
}

/// Category outputs: JSON is the category file itself, so it can be fed back in.
fn category_outcome(p: &Premodular) -> Outcome {
    Outcome::ok(report::info_text(p), setcat::io::category_to_json(p))
}

/// Splits on commas outside brackets, so `(1,1),(psi,psi)` gives two labels.
fn split_labels(list: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in list.char_indices() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(list[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(list[start..].trim());
    out
}

fn one(embs: &[SymmetryEmbedding]) -> &SymmetryEmbedding {
    &embs[0]
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Validate { file } => {
            let p = load::category(&file)?;
            Ok(Outcome::ok(format!("{}: valid premodular category of rank {}\n", p.name(), p.rank()), json!({ "name": p.name(), "valid": true })))
        }
        Command::Info { file } => {
            let p = load::category(&file)?;
            p.is_nondegenerate()?;
            Ok(Outcome::ok(report::info_text(&p), report::info_json(&p)))
        }
        Command::Product { a, b } => {
            let (a, b) = (load::category(&a)?, load::category(&b)?);
            Ok(category_outcome(&a.deligne_product(&b)))
        }
        Command::Center { file } => {
            let p = load::category(&file)?;
            let center = p.muger_center();
            let sub = p.subcategory(format!("Z2({})", p.name()), &center)?;
            let nondegenerate = p.is_nondegenerate()?;
            let text = format!("{}\n{}", if nondegenerate { "nondegenerate" } else { "degenerate" }, report::info_text(&sub));
            let json = json!({
                "muger_center": center.iter().map(|&i| p.label(i)).collect::<Vec<_>>(),
                "nondegenerate": nondegenerate,
                "symmetric": p.is_symmetric(),
                "category": setcat::io::category_to_json(&sub),
            });
            Ok(Outcome::ok(text, json))
        }
        Command::Centralizer { file, emb } => {
            let p = load::category(&file)?;
            let embs = load::embeddings(&emb, &[&p])?;
            let cent = relative_centralizer(&p, one(&embs))?;
            let json = json!({
                "labels": cent.labels.iter().map(|&i| p.label(i)).collect::<Vec<_>>(),
                "category": setcat::io::category_to_json(&cent.category),
                "embedding": setcat::io::embedding_to_json(&cent.embedding, &cent.category),
            });
            Ok(Outcome::ok(report::info_text(&cent.category), json))
        }
        Command::Condense { file, bosons, budget } => {
            let p = load::category(&file)?;
            let idx = bosons.iter().flat_map(|b| split_labels(b)).map(|b| p.index_of(b)).collect::<Result<Vec<_>, _>>()?;
            let out = condense_with_budget(&p, &idx, budget)?;
            Ok(Outcome::ok(report::condensation_text(&out), report::condensation_json(&out)))
        }
        Command::Relprod { a, b, emb } => {
            let (a, b) = (load::category(&a)?, load::category(&b)?);
            let embs = load::embeddings(&emb, &[&a, &b])?;
            let out = relative_tensor_product(&a, &b, &embs[0], &embs[1])?;
            Ok(Outcome::ok(report::condensation_text(&out), report::condensation_json(&out)))
        }
        Command::Double { group: factors, emb_out } => {
            let (p, emb) = drinfeld_double_abelian(&group(&factors)?);
            write_aux(&emb_out, &serialize_embedding(&emb, &p))?;
            Ok(category_outcome(&p))
        }
        Command::Rep { group: factors, emb_out } => {
            let (p, emb) = rep_abelian(&group(&factors)?);
            write_aux(&emb_out, &serialize_embedding(&emb, &p))?;
            Ok(category_outcome(&p))
        }
        Command::Equiv { a, b, emb } => {
            let (a, b) = (load::category(&a)?, load::category(&b)?);
            let sigma = match emb.len() {
                0 => find_equivalence(&a, &b, None)?,
                _ => {
                    let embs = load::embeddings(&emb, &[&a, &b])?;
                    find_equivalence(&a, &b, Some((&embs[0], &embs[1])))?
                }
            };
            let verdict = if sigma.is_some() { Verdict::True } else { Verdict::False };
            let text = format!("{} vs {}: sigma {}\n", a.name(), b.name(), report::sigma_text(&a, &b, sigma.as_deref()));
            Ok(Outcome::verdict(verdict, text, json!({ "sigma": report::sigma_json(&a, &b, sigma.as_deref()) })))
        }
        Command::Verify(v) => verify(v),
    }
}

fn verify(v: Verify) -> Result<Outcome, Failure> {
    match v {
        Verify::UnitLaw { file, emb } => {
            let c = load::category(&file)?;
            let embs = load::embeddings(&emb, &[&c])?;
            let rep = verify_unit_law(&c, one(&embs))?;
            let text = format!(
                "{}\nsigma: {}\n",
                report::condensation_text(&rep.product),
                report::sigma_text(&rep.product.result, &c, rep.equivalence.as_deref())
            );
            let json = json!({
                "double": rep.double.name(),
                "product": report::condensation_json(&rep.product),
                "sigma": report::sigma_json(&rep.product.result, &c, rep.equivalence.as_deref()),
            });
            Ok(Outcome::verdict(rep.verdict, text, json))
        }
        Verify::Stacking { a, b, emb } => {
            let (c, d) = (load::category(&a)?, load::category(&b)?);
            let embs = load::embeddings(&emb, &[&c, &d])?;
            let rep = verify_stacking_identity(&c, &d, &embs[0], &embs[1])?;
            let text = format!(
                "left side\n{}\nright side: centralizer in {} (rank {})\nsigma: {}\n",
                report::condensation_text(&rep.lhs),
                rep.product.result.name(),
                rep.rhs.category.rank(),
                report::sigma_text(&rep.lhs.result, &rep.rhs.category, rep.equivalence.as_deref())
            );
            let json = json!({
                "lhs": report::condensation_json(&rep.lhs),
                "product": report::condensation_json(&rep.product),
                "rhs": setcat::io::category_to_json(&rep.rhs.category),
                "rhs_labels": rep.rhs.labels.iter().map(|&i| rep.product.result.label(i)).collect::<Vec<_>>(),
                "sigma": report::sigma_json(&rep.lhs.result, &rep.rhs.category, rep.equivalence.as_deref()),
            });
            Ok(Outcome::verdict(rep.verdict, text, json))
        }
        Verify::Nondegeneracy { a, b, emb } => {
            let (c, d) = (load::category(&a)?, load::category(&b)?);
            let embs = load::embeddings(&emb, &[&c, &d])?;
            for p in [&c, &d] {
                if !p.is_nondegenerate()? {
                    return Err(Failure::Input(format!("{} is degenerate; the check needs nondegenerate inputs", p.name())));
                }
            }
            let out = relative_tensor_product(&c, &d, &embs[0], &embs[1])?;
            let nondegenerate = out.result.is_nondegenerate()?;
            let alternatives = out.alternatives.iter().map(|p| p.is_nondegenerate()).collect::<Result<Vec<_>, _>>()?;
            let verdict = if nondegenerate && alternatives.iter().all(|&b| b) { Verdict::True } else { Verdict::False };
            let text = format!("{}nondegenerate: {nondegenerate}\n", report::condensation_text(&out));
            let json = json!({ "product": report::condensation_json(&out), "nondegenerate": nondegenerate });
            Ok(Outcome::verdict(verdict, text, json))
        }
        Verify::Centralizer { file, emb } => {
            let c = load::category(&file)?;
            let embs = load::embeddings(&emb, &[&c])?;
            let emb = one(&embs);
            let cent = relative_centralizer(&c, emb)?;
            let (vec, _) = rep_abelian(&AbelianGroup::trivial());
            let to_vec = SymmetryEmbedding::new(emb.group().clone(), vec.name(), vec![0; emb.group().order()])
                .map_err(|e| Failure::Input(e.to_string()))?;
            let deconfined = (0..c.rank())
                .map(|x| is_deconfined(&c, &vec, emb, &to_vec, x, 0).map(|d| (x, d)))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .filter_map(|(x, d)| d.then_some(x))
                .collect::<Vec<_>>();
            let verdict = if deconfined == cent.labels { Verdict::True } else { Verdict::False };
            let names = |v: &[usize]| v.iter().map(|&i| c.label(i).to_string()).collect::<Vec<_>>();
            let text = format!("centralizer  {{{}}}\ndeconfined   {{{}}}\n", names(&cent.labels).join(", "), names(&deconfined).join(", "));
            let json = json!({ "centralizer": names(&cent.labels), "deconfined": names(&deconfined) });
            Ok(Outcome::verdict(verdict, text, json))
        }
        Verify::PointedOracle { seed, cases, max_order } => pointed_oracle(seed, cases, max_order),
    }
}

fn pointed_oracle(seed: u64, cases: usize, max_order: u64) -> Result<Outcome, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    let mut json_cases = Vec::new();
    let mut all = true;
    for case in 0..cases {
        let m = if case % 2 == 0 { random_nondegenerate(&mut rng, max_order) } else { random_metric_group(&mut rng, max_order) };
        let gens = random_isotropic(&mut rng, &m);
        let h = m.subgroup(&gens).map_err(|e| Failure::Input(e.to_string()))?;
        let input = m.to_premodular(format!("case{case}"));
        let oracle = m.condense(&gens).map_err(|e| Failure::Input(e.to_string()))?.to_premodular("oracle");
        let out = condense_by_invertible_bosons(&input, &h)?;
        let agree = find_equivalence(&out.result, &oracle, None)?.is_some();
        all &= agree;
        let factors = format!("{:?}", m.group().factors());
        rows.push(vec![case.to_string(), factors.clone(), h.len().to_string(), out.result.rank().to_string(), agree.to_string()]);
        json_cases.push(json!({ "factors": m.group().factors(), "h": h.len(), "rank": out.result.rank(), "agree": agree }));
    }
    let text = report::table(&["case", "factors", "|H|", "rank", "agree"], &rows);
    let verdict = if all { Verdict::True } else { Verdict::False };
    Ok(Outcome::verdict(verdict, text, json!({ "seed": seed, "max_order": max_order, "cases": json_cases })))
}

fn configure_threads() {
    let n = std::env::var("SETCAT_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()).unwrap_or(0);
    if n > 0 {
        // A second initialization only happens in tests; ignoring it keeps the default pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn emit(cli_format: Format, out: &Option<PathBuf>, outcome: &Outcome) -> Result<(), Failure> {
    let body = match cli_format {
        Format::Text => outcome.text.clone(),
        Format::Json => to_pretty(&outcome.json) + "\n",
    };
    match out {
        Some(path) => std::fs::write(path, body).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    panic::set_hook(Box::new(|info| eprintln!("fault [internal-invariant]: {info}")));
    let (format, out) = (cli.format, cli.out.clone());
    let result = panic::catch_unwind(AssertUnwindSafe(|| run(cli.command).and_then(|o| emit(format, &out, &o).map(|_| o.code))));
    match result {
        Ok(Ok(code)) => ExitCode::from(code),
        Ok(Err(Failure::Input(msg))) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(Err(Failure::Fault { invariant, msg })) => {
            eprintln!("fault [{invariant}]: {msg}");
            ExitCode::from(3)
        }
        Err(_) => ExitCode::from(3),
    }
}
