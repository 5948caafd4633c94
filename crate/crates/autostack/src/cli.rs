//! The `autostack` command line.
//!
//! Exit codes: 0 on success, 1 when verification fails or a computation
//! errors out (for instance an exhausted recursion budget), 2 for unusable
//! input (bad flags, unreadable files, unknown letters).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use autostack_core::stacking::{StackingStructure, VerifyReport};
use autostack_core::words::{Letter, Word};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::fsa_file::{letter_symbols, padded_symbols, to_dot, FsaDoc};
use crate::recipe::Recipe;
use crate::structure_file::{self, write_json, StructureDoc};
use crate::Error;

#[derive(Parser, Debug)]
#[command(name = "autostack", version, about = "Autostackable group structures: normalize, verify, construct")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal form of a word.
    Normalize {
        /// `builtin:<name>` or a structure file.
        structure: String,
        /// Space-separated letter names; "" or "ε" for the empty word.
        word: String,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Check the flow-function axioms on a ball; exit 1 on any failure.
    Verify {
        structure: String,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        /// Also compare with the structure's oracle on every word up to this length.
        #[arg(long)]
        max_len: Option<usize>,
        /// Also compare with the oracle on random words drawn with this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random words for `--seed`.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Maximum length of random words for `--seed`.
        #[arg(long, default_value_t = 12)]
        sample_len: usize,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// List the normal forms of all elements within a radius.
    Ball {
        structure: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// List the prefix-rewriting rules `y a -> y φ(y, a)` for non-tree edges in a ball.
    Rules {
        structure: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Build a graph product from a recipe and write the structure file.
    Product {
        recipe: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build an extension from a recipe and write the structure file.
    Extend {
        recipe: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a finite-index supergroup from a recipe and write the structure file.
    Index {
        recipe: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write a structure as a structure file (e.g. to materialize a builtin).
    Export {
        structure: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the normal-form acceptor of a structure.
    ExportFsa {
        structure: String,
        #[arg(long, value_enum, default_value_t = FsaFormat::Json)]
        format: FsaFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Write the acceptor of the graph of the stacking map over the padded 3-tuple alphabet.
    GraphAutomaton {
        structure: String,
        #[arg(long, value_enum, default_value_t = FsaFormat::Json)]
        format: FsaFormat,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FsaFormat {
    Json,
    Dot,
}

enum Failure {
    /// Unusable input; exit 2.
    Input(String),
    /// Verification found counterexamples; exit 1.
    Verification,
    /// A computation failed on valid input; exit 1.
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn runtime(e: autostack_core::Error) -> Failure {
    Failure::Runtime(e.to_string())
}

type Outcome = Result<(), Failure>;

/// Run the tool on `args` (including the program name) and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Failure::Verification) => 1,
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn load(reference: &str, budget: Option<usize>) -> Result<StackingStructure, Failure> {
    let s = structure_file::load(reference)?;
    Ok(match budget {
        Some(b) => s.with_budget(b),
        None => s,
    })
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes()).map_err(|e| Failure::Runtime(format!("cannot write output: {e}")))
}

fn emit_to(path: Option<&Path>, out: &mut dyn Write, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| Failure::from(Error::Io { path: p.to_path_buf(), source })),
        None => emit(out, text),
    }
}

fn show(s: &StackingStructure, w: &[Letter]) -> String {
    s.alphabet().format(w)
}

fn execute(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Normalize { structure, word, budget, json } => {
            let s = load(&structure, budget)?;
            let w = s.alphabet().parse(&word).map_err(|e| Failure::Input(e.to_string()))?;
            let nf = s.normalize(&w).map_err(runtime)?;
            if json {
                let v = json!({"structure": s.name(), "input": show(&s, &w), "normal_form": show(&s, &nf)});
                emit(out, &format!("{v}\n"))
            } else {
                emit(out, &format!("{}\n", show(&s, &nf)))
            }
        }
        Command::Verify { structure, radius, max_len, seed, samples, sample_len, budget, json } => {
            let s = load(&structure, budget)?;
            let report = s.verify(radius);
            let mut cross = Vec::new();
            if let Some(len) = max_len {
                cross.push(cross_check(&s, "exhaustive", all_words(&s, len))?);
            }
            if let Some(seed) = seed {
                cross.push(cross_check(&s, "random", random_words(&s, seed, samples, sample_len))?);
            }
            let passed = report.passed() && cross.iter().all(|c| c.mismatches.is_empty());
            if json {
                let mut v = report_json(&report);
                v["oracle_cross_checks"] = cross.iter().map(|c| c.to_json(&s)).collect();
                v["passed"] = Value::Bool(passed);
                emit(out, &format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))?;
            } else {
                let mut text = report.to_string();
                text.push('\n');
                for c in &cross {
                    text.push_str(&c.describe(&s));
                }
                if !cross.is_empty() {
                    text.push_str(&format!("verdict: {}\n", if passed { "PASS" } else { "FAIL" }));
                }
                emit(out, &text)?;
            }
            if passed {
                Ok(())
            } else {
                Err(Failure::Verification)
            }
        }
        Command::Ball { structure, radius, budget, json } => {
            let s = load(&structure, budget)?;
            let ball = s.ball(radius).map_err(runtime)?;
            if json {
                let words: Vec<String> = ball.iter().map(|y| show(&s, y)).collect();
                emit(out, &format!("{}\n", json!(words)))
            } else {
                let text: String = ball.iter().map(|y| format!("{}\n", s.alphabet().display(y))).collect();
                emit(out, &text)
            }
        }
        Command::Rules { structure, radius, budget, json } => {
            let s = load(&structure, budget)?;
            let rules = s.to_prefix_rules(radius).map_err(runtime)?;
            if json {
                let v: Vec<Value> = rules
                    .iter()
                    .map(|r| {
                        json!({
                            "prefix": show(&s, &r.prefix),
                            "left": show(&s, &r.left),
                            "right": show(&s, &r.right),
                            "reduced": show(&s, &r.reduced_rhs(s.alphabet())),
                        })
                    })
                    .collect();
                emit(out, &format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
            } else {
                let a = s.alphabet();
                let text: String = rules
                    .iter()
                    .map(|r| format!("{} -> {}\n", a.display(&r.lhs()), a.display(&r.reduced_rhs(a))))
                    .collect();
                emit(out, &text)
            }
        }
        Command::Product { recipe, output } => construct(&recipe, "graph_product", output.as_deref(), out),
        Command::Extend { recipe, output } => construct(&recipe, "extension", output.as_deref(), out),
        Command::Index { recipe, output } => construct(&recipe, "finite_index", output.as_deref(), out),
        Command::Export { structure, output } => {
            let s = load(&structure, None)?;
            let doc = StructureDoc::from_structure(&s)?;
            emit_to(output.as_deref(), out, &write_json(&doc))
        }
        Command::ExportFsa { structure, format, output } => {
            let s = load(&structure, None)?;
            let symbols = letter_symbols(s.alphabet());
            let text = match format {
                FsaFormat::Json => write_json(&FsaDoc::from_fsa(s.normal_forms(), &symbols)),
                FsaFormat::Dot => to_dot(s.normal_forms(), &symbols, s.name()),
            };
            emit_to(output.as_deref(), out, &text)
        }
        Command::GraphAutomaton { structure, format, output } => {
            let s = load(&structure, None)?;
            let g = s.graph_automaton().map_err(|e| Failure::Input(e.to_string()))?;
            let symbols = padded_symbols(s.alphabet(), g.alphabet());
            let text = match format {
                FsaFormat::Json => write_json(&FsaDoc::from_fsa(g.fsa(), &symbols)),
                FsaFormat::Dot => to_dot(g.fsa(), &symbols, &format!("graph of {}", s.name())),
            };
            emit_to(output.as_deref(), out, &text)
        }
    }
}

fn construct(path: &Path, kind: &str, output: Option<&Path>, out: &mut dyn Write) -> Outcome {
    let recipe = Recipe::load(path)?;
    if recipe.kind() != kind {
        return Err(Failure::Input(format!("expected a `{kind}` recipe, found `{}`", recipe.kind())));
    }
    let s = recipe.build(path.parent().unwrap_or(Path::new(".")))?;
    let doc = StructureDoc::from_structure(&s)?;
    emit_to(output, out, &write_json(&doc))
}

fn report_json(r: &VerifyReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            json!({
                "check": c.check.key(),
                "label": c.check.label(),
                "passed": c.passed,
                "examined": c.examined,
                "failures": c.failures,
                "witnesses": c.witnesses,
                "note": c.note,
            })
        })
        .collect();
    json!({
        "structure": r.structure,
        "radius": r.radius,
        "ball_size": r.ball_size,
        "edges": r.edges,
        "max_flow_length": r.max_flow_length,
        "declared_bound": r.declared_bound,
        "passed": r.passed(),
        "checks": checks,
    })
}

struct CrossCheck {
    kind: &'static str,
    words: usize,
    oracle: String,
    /// `(word, normalize result or error, oracle result)`.
    mismatches: Vec<(Word, String, Word)>,
}

impl CrossCheck {
    fn describe(&self, s: &StackingStructure) -> String {
        let status = if self.mismatches.is_empty() { "PASS" } else { "FAIL" };
        let mut text = format!(
            "[{status}] {} oracle cross-check against {} ({} words, {} mismatches)\n",
            self.kind,
            self.oracle,
            self.words,
            self.mismatches.len()
        );
        for (w, got, want) in self.mismatches.iter().take(8) {
            text.push_str(&format!(
                "    witness: {} -> {} but oracle gives {}\n",
                s.alphabet().display(w),
                got,
                s.alphabet().display(want)
            ));
        }
        text
    }

    fn to_json(&self, s: &StackingStructure) -> Value {
        let mismatches: Vec<Value> = self
            .mismatches
            .iter()
            .map(|(w, got, want)| json!({"word": show(s, w), "normalize": got, "oracle": show(s, want)}))
            .collect();
        json!({"kind": self.kind, "oracle": self.oracle, "words": self.words, "mismatches": mismatches})
    }
}

fn cross_check(s: &StackingStructure, kind: &'static str, words: Vec<Word>) -> Result<CrossCheck, Failure> {
    let oracle =
        s.oracle().ok_or_else(|| Failure::Input(format!("`{}` has no oracle to cross-check against", s.name())))?;
    let mut mismatches = Vec::new();
    for w in &words {
        let want = (oracle.normalize)(w);
        match s.normalize(w) {
            Ok(nf) if nf == want => {}
            Ok(nf) => mismatches.push((w.clone(), s.alphabet().display(&nf), want)),
            Err(e) => mismatches.push((w.clone(), format!("error: {e}"), want)),
        }
    }
    Ok(CrossCheck { kind, words: words.len(), oracle: oracle.name.clone(), mismatches })
}

/// Every word of length at most `n`, shortlex.
pub fn all_words(s: &StackingStructure, n: usize) -> Vec<Word> {
    let letters: Vec<Letter> = s.alphabet().letters().collect();
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..n {
        layer = layer.iter().flat_map(|w| letters.iter().map(move |&x| w.with(x))).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// `count` words with lengths uniform in `0..=max_len` and letters uniform.
pub fn random_words(s: &StackingStructure, seed: u64, count: usize, max_len: usize) -> Vec<Word> {
    let k = s.alphabet().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if k == 0 {
        return vec![Word::empty(); count];
    }
    (0..count)
        .map(|_| {
            let len = rng.random_range(0..=max_len);
            (0..len).map(|_| Letter(rng.random_range(0..k) as u32)).collect()
        })
        .collect()
}
