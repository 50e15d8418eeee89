//! `klr`: command-line front end for klr-core.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde_json::{json, Value};

use klr_core::checks::{random_word_suite, relation_suite};
use klr_core::grothendieck::{
    char_projective, comultiply, orthogonal_idempotents_check, pair_monomials, pair_recursive, serre_check,
    shuffle_product, tight, CharacterVector,
};
use klr_core::linalg::Field;
use klr_core::quotients::{cyclotomic_spec, quotient_gdim, sym_plus_spec};
use klr_core::{
    CartanGraph, DividedSequence, GeneratorWord, GradedDim, KlrAlgebra, KlrElement, KlrError, Orientation,
    Sequence, Weight,
};

#[derive(Parser, Debug)]
#[command(name = "klr", version, about = "Exact computations in quiver Hecke algebras")]
struct Cli {
    /// Graph JSON file. A missing file named like a1/a2/a1xa1/a2xa1/cycleN(.json)
    /// falls back to the built-in graph of that name.
    #[arg(short, long, global = true, value_name = "PATH")]
    graph: Option<PathBuf>,

    /// Orientation for the polynomial representation: a JSON file of arrows,
    /// `default` or `reversed`.
    #[arg(long, global = true, value_name = "PATH|default|reversed")]
    orientation: Option<String>,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Also print the power series expansion up to q^N.
    #[arg(long, global = true, value_name = "N")]
    expand: Option<i64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiply elements given as generator words or element text, first factor on top.
    Multiply {
        /// `"<seq>: <tokens>"`, tokens Dk / Ck applied bottom to top.
        #[arg(long)]
        word: Vec<String>,
        /// Element in normal-form text, or `@file.json` for a JSON element.
        #[arg(long, allow_hyphen_values = true)]
        element: Vec<String>,
    },
    /// Graded dimension of 1_j R 1_i.
    Gdim { j: String, i: String },
    /// The bilinear form on two monomials, e.g. "i^(2) j".
    Pair {
        theta: String,
        theta2: String,
        /// Use the coproduct recursion instead of the character formula.
        #[arg(long)]
        recursive: bool,
    },
    /// Character of the projective attached to a monomial.
    Char { theta: String },
    /// Quantum shuffle product of two words, as characters.
    Shuffle { a: String, b: String },
    /// Twisted coproduct of a monomial.
    Comul { theta: String },
    /// Tightness test for a monomial.
    Tight {
        theta: String,
        #[arg(long, default_value_t = 20)]
        cutoff: i64,
    },
    /// Run a check suite: relations, serre, idempotents, cycle:<n>, oracle.
    Check {
        suite: String,
        /// Random words for the oracle suite.
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Graded dimension of a quotient of R(nu).
    Quotient {
        /// Weight, e.g. "i:1,j:1".
        #[arg(long)]
        nu: String,
        /// Cyclotomic quotient for the dominant weight lambda, e.g. "i:3".
        #[arg(long, conflicts_with = "symplus", required_unless_present = "symplus")]
        cyclotomic: Option<String>,
        /// Quotient by the positive-degree symmetric polynomials.
        #[arg(long)]
        symplus: bool,
        #[arg(long, default_value_t = 12)]
        cutoff: i64,
        #[arg(long, default_value_t = 3)]
        window: i64,
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

/// Usage and parse problems exit with 2, failed computations and checks with 1.
enum Failure {
    Usage(anyhow::Error),
    Compute(anyhow::Error),
    Check,
}

impl From<KlrError> for Failure {
    fn from(e: KlrError) -> Self {
        match e {
            KlrError::Divisibility(_) | KlrError::ZeroElement | KlrError::MalformedPairing(_) => {
                Failure::Compute(e.into())
            }
            _ => Failure::Usage(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast::<KlrError>() {
            Ok(k) => k.into(),
            Err(e) => Failure::Usage(e),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(&cli, &matches) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_graph(path: Option<&Path>) -> anyhow::Result<CartanGraph> {
    let path = path.ok_or_else(|| anyhow!("a graph is required (-g/--graph)"))?;
    if path.exists() {
        return CartanGraph::load(path).with_context(|| format!("reading {}", path.display()));
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
    let builtin = match stem {
        "a1" => Some(CartanGraph::a1()),
        "a2" => Some(CartanGraph::a2()),
        "a1xa1" => Some(CartanGraph::a1xa1()),
        "a2xa1" => Some(CartanGraph::a2xa1()),
        s => match s.strip_prefix("cycle").and_then(|n| n.parse().ok()) {
            Some(n) => Some(CartanGraph::cycle(n)?),
            None => None,
        },
    };
    builtin.ok_or_else(|| anyhow!("graph file {} not found", path.display()))
}

fn load_orientation(graph: &CartanGraph, spec: Option<&str>) -> anyhow::Result<Orientation> {
    Ok(match spec {
        None | Some("default") => Orientation::default_for(graph),
        Some("reversed") => Orientation::default_for(graph).reversed(),
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            Orientation::from_json(graph, &text)?
        }
    })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json serializes"));
}

fn run(cli: &Cli, matches: &ArgMatches) -> Outcome {
    let graph = load_graph(cli.graph.as_deref())?;
    match &cli.command {
        Command::Multiply { .. } => multiply(cli, graph, matches.subcommand_matches("multiply").expect("subcommand")),
        Command::Gdim { j, i } => {
            let (j, i) = (Sequence::parse(&graph, j)?, Sequence::parse(&graph, i)?);
            let d = klr_core::algebra::gdim_hom(&graph, &j, &i)?;
            print_gdim(cli, &d);
            Ok(())
        }
        Command::Pair { theta, theta2, recursive } => {
            let (a, b) = (DividedSequence::parse(&graph, theta)?, DividedSequence::parse(&graph, theta2)?);
            let d = if *recursive { pair_recursive(&graph, &a, &b)? } else { pair_monomials(&graph, &a, &b)? };
            print_gdim(cli, &d);
            Ok(())
        }
        Command::Char { theta } => {
            let ch = char_projective(&graph, &DividedSequence::parse(&graph, theta)?)?;
            print_character(cli, &graph, &ch);
            Ok(())
        }
        Command::Shuffle { a, b } => {
            let a = CharacterVector::delta(&graph, &Sequence::parse(&graph, a)?);
            let b = CharacterVector::delta(&graph, &Sequence::parse(&graph, b)?);
            print_character(cli, &graph, &shuffle_product(&graph, &a, &b));
            Ok(())
        }
        Command::Comul { theta } => {
            let terms = comultiply(&graph, &DividedSequence::parse(&graph, theta)?);
            if cli.json {
                print_json(&terms.to_json(&graph));
            } else {
                println!("{}", terms.display(&graph));
            }
            Ok(())
        }
        Command::Tight { theta, cutoff } => {
            if *cutoff < 1 {
                return Err(Failure::Usage(anyhow!("cutoff must be at least 1")));
            }
            let verdict = tight(&graph, &DividedSequence::parse(&graph, theta)?, *cutoff)?;
            if cli.json {
                print_json(&json!({ "tight": verdict.is_tight(), "verdict": verdict.to_string() }));
            } else {
                println!("{verdict}");
            }
            Ok(())
        }
        Command::Check { suite, count, seed } => check(cli, graph, suite, *count, *seed),
        Command::Quotient { nu, cyclotomic, symplus, cutoff, window, field } => {
            if cutoff < window {
                return Err(Failure::Usage(anyhow!("cutoff ({cutoff}) must be at least the window ({window})")));
            }
            let field = Field::parse(field)?;
            let nu = Weight::parse(&graph, nu)?;
            let spec = match (cyclotomic, symplus) {
                (Some(lambda), false) => cyclotomic_spec(&graph, &nu, &Weight::parse(&graph, lambda)?)?,
                _ => sym_plus_spec(&graph, &nu)?,
            };
            let alg = KlrAlgebra::new(graph);
            let report = quotient_gdim(&alg, &spec, *cutoff, *window, field)?;
            if cli.json {
                print_json(&report.to_json());
            } else {
                println!("{}", report.display());
            }
            Ok(())
        }
    }
}

fn print_gdim(cli: &Cli, d: &GradedDim) {
    let series = cli.expand.map(|n| d.series_expand(n));
    if cli.json {
        let mut v = json!({ "text": d.to_string(), "value": d });
        if let Some(s) = &series {
            v["series"] = Value::from(s.to_string());
        }
        print_json(&v);
    } else {
        println!("{d}");
        if let (Some(s), Some(n)) = (series, cli.expand) {
            println!("{s} + O(q^{})", n + 1);
        }
    }
}

fn print_character(cli: &Cli, graph: &CartanGraph, ch: &CharacterVector) {
    if cli.json {
        print_json(&ch.to_json(graph));
    } else {
        println!("{}", ch.display(graph));
    }
}

/// Factors in command-line order, whichever flag introduced them.
fn multiply(cli: &Cli, graph: CartanGraph, m: &ArgMatches) -> Outcome {
    let alg = KlrAlgebra::new(graph);
    let mut factors: Vec<(usize, KlrElement)> = Vec::new();
    if let (Some(words), Some(idx)) = (m.get_many::<String>("word"), m.indices_of("word")) {
        for (w, i) in words.zip(idx) {
            factors.push((i, alg.evaluate_word(&GeneratorWord::parse(alg.graph(), w)?)?));
        }
    }
    if let (Some(elements), Some(idx)) = (m.get_many::<String>("element"), m.indices_of("element")) {
        for (e, i) in elements.zip(idx) {
            let x = match e.strip_prefix('@') {
                Some(path) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
                    let value: Value = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
                    KlrElement::from_json(alg.graph(), None, &value)?
                }
                None => alg.parse_element(e)?,
            };
            factors.push((i, x));
        }
    }
    if factors.is_empty() {
        return Err(Failure::Usage(anyhow!("nothing to multiply: give --word or --element")));
    }
    factors.sort_by_key(|(i, _)| *i);
    let refs: Vec<&KlrElement> = factors.iter().map(|(_, x)| x).collect();
    let product = alg.multiply_all(&refs)?;
    if cli.json {
        print_json(&product.to_json(alg.graph()));
    } else {
        println!("{}", product.display(alg.graph()));
    }
    Ok(())
}

struct Line {
    name: String,
    pass: bool,
    detail: Option<String>,
}

fn check(cli: &Cli, graph: CartanGraph, suite: &str, count: usize, seed: u64) -> Outcome {
    let orientation = load_orientation(&graph, cli.orientation.as_deref())?;
    let alg = KlrAlgebra::new(graph);
    let g = alg.graph();
    let pairs = || g.vertices().flat_map(|i| g.vertices().map(move |j| (i, j))).filter(|(i, j)| i != j);
    let mut lines = Vec::new();
    match suite {
        "relations" => {
            for c in relation_suite(&alg, 3)? {
                let detail = (!c.passed()).then(|| {
                    format!(
                        "lhs = {}, rhs = {} (normal form {}, polynomial action {})",
                        c.lhs.display(g),
                        c.rhs.display(g),
                        if c.normal_form_ok { "agrees" } else { "differs" },
                        if c.oracle_ok { "agrees" } else { "differs" }
                    )
                });
                let pass = c.passed();
                lines.push(Line { name: c.name, pass, detail });
            }
        }
        "serre" => {
            for (i, j) in pairs() {
                let pass = serre_check(g, i, j)?;
                lines.push(Line { name: format!("serre {} {}", g.name(i), g.name(j)), pass, detail: None });
            }
        }
        "idempotents" => {
            for (i, j) in pairs().filter(|&(i, j)| g.cartan(i, j) == -1) {
                let r = orthogonal_idempotents_check(&alg, i, j)?;
                let detail = (!r.all()).then(|| format!("{r:?}"));
                let word = format!("{}{}{}", g.name(i), g.name(j), g.name(i));
                lines.push(Line { name: format!("idempotents on {word}"), pass: r.all(), detail });
            }
        }
        "oracle" => {
            let report = random_word_suite(&alg, &orientation, count, seed, 3)?;
            let detail = report.failures.first().map(|f| {
                format!(
                    "word {} on monomial {:?}{}",
                    word_text(g, &f.word),
                    f.monomial,
                    if f.reversed_orientation { " (reversed orientation)" } else { "" }
                )
            });
            lines.push(Line {
                name: format!("oracle: {} words, {} evaluations", report.words, report.evaluations),
                pass: report.failures.is_empty(),
                detail,
            });
        }
        s => {
            let n: usize = s
                .strip_prefix("cycle:")
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| anyhow!("unknown suite `{s}`: expected relations, serre, idempotents, cycle:<n> or oracle"))?;
            let (alpha, square) = klr_core::grothendieck::cycle_alpha(&alg, n)?;
            let (name, expected) = if n % 2 == 1 {
                ("alpha^2 = 0", KlrElement::zero(alpha.weight().clone()))
            } else {
                ("alpha^2 = -2*alpha", alpha.scale(&(-2).into()))
            };
            let pass = square == expected;
            let detail = (!pass).then(|| format!("alpha^2 = {}", square.display(g)));
            lines.push(Line { name: name.to_string(), pass, detail });
        }
    }
    if lines.is_empty() {
        return Err(Failure::Usage(anyhow!("suite `{suite}` has nothing to check on this graph")));
    }
    let all = lines.iter().all(|l| l.pass);
    if cli.json {
        let checks: Vec<Value> = lines
            .iter()
            .map(|l| json!({ "name": l.name, "pass": l.pass, "counterexample": l.detail }))
            .collect();
        print_json(&json!({ "suite": suite, "passed": all, "checks": checks }));
    } else {
        for l in &lines {
            match &l.detail {
                Some(d) if !l.pass => println!("{} FAIL: {d}", l.name),
                _ => println!("{} {}", l.name, if l.pass { "PASS" } else { "FAIL" }),
            }
        }
    }
    if all {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn word_text(graph: &CartanGraph, w: &GeneratorWord) -> String {
    let tokens: Vec<String> = w
        .tokens
        .iter()
        .map(|t| match t {
            klr_core::Token::Dot(k) => format!("D{k}"),
            klr_core::Token::Cross(k) => format!("C{k}"),
        })
        .collect();
    format!("{}: {}", w.base.display(graph), tokens.join(" "))
}
