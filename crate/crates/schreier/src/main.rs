//! Command-line front end: compute subgroup bases, test membership,
//! rewrite members, fold generator words into coverings, and run the
//! equivariance verification suite.
//!
//! Exit codes are part of the contract: 0 success (and a true `member`
//! verdict), 1 `member` false, 2 parse error, 3 not connected, 4 invariant
//! violation in otherwise well-formed input, 5 not a member (`rewrite`),
//! 6 infinite index (`fold`), 7 a failed `counterexample` check.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use schreier::basis::{rank_formula, rewrite_in_basis, subgroup_basis, BasisError};
use schreier::counterexample::{
    equivariance_violated, fixed_words, parity_covering, subgroup_basis_generating_set,
    verify_explicit_basis, Report,
};
use schreier::covering::{fold_words, Covering, CoveringError};
use schreier::io::{
    parse_graph_text, BasisDoc, CheckDoc, CoveringDoc, DocError, GraphDoc, InfiniteIndexDoc,
    MemberDoc, Pi1Doc, RankDoc, ReportDoc, RewriteDoc,
};
use schreier::word::{Alphabet, Word};

const EXIT_MEMBER_FALSE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_NOT_CONNECTED: u8 = 3;
const EXIT_INVALID: u8 = 4;
const EXIT_NOT_MEMBER: u8 = 5;
const EXIT_INFINITE_INDEX: u8 = 6;
const EXIT_CHECK_FAILED: u8 = 7;

#[derive(Parser)]
#[command(name = "schreier", version, about = "Free bases of finite-index subgroups of free groups")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the free basis of the subgroup a covering presents.
    Basis {
        /// Covering JSON file, or - for stdin.
        covering: String,
    },
    /// Test whether a word lies in the subgroup (exit 0 yes, 1 no).
    Member {
        covering: String,
        word: String,
    },
    /// Rewrite a member word over the computed basis.
    Rewrite {
        covering: String,
        word: String,
    },
    /// Evaluate the index formula m(n-1)+1.
    Rank {
        n: usize,
        m: usize,
    },
    /// Fold generator words into the covering of the subgroup they generate.
    Fold {
        /// Comma-separated generator names, e.g. a,b.
        #[arg(long, conflicts_with = "rank")]
        alphabet: Option<String>,
        /// Rank with default names g0..g{n-1}.
        #[arg(long)]
        rank: Option<usize>,
        /// Generator words in apostrophe syntax.
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Rank and loop edges of the fundamental group of a graph.
    Pi1 {
        /// Graph file (JSON or text format), or - for stdin.
        graph: String,
    },
    /// Verify the equivariance counterexample end to end.
    Counterexample,
}

/// Failures carry the exit code they map to.
struct CmdError {
    code: u8,
    message: String,
}

impl CmdError {
    fn new(code: u8, message: impl Into<String>) -> CmdError {
        CmdError { code, message: message.into() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CmdError> {
    match &cli.command {
        Command::Basis { covering } => cmd_basis(cli.format, covering),
        Command::Member { covering, word } => cmd_member(cli.format, covering, word),
        Command::Rewrite { covering, word } => cmd_rewrite(cli.format, covering, word),
        Command::Rank { n, m } => cmd_rank(cli.format, *n, *m),
        Command::Fold { alphabet, rank, words } => {
            cmd_fold(cli.format, alphabet.as_deref(), *rank, words)
        }
        Command::Pi1 { graph } => cmd_pi1(cli.format, graph),
        Command::Counterexample => cmd_counterexample(cli.format),
    }
}

fn read_input(path: &str) -> Result<String, CmdError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CmdError::new(EXIT_PARSE, format!("reading stdin: {e}")))?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
            .map_err(|e| CmdError::new(EXIT_PARSE, format!("reading {path}: {e}")))
    }
}

fn load_covering(path: &str) -> Result<Covering, CmdError> {
    let text = read_input(path)?;
    let doc: CoveringDoc = serde_json::from_str(&text)
        .map_err(|e| CmdError::new(EXIT_PARSE, format!("covering document: {e}")))?;
    doc.to_covering().map_err(|e| match e {
        DocError::Covering(CoveringError::NotConnected { components }) => {
            CmdError::new(EXIT_NOT_CONNECTED, not_connected_message(&components))
        }
        other => CmdError::new(EXIT_INVALID, format!("covering document: {other}")),
    })
}

fn parse_word_arg(alphabet: &Alphabet, input: &str) -> Result<Word, CmdError> {
    alphabet
        .parse_word(input)
        .map_err(|e| CmdError::new(EXIT_PARSE, format!("word {input:?}: {e}")))
}

fn not_connected_message(components: &[usize]) -> String {
    let labels: Vec<String> = components.iter().map(|c| c.to_string()).collect();
    format!("not connected; component labels: {}", labels.join(" "))
}

fn emit_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("documents serialize"));
}

fn cmd_basis(format: Format, covering_path: &str) -> Result<u8, CmdError> {
    let covering = load_covering(covering_path)?;
    let basis = subgroup_basis(&covering).map_err(|e| match e {
        CoveringError::NotConnected { components } => {
            CmdError::new(EXIT_NOT_CONNECTED, not_connected_message(&components))
        }
        other => CmdError::new(EXIT_INVALID, other.to_string()),
    })?;
    let expected = rank_formula(covering.rank(), covering.fiber_size())
        .map_err(|e| CmdError::new(EXIT_INVALID, e.to_string()))?;
    if basis.rank() != expected {
        return Err(CmdError::new(
            EXIT_INVALID,
            format!("basis rank {} disagrees with m(n-1)+1 = {expected}", basis.rank()),
        ));
    }
    let doc = BasisDoc::from_basis(&basis, &covering);
    match format {
        Format::Structured => emit_json(&doc),
        Format::Human => {
            let n = covering.rank();
            let m = covering.fiber_size();
            println!("rank: {}", doc.rank);
            println!("formula: m(n-1)+1 = {m}({n}-1)+1 = {expected}");
            println!("generators:");
            for (i, g) in doc.generators.iter().enumerate() {
                println!("  s{i} = {g}");
            }
            println!("tree edges:");
            for &(gen, point) in &doc.tree {
                let target = covering.permutation(gen).apply(point);
                println!("  ({}, {point}): {point} -> {target}", covering.alphabet().name(gen));
            }
            println!("vertex words:");
            for (v, w) in doc.vertex_words.iter().enumerate() {
                println!("  {v}: {w}");
            }
        }
    }
    Ok(0)
}

fn cmd_member(format: Format, covering_path: &str, word: &str) -> Result<u8, CmdError> {
    let covering = load_covering(covering_path)?;
    let parsed = parse_word_arg(covering.alphabet(), word)?;
    let member = covering
        .is_member(&parsed)
        .map_err(|e| CmdError::new(EXIT_INVALID, e.to_string()))?;
    match format {
        Format::Structured => emit_json(&MemberDoc { word: word.to_string(), member }),
        Format::Human => println!("{member}"),
    }
    Ok(if member { 0 } else { EXIT_MEMBER_FALSE })
}

fn cmd_rewrite(format: Format, covering_path: &str, word: &str) -> Result<u8, CmdError> {
    let covering = load_covering(covering_path)?;
    let parsed = parse_word_arg(covering.alphabet(), word)?;
    let basis = subgroup_basis(&covering).map_err(|e| match e {
        CoveringError::NotConnected { components } => {
            CmdError::new(EXIT_NOT_CONNECTED, not_connected_message(&components))
        }
        other => CmdError::new(EXIT_INVALID, other.to_string()),
    })?;
    let rewritten = rewrite_in_basis(&basis, &covering, &parsed).map_err(|e| match e {
        BasisError::NotMember { .. } => CmdError::new(EXIT_NOT_MEMBER, e.to_string()),
        other => CmdError::new(EXIT_INVALID, other.to_string()),
    })?;
    let roundtrip = basis
        .eval(&rewritten)
        .map_err(|e| CmdError::new(EXIT_INVALID, e.to_string()))?;
    let doc = RewriteDoc {
        word: covering.alphabet().format_word(&parsed),
        basis_word: basis.derived_alphabet().format_word(&rewritten),
        roundtrip: covering.alphabet().format_word(&roundtrip),
        roundtrip_ok: roundtrip == parsed,
    };
    match format {
        Format::Structured => emit_json(&doc),
        Format::Human => {
            println!("word: {}", doc.word);
            println!("basis word: {}", doc.basis_word);
            println!(
                "roundtrip: {} ({})",
                doc.roundtrip,
                if doc.roundtrip_ok { "ok" } else { "MISMATCH" }
            );
        }
    }
    if doc.roundtrip_ok {
        Ok(0)
    } else {
        Err(CmdError::new(EXIT_INVALID, "rewrite does not evaluate back to the input"))
    }
}

fn cmd_rank(format: Format, n: usize, m: usize) -> Result<u8, CmdError> {
    let rank = rank_formula(n, m).map_err(|e| CmdError::new(EXIT_INVALID, e.to_string()))?;
    match format {
        Format::Structured => emit_json(&RankDoc { n, m, rank }),
        Format::Human => println!("m(n-1)+1 = {m}({n}-1)+1 = {rank}"),
    }
    Ok(0)
}

fn cmd_fold(
    format: Format,
    alphabet: Option<&str>,
    rank: Option<usize>,
    words: &[String],
) -> Result<u8, CmdError> {
    let alphabet = match (alphabet, rank) {
        (Some(names), _) => Alphabet::with_names(names.split(','))
            .map_err(|e| CmdError::new(EXIT_PARSE, e.to_string()))?,
        (None, Some(rank)) => Alphabet::new(rank),
        (None, None) => {
            return Err(CmdError::new(EXIT_PARSE, "fold needs --alphabet NAMES or --rank N"));
        }
    };
    let gens: Vec<Word> = words
        .iter()
        .map(|w| parse_word_arg(&alphabet, w))
        .collect::<Result<_, _>>()?;
    match fold_words(&alphabet, &gens) {
        Ok(covering) => {
            let doc = CoveringDoc::from_covering(&covering);
            match format {
                Format::Structured => emit_json(&doc),
                Format::Human => {
                    println!("rank: {}", doc.rank);
                    println!("names: {}", doc.names.join(" "));
                    println!("fiber: {}", doc.fiber);
                    println!("basepoint: {}", doc.basepoint);
                    for (gen, images) in doc.action.iter().enumerate() {
                        let images: Vec<String> = images.iter().map(|i| i.to_string()).collect();
                        println!("action {}: {}", alphabet.name(gen), images.join(" "));
                    }
                }
            }
            Ok(0)
        }
        Err(CoveringError::InfiniteIndex(folded)) => {
            let doc = InfiniteIndexDoc::from_folded(&folded);
            match format {
                Format::Structured => emit_json(&doc),
                Format::Human => {
                    println!("infinite index: the folded graph is not a covering");
                    println!("vertices: {}", doc.vertices);
                    println!("basepoint: {}", doc.basepoint);
                    for &(src, gen, dst) in &doc.edges {
                        println!("edge {}: {src} -> {dst}", alphabet.name(gen));
                    }
                    for (point, gen, dir) in &doc.missing {
                        println!("missing {dir} {} at {point}", alphabet.name(*gen));
                    }
                }
            }
            Ok(EXIT_INFINITE_INDEX)
        }
        Err(other) => Err(CmdError::new(EXIT_INVALID, other.to_string())),
    }
}

fn load_graph(path: &str) -> Result<GraphDoc, CmdError> {
    let text = read_input(path)?;
    if text.trim_start().starts_with('{') {
        serde_json::from_str(&text)
            .map_err(|e| CmdError::new(EXIT_PARSE, format!("graph document: {e}")))
    } else {
        parse_graph_text(&text)
            .map_err(|e| CmdError::new(EXIT_PARSE, format!("graph text: {e}")))
    }
}

fn cmd_pi1(format: Format, graph_path: &str) -> Result<u8, CmdError> {
    let doc = load_graph(graph_path)?;
    let graph = doc
        .to_graph()
        .map_err(|e| CmdError::new(EXIT_INVALID, e.to_string()))?;
    let components = graph.connected_components();
    if !graph.is_connected() {
        return Err(CmdError::new(EXIT_NOT_CONNECTED, not_connected_message(&components)));
    }
    let rank = graph.euler_rank().expect("connected checked above");
    let tree = graph.spanning_tree(0).expect("connected checked above");
    let non_tree: Vec<usize> =
        (0..graph.num_edges()).filter(|&e| !tree.is_tree_edge(e)).collect();
    debug_assert_eq!(rank, non_tree.len());
    match format {
        Format::Structured => emit_json(&Pi1Doc { rank, non_tree_edges: non_tree }),
        Format::Human => {
            println!("rank: {rank}");
            let loops: Vec<String> = non_tree.iter().map(|e| e.to_string()).collect();
            println!("loop edges: {}", if loops.is_empty() { "none".to_string() } else { loops.join(" ") });
        }
    }
    Ok(0)
}

fn cmd_counterexample(format: Format) -> Result<u8, CmdError> {
    let mut report: Report = verify_explicit_basis();

    let covering = parity_covering();
    let computed = subgroup_basis_generating_set(&covering)
        .map_err(|e| CmdError::new(EXIT_INVALID, e.to_string()))?;
    let check = equivariance_violated(&covering, &computed);
    let (passed, detail) = match check {
        Ok(c) => (
            c.violated,
            format!(
                "the computed basis of {} generators is moved by the swap",
                computed.len()
            ),
        ),
        Err(e) => (false, e.to_string()),
    };
    report.push("equivariance-computed", passed, detail);

    let fixed = fixed_words(8);
    let only_identity = fixed.len() == 1 && fixed[0].is_identity();
    report.push(
        "fixed-words",
        only_identity,
        format!(
            "scan of all reduced words of length <= 8: {} fixed, only the identity",
            fixed.len()
        ),
    );

    let doc = ReportDoc {
        checks: report
            .checks
            .iter()
            .map(|c| CheckDoc { name: c.name.clone(), passed: c.passed, detail: c.detail.clone() })
            .collect(),
        all_passed: report.all_passed(),
    };
    match format {
        Format::Structured => emit_json(&doc),
        Format::Human => {
            for check in &doc.checks {
                println!("{} {}: {}", if check.passed { "PASS" } else { "FAIL" }, check.name, check.detail);
            }
            println!(
                "{}",
                if doc.all_passed { "all checks passed" } else { "some checks FAILED" }
            );
        }
    }
    Ok(if doc.all_passed { 0 } else { EXIT_CHECK_FAILED })
}
