//! The `godel` command line.
//!
//! Exit codes: 0 on success, 1 when the input is well formed but the answer
//! is negative (a proof that does not check, a number that is not a code),
//! 2 on unreadable input, parse errors and arity errors.

use std::ffi::OsString;
use std::io::{Read as _, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::arith::{lnn, lnt, nn_system, pa_system};
use crate::coding::{
    check_prf, code_formula, code_proof, code_term, decode_formula, decode_proof, decode_term, CodingError,
};
use crate::diagonal::{nn_expressed, rosser_sentence, ExpressedSystem};
use crate::fol::{Formula, Language};
use crate::primrec::eval_fast;
use crate::proof::{check_proof, AxiomSystem, NodePath, Proof};
use crate::sexpr::{self, ParseError};
use crate::Nat;

#[derive(Debug, Parser)]
#[command(
    name = "godel",
    version,
    about = "First-order arithmetic kernel: proofs, codes and self-reference"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Term,
    Formula,
    Proof,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that a proof derives a conclusion from the axioms of a system.
    CheckProof {
        #[arg(long)]
        proof: PathBuf,
        #[arg(long)]
        conclusion: PathBuf,
        /// `nn`, `pa`, or a file listing axioms.
        #[arg(long, default_value = "nn")]
        system: String,
    },
    /// Print the code of a term, formula or proof.
    Encode {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Input file, `-` for stdin.
        file: PathBuf,
    },
    /// Print the object a number codes.
    Decode {
        #[arg(long, value_enum)]
        kind: Kind,
        code: Nat,
    },
    /// Evaluate a primitive recursive expression.
    EvalPr {
        file: PathBuf,
        #[arg(long, num_args = 0..)]
        args: Vec<Nat>,
    },
    /// Evaluate checkPrf on a formula code and a proof code.
    CheckPrf {
        #[arg(long)]
        formula_code: Nat,
        #[arg(long)]
        proof_code: Nat,
    },
    /// Build the Rosser sentence of a system.
    BuildRosser {
        /// `nn`, or a file listing the axioms of a finite system.
        #[arg(long, default_value = "nn")]
        system: String,
        /// Where to write the sentence; stdout by default.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        stats: bool,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}:{source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Arity(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Arity(_) => 2,
        }
    }
}

impl From<CodingError> for CliError {
    fn from(e: CodingError) -> Self {
        CliError::Failed(e.to_string())
    }
}

/// Runs the command line on `args` (program name first) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn parsed<T>(path: &Path, f: impl FnOnce(&str) -> Result<T, ParseError>) -> Result<T, CliError> {
    f(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn io_out(r: std::io::Result<()>) -> Result<(), CliError> {
    r.map_err(|source| CliError::Io {
        path: PathBuf::from("<output>"),
        source,
    })
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::CheckProof {
            proof,
            conclusion,
            system,
        } => {
            let (lang, sys) = match system.as_str() {
                "nn" => (lnn(), nn_system()),
                "pa" => (lnt(), pa_system()),
                file => {
                    let path = Path::new(file);
                    let axioms = parsed(path, |s| sexpr::parse_formulas(lnn(), s))?;
                    (lnn(), AxiomSystem::finite(file, axioms))
                }
            };
            let p = parsed(&proof, |s| sexpr::parse_proof(lang, s))?;
            let phi = parsed(&conclusion, |s| sexpr::parse_formula(lang, s))?;
            check_proof_cmd(lang, &sys, &p, &phi, out, err)
        }
        Command::Encode { kind, file } => {
            let lang = lnn();
            let code = match kind {
                Kind::Term => code_term(&parsed(&file, |s| sexpr::parse_term(lang, s))?)?,
                Kind::Formula => code_formula(&parsed(&file, |s| sexpr::parse_formula(lang, s))?)?,
                Kind::Proof => code_proof(&parsed(&file, |s| sexpr::parse_proof(lang, s))?)?,
            };
            io_out(writeln!(out, "{code}"))?;
            Ok(0)
        }
        Command::Decode { kind, code } => {
            let lang = lnn();
            let not_a_code = |_| CliError::Failed("not a code".to_string());
            let text = match kind {
                Kind::Term => sexpr::print_term(lang, &decode_term(lang, &code).map_err(not_a_code)?),
                Kind::Formula => sexpr::print_formula(lang, &decode_formula(lang, &code).map_err(not_a_code)?),
                Kind::Proof => sexpr::print_proof(lang, &decode_proof(lang, &code).map_err(not_a_code)?),
            };
            io_out(writeln!(out, "{text}"))?;
            Ok(0)
        }
        Command::EvalPr { file, args } => {
            let e = parsed(&file, sexpr::parse_primrec)?;
            if e.arity() != args.len() {
                return Err(CliError::Failed(format!(
                    "expression takes {} arguments, got {}",
                    e.arity(),
                    args.len()
                )));
            }
            let v = eval_fast(&e, &args).map_err(|e| CliError::Failed(e.to_string()))?;
            io_out(writeln!(out, "{v}"))?;
            Ok(0)
        }
        Command::CheckPrf {
            formula_code,
            proof_code,
        } => {
            io_out(writeln!(out, "{}", check_prf(lnn(), &formula_code, &proof_code)))?;
            Ok(0)
        }
        Command::BuildRosser {
            system,
            out: out_path,
            stats,
        } => {
            let sys = match system.as_str() {
                "nn" => nn_expressed(),
                file => {
                    let axioms = parsed(Path::new(file), |s| sexpr::parse_formulas(lnn(), s))?;
                    ExpressedSystem::finite(file, axioms)
                }
            };
            let report = rosser_sentence(&sys);
            report
                .sentence
                .check_language(lnn())
                .map_err(|e| CliError::Arity(e.to_string()))?;
            let mut text = sexpr::print_formula(lnn(), &report.sentence);
            text.push('\n');
            let mut block = String::new();
            if stats {
                let fv: Vec<String> = report.sentence.free_vars().iter().map(|v| format!("x{v}")).collect();
                block.push_str(&format!("nodes: {}\n", report.node_count));
                block.push_str(&format!("free variables: {{{}}}\n", fv.join(", ")));
                block.push_str(&format!("bytes: {}\n", text.len()));
                for line in &report.log {
                    block.push_str(&format!("; {line}\n"));
                }
            }
            match out_path {
                Some(path) => {
                    std::fs::write(&path, &text).map_err(|source| CliError::Io { path, source })?;
                    io_out(out.write_all(block.as_bytes()))?;
                }
                None => {
                    io_out(out.write_all(text.as_bytes()))?;
                    io_out(err.write_all(block.as_bytes()))?;
                }
            }
            Ok(0)
        }
    }
}

fn check_proof_cmd(
    lang: &Language,
    sys: &AxiomSystem,
    p: &Proof,
    phi: &Formula,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let j = match check_proof(lang, p) {
        Ok(j) => j,
        Err(e) => {
            io_out(writeln!(err, "rejected: {e}"))?;
            return Ok(1);
        }
    };
    if &j.conclusion != phi {
        io_out(writeln!(
            err,
            "rejected: the proof at root concludes {}",
            sexpr::print_formula(lang, &j.conclusion)
        ))?;
        return Ok(1);
    }
    if let Some((path, a)) = foreign_axiom(sys, p, &mut Vec::new()) {
        io_out(writeln!(
            err,
            "rejected: axm at {path}: {} is not an axiom of {}",
            sexpr::print_formula(lang, &a),
            sys.description()
        ))?;
        return Ok(1);
    }
    for a in &j.axioms {
        io_out(writeln!(out, "{}", sexpr::print_formula(lang, a)))?;
    }
    Ok(0)
}

/// The first `axm` leaf, in rule order, whose formula is outside `sys`.
fn foreign_axiom(sys: &AxiomSystem, p: &Proof, path: &mut Vec<u8>) -> Option<(NodePath, Formula)> {
    match p {
        Proof::Axm(a) if !sys.contains(a) => Some((NodePath(path.clone()), a.clone())),
        Proof::Mp(a, b) => {
            for (i, q) in [a, b].into_iter().enumerate() {
                path.push(i as u8);
                let hit = foreign_axiom(sys, q, path);
                path.pop();
                if hit.is_some() {
                    return hit;
                }
            }
            None
        }
        Proof::Gen(_, q) => {
            path.push(0);
            let hit = foreign_axiom(sys, q, path);
            path.pop();
            hit
        }
        _ => None,
    }
}
