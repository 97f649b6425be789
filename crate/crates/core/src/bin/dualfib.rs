//! Command-line front end. Exit status: 0 when every check passes, 1 when a
//! check fails, 2 on unreadable or malformed input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dualfib::dual::{double_dual_iso, DualFib};
use dualfib::indexed::check_dual_agreement;
use dualfib::io::{export_dot, parse, print, Document, DotOptions};
use dualfib::iso::find_isomorphism_over;
use dualfib::{Error, FibSetup};

#[derive(Parser)]
#[command(name = "dualfib", version, about = "Finite fibrations and their duals")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
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
    /// Check category, functor and strict-indexed laws.
    Validate { file: PathBuf },
    /// Decide whether the projection is a fibration.
    CheckFibration { file: PathBuf },
    /// Print the fibre over a base object.
    Fibre {
        file: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Build the dual fibration.
    Dualize {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build X** and check the canonical isomorphism X -> X**.
    DoubleDual { file: PathBuf },
    /// Turn an indexed category into its Grothendieck fibration.
    Grothendieck {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compare the pointwise-opposite Grothendieck construction with the dual fibration.
    DualAgreement { file: PathBuf },
    /// Write Graphviz DOT.
    ExportDot {
        file: PathBuf,
        /// Export the dual fibration instead.
        #[arg(long)]
        dual: bool,
        #[arg(long)]
        skip_identities: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for an isomorphism over the base between two fibrations.
    IsoCheck { left: PathBuf, right: PathBuf },
}

enum Failure {
    Check(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotAFibration { .. } | Error::CheckFailed(_) => Failure::Check(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<(bool, String, Value), Failure>;

fn load(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Total name, base name, projection name and setup of a fibration or indexed document.
fn load_fibration(path: &Path) -> Result<(String, String, String, FibSetup), Failure> {
    match load(path)? {
        Document::Fibration(d) => {
            let names = (d.dom_name.clone(), d.cod_name.clone(), d.name.clone());
            let s = FibSetup::new(d.dom, d.cod, d.functor)?;
            Ok((names.0, names.1, names.2, s))
        }
        Document::Indexed { base_name, indexed } => {
            let g = indexed.grothendieck()?;
            Ok((format!("Groth({base_name})"), base_name, "p".into(), g.fib))
        }
        other => Err(Failure::Input(format!(
            "expected a fibration or indexed document, found {}",
            other.kind()
        ))),
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Validate { file } => {
            let doc = load(file)?;
            let r = doc.validate();
            let ok = r.is_empty();
            let text = if ok {
                format!("{} document is valid", doc.kind())
            } else {
                format!("violations:\n{r}")
            };
            Ok((ok, text, json!({ "kind": doc.kind(), "violations": r.violations })))
        }
        Command::CheckFibration { file } => {
            let (_, _, _, s) = load_fibration(file)?;
            let cartesian = s.cartesian_count();
            match s.check_fibration() {
                Ok(()) => Ok((
                    true,
                    format!(
                        "fibration: yes ({cartesian} of {} arrows cartesian)",
                        s.total().num_arrows()
                    ),
                    json!({ "fibration": true, "cartesian_arrows": cartesian }),
                )),
                Err(m) => Ok((
                    false,
                    format!(
                        "fibration: no; base arrow {} has no cartesian lift into {}",
                        s.base().arrow_name(m.alpha),
                        s.total().object_name(m.object)
                    ),
                    json!({
                        "fibration": false,
                        "alpha": s.base().arrow_name(m.alpha),
                        "object": s.total().object_name(m.object),
                    }),
                )),
            }
        }
        Command::Fibre { file, object } => {
            let (total_name, _, _, s) = load_fibration(file)?;
            let a = s
                .base()
                .object_by_name(object)
                .ok_or_else(|| Failure::Input(format!("unknown base object '{object}'")))?;
            let f = s.fibre(a)?;
            let doc = Document::Category {
                name: format!("{total_name}_{object}"),
                category: f.category,
            };
            Ok((true, print(&doc), json!({ "document": print(&doc) })))
        }
        Command::Dualize { file, output } => {
            let (t, b, p, s) = load_fibration(file)?;
            let d = DualFib::build(&s)?;
            if let Err(m) = d.fib().check_fibration() {
                return Err(Failure::Check(format!("dual is not a fibration at {:?}", m)));
            }
            let doc = Document::from_fibration(&format!("{t}*"), &b, &format!("{p}*"), d.fib());
            let text = print(&doc);
            emit(output, &text)?;
            let summary = format!(
                "dual has {} objects and {} arrows",
                d.fib().total().num_objects(),
                d.fib().total().num_arrows()
            );
            Ok((
                true,
                if output.is_some() { summary } else { String::new() },
                json!({
                    "objects": d.fib().total().num_objects(),
                    "arrows": d.fib().total().num_arrows(),
                }),
            ))
        }
        Command::DoubleDual { file } => {
            let (_, _, _, s) = load_fibration(file)?;
            let dd = double_dual_iso(&s)?;
            let (n1, n2) = (dd.dual.fib().total().num_arrows(), dd.double.fib().total().num_arrows());
            Ok((
                true,
                format!(
                    "X has {} arrows, X* has {n1}, X** has {n2}; y: X -> X** is an isomorphism over the base",
                    s.total().num_arrows()
                ),
                json!({ "arrows": s.total().num_arrows(), "dual_arrows": n1, "double_dual_arrows": n2, "iso": true }),
            ))
        }
        Command::Grothendieck { file, output } => {
            let doc = load(file)?;
            let Document::Indexed { base_name, indexed } = doc else {
                return Err(Failure::Input("expected an indexed document".into()));
            };
            let g = indexed.grothendieck()?;
            let out = Document::from_fibration(&format!("Groth({base_name})"), &base_name, "p", &g.fib);
            emit(output, &print(&out))?;
            Ok((true, String::new(), json!({ "arrows": g.fib.total().num_arrows() })))
        }
        Command::DualAgreement { file } => {
            let doc = load(file)?;
            let Document::Indexed { indexed, .. } = doc else {
                return Err(Failure::Input("expected an indexed document".into()));
            };
            let ag = check_dual_agreement(&indexed)?;
            let n = ag.dual.fib().total().num_arrows();
            Ok((
                true,
                format!("Grothendieck construction of the opposite fibres is isomorphic to the dual ({n} arrows)"),
                json!({ "iso": true, "arrows": n }),
            ))
        }
        Command::ExportDot {
            file,
            dual,
            skip_identities,
            output,
        } => {
            let (t, _, _, s) = load_fibration(file)?;
            let (name, target) = if *dual {
                (format!("{t}*"), DualFib::build(&s)?.into_fib())
            } else {
                (t, s)
            };
            let dot = export_dot(
                &target,
                &DotOptions {
                    graph_name: name,
                    skip_identities: *skip_identities,
                },
            );
            emit(output, &dot)?;
            Ok((true, String::new(), json!({ "edges": target.total().num_arrows() })))
        }
        Command::IsoCheck { left, right } => {
            let (_, _, _, a) = load_fibration(left)?;
            let (_, _, _, b) = load_fibration(right)?;
            if a.base() != b.base() {
                return Ok((
                    false,
                    "bases differ".into(),
                    json!({ "iso": false, "reason": "bases differ" }),
                ));
            }
            match find_isomorphism_over(a.total(), a.proj(), b.total(), b.proj()) {
                Some(iso) => {
                    let r = iso.validate_over(a.total(), a.proj(), b.total(), b.proj());
                    let ok = r.is_empty();
                    Ok((
                        ok,
                        if ok {
                            "isomorphic over the base".into()
                        } else {
                            r.to_string()
                        },
                        json!({ "iso": ok }),
                    ))
                }
                None => Ok((false, "no isomorphism over the base".into(), json!({ "iso": false }))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (code, text, value) = match run(&cli.command) {
        Ok((ok, text, value)) => (u8::from(!ok), text, json!({ "ok": ok, "report": value })),
        Err(Failure::Check(m)) => (1, format!("check failed: {m}"), json!({ "ok": false, "error": m })),
        Err(Failure::Input(m)) => (2, format!("input error: {m}"), json!({ "ok": false, "input_error": m })),
    };
    match cli.format {
        Format::Json => println!("{value}"),
        Format::Text if code == 2 => eprintln!("{text}"),
        Format::Text if !text.is_empty() => {
            if text.ends_with('\n') {
                print!("{text}");
            } else {
                println!("{text}");
            }
        }
        Format::Text => {}
    }
    ExitCode::from(code)
}
