//! `cotwist`: exact checks for Hopf module coalgebras, twistings, crossed
//! coproducts, twisted cocycles, equivalences and Galois coextensions.
//!
//! Exit status: 0 when every check passes, 1 when any check fails, 2 for
//! malformed input or unknown names.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cotwist::doc::StructureDoc;
use cotwist::{CheckReport, Error, FieldSpec};

#[derive(Parser, Debug)]
#[command(name = "cotwist", version, about = "Exact verification of twistings of Hopf module coalgebras")]
pub struct Cli {
    /// Ground field for builtins: Q or a prime p (F5, 5, GF(5)).
    #[arg(long, global = true, env = "COTWIST_FIELD", default_value = "Q")]
    pub field: FieldSpec,

    /// Print reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the resulting structure document here instead of stdout.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CheckKind {
    Hopf,
    Modcoalg,
    Twisting,
    LeftTwisting,
    WeakCoaction,
    Harrison,
    TwistedCocycle,
    Witness,
    Galois,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Direction {
    /// Left hand twisting `gamma` to right twisting `tau`.
    Ltr,
    /// Right twisting `tau` to left hand twisting `gamma`.
    Rtl,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Run the checks for one kind of structure on each input.
    Check {
        kind: CheckKind,
        #[arg(required = true)]
        inputs: Vec<String>,
    },
    /// The twisted module coalgebra `C^tau`.
    Twist { c: String, tau: String },
    /// The inverse twisting, as a twisting of `C^tau`.
    InvertTwisting { tau: String },
    /// Convert between right and left hand twistings.
    Transpose { direction: Direction, input: String },
    /// Crossed coproducts of Harrison cocycles.
    #[command(subcommand)]
    Crossed(CrossedCmd),
    /// Twisted 2-cocycles on `C ⊗ H`.
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// Equivalence witnesses between twistings.
    #[command(subcommand)]
    Equiv(EquivCmd),
    /// Canonical maps and Galois coextensions.
    #[command(subcommand)]
    Galois(GaloisCmd),
    /// Check `LHS == RHS` equations, one per line.
    Eval {
        file: PathBuf,
        /// `NAME=SOURCE`: bind a builtin or document under prefix NAME.
        #[arg(long = "env")]
        bindings: Vec<String>,
    },
    /// Run the scripted scenario for a theorem id.
    Verify {
        id: String,
        #[arg(long)]
        instance: Option<String>,
        /// Run every instance listed in the script.
        #[arg(long, conflicts_with = "instance")]
        all_instances: bool,
    },
    /// Write a builtin as a structure document.
    Export { name: String },
    /// List builtins and theorem ids.
    List,
}

#[derive(Subcommand, Debug)]
pub enum CrossedCmd {
    /// The crossed coproduct `C ⊗ H` of a Harrison cocycle.
    Build { cocycle: String },
    /// The twisting of `C ⊗ H` attached to a Harrison cocycle.
    ToTwisting { cocycle: String },
    /// Recover the weak coaction and cocycle from a twisting of `C ⊗ H`.
    FromTwisting {
        tau: String,
        /// Source of `C` (default: the ground field).
        #[arg(long)]
        base: Option<String>,
    },
    /// Transform a cocycle by a convolution invertible `u : C → H`.
    Gauge {
        cocycle: String,
        /// Document holding `u` (default: `1 + b` for the last basis vector `b`).
        #[arg(long)]
        u: Option<String>,
    },
    /// Check that `u` induces an isomorphism from the source crossed
    /// coproduct to the target.
    Iso {
        source: String,
        target: String,
        #[arg(long)]
        u: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CocycleCmd {
    /// Harrison cocycle with trivial coaction to a twisted 2-cocycle on `C ⊗ H`.
    Lift { cocycle: String },
    /// Twisted 2-cocycle on `C ⊗ H` back to a Harrison cocycle.
    Restrict {
        cocycle: String,
        #[arg(long)]
        base: Option<String>,
    },
    /// The twisting induced by a twisted 2-cocycle.
    ToTwisting { cocycle: String },
}

#[derive(Subcommand, Debug)]
pub enum EquivCmd {
    /// Check `v` as a witness of `tau ∼ lambda`.
    Check { witness: String },
    /// The coalgebra map `C^tau → C^lambda` of a witness.
    Psi { witness: String },
    /// Carry the inverse of `tau` over to `lambda`.
    TransferInverse { witness: String },
    /// The witness attached to a crossed coproduct isomorphism.
    FromIso {
        source: String,
        target: String,
        #[arg(long)]
        u: Option<String>,
    },
    /// The crossed coproduct isomorphism attached to a witness.
    ToIso {
        witness: String,
        #[arg(long)]
        base: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GaloisCmd {
    /// Certify that the canonical map is bijective.
    Cert { input: String },
    /// Check the identities of the diamond map.
    Diamond { input: String },
    /// The commuting square relating the canonical maps of `C` and `C^tau`.
    Thm32 { tau: String },
    /// The witness of a coalgebra map `psi : C^tau → C^lambda`.
    Extract { input: String },
}

/// Reports to print and an optional structure to write.
#[derive(Default)]
pub struct Outcome {
    pub reports: Vec<CheckReport>,
    pub doc: Option<StructureDoc>,
}

impl Outcome {
    pub fn report(r: CheckReport) -> Self {
        Outcome { reports: vec![r], doc: None }
    }

    pub fn with_doc(mut self, doc: StructureDoc) -> Self {
        self.doc = Some(doc);
        self
    }
}

/// Failures of a mathematical check exit with 1; everything else with 2.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotATwisting(_)
        | Error::NotACocycle(_)
        | Error::WitnessInvalid(_)
        | Error::PsiNotColinear(_)
        | Error::NotGalois { .. }
        | Error::NotInvertible(_)
        | Error::InverseMissing(_)
        | Error::SNotBijective { .. }
        | Error::NoSolution
        | Error::CoidealFailure(_)
        | Error::OutsideCotensor
        | Error::Invariant(_) => 1,
        _ => 2,
    }
}

fn render(reports: &[CheckReport], json: bool) -> String {
    if json {
        let v = match reports {
            [one] => serde_json::to_value(one),
            many => serde_json::to_value(many),
        };
        let mut s = serde_json::to_string_pretty(&v.expect("reports serialize")).expect("json");
        s.push('\n');
        s
    } else {
        reports.iter().map(|r| r.to_string()).collect()
    }
}

fn finish(cli: &Cli, outcome: Outcome) -> Result<u8, Error> {
    let text = render(&outcome.reports, cli.json);
    match (&outcome.doc, &cli.out) {
        (Some(doc), Some(path)) => {
            std::fs::write(path, doc.to_json())?;
            print!("{text}");
        }
        (Some(doc), None) => {
            print!("{}", doc.to_json());
            eprint!("{text}");
        }
        (None, _) => print!("{text}"),
    }
    Ok(if outcome.reports.iter().all(CheckReport::passed) { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match commands::run(&cli).and_then(|o| finish(&cli, o)) {
        Ok(code) => code,
        Err(e) => {
            if let Some(r) = e.report() {
                print!("{}", render(std::slice::from_ref(r), cli.json));
            }
            if let Error::NotGalois { kernel_vector: Some(k), .. } = &e {
                println!("     kernel vector of β: {}", k.join(" + "));
            }
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code)
}
