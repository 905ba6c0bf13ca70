use std::path::PathBuf;

use clap::Parser;

use icat_cli::{run, Options};

/// Finite internal categories in simplicial sets: nerves, cell
/// attachments, Segal and completeness checks, Dwyer–Kan and presheaves.
#[derive(Parser, Debug)]
#[command(name = "icat", version)]
struct Cli {
    /// validate, nerve, s-adjoint, homology, pi0, ho, hoequiv, dk-check,
    /// attach, is-nerve, yoneda-check, bar, kan-extend, grothendieck,
    /// int-check, gen, verify, segal-check, complete-check
    command: String,
    /// input documents (or `key-lemma` after `verify`)
    args: Vec<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// truncation (inner) dimension or degree bound
    #[arg(long)]
    dim: Option<usize>,
    /// outer truncation for nerves and bar constructions
    #[arg(long)]
    outer_dim: Option<usize>,
    #[arg(long)]
    probe_dim: Option<usize>,
    #[arg(long)]
    hom_bound: Option<usize>,
    /// search budget
    #[arg(long)]
    budget: Option<u64>,
    /// output document (a directory for `gen`)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let opts = Options {
        trials: cli.trials,
        seed: cli.seed,
        dim: cli.dim,
        outer_dim: cli.outer_dim,
        probe_dim: cli.probe_dim,
        hom_bound: cli.hom_bound,
        budget: cli.budget,
        out: cli.out,
    };
    match run(&cli.command, &cli.args, &opts) {
        Ok(report) => {
            print!("{}", report.to_text());
            std::process::exit(report.exit_code());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(3);
        }
    }
}
