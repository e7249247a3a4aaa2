use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use gaussint::driver::{run, OutputFormat, RunConfig, DEFAULT_SCREEN};
use gaussint::selftest::run_selftest;
use gaussint_core::boys::{Boys, MAX_T_SWITCH};
use gaussint_core::eri::EriBackend;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Backend {
    Os,
    Hgp,
    Ssss,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Binary,
}

/// Overlap, kinetic, nuclear-attraction and electron-repulsion integrals
/// over Cartesian Gaussian basis sets.
#[derive(Debug, Parser)]
#[command(name = "gaussint", version)]
struct Cli {
    /// Molecule in XYZ format (bohr unless --angstrom).
    #[arg(long, required_unless_present = "selftest")]
    mol: Option<PathBuf>,
    /// Gaussian94 basis file, or `sto-3g` for the bundled set.
    #[arg(long, default_value = "sto-3g")]
    basis: String,
    /// ERI evaluation route.
    #[arg(long, value_enum, default_value = "hgp")]
    backend: Backend,
    /// Skip shell quartets whose magnitude bound is below this value.
    #[arg(long, default_value_t = DEFAULT_SCREEN, value_parser = non_negative)]
    screen: f64,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// ERI file format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Read molecule coordinates in angstrom.
    #[arg(long)]
    angstrom: bool,
    /// Run the built-in invariant suites instead of a calculation.
    #[arg(long)]
    selftest: bool,
    /// Seed for the self-test corpus.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Boys function switch point between series and large-argument branch.
    #[arg(long, value_parser = t_switch)]
    t_switch: Option<f64>,
    /// More progress output on stderr (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
}

fn non_negative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("expected a finite non-negative number, got `{s}`")),
    }
}

fn t_switch(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if (0.0..=MAX_T_SWITCH).contains(&v) => Ok(v),
        _ => Err(format!("expected a number in [0, {MAX_T_SWITCH}], got `{s}`")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.selftest {
        let boys = match cli.t_switch {
            Some(t) => Boys::with_t_switch(t).expect("range checked by the parser"),
            None => Boys::default(),
        };
        let report = run_selftest(cli.seed, &boys);
        println!("{report}");
        return if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }

    let config = RunConfig {
        molecule: cli.mol.expect("required unless --selftest"),
        basis: cli.basis,
        backend: match cli.backend {
            Backend::Os => EriBackend::Os,
            Backend::Hgp => EriBackend::Hgp,
            Backend::Ssss => EriBackend::SsssOnly,
        },
        screen: cli.screen,
        out_dir: cli.out,
        format: match cli.format {
            Format::Text => OutputFormat::Text,
            Format::Binary => OutputFormat::Binary,
        },
        angstrom: cli.angstrom,
        t_switch: cli.t_switch,
        verbosity: cli.verbose,
    };
    match run(&config) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
