//! Batch runs: read inputs, compute all integrals, write output files.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use gaussint_core::basis::{build_basis, Basis, BasisSetLibrary, Molecule};
use gaussint_core::boys::Boys;
use gaussint_core::eri::{
    canonical_shell_quartets, collect_class, compute_class_contracted, quartet_bound, sort_records, EriBackend,
    EriClass, EriList,
};
use gaussint_core::one_electron::{build_matrices, OneElectronMatrices};
use rayon::prelude::*;

use crate::basis_file::{parse_gaussian94, sto_3g};
use crate::molecule_file::parse_xyz;
use crate::output::{eri_binary, eri_text, matrix_text};
use crate::Error;

/// Default screening threshold.
pub const DEFAULT_SCREEN: f64 = 1e-14;
/// Environment variable capping the worker count (0 or unset: automatic).
pub const THREADS_ENV: &str = "GAUSSINT_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Binary,
}

/// Everything a batch run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub molecule: PathBuf,
    /// Path to a Gaussian94 file, or `sto-3g` for the bundled basis.
    pub basis: String,
    pub backend: EriBackend,
    pub screen: f64,
    pub out_dir: PathBuf,
    pub format: OutputFormat,
    pub angstrom: bool,
    pub t_switch: Option<f64>,
    pub verbosity: u8,
}

impl RunConfig {
    pub fn new(molecule: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        RunConfig {
            molecule: molecule.into(),
            basis: "sto-3g".into(),
            backend: EriBackend::Hgp,
            screen: DEFAULT_SCREEN,
            out_dir: out_dir.into(),
            format: OutputFormat::Text,
            angstrom: false,
            t_switch: None,
            verbosity: 0,
        }
    }

    pub fn boys(&self) -> Result<Boys, Error> {
        match self.t_switch {
            Some(t) => Ok(Boys::with_t_switch(t)?),
            None => Ok(Boys::default()),
        }
    }
}

/// Counts reported after a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunSummary {
    pub dimension: usize,
    pub eri_records: usize,
    pub quartets_computed: usize,
    pub quartets_screened: usize,
    pub wall_time: Duration,
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "basis dimension {}, eri records {}, quartets computed {}, quartets screened {}, wall time {:.3} s",
            self.dimension,
            self.eri_records,
            self.quartets_computed,
            self.quartets_screened,
            self.wall_time.as_secs_f64()
        )
    }
}

/// Loads a basis library from a file path or the name `sto-3g`.
pub fn load_basis(source: &str) -> Result<BasisSetLibrary, Error> {
    if source.eq_ignore_ascii_case("sto-3g") {
        return Ok(sto_3g());
    }
    let text = fs::read_to_string(source).map_err(|e| Error::io(source, e))?;
    parse_gaussian94(&text, source)
}

pub fn load_molecule(path: &Path, angstrom: bool) -> Result<Molecule, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_xyz(&text, angstrom, &path.display().to_string())
}

/// Worker count from [`THREADS_ENV`]; `None` means automatic.
pub fn thread_cap() -> Result<Option<usize>, Error> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) => Ok(None),
            Ok(n) => Ok(Some(n)),
            Err(_) => Err(Error::Config(format!("{THREADS_ENV} must be a non-negative integer, found `{v}`"))),
        },
    }
}

/// All unique ERIs, computing shell quartets in parallel. The result does
/// not depend on the number of workers.
pub fn compute_eris(basis: &Basis, backend: EriBackend, screen: f64, boys: &Boys) -> Result<EriList, Error> {
    if !(screen >= 0.0 && screen.is_finite()) {
        return Err(Error::Config(format!("screening threshold must be finite and non-negative, got {screen}")));
    }
    let shells = basis.shells();
    let quartets = canonical_shell_quartets(shells.len());
    let classes: Vec<Option<EriClass>> = quartets
        .par_iter()
        .map(|q| {
            let quartet = q.map(|s| &shells[s]);
            if quartet_bound(quartet) < screen {
                Ok(None)
            } else {
                compute_class_contracted(quartet, backend, boys).map(Some)
            }
        })
        .collect::<Result<_, _>>()?;
    let mut list = EriList::default();
    for (q, class) in quartets.iter().zip(&classes) {
        match class {
            Some(c) => {
                collect_class(basis, *q, c, &mut list.records);
                list.quartets_computed += 1;
            }
            None => list.quartets_screened += 1,
        }
    }
    sort_records(&mut list.records);
    Ok(list)
}

/// One-electron matrices and the ERI list for a molecule.
pub fn compute(
    molecule: &Molecule,
    library: &BasisSetLibrary,
    backend: EriBackend,
    screen: f64,
    boys: &Boys,
) -> Result<(Basis, OneElectronMatrices, EriList), Error> {
    let basis = build_basis(molecule, library)?;
    let matrices = build_matrices(&basis, molecule, boys);
    let eris = compute_eris(&basis, backend, screen, boys)?;
    Ok((basis, matrices, eris))
}

/// Names of the files a run writes, relative to the output directory.
pub fn output_files(format: OutputFormat) -> [&'static str; 4] {
    let eri = match format {
        OutputFormat::Text => "eri.txt",
        OutputFormat::Binary => "eri.bin",
    };
    ["overlap.txt", "kinetic.txt", "nuclear.txt", eri]
}

/// Runs the whole pipeline and writes the output files.
pub fn run(config: &RunConfig) -> Result<RunSummary, Error> {
    let start = Instant::now();
    let boys = config.boys()?;
    let molecule = load_molecule(&config.molecule, config.angstrom)?;
    let library = load_basis(&config.basis)?;
    let work = || compute(&molecule, &library, config.backend, config.screen, &boys);
    let (basis, matrices, eris) = match thread_cap()? {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(work)?,
        None => work()?,
    };
    if config.verbosity > 0 {
        eprintln!(
            "{} atoms, {} shells, {} functions, backend {}",
            molecule.atoms().len(),
            basis.shells().len(),
            basis.dimension(),
            config.backend.name()
        );
    }

    fs::create_dir_all(&config.out_dir).map_err(|e| Error::io(&config.out_dir, e))?;
    let names = output_files(config.format);
    let write = |name: &str, bytes: &[u8]| {
        let path = config.out_dir.join(name);
        if config.verbosity > 1 {
            eprintln!("writing {}", path.display());
        }
        fs::write(&path, bytes).map_err(|e| Error::io(path, e))
    };
    write(names[0], matrix_text("overlap", &matrices.overlap).as_bytes())?;
    write(names[1], matrix_text("kinetic", &matrices.kinetic).as_bytes())?;
    write(names[2], matrix_text("nuclear", &matrices.nuclear).as_bytes())?;
    match config.format {
        OutputFormat::Text => write(names[3], eri_text(basis.dimension(), &eris.records).as_bytes())?,
        OutputFormat::Binary => write(names[3], &eri_binary(&eris.records))?,
    }

    Ok(RunSummary {
        dimension: basis.dimension(),
        eri_records: eris.records.len(),
        quartets_computed: eris.quartets_computed,
        quartets_screened: eris.quartets_screened,
        wall_time: start.elapsed(),
    })
}
