//! XYZ-style molecule files.
//!
//! ```text
//! 2
//! hydrogen molecule
//! H 0.0 0.0 0.0
//! H 0.0 0.0 1.4
//! ```
//!
//! The first line is the atom count, the second a free comment, then one
//! `Symbol x y z` line per atom. Coordinates are in bohr unless the caller
//! asks for angstrom input.

use gaussint_core::basis::{Atom, Molecule};

use crate::Error;

/// Angstrom length of one bohr.
pub const BOHR_IN_ANGSTROM: f64 = 0.52917721092;

pub fn parse_xyz(text: &str, angstrom: bool, source_name: &str) -> Result<Molecule, Error> {
    let err = |line: usize, msg: String| Error::parse(source_name, line, msg);
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (ln, first) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
    let count: usize =
        first.trim().parse().map_err(|_| err(ln, format!("expected the atom count, found `{}`", first.trim())))?;
    if count == 0 {
        return Err(err(ln, "a molecule needs at least one atom".into()));
    }
    lines.next().ok_or_else(|| err(2, "missing comment line".into()))?;

    let factor = if angstrom { 1.0 / BOHR_IN_ANGSTROM } else { 1.0 };
    let mut atoms = Vec::with_capacity(count);
    for (ln, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if atoms.len() == count {
            return Err(err(ln, format!("more atom lines than the declared {count}")));
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(err(ln, format!("expected `Symbol x y z`, found `{}`", line.trim())));
        }
        let mut pos = [0.0; 3];
        for (p, t) in pos.iter_mut().zip(&toks[1..]) {
            *p = t
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(ln, format!("invalid coordinate `{t}`")))?
                * factor;
        }
        atoms.push(Atom::new(toks[0], pos).map_err(|e| err(ln, e.to_string()))?);
    }
    if atoms.len() != count {
        return Err(err(text.lines().count(), format!("declared {count} atoms, found {}", atoms.len())));
    }
    Ok(Molecule::new(atoms)?)
}
