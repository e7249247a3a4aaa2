//! Gaussian94-style basis-set files.
//!
//! ```text
//! ****
//! H     0
//! S   3   1.00
//!       3.42525091   0.15432897
//!       0.62391373   0.53532814
//!       0.16885540   0.44463454
//! ****
//! ```
//!
//! Each element block starts with `<symbol> 0` and ends with `****`.
//! Shell headers are `<letters> <nprim> <scale>`; letters are S, P, D, F,
//! G or the combined SP (two coefficient columns sharing the exponents).
//! The scale factor multiplies exponents by `scale^2`. Letters are
//! case-insensitive, Fortran `D` exponents (`1.0D+01`) are accepted, and
//! lines starting with `!` are comments. Coefficients multiply normalized
//! primitives.

use std::fmt::Write as _;

use gaussint_core::basis::{BasisSetLibrary, ShellTemplate};
use gaussint_core::elements;

use crate::Error;

/// The bundled STO-3G file (H to Ne).
pub const STO_3G: &str = include_str!("../data/sto-3g.gbs");

/// Parses the bundled STO-3G basis.
pub fn sto_3g() -> BasisSetLibrary {
    parse_gaussian94(STO_3G, "sto-3g").expect("bundled basis parses")
}

fn number(tok: &str) -> Option<f64> {
    let t: String = tok.chars().map(|c| if c == 'D' || c == 'd' { 'E' } else { c }).collect();
    t.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn letters(tok: &str) -> Option<Vec<u32>> {
    match tok.to_ascii_uppercase().as_str() {
        "S" => Some(vec![0]),
        "P" => Some(vec![1]),
        "D" => Some(vec![2]),
        "F" => Some(vec![3]),
        "G" => Some(vec![4]),
        "SP" => Some(vec![0, 1]),
        _ => None,
    }
}

/// Parses basis-file text. `source_name` labels error messages.
pub fn parse_gaussian94(text: &str, source_name: &str) -> Result<BasisSetLibrary, Error> {
    let err = |line: usize, msg: String| Error::parse(source_name, line, msg);
    let mut lib = BasisSetLibrary::new();
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('!'))
        .peekable();

    while let Some((ln, line)) = lines.next() {
        if line.starts_with("****") {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        let symbol = toks[0];
        if toks.len() != 2 || toks[1] != "0" {
            return Err(err(ln, format!("expected element header `<symbol> 0`, found `{line}`")));
        }
        let symbol =
            elements::canonical_symbol(symbol).ok_or_else(|| err(ln, format!("unknown element `{symbol}`")))?;

        let mut shells = 0;
        loop {
            let Some((ln, line)) = lines.next() else {
                return Err(err(ln, format!("block for {symbol} is not terminated by ****")));
            };
            if line.starts_with("****") {
                break;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() < 2 || toks.len() > 3 {
                return Err(err(ln, format!("expected shell header `<letters> <nprim> <scale>`, found `{line}`")));
            }
            let ls = letters(toks[0]).ok_or_else(|| err(ln, format!("unknown angular momentum `{}`", toks[0])))?;
            let nprim: usize = toks[1]
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| err(ln, format!("invalid primitive count `{}`", toks[1])))?;
            let scale = match toks.get(2) {
                Some(t) => {
                    number(t).filter(|&s| s > 0.0).ok_or_else(|| err(ln, format!("invalid scale factor `{t}`")))?
                }
                None => 1.0,
            };
            let mut columns: Vec<Vec<(f64, f64)>> = vec![Vec::with_capacity(nprim); ls.len()];
            for _ in 0..nprim {
                let Some((pl, prim)) = lines.next() else {
                    return Err(err(ln, format!("shell declares {nprim} primitives but the file ends")));
                };
                let toks: Vec<&str> = prim.split_whitespace().collect();
                if toks.len() != 1 + ls.len() {
                    return Err(err(pl, format!("expected {} numbers, found `{prim}`", 1 + ls.len())));
                }
                let vals: Vec<f64> = toks
                    .iter()
                    .map(|t| number(t).ok_or_else(|| err(pl, format!("invalid number `{t}`"))))
                    .collect::<Result<_, _>>()?;
                if vals[0] <= 0.0 {
                    return Err(err(pl, format!("non-positive exponent {}", vals[0])));
                }
                for (col, &c) in columns.iter_mut().zip(&vals[1..]) {
                    col.push((vals[0] * scale * scale, c));
                }
            }
            for (&l, prims) in ls.iter().zip(columns) {
                let t = ShellTemplate::new(l, prims).map_err(|e| err(ln, e.to_string()))?;
                lib.push(symbol, t).map_err(|e| err(ln, e.to_string()))?;
            }
            shells += 1;
        }
        if shells == 0 {
            return Err(err(ln, format!("block for {symbol} has no shells")));
        }
    }
    if lib.is_empty() {
        return Err(err(0, "no element blocks found".into()));
    }
    Ok(lib)
}

/// Writes a library back in the same format, one shell per header
/// (combined SP shells come out as separate S and P shells) with scale
/// 1.00 and exactly round-tripping numbers.
pub fn serialize(lib: &BasisSetLibrary) -> String {
    let mut out = String::from("****\n");
    for (symbol, shells) in lib.iter() {
        let _ = writeln!(out, "{symbol} 0");
        for s in shells {
            let letter = ["S", "P", "D", "F", "G"][s.l as usize];
            let _ = writeln!(out, "{letter} {} 1.00", s.primitives.len());
            for (e, c) in &s.primitives {
                let _ = writeln!(out, "  {e:e}  {c:e}");
            }
        }
        out.push_str("****\n");
    }
    out
}
