//! Element symbols and nuclear charges.

const SYMBOLS: [&str; 54] = [
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si", "P", "S", "Cl", "Ar", "K", "Ca",
    "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y",
    "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I", "Xe",
];

/// Nuclear charge for a case-insensitive element symbol.
pub fn atomic_number(symbol: &str) -> Option<u32> {
    SYMBOLS.iter().position(|s| s.eq_ignore_ascii_case(symbol)).map(|i| i as u32 + 1)
}

/// Canonical spelling (`"he"` -> `"He"`) of a known symbol.
pub fn canonical_symbol(symbol: &str) -> Option<&'static str> {
    atomic_number(symbol).map(|z| SYMBOLS[z as usize - 1])
}
