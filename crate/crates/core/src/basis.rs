//! Cartesian Gaussian basis functions: angular-momentum indices, primitives,
//! contracted shells, molecules and basis-set libraries.
//!
//! Within a shell the Cartesian components are ordered lexicographically
//! decreasing in `(nx, ny, nz)`, e.g. `xx, xy, xz, yy, yz, zz` for d.
//! Every component is normalized on its own, so the overlap matrix has an
//! exact unit diagonal even for d and higher shells.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::num::{exp, pow, powi, sqrt};
use crate::{elements, Error, Vec3, L_MAX};

/// Cartesian direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axis {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

/// Exponent triple `(nx, ny, nz)` of `x^nx y^ny z^nz`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct AngularIndex {
    pub nx: u32,
    pub ny: u32,
    pub nz: u32,
}

impl AngularIndex {
    pub const S: AngularIndex = AngularIndex { nx: 0, ny: 0, nz: 0 };

    pub const fn new(nx: u32, ny: u32, nz: u32) -> Self {
        AngularIndex { nx, ny, nz }
    }

    /// Total angular momentum `nx + ny + nz`.
    pub const fn l(&self) -> u32 {
        self.nx + self.ny + self.nz
    }

    pub const fn get(&self, axis: Axis) -> u32 {
        match axis {
            Axis::X => self.nx,
            Axis::Y => self.ny,
            Axis::Z => self.nz,
        }
    }

    pub const fn as_array(&self) -> [u32; 3] {
        [self.nx, self.ny, self.nz]
    }

    pub const fn from_array(n: [u32; 3]) -> Self {
        AngularIndex::new(n[0], n[1], n[2])
    }

    /// `n + 1_i`.
    pub fn raised(&self, axis: Axis) -> Self {
        let mut n = self.as_array();
        n[axis as usize] += 1;
        Self::from_array(n)
    }

    /// `n - 1_i`; an error if that component is already zero.
    pub fn lowered(&self, axis: Axis) -> Result<Self, Error> {
        let mut n = self.as_array();
        let c = &mut n[axis as usize];
        if *c == 0 {
            return Err(Error::NegativeIndex);
        }
        *c -= 1;
        Ok(Self::from_array(n))
    }

    /// First axis with a non-zero component, scanning x, y, z.
    pub fn first_nonzero_axis(&self) -> Option<Axis> {
        Axis::ALL.into_iter().find(|&a| self.get(a) > 0)
    }

    /// Position of this index inside its shell in canonical order.
    pub fn shell_position(&self) -> usize {
        let rest = (self.ny + self.nz) as usize;
        rest * (rest + 1) / 2 + self.nz as usize
    }

    /// Position in the concatenation of all shells `0, 1, ..., l`.
    pub fn cumulative_position(&self) -> usize {
        cumulative_count(self.l()) - shell_size(self.l()) + self.shell_position()
    }

    /// `(2nx-1)!! (2ny-1)!! (2nz-1)!!` as a float.
    pub fn double_factorial_product(&self) -> f64 {
        odd_double_factorial(self.nx) * odd_double_factorial(self.ny) * odd_double_factorial(self.nz)
    }
}

/// `k!!` with the empty-product convention `(-1)!! = 0!! = 1`.
pub fn double_factorial(k: i64) -> Result<u64, Error> {
    if k < -1 {
        return Err(Error::DoubleFactorialDomain(k));
    }
    let mut acc: u64 = 1;
    let mut i = k;
    while i > 1 {
        acc = acc.checked_mul(i as u64).ok_or(Error::DoubleFactorialOverflow(k))?;
        i -= 2;
    }
    Ok(acc)
}

/// `(2n-1)!!` in floating point.
pub(crate) fn odd_double_factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * (2 * i - 1) as f64)
}

/// Number of Cartesian components in a shell: `(l+1)(l+2)/2`.
pub const fn shell_size(l: u32) -> usize {
    let l = l as usize;
    (l + 1) * (l + 2) / 2
}

/// Number of Cartesian components in all shells `0..=l`.
pub const fn cumulative_count(l: u32) -> usize {
    let l = l as usize;
    (l + 1) * (l + 2) * (l + 3) / 6
}

/// Cartesian components of a shell in canonical order.
pub fn cartesian_components(l: u32) -> Vec<AngularIndex> {
    let mut out = Vec::with_capacity(shell_size(l));
    for nx in (0..=l).rev() {
        for ny in (0..=l - nx).rev() {
            out.push(AngularIndex::new(nx, ny, l - nx - ny));
        }
    }
    out
}

/// All indices with `0 <= l(n) <= l_max`, ordered by shell then canonical
/// order; element `k` has `cumulative_position() == k`.
pub fn cumulative_components(l_max: u32) -> Vec<AngularIndex> {
    (0..=l_max).flat_map(cartesian_components).collect()
}

/// Normalization constant of a primitive Cartesian Gaussian.
///
/// `alpha` must be positive.
pub fn primitive_norm(alpha: f64, n: AngularIndex) -> f64 {
    let l = n.l();
    pow(2.0 / PI, 0.75) * powi(2.0, l) * pow(alpha, (2 * l + 3) as f64 / 4.0) / sqrt(n.double_factorial_product())
}

/// Normalization constant of a contraction `sum_i a_i x^n exp(-alpha_i r^2)`
/// whose coefficients multiply unnormalized primitives.
pub fn contracted_norm(primitives: &[(f64, f64)], n: AngularIndex) -> Result<f64, Error> {
    if primitives.is_empty() {
        return Err(Error::EmptyContraction);
    }
    for &(alpha, a) in primitives {
        check_exponent(alpha)?;
        if !a.is_finite() {
            return Err(Error::NonFinite("contraction coefficient"));
        }
    }
    if primitives.iter().all(|&(_, a)| a == 0.0) {
        return Err(Error::DegenerateContraction);
    }
    let l = n.l();
    let mut sum = 0.0;
    for &(ai, ci) in primitives {
        for &(aj, cj) in primitives {
            sum += ci * cj / pow(ai + aj, l as f64 + 1.5);
        }
    }
    let self_overlap = pow(PI, 1.5) * n.double_factorial_product() / powi(2.0, l) * sum;
    if !(self_overlap > 0.0) {
        return Err(Error::DegenerateContraction);
    }
    Ok(1.0 / sqrt(self_overlap))
}

fn check_exponent(alpha: f64) -> Result<(), Error> {
    if alpha.is_finite() && alpha > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveExponent(alpha))
    }
}

fn check_point(p: &Vec3, what: &'static str) -> Result<(), Error> {
    if p.iter().all(|c| c.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// An unnormalized primitive `(x-Ax)^nx (y-Ay)^ny (z-Az)^nz exp(-alpha |r-A|^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimitiveGaussian {
    pub exponent: f64,
    pub index: AngularIndex,
    pub center: Vec3,
}

impl PrimitiveGaussian {
    pub fn new(exponent: f64, index: AngularIndex, center: Vec3) -> Result<Self, Error> {
        check_exponent(exponent)?;
        check_point(&center, "center")?;
        Ok(PrimitiveGaussian { exponent, index, center })
    }

    pub fn norm(&self) -> f64 {
        primitive_norm(self.exponent, self.index)
    }

    /// Value at `r` (unnormalized).
    pub fn value_at(&self, r: &Vec3) -> f64 {
        let d = crate::sub(r, &self.center);
        powi(d[0], self.index.nx)
            * powi(d[1], self.index.ny)
            * powi(d[2], self.index.nz)
            * exp(-self.exponent * crate::norm2(&d))
    }
}

/// A contracted Cartesian shell: one center, one angular momentum and a
/// list of primitives shared by all `(l+1)(l+2)/2` components.
///
/// Coefficients are stored as given by basis-set files, i.e. multiplying
/// *normalized* primitives. Exponents are kept strictly decreasing;
/// repeated exponents are merged by adding their coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractedShell {
    center: Vec3,
    l: u32,
    exponents: Vec<f64>,
    coefficients: Vec<f64>,
    radial: Vec<f64>,
    scales: Vec<f64>,
}

impl ContractedShell {
    pub fn new(center: Vec3, l: u32, primitives: &[(f64, f64)]) -> Result<Self, Error> {
        if l > L_MAX {
            return Err(Error::UnsupportedAngularMomentum(l));
        }
        check_point(&center, "shell center")?;
        if primitives.is_empty() {
            return Err(Error::EmptyContraction);
        }
        let mut prims: Vec<(f64, f64)> = Vec::with_capacity(primitives.len());
        for &(alpha, c) in primitives {
            check_exponent(alpha)?;
            if !c.is_finite() {
                return Err(Error::NonFinite("contraction coefficient"));
            }
            prims.push((alpha, c));
        }
        prims.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(prims.len());
        for (alpha, c) in prims {
            match merged.last_mut() {
                Some(last) if last.0 == alpha => last.1 += c,
                _ => merged.push((alpha, c)),
            }
        }

        let lead = AngularIndex::new(l, 0, 0);
        let unnormalized: Vec<(f64, f64)> =
            merged.iter().map(|&(alpha, c)| (alpha, c * primitive_norm(alpha, lead))).collect();
        let norm = contracted_norm(&unnormalized, lead)?;
        let radial = unnormalized.iter().map(|&(_, d)| d * norm).collect();
        let lead_df = lead.double_factorial_product();
        let scales = cartesian_components(l).iter().map(|n| sqrt(lead_df / n.double_factorial_product())).collect();

        Ok(ContractedShell {
            center,
            l,
            exponents: merged.iter().map(|p| p.0).collect(),
            coefficients: merged.iter().map(|p| p.1).collect(),
            radial,
            scales,
        })
    }

    pub fn center(&self) -> &Vec3 {
        &self.center
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    /// Coefficients over normalized primitives, as read from a basis file.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn num_primitives(&self) -> usize {
        self.exponents.len()
    }

    /// Number of Cartesian components.
    pub fn size(&self) -> usize {
        shell_size(self.l)
    }

    pub fn components(&self) -> Vec<AngularIndex> {
        cartesian_components(self.l)
    }

    /// Coefficients over *unnormalized* primitives of the `(l,0,0)` component,
    /// including the contraction normalization.
    pub fn radial_coefficients(&self) -> &[f64] {
        &self.radial
    }

    /// Ratio between the coefficients of component `k` (canonical position)
    /// and those of the `(l,0,0)` component.
    pub fn component_scale(&self, k: usize) -> f64 {
        self.scales[k]
    }

    pub fn component_scales(&self) -> &[f64] {
        &self.scales
    }

    /// Coefficients over unnormalized primitives that make component `n`
    /// a normalized function, computed directly from the primitive and
    /// contraction normalization formulas.
    pub fn normalized_coefficients(&self, n: AngularIndex) -> Result<Vec<f64>, Error> {
        if n.l() != self.l {
            return Err(Error::OutOfRange {
                what: "component angular momentum",
                value: n.l() as i64,
                min: self.l as i64,
                max: self.l as i64,
            });
        }
        let unnormalized: Vec<(f64, f64)> = self
            .exponents
            .iter()
            .zip(&self.coefficients)
            .map(|(&alpha, &c)| (alpha, c * primitive_norm(alpha, n)))
            .collect();
        let norm = contracted_norm(&unnormalized, n)?;
        Ok(unnormalized.iter().map(|&(_, d)| d * norm).collect())
    }

    /// Same shell moved to another center.
    pub fn translated(&self, shift: &Vec3) -> Self {
        let mut out = self.clone();
        for k in 0..3 {
            out.center[k] += shift[k];
        }
        out
    }
}

/// An atom: symbol, nuclear charge and position in bohr.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    pub symbol: String,
    pub charge: u32,
    pub position: Vec3,
}

impl Atom {
    /// Atom with the nuclear charge implied by its symbol.
    pub fn new(symbol: &str, position: Vec3) -> Result<Self, Error> {
        let canonical = elements::canonical_symbol(symbol).ok_or_else(|| Error::UnknownElement(symbol.to_string()))?;
        let charge = elements::atomic_number(canonical).unwrap_or(0);
        Self::with_charge(canonical, charge, position)
    }

    pub fn with_charge(symbol: &str, charge: u32, position: Vec3) -> Result<Self, Error> {
        if charge == 0 {
            return Err(Error::InvalidCharge(charge));
        }
        check_point(&position, "atom position")?;
        Ok(Atom { symbol: symbol.to_string(), charge, position })
    }
}

/// A non-empty list of atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct Molecule {
    atoms: Vec<Atom>,
}

impl Molecule {
    pub fn new(atoms: Vec<Atom>) -> Result<Self, Error> {
        if atoms.is_empty() {
            return Err(Error::EmptyMolecule);
        }
        for a in &atoms {
            if a.charge == 0 {
                return Err(Error::InvalidCharge(0));
            }
            check_point(&a.position, "atom position")?;
        }
        Ok(Molecule { atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// `(Z, position)` for every nucleus.
    pub fn nuclei(&self) -> Vec<(f64, Vec3)> {
        self.atoms.iter().map(|a| (a.charge as f64, a.position)).collect()
    }

    pub fn translated(&self, shift: &Vec3) -> Self {
        let atoms = self
            .atoms
            .iter()
            .map(|a| {
                let mut b = a.clone();
                for k in 0..3 {
                    b.position[k] += shift[k];
                }
                b
            })
            .collect();
        Molecule { atoms }
    }
}

/// A shell before it is placed on an atom.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellTemplate {
    pub l: u32,
    /// `(exponent, coefficient over normalized primitive)` in file order.
    pub primitives: Vec<(f64, f64)>,
}

impl ShellTemplate {
    pub fn new(l: u32, primitives: Vec<(f64, f64)>) -> Result<Self, Error> {
        if l > L_MAX {
            return Err(Error::UnsupportedAngularMomentum(l));
        }
        if primitives.is_empty() {
            return Err(Error::EmptyContraction);
        }
        for &(alpha, c) in &primitives {
            check_exponent(alpha)?;
            if !c.is_finite() {
                return Err(Error::NonFinite("contraction coefficient"));
            }
        }
        Ok(ShellTemplate { l, primitives })
    }

    pub fn place(&self, center: Vec3) -> Result<ContractedShell, Error> {
        ContractedShell::new(center, self.l, &self.primitives)
    }
}

/// Shell templates keyed by canonical element symbol.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BasisSetLibrary {
    entries: BTreeMap<String, Vec<ShellTemplate>>,
}

impl BasisSetLibrary {
    pub fn new() -> Self {
        Self::default()
    }

    /// Append a shell to an element's list (symbols are case-insensitive).
    pub fn push(&mut self, symbol: &str, shell: ShellTemplate) -> Result<(), Error> {
        let key = elements::canonical_symbol(symbol).ok_or_else(|| Error::UnknownElement(symbol.to_string()))?;
        self.entries.entry(key.to_string()).or_default().push(shell);
        Ok(())
    }

    pub fn get(&self, symbol: &str) -> Option<&[ShellTemplate]> {
        let key = elements::canonical_symbol(symbol)?;
        self.entries.get(key).map(|v| v.as_slice())
    }

    /// `(symbol, shells)` in symbol order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &[ShellTemplate])> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_slice()))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Shells placed on a molecule, with the offset of each shell's first
/// function in the full basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Basis {
    shells: Vec<ContractedShell>,
    offsets: Vec<usize>,
    dimension: usize,
}

impl Basis {
    pub fn new(shells: Vec<ContractedShell>) -> Self {
        let mut offsets = Vec::with_capacity(shells.len());
        let mut dimension = 0;
        for s in &shells {
            offsets.push(dimension);
            dimension += s.size();
        }
        Basis { shells, offsets, dimension }
    }

    pub fn shells(&self) -> &[ContractedShell] {
        &self.shells
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Total number of basis functions.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn max_l(&self) -> u32 {
        self.shells.iter().map(|s| s.l()).max().unwrap_or(0)
    }

    pub fn translated(&self, shift: &Vec3) -> Self {
        Basis::new(self.shells.iter().map(|s| s.translated(shift)).collect())
    }
}

/// Place the library's shells on every atom: atom order first, then
/// library order within an atom.
pub fn build_basis(molecule: &Molecule, library: &BasisSetLibrary) -> Result<Basis, Error> {
    let mut shells = Vec::new();
    for atom in molecule.atoms() {
        let templates = library.get(&atom.symbol).ok_or_else(|| Error::MissingBasis(atom.symbol.clone()))?;
        for t in templates {
            shells.push(t.place(atom.position)?);
        }
    }
    Ok(Basis::new(shells))
}
