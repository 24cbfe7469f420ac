//! Quaternion types: residues of the grade mod 4, their 15 nonzero unions,
//! and the composition rules of the commutator, anticommutator and product.
//!
//! The four main types are `0̄ = C_0 ⊕ C_4 ⊕ ...`, `1̄ = C_1 ⊕ C_5 ⊕ ...`,
//! and so on. Under the anticommutator they compose like the Klein group
//! with unit `0̄`; under the commutator the unit is `2̄`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::multivector::{FieldTag, Multivector};

/// A set of residues mod 4. The empty set is the type of the zero element.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QType(u8);

impl QType {
    pub const EMPTY: QType = QType(0);
    pub const FULL: QType = QType(0b1111);

    /// Table row/column order: the four main types, then pairs, triples and
    /// the whole algebra.
    pub const ORDER: [QType; 15] = [
        QType(0b0001),
        QType(0b0010),
        QType(0b0100),
        QType(0b1000),
        QType(0b0011),
        QType(0b0101),
        QType(0b1001),
        QType(0b0110),
        QType(0b1010),
        QType(0b1100),
        QType(0b0111),
        QType(0b1011),
        QType(0b1101),
        QType(0b1110),
        QType(0b1111),
    ];

    /// The main type of residue `r` (taken mod 4).
    pub const fn main(r: usize) -> QType {
        QType(1 << (r % 4))
    }

    pub const fn from_bits(bits: u8) -> QType {
        QType(bits & 0b1111)
    }

    pub const fn bits(self) -> u8 {
        self.0
    }

    pub fn from_residues<I: IntoIterator<Item = usize>>(residues: I) -> QType {
        residues.into_iter().fold(QType::EMPTY, |t, r| t.union(QType::main(r)))
    }

    pub const fn contains(self, r: usize) -> bool {
        r < 4 && self.0 & (1 << r) != 0
    }

    pub fn residues(self) -> impl Iterator<Item = usize> {
        (0..4).filter(move |r| self.contains(*r))
    }

    pub const fn union(self, other: QType) -> QType {
        QType(self.0 | other.0)
    }

    pub const fn is_subset(self, other: QType) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Position in [`QType::ORDER`]; `None` for the empty type.
    pub fn index(self) -> Option<usize> {
        QType::ORDER.iter().position(|t| *t == self)
    }
}

impl fmt::Display for QType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.residues() {
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QType({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid quaternion type `{0}`")]
pub struct ParseQTypeError(pub String);

impl FromStr for QType {
    type Err = ParseQTypeError;

    /// Digits `0`-`3`, each at most once; `""` is the empty type.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut t = QType::EMPTY;
        for ch in s.chars() {
            let r = match ch {
                '0'..='3' => ch as usize - '0' as usize,
                _ => return Err(ParseQTypeError(s.to_string())),
            };
            if t.contains(r) {
                return Err(ParseQTypeError(s.to_string()));
            }
            t = t.union(QType::main(r));
        }
        Ok(t)
    }
}

impl Serialize for QType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Smallest type containing `u`: residues whose projection exceeds
/// `tol * (1 + inf_norm(u))`.
pub fn detect_qtype(u: &Multivector, tol: f64) -> QType {
    let threshold = tol * (1.0 + u.inf_norm());
    QType::from_residues((0..4).filter(|r| u.qtype_project(*r).inf_norm() > threshold))
}

/// Which coefficients a component may carry: none, real, imaginary or both.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffClass {
    Zero,
    Real,
    Imaginary,
    Complex,
}

impl CoeffClass {
    const fn bits(self) -> u8 {
        match self {
            CoeffClass::Zero => 0b00,
            CoeffClass::Real => 0b01,
            CoeffClass::Imaginary => 0b10,
            CoeffClass::Complex => 0b11,
        }
    }

    const fn from_bits(bits: u8) -> Self {
        match bits & 0b11 {
            0b00 => CoeffClass::Zero,
            0b01 => CoeffClass::Real,
            0b10 => CoeffClass::Imaginary,
            _ => CoeffClass::Complex,
        }
    }

    pub const fn allows_real(self) -> bool {
        self.bits() & 0b01 != 0
    }

    pub const fn allows_imaginary(self) -> bool {
        self.bits() & 0b10 != 0
    }

    /// Class of a product of coefficients, using `i * i = -1`.
    pub const fn mul(self, other: CoeffClass) -> CoeffClass {
        let (ar, ai) = (self.allows_real(), self.allows_imaginary());
        let (br, bi) = (other.allows_real(), other.allows_imaginary());
        let re = (ar && br) || (ai && bi);
        let im = (ar && bi) || (ai && br);
        CoeffClass::from_bits(re as u8 | ((im as u8) << 1))
    }

    /// Class of a sum.
    pub const fn join(self, other: CoeffClass) -> CoeffClass {
        CoeffClass::from_bits(self.bits() | other.bits())
    }

    pub const fn is_within(self, other: CoeffClass) -> bool {
        self.bits() & !other.bits() == 0
    }
}

/// A real-linear subspace described per main type, e.g. `2̄ ⊕ i0̄` is
/// `{2: Real, 0: Imaginary}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspacePattern {
    classes: [CoeffClass; 4],
}

/// The worst violation of a pattern by a multivector.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Leak {
    pub residue: usize,
    pub imaginary: bool,
    pub magnitude: f64,
}

impl fmt::Display for Leak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = if self.imaginary { "imaginary" } else { "real" };
        write!(f, "{part} part of residue {}", self.residue)
    }
}

impl SubspacePattern {
    pub const ZERO: SubspacePattern = SubspacePattern { classes: [CoeffClass::Zero; 4] };

    pub const fn new(classes: [CoeffClass; 4]) -> Self {
        SubspacePattern { classes }
    }

    /// `real ⊕ i·imag`.
    pub fn from_types(real: QType, imag: QType) -> Self {
        let mut classes = [CoeffClass::Zero; 4];
        for (r, c) in classes.iter_mut().enumerate() {
            let bits = real.contains(r) as u8 | ((imag.contains(r) as u8) << 1);
            *c = CoeffClass::from_bits(bits);
        }
        SubspacePattern { classes }
    }

    pub fn real(t: QType) -> Self {
        Self::from_types(t, QType::EMPTY)
    }

    /// `t ⊕ i t`.
    pub fn complex(t: QType) -> Self {
        Self::from_types(t, t)
    }

    pub fn class(&self, residue: usize) -> CoeffClass {
        self.classes[residue % 4]
    }

    pub fn classes(&self) -> [CoeffClass; 4] {
        self.classes
    }

    pub fn real_type(&self) -> QType {
        QType::from_residues((0..4).filter(|r| self.classes[*r].allows_real()))
    }

    pub fn imag_type(&self) -> QType {
        QType::from_residues((0..4).filter(|r| self.classes[*r].allows_imaginary()))
    }

    pub fn support(&self) -> QType {
        self.real_type().union(self.imag_type())
    }

    /// Smallest field holding every element of the subspace.
    pub fn field(&self) -> FieldTag {
        if self.imag_type().is_empty() {
            FieldTag::Real
        } else {
            FieldTag::Complex
        }
    }

    pub fn join(&self, other: &SubspacePattern) -> SubspacePattern {
        let mut classes = self.classes;
        for (c, o) in classes.iter_mut().zip(other.classes) {
            *c = c.join(o);
        }
        SubspacePattern { classes }
    }

    pub fn is_within(&self, other: &SubspacePattern) -> bool {
        self.classes.iter().zip(other.classes).all(|(a, b)| a.is_within(b))
    }

    /// Largest forbidden component of `u`, if any exceeds `tol`.
    pub fn leak(&self, u: &Multivector, tol: f64) -> Option<Leak> {
        let mut worst: Option<Leak> = None;
        for r in 0..4 {
            let part = u.qtype_project(r);
            let class = self.classes[r];
            let re = part.real_part().inf_norm();
            let im = part.imag_part().inf_norm();
            for (imaginary, magnitude, allowed) in
                [(false, re, class.allows_real()), (true, im, class.allows_imaginary())]
            {
                if !allowed && magnitude > tol && worst.map_or(true, |w| magnitude > w.magnitude) {
                    worst = Some(Leak { residue: r, imaginary, magnitude });
                }
            }
        }
        worst
    }

    pub fn matches(&self, u: &Multivector, tol: f64) -> bool {
        self.leak(u, tol).is_none()
    }

    /// Smallest pattern containing `u`, with the relative threshold of
    /// [`detect_qtype`].
    pub fn detect(u: &Multivector, tol: f64) -> SubspacePattern {
        let threshold = tol * (1.0 + u.inf_norm());
        let mut classes = [CoeffClass::Zero; 4];
        for (r, c) in classes.iter_mut().enumerate() {
            let part = u.qtype_project(r);
            let re = part.real_part().inf_norm() > threshold;
            let im = part.imag_part().inf_norm() > threshold;
            *c = CoeffClass::from_bits(re as u8 | ((im as u8) << 1));
        }
        SubspacePattern { classes }
    }
}

impl fmt::Display for SubspacePattern {
    /// `02+i13` style; `0` alone means the real residue-0 part, and the zero
    /// subspace renders as `none`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (self.real_type(), self.imag_type());
        match (re.is_empty(), im.is_empty()) {
            (true, true) => f.write_str("none"),
            (false, true) => write!(f, "{re}"),
            (true, false) => write!(f, "i{im}"),
            (false, false) => write!(f, "{re}+i{im}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid subspace pattern `{0}`")]
pub struct ParsePatternError(pub String);

impl FromStr for SubspacePattern {
    type Err = ParsePatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParsePatternError(s.to_string());
        let s = s.trim();
        if s == "none" {
            return Ok(SubspacePattern::ZERO);
        }
        let mut real = QType::EMPTY;
        let mut imag = QType::EMPTY;
        for (k, part) in s.split('+').enumerate() {
            let part = part.trim();
            if let Some(digits) = part.strip_prefix('i') {
                if !imag.is_empty() || digits.is_empty() {
                    return Err(err());
                }
                imag = digits.parse().map_err(|_| err())?;
            } else {
                if k != 0 || part.is_empty() {
                    return Err(err());
                }
                real = part.parse().map_err(|_| err())?;
            }
        }
        Ok(SubspacePattern::from_types(real, imag))
    }
}

/// The two bracket operations.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bracket {
    Commutator,
    Anticommutator,
}

impl Bracket {
    pub fn apply(self, u: &Multivector, v: &Multivector) -> crate::Result<Multivector> {
        match self {
            Bracket::Commutator => u.commutator(v),
            Bracket::Anticommutator => u.anticommutator(v),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OpKind {
    Commutator,
    Anticommutator,
    GeometricProduct,
}

impl OpKind {
    pub const ALL: [OpKind; 3] = [OpKind::Commutator, OpKind::Anticommutator, OpKind::GeometricProduct];

    pub fn apply(self, u: &Multivector, v: &Multivector) -> crate::Result<Multivector> {
        match self {
            OpKind::Commutator => u.commutator(v),
            OpKind::Anticommutator => u.anticommutator(v),
            OpKind::GeometricProduct => u.geometric_product(v),
        }
    }

    /// Brackets whose results sum (up to a factor 2) to this operation.
    pub fn brackets(self) -> &'static [Bracket] {
        match self {
            OpKind::Commutator => &[Bracket::Commutator],
            OpKind::Anticommutator => &[Bracket::Anticommutator],
            OpKind::GeometricProduct => &[Bracket::Commutator, Bracket::Anticommutator],
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            OpKind::Commutator => "[,]",
            OpKind::Anticommutator => "{,}",
            OpKind::GeometricProduct => "*",
        }
    }
}

impl From<Bracket> for OpKind {
    fn from(b: Bracket) -> Self {
        match b {
            Bracket::Commutator => OpKind::Commutator,
            Bracket::Anticommutator => OpKind::Anticommutator,
        }
    }
}

/// Main-type composition table of one bracket.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct MainTable([[u8; 4]; 4]);

impl MainTable {
    /// `[k,k] ⊆ 2̄`, `[k,2̄] ⊆ k`, `[0̄,1̄] ⊆ 3̄`, `[0̄,3̄] ⊆ 1̄`, `[1̄,3̄] ⊆ 0̄`.
    pub const fn commutator() -> Self {
        MainTable([[2, 3, 0, 1], [3, 2, 1, 0], [0, 1, 2, 3], [1, 0, 3, 2]])
    }

    /// `{k,k} ⊆ 0̄`, `{k,0̄} ⊆ k`, `{1̄,2̄} ⊆ 3̄`, `{1̄,3̄} ⊆ 2̄`, `{2̄,3̄} ⊆ 1̄`.
    pub const fn anticommutator() -> Self {
        MainTable([[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]])
    }

    pub const fn for_bracket(b: Bracket) -> Self {
        match b {
            Bracket::Commutator => Self::commutator(),
            Bracket::Anticommutator => Self::anticommutator(),
        }
    }

    pub const fn get(&self, a: usize, b: usize) -> usize {
        self.0[a % 4][b % 4] as usize
    }

    /// Copy with one (unsymmetrized) cell replaced.
    pub fn with_cell(mut self, a: usize, b: usize, value: usize) -> Self {
        self.0[a % 4][b % 4] = (value % 4) as u8;
        self
    }

    /// Union of the main-type compositions over all member pairs.
    pub fn compose(&self, t1: QType, t2: QType) -> QType {
        let mut out = QType::EMPTY;
        for a in t1.residues() {
            for b in t2.residues() {
                out = out.union(QType::main(self.get(a, b)));
            }
        }
        out
    }
}

pub fn main_compose(op: Bracket, a: usize, b: usize) -> usize {
    MainTable::for_bracket(op).get(a, b)
}

/// Upper bound on the type of `op(U, V)` for `U ∈ t1`, `V ∈ t2`.
pub fn qtype_compose(op: OpKind, t1: QType, t2: QType) -> QType {
    op.brackets().iter().fold(QType::EMPTY, |acc, b| acc.union(MainTable::for_bracket(*b).compose(t1, t2)))
}

/// Upper bound on the pattern of `op(U, V)` for `U ∈ p1`, `V ∈ p2`.
pub fn pattern_compose(op: OpKind, p1: &SubspacePattern, p2: &SubspacePattern) -> SubspacePattern {
    let mut classes = [CoeffClass::Zero; 4];
    for bracket in op.brackets() {
        let table = MainTable::for_bracket(*bracket);
        for a in 0..4 {
            for b in 0..4 {
                let target = table.get(a, b);
                classes[target] = classes[target].join(p1.class(a).mul(p2.class(b)));
            }
        }
    }
    SubspacePattern::new(classes)
}

pub fn is_closed(op: OpKind, p: &SubspacePattern) -> bool {
    pattern_compose(op, p, p).is_within(p)
}

/// A 15×15 type table in [`QType::ORDER`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeTable {
    pub cells: [[QType; 15]; 15],
}

impl TypeTable {
    pub fn generate(op: OpKind) -> TypeTable {
        let mut cells = [[QType::EMPTY; 15]; 15];
        for (i, row) in QType::ORDER.iter().enumerate() {
            for (j, col) in QType::ORDER.iter().enumerate() {
                cells[i][j] = qtype_compose(op, *row, *col);
            }
        }
        TypeTable { cells }
    }

    pub fn cell(&self, row: QType, col: QType) -> Option<QType> {
        Some(self.cells[row.index()?][col.index()?])
    }
}

/// Precomputed composition table.
pub fn emit_table(op: OpKind) -> &'static TypeTable {
    static TABLES: OnceLock<[TypeTable; 3]> = OnceLock::new();
    let tables = TABLES.get_or_init(|| OpKind::ALL.map(TypeTable::generate));
    match op {
        OpKind::Commutator => &tables[0],
        OpKind::Anticommutator => &tables[1],
        OpKind::GeometricProduct => &tables[2],
    }
}
