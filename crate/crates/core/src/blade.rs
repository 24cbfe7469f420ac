//! Canonical basis blades of Cl(p,q) encoded as bitmasks.
//!
//! Generator `e^i` (1-based) lives in bit `i-1`. A blade mask lists its
//! generators in ascending order, so `0b101` is `e^{13}` and `0` is the
//! identity `e`. Generators `1..=p` square to `+e`, generators `p+1..=n`
//! square to `-e`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported generator count (4096 blades).
pub const MAX_GENERATORS: usize = 12;

/// Metric signature `(p, q)` of a nondegenerate Clifford algebra.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSignature", into = "RawSignature")]
pub struct Signature {
    p: u8,
    q: u8,
}

#[derive(Serialize, Deserialize)]
struct RawSignature {
    p: usize,
    q: usize,
}

impl TryFrom<RawSignature> for Signature {
    type Error = Error;
    fn try_from(raw: RawSignature) -> Result<Self> {
        Signature::new(raw.p, raw.q)
    }
}

impl From<Signature> for RawSignature {
    fn from(sig: Signature) -> Self {
        RawSignature { p: sig.p(), q: sig.q() }
    }
}

impl Signature {
    pub fn new(p: usize, q: usize) -> Result<Self> {
        let n = p.checked_add(q).ok_or(Error::InvalidSignature { p, q })?;
        if n == 0 || n > MAX_GENERATORS {
            return Err(Error::InvalidSignature { p, q });
        }
        Ok(Signature { p: p as u8, q: q as u8 })
    }

    pub fn p(self) -> usize {
        self.p as usize
    }

    pub fn q(self) -> usize {
        self.q as usize
    }

    pub fn n(self) -> usize {
        self.p() + self.q()
    }

    /// Number of basis blades, `2^n`.
    pub fn dim(self) -> usize {
        1 << self.n()
    }

    /// Diagonal metric entry for the 1-based generator index `i`.
    pub fn metric(self, i: usize) -> i8 {
        assert!((1..=self.n()).contains(&i), "generator index {i} out of range");
        if i <= self.p() {
            1
        } else {
            -1
        }
    }

    /// Mask of the generators that square to `-e`.
    pub fn negative_mask(self) -> u32 {
        ((1u32 << self.q()) - 1) << self.p()
    }

    pub fn contains(self, blade: Blade) -> bool {
        (blade.0 as usize) < self.dim()
    }

    pub fn check(self, blade: Blade) -> Result<Blade> {
        if self.contains(blade) {
            Ok(blade)
        } else {
            Err(Error::BladeOutOfRange { mask: blade.0, n: self.n() })
        }
    }

    /// All `2^n` blades in mask order.
    pub fn blades(self) -> impl Iterator<Item = Blade> + Clone {
        (0..self.dim() as u32).map(Blade)
    }

    /// Blades of grade `k`.
    pub fn blades_of_grade(self, k: usize) -> impl Iterator<Item = Blade> + Clone {
        self.blades().filter(move |b| b.grade() == k)
    }

    /// Blades whose grade is congruent to `residue` mod 4.
    pub fn blades_of_residue(self, residue: usize) -> impl Iterator<Item = Blade> + Clone {
        self.blades().filter(move |b| b.residue() == residue % 4)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

/// A canonical basis blade `e^{a1...ak}`, `a1 < ... < ak`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Blade(u32);

impl Blade {
    pub const IDENTITY: Blade = Blade(0);

    pub const fn from_mask(mask: u32) -> Self {
        Blade(mask)
    }

    /// The single generator `e^i`, `i` 1-based.
    pub fn generator(i: usize) -> Self {
        assert!((1..=MAX_GENERATORS).contains(&i), "generator index {i} out of range");
        Blade(1 << (i - 1))
    }

    /// Builds a blade from strictly increasing 1-based indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        let mut last = 0usize;
        for &i in indices {
            if i == 0 || i > MAX_GENERATORS {
                return Err(Error::GeneratorOutOfRange { index: i, n: MAX_GENERATORS });
            }
            if i <= last {
                return Err(Error::NonIncreasingIndices);
            }
            mask |= 1 << (i - 1);
            last = i;
        }
        Ok(Blade(mask))
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub const fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Quaternion-type residue: grade mod 4.
    pub const fn residue(self) -> usize {
        self.grade() % 4
    }

    pub fn is_even(self) -> bool {
        self.grade() % 2 == 0
    }

    /// Ascending 1-based generator indices.
    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|b| self.0 & (1 << b) != 0).map(|b| b + 1).collect()
    }

    /// Sign picked up by reversing the generator order, `(-1)^{g(g-1)/2}`.
    pub const fn reversal_sign(self) -> i8 {
        let g = self.grade();
        if (g * g.saturating_sub(1) / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("e");
        }
        let idx = self.indices();
        if idx.iter().all(|&i| i <= 9) {
            f.write_str("e")?;
            for i in idx {
                write!(f, "{i}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
            write!(f, "e{{{}}}", parts.join(","))
        }
    }
}

/// Sign from sorting the concatenated generator list of `a` then `b` into
/// ascending order: `(-1)^T`, `T` = number of pairs `(j in a, i in b)` with `j > i`.
pub fn reorder_sign(a: Blade, b: Blade) -> i8 {
    let mut higher = a.0 >> 1;
    let mut swaps = 0u32;
    while higher != 0 {
        swaps += (higher & b.0).count_ones();
        higher >>= 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Product of the metric entries of the generators shared by `a` and `b`.
pub fn metric_sign(a: Blade, b: Blade, sig: Signature) -> i8 {
    if (a.0 & b.0 & sig.negative_mask()).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `E_a E_b = sign * E_{a xor b}`.
pub fn canonical_sign(a: Blade, b: Blade, sig: Signature) -> (i8, Blade) {
    (reorder_sign(a, b) * metric_sign(a, b, sig), Blade(a.0 ^ b.0))
}
