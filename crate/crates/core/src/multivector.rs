//! Sparse multivectors over the real or complex Clifford algebra.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::blade::{canonical_sign, Blade, Signature};
use crate::error::{Error, Result};

/// Coefficient type. Real multivectors keep `im` pinned to zero.
pub type Scalar = Complex64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    Real,
    Complex,
}

impl FieldTag {
    /// Smallest field containing both.
    pub fn join(self, other: FieldTag) -> FieldTag {
        if self == FieldTag::Complex || other == FieldTag::Complex {
            FieldTag::Complex
        } else {
            FieldTag::Real
        }
    }
}

/// A finite sum of basis blades with scalar coefficients.
///
/// Only exact zeros are dropped; tiny coefficients survive until a
/// tolerance test such as [`Multivector::is_zero`].
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector {
    sig: Signature,
    field: FieldTag,
    terms: BTreeMap<Blade, Scalar>,
}

fn is_exact_zero(c: Scalar) -> bool {
    c.re == 0.0 && c.im == 0.0
}

fn abs1(c: Scalar) -> f64 {
    c.re.abs() + c.im.abs()
}

impl Multivector {
    pub fn zero(sig: Signature, field: FieldTag) -> Self {
        Multivector { sig, field, terms: BTreeMap::new() }
    }

    /// The identity element `e`.
    pub fn identity(sig: Signature, field: FieldTag) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Blade::IDENTITY, Scalar::new(1.0, 0.0));
        Multivector { sig, field, terms }
    }

    pub fn scalar(sig: Signature, field: FieldTag, c: Scalar) -> Result<Self> {
        Self::from_terms(sig, field, [(Blade::IDENTITY, c)])
    }

    pub fn from_blade(sig: Signature, field: FieldTag, blade: Blade, c: Scalar) -> Result<Self> {
        Self::from_terms(sig, field, [(blade, c)])
    }

    /// Sums the given terms. Repeated blades accumulate.
    pub fn from_terms<I>(sig: Signature, field: FieldTag, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Blade, Scalar)>,
    {
        let mut out = Multivector::zero(sig, field);
        for (blade, c) in terms {
            sig.check(blade)?;
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::NonFinite);
            }
            if field == FieldTag::Real && c.im != 0.0 {
                return Err(Error::ImaginaryInReal);
            }
            // First occurrence is stored as is so signed zeros survive.
            match out.terms.entry(blade) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => *e.get_mut() += c,
            }
        }
        out.normalize();
        Ok(out)
    }

    fn from_map(sig: Signature, field: FieldTag, terms: BTreeMap<Blade, Scalar>) -> Self {
        let mut out = Multivector { sig, field, terms };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        let real = self.field == FieldTag::Real;
        self.terms.retain(|_, c| {
            if real {
                c.im = 0.0;
            }
            !is_exact_zero(*c)
        });
    }

    pub fn sig(&self) -> Signature {
        self.sig
    }

    pub fn field(&self) -> FieldTag {
        self.field
    }

    /// Nonzero terms in blade-mask order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, Scalar)> + '_ {
        self.terms.iter().map(|(b, c)| (*b, *c))
    }

    pub fn coefficient(&self, blade: Blade) -> Scalar {
        self.terms.get(&blade).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same element viewed in the complex algebra.
    pub fn to_complex(&self) -> Self {
        Multivector { sig: self.sig, field: FieldTag::Complex, terms: self.terms.clone() }
    }

    pub fn with_field(&self, field: FieldTag) -> Result<Self> {
        Self::from_terms(self.sig, field, self.terms())
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch(self.sig.to_string(), other.sig.to_string()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut terms = self.terms.clone();
        for (b, c) in &other.terms {
            *terms.entry(*b).or_default() += *c;
        }
        Ok(Self::from_map(self.sig, self.field, terms))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(b, c)| (*b, -*c)).collect();
        Self::from_map(self.sig, self.field, terms)
    }

    pub fn scale(&self, c: Scalar) -> Result<Self> {
        if !c.re.is_finite() || !c.im.is_finite() {
            return Err(Error::NonFinite);
        }
        if self.field == FieldTag::Real && c.im != 0.0 {
            return Err(Error::ImaginaryInReal);
        }
        let terms = self.terms.iter().map(|(b, x)| (*b, *x * c)).collect();
        Ok(Self::from_map(self.sig, self.field, terms))
    }

    pub fn scale_real(&self, x: f64) -> Self {
        let terms = self.terms.iter().map(|(b, c)| (*b, *c * x)).collect();
        Self::from_map(self.sig, self.field, terms)
    }

    /// Clifford product, bilinear extension of the blade product.
    pub fn geometric_product(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let sig = self.sig;
        let pairs = self.terms.len() * other.terms.len();
        if pairs * 4 < sig.dim() {
            let mut acc: BTreeMap<Blade, Scalar> = BTreeMap::new();
            for (a, x) in &self.terms {
                for (b, y) in &other.terms {
                    let (s, r) = canonical_sign(*a, *b, sig);
                    *acc.entry(r).or_default() += *x * *y * f64::from(s);
                }
            }
            return Ok(Self::from_map(sig, self.field, acc));
        }
        let mut dense = vec![Scalar::new(0.0, 0.0); sig.dim()];
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let (s, r) = canonical_sign(*a, *b, sig);
                let prod = *x * *y;
                if s > 0 {
                    dense[r.mask() as usize] += prod;
                } else {
                    dense[r.mask() as usize] -= prod;
                }
            }
        }
        let terms = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !is_exact_zero(*c))
            .map(|(m, c)| (Blade::from_mask(m as u32), c))
            .collect();
        Ok(Self::from_map(sig, self.field, terms))
    }

    /// `[U, V] = UV - VU`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.geometric_product(other)?.try_sub(&other.geometric_product(self)?)
    }

    /// `{U, V} = UV + VU`.
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.geometric_product(other)?.try_add(&other.geometric_product(self)?)
    }

    fn retain<F: Fn(Blade) -> bool>(&self, keep: F) -> Self {
        let terms = self.terms.iter().filter(|(b, _)| keep(**b)).map(|(b, c)| (*b, *c)).collect();
        Multivector { sig: self.sig, field: self.field, terms }
    }

    /// Rank-`k` part.
    pub fn grade_project(&self, k: usize) -> Result<Self> {
        if k > self.sig.n() {
            return Err(Error::RankOutOfRange { k, n: self.sig.n() });
        }
        Ok(self.retain(|b| b.grade() == k))
    }

    pub fn parity_project(&self, even: bool) -> Self {
        self.retain(|b| b.is_even() == even)
    }

    /// Part whose grades are congruent to `residue` mod 4. The residue is
    /// itself reduced mod 4.
    pub fn qtype_project(&self, residue: usize) -> Self {
        let r = residue % 4;
        self.retain(|b| b.residue() == r)
    }

    pub fn real_part(&self) -> Self {
        let terms = self.terms.iter().map(|(b, c)| (*b, Scalar::new(c.re, 0.0))).collect();
        Self::from_map(self.sig, self.field, terms)
    }

    /// Imaginary coefficients as a (field-preserving) real-valued multivector.
    pub fn imag_part(&self) -> Self {
        let terms = self.terms.iter().map(|(b, c)| (*b, Scalar::new(c.im, 0.0))).collect();
        Self::from_map(self.sig, self.field, terms)
    }

    /// `(lambda e^{a1}...e^{ak})^* = conj(lambda) e^{ak}...e^{a1}`.
    pub fn clifford_conjugate(&self) -> Self {
        let terms = self.terms.iter().map(|(b, c)| (*b, c.conj() * f64::from(b.reversal_sign()))).collect();
        Self::from_map(self.sig, self.field, terms)
    }

    /// Max over terms of `|re| + |im|`.
    pub fn inf_norm(&self) -> f64 {
        self.terms.values().map(|c| abs1(*c)).fold(0.0, f64::max)
    }

    /// Sum over terms of `|re| + |im|`; submultiplicative under the
    /// geometric product.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|c| abs1(*c)).sum()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.inf_norm() <= tol
    }

    /// `inf_norm(self - other)`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.try_sub(other)?.inf_norm())
    }

    /// Exponential by truncated power series with scaling and squaring.
    ///
    /// The argument is halved until its l1 norm (and hence its inf norm) is
    /// at most 1. Summation stops once the next term's inf norm drops below
    /// `eps * (1 + inf_norm(partial sum))`.
    pub fn exp(&self, eps: f64, max_terms: usize) -> Result<Self> {
        if eps.is_nan() || eps <= 0.0 {
            return Err(Error::InvalidConfig(format!("exp tolerance must be positive, got {eps}")));
        }
        let mut squarings = 0u32;
        let mut norm = self.l1_norm();
        while norm > 1.0 {
            norm /= 2.0;
            squarings += 1;
        }
        let scaled = self.scale_real(0.5f64.powi(squarings as i32));
        let mut sum = Multivector::identity(self.sig, self.field);
        let mut term = sum.clone();
        let mut converged = false;
        for m in 1..=max_terms {
            term = term.geometric_product(&scaled)?.scale_real(1.0 / m as f64);
            let small = term.inf_norm() < eps * (1.0 + sum.inf_norm());
            sum = sum.try_add(&term)?;
            if small {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::ConvergenceFailure { max_terms });
        }
        for _ in 0..squarings {
            sum = sum.geometric_product(&sum)?;
        }
        if sum.terms.values().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(sum)
    }
}

/// Expression text: terms by grade then mask, joined by ` + ` / ` - `.
/// Real coefficients print bare (`2e12`, `-e1`, `0.5`); complex ones print
/// as `(re+imi)`. Numbers use the shortest decimal that round-trips and
/// never an exponent, so the text parses back to the same bits.
impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(Blade, Scalar)> = self.terms().collect();
        terms.sort_by_key(|(b, _)| (b.grade(), b.mask()));
        for (i, (b, c)) in terms.iter().enumerate() {
            let blade = if *b == Blade::IDENTITY { String::new() } else { b.to_string() };
            if c.im == 0.0 {
                let negative = c.re.is_sign_negative();
                let mag = c.re.abs();
                let body = if mag == 1.0 && !blade.is_empty() { blade } else { format!("{mag}{blade}") };
                match (i, negative) {
                    (0, false) => f.write_str(&body)?,
                    (0, true) => write!(f, "-{body}")?,
                    (_, false) => write!(f, " + {body}")?,
                    (_, true) => write!(f, " - {body}")?,
                }
            } else {
                if i > 0 {
                    f.write_str(" + ")?;
                }
                let sign = if c.im.is_sign_negative() { '-' } else { '+' };
                write!(f, "({}{}{}i){}", c.re, sign, c.im.abs(), blade)?;
            }
        }
        Ok(())
    }
}
