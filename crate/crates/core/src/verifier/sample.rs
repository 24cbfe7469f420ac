use crate::blade::{Blade, Signature};
use crate::multivector::{FieldTag, Multivector, Scalar};
use crate::qtype::SubspacePattern;

use super::rng::SplitMix64;

/// Real basis of a pattern subspace: `E_b` for each allowed real
/// component and `i E_b` for each allowed imaginary one.
pub fn pattern_basis(sig: Signature, pattern: &SubspacePattern, field: FieldTag) -> Vec<Multivector> {
    let mut out = Vec::new();
    for b in sig.blades() {
        let class = pattern.class(b.residue());
        if class.allows_real() {
            out.push(unit(sig, field, b, Scalar::new(1.0, 0.0)));
        }
        if class.allows_imaginary() {
            out.push(unit(sig, field, b, Scalar::new(0.0, 1.0)));
        }
    }
    out
}

fn unit(sig: Signature, field: FieldTag, b: Blade, c: Scalar) -> Multivector {
    Multivector::from_blade(sig, field, b, c).expect("basis element fits the field")
}

fn sample_with<F>(sig: Signature, pattern: &SubspacePattern, field: FieldTag, mut draw: F) -> Multivector
where
    F: FnMut() -> f64,
{
    let mut terms = Vec::new();
    for b in sig.blades() {
        let class = pattern.class(b.residue());
        let re = if class.allows_real() { draw() } else { 0.0 };
        let im = if class.allows_imaginary() { draw() } else { 0.0 };
        terms.push((b, Scalar::new(re, im)));
    }
    Multivector::from_terms(sig, field, terms).expect("sample fits the field")
}

/// Integer coefficients in `[-3, 3]` on every allowed component.
pub fn integer_sample(rng: &mut SplitMix64, sig: Signature, pattern: &SubspacePattern, field: FieldTag) -> Multivector {
    sample_with(sig, pattern, field, || rng.int_in(-3, 3) as f64)
}

/// Uniform coefficients in `[-1, 1]` on every allowed component, so the
/// inf norm is at most 1.
pub fn unit_sample(rng: &mut SplitMix64, sig: Signature, pattern: &SubspacePattern, field: FieldTag) -> Multivector {
    sample_with(sig, pattern, field, || rng.unit())
}

/// Integer coefficients in `[-3, 3]` on every blade of grade `k`.
pub fn integer_rank_sample(rng: &mut SplitMix64, sig: Signature, k: usize) -> Multivector {
    let terms: Vec<_> = sig.blades_of_grade(k).map(|b| (b, Scalar::new(rng.int_in(-3, 3) as f64, 0.0))).collect();
    Multivector::from_terms(sig, FieldTag::Real, terms).expect("real sample")
}
