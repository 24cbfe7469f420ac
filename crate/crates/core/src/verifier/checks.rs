use crate::blade::{Blade, Signature};
use crate::error::Result;
use crate::multivector::{FieldTag, Multivector, Scalar};
use crate::qtype::{detect_qtype, emit_table, pattern_compose, Bracket, MainTable, OpKind, QType, SubspacePattern};

use super::rng::{sub_seed, SplitMix64};
use super::sample::{integer_rank_sample, integer_sample, pattern_basis, unit_sample};
use super::{combine, CheckConfig, CheckReport, Counterexample, Strategy, Tally, GROUP_TOL};

fn pat(s: &str) -> SubspacePattern {
    s.parse().expect("static pattern")
}

fn op_name(op: OpKind) -> &'static str {
    match op {
        OpKind::Commutator => "commutator",
        OpKind::Anticommutator => "anticommutator",
        OpKind::GeometricProduct => "product",
    }
}

fn field_name(field: FieldTag) -> &'static str {
    match field {
        FieldTag::Real => "R",
        FieldTag::Complex => "C",
    }
}

fn apply(op: OpKind, u: &Multivector, v: &Multivector) -> Multivector {
    op.apply(u, v).expect("operands share signature and field")
}

/// Checks `op(lhs, rhs) ⊆ target` on basis pairs or on integer samples.
#[allow(clippy::too_many_arguments)]
fn relation(
    t: &mut Tally,
    cfg: &CheckConfig,
    rng: &mut SplitMix64,
    op: OpKind,
    lhs: &SubspacePattern,
    rhs: &SubspacePattern,
    target: &SubspacePattern,
    field: FieldTag,
) {
    let sig = cfg.sig;
    match cfg.strategy {
        Strategy::Exhaustive => {
            let left = pattern_basis(sig, lhs, field);
            let right = pattern_basis(sig, rhs, field);
            for u in &left {
                for v in &right {
                    t.case();
                    let w = apply(op, u, v);
                    t.leak(op_name(op), u, v, target.leak(&w, 0.0));
                }
            }
        }
        Strategy::Random => {
            for _ in 0..cfg.samples {
                let u = integer_sample(rng, sig, lhs, field);
                let v = integer_sample(rng, sig, rhs, field);
                t.case();
                let w = apply(op, &u, &v);
                t.leak(op_name(op), &u, &v, target.leak(&w, cfg.tol));
            }
        }
    }
}

fn strategy_note(cfg: &CheckConfig) -> String {
    match cfg.strategy {
        Strategy::Exhaustive => {
            "exhaustive over basis pairs (complete: the operation is bilinear and projections are linear)".into()
        }
        Strategy::Random => format!("{} integer samples per relation, coefficients in [-3,3]", cfg.samples),
    }
}

/// Main-type composition rules of `bracket` on Cl(p,q).
pub fn check_quaternion_axioms(bracket: Bracket, cfg: &CheckConfig) -> CheckReport {
    check_quaternion_axioms_with(bracket, &MainTable::for_bracket(bracket), cfg)
}

/// As [`check_quaternion_axioms`] against an arbitrary table; a wrong table
/// must fail.
pub fn check_quaternion_axioms_with(bracket: Bracket, table: &MainTable, cfg: &CheckConfig) -> CheckReport {
    let op = OpKind::from(bracket);
    let name = format!("axioms/{}", op_name(op));
    let mut rng = SplitMix64::new(sub_seed(cfg.seed, &name));
    let mut t = Tally::new(name);
    for a in 0..4 {
        for b in 0..4 {
            let target = SubspacePattern::real(QType::main(table.get(a, b)));
            let (lhs, rhs) = (SubspacePattern::real(QType::main(a)), SubspacePattern::real(QType::main(b)));
            relation(&mut t, cfg, &mut rng, op, &lhs, &rhs, &target, FieldTag::Real);
        }
    }
    t.note(strategy_note(cfg));
    t.finish()
}

/// Both bracket axioms as one report.
pub fn check_axioms(cfg: &CheckConfig) -> CheckReport {
    combine(
        "axioms",
        vec![check_quaternion_axioms(Bracket::Commutator, cfg), check_quaternion_axioms(Bracket::Anticommutator, cfg)],
    )
}

/// Residue mod 4 of the grades in a bracket of a rank-`k` and a rank-`l`
/// element. With `hi >= lo` the ranks sorted, the commutator lands in
/// `hi-lo (+4, +8, ...)` when `hi` is even and `lo` odd and in
/// `hi-lo+2 (+4, ...)` otherwise; the anticommutator the other way round.
pub fn grade_residue(bracket: Bracket, k: usize, l: usize) -> usize {
    let (hi, lo) = if k >= l { (k, l) } else { (l, k) };
    let special = hi % 2 == 0 && lo % 2 == 1;
    let base = hi - lo;
    let s = match (bracket, special) {
        (Bracket::Commutator, true) | (Bracket::Anticommutator, false) => base,
        _ => base + 2,
    };
    s % 4
}

/// Grade ranges of brackets of homogeneous elements, all `k, l <= n`.
pub fn check_grade_pattern(cfg: &CheckConfig) -> CheckReport {
    let name = "grades";
    let mut rng = SplitMix64::new(sub_seed(cfg.seed, name));
    let mut t = Tally::new(name);
    let sig = cfg.sig;
    let brackets = [Bracket::Commutator, Bracket::Anticommutator];
    let check = |t: &mut Tally, u: &Multivector, v: &Multivector, k: usize, l: usize, tol: f64| {
        for b in brackets {
            t.case();
            let w = b.apply(u, v).expect("same algebra");
            let allowed = SubspacePattern::real(QType::main(grade_residue(b, k, l)));
            let label = format!("{} (k={k}, l={l})", op_name(b.into()));
            t.leak(&label, u, v, allowed.leak(&w, tol));
        }
    };
    match cfg.strategy {
        Strategy::Exhaustive => {
            for a in sig.blades() {
                let u = blade(sig, a);
                for b in sig.blades() {
                    let v = blade(sig, b);
                    check(&mut t, &u, &v, a.grade(), b.grade(), 0.0);
                }
            }
        }
        Strategy::Random => {
            for k in 0..=sig.n() {
                for l in 0..=sig.n() {
                    for _ in 0..cfg.samples {
                        let u = integer_rank_sample(&mut rng, sig, k);
                        let v = integer_rank_sample(&mut rng, sig, l);
                        check(&mut t, &u, &v, k, l, cfg.tol);
                    }
                }
            }
        }
    }
    t.note(strategy_note(cfg));
    t.finish()
}

fn blade(sig: Signature, b: Blade) -> Multivector {
    Multivector::from_blade(sig, FieldTag::Real, b, Scalar::new(1.0, 0.0)).expect("blade of the algebra")
}

/// Soundness of the 15×15 type table of `op`, with tightness measured.
///
/// Tightness (every residue of a cell realized by some case) depends on the
/// signature and is reported in the notes, never asserted.
pub fn check_type_table(op: OpKind, cfg: &CheckConfig) -> CheckReport {
    let name = format!("tables/{}", op_name(op));
    let mut rng = SplitMix64::new(sub_seed(cfg.seed, &name));
    let mut t = Tally::new(name);
    let table = emit_table(op);
    let sig = cfg.sig;
    let mut observed = [[QType::EMPTY; 15]; 15];

    match cfg.strategy {
        Strategy::Exhaustive => {
            // Blade pairs are evaluated once; each cell is the union of the
            // residue pairs it covers.
            let mut by_residue = [[QType::EMPTY; 4]; 4];
            let mut witness: [[Option<(Blade, Blade)>; 4]; 4] = [[None; 4]; 4];
            for a in sig.blades() {
                let u = blade(sig, a);
                for b in sig.blades() {
                    let v = blade(sig, b);
                    t.case();
                    let found = detect_qtype(&apply(op, &u, &v), 0.0);
                    let cell = &mut by_residue[a.residue()][b.residue()];
                    if !found.is_subset(*cell) {
                        *cell = cell.union(found);
                        witness[a.residue()][b.residue()] = Some((a, b));
                    }
                }
            }
            for (i, row) in QType::ORDER.iter().enumerate() {
                for (j, col) in QType::ORDER.iter().enumerate() {
                    let allowed = SubspacePattern::real(table.cells[i][j]);
                    for ra in row.residues() {
                        for rb in col.residues() {
                            observed[i][j] = observed[i][j].union(by_residue[ra][rb]);
                            if t.failed() || by_residue[ra][rb].is_subset(table.cells[i][j]) {
                                continue;
                            }
                            let (a, b) = witness[ra][rb].expect("recorded with the residue set");
                            let (u, v) = (blade(sig, a), blade(sig, b));
                            t.leak(op_name(op), &u, &v, allowed.leak(&apply(op, &u, &v), 0.0));
                        }
                    }
                }
            }
            t.note(format!("exhaustive over {} blade pairs, 225 cells assembled by residue", sig.dim() * sig.dim()));
        }
        Strategy::Random => {
            for (i, row) in QType::ORDER.iter().enumerate() {
                for (j, col) in QType::ORDER.iter().enumerate() {
                    let allowed = SubspacePattern::real(table.cells[i][j]);
                    let (lhs, rhs) = (SubspacePattern::real(*row), SubspacePattern::real(*col));
                    for _ in 0..cfg.samples {
                        let u = integer_sample(&mut rng, sig, &lhs, FieldTag::Real);
                        let v = integer_sample(&mut rng, sig, &rhs, FieldTag::Real);
                        t.case();
                        let w = apply(op, &u, &v);
                        observed[i][j] = observed[i][j].union(detect_qtype(&w, cfg.tol));
                        t.leak(op_name(op), &u, &v, allowed.leak(&w, cfg.tol));
                    }
                }
            }
            t.note(strategy_note(cfg));
        }
    }

    let mut tight_cells = 0;
    let (mut realized, mut claimed) = (0, 0);
    for (seen_row, cell_row) in observed.iter().zip(&table.cells) {
        for (&seen, &cell) in seen_row.iter().zip(cell_row) {
            realized += seen.len().min(cell.len());
            claimed += cell.len();
            if cell.is_subset(seen) {
                tight_cells += 1;
            }
        }
    }
    t.note(format!(
        "tightness: {tight_cells}/225 cells fully realized, {realized}/{claimed} residues ({:.1}%)",
        100.0 * realized as f64 / claimed as f64
    ));
    t.finish()
}

/// Subspaces claimed closed, as `(operation, field, pattern)`.
pub const SUBALGEBRA_CLAIMS: &[(OpKind, FieldTag, &str)] = &[
    // real even subalgebra
    (OpKind::GeometricProduct, FieldTag::Real, "02"),
    // product subalgebras of the complex algebra
    (OpKind::GeometricProduct, FieldTag::Complex, "02"),
    (OpKind::GeometricProduct, FieldTag::Complex, "02+i02"),
    (OpKind::GeometricProduct, FieldTag::Complex, "02+i13"),
    (OpKind::GeometricProduct, FieldTag::Complex, "0123"),
    // real Lie algebras
    (OpKind::Commutator, FieldTag::Real, "2"),
    (OpKind::Commutator, FieldTag::Real, "02"),
    (OpKind::Commutator, FieldTag::Real, "12"),
    (OpKind::Commutator, FieldTag::Real, "23"),
    // complex Lie algebras
    (OpKind::Commutator, FieldTag::Complex, "2"),
    (OpKind::Commutator, FieldTag::Complex, "02"),
    (OpKind::Commutator, FieldTag::Complex, "12"),
    (OpKind::Commutator, FieldTag::Complex, "23"),
    (OpKind::Commutator, FieldTag::Complex, "0123"),
    (OpKind::Commutator, FieldTag::Complex, "02+i02"),
    (OpKind::Commutator, FieldTag::Complex, "12+i12"),
    (OpKind::Commutator, FieldTag::Complex, "23+i23"),
    (OpKind::Commutator, FieldTag::Complex, "2+i0"),
    (OpKind::Commutator, FieldTag::Complex, "2+i1"),
    (OpKind::Commutator, FieldTag::Complex, "2+i2"),
    (OpKind::Commutator, FieldTag::Complex, "2+i3"),
    (OpKind::Commutator, FieldTag::Complex, "02+i13"),
    (OpKind::Commutator, FieldTag::Complex, "12+i03"),
    (OpKind::Commutator, FieldTag::Complex, "23+i01"),
    // real anticommutator algebras
    (OpKind::Anticommutator, FieldTag::Real, "0"),
    (OpKind::Anticommutator, FieldTag::Real, "01"),
    (OpKind::Anticommutator, FieldTag::Real, "02"),
    (OpKind::Anticommutator, FieldTag::Real, "03"),
    // complex anticommutator algebras
    (OpKind::Anticommutator, FieldTag::Complex, "0"),
    (OpKind::Anticommutator, FieldTag::Complex, "01"),
    (OpKind::Anticommutator, FieldTag::Complex, "02"),
    (OpKind::Anticommutator, FieldTag::Complex, "03"),
    (OpKind::Anticommutator, FieldTag::Complex, "0123"),
    (OpKind::Anticommutator, FieldTag::Complex, "01+i01"),
    (OpKind::Anticommutator, FieldTag::Complex, "02+i02"),
    (OpKind::Anticommutator, FieldTag::Complex, "03+i03"),
    (OpKind::Anticommutator, FieldTag::Complex, "0+i0"),
    (OpKind::Anticommutator, FieldTag::Complex, "0+i1"),
    (OpKind::Anticommutator, FieldTag::Complex, "0+i2"),
    (OpKind::Anticommutator, FieldTag::Complex, "0+i3"),
    (OpKind::Anticommutator, FieldTag::Complex, "01+i23"),
    (OpKind::Anticommutator, FieldTag::Complex, "02+i13"),
    (OpKind::Anticommutator, FieldTag::Complex, "03+i12"),
];

fn abstract_closure(t: &mut Tally, op: OpKind, lhs: &SubspacePattern, rhs: &SubspacePattern, target: &SubspacePattern) {
    let composed = pattern_compose(op, lhs, rhs);
    if composed.is_within(target) {
        return;
    }
    let r = (0..4).find(|r| !composed.class(*r).is_within(target.class(*r))).expect("some residue exceeds");
    t.fail(Counterexample {
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        operation: format!("pattern_compose({})", op_name(op)),
        projection: format!("{:?} at residue {r}, allowed {:?}", composed.class(r), target.class(r)),
        magnitude: 1.0,
    });
}

/// Closure of one subspace under `op`, abstractly and on elements.
pub fn check_closure(op: OpKind, pattern: &SubspacePattern, field: FieldTag, cfg: &CheckConfig) -> CheckReport {
    let name = format!("closure {} {} {}", op_name(op), field_name(field), pattern);
    let mut rng = SplitMix64::new(sub_seed(cfg.seed, &name));
    let mut t = Tally::new(name);
    relation(&mut t, cfg, &mut rng, op, pattern, pattern, pattern, field);
    abstract_closure(&mut t, op, pattern, pattern, pattern);
    t.note(strategy_note(cfg));
    t.finish()
}

/// Every claimed product, commutator and anticommutator subalgebra.
pub fn check_subalgebra_theorems(cfg: &CheckConfig) -> Vec<CheckReport> {
    SUBALGEBRA_CLAIMS.iter().map(|(op, field, p)| check_closure(*op, &pat(p), *field, cfg)).collect()
}

/// `u* + u = 0` in pattern form: `i0̄ ⊕ i1̄ ⊕ 2̄ ⊕ 3̄`.
pub fn lie_algebra_pattern() -> SubspacePattern {
    pat("23+i01")
}

pub fn is_pseudo_unitary(u: &Multivector, tol: f64) -> bool {
    unitarity_error(u) <= tol
}

/// `inf_norm(U* U - e)`.
pub fn unitarity_error(u: &Multivector) -> f64 {
    let gram = u.clifford_conjugate().geometric_product(u).expect("same algebra");
    gram.distance(&Multivector::identity(u.sig(), u.field())).expect("same algebra")
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LieMembership {
    /// `inf_norm(u* + u) <= tol`.
    pub by_definition: bool,
    /// `u` matches `i0̄ ⊕ i1̄ ⊕ 2̄ ⊕ 3̄` at `tol`.
    pub by_pattern: bool,
}

pub fn lie_membership(u: &Multivector, tol: f64) -> LieMembership {
    let anti = u.clifford_conjugate().try_add(u).expect("same algebra");
    LieMembership { by_definition: anti.inf_norm() <= tol, by_pattern: lie_algebra_pattern().matches(u, tol) }
}

/// Membership in the Lie algebra of the pseudo-unitary group.
pub fn is_in_wc(u: &Multivector, tol: f64) -> bool {
    lie_membership(u, tol).by_definition
}

/// The Lie algebra is of quaternion type under the commutator with
/// `E = 2̄`, `I = 3̄`, `J = i0̄`, `K = i1̄`; all 16 ordered pairs are checked.
pub fn check_lie_quaternion(cfg: &CheckConfig) -> CheckReport {
    let name = "lie-quaternion";
    let mut rng = SplitMix64::new(sub_seed(cfg.seed, name));
    let mut t = Tally::new(name);
    let parts = [pat("2"), pat("3"), pat("i0"), pat("i1")];
    for x in 0..4 {
        for y in 0..4 {
            let target = &parts[x ^ y];
            relation(&mut t, cfg, &mut rng, OpKind::Commutator, &parts[x], &parts[y], target, FieldTag::Complex);
            abstract_closure(&mut t, OpKind::Commutator, &parts[x], &parts[y], target);
        }
    }
    t.note(strategy_note(cfg));
    t.finish()
}

/// Commutator subalgebras of the Lie algebra.
pub const LIE_SUBALGEBRAS: [&str; 4] = ["2", "2+i0", "2+i1", "23"];

/// Each Lie subalgebra is commutator-closed and anti-self-conjugate.
pub fn check_lie_subalgebras(cfg: &CheckConfig) -> Vec<CheckReport> {
    LIE_SUBALGEBRAS
        .iter()
        .map(|p| {
            let pattern = pat(p);
            let name = format!("lie-subalgebra {p}");
            let mut rng = SplitMix64::new(sub_seed(cfg.seed, &name));
            let mut t = Tally::new(name);
            let op = OpKind::Commutator;
            relation(&mut t, cfg, &mut rng, op, &pattern, &pattern, &pattern, FieldTag::Complex);
            abstract_closure(&mut t, op, &pattern, &pattern, &pattern);
            if !pattern.is_within(&lie_algebra_pattern()) {
                t.fail(Counterexample {
                    lhs: pattern.to_string(),
                    rhs: lie_algebra_pattern().to_string(),
                    operation: "pattern inclusion".into(),
                    projection: "components outside the Lie algebra".into(),
                    magnitude: 1.0,
                });
            }
            let elements = match cfg.strategy {
                Strategy::Exhaustive => pattern_basis(cfg.sig, &pattern, FieldTag::Complex),
                Strategy::Random => {
                    (0..cfg.samples).map(|_| integer_sample(&mut rng, cfg.sig, &pattern, FieldTag::Complex)).collect()
                }
            };
            for u in &elements {
                t.case();
                let anti = u.clifford_conjugate().try_add(u).expect("same algebra");
                if anti.inf_norm() > 0.0 {
                    t.fail(Counterexample {
                        lhs: u.to_string(),
                        rhs: "*".into(),
                        operation: "u* + u".into(),
                        projection: "all components".into(),
                        magnitude: anti.inf_norm(),
                    });
                }
            }
            t.note(strategy_note(cfg));
            t.finish()
        })
        .collect()
}

/// Lie subalgebra and the ambient pattern of the group its exponentials
/// generate.
pub const GROUP_ROWS: [(&str, &str); 4] = [("2", "02"), ("2+i0", "02+i02"), ("2+i1", "02+i13"), ("23", "0123")];

/// Exponentials of Lie subalgebra elements are pseudo-unitary and stay in
/// the claimed ambient subspace, both within [`GROUP_TOL`].
pub fn check_groups(cfg: &CheckConfig) -> Result<Vec<CheckReport>> {
    let sig = cfg.sig;
    GROUP_ROWS
        .iter()
        .map(|(alg, grp)| {
            let (algebra, group) = (pat(alg), pat(grp));
            let name = format!("group exp({alg}) in {grp}");
            let mut rng = SplitMix64::new(sub_seed(cfg.seed, &name));
            let mut t = Tally::new(name);
            let (mut worst_unitary, mut worst_leak) = (0.0f64, 0.0f64);
            for i in 0..cfg.samples {
                let u = if i == 0 {
                    Multivector::zero(sig, FieldTag::Complex)
                } else {
                    unit_sample(&mut rng, sig, &algebra, FieldTag::Complex)
                };
                t.case();
                // first-order condition (e + εu)*(e + εu) = e + ε(u* + u)
                let first_order = u.clifford_conjugate().try_add(&u).expect("same algebra").inf_norm();
                if first_order > 0.0 {
                    t.fail(Counterexample {
                        lhs: u.to_string(),
                        rhs: "*".into(),
                        operation: "u* + u".into(),
                        projection: "all components".into(),
                        magnitude: first_order,
                    });
                }
                let g = u.exp(cfg.exp_eps, cfg.exp_max_terms)?;
                let err = unitarity_error(&g);
                worst_unitary = worst_unitary.max(err);
                if err > GROUP_TOL {
                    t.fail(Counterexample {
                        lhs: u.to_string(),
                        rhs: g.to_string(),
                        operation: "U = exp(u), U* U - e".into(),
                        projection: "deviation from e".into(),
                        magnitude: err,
                    });
                }
                if let Some(leak) = group.leak(&g, 0.0) {
                    worst_leak = worst_leak.max(leak.magnitude);
                }
                t.leak("U = exp(u)", &u, &g, group.leak(&g, GROUP_TOL));
            }
            t.note(format!(
                "{} samples with inf_norm(u) <= 1; max |U*U - e| = {worst_unitary:e}, max leakage = {worst_leak:e}",
                cfg.samples
            ));
            Ok(t.finish())
        })
        .collect()
}

/// For n < 4 residues and ranks coincide.
pub fn check_rank_coincidence(cfg: &CheckConfig) -> CheckReport {
    let name = "rank";
    let sig = cfg.sig;
    if sig.n() >= 4 {
        return CheckReport::skipped(name, format!("n = {} >= 4: residue 0 also holds rank 4", sig.n()));
    }
    let mut t = Tally::new(name);
    let mut everything = Multivector::zero(sig, FieldTag::Real);
    for b in sig.blades() {
        let u = blade(sig, b);
        everything = everything.try_add(&u.scale_real(f64::from(b.mask() + 1))).expect("same algebra");
        t.case();
        let found = detect_qtype(&u, 0.0);
        if found != QType::main(b.grade()) {
            t.fail(Counterexample {
                lhs: u.to_string(),
                rhs: String::new(),
                operation: "detect_qtype".into(),
                projection: format!("type {found} vs rank {}", b.grade()),
                magnitude: 1.0,
            });
        }
    }
    let cases: Vec<Multivector> = sig.blades().map(|b| blade(sig, b)).chain(std::iter::once(everything)).collect();
    for u in &cases {
        for k in 0..4 {
            t.case();
            let by_type = u.qtype_project(k);
            let by_rank =
                if k <= sig.n() { u.grade_project(k).expect("k <= n") } else { Multivector::zero(sig, FieldTag::Real) };
            let diff = by_type.distance(&by_rank).expect("same algebra");
            if diff > 0.0 {
                t.fail(Counterexample {
                    lhs: u.to_string(),
                    rhs: String::new(),
                    operation: format!("qtype_project({k}) - grade_project({k})"),
                    projection: "difference".into(),
                    magnitude: diff,
                });
            }
        }
    }
    t.note(format!("exhaustive over {} blades plus their weighted sum", sig.dim()));
    t.finish()
}

/// Hamilton's relations in Cl(0,2) with `i = e1`, `j = e2`, `k = e12`,
/// independent of the configured signature.
pub fn check_quaternion_units() -> CheckReport {
    let sig = Signature::new(0, 2).expect("valid");
    let unit = |mask: u32, s: f64| {
        Multivector::from_blade(sig, FieldTag::Real, Blade::from_mask(mask), Scalar::new(s, 0.0)).expect("valid")
    };
    let (i, j, k) = (unit(0b01, 1.0), unit(0b10, 1.0), unit(0b11, 1.0));
    let minus_e = unit(0, -1.0);
    let relations: [(&str, &Multivector, &Multivector, Multivector); 9] = [
        ("ii", &i, &i, minus_e.clone()),
        ("jj", &j, &j, minus_e.clone()),
        ("kk", &k, &k, minus_e),
        ("ij", &i, &j, k.clone()),
        ("ji", &j, &i, k.neg()),
        ("jk", &j, &k, i.clone()),
        ("kj", &k, &j, i.neg()),
        ("ki", &k, &i, j.clone()),
        ("ik", &i, &k, j.neg()),
    ];
    let mut t = Tally::new("quaternions");
    for (label, a, b, expect) in &relations {
        t.case();
        let diff = a.geometric_product(b).expect("same algebra").distance(expect).expect("same algebra");
        if diff > 0.0 {
            t.fail(Counterexample {
                lhs: a.to_string(),
                rhs: b.to_string(),
                operation: format!("product {label}"),
                projection: format!("difference from {expect}"),
                magnitude: diff,
            });
        }
    }
    t.note("Cl(0,2) with i = e1, j = e2, k = e12");
    t.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtype::is_closed;
    use crate::verifier::Status;

    fn cfg(p: usize, q: usize) -> CheckConfig {
        CheckConfig::new(Signature::new(p, q).unwrap())
    }

    #[test]
    fn axioms_pass_exhaustively() {
        let c = cfg(2, 2);
        let r = check_quaternion_axioms(Bracket::Anticommutator, &c);
        assert_eq!((r.status, r.cases_run), (Status::Pass, 256));
        let r = check_quaternion_axioms(Bracket::Commutator, &cfg(1, 0));
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn corrupted_table_fails() {
        let table = MainTable::anticommutator().with_cell(1, 2, 0);
        let r = check_quaternion_axioms_with(Bracket::Anticommutator, &table, &cfg(3, 0));
        assert_eq!(r.status, Status::Fail);
        let ce = r.counterexample.unwrap();
        assert!(ce.magnitude > 0.0);
    }

    #[test]
    fn grade_residues() {
        assert_eq!(grade_residue(Bracket::Commutator, 2, 1), 1);
        assert_eq!(grade_residue(Bracket::Commutator, 1, 2), 1);
        assert_eq!(grade_residue(Bracket::Anticommutator, 3, 2), 1);
        assert_eq!(grade_residue(Bracket::Commutator, 3, 3), 2);
        assert_eq!(grade_residue(Bracket::Anticommutator, 2, 1), 3);
    }

    #[test]
    fn grade_pattern_blade_examples() {
        let s = Signature::new(3, 0).unwrap();
        let e12 = blade(s, Blade::from_mask(0b011));
        let e1 = blade(s, Blade::from_mask(0b001));
        let e123 = blade(s, Blade::from_mask(0b111));
        let w = e12.commutator(&e1).unwrap();
        assert_eq!(detect_qtype(&w, 0.0), QType::main(1));
        let w = e123.anticommutator(&e12).unwrap();
        assert_eq!(w, blade(s, Blade::from_mask(0b100)).scale_real(-2.0));
        assert_eq!(check_grade_pattern(&cfg(3, 1)).status, Status::Pass);
    }

    #[test]
    fn random_strategy_runs() {
        let mut c = cfg(2, 2);
        c.strategy = Strategy::Random;
        c.samples = 5;
        c.tol = 0.0;
        let r = check_grade_pattern(&c);
        assert_eq!((r.status, r.cases_run), (Status::Pass, 5 * 25 * 2));
        let r = check_quaternion_axioms(Bracket::Commutator, &c);
        assert_eq!((r.status, r.cases_run), (Status::Pass, 80));
    }

    #[test]
    fn type_tables_sound() {
        for op in OpKind::ALL {
            let r = check_type_table(op, &cfg(2, 2));
            assert_eq!(r.status, Status::Pass, "{r}");
            assert!(r.notes.contains("tightness"));
        }
    }

    #[test]
    fn closure_negative_controls() {
        let c = cfg(2, 2);
        let r = check_closure(OpKind::Commutator, &pat("1"), FieldTag::Real, &c);
        assert_eq!(r.status, Status::Fail);
        let r = check_closure(OpKind::Anticommutator, &pat("12"), FieldTag::Real, &c);
        assert_eq!(r.status, Status::Fail);
        let r = check_closure(OpKind::Commutator, &pat("2+i3"), FieldTag::Complex, &c);
        assert_eq!(r.status, Status::Pass);
    }

    #[test]
    fn abstract_failure_alone_still_fails() {
        // n = 1 has no residue-2 blades, so [1,1] cannot leak concretely
        let c = cfg(1, 0);
        let r = check_closure(OpKind::Commutator, &pat("1"), FieldTag::Real, &c);
        assert_eq!(r.status, Status::Fail);
        assert!(r.counterexample.unwrap().operation.starts_with("pattern_compose"));
    }

    #[test]
    fn claim_list_shape() {
        let count = |op: OpKind, f: FieldTag| SUBALGEBRA_CLAIMS.iter().filter(|c| c.0 == op && c.1 == f).count();
        assert_eq!(count(OpKind::GeometricProduct, FieldTag::Real), 1);
        assert_eq!(count(OpKind::GeometricProduct, FieldTag::Complex), 4);
        assert_eq!(count(OpKind::Commutator, FieldTag::Real), 4);
        assert_eq!(count(OpKind::Commutator, FieldTag::Complex), 15);
        assert_eq!(count(OpKind::Anticommutator, FieldTag::Real), 4);
        assert_eq!(count(OpKind::Anticommutator, FieldTag::Complex), 15);
        for (op, _, p) in SUBALGEBRA_CLAIMS {
            assert!(is_closed(*op, &pat(p)), "{op:?} {p}");
        }
    }

    #[test]
    fn unitary_examples() {
        let s = Signature::new(2, 0).unwrap();
        let e = Multivector::identity(s, FieldTag::Complex);
        assert!(is_pseudo_unitary(&e, 1e-12));
        let th: f64 = 0.7;
        let u = Multivector::from_terms(
            s,
            FieldTag::Complex,
            [(Blade::IDENTITY, Scalar::new(th.cos(), 0.0)), (Blade::from_mask(3), Scalar::new(th.sin(), 0.0))],
        )
        .unwrap();
        assert!(is_pseudo_unitary(&u, 1e-12));
        assert!(!is_pseudo_unitary(&e.scale_real(2.0), 1e-12));
    }

    #[test]
    fn lie_algebra_examples() {
        let s = Signature::new(2, 1).unwrap();
        let c = |m: u32, re: f64, im: f64| {
            Multivector::from_blade(s, FieldTag::Complex, Blade::from_mask(m), Scalar::new(re, im)).unwrap()
        };
        assert!(is_in_wc(&c(0, 0.0, 1.0), 0.0));
        assert!(is_in_wc(&c(0b11, 1.0, 0.0), 0.0));
        assert!(!is_in_wc(&c(0b1, 1.0, 0.0), 0.0));
        for u in [c(0, 0.0, 1.0), c(0b11, 1.0, 0.0), c(0b1, 1.0, 0.0), c(0b111, 0.0, 2.0)] {
            let m = lie_membership(&u, 0.0);
            assert_eq!(m.by_definition, m.by_pattern);
        }
    }

    #[test]
    fn lie_quaternion_relations() {
        let r = check_lie_quaternion(&cfg(2, 2));
        assert_eq!(r.status, Status::Pass, "{r}");
        // the ten listed relations are among the sixteen checked pairs
        let listed = [
            ("i0", "i0", "2"),
            ("i1", "i1", "2"),
            ("2", "2", "2"),
            ("3", "3", "2"),
            ("i0", "2", "i0"),
            ("i1", "2", "i1"),
            ("3", "2", "3"),
            ("i0", "i1", "3"),
            ("i0", "3", "i1"),
            ("i1", "3", "i0"),
        ];
        for (a, b, target) in listed {
            assert!(pattern_compose(OpKind::Commutator, &pat(a), &pat(b)).is_within(&pat(target)), "{a} {b}");
        }
    }

    #[test]
    fn lie_subalgebras_pass() {
        for r in check_lie_subalgebras(&cfg(2, 2)) {
            assert_eq!(r.status, Status::Pass, "{r}");
        }
    }

    #[test]
    fn groups_small_sample() {
        let mut c = cfg(2, 0);
        c.samples = 10;
        for r in check_groups(&c).unwrap() {
            assert_eq!(r.status, Status::Pass, "{r}");
        }
        c.exp_max_terms = 1;
        assert!(check_groups(&c).is_err());
    }

    #[test]
    fn exp_of_bivector_is_real_even_unitary() {
        let s = Signature::new(2, 0).unwrap();
        let u = Multivector::from_blade(s, FieldTag::Complex, Blade::from_mask(3), Scalar::new(0.3, 0.0)).unwrap();
        let g = u.exp(1e-14, 100).unwrap();
        assert!(is_pseudo_unitary(&g, 1e-9));
        assert!(pat("02").matches(&g, 1e-9));
    }

    #[test]
    fn rank_coincidence() {
        for (p, q) in [(1, 0), (0, 2), (2, 1), (0, 3)] {
            assert_eq!(check_rank_coincidence(&cfg(p, q)).status, Status::Pass);
        }
        assert_eq!(check_rank_coincidence(&cfg(4, 0)).status, Status::Skipped);
    }

    #[test]
    fn hamilton_relations() {
        let r = check_quaternion_units();
        assert_eq!((r.status, r.cases_run), (Status::Pass, 9));
    }
}
