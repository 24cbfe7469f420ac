//! Hand-transcribed reference type tables and a diff against the tables
//! generated from the composition rules.
//!
//! Several transcribed cells disagree with the rules; the rules win and the
//! disagreements are reported, never patched.

use serde::Serialize;

use crate::qtype::{emit_table, OpKind, QType, TypeTable};

const GENERIC_QUATERNION: &str = include_str!("../data/generic_quaternion.tsv");
const ANTICOMMUTATOR: &str = include_str!("../data/anticommutator.tsv");
const PRODUCT: &str = include_str!("../data/product.tsv");

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ReferenceTable {
    /// Abstract `E, I, J, K` table, read with `(E, I, J, K) = (0̄, 1̄, 2̄, 3̄)`.
    GenericQuaternion,
    Anticommutator,
    Product,
}

impl ReferenceTable {
    pub const ALL: [ReferenceTable; 3] =
        [ReferenceTable::GenericQuaternion, ReferenceTable::Anticommutator, ReferenceTable::Product];

    /// Operation whose generated table the reference is compared against.
    pub fn op(self) -> OpKind {
        match self {
            ReferenceTable::GenericQuaternion | ReferenceTable::Anticommutator => OpKind::Anticommutator,
            ReferenceTable::Product => OpKind::GeometricProduct,
        }
    }

    pub fn table(self) -> TypeTable {
        let text = match self {
            ReferenceTable::GenericQuaternion => GENERIC_QUATERNION,
            ReferenceTable::Anticommutator => ANTICOMMUTATOR,
            ReferenceTable::Product => PRODUCT,
        };
        parse_tsv(text).expect("embedded reference table is well formed")
    }
}

/// Parses a tab-separated table whose header row and first column list the
/// 15 types in [`QType::ORDER`].
pub fn parse_tsv(text: &str) -> Option<TypeTable> {
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next()?.split('\t').skip(1).collect();
    if header.len() != 15 {
        return None;
    }
    for (h, t) in header.iter().zip(QType::ORDER) {
        if h.parse::<QType>().ok()? != t {
            return None;
        }
    }
    let mut cells = [[QType::EMPTY; 15]; 15];
    let mut rows = 0;
    for (i, line) in lines.enumerate() {
        if i >= 15 {
            return None;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 16 || fields[0].parse::<QType>().ok()? != QType::ORDER[i] {
            return None;
        }
        for (j, f) in fields[1..].iter().enumerate() {
            cells[i][j] = f.parse().ok()?;
        }
        rows += 1;
    }
    (rows == 15).then_some(TypeTable { cells })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub row: QType,
    pub col: QType,
    pub reference: QType,
    pub derived: QType,
}

pub fn discrepancies(reference: &TypeTable, op: OpKind) -> Vec<Discrepancy> {
    let derived = emit_table(op);
    let mut out = Vec::new();
    for (i, row) in QType::ORDER.iter().enumerate() {
        for (j, col) in QType::ORDER.iter().enumerate() {
            if reference.cells[i][j] != derived.cells[i][j] {
                out.push(Discrepancy {
                    row: *row,
                    col: *col,
                    reference: reference.cells[i][j],
                    derived: derived.cells[i][j],
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscrepancyReport {
    pub table: ReferenceTable,
    pub op: OpKind,
    pub cells_checked: usize,
    pub discrepancies: Vec<Discrepancy>,
}

pub fn discrepancy_report() -> Vec<DiscrepancyReport> {
    ReferenceTable::ALL
        .iter()
        .map(|t| DiscrepancyReport {
            table: *t,
            op: t.op(),
            cells_checked: 225,
            discrepancies: discrepancies(&t.table(), t.op()),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_parse() {
        for t in ReferenceTable::ALL {
            t.table();
        }
    }

    #[test]
    fn parse_rejects_malformed() {
        assert!(parse_tsv("").is_none());
        let mut lines: Vec<String> = ANTICOMMUTATOR.lines().map(String::from).collect();
        lines.pop();
        assert!(parse_tsv(&lines.join("\n")).is_none());
        let bad = ANTICOMMUTATOR.replacen("\t0123\n", "\t0124\n", 1);
        assert!(parse_tsv(&bad).is_none());
    }

    #[test]
    fn generated_tables_match_legible_cells() {
        let anti = ReferenceTable::Anticommutator.table();
        assert!(discrepancies(&anti, OpKind::Anticommutator).is_empty());
        let prod = ReferenceTable::Product.table();
        assert!(discrepancies(&prod, OpKind::GeometricProduct).is_empty());
    }

    #[test]
    fn generic_table_has_corrupted_rows() {
        let d = discrepancies(&ReferenceTable::GenericQuaternion.table(), OpKind::Anticommutator);
        assert_eq!(d.len(), 20);
        let rows: std::collections::BTreeSet<String> = d.iter().map(|x| x.row.to_string()).collect();
        assert_eq!(rows.into_iter().collect::<Vec<_>>(), ["02", "03", "12", "13"]);
        let ej_i = d.iter().find(|x| x.row.to_string() == "02" && x.col.to_string() == "1").unwrap();
        assert_eq!((ej_i.reference.to_string(), ej_i.derived.to_string()), ("02".into(), "13".into()));
    }
}
