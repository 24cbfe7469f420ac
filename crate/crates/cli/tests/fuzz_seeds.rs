//! Replays the checked-in fuzz seeds through the fuzz target invariants.

use std::fs;
use std::path::PathBuf;

use cliffq::{QType, Signature, SubspacePattern};
use cliffq_cli::{decode, encode, parse_multivector};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let path = e.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn expression_seeds_round_trip() {
    let sig = Signature::new(5, 7).unwrap();
    let mut parsed = 0;
    for (name, text) in seeds("expression_round_trip") {
        let Ok(u) = parse_multivector(&text, sig, None) else { continue };
        parsed += 1;
        let back = parse_multivector(&u.to_string(), sig, Some(u.field())).unwrap();
        assert_eq!(back, u, "{name}");
    }
    assert!(parsed >= 5);
}

#[test]
fn document_seeds_reach_a_fixed_point() {
    let mut decoded = 0;
    for (name, text) in seeds("decode_document") {
        let Ok(u) = decode(&text) else { continue };
        decoded += 1;
        let once = encode(&u);
        assert_eq!(encode(&decode(&once).unwrap()), once, "{name}");
    }
    assert!(decoded >= 3);
}

#[test]
fn type_seeds_round_trip() {
    for (_, text) in seeds("parse_type") {
        if let Ok(t) = text.parse::<QType>() {
            assert_eq!(t.to_string().parse::<QType>().unwrap(), t);
        }
        if let Ok(p) = text.parse::<SubspacePattern>() {
            assert_eq!(p.to_string().parse::<SubspacePattern>().unwrap(), p);
        }
    }
}

#[test]
fn table_seeds_parse() {
    for (name, text) in seeds("parse_table") {
        assert!(cliffq::reference::parse_tsv(&text).is_some(), "{name}");
    }
}
