#![no_main]

use cliffq::{FieldTag, Signature};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(expr) = cliffq_cli::parse_expression(text) else { return };
    let sig = Signature::new(6, 6).unwrap();
    if let Ok(u) = expr.compile(sig, None) {
        assert_eq!(u.field() == FieldTag::Complex, expr.imaginary);
    }
});
