#![no_main]

use cliffq::Signature;
use libfuzzer_sys::fuzz_target;

// Anything that compiles must print to text that compiles back to itself.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let sig = Signature::new(5, 7).unwrap();
    let Ok(u) = cliffq_cli::parse_multivector(text, sig, None) else { return };
    let printed = u.to_string();
    let back = cliffq_cli::parse_multivector(&printed, sig, Some(u.field()))
        .unwrap_or_else(|e| panic!("{printed:?} does not reparse: {e}"));
    assert_eq!(back, u, "{printed}");
});
