#![no_main]

use libfuzzer_sys::fuzz_target;

// Decoded documents re-encode to a fixed point.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(u) = cliffq_cli::decode(text) else { return };
    let once = cliffq_cli::encode(&u);
    let again = cliffq_cli::encode(&cliffq_cli::decode(&once).expect("encoded documents decode"));
    assert_eq!(once, again);
});
