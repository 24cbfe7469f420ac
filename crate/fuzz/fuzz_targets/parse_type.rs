#![no_main]

use cliffq::{QType, SubspacePattern};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(t) = text.parse::<QType>() {
        assert_eq!(t.to_string().parse::<QType>().unwrap(), t);
    }
    if let Ok(p) = text.parse::<SubspacePattern>() {
        assert_eq!(p.to_string().parse::<SubspacePattern>().unwrap(), p);
    }
});
