#![no_main]

use libfuzzer_sys::fuzz_target;

// The parser must reject arbitrary bytes with a positioned error, never a
// panic.
fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = modgb::parse(text);
    }
});
