#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        // parsing may fail but must never panic or hang
        let _ = jssp::experiments::parse_config(text);
    }
});
