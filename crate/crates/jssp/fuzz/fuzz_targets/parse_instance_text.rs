#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        // must never panic; round-trip must be stable when parsing succeeds
        if let Ok(instance) = jssp::core::Instance::parse_text(text) {
            let reparsed = jssp::core::Instance::parse_text(&instance.to_text()).unwrap();
            assert_eq!(instance, reparsed);
        }
    }
});
