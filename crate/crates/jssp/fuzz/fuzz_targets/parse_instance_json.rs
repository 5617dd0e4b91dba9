#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(instance) = jssp::core::Instance::parse_json(text) {
            let reparsed = jssp::core::Instance::parse_json(&instance.to_json()).unwrap();
            assert_eq!(instance, reparsed);
        }
    }
});
