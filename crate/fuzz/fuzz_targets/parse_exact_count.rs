#![no_main]

use coprime_compositions::ExactCount;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(count) = text.parse::<ExactCount>() {
        let printed = count.to_string();
        assert_eq!(printed.parse::<ExactCount>().unwrap(), count);
    }
});
