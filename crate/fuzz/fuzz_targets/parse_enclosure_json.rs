#![no_main]

use coprime_compositions::constants::EnclosureRecord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(record) = serde_json::from_slice::<EnclosureRecord>(data) else { return };
    if let Ok(enc) = record.to_enclosure() {
        assert!(enc.lo <= enc.point && enc.point <= enc.hi);
    }
});
