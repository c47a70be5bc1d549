#![no_main]

use coprime_compositions::{Fixed, Rounding};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let down = Fixed::parse_decimal(text, Rounding::Down);
    let up = Fixed::parse_decimal(text, Rounding::Up);
    assert_eq!(down.is_ok(), up.is_ok());
    if let (Ok(lo), Ok(hi)) = (down, up) {
        assert!(lo <= hi);
        let _ = lo.to_decimal(30, Rounding::Down);
    }
});
