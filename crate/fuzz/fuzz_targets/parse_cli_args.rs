#![no_main]

use libfuzzer_sys::fuzz_target;

// Arguments are separated by NUL bytes; parsing only, nothing is executed.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let argv = std::iter::once("coprimes").chain(text.split('\0'));
    let _ = coprime_cli::parse_args(argv);
});
