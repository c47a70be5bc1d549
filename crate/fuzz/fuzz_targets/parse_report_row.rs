#![no_main]

use coprime_compositions::bounds::ReportRow;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(row) = ReportRow::from_csv_row(text) {
        let again = ReportRow::from_csv_row(&row.to_csv_row()).unwrap();
        assert_eq!(again, row);
    }
});
