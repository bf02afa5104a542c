#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(rows) = qsmooth::preprocess::parse_ucr(text) {
            for row in &rows {
                assert!(row.values.iter().all(|v| v.is_finite()));
            }
        }
    }
});
