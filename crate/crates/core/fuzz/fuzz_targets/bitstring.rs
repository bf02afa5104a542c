#![no_main]

use libfuzzer_sys::fuzz_target;
use qsmooth::BitString;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(x) = text.parse::<BitString>() {
            assert_eq!(x.to_string().parse::<BitString>().unwrap(), x);
        }
    }
});
