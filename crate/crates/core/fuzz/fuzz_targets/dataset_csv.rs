#![no_main]

use libfuzzer_sys::fuzz_target;
use qsmooth::qnn::LabeledDataset;

fuzz_target!(|data: &[u8]| {
    if let Ok(d) = LabeledDataset::read_csv(data) {
        assert!(d.labels().iter().all(|&l| l <= 1));
        assert!(d.inputs().iter().all(|x| x.len() == d.width()));
    }
});
