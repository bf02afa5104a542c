#![no_main]

use libfuzzer_sys::fuzz_target;
use qsmooth::qnn::ClassifierParams;

// First line is the shape file, the rest is the angle table.
fuzz_target!(|data: &[u8]| {
    let split = data.iter().position(|&b| b == 0).unwrap_or(data.len());
    let (header, angles) = data.split_at(split);
    let angles = angles.get(1..).unwrap_or(&[]);
    if let Ok(p) = ClassifierParams::read_csv(header, angles) {
        assert_eq!(p.angles().len(), p.num_layers() * p.num_qubits() * 3);
    }
});
