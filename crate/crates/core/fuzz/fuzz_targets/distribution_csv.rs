#![no_main]

use libfuzzer_sys::fuzz_target;
use qsmooth::stateprep::DiscreteDistribution;

fuzz_target!(|data: &[u8]| {
    if let Ok(d) = DiscreteDistribution::read_csv(data) {
        let total: f64 = d.probs().iter().sum();
        assert!((total - 1.0).abs() < 1e-6, "accepted law sums to {total}");
        // Whatever parses must survive a write/read round trip.
        let mut out = Vec::new();
        d.write_csv(&mut out).unwrap();
        let again = DiscreteDistribution::read_csv(out.as_slice()).unwrap();
        assert_eq!(again.n(), d.n());
    }
});
