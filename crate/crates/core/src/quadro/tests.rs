use std::f64::consts::PI;

use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::*;
use crate::simulator::{Gate, StateVector};

/// One data qubit rotated so that `P(1) = a`.
fn ry_prep(a: f64) -> Circuit {
    let theta = a.sqrt().asin();
    Circuit::from_gates(1, vec![Gate::ry(0, 2.0 * theta)]).unwrap()
}

fn identity(n: usize) -> Circuit {
    Circuit::new(n)
}

fn setup(a: f64) -> (Circuit, Circuit) {
    let aa = state_preparation(&ry_prep(a), &identity(1), 0).unwrap();
    let q = grover_operator(&aa, 1).unwrap();
    (q, aa)
}

/// Textbook m-qubit phase-estimation outcome law for eigenphase `phi`.
fn qpe_law(phi: f64, m: usize) -> Vec<f64> {
    let size = 1usize << m;
    (0..size)
        .map(|k| {
            let d = phi - k as f64 / size as f64;
            let (mut re, mut im) = (0.0, 0.0);
            for t in 0..size {
                re += (2.0 * PI * t as f64 * d).cos();
                im += (2.0 * PI * t as f64 * d).sin();
            }
            (re * re + im * im) / (size * size) as f64
        })
        .collect()
}

#[test]
fn phase_to_amplitude() {
    assert_eq!(amplitude_from_phase(0.0), 0.0);
    assert!((amplitude_from_phase(0.5) - 1.0).abs() < 1e-15);
    assert!((amplitude_from_phase(0.25) - 0.5).abs() < 1e-15);
    for phi in [0.1, 0.3, 0.45] {
        assert!((amplitude_from_phase(phi) - amplitude_from_phase(1.0 - phi)).abs() < 1e-15);
    }
}

#[test]
fn budget() {
    assert_eq!(oracle_call_budget(3, 1).unwrap().nominal, 15);
    assert_eq!(oracle_call_budget(1, 1).unwrap().nominal, 3);
    let b = oracle_call_budget(4, 7).unwrap();
    assert_eq!(b.grover_applications, 7 * 15);
    assert_eq!(b.classifier_calls, 2 * 7 * 15);
    assert!(oracle_call_budget(0, 1).is_err());
}

#[test]
fn config_validation() {
    let ok = QaeConfig {
        m: 3,
        shots_per_bit: 1,
        repetitions: 3,
        alpha: 0.1,
        seed: 0,
    };
    assert!(ok.validate().is_ok());
    assert!(QaeConfig { m: 0, ..ok }.validate().is_err());
    assert!(QaeConfig {
        repetitions: 4,
        ..ok
    }
    .validate()
    .is_err());
    assert!(QaeConfig {
        shots_per_bit: 0,
        ..ok
    }
    .validate()
    .is_err());
    assert!(QaeConfig { alpha: 1.0, ..ok }.validate().is_err());
}

#[test]
fn register_layout() {
    let prep = Circuit::new(3);
    let clf = Circuit::new(2);
    let a = state_preparation(&prep, &clf, 1).unwrap();
    assert_eq!(a.num_qubits(), 4);
    assert!(state_preparation(&Circuit::new(2), &Circuit::new(3), 0).is_err());
    assert!(state_preparation(&prep, &clf, 2).is_err());
    assert_eq!(
        build_grover_operator(&prep, &clf, 0).unwrap().num_qubits(),
        4
    );
}

#[test]
fn one_grover_step_rotates_by_two_theta() {
    // In the good/bad plane, A|0> sits at angle theta and Q adds 2 theta.
    for a in [0.25, 0.1, 0.6] {
        let theta = f64::sqrt(a).asin();
        let (q, aa) = setup(a);
        let mut s = StateVector::zero(2);
        s.run(&aa).unwrap();
        s.run(&q).unwrap();
        let good = s.amplitudes()[0b11];
        assert!((good.re - (3.0 * theta).sin()).abs() < 1e-12, "{good}");
        assert!(good.im.abs() < 1e-12);
        let bad = s.amplitudes()[0b00];
        assert!((bad.re - (3.0 * theta).cos()).abs() < 1e-12);
    }
}

#[test]
fn zero_amplitude_is_fixed_point() {
    let (q, aa) = setup(0.0);
    let mut s = StateVector::zero(2);
    s.run(&aa).unwrap();
    let before = s.clone();
    s.run(&q).unwrap();
    assert!((s.fidelity(&before) - 1.0).abs() < 1e-12);
}

#[test]
fn dyadic_eigenphase_is_exact() {
    // Controlled RZ(5 pi / 2) puts e^{i 5 pi / 4} = e^{2 pi i 0.625} on |1>.
    let u = Circuit::from_gates(1, vec![Gate::rz(0, 2.5 * PI)]).unwrap();
    let prep = Circuit::from_gates(1, vec![Gate::x(0)]).unwrap();
    for seed in 0..50 {
        let e = iqpe_phase(&u, &prep, 3, 1, seed).unwrap();
        assert_eq!(e.phi_hat, 0.625);
        assert_eq!(e.bits, vec![1, 0, 1]);
    }
    // a = 1/2: eigenphases 1/4 and 3/4, both exact on a 2-bit grid.
    let (q, aa) = setup(0.5);
    for seed in 0..50 {
        let e = iqpe_phase(&q, &aa, 3, 1, seed).unwrap();
        assert!(e.phi_hat == 0.25 || e.phi_hat == 0.75);
        assert!((e.a_hat - 0.5).abs() < 1e-15);
    }
}

#[test]
fn zero_amplitude_reads_zero_phase() {
    let (q, aa) = setup(0.0);
    for seed in 0..20 {
        let e = iqpe_phase(&q, &aa, 4, 1, seed).unwrap();
        assert_eq!(e.phi_hat, 0.0);
        assert_eq!(e.a_hat, 0.0);
    }
}

#[test]
fn outcome_law_matches_textbook_estimation() {
    // A|0> is an equal mix of the phi and 1 - phi eigenvectors.
    let (m, runs) = (3usize, 4000u64);
    let phi = 1.0 / 6.0;
    let (l1, l2) = (qpe_law(phi, m), qpe_law(1.0 - phi, m));
    let law: Vec<f64> = l1.iter().zip(&l2).map(|(a, b)| 0.5 * (a + b)).collect();
    let (q, aa) = setup(0.25);
    let mut counts = vec![0u64; 1 << m];
    for seed in 0..runs {
        let e = iqpe_phase(&q, &aa, m, 1, seed).unwrap();
        counts[(e.phi_hat * 8.0).round() as usize] += 1;
    }
    let stat: f64 = counts
        .iter()
        .zip(&law)
        .map(|(c, p)| (*c as f64 - p * runs as f64).powi(2) / (p * runs as f64))
        .sum();
    let crit = ChiSquared::new(7.0).unwrap().inverse_cdf(0.999);
    assert!(stat < crit, "chi2 {stat}: {counts:?} vs {law:?}");
    // The folded estimate concentrates on 1/8 and 1/4, nearest first.
    let near = counts[1] + counts[7];
    let next = counts[2] + counts[6];
    assert!(near > next);
    assert!((near + next) as f64 / runs as f64 > 0.8);
}

#[test]
fn median_estimate_within_grid() {
    let config = QaeConfig {
        m: 5,
        shots_per_bit: 1,
        repetitions: 5,
        alpha: 0.1,
        seed: 3,
    };
    for seed in 0..10 {
        let est = quadro_estimate(
            &ry_prep(0.25),
            &identity(1),
            0,
            &QaeConfig { seed, ..config },
        )
        .unwrap();
        assert!((est.p_hat - 0.25).abs() <= 0.09, "{est:?}");
        assert!(est.p_lower <= 0.25);
        assert!(est.p_lower <= est.p_hat);
        assert_eq!(est.oracle_calls, 5 * 31);
    }
}

#[test]
fn constant_one_classifier_reaches_boundary() {
    let m = 4;
    let prep = Circuit::from_gates(1, vec![Gate::x(0)]).unwrap();
    let config = QaeConfig {
        m,
        shots_per_bit: 1,
        repetitions: 3,
        alpha: 0.1,
        seed: 9,
    };
    let out = quadro_run(&prep, &identity(1), 0, &config).unwrap();
    let floor = amplitude_from_phase(0.5 - 0.5f64.powi(m as i32));
    assert!(out.estimate.p_hat >= floor);
    assert!((out.p_upper - 1.0).abs() < 1e-15);
}

#[test]
fn single_repetition_is_a_single_run() {
    let config = QaeConfig {
        m: 4,
        shots_per_bit: 3,
        repetitions: 1,
        alpha: 0.1,
        seed: 21,
    };
    let out = quadro_run(&ry_prep(0.3), &identity(1), 0, &config).unwrap();
    let (q, aa) = setup(0.3);
    let single = iqpe_phase(&q, &aa, 4, 3, crate::seed::derive_seed(21, 0)).unwrap();
    assert_eq!(out.runs, vec![single.clone()]);
    assert_eq!(
        out.estimate.p_hat,
        amplitude_from_phase(fold_phase(single.phi_hat))
    );
    assert_eq!(out.estimate.p_lower, single.a_lower);
}

#[test]
fn trace_records_every_iteration() {
    let (q, aa) = setup(0.3);
    let e = iqpe_phase(&q, &aa, 3, 5, 1).unwrap();
    assert_eq!(
        e.trace.iter().map(|t| t.j).collect::<Vec<_>>(),
        vec![2, 1, 0]
    );
    assert!(e.trace.iter().all(|t| t.zeros + t.ones == 5));
    let mut buf = Vec::new();
    write_trace_csv(&[e], &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("run,j,correction,zeros,ones,bit\n"));
}

fn random_prep(seed: u64) -> Circuit {
    let mut rng = crate::seed::rng_from_seed(seed);
    crate::simulator::tests::random_circuit(&mut rng, 3, 12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn grover_operator_is_unitary(seed in any::<u64>(), power in 0u32..4) {
        let prep = random_prep(seed);
        let clf = crate::qnn::classifier_circuit(
            &crate::qnn::ClassifierParams::random(2, 1, 1, 1, 3.0, seed).unwrap(),
        );
        let q = build_grover_operator(&prep, &clf, 1).unwrap();
        let cq = q.controlled(q.num_qubits()).unwrap();
        let mut rng = crate::seed::rng_from_seed(seed ^ 5);
        let start = crate::simulator::tests::random_state(&mut rng, cq.num_qubits());
        let mut s = start.clone();
        for _ in 0..1 << power {
            s.run(&cq).unwrap();
        }
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
        for _ in 0..1 << power {
            s.run(&cq.inverse()).unwrap();
        }
        prop_assert!((s.fidelity(&start) - 1.0).abs() < 1e-10);
    }
}
