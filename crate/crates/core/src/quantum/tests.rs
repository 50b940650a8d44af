use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::*;
use crate::corpus;
use crate::polytope::classical_max;
use crate::states::enumerate_states;

fn odd_atoms() -> LinearFunctional {
    LinearFunctional::indicator(&["1", "3", "5", "7", "9"])
}

fn cross(a: &[f64], b: &[f64]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[test]
fn umbrella_is_unit_and_pentagram_orthogonal() {
    let u = lovasz_umbrella();
    for l in 0..5 {
        assert!((norm(&u[l]) - 1.0).abs() < 1e-12);
        assert!(dot(&u[l], &u[(l + 2) % 5]).abs() < 1e-12);
        assert!(dot(&u[l], &u[(l + 1) % 5]).abs() > 0.1);
    }
    let s = 5f64.powf(-0.25);
    let r = (5f64.sqrt() - 1.0).sqrt();
    let u5 = [s, s * r, 0.0];
    for k in 0..3 {
        assert!((u[4][k] - u5[k]).abs() < 1e-12);
    }
}

#[test]
fn u1_u3_closed_form() {
    // 5^{-1/2} (1 + (sqrt5 - 1) cos(4 pi / 5)), cos(4 pi / 5) = -(1 + sqrt5) / 4
    let s5 = 5f64.sqrt();
    let closed = (1.0 + (s5 - 1.0) * (-(1.0 + s5) / 4.0)) / s5;
    let u = lovasz_umbrella();
    assert!(closed.abs() < 1e-15);
    assert!(dot(&u[0], &u[2]).abs() < 1e-12);
}

#[test]
fn pentagon_cycle_order() {
    let d = corpus::pentagon();
    let c = pentagon_cycle(&d).unwrap();
    let names: Vec<&str> = c.vertices.iter().map(|&a| d.atoms()[a].as_str()).collect();
    assert_eq!(names, ["1", "3", "5", "7", "9"]);
    let mids: Vec<&str> = c.middles.iter().map(|&a| d.atoms()[a].as_str()).collect();
    assert_eq!(mids, ["2", "4", "6", "8", "10"]);
    assert!(pentagon_cycle(&corpus::diagram("l12.gd")).is_err());
}

#[test]
fn completed_umbrella_is_faithful() {
    let d = corpus::pentagon();
    let rep = umbrella_representation(&d).unwrap();
    let report = check_faithful(&d, &rep).unwrap();
    assert!(report.faithful, "{:?}", report.violations);
    for ctx in d.contexts() {
        for &a in ctx {
            for &b in ctx {
                let g = dot(
                    rep.vector(&d.atoms()[a]).unwrap(),
                    rep.vector(&d.atoms()[b]).unwrap(),
                );
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((g - want).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn completion_matches_cross_product() {
    let u = lovasz_umbrella();
    let v = &gram_schmidt_complete(&[u[0].to_vec(), u[2].to_vec()], 3, 1e-10).unwrap()[0];
    let c = cross(&u[0], &u[2]);
    let n = norm(&c);
    let agree = (0..3).all(|k| (v[k] - c[k] / n).abs() < 1e-12)
        || (0..3).all(|k| (v[k] + c[k] / n).abs() < 1e-12);
    assert!(agree);
}

#[test]
fn gram_schmidt_small_cases() {
    let out = gram_schmidt_complete(&[vec![1.0, 0.0, 0.0]], 3, 1e-10).unwrap();
    assert_eq!(out, vec![vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);
    let h = 0.5f64.sqrt();
    let out = gram_schmidt_complete(&[vec![h, h]], 2, 1e-10).unwrap();
    assert!((out[0][0] - h).abs() < 1e-12 && (out[0][1] + h).abs() < 1e-12);
    assert!(matches!(
        gram_schmidt_complete(&[vec![1.0, 0.0], vec![0.0, 1.0]], 2, 1e-10),
        Err(QuantumError::NothingToComplete { .. })
    ));
    assert!(matches!(
        gram_schmidt_complete(&[vec![1.0, 0.0, 0.0], vec![1.0, 0.0, 0.0]], 3, 1e-10),
        Err(QuantumError::NotOrthonormal { .. })
    ));
}

#[test]
fn standard_basis_context_is_faithful() {
    let d = corpus::diagram("single_context_3.gd");
    let vectors = d
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let mut v = vec![0.0; 3];
            v[i] = 1.0;
            (a.clone(), v)
        })
        .collect();
    let rep = VectorRep::new(3, vectors, DEFAULT_TOLERANCE).unwrap();
    assert!(check_faithful(&d, &rep).unwrap().faithful);
}

#[test]
fn degenerate_rep_violates_every_pair() {
    let d = corpus::pentagon();
    let vectors = d
        .atoms()
        .iter()
        .map(|a| (a.clone(), vec![1.0, 0.0, 0.0]))
        .collect();
    let rep = VectorRep::new(3, vectors, DEFAULT_TOLERANCE).unwrap();
    let report = check_faithful(&d, &rep).unwrap();
    assert!(!report.faithful);
    // the 15 co-contextual pairs; the others are non-orthogonal as required
    let co = (0..10)
        .flat_map(|i| (i + 1..10).map(move |j| (i, j)))
        .filter(|&(i, j)| d.co_contextual(i, j))
        .count();
    assert_eq!(report.violations.len(), co);
}

#[test]
fn missing_vector_is_an_error() {
    let d = corpus::pentagon();
    let mut rep = umbrella_representation(&d).unwrap();
    rep.vectors.shift_remove("4");
    assert_eq!(
        check_faithful(&d, &rep),
        Err(QuantumError::MissingAtom("4".into()))
    );
}

#[test]
fn handle_state_gives_sqrt5() {
    let d = corpus::pentagon();
    let rep = umbrella_representation(&d).unwrap();
    let c = StateVector::handle();
    for a in ["1", "3", "5", "7", "9"] {
        let p = born_probability(&rep, &c, a).unwrap();
        assert!((p - 5f64.powf(-0.5)).abs() < 1e-10);
    }
    let q = quantum_value(&rep, &c, &odd_atoms()).unwrap();
    assert!((q - 5f64.sqrt()).abs() < 1e-10);
    let s = enumerate_states(&d).unwrap();
    let classical = crate::rational::to_f64(&classical_max(&s, &odd_atoms()).unwrap().value);
    assert!((q - classical - (5f64.sqrt() - 2.0)).abs() < 1e-10);
    assert_eq!(
        quantum_value(&rep, &c, &LinearFunctional::default()).unwrap(),
        0.0
    );
}

#[test]
fn e2_state_matches_cosine_sum() {
    let d = corpus::pentagon();
    let rep = umbrella_representation(&d).unwrap();
    let c = StateVector::new(vec![0.0, 1.0, 0.0], 1e-12).unwrap();
    let q = quantum_value(&rep, &c, &odd_atoms()).unwrap();
    let s5 = 5f64.sqrt();
    let direct: f64 = (1..=5)
        .map(|l| (s5 - 1.0) / s5 * (2.0 * std::f64::consts::PI * l as f64 / 5.0).cos().powi(2))
        .sum();
    assert!((q - direct).abs() < 1e-12);
    assert!((q - (s5 - 1.0) / s5 * 2.5).abs() < 1e-12);
}

#[test]
fn born_extremes() {
    let d = corpus::pentagon();
    let rep = umbrella_representation(&d).unwrap();
    let v = rep.vector("3").unwrap().to_vec();
    let c = StateVector::new(v, 1e-10).unwrap();
    assert!((born_probability(&rep, &c, "3").unwrap() - 1.0).abs() < 1e-12);
    assert!(born_probability(&rep, &c, "1").unwrap() < 1e-20);
}

#[test]
fn born_sums_are_one_on_every_context() {
    let d = corpus::pentagon();
    let rep = umbrella_representation(&d).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let raw: Vec<f64> = (0..3)
            .map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0)
            .collect();
        let n = norm(&raw);
        let c = StateVector::new(raw.iter().map(|x| x / n).collect(), 1e-12).unwrap();
        for ctx in d.contexts() {
            let sum: f64 = ctx
                .iter()
                .map(|&a| born_probability(&rep, &c, &d.atoms()[a]).unwrap())
                .sum();
            assert!((sum - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn rep_json_round_trip() {
    let d = corpus::pentagon();
    let rep = umbrella_representation(&d).unwrap();
    let text = rep.to_json_string();
    let back = VectorRep::from_json(&text).unwrap();
    assert_eq!(back, rep);
    assert!(VectorRep::from_json("{\"dimension\":2,\"vectors\":{\"a\":[1]}}").is_err());
}

#[test]
fn non_unit_state_rejected() {
    assert!(StateVector::new(vec![1.0, 1.0], 1e-10).is_err());
}
