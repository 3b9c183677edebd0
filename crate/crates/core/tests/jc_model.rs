use parastat_core::algebra::AlgebraKind;
use parastat_core::fock::default_degrees;
use parastat_core::group::{Bicharacter, FiniteAbelianGroup};
use parastat_core::fock::build_green_rep;
use parastat_core::jc::{
    build_green_hamiltonian, build_hamiltonian, evolve, excitation_keys, interaction, selection_rule_check, spectrum,
    Coupling, HamiltonianKind, JCParams,
};
use parastat_core::linalg::{hermitian_eig_blocked, ComplexMatrix};
use parastat_core::pbf::{build_pbf_rep, PbfFockRep};
use parastat_core::{Error, C64};
use proptest::prelude::*;

const M: usize = 6;

fn ladder(p: usize) -> PbfFockRep {
    let theta = Bicharacter::from_matrix(&FiniteAbelianGroup::klein(), vec![vec![1, 1], vec![1, 0]]).unwrap();
    build_pbf_rep(p, M, &theta, &default_degrees(AlgebraKind::Pbf).unwrap()).unwrap()
}

fn params(p: usize, omega_b: f64, omega_f: f64, lambda: f64) -> JCParams {
    JCParams {
        omega_b,
        omega_f,
        coupling: Coupling::Single(C64::new(lambda, 0.0)),
        p,
        boson_cutoff: M,
    }
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `ω_b a†a + ω_f σ⁺σ⁻ + λ(a σ⁺ + a† σ⁻)` on states `2m + n`.
fn jaynes_cummings(omega_b: f64, omega_f: f64, lambda: f64) -> ComplexMatrix {
    let d = 2 * (M + 1);
    ComplexMatrix::from_fn(d, d, |i, j| {
        let (mi, ni) = (i / 2, i % 2);
        let (mj, nj) = (j / 2, j % 2);
        if i == j {
            return c(omega_b * mj as f64 + omega_f * nj as f64);
        }
        if nj == 0 && ni == 1 && mi + 1 == mj {
            return c(lambda * (mj as f64).sqrt());
        }
        if nj == 1 && ni == 0 && mi == mj + 1 {
            return c(lambda * (mi as f64).sqrt());
        }
        c(0.0)
    })
}

fn basis_state(rep: &PbfFockRep, m: u32, n: u32) -> Vec<C64> {
    let mut v = vec![c(0.0); rep.dim()];
    v[rep.sector(m, n)[0]] = c(1.0);
    v
}

#[test]
fn free_is_diagonal_with_sector_energies() {
    for p in 1..=3 {
        let rep = ladder(p);
        for (wb, wf) in [(1.0, 1.0), (1.3, 0.7)] {
            let h = build_hamiltonian(HamiltonianKind::Free, &params(p, wb, wf, 0.0), &rep).unwrap();
            for (j, l) in rep.labels.iter().enumerate() {
                for i in 0..rep.dim() {
                    let want = if i == j { wb * f64::from(l.m) + wf * f64::from(l.n) } else { 0.0 };
                    assert!((h[(i, j)] - c(want)).norm() <= 1e-12, "p={p} {l:?}");
                }
            }
        }
    }
}

#[test]
fn zero_coupling_is_free() {
    let rep = ladder(2);
    let pr = params(2, 1.1, 0.9, 0.0);
    let free = build_hamiltonian(HamiltonianKind::Free, &pr, &rep).unwrap();
    assert_eq!(build_hamiltonian(HamiltonianKind::Dyn, &pr, &rep).unwrap(), free);
}

#[test]
fn p1_dyn_is_jaynes_cummings() {
    let rep = ladder(1);
    let h = build_hamiltonian(HamiltonianKind::Dyn, &params(1, 1.2, 0.8, 0.3), &rep).unwrap();
    let want = jaynes_cummings(1.2, 0.8, 0.3);
    assert!((&h - &want).max_abs() <= 1e-12);
}

#[test]
fn hamiltonians_are_exactly_hermitian() {
    let rep = ladder(3);
    let star = JCParams {
        coupling: Coupling::Pair {
            lambda1: C64::new(0.3, 0.2),
            lambda2: C64::new(-0.1, 0.4),
        },
        ..params(3, 1.0, 1.5, 0.0)
    };
    for (kind, pr) in [
        (HamiltonianKind::Dyn, params(3, 1.0, 1.5, 0.25)),
        (HamiltonianKind::DynStar, star),
        (HamiltonianKind::Free, params(3, 1.0, 1.5, 0.0)),
    ] {
        let h = build_hamiltonian(kind, &pr, &rep).unwrap();
        assert_eq!(h.hermiticity_violation(), Some(0.0), "{kind}");
    }
}

#[test]
fn invalid_parameters_are_named() {
    let rep = ladder(2);
    let complex = JCParams {
        coupling: Coupling::Single(C64::new(0.2, 0.1)),
        ..params(2, 1.0, 1.0, 0.0)
    };
    match build_hamiltonian(HamiltonianKind::Dyn, &complex, &rep) {
        Err(Error::Parameter { name, .. }) => assert_eq!(name, "lambda"),
        other => panic!("{other:?}"),
    }
    match build_hamiltonian(HamiltonianKind::Free, &params(2, f64::NAN, 1.0, 0.0), &rep) {
        Err(Error::Parameter { name, .. }) => assert_eq!(name, "omega_b"),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        build_hamiltonian(HamiltonianKind::Free, &params(3, 1.0, 1.0, 0.0), &rep),
        Err(Error::Argument(_))
    ));
}

#[test]
fn selection_rule_holds_and_detects_corruption() {
    let rep = ladder(2);
    let h = interaction(HamiltonianKind::Dyn, &params(2, 1.0, 1.0, 0.4), &rep).unwrap();
    let r = selection_rule_check(&h, &rep).unwrap();
    assert!(r.max_offblock <= 1e-12, "{r:?}");

    let rep3 = ladder(3);
    let star = JCParams {
        coupling: Coupling::Pair {
            lambda1: C64::new(0.5, 0.1),
            lambda2: C64::new(0.2, -0.3),
        },
        ..params(3, 1.0, 1.0, 0.0)
    };
    let h3 = interaction(HamiltonianKind::DynStar, &star, &rep3).unwrap();
    assert!(selection_rule_check(&h3, &rep3).unwrap().max_offblock <= 1e-12);

    // Move the V(1,1) -> V(0,2) block onto V(1,1) -> V(2,2).
    let mut bad = h.clone();
    let from = rep.sector(1, 1);
    let (good_to, bad_to) = (rep.sector(0, 2), rep.sector(2, 2));
    for &j in &from {
        bad[(bad_to[0], j)] = h[(good_to[0], j)];
    }
    let r = selection_rule_check(&bad, &rep).unwrap();
    assert!(r.max_offblock > 0.1);
    assert_eq!(r.worst, Some(((1, 1), (2, 2))));
}

#[test]
fn free_spectrum_is_the_excitation_ladder() {
    let rep = ladder(1);
    let h = build_hamiltonian(HamiltonianKind::Free, &params(1, 1.0, 1.0, 0.0), &rep).unwrap();
    let want: Vec<f64> = (0..=M).flat_map(|m| [m as f64, m as f64 + 1.0]).collect();
    assert_eq!(&want[..5], &[0.0, 1.0, 1.0, 2.0, 2.0]);
    let got = spectrum(&h).unwrap();
    for (g, w) in got.iter().zip(&want) {
        assert!((g - w).abs() <= 1e-12);
    }
}

#[test]
fn resonant_doublet_is_split_by_twice_the_coupling() {
    let (w, l) = (1.0, 0.15);
    let rep = ladder(1);
    let got = spectrum(&build_hamiltonian(HamiltonianKind::Dyn, &params(1, w, w, l), &rep).unwrap()).unwrap();
    // Excitation-one block is [[w, l], [l, w]].
    assert!(got.iter().any(|e| (e - (w - l)).abs() <= 1e-10));
    assert!(got.iter().any(|e| (e - (w + l)).abs() <= 1e-10));
    assert!(got[0].abs() <= 1e-12);
}

#[test]
fn weak_coupling_stays_within_the_perturbation_bound() {
    let rep = ladder(2);
    let free = spectrum(&build_hamiltonian(HamiltonianKind::Free, &params(2, 1.0, 0.8, 0.0), &rep).unwrap()).unwrap();
    for l in [0.1, 0.01, 0.001] {
        let pr = params(2, 1.0, 0.8, l);
        let hint = interaction(HamiltonianKind::Dyn, &pr, &rep).unwrap();
        let frobenius = hint.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let dyn_spec = spectrum(&build_hamiltonian(HamiltonianKind::Dyn, &pr, &rep).unwrap()).unwrap();
        let dev = dyn_spec.iter().zip(&free).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(dev <= frobenius + 1e-12, "lambda={l}");
    }
}

#[test]
fn stationary_state_keeps_its_populations() {
    let rep = ladder(2);
    let h = build_hamiltonian(HamiltonianKind::Free, &params(2, 1.0, 0.7, 0.0), &rep).unwrap();
    let times: Vec<f64> = (0..50).map(|k| 0.3 * k as f64).collect();
    let q = evolve(&h, &basis_state(&rep, 2, 1), &times, &rep).unwrap();
    for t in 0..times.len() {
        assert!((q.population(t, 2, 1).unwrap() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn rabi_oscillation_matches_analytic_form() {
    let (w, l) = (1.0, 0.2);
    let rep = ladder(1);
    let h = build_hamiltonian(HamiltonianKind::Dyn, &params(1, w, w, l), &rep).unwrap();
    let times: Vec<f64> = (0..1000).map(|k| 0.05 * k as f64).collect();
    let q = evolve(&h, &basis_state(&rep, 1, 0), &times, &rep).unwrap();
    assert!(q.norm_drift <= 1e-10);
    for (k, &t) in times.iter().enumerate() {
        let up = (l * t).cos().powi(2);
        assert!((q.population(k, 1, 0).unwrap() - up).abs() <= 1e-8, "t={t}");
        assert!((q.population(k, 0, 1).unwrap() - (1.0 - up)).abs() <= 1e-8, "t={t}");
    }
}

#[test]
fn resonance_conserves_total_excitation() {
    let rep = ladder(2);
    let n_tot = &rep.boson_number + &rep.fermion_number;
    let top = (M - 3) as u32;
    let interior: Vec<usize> = (0..rep.dim()).filter(|&i| rep.labels[i].m <= top).collect();
    let star = JCParams {
        coupling: Coupling::Pair {
            lambda1: C64::new(0.3, 0.1),
            lambda2: C64::new(0.1, -0.2),
        },
        ..params(2, 0.9, 0.9, 0.0)
    };
    for (kind, pr) in [(HamiltonianKind::Dyn, params(2, 0.9, 0.9, 0.3)), (HamiltonianKind::DynStar, star)] {
        let h = build_hamiltonian(kind, &pr, &rep).unwrap();
        let comm = &(&h * &n_tot) - &(&n_tot * &h);
        assert!(comm.select(&interior, &interior).max_abs() <= 1e-12, "{kind}");
        let mut psi0 = vec![c(0.0); rep.dim()];
        psi0[rep.sector(1, 1)[0]] = c(0.6);
        psi0[rep.sector(1, 1)[1]] = c(0.8);
        let times: Vec<f64> = (0..200).map(|k| 0.1 * k as f64).collect();
        let q = evolve(&h, &psi0, &times, &rep).unwrap();
        for row in &q.populations {
            let total: f64 = row.iter().sum();
            let exc: f64 = row.iter().zip(&q.sectors).map(|(p, &(m, n))| p * f64::from(m + n)).sum();
            assert!((total - 1.0).abs() <= 1e-10);
            assert!((exc - 2.0).abs() <= 1e-10);
        }
    }
}

#[test]
fn evolve_rejects_unnormalized_states() {
    let rep = ladder(1);
    let h = build_hamiltonian(HamiltonianKind::Free, &params(1, 1.0, 1.0, 0.0), &rep).unwrap();
    let psi = vec![c(1.0); rep.dim()];
    assert!(matches!(evolve(&h, &psi, &[0.0], &rep), Err(Error::Argument(_))));
}

#[test]
fn green_space_spectrum_contains_the_low_ladder_levels() {
    let p = 2;
    let theta = Bicharacter::from_matrix(&FiniteAbelianGroup::klein(), vec![vec![1, 1], vec![1, 0]]).unwrap();
    let deg = default_degrees(AlgebraKind::Pbf).unwrap();
    let green = build_green_rep(AlgebraKind::Pbf, p, 1, 1, M + 1, &theta, &deg).unwrap();
    let rep = ladder(p);
    let pr = params(p, 1.0, 0.8, 0.2);
    let hg = build_green_hamiltonian(HamiltonianKind::Dyn, &pr, &green).unwrap();
    assert_eq!(hg.hermiticity_violation(), Some(0.0));
    let full = hermitian_eig_blocked(&hg, &excitation_keys(&green)).unwrap();
    assert!(full.reconstruction_residual(&hg) <= 1e-12);

    let h = build_hamiltonian(HamiltonianKind::Dyn, &pr, &rep).unwrap();
    let low: Vec<usize> = (0..rep.dim()).filter(|&i| rep.labels[i].m + rep.labels[i].n <= 3).collect();
    for e in spectrum(&h.select(&low, &low)).unwrap() {
        assert!(full.values.iter().any(|v| (v - e).abs() <= 1e-10), "ladder level {e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn evolution_is_unitary(p in 1usize..=3, wb in 0.1f64..2.0, wf in 0.1f64..2.0, l in -1.0f64..1.0, m in 0u32..3) {
        let rep = ladder(p);
        let h = build_hamiltonian(HamiltonianKind::Dyn, &params(p, wb, wf, l), &rep).unwrap();
        let times: Vec<f64> = (0..1000).map(|k| 0.01 * k as f64).collect();
        let q = evolve(&h, &basis_state(&rep, m, 0), &times, &rep).unwrap();
        prop_assert!(q.norm_drift <= 1e-10);
        for row in &q.populations {
            prop_assert!((row.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
        }
    }
}
