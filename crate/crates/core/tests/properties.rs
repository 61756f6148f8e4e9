use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use beamsplit_core::fock_engine::{bs_output_of_basis, bs_transform, hom_coincidence_probability};
use beamsplit_core::janszky::{
    bs_transform_atoms, circle_number_superposition, interfere_number_states, synthesize,
    synthesize_two_mode, tensor,
};
use beamsplit_core::quadrature::{circle_rule, gaussian_moment, hermite_rule};
use beamsplit_core::{fidelity, BeamSplitter, Complex, FockVector, TwoModeFock};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn splitter(transmittance: f64, chi: f64, flip: bool) -> BeamSplitter {
    let offset = if flip { -FRAC_PI_2 } else { FRAC_PI_2 };
    BeamSplitter::new(
        Complex::from_polar(transmittance.sqrt(), chi),
        Complex::from_polar((1.0 - transmittance).sqrt(), chi + offset),
        1e-12,
    )
    .unwrap()
}

fn arb_splitter() -> impl Strategy<Value = BeamSplitter> {
    (0.0..=1.0f64, -PI..PI, any::<bool>()).prop_map(|(tt, chi, flip)| splitter(tt, chi, flip))
}

/// Random state supported on total photon number ≤ n_max.
fn arb_state(n_max: usize) -> impl Strategy<Value = TwoModeFock> {
    let dim = n_max + 1;
    proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim).prop_map(move |raw| {
        let amps = raw
            .into_iter()
            .enumerate()
            .map(|(idx, (re, im))| {
                let (m, n) = (idx / dim, idx % dim);
                if m + n <= n_max {
                    Complex::new(re, im)
                } else {
                    Complex::new(0.0, 0.0)
                }
            })
            .collect();
        TwoModeFock::from_row_major(n_max, amps).unwrap()
    })
}

/// Independent oracle: expand the creation-operator polynomial
/// (t·a† + r·b†)^m (r·a† + t·b†)^n monomial by monomial, then apply it to |00⟩.
fn polynomial_oracle(m: usize, n: usize, bs: &BeamSplitter) -> TwoModeFock {
    type Poly = BTreeMap<(usize, usize), Complex>;
    let mul = |p: &Poly, ca: Complex, cb: Complex| -> Poly {
        let mut out = Poly::new();
        for (&(i, j), &c) in p {
            *out.entry((i + 1, j)).or_default() += c * ca;
            *out.entry((i, j + 1)).or_default() += c * cb;
        }
        out
    };
    let mut poly = Poly::new();
    poly.insert((0, 0), Complex::new(1.0, 0.0));
    for _ in 0..m {
        poly = mul(&poly, bs.t(), bs.r());
    }
    for _ in 0..n {
        poly = mul(&poly, bs.r(), bs.t());
    }
    let fact = |k: usize| (1..=k).map(|x| x as f64).product::<f64>();
    let mut amps = vec![Complex::new(0.0, 0.0); (m + n + 1) * (m + n + 1)];
    for ((i, j), c) in poly {
        amps[i * (m + n + 1) + j] = c * (fact(i) * fact(j) / (fact(m) * fact(n))).sqrt();
    }
    TwoModeFock::from_row_major(m + n, amps).unwrap()
}

#[test]
fn basis_outputs_match_polynomial_oracle() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for _ in 0..5 {
        let bs = splitter(rng.random(), rng.random_range(-PI..PI), rng.random());
        for m in 0..=6 {
            for n in 0..=(6 - m) {
                let got = bs_output_of_basis(m, n, &bs).unwrap();
                let want = polynomial_oracle(m, n, &bs);
                assert!(got.max_abs_diff(&want).unwrap() < 1e-12, "({m},{n})");
            }
        }
    }
}

#[test]
fn single_port_input_is_a_binomial() {
    let bs = splitter(0.35, 0.4, false);
    for m in 0..=6usize {
        let out = bs_output_of_basis(m, 0, &bs).unwrap();
        for k in 0..=m {
            let binom = (1..=k).map(|i| (m + 1 - i) as f64 / i as f64).product::<f64>();
            let want = bs.t().powu(k as u32) * bs.r().powu((m - k) as u32) * binom.sqrt();
            assert!((out.amp(k, m - k) - want).norm() < 1e-13, "m={m} k={k}");
        }
    }
}

#[test]
fn engines_agree_on_number_state_inputs() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    for _ in 0..5 {
        let bs = splitter(rng.random(), rng.random_range(-PI..PI), rng.random());
        for m in 0..=4 {
            for n in 0..=(4 - m) {
                let fock = bs_output_of_basis(m, n, &bs).unwrap();
                let jz = interfere_number_states(m, n, &bs, 32, m + n).unwrap();
                let f = fidelity(&fock, &jz).unwrap();
                assert!(f >= 1.0 - 1e-9, "({m},{n}) fidelity {f}");
            }
        }
    }
}

#[test]
fn circle_radius_invariance() {
    let n_max = 12;
    for n in 0..=6 {
        let states: Vec<FockVector> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&r| synthesize(&circle_number_superposition(n, r, 48, n_max).unwrap(), n_max))
            .collect();
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert!(states[i].max_abs_diff(&states[j]).unwrap() < 1e-8, "n={n}");
            }
        }
    }
}

#[test]
fn hermite_exactness_up_to_forty_nodes() {
    for n in 1..=40usize {
        let rule = hermite_rule(n).unwrap();
        let scale = gaussian_moment(0);
        for d in 0..=(2 * n as u32 - 1) {
            let want = gaussian_moment(d);
            let got = rule.moment(d);
            let err = (got - want).abs() / want.abs().max(scale);
            assert!(err < 1e-11, "N={n} d={d}: {got} vs {want}");
        }
        for k in 0..n {
            assert_eq!(rule.nodes()[k], -rule.nodes()[n - 1 - k]);
            assert_eq!(rule.weights()[k], rule.weights()[n - 1 - k]);
        }
    }
}

#[test]
fn circle_discrete_orthogonality() {
    for n in 1..=64usize {
        let rule = circle_rule(n).unwrap();
        let limit = 4 * n as i64;
        for j in -limit..=limit {
            let got = rule.integrate_harmonic(j);
            let want = if j % n as i64 == 0 { 2.0 * PI } else { 0.0 };
            assert!((got - Complex::new(want, 0.0)).norm() < 1e-13, "N={n} j={j}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scattering_preserves_norm(bs in arb_splitter(), state in arb_state(6)) {
        let out = bs_transform(&state, &bs, 1e-10).unwrap();
        prop_assert!((out.state.norm_sqr() - state.norm_sqr()).abs() < 1e-12 * state.norm_sqr().max(1.0));
        prop_assert_eq!(out.dropped_mass, 0.0);
    }

    #[test]
    fn inverse_splitter_round_trip(bs in arb_splitter(), state in arb_state(6)) {
        let there = bs_transform(&state, &bs, 1e-10).unwrap().state;
        let back = bs_transform(&there, &bs.inverse(), 1e-10).unwrap().state;
        prop_assert!(back.max_abs_diff(&state).unwrap() < 1e-12);
    }

    #[test]
    fn mode_swap_commutes(bs in arb_splitter(), state in arb_state(5)) {
        let a = bs_transform(&state.swap_modes(), &bs, 1e-10).unwrap().state;
        let b = bs_transform(&state, &bs, 1e-10).unwrap().state.swap_modes();
        prop_assert!(a.max_abs_diff(&b).unwrap() < 1e-13);
    }

    #[test]
    fn photon_number_blocks_are_conserved(bs in arb_splitter(), m in 0usize..6, n in 0usize..6) {
        let out = bs_output_of_basis(m, n, &bs).unwrap();
        for j in 0..=out.n_max() {
            for k in 0..=out.n_max() {
                if j + k != m + n {
                    prop_assert_eq!(out.amp(j, k), Complex::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn hom_probability_is_the_coincidence_amplitude(bs in arb_splitter()) {
        let amp = bs_output_of_basis(1, 1, &bs).unwrap().amp(1, 1);
        prop_assert_eq!(hom_coincidence_probability(&bs), amp.norm_sqr());
        let diff = bs.t().norm_sqr() - bs.r().norm_sqr();
        prop_assert!((hom_coincidence_probability(&bs) - diff * diff).abs() < 1e-12);
    }

    #[test]
    fn inverse_is_an_involution(bs in arb_splitter()) {
        prop_assert_eq!(bs.inverse().inverse(), bs);
    }

    #[test]
    fn relabelling_keeps_weights_and_norm(bs in arb_splitter(), m in 0usize..3, n in 0usize..3) {
        let a = circle_number_superposition(m, 1.0, 24, 12).unwrap();
        let b = circle_number_superposition(n, 1.0, 24, 12).unwrap();
        let input = tensor(&a, &b).unwrap();
        let out = bs_transform_atoms(&input, &bs);
        prop_assert_eq!(out.len(), input.len());
        for (x, y) in input.atoms().iter().zip(out.atoms()) {
            prop_assert_eq!(x.weight, y.weight);
        }
        let before = synthesize_two_mode(&input, 6).norm_sqr();
        let after = synthesize_two_mode(&out, 6).norm_sqr();
        prop_assert!((before - after).abs() < 1e-9);
    }
}
