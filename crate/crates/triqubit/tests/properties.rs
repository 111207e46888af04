//! Property tests for the algebraic invariants of the crate.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use triqubit::bases::{self, BasisKind, BasisSet, LocalUnitary};
use triqubit::productsearch::{self, Projector, SeesawConfig};
use triqubit::qstate::{DensityMatrix3Q, Party, PartyPair, ProductState3Q, PureState3Q, Qubit2Vec};
use triqubit::tangles;

fn random_state(rng: &mut ChaCha8Rng) -> PureState3Q {
    loop {
        let mut amps = [Complex64::new(0.0, 0.0); 8];
        for a in amps.iter_mut() {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            *a = Complex64::new(re, im);
        }
        if let Ok(s) = PureState3Q::normalized(amps) {
            return s;
        }
    }
}

fn random_qubit(rng: &mut ChaCha8Rng) -> Qubit2Vec {
    loop {
        let re0: f64 = StandardNormal.sample(rng);
        let im0: f64 = StandardNormal.sample(rng);
        let re1: f64 = StandardNormal.sample(rng);
        let im1: f64 = StandardNormal.sample(rng);
        if let Ok(q) = Qubit2Vec::normalized([Complex64::new(re0, im0), Complex64::new(re1, im1)])
        {
            return q;
        }
    }
}

fn amp_strategy() -> impl Strategy<Value = [Complex64; 8]> {
    prop::array::uniform8((-1.0f64..1.0, -1.0f64..1.0))
        .prop_map(|pairs| pairs.map(|(re, im)| Complex64::new(re, im)))
        .prop_filter("usable norm", |amps| {
            amps.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3
        })
}

proptest! {
    #[test]
    fn states_are_unit_norm(amps in amp_strategy()) {
        let psi = PureState3Q::normalized(amps).unwrap();
        let ip = psi.inner(&psi);
        prop_assert!(ip.im.abs() < 1e-12);
        prop_assert!((ip.re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn one_tangle_routes_agree(amps in amp_strategy()) {
        let psi = PureState3Q::normalized(amps).unwrap();
        for p in Party::ALL {
            let minors = tangles::one_tangle_minors(&psi, p);
            let entropy = tangles::one_tangle_entropy(&psi, p);
            prop_assert!((minors - entropy).abs() < 1e-10);
            prop_assert!((-1e-10..=1.0 + 1e-10).contains(&minors));
        }
        let tau = tangles::three_tangle(&psi);
        prop_assert!((-1e-10..=1.0 + 1e-10).contains(&tau));
    }

    #[test]
    fn hdet_forms_agree(amps in amp_strategy()) {
        let psi = PureState3Q::normalized(amps).unwrap();
        let a = psi.amps();
        let s = a[0] * a[7] + a[1] * a[6] - a[2] * a[5] - a[3] * a[4];
        let factored = s * s + 4.0 * (a[0] * a[6] - a[2] * a[4]) * (a[3] * a[5] - a[1] * a[7]);
        prop_assert!((tangles::hyperdeterminant(&psi) - factored).norm() < 1e-12);
    }

    #[test]
    fn monogamy_decomposition_holds(amps in amp_strategy()) {
        let psi = PureState3Q::normalized(amps).unwrap();
        let p = tangles::tangle_profile(&psi);
        prop_assert!((p.tau_a - (p.tau_ab + p.tau_ac + p.tau_abc)).abs() < 1e-9);
        prop_assert!((p.tau_b - (p.tau_ab + p.tau_bc + p.tau_abc)).abs() < 1e-9);
        prop_assert!((p.tau_c - (p.tau_ac + p.tau_bc + p.tau_abc)).abs() < 1e-9);
    }

    #[test]
    fn ckw_equality_holds(amps in amp_strategy()) {
        let psi = PureState3Q::normalized(amps).unwrap();
        let rho = DensityMatrix3Q::pure(&psi);
        for pp in PartyPair::ALL {
            let c = tangles::wootters_concurrence(&rho.reduce_pair(pp)).unwrap();
            let tau = tangles::pairwise_tangle(&psi, pp);
            prop_assert!((c * c - tau).abs() < 1e-8, "pair {pp}: C^2 {} vs tau {tau}", c * c);
        }
    }

    #[test]
    fn partial_transpose_involution_and_trace(amps in amp_strategy()) {
        let psi = PureState3Q::normalized(amps).unwrap();
        let rho = DensityMatrix3Q::pure(&psi);
        for p in Party::ALL {
            let pt = rho.partial_transpose(p);
            prop_assert!((pt.trace() - rho.trace()).abs() < 1e-12);
            let twice = pt.partial_transpose(p);
            for r in 0..8 {
                for c in 0..8 {
                    prop_assert_eq!(twice.entry(r, c), rho.entry(r, c));
                }
            }
        }
    }

    #[test]
    fn density_spectra_are_probability_lists(amps in amp_strategy()) {
        let psi = PureState3Q::normalized(amps).unwrap();
        let vals = DensityMatrix3Q::pure(&psi).eigenvalues();
        prop_assert!((vals.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        for v in vals {
            prop_assert!((-1e-10..=1.0 + 1e-10).contains(&v));
        }
    }
}

#[test]
fn product_states_have_pure_marginals() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for _ in 0..200 {
        let p = ProductState3Q::new(
            random_qubit(&mut rng),
            random_qubit(&mut rng),
            random_qubit(&mut rng),
        );
        let rho = DensityMatrix3Q::pure(&p.expand());
        for party in Party::ALL {
            let m = rho.reduce_single(party);
            let purity: f64 = (0..2)
                .flat_map(|r| (0..2).map(move |c| (r, c)))
                .map(|(r, c)| m.entry(r, c).norm_sqr())
                .sum();
            assert!((purity - 1.0).abs() < 1e-9);
        }
    }
}

#[test]
fn uniform_mixture_of_a_complete_basis_is_maximally_mixed() {
    let b = bases::cbupb(bases::shifts_upb(), bases::eeb()).unwrap();
    let rho = DensityMatrix3Q::mix(&b.all_states(), &[0.125; 8]).unwrap();
    for r in 0..8 {
        for c in 0..8 {
            let expected = if r == c { 0.125 } else { 0.0 };
            assert!((rho.entry(r, c) - Complex64::new(expected, 0.0)).norm() < 1e-12);
        }
    }
}

#[test]
fn permutation_consistency_under_b_c_swap() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let psi = random_state(&mut rng);
        let mut swapped = [Complex64::new(0.0, 0.0); 8];
        for r in 0..8usize {
            let (i, j, k) = (r >> 2 & 1, r >> 1 & 1, r & 1);
            swapped[i << 2 | k << 1 | j] = psi.amp(r);
        }
        let chi = PureState3Q::new(swapped).unwrap();
        let p = tangles::tangle_profile(&psi);
        let q = tangles::tangle_profile(&chi);
        assert!((p.tau_a - q.tau_a).abs() < 1e-12);
        assert!((p.tau_b - q.tau_c).abs() < 1e-12);
        assert!((p.tau_c - q.tau_b).abs() < 1e-12);
        assert!((p.tau_abc - q.tau_abc).abs() < 1e-12);
        assert!((p.tau_ab - q.tau_ac).abs() < 1e-12);
        assert!((p.tau_bc - q.tau_bc).abs() < 1e-12);
    }
}

#[test]
fn eeb_profiles_are_exact() {
    for phi in bases::eeb().states() {
        let p = tangles::tangle_profile(phi);
        let expected = [1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0];
        for (got, want) in p.as_array().iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }
}

#[test]
fn lu_orbit_preserves_gram_and_tangles() {
    let b = bases::cbupb(bases::shifts_upb(), bases::eeb()).unwrap();
    let states = b.all_states();
    let originals: Vec<[f64; 7]> = states
        .iter()
        .map(|s| tangles::tangle_profile(s).as_array())
        .collect();
    for seed in 0..100u64 {
        let u = bases::random_local_unitary(seed);
        let moved = bases::lu_transform(&states, &u);
        assert!(bases::is_orthonormal(&moved, 1e-10), "seed {seed}");
        for (orig, state) in originals.iter().zip(&moved) {
            let got = tangles::tangle_profile(state).as_array();
            for (x, y) in orig.iter().zip(got) {
                assert!((x - y).abs() < 1e-9, "seed {seed}");
            }
        }
    }
}

#[test]
fn random_combinations_stay_entangled() {
    // every nonzero combination of the entangled half must stay entangled;
    // the full certification is the see-saw search, this is the spot check
    let t = bases::eeb();
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..10_000 {
        let mut coeffs = [Complex64::new(0.0, 0.0); 4];
        for c in coeffs.iter_mut() {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            *c = Complex64::new(re, im);
        }
        let psi = bases::combine(&t, coeffs).unwrap();
        assert!(!tangles::is_fully_product(&psi, 1e-8));
    }
}

#[test]
fn seesaw_dominates_the_grid_oracle() {
    let cfg = SeesawConfig {
        restarts: 16,
        seed: 5,
        ..SeesawConfig::default()
    };
    let projectors = [
        Projector::span(bases::eeb().states()).unwrap(),
        Projector::span(bases::shifts_upb().states()).unwrap().complement(),
        Projector::span(&[bases::eeb().states()[0].clone()]).unwrap(),
    ];
    for p in &projectors {
        let s = productsearch::seesaw_max_overlap(p, &cfg);
        for res in [8, 16, 24] {
            let g = productsearch::grid_oracle_max_overlap(p, res);
            assert!(g <= s.best_value + 1e-9, "rank {}: {g} > {}", p.rank(), s.best_value);
        }
    }
}

#[test]
fn unextendibility_and_product_freeness_verdicts_agree() {
    let cfg = SeesawConfig {
        restarts: 32,
        seed: 6,
        ..SeesawConfig::default()
    };
    let upb = productsearch::upb_extendibility(&bases::shifts_upb(), &cfg);
    let ees = productsearch::ees_product_free(&bases::eeb(), &cfg);
    assert_eq!(upb.certified, ees.certified);
    assert!((upb.margin - ees.margin).abs() < 1e-6);
}

#[test]
fn seesaw_value_is_lu_invariant() {
    let cfg = SeesawConfig {
        restarts: 32,
        seed: 7,
        ..SeesawConfig::default()
    };
    let base = productsearch::ees_product_free(&bases::eeb(), &cfg);
    for seed in [1u64, 17, 99] {
        let u = bases::random_local_unitary(seed);
        let moved = BasisSet::new(
            bases::lu_transform(bases::eeb().states(), &u),
            BasisKind::Entangled,
        )
        .unwrap();
        let verdict = productsearch::ees_product_free(&moved, &cfg);
        assert!(verdict.certified);
        assert!((verdict.margin - base.margin).abs() < 1e-6, "seed {seed}");
    }
}

#[test]
fn construction_identity_holds_on_the_lu_orbit() {
    for seed in [0u64, 5, 123] {
        let u = bases::random_local_unitary(seed);
        let s = BasisSet::new(
            bases::lu_transform(bases::shifts_upb().states(), &u),
            BasisKind::Product,
        )
        .unwrap();
        let t = BasisSet::new(
            bases::lu_transform(bases::eeb().states(), &u),
            BasisKind::Entangled,
        )
        .unwrap();
        let via_t = triqubit::boundstate::rho_from_eeb(&t).unwrap();
        let via_s = triqubit::boundstate::rho_from_upb_complement(&s).unwrap();
        assert!(via_t.max_abs_diff(&via_s) < 1e-12, "seed {seed}");
    }
}

#[test]
fn local_unitaries_leave_is_fully_product_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for seed in 0..50u64 {
        let u = bases::random_local_unitary(seed);
        let p = ProductState3Q::new(
            random_qubit(&mut rng),
            random_qubit(&mut rng),
            random_qubit(&mut rng),
        );
        let moved = u.apply(&p.expand());
        assert!(tangles::is_fully_product(&moved, 1e-9));
    }
    let _ = LocalUnitary::identity();
}
