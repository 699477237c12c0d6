use super::*;
use crate::algebra::monomial::{bit, mask_of};
use crate::coeff::{Fp, Rational};
use crate::endo::{gamma, linear, rho, scaling, shift, Matrix};
use crate::sample;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = Endomorphism<Rational>;
type F = Endomorphism<Fp<7>>;

const TAGS: [&str; 20] = [
    "omega", "omega-s:3", "gamma", "gamma-pow:5", "gamma-asc:4", "gamma-graded:2", "u", "u-pow:3", "phi", "phi-i:2",
    "phi-prime", "phi-pow:5", "phi-prime-layer:3", "sigma", "sigma-prime", "sigma-prime-pow:5", "sigma-double-prime",
    "g-ev", "g-od", "g-zs:3",
];

fn el(n: usize, s: &str) -> GrassmannElement<Rational> {
    GrassmannElement::parse(n, s).unwrap()
}

#[test]
fn identity_is_in_every_group() {
    for t in TAGS {
        let g: GroupId = t.parse().unwrap();
        assert_eq!(g.to_string(), t);
        assert!(member(&Q::identity(5), g).unwrap(), "{t}");
    }
}

#[test]
fn bad_parameters_are_rejected() {
    for t in ["omega-s:2", "gamma-graded:3", "phi-pow:4", "phi-i:9", "gamma-asc:3"] {
        let g: GroupId = t.parse().unwrap();
        assert!(matches!(member(&Q::identity(5), g), Err(Error::InvalidParameter(_))), "{t}");
    }
    assert!("gamma:3".parse::<GroupId>().is_err());
    assert!("sigma-prime-pow".parse::<GroupId>().is_err());
    assert!("delta".parse::<GroupId>().is_err());
}

#[test]
fn published_membership_examples() {
    let xi = Q::parse(4, "x1 -> x1 + x2x3x4").unwrap();
    assert!(member(&xi, GroupId::Sigma).unwrap());
    let w = omega(&el(4, "x1"));
    let m = member_with_witness(&w, GroupId::Omega).unwrap();
    assert!(m.member);
    assert_eq!(m.witness, Some(el(4, "x1")));
    assert!(!member(&w, GroupId::Gamma).unwrap());
    assert!(member(&w, GroupId::U).unwrap());
}

#[test]
fn non_automorphisms_belong_to_nothing() {
    let s = Q::parse(5, "x1 -> x2").unwrap();
    for t in TAGS {
        assert!(!member(&s, t.parse().unwrap()).unwrap(), "{t}");
    }
}

#[test]
fn graded_pieces() {
    let lin = linear(&Matrix::from_rows(vec![
        vec![Rational::from_i64(0), Rational::from_i64(1)],
        vec![Rational::from_i64(1), Rational::from_i64(0)],
    ]));
    assert!(member(&lin, GroupId::GEv).unwrap() && member(&lin, GroupId::GOd).unwrap());
    assert!(!member(&lin, GroupId::U).unwrap());
    let w = omega(&el(3, "x1"));
    assert!(member(&w, GroupId::GEv).unwrap());
    assert!(!member(&w, GroupId::GOd).unwrap());
    let w3 = omega(&el(5, "x1x2x3"));
    assert!(member(&w3, GroupId::OmegaS(3)).unwrap());
    assert!(!member(&w, GroupId::OmegaS(3)).unwrap_or(true) || w.n() < 3);
    assert!(member(&w3, GroupId::GZs(3)).unwrap());
    let g5 = Q::parse(5, "x1 -> x1 + x1x2x3x4x5").unwrap();
    assert!(member(&g5, GroupId::GammaGraded(4)).unwrap());
    assert!(!member(&Q::parse(5, "x1 -> x1 + x2x3x4").unwrap(), GroupId::GammaGraded(4)).unwrap());
}

#[test]
fn phi_family() {
    let s = Q::parse(4, "x1 -> x1 + x1x2x3").unwrap();
    assert!(member(&s, GroupId::Phi).unwrap());
    assert!(member(&s, GroupId::PhiI(2)).unwrap());
    let t = Q::parse(4, "x1 -> x1 + x2x3x4").unwrap();
    assert!(!member(&t, GroupId::Phi).unwrap());
    assert!(!member(&t, GroupId::PhiI(1)).unwrap());
    assert!(member(&t, GroupId::PhiI(2)).unwrap());
    let scale = Q::parse(2, "x1 -> 3x1").unwrap();
    assert!(member(&scale, GroupId::PhiPrime).unwrap());
    assert!(!member(&scale, GroupId::Phi).unwrap());
}

#[test]
fn phi_prime_layers_follow_the_layer_rule() {
    // At n = 5, s = 1 the layers start at 3; x1x2 lies in layer 5, x4x5 in layer 3.
    let ok = Q::parse(5, "x5 -> x5 + x5x1x2").unwrap();
    assert!(member(&ok, GroupId::PhiPrimeLayer(3)).unwrap());
    let wrong_layer = Q::parse(5, "x3 -> x3 + x3x1x2").unwrap();
    assert!(!member(&wrong_layer, GroupId::PhiPrimeLayer(3)).unwrap());
    let low_index = Q::parse(5, "x1 -> x1 + x1x4x5").unwrap();
    assert!(!member(&low_index, GroupId::PhiPrimeLayer(3)).unwrap());
}

#[test]
fn sigma_double_prime_detects_the_scaling_part() {
    // ρ at degree 2 lies in Σ′ but not in Σ″, since its Φ-component is not in U⁵.
    let r = rho(5, 1, 2, Rational::from_i64(1), mask_of(&[3, 4]));
    assert!(member(&r, GroupId::SigmaPrime).unwrap());
    assert!(!member(&r, GroupId::SigmaDoublePrime).unwrap());
    let xi = Q::parse(5, "x1 -> x1 + x2x3x4").unwrap();
    assert!(member(&xi, GroupId::SigmaDoublePrime).unwrap());
}

#[test]
fn omega_witness_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for n in 2..=6 {
        for _ in 0..5 {
            let a = GrassmannElement::<Fp<7>>::random(n, &mut rng, 0.4, |m| m.count_ones() % 2 == 1 && m != full_mask(n));
            let m = member_with_witness(&omega(&a), GroupId::Omega).unwrap();
            assert_eq!(m.witness, Some(a));
        }
    }
}

#[test]
fn decompositions_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in [5, 6] {
        for _ in 0..8 {
            let s: F = sample::full_group(n, &mut rng);
            assert!(decompose_omega_gamma_linear(&s).unwrap().verify(&s).unwrap());
            let u: F = sample::unipotent(n, &mut rng);
            assert!(decompose_unipotent(&u).unwrap().verify(&u).unwrap());
            let g: F = sample::gamma_element(n, &mut rng);
            assert!(decompose_gamma(&g).unwrap().verify(&g).unwrap());
            assert!(decompose_layers(&g).unwrap().verify(&g).unwrap());
            let sp: F = sample::sigma_prime_element(n, &mut rng);
            assert!(decompose_sigma_prime(&sp).unwrap().verify(&sp).unwrap());
        }
    }
}

#[test]
fn sigma_members_have_phi_in_sigma_prime() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..8 {
        let s: F = sample::sigma_element(6, &mut rng);
        let FactoredAutomorphism::GammaWord { phi, .. } = decompose_gamma(&s).unwrap() else { panic!() };
        assert!(member(&phi, GroupId::SigmaPrime).unwrap());
    }
}

#[test]
fn ascents_have_leading_layers_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in [5, 6] {
        for s in 1..=(n - 1) / 2 {
            let g: F = sample::gamma_asc_element(n, s, &mut rng);
            assert!(member(&g, GroupId::GammaAsc(2 * s)).unwrap());
            let FactoredAutomorphism::LayerWord { parts, .. } = decompose_layers(&g).unwrap() else { panic!() };
            assert!(parts[..s - 1].iter().all(|p| p.is_zero()));
        }
    }
}

#[test]
fn ascent_chain_and_distinctness() {
    for n in [5, 6, 7] {
        let top = (n - 1) / 2;
        for s in 1..=top {
            // xₙ ↦ xₙ(1 + x₁⋯x_{2s}) has J = 1 + x₁⋯x_{2s}.
            let mut a = vec![GrassmannElement::<Rational>::zero(n); n];
            a[n - 1] = GrassmannElement::monomial(n, full_mask(2 * s), Rational::one());
            let w = scaling(&a);
            assert_eq!(w.jacobian().unwrap().valuation, 2 * s);
            assert!(member(&w, GroupId::GammaAsc(2 * s)).unwrap());
            assert!(!member(&w, GroupId::GammaAsc(2 * s + 2)).unwrap());
            assert!(member(&w, GroupId::PhiPrimeLayer(2 * s + 1)).unwrap());
        }
    }
}

#[test]
fn even_collapse() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in [4, 6] {
        let mut seen = 0;
        for k in 0..200 {
            let g: F = match k % 3 {
                0 => sample::gamma_element(n, &mut rng),
                1 => {
                    // Cancel every Jacobian term below the top degree, leaving the top coefficient unconstrained.
                    let g: F = sample::gamma_element(n, &mut rng).then_apply(&sample::phi_element(n, 3, &mut rng));
                    let psi = jacobian_preimage_mod_top(&g.jacobian().unwrap().det).unwrap().sigma;
                    psi.inv().unwrap().then_apply(&g)
                }
                _ => sample::phi_element(n, 3, &mut rng),
            };
            let j = g.jacobian().unwrap();
            if j.valuation >= n {
                seen += 1;
                assert!(j.det.is_one());
            }
        }
        assert!(seen >= 5, "only {seen} samples reached the top valuation at n = {n}");
    }
}

#[test]
fn three_generators_over_f3() {
    type G = Endomorphism<Fp<3>>;
    let n = 3;
    let mut jacobians = std::collections::HashSet::new();
    let mut sigma_count = 0;
    for code in 0..27i64 {
        let l: Vec<_> = (0..3).map(|k| Fp::<3>::new(code / 3i64.pow(k) % 3)).collect();
        let g: G = crate::endo::top_shift(n, &l);
        assert!(member(&g, GroupId::Gamma).unwrap());
        let j = g.jacobian().unwrap().det;
        if j.is_one() {
            sigma_count += 1;
            assert!(g.is_identity());
        }
        assert!(j.is_even() && j.constant_term().is_one());
        jacobians.insert(j);
    }
    assert_eq!(sigma_count, 1);
    assert_eq!(jacobians.len(), 27);
}

#[test]
fn gamma_at_three_is_the_top_shifts() {
    let g = gamma(&[el(3, "x1x2x3"), el(3, "2x1x2x3"), GrassmannElement::zero(3)]);
    assert!(member(&g, GroupId::Gamma).unwrap());
    assert!(!member(&shift(1, &el(3, "x2")), GroupId::Gamma).unwrap());
    assert_eq!(bit(1), 1);
}

fn seeds() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sigma_is_closed(seed in seeds()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: F = sample::sigma_element(5, &mut rng);
        let t: F = sample::sigma_element(5, &mut rng);
        prop_assert!(member(&s.then_apply(&t), GroupId::Sigma).unwrap());
        prop_assert!(member(&s.inv().unwrap(), GroupId::Sigma).unwrap());
    }

    #[test]
    fn coset_criterion(seed in seeds()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s: F = sample::gamma_element(5, &mut rng);
        let same = s.then_apply(&sample::sigma_element(5, &mut rng));
        let other: F = sample::gamma_element(5, &mut rng);
        for t in [same, other] {
            let equal = s.jacobian().unwrap().det == t.jacobian().unwrap().det;
            prop_assert_eq!(equal, member(&s.inv().unwrap().then_apply(&t), GroupId::Sigma).unwrap());
        }
    }

    #[test]
    fn ascent_is_monotone(seed in seeds(), s in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g: F = sample::gamma_pow_element(6, 2 * s + 1, &mut rng);
        prop_assert!(member(&g, GroupId::GammaAsc(2 * s)).unwrap());
        for k in 1..=4 {
            if member(&g, GroupId::GammaAsc(2 * k + 2)).unwrap() {
                prop_assert!(member(&g, GroupId::GammaAsc(2 * k)).unwrap());
            }
        }
    }

    #[test]
    fn factors_lie_in_their_groups(seed in seeds()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g: F = sample::gamma_element(5, &mut rng);
        for f in [decompose_gamma(&g).unwrap(), decompose_layers(&g).unwrap()] {
            prop_assert!(f.verify(&g).unwrap());
        }
    }
}
