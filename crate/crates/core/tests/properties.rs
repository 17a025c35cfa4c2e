use garside::census::{sample_rng, TransitionGraph};
use garside::conjugacy::{fast_rigid_conjugate, verify_conjugator, WitnessPattern};
use garside::genericity::{observation_test, symmetric_criterion, Scheme};
use garside::{ArtinWord, Letter, NormalForm, SimpleBraid};
use proptest::prelude::*;

fn word(n: usize, max_len: usize) -> impl Strategy<Value = ArtinWord> {
    prop::collection::vec((1..n, any::<bool>()), 0..max_len).prop_map(move |ls| {
        let letters = ls
            .into_iter()
            .map(|(i, inv)| if inv { Letter::neg(i) } else { Letter::pos(i) })
            .collect();
        ArtinWord::new(n, letters).unwrap()
    })
}

fn braid(n: usize, max_len: usize) -> impl Strategy<Value = NormalForm> {
    word(n, max_len).prop_map(|w| NormalForm::from_word(&w).unwrap())
}

fn strands_and_braids() -> impl Strategy<Value = (NormalForm, NormalForm, NormalForm)> {
    (3usize..=5).prop_flat_map(|n| (braid(n, 24), braid(n, 24), braid(n, 24)))
}

fn simple_pair() -> impl Strategy<Value = (SimpleBraid, SimpleBraid)> {
    (3usize..=6).prop_flat_map(|n| {
        let all = SimpleBraid::all(n).unwrap();
        let k = all.len();
        (0..k, 0..k).prop_map(move |(a, b)| (all[a], all[b]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normal_forms_are_valid_and_round_trip((x, _, _) in strands_and_braids()) {
        prop_assert!(x.check().is_ok());
        prop_assert_eq!(NormalForm::from_word(&x.to_word()).unwrap(), x.clone());
        prop_assert_eq!(x.to_string().matches(" . ").count() + 1, x.canonical_length().max(1));
    }

    #[test]
    fn group_laws((x, y, z) in strands_and_braids()) {
        let xy = x.multiply(&y).unwrap();
        prop_assert_eq!(xy.multiply(&z).unwrap(), x.multiply(&y.multiply(&z).unwrap()).unwrap());
        prop_assert!(x.multiply(&x.inverse()).unwrap().is_identity());
        prop_assert_eq!(x.inverse().inverse(), x.clone());
        prop_assert_eq!(xy.inverse(), y.inverse().multiply(&x.inverse()).unwrap());
        prop_assert_eq!(x.conjugate_by(&y).unwrap().conjugate_by(&z).unwrap(),
                        x.conjugate_by(&y.multiply(&z).unwrap()).unwrap());
    }

    #[test]
    fn word_inverse_matches_group_inverse(w in word(4, 30)) {
        let x = NormalForm::from_word(&w).unwrap();
        prop_assert_eq!(NormalForm::from_word(&w.inverse()).unwrap(), x.inverse());
    }

    #[test]
    fn complement_and_tau((x, _, _) in strands_and_braids()) {
        let n = x.strands();
        let c = x.complement();
        prop_assert_eq!(x.multiply(&c).unwrap(), NormalForm::delta_power(n, x.sup()).unwrap());
        prop_assert_eq!(x.tau_conjugate().tau_conjugate(), x.clone());
        prop_assert!(verify_conjugator(&x, &x.tau_conjugate(), &NormalForm::delta_power(n, 1).unwrap()).unwrap());
        prop_assert_eq!(x.reversed().reversed(), x.clone());
        prop_assert_eq!((x.reversed().inf(), x.reversed().sup()), (x.inf(), x.sup()));
    }

    #[test]
    fn gcd_is_a_common_prefix((x, y, z) in strands_and_braids()) {
        let g = x.gcd(&y).unwrap();
        prop_assert!(g.left_divides(&x).unwrap() && g.left_divides(&y).unwrap());
        prop_assert_eq!(g.clone(), y.gcd(&x).unwrap());
        // left multiplication commutes with gcd
        prop_assert_eq!(z.multiply(&g).unwrap(), z.multiply(&x).unwrap().gcd(&z.multiply(&y).unwrap()).unwrap());
    }

    #[test]
    fn simple_lattice((a, b) in simple_pair()) {
        let m = a.meet(&b).unwrap();
        prop_assert!(m.left_divides(&a).unwrap() && m.left_divides(&b).unwrap());
        prop_assert_eq!(a.mul(&a.complement()), Some(SimpleBraid::delta(a.strands()).unwrap()));
        prop_assert_eq!(a.tau().tau(), a);
        prop_assert_eq!(a.is_left_weighted(&b), b.reversed().is_right_weighted(&a.reversed()));
        prop_assert_eq!(SimpleBraid::from_word(&a.canonical_word()).unwrap(), a);
        prop_assert_eq!(a.canonical_word().len(), a.length());
    }

    #[test]
    fn cycling_rigid_braids_stays_rigid((x, _, _) in strands_and_braids()) {
        if x.canonical_length() > 0 && x.is_rigid().unwrap() {
            let orbit = x.rigid_orbit_with_conjugators().unwrap();
            prop_assert!(orbit.len() <= 2 * x.canonical_length());
            for (z, c) in &orbit {
                prop_assert!(z.is_rigid().unwrap());
                prop_assert!(verify_conjugator(&x, z, c).unwrap());
            }
            let cyc = x.cycling().unwrap();
            prop_assert!(orbit.iter().any(|(z, _)| *z == cyc));
        }
    }

    #[test]
    fn sampled_braids_satisfy_the_rigidification_guarantees(
        n in 3usize..=5, l in 5usize..=30, eps in -3i64..=3, seed in any::<u64>()
    ) {
        let g = TransitionGraph::new(n, l).unwrap();
        let x = g.sample_sphere(l, eps, &mut sample_rng(seed, l, 0)).unwrap();
        prop_assert!(x.check().is_ok());
        prop_assert_eq!((x.inf(), x.canonical_length()), (eps, l));
        for scheme in [Scheme::Floor, Scheme::Ceiling] {
            let Ok(found) = observation_test(&x, scheme) else { continue };
            if let Some(r) = &found {
                prop_assert!(r.validate(&x, scheme).is_ok());
            }
            if symmetric_criterion(&x, scheme).unwrap() {
                prop_assert!(found.is_some());
            }
        }
        let out = fast_rigid_conjugate(&x, &WitnessPattern::all(n), Scheme::Floor).unwrap();
        if let Some(c) = out.certificate() {
            prop_assert!(c.verify(&x).is_ok());
        }
    }
}
