use std::collections::BTreeSet;
use std::sync::Arc;

use knsub_core::module::{
    enumerate_submodules, residual_element, residual_ring, span, Submodule, DEFAULT_MODULE_CAP,
};
use knsub_core::predicates::{
    colon_test, is_kn_closed, is_kn_closed_over_submodules, is_n_absorbing, is_quasi_prime, is_semi_n_absorbing,
    is_semiprime, is_strongly_kn_closed, spectrum,
};
use knsub_core::ring::{factorize, ideal_radical, is_kn_closed_ideal, units, RingIdeal};
use knsub_core::{build_module, FiniteModule, ZModRing};
use proptest::prelude::*;

const MODULI: [u64; 12] = [2, 4, 6, 8, 9, 12, 16, 18, 24, 27, 30, 36];

/// A coordinate module of rank one or two over one of `MODULI`, kept small.
fn small_module() -> impl Strategy<Value = Arc<FiniteModule>> {
    (0..MODULI.len(), 0usize..64, 0usize..64, any::<bool>()).prop_filter_map("too large", |(i, a, b, two)| {
        let m = MODULI[i];
        let ds: Vec<u64> = factorize(m).divisors().into_iter().filter(|&d| d > 1).collect();
        let mut orders = vec![ds[a % ds.len()]];
        if two {
            orders.push(ds[b % ds.len()]);
        }
        let size: u64 = orders.iter().product();
        (size <= 144).then(|| build_module(ZModRing::new(m).unwrap(), &orders).unwrap())
    })
}

/// A module together with a proper submodule spanned by random elements.
fn module_and_submodule() -> impl Strategy<Value = Submodule> {
    (small_module(), prop::collection::vec(any::<usize>(), 0..3)).prop_filter_map("not proper", |(m, picks)| {
        let gens: Vec<usize> = picks.iter().map(|p| p % m.size()).collect();
        let n = span(&m, &gens).unwrap();
        n.is_proper().then_some(n)
    })
}

fn kn() -> impl Strategy<Value = (u32, u32)> {
    (1u32..=4, 1u32..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn ideal_reflexive_and_monotone(i in 0..MODULI.len(), pick in any::<usize>(), (k, n) in kn()) {
        let ring = ZModRing::new(MODULI[i]).unwrap();
        let proper: Vec<RingIdeal> = ring.ideals().into_iter().filter(|i| i.is_proper()).collect();
        let ideal = &proper[pick % proper.len()];
        prop_assert!(is_kn_closed_ideal(ideal, k, k).unwrap().holds);
        if is_kn_closed_ideal(ideal, k, n).unwrap().holds {
            for k2 in 1..=k {
                for n2 in n..=5 {
                    prop_assert!(is_kn_closed_ideal(ideal, k2, n2).unwrap().holds);
                }
            }
        }
    }

    #[test]
    fn radical_is_idempotent_and_contains(i in 0..MODULI.len(), pick in any::<usize>()) {
        let ring = ZModRing::new(MODULI[i]).unwrap();
        let ideals = ring.ideals();
        let ideal = &ideals[pick % ideals.len()];
        let rad = ideal_radical(ideal);
        prop_assert!(ideal.is_subset_of(&rad));
        prop_assert_eq!(ideal_radical(&rad), rad);
    }

    #[test]
    fn span_is_idempotent(n in module_and_submodule()) {
        let again = span(n.module(), n.elements()).unwrap();
        prop_assert_eq!(&again, &n);
        let from_gens = span(n.module(), n.generators()).unwrap();
        prop_assert_eq!(from_gens, n);
    }

    #[test]
    fn residual_matches_full_scan(n in module_and_submodule()) {
        let m = n.module();
        let colon = residual_ring(&n);
        for r in m.ring().elements() {
            let scan = m.elements().all(|x| n.contains(m.scale(r, x)));
            prop_assert_eq!(colon.contains(r), scan);
        }
        for x in m.elements() {
            prop_assert!(colon.is_subset_of(&residual_element(&n, x)));
        }
    }

    #[test]
    fn scalar_reduction_is_sound(n in module_and_submodule(), mult in 2u64..4) {
        let m = n.module();
        let orders = m.orders().unwrap().to_vec();
        let bigger = build_module(ZModRing::new(m.ring().modulus() * mult).unwrap(), &orders).unwrap();
        let lifted = span(&bigger, n.generators()).unwrap();
        prop_assert_eq!(lifted.elements(), n.elements());
        prop_assert_eq!(spectrum(&lifted, 3).unwrap().fingerprint(), spectrum(&n, 3).unwrap().fingerprint());
        prop_assert_eq!(is_semiprime(&lifted).unwrap().holds, is_semiprime(&n).unwrap().holds);
        prop_assert_eq!(is_quasi_prime(&lifted).unwrap().holds, is_quasi_prime(&n).unwrap().holds);
        prop_assert_eq!(is_n_absorbing(&lifted, 2, 3).unwrap().holds, is_n_absorbing(&n, 2, 3).unwrap().holds);
    }

    #[test]
    fn spectrum_laws(n in module_and_submodule()) {
        let s = spectrum(&n, 4).unwrap();
        for n_ in 1..=4 {
            if s.holds(n_, n_) {
                for k in 1..=4 {
                    prop_assert!(s.holds(k, n_), "holds({n_},{n_}) but not ({k},{n_})");
                }
            }
        }
        for n_ in 1..4 {
            if is_semi_n_absorbing(&n, n_).unwrap().holds {
                prop_assert!(is_semi_n_absorbing(&n, n_ + 1).unwrap().holds);
            }
        }
    }

    #[test]
    fn stronger_predicates_imply_closure(n in module_and_submodule()) {
        let s = spectrum(&n, 4).unwrap();
        if is_semiprime(&n).unwrap().holds {
            for k in 1..=4 {
                for n_ in 2..=4 {
                    prop_assert!(s.holds(k, n_));
                }
            }
        }
        if is_quasi_prime(&n).unwrap().holds {
            for k in 2..=4 {
                for n_ in 2..=k {
                    prop_assert!(s.holds(k, n_));
                }
            }
        }
        for a in 1..=3 {
            if is_n_absorbing(&n, a, 3).unwrap().holds {
                prop_assert!(is_semi_n_absorbing(&n, a).unwrap().holds);
                for k in 1..=4 {
                    prop_assert!(s.holds(k, a));
                }
            }
        }
    }

    #[test]
    fn strong_form_coincides_over_zmod(n in module_and_submodule(), (k, n_) in kn()) {
        prop_assert_eq!(is_strongly_kn_closed(&n, k, n_).unwrap().holds, is_kn_closed(&n, k, n_).unwrap().holds);
    }

    #[test]
    fn residual_ideal_inherits_closure(n in module_and_submodule(), (k, n_) in kn()) {
        if is_kn_closed(&n, k, n_).unwrap().holds {
            prop_assert!(is_kn_closed_ideal(&residual_ring(&n), k, n_).unwrap().holds);
            for x in n.module().elements().filter(|&x| !n.contains(x)) {
                prop_assert!(is_kn_closed_ideal(&residual_element(&n, x), k, n_).unwrap().holds);
            }
        }
        let all_colons = n
            .module()
            .elements()
            .filter(|&x| !n.contains(x))
            .all(|x| is_kn_closed_ideal(&residual_element(&n, x), k, n_).unwrap().holds);
        if all_colons {
            prop_assert!(is_kn_closed(&n, k, n_ + 1).unwrap().holds);
        }
    }

    #[test]
    fn element_and_submodule_forms_agree(n in module_and_submodule(), (k, n_) in kn()) {
        let lattice = enumerate_submodules(n.module(), DEFAULT_MODULE_CAP).unwrap();
        let element = is_kn_closed(&n, k, n_).unwrap();
        let submodule = is_kn_closed_over_submodules(&n, k, n_, &lattice).unwrap();
        prop_assert_eq!(element.holds, submodule.holds);
    }

    #[test]
    fn colon_test_agrees_when_k_at_least_n_minus_one(n in module_and_submodule(), (k, n_) in kn()) {
        prop_assume!(k + 1 >= n_);
        prop_assert_eq!(colon_test(&n, k, n_).unwrap().holds, is_kn_closed(&n, k, n_).unwrap().holds);
    }

    #[test]
    fn witnesses_are_genuine(n in module_and_submodule(), (k, n_) in kn()) {
        let v = is_kn_closed(&n, k, n_).unwrap();
        if let Some(knsub_core::Witness::Scalar { r, x }) = v.witness {
            prop_assert!(knsub_core::predicates::replays_kn_violation(&n, k, n_, r, x));
        } else {
            prop_assert!(v.holds);
        }
    }
}

#[test]
fn units_form_a_group() {
    for m in MODULI {
        let ring = ZModRing::new(m).unwrap();
        let u = units(&ring);
        for &a in &u {
            assert_has_inverse(&ring, &u, a);
            for &b in &u {
                assert!(u.contains(&ring.mul(a, b)));
            }
        }
    }
}

fn assert_has_inverse(ring: &ZModRing, u: &BTreeSet<u64>, a: u64) {
    assert!(u.iter().any(|&b| ring.mul(a, b) == 1), "{a} has no inverse mod {}", ring.modulus());
}

/// Subgroups of `Z_a × Z_b` counted by brute force over all subsets closed under addition.
fn subgroup_count_oracle(a: u64, b: u64) -> usize {
    let elems: Vec<(u64, u64)> = (0..a).flat_map(|x| (0..b).map(move |y| (x, y))).collect();
    let mut found = BTreeSet::new();
    for x in &elems {
        for y in &elems {
            // Every subgroup of a rank-two group is generated by two elements.
            let mut set = BTreeSet::from([(0, 0)]);
            loop {
                let before = set.len();
                let snapshot: Vec<_> = set.iter().copied().collect();
                for &(p, q) in &snapshot {
                    for &(g, h) in [x, y] {
                        set.insert(((p + g) % a, (q + h) % b));
                    }
                }
                if set.len() == before {
                    break;
                }
            }
            found.insert(set);
        }
    }
    found.len()
}

#[test]
fn enumeration_matches_subgroup_oracle() {
    for (m, a, b) in [(4u64, 4u64, 2u64), (2, 2, 2), (3, 3, 3), (8, 8, 2), (9, 9, 3), (6, 6, 6), (4, 4, 4)] {
        let module = build_module(ZModRing::new(m).unwrap(), &[a, b]).unwrap();
        let subs = enumerate_submodules(&module, DEFAULT_MODULE_CAP).unwrap();
        let distinct: BTreeSet<Vec<usize>> = subs.iter().map(|s| s.elements().to_vec()).collect();
        assert_eq!(distinct.len(), subs.len());
        assert_eq!(subs.len(), subgroup_count_oracle(a, b), "Z_{a}×Z_{b}");
    }
    for m in MODULI {
        let module = build_module(ZModRing::new(m).unwrap(), &[m]).unwrap();
        let subs = enumerate_submodules(&module, DEFAULT_MODULE_CAP).unwrap();
        assert_eq!(subs.len(), factorize(m).divisors().len());
    }
}
