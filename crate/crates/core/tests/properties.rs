use std::sync::Arc;

use proptest::prelude::*;
use symq_core::constructors::{
    alexander_context, dihedral_quandle, galex_quandle, linear_context, linear_quandle,
    takasaki_kei, twisted_conj_quandle,
};
use symq_core::group::{gcd, make_cyclic_group, make_unit_automorphism, GroupMap};
use symq_core::involution::{
    enumerate_theorem, parametrization_bound, verify_good_involution, EnumOptions,
};
use symq_core::quandle::{are_isomorphic, check_quandle_axioms, ISOMORPHISM_NODE_BUDGET};
use num_bigint::BigUint;

fn unit_strategy() -> impl Strategy<Value = (usize, i64)> {
    (2usize..=30).prop_flat_map(|n| {
        let units: Vec<i64> = (1..n as i64).filter(|&k| gcd(n, k as usize) == 1).collect();
        (Just(n), proptest::sample::select(units))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linear_quandles_satisfy_axioms((n, k) in unit_strategy()) {
        let q = linear_quandle(n, k).unwrap();
        prop_assert!(check_quandle_axioms(&q.rows()).unwrap());
        prop_assert_eq!(q.is_kei(), (k * k) % n as i64 == 1 % n as i64);
    }

    #[test]
    fn dual_is_a_quandle((n, k) in unit_strategy()) {
        let q = linear_quandle(n, k).unwrap();
        let d = q.dual();
        prop_assert!(d.satisfies_axioms());
        prop_assert_eq!(d.dual(), q);
    }

    #[test]
    fn theorem_runs_respect_bounds((n, k) in unit_strategy()) {
        // Trivial quandles have every involution of the carrier as a good
        // involution, far beyond the mapping cap for large n.
        prop_assume!(n <= 20 && (k != 1 || n <= 10));
        let ctx = linear_context(n, k).unwrap();
        let set = enumerate_theorem(&ctx, &EnumOptions::default()).unwrap();
        let s = ctx.s_set().len() as u64;
        prop_assert!(BigUint::from(set.count) <= parametrization_bound(&ctx));
        prop_assert!(set.count >= s);
        if ctx.quandle().is_connected() {
            prop_assert_eq!(set.count, s);
        }
        let parts = ctx.quandle().components();
        for m in set.mappings.unwrap() {
            prop_assert!(verify_good_involution(ctx.quandle(), &m.mapping).unwrap());
            let psi = m.inducing_psi.unwrap();
            prop_assert_eq!(psi.len(), parts.len());
            // ψ is constant on components by construction; it must also be
            // constant along ρ-orbits.
            for x in 0..n {
                let y = m.mapping[x];
                prop_assert_eq!(psi[parts.component_of(x)], psi[parts.component_of(y)]);
                prop_assert_eq!(ctx.induced_image(psi[parts.component_of(x)], x), ctx.carrier()[y]);
            }
        }
    }

    #[test]
    fn alexander_shortcut_agrees_with_generic((n, k) in unit_strategy()) {
        let phi = make_unit_automorphism(n, k).unwrap();
        let g = Arc::clone(phi.domain());
        let shortcut = alexander_context(Arc::clone(&g), phi.clone()).unwrap();
        let generic = twisted_conj_quandle(g, phi).unwrap();
        prop_assert_eq!(shortcut.s_set(), generic.s_set());
        prop_assert_eq!(shortcut.quandle(), generic.quandle());
    }
}

#[test]
fn connected_kei_iff_odd_dihedral() {
    for n in 2..=24usize {
        for k in 1..n as i64 {
            if gcd(n, k as usize) != 1 {
                continue;
            }
            let q = linear_quandle(n, k).unwrap();
            let expected = n % 2 == 1 && k == n as i64 - 1;
            assert_eq!(q.is_connected() && q.is_kei(), expected, "({n}, {k})");
        }
    }
}

#[test]
fn other_constructors_are_quandles() {
    for n in 1..=16 {
        let z = Arc::new(make_cyclic_group(n).unwrap());
        assert!(takasaki_kei(&z).unwrap().satisfies_axioms());
        assert!(dihedral_quandle(n).unwrap().satisfies_axioms());
        let inv = GroupMap::inversion(Arc::clone(&z)).unwrap();
        assert!(galex_quandle(&z, &inv).unwrap().satisfies_axioms());
    }
}

#[test]
fn small_linear_isomorphic_to_dihedral() {
    let l83 = linear_quandle(8, 3).unwrap();
    let r8 = dihedral_quandle(8).unwrap();
    let theta = are_isomorphic(&l83, &r8, ISOMORPHISM_NODE_BUDGET).unwrap();
    assert!(theta.is_some());
    let l85 = linear_quandle(8, 5).unwrap();
    assert!(are_isomorphic(&l85, &r8, ISOMORPHISM_NODE_BUDGET).unwrap().is_none());
}
