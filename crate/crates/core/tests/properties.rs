use num_integer::Integer;
use proptest::prelude::*;

use rcong::arith::{divisors, generalized_gcd, integer_root, is_perfect_power, jordan_totient};
use rcong::congruence::{class_profile, count_restricted, CongruenceInstance};
use rcong::oracle::{brute_force_count, convolution_count, Budgets};
use rcong::ramanujan::{cohen_ramanujan, ramanujan_classic, RamanujanCache};

/// An `n` in `1..=max_n` with a restriction list drawn from its divisors.
fn instance_parts(max_n: u64, max_k: usize) -> impl Strategy<Value = (u64, Vec<u64>)> {
    (1..=max_n).prop_flat_map(move |n| {
        let divs = divisors(n).unwrap();
        let t = prop::collection::vec(prop::sample::select(divs), 0..=max_k);
        (Just(n), t)
    })
}

proptest! {
    #[test]
    fn ggcd_is_a_common_perfect_power(a in -100_000i128..100_000, b in 1i128..100_000, s in 1u32..5) {
        let g = generalized_gcd(a, b, s).unwrap();
        let plain = a.unsigned_abs().gcd(&b.unsigned_abs());
        prop_assert_eq!(plain % g.value(), 0);
        prop_assert!(is_perfect_power(g.value(), s));
        prop_assert_eq!(integer_root(g.value(), s), g.base() as u128);
        // No larger s-th power divides the plain gcd's cofactor jointly.
        let l = g.base() as u128;
        for p in [2u128, 3, 5, 7] {
            let bigger = (l * p).pow(s);
            prop_assert!(plain % bigger != 0);
        }
    }

    #[test]
    fn ggcd_periodic_and_sign_blind(a in -5000i128..5000, b in 1i128..5000, q in -20i128..20, s in 1u32..4) {
        let base = generalized_gcd(a, b, s);
        prop_assume!(base.is_ok());
        prop_assert_eq!(generalized_gcd(a + q * b, b, s).ok(), base.clone().ok());
        prop_assert_eq!(generalized_gcd(-a, -b, s).ok(), base.ok());
    }

    #[test]
    fn ramanujan_periodic_even_reflected(r in 1u64..40, s in 1u32..4, n in -10_000i128..10_000) {
        let rs = (r as i128).pow(s);
        let c = cohen_ramanujan(r, s, n).unwrap();
        prop_assert_eq!(cohen_ramanujan(r, s, n + rs).unwrap(), c);
        prop_assert_eq!(cohen_ramanujan(r, s, -n).unwrap(), c);
        let reduced = if n == 0 { rs } else { generalized_gcd(n, rs, s).unwrap().value() as i128 };
        prop_assert_eq!(cohen_ramanujan(r, s, reduced).unwrap(), c);
        prop_assert!(c.abs() <= jordan_totient(r, s).unwrap() as i128);
    }

    #[test]
    fn ramanujan_first_power_is_classic(r in 1u64..5000, n in -100_000i128..100_000) {
        prop_assert_eq!(cohen_ramanujan(r, 1, n).unwrap(), ramanujan_classic(r, n).unwrap());
    }

    #[test]
    fn cache_agrees_with_fresh_evaluation(queries in prop::collection::vec((1u64..30, 1u32..4, -500i128..500), 1..60)) {
        let cache = RamanujanCache::new();
        for (r, s, n) in queries {
            prop_assert_eq!(cache.get(r, s, n).unwrap(), cohen_ramanujan(r, s, n).unwrap());
        }
    }

    #[test]
    fn profile_counts_restrictions((n, t) in instance_parts(60, 8)) {
        let p = class_profile(n, &t).unwrap();
        prop_assert_eq!(p.k(), t.len() as u64);
        for (d, g) in p.iter() {
            prop_assert_eq!(g, t.iter().filter(|&&x| x == d).count() as u64);
        }
    }

    #[test]
    fn count_ignores_restriction_order((n, t) in instance_parts(12, 5), s in 1u32..3, b in -200i128..200, seed in any::<u64>()) {
        let mut shuffled = t.clone();
        // Deterministic rotation plus reversal driven by the seed.
        if !shuffled.is_empty() {
            let len = shuffled.len();
            shuffled.rotate_left((seed as usize) % len);
        }
        if seed % 2 == 1 {
            shuffled.reverse();
        }
        let a = count_restricted(&CongruenceInstance::new(n, s, b, t).unwrap()).unwrap();
        let c = count_restricted(&CongruenceInstance::new(n, s, b, shuffled).unwrap()).unwrap();
        prop_assert_eq!(a, c);
    }

    #[test]
    fn count_periodic_in_target((n, t) in instance_parts(10, 4), s in 1u32..3, b in -300i128..300) {
        let inst = CongruenceInstance::new(n, s, b, t).unwrap();
        let m = inst.modulus() as i128;
        let c = count_restricted(&inst).unwrap();
        prop_assert_eq!(count_restricted(&inst.with_b(b + m)).unwrap(), c.clone());
        let reduced = if inst.b() == 0 { m } else { generalized_gcd(inst.b() as i128, m, s).unwrap().value() as i128 };
        prop_assert_eq!(count_restricted(&inst.with_b(reduced)).unwrap(), c);
    }

    #[test]
    fn engines_agree_on_random_instances((n, t) in instance_parts(9, 3), s in 1u32..3, b in 0i128..100) {
        let inst = CongruenceInstance::new(n, s, b, t).unwrap();
        let budgets = Budgets::default();
        let f = count_restricted(&inst).unwrap();
        prop_assert_eq!(convolution_count(&inst, &budgets).unwrap(), f.clone());
        if let Ok(bf) = brute_force_count(&inst, &budgets) {
            prop_assert_eq!(bf, f);
        }
    }
}
