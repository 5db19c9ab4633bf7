use num_bigint::BigUint;
use proptest::prelude::*;

use finring::actions::{burnside_orbits, multiset_count};
use finring::construct::{quotient, unitalize};
use finring::corpus::corpus;
use finring::subgroup::ideal_generated;
use finring::wedderburn::{canonical_factors, decompose_semisimple, rebuild, Factor};
use finring::{FiniteRing, Side};

/// Row operations applied to the identity, with the inverse tracked alongside.
fn random_basis_change(p: u64, r: usize, ops: &[(usize, usize, u64)]) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
    let id = |n: usize| (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect::<Vec<_>>()).collect::<Vec<_>>();
    let (mut m, mut inv) = (id(r), id(r));
    for &(a, b, c) in ops {
        let (a, b) = (a % r, b % r);
        if a == b {
            continue;
        }
        // row_a += c row_b on m; the inverse gets column_b -= c column_a
        for k in 0..r {
            m[a][k] = (m[a][k] + c * m[b][k]) % p;
            inv[k][b] = (inv[k][b] + (p - c % p) * inv[k][a]) % p;
        }
    }
    (m, inv)
}

/// The same ring on the basis `f_i = Σ_j m[i][j] e_j` (all moduli equal to `p`).
fn rebased(ring: &FiniteRing, p: u64, m: &[Vec<u64>], inv: &[Vec<u64>]) -> FiniteRing {
    let r = ring.rank();
    let mut table = vec![0u64; r * r * r];
    for i in 0..r {
        for j in 0..r {
            let prod = ring.mul(&m[i], &m[j]);
            for k in 0..r {
                let c: u64 = (0..r).map(|t| prod[t] * inv[t][k]).sum::<u64>() % p;
                table[(i * r + j) * r + k] = c;
            }
        }
    }
    FiniteRing::from_table("rebased", vec![p; r], table).unwrap()
}

fn factor_strategy() -> impl Strategy<Value = (u64, Vec<Factor>)> {
    prop_oneof![
        proptest::collection::vec(prop_oneof![Just((1usize, 2u64)), Just((1, 4)), Just((1, 8)), Just((2, 2))], 1..4)
            .prop_map(|v| (2u64, v)),
        proptest::collection::vec(prop_oneof![Just((1usize, 3u64)), Just((1, 9))], 1..4).prop_map(|v| (3u64, v)),
    ]
    .prop_filter_map("order at most 256", |(p, v)| {
        let order: u128 = v.iter().map(|&(k, q)| (q as u128).pow((k * k) as u32)).product();
        (order <= 256).then(|| (p, v.into_iter().map(|(k, q)| Factor::new(k, q, 1)).collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn decomposition_ignores_basis(
        (p, factors) in factor_strategy(),
        ops in proptest::collection::vec((0usize..64, 0usize..64, 1u64..9), 0..40),
    ) {
        let ring = rebuild(&factors).unwrap();
        let (m, inv) = random_basis_change(p, ring.rank(), &ops);
        let scrambled = rebased(&ring, p, &m, &inv);
        let d = decompose_semisimple(&scrambled).unwrap();
        prop_assert_eq!(d.factors, canonical_factors(&factors));
        prop_assert!(d.iso.is_isomorphism());
    }

    #[test]
    fn associativity_on_samples(idx in 0usize..64, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let rings = corpus();
        let r = &rings[idx % rings.len()];
        let [x, y, z] = [a, b, c].map(|s| r.element_at(s as u128 % r.order()));
        prop_assert_eq!(r.mul(&r.mul(&x, &y), &z), r.mul(&x, &r.mul(&y, &z)));
    }

    #[test]
    fn quotient_and_unitalization_orders(idx in 0usize..64, a in any::<u64>()) {
        let rings = corpus();
        let r = &rings[idx % rings.len()];
        let x = r.element_at(a as u128 % r.order());
        let i = ideal_generated(r, std::slice::from_ref(&x), Side::Two);
        prop_assert!(i.contains(&x));
        let (q, proj) = quotient(r, &i).unwrap();
        prop_assert_eq!(q.order() * i.order(), r.order());
        prop_assert_eq!(proj.kernel(), i);
        let c = r.characteristic();
        let (r1, emb) = unitalize(r, 2 * c).unwrap();
        prop_assert_eq!(r1.order(), r.order() * 2 * c as u128);
        prop_assert!(r1.is_unital());
        prop_assert!(emb.image().is_two_sided_ideal(&r1));
    }

    #[test]
    fn burnside_single_column_counts_multisets(order in 1u128..20, m in 1usize..8) {
        prop_assert_eq!(burnside_orbits(order, m, 1), multiset_count(&BigUint::from(order), m));
        // n columns act like one column over R^n
        prop_assert_eq!(burnside_orbits(order, m, 2), burnside_orbits(order * order, m, 1));
    }
}
