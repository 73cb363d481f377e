use proptest::prelude::*;

use super::*;
use crate::exact::{int, Rational};

/// Independent psi-integral oracle: string equation down to `M_{0,3}`.
fn string_oracle(exps: &[u32]) -> Rational {
    let n = exps.len();
    let total: u32 = exps.iter().sum();
    if n < 3 || total as usize + 3 != n {
        return int(0);
    }
    if n == 3 {
        return int(1);
    }
    let Some(free) = exps.iter().position(|&a| a == 0) else {
        return int(0);
    };
    let rest: Vec<u32> = exps
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != free)
        .map(|(_, &a)| a)
        .collect();
    let mut acc = int(0);
    for j in 0..rest.len() {
        if rest[j] > 0 {
            let mut lowered = rest.clone();
            lowered[j] -= 1;
            acc += string_oracle(&lowered);
        }
    }
    acc
}

fn d(n: usize, side: &[usize]) -> TautClass {
    TautClass::boundary_divisor(n, side).unwrap()
}

#[test]
fn psi_monomials_match_string_equation() {
    for n in 3..=8usize {
        for exps in compositions(n as u32 - 3, n) {
            let class = TautClass::psi_monomial(&exps);
            assert_eq!(integrate(&class), string_oracle(&exps), "{exps:?}");
        }
    }
}

#[test]
fn constructors_and_small_integrals() {
    let p = psi_class(4, 1).unwrap();
    assert_eq!(p.len(), 1);
    assert_eq!(integrate(&p), int(1));
    let p5 = psi_class(5, 1).unwrap();
    assert_eq!(integrate(&p5.mul(&p5).unwrap()), int(1));
    assert!(psi_class(4, 5).is_err());
    assert!(psi_class(4, 0).is_err());
    assert_eq!(integrate(&kappa_class(4, 1).unwrap()), int(1));
    // integrate(kappa_2) on M_{0,5} is 1; see kappa_matches_mumford_relation
    assert_eq!(integrate(&kappa_class(5, 2).unwrap()), int(1));
    assert_eq!(integrate(&TautClass::one(3)), int(1));
    assert_eq!(integrate(&psi_class(3, 1).unwrap()), int(0));
    assert_eq!(integrate(&psi_class(5, 1).unwrap()), int(0));
}

#[test]
fn kappa_zero_counts_special_points() {
    for n in 4..=7usize {
        let mut exps = vec![0; n];
        exps[0] = n as u32 - 3;
        let base = TautClass::psi_monomial(&exps);
        let with_kappa0 = base.mul(&kappa_class(n, 0).unwrap()).unwrap();
        // kappa_0 has degree 0 here, so the product keeps degree n-3
        assert_eq!(integrate(&with_kappa0), int(n as i64 - 2));
    }
}

/// On `M_{0,n}`, `kappa_1 = sum psi_i - (total boundary)`.
fn kappa1_via_boundary(n: usize) -> TautClass {
    let mut out = TautClass::zero(n);
    for i in 1..=n {
        out = &out + &psi_class(n, i).unwrap();
    }
    for side in stable_splits(n) {
        out = &out - &d(n, &side);
    }
    out
}

#[test]
fn kappa_matches_mumford_relation() {
    for n in 4..=7usize {
        let k = kappa_class(n, 1).unwrap();
        let alt = kappa1_via_boundary(n);
        for power in 1..=(n as u32 - 3) {
            let rest = n as u32 - 3 - power;
            for exps in compositions(rest, n) {
                let mono = TautClass::psi_monomial(&exps);
                let lhs = integrate(&k.pow(power).unwrap().mul(&mono).unwrap());
                let rhs = integrate(&alt.pow(power).unwrap().mul(&mono).unwrap());
                assert_eq!(lhs, rhs, "n={n} power={power} {exps:?}");
            }
        }
    }
    assert_eq!(integrate(&kappa_class(5, 1).unwrap().pow(2).unwrap()), int(5));
    assert_eq!(integrate(&kappa_class(6, 1).unwrap().pow(3).unwrap()), int(61));
}

#[test]
fn boundary_examples() {
    let d12 = d(4, &[1, 2]);
    assert_eq!(integrate(&d12), int(1));
    assert_eq!(d12, d(4, &[3, 4]));
    assert!(d12.mul(&d(4, &[1, 3])).unwrap().is_zero());
    assert!(matches!(
        TautClass::boundary_divisor(4, &[1]),
        Err(crate::Error::UnstableSplit { .. })
    ));

    // psi on the I side lives on the 3-pointed component; psi_hat on the
    // 4-pointed one
    let psi_node = NodeClass::monomial(1, 0, int(1));
    let psi_hat = NodeClass::monomial(0, 1, int(1));
    let a = boundary_pushforward(5, &[1, 2], &psi_node).unwrap();
    let b = boundary_pushforward(5, &[1, 2], &psi_hat).unwrap();
    assert_eq!(integrate(&a), int(0));
    assert_eq!(integrate(&b), int(1));
    assert_eq!(a, boundary_pushforward(5, &[3, 4, 5], &psi_hat).unwrap());

    let d12 = d(5, &[1, 2]);
    assert_eq!(integrate(&d12.mul(&d12).unwrap()), int(-1));
    let psi1 = psi_class(5, 1).unwrap();
    assert_eq!(integrate(&psi1.mul(&d(5, &[2, 3])).unwrap()), int(1));
    assert_eq!(integrate(&psi1.mul(&d(5, &[1, 2])).unwrap()), int(0));
}

#[test]
fn four_point_degrees() {
    for i in 1..=4 {
        assert_eq!(integrate(&psi_class(4, i).unwrap()), int(1));
    }
    for side in stable_sides(4) {
        assert_eq!(integrate(&d(4, &side)), int(1));
    }
}

#[test]
fn keel_relation_on_five_points() {
    let n = 5;
    let mut rel = psi_class(n, 1).unwrap();
    for side in stable_sides(n) {
        if side.contains(&1) && !side.contains(&2) && !side.contains(&3) {
            rel = &rel - &d(n, &side);
        }
    }
    let mut generators: Vec<TautClass> = (1..=n).map(|j| psi_class(n, j).unwrap()).collect();
    generators.extend(stable_splits(n).iter().map(|s| d(n, s)));
    generators.push(kappa_class(n, 1).unwrap());
    for g in &generators {
        assert_eq!(integrate(&rel.mul(g).unwrap()), int(0));
    }
}

#[test]
fn weighted_integration() {
    let d12 = d(4, &[1, 2]);
    assert_eq!(integrate_weighted(&d12, 5), Rational::new(1.into(), 25.into()));
    let p = psi_class(4, 1).unwrap();
    assert_eq!(integrate_weighted(&p, 5), Rational::new(1.into(), 5.into()));
    let mixed = &(&d12 + &p) + &kappa_class(4, 1).unwrap();
    assert_eq!(integrate_weighted(&mixed, 1), integrate(&mixed));
}

#[test]
fn json_shape() {
    let c = boundary_pushforward(5, &[1, 2], &NodeClass::monomial(0, 1, int(3))).unwrap();
    let v = class_to_json(&c);
    let term = &v[0];
    assert_eq!(term["partition"], serde_json::json!([1, 2, [3, 4, 5]]));
    assert_eq!(term["edge_psi"], serde_json::json!([{ "side": [3, 4, 5], "exp": 1 }]));
    assert_eq!(term["coeff"], "3");
}

#[test]
fn mismatched_n() {
    let a = psi_class(4, 1).unwrap();
    let b = psi_class(5, 1).unwrap();
    assert!(matches!(a.mul(&b), Err(crate::Error::MismatchedMarkings { .. })));
    assert!(a.checked_add(&b).is_err());
}

fn atom(n: usize) -> impl Strategy<Value = TautClass> {
    let sides = stable_sides(n);
    prop_oneof![
        (1..=n).prop_map(move |i| psi_class(n, i).unwrap()),
        (0u32..3).prop_map(move |k| kappa_class(n, k).unwrap()),
        (0..sides.len(), 0u32..2, 0u32..2).prop_map(move |(s, a, b)| {
            boundary_pushforward(n, &sides[s], &NodeClass::monomial(a, b, int(1))).unwrap()
        }),
    ]
}

fn small_class(n: usize) -> impl Strategy<Value = TautClass> {
    proptest::collection::vec((atom(n), atom(n), -3i64..4), 1..4).prop_map(move |parts| {
        let mut out = TautClass::zero(n);
        for (a, b, c) in parts {
            out.add_assign_scaled(&a.mul(&b).unwrap(), &int(c));
        }
        out
    })
}

fn classes(k: usize) -> impl Strategy<Value = (usize, Vec<TautClass>)> {
    (4usize..=7).prop_flat_map(move |n| {
        (Just(n), proptest::collection::vec(small_class(n), k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_commutative((_, cs) in classes(2)) {
        prop_assert_eq!(cs[0].mul(&cs[1]).unwrap(), cs[1].mul(&cs[0]).unwrap());
    }

    #[test]
    fn product_is_associative((_, cs) in classes(3)) {
        let left = cs[0].mul(&cs[1]).unwrap().mul(&cs[2]).unwrap();
        let right = cs[0].mul(&cs[1].mul(&cs[2]).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn product_distributes((_, cs) in classes(3)) {
        let left = cs[0].mul(&(&cs[1] + &cs[2])).unwrap();
        let right = &cs[0].mul(&cs[1]).unwrap() + &cs[0].mul(&cs[2]).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn root_product_matches_coarse_product((_, cs) in classes(2), r in 1u32..6) {
        let on_roots = cs[0].mul_on_roots(&cs[1], r).unwrap();
        let coarse = cs[0].coarse_from_roots(r).mul(&cs[1].coarse_from_roots(r)).unwrap();
        prop_assert_eq!(on_roots.coarse_from_roots(r), coarse.clone());
        let r_q = int(i64::from(r));
        prop_assert_eq!(on_roots.integrate_weighted(r), coarse.integrate() / r_q);
    }
}
