use dickson_core::numtheory::divisors;
use dickson_core::{FieldElement, FieldTable};
use proptest::prelude::*;

/// `a^e` by plain repeated multiplication.
fn pow_by_multiplication(t: &FieldTable, a: FieldElement, e: u64) -> FieldElement {
    (0..e).fold(FieldElement::ONE, |acc, _| t.mul(acc, a))
}

fn fields() -> impl Strategy<Value = (u64, u32)> {
    prop_oneof![
        Just((2, 1)),
        Just((2, 4)),
        Just((2, 6)),
        Just((3, 2)),
        Just((3, 3)),
        Just((5, 2)),
        Just((7, 3)),
        Just((13, 2)),
        Just((2, 10)),
        Just((31, 2)),
    ]
}

proptest! {
    #[test]
    fn exp_log_round_trip((p, m) in fields(), seed in any::<u64>()) {
        let t = FieldTable::build(p, m).unwrap();
        let d = seed % (t.order() as u64 - 1);
        let a = t.exp(d);
        prop_assert_eq!(t.dlog(a), Some(d as u32));
        prop_assert_eq!(t.exp(t.dlog(a).unwrap() as u64), a);
    }

    #[test]
    fn frobenius_is_a_ring_map((p, m) in fields(), x in any::<u64>(), y in any::<u64>(), s in 0u32..8) {
        let t = FieldTable::build(p, m).unwrap();
        let a = t.element(x % t.order() as u64).unwrap();
        let b = t.element(y % t.order() as u64).unwrap();
        prop_assert_eq!(t.frobenius(t.add(a, b), s), t.add(t.frobenius(a, s), t.frobenius(b, s)));
        prop_assert_eq!(t.frobenius(t.mul(a, b), s), t.mul(t.frobenius(a, s), t.frobenius(b, s)));
    }

    #[test]
    fn coefficient_codes_round_trip((p, m) in fields(), x in any::<u64>()) {
        let t = FieldTable::build(p, m).unwrap();
        let a = t.element(x % t.order() as u64).unwrap();
        let coeffs = t.coefficients(a);
        prop_assert_eq!(coeffs.len(), m as usize);
        prop_assert_eq!(t.from_coefficients(&coeffs).unwrap(), a);
    }

    #[test]
    fn generated_degree_divides_m((p, m) in fields(), x in any::<u64>()) {
        let t = FieldTable::build(p, m).unwrap();
        let a = t.element(1 + x % (t.order() as u64 - 1)).unwrap();
        let sub = t.generated_subfield(a).unwrap();
        prop_assert_eq!(m % sub.degree, 0);
        prop_assert!(sub.elements.binary_search(&a).is_ok());
    }
}

#[test]
fn frobenius_against_repeated_multiplication() {
    for (p, m) in [(3u64, 2u32), (2, 4), (5, 2)] {
        let t = FieldTable::build(p, m).unwrap();
        for a in t.elements() {
            for s in 0..=m {
                assert_eq!(t.frobenius(a, s), pow_by_multiplication(&t, a, p.pow(s)));
            }
        }
    }
}

#[test]
fn addition_is_coefficientwise() {
    let t = FieldTable::build(7, 2).unwrap();
    for a in t.elements() {
        for b in t.elements() {
            let (ca, cb) = (t.coefficients(a), t.coefficients(b));
            let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 7).collect();
            assert_eq!(t.coefficients(t.add(a, b)), sum);
        }
    }
}

#[test]
fn exp_table_has_no_repeats() {
    for (p, m) in [(2u64, 8u32), (3, 5), (17, 2), (2, 1)] {
        let t = FieldTable::build(p, m).unwrap();
        let mut seen = t.exp_table().to_vec();
        assert_eq!(seen[0], 1);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), t.order() as usize - 1);
        assert!(!seen.contains(&0));
    }
}

#[test]
fn subfield_lattice() {
    for (p, m) in [(2u64, 6u32), (3, 4), (2, 12)] {
        let t = FieldTable::build(p, m).unwrap();
        let divs = divisors(m);
        for &s1 in &divs {
            let f1 = t.fixed_field(s1).unwrap();
            assert_eq!(f1.len() as u64, p.pow(s1));
            for &s2 in &divs {
                let f2 = t.fixed_field(s2).unwrap();
                let contained = f1.iter().all(|x| f2.binary_search(x).is_ok());
                assert_eq!(contained, s2 % s1 == 0, "p={p} m={m} s1={s1} s2={s2}");
            }
        }
    }
}

#[test]
fn fixed_field_is_closed() {
    let t = FieldTable::build(2, 6).unwrap();
    let sub = t.fixed_field(3).unwrap();
    for &a in &sub {
        for &b in &sub {
            assert!(sub.binary_search(&t.add(a, b)).is_ok());
            assert!(sub.binary_search(&t.mul(a, b)).is_ok());
        }
        if !a.is_zero() {
            assert!(sub.binary_search(&t.inv(a).unwrap()).is_ok());
        }
    }
}

#[test]
fn largest_field_under_default_cap() {
    let t = FieldTable::build(2, 20).unwrap();
    assert_eq!(t.order(), 1 << 20);
    let g = t.generator();
    assert_eq!(t.frobenius(g, 20), g);
    assert_eq!(t.fixed_field(4).unwrap().len(), 16);
}
