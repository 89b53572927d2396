use nkflag::FieldElem;
use proptest::prelude::*;

fn elem() -> impl Strategy<Value = FieldElem> {
    let q = (-40i64..=40, 1i64..=12).prop_map(|(p, d)| FieldElem::ratio(p, d));
    [q.clone(), q.clone(), q.clone(), q].prop_map(|[a, b, c, d]| {
        &(&(&a + &(&b * &FieldElem::sqrt2())) + &(&c * &FieldElem::sqrt3())) + &(&d * &FieldElem::sqrt6())
    })
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #[test]
    fn ring_axioms(x in elem(), y in elem(), z in elem()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &(-&x), FieldElem::zero());
        prop_assert_eq!(&x * &FieldElem::one(), x.clone());
    }

    #[test]
    fn inverse_is_multiplicative(x in elem(), y in elem()) {
        prop_assume!(!x.is_zero() && !y.is_zero());
        let xy = (&x * &y).inv().unwrap();
        prop_assert_eq!(xy, &x.inv().unwrap() * &y.inv().unwrap());
        prop_assert!((&x * &x.inv().unwrap()).is_one());
        prop_assert_eq!(x.checked_div(&x).unwrap(), FieldElem::one());
    }

    #[test]
    fn text_round_trip(x in elem()) {
        let text = x.to_string();
        prop_assert_eq!(text.parse::<FieldElem>().unwrap(), x.clone());
        let ascii = text.replace('√', "sqrt");
        prop_assert_eq!(ascii.parse::<FieldElem>().unwrap(), x.clone());
        prop_assert_eq!(serde_json::to_value(&x).unwrap(), serde_json::Value::String(text));
    }

    #[test]
    fn float_image_is_a_homomorphism(x in elem(), y in elem()) {
        prop_assert!(close((&x + &y).to_f64(), x.to_f64() + y.to_f64()));
        prop_assert!(close((&x * &y).to_f64(), x.to_f64() * y.to_f64()));
    }

    #[test]
    fn sign_agrees_with_float(x in elem()) {
        let f = x.to_f64();
        if f.abs() > 1e-9 {
            prop_assert_eq!(x.signum(), if f > 0.0 { 1 } else { -1 });
        }
        prop_assert_eq!((-&x).signum(), -x.signum());
        prop_assert_eq!(x.signum() == 0, x.is_zero());
    }

    #[test]
    fn order_is_translation_invariant(x in elem(), y in elem(), z in elem()) {
        prop_assert_eq!(x.cmp(&y), (&x + &z).cmp(&(&y + &z)));
    }
}

#[test]
fn sign_near_cancellation() {
    // 1393/985 is a convergent of √2 from below; the gap is about 3.6e-7.
    let d = &FieldElem::ratio(1393, 985) - &FieldElem::sqrt2();
    assert!(d.is_negative());
    let d = &FieldElem::ratio(3363, 2378) - &FieldElem::sqrt2();
    assert!(d.is_positive());
    // √6 − √2 − √3 + 1 ≈ 0.303.
    let e = &(&(&FieldElem::sqrt6() - &FieldElem::sqrt2()) - &FieldElem::sqrt3()) + &FieldElem::one();
    assert!(e.is_positive());
    // (√2 + √3)² = 5 + 2√6 exactly.
    let s = &FieldElem::sqrt2() + &FieldElem::sqrt3();
    assert_eq!(&s * &s, &FieldElem::from_int(5) + &(&FieldElem::sqrt6() * &FieldElem::from_int(2)));
}
