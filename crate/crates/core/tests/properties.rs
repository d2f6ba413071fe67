use affa::cyclotomic::RootSpec;
use affa::diagram::Side;
use affa::evaluate::eval_closed;
use affa::testgen::{random_closed, random_state};
use affa::theory::{Family, Theory};
use affa::{CycloScalar, Morphism};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn theories() -> Vec<Theory> {
    let mut out = vec![
        Theory::infinite(Family::ShadedAInf),
        Theory::infinite(Family::ArrowAInf),
    ];
    for (f, n, k) in [
        (Family::ShadedAOdd, 2, 1),
        (Family::ArrowAOdd, 2, 1),
        (Family::ArrowAOdd, 3, 5),
        (Family::ColorAOdd, 3, 2),
        (Family::ArrowAEven, 1, 2),
        (Family::ArrowAEven, 2, 1),
    ] {
        out.push(Theory::with_root_exp(f, n, k).unwrap());
    }
    out
}

fn theory() -> impl Strategy<Value = Theory> {
    prop::sample::select(theories())
}

fn state(th: Theory, seed: u64) -> Morphism {
    Morphism::from_diagram(random_state(th, 2, 2, seed))
}

/// Shaded pieces with boxes only combine when their outer shadings agree.
fn both<T>(r: affa::Result<T>) -> Option<T> {
    match r {
        Err(affa::Error::Boundary(e)) if e.contains("shading") => None,
        r => Some(r.unwrap()),
    }
}

fn closed(th: Theory, seed: u64) -> Morphism {
    Morphism::from_diagram(random_closed(th, 4, 3, seed))
}

fn scalar() -> impl Strategy<Value = CycloScalar> {
    (
        prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]),
        prop::collection::vec((-6i64..=6, 1i64..=4), 1..8),
    )
        .prop_map(|(order, cs)| {
            let coeffs: Vec<BigRational> = cs
                .into_iter()
                .map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
                .collect();
            CycloScalar::canonicalize(&coeffs, RootSpec { order })
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b.add_ref(&c)), a.mul_ref(&b).add_ref(&a.mul_ref(&c)));
        prop_assert_eq!(a.mul_ref(&b).conj(), a.conj().mul_ref(&b.conj()));
        if let Some(inv) = a.inv() {
            prop_assert!(a.mul_ref(&inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn tensor_is_associative(th in theory(), s in any::<u64>()) {
        let (a, b, c) = (state(th, s), state(th, s ^ 1), state(th, s ^ 2));
        let left = both(a.tensor(&b)).and_then(|ab| both(ab.tensor(&c)));
        prop_assume!(left.is_some());
        let left = left.unwrap();
        prop_assert_eq!(&left, &a.tensor(&b.tensor(&c).unwrap()).unwrap());
        left.validate().unwrap();
    }

    #[test]
    fn identities_are_units(th in theory(), s in any::<u64>()) {
        let f = state(th, s);
        prop_assert_eq!(&Morphism::identity(th, &f.top).compose(&f).unwrap(), &f);
        let g = f.adjoint();
        prop_assert_eq!(&g.compose(&Morphism::identity(th, &f.top)).unwrap(), &g);
        prop_assert_eq!(&f.tensor(&Morphism::identity(th, &[])).unwrap(), &f);
    }

    #[test]
    fn adjoint_reverses_composition(th in theory(), s in any::<u64>()) {
        let (f, g) = (state(th, s), state(th, s ^ 7));
        let x = both(f.tensor(&g));
        prop_assume!(x.is_some());
        let x = x.unwrap();
        let y = Morphism::identity(th, &f.top).tensor(&g.adjoint()).unwrap();
        let yx = y.compose(&x).unwrap();
        yx.validate().unwrap();
        prop_assert_eq!(yx.adjoint(), x.adjoint().compose(&y.adjoint()).unwrap());
        prop_assert_eq!(x.adjoint().adjoint(), x);
    }

    #[test]
    fn clicks_compose(th in theory(), s in any::<u64>(), a in -5i64..5, b in -5i64..5) {
        let f = state(th, s);
        let c = f.click(a).click(b);
        c.validate().unwrap();
        prop_assert_eq!(c, f.click(a + b));
    }

    #[test]
    fn evaluation_is_multiplicative(th in theory(), s in any::<u64>()) {
        let (a, b) = (closed(th, s), closed(th, s ^ 3));
        let ab = both(a.tensor(&b));
        prop_assume!(ab.is_some());
        let ab = eval_closed(&ab.unwrap()).unwrap();
        prop_assert_eq!(ab, eval_closed(&a).unwrap().mul_ref(&eval_closed(&b).unwrap()));
        let stacked = eval_closed(&a.compose(&b).unwrap()).unwrap();
        prop_assert_eq!(stacked, eval_closed(&a).unwrap().mul_ref(&eval_closed(&b).unwrap()));
    }

    #[test]
    fn adjoint_conjugates(th in theory(), s in any::<u64>()) {
        let a = closed(th, s);
        prop_assert_eq!(eval_closed(&a.adjoint()).unwrap(), eval_closed(&a).unwrap().conj());
    }

    #[test]
    fn traces_are_spherical(th in theory(), s in any::<u64>()) {
        let (f, g) = (state(th, s), state(th, s ^ 5));
        let e = both(f.compose(&f.adjoint()).unwrap().tensor(&g.compose(&g.adjoint()).unwrap()));
        prop_assume!(e.is_some());
        let e = e.unwrap();
        let left = eval_closed(&e.trace_close(Side::Left).unwrap()).unwrap();
        let right = eval_closed(&e.trace_close(Side::Right).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inner_products_are_positive(th in theory(), s in any::<u64>()) {
        let f = state(th, s);
        let v = eval_closed(&f.adjoint().compose(&f).unwrap()).unwrap();
        let r = v.as_rational().expect("norms are rational");
        prop_assert!(r >= BigRational::from_integer(0.into()));
    }
}
