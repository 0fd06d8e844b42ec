//! Property tests: field axioms and canonical uniqueness for the number
//! field, ring axioms and differentiation rules for the polynomials.

use cubic_core::numfield::{make_field, FieldDescriptor, FieldElement};
use cubic_core::polyring::{MultiPoly, VarSet};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q25() -> FieldDescriptor {
    make_field(&[2, 5]).unwrap()
}

fn element_strategy() -> impl Strategy<Value = FieldElement> {
    proptest::collection::vec((-50i64..50, 1i64..20), 4).prop_map(|coeffs| {
        let f = q25();
        let mut x = f.zero();
        for (mask, (num, den)) in coeffs.into_iter().enumerate() {
            let mut basis = f.zero();
            if mask == 0 {
                basis = f.ratio(num, den);
            } else {
                let mut e = f.zero();
                // build sqrt of the mask product through multiplication
                let mut first = true;
                for bit in 0..2 {
                    if mask & (1 << bit) != 0 {
                        let r = f.sqrt_radicand(bit);
                        e = if first { r } else { e.mul(&r) };
                        first = false;
                    }
                }
                basis = e.scale_rational(&BigRational::new(num.into(), den.into()));
            }
            x = x.add(&basis);
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(a in element_strategy(), b in element_strategy(), c in element_strategy()) {
        // associativity and commutativity
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        // distributivity
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // inverses
        if !a.is_zero() {
            prop_assert!(a.mul(&a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_uniqueness(a in element_strategy(), b in element_strategy()) {
        // the same value reached along two routes has identical coordinates
        let via = a.add(&b).sub(&b);
        prop_assert_eq!(&via, &a);
        prop_assert_eq!(via.coords(), a.coords());
        if !b.is_zero() {
            let via2 = a.mul(&b).div(&b).unwrap();
            prop_assert_eq!(via2, a);
        }
    }

    #[test]
    fn sign_agrees_with_refined_approximation(a in element_strategy()) {
        let approx = a.to_real(30);
        use num_traits::Signed;
        if approx.value.abs() > approx.bound {
            let expected = if approx.value.is_negative() { -1 } else { 1 };
            prop_assert_eq!(a.sign(), expected);
        } else {
            // interval straddles zero only for the exact zero element
            prop_assert!(a.is_zero());
        }
    }
}

fn poly_strategy() -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((proptest::collection::vec(0u32..3, 3), -9i64..10), 0..6).prop_map(
        |terms| {
            let f = q25();
            let v = VarSet::new(&["t0", "t1", "t2"]);
            MultiPoly::from_terms(
                &v,
                &f,
                terms.into_iter().map(|(e, c)| (e, f.from_integer(c))),
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.add(&q).add(&r), p.add(&q.add(&r)));
        prop_assert_eq!(p.mul(&q.add(&r)), p.mul(&q).add(&p.mul(&r)));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
    }

    #[test]
    fn leibniz_rule(p in poly_strategy(), q in poly_strategy()) {
        let prod = p.mul(&q);
        let dp = p.gradient();
        let dq = q.gradient();
        for (k, d) in prod.gradient().into_iter().enumerate() {
            let expect = dp[k].mul(&q).add(&p.mul(&dq[k]));
            prop_assert_eq!(d, expect);
        }
    }
}

#[test]
fn substitute_then_evaluate_is_evaluate_composition() {
    let f = q25();
    let tv = VarSet::new(&["t0", "t1", "t2"]);
    let uv = VarSet::new(&["u0", "u1"]);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    fn rand_poly(
        rng: &mut ChaCha8Rng,
        f: &FieldDescriptor,
        vars: &VarSet,
        max_terms: usize,
    ) -> MultiPoly {
        let terms: Vec<(Vec<u32>, FieldElement)> = (0..rng.gen_range(1..=max_terms))
            .map(|_| {
                let e: Vec<u32> = (0..vars.len()).map(|_| rng.gen_range(0..3)).collect();
                (e, f.from_integer(rng.gen_range(-9i64..10)))
            })
            .collect();
        MultiPoly::from_terms(vars, f, terms)
    }
    for _ in 0..100 {
        let p = rand_poly(&mut rng, &f, &tv, 5);
        let assignment: Vec<MultiPoly> = (0..3).map(|_| rand_poly(&mut rng, &f, &uv, 3)).collect();
        let point = [
            f.from_integer(rng.gen_range(-5i64..6)),
            f.from_integer(rng.gen_range(-5i64..6)),
        ];
        let composed = p.substitute(&assignment).unwrap();
        let lhs = composed.evaluate(&point).unwrap();
        let inner: Vec<FieldElement> = assignment
            .iter()
            .map(|a| a.evaluate(&point).unwrap())
            .collect();
        let rhs = p.evaluate(&inner).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn gradient_matches_central_differences() {
    // the affine cubic of the preset surface as a float polynomial; the
    // central difference of a cubic has pure h^2 truncation error
    let s = cubic_core::surface::build_surface(cubic_core::surface::clebsch_preset()).unwrap();
    let f = s.model.f_affine.to_float();
    let grads: Vec<_> = s
        .model
        .f_affine
        .gradient()
        .into_iter()
        .map(|g| g.to_float())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let h = 1e-4;
    for _ in 0..100 {
        let p = [
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        ];
        for k in 0..3 {
            let mut hi = p;
            hi[k] += h;
            let mut lo = p;
            lo[k] -= h;
            let central = (f.evaluate(&hi) - f.evaluate(&lo)) / (2.0 * h);
            let exact = grads[k].evaluate(&p);
            // third derivatives of f are bounded by ~85 on this box
            assert!(
                (central - exact).abs() <= 15.0 * h * h + 1e-9,
                "axis {k} at {p:?}: {central} vs {exact}"
            );
        }
    }
}
