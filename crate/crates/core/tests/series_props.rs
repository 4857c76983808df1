use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use qmckay::series::{curve_vars, macmahon_factor, sin_power_expansion, MultiSeries, Truncation};

fn tr() -> Truncation {
    Truncation::new(3, 3, 0).unwrap()
}

fn vars() -> Vec<qmckay::series::Var> {
    curve_vars(2)
}

/// Random series in q1, q2, Q with small rational coefficients.
fn series(constant: Option<i64>) -> impl Strategy<Value = MultiSeries> {
    prop::collection::vec(((0i32..3, 0i32..3, 0i32..4), -5i64..6, 1i64..4), 0..8).prop_map(move |terms| {
        let mut s = MultiSeries::zero(vars(), tr());
        for ((a, b, m), n, d) in terms {
            let c = BigRational::new(BigInt::from(n), BigInt::from(d));
            let t = MultiSeries::monomial(vars(), tr(), vec![a, b, m], 0, c);
            s = s.try_add(&t).unwrap();
        }
        match constant {
            Some(c) => {
                let base = s
                    .try_sub(&MultiSeries::constant(vars(), tr(), s.constant_term()))
                    .unwrap();
                base.try_add(&MultiSeries::constant(
                    vars(),
                    tr(),
                    BigRational::from_integer(c.into()),
                ))
                .unwrap()
            }
            None => s,
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in series(None), b in series(None), c in series(None)) {
        let ab_c = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let a_bc = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let left = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let right = a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert!(a.try_sub(&a).unwrap().is_empty());
    }

    #[test]
    fn exp_log_round_trip(a in series(Some(1)), b in series(Some(0))) {
        prop_assert_eq!(a.log().unwrap().exp().unwrap(), a.clone());
        prop_assert_eq!(b.exp().unwrap().log().unwrap(), b.clone());
        let sum = b.try_add(&b).unwrap();
        prop_assert_eq!(sum.exp().unwrap(), b.exp().unwrap().try_mul(&b.exp().unwrap()).unwrap());
    }

    #[test]
    fn rational_powers_compose(a in series(Some(1)), n in 1i64..4, d in 1i64..4) {
        let r = BigRational::new(BigInt::from(n), BigInt::from(d));
        let p = a.pow_rational(&r).unwrap();
        let back = p.pow_rational(&(BigRational::one() / &r)).unwrap();
        prop_assert_eq!(back, a.clone());
    }

    #[test]
    fn macmahon_weights_add(n1 in -3i64..4, d1 in 1i64..4, n2 in -3i64..4, d2 in 1i64..4, b1 in 0i32..3, b2 in 0i32..3) {
        prop_assume!(b1 + b2 > 0);
        let w1 = BigRational::new(n1.into(), d1.into());
        let w2 = BigRational::new(n2.into(), d2.into());
        let beta = [b1, b2];
        let lhs = macmahon_factor(&beta, &w1, &vars(), tr()).unwrap()
            .try_mul(&macmahon_factor(&beta, &w2, &vars(), tr()).unwrap()).unwrap();
        prop_assert_eq!(lhs, macmahon_factor(&beta, &(&w1 + &w2), &vars(), tr()).unwrap());
    }
}

#[test]
fn sine_expansion_scales() {
    for g in 0..4u32 {
        for d in 1..5u32 {
            let base = sin_power_expansion(1, g, 8).unwrap();
            let scaled = sin_power_expansion(d, g, 8).unwrap();
            for e in -2..=8 {
                // (1/d) f(d lambda): coefficient of lambda^e picks up d^(e-1)
                let factor = if e >= 1 {
                    BigRational::from_integer(BigInt::from(d).pow((e - 1) as u32))
                } else {
                    BigRational::one() / BigRational::from_integer(BigInt::from(d).pow((1 - e) as u32))
                };
                assert_eq!(scaled.coeff(&[e]), base.coeff(&[e]) * factor, "d={d} g={g} e={e}");
            }
        }
    }
    let g0 = sin_power_expansion(1, 0, 2).unwrap();
    assert_eq!(g0.coeff(&[-2]), BigRational::one());
    assert_eq!(g0.coeff(&[0]), BigRational::new(1.into(), 12.into()));
    assert!(g0.coeff(&[1]).is_zero());
}
