//! Property tests for the arithmetic layer.

use proptest::prelude::*;

use locdeg::arith::{
    ell_root, factor, factor_with_seed, gcd, inv_mod, is_prime, jacobi, multiplicative_order, pow_mod,
    power_residue_level, ResidueField,
};
use locdeg::quadfield::form::{reduce_form, BinaryQuadraticForm, Ideal, QuadIdeal};
use locdeg::quadfield::{factor_rational_prime, reduce_mod, BaseField, FieldElement};

fn slow_is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn small_prime() -> impl Strategy<Value = u64> {
    (3u64..2000).prop_filter("prime", |&p| slow_is_prime(p))
}

proptest! {
    #[test]
    fn primality_matches_trial_division(n in 0u64..200_000) {
        prop_assert_eq!(is_prime(n), slow_is_prime(n));
    }

    #[test]
    fn factorization_multiplies_back(n in 1u64..u64::MAX / 2, seed in any::<u64>()) {
        let f = factor_with_seed(n, seed);
        prop_assert_eq!(f.value(), n);
        for (p, e) in &f.0 {
            prop_assert!(is_prime(*p));
            prop_assert!(*e >= 1);
        }
        prop_assert_eq!(f, factor(n));
    }

    #[test]
    fn modular_inverse(a in 1i128..1_000_000, m in 2i128..1_000_000) {
        match inv_mod(a, m) {
            Some(x) => prop_assert_eq!((a * x).rem_euclid(m), 1 % m),
            None => prop_assert!(gcd(a as u64, m as u64) > 1),
        }
    }

    #[test]
    fn fermat(p in small_prime(), a in 1u64..10_000) {
        prop_assume!(a % p != 0);
        prop_assert_eq!(pow_mod(a, p - 1, p), 1);
        // Euler's criterion
        let e = pow_mod(a, (p - 1) / 2, p);
        let j = jacobi(a as i128, p);
        prop_assert_eq!(if e == 1 { 1 } else { -1 }, j);
    }

    #[test]
    fn ell_roots_are_roots(p in small_prime(), a in 1i128..10_000, b in 0i128..10_000, quad in any::<bool>()) {
        let field = if quad { ResidueField::quadratic(p).unwrap() } else { ResidueField::prime(p).unwrap() };
        let x = field.elem(a, if quad { b } else { 0 });
        prop_assume!(x != field.zero());
        for ell in [2u64, 3, 5] {
            // every ell-th power has a root, and the root is correct
            let y = field.pow(x, ell);
            let z = ell_root(y, ell, &field).unwrap();
            prop_assert_eq!(field.pow(z, ell), y);
            if (field.order() - 1) % ell == 0 {
                prop_assert_eq!(power_residue_level(y, ell, 1, &field).unwrap(), 1);
            }
        }
        let o = multiplicative_order(x, &field).unwrap();
        prop_assert_eq!((field.order() - 1) % o, 0);
        prop_assert_eq!(field.pow(x, o), field.one());
    }

    #[test]
    fn quadratic_field_inverse(p in small_prime(), a in 0i128..10_000, b in 0i128..10_000) {
        let field = ResidueField::quadratic(p).unwrap();
        let x = field.elem(a, b);
        prop_assume!(x != field.zero());
        prop_assert_eq!(field.mul(x, field.inv(x).unwrap()), field.one());
    }

    #[test]
    fn reduction_is_a_ring_map(p in small_prime(), x1 in -500i128..500, y1 in -500i128..500, x2 in -500i128..500, y2 in -500i128..500) {
        let k = BaseField::imaginary_quadratic(-23).unwrap();
        prop_assume!((x1 - y1 * -23).rem_euclid(2) == 0 && (x2 - y2 * -23).rem_euclid(2) == 0);
        let (u, v) = (FieldElement::new(x1, y1), FieldElement::new(x2, y2));
        for prime in factor_rational_prime(&k, p) {
            let rf = prime.residue_field().unwrap();
            let lhs = reduce_mod(&k, &u.mul(&v, &k), &prime).unwrap();
            let rhs = rf.mul(reduce_mod(&k, &u, &prime).unwrap(), reduce_mod(&k, &v, &prime).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn form_reduction_keeps_discriminant(a in 1i128..300, b in -300i128..300, c in 1i128..300) {
        let f = BinaryQuadraticForm::new(a, b, c);
        prop_assume!(f.discriminant() < 0);
        let g = reduce_form(&f);
        prop_assert_eq!(g.discriminant(), f.discriminant());
        prop_assert!(g.is_reduced());
        prop_assert_eq!(reduce_form(&g), g);
    }

    #[test]
    fn ideal_norms_multiply(a1 in 1i128..60, b1 in 0i128..120, a2 in 1i128..60, b2 in 0i128..120) {
        let d = -47;
        let (Some(x), Some(y)) = (QuadIdeal::new(a1, b1, d), QuadIdeal::new(a2, b2, d)) else {
            return Ok(());
        };
        let (x, y) = (Ideal { content: 1, prim: x }, Ideal { content: 1, prim: y });
        prop_assert_eq!(x.mul(&y, d).norm(), x.norm() * y.norm());
        prop_assert_eq!(x.mul(&y, d), y.mul(&x, d));
    }
}
