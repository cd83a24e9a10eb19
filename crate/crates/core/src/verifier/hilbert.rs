//! Hilbert symbols over `Q` and quaternion algebras `(a, b)_Q`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{factor, jacobi};
use crate::error::{Error, Result};

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Place {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

fn split_p(mut x: i128, p: u64) -> (u32, i128) {
    let p = p as i128;
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    (v, x)
}

/// `(a, b)_v` for nonzero integers, as `1` or `-1`.
pub fn hilbert_symbol(a: i128, b: i128, place: Place) -> Result<i8> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidInput("Hilbert symbol of zero".into()));
    }
    let p = match place {
        Place::Infinite => return Ok(if a < 0 && b < 0 { -1 } else { 1 }),
        Place::Finite(p) => p,
    };
    if !crate::arith::is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let (alpha, u) = split_p(a, p);
    let (beta, v) = split_p(b, p);
    let odd = |x: u32| x % 2 == 1;
    if p == 2 {
        let eps = |x: i128| ((x.rem_euclid(4) - 1) / 2) as u32;
        let omega = |x: i128| {
            let r = x.rem_euclid(8);
            ((r * r - 1) / 8 % 2) as u32
        };
        let e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return Ok(if odd(e) { -1 } else { 1 });
    }
    let mut s: i32 = if odd(alpha) && odd(beta) && odd(((p - 1) / 2) as u32) { -1 } else { 1 };
    if odd(beta) {
        s *= jacobi(u, p);
    }
    if odd(alpha) {
        s *= jacobi(v, p);
    }
    Ok(s as i8)
}

/// `(a, b)_v` for rationals `a = an/ad`, `b = bn/bd`, via `an ad` and `bn bd`.
pub fn hilbert_symbol_rational(a: (i128, i128), b: (i128, i128), place: Place) -> Result<i8> {
    if a.1 == 0 || b.1 == 0 {
        return Err(Error::InvalidInput("zero denominator".into()));
    }
    hilbert_symbol(a.0 * a.1, b.0 * b.1, place)
}

/// Candidate places where `(a, b)_v` can be `-1`: `inf`, `2`, and the odd
/// primes dividing `ab`.
fn candidate_places(a: i128, b: i128) -> Vec<Place> {
    let mut primes: Vec<u64> = vec![2];
    for x in [a, b] {
        primes.extend(factor(x.unsigned_abs() as u64).primes());
    }
    primes.sort_unstable();
    primes.dedup();
    let mut out: Vec<Place> = primes.into_iter().map(Place::Finite).collect();
    out.push(Place::Infinite);
    out
}

/// Places where `(a, b)_Q` ramifies, finite primes ascending, then `inf`.
pub fn ramified_places(a: i128, b: i128) -> Result<Vec<Place>> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidInput("quaternion algebra with a zero parameter".into()));
    }
    if a.unsigned_abs() > u64::MAX as u128 || b.unsigned_abs() > u64::MAX as u128 {
        return Err(Error::InvalidInput("parameters out of range".into()));
    }
    let mut out = Vec::new();
    for v in candidate_places(a, b) {
        if hilbert_symbol(a, b, v)? == -1 {
            out.push(v);
        }
    }
    Ok(out)
}

/// The quaternion algebra `(a, b)_Q`: `i^2 = a`, `j^2 = b`, `ij = -ji`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuaternionAlgebra {
    pub a: i128,
    pub b: i128,
}

impl QuaternionAlgebra {
    pub fn new(a: i128, b: i128) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidInput("quaternion algebra with a zero parameter".into()));
        }
        Ok(QuaternionAlgebra { a, b })
    }

    pub fn ramified_places(&self) -> Result<Vec<Place>> {
        ramified_places(self.a, self.b)
    }

    /// Split over `Q`, i.e. isomorphic to `M_2(Q)`.
    pub fn is_split(&self) -> Result<bool> {
        Ok(self.ramified_places()?.is_empty())
    }
}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})_Q", self.a, self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hamilton_quaternions() {
        assert_eq!(ramified_places(-1, -1).unwrap(), vec![Place::Finite(2), Place::Infinite]);
        assert_eq!(hilbert_symbol(-1, -1, Place::Finite(3)).unwrap(), 1);
        assert!(QuaternionAlgebra::new(1, 7).unwrap().is_split().unwrap());
        assert_eq!(ramified_places(-1, 3).unwrap(), vec![Place::Finite(2), Place::Finite(3)]);
        assert_eq!(ramified_places(2, 5).unwrap(), vec![Place::Finite(2), Place::Finite(5)]);
        assert!(hilbert_symbol(0, 3, Place::Infinite).is_err());
    }

    #[test]
    fn known_values() {
        // (p, q)_p = (q|p) for odd p != q
        assert_eq!(hilbert_symbol(5, 2, Place::Finite(5)).unwrap(), -1);
        assert_eq!(hilbert_symbol(7, 2, Place::Finite(7)).unwrap(), 1);
        // (2, u)_2 = (-1)^omega(u)
        assert_eq!(hilbert_symbol(2, 3, Place::Finite(2)).unwrap(), -1);
        assert_eq!(hilbert_symbol(2, 7, Place::Finite(2)).unwrap(), 1);
        // (a, -a)_v = 1 always
        for v in [Place::Finite(2), Place::Finite(3), Place::Finite(7), Place::Infinite] {
            assert_eq!(hilbert_symbol(21, -21, v).unwrap(), 1);
        }
    }

    fn nonzero() -> impl Strategy<Value = i128> {
        (1i128..5000, any::<bool>()).prop_map(|(x, neg)| if neg { -x } else { x })
    }

    fn places_for(a: i128, b: i128, c: i128) -> Vec<Place> {
        let mut v = candidate_places(a, b * c);
        v.sort();
        v
    }

    proptest! {
        #[test]
        fn reciprocity(a in nonzero(), b in nonzero()) {
            let prod: i32 = candidate_places(a, b).into_iter()
                .map(|v| hilbert_symbol(a, b, v).unwrap() as i32).product();
            prop_assert_eq!(prod, 1);
            prop_assert_eq!(ramified_places(a, b).unwrap().len() % 2, 0);
        }

        #[test]
        fn symmetric(a in nonzero(), b in nonzero(), p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
            prop_assert_eq!(hilbert_symbol(a, b, Place::Finite(p)).unwrap(), hilbert_symbol(b, a, Place::Finite(p)).unwrap());
        }

        #[test]
        fn bimultiplicative(a in nonzero(), b in nonzero(), c in nonzero()) {
            for v in places_for(a, b, c) {
                let lhs = hilbert_symbol(a, b * c, v).unwrap();
                let rhs = hilbert_symbol(a, b, v).unwrap() * hilbert_symbol(a, c, v).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn squares_are_trivial(a in nonzero(), x in 1i128..200) {
            for v in candidate_places(a, x) {
                prop_assert_eq!(hilbert_symbol(a, x * x, v).unwrap(), 1);
            }
        }
    }
}
