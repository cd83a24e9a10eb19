//! Binary quadratic forms and primitive ideals of an imaginary quadratic order.
//!
//! A primitive ideal is the lattice `[a, (b + sqrt D)/2]` with `4a | b^2 - D`;
//! it corresponds to the form `(a, b, (b^2 - D)/4a)`. Products are computed
//! exactly (Dirichlet composition), so they are usable for generator searches
//! and not only up to class.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{ext_gcd, gcd_i128};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BinaryQuadraticForm {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl fmt::Display for BinaryQuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl BinaryQuadraticForm {
    pub fn new(a: i128, b: i128, c: i128) -> Self {
        BinaryQuadraticForm { a, b, c }
    }

    /// Build `(a, b, c)` from `a`, `b` and the discriminant.
    pub fn from_ab(a: i128, b: i128, disc: i128) -> Option<Self> {
        let num = b * b - disc;
        (a > 0 && num % (4 * a) == 0).then(|| BinaryQuadraticForm { a, b, c: num / (4 * a) })
    }

    pub fn discriminant(&self) -> i128 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// The identity class `(1, D mod 2, (D mod 2 - D)/4)`.
    pub fn principal(disc: i128) -> Self {
        let b = disc.rem_euclid(2);
        BinaryQuadraticForm { a: 1, b, c: (b - disc) / 4 }
    }

    pub fn inverse(&self) -> Self {
        reduce_form(&BinaryQuadraticForm { a: self.a, b: -self.b, c: self.c })
    }

    pub fn is_reduced(&self) -> bool {
        self.b.abs() <= self.a && self.a <= self.c && ((self.b.abs() != self.a && self.a != self.c) || self.b >= 0)
    }

    pub fn is_primitive(&self) -> bool {
        gcd_i128(gcd_i128(self.a, self.b), self.c) == 1
    }
}

/// Reduced representative of the class of a positive definite form.
pub fn reduce_form(f: &BinaryQuadraticForm) -> BinaryQuadraticForm {
    debug_assert!(f.a > 0 && f.discriminant() < 0);
    let (mut a, mut b, mut c) = (f.a, f.b, f.c);
    loop {
        // bring b into (-a, a]
        if b <= -a || b > a {
            let two_a = 2 * a;
            let mut k = (a - b).div_euclid(two_a);
            if b + k * two_a <= -a {
                k += 1;
            }
            let nb = b + k * two_a;
            c = (nb * nb - (b * b - 4 * a * c)) / (4 * a);
            b = nb;
        }
        if a > c {
            (a, b, c) = (c, -b, a);
            continue;
        }
        if a == c && b < 0 {
            b = -b;
        }
        return BinaryQuadraticForm { a, b, c };
    }
}

/// Primitive ideal `[a, (b + sqrt D)/2]`, canonical with `0 <= b < 2a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadIdeal {
    pub a: i128,
    pub b: i128,
}

impl QuadIdeal {
    pub fn new(a: i128, b: i128, disc: i128) -> Option<Self> {
        let b = b.rem_euclid(2 * a);
        ((b * b - disc) % (4 * a) == 0).then_some(QuadIdeal { a, b })
    }

    pub fn unit(disc: i128) -> Self {
        QuadIdeal { a: 1, b: disc.rem_euclid(2) }
    }

    pub fn norm(&self) -> i128 {
        self.a
    }

    pub fn to_form(&self, disc: i128) -> BinaryQuadraticForm {
        BinaryQuadraticForm::from_ab(self.a, self.b, disc).expect("ideal invariant 4a | b^2 - D")
    }

    pub fn from_form(f: &BinaryQuadraticForm) -> Self {
        QuadIdeal { a: f.a, b: f.b.rem_euclid(2 * f.a) }
    }

    /// Whether `(x + y sqrt D)/2` lies in this lattice.
    pub fn contains(&self, x: i128, y: i128) -> bool {
        (x - y * self.b).rem_euclid(2 * self.a) == 0
    }
}

/// An integral ideal `content * [a, (b + sqrt D)/2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    pub content: i128,
    pub prim: QuadIdeal,
}

impl Ideal {
    pub fn unit(disc: i128) -> Self {
        Ideal { content: 1, prim: QuadIdeal::unit(disc) }
    }

    pub fn norm(&self) -> i128 {
        self.content * self.content * self.prim.a
    }

    pub fn mul(&self, other: &Ideal, disc: i128) -> Ideal {
        let (g, prim) = mul_primitive(&self.prim, &other.prim, disc);
        Ideal { content: self.content * other.content * g, prim }
    }

    pub fn pow(&self, mut e: u64, disc: i128) -> Ideal {
        let mut acc = Ideal::unit(disc);
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, disc);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, disc);
            }
        }
        acc
    }

    pub fn conjugate(&self, disc: i128) -> Ideal {
        Ideal { content: self.content, prim: QuadIdeal::new(self.prim.a, -self.prim.b, disc).unwrap() }
    }
}

/// Exact product of primitive ideals: returns `(g, I)` with product `g * I`.
pub fn mul_primitive(x: &QuadIdeal, y: &QuadIdeal, disc: i128) -> (i128, QuadIdeal) {
    let (a1, b1, a2, b2) = (x.a, x.b, y.a, y.b);
    let s = (b1 + b2) / 2;
    let (g1, u1, v1) = ext_gcd(a1, a2);
    let (g, k, w) = ext_gcd(g1, s);
    let (u, v) = (k * u1, k * v1);
    let a3 = a1 * a2 / (g * g);
    let num = u * a1 * b2 + v * a2 * b1 + w * ((b1 * b2 + disc) / 2);
    debug_assert_eq!(num % g, 0);
    let b3 = (num / g).rem_euclid(2 * a3);
    debug_assert_eq!((b3 * b3 - disc) % (4 * a3), 0);
    (g, QuadIdeal { a: a3, b: b3 })
}

/// Reduced representative of the product class.
pub fn compose_forms(f: &BinaryQuadraticForm, g: &BinaryQuadraticForm) -> BinaryQuadraticForm {
    let disc = f.discriminant();
    assert_eq!(disc, g.discriminant(), "composition needs equal discriminants");
    let (_, prod) = mul_primitive(&QuadIdeal::from_form(f), &QuadIdeal::from_form(g), disc);
    reduce_form(&prod.to_form(disc))
}

pub fn form_pow(f: &BinaryQuadraticForm, mut e: u64) -> BinaryQuadraticForm {
    let disc = f.discriminant();
    let mut acc = BinaryQuadraticForm::principal(disc);
    let mut base = reduce_form(f);
    while e > 0 {
        if e & 1 == 1 {
            acc = compose_forms(&acc, &base);
        }
        base = compose_forms(&base, &base);
        e >>= 1;
    }
    acc
}

/// Class of an ideal as a reduced form.
pub fn ideal_class(ideal: &Ideal, disc: i128) -> BinaryQuadraticForm {
    reduce_form(&ideal.prim.to_form(disc))
}
