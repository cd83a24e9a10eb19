//! The base field `K`: either `Q` or an imaginary quadratic field of
//! fundamental discriminant `D < 0`. Elements, prime ideals, residue maps,
//! units, and (in [`class_group`]) the class group.

pub mod class_group;
pub mod form;

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{self, is_prime, kronecker_prime, next_prime, Fe, ResidueField};
use crate::error::{Error, Result};

pub use class_group::{class_dlog, class_group_l_part, enumerate_class_group, principal_generator, ClassGroupLPart};
pub use form::{compose_forms, reduce_form, BinaryQuadraticForm, Ideal, QuadIdeal};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseField {
    Rational,
    ImagQuadratic { disc: i64 },
}

fn squarefree(mut n: u64) -> bool {
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d * d) {
            return false;
        }
        if n.is_multiple_of(d) {
            n /= d;
        }
        d += 1;
    }
    true
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    let m = d.unsigned_abs();
    if d.rem_euclid(4) == 1 {
        squarefree(m)
    } else if d.rem_euclid(4) == 0 {
        let q = d / 4;
        matches!(q.rem_euclid(4), 2 | 3) && squarefree(q.unsigned_abs())
    } else {
        false
    }
}

impl BaseField {
    pub fn imaginary_quadratic(disc: i64) -> Result<Self> {
        let f = BaseField::ImagQuadratic { disc };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            BaseField::Rational => Ok(()),
            BaseField::ImagQuadratic { disc } if is_fundamental_discriminant(disc) => Ok(()),
            BaseField::ImagQuadratic { disc } => Err(Error::InvalidInput(format!(
                "{disc} is not a negative fundamental discriminant (need D = 1 mod 4 squarefree, \
                 or D = 4m with m = 2, 3 mod 4 squarefree)"
            ))),
        }
    }

    /// `D` for quadratic fields, `1` for `Q`.
    pub fn disc(&self) -> i64 {
        match *self {
            BaseField::Rational => 1,
            BaseField::ImagQuadratic { disc } => disc,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, BaseField::Rational)
    }

    /// Rational primes dividing `D` (empty for `Q`).
    pub fn ramified_primes(&self) -> Vec<u64> {
        match *self {
            BaseField::Rational => vec![],
            BaseField::ImagQuadratic { disc } => arith::factor(disc.unsigned_abs()).primes().collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        if self.is_rational() {
            1
        } else {
            2
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rational => write!(f, "Q"),
            BaseField::ImagQuadratic { disc } => write!(f, "Q(sqrt({disc}))"),
        }
    }
}

/// `(x + y sqrt D)/2` with `x = y D (mod 2)`. Over `Q`, `y = 0` and `x` is even.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i128; 2]", into = "[i128; 2]")]
pub struct FieldElement {
    pub x: i128,
    pub y: i128,
}

impl From<[i128; 2]> for FieldElement {
    fn from([x, y]: [i128; 2]) -> Self {
        FieldElement { x, y }
    }
}

impl From<FieldElement> for [i128; 2] {
    fn from(e: FieldElement) -> Self {
        [e.x, e.y]
    }
}

impl FieldElement {
    pub fn new(x: i128, y: i128) -> Self {
        FieldElement { x, y }
    }

    pub fn from_int(n: i128) -> Self {
        FieldElement { x: 2 * n, y: 0 }
    }

    pub fn one() -> Self {
        FieldElement::from_int(1)
    }

    pub fn is_valid(&self, field: &BaseField) -> bool {
        match field {
            BaseField::Rational => self.y == 0 && self.x % 2 == 0,
            BaseField::ImagQuadratic { disc } => (self.x - self.y * *disc as i128).rem_euclid(2) == 0,
        }
    }

    pub fn mul(&self, o: &FieldElement, field: &BaseField) -> FieldElement {
        let d = field.disc() as i128;
        FieldElement { x: (self.x * o.x + d * self.y * o.y) / 2, y: (self.x * o.y + self.y * o.x) / 2 }
    }

    pub fn pow(&self, mut e: u64, field: &BaseField) -> FieldElement {
        let mut acc = FieldElement::one();
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, field);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, field);
            }
        }
        acc
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement { x: -self.x, y: -self.y }
    }

    pub fn conj(&self) -> FieldElement {
        FieldElement { x: self.x, y: -self.y }
    }

    /// Absolute norm; over `Q` the element itself.
    pub fn norm(&self, field: &BaseField) -> i128 {
        match field {
            BaseField::Rational => self.x / 2,
            BaseField::ImagQuadratic { disc } => (self.x * self.x - *disc as i128 * self.y * self.y) / 4,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y == 0 {
            write!(f, "{}", self.x / 2)
        } else {
            write!(f, "({} + {}*sqrtD)/2", self.x, self.y)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PrimeKind {
    /// A prime of `Q` itself.
    Rational,
    /// `[p, (b + sqrt D)/2]`, one of two conjugates.
    Split {
        b: u64,
    },
    Inert,
    Ramified {
        b: u64,
    },
}

/// A prime of `K` lying above the rational prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    pub p: u64,
    pub kind: PrimeKind,
}

impl PrimeIdeal {
    pub fn rational(p: u64) -> Self {
        PrimeIdeal { p, kind: PrimeKind::Rational }
    }

    pub fn residue_degree(&self) -> u32 {
        if self.kind == PrimeKind::Inert {
            2
        } else {
            1
        }
    }

    pub fn norm(&self) -> u64 {
        self.p.pow(self.residue_degree())
    }

    /// The stored `b` for split and ramified primes.
    pub fn b(&self) -> Option<u64> {
        match self.kind {
            PrimeKind::Split { b } | PrimeKind::Ramified { b } => Some(b),
            _ => None,
        }
    }

    /// Canonical enumeration key: ascending norm, then `b`.
    pub fn sort_key(&self) -> (u64, u64, u64) {
        (self.norm(), self.p, self.b().unwrap_or(0))
    }

    pub fn residue_field(&self) -> Result<ResidueField> {
        ResidueField::new(self.p, self.residue_degree())
    }

    pub fn to_ideal(&self, field: &BaseField) -> Ideal {
        let d = field.disc() as i128;
        match self.kind {
            PrimeKind::Rational | PrimeKind::Inert => Ideal { content: self.p as i128, prim: QuadIdeal::unit(d) },
            PrimeKind::Split { b } | PrimeKind::Ramified { b } => Ideal {
                content: 1,
                prim: QuadIdeal::new(self.p as i128, b as i128, d).expect("stored root satisfies 4p | b^2 - D"),
            },
        }
    }

    /// JSON label `[p, b_or_null]`.
    pub fn label(&self) -> (u64, Option<u64>) {
        (self.p, self.b())
    }

    pub fn from_label(field: &BaseField, p: u64, b: Option<u64>) -> Result<PrimeIdeal> {
        if !is_prime(p) {
            return Err(Error::MalformedCertificate(format!("{p} is not prime")));
        }
        factor_rational_prime(field, p)
            .into_iter()
            .find(|q| q.b() == b)
            .ok_or_else(|| Error::MalformedCertificate(format!("no prime [{p}, {b:?}] in {field}")))
    }
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.b() {
            Some(b) => write!(f, "[{}, {}]", self.p, b),
            None => write!(f, "[{}]", self.p),
        }
    }
}

/// Primes of `K` above the rational prime `p`, ordered by `b`.
pub fn factor_rational_prime(field: &BaseField, p: u64) -> Vec<PrimeIdeal> {
    let d = match *field {
        BaseField::Rational => return vec![PrimeIdeal::rational(p)],
        BaseField::ImagQuadratic { disc } => disc,
    };
    let roots = |p: u64| -> Vec<u64> {
        let four_p = 4 * p as i128;
        let parity = d.rem_euclid(2) as u64;
        if p == 2 || (d as i128).rem_euclid(p as i128) == 0 {
            return (0..2 * p)
                .filter(|&b| b % 2 == parity && ((b * b) as i128 - d as i128).rem_euclid(four_p) == 0)
                .collect();
        }
        let fp = ResidueField::prime(p).unwrap();
        let r = arith::ell_root(fp.from_int(d as i128), 2, &fp).expect("split prime").a;
        let mut bs: Vec<u64> = [r, (p - r) % p].into_iter().map(|s| if s % 2 == parity { s } else { s + p }).collect();
        bs.sort_unstable();
        bs.dedup();
        bs
    };
    match kronecker_prime(d, p) {
        1 => roots(p).into_iter().map(|b| PrimeIdeal { p, kind: PrimeKind::Split { b } }).collect(),
        -1 => vec![PrimeIdeal { p, kind: PrimeKind::Inert }],
        _ => {
            let b = roots(p)[0];
            vec![PrimeIdeal { p, kind: PrimeKind::Ramified { b } }]
        }
    }
}

/// Image of `sqrt D` in the residue field of an odd prime.
fn sqrt_disc_image(field: &BaseField, prime: &PrimeIdeal, rf: &ResidueField) -> Result<Fe> {
    let p = prime.p;
    match prime.kind {
        PrimeKind::Rational => Ok(rf.from_int(1)),
        // (b + sqrt D)/2 lies in the prime, so sqrt D = -b
        PrimeKind::Split { b } | PrimeKind::Ramified { b } => Ok(rf.from_int(-(b as i128))),
        PrimeKind::Inert => {
            // D = n0 * k^2 with k in F_p; sqrt D = k * s
            let fp = ResidueField::prime(p)?;
            let n0 = rf.non_residue().expect("inert residue field is quadratic");
            let ratio = fp.mul(fp.from_int(field.disc() as i128), fp.inv(fp.from_int(n0 as i128))?);
            let k = arith::ell_root(ratio, 2, &fp)?.a;
            Ok(rf.elem(0, k.min(p - k) as i128))
        }
    }
}

/// Reduction of an integral element modulo a prime.
pub fn reduce_mod(field: &BaseField, z: &FieldElement, prime: &PrimeIdeal) -> Result<Fe> {
    let rf = prime.residue_field()?;
    if prime.p == 2 {
        if z.y == 0 {
            return Ok(rf.from_int(z.x / 2));
        }
        return Err(Error::Precondition("reduction at a prime above 2 needs division by 2".into()));
    }
    if field.is_rational() {
        return Ok(rf.from_int(z.x / 2));
    }
    let s = sqrt_disc_image(field, prime, &rf)?;
    let num = rf.add(rf.from_int(z.x), rf.mul(rf.from_int(z.y), s));
    Ok(rf.mul(num, rf.inv(rf.from_int(2))?))
}

/// Generator of the roots of unity of `K`; all units for the fields in scope.
pub fn unit_generators(field: &BaseField) -> Vec<FieldElement> {
    match field.disc() {
        -4 => vec![FieldElement::new(0, 1)],
        -3 => vec![FieldElement::new(1, 1)],
        _ => vec![FieldElement::from_int(-1)],
    }
}

pub fn unit_group_order(field: &BaseField) -> u64 {
    match field.disc() {
        -4 => 4,
        -3 => 6,
        _ => 2,
    }
}

/// Canonical representative of `z` up to units: among the associates with
/// `y > 0` (or `y = 0, x > 0`) the smallest `(x, y)`.
pub fn normalize_associate(field: &BaseField, z: &FieldElement) -> FieldElement {
    let u = unit_generators(field)[0];
    let mut cur = *z;
    let mut best: Option<FieldElement> = None;
    for _ in 0..unit_group_order(field) {
        if cur.y > 0 || (cur.y == 0 && cur.x > 0) {
            best = Some(best.map_or(cur, |b| b.min(cur)));
        }
        cur = cur.mul(&u, field);
    }
    best.unwrap_or(*z)
}

/// Primes of `K` in ascending norm (ties by `b`), counting the rational
/// primes consumed so far.
pub struct PrimeEnumerator {
    field: BaseField,
    last_p: u64,
    ready: VecDeque<PrimeIdeal>,
    inert: BinaryHeap<Reverse<u64>>,
    rational_consumed: u64,
}

impl PrimeEnumerator {
    pub fn new(field: BaseField) -> Self {
        PrimeEnumerator { field, last_p: 1, ready: VecDeque::new(), inert: BinaryHeap::new(), rational_consumed: 0 }
    }

    pub fn rational_primes_consumed(&self) -> u64 {
        self.rational_consumed
    }
}

impl Iterator for PrimeEnumerator {
    type Item = PrimeIdeal;

    fn next(&mut self) -> Option<PrimeIdeal> {
        loop {
            if let Some(p) = self.ready.pop_front() {
                return Some(p);
            }
            let p = next_prime(self.last_p);
            if let Some(&Reverse(q)) = self.inert.peek() {
                if q * q < p {
                    self.inert.pop();
                    return Some(PrimeIdeal { p: q, kind: PrimeKind::Inert });
                }
            }
            self.last_p = p;
            self.rational_consumed += 1;
            for prime in factor_rational_prime(&self.field, p) {
                if prime.kind == PrimeKind::Inert {
                    self.inert.push(Reverse(p));
                } else {
                    self.ready.push_back(prime);
                }
            }
        }
    }
}

/// All primes of `K` with norm at most `bound`, in enumeration order.
pub fn primes_up_to_norm(field: &BaseField, bound: u64) -> Vec<PrimeIdeal> {
    PrimeEnumerator::new(*field).take_while(|p| p.norm() <= bound).collect()
}
