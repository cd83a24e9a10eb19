//! Exact modular arithmetic: primality, factoring, and the residue fields
//! `F_p` / `F_{p^2}` in which every splitting test is evaluated.

use crate::error::{Error, Result};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended gcd: returns `(g, x, y)` with `a*x + b*y = g >= 0`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: i128, m: i128) -> Option<i128> {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    (g == 1).then(|| x.rem_euclid(m))
}

pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Jacobi symbol `(a | n)` for odd positive `n`.
pub fn jacobi(a: i128, n: u64) -> i32 {
    assert!(n % 2 == 1, "jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut sign = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        (a, n) = (n, a);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Kronecker symbol `(d | p)` for a prime `p`, including `p = 2`.
pub fn kronecker_prime(d: i64, p: u64) -> i32 {
    if p == 2 {
        if d % 2 == 0 {
            0
        } else if d.rem_euclid(8) == 1 || d.rem_euclid(8) == 7 {
            1
        } else {
            -1
        }
    } else {
        jacobi(d as i128, p)
    }
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin; the first twelve prime bases are a proven
/// witness set for every 64-bit integer.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if m.is_multiple_of(p) {
            return m == p;
        }
    }
    let s = (m - 1).trailing_zeros();
    let d = (m - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Prime factorization as `(prime, exponent)` pairs with strictly
/// increasing primes. `1` factors as the empty list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization(pub Vec<(u64, u32)>);

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn value(&self) -> u64 {
        self.0.iter().map(|&(p, e)| p.pow(e)).product()
    }
}

const TRIAL_LIMIT: u64 = 1_000_000;
pub const DEFAULT_RHO_SEED: u64 = 0x5eed;

pub fn factor(m: u64) -> Factorization {
    factor_with_seed(m, DEFAULT_RHO_SEED)
}

/// Trial division below 10^6, then Pollard rho (Brent) seeded by `seed`.
pub fn factor_with_seed(mut m: u64, seed: u64) -> Factorization {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if m <= 1 {
        return Factorization(out);
    }
    let mut d = 2u64;
    while d < TRIAL_LIMIT && d * d <= m {
        if m.is_multiple_of(d) {
            let mut e = 0;
            while m.is_multiple_of(d) {
                m /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        let mut rest = Vec::new();
        split_large(m, seed, &mut rest);
        rest.sort_unstable();
        for p in rest {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    Factorization(out)
}

fn split_large(m: u64, seed: u64, acc: &mut Vec<u64>) {
    if m == 1 {
        return;
    }
    if is_prime(m) {
        acc.push(m);
        return;
    }
    let mut c = seed % (m - 1) + 1;
    loop {
        if let Some(d) = pollard_brent(m, c) {
            split_large(d, seed, acc);
            split_large(m / d, seed, acc);
            return;
        }
        c = c % (m - 1) + 1;
    }
}

fn pollard_brent(n: u64, c: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let mut x = y;
    let mut ys = y;
    let block = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..block.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += block;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Least positive quadratic non-residue modulo an odd prime.
pub fn least_non_residue(p: u64) -> u64 {
    (2..p).find(|&a| jacobi(a as i128, p) == -1).expect("odd prime has a non-residue")
}

/// `F_p` (degree 1) or `F_p[s]/(s^2 - n0)` (degree 2) where `n0` is the
/// least positive non-residue mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueField {
    p: u64,
    degree: u32,
    n0: u64,
}

/// Element `a + b*s` of a [`ResidueField`]; `b = 0` in the prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe {
    pub a: u64,
    pub b: u64,
}

impl ResidueField {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(ResidueField { p, degree: 1, n0: 0 })
    }

    /// Quadratic extension of `F_p`; needs an odd prime with `p^2` in range.
    pub fn quadratic(p: u64) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(Error::InvalidInput(format!("F_{{p^2}} needs an odd prime, got {p}")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidInput(format!("p = {p} too large for F_{{p^2}}")));
        }
        Ok(ResidueField { p, degree: 2, n0: least_non_residue(p) })
    }

    pub fn new(p: u64, degree: u32) -> Result<Self> {
        match degree {
            1 => Self::prime(p),
            2 => Self::quadratic(p),
            _ => Err(Error::InvalidInput(format!("unsupported residue degree {degree}"))),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn non_residue(&self) -> Option<u64> {
        (self.degree == 2).then_some(self.n0)
    }

    /// Cardinality `Q = p^f`.
    pub fn order(&self) -> u64 {
        self.p.pow(self.degree)
    }

    pub fn zero(&self) -> Fe {
        Fe { a: 0, b: 0 }
    }

    pub fn one(&self) -> Fe {
        Fe { a: 1 % self.p, b: 0 }
    }

    pub fn from_int(&self, x: i128) -> Fe {
        Fe { a: x.rem_euclid(self.p as i128) as u64, b: 0 }
    }

    pub fn elem(&self, a: i128, b: i128) -> Fe {
        let p = self.p as i128;
        let b = if self.degree == 1 { 0 } else { b.rem_euclid(p) as u64 };
        Fe { a: a.rem_euclid(p) as u64, b }
    }

    pub fn add(&self, x: Fe, y: Fe) -> Fe {
        let p = self.p as u128;
        Fe { a: ((x.a as u128 + y.a as u128) % p) as u64, b: ((x.b as u128 + y.b as u128) % p) as u64 }
    }

    pub fn neg(&self, x: Fe) -> Fe {
        let p = self.p;
        Fe { a: (p - x.a) % p, b: (p - x.b) % p }
    }

    pub fn sub(&self, x: Fe, y: Fe) -> Fe {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Fe, y: Fe) -> Fe {
        let p = self.p;
        if self.degree == 1 {
            return Fe { a: mul_mod(x.a, y.a, p), b: 0 };
        }
        let p128 = p as u128;
        let a = (x.a as u128 * y.a as u128 % p128 + (x.b as u128 * y.b as u128 % p128) * self.n0 as u128 % p128) % p128;
        let b = (x.a as u128 * y.b as u128 + x.b as u128 * y.a as u128) % p128;
        Fe { a: a as u64, b: b as u64 }
    }

    pub fn pow(&self, x: Fe, mut exp: u64) -> Fe {
        let mut base = x;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: Fe) -> Result<Fe> {
        if x == self.zero() {
            return Err(Error::InvalidInput("inverse of zero".into()));
        }
        Ok(self.pow(x, self.order() - 2))
    }

    /// Elements of the field in a fixed order, skipping zero.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = Fe> + '_ {
        let p = self.p;
        let b_max = if self.degree == 2 { p } else { 1 };
        (0..b_max).flat_map(move |b| (0..p).map(move |a| Fe { a, b })).filter(|x| x.a != 0 || x.b != 0)
    }
}

pub fn mod_pow(base: Fe, exp: u64, field: &ResidueField) -> Fe {
    field.pow(base, exp)
}

fn ell_power_dividing(ell: u64, n: u64) -> u32 {
    let mut n = n;
    let mut k = 0;
    while n.is_multiple_of(ell) {
        n /= ell;
        k += 1;
    }
    k
}

/// Largest `k <= k_max` with `x^((Q-1)/ell^k) = 1`.
pub fn power_residue_level(x: Fe, ell: u64, k_max: u32, field: &ResidueField) -> Result<u32> {
    if x == field.zero() {
        return Err(Error::InvalidInput("power residue level of zero".into()));
    }
    let qm1 = field.order() - 1;
    let top = ell
        .checked_pow(k_max)
        .filter(|d| qm1.is_multiple_of(*d))
        .ok_or_else(|| Error::InvalidInput(format!("{ell}^{k_max} does not divide Q - 1 = {qm1}")))?;
    // y = x^((Q-1)/ell^k_max) lives in mu_{ell^k_max}; its order ell^j gives level k_max - j.
    let mut y = field.pow(x, qm1 / top);
    let mut j = 0;
    while y != field.one() {
        y = field.pow(y, ell);
        j += 1;
    }
    Ok(k_max - j)
}

/// Multiplicative order of a nonzero element, via the factorization of `Q - 1`.
pub fn multiplicative_order(x: Fe, field: &ResidueField) -> Result<u64> {
    if x == field.zero() {
        return Err(Error::InvalidInput("order of zero".into()));
    }
    let qm1 = field.order() - 1;
    let mut ord = qm1;
    for (p, _) in factor(qm1).0 {
        while ord.is_multiple_of(p) && field.pow(x, ord / p) == field.one() {
            ord /= p;
        }
    }
    Ok(ord)
}

/// An element of exact order `ell^k` (requires `ell^k | Q - 1`).
pub fn root_of_unity(ell: u64, k: u32, field: &ResidueField) -> Result<Fe> {
    let qm1 = field.order() - 1;
    let n = ell.pow(k);
    if !qm1.is_multiple_of(n) {
        return Err(Error::InvalidInput(format!("{n} does not divide Q - 1 = {qm1}")));
    }
    if k == 0 {
        return Ok(field.one());
    }
    let z = non_ell_power(ell, field);
    let w = qm1 / ell.pow(ell_power_dividing(ell, qm1));
    let g = field.pow(z, w);
    // g has order ell^e; lower it to ell^k.
    let e = ell_power_dividing(ell, qm1);
    Ok(field.pow(g, ell.pow(e - k)))
}

fn non_ell_power(ell: u64, field: &ResidueField) -> Fe {
    let qm1 = field.order() - 1;
    field
        .nonzero_elements()
        .find(|&z| field.pow(z, qm1 / ell) != field.one())
        .expect("a non ell-th power exists when ell | Q - 1")
}

/// One `ell`-th root of `x` (Adleman-Manders-Miller style: a first
/// approximation `x^k` with `ell*k = 1 mod w`, then a Pohlig-Hellman
/// correction inside the `ell`-Sylow subgroup).
pub fn ell_root(x: Fe, ell: u64, field: &ResidueField) -> Result<Fe> {
    if x == field.zero() {
        return Ok(x);
    }
    let qm1 = field.order() - 1;
    if !qm1.is_multiple_of(ell) {
        let k = inv_mod(ell as i128, qm1 as i128).expect("ell coprime to Q - 1") as u64;
        return Ok(field.pow(x, k));
    }
    if field.pow(x, qm1 / ell) != field.one() {
        return Err(Error::NotAPower { ell });
    }
    let e = ell_power_dividing(ell, qm1);
    let sylow = ell.pow(e);
    let w = qm1 / sylow;
    // ell * k = 1 (mod w); with w = 1 any k works.
    let k = if w == 1 { 0 } else { inv_mod(ell as i128, w as i128).unwrap() as u64 };
    let y0 = field.pow(x, k);
    // err = y0^ell / x lies in the Sylow subgroup and is an ell-th power there.
    let err = field.mul(field.pow(y0, ell), field.inv(x)?);
    let g = field.pow(non_ell_power(ell, field), w);
    let d = sylow_dlog(err, g, ell, e, field);
    debug_assert_eq!(d % ell, 0);
    let g_inv = field.inv(g)?;
    let y = field.mul(y0, field.pow(g_inv, d / ell));
    debug_assert_eq!(field.pow(y, ell), x);
    Ok(y)
}

/// Discrete log of `h` to the base `g`, where `g` has order `ell^e`.
fn sylow_dlog(h: Fe, g: Fe, ell: u64, e: u32, field: &ResidueField) -> u64 {
    let gamma = field.pow(g, ell.pow(e - 1)); // order ell
    let g_inv = field.inv(g).expect("generator is nonzero");
    let mut digits_value = 0u64;
    for i in 0..e {
        // strip the known low digits, then project to the order-ell subgroup
        let hk = field.mul(h, field.pow(g_inv, digits_value));
        let proj = field.pow(hk, ell.pow(e - 1 - i));
        let mut cur = field.one();
        let mut digit = None;
        for dgt in 0..ell {
            if cur == proj {
                digit = Some(dgt);
                break;
            }
            cur = field.mul(cur, gamma);
        }
        let digit = digit.expect("element lies in the Sylow subgroup");
        digits_value += digit * ell.pow(i);
    }
    digits_value
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> ResidueField {
        ResidueField::prime(7).unwrap()
    }

    #[test]
    fn mod_pow_examples() {
        let f = f7();
        assert_eq!(mod_pow(f.from_int(2), 0, &f), f.one());
        assert_eq!(mod_pow(f.from_int(2), 2, &f), f.from_int(4));
        assert_eq!(mod_pow(f.from_int(2), 2, &f), f.from_int(4));
        assert_eq!(mod_pow(f.from_int(2), (7 - 1) / 3, &f), f.from_int(4));
    }

    #[test]
    fn primality_examples() {
        assert!(is_prime(2));
        assert!(!is_prime(561));
        assert!(is_prime((1u64 << 61) - 1));
        assert!(!is_prime(1));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert!(is_prime(18_446_744_073_709_551_557)); // largest 64-bit prime
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor(1).0, vec![]);
        assert_eq!(factor(12).0, vec![(2, 2), (3, 1)]);
        assert_eq!(factor(2003 * 2011).0, vec![(2003, 1), (2011, 1)]);
        let big = 1_000_003u64 * 1_000_033;
        assert_eq!(factor(big).0, vec![(1_000_003, 1), (1_000_033, 1)]);
        let f = factor(u64::MAX);
        assert_eq!(f.value(), u64::MAX);
        assert!(f.primes().all(is_prime));
    }

    #[test]
    fn power_residue_level_examples() {
        let f = f7();
        assert_eq!(power_residue_level(f.one(), 3, 1, &f).unwrap(), 1);
        assert_eq!(power_residue_level(f.from_int(2), 3, 1, &f).unwrap(), 0);
        assert_eq!(power_residue_level(f.from_int(6), 3, 1, &f).unwrap(), 1);
        assert!(power_residue_level(f.from_int(2), 3, 2, &f).is_err());
        assert!(power_residue_level(f.zero(), 3, 1, &f).is_err());
    }

    #[test]
    fn ell_root_examples() {
        let f = f7();
        let y = ell_root(f.from_int(2), 2, &f).unwrap();
        assert!(y == f.from_int(3) || y == f.from_int(4));
        let y = ell_root(f.from_int(6), 3, &f).unwrap();
        assert!([3, 5, 6].map(|v| f.from_int(v)).contains(&y));
        let y = ell_root(f.one(), 3, &f).unwrap();
        assert_eq!(f.pow(y, 3), f.one());
        assert!(matches!(ell_root(f.from_int(3), 2, &f), Err(Error::NotAPower { ell: 2 })));
    }

    #[test]
    fn multiplicative_order_examples() {
        let f = f7();
        assert_eq!(multiplicative_order(f.one(), &f).unwrap(), 1);
        assert_eq!(multiplicative_order(f.from_int(2), &f).unwrap(), 3);
        assert_eq!(multiplicative_order(f.from_int(3), &f).unwrap(), 6);
    }

    #[test]
    fn quadratic_field_uses_least_non_residue() {
        let f = ResidueField::quadratic(5).unwrap();
        assert_eq!(f.non_residue(), Some(2));
        assert_eq!(f.order(), 25);
        let s = f.elem(0, 1);
        assert_eq!(f.mul(s, s), f.from_int(2));
        assert!(ResidueField::quadratic(2).is_err());
        assert!(ResidueField::new(9, 1).is_err());
    }

    #[test]
    fn deep_sylow_roots() {
        // 2^16 + 1 has a 2-Sylow of order 2^16
        let f = ResidueField::prime(65537).unwrap();
        for v in [3i128, 5, 10, 12345] {
            let x = f.pow(f.from_int(v), 4);
            let y = ell_root(x, 2, &f).unwrap();
            assert_eq!(f.pow(y, 2), x);
        }
        let f = ResidueField::quadratic(1009).unwrap();
        let x = f.pow(f.elem(3, 7), 9);
        let y = ell_root(x, 3, &f).unwrap();
        assert_eq!(f.pow(y, 3), x);
        let z = root_of_unity(3, 1, &f).unwrap();
        assert_eq!(multiplicative_order(z, &f).unwrap(), 3);
    }

    #[test]
    fn kronecker_at_two() {
        assert_eq!(kronecker_prime(-23, 2), 1);
        assert_eq!(kronecker_prime(-3, 2), -1);
        assert_eq!(kronecker_prime(-4, 2), 0);
        assert_eq!(kronecker_prime(-23, 5), -1);
    }
}
