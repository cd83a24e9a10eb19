//! The seed field `L_0`: a cyclic degree-`ell^r` subfield of `Q(zeta_M)`
//! ramified only at `ell`, described by a Dirichlet character mod `M`.
//!
//! Odd `ell`: `M = ell^{r+1}` and the character is the canonical order-`ell^r`
//! quotient of the cyclic group `(Z/M)^*`. `ell = 2`: `M = 2^{r+2}`,
//! `(Z/M)^* = <-1> x <5>`, and the character sends `5` to a primitive
//! `2^r`-th root of unity and `-1` to `-1`, so `L_0` is complex.

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime};
use crate::error::{Error, Result};
use crate::quadfield::{factor_rational_prime, BaseField, PrimeIdeal, PrimeKind};

/// A character of `(Z/M)^*` with values in `Z/order`, given on generators:
/// `chi(g) = k` for each pair `[g, k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterSpec {
    pub order: u64,
    pub generators: Vec<[u64; 2]>,
}

#[derive(Clone, Debug)]
pub struct CyclotomicPiece {
    pub ell: u64,
    pub r: u32,
    pub modulus: u64,
    pub character: CharacterSpec,
    /// `chi(x)` for every residue; `None` off the unit group.
    table: Vec<Option<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum L0Frobenius {
    Unramified(u64),
    Ramified,
}

/// Ramification index and local degree of `K L_0 / K` at a prime above `ell`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalDegree {
    pub prime: PrimeIdeal,
    pub ram_index: u64,
    pub local_degree: u64,
}

impl LocalDegree {
    pub fn residue_degree(&self) -> u64 {
        self.local_degree / self.ram_index
    }
}

fn multiplicative_order_mod(x: u64, m: u64) -> u64 {
    let mut y = x % m;
    let mut k = 1;
    while y != 1 {
        y = y * x % m;
        k += 1;
    }
    k
}

fn least_primitive_root_prime_power(ell: u64, m: u64) -> u64 {
    let phi = m / ell * (ell - 1);
    (2..m).find(|&g| gcd(g, m) == 1 && multiplicative_order_mod(g, m) == phi).expect("odd prime powers are cyclic")
}

impl CyclotomicPiece {
    /// Rebuild a piece from its serialized character, checking that the
    /// character is well defined on all of `(Z/M)^*`.
    pub fn from_spec(ell: u64, r: u32, modulus: u64, character: CharacterSpec) -> Result<Self> {
        let bad = |msg: String| Error::MalformedCertificate(format!("L_0 character: {msg}"));
        if modulus < 3 || character.order == 0 || character.generators.is_empty() {
            return Err(bad("degenerate modulus or order".into()));
        }
        let mut table = vec![None; modulus as usize];
        // all products of generator powers
        let gens: Vec<(u64, u64, u64)> = character
            .generators
            .iter()
            .map(|&[g, k]| (g % modulus, k % character.order, multiplicative_order_mod(g % modulus, modulus)))
            .collect();
        if gens.iter().any(|&(g, _, _)| gcd(g, modulus) != 1) {
            return Err(bad("generator not a unit".into()));
        }
        let mut frontier: Vec<(u64, u64)> = vec![(1, 0)];
        for &(g, k, o) in &gens {
            let mut next = Vec::with_capacity(frontier.len() * o as usize);
            for &(x, e) in &frontier {
                let mut y = x;
                let mut ey = e;
                for _ in 0..o {
                    next.push((y, ey));
                    y = y * g % modulus;
                    ey = (ey + k) % character.order;
                }
            }
            frontier = next;
        }
        for (x, e) in frontier {
            match table[x as usize] {
                None => table[x as usize] = Some(e),
                Some(prev) if prev == e => {}
                Some(_) => return Err(bad(format!("not well defined at {x}"))),
            }
        }
        let units = (1..modulus).filter(|&x| gcd(x, modulus) == 1).count();
        if table.iter().filter(|v| v.is_some()).count() != units {
            return Err(bad("generators do not span (Z/M)^*".into()));
        }
        Ok(CyclotomicPiece { ell, r, modulus, character, table })
    }

    /// `chi(x)` as an exponent in `Z/order`, `None` if `gcd(x, M) > 1`.
    pub fn chi(&self, x: u64) -> Option<u64> {
        self.table[(x % self.modulus) as usize]
    }

    pub fn order_of(&self, exponent: u64) -> u64 {
        self.character.order / gcd(exponent % self.character.order, self.character.order)
    }

    /// Order of the character itself (its image size).
    pub fn image_order(&self) -> u64 {
        self.table.iter().flatten().map(|&e| self.order_of(e)).max().unwrap_or(1)
    }

    /// Local degree at the real place of `Q`: 2 iff `chi(-1) != 0`.
    pub fn real_place_degree(&self) -> u64 {
        if self.chi(self.modulus - 1) == Some(0) {
            1
        } else {
            2
        }
    }
}

/// The canonical seed field for `ell^r`.
pub fn build_l0(ell: u64, r: u32) -> Result<CyclotomicPiece> {
    if !is_prime(ell) || r == 0 {
        return Err(Error::InvalidInput(format!("need a prime ell and r >= 1, got {ell}, {r}")));
    }
    let order = ell.pow(r);
    let (modulus, generators) = if ell == 2 {
        let m = 1u64 << (r + 2);
        (m, vec![[m - 1, order / 2], [5, 1]])
    } else {
        let m = ell.pow(r + 1);
        (m, vec![[least_primitive_root_prime_power(ell, m), 1]])
    };
    CyclotomicPiece::from_spec(ell, r, modulus, CharacterSpec { order, generators })
}

/// Frobenius order of `q` in `K L_0 / K`, or `Ramified` above `ell`.
pub fn frobenius_order_in_l0(piece: &CyclotomicPiece, q: &PrimeIdeal) -> L0Frobenius {
    if q.p == piece.ell {
        return L0Frobenius::Ramified;
    }
    let e = piece.chi(q.norm() % piece.modulus).expect("norm coprime to the modulus");
    L0Frobenius::Unramified(piece.order_of(e))
}

fn ell_adic_split(ell: u64, mut n: u128) -> (u32, u128) {
    let mut v = 0;
    while n.is_multiple_of(ell as u128) {
        n /= ell as u128;
        v += 1;
    }
    (v, n)
}

/// Local degrees of `K L_0 / K` at the primes above `ell`.
///
/// Via local class field theory the decomposition (inertia) group at `lambda`
/// is the image under `chi` of the local norms of `K_lambda^*` (of its units),
/// with `ell` itself acting trivially. When `ell` is unramified in `K` every
/// unit is a local norm, so the full degree `ell^r` is totally ramified. When
/// `ell` ramifies, `lambda` is the only prime above `ell` and local norms are
/// global norms, enumerated over representatives of `O_K / M`.
pub fn l0_local_degrees_above_ell(field: &BaseField, piece: &CyclotomicPiece) -> Vec<LocalDegree> {
    let full = piece.image_order();
    factor_rational_prime(field, piece.ell)
        .into_iter()
        .map(|prime| {
            let (ram_index, local_degree) = match prime.kind {
                PrimeKind::Ramified { .. } => ramified_local_degree(field.disc(), piece),
                _ => (full, full),
            };
            LocalDegree { prime, ram_index, local_degree }
        })
        .collect()
}

fn ramified_local_degree(disc: i64, piece: &CyclotomicPiece) -> (u64, u64) {
    let m = piece.modulus as i128;
    let d = disc as i128;
    let mut inertia = 1u64;
    let mut decomposition = 1u64;
    for x in 0..2 * m {
        for y in 0..2 * m {
            if (x - y * d).rem_euclid(2) != 0 {
                continue;
            }
            let n = (x * x - d * y * y) / 4;
            if n == 0 {
                continue;
            }
            let (v, u) = ell_adic_split(piece.ell, n as u128);
            let ord = piece.order_of(piece.chi((u % piece.modulus as u128) as u64).expect("unit part"));
            decomposition = decomposition.max(ord);
            if v == 0 {
                inertia = inertia.max(ord);
            }
        }
    }
    (inertia, decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l0_examples() {
        let l = build_l0(3, 1).unwrap();
        assert_eq!(l.modulus, 9);
        assert_eq!(l.image_order(), 3);
        let l = build_l0(2, 1).unwrap();
        assert_eq!(l.modulus, 8);
        // kernel {1, 3}: the field Q(sqrt -2)
        assert_eq!(l.chi(1), Some(0));
        assert_eq!(l.chi(3), Some(0));
        assert_eq!(l.chi(5), Some(1));
        assert_eq!(l.chi(7), Some(1));
        let l = build_l0(2, 2).unwrap();
        assert_eq!(l.modulus, 16);
        assert_eq!(l.order_of(l.chi(5).unwrap()), 4);
        assert_eq!(l.real_place_degree(), 2);
    }

    #[test]
    fn l0_is_odd_for_ell_two() {
        for r in 1..=6 {
            let l = build_l0(2, r).unwrap();
            assert_eq!(l.real_place_degree(), 2);
            assert_eq!(l.image_order(), 1 << r);
        }
    }

    #[test]
    fn l0_frobenius_examples() {
        let q = |p| PrimeIdeal::rational(p);
        let l = build_l0(3, 1).unwrap();
        assert_eq!(frobenius_order_in_l0(&l, &q(2)), L0Frobenius::Unramified(3));
        assert_eq!(frobenius_order_in_l0(&l, &q(19)), L0Frobenius::Unramified(1));
        assert_eq!(frobenius_order_in_l0(&l, &q(3)), L0Frobenius::Ramified);
        let l = build_l0(2, 1).unwrap();
        assert_eq!(frobenius_order_in_l0(&l, &q(5)), L0Frobenius::Unramified(2));
        assert_eq!(frobenius_order_in_l0(&l, &q(17)), L0Frobenius::Unramified(1));
    }

    #[test]
    fn local_degrees_above_ell() {
        let l = build_l0(3, 1).unwrap();
        let r = l0_local_degrees_above_ell(&BaseField::Rational, &l);
        assert_eq!(r.len(), 1);
        assert_eq!((r[0].ram_index, r[0].local_degree), (3, 3));

        let k = BaseField::imaginary_quadratic(-23).unwrap();
        let r = l0_local_degrees_above_ell(&k, &l);
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|x| x.local_degree == 3 && x.ram_index == 3));

        // K = Q(sqrt -2) is L_0 itself for ell^r = 2
        let k8 = BaseField::imaginary_quadratic(-8).unwrap();
        let r = l0_local_degrees_above_ell(&k8, &build_l0(2, 1).unwrap());
        assert_eq!((r[0].ram_index, r[0].local_degree), (1, 1));
        // and is disjoint from the degree-4 seed field
        let r = l0_local_degrees_above_ell(&k8, &build_l0(2, 2).unwrap());
        assert_eq!(r[0].local_degree, 4);

        // Q(i) against Q(sqrt -2): compositum Q_2(zeta_8), still degree 2
        let k4 = BaseField::imaginary_quadratic(-4).unwrap();
        let r = l0_local_degrees_above_ell(&k4, &build_l0(2, 1).unwrap());
        assert_eq!((r[0].ram_index, r[0].local_degree), (2, 2));

        // Q(sqrt -10): K_2(sqrt -2) = K_2(sqrt 5) is unramified over K_2
        let k40 = BaseField::imaginary_quadratic(-40).unwrap();
        let r = l0_local_degrees_above_ell(&k40, &build_l0(2, 1).unwrap());
        assert_eq!((r[0].ram_index, r[0].local_degree), (1, 2));
    }

    #[test]
    fn from_spec_rejects_bad_characters() {
        let spec = CharacterSpec { order: 4, generators: vec![[5, 1]] };
        assert!(CyclotomicPiece::from_spec(2, 2, 16, spec).is_err());
        let spec = CharacterSpec { order: 2, generators: vec![[3, 1], [5, 1], [7, 1]] };
        assert!(CyclotomicPiece::from_spec(2, 1, 8, spec).is_err());
    }
}
