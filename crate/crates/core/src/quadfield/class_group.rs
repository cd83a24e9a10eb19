//! Class groups by reduced-form enumeration, the `ell`-primary part with
//! prime-ideal generators, discrete logs, and principal generators.

use std::collections::{BTreeMap, BTreeSet};

use super::form::{compose_forms, form_pow, ideal_class, BinaryQuadraticForm, Ideal};
use super::{
    factor_rational_prime, normalize_associate, BaseField, FieldElement, PrimeEnumerator, PrimeIdeal, PrimeKind,
};
use crate::arith::{gcd_i128, inv_mod, isqrt};
use crate::error::{Error, Result};

type Form = BinaryQuadraticForm;

/// All reduced primitive forms of discriminant `D`; the length is `h(D)`.
/// Over `Q` the list is empty and `h = 1`.
pub fn enumerate_class_group(field: &BaseField) -> (Vec<Form>, u64) {
    let d = match *field {
        BaseField::Rational => return (vec![], 1),
        BaseField::ImagQuadratic { disc } => disc as i128,
    };
    let mut out = Vec::new();
    let a_max = isqrt((-d / 3) as u128) as i128;
    for a in 1..=a_max {
        for b in -a..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = Form::new(a, b, num / (4 * a));
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
    }
    let h = out.len() as u64;
    (out, h)
}

fn ell_valuation(ell: u64, mut n: u64) -> u32 {
    let mut k = 0;
    while n.is_multiple_of(ell) {
        n /= ell;
        k += 1;
    }
    k
}

/// The `ell`-primary class group with a basis of prime ideals.
#[derive(Clone, Debug)]
pub struct ClassGroupLPart {
    pub ell: u64,
    pub gens: Vec<PrimeIdeal>,
    /// `m_i`: the generator `a_i` has class order `ell^{m_i}`.
    pub exps: Vec<u32>,
    /// `alpha_i` with `a_i^{ell^{m_i}} = (alpha_i)`.
    pub alphas: Vec<FieldElement>,
    /// Exponent of the `ell`-part is `ell^t`.
    pub t: u32,
    pub class_number: u64,
    /// Prime-to-`ell` part of the class number.
    pub cofactor: u64,
    disc: i128,
    /// Multiplier projecting a class onto its `ell`-component.
    projector: u64,
    dlog_table: BTreeMap<Form, Vec<u64>>,
}

impl ClassGroupLPart {
    pub fn trivial(ell: u64) -> Self {
        ClassGroupLPart {
            ell,
            gens: vec![],
            exps: vec![],
            alphas: vec![],
            t: 0,
            class_number: 1,
            cofactor: 1,
            disc: 1,
            projector: 1,
            dlog_table: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn order(&self) -> u64 {
        self.exps.iter().map(|&m| self.ell.pow(m)).product()
    }

    pub fn orders(&self) -> Vec<u64> {
        self.exps.iter().map(|&m| self.ell.pow(m)).collect()
    }
}

/// `ell`-primary part of `Cl_K` with prime generators avoiding every
/// rational prime in `exclude`.
pub fn class_group_l_part(field: &BaseField, ell: u64, exclude: &[u64]) -> Result<ClassGroupLPart> {
    class_group_l_part_capped(field, ell, exclude, 100_000)
}

pub fn class_group_l_part_capped(field: &BaseField, ell: u64, exclude: &[u64], cap: u64) -> Result<ClassGroupLPart> {
    let d = match *field {
        BaseField::Rational => return Ok(ClassGroupLPart::trivial(ell)),
        BaseField::ImagQuadratic { disc } => disc as i128,
    };
    let (forms, h) = enumerate_class_group(field);
    let k = ell_valuation(ell, h);
    let sylow_order = ell.pow(k);
    let cofactor = h / sylow_order;
    // u = 1 mod ell^k, u = 0 mod cofactor
    let projector =
        if k == 0 { cofactor } else { cofactor * inv_mod(cofactor as i128, sylow_order as i128).unwrap() as u64 };
    let identity = Form::principal(d);
    let mut part = ClassGroupLPart {
        ell,
        gens: vec![],
        exps: vec![],
        alphas: vec![],
        t: 0,
        class_number: h,
        cofactor,
        disc: d,
        projector,
        dlog_table: BTreeMap::new(),
    };
    if k == 0 {
        part.dlog_table.insert(identity, vec![]);
        return Ok(part);
    }
    let sylow: BTreeSet<Form> = forms.iter().map(|f| form_pow(f, projector)).collect();
    debug_assert_eq!(sylow.len() as u64, sylow_order);

    let order_in = |x: &Form| -> u32 {
        let mut y = *x;
        let mut j = 0;
        while y != identity {
            y = form_pow(&y, ell);
            j += 1;
        }
        j
    };
    // order of x modulo the subgroup h_set, as an exponent of ell
    let order_mod = |x: &Form, h_set: &BTreeSet<Form>| -> u32 {
        let mut y = *x;
        let mut j = 0;
        while !h_set.contains(&y) {
            y = form_pow(&y, ell);
            j += 1;
        }
        j
    };

    let mut subgroup: BTreeSet<Form> = [identity].into();
    let mut gen_classes: Vec<Form> = Vec::new();
    let mut primes = PrimeEnumerator::new(*field);
    while (subgroup.len() as u64) < sylow_order {
        let prime = primes.next().expect("infinitely many primes");
        if primes.rational_primes_consumed() > cap {
            return Err(Error::SearchExhausted {
                examined: cap,
                cap,
                conditions: format!("prime generators for the {ell}-class group of {field}"),
            });
        }
        if exclude.contains(&prime.p) || prime.kind == PrimeKind::Inert {
            continue;
        }
        let cls = ideal_class(&prime.to_ideal(field), d);
        if !sylow.contains(&cls) {
            continue;
        }
        let max_quotient = sylow.iter().map(|x| order_mod(x, &subgroup)).max().unwrap();
        let m = order_in(&cls);
        if m != max_quotient || order_mod(&cls, &subgroup) != m {
            continue;
        }
        // extend the subgroup by <cls>
        let mut next = BTreeSet::new();
        let mut power = identity;
        for _ in 0..ell.pow(m) {
            for h_el in &subgroup {
                next.insert(compose_forms(h_el, &power));
            }
            power = compose_forms(&power, &cls);
        }
        subgroup = next;
        gen_classes.push(cls);
        part.gens.push(prime);
        part.exps.push(m);
    }
    ClassGroupLPart::from_generators(field, ell, &part.gens, None)
}

impl ClassGroupLPart {
    /// Basis from given prime generators, checking that they form a basis of
    /// the `ell`-part. With `alphas` given, each must generate
    /// `a_i^{ell^{m_i}}`; otherwise generators are computed.
    pub fn from_generators(
        field: &BaseField,
        ell: u64,
        gens: &[PrimeIdeal],
        alphas: Option<&[FieldElement]>,
    ) -> Result<ClassGroupLPart> {
        let d = match *field {
            BaseField::Rational if gens.is_empty() => return Ok(ClassGroupLPart::trivial(ell)),
            BaseField::Rational => return Err(Error::InvalidInput("Q has trivial class group".into())),
            BaseField::ImagQuadratic { disc } => disc as i128,
        };
        let (_, h) = enumerate_class_group(field);
        let k = ell_valuation(ell, h);
        let sylow_order = ell.pow(k);
        let cofactor = h / sylow_order;
        let projector =
            if k == 0 { cofactor } else { cofactor * inv_mod(cofactor as i128, sylow_order as i128).unwrap() as u64 };
        let identity = Form::principal(d);
        let mut exps = Vec::with_capacity(gens.len());
        let mut gen_classes = Vec::with_capacity(gens.len());
        for prime in gens {
            if factor_rational_prime(field, prime.p).iter().all(|q| q != prime) {
                return Err(Error::InvalidInput(format!("{prime} is not a prime of {field}")));
            }
            let cls = ideal_class(&prime.to_ideal(field), d);
            if form_pow(&cls, sylow_order) != identity {
                return Err(Error::InvalidInput(format!("the class of {prime} is not in the {ell}-part")));
            }
            let mut y = cls;
            let mut m = 0;
            while y != identity {
                y = form_pow(&y, ell);
                m += 1;
            }
            if m == 0 {
                return Err(Error::InvalidInput(format!("{prime} is principal")));
            }
            exps.push(m);
            gen_classes.push(cls);
        }
        let orders: Vec<u64> = exps.iter().map(|&m| ell.pow(m)).collect();
        let total: u64 = orders.iter().product();
        if total != sylow_order {
            return Err(Error::InvalidInput(format!("generators span a group of order {total}, not {sylow_order}")));
        }
        // basis check: the dlog table must hit every Sylow element exactly once
        let mut table = BTreeMap::new();
        for idx in 0..total {
            let mut rem = idx;
            let mut cs = Vec::with_capacity(orders.len());
            let mut cls = identity;
            for (g, &o) in gen_classes.iter().zip(&orders) {
                let c = rem % o;
                rem /= o;
                cs.push(c);
                cls = compose_forms(&cls, &form_pow(g, c));
            }
            if table.insert(cls, cs).is_some() {
                return Err(Error::InvalidInput("class group generators are dependent".into()));
            }
        }
        let mut alpha_out = Vec::with_capacity(gens.len());
        for (i, (prime, &m)) in gens.iter().zip(&exps).enumerate() {
            let power = prime.to_ideal(field).pow(ell.pow(m), d);
            match alphas {
                Some(given) => {
                    let a = *given.get(i).ok_or_else(|| Error::InvalidInput("missing alpha".into()))?;
                    if !generates(field, &a, &power) {
                        return Err(Error::InvalidInput(format!(
                            "alpha = {a} does not generate {prime}^{}",
                            ell.pow(m)
                        )));
                    }
                    alpha_out.push(a);
                }
                None => alpha_out.push(principal_generator(field, &power)?),
            }
        }
        Ok(ClassGroupLPart {
            ell,
            gens: gens.to_vec(),
            t: exps.iter().copied().max().unwrap_or(0),
            exps,
            alphas: alpha_out,
            class_number: h,
            cofactor,
            disc: d,
            projector,
            dlog_table: table,
        })
    }
}

/// Exponents `c` with `0 <= c_i < ell^{m_i}` such that the class of
/// `ideal * prod a_i^{-c_i}` has trivial `ell`-part.
pub fn class_dlog(field: &BaseField, ideal: &Ideal, basis: &ClassGroupLPart) -> Vec<u64> {
    if field.is_rational() || basis.gens.is_empty() {
        return vec![];
    }
    let cls = ideal_class(ideal, basis.disc);
    let ell_part = form_pow(&cls, basis.projector);
    basis.dlog_table.get(&ell_part).cloned().expect("ell-part lies in the span of the basis")
}

/// A generator of a principal ideal, normalized up to units.
pub fn principal_generator(field: &BaseField, ideal: &Ideal) -> Result<FieldElement> {
    let d = match *field {
        BaseField::Rational => return Ok(FieldElement::from_int(ideal.content)),
        BaseField::ImagQuadratic { disc } => disc as i128,
    };
    if ideal_class(ideal, d) != Form::principal(d) {
        return Err(Error::NotPrincipal);
    }
    let a = ideal.prim.a;
    // x^2 + |D| y^2 = 4a with (x + y sqrt D)/2 in the lattice
    let four_a = 4 * a;
    let mut y = 0i128;
    while -d * y * y <= four_a {
        let rem = four_a + d * y * y;
        let x = isqrt(rem as u128) as i128;
        if x * x == rem {
            for (sx, sy) in [(x, y), (-x, y), (x, -y), (-x, -y)] {
                if ideal.prim.contains(sx, sy) {
                    let g = FieldElement::new(sx * ideal.content, sy * ideal.content);
                    return Ok(normalize_associate(field, &g));
                }
            }
        }
        y += 1;
    }
    Err(Error::InternalInconsistency(format!("no generator found for a principal ideal of norm {a}")))
}

/// Whether `z` generates `ideal`: equal norms and membership.
pub fn generates(field: &BaseField, z: &FieldElement, ideal: &Ideal) -> bool {
    let c = ideal.content;
    if field.is_rational() {
        return z.norm(field).abs() == c;
    }
    z.norm(field) == ideal.norm()
        && z.x % c == 0
        && z.y % c == 0
        && ideal.prim.contains(z.x / c, z.y / c)
        && gcd_i128(z.x, z.y) != 0
}

#[cfg(test)]
mod tests {
    use super::super::factor_rational_prime;
    use super::*;

    fn k(d: i64) -> BaseField {
        BaseField::imaginary_quadratic(d).unwrap()
    }

    #[test]
    fn class_numbers() {
        let (forms, h) = enumerate_class_group(&k(-4));
        assert_eq!((forms, h), (vec![Form::new(1, 0, 1)], 1));
        let (forms, h) = enumerate_class_group(&k(-23));
        assert_eq!(h, 3);
        assert_eq!(forms, vec![Form::new(1, 1, 6), Form::new(2, -1, 3), Form::new(2, 1, 3)]);
        assert_eq!(enumerate_class_group(&k(-47)).1, 5);
        assert_eq!(enumerate_class_group(&BaseField::Rational), (vec![], 1));
        // brute-force cross-check against known small class numbers
        for (d, h) in [(-3, 1), (-7, 1), (-8, 1), (-15, 2), (-20, 2), (-84, 4), (-71, 7), (-56, 4)] {
            assert_eq!(enumerate_class_group(&k(d)).1, h, "D = {d}");
        }
    }

    #[test]
    fn l_part_examples() {
        let p = class_group_l_part(&k(-4), 3, &[2, 3]).unwrap();
        assert_eq!((p.rank(), p.t), (0, 0));
        let p = class_group_l_part(&k(-23), 2, &[2, 23]).unwrap();
        assert_eq!((p.rank(), p.t), (0, 0));

        // with no exclusions a prime above 2 generates
        let kf = k(-23);
        let p = class_group_l_part(&kf, 3, &[]).unwrap();
        assert_eq!((p.rank(), p.t, p.exps.clone()), (1, 1, vec![1]));
        assert_eq!(p.gens[0].p, 2);
        assert_eq!(p.alphas[0].norm(&kf), 8);
        // excluding 2, 3, 23 moves the generator to a prime above 13
        let p = class_group_l_part(&kf, 3, &[2, 3, 23]).unwrap();
        assert_eq!(p.gens[0].p, 13);
        assert_eq!(p.alphas[0].norm(&kf), 13 * 13 * 13);
        let cube = p.gens[0].to_ideal(&kf).pow(3, -23);
        assert!(generates(&kf, &p.alphas[0], &cube));
    }

    #[test]
    fn l_part_noncyclic() {
        // Cl(-84) = C2 x C2
        let kf = k(-84);
        let p = class_group_l_part(&kf, 2, &[2, 3, 7]).unwrap();
        assert_eq!(p.exps, vec![1, 1]);
        assert_eq!(p.order(), 4);
        for (g, a) in p.gens.iter().zip(&p.alphas) {
            assert!(generates(&kf, a, &g.to_ideal(&kf).pow(2, -84)));
        }
    }

    #[test]
    fn dlog_examples() {
        let kf = k(-23);
        let part = class_group_l_part(&kf, 3, &[2, 3, 23]).unwrap();
        let a1 = part.gens[0];
        let a1_class = ideal_class(&a1.to_ideal(&kf), -23);
        assert_eq!(class_dlog(&kf, &Ideal::unit(-23), &part), vec![0]);
        let (g, i) = match a1_class {
            c if c == Form::new(2, 1, 3) => (Form::new(2, 1, 3), Form::new(2, -1, 3)),
            _ => (Form::new(2, -1, 3), Form::new(2, 1, 3)),
        };
        let in_g = Ideal { content: 1, prim: super::super::QuadIdeal::from_form(&g) };
        let in_inv = Ideal { content: 1, prim: super::super::QuadIdeal::from_form(&i) };
        assert_eq!(class_dlog(&kf, &in_g, &part), vec![1]);
        assert_eq!(class_dlog(&kf, &in_inv, &part), vec![2]);
    }

    #[test]
    fn principal_generator_examples() {
        let kf = k(-23);
        assert_eq!(principal_generator(&kf, &Ideal::unit(-23)).unwrap(), FieldElement::one());
        let two = factor_rational_prime(&kf, 2);
        // [2, (3 + sqrt D)/2]^3 = ((3 + sqrt D)/2)
        let cube = two[1].to_ideal(&kf).pow(3, -23);
        assert_eq!(principal_generator(&kf, &cube).unwrap(), FieldElement::new(3, 1));
        let cube = two[0].to_ideal(&kf).pow(3, -23);
        let g = principal_generator(&kf, &cube).unwrap();
        assert_eq!(g.norm(&kf), 8);
        assert!(generates(&kf, &g, &cube));
        assert_eq!(principal_generator(&kf, &two[0].to_ideal(&kf)), Err(Error::NotPrincipal));
        // inert prime: generated by p
        let five = factor_rational_prime(&kf, 5)[0].to_ideal(&kf);
        assert_eq!(principal_generator(&kf, &five).unwrap(), FieldElement::from_int(5));
        assert_eq!(
            principal_generator(&BaseField::Rational, &PrimeIdeal::rational(7).to_ideal(&BaseField::Rational)).unwrap(),
            FieldElement::from_int(7)
        );
    }

    #[test]
    fn generator_normalization_is_unit_invariant() {
        for d in [-3i64, -4, -23] {
            let kf = k(d);
            let u = super::super::unit_generators(&kf)[0];
            let z = FieldElement::new(7, 3).mul(&FieldElement::new(7, 3), &kf);
            let z = if z.is_valid(&kf) { z } else { FieldElement::new(8, 2) };
            let mut cur = z;
            let canon = normalize_associate(&kf, &z);
            for _ in 0..6 {
                cur = cur.mul(&u, &kf);
                assert_eq!(normalize_associate(&kf, &cur), canon);
            }
        }
    }
}
