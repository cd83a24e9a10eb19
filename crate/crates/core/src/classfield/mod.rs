//! Admissible conductors, the splitting map, and Frobenius orders.
//!
//! For a prime `eps` of `K` in the admissible set `S`, the cyclic piece
//! `L^eps` of degree `ell^r` is cut out of the ray class field of conductor
//! `eps` by the character
//!
//! ```text
//!   Cl_{K,eps}  ->  P_eps = (O_K/eps)^* / units  ->  mu_{ell^r},   x |-> x^((Q-1)/ell^r)
//! ```
//!
//! extended trivially on the complement spanned by `a_i * alpha_i^(-1/ell^m_i)`.
//! Nothing about `L^eps` is ever materialized beyond this character: the
//! Frobenius order of a prime `q` is the order of its character value, and
//! the value is computed in the residue field at `eps`.

pub mod cyclotomic;
pub mod search;

use crate::arith::{self, ell_root, inv_mod, power_residue_level, Fe, ResidueField};
use crate::error::{Error, Result};
use crate::quadfield::{
    class_dlog, class_group_l_part, principal_generator, reduce_mod, unit_generators, BaseField, ClassGroupLPart,
    FieldElement, Ideal, PrimeIdeal, PrimeKind,
};

pub use cyclotomic::{
    build_l0, frobenius_order_in_l0, l0_local_degrees_above_ell, CharacterSpec, CyclotomicPiece, L0Frobenius,
    LocalDegree,
};
pub use search::{failing_condition, search_prime, Condition, PieceRef, SearchOutcome};

/// Everything about `K`, `ell` and `r` that the construction needs:
/// the `ell`-class group basis (supplying `t`, `m_i`, `a_i`, `alpha_i`) and
/// the unit generators.
#[derive(Clone, Debug)]
pub struct Context {
    pub field: BaseField,
    pub ell: u64,
    pub r: u32,
    pub class_part: ClassGroupLPart,
    pub units: Vec<FieldElement>,
    excluded: Vec<u64>,
}

impl Context {
    pub fn new(field: BaseField, ell: u64, r: u32) -> Result<Self> {
        field.validate()?;
        let mut excluded = vec![2, ell];
        excluded.extend(field.ramified_primes());
        excluded.sort_unstable();
        excluded.dedup();
        let class_part = class_group_l_part(&field, ell, &excluded)?;
        Self::with_class_part(field, ell, r, class_part)
    }

    /// Context over a caller-chosen class group basis.
    pub fn with_class_part(field: BaseField, ell: u64, r: u32, class_part: ClassGroupLPart) -> Result<Self> {
        if !arith::is_prime(ell) {
            return Err(Error::InvalidInput(format!("ell = {ell} is not prime")));
        }
        if r == 0 {
            return Err(Error::InvalidInput("r must be at least 1".into()));
        }
        if ell.checked_pow(r + class_part.t + 1).is_none() {
            return Err(Error::InvalidInput(format!("{ell}^{r} is out of range")));
        }
        let mut excluded = vec![2, ell];
        excluded.extend(field.ramified_primes());
        excluded.sort_unstable();
        excluded.dedup();
        Ok(Context { units: unit_generators(&field), field, ell, r, class_part, excluded })
    }

    pub fn t(&self) -> u32 {
        self.class_part.t
    }

    /// `r + t`: the level of roots of unity and unit roots required at conductors.
    pub fn level(&self) -> u32 {
        self.r + self.t()
    }

    /// `ell^r`.
    pub fn degree(&self) -> u64 {
        self.ell.pow(self.r)
    }

    /// Rational primes dividing `2 ell D`.
    pub fn excluded_rational_primes(&self) -> &[u64] {
        &self.excluded
    }

    pub fn divides_2_ell_d(&self, prime: &PrimeIdeal) -> bool {
        self.excluded.contains(&prime.p)
    }

    pub fn is_class_generator(&self, prime: &PrimeIdeal) -> bool {
        self.class_part.gens.contains(prime)
    }

    fn check_conductor_candidate(&self, prime: &PrimeIdeal) -> Result<()> {
        if self.divides_2_ell_d(prime) {
            return Err(Error::Precondition(format!("{prime} divides 2*ell*D")));
        }
        if self.is_class_generator(prime) {
            return Err(Error::Precondition(format!("{prime} is a class group generator")));
        }
        Ok(())
    }
}

/// Membership in `S`: `P` splits completely in the `ell`-Hilbert class
/// field, in the field of `ell^{r+t}`-th roots of all units, and in the
/// Kummer field of the `alpha_i`.
pub fn in_s(ctx: &Context, prime: &PrimeIdeal) -> Result<bool> {
    ctx.check_conductor_candidate(prime)?;
    let q = prime.norm();
    let top = ctx.ell.pow(ctx.level());
    if !(q - 1).is_multiple_of(top) {
        return Ok(false);
    }
    let ideal = prime.to_ideal(&ctx.field);
    if class_dlog(&ctx.field, &ideal, &ctx.class_part).iter().any(|&c| c != 0) {
        return Ok(false);
    }
    let rf = prime.residue_field()?;
    for u in &ctx.units {
        let ub = reduce_mod(&ctx.field, u, prime)?;
        if power_residue_level(ub, ctx.ell, ctx.level(), &rf)? != ctx.level() {
            return Ok(false);
        }
    }
    for (alpha, &m) in ctx.class_part.alphas.iter().zip(&ctx.class_part.exps) {
        let ab = reduce_mod(&ctx.field, alpha, prime)?;
        if power_residue_level(ab, ctx.ell, m, &rf)? != m {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `P` splits completely in `K(mu_{ell^k}, alpha^{1/ell^k})`.
pub fn kummer_split_test(ctx: &Context, prime: &PrimeIdeal, alpha: &FieldElement, level: u32) -> Result<bool> {
    if ctx.divides_2_ell_d(prime) {
        return Err(Error::Precondition(format!("{prime} divides 2*ell*D")));
    }
    if level > ctx.level() {
        return Err(Error::Precondition(format!("level {level} exceeds r + t = {}", ctx.level())));
    }
    let rf = prime.residue_field()?;
    let ab = reduce_mod(&ctx.field, alpha, prime)?;
    if ab == rf.zero() {
        return Err(Error::Precondition(format!("{prime} divides alpha")));
    }
    if level == 0 {
        return Ok(true);
    }
    if !(prime.norm() - 1).is_multiple_of(ctx.ell.pow(level)) {
        return Ok(false);
    }
    Ok(power_residue_level(ab, ctx.ell, level, &rf)? == level)
}

/// The cyclic degree-`ell^r` piece of the ray class field of prime conductor.
#[derive(Clone, Debug)]
pub struct RayPiece {
    pub conductor: PrimeIdeal,
    pub degree: u64,
    residue: ResidueField,
    /// `(Q - 1)/ell^r`.
    char_exponent: u64,
    /// `ell^{m_i}`-th roots of `alpha_i` modulo the conductor.
    roots: Vec<Fe>,
}

impl RayPiece {
    /// Piece of conductor `eps`; fails unless `eps` is in `S`.
    pub fn new(ctx: &Context, eps: &PrimeIdeal) -> Result<Self> {
        if matches!(eps.kind, PrimeKind::Ramified { .. }) {
            return Err(Error::Precondition(format!("{eps} is ramified in K")));
        }
        if !in_s(ctx, eps)? {
            return Err(Error::Precondition(format!("{eps} is not in S")));
        }
        let residue = eps.residue_field()?;
        let mut roots = Vec::with_capacity(ctx.class_part.rank());
        for (alpha, &m) in ctx.class_part.alphas.iter().zip(&ctx.class_part.exps) {
            let mut y = reduce_mod(&ctx.field, alpha, eps)?;
            for _ in 0..m {
                y = ell_root(y, ctx.ell, &residue)?;
            }
            roots.push(y);
        }
        Ok(RayPiece {
            conductor: *eps,
            degree: ctx.degree(),
            residue,
            char_exponent: (residue.order() - 1) / ctx.degree(),
            roots,
        })
    }

    pub fn residue_field(&self) -> &ResidueField {
        &self.residue
    }

    /// The `ell^{m_i}`-th roots of the `alpha_i` used by the splitting map.
    pub fn roots(&self) -> &[Fe] {
        &self.roots
    }

    /// Same piece with each root multiplied by `zeta_i^{twist_i}`, `zeta_i`
    /// a primitive `ell^{m_i}`-th root of unity: another valid choice of roots.
    pub fn with_root_twist(&self, ctx: &Context, twists: &[u64]) -> Result<Self> {
        let mut out = self.clone();
        for ((root, &m), &tw) in out.roots.iter_mut().zip(&ctx.class_part.exps).zip(twists) {
            let zeta = arith::root_of_unity(ctx.ell, m, &self.residue)?;
            *root = self.residue.mul(*root, self.residue.pow(zeta, tw));
        }
        Ok(out)
    }
}

/// Piece-independent data for a prime `q`: its class exponents `c`, the
/// complementary exponents `e_i = -c_i mod ell^{m_i}`, and a generator of
/// the principal ideal `(q * prod a_i^{e_i})^{h'}`, `h'` the prime-to-`ell`
/// part of the class number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayDatum {
    pub prime: PrimeIdeal,
    pub c: Vec<u64>,
    pub e: Vec<u64>,
    pub generator: FieldElement,
}

pub fn ray_datum(ctx: &Context, q: &PrimeIdeal) -> Result<RayDatum> {
    let field = &ctx.field;
    let d = field.disc() as i128;
    let q_ideal = q.to_ideal(field);
    let c = class_dlog(field, &q_ideal, &ctx.class_part);
    let orders = ctx.class_part.orders();
    let e: Vec<u64> = c.iter().zip(&orders).map(|(&ci, &o)| (o - ci) % o).collect();
    let generator = if field.is_rational() {
        FieldElement::from_int(q.p as i128)
    } else {
        let mut ideal: Ideal = q_ideal;
        for (g, &ei) in ctx.class_part.gens.iter().zip(&e) {
            ideal = ideal.mul(&g.to_ideal(field).pow(ei, d), d);
        }
        let ideal = ideal.pow(ctx.class_part.cofactor, d);
        principal_generator(field, &ideal).map_err(|err| match err {
            Error::NotPrincipal => Error::InternalInconsistency(format!("class exponents of {q} are wrong")),
            other => other,
        })?
    };
    Ok(RayDatum { prime: *q, c, e, generator })
}

/// Image of `q` under the splitting map into `(O_K/eps)^*`, well defined
/// modulo elements killed by `x |-> x^((Q-1)/ell^r)`.
pub fn splitting_map_image(ctx: &Context, piece: &RayPiece, q: &PrimeIdeal) -> Result<Fe> {
    let datum = ray_datum(ctx, q)?;
    splitting_map_image_from(ctx, piece, &datum, 0)
}

/// As [`splitting_map_image`], from a precomputed datum, with the generator
/// replaced by `generator * u^unit_twist` (`u` the unit generator of `K`).
pub fn splitting_map_image_from(ctx: &Context, piece: &RayPiece, datum: &RayDatum, unit_twist: u64) -> Result<Fe> {
    if datum.prime == piece.conductor {
        return Err(Error::Precondition(format!("{} is the conductor", datum.prime)));
    }
    let rf = &piece.residue;
    let mut generator = datum.generator;
    if unit_twist > 0 {
        generator = generator.mul(&ctx.units[0].pow(unit_twist, &ctx.field), &ctx.field);
    }
    let mut gamma = reduce_mod(&ctx.field, &generator, &piece.conductor)?;
    if gamma == rf.zero() {
        return Err(Error::Precondition(format!("{} is not coprime to the conductor", datum.prime)));
    }
    let h_prime = ctx.class_part.cofactor;
    for (root, &ei) in piece.roots.iter().zip(&datum.e) {
        let correction = rf.pow(*root, ei * h_prime);
        gamma = rf.mul(gamma, rf.inv(correction)?);
    }
    if h_prime > 1 {
        // undo the h'-th power on the ell-part
        let qm1 = rf.order() - 1;
        let mut sylow = 1u64;
        while qm1.is_multiple_of(sylow * ctx.ell) {
            sylow *= ctx.ell;
        }
        let u = inv_mod(h_prime as i128, sylow as i128).unwrap_or(0) as u64;
        gamma = rf.pow(gamma, u);
    }
    Ok(gamma)
}

fn ell_order(rf: &ResidueField, mut z: Fe, ell: u64) -> u64 {
    let mut order = 1;
    while z != rf.one() {
        z = rf.pow(z, ell);
        order *= ell;
    }
    order
}

/// Order of the Frobenius of `q` in `Gal(L^eps/K)`; `ell^r` (total
/// ramification) when `q` is the conductor.
pub fn frobenius_order_in_ray_piece(ctx: &Context, piece: &RayPiece, q: &PrimeIdeal) -> Result<u64> {
    if *q == piece.conductor {
        return Ok(piece.degree);
    }
    let datum = ray_datum(ctx, q)?;
    frobenius_order_from(ctx, piece, &datum, 0)
}

pub fn frobenius_order_from(ctx: &Context, piece: &RayPiece, datum: &RayDatum, unit_twist: u64) -> Result<u64> {
    if datum.prime == piece.conductor {
        return Ok(piece.degree);
    }
    let gamma = splitting_map_image_from(ctx, piece, datum, unit_twist)?;
    let z = piece.residue.pow(gamma, piece.char_exponent);
    Ok(ell_order(&piece.residue, z, ctx.ell))
}

/// Order of the `ell`-part of `(O_K/eps)^* / units` when that part is cyclic.
pub fn principal_ray_ell_order(ctx: &Context, eps: &PrimeIdeal) -> Result<u64> {
    let rf = eps.residue_field()?;
    let qm1 = rf.order() - 1;
    let mut sylow = 1u64;
    while qm1 % (sylow * ctx.ell) == 0 {
        sylow *= ctx.ell;
    }
    // the unit image is cyclic; its ell-part has order ell-part of its order
    let mut unit_ell = 1u64;
    for u in &ctx.units {
        let ub = reduce_mod(&ctx.field, u, eps)?;
        let o = arith::multiplicative_order(ub, &rf)?;
        let mut part = 1u64;
        while o % (part * ctx.ell) == 0 {
            part *= ctx.ell;
        }
        unit_ell = unit_ell.max(part);
    }
    Ok(sylow / unit_ell)
}

/// How a prime of `K` behaves in the composite of the seed field and the
/// ray pieces: at most one component ramifies, so the local degree is
/// `ram_index * residue_degree` with the residue degree the lcm over components.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalProfile {
    pub ram_index: u64,
    pub residue_degree: u64,
    /// `0` for the seed field, `i` for the `i`-th ray piece.
    pub ramified_component: Option<usize>,
}

impl LocalProfile {
    pub fn degree(&self) -> u64 {
        self.ram_index * self.residue_degree
    }
}

/// Local profile of `prime` in `L_0 * L^{eps_1} * ... * L^{eps_k}`.
///
/// `above_ell` holds the seed field data at the primes above `ell`. Fails
/// with an inconsistency if two components ramify at the same prime, which
/// the construction rules out.
pub fn local_profile(
    ctx: &Context,
    l0: &CyclotomicPiece,
    above_ell: &[LocalDegree],
    pieces: &[RayPiece],
    prime: &PrimeIdeal,
) -> Result<LocalProfile> {
    let (mut ram_index, mut residue_degree, mut ramified_component) = match frobenius_order_in_l0(l0, prime) {
        L0Frobenius::Unramified(f) => (1, f, None),
        L0Frobenius::Ramified => {
            let ld = above_ell
                .iter()
                .find(|x| x.prime == *prime)
                .ok_or_else(|| Error::InternalInconsistency(format!("no seed field data at {prime}")))?;
            (ld.ram_index, ld.residue_degree(), (ld.ram_index > 1).then_some(0))
        }
    };
    let mut datum: Option<RayDatum> = None;
    for (i, piece) in pieces.iter().enumerate() {
        if piece.conductor == *prime {
            if ramified_component.is_some() {
                return Err(Error::InternalInconsistency(format!("{prime} ramifies in two components")));
            }
            ram_index = piece.degree;
            ramified_component = Some(i + 1);
            continue;
        }
        if datum.is_none() {
            datum = Some(ray_datum(ctx, prime)?);
        }
        let f = frobenius_order_from(ctx, piece, datum.as_ref().unwrap(), 0)?;
        residue_degree = residue_degree.max(f);
    }
    // orders are powers of ell, so the lcm is the maximum
    Ok(LocalProfile { ram_index, residue_degree, ramified_component })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadfield::factor_rational_prime;

    fn q_ctx(ell: u64, r: u32) -> Context {
        Context::new(BaseField::Rational, ell, r).unwrap()
    }

    #[test]
    fn in_s_examples() {
        let ctx = q_ctx(3, 1);
        assert!(in_s(&ctx, &PrimeIdeal::rational(7)).unwrap());
        assert!(!in_s(&ctx, &PrimeIdeal::rational(5)).unwrap());
        let ctx = q_ctx(2, 1);
        assert!(in_s(&ctx, &PrimeIdeal::rational(5)).unwrap());
        assert!(!in_s(&ctx, &PrimeIdeal::rational(7)).unwrap());
        assert!(in_s(&ctx, &PrimeIdeal::rational(2)).is_err());
    }

    #[test]
    fn in_s_imaginary_quadratic() {
        let k = BaseField::imaginary_quadratic(-23).unwrap();
        let ctx = Context::new(k, 3, 1).unwrap();
        assert_eq!(ctx.t(), 1);
        assert!(in_s(&ctx, &ctx.class_part.gens[0]).is_err());
        let members: Vec<PrimeIdeal> = crate::quadfield::primes_up_to_norm(&k, 3000)
            .into_iter()
            .filter(|p| !ctx.divides_2_ell_d(p) && !ctx.is_class_generator(p))
            .filter(|p| in_s(&ctx, p).unwrap())
            .collect();
        assert!(!members.is_empty());
        for p in &members {
            assert_eq!((p.norm() - 1) % 9, 0);
            assert!(principal_ray_ell_order(&ctx, p).unwrap() >= 9);
        }
    }

    #[test]
    fn kummer_examples() {
        let ctx = q_ctx(2, 1);
        let two = FieldElement::from_int(2);
        let three = FieldElement::from_int(3);
        assert!(kummer_split_test(&ctx, &PrimeIdeal::rational(7), &two, 0).unwrap());
        assert!(kummer_split_test(&ctx, &PrimeIdeal::rational(7), &two, 1).unwrap());
        assert!(!kummer_split_test(&ctx, &PrimeIdeal::rational(17), &three, 1).unwrap());
        assert!(kummer_split_test(&ctx, &PrimeIdeal::rational(17), &three, 2).is_err());
    }

    #[test]
    fn rational_splitting_map() {
        let ctx = q_ctx(3, 1);
        let piece = RayPiece::new(&ctx, &PrimeIdeal::rational(7)).unwrap();
        let rf = piece.residue_field();
        assert_eq!(splitting_map_image(&ctx, &piece, &PrimeIdeal::rational(2)).unwrap(), rf.from_int(2));
        assert_eq!(frobenius_order_in_ray_piece(&ctx, &piece, &PrimeIdeal::rational(7)).unwrap(), 3);
        assert_eq!(frobenius_order_in_ray_piece(&ctx, &piece, &PrimeIdeal::rational(2)).unwrap(), 3);
        assert_eq!(frobenius_order_in_ray_piece(&ctx, &piece, &PrimeIdeal::rational(13)).unwrap(), 1);
        assert!(RayPiece::new(&ctx, &PrimeIdeal::rational(5)).is_err());
    }

    #[test]
    fn quadratic_splitting_map_is_a_character() {
        // psi(q1) psi(q2) = psi(q1 q2) checked through ideals q1 q2 = (z) * ...
        let k = BaseField::imaginary_quadratic(-23).unwrap();
        let ctx = Context::new(k, 3, 1).unwrap();
        let eps = crate::quadfield::primes_up_to_norm(&k, 5000)
            .into_iter()
            .find(|p| !ctx.divides_2_ell_d(p) && !ctx.is_class_generator(p) && in_s(&ctx, p).unwrap())
            .unwrap();
        let piece = RayPiece::new(&ctx, &eps).unwrap();
        let rf = piece.residue_field();
        let chi = |g: Fe| rf.pow(g, (rf.order() - 1) / 3);
        // conjugate primes multiply to (p): psi(P) psi(Pbar) = chi(p)
        for p in [2u64, 3, 13, 29, 31, 41] {
            let ps = factor_rational_prime(&k, p);
            if ps.len() != 2 || ps.contains(&eps) {
                continue;
            }
            let a = splitting_map_image(&ctx, &piece, &ps[0]).unwrap();
            let b = splitting_map_image(&ctx, &piece, &ps[1]).unwrap();
            let whole = rf.from_int(p as i128);
            assert_eq!(chi(rf.mul(a, b)), chi(whole), "p = {p}");
        }
    }
}
