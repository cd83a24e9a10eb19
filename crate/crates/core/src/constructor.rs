//! The greedy construction.
//!
//! 1. Compute the `ell`-class group basis and unit generators of `K`.
//! 2. Build the seed field `L_0` and its local degrees above `ell`.
//! 3. Walk the deficient primes above `ell`, then every prime of norm up to
//!    the bound, in ascending norm. Whenever the current composite has local
//!    degree below `ell^r` at a prime `P` with ramification index `e`, add the
//!    ray piece of the first admissible conductor `eps` such that
//!    - `eps` splits completely in `L_0` and in every earlier piece,
//!    - every prime above `ell` (other than `P`) and every earlier conductor
//!      splits completely in `L^eps`,
//!    - the Frobenius of `P` in `L^eps` has order exactly `ell^r / e`.
//! 4. Tabulate the local degree at every prime up to the bound and at the
//!    real place.
//!
//! Composite `n` is handled one prime power at a time; the fields for
//! coprime degrees are linearly disjoint and local degrees multiply.

use crate::arith::{factor_with_seed, DEFAULT_RHO_SEED};
use crate::certificate::{
    ClassDatum, CompositeCertificate, CompositeEntry, ConfigRecord, DeficiencyRecord, ExtensionCertificate, L0Record,
    PieceRecord, PrimeLabel, TableEntry, SCHEMA_VERSION,
};
use crate::classfield::{
    build_l0, l0_local_degrees_above_ell, local_profile, search_prime, Condition, Context, CyclotomicPiece,
    LocalDegree, PieceRef, RayPiece,
};
use crate::error::{Error, Result};
use crate::quadfield::{primes_up_to_norm, BaseField, PrimeIdeal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructConfig {
    /// Rational primes the conductor search may enumerate per piece.
    pub cap: u64,
    /// Skip primes already at full degree in the composite built so far.
    /// When off, only the seed field is consulted, so every prime it leaves
    /// short gets its own piece.
    pub greedy_skip: bool,
    /// Seed for Pollard rho when factoring `n`.
    pub seed: u64,
}

impl Default for ConstructConfig {
    fn default() -> Self {
        ConstructConfig { cap: 100_000, greedy_skip: true, seed: DEFAULT_RHO_SEED }
    }
}

/// A finished construction with the in-memory objects behind it.
#[derive(Clone, Debug)]
pub struct Construction {
    pub ctx: Context,
    pub l0: CyclotomicPiece,
    pub above_ell: Vec<LocalDegree>,
    pub pieces: Vec<RayPiece>,
    pub certificate: ExtensionCertificate,
}

/// Conditions on the next conductor, given the pieces built so far and
/// the prime it must repair.
pub fn piece_conditions(
    above_ell: &[LocalDegree],
    pieces: &[RayPiece],
    target: &PrimeIdeal,
    target_order: u64,
) -> Vec<Condition> {
    let mut conds = vec![Condition::InS, Condition::SplitsCompletelyIn(PieceRef::L0)];
    conds.extend((0..pieces.len()).map(|i| Condition::SplitsCompletelyIn(PieceRef::Ray(i))));
    for ld in above_ell {
        if ld.prime != *target {
            conds.push(Condition::SplitsInCandidate(ld.prime));
        }
    }
    conds.extend(pieces.iter().map(|p| Condition::SplitsInCandidate(p.conductor)));
    conds.push(Condition::FrobeniusOrderExactly { target: *target, order: target_order });
    conds
}

/// Primes the conductor search must skip: earlier conductors and the target.
pub fn piece_avoid(pieces: &[RayPiece], target: &PrimeIdeal) -> Vec<PrimeIdeal> {
    let mut avoid: Vec<PrimeIdeal> = pieces.iter().map(|p| p.conductor).collect();
    avoid.push(*target);
    avoid
}

/// Build a degree-`ell^r` extension of `field` with local degree `ell^r` at
/// every prime of norm at most `bound`.
pub fn construct(
    field: BaseField,
    ell: u64,
    r: u32,
    bound: u64,
    config: &ConstructConfig,
) -> Result<ExtensionCertificate> {
    let ctx = Context::new(field, ell, r)?;
    Ok(construct_with_context(ctx, bound, config)?.certificate)
}

/// As [`construct`], over a given context (for example one with a
/// non-canonical class group basis).
pub fn construct_with_context(ctx: Context, bound: u64, config: &ConstructConfig) -> Result<Construction> {
    if bound < 2 {
        return Err(Error::InvalidInput(format!("bound must be at least 2, got {bound}")));
    }
    let n = ctx.degree();
    let l0 = build_l0(ctx.ell, ctx.r)?;
    let above_ell = l0_local_degrees_above_ell(&ctx.field, &l0);
    let deficient: Vec<&LocalDegree> = above_ell.iter().filter(|ld| ld.local_degree < n).collect();

    let mut pieces: Vec<RayPiece> = Vec::new();
    let mut records: Vec<PieceRecord> = Vec::new();
    let primes = primes_up_to_norm(&ctx.field, bound);
    let worklist = deficient.iter().map(|ld| ld.prime).chain(primes.iter().copied());
    for target in worklist {
        let consulted = if config.greedy_skip { &pieces[..] } else { &[][..] };
        let profile = local_profile(&ctx, &l0, &above_ell, consulted, &target)?;
        let is_conductor = pieces.iter().any(|p| p.conductor == target);
        let is_target = records.iter().any(|r| r.target == PrimeLabel::from(&target));
        if profile.degree() == n || is_conductor || is_target {
            continue;
        }
        let target_order = n / profile.ram_index;
        let conds = piece_conditions(&above_ell, &pieces, &target, target_order);
        let avoid = piece_avoid(&pieces, &target);
        let found = search_prime(&ctx, &l0, &pieces, &conds, &avoid, config.cap)?;
        let eps = found.piece.conductor;
        records.push(PieceRecord {
            p: eps.p,
            b: eps.b(),
            norm: eps.norm(),
            target: PrimeLabel::from(&target),
            target_order,
        });
        pieces.push(found.piece);
    }

    let mut table = Vec::with_capacity(primes.len());
    for prime in &primes {
        let profile = local_profile(&ctx, &l0, &above_ell, &pieces, prime)?;
        if profile.degree() != n {
            return Err(Error::InternalInconsistency(format!(
                "local degree {} at {prime} after construction",
                profile.degree()
            )));
        }
        table.push(TableEntry {
            prime: PrimeLabel::from(prime),
            degree: profile.degree(),
            ramified_component: profile.ramified_component,
        });
    }

    let certificate = ExtensionCertificate {
        schema_version: SCHEMA_VERSION,
        field: ctx.field,
        ell: ctx.ell,
        r: ctx.r,
        t: ctx.t(),
        class_data: ctx
            .class_part
            .gens
            .iter()
            .zip(ctx.class_part.orders())
            .zip(&ctx.class_part.alphas)
            .map(|((g, order), alpha)| ClassDatum { gen_ideal: PrimeLabel::from(g), order, alpha: *alpha })
            .collect(),
        unit_gens: ctx.units.clone(),
        l0: L0Record { modulus: l0.modulus, character: l0.character.clone() },
        deficiencies: deficient
            .iter()
            .map(|ld| DeficiencyRecord {
                prime: PrimeLabel::from(&ld.prime),
                ram_index: ld.ram_index,
                local_degree: ld.local_degree,
                deficiency: ctx.r - ld.local_degree.ilog(ctx.ell),
            })
            .collect(),
        pieces: records,
        bound,
        table,
        real_place_degree: ctx.field.is_rational().then(|| l0.real_place_degree()),
        config: ConfigRecord {
            enumeration: "norm_asc".into(),
            cap: config.cap,
            greedy_skip: config.greedy_skip,
            seed: config.seed,
        },
    };
    Ok(Construction { ctx, l0, above_ell, pieces, certificate })
}

/// Composite `n`: one construction per prime power `ell^r || n`.
pub fn compose_for_n(field: BaseField, n: u64, bound: u64, config: &ConstructConfig) -> Result<CompositeCertificate> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("n must be at least 2, got {n}")));
    }
    let factors = factor_with_seed(n, config.seed);
    let mut components = Vec::with_capacity(factors.0.len());
    for &(ell, r) in &factors.0 {
        components.push(construct(field, ell, r, bound, config)?);
    }
    let mut table: Vec<CompositeEntry> =
        components[0].table.iter().map(|e| CompositeEntry { prime: e.prime, degree: 1 }).collect();
    for c in &components {
        if c.table.len() != table.len() {
            return Err(Error::InternalInconsistency("component tables differ in length".into()));
        }
        for (row, e) in table.iter_mut().zip(&c.table) {
            if row.prime != e.prime {
                return Err(Error::InternalInconsistency("component tables list different primes".into()));
            }
            row.degree *= e.degree;
        }
    }
    Ok(CompositeCertificate { n, bound, components, table })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn conductors(c: &ExtensionCertificate) -> Vec<u64> {
        c.pieces.iter().map(|p| p.p).collect()
    }

    #[test]
    fn rational_quadratic_small_bound() {
        let c = construct(BaseField::Rational, 2, 1, 10, &ConstructConfig::default()).unwrap();
        // L_0 = Q(sqrt -2): 3 splits, 5 and 7 are inert
        assert_eq!(conductors(&c), vec![17]);
        assert_eq!(c.pieces[0].target, PrimeLabel(3, None));
        assert_eq!(c.table.len(), 4);
        assert!(c.table.iter().all(|e| e.degree == 2));
        assert_eq!(c.table[0].ramified_component, Some(0));
        assert_eq!(c.real_place_degree, Some(2));
    }

    #[test]
    fn rational_known_conductors() {
        let cfg = ConstructConfig::default();
        let c = construct(BaseField::Rational, 2, 1, 100, &cfg).unwrap();
        assert_eq!(conductors(&c), vec![17, 89, 409]);
        let c = construct(BaseField::Rational, 3, 1, 50, &cfg).unwrap();
        assert_eq!(conductors(&c), vec![271, 919]);
        assert_eq!(c.real_place_degree, Some(1));
    }

    #[test]
    fn deterministic_output() {
        let cfg = ConstructConfig::default();
        let a = construct(BaseField::Rational, 3, 1, 40, &cfg).unwrap().to_json();
        let b = construct(BaseField::Rational, 3, 1, 40, &cfg).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn without_greedy_skip_every_short_prime_is_a_target() {
        let cfg = ConstructConfig { greedy_skip: false, ..ConstructConfig::default() };
        let c = construct(BaseField::Rational, 2, 1, 30, &cfg).unwrap();
        assert!(c.table.iter().all(|e| e.degree == 2));
        let greedy = construct(BaseField::Rational, 2, 1, 30, &ConstructConfig::default()).unwrap();
        assert!(c.pieces.len() >= greedy.pieces.len());
    }

    #[test]
    fn composite_six() {
        let c = compose_for_n(BaseField::Rational, 6, 20, &ConstructConfig::default()).unwrap();
        assert_eq!(c.components.len(), 2);
        assert!(c.table.iter().all(|e| e.degree == 6));
    }

    #[test]
    fn nontrivial_class_group_needs_pieces_beyond_fifty() {
        let k = BaseField::imaginary_quadratic(-23).unwrap();
        let c = construct(k, 3, 1, 100, &ConstructConfig::default()).unwrap();
        let got: Vec<(u64, Option<u64>)> = c.pieces.iter().map(|p| (p.p, p.b)).collect();
        assert_eq!(got, vec![(20359, Some(2247)), (24337, Some(26353))]);
        // both conjugates above 71 are targets
        assert_eq!(c.pieces[0].target, PrimeLabel(71, Some(41)));
        assert_eq!(c.pieces[1].target, PrimeLabel(71, Some(101)));
        crate::verifier::verify_certificate(&c).unwrap();
    }
}
