//! Independent re-verification of certificates.
//!
//! Nothing from the construction run is trusted: the class group basis is
//! rechecked from its generators and `alpha`s, the seed field is rebuilt,
//! every conductor is rechecked against its conditions and shown to be the
//! first prime satisfying them, and every table row is recomputed.

pub mod hilbert;

use std::collections::BTreeMap;

use serde::Serialize;

pub use hilbert::{hilbert_symbol, hilbert_symbol_rational, ramified_places, Place, QuaternionAlgebra};

use crate::arith::{factor_with_seed, is_prime};
use crate::certificate::{CertificateFile, CompositeCertificate, ExtensionCertificate, PrimeLabel};
use crate::classfield::{
    build_l0, failing_condition, in_s, l0_local_degrees_above_ell, local_profile, search_prime, Context, RayPiece,
};
use crate::constructor::{piece_avoid, piece_conditions};
use crate::error::{Error, Result};
use crate::quadfield::{primes_up_to_norm, unit_generators, BaseField, ClassGroupLPart, PrimeIdeal};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub field: BaseField,
    pub n: u64,
    pub bound: u64,
    pub primes_checked: usize,
    pub pieces: usize,
    /// Local degree at the real place of `Q`, if any.
    pub real_place_degree: Option<u64>,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedCertificate(msg.into())
}

fn mismatch(prime: impl ToString, claimed: impl ToString, recomputed: impl ToString) -> Error {
    Error::MismatchFound { prime: prime.to_string(), claimed: claimed.to_string(), recomputed: recomputed.to_string() }
}

/// Verify certificate text (either kind).
pub fn verify_json(text: &str) -> Result<VerificationReport> {
    verify(&CertificateFile::from_json(text)?)
}

pub fn verify(file: &CertificateFile) -> Result<VerificationReport> {
    match file {
        CertificateFile::Single(c) => verify_certificate(c),
        CertificateFile::Composite(c) => verify_composite(c),
    }
}

fn rebuild_context(cert: &ExtensionCertificate) -> Result<Context> {
    let field = cert.field;
    field.validate().map_err(|e| malformed(e.to_string()))?;
    if !is_prime(cert.ell) || cert.r == 0 {
        return Err(malformed(format!("ell = {}, r = {} is not a prime power", cert.ell, cert.r)));
    }
    let gens = cert.class_data.iter().map(|d| d.gen_ideal.resolve(&field)).collect::<Result<Vec<PrimeIdeal>>>()?;
    let alphas: Vec<_> = cert.class_data.iter().map(|d| d.alpha).collect();
    let part = ClassGroupLPart::from_generators(&field, cert.ell, &gens, Some(&alphas))
        .map_err(|e| malformed(format!("class data: {e}")))?;
    for (d, o) in cert.class_data.iter().zip(part.orders()) {
        if d.order != o {
            return Err(mismatch(d.gen_ideal, format!("class order {}", d.order), format!("class order {o}")));
        }
    }
    if part.t != cert.t {
        return Err(mismatch("class group", format!("t = {}", cert.t), format!("t = {}", part.t)));
    }
    let ctx = Context::with_class_part(field, cert.ell, cert.r, part).map_err(|e| malformed(e.to_string()))?;
    if let Some(g) = gens.iter().find(|g| ctx.divides_2_ell_d(g)) {
        return Err(malformed(format!("class group generator {g} divides 2*ell*D")));
    }
    if cert.unit_gens != unit_generators(&field) {
        return Err(mismatch("unit group", format!("{:?}", cert.unit_gens), format!("{:?}", ctx.units)));
    }
    Ok(ctx)
}

pub fn verify_certificate(cert: &ExtensionCertificate) -> Result<VerificationReport> {
    let ctx = rebuild_context(cert)?;
    let n = ctx.degree();

    let l0 = build_l0(ctx.ell, ctx.r)?;
    if cert.l0.modulus != l0.modulus || cert.l0.character != l0.character {
        return Err(mismatch("L_0", format!("{:?}", cert.l0), format!("modulus {} {:?}", l0.modulus, l0.character)));
    }
    let above_ell = l0_local_degrees_above_ell(&ctx.field, &l0);
    let deficient: Vec<_> = above_ell.iter().filter(|ld| ld.local_degree < n).collect();
    if deficient.len() != cert.deficiencies.len() {
        return Err(mismatch(
            "deficiencies",
            format!("{} primes", cert.deficiencies.len()),
            format!("{} primes", deficient.len()),
        ));
    }
    for (ld, rec) in deficient.iter().zip(&cert.deficiencies) {
        let label = PrimeLabel::from(&ld.prime);
        if rec.prime != label || rec.ram_index != ld.ram_index || rec.local_degree != ld.local_degree {
            return Err(mismatch(
                label,
                format!("e = {}, degree {}", rec.ram_index, rec.local_degree),
                format!("e = {}, degree {}", ld.ram_index, ld.local_degree),
            ));
        }
        if rec.deficiency != ctx.r - ld.local_degree.ilog(ctx.ell) {
            return Err(mismatch(label, format!("deficiency {}", rec.deficiency), "a different deficiency"));
        }
    }

    // pieces, in order, each against the composite built before it
    let mut pieces: Vec<RayPiece> = Vec::with_capacity(cert.pieces.len());
    for (i, rec) in cert.pieces.iter().enumerate() {
        let eps = rec.conductor().resolve(&ctx.field)?;
        let target = rec.target.resolve(&ctx.field)?;
        let at = format!("piece {} ({})", i + 1, rec.conductor());
        if rec.norm != eps.norm() {
            return Err(mismatch(&at, format!("norm {}", rec.norm), format!("norm {}", eps.norm())));
        }
        let consulted = if cert.config.greedy_skip { &pieces[..] } else { &[][..] };
        let profile = local_profile(&ctx, &l0, &above_ell, consulted, &target)?;
        if profile.degree() == n {
            return Err(mismatch(
                &at,
                format!("target {} needs a piece", rec.target),
                "target already has full degree",
            ));
        }
        let order = n / profile.ram_index;
        if rec.target_order != order {
            return Err(mismatch(&at, format!("target order {}", rec.target_order), format!("target order {order}")));
        }
        let conds = piece_conditions(&above_ell, &pieces, &target, order);
        if ctx.divides_2_ell_d(&eps) || ctx.is_class_generator(&eps) || !in_s(&ctx, &eps)? {
            return Err(mismatch(&at, "conductor in S", "not in S"));
        }
        if let Some(c) = failing_condition(&ctx, &l0, &pieces, &conds, &eps)? {
            return Err(mismatch(&at, "conductor satisfies its conditions", format!("fails: {c}")));
        }
        let first = search_prime(&ctx, &l0, &pieces, &conds, &piece_avoid(&pieces, &target), cert.config.cap)?;
        if first.piece.conductor != eps {
            return Err(mismatch(&at, "first admissible conductor", format!("first is {}", first.piece.conductor)));
        }
        pieces.push(first.piece);
    }

    // the table covers exactly the primes up to the bound
    let primes = primes_up_to_norm(&ctx.field, cert.bound);
    if primes.len() != cert.table.len() {
        return Err(mismatch("table", format!("{} rows", cert.table.len()), format!("{} primes", primes.len())));
    }
    for (prime, row) in primes.iter().zip(&cert.table) {
        let label = PrimeLabel::from(prime);
        if row.prime != label {
            return Err(mismatch(row.prime, "table row", format!("expected {label}")));
        }
        let profile = local_profile(&ctx, &l0, &above_ell, &pieces, prime)?;
        if row.degree != profile.degree() {
            return Err(mismatch(label, format!("degree {}", row.degree), format!("degree {}", profile.degree())));
        }
        if row.ramified_component != profile.ramified_component {
            return Err(mismatch(
                label,
                format!("ramified in {:?}", row.ramified_component),
                format!("ramified in {:?}", profile.ramified_component),
            ));
        }
        if profile.degree() != n {
            return Err(mismatch(label, format!("degree {n}"), format!("degree {}", profile.degree())));
        }
    }

    let real = ctx.field.is_rational().then(|| l0.real_place_degree());
    if cert.real_place_degree != real {
        return Err(mismatch("inf", format!("{:?}", cert.real_place_degree), format!("{real:?}")));
    }
    if ctx.ell == 2 && real == Some(1) {
        return Err(mismatch("inf", "degree 2", "degree 1"));
    }

    Ok(VerificationReport {
        field: ctx.field,
        n,
        bound: cert.bound,
        primes_checked: primes.len(),
        pieces: pieces.len(),
        real_place_degree: real,
    })
}

pub fn verify_composite(c: &CompositeCertificate) -> Result<VerificationReport> {
    if c.components.is_empty() {
        return Err(malformed("composite certificate without components"));
    }
    let seed = c.components[0].config.seed;
    let expected: Vec<(u64, u32)> = factor_with_seed(c.n, seed).0;
    let got: Vec<(u64, u32)> = c.components.iter().map(|x| (x.ell, x.r)).collect();
    if expected != got {
        return Err(mismatch("composite", format!("components {got:?}"), format!("factorization {expected:?}")));
    }
    let field = c.components[0].field;
    let mut pieces = 0;
    let mut real = Some(1u64);
    for comp in &c.components {
        if comp.field != field || comp.bound != c.bound {
            return Err(malformed("components disagree on field or bound"));
        }
        let rep = verify_certificate(comp)?;
        pieces += rep.pieces;
        real = match (real, rep.real_place_degree) {
            (Some(a), Some(b)) => Some(a * b),
            _ => None,
        };
    }
    if c.table.len() != c.components[0].table.len() {
        return Err(mismatch(
            "table",
            format!("{} rows", c.table.len()),
            format!("{} rows", c.components[0].table.len()),
        ));
    }
    for (i, row) in c.table.iter().enumerate() {
        let degree: u64 = c.components.iter().map(|comp| comp.table[i].degree).product();
        if row.prime != c.components[0].table[i].prime {
            return Err(mismatch(row.prime, "table row", format!("expected {}", c.components[0].table[i].prime)));
        }
        if row.degree != degree || degree != c.n {
            return Err(mismatch(row.prime, format!("degree {}", row.degree), format!("degree {degree}")));
        }
    }
    Ok(VerificationReport {
        field,
        n: c.n,
        bound: c.bound,
        primes_checked: c.table.len(),
        pieces,
        real_place_degree: if field.is_rational() { real } else { None },
    })
}

/// Local degrees of a verified certificate over `Q`, by place.
fn local_degrees_over_q(file: &CertificateFile) -> Result<(u64, BTreeMap<Place, u64>)> {
    let report = verify(file)?;
    if !report.field.is_rational() {
        return Err(Error::Precondition("Hilbert symbols are implemented over Q only".into()));
    }
    let mut map = BTreeMap::new();
    let rows: Vec<(PrimeLabel, u64)> = match file {
        CertificateFile::Single(c) => c.table.iter().map(|e| (e.prime, e.degree)).collect(),
        CertificateFile::Composite(c) => c.table.iter().map(|e| (e.prime, e.degree)).collect(),
    };
    for (label, degree) in rows {
        map.insert(Place::Finite(label.0), degree);
    }
    if let Some(d) = report.real_place_degree {
        map.insert(Place::Infinite, d);
    }
    Ok((report.bound, map))
}

/// One ramified place of the algebra and the local degree of `L` there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaceCheck {
    pub place: Place,
    pub local_degree: u64,
    pub kills_invariant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrauerReport {
    pub algebra: QuaternionAlgebra,
    pub places: Vec<PlaceCheck>,
    pub split_by_l: bool,
}

/// Whether the certified field splits the quaternion algebra `(a, b)_Q`.
///
/// The algebra has invariant `1/2` at each ramified place; `L` kills it
/// exactly when the local degree there is even. Ramified places beyond the
/// certified bound are an error, not a verdict.
pub fn brauer_split_check(file: &CertificateFile, algebra: &QuaternionAlgebra) -> Result<BrauerReport> {
    let (bound, degrees) = local_degrees_over_q(file)?;
    let mut places = Vec::new();
    for place in algebra.ramified_places()? {
        let local_degree = match (place, degrees.get(&place)) {
            (_, Some(&d)) => d,
            (Place::Finite(p), None) if p > bound => {
                return Err(Error::RamifiedPlaceOutOfRange { place: p, bound });
            }
            _ => return Err(Error::InternalInconsistency(format!("no local degree at {place}"))),
        };
        places.push(PlaceCheck { place, local_degree, kills_invariant: local_degree % 2 == 0 });
    }
    let split_by_l = places.iter().all(|p| p.kills_invariant);
    Ok(BrauerReport { algebra: *algebra, places, split_by_l })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructor::{construct, ConstructConfig};

    fn cert(ell: u64, r: u32, bound: u64) -> ExtensionCertificate {
        construct(BaseField::Rational, ell, r, bound, &ConstructConfig::default()).unwrap()
    }

    #[test]
    fn accepts_constructions() {
        let rep = verify_certificate(&cert(2, 1, 60)).unwrap();
        assert_eq!(rep.n, 2);
        assert_eq!(rep.real_place_degree, Some(2));
        let k = BaseField::imaginary_quadratic(-23).unwrap();
        let c = construct(k, 2, 1, 40, &ConstructConfig::default()).unwrap();
        assert!(verify_certificate(&c).is_ok());
    }

    #[test]
    fn rejects_tampering() {
        let good = cert(2, 1, 60);
        let mut c = good.clone();
        c.table[3].degree = 1;
        assert!(matches!(verify_certificate(&c), Err(Error::MismatchFound { .. })));

        let mut c = good.clone();
        c.pieces[0].p = 41;
        c.pieces[0].norm = 41;
        assert!(matches!(verify_certificate(&c), Err(Error::MismatchFound { .. })));

        let mut c = good.clone();
        c.real_place_degree = Some(1);
        assert!(verify_certificate(&c).is_err());

        let mut c = good.clone();
        c.table.pop();
        assert!(verify_certificate(&c).is_err());

        let mut c = good;
        c.pieces.pop();
        assert!(verify_certificate(&c).is_err());
    }

    #[test]
    fn brauer_check() {
        let file = CertificateFile::from(cert(2, 1, 100));
        let rep = brauer_split_check(&file, &QuaternionAlgebra::new(-1, -1).unwrap()).unwrap();
        assert!(rep.split_by_l);
        assert_eq!(rep.places.len(), 2);
        let far = QuaternionAlgebra::new(-1, 103).unwrap();
        assert!(matches!(brauer_split_check(&file, &far), Err(Error::RamifiedPlaceOutOfRange { .. })));
    }
}
