//! Smallest prime satisfying a conjunction of splitting conditions.

use std::collections::HashMap;
use std::fmt;

use super::cyclotomic::{frobenius_order_in_l0, CyclotomicPiece, L0Frobenius};
use super::{frobenius_order_from, frobenius_order_in_ray_piece, in_s, ray_datum, Context, RayDatum, RayPiece};
use crate::error::{Error, Result};
use crate::quadfield::{PrimeEnumerator, PrimeIdeal, PrimeKind};

/// A field already built: the seed field or the `i`-th ray piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieceRef {
    L0,
    Ray(usize),
}

/// A condition on a candidate conductor `eps`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    InS,
    /// `eps` splits completely in an existing piece.
    SplitsCompletelyIn(PieceRef),
    /// The given prime splits completely in `L^eps`.
    SplitsInCandidate(PrimeIdeal),
    /// The Frobenius of `target` in `L^eps` has exactly this order.
    FrobeniusOrderExactly {
        target: PrimeIdeal,
        order: u64,
    },
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Condition::InS => write!(f, "eps in S"),
            Condition::SplitsCompletelyIn(PieceRef::L0) => write!(f, "eps splits in L_0"),
            Condition::SplitsCompletelyIn(PieceRef::Ray(i)) => write!(f, "eps splits in piece {}", i + 1),
            Condition::SplitsInCandidate(p) => write!(f, "{p} splits in L^eps"),
            Condition::FrobeniusOrderExactly { target, order } => {
                write!(f, "Frob({target}) has order {order} in L^eps")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub piece: RayPiece,
    /// Rational primes enumerated before the hit.
    pub examined: u64,
}

fn describe(conditions: &[Condition]) -> String {
    conditions.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("; ")
}

/// First prime `eps` in ascending norm order (ties by `b`) that is in `S`,
/// prime to `2 ell D`, not a class group generator, not in `avoid`, and
/// satisfies every condition. At most `cap` rational primes are enumerated.
pub fn search_prime(
    ctx: &Context,
    l0: &CyclotomicPiece,
    pieces: &[RayPiece],
    conditions: &[Condition],
    avoid: &[PrimeIdeal],
    cap: u64,
) -> Result<SearchOutcome> {
    // data of the primes tested in the candidate piece do not depend on eps
    let mut data: HashMap<PrimeIdeal, RayDatum> = HashMap::new();
    for c in conditions {
        match c {
            Condition::SplitsInCandidate(p) | Condition::FrobeniusOrderExactly { target: p, .. } => {
                if !data.contains_key(p) {
                    data.insert(*p, ray_datum(ctx, p)?);
                }
            }
            Condition::SplitsCompletelyIn(PieceRef::Ray(i)) if *i >= pieces.len() => {
                return Err(Error::InvalidInput(format!("no piece {}", i + 1)));
            }
            _ => {}
        }
    }
    let level_modulus = ctx.ell.pow(ctx.level());
    let mut primes = PrimeEnumerator::new(ctx.field);
    loop {
        let eps = primes.next().expect("infinitely many primes");
        if primes.rational_primes_consumed() > cap {
            return Err(Error::SearchExhausted { examined: cap, cap, conditions: describe(conditions) });
        }
        if matches!(eps.kind, PrimeKind::Ramified { .. })
            || ctx.divides_2_ell_d(&eps)
            || ctx.is_class_generator(&eps)
            || avoid.contains(&eps)
            || !(eps.norm() - 1).is_multiple_of(level_modulus)
        {
            continue;
        }
        let mut piece = None;
        if evaluate(ctx, l0, pieces, conditions, &data, &eps, &mut piece)?.is_none() {
            let piece = match piece {
                Some(p) => p,
                None => RayPiece::new(ctx, &eps)?,
            };
            return Ok(SearchOutcome { piece, examined: primes.rational_primes_consumed() });
        }
    }
}

/// Index of the first condition `eps` fails; `InS` failures (including
/// inadmissible primes) are reported as `Some(None)`.
fn evaluate(
    ctx: &Context,
    l0: &CyclotomicPiece,
    pieces: &[RayPiece],
    conditions: &[Condition],
    data: &HashMap<PrimeIdeal, RayDatum>,
    eps: &PrimeIdeal,
    piece: &mut Option<RayPiece>,
) -> Result<Option<Option<usize>>> {
    if !in_s(ctx, eps)? {
        return Ok(Some(None));
    }
    for (idx, c) in conditions.iter().enumerate() {
        let ok = match c {
            Condition::InS => true,
            Condition::SplitsCompletelyIn(PieceRef::L0) => frobenius_order_in_l0(l0, eps) == L0Frobenius::Unramified(1),
            Condition::SplitsCompletelyIn(PieceRef::Ray(i)) => {
                let other = pieces.get(*i).ok_or_else(|| Error::InvalidInput(format!("no piece {}", i + 1)))?;
                frobenius_order_in_ray_piece(ctx, other, eps)? == 1
            }
            Condition::SplitsInCandidate(p) | Condition::FrobeniusOrderExactly { target: p, .. } => {
                let want = match c {
                    Condition::FrobeniusOrderExactly { order, .. } => *order,
                    _ => 1,
                };
                if p == eps {
                    false
                } else {
                    if piece.is_none() {
                        *piece = Some(RayPiece::new(ctx, eps)?);
                    }
                    let datum = match data.get(p) {
                        Some(d) => d.clone(),
                        None => ray_datum(ctx, p)?,
                    };
                    frobenius_order_from(ctx, piece.as_ref().unwrap(), &datum, 0)? == want
                }
            }
        };
        if !ok {
            return Ok(Some(Some(idx)));
        }
    }
    Ok(None)
}

/// The first condition a given conductor fails, or `None` if it passes all
/// of them. Inadmissible primes fail `InS`.
pub fn failing_condition(
    ctx: &Context,
    l0: &CyclotomicPiece,
    pieces: &[RayPiece],
    conditions: &[Condition],
    eps: &PrimeIdeal,
) -> Result<Option<Condition>> {
    if matches!(eps.kind, PrimeKind::Ramified { .. }) || ctx.divides_2_ell_d(eps) || ctx.is_class_generator(eps) {
        return Ok(Some(Condition::InS));
    }
    let mut piece = None;
    Ok(match evaluate(ctx, l0, pieces, conditions, &HashMap::new(), eps, &mut piece)? {
        None => None,
        Some(None) => Some(Condition::InS),
        Some(Some(i)) => Some(conditions[i].clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::super::cyclotomic::build_l0;
    use super::*;
    use crate::quadfield::BaseField;

    #[test]
    fn rational_searches() {
        let ctx = Context::new(BaseField::Rational, 2, 1).unwrap();
        let l0 = build_l0(2, 1).unwrap();
        let three = PrimeIdeal::rational(3);
        let conds = [
            Condition::InS,
            Condition::SplitsCompletelyIn(PieceRef::L0),
            Condition::FrobeniusOrderExactly { target: three, order: 2 },
        ];
        let out = search_prime(&ctx, &l0, &[], &conds, &[three], 1000).unwrap();
        assert_eq!(out.piece.conductor, PrimeIdeal::rational(17));

        let ctx = Context::new(BaseField::Rational, 3, 1).unwrap();
        let l0 = build_l0(3, 1).unwrap();
        let out = search_prime(&ctx, &l0, &[], &[Condition::InS], &[], 1000).unwrap();
        assert_eq!(out.piece.conductor, PrimeIdeal::rational(7));
    }

    #[test]
    fn contradictory_conditions_exhaust() {
        let ctx = Context::new(BaseField::Rational, 2, 1).unwrap();
        let l0 = build_l0(2, 1).unwrap();
        let three = PrimeIdeal::rational(3);
        let conds = [Condition::SplitsInCandidate(three), Condition::FrobeniusOrderExactly { target: three, order: 2 }];
        match search_prime(&ctx, &l0, &[], &conds, &[three], 200) {
            Err(Error::SearchExhausted { cap, conditions, .. }) => {
                assert_eq!(cap, 200);
                assert!(conditions.contains("order 2"));
            }
            other => panic!("expected exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn imaginary_quadratic_search_respects_conditions() {
        let k = BaseField::imaginary_quadratic(-23).unwrap();
        let ctx = Context::new(k, 3, 1).unwrap();
        let l0 = build_l0(3, 1).unwrap();
        let target = crate::quadfield::factor_rational_prime(&k, 5)[0];
        let conds = [
            Condition::InS,
            Condition::SplitsCompletelyIn(PieceRef::L0),
            Condition::FrobeniusOrderExactly { target, order: 3 },
        ];
        let out = search_prime(&ctx, &l0, &[], &conds, &[target], 100_000).unwrap();
        let eps = out.piece.conductor;
        assert!(in_s(&ctx, &eps).unwrap());
        assert_eq!(frobenius_order_in_l0(&l0, &eps), L0Frobenius::Unramified(1));
        assert_eq!(frobenius_order_in_ray_piece(&ctx, &out.piece, &target).unwrap(), 3);
    }
}
