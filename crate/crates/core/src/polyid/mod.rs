//! Exact polynomial identities behind the scalar-level conditions.
//!
//! The complex-norm identity
//! `(ab - a'b')² + (ab' + a'b)² = (a² + a'²)(b² + b'²)` and the Ramanujan
//! family
//! `(ab + ab' + a'b)ⁿ + (ab' + a'b + a'b')ⁿ + (ab - a'b')ⁿ =
//!  (a'b + a'b' + ab)ⁿ + (a'b' + ab + ab')ⁿ + (ab' - a'b)ⁿ`
//! are checked by full expansion over the rationals, and independently by
//! evaluation at seeded random rational points.

mod expr;
mod poly;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use expr::{parse, Expr, Var};
pub use poly::{equal, Exponents, Polynomial};

use crate::error::{Error, Result};

/// Random points used by the numeric cross-check.
pub const CROSS_CHECK_POINTS: usize = 20;
const CROSS_CHECK_SEED: u64 = 0x5eed_0f1d;

pub fn expand(e: &Expr) -> Polynomial {
    Polynomial::expand(e)
}

/// Evaluates an expression tree directly (no expansion).
pub fn eval_expr(e: &Expr, point: &[BigRational; 4]) -> BigRational {
    match e {
        Expr::Var(v) => point[v.index()].clone(),
        Expr::Int(n) => BigRational::from_integer(n.clone()),
        Expr::Neg(x) => -eval_expr(x, point),
        Expr::Add(l, r) => eval_expr(l, point) + eval_expr(r, point),
        Expr::Sub(l, r) => eval_expr(l, point) - eval_expr(r, point),
        Expr::Mul(l, r) => eval_expr(l, point) * eval_expr(r, point),
        Expr::Pow(b, k) => num_traits::pow(eval_expr(b, point), *k as usize),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    ComplexNorm,
    Ramanujan,
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complex_norm" => Ok(Identity::ComplexNorm),
            "ramanujan" => Ok(Identity::Ramanujan),
            other => Err(Error::UnknownIdentity(other.to_string())),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::ComplexNorm => "complex_norm",
            Identity::Ramanujan => "ramanujan",
        })
    }
}

/// The two sides of a named identity. `n` is ignored by `complex_norm`
/// and must be at least 1 for `ramanujan`.
pub fn builtin_identity(identity: Identity, n: u32) -> Result<(Expr, Expr)> {
    let (lhs, rhs) = match identity {
        Identity::ComplexNorm => (
            "(a*b - a'*b')^2 + (a*b' + a'*b)^2".to_string(),
            "(a^2 + a'^2)*(b^2 + b'^2)".to_string(),
        ),
        Identity::Ramanujan => {
            if n == 0 {
                return Err(Error::InvalidParameter(
                    "Ramanujan exponent must be >= 1".into(),
                ));
            }
            (
                format!("(a*b + a*b' + a'*b)^{n} + (a*b' + a'*b + a'*b')^{n} + (a*b - a'*b')^{n}"),
                format!("(a'*b + a'*b' + a*b)^{n} + (a'*b' + a*b + a*b')^{n} + (a*b' - a'*b)^{n}"),
            )
        }
    };
    Ok((parse(&lhs)?, parse(&rhs)?))
}

/// Outcome of checking one identity.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub valid: bool,
    /// `expand(lhs) - expand(rhs)`.
    pub difference: Polynomial,
    /// How many random points gave equal values on both sides.
    pub numeric_agreements: usize,
    pub numeric_samples: usize,
}

/// Symbolic comparison plus a numeric cross-check at random rational
/// points; errors if the two routes disagree.
pub fn check_expressions(label: &str, lhs: &Expr, rhs: &Expr) -> Result<IdentityCheck> {
    let difference = &expand(lhs) - &expand(rhs);
    let valid = difference.is_zero();
    let mut rng = ChaCha8Rng::seed_from_u64(CROSS_CHECK_SEED);
    let agreements = (0..CROSS_CHECK_POINTS)
        .filter(|_| {
            let point = random_point(&mut rng);
            eval_expr(lhs, &point) == eval_expr(rhs, &point)
        })
        .count();
    let consistent = if valid {
        agreements == CROSS_CHECK_POINTS
    } else {
        agreements < CROSS_CHECK_POINTS
    };
    if !consistent {
        return Err(Error::CrossCheckFailed(label.to_string()));
    }
    Ok(IdentityCheck {
        valid,
        difference,
        numeric_agreements: agreements,
        numeric_samples: CROSS_CHECK_POINTS,
    })
}

fn random_point(rng: &mut impl Rng) -> [BigRational; 4] {
    std::array::from_fn(|_| {
        let num: i64 = rng.gen_range(-97..=97);
        let den: i64 = rng.gen_range(1..=89);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    })
}

pub fn verify_report(identity: Identity, n: u32) -> Result<IdentityCheck> {
    let (lhs, rhs) = builtin_identity(identity, n)?;
    check_expressions(&format!("{identity}(n={n})"), &lhs, &rhs)
}

pub fn verify(identity: Identity, n: u32) -> Result<bool> {
    Ok(verify_report(identity, n)?.valid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_verdicts() {
        assert!(verify(Identity::ComplexNorm, 0).unwrap());
        assert!(verify(Identity::ComplexNorm, 7).unwrap());
        assert!(verify(Identity::Ramanujan, 2).unwrap());
        assert!(verify(Identity::Ramanujan, 4).unwrap());
        assert!(!verify(Identity::Ramanujan, 1).unwrap());
        assert!(!verify(Identity::Ramanujan, 3).unwrap());
        assert!(verify(Identity::Ramanujan, 0).is_err());
    }

    #[test]
    fn ramanujan_linear_defect() {
        let check = verify_report(Identity::Ramanujan, 1).unwrap();
        // 2a'b - 2a'b'
        let two = BigRational::from_integer(2.into());
        let expected = &Polynomial::monomial([0, 1, 1, 0], two.clone())
            - &Polynomial::monomial([0, 1, 0, 1], two);
        assert_eq!(check.difference, expected);
        assert!(check.numeric_agreements < check.numeric_samples);
    }

    #[test]
    fn ramanujan_fourth_power_first_term_parses() {
        let (lhs, _) = builtin_identity(Identity::Ramanujan, 4).unwrap();
        let first = parse("(a*b + a*b' + a'*b)^4").unwrap();
        match lhs {
            Expr::Add(l, _) => match *l {
                Expr::Add(ll, _) => assert_eq!(*ll, first),
                other => panic!("unexpected shape {other:?}"),
            },
            other => panic!("unexpected shape {other:?}"),
        }
    }

    #[test]
    fn identity_names() {
        assert_eq!(
            "ramanujan".parse::<Identity>().unwrap(),
            Identity::Ramanujan
        );
        assert_eq!(
            "complex_norm".parse::<Identity>().unwrap(),
            Identity::ComplexNorm
        );
        assert!(matches!(
            "euler".parse::<Identity>(),
            Err(Error::UnknownIdentity(_))
        ));
    }

    #[test]
    fn builtin_corpus_round_trips_through_display() {
        for (id, n) in [
            (Identity::ComplexNorm, 0),
            (Identity::Ramanujan, 2),
            (Identity::Ramanujan, 4),
        ] {
            let (l, r) = builtin_identity(id, n).unwrap();
            assert_eq!(parse(&l.to_string()).unwrap(), l);
            assert_eq!(parse(&r.to_string()).unwrap(), r);
        }
    }
}
