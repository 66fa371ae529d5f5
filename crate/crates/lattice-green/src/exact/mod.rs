//! Exact arithmetic substrate: arbitrary-precision rationals, the graded ring
//! `Q[sqrt(d)] + (1/pi) Q[sqrt(d)]` with `d` in {2, 3}, its complex extension,
//! polynomials in `1/pi`, and truncated formal Laurent series.

mod expr;
mod pipoly;
pub(crate) mod ring;
mod series;

pub use expr::parse_expr;
pub use pipoly::PiPoly;
pub use ring::{decimal_string, ComplexElem, Quad, Radicand, RingElem};
pub use series::Series;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Errors raised by exact-arithmetic operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    /// A product would carry a 1/pi^2 term, which the ring does not represent.
    #[error("multiplication would create a 1/pi^2 term")]
    PiOverflow,
    /// Division is only defined by pi-free nonzero elements.
    #[error("divisor has a pi part")]
    DivisorNotSupported,
    #[error("division by zero")]
    DivideByZero,
    /// Binary operation on elements tagged with different radicands.
    #[error("mixed radicands {0} and {1}")]
    RadicandMismatch(u32, u32),
    /// Square root of a series whose constant term has no representable root.
    #[error("constant term has no square root in the coefficient ring")]
    BadConstantTerm,
    /// A series coefficient at or beyond the truncation order was requested.
    #[error("coefficient at exponent {0} is beyond truncation order {1}")]
    TruncationExceeded(i64, i64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type ExactResult<T> = Result<T, ExactError>;

#[cfg(test)]
mod tests {
    use super::ring::Quad;
    use super::*;
    use num_traits::{One, Zero};
    use std::ops::Neg;

    fn q2(s: &str) -> RingElem {
        parse_expr(s, 2).unwrap()
    }

    #[test]
    fn conjugate_product_is_one() {
        let x = q2("sqrt(2) - 1");
        let y = q2("sqrt(2) + 1");
        assert_eq!(x.mul(&y).unwrap(), RingElem::one(2));
    }

    #[test]
    fn degree_probabilities_sum() {
        let x = q2("3/2 - sqrt(2)");
        let y = q2("sqrt(2) - 1");
        assert_eq!(x.add(&y).unwrap(), q2("1/2"));
    }

    #[test]
    fn pi_squared_overflows() {
        let inv_pi = RingElem::new(2, rat_i(0), rat_i(0), rat_i(1), rat_i(0));
        assert_eq!(inv_pi.mul(&inv_pi), Err(ExactError::PiOverflow));
    }

    #[test]
    fn division_rules() {
        let x = q2("1 + sqrt(2)");
        let y = q2("sqrt(2)");
        assert_eq!(x.div(&y).unwrap(), q2("1/2*sqrt(2) + 1"));
        let pi_part = RingElem::new(2, rat_i(0), rat_i(0), rat_i(1), rat_i(0));
        assert_eq!(x.div(&pi_part), Err(ExactError::DivisorNotSupported));
        assert_eq!(x.div(&RingElem::zero(2)), Err(ExactError::DivideByZero));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(q2("sqrt(2) - 1").to_decimal(6), "0.414214");
        assert_eq!(q2("4/pi - 1").to_decimal(6), "0.273240");
        assert_eq!(RingElem::zero(2).to_decimal(6), "0.000000");
        assert_eq!(q2("-3/2").to_decimal(2), "-1.50");
    }

    #[test]
    fn render_and_parse_round_trip() {
        let samples = [
            q2("0"),
            q2("-37/2 + 53/4*sqrt(2)"),
            q2("2/pi - 1/4"),
            q2("17/4 - 12/pi"),
            RingElem::new(2, rat(1, 3), rat(-2, 7), rat(5, 1), rat(-1, 2)),
        ];
        for x in samples {
            let rendered = x.render();
            assert_eq!(parse_expr(&rendered, x.rad).unwrap(), x, "render `{rendered}`");
            let json = x.to_json();
            assert_eq!(RingElem::from_json(&json).unwrap(), x);
        }
    }

    #[test]
    fn sqrt_inv_of_one_minus_z2() {
        let base = Series::from_rationals(2, &[rat_i(1), rat_i(0), rat_i(-1)], 8);
        let s = base.sqrt_inv(8).unwrap();
        assert_eq!(s.coeff(0).unwrap(), RingElem::one(2));
        assert_eq!(s.coeff(2).unwrap(), RingElem::from_frac(2, 1, 2));
        assert_eq!(s.coeff(4).unwrap(), RingElem::from_frac(2, 3, 8));
        assert_eq!(s.coeff(1).unwrap(), RingElem::zero(2));
        // squared times base is 1 in every known coefficient
        let check = s.mul(&s).unwrap().mul(&base).unwrap();
        assert_eq!(check.coeff(0).unwrap(), RingElem::one(2));
        for k in 1..check.trunc {
            assert!(check.coeff(k).unwrap().is_zero(), "coefficient {k}");
        }
    }

    #[test]
    fn sqrt_inv_trivial_base() {
        let base = Series::from_rationals(2, &[rat_i(1)], 10);
        let s = base.sqrt_inv(10).unwrap();
        assert_eq!(s.coeff(0).unwrap(), RingElem::one(2));
        for k in 1..10 {
            assert!(s.coeff(k).unwrap().is_zero());
        }
    }

    #[test]
    fn sqrt_inv_with_algebraic_coefficients() {
        // base = (1-u)(1-a^2 u) with a = 2 - sqrt(3)
        let a2 = parse_expr("7 - 4*sqrt(3)", 3).unwrap();
        let one = RingElem::one(3);
        let lin1 = Series::new(3, 0, vec![one.clone(), RingElem::from_int(3, -1)], 6);
        let lin2 = Series::new(3, 0, vec![one.clone(), a2.clone().neg()], 6);
        let base = lin1.mul(&lin2).unwrap();
        let s = base.sqrt_inv(3).unwrap();
        // Independent oracle: multiply the two binomial expansions directly.
        let binom = |c: &RingElem, n: i64| -> Series {
            // (1 - c u)^(-1/2) = sum binom(-1/2,k) (-c)^k u^k
            let mut coeffs = vec![RingElem::one(3)];
            let mut b = Rat::one();
            let mut cpow = RingElem::one(3);
            for k in 1..n {
                b = b * (rat_i(-1) / rat_i(2) - rat_i(k - 1)) / rat_i(k);
                cpow = cpow.mul(&c.clone().neg()).unwrap();
                coeffs.push(cpow.scale(&b));
            }
            Series::new(3, 0, coeffs, n)
        };
        let oracle = binom(&RingElem::one(3), 3).mul(&binom(&a2, 3)).unwrap();
        for k in 0..3 {
            assert_eq!(s.coeff(k).unwrap(), oracle.coeff(k).unwrap(), "order {k}");
        }
    }

    #[test]
    fn series_product_and_truncation() {
        let a = Series::from_rationals(2, &[rat_i(1), rat_i(1)], 6);
        let b = Series::from_rationals(2, &[rat_i(1), rat_i(-1)], 6);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.coeff(0).unwrap(), RingElem::one(2));
        assert!(p.coeff(1).unwrap().is_zero());
        assert_eq!(p.coeff(2).unwrap(), RingElem::from_int(2, -1));
        assert!(matches!(p.coeff(99), Err(ExactError::TruncationExceeded(99, _))));
    }

    #[test]
    fn termwise_integration() {
        // 1/(1-u^2) then integrate: u + u^3/3 + u^5/5 + ...
        let denom = Series::from_rationals(2, &[rat_i(1), rat_i(0), rat_i(-1)], 9);
        let num = Series::from_rationals(2, &[rat_i(1)], 9);
        let f = num.div(&denom).unwrap();
        let int = f.integrate().unwrap();
        assert_eq!(int.coeff(1).unwrap(), RingElem::one(2));
        assert_eq!(int.coeff(3).unwrap(), RingElem::from_frac(2, 1, 3));
        assert_eq!(int.coeff(5).unwrap(), RingElem::from_frac(2, 1, 5));
        assert!(int.coeff(2).unwrap().is_zero());
    }

    #[test]
    fn composition_requires_positive_valuation() {
        // f(x) = 1/(1-x), g(u) = u^2: f(g) = 1 + u^2 + u^4 + ...
        let f = {
            let denom = Series::from_rationals(2, &[rat_i(1), rat_i(-1)], 5);
            Series::from_rationals(2, &[rat_i(1)], 5).div(&denom).unwrap()
        };
        let g = Series::monomial(2, RingElem::one(2), 2, 5);
        let h = f.compose(&g).unwrap();
        assert_eq!(h.coeff(0).unwrap(), RingElem::one(2));
        assert!(h.coeff(1).unwrap().is_zero());
        assert_eq!(h.coeff(2).unwrap(), RingElem::one(2));
        assert_eq!(h.coeff(4).unwrap(), RingElem::one(2));
    }

    #[test]
    fn pipoly_holds_higher_pi_powers() {
        let x = PiPoly::from_ring(&q2("1/2 - 1/pi"));
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq.pi_degree(), 2);
        assert_eq!(sq.coeffs[2], Quad::from_rat(rat_i(1)));
        assert!((sq.to_f64() - (0.5 - 1.0 / std::f64::consts::PI).powi(2)).abs() < 1e-12);
        assert!(sq.to_ring().is_err());
    }

    #[test]
    fn mixed_radicand_rejected_unless_rational() {
        let a = parse_expr("sqrt(2)", 2).unwrap();
        let b = parse_expr("sqrt(3)", 3).unwrap();
        assert!(matches!(a.mul(&b), Err(ExactError::RadicandMismatch(2, 3))));
        let r = parse_expr("5/3", 3).unwrap();
        assert_eq!(a.mul(&r).unwrap(), q2("5/3*sqrt(2)"));
    }

    #[test]
    fn randomized_float_consistency() {
        // Product of floats agrees with float of exact product.
        let mut state = 0x243f6a8885a308d3u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..1000 {
            let mut r = || rat_i((next() % 41) as i64 - 20) / rat_i((next() % 9) as i64 + 1);
            let x = RingElem::new(2, r(), r(), r(), r());
            let y = RingElem::new(2, r(), r(), Rat::zero(), Rat::zero());
            let p = x.mul(&y).unwrap();
            assert!((p.to_f64() - x.to_f64() * y.to_f64()).abs() < 1e-9);
            // Canonicalization: x - x = 0 exactly.
            assert!(x.sub(&x).unwrap().is_zero());
        }
    }

    #[test]
    fn grading_of_products() {
        let deg = |x: &RingElem| if x.is_pi_free() { 0 } else { 1 };
        let xs = [q2("1/2"), q2("sqrt(2) - 1"), q2("2/pi"), q2("1/4 + 2/pi + 1/2*sqrt(2)/pi")];
        for x in &xs {
            for y in &xs {
                match x.mul(y) {
                    Ok(p) => {
                        if !p.is_zero() {
                            assert!(deg(&p) <= deg(x) + deg(y));
                        }
                        assert!(deg(x) + deg(y) <= 1 || p.is_zero() || deg(&p) == 1);
                    }
                    Err(ExactError::PiOverflow) => {
                        assert_eq!(deg(x) + deg(y), 2);
                    }
                    Err(e) => panic!("unexpected {e:?}"),
                }
            }
        }
    }
}
