use super::ring::{Radicand, RingElem};
use super::{rat_i, ExactError, ExactResult, Rat};
use num_traits::{One, Signed, Zero};
use std::ops::Neg;

/// Truncated formal Laurent series with `RingElem` coefficients.
///
/// Coefficients are known for exponents in `[min_exp, trunc)`. Exponents at or
/// beyond `trunc` are unknown, not zero; reading one is an error. Operations
/// propagate the tightest truncation implied by their inputs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    pub rad: Radicand,
    pub min_exp: i64,
    /// coeffs[k] is the coefficient of x^(min_exp + k).
    pub coeffs: Vec<RingElem>,
    /// Exponents >= trunc are unknown.
    pub trunc: i64,
}

impl Series {
    pub fn new(rad: Radicand, min_exp: i64, coeffs: Vec<RingElem>, trunc: i64) -> Self {
        assert!(min_exp + coeffs.len() as i64 <= trunc, "coefficients beyond truncation");
        let mut s = Series { rad, min_exp, coeffs, trunc };
        s.normalize();
        s
    }

    /// Zero series known up to (not including) `trunc`.
    pub fn zero(rad: Radicand, trunc: i64) -> Self {
        Series { rad, min_exp: 0, coeffs: vec![], trunc }
    }

    pub fn constant(rad: Radicand, c: RingElem, trunc: i64) -> Self {
        Series::new(rad, 0, vec![c], trunc)
    }

    /// The monomial `c * x^k`.
    pub fn monomial(rad: Radicand, c: RingElem, k: i64, trunc: i64) -> Self {
        Series::new(rad, k, vec![c], trunc)
    }

    /// Polynomial from rational coefficients for exponents 0..len.
    pub fn from_rationals(rad: Radicand, coeffs: &[Rat], trunc: i64) -> Self {
        Series::new(
            rad,
            0,
            coeffs.iter().map(|r| RingElem::from_rat(rad, r.clone())).collect(),
            trunc,
        )
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.first(), Some(c) if c.is_zero()) {
            self.coeffs.remove(0);
            self.min_exp += 1;
        }
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    /// Read a coefficient; exponents below min_exp are genuinely zero, at or
    /// beyond the truncation order they are unknown.
    pub fn coeff(&self, k: i64) -> ExactResult<RingElem> {
        if k >= self.trunc {
            return Err(ExactError::TruncationExceeded(k, self.trunc));
        }
        let idx = k - self.min_exp;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Ok(RingElem::zero(self.rad))
        } else {
            Ok(self.coeffs[idx as usize].clone())
        }
    }

    pub fn truncate(&self, trunc: i64) -> Series {
        let keep = (trunc - self.min_exp).max(0).min(self.coeffs.len() as i64) as usize;
        Series::new(self.rad, self.min_exp, self.coeffs[..keep].to_vec(), trunc.min(self.trunc))
    }

    pub fn add(&self, o: &Series) -> ExactResult<Series> {
        let trunc = self.trunc.min(o.trunc);
        let min_exp = self.min_exp.min(o.min_exp);
        let hi = trunc;
        let mut coeffs = Vec::new();
        for k in min_exp..hi {
            let a = self.truncate(trunc).coeff(k)?;
            let b = o.truncate(trunc).coeff(k)?;
            coeffs.push(a.add(&b)?);
        }
        Ok(Series::new(self.rad, min_exp, coeffs, trunc))
    }

    pub fn neg(&self) -> Series {
        Series {
            rad: self.rad,
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| c.clone().neg()).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub(&self, o: &Series) -> ExactResult<Series> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Series) -> ExactResult<Series> {
        // Known window of the product: a coefficient at exponent k is known when
        // every split k = i + j with i >= self.min_exp, j >= o.min_exp has both
        // factors known, i.e. k < min(self.trunc + o.min_exp, o.trunc + self.min_exp).
        let trunc = (self.trunc + o.min_exp).min(o.trunc + self.min_exp);
        let min_exp = self.min_exp + o.min_exp;
        let mut coeffs = vec![RingElem::zero(self.rad); (trunc - min_exp).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let ei = self.min_exp + i as i64;
            for (j, b) in o.coeffs.iter().enumerate() {
                let ej = o.min_exp + j as i64;
                let k = ei + ej;
                if k >= trunc {
                    break;
                }
                let idx = (k - min_exp) as usize;
                coeffs[idx] = coeffs[idx].add(&a.mul(b)?)?;
            }
        }
        Ok(Series::new(self.rad, min_exp, coeffs, trunc))
    }

    pub fn scale(&self, c: &RingElem) -> ExactResult<Series> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for x in &self.coeffs {
            coeffs.push(x.mul(c)?);
        }
        Ok(Series::new(self.rad, self.min_exp, coeffs, self.trunc))
    }

    /// Multiply by x^k.
    pub fn shift(&self, k: i64) -> Series {
        Series {
            rad: self.rad,
            min_exp: self.min_exp + k,
            coeffs: self.coeffs.clone(),
            trunc: self.trunc + k,
        }
    }

    /// Divide by a series whose lowest-order coefficient is invertible
    /// (pi-free with nonzero norm).
    pub fn div(&self, o: &Series) -> ExactResult<Series> {
        let lead = o.coeffs.first().cloned().ok_or(ExactError::DivideByZero)?;
        if !lead.is_pi_free() {
            return Err(ExactError::DivisorNotSupported);
        }
        // Reduce to division by a unit power series (lowest exponent 0, unit constant).
        let unit = o.shift(-o.min_exp);
        let trunc = (self.trunc - o.min_exp).min(self.min_exp - o.min_exp + (unit.trunc));
        let mut inv_coeffs: Vec<RingElem> = Vec::new();
        let n = (unit.trunc).max(0);
        // Invert the unit series by the standard recurrence.
        let inv_lead = RingElem::one(self.rad).div(&lead)?;
        for k in 0..n {
            if k == 0 {
                inv_coeffs.push(inv_lead.clone());
                continue;
            }
            // sum_{j=1..k} unit[j] * inv[k-j] must cancel.
            let mut acc = RingElem::zero(self.rad);
            for j in 1..=k {
                let uj = unit.coeff(j)?;
                if uj.is_zero() {
                    continue;
                }
                acc = acc.add(&uj.mul(&inv_coeffs[(k - j) as usize])?)?;
            }
            inv_coeffs.push(acc.neg().mul(&inv_lead)?);
        }
        let inv = Series::new(self.rad, 0, inv_coeffs, n);
        let res = self.mul(&inv)?.shift(-o.min_exp);
        Ok(res.truncate(trunc))
    }

    /// Formal term-wise integral; rejects a nonzero coefficient at exponent -1.
    pub fn integrate(&self) -> ExactResult<Series> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = self.min_exp + i as i64;
            if k == -1 {
                if !c.is_zero() {
                    return Err(ExactError::Parse("integral of 1/x term is not a Laurent series".into()));
                }
                coeffs.push(RingElem::zero(self.rad));
                continue;
            }
            coeffs.push(c.scale(&(Rat::one() / rat_i(k + 1))));
        }
        Ok(Series::new(self.rad, self.min_exp + 1, coeffs, self.trunc + 1))
    }

    /// Composition self(inner); the inner series must have strictly positive
    /// lowest exponent so the composition is coefficient-finite.
    pub fn compose(&self, inner: &Series) -> ExactResult<Series> {
        assert!(self.min_exp >= 0, "composition needs a power series on the outside");
        assert!(inner.min_exp >= 1, "inner series must have zero constant term");
        let trunc = self.trunc.min(inner.trunc);
        let mut acc = Series::zero(self.rad, trunc);
        let mut power = Series::constant(self.rad, RingElem::one(self.rad), trunc);
        for k in 0..self.trunc {
            if k >= trunc {
                break;
            }
            let idx = k - self.min_exp;
            if idx >= 0 && (idx as usize) < self.coeffs.len() {
                let c = &self.coeffs[idx as usize];
                if !c.is_zero() {
                    acc = acc.add(&power.scale(c)?)?;
                }
            }
            if (k + 1) * inner.min_exp >= trunc {
                break;
            }
            power = power.mul(inner)?.truncate(trunc);
        }
        Ok(acc)
    }

    /// 1/sqrt(base): the constant term must have a representable square root.
    pub fn sqrt_inv(&self, n: i64) -> ExactResult<Series> {
        assert!(self.min_exp >= 0, "sqrt of a Laurent series is not supported");
        let c0 = self.coeff(0)?;
        if c0.is_zero() || !c0.is_pi_free() {
            return Err(ExactError::BadConstantTerm);
        }
        let s0 = c0.q0.sqrt(self.rad).ok_or(ExactError::BadConstantTerm)?;
        let s0 = RingElem { rad: self.rad, q0: s0, q1: super::ring::Quad::zero() };
        let trunc = n.min(self.trunc);
        // base = c0 (1 + u) with u of positive valuation; (1+u)^(-1/2) by binomial series.
        let u = self.truncate(trunc).scale(&RingElem::one(self.rad).div(&c0)?)?.sub(&Series::constant(
            self.rad,
            RingElem::one(self.rad),
            trunc,
        ))?;
        if !u.coeffs.is_empty() {
            assert!(u.min_exp >= 1);
        }
        let mut acc = Series::constant(self.rad, RingElem::one(self.rad), trunc);
        let mut power = Series::constant(self.rad, RingElem::one(self.rad), trunc);
        let mut binom = Rat::one();
        for k in 1..trunc.max(1) {
            if u.coeffs.is_empty() || k * u.min_exp >= trunc {
                break;
            }
            // binom(-1/2, k) = binom(-1/2, k-1) * (-1/2 - (k-1)) / k
            binom = binom * (rat_i(-1) / rat_i(2) - rat_i(k - 1)) / rat_i(k);
            power = power.mul(&u)?.truncate(trunc);
            acc = acc.add(&power.scale(&RingElem::from_rat(self.rad, binom.clone()))?)?;
        }
        // acc = (1+u)^(-1/2); divide by sqrt(c0).
        acc.scale(&RingElem::one(self.rad).div(&s0)?)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// All known coefficients have power-of-two denominators (used by dyadicity checks).
    pub fn coeffs_dyadic(&self) -> bool {
        self.coeffs.iter().all(|c| {
            [c.comp_a(), c.comp_b(), c.comp_c(), c.comp_e()]
                .iter()
                .all(|r| is_pow2(r.denom()))
        })
    }
}

fn is_pow2(n: &num_bigint::BigInt) -> bool {
    let n = n.abs();
    if n.is_zero() {
        return false;
    }
    (&n & (&n - num_bigint::BigInt::one())).is_zero()
}
