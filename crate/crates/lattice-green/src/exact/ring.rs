use super::{rat_i, ExactError, ExactResult, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::Neg;

/// Radicand tag: which square root the quadratic part refers to.
pub type Radicand = u32;

/// Quadratic-field element `a + b*sqrt(d)`, the coefficient domain for the
/// pi-graded ring. The radicand is carried by the enclosing value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quad {
    pub a: Rat,
    pub b: Rat,
}

impl Quad {
    pub fn new(a: Rat, b: Rat) -> Self {
        Quad { a, b }
    }

    pub fn zero() -> Self {
        Quad { a: Rat::zero(), b: Rat::zero() }
    }

    pub fn one() -> Self {
        Quad { a: Rat::one(), b: Rat::zero() }
    }

    pub fn from_rat(a: Rat) -> Self {
        Quad { a, b: Rat::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn mul(&self, other: &Quad, d: Radicand) -> Quad {
        Quad {
            a: &self.a * &other.a + Rat::from_integer(BigInt::from(d)) * &self.b * &other.b,
            b: &self.a * &other.b + &self.b * &other.a,
        }
    }

    /// Field norm `a^2 - d b^2`; zero only for the zero element since d is not a square.
    pub fn norm(&self, d: Radicand) -> Rat {
        &self.a * &self.a - Rat::from_integer(BigInt::from(d)) * &self.b * &self.b
    }

    pub fn inv(&self, d: Radicand) -> ExactResult<Quad> {
        let n = self.norm(d);
        if n.is_zero() {
            return Err(ExactError::DivideByZero);
        }
        Ok(Quad { a: &self.a / &n, b: -(&self.b / &n) })
    }

    pub fn conj(&self) -> Quad {
        Quad { a: self.a.clone(), b: -self.b.clone() }
    }

    /// Rational square root of a rational quad, when one exists in `Q[sqrt(d)]`.
    pub fn sqrt(&self, d: Radicand) -> Option<Quad> {
        // Solve (x + y sqrt d)^2 = a + b sqrt d.
        if self.b.is_zero() {
            if self.a.is_negative() {
                return None;
            }
            if let Some(x) = rat_sqrt(&self.a) {
                return Some(Quad::from_rat(x));
            }
            // a = d y^2 is also possible (sqrt is y*sqrt(d)).
            let y2 = &self.a / Rat::from_integer(BigInt::from(d));
            return rat_sqrt(&y2).map(|y| Quad::new(Rat::zero(), y));
        }
        // General case: x^2 + d y^2 = a, 2xy = b. Then x^2 is a root of
        // t^2 - a t + d b^2/4 = 0.
        let disc = &self.a * &self.a - Rat::from_integer(BigInt::from(4 * d)) * (&self.b / rat_i(2)) * (&self.b / rat_i(2));
        let sd = rat_sqrt(&disc)?;
        for sign in [1i64, -1] {
            let x2 = (&self.a + rat_i(sign) * &sd) / rat_i(2);
            if x2.is_negative() {
                continue;
            }
            if let Some(x) = rat_sqrt(&x2) {
                if !x.is_zero() {
                    let y = &self.b / (rat_i(2) * &x);
                    return Some(Quad::new(x, y));
                }
            }
        }
        None
    }

    /// Accurate conversion: the two components can be astronomically large
    /// while the value is order one, so sqrt(d) is approximated as a rational
    /// to enough bits before the (exact) combination is rounded once.
    pub fn to_f64(&self, d: Radicand) -> f64 {
        if self.b.is_zero() {
            return rat_f64(&self.a);
        }
        let r = sqrt_rat_approx(d, 128 + int_bits(&self.b));
        rat_f64(&(&self.a + &self.b * r))
    }
}

/// Bits of the integer part of |r| (0 for |r| < 1).
pub(crate) fn int_bits(r: &Rat) -> u64 {
    (r.numer().bits()).saturating_sub(r.denom().bits())
}

/// Rational approximation of sqrt(d) with absolute error below 2^-bits.
pub(crate) fn sqrt_rat_approx(d: Radicand, bits: u64) -> Rat {
    let scale = BigInt::one() << bits;
    Rat::new((BigInt::from(d) * &scale * &scale).sqrt(), scale)
}

/// Rational approximation of 1/pi with absolute error below 2^-bits.
pub(crate) fn inv_pi_rat_approx(bits: u64) -> Rat {
    let digits = (bits as usize) * 2 / 5 + 8;
    let enc = pi_enclosure(digits);
    Rat::from_integer(BigInt::from(2)) / (enc.lo + enc.hi)
}

fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let (n, m) = (r.numer(), r.denom());
    let sn = n.sqrt();
    let sm = m.sqrt();
    if &(&sn * &sn) == n && &(&sm * &sm) == m {
        Some(Rat::new(sn, sm))
    } else {
        None
    }
}

/// f64 of a big ratio via aligned shifts (robust for huge numerators).
pub fn rat_f64(r: &Rat) -> f64 {
    use num_traits::Signed as _;
    if r.numer().is_zero() {
        return 0.0;
    }
    let neg = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let sn = (nb - 62).max(0) as u64;
    let sd = (db - 62).max(0) as u64;
    let nf = (&num >> sn).to_f64().unwrap_or(f64::INFINITY);
    let df = (&den >> sd).to_f64().unwrap_or(f64::INFINITY);
    let v = (nf / df) * 2f64.powi((sn as i64 - sd as i64).clamp(-1000, 1000) as i32);
    if neg {
        -v
    } else {
        v
    }
}

/// Element of `Q[sqrt(d)] + (1/pi) Q[sqrt(d)]`:
/// `a + b*sqrt(d) + c/pi + e*sqrt(d)/pi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElem {
    pub rad: Radicand,
    /// pi-degree-0 part.
    pub q0: Quad,
    /// coefficient of 1/pi.
    pub q1: Quad,
}

impl RingElem {
    pub fn new(rad: Radicand, a: Rat, b: Rat, c: Rat, e: Rat) -> Self {
        RingElem { rad, q0: Quad::new(a, b), q1: Quad::new(c, e) }
    }

    pub fn zero(rad: Radicand) -> Self {
        RingElem { rad, q0: Quad::zero(), q1: Quad::zero() }
    }

    pub fn one(rad: Radicand) -> Self {
        RingElem { rad, q0: Quad::one(), q1: Quad::zero() }
    }

    pub fn from_rat(rad: Radicand, a: Rat) -> Self {
        RingElem { rad, q0: Quad::from_rat(a), q1: Quad::zero() }
    }

    pub fn from_int(rad: Radicand, n: i64) -> Self {
        Self::from_rat(rad, rat_i(n))
    }

    /// `p/q` as an element.
    pub fn from_frac(rad: Radicand, p: i64, q: i64) -> Self {
        Self::from_rat(rad, super::rat(p, q))
    }

    /// `b * sqrt(d)`.
    pub fn sqrt_term(rad: Radicand, b: Rat) -> Self {
        RingElem { rad, q0: Quad::new(Rat::zero(), b), q1: Quad::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.q0.is_zero() && self.q1.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q0.is_rational() && self.q1.is_zero()
    }

    pub fn is_pi_free(&self) -> bool {
        self.q1.is_zero()
    }

    /// Componentwise accessors matching the documented layout.
    pub fn comp_a(&self) -> &Rat {
        &self.q0.a
    }
    pub fn comp_b(&self) -> &Rat {
        &self.q0.b
    }
    pub fn comp_c(&self) -> &Rat {
        &self.q1.a
    }
    pub fn comp_e(&self) -> &Rat {
        &self.q1.b
    }

    fn unify(&self, other: &RingElem) -> ExactResult<Radicand> {
        if self.rad == other.rad {
            Ok(self.rad)
        } else if self.is_rational() {
            Ok(other.rad)
        } else if other.is_rational() {
            Ok(self.rad)
        } else {
            Err(ExactError::RadicandMismatch(self.rad, other.rad))
        }
    }

    pub fn add(&self, other: &RingElem) -> ExactResult<RingElem> {
        let rad = self.unify(other)?;
        Ok(RingElem {
            rad,
            q0: Quad::new(&self.q0.a + &other.q0.a, &self.q0.b + &other.q0.b),
            q1: Quad::new(&self.q1.a + &other.q1.a, &self.q1.b + &other.q1.b),
        })
    }

    pub fn sub(&self, other: &RingElem) -> ExactResult<RingElem> {
        self.add(&other.clone().neg())
    }

    pub fn mul(&self, other: &RingElem) -> ExactResult<RingElem> {
        let rad = self.unify(other)?;
        if !self.q1.is_zero() && !other.q1.is_zero() {
            return Err(ExactError::PiOverflow);
        }
        Ok(RingElem {
            rad,
            q0: self.q0.mul(&other.q0, rad),
            q1: {
                let t1 = self.q0.mul(&other.q1, rad);
                let t2 = self.q1.mul(&other.q0, rad);
                Quad::new(t1.a + t2.a, t1.b + t2.b)
            },
        })
    }

    pub fn div(&self, other: &RingElem) -> ExactResult<RingElem> {
        let rad = self.unify(other)?;
        if !other.q1.is_zero() {
            return Err(ExactError::DivisorNotSupported);
        }
        if other.q0.is_zero() {
            return Err(ExactError::DivideByZero);
        }
        let inv = other.q0.inv(rad)?;
        Ok(RingElem { rad, q0: self.q0.mul(&inv, rad), q1: self.q1.mul(&inv, rad) })
    }

    pub fn scale(&self, r: &Rat) -> RingElem {
        RingElem {
            rad: self.rad,
            q0: Quad::new(&self.q0.a * r, &self.q0.b * r),
            q1: Quad::new(&self.q1.a * r, &self.q1.b * r),
        }
    }

    /// Accurate f64: every coefficient may be huge with massive cancellation
    /// against the irrational parts, so sqrt(d) and 1/pi are replaced by
    /// rational approximations of sufficient precision and the combination is
    /// evaluated exactly before a single rounding.
    pub fn to_f64(&self) -> f64 {
        let small = |r: &Rat| r.numer().bits() < 48 && r.denom().bits() < 48;
        if self.q1.is_zero() && self.q0.b.is_zero() && small(&self.q0.a) {
            return self.q0.a.to_f64().unwrap_or(f64::NAN);
        }
        let cbits = [&self.q0.b, &self.q1.a, &self.q1.b]
            .iter()
            .map(|r| int_bits(r))
            .max()
            .unwrap_or(0);
        let bits = 128 + cbits;
        let mut acc = self.q0.a.clone();
        let need_sqrt = !self.q0.b.is_zero() || !self.q1.b.is_zero();
        if need_sqrt {
            let r = sqrt_rat_approx(self.rad, bits);
            acc += &self.q0.b * &r;
            if !self.q1.is_zero() {
                let p = inv_pi_rat_approx(bits);
                acc += (&self.q1.a + &self.q1.b * &r) * p;
            }
        } else if !self.q1.is_zero() {
            let p = inv_pi_rat_approx(bits);
            acc += &self.q1.a * p;
        }
        rat_f64(&acc)
    }

    /// Correctly rounded decimal approximation with `digits` fractional digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        decimal_string(self, digits)
    }

    /// Canonical text rendering, e.g. `-37/2 + 53/4*sqrt(2)`.
    pub fn render(&self) -> String {
        let mut terms: Vec<(Rat, String)> = Vec::new();
        let sq = format!("sqrt({})", self.rad);
        if !self.q0.a.is_zero() {
            terms.push((self.q0.a.clone(), String::new()));
        }
        if !self.q0.b.is_zero() {
            terms.push((self.q0.b.clone(), sq.clone()));
        }
        if !self.q1.a.is_zero() {
            terms.push((self.q1.a.clone(), "/pi".to_string()));
        }
        if !self.q1.b.is_zero() {
            terms.push((self.q1.b.clone(), format!("{sq}/pi")));
        }
        if terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (coef, tail)) in terms.iter().enumerate() {
            let neg = coef.is_negative();
            let mag = coef.abs();
            let mag_str = if mag.is_one() && tail.starts_with("sqrt") {
                String::new()
            } else {
                format_rat(&mag)
            };
            let body = match (mag_str.is_empty(), tail.is_empty()) {
                (true, _) => tail.clone(),
                (false, true) => mag_str,
                (false, false) => {
                    if let Some(rest) = tail.strip_prefix('/') {
                        format!("{mag_str}/{rest}")
                    } else {
                        format!("{mag_str}*{tail}")
                    }
                }
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    /// JSON object mirroring the component layout.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "radicand": self.rad,
            "q": format_rat(&self.q0.a),
            "sqrt": format_rat(&self.q0.b),
            "inv_pi": format_rat(&self.q1.a),
            "sqrt_inv_pi": format_rat(&self.q1.b),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> ExactResult<RingElem> {
        let bad = || ExactError::Parse("malformed exact-value object".into());
        let rad = v.get("radicand").and_then(|r| r.as_u64()).ok_or_else(bad)? as Radicand;
        let field = |k: &str| -> ExactResult<Rat> {
            match v.get(k) {
                None => Ok(Rat::zero()),
                Some(serde_json::Value::String(s)) => parse_rat(s),
                _ => Err(bad()),
            }
        };
        Ok(RingElem::new(rad, field("q")?, field("sqrt")?, field("inv_pi")?, field("sqrt_inv_pi")?))
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem {
            rad: self.rad,
            q0: Quad::new(-self.q0.a, -self.q0.b),
            q1: Quad::new(-self.q1.a, -self.q1.b),
        }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> ExactResult<Rat> {
    let s = s.trim();
    let parse_int = |t: &str| -> ExactResult<BigInt> {
        t.trim().parse::<BigInt>().map_err(|_| ExactError::Parse(format!("bad integer `{t}`")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let denom = parse_int(q)?;
            if denom.is_zero() {
                return Err(ExactError::Parse("zero denominator".into()));
            }
            Ok(Rat::new(parse_int(p)?, denom))
        }
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Complex number with `RingElem` real and imaginary parts (same radicand).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexElem {
    pub re: RingElem,
    pub im: RingElem,
}

impl ComplexElem {
    pub fn new(re: RingElem, im: RingElem) -> Self {
        ComplexElem { re, im }
    }

    pub fn zero(rad: Radicand) -> Self {
        ComplexElem { re: RingElem::zero(rad), im: RingElem::zero(rad) }
    }

    pub fn real(re: RingElem) -> Self {
        let rad = re.rad;
        ComplexElem { re, im: RingElem::zero(rad) }
    }

    pub fn i(rad: Radicand) -> Self {
        ComplexElem { re: RingElem::zero(rad), im: RingElem::one(rad) }
    }

    pub fn from_int(rad: Radicand, re: i64, im: i64) -> Self {
        ComplexElem { re: RingElem::from_int(rad, re), im: RingElem::from_int(rad, im) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> ComplexElem {
        ComplexElem { re: self.re.clone(), im: self.im.clone().neg() }
    }

    pub fn add(&self, o: &ComplexElem) -> ExactResult<ComplexElem> {
        Ok(ComplexElem { re: self.re.add(&o.re)?, im: self.im.add(&o.im)? })
    }

    pub fn sub(&self, o: &ComplexElem) -> ExactResult<ComplexElem> {
        Ok(ComplexElem { re: self.re.sub(&o.re)?, im: self.im.sub(&o.im)? })
    }

    pub fn mul(&self, o: &ComplexElem) -> ExactResult<ComplexElem> {
        Ok(ComplexElem {
            re: self.re.mul(&o.re)?.sub(&self.im.mul(&o.im)?)?,
            im: self.re.mul(&o.im)?.add(&self.im.mul(&o.re)?)?,
        })
    }

    pub fn div(&self, o: &ComplexElem) -> ExactResult<ComplexElem> {
        // Divide by the norm, which must be pi-free and nonzero.
        let n = o.re.mul(&o.re)?.add(&o.im.mul(&o.im)?)?;
        if !n.is_pi_free() {
            return Err(ExactError::DivisorNotSupported);
        }
        let num = self.mul(&o.conj())?;
        Ok(ComplexElem { re: num.re.div(&n)?, im: num.im.div(&n)? })
    }

    pub fn neg(&self) -> ComplexElem {
        ComplexElem { re: self.re.clone().neg(), im: self.im.clone().neg() }
    }

    pub fn scale_i(&self) -> ComplexElem {
        // Multiply by i.
        ComplexElem { re: self.im.clone().neg(), im: self.re.clone() }
    }
}

impl fmt::Display for ComplexElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "({})*i", self.im)
        } else {
            write!(f, "({}) + ({})*i", self.re, self.im)
        }
    }
}

// ----- certified decimal rendering -------------------------------------------------

/// Rational enclosure [lo, hi] of an irrational constant.
struct Enclosure {
    lo: Rat,
    hi: Rat,
}

fn sqrt_enclosure(d: Radicand, decimal_digits: usize) -> Enclosure {
    let scale = BigInt::from(10).pow(decimal_digits as u32);
    let s = (BigInt::from(d) * &scale * &scale).sqrt();
    Enclosure {
        lo: Rat::new(s.clone(), scale.clone()),
        hi: Rat::new(s + BigInt::one(), scale),
    }
}

/// Machin-formula enclosure of pi: pi = 16 atan(1/5) - 4 atan(1/239).
fn pi_enclosure(decimal_digits: usize) -> Enclosure {
    let terms = decimal_digits + 4;
    // atan(1/x) = sum (-1)^k / ((2k+1) x^(2k+1)); alternating, so truncation
    // error is bounded by the first omitted term.
    let atan_bounds = |x: i64| -> Enclosure {
        let mut sum = Rat::zero();
        let xr = rat_i(x);
        let mut xpow = xr.clone(); // x^(2k+1)
        let mut k = 0usize;
        loop {
            let term = Rat::one() / (rat_i(2 * k as i64 + 1) * &xpow);
            if k % 2 == 0 {
                sum += &term;
            } else {
                sum -= &term;
            }
            // Stop once the next term is comfortably below the target precision.
            let next = Rat::one() / (rat_i(2 * k as i64 + 3) * &xpow * &xr * &xr);
            if k > terms || next < Rat::new(BigInt::one(), BigInt::from(10).pow(decimal_digits as u32 + 4)) {
                // Last added term had sign (-1)^k; the remainder has sign (-1)^(k+1).
                return if k % 2 == 0 {
                    Enclosure { lo: &sum - &next, hi: sum }
                } else {
                    Enclosure { lo: sum.clone(), hi: sum + next }
                };
            }
            xpow = xpow * &xr * &xr;
            k += 1;
        }
    };
    let a5 = atan_bounds(5);
    let a239 = atan_bounds(239);
    Enclosure {
        lo: rat_i(16) * &a5.lo - rat_i(4) * &a239.hi,
        hi: rat_i(16) * &a5.hi - rat_i(4) * &a239.lo,
    }
}

fn mul_coeff(coef: &Rat, enc: &Enclosure) -> Enclosure {
    if coef.is_negative() {
        Enclosure { lo: coef * &enc.hi, hi: coef * &enc.lo }
    } else {
        Enclosure { lo: coef * &enc.lo, hi: coef * &enc.hi }
    }
}

/// Correctly rounded decimal string with `digits` fractional digits.
///
/// Uses interval arithmetic with growing guard precision until the rounding is
/// unambiguous; exact rationals are rounded directly (ties away from zero).
pub fn decimal_string(x: &RingElem, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let as_string = |n: BigInt| -> String {
        let neg = n.is_negative();
        let n = n.abs();
        let (int, frac) = n.div_rem(&scale);
        let mut s = String::new();
        if neg && !(int.is_zero() && frac.is_zero()) {
            s.push('-');
        }
        s.push_str(&int.to_string());
        if digits > 0 {
            s.push('.');
            let fs = frac.to_string();
            for _ in fs.len()..digits {
                s.push('0');
            }
            s.push_str(&fs);
        }
        s
    };
    // Round a rational (value * 10^digits) half away from zero.
    let round_rat = |r: &Rat| -> BigInt {
        let scaled = r * Rat::from_integer(scale.clone());
        let neg = scaled.is_negative();
        let f = (scaled.abs() + Rat::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
        if neg {
            -f
        } else {
            f
        }
    };
    if x.is_rational() {
        return as_string(round_rat(&x.q0.a));
    }
    let mut guard = 2 * digits + 10;
    loop {
        let sq = sqrt_enclosure(x.rad, guard);
        let pi = pi_enclosure(guard);
        let inv_pi = Enclosure { lo: Rat::one() / &pi.hi, hi: Rat::one() / &pi.lo };
        // sqrt(d)/pi: both positive.
        let sq_inv_pi = Enclosure { lo: &sq.lo * &inv_pi.lo, hi: &sq.hi * &inv_pi.hi };
        let mut lo = x.q0.a.clone();
        let mut hi = x.q0.a.clone();
        for (coef, enc) in [(&x.q0.b, &sq), (&x.q1.a, &inv_pi), (&x.q1.b, &sq_inv_pi)] {
            if coef.is_zero() {
                continue;
            }
            let e = mul_coeff(coef, enc);
            lo += e.lo;
            hi += e.hi;
        }
        let rlo = round_rat(&lo);
        let rhi = round_rat(&hi);
        if rlo == rhi {
            return as_string(rlo);
        }
        guard *= 2;
        assert!(guard < 1 << 20, "decimal rounding failed to converge");
    }
}
