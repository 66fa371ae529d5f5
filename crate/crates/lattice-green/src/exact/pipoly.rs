use super::ring::{rat_f64, Quad, Radicand, RingElem};
use super::{ExactError, ExactResult, Rat};
use num_traits::{One, Zero};

/// Exact polynomial in `1/pi` with coefficients in `Q[sqrt(d)]`.
///
/// The graded ring behind [`RingElem`] only holds pi-degrees 0 and 1, which is
/// enough for every closed-form value here, but determinants of transfer
/// impedances genuinely need higher powers of `1/pi`. This type carries them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiPoly {
    pub rad: Radicand,
    /// coeffs[k] multiplies (1/pi)^k.
    pub coeffs: Vec<Quad>,
}

impl PiPoly {
    pub fn zero(rad: Radicand) -> Self {
        PiPoly { rad, coeffs: vec![] }
    }

    pub fn one(rad: Radicand) -> Self {
        PiPoly { rad, coeffs: vec![Quad::one()] }
    }

    pub fn from_ring(x: &RingElem) -> Self {
        let mut p = PiPoly { rad: x.rad, coeffs: vec![x.q0.clone(), x.q1.clone()] };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn pi_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn unify(&self, o: &PiPoly) -> ExactResult<Radicand> {
        if self.rad == o.rad || self.is_rational_poly() || o.is_rational_poly() {
            Ok(if self.is_rational_poly() && self.rad != o.rad { o.rad } else { self.rad })
        } else {
            Err(ExactError::RadicandMismatch(self.rad, o.rad))
        }
    }

    fn is_rational_poly(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_rational())
    }

    pub fn add(&self, o: &PiPoly) -> ExactResult<PiPoly> {
        let rad = self.unify(o)?;
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(Quad::zero);
            let b = o.coeffs.get(k).cloned().unwrap_or_else(Quad::zero);
            coeffs.push(Quad::new(a.a + b.a, a.b + b.b));
        }
        let mut p = PiPoly { rad, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn neg(&self) -> PiPoly {
        PiPoly {
            rad: self.rad,
            coeffs: self.coeffs.iter().map(|c| Quad::new(-c.a.clone(), -c.b.clone())).collect(),
        }
    }

    pub fn sub(&self, o: &PiPoly) -> ExactResult<PiPoly> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &PiPoly) -> ExactResult<PiPoly> {
        let rad = self.unify(o)?;
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Ok(PiPoly::zero(rad));
        }
        let mut coeffs = vec![Quad::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let t = a.mul(b, rad);
                coeffs[i + j] = Quad::new(&coeffs[i + j].a + t.a, &coeffs[i + j].b + t.b);
            }
        }
        let mut p = PiPoly { rad, coeffs };
        p.trim();
        Ok(p)
    }

    pub fn scale(&self, r: &Rat) -> PiPoly {
        PiPoly {
            rad: self.rad,
            coeffs: self.coeffs.iter().map(|c| Quad::new(&c.a * r, &c.b * r)).collect(),
        }
    }

    /// Convert back to a `RingElem` when the pi-degree allows it.
    pub fn to_ring(&self) -> ExactResult<RingElem> {
        if self.pi_degree() > 1 && !self.coeffs[2..].iter().all(|c| c.is_zero()) {
            return Err(ExactError::PiOverflow);
        }
        let q0 = self.coeffs.first().cloned().unwrap_or_else(Quad::zero);
        let q1 = self.coeffs.get(1).cloned().unwrap_or_else(Quad::zero);
        Ok(RingElem { rad: self.rad, q0, q1 })
    }

    pub fn to_f64(&self) -> f64 {
        // Evaluate exactly against rational approximations of sqrt(d) and
        // 1/pi, rounding once at the end (coefficients may cancel massively).
        let cbits = self
            .coeffs
            .iter()
            .flat_map(|c| [super::ring::int_bits(&c.a), super::ring::int_bits(&c.b)])
            .max()
            .unwrap_or(0);
        let bits = 128 + cbits;
        let r = super::ring::sqrt_rat_approx(self.rad, bits);
        let p = super::ring::inv_pi_rat_approx(bits);
        let mut acc = Rat::zero();
        let mut pk = Rat::one();
        for c in &self.coeffs {
            acc += (&c.a + &c.b * &r) * &pk;
            pk *= &p;
        }
        rat_f64(&acc)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let base = RingElem { rad: self.rad, q0: c.clone(), q1: Quad::zero() }.render();
            let part = match k {
                0 => base,
                1 => format!("({base})/pi"),
                _ => format!("({base})/pi^{k}"),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

impl Zero for PiPoly {
    fn zero() -> Self {
        PiPoly::zero(2)
    }
    fn is_zero(&self) -> bool {
        PiPoly::is_zero(self)
    }
}

impl std::ops::Add for PiPoly {
    type Output = PiPoly;
    fn add(self, rhs: PiPoly) -> PiPoly {
        PiPoly::add(&self, &rhs).expect("pi-poly add")
    }
}
