use super::ring::{parse_rat, Quad, Radicand, RingElem};
use super::{ExactError, ExactResult, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;

/// Evaluate an arithmetic expression over `Q[sqrt(rad)]` and `pi` into a
/// `RingElem`. Accepts the canonical rendering plus the obvious superset:
/// `+ - * /`, parentheses, `sqrt(D)` and `pi` as atoms, e.g.
/// `53/(2*sqrt(2)) - 37/2` or `23/(15*pi)`.
pub fn parse_expr(input: &str, rad: Radicand) -> ExactResult<RingElem> {
    let mut p = Parser { toks: lex(input)?, pos: 0, rad };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ExactError::Parse(format!("trailing input in `{input}`")));
    }
    v.into_ring(rad)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Pi,
    Sqrt(Radicand),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn lex(s: &str) -> ExactResult<Vec<Tok>> {
    let mut toks = Vec::new();
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                toks.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                toks.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                toks.push(Tok::Star);
                i += 1;
            }
            '/' => {
                toks.push(Tok::Slash);
                i += 1;
            }
            '(' => {
                toks.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                toks.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = bytes[start..i].iter().collect();
                toks.push(Tok::Num(parse_rat(&text)?));
            }
            'a'..='z' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let word: String = bytes[start..i].iter().collect();
                match word.as_str() {
                    "pi" => toks.push(Tok::Pi),
                    "sqrt" => {
                        // expect ( digits )
                        if i < bytes.len() && bytes[i] == '(' {
                            i += 1;
                            let ds = i;
                            while i < bytes.len() && bytes[i].is_ascii_digit() {
                                i += 1;
                            }
                            let dtext: String = bytes[ds..i].iter().collect();
                            if i >= bytes.len() || bytes[i] != ')' {
                                return Err(ExactError::Parse("expected `)` after sqrt radicand".into()));
                            }
                            i += 1;
                            let d: Radicand = dtext
                                .parse()
                                .map_err(|_| ExactError::Parse("bad sqrt radicand".into()))?;
                            toks.push(Tok::Sqrt(d));
                        } else {
                            return Err(ExactError::Parse("expected `(` after sqrt".into()));
                        }
                    }
                    _ => return Err(ExactError::Parse(format!("unknown identifier `{word}`"))),
                }
            }
            _ => return Err(ExactError::Parse(format!("unexpected character `{c}`"))),
        }
    }
    Ok(toks)
}

/// Laurent polynomial in pi with Quad coefficients (key = power of pi).
#[derive(Debug, Clone)]
struct PiLaurent {
    terms: BTreeMap<i32, Quad>,
}

impl PiLaurent {
    fn constant(q: Quad) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(0, q);
        }
        PiLaurent { terms }
    }

    fn pi() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(1, Quad::one());
        PiLaurent { terms }
    }

    fn add(&self, o: &PiLaurent) -> PiLaurent {
        let mut terms = self.terms.clone();
        for (k, q) in &o.terms {
            let entry = terms.entry(*k).or_insert_with(Quad::zero);
            *entry = Quad::new(&entry.a + &q.a, &entry.b + &q.b);
        }
        terms.retain(|_, q| !q.is_zero());
        PiLaurent { terms }
    }

    fn neg(&self) -> PiLaurent {
        PiLaurent {
            terms: self.terms.iter().map(|(k, q)| (*k, Quad::new(-q.a.clone(), -q.b.clone()))).collect(),
        }
    }

    fn mul(&self, o: &PiLaurent, rad: Radicand) -> PiLaurent {
        let mut terms: BTreeMap<i32, Quad> = BTreeMap::new();
        for (i, a) in &self.terms {
            for (j, b) in &o.terms {
                let t = a.mul(b, rad);
                let entry = terms.entry(i + j).or_insert_with(Quad::zero);
                *entry = Quad::new(&entry.a + t.a, &entry.b + t.b);
            }
        }
        terms.retain(|_, q| !q.is_zero());
        PiLaurent { terms }
    }

    fn div(&self, o: &PiLaurent, rad: Radicand) -> ExactResult<PiLaurent> {
        if o.terms.is_empty() {
            return Err(ExactError::DivideByZero);
        }
        if o.terms.len() != 1 {
            return Err(ExactError::Parse("division by a multi-term pi expression".into()));
        }
        let (k, q) = o.terms.iter().next().unwrap();
        let inv = q.inv(rad)?;
        let mono = PiLaurent {
            terms: [( -k, inv)].into_iter().collect(),
        };
        Ok(self.mul(&mono, rad))
    }

    fn into_ring(self, rad: Radicand) -> ExactResult<RingElem> {
        let mut q0 = Quad::zero();
        let mut q1 = Quad::zero();
        for (k, q) in self.terms {
            match k {
                0 => q0 = q,
                -1 => q1 = q,
                _ => {
                    return Err(ExactError::Parse(format!("pi power {k} outside the ring")));
                }
            }
        }
        Ok(RingElem { rad, q0, q1 })
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    rad: Radicand,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> ExactResult<PiLaurent> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> ExactResult<PiLaurent> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = acc.mul(&f, self.rad);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = acc.div(&f, self.rad)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> ExactResult<PiLaurent> {
        match self.bump() {
            Some(Tok::Minus) => Ok(self.factor()?.neg()),
            Some(Tok::Num(r)) => Ok(PiLaurent::constant(Quad::from_rat(r))),
            Some(Tok::Pi) => Ok(PiLaurent::pi()),
            Some(Tok::Sqrt(d)) => {
                if d != self.rad {
                    return Err(ExactError::RadicandMismatch(self.rad, d));
                }
                Ok(PiLaurent::constant(Quad::new(Rat::zero(), num_traits::One::one())))
            }
            Some(Tok::LParen) => {
                let v = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(v),
                    _ => Err(ExactError::Parse("expected `)`".into())),
                }
            }
            other => Err(ExactError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}
