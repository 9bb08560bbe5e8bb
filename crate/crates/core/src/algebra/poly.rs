//! Sparse multivariate polynomials over F_p in canonical form.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::Monomial;
use super::ring::Ring;
use crate::error::{Error, Result};

/// A polynomial with terms strictly decreasing in grevlex and no zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Polynomial::monomial(ring, ring.one_monomial(), c)
    }

    pub fn one(ring: &Ring) -> Self {
        Polynomial::constant(ring, 1)
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Polynomial::monomial(ring, Monomial::var(ring.nvars(), i), 1)
    }

    pub fn monomial(ring: &Ring, mon: Monomial, coeff: u32) -> Self {
        let coeff = coeff % ring.field().characteristic();
        let terms = if coeff == 0 { Vec::new() } else { vec![(mon, coeff)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a canonical polynomial from arbitrary (unsorted, repeated) terms.
    pub fn from_terms(ring: &Ring, mut terms: Vec<(Monomial, u32)>) -> Self {
        let f = ring.field();
        terms.sort_by_key(|t| std::cmp::Reverse(t.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % f.characteristic();
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 = f.add(last.1, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(Monomial, u32)> {
        self.terms.first().copied()
    }

    /// Total degree of the leading term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|t| t.0.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|t| t.0.degree() == m.degree()),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Nonzero constant, i.e. a unit of the polynomial ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn constant_coeff(&self) -> u32 {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => *c,
            _ => 0,
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.ensure_same(&other.ring)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.ensure_same(&other.ring)?;
        Ok(self.combine(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.ensure_same(&other.ring)?;
        Ok(self.product(other))
    }

    fn combine(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let f = self.ring.field();
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { f.neg(b[j].1) } else { b[j].1 };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract { f.sub(a[i].1, b[j].1) } else { f.add(a[i].1, b[j].1) };
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let f = self.ring.field();
        // Accumulate each row then merge; d is small so this stays cheap.
        let mut acc = Polynomial::zero(&self.ring);
        for &(m, c) in &other.terms {
            let row: Vec<(Monomial, u32)> =
                self.terms.iter().map(|&(n, d)| (n.mul(&m), f.mul(c, d))).collect();
            acc = acc.combine(&Polynomial { ring: self.ring.clone(), terms: row }, false);
        }
        acc
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let f = self.ring.field();
        let c = c % f.characteristic();
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, d)| (m, f.mul(c, d))).collect(),
        }
    }

    pub fn mul_term(&self, mon: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field();
        if c.is_multiple_of(f.characteristic()) {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, d)| (m.mul(mon), f.mul(c, d))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..k {
            acc = acc.product(self);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, c)) => self.scale(self.ring.field().inv(c)),
        }
    }

    /// Same polynomial over another ring with identical variables.
    pub fn reinterpret(&self, ring: &Ring) -> Result<Polynomial> {
        if ring.var_names() != self.ring.var_names() {
            return Err(Error::RingMismatch);
        }
        let old = self.ring.field();
        let terms = self.terms.iter().map(|&(m, c)| (m, ring.field().from_i64(old.to_signed(c)))).collect();
        Ok(Polynomial::from_terms(ring, terms))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let f = self.ring.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|&(m, c)| (m, f.neg(c))).collect(),
        }
    }
}

pub(crate) fn write_monomial(out: &mut String, ring: &Ring, m: &Monomial) {
    let mut first = true;
    for (i, name) in ring.var_names().iter().enumerate() {
        let e = m.exp(i);
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(name);
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.ring.field();
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let signed = field.to_signed(*c);
            let (neg, mag) = (signed < 0, signed.unsigned_abs());
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else {
                if mag != 1 {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                write_monomial(&mut out, &self.ring, m);
            }
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::with_char(&["x", "y"], 32003).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring();
        let x = Polynomial::var(&r, 0);
        let y = Polynomial::var(&r, 1);
        assert!((&x + &(-&x)).is_zero());
        let prod = &(&x + &y) * &(&x - &y);
        assert_eq!(prod.to_string(), "x^2 - y^2");
        assert!(x.pow(2).scale(0).is_zero());
        assert_eq!((&x * &y).degree(), Some(2));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let r = ring();
        let s = Ring::with_char(&["x", "y"], 7).unwrap();
        let a = Polynomial::var(&r, 0);
        let b = Polynomial::var(&s, 0);
        assert_eq!(a.checked_add(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn display_is_canonical() {
        let r = ring();
        let p = Polynomial::from_terms(
            &r,
            vec![
                (Monomial::from_exponents(&[0, 0]), 5),
                (Monomial::from_exponents(&[1, 1]), 3),
                (Monomial::from_exponents(&[2, 0]), 1),
            ],
        );
        assert_eq!(p.to_string(), "x^2 + 3*x*y + 5");
        assert!(!p.is_homogeneous());
    }
}
