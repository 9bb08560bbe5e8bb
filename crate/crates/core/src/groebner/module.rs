//! Graded free modules and their elements.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::{Field, Monomial, Polynomial, Ring};
use crate::error::{Error, Result};

/// A graded free module `⊕_j A(-twists[j])`; generator `e_j` sits in degree `twists[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FreeModuleSpec {
    pub twists: Vec<i32>,
}

impl FreeModuleSpec {
    pub fn new(twists: Vec<i32>) -> Self {
        FreeModuleSpec { twists }
    }

    pub fn free(rank: usize) -> Self {
        FreeModuleSpec { twists: vec![0; rank] }
    }

    pub fn zero() -> Self {
        FreeModuleSpec { twists: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn is_zero(&self) -> bool {
        self.twists.is_empty()
    }

    /// Every generator degree moved by `by`.
    pub fn shifted(&self, by: i32) -> Self {
        FreeModuleSpec { twists: self.twists.iter().map(|t| t + by).collect() }
    }

    /// The dual free module: every twist negated.
    pub fn negated(&self) -> Self {
        FreeModuleSpec { twists: self.twists.iter().map(|t| -t).collect() }
    }

    /// Drops generator `j`.
    pub fn without(&self, j: usize) -> Self {
        let mut twists = self.twists.clone();
        twists.remove(j);
        FreeModuleSpec { twists }
    }

    pub fn direct_sum(&self, other: &FreeModuleSpec) -> Self {
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        FreeModuleSpec { twists }
    }
}

/// One term `c * m * e_pos` of a module element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModTerm {
    pub mon: Monomial,
    pub pos: usize,
    pub coeff: u32,
}

/// Term-over-position order: grevlex first, then the lower position is larger.
#[inline]
pub(crate) fn term_cmp(am: &Monomial, ap: usize, bm: &Monomial, bp: usize) -> Ordering {
    am.cmp(bm).then(bp.cmp(&ap))
}

#[inline]
pub(crate) fn cmp_terms(a: &ModTerm, b: &ModTerm) -> Ordering {
    term_cmp(&a.mon, a.pos, &b.mon, b.pos)
}

/// `a - c * u * b` for term lists sorted decreasingly.
pub(crate) fn sub_mul(a: &[ModTerm], c: u32, u: &Monomial, b: &[ModTerm], f: Field) -> Vec<ModTerm> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let negc = f.neg(c);
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let bt = b.get(j).map(|t| ModTerm { mon: t.mon.mul(u), pos: t.pos, coeff: t.coeff });
        let ord = match (a.get(i), bt.as_ref()) {
            (Some(x), Some(y)) => cmp_terms(x, y),
            (Some(_), None) => Ordering::Greater,
            _ => Ordering::Less,
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                let y = bt.unwrap();
                out.push(ModTerm { coeff: f.mul(negc, y.coeff), ..y });
                j += 1;
            }
            Ordering::Equal => {
                let y = bt.unwrap();
                let coeff = f.add(a[i].coeff, f.mul(negc, y.coeff));
                if coeff != 0 {
                    out.push(ModTerm { coeff, ..a[i] });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn scale_terms(a: &[ModTerm], c: u32, u: &Monomial, f: Field) -> Vec<ModTerm> {
    if c == 0 {
        return Vec::new();
    }
    a.iter().map(|t| ModTerm { mon: t.mon.mul(u), pos: t.pos, coeff: f.mul(c, t.coeff) }).collect()
}

pub(crate) fn sort_terms(mut terms: Vec<ModTerm>, f: Field) -> Vec<ModTerm> {
    terms.sort_by(|a, b| cmp_terms(b, a));
    let mut out: Vec<ModTerm> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.mon == t.mon && last.pos == t.pos => {
                last.coeff = f.add(last.coeff, t.coeff)
            }
            _ => out.push(t),
        }
    }
    out.retain(|t| t.coeff != 0);
    out
}

/// An element of a free module `A^rank`, stored as sorted terms.
#[derive(Clone, PartialEq, Eq)]
pub struct ModVector {
    ring: Ring,
    rank: usize,
    terms: Vec<ModTerm>,
}

impl ModVector {
    pub fn zero(ring: &Ring, rank: usize) -> Self {
        ModVector { ring: ring.clone(), rank, terms: Vec::new() }
    }

    /// The basis vector `e_pos`.
    pub fn basis(ring: &Ring, rank: usize, pos: usize) -> Self {
        assert!(pos < rank);
        ModVector {
            ring: ring.clone(),
            rank,
            terms: vec![ModTerm { mon: ring.one_monomial(), pos, coeff: 1 }],
        }
    }

    pub fn from_components(ring: &Ring, comps: &[Polynomial]) -> Result<Self> {
        let mut terms = Vec::new();
        for (pos, p) in comps.iter().enumerate() {
            ring.ensure_same(p.ring())?;
            terms.extend(p.terms().iter().map(|&(mon, coeff)| ModTerm { mon, pos, coeff }));
        }
        Ok(ModVector { ring: ring.clone(), rank: comps.len(), terms: sort_terms(terms, ring.field()) })
    }

    /// A rank-one vector holding `p`.
    pub fn from_poly(p: &Polynomial) -> Self {
        ModVector::from_components(p.ring(), std::slice::from_ref(p)).expect("same ring")
    }

    pub fn from_terms(ring: &Ring, rank: usize, terms: Vec<ModTerm>) -> Self {
        debug_assert!(terms.iter().all(|t| t.pos < rank));
        ModVector { ring: ring.clone(), rank, terms: sort_terms(terms, ring.field()) }
    }

    pub(crate) fn from_sorted(ring: &Ring, rank: usize, terms: Vec<ModTerm>) -> Self {
        debug_assert!(terms.windows(2).all(|w| cmp_terms(&w[0], &w[1]) == Ordering::Greater));
        ModVector { ring: ring.clone(), rank, terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[ModTerm] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<ModTerm> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&ModTerm> {
        self.terms.first()
    }

    pub fn component(&self, pos: usize) -> Polynomial {
        let terms = self.terms.iter().filter(|t| t.pos == pos).map(|t| (t.mon, t.coeff)).collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn components(&self) -> Vec<Polynomial> {
        (0..self.rank).map(|j| self.component(j)).collect()
    }

    /// Internal degree with respect to `ambient`, or `None` when zero or inhomogeneous.
    pub fn degree_in(&self, ambient: &FreeModuleSpec) -> Option<i32> {
        let first = self.terms.first()?;
        let d = first.mon.degree() as i32 + ambient.twists[first.pos];
        self.terms
            .iter()
            .all(|t| t.mon.degree() as i32 + ambient.twists[t.pos] == d)
            .then_some(d)
    }

    pub fn is_homogeneous_in(&self, ambient: &FreeModuleSpec) -> bool {
        self.is_zero() || self.degree_in(ambient).is_some()
    }

    fn check(&self, other: &ModVector) -> Result<()> {
        self.ring.ensure_same(&other.ring)?;
        if self.rank != other.rank {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &ModVector) -> Result<ModVector> {
        self.check(other)?;
        let f = self.ring.field();
        let one = self.ring.one_monomial();
        Ok(ModVector {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: sub_mul(&self.terms, f.neg(1), &one, &other.terms, f),
        })
    }

    pub fn checked_sub(&self, other: &ModVector) -> Result<ModVector> {
        self.check(other)?;
        let f = self.ring.field();
        let one = self.ring.one_monomial();
        Ok(ModVector {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: sub_mul(&self.terms, 1, &one, &other.terms, f),
        })
    }

    pub fn scale(&self, c: u32) -> ModVector {
        let f = self.ring.field();
        ModVector {
            ring: self.ring.clone(),
            rank: self.rank,
            terms: scale_terms(&self.terms, c % f.characteristic(), &self.ring.one_monomial(), f),
        }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> ModVector {
        let f = self.ring.field();
        let mut acc: Vec<ModTerm> = Vec::new();
        for &(m, c) in p.terms() {
            acc = sub_mul(&acc, f.neg(c), &m, &self.terms, f);
        }
        ModVector { ring: self.ring.clone(), rank: self.rank, terms: acc }
    }

    /// `self + p * other`.
    pub fn add_mul(&self, p: &Polynomial, other: &ModVector) -> Result<ModVector> {
        self.check(other)?;
        let f = self.ring.field();
        let mut acc = self.terms.clone();
        for &(m, c) in p.terms() {
            acc = sub_mul(&acc, f.neg(c), &m, &other.terms, f);
        }
        Ok(ModVector { ring: self.ring.clone(), rank: self.rank, terms: acc })
    }

    /// Embeds into a bigger free module, moving position `j` to `j + offset`.
    pub fn embed(&self, rank: usize, offset: usize) -> ModVector {
        assert!(offset + self.rank <= rank);
        ModVector {
            ring: self.ring.clone(),
            rank,
            terms: self.terms.iter().map(|t| ModTerm { pos: t.pos + offset, ..*t }).collect(),
        }
    }

    /// Keeps positions in `offset..offset+rank`, renumbered from zero.
    pub fn project(&self, offset: usize, rank: usize) -> ModVector {
        ModVector {
            ring: self.ring.clone(),
            rank,
            terms: self
                .terms
                .iter()
                .filter(|t| t.pos >= offset && t.pos < offset + rank)
                .map(|t| ModTerm { pos: t.pos - offset, ..*t })
                .collect(),
        }
    }

    pub fn monic(&self) -> ModVector {
        match self.terms.first() {
            None => self.clone(),
            Some(t) => self.scale(self.ring.field().inv(t.coeff)),
        }
    }
}

impl fmt::Debug for ModVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.components().iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", comps.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;

    #[test]
    fn top_order_breaks_ties_by_position() {
        let m = Monomial::from_exponents(&[1, 0]);
        assert_eq!(term_cmp(&m, 0, &m, 1), Ordering::Greater);
        let big = Monomial::from_exponents(&[2, 0]);
        assert_eq!(term_cmp(&m, 0, &big, 3), Ordering::Less);
    }

    #[test]
    fn vector_arithmetic() {
        let r = Ring::with_char(&["x", "y"], 32003).unwrap();
        let p = |s| parse_polynomial(s, &r).unwrap();
        let v = ModVector::from_components(&r, &[p("x"), p("y^2")]).unwrap();
        let w = ModVector::from_components(&r, &[p("-x"), p("x*y")]).unwrap();
        let s = v.checked_add(&w).unwrap();
        assert_eq!(s.components(), vec![p("0"), p("y^2 + x*y")]);
        assert_eq!(v.mul_poly(&p("x + y")).components(), vec![p("x^2 + x*y"), p("x*y^2 + y^3")]);
        let twisted = FreeModuleSpec::new(vec![1, 0]);
        assert_eq!(v.degree_in(&twisted), Some(2));
        assert_eq!(v.degree_in(&FreeModuleSpec::free(2)), None);
        assert!(v.checked_sub(&v).unwrap().is_zero());
    }
}
