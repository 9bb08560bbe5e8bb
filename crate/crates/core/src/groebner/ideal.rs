//! Homogeneous ideals, their powers and m-primary tests.

use std::collections::BTreeMap;

use super::basis::{buchberger, GroebnerBasis};
use super::module::{FreeModuleSpec, ModVector};
use crate::algebra::{Monomial, Polynomial, Ring};
use crate::error::{Error, Result};

/// A homogeneous ideal given by generators.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            ring.ensure_same(g.ring())?;
            if !g.is_homogeneous() {
                return Err(Error::InhomogeneousInput(g.to_string()));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens })
    }

    /// The irrelevant ideal `(x_1, ..., x_d)`.
    pub fn maximal(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn groebner(&self) -> GroebnerBasis {
        let vecs: Vec<ModVector> = self.gens.iter().map(ModVector::from_poly).collect();
        buchberger(&self.ring, &vecs, &FreeModuleSpec::free(1)).expect("homogeneous by construction")
    }

    /// True when `I != A` and `A/I` has finite length.
    pub fn is_m_primary(&self) -> bool {
        self.socle_bound().is_some()
    }

    /// Smallest `s` with `m^s ⊆ I`, or `None` when `I` is not m-primary (or is the unit ideal).
    pub fn socle_bound(&self) -> Option<u32> {
        if self.gens.iter().any(|g| g.degree() == Some(0)) {
            return None;
        }
        let gb = self.groebner();
        let d = self.ring.nvars();
        // m-primary iff every variable has a pure power among the leading monomials
        let leads: Vec<Monomial> = gb.leading_terms().iter().map(|t| t.mon).collect();
        let mut bound = 0u32;
        for i in 0..d {
            let pure = leads
                .iter()
                .filter(|m| m.degree() == m.exp(i))
                .map(|m| m.degree())
                .min()?;
            bound += pure - 1;
        }
        // monomials of degree > sum (a_i - 1) always contain some x_i^{a_i}; the
        // true bound is the top degree of a standard monomial plus one
        let mut top = 0u32;
        let mut stack = vec![Monomial::one(d)];
        while let Some(m) = stack.pop() {
            top = top.max(m.degree());
            for i in 0..d {
                let next = m.mul(&Monomial::var(d, i));
                if next.degree() > bound || leads.iter().any(|l| l.divides(&next)) {
                    continue;
                }
                // visit each monomial once: only extend at the last nonzero variable or later
                let last = (0..d).rev().find(|&k| m.exp(k) > 0).unwrap_or(0);
                if i >= last {
                    stack.push(next);
                }
            }
        }
        Some(top + 1)
    }

    /// `I^n` with an interreduced generating set.
    pub fn power(&self, n: u32) -> Ideal {
        Ideal { ring: self.ring.clone(), gens: ideal_power(&self.gens, n) }
    }

    /// Successive powers `I^1, ..., I^n_max`.
    pub fn powers(&self, n_max: u32) -> Vec<Ideal> {
        let mut out = Vec::with_capacity(n_max as usize);
        let mut cur = interreduce(self.gens.clone());
        for _ in 0..n_max {
            out.push(Ideal { ring: self.ring.clone(), gens: cur.clone() });
            cur = interreduce(products(&cur, &self.gens));
        }
        out
    }
}

fn products(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            out.push(p * q);
        }
    }
    out
}

/// Generators of `(gens)^n` computed by iterated multiplication and interreduction.
///
/// `n = 0` yields the unit ideal.
pub fn ideal_power(gens: &[Polynomial], n: u32) -> Vec<Polynomial> {
    let Some(first) = gens.first() else { return Vec::new() };
    let mut cur = vec![Polynomial::one(first.ring())];
    for _ in 0..n {
        cur = interreduce(products(&cur, gens));
    }
    cur
}

/// Row-reduces generators degree by degree and drops those whose every term
/// is a multiple of a lower-degree monomial generator.
pub fn interreduce(gens: Vec<Polynomial>) -> Vec<Polynomial> {
    if gens.is_empty() {
        return Vec::new();
    }
    let mut by_degree: BTreeMap<u32, Vec<Polynomial>> = BTreeMap::new();
    for g in gens.into_iter().filter(|g| !g.is_zero()) {
        by_degree.entry(g.degree().unwrap()).or_default().push(g);
    }
    let mut out: Vec<Polynomial> = Vec::new();
    let mut monomial_gens: Vec<Monomial> = Vec::new();
    for (_, group) in by_degree {
        // reduced row echelon form keyed by leading monomial
        let mut rows: Vec<Polynomial> = Vec::new();
        for g in group {
            let mut g = g;
            for r in &rows {
                let (lm, _) = r.leading_term().unwrap();
                if let Some(&(_, c)) = g.terms().iter().find(|t| t.0 == lm) {
                    g = &g - &r.scale(c);
                }
            }
            if g.is_zero() {
                continue;
            }
            let g = g.monic();
            let (lm, _) = g.leading_term().unwrap();
            for r in rows.iter_mut() {
                if let Some(&(_, c)) = r.terms().iter().find(|t| t.0 == lm) {
                    *r = &*r - &g.scale(c);
                }
            }
            rows.push(g);
        }
        rows.sort_by_key(|r| std::cmp::Reverse(r.leading_term().unwrap().0));
        let mut new_monomials = Vec::new();
        for r in rows {
            let redundant = r.terms().iter().all(|(m, _)| monomial_gens.iter().any(|g| g.divides(m)));
            if redundant {
                continue;
            }
            if r.is_monomial() {
                new_monomials.push(r.terms()[0].0);
            }
            out.push(r);
        }
        monomial_gens.extend(new_monomials);
    }
    out
}
