//! Finitely presented graded modules `F / <relations>`.

use std::sync::OnceLock;

use super::basis::{buchberger, check_homogeneous, GroebnerBasis};
use super::module::{FreeModuleSpec, ModTerm, ModVector};
use crate::algebra::{monomials_of_degree, Monomial, Polynomial, Ring};
use crate::error::{Error, Result};

/// The cokernel of a graded map: `ambient / <relations>`.
#[derive(Debug, Clone)]
pub struct PresentedModule {
    ring: Ring,
    ambient: FreeModuleSpec,
    relations: Vec<ModVector>,
    gb: OnceLock<GroebnerBasis>,
}

impl PresentedModule {
    pub fn new(ring: &Ring, ambient: FreeModuleSpec, relations: Vec<ModVector>) -> Result<Self> {
        check_homogeneous(&relations, &ambient, ring)?;
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(PresentedModule { ring: ring.clone(), ambient, relations, gb: OnceLock::new() })
    }

    /// The free module itself (no relations).
    pub fn free(ring: &Ring, ambient: FreeModuleSpec) -> Self {
        PresentedModule { ring: ring.clone(), ambient, relations: Vec::new(), gb: OnceLock::new() }
    }

    /// The ring as a module over itself.
    pub fn ring_module(ring: &Ring) -> Self {
        PresentedModule::free(ring, FreeModuleSpec::free(1))
    }

    /// `A / (gens)`.
    pub fn cyclic(ring: &Ring, gens: &[Polynomial]) -> Result<Self> {
        let rels = gens.iter().map(ModVector::from_poly).collect();
        PresentedModule::new(ring, FreeModuleSpec::free(1), rels)
    }

    /// The residue field `A / m`.
    pub fn residue_field(ring: &Ring) -> Self {
        let gens: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        PresentedModule::cyclic(ring, &gens).expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModuleSpec {
        &self.ambient
    }

    pub fn relations(&self) -> &[ModVector] {
        &self.relations
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            buchberger(&self.ring, &self.relations, &self.ambient).expect("validated on construction")
        })
    }

    /// `M / J M` for an ideal given by generators, e.g. `M / I^n M`.
    pub fn quotient_by_ideal(&self, ideal_gens: &[Polynomial]) -> Result<PresentedModule> {
        let mut rels = self.relations.clone();
        for g in ideal_gens {
            self.ring.ensure_same(g.ring())?;
            for j in 0..self.ambient.rank() {
                rels.push(ModVector::from_poly(g).embed(self.ambient.rank(), j));
            }
        }
        PresentedModule::new(&self.ring, self.ambient.clone(), rels)
    }

    /// Presentation of `self ⊗ other`.
    pub fn tensor(&self, other: &PresentedModule) -> Result<PresentedModule> {
        self.ring.ensure_same(&other.ring)?;
        let (r, s) = (self.ambient.rank(), other.ambient.rank());
        let mut twists = Vec::with_capacity(r * s);
        for a in &self.ambient.twists {
            for b in &other.ambient.twists {
                twists.push(a + b);
            }
        }
        let rank = r * s;
        let mut rels = Vec::new();
        // rho ⊗ g_j places rho's entries at positions (i, j)
        for rho in &self.relations {
            for j in 0..s {
                let terms = rho.terms().iter().map(|t| ModTerm { pos: t.pos * s + j, ..*t }).collect();
                rels.push(ModVector::from_terms(&self.ring, rank, terms));
            }
        }
        for sigma in &other.relations {
            for i in 0..r {
                let terms = sigma.terms().iter().map(|t| ModTerm { pos: i * s + t.pos, ..*t }).collect();
                rels.push(ModVector::from_terms(&self.ring, rank, terms));
            }
        }
        PresentedModule::new(&self.ring, FreeModuleSpec::new(twists), rels)
    }

    /// Leading monomials of the relation module, grouped by position.
    fn leads_by_position(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.ambient.rank()];
        for t in self.groebner().leading_terms() {
            out[t.pos].push(t.mon);
        }
        out
    }

    pub fn krull_dim(&self) -> i32 {
        let d = self.ring.nvars();
        let mut best = -1;
        for leads in self.leads_by_position() {
            let masks: Vec<u32> = leads.iter().map(|m| m.support_mask()).collect();
            for subset in 0u32..(1 << d) {
                let size = subset.count_ones() as i32;
                if size > best && masks.iter().all(|&m| m & !subset != 0) {
                    best = size;
                }
            }
        }
        best
    }

    pub fn is_zero(&self) -> bool {
        self.krull_dim() < 0
    }

    /// Standard monomials per position; only call when the length is finite.
    fn standard_terms(&self) -> Vec<(usize, Monomial)> {
        let d = self.ring.nvars();
        let mut out = Vec::new();
        for (pos, leads) in self.leads_by_position().into_iter().enumerate() {
            let mut stack = vec![Monomial::one(d)];
            if leads.iter().any(|l| l.is_one()) {
                continue;
            }
            while let Some(m) = stack.pop() {
                out.push((pos, m));
                let last = (0..d).rev().find(|&k| m.exp(k) > 0).unwrap_or(0);
                for i in last..d {
                    let next = m.mul(&Monomial::var(d, i));
                    if !leads.iter().any(|l| l.divides(&next)) {
                        stack.push(next);
                    }
                }
            }
        }
        out
    }

    /// Dimension over k, when finite.
    pub fn length(&self) -> Result<u64> {
        match self.krull_dim() {
            -1 => Ok(0),
            0 => Ok(self.standard_terms().len() as u64),
            dim => Err(Error::InfiniteLength(dim)),
        }
    }

    /// `dim_k` of the degree-`t` graded piece.
    pub fn hilbert_function(&self, t: i32) -> u64 {
        let leads = self.leads_by_position();
        let mut count = 0;
        for (pos, twist) in self.ambient.twists.iter().enumerate() {
            let deg = t - twist;
            if deg < 0 {
                continue;
            }
            count += monomials_of_degree(self.ring.nvars(), deg as u32)
                .iter()
                .filter(|m| !leads[pos].iter().any(|l| l.divides(m)))
                .count() as u64;
        }
        count
    }
}

/// `ℓ(M)` via standard monomials; errors when `M` has positive dimension.
pub fn length_of_quotient(m: &PresentedModule) -> Result<u64> {
    m.length()
}

/// Krull dimension via the initial module; `-1` for the zero module.
pub fn krull_dim(m: &PresentedModule) -> i32 {
    m.krull_dim()
}
