use crate::error::{Error, Result};
use crate::algebra::{Polynomial, Ring};
use crate::groebner::{minimal_generators, syzygy_basis_with_degrees, FreeModuleSpec, ModVector, PresentedModule};

use super::complex::FreeComplex;
use super::map::GradedMap;

/// A bounded complex of presented modules. `maps[k]` is a map between the
/// ambient free modules of `terms[k]` and `terms[k + 1]` sending relations
/// into relations.
#[derive(Clone, Debug)]
pub struct PresentedComplex {
    ring: Ring,
    lo: i32,
    terms: Vec<PresentedModule>,
    maps: Vec<GradedMap>,
}

impl PresentedComplex {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn term(&self, i: i32) -> Option<&PresentedModule> {
        let k = i - self.lo;
        (k >= 0).then(|| self.terms.get(k as usize)).flatten()
    }

    pub fn map(&self, i: i32) -> Option<&GradedMap> {
        let k = i - self.lo;
        (k >= 0).then(|| self.maps.get(k as usize)).flatten()
    }
}

/// `X ⊗ M`: term `i` is `M^{rank X^i}` (twisted), with `d ⊗ 1` between ambients.
pub fn tensor_complex_module(x: &FreeComplex, m: &PresentedModule) -> Result<PresentedComplex> {
    x.ring().ensure_same(m.ring())?;
    let ring = x.ring().clone();
    let s = m.ambient().rank();
    let spec_of = |t: &FreeModuleSpec| {
        let mut tw = Vec::with_capacity(t.rank() * s);
        for a in &t.twists {
            for b in &m.ambient().twists {
                tw.push(a + b);
            }
        }
        FreeModuleSpec::new(tw)
    };
    let mut terms = Vec::new();
    for i in x.indices() {
        let t = x.term(i);
        let rank = t.rank() * s;
        let mut rels = Vec::with_capacity(t.rank() * m.relations().len());
        for a in 0..t.rank() {
            for rho in m.relations() {
                rels.push(rho.embed(rank, a * s));
            }
        }
        terms.push(PresentedModule::new(&ring, spec_of(&t), rels)?);
    }
    let mut maps = Vec::new();
    for i in x.lo()..x.hi() {
        let d = x.diff(i);
        let (src, tgt) = (spec_of(d.source()), spec_of(d.target()));
        let mut entries = vec![Polynomial::zero(&ring); src.rank() * tgt.rank()];
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                for b in 0..s {
                    entries[(r * s + b) * src.rank() + c * s + b] = d.entry(r, c).clone();
                }
            }
        }
        maps.push(GradedMap::from_entries(&ring, src, tgt, entries));
    }
    Ok(PresentedComplex { ring, lo: x.lo(), terms, maps })
}

fn zero_module(ring: &Ring) -> PresentedModule {
    PresentedModule::free(ring, FreeModuleSpec::zero())
}

/// `H^i = ker d^i / im d^{i-1}` as a presented module.
///
/// The kernel is the projection of the syzygies of `d(e_1), ..., d(e_m)`
/// together with the relations of the target; the presentation of the
/// quotient comes from syzygies of the kernel generators against the
/// relations and the image of `d^{i-1}`.
pub fn homology(c: &PresentedComplex, i: i32) -> Result<PresentedModule> {
    let ring = &c.ring;
    let Some(term) = c.term(i) else { return Ok(zero_module(ring)) };
    let f_amb = term.ambient().clone();
    let m = f_amb.rank();
    if m == 0 {
        return Ok(zero_module(ring));
    }

    let kernel: Vec<ModVector> = match (c.map(i), c.term(i + 1)) {
        (Some(d), Some(next)) if next.ambient().rank() > 0 => {
            let g_amb = next.ambient();
            let mut gens = d.columns();
            let mut degrees = f_amb.twists.clone();
            for s in next.relations() {
                degrees.push(s.degree_in(g_amb).expect("relations are homogeneous"));
                gens.push(s.clone());
            }
            let (_, syz) = syzygy_basis_with_degrees(ring, &gens, g_amb, &degrees)?;
            syz.iter().map(|v| v.project(0, m)).filter(|v| !v.is_zero()).collect()
        }
        _ => (0..m).map(|j| ModVector::basis(ring, m, j)).collect(),
    };
    let kernel = minimal_generators(ring, &kernel, &f_amb)?;
    if kernel.is_empty() {
        return Ok(zero_module(ring));
    }
    let q = kernel.len();
    let h_degrees: Vec<i32> = kernel.iter().map(|v| v.degree_in(&f_amb).expect("homogeneous")).collect();

    let mut gens = kernel.clone();
    let mut degrees = h_degrees.clone();
    for r in term.relations() {
        degrees.push(r.degree_in(&f_amb).expect("relations are homogeneous"));
        gens.push(r.clone());
    }
    if let (Some(prev_map), Some(prev)) = (c.map(i - 1), c.term(i - 1)) {
        for (j, col) in prev_map.columns().into_iter().enumerate() {
            degrees.push(prev.ambient().twists[j]);
            gens.push(col);
        }
    }
    let (_, syz) = syzygy_basis_with_degrees(ring, &gens, &f_amb, &degrees)?;
    let rels: Vec<ModVector> = syz.iter().map(|v| v.project(0, q)).filter(|v| !v.is_zero()).collect();
    PresentedModule::new(ring, FreeModuleSpec::new(h_degrees), rels)
}

/// Krull dimensions of every `H^i(X ⊗ M)`, indexed from `X.lo()`.
pub fn homology_dims(x: &FreeComplex, m: &PresentedModule) -> Result<Vec<(i32, i32)>> {
    let c = tensor_complex_module(x, m)?;
    x.indices().map(|i| Ok((i, homology(&c, i)?.krull_dim()))).collect()
}

/// `max_i dim H^i(X ⊗ M)`, or `-1` when all homology vanishes.
pub fn dim_total_homology(x: &FreeComplex, m: &PresentedModule) -> Result<i32> {
    Ok(homology_dims(x, m)?.into_iter().map(|(_, d)| d).max().unwrap_or(-1))
}

/// Whether every `H^i(X)` has finite length.
pub fn in_kbf(x: &FreeComplex) -> Result<bool> {
    Ok(dim_total_homology(x, &PresentedModule::ring_module(x.ring()))? <= 0)
}

/// Whether `X` is zero in the homotopy category (all homology vanishes).
pub fn is_zero_object(x: &FreeComplex) -> Result<bool> {
    Ok(dim_total_homology(x, &PresentedModule::ring_module(x.ring()))? < 0)
}

/// Lengths `ℓ(H^i(X ⊗ M))` through presented homology; fails on infinite length.
pub fn presented_homology_lengths(x: &FreeComplex, m: &PresentedModule) -> Result<Vec<(i32, u64)>> {
    let c = tensor_complex_module(x, m)?;
    x.indices()
        .map(|i| {
            let h = homology(&c, i)?;
            match h.length() {
                Ok(l) => Ok((i, l)),
                Err(Error::InfiniteLength(d)) => Err(Error::NotFiniteValue(format!("H^{i} has dimension {d}"))),
                Err(e) => Err(e),
            }
        })
        .collect()
}
