use crate::algebra::{Monomial, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::groebner::FreeModuleSpec;

use super::map::GradedMap;

/// A bounded cohomological complex of graded free modules
/// `X^lo -> X^{lo+1} -> ... -> X^hi`.
///
/// Zero terms at either end are trimmed, so the zero complex has no terms.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeComplex {
    ring: Ring,
    lo: i32,
    terms: Vec<FreeModuleSpec>,
    diffs: Vec<GradedMap>,
}

impl FreeComplex {
    /// `diffs[k]` maps `terms[k]` to `terms[k + 1]`; checks shapes and `d ∘ d = 0`.
    pub fn new(ring: &Ring, lo: i32, terms: Vec<FreeModuleSpec>, diffs: Vec<GradedMap>) -> Result<Self> {
        if terms.is_empty() && !diffs.is_empty() || !terms.is_empty() && diffs.len() + 1 != terms.len() {
            return Err(Error::InvalidComplex("need exactly one differential between consecutive terms".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            ring.ensure_same(d.ring())?;
            if d.source() != &terms[k] || d.target() != &terms[k + 1] {
                return Err(Error::InvalidComplex(format!("differential at index {} has wrong shape", lo + k as i32)));
            }
        }
        let x = FreeComplex::assemble(ring, lo, terms, diffs);
        if let Some(i) = x.first_nonzero_square() {
            return Err(Error::InvalidComplex(format!("d^{} ∘ d^{} is nonzero", i + 1, i)));
        }
        Ok(x)
    }

    /// Builds without the `d ∘ d` check and trims zero ends.
    pub(crate) fn assemble(ring: &Ring, lo: i32, mut terms: Vec<FreeModuleSpec>, mut diffs: Vec<GradedMap>) -> Self {
        let mut lo = lo;
        while terms.first().is_some_and(FreeModuleSpec::is_zero) {
            terms.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            lo += 1;
        }
        while terms.last().is_some_and(FreeModuleSpec::is_zero) {
            terms.pop();
            diffs.pop();
        }
        if terms.is_empty() {
            lo = 0;
        }
        FreeComplex { ring: ring.clone(), lo, terms, diffs }
    }

    pub fn zero(ring: &Ring) -> Self {
        FreeComplex { ring: ring.clone(), lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// A single free module placed at index `at`.
    pub fn concentrated(ring: &Ring, spec: FreeModuleSpec, at: i32) -> Self {
        FreeComplex::assemble(ring, at, vec![spec], Vec::new())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Lowest index carrying a nonzero term (0 for the zero complex).
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest index carrying a nonzero term (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i32> {
        self.lo()..=self.hi()
    }

    pub fn is_zero_complex(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, i: i32) -> FreeModuleSpec {
        let k = i - self.lo;
        if k < 0 || k as usize >= self.terms.len() {
            FreeModuleSpec::zero()
        } else {
            self.terms[k as usize].clone()
        }
    }

    pub fn rank(&self, i: i32) -> usize {
        self.term(i).rank()
    }

    /// `d^i : X^i -> X^{i+1}` (a zero map outside the stored range).
    pub fn diff(&self, i: i32) -> GradedMap {
        let k = i - self.lo;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            GradedMap::zero(&self.ring, self.term(i), self.term(i + 1))
        }
    }

    pub fn diff_ref(&self, i: i32) -> Option<&GradedMap> {
        let k = i - self.lo;
        (k >= 0).then(|| self.diffs.get(k as usize)).flatten()
    }

    pub fn terms(&self) -> &[FreeModuleSpec] {
        &self.terms
    }

    pub fn diffs(&self) -> &[GradedMap] {
        &self.diffs
    }

    /// `(index, rank)` for every stored term.
    pub fn ranks(&self) -> Vec<(i32, usize)> {
        self.indices().map(|i| (i, self.rank(i))).collect()
    }

    fn first_nonzero_square(&self) -> Option<i32> {
        for k in 1..self.diffs.len() {
            let sq = self.diffs[k].compose(&self.diffs[k - 1]).expect("shapes checked");
            if !sq.is_zero() {
                return Some(self.lo + k as i32 - 1);
            }
        }
        None
    }

    /// Re-checks `d^{i+1} ∘ d^i = 0` for all `i`.
    pub fn is_valid(&self) -> bool {
        self.first_nonzero_square().is_none()
    }

    /// Every twist raised by `by` (tensoring with `A(-by)`).
    pub fn twisted(&self, by: i32) -> FreeComplex {
        FreeComplex {
            ring: self.ring.clone(),
            lo: self.lo,
            terms: self.terms.iter().map(|t| t.shifted(by)).collect(),
            diffs: self.diffs.iter().map(|d| d.twisted(by)).collect(),
        }
    }

    /// Same complex over a ring with another characteristic.
    pub fn reinterpret(&self, ring: &Ring) -> Result<FreeComplex> {
        let diffs = self.diffs.iter().map(|d| d.reinterpret(ring)).collect::<Result<_>>()?;
        FreeComplex::new(ring, self.lo, self.terms.clone(), diffs)
    }
}

impl std::fmt::Debug for FreeComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "FreeComplex over {:?}", self.ring)?;
        for i in self.indices() {
            writeln!(f, "  X^{i}: twists {:?}", self.term(i).twists)?;
            if let Some(d) = self.diff_ref(i) {
                writeln!(f, "  d^{i}: {d:?}")?;
            }
        }
        Ok(())
    }
}

/// Subsets of `0..m` of size `p` as bitmasks, in lexicographic order of their elements.
fn subsets(m: usize, p: usize) -> Vec<u32> {
    let mut out: Vec<u32> = (0u32..(1 << m)).filter(|s| s.count_ones() as usize == p).collect();
    out.sort_by_key(|&s| (0..m).filter(|&i| s >> i & 1 == 1).collect::<Vec<_>>());
    out
}

fn members(s: u32) -> Vec<usize> {
    (0..32).filter(|&i| s >> i & 1 == 1).collect()
}

/// Exterior-algebra complex on subsets of `0..m`, with the entry for
/// removing the `k`-th member `s` of `S` equal to `(-1)^k coeff(S, s)`.
fn subset_complex(
    ring: &Ring,
    m: usize,
    twist: impl Fn(u32) -> i32,
    coeff: impl Fn(u32, usize) -> Polynomial,
) -> FreeComplex {
    let levels: Vec<Vec<u32>> = (0..=m).map(|p| subsets(m, p)).collect();
    // index -p holds subsets of size p
    let terms: Vec<FreeModuleSpec> =
        (0..=m).rev().map(|p| FreeModuleSpec::new(levels[p].iter().map(|&s| twist(s)).collect())).collect();
    let mut diffs = Vec::with_capacity(m);
    for p in (1..=m).rev() {
        let (src, tgt) = (&levels[p], &levels[p - 1]);
        let mut rows = vec![vec![Polynomial::zero(ring); src.len()]; tgt.len()];
        for (c, &s) in src.iter().enumerate() {
            for (k, &i) in members(s).iter().enumerate() {
                let r = tgt.iter().position(|&t| t == s & !(1 << i)).expect("face exists");
                let e = coeff(s, i);
                rows[r][c] = if k % 2 == 0 { e } else { -&e };
            }
        }
        let d = GradedMap::new(
            ring,
            FreeModuleSpec::new(src.iter().map(|&s| twist(s)).collect()),
            FreeModuleSpec::new(tgt.iter().map(|&s| twist(s)).collect()),
            rows,
        )
        .expect("subset complexes are homogeneous");
        diffs.push(d);
    }
    FreeComplex::assemble(ring, -(m as i32), terms, diffs)
}

/// The Koszul complex on `elems`, placed in indices `[-c, 0]`.
pub fn koszul_complex(ring: &Ring, elems: &[Polynomial]) -> Result<FreeComplex> {
    if elems.is_empty() {
        return Err(Error::InvalidComplex("Koszul complex needs at least one element".into()));
    }
    let mut degrees = Vec::with_capacity(elems.len());
    for e in elems {
        ring.ensure_same(e.ring())?;
        if e.is_zero() {
            return Err(Error::ZeroElement);
        }
        if !e.is_homogeneous() {
            return Err(Error::InhomogeneousElement);
        }
        degrees.push(e.degree().unwrap() as i32);
    }
    if elems.len() > 16 {
        return Err(Error::InvalidComplex("too many Koszul elements".into()));
    }
    let twist = |s: u32| members(s).iter().map(|&i| degrees[i]).sum();
    Ok(subset_complex(ring, elems.len(), twist, |_, i| elems[i].clone()))
}

/// The Taylor resolution of `A / (gens)` for monomial generators, in indices `[-m, 0]`.
pub fn taylor_complex(ring: &Ring, gens: &[Monomial]) -> Result<FreeComplex> {
    if gens.is_empty() {
        return Err(Error::InvalidComplex("Taylor complex needs at least one monomial".into()));
    }
    if gens.len() > 16 {
        return Err(Error::InvalidComplex("too many Taylor generators".into()));
    }
    if gens.iter().any(|g| g.nvars() != ring.nvars()) {
        return Err(Error::RingMismatch);
    }
    let lcm = |s: u32| members(s).iter().fold(ring.one_monomial(), |acc, &i| acc.lcm(&gens[i]));
    let twist = |s: u32| lcm(s).degree() as i32;
    let coeff = |s: u32, i: usize| {
        let q = lcm(s & !(1 << i)).quotient_of(&lcm(s));
        Polynomial::monomial(ring, q, 1)
    };
    Ok(subset_complex(ring, gens.len(), twist, coeff))
}

/// `X[k]`: `(X[k])^i = X^{i+k}`, differentials multiplied by `(-1)^k`.
pub fn shift(x: &FreeComplex, k: i32) -> FreeComplex {
    if x.is_zero_complex() {
        return x.clone();
    }
    let negate = k.rem_euclid(2) == 1;
    FreeComplex {
        ring: x.ring.clone(),
        lo: x.lo - k,
        terms: x.terms.clone(),
        diffs: x.diffs.iter().map(|d| d.signed(negate)).collect(),
    }
}

/// Termwise direct sum with block-diagonal differentials.
pub fn direct_sum(x: &FreeComplex, y: &FreeComplex) -> Result<FreeComplex> {
    x.ring.ensure_same(&y.ring)?;
    if x.is_zero_complex() {
        return Ok(y.clone());
    }
    if y.is_zero_complex() {
        return Ok(x.clone());
    }
    let lo = x.lo().min(y.lo());
    let hi = x.hi().max(y.hi());
    let terms = (lo..=hi).map(|i| x.term(i).direct_sum(&y.term(i))).collect();
    let diffs = (lo..hi).map(|i| GradedMap::diag(&x.diff(i), &y.diff(i))).collect();
    Ok(FreeComplex::assemble(&x.ring, lo, terms, diffs))
}

/// `Hom_A(X, A)`: `(X*)^i = (X^{-i})*` with differential `(-1)^{i+1} (d_X^{-i-1})^T`.
pub fn hom_dual(x: &FreeComplex) -> FreeComplex {
    if x.is_zero_complex() {
        return x.clone();
    }
    let (lo, hi) = (-x.hi(), -x.lo());
    let terms = (lo..=hi).map(|i| x.term(-i).negated()).collect();
    let diffs = (lo..hi).map(|i| x.diff(-i - 1).dual().signed((i + 1).rem_euclid(2) == 1)).collect();
    FreeComplex::assemble(&x.ring, lo, terms, diffs)
}
