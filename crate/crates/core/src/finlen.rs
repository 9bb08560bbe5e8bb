//! Finite-length quotients expanded over a monomial basis, and homology
//! lengths of free complexes against them.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use crate::algebra::{Monomial, Polynomial, Ring};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::groebner::engine::GbEngine;
use crate::groebner::{cmp_terms, ideal_power, Ideal, ModTerm, ModVector, PresentedModule};
use crate::homalg::{hom_dual, FreeComplex};
use crate::linalg::{rank, SparseVec};

type Action = Arc<Vec<SparseVec>>;

/// `M / I^n M` (or any finite-length module) with an explicit `k`-basis of
/// standard terms.
pub struct FiniteQuotient {
    ring: Ring,
    parent: PresentedModule,
    ideal: Vec<Polynomial>,
    power: u32,
    engine: GbEngine,
    max_degree: Option<i32>,
    basis: Vec<(Monomial, usize)>,
    degrees: Vec<i32>,
    index: HashMap<(Monomial, usize), usize>,
    actions: RwLock<HashMap<Monomial, Action>>,
}

impl std::fmt::Debug for FiniteQuotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteQuotient")
            .field("power", &self.power)
            .field("dimension", &self.dimension())
            .finish()
    }
}

impl FiniteQuotient {
    /// Expands `M / I^n M`; fails with `NotFiniteLength` when that quotient is infinite.
    pub fn new(m: &PresentedModule, ideal: &[Polynomial], n: u32) -> Result<Self> {
        let ring = m.ring().clone();
        for g in ideal {
            ring.ensure_same(g.ring())?;
        }
        let socle = Ideal::new(&ring, ideal.to_vec())?.socle_bound();
        let max_degree = match socle {
            // m^s ⊆ I puts every term of degree >= s*n + twist into I^n M
            Some(s) => m.ambient().twists.iter().max().map(|t| (s * n) as i32 + t - 1),
            None => {
                let dim = m.quotient_by_ideal(ideal)?.krull_dim();
                if dim > 0 {
                    return Err(Error::NotFiniteLength(dim));
                }
                None
            }
        };
        let mut rels: Vec<ModVector> = m.relations().to_vec();
        let rank = m.ambient().rank();
        for g in ideal_power(ideal, n) {
            for j in 0..rank {
                rels.push(ModVector::from_poly(&g).embed(rank, j));
            }
        }
        Self::build(m.clone(), ideal.to_vec(), n, rels, max_degree)
    }

    /// A finite-length module taken as it is.
    pub fn of_module(m: &PresentedModule) -> Result<Self> {
        let dim = m.krull_dim();
        if dim > 0 {
            return Err(Error::NotFiniteLength(dim));
        }
        Self::build(m.clone(), Vec::new(), 0, m.relations().to_vec(), None)
    }

    fn build(
        parent: PresentedModule,
        ideal: Vec<Polynomial>,
        power: u32,
        rels: Vec<ModVector>,
        max_degree: Option<i32>,
    ) -> Result<Self> {
        let ring = parent.ring().clone();
        let amb = parent.ambient();
        let mut engine = GbEngine::new(ring.field(), amb.twists.clone(), false, max_degree);
        for r in rels {
            engine.push_input(r.into_terms(), Vec::new());
        }
        engine.run(None);

        let d = ring.nvars();
        let mut basis = Vec::new();
        for (pos, &tw) in amb.twists.iter().enumerate() {
            let mut stack = vec![Monomial::one(d)];
            while let Some(mon) = stack.pop() {
                let deg = mon.degree() as i32 + tw;
                if max_degree.is_some_and(|m| deg > m) {
                    continue;
                }
                if engine.find_reducer(&ModTerm { mon, pos, coeff: 1 }).is_some() {
                    continue;
                }
                basis.push((mon, pos));
                let last = (0..d).rev().find(|&k| mon.exp(k) > 0).unwrap_or(0);
                stack.extend((last..d).map(|i| mon.mul(&Monomial::var(d, i))));
            }
        }
        basis.sort_by(|a, b| {
            cmp_terms(&ModTerm { mon: a.0, pos: a.1, coeff: 1 }, &ModTerm { mon: b.0, pos: b.1, coeff: 1 })
        });
        let degrees = basis.iter().map(|(m, p)| m.degree() as i32 + amb.twists[*p]).collect();
        let index = basis.iter().enumerate().map(|(k, t)| (*t, k)).collect();
        Ok(FiniteQuotient {
            ring,
            parent,
            ideal,
            power,
            engine,
            max_degree,
            basis,
            degrees,
            index,
            actions: RwLock::new(HashMap::new()),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn parent(&self) -> &PresentedModule {
        &self.parent
    }

    pub fn ideal(&self) -> &[Polynomial] {
        &self.ideal
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Standard terms `(monomial, position)`, increasing in the module order.
    pub fn basis(&self) -> &[(Monomial, usize)] {
        &self.basis
    }

    /// Internal degree of each basis element.
    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    /// Coordinates of `u * b_j` for every basis element `b_j`.
    fn monomial_action(&self, u: &Monomial) -> Action {
        if let Some(a) = self.actions.read().expect("cache lock").get(u) {
            return a.clone();
        }
        let twists = self.parent.ambient().twists.clone();
        let cols: Vec<SparseVec> = self
            .basis
            .iter()
            .map(|&(mon, pos)| {
                let prod = u.mul(&mon);
                if self.max_degree.is_some_and(|m| prod.degree() as i32 + twists[pos] > m) {
                    return Vec::new();
                }
                let (rem, _) = self.engine.reduce(vec![ModTerm { mon: prod, pos, coeff: 1 }], Vec::new());
                let mut v: SparseVec = rem.iter().map(|t| (self.index[&(t.mon, t.pos)], t.coeff)).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let a = Arc::new(cols);
        self.actions.write().expect("cache lock").entry(*u).or_insert(a).clone()
    }

    /// Coordinates of `p * b_j`.
    pub fn multiply_basis(&self, p: &Polynomial, j: usize) -> SparseVec {
        let f = self.ring.field();
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for (mon, c) in p.terms() {
            let a = self.monomial_action(mon);
            for &(k, v) in &a[j] {
                let e = acc.entry(k).or_insert(0);
                *e = f.add(*e, f.mul(*c, v));
            }
        }
        acc.into_iter().filter(|&(_, v)| v != 0).collect()
    }

    /// Dense matrix of multiplication by `p`; column `j` is `p * b_j`.
    pub fn multiplication_matrix(&self, p: &Polynomial) -> Vec<Vec<u32>> {
        let n = self.dimension();
        let mut m = vec![vec![0u32; n]; n];
        for (j, col) in (0..n).map(|j| (j, self.multiply_basis(p, j))) {
            for (k, v) in col {
                m[k][j] = v;
            }
        }
        m
    }
}

/// `ℓ(H^i)` by cohomological index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LengthTable {
    entries: BTreeMap<i32, u64>,
}

impl LengthTable {
    pub fn get(&self, i: i32) -> u64 {
        self.entries.get(&i).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<i32, u64> {
        &self.entries
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (i32, u64)>) -> Self {
        LengthTable { entries: entries.into_iter().collect() }
    }
}

/// Rank of `F ⊗ N -> G ⊗ N` for a matrix `entry(r, c)` between free modules
/// with the given twists, computed per internal-degree block.
fn expanded_rank<'a>(
    n: &FiniteQuotient,
    src_twists: &[i32],
    rows: usize,
    entry: impl Fn(usize, usize) -> &'a Polynomial + Sync,
    exec: Execution,
) -> usize {
    let dim = n.dimension();
    let mut blocks: BTreeMap<i32, Vec<(usize, usize)>> = BTreeMap::new();
    for (c, tw) in src_twists.iter().enumerate() {
        for j in 0..dim {
            blocks.entry(tw + n.degrees[j]).or_default().push((c, j));
        }
    }
    let blocks: Vec<Vec<(usize, usize)>> = blocks.into_values().collect();
    let ranks = exec.map(blocks, |block| {
        let images = block.into_iter().map(|(c, j)| {
            let mut v: SparseVec = Vec::new();
            for r in 0..rows {
                let p = entry(r, c);
                if !p.is_zero() {
                    v.extend(n.multiply_basis(p, j).into_iter().map(|(k, x)| (r * dim + k, x)));
                }
            }
            v
        });
        rank(n.ring.field(), images)
    });
    ranks.into_iter().sum()
}

fn lengths_from_ranks(x: &FreeComplex, n: &FiniteQuotient, ranks: &BTreeMap<i32, usize>) -> LengthTable {
    let dim = n.dimension();
    let mut table = BTreeMap::new();
    let (mut euler_h, mut euler_c) = (0i64, 0i64);
    for i in x.indices() {
        let size = x.rank(i) * dim;
        let r_out = ranks.get(&i).copied().unwrap_or(0);
        let r_in = ranks.get(&(i - 1)).copied().unwrap_or(0);
        assert!(r_out + r_in <= size, "ranks exceed the term dimension at index {i}");
        let h = (size - r_out - r_in) as u64;
        let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
        euler_h += sign * h as i64;
        euler_c += sign * size as i64;
        table.insert(i, h);
    }
    assert_eq!(euler_h, euler_c, "Euler characteristic not conserved");
    LengthTable { entries: table }
}

/// `ℓ(H^i(X ⊗ N))` for every `i`, using the default execution strategy.
pub fn complex_homology_lengths(x: &FreeComplex, n: &FiniteQuotient) -> Result<LengthTable> {
    complex_homology_lengths_with(x, n, Execution::default())
}

pub fn complex_homology_lengths_with(x: &FreeComplex, n: &FiniteQuotient, exec: Execution) -> Result<LengthTable> {
    x.ring().ensure_same(n.ring())?;
    let mut ranks = BTreeMap::new();
    for i in x.lo()..x.hi() {
        let d = x.diff(i);
        ranks.insert(i, expanded_rank(n, &d.source().twists, d.rows(), |r, c| d.entry(r, c), exec));
    }
    Ok(lengths_from_ranks(x, n, &ranks))
}

/// `ℓ(H^i(Hom(X, N)))`, computed as homology of `X* ⊗ N`.
pub fn hom_homology_lengths(x: &FreeComplex, n: &FiniteQuotient) -> Result<LengthTable> {
    complex_homology_lengths(&hom_dual(x), n)
}

/// `ℓ(H^i(Hom(X, N)))` from the Hom complex itself: `Hom^i = Hom(X^{-i}, N)`
/// with `φ ↦ φ ∘ d^{-i-1}`, so the expanded matrices are transposes.
pub fn hom_homology_lengths_direct(x: &FreeComplex, n: &FiniteQuotient) -> Result<LengthTable> {
    x.ring().ensure_same(n.ring())?;
    if x.is_zero_complex() {
        return Ok(LengthTable::default());
    }
    let exec = Execution::default();
    let dim = n.dimension();
    let mut ranks = BTreeMap::new();
    for i in -x.hi()..-x.lo() {
        let d = x.diff(-i - 1);
        // Hom(A(-t), N) = N(t): generator a of Hom^i sits in degree -t_a
        let src: Vec<i32> = d.target().twists.iter().map(|t| -t).collect();
        ranks.insert(i, expanded_rank(n, &src, d.cols(), |r, c| d.entry(c, r), exec));
    }
    let mut table = BTreeMap::new();
    for i in -x.hi()..=-x.lo() {
        let size = x.rank(-i) * dim;
        let r_out = ranks.get(&i).copied().unwrap_or(0);
        let r_in = ranks.get(&(i - 1)).copied().unwrap_or(0);
        table.insert(i, (size - r_out - r_in) as u64);
    }
    Ok(LengthTable { entries: table })
}

/// Dimension of `{v ∈ N : e v = 0 for all e in elems}`; `dim N` for no elements.
pub fn annihilator_dim(n: &FiniteQuotient, elems: &[Polynomial]) -> usize {
    let dim = n.dimension();
    if elems.is_empty() {
        return dim;
    }
    let zero_twists = vec![0; 1];
    let stacked = |r: usize, _c: usize| &elems[r];
    dim - expanded_rank(n, &zero_twists, elems.len(), stacked, Execution::default())
}

/// `ℓ(I^{n-1} M / I^n M)`.
pub fn graded_piece_length(m: &PresentedModule, ideal: &[Polynomial], n: u32) -> Result<u64> {
    let hi = FiniteQuotient::new(m, ideal, n)?.dimension() as u64;
    let lo = if n <= 1 { 0 } else { FiniteQuotient::new(m, ideal, n - 1)?.dimension() as u64 };
    Ok(hi - lo)
}
