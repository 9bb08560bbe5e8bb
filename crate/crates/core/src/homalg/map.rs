use crate::algebra::{Polynomial, Ring};
use crate::error::{Error, Result};
use crate::groebner::{FreeModuleSpec, ModTerm, ModVector};

/// A degree-preserving map of graded free modules, stored as a dense
/// `target.rank x source.rank` matrix.
///
/// Entry `(r, c)` is zero or homogeneous of degree
/// `source.twists[c] - target.twists[r]`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMap {
    ring: Ring,
    source: FreeModuleSpec,
    target: FreeModuleSpec,
    entries: Vec<Polynomial>,
}

impl GradedMap {
    /// Builds a map from its rows and validates the degree convention.
    pub fn new(
        ring: &Ring,
        source: FreeModuleSpec,
        target: FreeModuleSpec,
        rows: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if rows.len() != target.rank() || rows.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::InvalidComplex(format!(
                "matrix shape does not match {}x{}",
                target.rank(),
                source.rank()
            )));
        }
        let entries: Vec<Polynomial> = rows.into_iter().flatten().collect();
        let map = GradedMap { ring: ring.clone(), source, target, entries };
        for r in 0..map.rows() {
            for c in 0..map.cols() {
                let p = map.entry(r, c);
                ring.ensure_same(p.ring())?;
                if p.is_zero() {
                    continue;
                }
                let want = map.source.twists[c] - map.target.twists[r];
                if !p.is_homogeneous() || p.degree().map(|d| d as i32) != Some(want) {
                    return Err(Error::InhomogeneousInput(format!(
                        "entry ({r},{c}) = {p} should have degree {want}"
                    )));
                }
            }
        }
        Ok(map)
    }

    pub(crate) fn from_entries(
        ring: &Ring,
        source: FreeModuleSpec,
        target: FreeModuleSpec,
        entries: Vec<Polynomial>,
    ) -> Self {
        debug_assert_eq!(entries.len(), source.rank() * target.rank());
        GradedMap { ring: ring.clone(), source, target, entries }
    }

    pub fn zero(ring: &Ring, source: FreeModuleSpec, target: FreeModuleSpec) -> Self {
        let entries = vec![Polynomial::zero(ring); source.rank() * target.rank()];
        GradedMap { ring: ring.clone(), source, target, entries }
    }

    pub fn identity(ring: &Ring, spec: &FreeModuleSpec) -> Self {
        let n = spec.rank();
        let mut m = GradedMap::zero(ring, spec.clone(), spec.clone());
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one(ring);
        }
        m
    }

    /// The map whose column `c` is the image of `e_c`.
    pub fn from_columns(
        ring: &Ring,
        source: FreeModuleSpec,
        target: FreeModuleSpec,
        columns: &[ModVector],
    ) -> Result<Self> {
        if columns.len() != source.rank() || columns.iter().any(|v| v.rank() != target.rank()) {
            return Err(Error::AmbientMismatch);
        }
        let rows = (0..target.rank())
            .map(|r| columns.iter().map(|v| v.component(r)).collect())
            .collect();
        GradedMap::new(ring, source, target, rows)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn source(&self) -> &FreeModuleSpec {
        &self.source
    }

    pub fn target(&self) -> &FreeModuleSpec {
        &self.target
    }

    pub fn rows(&self) -> usize {
        self.target.rank()
    }

    pub fn cols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols() + c]
    }

    pub(crate) fn entry_mut(&mut self, r: usize, c: usize) -> &mut Polynomial {
        let cols = self.cols();
        &mut self.entries[r * cols + c]
    }

    pub fn to_rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.rows()).map(|r| (0..self.cols()).map(|c| self.entry(r, c).clone()).collect()).collect()
    }

    /// Image of `e_c` as a vector of the target.
    pub fn column(&self, c: usize) -> ModVector {
        let mut terms = Vec::new();
        for r in 0..self.rows() {
            for &(mon, coeff) in self.entry(r, c).terms() {
                terms.push(ModTerm { mon, pos: r, coeff });
            }
        }
        ModVector::from_terms(&self.ring, self.rows(), terms)
    }

    pub fn columns(&self) -> Vec<ModVector> {
        (0..self.cols()).map(|c| self.column(c)).collect()
    }

    /// Applies the map to a vector of the source.
    pub fn apply(&self, v: &ModVector) -> Result<ModVector> {
        if v.rank() != self.cols() {
            return Err(Error::AmbientMismatch);
        }
        let mut acc = ModVector::zero(&self.ring, self.rows());
        for c in 0..self.cols() {
            let p = v.component(c);
            if !p.is_zero() {
                acc = acc.add_mul(&p, &self.column(c))?;
            }
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedMap) -> Result<GradedMap> {
        self.ring.ensure_same(&other.ring)?;
        if other.rows() != self.cols() {
            return Err(Error::AmbientMismatch);
        }
        let mut entries = Vec::with_capacity(self.rows() * other.cols());
        for r in 0..self.rows() {
            for c in 0..other.cols() {
                let mut acc = Polynomial::zero(&self.ring);
                for k in 0..self.cols() {
                    let (a, b) = (self.entry(r, k), other.entry(k, c));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(GradedMap::from_entries(&self.ring, other.source.clone(), self.target.clone(), entries))
    }

    pub fn checked_add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.ring.ensure_same(&other.ring)?;
        if self.source != other.source || self.target != other.target {
            return Err(Error::AmbientMismatch);
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(GradedMap::from_entries(&self.ring, self.source.clone(), self.target.clone(), entries))
    }

    /// Multiplies every entry by `±1`.
    pub fn signed(&self, negate: bool) -> GradedMap {
        if !negate {
            return self.clone();
        }
        let entries = self.entries.iter().map(|p| -p).collect();
        GradedMap::from_entries(&self.ring, self.source.clone(), self.target.clone(), entries)
    }

    /// The transpose between the dual free modules (twists negated).
    pub fn dual(&self) -> GradedMap {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols() {
            for r in 0..self.rows() {
                entries.push(self.entry(r, c).clone());
            }
        }
        GradedMap::from_entries(&self.ring, self.target.negated(), self.source.negated(), entries)
    }

    /// Same matrix with all twists of both modules raised by `by`.
    pub fn twisted(&self, by: i32) -> GradedMap {
        GradedMap::from_entries(&self.ring, self.source.shifted(by), self.target.shifted(by), self.entries.clone())
    }

    /// Block matrix `[[a, b], [c, d]]`; blocks must have matching shapes.
    pub fn block(a: &GradedMap, b: &GradedMap, c: &GradedMap, d: &GradedMap) -> GradedMap {
        debug_assert!(a.rows() == b.rows() && c.rows() == d.rows());
        debug_assert!(a.cols() == c.cols() && b.cols() == d.cols());
        let source = a.source.direct_sum(&b.source);
        let target = a.target.direct_sum(&c.target);
        let (rows, cols) = (target.rank(), source.rank());
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for col in 0..cols {
                let p = match (r < a.rows(), col < a.cols()) {
                    (true, true) => a.entry(r, col),
                    (true, false) => b.entry(r, col - a.cols()),
                    (false, true) => c.entry(r - a.rows(), col),
                    (false, false) => d.entry(r - a.rows(), col - a.cols()),
                };
                entries.push(p.clone());
            }
        }
        GradedMap::from_entries(&a.ring, source, target, entries)
    }

    /// Block diagonal `diag(a, b)`.
    pub fn diag(a: &GradedMap, b: &GradedMap) -> GradedMap {
        let r = &a.ring;
        GradedMap::block(
            a,
            &GradedMap::zero(r, b.source.clone(), a.target.clone()),
            &GradedMap::zero(r, a.source.clone(), b.target.clone()),
            b,
        )
    }

    /// Position of an entry with nonzero constant term, if any.
    pub fn find_unit(&self) -> Option<(usize, usize)> {
        (0..self.rows())
            .flat_map(|r| (0..self.cols()).map(move |c| (r, c)))
            .find(|&(r, c)| self.entry(r, c).constant_coeff() != 0)
    }

    /// Same map over a ring with the same variables and another characteristic.
    pub fn reinterpret(&self, ring: &Ring) -> Result<GradedMap> {
        let entries = self.entries.iter().map(|p| p.reinterpret(ring)).collect::<Result<_>>()?;
        Ok(GradedMap::from_entries(ring, self.source.clone(), self.target.clone(), entries))
    }
}

impl std::fmt::Debug for GradedMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| r.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "{:?} -> {:?} [{}]", self.source.twists, self.target.twists, rows.join("; "))
    }
}
