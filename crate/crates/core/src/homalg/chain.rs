use std::collections::BTreeMap;

use crate::algebra::Polynomial;
use crate::error::{Error, Result};

use super::complex::FreeComplex;
use super::map::GradedMap;

/// A morphism of complexes `f : X -> Y` given by degree-0 components `f^i`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    source: FreeComplex,
    target: FreeComplex,
    comps: BTreeMap<i32, GradedMap>,
}

impl ChainMap {
    /// Validates shapes and `d_Y ∘ f = f ∘ d_X`; missing components are zero.
    pub fn new(source: &FreeComplex, target: &FreeComplex, comps: BTreeMap<i32, GradedMap>) -> Result<Self> {
        source.ring().ensure_same(target.ring())?;
        for (&i, f) in &comps {
            if f.source() != &source.term(i) || f.target() != &target.term(i) {
                return Err(Error::InvalidChainMap(format!("component {i} has the wrong shape")));
            }
        }
        let map = ChainMap { source: source.clone(), target: target.clone(), comps };
        let lo = source.lo().min(target.lo()) - 1;
        let hi = source.hi().max(target.hi()) + 1;
        for i in lo..=hi {
            let left = target.diff(i).compose(&map.component(i))?;
            let right = map.component(i + 1).compose(&source.diff(i))?;
            if left != right {
                return Err(Error::InvalidChainMap(format!("does not commute with d^{i}")));
            }
        }
        Ok(map)
    }

    pub fn identity(x: &FreeComplex) -> Self {
        let comps = x.indices().map(|i| (i, GradedMap::identity(x.ring(), &x.term(i)))).collect();
        ChainMap { source: x.clone(), target: x.clone(), comps }
    }

    pub fn zero(source: &FreeComplex, target: &FreeComplex) -> Self {
        ChainMap { source: source.clone(), target: target.clone(), comps: BTreeMap::new() }
    }

    /// `d_Y h + h d_X` for a family `h^i : X^i -> Y^{i-1}`; always a chain map.
    pub fn null_homotopic(source: &FreeComplex, target: &FreeComplex, h: &BTreeMap<i32, GradedMap>) -> Result<Self> {
        let ring = source.ring();
        let hmap = |i: i32| match h.get(&i) {
            Some(m) => m.clone(),
            None => GradedMap::zero(ring, source.term(i), target.term(i - 1)),
        };
        for (&i, m) in h {
            if m.source() != &source.term(i) || m.target() != &target.term(i - 1) {
                return Err(Error::InvalidChainMap(format!("homotopy component {i} has the wrong shape")));
            }
        }
        let lo = source.lo().min(target.lo());
        let hi = source.hi().max(target.hi());
        let mut comps = BTreeMap::new();
        for i in lo..=hi {
            let a = target.diff(i - 1).compose(&hmap(i))?;
            let b = hmap(i + 1).compose(&source.diff(i))?;
            let f = a.checked_add(&b)?;
            if f.rows() > 0 && f.cols() > 0 {
                comps.insert(i, f);
            }
        }
        ChainMap::new(source, target, comps)
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn component(&self, i: i32) -> GradedMap {
        match self.comps.get(&i) {
            Some(f) => f.clone(),
            None => GradedMap::zero(self.source.ring(), self.source.term(i), self.target.term(i)),
        }
    }

    pub fn checked_add(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::InvalidChainMap("sum of maps between different complexes".into()));
        }
        let mut comps = BTreeMap::new();
        for i in self.source.indices() {
            comps.insert(i, self.component(i).checked_add(&other.component(i))?);
        }
        Ok(ChainMap { source: self.source.clone(), target: self.target.clone(), comps })
    }
}

/// Multiplication by a homogeneous `f` of degree `e`, as a map `X -> X(-e)`:
/// the target has every twist lowered by `e` so the components have degree 0.
pub fn mult_chain_map(x: &FreeComplex, f: &Polynomial) -> Result<ChainMap> {
    x.ring().ensure_same(f.ring())?;
    if f.is_zero() {
        return Ok(ChainMap::zero(x, x));
    }
    if !f.is_homogeneous() {
        return Err(Error::InhomogeneousElement);
    }
    let e = f.degree().unwrap() as i32;
    let target = x.twisted(-e);
    let mut comps = BTreeMap::new();
    for i in x.indices() {
        let mut m = GradedMap::zero(x.ring(), x.term(i), target.term(i));
        for k in 0..x.rank(i) {
            *m.entry_mut(k, k) = f.clone();
        }
        comps.insert(i, m);
    }
    Ok(ChainMap { source: x.clone(), target, comps })
}

/// `cone(f)^i = Y^i ⊕ X^{i+1}` with differential `[[d_Y, f], [0, -d_X]]`.
pub fn cone(f: &ChainMap) -> FreeComplex {
    let (x, y) = (&f.source, &f.target);
    let ring = x.ring();
    if x.is_zero_complex() && y.is_zero_complex() {
        return FreeComplex::zero(ring);
    }
    let lo = if x.is_zero_complex() { y.lo() } else if y.is_zero_complex() { x.lo() - 1 } else { y.lo().min(x.lo() - 1) };
    let hi = if x.is_zero_complex() { y.hi() } else if y.is_zero_complex() { x.hi() - 1 } else { y.hi().max(x.hi() - 1) };
    let terms = (lo..=hi).map(|i| y.term(i).direct_sum(&x.term(i + 1))).collect();
    let diffs = (lo..hi)
        .map(|i| {
            let zero = GradedMap::zero(ring, y.term(i), x.term(i + 2));
            GradedMap::block(&y.diff(i), &f.component(i + 1), &zero, &x.diff(i + 1).signed(true))
        })
        .collect();
    FreeComplex::assemble(ring, lo, terms, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Ring};
    use crate::homalg::{direct_sum, koszul_complex, shift};

    fn setup() -> (Ring, FreeComplex) {
        let r = Ring::with_char(&["x", "y"], 32003).unwrap();
        let vars: Vec<Polynomial> = (0..2).map(|i| Polynomial::var(&r, i)).collect();
        let k = koszul_complex(&r, &vars).unwrap();
        (r, k)
    }

    #[test]
    fn multiplication_maps_commute() {
        let (r, k) = setup();
        let f = parse_polynomial("x^2 + y^2", &r).unwrap();
        let m = mult_chain_map(&k, &f).unwrap();
        assert!(ChainMap::new(m.source(), m.target(), m.comps.clone()).is_ok());
        assert_eq!(m.target().term(0).twists, vec![-2]);
        let one = mult_chain_map(&k, &Polynomial::one(&r)).unwrap();
        assert_eq!(one.comps, ChainMap::identity(&k).comps);
        let inhom = parse_polynomial("x + 1", &r).unwrap();
        assert!(matches!(mult_chain_map(&k, &inhom), Err(Error::InhomogeneousElement)));
    }

    #[test]
    fn cone_of_zero_map_is_sum() {
        let (_, k) = setup();
        let c = cone(&ChainMap::zero(&k, &k));
        assert_eq!(c, direct_sum(&k, &shift(&k, 1)).unwrap());
    }

    #[test]
    fn cones_square_to_zero() {
        let (r, k) = setup();
        let x = Polynomial::var(&r, 0);
        let c = cone(&mult_chain_map(&k, &x).unwrap());
        assert!(c.is_valid());
        assert_eq!(c.ranks(), vec![(-3, 1), (-2, 3), (-1, 3), (0, 1)]);
        assert!(cone(&ChainMap::identity(&k)).is_valid());
    }

    #[test]
    fn non_commuting_map_rejected() {
        let (r, k) = setup();
        let mut comps = BTreeMap::new();
        comps.insert(0, GradedMap::identity(&r, &k.term(0)));
        assert!(matches!(ChainMap::new(&k, &k, comps), Err(Error::InvalidChainMap(_))));
    }

    #[test]
    fn null_homotopic_maps_commute() {
        let (r, k) = setup();
        let p = |s| parse_polynomial(s, &r).unwrap();
        let y = k.twisted(-2);
        let mut h = BTreeMap::new();
        h.insert(-1, GradedMap::new(&r, k.term(-1), y.term(-2), vec![vec![p("x"), p("y")]]).unwrap());
        h.insert(0, GradedMap::new(&r, k.term(0), y.term(-1), vec![vec![p("y")], vec![p("x")]]).unwrap());
        let f = ChainMap::null_homotopic(&k, &y, &h).unwrap();
        assert!(!f.component(0).is_zero());
    }
}
