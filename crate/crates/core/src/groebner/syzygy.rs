//! Schreyer syzygies and minimal generating sets.

use super::basis::check_homogeneous;
use super::engine::GbEngine;
use super::module::{FreeModuleSpec, ModTerm, ModVector};
use crate::algebra::Ring;
use crate::error::{Error, Result};

/// Generators of the syzygy module of `gens`, living in a free module whose
/// twists are the generator degrees.
///
/// Zero generators have no intrinsic degree, so this variant errors on them;
/// use [`syzygy_basis_with_degrees`] when the degrees are known.
pub fn syzygy_basis(
    ring: &Ring,
    gens: &[ModVector],
    ambient: &FreeModuleSpec,
) -> Result<(FreeModuleSpec, Vec<ModVector>)> {
    let mut degrees = Vec::with_capacity(gens.len());
    for g in gens {
        match g.degree_in(ambient) {
            Some(d) => degrees.push(d),
            None if g.is_zero() => {
                return Err(Error::InhomogeneousInput("zero generator without a degree".into()))
            }
            None => return Err(Error::InhomogeneousInput(format!("{g:?}"))),
        }
    }
    syzygy_basis_with_degrees(ring, gens, ambient, &degrees)
}

/// As [`syzygy_basis`], with generator `k` declared to have degree `degrees[k]`.
pub fn syzygy_basis_with_degrees(
    ring: &Ring,
    gens: &[ModVector],
    ambient: &FreeModuleSpec,
    degrees: &[i32],
) -> Result<(FreeModuleSpec, Vec<ModVector>)> {
    check_homogeneous(gens, ambient, ring)?;
    assert_eq!(gens.len(), degrees.len());
    for (g, &d) in gens.iter().zip(degrees) {
        if let Some(gd) = g.degree_in(ambient) {
            if gd != d {
                return Err(Error::InhomogeneousInput(format!("{g:?} is not of degree {d}")));
            }
        }
    }
    let target = FreeModuleSpec::new(degrees.to_vec());
    let m = gens.len();
    let unit = |k: usize| vec![ModTerm { mon: ring.one_monomial(), pos: k, coeff: 1 }];

    let mut engine = GbEngine::new(ring.field(), ambient.twists.clone(), true, None);
    for (k, g) in gens.iter().enumerate() {
        engine.push_input(g.terms().to_vec(), unit(k));
    }
    engine.run(None);

    let mut syz: Vec<ModVector> = Vec::new();
    let n = engine.elems.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (engine.elems[i].lead(), engine.elems[j].lead());
            if a.pos != b.pos {
                continue;
            }
            let lcm = a.mon.lcm(&b.mon);
            let (s, cof) = engine.spoly(i, j, &lcm);
            let (rem, cof) = engine.reduce(s, cof);
            debug_assert!(rem.is_empty(), "basis is not a Groebner basis");
            if !cof.is_empty() {
                syz.push(ModVector::from_sorted(ring, m, cof));
            }
        }
    }
    for (k, g) in gens.iter().enumerate() {
        let (rem, cof) = engine.reduce(g.terms().to_vec(), unit(k));
        debug_assert!(rem.is_empty());
        if !cof.is_empty() {
            syz.push(ModVector::from_sorted(ring, m, cof));
        }
    }
    let minimal = minimal_generators(ring, &syz, &target)?;
    Ok((target, minimal))
}

/// A minimal homogeneous generating subset of the submodule spanned by `gens`.
///
/// Generators are scanned by increasing degree and kept only when they are not
/// already in the span of the kept ones.
pub fn minimal_generators(ring: &Ring, gens: &[ModVector], ambient: &FreeModuleSpec) -> Result<Vec<ModVector>> {
    check_homogeneous(gens, ambient, ring)?;
    let mut order: Vec<(i32, usize)> = gens
        .iter()
        .enumerate()
        .filter_map(|(k, g)| g.degree_in(ambient).map(|d| (d, k)))
        .collect();
    order.sort();
    let mut engine = GbEngine::new(ring.field(), ambient.twists.clone(), false, None);
    let mut kept = Vec::new();
    for (deg, k) in order {
        engine.run(Some(deg));
        let (rem, _) = engine.reduce(gens[k].terms().to_vec(), Vec::new());
        if !rem.is_empty() {
            kept.push(gens[k].clone());
            engine.push_input(rem, Vec::new());
            engine.run(Some(deg));
        }
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Polynomial};

    fn ring() -> Ring {
        Ring::with_char(&["x", "y"], 32003).unwrap()
    }

    fn polys(r: &Ring, s: &[&str]) -> Vec<ModVector> {
        s.iter().map(|t| ModVector::from_poly(&parse_polynomial(t, r).unwrap())).collect()
    }

    fn apply(syz: &ModVector, gens: &[ModVector], r: &Ring) -> ModVector {
        let mut acc = ModVector::zero(r, gens[0].rank());
        for (k, g) in gens.iter().enumerate() {
            acc = acc.add_mul(&syz.component(k), g).unwrap();
        }
        acc
    }

    #[test]
    fn koszul_relation() {
        let r = ring();
        let gens = polys(&r, &["x", "y"]);
        let (amb, syz) = syzygy_basis(&r, &gens, &FreeModuleSpec::free(1)).unwrap();
        assert_eq!(amb.twists, vec![1, 1]);
        assert_eq!(syz.len(), 1);
        let s = &syz[0];
        let expected = [Polynomial::var(&r, 1), -&Polynomial::var(&r, 0)];
        let scaled = s.scale(r.field().inv(s.component(0).leading_term().unwrap().1));
        assert_eq!(scaled.components(), expected.to_vec());
    }

    #[test]
    fn domain_has_no_syzygies() {
        let r = ring();
        let (_, syz) = syzygy_basis(&r, &polys(&r, &["x"]), &FreeModuleSpec::free(1)).unwrap();
        assert!(syz.is_empty());
    }

    #[test]
    fn squares_of_maximal_ideal() {
        let r = ring();
        let gens = polys(&r, &["x^2", "x*y", "y^2"]);
        let (_, syz) = syzygy_basis(&r, &gens, &FreeModuleSpec::free(1)).unwrap();
        assert_eq!(syz.len(), 2);
        for s in &syz {
            assert!(apply(s, &gens, &r).is_zero());
        }
    }

    #[test]
    fn redundant_and_zero_generators() {
        let r = ring();
        let mut gens = polys(&r, &["x", "x"]);
        gens.push(ModVector::zero(&r, 1));
        let (_, syz) =
            syzygy_basis_with_degrees(&r, &gens, &FreeModuleSpec::free(1), &[1, 1, 5]).unwrap();
        assert_eq!(syz.len(), 2);
        for s in &syz {
            assert!(apply(s, &gens, &r).is_zero());
        }
    }

    #[test]
    fn minimal_generators_drop_redundancy() {
        let r = ring();
        let gens = polys(&r, &["x", "x*y", "y^2", "x + 0", "x*y + y^2"]);
        let kept = minimal_generators(&r, &gens, &FreeModuleSpec::free(1)).unwrap();
        assert_eq!(kept.len(), 2);
    }
}
