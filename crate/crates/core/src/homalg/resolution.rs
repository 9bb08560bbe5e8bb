use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::groebner::{minimal_generators, syzygy_basis, FreeModuleSpec, ModVector, PresentedModule};

use super::complex::FreeComplex;
use super::map::GradedMap;

/// Removes unit entries by Gaussian cancellation.
///
/// For a unit `u` at `(r, c)` of `d^i`, generator `c` of `X^i` and generator
/// `r` of `X^{i+1}` are dropped, and `d^i` becomes `δ - γ u⁻¹ β` on the
/// remaining rows and columns. The result is homotopy equivalent to `X`.
pub fn minimize(x: &FreeComplex) -> FreeComplex {
    let ring = x.ring().clone();
    let f = ring.field();
    let lo = x.lo();
    let mut terms: Vec<FreeModuleSpec> = x.terms().to_vec();
    let mut diffs: Vec<GradedMap> = x.diffs().to_vec();
    let mut k = 0;
    while k < diffs.len() {
        let Some((r, c)) = diffs[k].find_unit() else {
            k += 1;
            continue;
        };
        let d = &diffs[k];
        let uinv = f.inv(d.entry(r, c).constant_coeff());
        let mut entries = Vec::with_capacity((d.rows() - 1) * (d.cols() - 1));
        for rr in (0..d.rows()).filter(|&rr| rr != r) {
            let gamma = d.entry(rr, c);
            for cc in (0..d.cols()).filter(|&cc| cc != c) {
                let delta = d.entry(rr, cc);
                if gamma.is_zero() {
                    entries.push(delta.clone());
                } else {
                    let beta = d.entry(r, cc);
                    entries.push(delta - &(gamma * beta).scale(uinv));
                }
            }
        }
        let src = terms[k].without(c);
        let tgt = terms[k + 1].without(r);
        let new_d = GradedMap::from_entries(&ring, src.clone(), tgt.clone(), entries);
        if k > 0 {
            let prev = &diffs[k - 1];
            let rows: Vec<Polynomial> = (0..prev.rows())
                .filter(|&rr| rr != c)
                .flat_map(|rr| (0..prev.cols()).map(move |cc| (rr, cc)))
                .map(|(rr, cc)| prev.entry(rr, cc).clone())
                .collect();
            diffs[k - 1] = GradedMap::from_entries(&ring, terms[k - 1].clone(), src.clone(), rows);
        }
        if k + 1 < diffs.len() {
            let next = &diffs[k + 1];
            let cols: Vec<Polynomial> = (0..next.rows())
                .flat_map(|rr| (0..next.cols()).filter(|&cc| cc != r).map(move |cc| (rr, cc)))
                .map(|(rr, cc)| next.entry(rr, cc).clone())
                .collect();
            diffs[k + 1] = GradedMap::from_entries(&ring, tgt.clone(), terms[k + 2].clone(), cols);
        }
        diffs[k] = new_d;
        terms[k] = src;
        terms[k + 1] = tgt;
        // the neighbouring differentials only lose a row or a column, so no
        // new units appear behind the scan position
    }
    let out = FreeComplex::assemble(&ring, lo, terms, diffs);
    debug_assert!(out.is_valid());
    out
}

/// A minimal graded free resolution of `l`, placed in indices `[-len, 0]`.
///
/// Fails with `CapExceeded` when more than `cap` syzygy steps are needed.
pub fn free_resolution(l: &PresentedModule, cap: usize) -> Result<FreeComplex> {
    let ring = l.ring().clone();
    let mut specs = vec![l.ambient().clone()];
    let mut maps: Vec<GradedMap> = Vec::new();
    let mut amb = l.ambient().clone();
    let mut cur: Vec<ModVector> = minimal_generators(&ring, l.relations(), &amb)?;
    let mut steps = 0;
    while !cur.is_empty() {
        steps += 1;
        if steps > cap {
            return Err(Error::CapExceeded(cap));
        }
        let degrees: Vec<i32> = cur.iter().map(|v| v.degree_in(&amb).expect("homogeneous")).collect();
        let spec = FreeModuleSpec::new(degrees);
        maps.push(GradedMap::from_columns(&ring, spec.clone(), amb.clone(), &cur)?);
        let (_, syz) = syzygy_basis(&ring, &cur, &amb)?;
        specs.push(spec.clone());
        amb = spec;
        cur = syz;
    }
    specs.reverse();
    maps.reverse();
    let lo = -(specs.len() as i32 - 1);
    let x = FreeComplex::assemble(&ring, lo, specs, maps);
    debug_assert!(x.is_valid());
    Ok(minimize(&x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Monomial, Ring};
    use crate::homalg::{cone, koszul_complex, taylor_complex, ChainMap};

    fn ring(vars: &[&str]) -> Ring {
        Ring::with_char(vars, 32003).unwrap()
    }

    fn betti(x: &FreeComplex) -> Vec<usize> {
        x.indices().rev().map(|i| x.rank(i)).collect()
    }

    #[test]
    fn residue_field_resolution_is_koszul_shaped() {
        let r = ring(&["x", "y"]);
        let res = free_resolution(&PresentedModule::residue_field(&r), 2).unwrap();
        assert_eq!(betti(&res), vec![1, 2, 1]);
        assert_eq!(res.term(-2).twists, vec![2]);
        assert!(res.diffs().iter().all(|d| d.find_unit().is_none()));
    }

    #[test]
    fn squares_of_maximal_ideal() {
        let r = ring(&["x", "y"]);
        let gens: Vec<Polynomial> = ["x^2", "x*y", "y^2"].iter().map(|s| parse_polynomial(s, &r).unwrap()).collect();
        let l = PresentedModule::cyclic(&r, &gens).unwrap();
        let res = free_resolution(&l, 2).unwrap();
        assert_eq!(betti(&res), vec![1, 3, 2]);
        let mons: Vec<Monomial> = gens.iter().map(|g| g.leading_term().unwrap().0).collect();
        let t = taylor_complex(&r, &mons).unwrap();
        assert_eq!(betti(&t), vec![1, 3, 3, 1]);
        assert_eq!(betti(&minimize(&t)), vec![1, 3, 2]);
    }

    #[test]
    fn free_module_resolves_itself() {
        let r = ring(&["x", "y"]);
        let res = free_resolution(&PresentedModule::free(&r, FreeModuleSpec::new(vec![0, 3])), 2).unwrap();
        assert_eq!(res.ranks(), vec![(0, 2)]);
    }

    #[test]
    fn cap_is_enforced() {
        let r = ring(&["x", "y", "z"]);
        assert_eq!(free_resolution(&PresentedModule::residue_field(&r), 2), Err(Error::CapExceeded(2)));
    }

    #[test]
    fn contractible_cone_minimizes_to_zero() {
        let r = ring(&["x", "y"]);
        let vars: Vec<Polynomial> = (0..2).map(|i| Polynomial::var(&r, i)).collect();
        let k = koszul_complex(&r, &vars).unwrap();
        assert!(minimize(&cone(&ChainMap::identity(&k))).is_zero_complex());
        assert_eq!(minimize(&k), k);
    }

    #[test]
    fn redundant_generators_are_cancelled() {
        let r = ring(&["x", "y"]);
        let p = |s| parse_polynomial(s, &r).unwrap();
        // e1 = y e0 makes the module cyclic
        let rel = ModVector::from_components(&r, &[p("y"), p("-1")]).unwrap();
        let extra = ModVector::from_components(&r, &[p("x"), p("0")]).unwrap();
        let l = PresentedModule::new(&r, FreeModuleSpec::new(vec![0, 1]), vec![rel, extra]).unwrap();
        let res = free_resolution(&l, 2).unwrap();
        assert_eq!(betti(&res), vec![1, 1]);
    }
}
