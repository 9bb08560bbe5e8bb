use super::engine::GbEngine;
use super::module::{FreeModuleSpec, ModTerm, ModVector};
use crate::algebra::Ring;
use crate::error::{Error, Result};

/// A reduced Groebner basis of a graded submodule of a free module.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Ring,
    ambient: FreeModuleSpec,
    pub(crate) engine: GbEngine,
    generators: Vec<ModVector>,
}

pub(crate) fn check_homogeneous(gens: &[ModVector], ambient: &FreeModuleSpec, ring: &Ring) -> Result<()> {
    for g in gens {
        ring.ensure_same(g.ring())?;
        if g.rank() != ambient.rank() {
            return Err(Error::AmbientMismatch);
        }
        if !g.is_homogeneous_in(ambient) {
            return Err(Error::InhomogeneousInput(format!("{g:?}")));
        }
    }
    Ok(())
}

/// Computes a reduced Groebner basis of the submodule generated by `gens`.
pub fn buchberger(ring: &Ring, gens: &[ModVector], ambient: &FreeModuleSpec) -> Result<GroebnerBasis> {
    check_homogeneous(gens, ambient, ring)?;
    let mut engine = GbEngine::new(ring.field(), ambient.twists.clone(), false, None);
    for g in gens {
        engine.push_input(g.terms().to_vec(), Vec::new());
    }
    engine.run(None);
    Ok(GroebnerBasis::from_engine(ring, ambient, engine))
}

impl GroebnerBasis {
    pub(crate) fn from_engine(ring: &Ring, ambient: &FreeModuleSpec, engine: GbEngine) -> Self {
        let generators = engine
            .reduced_basis()
            .into_iter()
            .map(|(terms, _)| ModVector::from_sorted(ring, ambient.rank(), terms))
            .collect();
        GroebnerBasis { ring: ring.clone(), ambient: ambient.clone(), engine, generators }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModuleSpec {
        &self.ambient
    }

    pub fn generators(&self) -> &[ModVector] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Leading terms `(monomial, position)` of the basis.
    pub fn leading_terms(&self) -> Vec<ModTerm> {
        self.generators.iter().map(|g| *g.lead().expect("nonzero")).collect()
    }

    /// True when the term is divisible by a leading term (i.e. not standard).
    pub fn is_reducible(&self, t: &ModTerm) -> bool {
        self.engine.find_reducer(t).is_some()
    }

    /// Whether the module is the whole ambient (some lead term is a unit vector).
    pub fn contains_unit_vector(&self, pos: usize) -> bool {
        self.generators
            .iter()
            .any(|g| g.lead().is_some_and(|t| t.pos == pos && t.mon.is_one()))
    }

    /// Every S-pair of same-position generators reduces to zero.
    pub fn verify_s_pairs(&self) -> bool {
        let e = &self.engine;
        let n = e.elems.len();
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (e.elems[i].lead(), e.elems[j].lead());
                if a.pos != b.pos {
                    continue;
                }
                let lcm = a.mon.lcm(&b.mon);
                let (s, _) = e.spoly(i, j, &lcm);
                if !e.reduce(s, Vec::new()).0.is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Remainder of `v` modulo the basis; zero iff `v` lies in the submodule.
pub fn normal_form(v: &ModVector, gb: &GroebnerBasis) -> Result<ModVector> {
    gb.ring.ensure_same(v.ring())?;
    if v.rank() != gb.ambient.rank() {
        return Err(Error::AmbientMismatch);
    }
    let (rem, _) = gb.engine.reduce(v.terms().to_vec(), Vec::new());
    Ok(ModVector::from_sorted(&gb.ring, gb.ambient.rank(), rem))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;

    fn setup() -> (Ring, impl Fn(&str) -> ModVector) {
        let r = Ring::with_char(&["x", "y"], 32003).unwrap();
        let rc = r.clone();
        (r, move |s: &str| ModVector::from_poly(&parse_polynomial(s, &rc).unwrap()))
    }

    #[test]
    fn variables_are_a_basis() {
        let (r, v) = setup();
        let gb = buchberger(&r, &[v("x"), v("y")], &FreeModuleSpec::free(1)).unwrap();
        assert_eq!(gb.len(), 2);
        assert!(normal_form(&v("x^2*y"), &gb).unwrap().is_zero());
        assert_eq!(normal_form(&v("1"), &gb).unwrap(), v("1"));
    }

    #[test]
    fn s_pair_completion_produces_y_cubed() {
        let (r, v) = setup();
        let gb = buchberger(&r, &[v("x^2"), v("x*y + y^2")], &FreeModuleSpec::free(1)).unwrap();
        assert!(gb.generators().contains(&v("y^3")));
        assert!(gb.verify_s_pairs());
    }

    #[test]
    fn empty_generators() {
        let (r, v) = setup();
        let gb = buchberger(&r, &[], &FreeModuleSpec::free(1)).unwrap();
        assert!(gb.is_empty());
        assert_eq!(normal_form(&v("x"), &gb).unwrap(), v("x"));
    }

    #[test]
    fn inhomogeneous_rejected() {
        let (r, v) = setup();
        assert!(matches!(
            buchberger(&r, &[v("x + 1")], &FreeModuleSpec::free(1)),
            Err(Error::InhomogeneousInput(_))
        ));
    }

    #[test]
    fn self_membership() {
        let (r, v) = setup();
        let g = v("x^3 - 2*x*y^2 + y^3");
        let gb = buchberger(&r, std::slice::from_ref(&g), &FreeModuleSpec::free(1)).unwrap();
        assert!(normal_form(&g, &gb).unwrap().is_zero());
    }

    #[test]
    fn module_basis_in_rank_two() {
        let (r, _) = setup();
        let p = |s| parse_polynomial(s, &r).unwrap();
        let amb = FreeModuleSpec::free(2);
        let a = ModVector::from_components(&r, &[p("x"), p("y")]).unwrap();
        let b = ModVector::from_components(&r, &[p("y"), p("x")]).unwrap();
        let gb = buchberger(&r, &[a.clone(), b.clone()], &amb).unwrap();
        assert!(gb.verify_s_pairs());
        let combo = a.mul_poly(&p("x")).checked_add(&b.mul_poly(&p("y^2"))).unwrap();
        assert!(normal_form(&combo, &gb).unwrap().is_zero());
        let outside = ModVector::from_components(&r, &[p("x"), p("0")]).unwrap();
        assert!(!normal_form(&outside, &gb).unwrap().is_zero());
    }
}
