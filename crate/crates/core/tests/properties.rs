//! Invariants of the engine under random inputs.

use hilbtor_core::algebra::{Monomial, Polynomial, Ring};
use hilbtor_core::degfit::{fit_adaptive, fit_degree, FitConfig, FitStatus, Samples};
use hilbtor_core::exec::Execution;
use hilbtor_core::finlen::{complex_homology_lengths_with, FiniteQuotient};
use hilbtor_core::groebner::{buchberger, normal_form, FreeModuleSpec, ModVector, PresentedModule};
use hilbtor_core::homalg::{
    cone, direct_sum, free_resolution, hom_dual, koszul_complex, minimize, mult_chain_map, shift, taylor_complex,
    FreeComplex,
};
use proptest::prelude::*;

const NAMES: [&str; 3] = ["x", "y", "z"];

fn ring(d: usize) -> Ring {
    Ring::with_char(&NAMES[..d], 32003).unwrap()
}

/// A homogeneous polynomial as `(degree, [(variable picks, coefficient)])`.
type PolySpec = (u32, Vec<(Vec<usize>, u32)>);

fn poly_spec(d: usize, max_deg: u32) -> impl Strategy<Value = PolySpec> {
    (1..=max_deg).prop_flat_map(move |deg| {
        let term = (prop::collection::vec(0..d, deg as usize), 1u32..32003);
        (Just(deg), prop::collection::vec(term, 1..=3))
    })
}

fn build(r: &Ring, spec: &PolySpec) -> Polynomial {
    let d = r.nvars();
    let terms = spec
        .1
        .iter()
        .map(|(picks, c)| {
            let mut e = vec![0u32; d];
            for &v in picks {
                e[v] += 1;
            }
            (Monomial::from_exponents(&e), *c)
        })
        .collect();
    Polynomial::from_terms(r, terms)
}

fn ideal_case() -> impl Strategy<Value = (usize, Vec<PolySpec>)> {
    (1usize..=3).prop_flat_map(|d| (Just(d), prop::collection::vec(poly_spec(d, 3), 1..=4)))
}

fn fit_cfg() -> FitConfig {
    FitConfig { n_max: 8, cap: 64, window: 4 }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn groebner_bases_are_closed_under_s_pairs((d, specs) in ideal_case()) {
        let r = ring(d);
        let gens: Vec<ModVector> = specs.iter().map(|s| build(&r, s)).filter(|p| !p.is_zero()).map(|p| ModVector::from_poly(&p)).collect();
        let gb = buchberger(&r, &gens, &FreeModuleSpec::free(1)).unwrap();
        prop_assert!(gb.verify_s_pairs());
        for g in &gens {
            prop_assert!(normal_form(g, &gb).unwrap().is_zero());
        }
    }

    #[test]
    fn constructions_square_to_zero((d, specs) in ideal_case(), k in -2i32..=2) {
        let r = ring(d);
        let elems: Vec<Polynomial> = specs.iter().map(|s| build(&r, s)).filter(|p| !p.is_zero()).collect();
        prop_assume!(!elems.is_empty());
        let kx = koszul_complex(&r, &elems).unwrap();
        let f = elems[0].clone();
        let built = [
            kx.clone(),
            hom_dual(&kx),
            shift(&kx, k),
            direct_sum(&kx, &hom_dual(&kx)).unwrap(),
            cone(&mult_chain_map(&kx, &f).unwrap()),
            minimize(&kx),
        ];
        for x in &built {
            prop_assert!(x.is_valid());
        }
        let l = PresentedModule::cyclic(&r, &elems).unwrap();
        prop_assert!(free_resolution(&l, d).unwrap().is_valid());
    }

    #[test]
    fn cone_is_termwise_split(d in 1usize..=3, gens in prop::collection::vec(prop::collection::vec(0u32..=2, 3), 1..=3), f in poly_spec(3, 2)) {
        let r = ring(d);
        let mons: Vec<Monomial> = gens.iter().map(|e| Monomial::from_exponents(&e[..d])).filter(|m| !m.is_one()).collect();
        prop_assume!(!mons.is_empty());
        let x = taylor_complex(&r, &mons).unwrap();
        let f = (f.0, f.1.into_iter().map(|(picks, c)| (picks.into_iter().map(|v| v % d).collect(), c)).collect());
        let g = mult_chain_map(&x, &build(&r, &f)).unwrap();
        let c = cone(&g);
        for i in (x.lo() - 2)..=(x.hi() + 1) {
            prop_assert_eq!(c.rank(i), g.target().rank(i) + x.rank(i + 1));
        }
    }

    #[test]
    fn taylor_and_minimal_resolution_have_equal_homology(
        d in 2usize..=3,
        gens in prop::collection::vec(prop::collection::vec(0u32..=2, 3), 1..=4),
        n in 1u32..=3,
    ) {
        let r = ring(d);
        let mons: Vec<Monomial> = gens.iter().map(|e| Monomial::from_exponents(&e[..d])).filter(|m| !m.is_one()).collect();
        prop_assume!(!mons.is_empty());
        let taylor = taylor_complex(&r, &mons).unwrap();
        let l = PresentedModule::cyclic(&r, &mons.iter().map(|m| Polynomial::monomial(&r, *m, 1)).collect::<Vec<_>>()).unwrap();
        let minimal = minimize(&free_resolution(&l, d).unwrap());
        let vars: Vec<Polynomial> = (0..d).map(|i| Polynomial::var(&r, i)).collect();
        let q = FiniteQuotient::new(&PresentedModule::ring_module(&r), &vars, n).unwrap();
        let a = complex_homology_lengths_with(&taylor, &q, Execution::Sequential).unwrap();
        let b = complex_homology_lengths_with(&minimal, &q, Execution::Sequential).unwrap();
        prop_assert_eq!(a.entries().iter().filter(|e| *e.1 > 0).collect::<Vec<_>>(), b.entries().iter().filter(|e| *e.1 > 0).collect::<Vec<_>>());
    }

    #[test]
    fn fit_recovers_polynomial_tails(
        coeffs in prop::collection::vec(0i64..=9, 1..=4),
        lead in 1i64..=5,
        corrupt in 0usize..=6,
        noise in prop::collection::vec(0u64..=1000, 6),
    ) {
        let r = coeffs.len() as u32;
        let eval = |n: u32| -> u64 {
            let n = n as i64;
            let mut v = lead * n.pow(r);
            for (k, c) in coeffs.iter().enumerate() {
                v += c * n.pow(k as u32);
            }
            v as u64
        };
        let value = |n: u32| if (n as usize) <= corrupt { noise[n as usize - 1] } else { eval(n) };
        let (samples, fit) = fit_adaptive(&fit_cfg(), |ns| Ok(ns.iter().map(|&n| value(n)).collect())).unwrap();
        prop_assert_eq!(fit.status, FitStatus::Stabilized);
        prop_assert_eq!(fit.degree, Some(r));
        let factorial: i64 = (1..=r as i64).product();
        prop_assert_eq!(fit.leading_diff, Some(lead * factorial));
        prop_assert_eq!(fit_degree(&samples, 4).unwrap(), fit);
    }
}

#[test]
fn zero_complex_has_zero_psi() {
    let r = ring(2);
    let q = FiniteQuotient::new(&PresentedModule::ring_module(&r), &[Polynomial::var(&r, 0), Polynomial::var(&r, 1)], 3).unwrap();
    let t = complex_homology_lengths_with(&FreeComplex::zero(&r), &q, Execution::Sequential).unwrap();
    assert_eq!(t.total(), 0);
    let s = fit_degree(&Samples::new(1, vec![0; 6]), 4).unwrap();
    assert_eq!(s.status, FitStatus::IdenticallyZero);
}
