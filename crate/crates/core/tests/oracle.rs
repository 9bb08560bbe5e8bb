//! The engine's Tor and Ext lengths against a dense brute-force reference.

#[path = "support/oracle.rs"]
mod oracle;

use hilbtor_core::algebra::{Monomial, Polynomial, Ring};
use hilbtor_core::degfit::{sample_e, sample_psi, sample_t, SampleOptions};
use hilbtor_core::exec::Execution;
use hilbtor_core::finlen::{complex_homology_lengths_with, FiniteQuotient};
use hilbtor_core::groebner::PresentedModule;
use hilbtor_core::homalg::{presented_homology_lengths, taylor_complex};
use oracle::Exps;
use proptest::prelude::*;

const NAMES: [&str; 3] = ["x", "y", "z"];

fn ring(d: usize) -> Ring {
    Ring::with_char(&NAMES[..d], oracle::P as u32).unwrap()
}

fn polys(r: &Ring, gens: &[Exps]) -> Vec<Polynomial> {
    gens.iter().map(|e| Polynomial::monomial(r, Monomial::from_exponents(e), 1)).collect()
}

#[test]
fn reference_agrees_with_hand_counts() {
    let m: Vec<Exps> = vec![vec![1, 0], vec![0, 1]];
    for n in 1..=4 {
        assert_eq!(oracle::tor_total(&m, &m, &[], 2, n), 2 * n as u64 + 2);
    }
    assert_eq!(oracle::standard_monomials(&oracle::power(&m, 2, 3), 2).len(), 6);
}

#[test]
fn plane_residue_field_matches_reference() {
    let r = ring(2);
    let m: Vec<Exps> = vec![vec![1, 0], vec![0, 1]];
    let ideal = polys(&r, &m);
    let a = PresentedModule::ring_module(&r);
    let k = PresentedModule::residue_field(&r);
    let ns: Vec<u32> = (1..=12).collect();
    let t = sample_t(&k, &a, &ideal, &ns, SampleOptions::default()).unwrap();
    let e = sample_e(&k, &a, &ideal, &ns, SampleOptions::default()).unwrap();
    let reference: Vec<u64> = ns.iter().map(|&n| oracle::tor_total(&m, &m, &[], 2, n)).collect();
    let reference_ext: Vec<u64> = ns.iter().map(|&n| oracle::ext_total(&m, &m, &[], 2, n)).collect();
    assert_eq!(t.values, reference);
    assert_eq!(e.values, reference_ext);
}

#[test]
fn taylor_of_a_three_generator_ideal() {
    // A/(x^2, xy, y^3) against A/m^n in two variables
    let r = ring(2);
    let j: Vec<Exps> = vec![vec![2, 0], vec![1, 1], vec![0, 3]];
    let m: Vec<Exps> = vec![vec![1, 0], vec![0, 1]];
    let x = taylor_complex(&r, &j.iter().map(|e| Monomial::from_exponents(e)).collect::<Vec<_>>()).unwrap();
    let a = PresentedModule::ring_module(&r);
    for n in 1..=4 {
        let s = sample_psi(&x, &a, &polys(&r, &m), &[n], SampleOptions::sequential()).unwrap();
        assert_eq!(s.values[0], oracle::tor_total(&j, &m, &[], 2, n), "n = {n}");
    }
}

fn exps(d: usize, max: u32) -> impl Strategy<Value = Exps> {
    prop::collection::vec(0..=max, d)
}

/// `d`, an m-primary monomial ideal, module relations and the ideal `J` of `L = A/J`.
fn monomial_case() -> impl Strategy<Value = (usize, Vec<Exps>, Vec<Exps>, Vec<Exps>, u32)> {
    (1usize..=3).prop_flat_map(|d| {
        let pure = prop::collection::vec(1u32..=2, d).prop_map(move |a| {
            (0..d).map(|i| (0..d).map(|j| if i == j { a[i] } else { 0 }).collect()).collect::<Vec<Exps>>()
        });
        let extra = prop::collection::vec(exps(d, 2), 0..=1);
        let rels = prop::collection::vec(exps(d, 2), 0..=1);
        let j = prop::collection::vec(exps(d, 2), 1..=3);
        (Just(d), pure, extra, rels, j, 1u32..=3)
    })
    .prop_map(|(d, mut ideal, extra, rels, j, n)| {
        ideal.extend(extra.into_iter().filter(|e| e.iter().sum::<u32>() > 0));
        let rels: Vec<Exps> = rels.into_iter().filter(|e| e.iter().sum::<u32>() > 0).collect();
        let j: Vec<Exps> = j.into_iter().filter(|e| e.iter().sum::<u32>() > 0).collect();
        (d, ideal, rels, j, n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn tor_and_ext_match_reference((d, ideal, rels, j, n) in monomial_case()) {
        prop_assume!(!j.is_empty());
        let r = ring(d);
        let m = PresentedModule::cyclic(&r, &polys(&r, &rels)).unwrap();
        let l = PresentedModule::cyclic(&r, &polys(&r, &j)).unwrap();
        let i = polys(&r, &ideal);
        let opts = SampleOptions::sequential();
        let t = sample_t(&l, &m, &i, &[n], opts).unwrap().values[0];
        let e = sample_e(&l, &m, &i, &[n], opts).unwrap().values[0];
        prop_assert_eq!(t, oracle::tor_total(&j, &ideal, &rels, d, n));
        prop_assert_eq!(e, oracle::ext_total(&j, &ideal, &rels, d, n));
    }

    #[test]
    fn fast_and_presented_homology_agree((d, ideal, rels, j, n) in monomial_case()) {
        prop_assume!(!j.is_empty());
        let r = ring(d);
        let m = PresentedModule::cyclic(&r, &polys(&r, &rels)).unwrap();
        let i = polys(&r, &ideal);
        let x = taylor_complex(&r, &j.iter().map(|e| Monomial::from_exponents(e)).collect::<Vec<_>>()).unwrap();
        let q = FiniteQuotient::new(&m, &i, n).unwrap();
        let fast = complex_homology_lengths_with(&x, &q, Execution::Sequential).unwrap();
        let quotient = m.quotient_by_ideal(&hilbtor_core::groebner::ideal_power(&i, n)).unwrap();
        let slow = presented_homology_lengths(&x, &quotient).unwrap();
        for (idx, len) in slow {
            prop_assert_eq!(fast.get(idx), len, "index {}", idx);
        }
    }
}
