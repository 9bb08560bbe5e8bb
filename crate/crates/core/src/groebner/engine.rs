//! Homogeneous Buchberger engine shared by Groebner bases, syzygies,
//! minimal generating sets and finite quotients.
//!
//! Pairs are processed degree by degree (normal strategy) with the
//! Gebauer–Möller update. The coprime-lead criterion is only valid for
//! ideals, so it is applied only when the ambient module has rank one.

use std::collections::BTreeMap;

use super::module::{scale_terms, sub_mul, ModTerm};
use crate::algebra::{Field, Monomial};

#[derive(Debug, Clone)]
pub(crate) struct Elem {
    pub terms: Vec<ModTerm>,
    pub cof: Vec<ModTerm>,
    mask: u32,
}

impl Elem {
    #[inline]
    pub fn lead(&self) -> &ModTerm {
        &self.terms[0]
    }
}

#[derive(Debug, Clone, Copy)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

#[derive(Debug, Clone)]
struct Input {
    terms: Vec<ModTerm>,
    cof: Vec<ModTerm>,
}

#[derive(Debug, Clone)]
pub(crate) struct GbEngine {
    field: Field,
    twists: Vec<i32>,
    track: bool,
    max_degree: Option<i32>,
    pub elems: Vec<Elem>,
    by_pos: Vec<Vec<usize>>,
    pairs: BTreeMap<i32, Vec<Pair>>,
    inputs: BTreeMap<i32, Vec<Input>>,
}

impl GbEngine {
    /// `max_degree` truncates the computation: nothing above that degree is kept.
    pub fn new(field: Field, twists: Vec<i32>, track: bool, max_degree: Option<i32>) -> Self {
        let rank = twists.len();
        GbEngine {
            field,
            twists,
            track,
            max_degree,
            elems: Vec::new(),
            by_pos: vec![Vec::new(); rank],
            pairs: BTreeMap::new(),
            inputs: BTreeMap::new(),
        }
    }

    #[inline]
    pub fn term_degree(&self, t: &ModTerm) -> i32 {
        t.mon.degree() as i32 + self.twists[t.pos]
    }

    fn in_range(&self, deg: i32) -> bool {
        self.max_degree.is_none_or(|m| deg <= m)
    }

    /// Queues a homogeneous generator (with its cofactor when tracking).
    pub fn push_input(&mut self, terms: Vec<ModTerm>, cof: Vec<ModTerm>) {
        let Some(first) = terms.first() else { return };
        let deg = self.term_degree(first);
        if !self.in_range(deg) {
            return;
        }
        self.inputs.entry(deg).or_default().push(Input { terms, cof });
    }

    fn next_degree(&self) -> Option<i32> {
        let p = self.pairs.keys().next().copied();
        let q = self.inputs.keys().next().copied();
        match (p, q) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Processes every pair and input of degree at most `upto` (all of them when `None`).
    pub fn run(&mut self, upto: Option<i32>) {
        while let Some(deg) = self.next_degree() {
            if upto.is_some_and(|u| deg > u) {
                break;
            }
            let pairs = self.pairs.remove(&deg).unwrap_or_default();
            for pair in pairs {
                let (terms, cof) = self.spoly(pair.i, pair.j, &pair.lcm);
                let (rem, cof) = self.reduce(terms, cof);
                if !rem.is_empty() {
                    self.insert(rem, cof);
                }
            }
            let inputs = self.inputs.remove(&deg).unwrap_or_default();
            for input in inputs {
                let (rem, cof) = self.reduce(input.terms, input.cof);
                if !rem.is_empty() {
                    self.insert(rem, cof);
                }
            }
        }
    }

    pub(crate) fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> (Vec<ModTerm>, Vec<ModTerm>) {
        let (a, b) = (&self.elems[i], &self.elems[j]);
        let ua = a.lead().mon.quotient_of(lcm);
        let ub = b.lead().mon.quotient_of(lcm);
        let f = self.field;
        let sa = scale_terms(&a.terms, 1, &ua, f);
        let terms = sub_mul(&sa, 1, &ub, &b.terms, f);
        let cof = if self.track {
            let ca = scale_terms(&a.cof, 1, &ua, f);
            sub_mul(&ca, 1, &ub, &b.cof, f)
        } else {
            Vec::new()
        };
        (terms, cof)
    }

    /// Index of an element whose lead divides `(mon, pos)`.
    #[inline]
    pub fn find_reducer(&self, t: &ModTerm) -> Option<usize> {
        let mask = t.mon.support_mask();
        self.by_pos[t.pos].iter().copied().find(|&k| {
            let e = &self.elems[k];
            e.mask & !mask == 0 && e.lead().mon.divides(&t.mon)
        })
    }

    /// Full reduction; returns the remainder and the updated cofactor.
    pub fn reduce(&self, terms: Vec<ModTerm>, mut cof: Vec<ModTerm>) -> (Vec<ModTerm>, Vec<ModTerm>) {
        let f = self.field;
        let mut done: Vec<ModTerm> = Vec::new();
        let mut rest = terms;
        let mut start = 0;
        while start < rest.len() {
            let t = rest[start];
            match self.find_reducer(&t) {
                None => {
                    done.push(t);
                    start += 1;
                }
                Some(k) => {
                    let g = &self.elems[k];
                    let u = g.lead().mon.quotient_of(&t.mon);
                    // elements are monic
                    rest = sub_mul(&rest[start..], t.coeff, &u, &g.terms, f);
                    start = 0;
                    if self.track {
                        cof = sub_mul(&cof, t.coeff, &u, &g.cof, f);
                    }
                }
            }
        }
        (done, cof)
    }

    fn insert(&mut self, terms: Vec<ModTerm>, cof: Vec<ModTerm>) {
        let f = self.field;
        let lc = terms[0].coeff;
        let (terms, cof) = if lc == 1 {
            (terms, cof)
        } else {
            let inv = f.inv(lc);
            let one = Monomial::one(terms[0].mon.nvars());
            let cof = if self.track { scale_terms(&cof, inv, &one, f) } else { cof };
            (scale_terms(&terms, inv, &one, f), cof)
        };
        let k = self.elems.len();
        let lead = terms[0];
        self.elems.push(Elem { mask: lead.mon.support_mask(), terms, cof });
        self.update_pairs(k, &lead);
        self.by_pos[lead.pos].push(k);
    }

    /// Gebauer–Möller pair update for the new element `k`.
    fn update_pairs(&mut self, k: usize, lead: &ModTerm) {
        let product_ok = self.twists.len() == 1;
        let hm = lead.mon;
        let pos_twist = self.twists[lead.pos];
        // candidate pairs (g, k) in the same position
        let mut cands: Vec<(usize, Monomial, bool)> = self.by_pos[lead.pos]
            .iter()
            .map(|&g| {
                let gm = self.elems[g].lead().mon;
                (g, gm.lcm(&hm), product_ok && gm.is_coprime(&hm))
            })
            .collect();

        // old pairs (i, j) whose lcm is strictly a multiple of both new lcms
        let elems = &self.elems;
        for list in self.pairs.values_mut() {
            list.retain(|p| {
                if elems[p.i].lead().pos != lead.pos || !hm.divides(&p.lcm) {
                    return true;
                }
                let li = elems[p.i].lead().mon.lcm(&hm);
                let lj = elems[p.j].lead().mon.lcm(&hm);
                li == p.lcm || lj == p.lcm
            });
        }
        self.pairs.retain(|_, v| !v.is_empty());

        // criterion M: drop (g,k) if some other lcm strictly divides its lcm
        let keep: Vec<bool> = cands
            .iter()
            .map(|(_, l, _)| !cands.iter().any(|(_, l2, _)| l2 != l && l2.divides(l)))
            .collect();
        let mut filtered: Vec<(usize, Monomial, bool)> =
            cands.drain(..).zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();

        // criterion F: one pair per lcm; with the product criterion a coprime
        // member removes the whole class
        filtered.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        let mut chosen: Vec<(usize, Monomial)> = Vec::new();
        let mut idx = 0;
        while idx < filtered.len() {
            let mut end = idx;
            while end < filtered.len() && filtered[end].1 == filtered[idx].1 {
                end += 1;
            }
            let class = &filtered[idx..end];
            if !class.iter().any(|c| c.2) {
                chosen.push((class[0].0, class[0].1));
            }
            idx = end;
        }

        for (g, lcm) in chosen {
            let deg = lcm.degree() as i32 + pos_twist;
            if !self.in_range(deg) {
                continue;
            }
            self.pairs.entry(deg).or_default().push(Pair { i: g, j: k, lcm });
        }
    }

    /// Interreduced, monic basis sorted by increasing lead term.
    pub fn reduced_basis(&self) -> Vec<(Vec<ModTerm>, Vec<ModTerm>)> {
        let mut out = Vec::with_capacity(self.elems.len());
        for (k, e) in self.elems.iter().enumerate() {
            let mut tail = e.terms[1..].to_vec();
            let mut cof = e.cof.clone();
            // reduce the tail by every other element
            let mut start = 0;
            let mut done: Vec<ModTerm> = Vec::new();
            while start < tail.len() {
                let t = tail[start];
                let mask = t.mon.support_mask();
                let reducer = self.by_pos[t.pos].iter().copied().find(|&r| {
                    r != k && {
                        let g = &self.elems[r];
                        g.mask & !mask == 0 && g.lead().mon.divides(&t.mon)
                    }
                });
                match reducer {
                    None => {
                        done.push(t);
                        start += 1;
                    }
                    Some(r) => {
                        let g = &self.elems[r];
                        let u = g.lead().mon.quotient_of(&t.mon);
                        tail = sub_mul(&tail[start..], t.coeff, &u, &g.terms, self.field);
                        start = 0;
                        if self.track {
                            cof = sub_mul(&cof, t.coeff, &u, &g.cof, self.field);
                        }
                    }
                }
            }
            let mut terms = Vec::with_capacity(done.len() + 1);
            terms.push(*e.lead());
            terms.extend(done);
            out.push((terms, cof));
        }
        out.sort_by(|a, b| super::module::cmp_terms(&a.0[0], &b.0[0]));
        out
    }
}
