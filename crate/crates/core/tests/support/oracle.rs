//! Brute-force reference for Tor and Ext lengths over monomial quotients.
//!
//! Everything here is rebuilt from scratch: monomial bases by enumeration,
//! the Taylor resolution by subsets, and ranks by dense Gaussian elimination
//! mod p. Nothing is shared with the engine besides the characteristic.
#![allow(dead_code)]

pub const P: u64 = 32003;

pub type Exps = Vec<u32>;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn mul(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// All monomials of total degree `deg` in `d` variables.
fn monomials(d: usize, deg: u32) -> Vec<Exps> {
    if d == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=deg {
        for mut rest in monomials(d - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Generators of `J^n` for a monomial ideal `J`.
pub fn power(gens: &[Exps], d: usize, n: u32) -> Vec<Exps> {
    let mut acc = vec![vec![0; d]];
    for _ in 0..n {
        let mut next: Vec<Exps> = Vec::new();
        for a in &acc {
            for g in gens {
                next.push(mul(a, g));
            }
        }
        next.sort();
        next.dedup();
        acc = minimalize(next);
    }
    acc
}

fn minimalize(gens: Vec<Exps>) -> Vec<Exps> {
    let mut out: Vec<Exps> = Vec::new();
    for g in &gens {
        if !gens.iter().any(|h| h != g && divides(h, g)) && !out.contains(g) {
            out.push(g.clone());
        }
    }
    out
}

/// `k`-basis of `A / (gens)`: monomials divisible by no generator. The
/// quotient must have finite length.
pub fn standard_monomials(gens: &[Exps], d: usize) -> Vec<Exps> {
    let bound = gens.iter().map(|g| degree(g)).max().unwrap_or(0) * d as u32 + 1;
    let mut out = Vec::new();
    for deg in 0..=bound {
        for m in monomials(d, deg) {
            if !gens.iter().any(|g| divides(g, &m)) {
                out.push(m);
            }
        }
    }
    out
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = pow(rows[rank][c], P - 2);
        for v in rows[rank].iter_mut() {
            *v = *v * inv % P;
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                let pivot_row = rows[rank].clone();
                for (v, p) in rows[r].iter_mut().zip(&pivot_row) {
                    *v = (*v + P * P - f * p) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// A free resolution of `A/J` written as homological-degree terms: for each
/// degree a list of labels (subsets), and `d_k` entries `(row, col, sign, monomial)`
/// from degree `k` to `k - 1`.
pub struct Resolution {
    pub terms: Vec<Vec<u32>>,
    pub maps: Vec<Vec<(usize, usize, i64, Exps)>>,
}

/// Taylor resolution of `A/(gens)`: basis `e_S` for subsets `S`,
/// `d e_S = Σ_j (-1)^j (lcm_S / lcm_{S∖s_j}) e_{S∖s_j}`.
pub fn taylor(gens: &[Exps], d: usize) -> Resolution {
    let r = gens.len();
    let lcm_of = |mask: u32| -> Exps {
        (0..r).filter(|j| mask >> j & 1 == 1).fold(vec![0; d], |acc, j| lcm(&acc, &gens[j]))
    };
    let mut terms: Vec<Vec<u32>> = vec![Vec::new(); r + 1];
    for mask in 0u32..(1 << r) {
        terms[mask.count_ones() as usize].push(mask);
    }
    let mut maps = vec![Vec::new()];
    for k in 1..=r {
        let mut entries = Vec::new();
        for (col, &s) in terms[k].iter().enumerate() {
            let ls = lcm_of(s);
            let mut pos = 0;
            for j in 0..r {
                if s >> j & 1 == 0 {
                    continue;
                }
                let t = s & !(1 << j);
                let lt = lcm_of(t);
                let quot: Exps = ls.iter().zip(&lt).map(|(a, b)| a - b).collect();
                let row = terms[k - 1].iter().position(|&u| u == t).unwrap();
                entries.push((row, col, if pos % 2 == 0 { 1 } else { -1 }, quot));
                pos += 1;
            }
        }
        maps.push(entries);
    }
    Resolution { terms, maps }
}

/// Koszul complex on the variables, the Taylor resolution of the maximal ideal.
pub fn koszul_on_variables(d: usize) -> Resolution {
    let gens: Vec<Exps> = (0..d).map(|i| (0..d).map(|j| u32::from(i == j)).collect()).collect();
    taylor(&gens, d)
}

/// Matrix of `F_k ⊗ N -> F_{k-1} ⊗ N` (or its Hom dual when `dual`) with
/// `N = A/(n_gens)` given by its standard monomial basis.
fn block_matrix(res: &Resolution, k: usize, basis: &[Exps], n_gens: &[Exps], dual: bool) -> Vec<Vec<u64>> {
    let nb = basis.len();
    let (src, tgt) = (res.terms[k].len(), res.terms[k - 1].len());
    let index = |m: &Exps| basis.iter().position(|b| b == m);
    // tensor: rows indexed by target (k-1), columns by source (k)
    // dual:   rows indexed by source (k),   columns by target (k-1)
    let (rows, cols) = if dual { (src * nb, tgt * nb) } else { (tgt * nb, src * nb) };
    let mut mat = vec![vec![0u64; cols]; rows];
    for (row, col, sign, quot) in &res.maps[k] {
        for (b, u) in basis.iter().enumerate() {
            let image = mul(u, quot);
            if n_gens.iter().any(|g| divides(g, &image)) {
                continue;
            }
            let Some(t) = index(&image) else { continue };
            let v = if *sign > 0 { 1 } else { P - 1 };
            if dual {
                mat[col * nb + t][row * nb + b] = v;
            } else {
                mat[row * nb + t][col * nb + b] = v;
            }
        }
    }
    mat
}

/// `Σ_i dim H_i(F ⊗ N)` (or of `Hom(F, N)` when `dual`).
pub fn total_homology(res: &Resolution, n_gens: &[Exps], d: usize, dual: bool) -> u64 {
    let basis = standard_monomials(n_gens, d);
    let len = res.terms.len();
    let ranks: Vec<usize> = (1..len).map(|k| rank_mod_p(block_matrix(res, k, &basis, n_gens, dual))).collect();
    let mut total = 0u64;
    for k in 0..len {
        let dim = res.terms[k].len() * basis.len();
        let out = if k >= 1 { ranks[k - 1] } else { 0 };
        let inn = if k + 1 < len { ranks[k] } else { 0 };
        total += (dim - out - inn) as u64;
    }
    total
}

/// `N_n = A / (I^n + K)` for monomial `I` (m-primary) and `K`.
pub fn quotient_gens(ideal: &[Exps], module_rels: &[Exps], d: usize, n: u32) -> Vec<Exps> {
    let mut g = power(ideal, d, n);
    g.extend(module_rels.iter().cloned());
    minimalize(g)
}

/// `t(n) = Σ ℓ Tor_i(A/J, A/(I^n + K))`.
pub fn tor_total(j: &[Exps], ideal: &[Exps], module_rels: &[Exps], d: usize, n: u32) -> u64 {
    total_homology(&taylor(j, d), &quotient_gens(ideal, module_rels, d, n), d, false)
}

/// `e(n) = Σ ℓ Ext^i(A/J, A/(I^n + K))`.
pub fn ext_total(j: &[Exps], ideal: &[Exps], module_rels: &[Exps], d: usize, n: u32) -> u64 {
    total_homology(&taylor(j, d), &quotient_gens(ideal, module_rels, d, n), d, true)
}
