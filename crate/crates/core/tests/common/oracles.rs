//! Independent oracles shared between the property and acceptance suites:
//! degree-truncated linear-algebra membership, Koszul-homology depth, and
//! small combinatorial helpers. These deliberately avoid the code paths they
//! are used to check.

use std::sync::Arc;

use betti_core::homology::ChainModule;
use betti_core::linalg::MatFp;
use betti_core::{
    Engine, FreeModule, ModElement, Monomial, Polynomial, PresentedModule, QuotientRing,
};

pub fn all_monomials(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(nvars: usize, var: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if var + 1 == nvars {
            cur[var] = left as u16;
            out.push(Monomial::from_exps(cur.clone()));
            cur[var] = 0;
            return;
        }
        for e in 0..=left {
            cur[var] = e as u16;
            rec(nvars, var + 1, left - e, cur, out);
        }
        cur[var] = 0;
    }
    rec(nvars, 0, degree, &mut cur, &mut out);
    out
}

pub fn xorshift(state: &mut u64) -> u64 {
    *state ^= *state << 13;
    *state ^= *state >> 7;
    *state ^= *state << 17;
    *state
}

/// Random nonzero homogeneous polynomial of the given degree.
pub fn random_homog(r: &Arc<QuotientRing>, state: &mut u64, degree: u32) -> Polynomial {
    loop {
        let mut terms = Vec::new();
        for m in all_monomials(r.nvars(), degree) {
            let c = xorshift(state) % 5;
            if c != 0 {
                terms.push((m, c));
            }
        }
        let f = r.base.from_terms(terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Ideal membership by degree-truncated linear algebra: solve
/// sum q_i g_i = f with homogeneous multipliers.
pub fn brute_force_membership(
    r: &Arc<QuotientRing>,
    gens: &[Polynomial],
    f: &Polynomial,
) -> bool {
    let d = match f.homogeneous_degree() {
        Some(d) => d,
        None => return false,
    };
    let rows_idx: std::collections::BTreeMap<Vec<u16>, usize> = all_monomials(r.nvars(), d)
        .into_iter()
        .enumerate()
        .map(|(i, m)| (m.exps().to_vec(), i))
        .collect();
    let mut columns: Vec<Vec<u64>> = Vec::new();
    for g in gens {
        let gd = match g.homogeneous_degree() {
            Some(gd) if gd <= d => gd,
            _ => continue,
        };
        for m in all_monomials(r.nvars(), d - gd) {
            let prod = r.base.mul_term(g, &m, 1);
            let mut col = vec![0u64; rows_idx.len()];
            for (mm, c) in prod.terms() {
                col[rows_idx[&mm.exps().to_vec()]] = *c;
            }
            columns.push(col);
        }
    }
    let mut mat = MatFp::zero(r.base.field, rows_idx.len(), columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            if *v != 0 {
                mat.set(i, j, *v);
            }
        }
    }
    let mut rhs = vec![0u64; rows_idx.len()];
    for (m, c) in f.terms() {
        rhs[rows_idx[&m.exps().to_vec()]] = *c;
    }
    mat.solvable(&rhs)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// depth(a, M) along the independent Koszul route:
/// g - max{ i : H_i(K(gens; M)) != 0 }.
pub fn koszul_depth(eng: &Engine, gens: &[Polynomial], m: &PresentedModule) -> usize {
    let ring = m.ring.clone();
    let g = gens.len();
    let degs: Vec<i64> = gens
        .iter()
        .map(|f| f.homogeneous_degree().unwrap() as i64)
        .collect();
    let t = m.ngens();
    let chain = |i: usize| -> (Vec<Vec<usize>>, ChainModule) {
        let subs = subsets(g, i);
        let mut twists = Vec::new();
        let mut rels = Vec::new();
        for (b, sub) in subs.iter().enumerate() {
            let shift: i64 = sub.iter().map(|&l| degs[l]).sum();
            for mt in &m.twists {
                twists.push(mt + shift);
            }
            for col in m.columns() {
                rels.push(col.shift_positions(b * t));
            }
        }
        (
            subs,
            ChainModule {
                cover: FreeModule::new(twists),
                rels,
            },
        )
    };
    let map = |i: usize| -> Vec<ModElement> {
        let (subs_from, from) = chain(i);
        let (subs_to, _) = chain(i - 1);
        let to_index: std::collections::BTreeMap<Vec<usize>, usize> = subs_to
            .iter()
            .enumerate()
            .map(|(b, s)| (s.clone(), b))
            .collect();
        let base = &m.ring.base;
        let mut cols = Vec::with_capacity(from.cover.rank());
        for sub in subs_from.iter() {
            for s in 0..t {
                let mut comps: Vec<(usize, Polynomial)> = Vec::new();
                for (k, &l) in sub.iter().enumerate() {
                    let mut smaller = sub.clone();
                    smaller.remove(k);
                    let tb = to_index[&smaller];
                    let signed = if k % 2 == 0 {
                        gens[l].clone()
                    } else {
                        base.neg(&gens[l])
                    };
                    comps.push((tb * t + s, signed));
                }
                cols.push(ModElement::from_comps(comps));
            }
        }
        cols
    };
    let mut max_nonzero: Option<usize> = None;
    for i in 0..=g {
        let (_, at) = chain(i);
        let outgoing = if i == 0 {
            None
        } else {
            Some((chain(i - 1).1, map(i)))
        };
        let incoming = if i == g { Vec::new() } else { map(i + 1) };
        let kernel = match outgoing {
            None => (0..at.cover.rank())
                .map(|p| ModElement::unit(p, ring.base.one()))
                .collect(),
            Some((target, cols)) => eng.kernel_gens(&ring, &at.cover, &target, &cols).unwrap(),
        };
        let h = eng
            .subquotient(&ring, &at.cover, kernel, &at.rels, incoming)
            .unwrap();
        if !h.has_no_generators() {
            max_nonzero = Some(i);
        }
    }
    g - max_nonzero.expect("H_0 = M/aM is nonzero")
}
