//! Hilbert functions, Krull dimension and length via lead-term staircases.
//!
//! Every graded quotient (free module modulo a submodule) has the same
//! Hilbert function as its lead-term counterpart, so all counting happens on
//! monomial data extracted from a Groebner basis.

use crate::monomial::Monomial;

/// Lead-term data of a submodule of a free module: for each basis position,
/// the minimal monomial generators of the corresponding monomial ideal.
#[derive(Debug, Clone)]
pub struct LeadTermModule {
    pub rank: usize,
    pub nvars: usize,
    pub gens_by_pos: Vec<Vec<Monomial>>,
}

impl LeadTermModule {
    pub fn new(rank: usize, nvars: usize, lead_terms: Vec<(usize, Monomial)>) -> Self {
        let mut gens_by_pos: Vec<Vec<Monomial>> = vec![Vec::new(); rank];
        for (pos, m) in lead_terms {
            gens_by_pos[pos].push(m);
        }
        // Minimalize each component: drop multiples of other generators.
        for gens in &mut gens_by_pos {
            gens.sort_by_key(|m| (m.degree(), m.exps().to_vec()));
            let mut kept: Vec<Monomial> = Vec::new();
            for m in gens.drain(..) {
                if !kept.iter().any(|k| k.divides(&m)) {
                    kept.push(m);
                }
            }
            *gens = kept;
        }
        LeadTermModule {
            rank,
            nvars,
            gens_by_pos,
        }
    }

    fn standard(&self, pos: usize, m: &Monomial) -> bool {
        !self.gens_by_pos[pos].iter().any(|g| g.divides(m))
    }

    /// Number of standard monomials `m * e_pos` with internal degree `d`
    /// given the twists of the ambient free module.
    pub fn count_standard(&self, twists: &[i64], d: i64) -> u64 {
        let mut count = 0u64;
        for pos in 0..self.rank {
            let md = d - twists[pos];
            if md < 0 {
                continue;
            }
            count += self.count_standard_component(pos, md as u32);
        }
        count
    }

    fn count_standard_component(&self, pos: usize, degree: u32) -> u64 {
        let mut count = 0u64;
        let mut exps = vec![0u16; self.nvars];
        self.enumerate(pos, 0, degree, &mut exps, &mut |_| count += 1);
        count
    }

    /// All standard monomials of the given plain degree in one component.
    pub fn standard_monomials(&self, pos: usize, degree: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u16; self.nvars];
        self.enumerate(pos, 0, degree, &mut exps, &mut |e| {
            out.push(Monomial::from_exps(e.to_vec()))
        });
        out
    }

    fn enumerate(
        &self,
        pos: usize,
        var: usize,
        remaining: u32,
        exps: &mut Vec<u16>,
        visit: &mut impl FnMut(&[u16]),
    ) {
        if var + 1 == self.nvars {
            exps[var] = remaining as u16;
            let m = Monomial::from_exps(exps.clone());
            if self.standard(pos, &m) {
                visit(exps);
            }
            exps[var] = 0;
            return;
        }
        for e in 0..=remaining {
            exps[var] = e as u16;
            self.enumerate(pos, var + 1, remaining - e, exps, visit);
        }
        exps[var] = 0;
    }

    /// Krull dimension of the quotient (free module / this submodule): the
    /// maximum over components of `nvars - (minimum hitting set of the
    /// generator supports)`. `None` for the zero quotient.
    pub fn quotient_dimension(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for pos in 0..self.rank {
            let gens = &self.gens_by_pos[pos];
            if gens.iter().any(|g| g.is_one()) {
                continue; // component is annihilated entirely
            }
            let supports: Vec<Vec<usize>> = gens.iter().map(|g| g.support()).collect();
            let d = self.nvars - min_hitting_set(self.nvars, &supports);
            best = Some(best.map_or(d, |b: usize| b.max(d)));
        }
        best
    }

    /// Total number of standard monomials when finite, `None` when infinite.
    pub fn finite_length(&self) -> Option<u64> {
        let mut total = 0u64;
        for pos in 0..self.rank {
            let gens = &self.gens_by_pos[pos];
            if gens.iter().any(|g| g.is_one()) {
                continue;
            }
            // Zero-dimensional iff every variable has a pure power among the
            // generators; the pure powers bound the staircase box.
            let mut caps = vec![None; self.nvars];
            for g in gens {
                let sup = g.support();
                if sup.len() == 1 {
                    let v = sup[0];
                    let e = g.exp(v);
                    caps[v] = Some(caps[v].map_or(e, |c: u16| c.min(e)));
                }
            }
            if caps.iter().any(|c| c.is_none()) {
                return None;
            }
            let caps: Vec<u16> = caps.into_iter().map(|c| c.unwrap()).collect();
            let max_deg: u32 = caps.iter().map(|&c| (c - 1) as u32).sum();
            for d in 0..=max_deg {
                total += self.count_standard_component(pos, d);
            }
        }
        Some(total)
    }
}

// Smallest subset of variables meeting every support set.
fn min_hitting_set(nvars: usize, supports: &[Vec<usize>]) -> usize {
    if supports.is_empty() {
        return 0;
    }
    for size in 0..=nvars {
        if subsets_hit(nvars, size, supports) {
            return size;
        }
    }
    nvars
}

fn subsets_hit(nvars: usize, size: usize, supports: &[Vec<usize>]) -> bool {
    let mut indices: Vec<usize> = (0..size).collect();
    loop {
        let hit_all = supports.iter().all(|s| s.iter().any(|v| indices.contains(v)));
        if hit_all {
            return true;
        }
        // next combination
        let mut i = size;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if indices[i] < nvars - (size - i) {
                indices[i] += 1;
                for k in (i + 1)..size {
                    indices[k] = indices[k - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Hilbert function values on a degree window, with an optional detected
/// rational form: a numerator polynomial over (1-t)^dim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFunction {
    pub lo: i64,
    pub values: Vec<u64>,
    pub rational_numerator: Option<Vec<i64>>,
}

impl HilbertFunction {
    pub fn value(&self, d: i64) -> u64 {
        if d < self.lo {
            return 0;
        }
        let idx = (d - self.lo) as usize;
        self.values.get(idx).copied().unwrap_or(0)
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.values.len() as i64 - 1
    }

    /// Values on d = 0..=dmax as required by reports.
    pub fn window(&self, dmax: i64) -> Vec<u64> {
        (0..=dmax).map(|d| self.value(d)).collect()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Detects the rational form: multiplies the truncated series by
    /// (1-t)^dim and keeps the numerator when the tail vanishes.
    pub fn detect_rational(&mut self, dim: usize) {
        let mut coeffs: Vec<i64> = self.values.iter().map(|&v| v as i64).collect();
        for _ in 0..dim {
            // multiply by (1 - t): c'_k = c_k - c_{k-1}
            let mut prev = 0i64;
            for c in coeffs.iter_mut() {
                let cur = *c;
                *c = cur - prev;
                prev = cur;
            }
        }
        // Require a stable zero tail to trust the truncation.
        let tail = coeffs.len().saturating_sub(3);
        if coeffs[tail..].iter().all(|&c| c == 0) {
            let mut num = coeffs;
            while num.last() == Some(&0) {
                num.pop();
            }
            self.rational_numerator = Some(num);
        }
    }
}
