//! Depth via Ext-vanishing, regular elements and sequences, and the
//! Ext^1-annihilation test behind the syzygy-splitting identities.

use std::sync::Arc;

use crate::engine::Engine;
use crate::error::{internal, usage, Result};
use crate::freemod::ModElement;
use crate::groebner;
use crate::homology::HomologyModule;
use crate::module::PresentedModule;
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

/// A homogeneous ideal of R, kept as an explicit generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub ring: Arc<QuotientRing>,
    pub gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: Arc<QuotientRing>, gens: Vec<Polynomial>) -> Result<Self> {
        let gens: Vec<Polynomial> = gens
            .into_iter()
            .map(|f| ring.nf_poly(&f))
            .filter(|f| !f.is_zero())
            .collect();
        for f in &gens {
            if !f.is_homogeneous() {
                return Err(usage("ideal generators must be homogeneous"));
            }
        }
        Ok(Ideal { ring, gens })
    }

    pub fn maximal(ring: Arc<QuotientRing>) -> Self {
        let gens = ring.variables();
        Ideal { ring, gens }
    }

    /// Proper iff 1 does not reduce to zero against the ideal.
    pub fn is_proper(&self, cap: u32) -> Result<bool> {
        if self.gens.is_empty() {
            return Ok(true);
        }
        let quotient = PresentedModule::quotient_by_ideal(self.ring.clone(), &self.gens)?;
        let cover = quotient.free_cover();
        let gb = self.ring.submodule_gb(&cover, quotient.columns(), cap)?;
        let one = ModElement::unit(0, self.ring.base.one());
        Ok(!groebner::normal_form(&self.ring.base, &one, &gb).is_zero())
    }

    /// R/a as a cyclic module.
    pub fn quotient_module(&self) -> Result<PresentedModule> {
        PresentedModule::quotient_by_ideal(self.ring.clone(), &self.gens)
    }
}

/// Certificate for depth(a, M): the vanishing Ext record below the witness
/// index and the Hilbert data of the first nonvanishing Ext.
#[derive(Debug, Clone)]
pub struct DepthCertificate {
    pub ideal_gens: Vec<Polynomial>,
    pub depth: usize,
    pub vanishing: Vec<usize>,
    pub witness: HomologyModule,
}

/// A certified regular sequence together with the modules each step was
/// verified against.
#[derive(Debug, Clone)]
pub struct RegularSequence {
    pub elements: Vec<Polynomial>,
    pub certified_on: Vec<PresentedModule>,
}

/// Outcome of the bounded regular-sequence search.
#[derive(Debug, Clone)]
pub enum SequenceSearch {
    Found(RegularSequence),
    NotFound { trials: usize },
}

impl Engine {
    /// depth(a, M) = inf { i : Ext^i(R/a, M) != 0 }, searched up to dim R.
    pub fn depth(&self, ideal: &Ideal, m: &PresentedModule) -> Result<DepthCertificate> {
        if ideal.ring != m.ring {
            return Err(usage("ideal and module live over different rings"));
        }
        if !ideal.is_proper(self.config.degree_cap)? {
            return Err(usage("depth requires a proper ideal"));
        }
        if self.is_zero_module(m)? {
            return Err(usage("depth of the zero module is undefined"));
        }
        let quotient = ideal.quotient_module()?;
        let bound = m.ring.dimension;
        let exts = self.ext(&quotient, m, bound)?;
        let mut vanishing = Vec::new();
        for (i, e) in exts.iter().enumerate() {
            if e.zero {
                vanishing.push(i);
            } else {
                return Ok(DepthCertificate {
                    ideal_gens: ideal.gens.clone(),
                    depth: i,
                    vanishing,
                    witness: e.clone(),
                });
            }
        }
        Err(internal(format!(
            "no nonvanishing Ext^i(R/a, M) for i <= dim R = {bound}"
        )))
    }

    /// Is x a nonzerodivisor on M? Checks that the multiplication kernel
    /// vanishes.
    pub fn is_regular_element(&self, x: &Polynomial, m: &PresentedModule) -> Result<bool> {
        let ring = &m.ring;
        let x = ring.nf_poly(x);
        if x.is_zero() {
            return Ok(false);
        }
        if !x.is_homogeneous() {
            return Err(usage("regular-element test requires a homogeneous element"));
        }
        let cover = m.free_cover();
        // Kernel of x: preimage of the relation span under multiplication.
        let map_cols: Vec<ModElement> = (0..m.ngens())
            .map(|i| ModElement::unit(i, x.clone()))
            .collect();
        let target = crate::homology::ChainModule {
            cover: cover.clone(),
            rels: m.columns().to_vec(),
        };
        let kernel = self.kernel_gens(ring, &cover, &target, &map_cols)?;
        // Regular iff every kernel generator already lies in the relations.
        let gb = ring.submodule_gb(&cover, m.columns(), self.config.degree_cap)?;
        Ok(kernel
            .iter()
            .all(|k| groebner::normal_form(&ring.base, k, &gb).is_zero()))
    }

    /// Does x annihilate Ext^1(N, Omega N)? (The Lemma-4.2 criterion for the
    /// multiplication map factoring through a free module.)
    pub fn annihilates_ext1(&self, x: &Polynomial, n: &PresentedModule) -> Result<bool> {
        let ring = &n.ring;
        let x = ring.nf_poly(x);
        if !x.is_homogeneous() {
            return Err(usage("annihilation test requires a homogeneous element"));
        }
        let omega = self.syzygy_module(n, 1)?;
        if omega.has_no_generators() {
            return Ok(true);
        }
        let exts = self.ext(n, &omega, 1)?;
        let e1 = &exts[1];
        if e1.zero {
            return Ok(true);
        }
        // x times each generator of the presented Ext^1 must fall into the
        // relation span of its presentation.
        let cover = e1.value.free_cover();
        let gb = ring.submodule_gb(&cover, e1.value.columns(), self.config.degree_cap)?;
        for i in 0..e1.value.ngens() {
            let xe = ModElement::unit(i, x.clone());
            if !groebner::normal_form(&ring.base, &xe, &gb).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Certifies that the given elements form a regular sequence on every
    /// listed module (each element regular modulo the previous ones).
    pub fn certify_sequence(
        &self,
        elements: &[Polynomial],
        modules: &[PresentedModule],
    ) -> Result<RegularSequence> {
        for m in modules {
            let mut current = m.clone();
            for (step, x) in elements.iter().enumerate() {
                if !self.is_regular_element(x, &current)? {
                    return Err(usage(format!(
                        "element {} is not regular at step {} of the sequence",
                        m.ring.base.fmt_poly(x),
                        step + 1
                    )));
                }
                current = current.quotient_by_elements(std::slice::from_ref(x))?;
            }
        }
        Ok(RegularSequence {
            elements: elements.to_vec(),
            certified_on: modules.to_vec(),
        })
    }

    /// Deterministic bounded search for a length-n sequence inside the ideal,
    /// regular on every module in `modules` (simultaneously, step by step),
    /// and annihilating Ext^1(N, Omega N) when `annihilate` is given.
    ///
    /// Candidates are homogeneous combinations of the ideal generators:
    /// single scaled monomial multiples and pairs first, then pseudorandom
    /// combinations from a stream seeded by the input data.
    pub fn find_regular_sequence(
        &self,
        ideal: &Ideal,
        modules: &[PresentedModule],
        n: usize,
        annihilate: Option<&PresentedModule>,
    ) -> Result<SequenceSearch> {
        if n == 0 {
            return Err(usage("sequence length must be at least 1"));
        }
        if ideal.gens.is_empty() {
            return Ok(SequenceSearch::NotFound { trials: 0 });
        }
        let ring = ideal.ring.clone();
        let mut chain: Vec<PresentedModule> = modules.to_vec();
        let mut found: Vec<Polynomial> = Vec::new();
        let mut seed = self.config.seed ^ seed_from(&ring, &ideal.gens);
        let budget = self.config.trial_budget;
        let mut total_trials = 0usize;

        for _slot in 0..n {
            let mut slot_found = None;
            let mut trials = 0usize;
            'candidates: for cand in CandidateStream::new(&ring, &ideal.gens, &mut seed) {
                if trials >= budget {
                    break;
                }
                trials += 1;
                total_trials += 1;
                let cand = ring.nf_poly(&cand);
                if cand.is_zero() {
                    continue;
                }
                if let Some(nmod) = annihilate {
                    if !self.annihilates_ext1(&cand, nmod)? {
                        continue 'candidates;
                    }
                }
                for m in &chain {
                    if !self.is_regular_element(&cand, m)? {
                        continue 'candidates;
                    }
                }
                slot_found = Some(cand);
                break;
            }
            match slot_found {
                Some(x) => {
                    chain = chain
                        .iter()
                        .map(|m| m.quotient_by_elements(std::slice::from_ref(&x)))
                        .collect::<Result<_>>()?;
                    found.push(x);
                }
                None => {
                    return Ok(SequenceSearch::NotFound {
                        trials: total_trials,
                    })
                }
            }
        }
        Ok(SequenceSearch::Found(RegularSequence {
            elements: found,
            certified_on: modules.to_vec(),
        }))
    }
}

fn seed_from(ring: &QuotientRing, gens: &[Polynomial]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    let mut eat = |v: u64| {
        h ^= v;
        h = h.wrapping_mul(0x100000001b3);
    };
    eat(ring.base.field.modulus());
    eat(ring.nvars() as u64);
    for g in gens {
        for (m, c) in g.terms() {
            for &e in m.exps() {
                eat(e as u64);
            }
            eat(*c);
        }
    }
    h
}

// Deterministic candidate generator: for target degrees d, d+1, ... emit all
// single monomial multiples m*g_j of degree d, then pairs m1*g_j1 + m2*g_j2,
// then pseudorandom combinations.
struct CandidateStream<'a> {
    ring: &'a QuotientRing,
    gens: &'a [Polynomial],
    state: &'a mut u64,
    queue: std::collections::VecDeque<Polynomial>,
    degree: u32,
    min_degree: u32,
}

impl<'a> CandidateStream<'a> {
    fn new(ring: &'a QuotientRing, gens: &'a [Polynomial], state: &'a mut u64) -> Self {
        let min_degree = gens
            .iter()
            .filter_map(|g| g.homogeneous_degree())
            .min()
            .unwrap_or(1);
        CandidateStream {
            ring,
            gens,
            state,
            queue: std::collections::VecDeque::new(),
            degree: min_degree,
            min_degree,
        }
    }

    fn refill(&mut self) {
        let d = self.degree;
        self.degree += 1;
        let base = &self.ring.base;
        // All scaled monomial multiples that land in degree d.
        let mut singles: Vec<Polynomial> = Vec::new();
        for g in self.gens {
            let gd = match g.homogeneous_degree() {
                Some(gd) if gd <= d => gd,
                _ => continue,
            };
            for m in monomials_of_degree(base.nvars(), d - gd) {
                singles.push(base.mul_term(g, &m, 1));
            }
        }
        self.queue.extend(singles.iter().cloned());
        // Pairs of distinct singles.
        for i in 0..singles.len() {
            for j in (i + 1)..singles.len() {
                self.queue
                    .push_back(base.add(&singles[i], &singles[j]));
            }
        }
        // Pseudorandom combinations at degrees beyond the structured ones.
        if d >= self.min_degree + 2 {
            for _ in 0..16 {
                let mut acc = base.zero();
                for s in &singles {
                    *self.state ^= *self.state << 13;
                    *self.state ^= *self.state >> 7;
                    *self.state ^= *self.state << 17;
                    let c = *self.state % base.field.modulus();
                    if c % 3 != 0 {
                        acc = base.add(&acc, &base.scale(s, c));
                    }
                }
                self.queue.push_back(acc);
            }
        }
    }
}

impl<'a> Iterator for CandidateStream<'a> {
    type Item = Polynomial;

    fn next(&mut self) -> Option<Polynomial> {
        while self.queue.is_empty() {
            if self.degree > self.min_degree + 8 {
                return None;
            }
            self.refill();
        }
        self.queue.pop_front()
    }
}

fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<crate::monomial::Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(
        nvars: usize,
        var: usize,
        left: u32,
        cur: &mut Vec<u16>,
        out: &mut Vec<crate::monomial::Monomial>,
    ) {
        if var + 1 == nvars {
            cur[var] = left as u16;
            out.push(crate::monomial::Monomial::from_exps(cur.clone()));
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
