//! Buchberger Groebner bases for homogeneous submodules of graded free
//! modules over the ambient polynomial ring, normal forms, and syzygy
//! generators via Schreyer's construction.
//!
//! Quotient-ring computations never happen here directly: callers adjoin the
//! ring relations (`I * e_i`) to the generator list, so every basis below is
//! over the ambient polynomial ring.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{internal, usage, Error, Result};
use crate::freemod::{FreeModule, ModElement};
use crate::monomial::Monomial;
use crate::order::{ModuleOrder, TermOrder};
use crate::poly::{PolyRing, Polynomial};

/// Default cap on the monomial degree of an S-pair lcm. Converts runaway
/// computations into actionable resource errors.
pub const DEFAULT_DEGREE_CAP: u32 = 40;

/// Generators of a submodule of a graded free module, together with the
/// quotient relations that implement computation over R = S/I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmodulePresentation {
    pub ambient: FreeModule,
    pub generators: Vec<ModElement>,
    pub quotient_relations: Vec<ModElement>,
}

impl SubmodulePresentation {
    /// Validates that every generator is homogeneous in the ambient grading.
    pub fn new(
        ambient: FreeModule,
        generators: Vec<ModElement>,
        quotient_relations: Vec<ModElement>,
    ) -> Result<Self> {
        for g in generators.iter().chain(&quotient_relations) {
            if !g.is_homogeneous(&ambient) {
                return Err(usage("submodule generators must be homogeneous"));
            }
        }
        Ok(SubmodulePresentation {
            ambient,
            generators,
            quotient_relations,
        })
    }

    fn all_inputs(&self) -> Vec<ModElement> {
        let mut v = self.generators.clone();
        v.extend(self.quotient_relations.iter().cloned());
        v
    }
}

/// A reduced Groebner basis: monic elements, no term of any element divisible
/// by the lead term of another.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub ambient: FreeModule,
    pub order: TermOrder,
    pub morder: ModuleOrder,
    pub elements: Vec<ModElement>,
    pub reduced: bool,
}

impl GroebnerBasis {
    /// The module order induced by this basis on the free module over its
    /// elements (Schreyer order).
    pub fn schreyer_order(&self, base: ModuleOrder) -> ModuleOrder {
        let lead_terms = self
            .elements
            .iter()
            .map(|g| {
                let (pos, m, _) = g.lead_term(self.order, &self.morder).expect("nonzero");
                (pos, m.clone())
            })
            .collect();
        ModuleOrder::Schreyer {
            base: Box::new(base),
            lead_terms,
        }
    }
}

/// Syzygy generators of an input list, expressed in the free module whose
/// basis positions correspond to the inputs (Schreyer twists: the internal
/// degrees of those inputs).
#[derive(Debug, Clone)]
pub struct SyzygyBasis {
    pub ambient: FreeModule,
    pub syzygies: Vec<ModElement>,
}

// An S-pair waiting to be processed, keyed for the normal selection strategy:
// lowest internal lcm degree first, ties by lead-monomial order then indices.
struct Pair {
    degree: i64,
    key: Vec<i32>,
    i: usize,
    j: usize,
    lcm: Monomial,
    pos: usize,
}

impl PartialEq for Pair {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_key(other) == Ordering::Equal
    }
}
impl Eq for Pair {}
impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Pair {
    // Reversed: BinaryHeap is a max-heap and we pop the smallest pair first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_key(other).reverse()
    }
}

impl Pair {
    fn cmp_key(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.key.cmp(&other.key))
            .then_with(|| (self.i, self.j).cmp(&(other.i, other.j)))
    }
}

// Encodes a monomial so that lexicographic comparison of keys agrees with the
// term order; lets pairs live in a plain binary heap.
fn order_key(order: TermOrder, m: &Monomial) -> Vec<i32> {
    match order {
        TermOrder::Lex => m.exps().iter().map(|&e| e as i32).collect(),
        TermOrder::GrevLex => {
            let mut k = Vec::with_capacity(m.nvars() + 1);
            k.push(m.degree() as i32);
            for &e in m.exps().iter().rev() {
                k.push(-(e as i32));
            }
            k
        }
    }
}

struct Engine<'a> {
    ring: &'a PolyRing,
    ambient: FreeModule,
    order: TermOrder,
    morder: ModuleOrder,
    cap: u32,
    track: bool,
    // basis elements, their lead terms, and (when tracking) expressions over
    // the input list
    elems: Vec<ModElement>,
    leads: Vec<(usize, Monomial)>,
    exprs: Vec<ModElement>,
    by_pos: Vec<Vec<usize>>,
    pairs: BinaryHeap<Pair>,
    treated: std::collections::HashSet<(usize, usize)>,
}

impl<'a> Engine<'a> {
    fn new(
        ring: &'a PolyRing,
        ambient: FreeModule,
        order: TermOrder,
        morder: ModuleOrder,
        cap: u32,
        track: bool,
    ) -> Self {
        let rank = ambient.rank();
        Engine {
            ring,
            ambient,
            order,
            morder,
            cap,
            track,
            elems: Vec::new(),
            leads: Vec::new(),
            exprs: Vec::new(),
            by_pos: vec![Vec::new(); rank],
            pairs: BinaryHeap::new(),
            treated: std::collections::HashSet::new(),
        }
    }

    // Fully reduces `f` (and its expression, in lock step) against the
    // current basis. Deterministic: lowest-index divisor first.
    fn reduce_full(&self, mut f: ModElement, mut expr: ModElement) -> (ModElement, ModElement) {
        let mut rem = ModElement::zero();
        'outer: while let Some((pos, m, c)) = f.lead_term(self.order, &self.morder) {
            let (pos, m, c) = (pos, m.clone(), c);
            for &idx in &self.by_pos[pos] {
                let (lpos, lm) = &self.leads[idx];
                debug_assert_eq!(*lpos, pos);
                if lm.divides(&m) {
                    let q = m.checked_div(lm).unwrap();
                    f = f.sub(self.ring, &self.elems[idx].mul_term(self.ring, &q, c));
                    if self.track {
                        expr = expr.sub(self.ring, &self.exprs[idx].mul_term(self.ring, &q, c));
                    }
                    continue 'outer;
                }
            }
            // Lead term irreducible: move it to the remainder.
            let t = ModElement::unit(pos, self.ring.from_terms(vec![(m.clone(), c)]));
            rem = rem.add(self.ring, &t);
            f = f.sub(self.ring, &t);
        }
        (rem, expr)
    }

    // Like `reduce_full` but records the quotients against basis indices;
    // used for division against a finished basis.
    fn divide(&self, mut f: ModElement) -> (ModElement, Vec<(usize, Polynomial)>) {
        let mut quots: Vec<Polynomial> = vec![Polynomial::default(); self.elems.len()];
        let mut rem = ModElement::zero();
        'outer: while let Some((pos, m, c)) = f.lead_term(self.order, &self.morder) {
            let (pos, m, c) = (pos, m.clone(), c);
            for &idx in &self.by_pos[pos] {
                let (_, lm) = &self.leads[idx];
                if lm.divides(&m) {
                    let q = m.checked_div(lm).unwrap();
                    f = f.sub(self.ring, &self.elems[idx].mul_term(self.ring, &q, c));
                    quots[idx] =
                        self.ring
                            .add(&quots[idx], &self.ring.from_terms(vec![(q, c)]));
                    continue 'outer;
                }
            }
            let t = ModElement::unit(pos, self.ring.from_terms(vec![(m.clone(), c)]));
            rem = rem.add(self.ring, &t);
            f = f.sub(self.ring, &t);
        }
        let quots = quots
            .into_iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .collect();
        (rem, quots)
    }

    fn push_basis(&mut self, elem: ModElement, expr: ModElement) {
        let (pos, m, c) = elem
            .lead_term(self.order, &self.morder)
            .map(|(p, m, c)| (p, m.clone(), c))
            .expect("nonzero element");
        // Monic normalization.
        let inv = self.ring.field.inv(c);
        let elem = elem.scale(self.ring, inv);
        let expr = expr.scale(self.ring, inv);
        let idx = self.elems.len();
        // New S-pairs against existing elements with the same lead position.
        for &other in &self.by_pos[pos] {
            let (_, om) = &self.leads[other];
            let lcm = m.lcm(om);
            let deg = self.ambient.term_degree(pos, &lcm);
            self.pairs.push(Pair {
                degree: deg,
                key: order_key(self.order, &lcm),
                i: other,
                j: idx,
                lcm,
                pos,
            });
        }
        self.elems.push(elem);
        self.leads.push((pos, m));
        self.exprs.push(expr);
        self.by_pos[pos].push(idx);
    }

    fn insert_inputs(&mut self, inputs: &[ModElement]) {
        for (k, g) in inputs.iter().enumerate() {
            let expr = if self.track {
                ModElement::unit(k, self.ring.one())
            } else {
                ModElement::zero()
            };
            let (rem, expr) = self.reduce_full(g.clone(), expr);
            if !rem.is_zero() {
                self.push_basis(rem, expr);
            }
        }
    }

    // Chain criterion: some third element divides the lcm and both side
    // pairs were already treated (well-founded by treatment time).
    fn chain_skip(&self, p: &Pair) -> bool {
        for &k in &self.by_pos[p.pos] {
            if k == p.i || k == p.j {
                continue;
            }
            if self.leads[k].1.divides(&p.lcm) {
                let a = (k.min(p.i), k.max(p.i));
                let b = (k.min(p.j), k.max(p.j));
                if self.treated.contains(&a) && self.treated.contains(&b) {
                    return true;
                }
            }
        }
        false
    }

    fn complete(&mut self) -> Result<()> {
        while let Some(p) = self.pairs.pop() {
            self.treated.insert((p.i, p.j));
            // Product criterion is only valid in the ideal (rank 1) case.
            if self.ambient.rank() == 1 && self.leads[p.i].1.coprime_with(&self.leads[p.j].1) {
                continue;
            }
            if self.chain_skip(&p) {
                continue;
            }
            if p.lcm.degree() > self.cap {
                return Err(Error::Resource {
                    what: format!("S-pair ({}, {}) lcm monomial degree", p.i, p.j),
                    degree: p.lcm.degree(),
                });
            }
            let (spoly, sexpr) = self.s_pair(p.i, p.j, &p.lcm);
            let (rem, rexpr) = self.reduce_full(spoly, sexpr);
            if !rem.is_zero() {
                self.push_basis(rem, rexpr);
            }
        }
        Ok(())
    }

    fn s_pair(&self, i: usize, j: usize, lcm: &Monomial) -> (ModElement, ModElement) {
        let qi = lcm.checked_div(&self.leads[i].1).unwrap();
        let qj = lcm.checked_div(&self.leads[j].1).unwrap();
        // Elements are monic, so the S-pair is a plain difference.
        let s = self.elems[i]
            .mul_term(self.ring, &qi, 1)
            .sub(self.ring, &self.elems[j].mul_term(self.ring, &qj, 1));
        let e = if self.track {
            self.exprs[i]
                .mul_term(self.ring, &qi, 1)
                .sub(self.ring, &self.exprs[j].mul_term(self.ring, &qj, 1))
        } else {
            ModElement::zero()
        };
        (s, e)
    }

    // Inter-reduction to the unique reduced basis. Keeps expressions in sync.
    fn reduce_basis(&mut self) {
        // Minimal basis: drop elements whose lead is divisible by another
        // kept lead. Sort ascending so potential divisors come first.
        let mut idxs: Vec<usize> = (0..self.elems.len()).collect();
        idxs.sort_by(|&a, &b| {
            self.morder
                .cmp(
                    self.order,
                    (&self.leads[a].1, self.leads[a].0),
                    (&self.leads[b].1, self.leads[b].0),
                )
                .then(a.cmp(&b))
        });
        let mut kept: Vec<usize> = Vec::new();
        for &i in &idxs {
            let (pos, m) = &self.leads[i];
            let dominated = kept.iter().any(|&k| {
                let (kpos, km) = &self.leads[k];
                kpos == pos && km.divides(m)
            });
            if !dominated {
                kept.push(i);
            }
        }
        // Tail-reduce each kept element against the others.
        let mut new_elems = Vec::with_capacity(kept.len());
        let mut new_exprs = Vec::with_capacity(kept.len());
        for (slot, &i) in kept.iter().enumerate() {
            let others: Vec<usize> = kept
                .iter()
                .enumerate()
                .filter(|(s, _)| *s != slot)
                .map(|(_, &k)| k)
                .collect();
            let (rem, expr) =
                reduce_against(self.ring, self.order, &self.morder, &self.elems, &self.exprs, &others, self.elems[i].clone(), self.exprs[i].clone(), self.track);
            debug_assert!(!rem.is_zero());
            new_elems.push(rem);
            new_exprs.push(expr);
        }
        // Canonical final order: descending lead terms.
        let mut order_idx: Vec<usize> = (0..new_elems.len()).collect();
        let leads: Vec<(usize, Monomial)> = new_elems
            .iter()
            .map(|e| {
                let (p, m, _) = e.lead_term(self.order, &self.morder).unwrap();
                (p, m.clone())
            })
            .collect();
        order_idx.sort_by(|&a, &b| {
            self.morder
                .cmp(self.order, (&leads[b].1, leads[b].0), (&leads[a].1, leads[a].0))
                .then(a.cmp(&b))
        });
        self.elems = order_idx.iter().map(|&i| new_elems[i].clone()).collect();
        self.exprs = order_idx.iter().map(|&i| new_exprs[i].clone()).collect();
        self.leads = self
            .elems
            .iter()
            .map(|e| {
                let (p, m, _) = e.lead_term(self.order, &self.morder).unwrap();
                (p, m.clone())
            })
            .collect();
        self.by_pos = vec![Vec::new(); self.ambient.rank()];
        for (i, (p, _)) in self.leads.iter().enumerate() {
            self.by_pos[*p].push(i);
        }
    }
}

// Full reduction of `f` against an arbitrary index subset of a basis.
#[allow(clippy::too_many_arguments)]
fn reduce_against(
    ring: &PolyRing,
    order: TermOrder,
    morder: &ModuleOrder,
    elems: &[ModElement],
    exprs: &[ModElement],
    against: &[usize],
    mut f: ModElement,
    mut expr: ModElement,
    track: bool,
) -> (ModElement, ModElement) {
    let mut rem = ModElement::zero();
    'outer: while let Some((pos, m, c)) = f.lead_term(order, morder) {
        let (pos, m, c) = (pos, m.clone(), c);
        for &idx in against {
            let (lpos, lm, _) = elems[idx].lead_term(order, morder).unwrap();
            if lpos == pos && lm.divides(&m) {
                let q = m.checked_div(lm).unwrap();
                f = f.sub(ring, &elems[idx].mul_term(ring, &q, c));
                if track {
                    expr = expr.sub(ring, &exprs[idx].mul_term(ring, &q, c));
                }
                continue 'outer;
            }
        }
        let t = ModElement::unit(pos, ring.from_terms(vec![(m.clone(), c)]));
        rem = rem.add(ring, &t);
        f = f.sub(ring, &t);
    }
    (rem, expr)
}

/// Computes the reduced Groebner basis of the submodule generated by the
/// presentation's generators together with its quotient relations.
pub fn buchberger(
    ring: &PolyRing,
    pres: &SubmodulePresentation,
    morder: ModuleOrder,
    cap: u32,
) -> Result<GroebnerBasis> {
    let (gb, _) = buchberger_with_exprs(ring, pres, morder, cap, false)?;
    Ok(gb)
}

/// As `buchberger`, additionally returning for each basis element its
/// expression over the input list (generators followed by quotient
/// relations).
pub fn buchberger_tracked(
    ring: &PolyRing,
    pres: &SubmodulePresentation,
    morder: ModuleOrder,
    cap: u32,
) -> Result<(GroebnerBasis, Vec<ModElement>)> {
    buchberger_with_exprs(ring, pres, morder, cap, true)
}

fn buchberger_with_exprs(
    ring: &PolyRing,
    pres: &SubmodulePresentation,
    morder: ModuleOrder,
    cap: u32,
    track: bool,
) -> Result<(GroebnerBasis, Vec<ModElement>)> {
    let inputs = pres.all_inputs();
    let mut eng = Engine::new(
        ring,
        pres.ambient.clone(),
        ring.order,
        morder.clone(),
        cap,
        track,
    );
    eng.insert_inputs(&inputs);
    eng.complete()?;
    eng.reduce_basis();
    let gb = GroebnerBasis {
        ambient: pres.ambient.clone(),
        order: ring.order,
        morder,
        elements: eng.elems.clone(),
        reduced: true,
    };
    Ok((gb, eng.exprs))
}

/// Groebner basis grown one generator at a time; membership queries run
/// against the current (complete but not inter-reduced) basis. Used by the
/// greedy minimal-generator selection.
pub struct IncrementalGb<'a> {
    eng: Engine<'a>,
}

impl<'a> IncrementalGb<'a> {
    /// Starts from a fixed stock of elements (typically quotient relations).
    pub fn new(
        ring: &'a PolyRing,
        ambient: FreeModule,
        stock: &[ModElement],
        cap: u32,
    ) -> Result<Self> {
        let mut eng = Engine::new(
            ring,
            ambient,
            ring.order,
            ModuleOrder::TermOverPosition,
            cap,
            false,
        );
        eng.insert_inputs(stock);
        eng.complete()?;
        Ok(IncrementalGb { eng })
    }

    pub fn contains(&self, e: &ModElement) -> bool {
        let (rem, _) = self.eng.reduce_full(e.clone(), ModElement::zero());
        rem.is_zero()
    }

    pub fn add(&mut self, e: ModElement) -> Result<()> {
        let (rem, expr) = self.eng.reduce_full(e, ModElement::zero());
        if !rem.is_zero() {
            self.eng.push_basis(rem, expr);
            self.eng.complete()?;
        }
        Ok(())
    }
}

/// The unique fully reduced remainder of `f` against a Groebner basis. Zero
/// iff `f` lies in the submodule.
pub fn normal_form(ring: &PolyRing, f: &ModElement, gb: &GroebnerBasis) -> ModElement {
    let against: Vec<usize> = (0..gb.elements.len()).collect();
    let exprs: Vec<ModElement> = Vec::new();
    let (rem, _) = reduce_against(
        ring,
        gb.order,
        &gb.morder,
        &gb.elements,
        &exprs,
        &against,
        f.clone(),
        ModElement::zero(),
        false,
    );
    rem
}

/// Checks the Buchberger criterion directly: every S-pair of basis elements
/// reduces to zero. Used by tests and certification paths.
pub fn spairs_reduce_to_zero(ring: &PolyRing, gb: &GroebnerBasis) -> bool {
    for i in 0..gb.elements.len() {
        for j in (i + 1)..gb.elements.len() {
            let (pi, mi, _) = gb.elements[i].lead_term(gb.order, &gb.morder).unwrap();
            let (pj, mj, _) = gb.elements[j].lead_term(gb.order, &gb.morder).unwrap();
            if pi != pj {
                continue;
            }
            let lcm = mi.lcm(mj);
            let qi = lcm.checked_div(mi).unwrap();
            let qj = lcm.checked_div(mj).unwrap();
            let s = gb.elements[i]
                .mul_term(ring, &qi, 1)
                .sub(ring, &gb.elements[j].mul_term(ring, &qj, 1));
            if !normal_form(ring, &s, gb).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Generating set of the syzygy module of the presentation's generator list
/// over R (the projection already accounts for the quotient relations; the
/// returned coordinates are raw ambient-ring polynomials, not yet reduced
/// modulo the ring ideal).
///
/// Positions of the returned elements index the original generators; the
/// ambient twists are their internal degrees (Schreyer twists).
pub fn syzygy_basis(
    ring: &PolyRing,
    pres: &SubmodulePresentation,
    morder: ModuleOrder,
    cap: u32,
) -> Result<SyzygyBasis> {
    let inputs = pres.all_inputs();
    let n_gens = pres.generators.len();
    let twists: Vec<i64> = pres
        .generators
        .iter()
        .map(|g| match g.degree(&pres.ambient) {
            crate::freemod::Degree::Homogeneous(d) => Ok(d),
            crate::freemod::Degree::Zero => Ok(0),
            crate::freemod::Degree::NonHomogeneous => {
                Err(usage("syzygy_basis requires homogeneous generators"))
            }
        })
        .collect::<Result<_>>()?;
    let syz_ambient = FreeModule::new(twists);

    let mut eng = Engine::new(
        ring,
        pres.ambient.clone(),
        ring.order,
        morder.clone(),
        cap,
        true,
    );
    eng.insert_inputs(&inputs);
    eng.complete()?;
    eng.reduce_basis();

    let mut raw: Vec<ModElement> = Vec::new();

    // Reduction syzygies: columns of I - A*B, where A expresses the basis in
    // the inputs and B expresses the inputs in the basis.
    for (k, h) in inputs.iter().enumerate() {
        let (rem, quots) = eng.divide(h.clone());
        if !rem.is_zero() {
            // The basis generates the same submodule as the inputs.
            return Err(internal(
                "input fails to reduce to zero against its own Groebner basis",
            ));
        }
        let mut v = ModElement::unit(k, ring.one());
        for (t, q) in &quots {
            v = v.sub(ring, &eng.exprs[*t].mul_poly(ring, q));
        }
        if !v.is_zero() {
            raw.push(v);
        }
    }

    // Schreyer syzygies of the basis, mapped back through A.
    for i in 0..eng.elems.len() {
        for j in (i + 1)..eng.elems.len() {
            let (pi, mi) = eng.leads[i].clone();
            let (pj, mj) = eng.leads[j].clone();
            if pi != pj {
                continue;
            }
            let lcm = mi.lcm(&mj);
            let qi = lcm.checked_div(&mi).unwrap();
            let qj = lcm.checked_div(&mj).unwrap();
            let s = eng.elems[i]
                .mul_term(ring, &qi, 1)
                .sub(ring, &eng.elems[j].mul_term(ring, &qj, 1));
            let (rem, quots) = eng.divide(s);
            if !rem.is_zero() {
                return Err(internal("S-pair of a Groebner basis failed to reduce to zero"));
            }
            // sigma = qi*eps_i - qj*eps_j - sum quots, pushed through A.
            let mut v = eng.exprs[i]
                .mul_term(ring, &qi, 1)
                .sub(ring, &eng.exprs[j].mul_term(ring, &qj, 1));
            for (t, q) in &quots {
                v = v.sub(ring, &eng.exprs[*t].mul_poly(ring, q));
            }
            if !v.is_zero() {
                raw.push(v);
            }
        }
    }

    // Project away the quotient-relation coordinates.
    let syzygies: Vec<ModElement> = raw
        .into_iter()
        .map(|v| v.project_prefix(n_gens))
        .filter(|v| !v.is_zero())
        .collect();

    Ok(SyzygyBasis {
        ambient: syz_ambient,
        syzygies,
    })
}
