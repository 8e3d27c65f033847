//! The graded quotient ring R = F_p[x_1..x_v]/I.

use std::sync::Arc;

use crate::error::{usage, Result};
use crate::field::PrimeField;
use crate::freemod::{FreeModule, ModElement};
use crate::groebner::{self, GroebnerBasis, SubmodulePresentation, DEFAULT_DEGREE_CAP};
use crate::hilbert::LeadTermModule;
use crate::monomial::Monomial;
use crate::order::{ModuleOrder, TermOrder};
use crate::poly::{PolyRing, Polynomial};

/// A graded quotient of a polynomial ring over a prime field, carrying a
/// reduced Groebner basis of its relation ideal, its Krull dimension, and a
/// complete-intersection marker.
#[derive(Debug, Clone)]
pub struct QuotientRing {
    pub base: PolyRing,
    pub relations: Vec<Polynomial>,
    ideal_gb: Vec<Polynomial>,
    pub dimension: usize,
    /// `Some(c)` when the relations form a regular sequence of length c.
    pub ci_codim: Option<usize>,
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.relations == other.relations
    }
}
impl Eq for QuotientRing {}

impl QuotientRing {
    /// Builds the ring, checking the prime, homogeneity of the relations,
    /// and computing the relation Groebner basis and Krull dimension.
    pub fn new(
        p: u64,
        vars: Vec<String>,
        relations: Vec<Polynomial>,
        order: TermOrder,
    ) -> Result<Arc<Self>> {
        let field = PrimeField::new(p)?;
        if vars.is_empty() {
            return Err(usage("a ring needs at least one variable"));
        }
        let base = PolyRing::new(field, vars, order);
        for f in &relations {
            if f.is_zero() {
                return Err(usage("zero polynomial cannot be a ring relation"));
            }
            match f.homogeneous_degree() {
                Some(d) if d >= 1 => {}
                _ => {
                    return Err(usage(
                        "ring relations must be homogeneous of positive degree",
                    ))
                }
            }
        }
        let gb = ideal_groebner(&base, &relations)?;
        if gb.iter().any(|f| f.degree() == Some(0)) {
            return Err(usage("relation ideal is the unit ideal"));
        }
        let dimension = dimension_from_gb(&base, &gb);
        let ci_codim = if dimension + relations.len() == base.nvars() {
            Some(relations.len())
        } else {
            None
        };
        Ok(Arc::new(QuotientRing {
            base,
            relations,
            ideal_gb: gb,
            dimension,
            ci_codim,
        }))
    }

    /// The polynomial ring itself (no relations).
    pub fn polynomial(p: u64, vars: Vec<String>, order: TermOrder) -> Result<Arc<Self>> {
        QuotientRing::new(p, vars, Vec::new(), order)
    }

    pub fn nvars(&self) -> usize {
        self.base.nvars()
    }

    pub fn ideal_gb(&self) -> &[Polynomial] {
        &self.ideal_gb
    }

    pub fn is_complete_intersection(&self) -> bool {
        self.ci_codim.is_some()
    }

    /// Canonical representative of `f` in R: normal form against the
    /// relation Groebner basis.
    pub fn nf_poly(&self, f: &Polynomial) -> Polynomial {
        reduce_poly(&self.base, f, &self.ideal_gb)
    }

    /// Reduces every coordinate of a free-module element.
    pub fn nf_element(&self, e: &ModElement) -> ModElement {
        ModElement::from_comps(
            e.comps()
                .iter()
                .map(|(p, f)| (*p, self.nf_poly(f)))
                .collect(),
        )
    }

    /// The ring relations placed in every basis position of `ambient`:
    /// the elements `g * e_i` for g in I, i a basis position.
    pub fn quotient_relations_for(&self, ambient: &FreeModule) -> Vec<ModElement> {
        let mut out = Vec::with_capacity(self.ideal_gb.len() * ambient.rank());
        for pos in 0..ambient.rank() {
            for g in &self.ideal_gb {
                out.push(ModElement::unit(pos, g.clone()));
            }
        }
        out
    }

    /// Groebner basis over R of a generator list in `ambient` (the quotient
    /// relations are adjoined automatically).
    pub fn submodule_gb(
        &self,
        ambient: &FreeModule,
        gens: &[ModElement],
        cap: u32,
    ) -> Result<GroebnerBasis> {
        let pres = SubmodulePresentation::new(
            ambient.clone(),
            gens.to_vec(),
            self.quotient_relations_for(ambient),
        )?;
        groebner::buchberger(&self.base, &pres, ModuleOrder::TermOverPosition, cap)
    }

    /// The variables as degree-one ring elements (generators of the
    /// irrelevant maximal ideal).
    pub fn variables(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.base.var(i)).collect()
    }

    /// Lead-term staircase of the relation ideal.
    pub fn ideal_lead_terms(&self) -> LeadTermModule {
        let leads: Vec<(usize, Monomial)> = self
            .ideal_gb
            .iter()
            .filter_map(|f| f.lead().map(|(m, _)| (0, m.clone())))
            .collect();
        LeadTermModule::new(1, self.nvars(), leads)
    }
}

fn ideal_groebner(base: &PolyRing, relations: &[Polynomial]) -> Result<Vec<Polynomial>> {
    if relations.is_empty() {
        return Ok(Vec::new());
    }
    let ambient = FreeModule::new(vec![0]);
    let gens: Vec<ModElement> = relations
        .iter()
        .map(|f| ModElement::unit(0, f.clone()))
        .collect();
    let pres = SubmodulePresentation::new(ambient, gens, Vec::new())?;
    let gb = groebner::buchberger(base, &pres, ModuleOrder::TermOverPosition, DEFAULT_DEGREE_CAP)?;
    Ok(gb
        .elements
        .into_iter()
        .map(|e| e.component(0).cloned().unwrap_or_default())
        .collect())
}

fn dimension_from_gb(base: &PolyRing, gb: &[Polynomial]) -> usize {
    let leads: Vec<(usize, Monomial)> = gb
        .iter()
        .filter_map(|f| f.lead().map(|(m, _)| (0, m.clone())))
        .collect();
    let lt = LeadTermModule::new(1, base.nvars(), leads);
    lt.quotient_dimension().unwrap_or(0)
}

// Plain polynomial normal form against a monic polynomial basis.
fn reduce_poly(base: &PolyRing, f: &Polynomial, gb: &[Polynomial]) -> Polynomial {
    if gb.is_empty() {
        return f.clone();
    }
    let mut work = f.clone();
    let mut rem = base.zero();
    'outer: while let Some((m, c)) = work.lead() {
        let (m, c) = (m.clone(), c);
        for g in gb {
            let (gm, _) = g.lead().unwrap();
            if gm.divides(&m) {
                let q = m.checked_div(gm).unwrap();
                work = base.sub(&work, &base.mul_term(g, &q, c));
                continue 'outer;
            }
        }
        let t = base.from_terms(vec![(m, c)]);
        rem = base.add(&rem, &t);
        work = base.sub(&work, &t);
    }
    rem
}
