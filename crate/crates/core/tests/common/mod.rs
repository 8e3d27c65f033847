//! Shared fixture rings and modules for the integration suites.
#![allow(dead_code)]

pub mod oracles;

use std::sync::Arc;

use betti_core::field::DEFAULT_PRIME;
use betti_core::{PresentedModule, QuotientRing, TermOrder};

pub fn names(vars: &[&str]) -> Vec<String> {
    vars.iter().map(|s| s.to_string()).collect()
}

/// F_p[vars] with optional relations given as strings.
pub fn ring(vars: &[&str], rels: &[&str], order: TermOrder) -> Arc<QuotientRing> {
    let probe = QuotientRing::polynomial(DEFAULT_PRIME, names(vars), order).unwrap();
    let rels: Vec<_> = rels.iter().map(|s| probe.base.parse(s).unwrap()).collect();
    QuotientRing::new(DEFAULT_PRIME, names(vars), rels, order).unwrap()
}

/// F_p[x,y], regular.
pub fn poly_xy() -> Arc<QuotientRing> {
    ring(&["x", "y"], &[], TermOrder::GrevLex)
}

/// F_p[x,y]/(xy), the small hypersurface.
pub fn hyper_xy() -> Arc<QuotientRing> {
    ring(&["x", "y"], &["x*y"], TermOrder::GrevLex)
}

/// F_p[x,y,z,w]/(xy), the Example-1.2 hypersurface.
pub fn hyper_xyzw() -> Arc<QuotientRing> {
    ring(&["x", "y", "z", "w"], &["x*y"], TermOrder::GrevLex)
}

/// F_p[x,y,z,w]/(xy,zw), the codimension-two complete intersection.
pub fn ci_codim2() -> Arc<QuotientRing> {
    ring(&["x", "y", "z", "w"], &["x*y", "z*w"], TermOrder::GrevLex)
}

/// Cyclic module R/(gens).
pub fn cyclic(r: &Arc<QuotientRing>, gens: &[&str]) -> PresentedModule {
    let gens: Vec<_> = gens.iter().map(|s| r.base.parse(s).unwrap()).collect();
    PresentedModule::quotient_by_ideal(r.clone(), &gens).unwrap()
}

pub fn residue_field(r: &Arc<QuotientRing>) -> PresentedModule {
    PresentedModule::residue_field(r.clone())
}
