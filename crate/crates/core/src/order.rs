//! Total monomial orders for the ring and their extensions to free modules.

use std::cmp::Ordering;

use crate::error::{usage, Result};
use crate::monomial::Monomial;

/// Term order on ring monomials. Variables are ordered x_0 > x_1 > ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TermOrder {
    /// Degree first, ties by reverse lexicographic comparison.
    #[default]
    GrevLex,
    /// Pure lexicographic.
    Lex,
}

impl TermOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars(), "monomials from different rings");
        match self {
            TermOrder::Lex => a.exps().cmp(b.exps()),
            TermOrder::GrevLex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    other => return other,
                }
                // Reverse lex tie-break: the last nonzero entry of a - b
                // decides; negative entry means a is larger.
                for (ea, eb) in a.exps().iter().zip(b.exps()).rev() {
                    match ea.cmp(eb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {}
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TermOrder::GrevLex => "grevlex",
            TermOrder::Lex => "lex",
        }
    }
}

/// Validated comparison of two monomials; errors on mismatched variable sets.
pub fn monomial_cmp(order: TermOrder, a: &Monomial, b: &Monomial) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(usage(format!(
            "cannot compare monomials in {} and {} variables",
            a.nvars(),
            b.nvars()
        )));
    }
    Ok(order.cmp(a, b))
}

/// Extension of a term order to a free module with a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum ModuleOrder {
    /// Basis position decides first (lower index larger), then the term order.
    PositionOverTerm,
    /// Term order decides first, ties broken by basis position (lower larger).
    #[default]
    TermOverPosition,
    /// Order induced by a list of lead terms `(position, monomial)`:
    /// m_a * lt(g_{pos a}) vs m_b * lt(g_{pos b}) in the given base module
    /// order, ties by position index (lower larger).
    Schreyer {
        base: Box<ModuleOrder>,
        lead_terms: Vec<(usize, Monomial)>,
    },
}

impl ModuleOrder {
    /// Compares module terms `m_a * e_{pa}` and `m_b * e_{pb}`.
    pub fn cmp(
        &self,
        order: TermOrder,
        a: (&Monomial, usize),
        b: (&Monomial, usize),
    ) -> Ordering {
        let (ma, pa) = a;
        let (mb, pb) = b;
        match self {
            ModuleOrder::PositionOverTerm => {
                pb.cmp(&pa).then_with(|| order.cmp(ma, mb))
            }
            ModuleOrder::TermOverPosition => {
                order.cmp(ma, mb).then_with(|| pb.cmp(&pa))
            }
            ModuleOrder::Schreyer { base, lead_terms } => {
                let (tpa, tma) = (&lead_terms[pa].0, ma.mul(&lead_terms[pa].1));
                let (tpb, tmb) = (&lead_terms[pb].0, mb.mul(&lead_terms[pb].1));
                base.cmp(order, (&tma, *tpa), (&tmb, *tpb))
                    .then_with(|| pb.cmp(&pa))
            }
        }
    }
}
