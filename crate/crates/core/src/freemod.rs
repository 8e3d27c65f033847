//! Graded free modules and their elements.
//!
//! A free module is a list of basis twists: position `i` carries the
//! generator degree `twists[i]`, i.e. the module is `⊕_i R(-twists[i])`.
//! Elements store one polynomial per occupied basis position.

use std::cmp::Ordering;

use crate::monomial::Monomial;
use crate::order::{ModuleOrder, TermOrder};
use crate::poly::{PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeModule {
    pub twists: Vec<i64>,
}

impl FreeModule {
    pub fn new(twists: Vec<i64>) -> Self {
        FreeModule { twists }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// Internal degree of the module term `m * e_pos`.
    pub fn term_degree(&self, pos: usize, m: &Monomial) -> i64 {
        self.twists[pos] + m.degree() as i64
    }
}

/// Result of asking a free-module element for its internal degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Homogeneous(i64),
    NonHomogeneous,
}

/// An element of a graded free module: sparse components by basis position.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModElement {
    comps: Vec<(usize, Polynomial)>,
}

impl ModElement {
    pub fn zero() -> Self {
        ModElement { comps: Vec::new() }
    }

    pub fn unit(pos: usize, poly: Polynomial) -> Self {
        if poly.is_zero() {
            ModElement::zero()
        } else {
            ModElement {
                comps: vec![(pos, poly)],
            }
        }
    }

    pub fn from_comps(mut comps: Vec<(usize, Polynomial)>) -> Self {
        comps.retain(|(_, p)| !p.is_zero());
        comps.sort_by_key(|(pos, _)| *pos);
        debug_assert!(comps.windows(2).all(|w| w[0].0 != w[1].0));
        ModElement { comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn comps(&self) -> &[(usize, Polynomial)] {
        &self.comps
    }

    pub fn component(&self, pos: usize) -> Option<&Polynomial> {
        self.comps
            .binary_search_by_key(&pos, |(p, _)| *p)
            .ok()
            .map(|i| &self.comps[i].1)
    }

    pub fn add(&self, ring: &PolyRing, other: &ModElement) -> ModElement {
        let mut out = Vec::with_capacity(self.comps.len() + other.comps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.comps.len() && j < other.comps.len() {
            match self.comps[i].0.cmp(&other.comps[j].0) {
                Ordering::Less => {
                    out.push(self.comps[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.comps[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = ring.add(&self.comps[i].1, &other.comps[j].1);
                    if !s.is_zero() {
                        out.push((self.comps[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.comps[i..]);
        out.extend_from_slice(&other.comps[j..]);
        ModElement { comps: out }
    }

    pub fn neg(&self, ring: &PolyRing) -> ModElement {
        ModElement {
            comps: self
                .comps
                .iter()
                .map(|(p, f)| (*p, ring.neg(f)))
                .collect(),
        }
    }

    pub fn sub(&self, ring: &PolyRing, other: &ModElement) -> ModElement {
        self.add(ring, &other.neg(ring))
    }

    pub fn scale(&self, ring: &PolyRing, c: u64) -> ModElement {
        if c % ring.field.modulus() == 0 {
            return ModElement::zero();
        }
        ModElement {
            comps: self
                .comps
                .iter()
                .map(|(p, f)| (*p, ring.scale(f, c)))
                .collect(),
        }
    }

    /// Multiplies by the ring term `c * m`.
    pub fn mul_term(&self, ring: &PolyRing, m: &Monomial, c: u64) -> ModElement {
        if c % ring.field.modulus() == 0 {
            return ModElement::zero();
        }
        ModElement {
            comps: self
                .comps
                .iter()
                .map(|(p, f)| (*p, ring.mul_term(f, m, c)))
                .collect(),
        }
    }

    pub fn mul_poly(&self, ring: &PolyRing, g: &Polynomial) -> ModElement {
        let mut acc = ModElement::zero();
        for (m, c) in g.terms() {
            acc = acc.add(ring, &self.mul_term(ring, m, *c));
        }
        acc
    }

    /// The largest term under the given module order: `(position, monomial,
    /// coefficient)`.
    pub fn lead_term(
        &self,
        order: TermOrder,
        morder: &ModuleOrder,
    ) -> Option<(usize, &Monomial, u64)> {
        let mut best: Option<(usize, &Monomial, u64)> = None;
        for (pos, poly) in &self.comps {
            let (m, c) = poly.lead()?;
            match &best {
                None => best = Some((*pos, m, c)),
                Some((bpos, bm, _)) => {
                    if morder.cmp(order, (m, *pos), (bm, *bpos)) == Ordering::Greater {
                        best = Some((*pos, m, c));
                    }
                }
            }
        }
        best
    }

    /// Internal degree when homogeneous: deg(term) + twist(position) must
    /// agree across all terms.
    pub fn degree(&self, ambient: &FreeModule) -> Degree {
        if self.is_zero() {
            return Degree::Zero;
        }
        let mut deg: Option<i64> = None;
        for (pos, poly) in &self.comps {
            for (m, _) in poly.terms() {
                let d = ambient.term_degree(*pos, m);
                match deg {
                    None => deg = Some(d),
                    Some(existing) if existing != d => return Degree::NonHomogeneous,
                    _ => {}
                }
            }
        }
        Degree::Homogeneous(deg.unwrap())
    }

    pub fn is_homogeneous(&self, ambient: &FreeModule) -> bool {
        !matches!(self.degree(ambient), Degree::NonHomogeneous)
    }

    /// Keeps the first `prefix` positions, dropping the rest.
    pub fn project_prefix(&self, prefix: usize) -> ModElement {
        ModElement {
            comps: self
                .comps
                .iter()
                .filter(|(p, _)| *p < prefix)
                .cloned()
                .collect(),
        }
    }

    /// Shifts every position by `offset`.
    pub fn shift_positions(&self, offset: usize) -> ModElement {
        ModElement {
            comps: self
                .comps
                .iter()
                .map(|(p, f)| (*p + offset, f.clone()))
                .collect(),
        }
    }

    pub fn fmt_with(&self, ring: &PolyRing) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.comps
            .iter()
            .map(|(p, f)| format!("({})*e{}", ring.fmt_poly(f), p))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}
