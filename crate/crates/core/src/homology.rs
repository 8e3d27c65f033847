//! Tor and Ext as presented subquotients of tensored / dualized resolution
//! complexes.

use crate::engine::{Engine, Length};
use crate::error::{usage, Result};
use crate::freemod::{FreeModule, ModElement};
use crate::groebner::{self};
use crate::hilbert::HilbertFunction;
use crate::module::{minimalize_presentation, syzygies_over_r, PresentedModule};
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomologyKind {
    Tor,
    Ext,
}

/// A computed Tor_i or Ext^i: a minimal presentation of the subquotient,
/// with its Hilbert data and length.
#[derive(Debug, Clone)]
pub struct HomologyModule {
    pub kind: HomologyKind,
    pub index: usize,
    pub value: PresentedModule,
    pub hilbert: HilbertFunction,
    pub length: Length,
    pub zero: bool,
}

/// A term of a complex of R-modules: free cover plus explicit relations.
#[derive(Debug, Clone)]
pub struct ChainModule {
    pub cover: FreeModule,
    pub rels: Vec<ModElement>,
}

impl ChainModule {
    fn zero() -> Self {
        ChainModule {
            cover: FreeModule::new(Vec::new()),
            rels: Vec::new(),
        }
    }
}

impl Engine {
    /// Tor_0..Tor_{i_max}(M, N) along the minimal resolution of M tensored
    /// with N.
    pub fn tor(
        &self,
        m: &PresentedModule,
        n: &PresentedModule,
        i_max: usize,
    ) -> Result<Vec<HomologyModule>> {
        m.same_ring(n)?;
        let res = self.minimal_resolution(m, i_max + 1)?;
        let ring = m.ring.clone();
        let chain = |i: usize| -> ChainModule {
            if res.rank(i) == 0 {
                return ChainModule::zero();
            }
            tensor_chain(&res.twists[i], n)
        };
        let map = |i: usize| -> Vec<ModElement> {
            // d_i tensor id_N: C_i -> C_{i-1}
            match res.differential(i) {
                None => Vec::new(),
                Some(cols) => tensor_map(cols, n.ngens()),
            }
        };
        let mut out = Vec::with_capacity(i_max + 1);
        for i in 0..=i_max {
            let at = chain(i);
            if at.cover.rank() == 0 {
                out.push(self.zero_homology(HomologyKind::Tor, i, &ring)?);
                continue;
            }
            let outgoing = if i == 0 {
                None
            } else {
                Some((chain(i - 1), map(i)))
            };
            let incoming = map(i + 1);
            let value = self.homology_subquotient(&ring, &at, outgoing, incoming)?;
            out.push(self.package(HomologyKind::Tor, i, value)?);
        }
        Ok(out)
    }

    /// Ext^0..Ext^{i_max}(M, N) along the dualized minimal resolution of M
    /// with coefficients in N.
    pub fn ext(
        &self,
        m: &PresentedModule,
        n: &PresentedModule,
        i_max: usize,
    ) -> Result<Vec<HomologyModule>> {
        m.same_ring(n)?;
        let res = self.minimal_resolution(m, i_max + 1)?;
        let ring = m.ring.clone();
        let chain = |i: usize| -> ChainModule {
            if res.rank(i) == 0 {
                return ChainModule::zero();
            }
            cotensor_chain(&res.twists[i], n)
        };
        // Hom(d_{i}, N): D^{i-1} -> D^{i} is the transposed block matrix.
        let map = |i: usize| -> Vec<ModElement> {
            match res.differential(i) {
                None => Vec::new(),
                Some(cols) => cotensor_map(cols, res.rank(i - 1), n.ngens()),
            }
        };
        let mut out = Vec::with_capacity(i_max + 1);
        for i in 0..=i_max {
            let at = chain(i);
            if at.cover.rank() == 0 {
                out.push(self.zero_homology(HomologyKind::Ext, i, &ring)?);
                continue;
            }
            // outgoing: D^i -> D^{i+1} given by d_{i+1} transposed
            let outgoing = if res.rank(i + 1) == 0 {
                None
            } else {
                Some((chain(i + 1), map(i + 1)))
            };
            // incoming: D^{i-1} -> D^i given by d_i transposed
            let incoming = if i == 0 { Vec::new() } else { map(i) };
            let value = self.homology_subquotient(&ring, &at, outgoing, incoming)?;
            out.push(self.package(HomologyKind::Ext, i, value)?);
        }
        Ok(out)
    }

    fn zero_homology(
        &self,
        kind: HomologyKind,
        index: usize,
        ring: &std::sync::Arc<QuotientRing>,
    ) -> Result<HomologyModule> {
        self.package(kind, index, PresentedModule::zero(ring.clone()))
    }

    fn package(
        &self,
        kind: HomologyKind,
        index: usize,
        value: PresentedModule,
    ) -> Result<HomologyModule> {
        let hilbert = self.hilbert_function(&value, self.config.degree_bound)?;
        let length = self.module_length(&value)?;
        let zero = value.has_no_generators();
        Ok(HomologyModule {
            kind,
            index,
            value,
            hilbert,
            length,
            zero,
        })
    }

    /// ker(outgoing)/im(incoming) at a chain position (homological
    /// indexing: the outgoing map lands in the PREVIOUS chain module).
    fn homology_subquotient(
        &self,
        ring: &std::sync::Arc<QuotientRing>,
        at: &ChainModule,
        outgoing: Option<(ChainModule, Vec<ModElement>)>,
        incoming_images: Vec<ModElement>,
    ) -> Result<PresentedModule> {
        let kernel = match outgoing {
            None => full_basis(ring, &at.cover),
            Some((target, map_cols)) => {
                self.kernel_gens(ring, &at.cover, &target, &map_cols)?
            }
        };
        self.subquotient(ring, &at.cover, kernel, &at.rels, incoming_images)
    }

    /// Reduced Groebner basis of the annihilator ideal Ann(M) = {f in R :
    /// f M = 0}, an exact isomorphism invariant used to sharpen the
    /// Betti-Hilbert equivalence proxy. Represented over the ambient
    /// polynomial ring (so it always contains the ring relations).
    pub fn annihilator_gb(&self, m: &PresentedModule) -> Result<Vec<Polynomial>> {
        let ring = m.ring.clone();
        if m.ngens() == 0 {
            return Ok(vec![ring.base.one()]);
        }
        // Stack one copy of the cover per generator, the copy for e_i
        // shifted so that e_i sits in degree zero; the diagonal element is
        // then homogeneous and f * diag lands in the stacked relations iff
        // f annihilates every generator of M.
        let cover = m.free_cover();
        let r = cover.rank();
        let mut stacked_twists = Vec::with_capacity(r * r);
        for i in 0..r {
            for k in 0..r {
                stacked_twists.push(cover.twists[k] - cover.twists[i]);
            }
        }
        let stacked = FreeModule::new(stacked_twists);
        let diag = ModElement::from_comps(
            (0..r).map(|i| (i * r + i, ring.base.one())).collect(),
        );
        let mut rels = Vec::with_capacity(r * m.ncols());
        for i in 0..r {
            for col in m.columns() {
                rels.push(col.shift_positions(i * r));
            }
        }
        let target = ChainModule {
            cover: stacked,
            rels,
        };
        let source = FreeModule::new(vec![0]);
        let kernel = self.kernel_gens(&ring, &source, &target, &[diag])?;
        let gens: Vec<ModElement> = kernel
            .into_iter()
            .filter_map(|k| k.component(0).map(|f| ModElement::unit(0, f.clone())))
            .collect();
        let gb = ring.submodule_gb(&FreeModule::new(vec![0]), &gens, self.config.degree_cap)?;
        Ok(gb
            .elements
            .into_iter()
            .map(|e| e.component(0).cloned().unwrap_or_default())
            .collect())
    }

    /// Generators of {a in cover : map(a) in <target.rels>} over R.
    pub fn kernel_gens(
        &self,
        ring: &std::sync::Arc<QuotientRing>,
        source: &FreeModule,
        target: &ChainModule,
        map_cols: &[ModElement],
    ) -> Result<Vec<ModElement>> {
        debug_assert_eq!(map_cols.len(), source.rank());
        let cap = self.config.degree_cap;
        // Zero-map shortcut: every column already lies in the target span.
        let gb = ring.submodule_gb(&target.cover, &target.rels, cap)?;
        if map_cols
            .iter()
            .all(|c| groebner::normal_form(&ring.base, c, &gb).is_zero())
        {
            return Ok(full_basis(ring, source));
        }
        let mut combined = map_cols.to_vec();
        combined.extend(target.rels.iter().cloned());
        let (_, syz) = syzygies_over_r(ring, &target.cover, &combined, cap)?;
        let kernel: Vec<ModElement> = syz
            .into_iter()
            .map(|s| s.project_prefix(source.rank()))
            .map(|s| ring.nf_element(&s))
            .filter(|s| !s.is_zero())
            .collect();
        Ok(kernel)
    }

    /// Minimal presentation of (⟨gens⟩ + ⟨rels⟩)/⟨rels⟩ inside a free cover.
    pub fn subquotient(
        &self,
        ring: &std::sync::Arc<QuotientRing>,
        cover: &FreeModule,
        gens: Vec<ModElement>,
        rels: &[ModElement],
        extra_rels: Vec<ModElement>,
    ) -> Result<PresentedModule> {
        let cap = self.config.degree_cap;
        let mut all_rels = rels.to_vec();
        all_rels.extend(extra_rels);
        // Drop generators that vanish in the quotient.
        let gb = ring.submodule_gb(cover, &all_rels, cap)?;
        let gens: Vec<ModElement> = gens
            .into_iter()
            .filter(|u| !groebner::normal_form(&ring.base, u, &gb).is_zero())
            .collect();
        if gens.is_empty() {
            return Ok(PresentedModule::zero(ring.clone()));
        }
        // Shortcut: generators are exactly the standard basis, so the
        // relations present the quotient directly.
        if gens.len() == cover.rank() && is_standard_basis(&gens, cover.rank()) {
            let m = PresentedModule::new(ring.clone(), cover.twists.clone(), all_rels)?;
            return minimalize_presentation(&m, cap);
        }
        let twists: Vec<i64> = gens
            .iter()
            .map(|g| match g.degree(cover) {
                crate::freemod::Degree::Homogeneous(d) => Ok(d),
                _ => Err(usage("subquotient generators must be homogeneous")),
            })
            .collect::<Result<_>>()?;
        let mut combined = gens.clone();
        combined.extend(all_rels.iter().cloned());
        let (_, syz) = syzygies_over_r(ring, cover, &combined, cap)?;
        let cols: Vec<ModElement> = syz
            .into_iter()
            .map(|s| s.project_prefix(gens.len()))
            .map(|s| ring.nf_element(&s))
            .filter(|s| !s.is_zero())
            .collect();
        let m = PresentedModule::new(ring.clone(), twists, cols)?;
        minimalize_presentation(&m, cap)
    }
}

fn full_basis(ring: &QuotientRing, cover: &FreeModule) -> Vec<ModElement> {
    (0..cover.rank())
        .map(|i| ModElement::unit(i, ring.base.one()))
        .collect()
}

fn is_standard_basis(gens: &[ModElement], rank: usize) -> bool {
    if gens.len() != rank {
        return false;
    }
    gens.iter().enumerate().all(|(i, g)| {
        g.comps().len() == 1 && {
            let (pos, f) = &g.comps()[0];
            *pos == i && f.len() == 1 && f.constant_term() == 1
        }
    })
}

/// The chain module F_i ⊗ N: one block of N per basis vector of F_i.
fn tensor_chain(fi_twists: &[i64], n: &PresentedModule) -> ChainModule {
    let t = n.ngens();
    let mut twists = Vec::with_capacity(fi_twists.len() * t);
    for ft in fi_twists {
        for nt in &n.twists {
            twists.push(ft + nt);
        }
    }
    let mut rels = Vec::new();
    for block in 0..fi_twists.len() {
        for col in n.columns() {
            rels.push(col.shift_positions(block * t));
        }
    }
    ChainModule {
        cover: FreeModule::new(twists),
        rels,
    }
}

/// Columns of d ⊗ id_N: block structure over the target F_{i-1} ⊗ N.
fn tensor_map(d_cols: &[ModElement], t: usize) -> Vec<ModElement> {
    let mut out = Vec::with_capacity(d_cols.len() * t);
    for col in d_cols {
        for s in 0..t {
            // e_{(j,s)} maps to sum_k a_{kj} e_{(k,s)}
            let comps: Vec<(usize, Polynomial)> = col
                .comps()
                .iter()
                .map(|(k, f)| (k * t + s, f.clone()))
                .collect();
            out.push(ModElement::from_comps(comps));
        }
    }
    out
}

/// The cochain module Hom(F_i, N) = N^{rank} with negated twists.
fn cotensor_chain(fi_twists: &[i64], n: &PresentedModule) -> ChainModule {
    let t = n.ngens();
    let mut twists = Vec::with_capacity(fi_twists.len() * t);
    for ft in fi_twists {
        for nt in &n.twists {
            twists.push(-ft + nt);
        }
    }
    let mut rels = Vec::new();
    for block in 0..fi_twists.len() {
        for col in n.columns() {
            rels.push(col.shift_positions(block * t));
        }
    }
    ChainModule {
        cover: FreeModule::new(twists),
        rels,
    }
}

/// Columns of Hom(d_i, N): Hom(F_{i-1}, N) -> Hom(F_i, N), the transposed
/// block action: e_{(k,s)} maps to sum_j a_{kj} e_{(j,s)}.
fn cotensor_map(d_cols: &[ModElement], target_rank: usize, t: usize) -> Vec<ModElement> {
    let mut out = Vec::with_capacity(target_rank * t);
    for k in 0..target_rank {
        for s in 0..t {
            let comps: Vec<(usize, Polynomial)> = d_cols
                .iter()
                .enumerate()
                .filter_map(|(j, col)| {
                    col.component(k).map(|f| (j * t + s, f.clone()))
                })
                .collect();
            out.push(ModElement::from_comps(comps));
        }
    }
    out
}
