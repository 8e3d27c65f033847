//! Finitely presented graded modules over a quotient ring.
//!
//! A module is the cokernel of a homogeneous matrix: `twists` are the
//! generator degrees of the free cover `F0 = ⊕ R(-t_i)`, and each relation
//! column is an element of that cover.

use std::sync::Arc;

use crate::error::{usage, Result};
use crate::freemod::{Degree, FreeModule, ModElement};
use crate::groebner::{self, SubmodulePresentation};
use crate::order::ModuleOrder;
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentedModule {
    pub ring: Arc<QuotientRing>,
    pub twists: Vec<i64>,
    cols: Vec<ModElement>,
    pub minimal: bool,
}

impl PresentedModule {
    pub fn new(
        ring: Arc<QuotientRing>,
        twists: Vec<i64>,
        cols: Vec<ModElement>,
    ) -> Result<Self> {
        let cover = FreeModule::new(twists.clone());
        let mut normalized = Vec::with_capacity(cols.len());
        for c in cols {
            if c.comps().iter().any(|(p, _)| *p >= cover.rank()) {
                return Err(usage("relation column uses a generator that does not exist"));
            }
            let c = ring.nf_element(&c);
            if matches!(c.degree(&cover), Degree::NonHomogeneous) {
                return Err(usage("relation columns must be homogeneous"));
            }
            if !c.is_zero() {
                normalized.push(c);
            }
        }
        Ok(PresentedModule {
            ring,
            twists,
            cols: normalized,
            minimal: false,
        })
    }

    /// Builds a module from a dense matrix given by rows (one row per
    /// generator). Twists are inferred from entry degrees when not supplied:
    /// in each connected block of the degree constraints the smallest
    /// generator degree is anchored at zero.
    pub fn from_rows(
        ring: Arc<QuotientRing>,
        rows: &[Vec<Polynomial>],
        twists: Option<Vec<i64>>,
    ) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(usage("presentation matrix needs at least one row"));
        }
        let ncols = rows[0].len();
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(usage("presentation matrix rows have unequal lengths"));
        }
        let rows: Vec<Vec<Polynomial>> = rows
            .iter()
            .map(|r| r.iter().map(|f| ring.nf_poly(f)).collect())
            .collect();
        let twists = match twists {
            Some(t) => {
                if t.len() != nrows {
                    return Err(usage(format!(
                        "expected {nrows} twists, got {}",
                        t.len()
                    )));
                }
                t
            }
            None => infer_twists(&rows, nrows, ncols)?,
        };
        let mut cols = Vec::with_capacity(ncols);
        for j in 0..ncols {
            let comps: Vec<(usize, Polynomial)> = (0..nrows)
                .map(|i| (i, rows[i][j].clone()))
                .filter(|(_, f)| !f.is_zero())
                .collect();
            cols.push(ModElement::from_comps(comps));
        }
        PresentedModule::new(ring, twists, cols)
    }

    /// A free module with the given generator degrees.
    pub fn free(ring: Arc<QuotientRing>, twists: Vec<i64>) -> Self {
        PresentedModule {
            ring,
            twists,
            cols: Vec::new(),
            minimal: true,
        }
    }

    /// R as a module over itself.
    pub fn ring_module(ring: Arc<QuotientRing>) -> Self {
        PresentedModule::free(ring, vec![0])
    }

    /// The zero module.
    pub fn zero(ring: Arc<QuotientRing>) -> Self {
        PresentedModule {
            ring,
            twists: Vec::new(),
            cols: Vec::new(),
            minimal: true,
        }
    }

    /// The residue field k = R/m.
    pub fn residue_field(ring: Arc<QuotientRing>) -> Self {
        let vars = ring.variables();
        PresentedModule::quotient_by_ideal(ring, &vars).expect("variables are homogeneous")
    }

    /// R/(gens) as a cyclic module.
    pub fn quotient_by_ideal(ring: Arc<QuotientRing>, gens: &[Polynomial]) -> Result<Self> {
        let cols = gens
            .iter()
            .map(|f| ModElement::unit(0, f.clone()))
            .collect();
        PresentedModule::new(ring, vec![0], cols)
    }

    pub fn ngens(&self) -> usize {
        self.twists.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn columns(&self) -> &[ModElement] {
        &self.cols
    }

    pub fn free_cover(&self) -> FreeModule {
        FreeModule::new(self.twists.clone())
    }

    /// Presentation entry (row i, column j); zero when absent.
    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        self.cols[j].component(i).cloned().unwrap_or_default()
    }

    pub fn dense_rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.ngens())
            .map(|i| (0..self.ncols()).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Is this structurally the zero module (no generators)? For a minimal
    /// presentation this is exact; otherwise minimalize first.
    pub fn has_no_generators(&self) -> bool {
        self.twists.is_empty()
    }

    pub fn is_free_presentation(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn same_ring(&self, other: &PresentedModule) -> Result<()> {
        if self.ring != other.ring {
            return Err(usage("modules live over different rings"));
        }
        Ok(())
    }

    /// The twisted module M(-d): every generator degree rises by d.
    pub fn shift_degrees(&self, d: i64) -> Self {
        PresentedModule {
            ring: self.ring.clone(),
            twists: self.twists.iter().map(|t| t + d).collect(),
            cols: self.cols.clone(),
            minimal: self.minimal,
        }
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> Result<Self> {
        self.same_ring(other)?;
        let mut twists = self.twists.clone();
        twists.extend_from_slice(&other.twists);
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().map(|c| c.shift_positions(self.ngens())));
        Ok(PresentedModule {
            ring: self.ring.clone(),
            twists,
            cols,
            minimal: self.minimal && other.minimal,
        })
    }

    /// M/(x_1..x_k)M for homogeneous ring elements x_l.
    pub fn quotient_by_elements(&self, elems: &[Polynomial]) -> Result<Self> {
        for x in elems {
            if !x.is_homogeneous() || x.is_zero() {
                return Err(usage("cut elements must be nonzero homogeneous"));
            }
        }
        let mut cols = self.cols.clone();
        for x in elems {
            for i in 0..self.ngens() {
                cols.push(ModElement::unit(i, x.clone()));
            }
        }
        PresentedModule::new(self.ring.clone(), self.twists.clone(), cols)
    }

    /// The relation columns as a submodule of the free cover, quotient
    /// relations included.
    pub fn column_span(&self) -> Result<SubmodulePresentation> {
        let cover = self.free_cover();
        let q = self.ring.quotient_relations_for(&cover);
        SubmodulePresentation::new(cover, self.cols.clone(), q)
    }
}

fn infer_twists(rows: &[Vec<Polynomial>], nrows: usize, ncols: usize) -> Result<Vec<i64>> {
    // Nodes: rows 0..nrows, then columns nrows..nrows+ncols. Edge for each
    // nonzero entry: u_j - t_i = deg(entry).
    let n = nrows + ncols;
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for (i, row) in rows.iter().enumerate() {
        for (j, f) in row.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            let d = f
                .homogeneous_degree()
                .ok_or_else(|| usage("presentation entries must be homogeneous"))? as i64;
            adj[i].push((nrows + j, d));
            adj[nrows + j].push((i, -d));
        }
    }
    let mut value: Vec<Option<i64>> = vec![None; n];
    for start in 0..n {
        if value[start].is_some() {
            continue;
        }
        // BFS the component from a provisional 0.
        let mut queue = vec![start];
        value[start] = Some(0);
        let mut comp = vec![start];
        while let Some(v) = queue.pop() {
            let base = value[v].unwrap();
            for &(w, d) in &adj[v] {
                let expected = base + d;
                match value[w] {
                    None => {
                        value[w] = Some(expected);
                        queue.push(w);
                        comp.push(w);
                    }
                    Some(existing) if existing != expected => {
                        return Err(usage(
                            "presentation matrix admits no consistent homogeneous twists",
                        ));
                    }
                    _ => {}
                }
            }
        }
        // Anchor: smallest row twist in the component becomes 0.
        let min_row = comp
            .iter()
            .filter(|&&v| v < nrows)
            .map(|&v| value[v].unwrap())
            .min();
        if let Some(min_row) = min_row {
            for &v in &comp {
                value[v] = Some(value[v].unwrap() - min_row);
            }
        }
    }
    Ok((0..nrows).map(|i| value[i].unwrap()).collect())
}

/// Generators of the syzygy module over R of `gens` inside `ambient`:
/// quotient relations are adjoined before the Schreyer computation and the
/// resulting coordinates are reduced back to canonical R-representatives.
pub fn syzygies_over_r(
    ring: &QuotientRing,
    ambient: &FreeModule,
    gens: &[ModElement],
    cap: u32,
) -> Result<(FreeModule, Vec<ModElement>)> {
    let pres = SubmodulePresentation::new(
        ambient.clone(),
        gens.to_vec(),
        ring.quotient_relations_for(ambient),
    )?;
    let syz = groebner::syzygy_basis(&ring.base, &pres, ModuleOrder::TermOverPosition, cap)?;
    let reduced: Vec<ModElement> = syz
        .syzygies
        .into_iter()
        .map(|s| ring.nf_element(&s))
        .filter(|s| !s.is_zero())
        .collect();
    Ok((syz.ambient, reduced))
}

/// Incrementally grown submodule with membership queries, used for greedy
/// minimal-generator selection. Quotient relations are part of the stock, so
/// membership is membership over R.
pub struct IncrementalSubmodule<'a> {
    gb: groebner::IncrementalGb<'a>,
}

impl<'a> IncrementalSubmodule<'a> {
    pub fn new(ring: &'a QuotientRing, ambient: FreeModule, cap: u32) -> Result<Self> {
        let stock = ring.quotient_relations_for(&ambient);
        let gb = groebner::IncrementalGb::new(&ring.base, ambient, &stock, cap)?;
        Ok(IncrementalSubmodule { gb })
    }

    pub fn contains(&self, e: &ModElement) -> Result<bool> {
        Ok(self.gb.contains(e))
    }

    pub fn add(&mut self, e: ModElement) -> Result<()> {
        self.gb.add(e)
    }
}

/// Greedy minimal generating set of the submodule generated by `gens`:
/// ascending internal degree, keeping an element iff it is not in the span
/// of those already kept. Exact by graded Nakayama.
pub fn minimal_generators(
    ring: &QuotientRing,
    ambient: &FreeModule,
    gens: &[ModElement],
    cap: u32,
) -> Result<Vec<ModElement>> {
    let mut indexed: Vec<(i64, usize)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        match g.degree(ambient) {
            Degree::Zero => continue,
            Degree::Homogeneous(d) => indexed.push((d, i)),
            Degree::NonHomogeneous => {
                return Err(usage("minimal_generators requires homogeneous input"))
            }
        }
    }
    indexed.sort_by_key(|&(d, i)| (d, i));
    let mut inc = IncrementalSubmodule::new(ring, ambient.clone(), cap)?;
    let mut kept = Vec::new();
    for (_, i) in indexed {
        let mut g = ring.nf_element(&gens[i]);
        if g.is_zero() {
            continue;
        }
        if !inc.contains(&g)? {
            // Canonical representative: monic lead coefficient.
            if let Some((_, _, c)) =
                g.lead_term(ring.base.order, &crate::order::ModuleOrder::TermOverPosition)
            {
                if c != 1 {
                    g = g.scale(&ring.base, ring.base.field.inv(c));
                }
            }
            kept.push(g.clone());
            inc.add(g)?;
        }
    }
    Ok(kept)
}

/// Pivot minimization followed by greedy column selection: the result has no
/// unit entries and its columns minimally generate the image.
pub fn minimalize_presentation(m: &PresentedModule, cap: u32) -> Result<PresentedModule> {
    if m.minimal {
        return Ok(m.clone());
    }
    let ring = m.ring.clone();
    let mut twists = m.twists.clone();
    let mut rows = m.dense_rows();

    // Repeatedly split off unit pivots. A homogeneous entry of degree zero is
    // a nonzero scalar.
    loop {
        let nrows = rows.len();
        let ncols = if nrows == 0 { 0 } else { rows[0].len() };
        let mut pivot = None;
        'find: for i in 0..nrows {
            for j in 0..ncols {
                let e = &rows[i][j];
                if !e.is_zero() && e.degree() == Some(0) {
                    pivot = Some((i, j, e.constant_term()));
                    break 'find;
                }
            }
        }
        let Some((pi, pj, c)) = pivot else { break };
        let base = &ring.base;
        let cinv = ring.base.field.inv(c);
        // Scale column pj so the pivot is 1.
        for row in rows.iter_mut() {
            row[pj] = base.scale(&row[pj], cinv);
        }
        // Column operations clear the pivot row.
        for j in 0..ncols {
            if j == pj {
                continue;
            }
            let factor = rows[pi][j].clone();
            if factor.is_zero() {
                continue;
            }
            for i in 0..nrows {
                let sub = base.mul(&rows[i][pj], &factor);
                rows[i][j] = ring.nf_poly(&base.sub(&rows[i][j], &sub));
            }
        }
        // Row operations clear the pivot column (the pivot row is now zero
        // outside the pivot, so only column pj changes, and it is deleted).
        for (i, row) in rows.iter_mut().enumerate() {
            if i != pi {
                row[pj] = base.zero();
            }
        }
        rows.remove(pi);
        twists.remove(pi);
        for row in rows.iter_mut() {
            row.remove(pj);
        }
    }

    // Rebuild columns and minimally generate the image.
    let cover = FreeModule::new(twists.clone());
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut cols = Vec::with_capacity(ncols);
    for j in 0..ncols {
        let comps: Vec<(usize, Polynomial)> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r[j].clone()))
            .filter(|(_, f)| !f.is_zero())
            .collect();
        let c = ModElement::from_comps(comps);
        if !c.is_zero() {
            cols.push(c);
        }
    }
    let cols = minimal_generators(&ring, &cover, &cols, cap)?;
    Ok(PresentedModule {
        ring,
        twists,
        cols,
        minimal: true,
    })
}

/// A degree-zero homomorphism between presented modules, given on free
/// covers by a matrix (rows index target generators).
#[derive(Debug, Clone)]
pub struct ModuleMap {
    pub source: PresentedModule,
    pub target: PresentedModule,
    entries: Vec<Vec<Polynomial>>,
}

impl ModuleMap {
    pub fn new(
        source: PresentedModule,
        target: PresentedModule,
        entries: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        source.same_ring(&target)?;
        if entries.len() != target.ngens()
            || entries.iter().any(|r| r.len() != source.ngens())
        {
            return Err(usage("module map matrix has the wrong shape"));
        }
        let ring = source.ring.clone();
        let mut normalized = Vec::with_capacity(entries.len());
        for (i, row) in entries.into_iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, f) in row.into_iter().enumerate() {
                let f = ring.nf_poly(&f);
                if !f.is_zero() {
                    let expected = source.twists[j] - target.twists[i];
                    if f.homogeneous_degree().map(|d| d as i64) != Some(expected) {
                        return Err(usage(
                            "module map entries must be homogeneous of degree zero overall",
                        ));
                    }
                }
                out.push(f);
            }
            normalized.push(out);
        }
        Ok(ModuleMap {
            source,
            target,
            entries: normalized,
        })
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    /// Image in the target cover of a source-cover element.
    pub fn apply(&self, e: &ModElement) -> ModElement {
        let base = &self.source.ring.base;
        let mut acc = ModElement::zero();
        for (j, f) in e.comps() {
            for i in 0..self.target.ngens() {
                let coeff = &self.entries[i][*j];
                if !coeff.is_zero() {
                    acc = acc.add(base, &ModElement::unit(i, base.mul(coeff, f)));
                }
            }
        }
        self.source.ring.nf_element(&acc)
    }

    /// Images of the source generators in the target cover.
    pub fn column_images(&self) -> Vec<ModElement> {
        (0..self.source.ngens())
            .map(|j| {
                let comps: Vec<(usize, Polynomial)> = (0..self.target.ngens())
                    .map(|i| (i, self.entries[i][j].clone()))
                    .filter(|(_, f)| !f.is_zero())
                    .collect();
                ModElement::from_comps(comps)
            })
            .collect()
    }

    /// The map must send source relations into the target relation span.
    pub fn verify_well_defined(&self, cap: u32) -> Result<bool> {
        let ring = &self.source.ring;
        let cover = self.target.free_cover();
        let gb = ring.submodule_gb(&cover, self.target.columns(), cap)?;
        for col in self.source.columns() {
            let img = self.apply(col);
            if !groebner::normal_form(&ring.base, &img, &gb).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
