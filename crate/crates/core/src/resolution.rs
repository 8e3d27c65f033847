//! Minimal graded free resolutions, Betti tables, syzygy modules and the
//! transpose.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::engine::Engine;
use crate::error::{internal, usage, Result};
use crate::freemod::{Degree, FreeModule, ModElement};
use crate::linalg::MatFp;
use crate::module::{minimal_generators, minimalize_presentation, syzygies_over_r, PresentedModule};
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

/// A truncated minimal free resolution. `twists[i]` are the generator
/// degrees of F_i; `diffs[i]` holds the columns of the differential
/// d_{i+1}: F_{i+1} -> F_i, expressed in F_i. A resolution that terminates
/// early simply stores fewer steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedFreeResolution {
    pub ring: Arc<QuotientRing>,
    pub requested_length: usize,
    pub twists: Vec<Vec<i64>>,
    pub diffs: Vec<Vec<ModElement>>,
    pub minimal: bool,
}

impl GradedFreeResolution {
    pub fn rank(&self, i: usize) -> usize {
        self.twists.get(i).map_or(0, |t| t.len())
    }

    /// Columns of d_i (1-based homological index), when present.
    pub fn differential(&self, i: usize) -> Option<&[ModElement]> {
        if i == 0 {
            return None;
        }
        self.diffs.get(i - 1).map(|v| v.as_slice())
    }

    /// Number of stored free modules minus one (the largest i with F_i
    /// possibly nonzero).
    pub fn computed_length(&self) -> usize {
        self.twists.len().saturating_sub(1)
    }

    /// True when the resolution became zero before the requested bound.
    pub fn finite(&self) -> bool {
        self.computed_length() < self.requested_length
            || self.twists.last().is_some_and(|t| t.is_empty())
    }

    pub fn betti_totals(&self) -> Vec<u64> {
        (0..=self.requested_length)
            .map(|i| self.rank(i) as u64)
            .collect()
    }

}

/// Graded Betti numbers read off a minimal resolution.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i64), u64>,
    pub max_step: usize,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((s, _), _)| *s == i)
            .map(|(_, v)| v)
            .sum()
    }

    pub fn totals(&self) -> Vec<u64> {
        (0..=self.max_step).map(|i| self.total(i)).collect()
    }

    /// Uniform degree shift: the table of M(-d).
    pub fn shifted(&self, d: i64) -> BettiTable {
        BettiTable {
            entries: self
                .entries
                .iter()
                .map(|(&(i, j), &v)| ((i, j + d), v))
                .collect(),
            max_step: self.max_step,
        }
    }
}

pub fn apply_columns(
    ring: &QuotientRing,
    cols: &[ModElement],
    coeffs: &ModElement,
) -> ModElement {
    let base = &ring.base;
    let mut acc = ModElement::zero();
    for (j, f) in coeffs.comps() {
        acc = acc.add(base, &cols[*j].mul_poly(base, f));
    }
    ring.nf_element(&acc)
}

impl Engine {
    /// Minimal graded free resolution of M to homological degree `length`.
    /// Deterministic; consults the in-memory memo and the on-disk cache.
    pub fn minimal_resolution(
        &self,
        m: &PresentedModule,
        length: usize,
    ) -> Result<Arc<GradedFreeResolution>> {
        let m0 = minimalize_presentation(m, self.config.degree_cap)?;
        let key = crate::cache::resolution_key(&m0, length);

        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            self.note_cache_hit();
            return Ok(hit.clone());
        }
        if let Some(cache) = &self.disk_cache {
            if let Some(res) = cache.load(&key, &m0.ring) {
                self.note_cache_hit();
                let arc = Arc::new(res);
                self.memo.lock().unwrap().insert(key, arc.clone());
                return Ok(arc);
            }
        }

        let res = Arc::new(self.compute_resolution(&m0, length)?);
        if let Some(cache) = &self.disk_cache {
            cache.store(&key, &res);
        }
        self.memo.lock().unwrap().insert(key, res.clone());
        Ok(res)
    }

    fn compute_resolution(
        &self,
        m0: &PresentedModule,
        length: usize,
    ) -> Result<GradedFreeResolution> {
        let ring = m0.ring.clone();
        let cap = self.config.degree_cap;
        let mut twists: Vec<Vec<i64>> = vec![m0.twists.clone()];
        let mut diffs: Vec<Vec<ModElement>> = Vec::new();

        if m0.ngens() == 0 || length == 0 {
            return Ok(GradedFreeResolution {
                ring,
                requested_length: length,
                twists,
                diffs,
                minimal: true,
            });
        }

        // d_1 is the minimal presentation itself.
        let mut current: Vec<ModElement> = m0.columns().to_vec();
        let mut current_cover = m0.free_cover();
        if current.is_empty() {
            return Ok(GradedFreeResolution {
                ring,
                requested_length: length,
                twists,
                diffs,
                minimal: true,
            });
        }
        let step_twists = column_degrees(&current_cover, &current)?;
        twists.push(step_twists.clone());
        diffs.push(current.clone());

        for _step in 1..length {
            let (syz_cover, syz) = syzygies_over_r(&ring, &current_cover, &current, cap)?;
            let min = minimal_generators(&ring, &syz_cover, &syz, cap)?;
            if min.is_empty() {
                break;
            }
            let next_twists = column_degrees(&syz_cover, &min)?;
            twists.push(next_twists);
            diffs.push(min.clone());
            current_cover = syz_cover;
            current = min;
        }

        Ok(GradedFreeResolution {
            ring,
            requested_length: length,
            twists,
            diffs,
            minimal: true,
        })
    }

    /// Graded Betti numbers; requires a minimal resolution.
    pub fn betti_table(&self, res: &GradedFreeResolution) -> Result<BettiTable> {
        if !res.minimal {
            return Err(usage("betti_table requires a minimal resolution"));
        }
        let mut entries: BTreeMap<(usize, i64), u64> = BTreeMap::new();
        for (i, ts) in res.twists.iter().enumerate() {
            for &t in ts {
                *entries.entry((i, t)).or_insert(0) += 1;
            }
        }
        Ok(BettiTable {
            entries,
            max_step: res.requested_length,
        })
    }

    /// The n-th syzygy module: the image of d_n presented by d_{n+1}.
    pub fn syzygy_module(&self, m: &PresentedModule, n: usize) -> Result<PresentedModule> {
        if n == 0 {
            return Ok(m.clone());
        }
        let res = self.minimal_resolution(m, n + 1)?;
        if res.rank(n) == 0 {
            return Ok(PresentedModule::zero(m.ring.clone()));
        }
        let twists = res.twists[n].clone();
        let cols = res
            .differential(n + 1)
            .map(|c| c.to_vec())
            .unwrap_or_default();
        let mut module = PresentedModule::new(m.ring.clone(), twists, cols)?;
        module.minimal = true;
        Ok(module)
    }

    /// Auslander-Bridger transpose: cokernel of the dualized minimal
    /// presentation.
    pub fn transpose(&self, m: &PresentedModule) -> Result<PresentedModule> {
        let m0 = minimalize_presentation(m, self.config.degree_cap)?;
        if m0.is_free_presentation() {
            return Ok(PresentedModule::zero(m.ring.clone()));
        }
        let cover = m0.free_cover();
        let col_degs = column_degrees(&cover, m0.columns())?;
        let dual_twists: Vec<i64> = col_degs.iter().map(|u| -u).collect();
        // Column i of the transpose is row i of the presentation.
        let mut cols = Vec::with_capacity(m0.ngens());
        for i in 0..m0.ngens() {
            let comps: Vec<(usize, Polynomial)> = (0..m0.ncols())
                .map(|j| (j, m0.entry(i, j)))
                .filter(|(_, f)| !f.is_zero())
                .collect();
            cols.push(ModElement::from_comps(comps));
        }
        let tr = PresentedModule::new(m.ring.clone(), dual_twists, cols)?;
        minimalize_presentation(&tr, self.config.degree_cap)
    }

    /// Checks d_i ∘ d_{i+1} = 0 exactly for every pair of stored steps.
    pub fn check_complex(&self, res: &GradedFreeResolution) -> Result<()> {
        for i in 1..res.diffs.len() {
            let upper = &res.diffs[i];
            let lower = &res.diffs[i - 1];
            for col in upper {
                let image = apply_columns(&res.ring, lower, col);
                if !image.is_zero() {
                    return Err(internal(format!(
                        "d_{} ∘ d_{} is nonzero",
                        i,
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks that every differential entry is in the irrelevant maximal
    /// ideal (no constant terms).
    pub fn check_minimality(&self, res: &GradedFreeResolution) -> Result<()> {
        for step in &res.diffs {
            for col in step {
                for (_, poly) in col.comps() {
                    if poly.constant_term() != 0 {
                        return Err(internal("non-minimal differential entry"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Rank-certified exactness on graded pieces: for each interior step i
    /// and each internal degree d ≤ dmax,
    /// dim ker(d_i)_d = dim im(d_{i+1})_d over R.
    pub fn check_graded_exactness(
        &self,
        res: &GradedFreeResolution,
        dmax: i64,
    ) -> Result<()> {
        for i in 1..res.diffs.len() {
            let source = FreeModule::new(res.twists[i].clone());
            let target = FreeModule::new(res.twists[i - 1].clone());
            let next = FreeModule::new(res.twists[i + 1].clone());
            let lo = res.twists[i].iter().copied().min().unwrap_or(0);
            for d in lo..=dmax {
                let m_i = graded_map_matrix(&res.ring, &source, &target, &res.diffs[i - 1], d);
                let m_next = graded_map_matrix(&res.ring, &next, &source, &res.diffs[i], d);
                let source_dim = m_i.cols;
                let ker = source_dim - m_i.rank();
                let im = m_next.rank();
                if ker != im {
                    return Err(internal(format!(
                        "exactness fails at step {i}, degree {d}: ker {ker} vs im {im}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn column_degrees(cover: &FreeModule, cols: &[ModElement]) -> Result<Vec<i64>> {
    cols.iter()
        .map(|c| match c.degree(cover) {
            Degree::Homogeneous(d) => Ok(d),
            Degree::Zero => Err(internal("zero column in a differential")),
            Degree::NonHomogeneous => Err(internal("inhomogeneous differential column")),
        })
        .collect()
}

/// Matrix of the degree-d piece of the R-linear map given by `cols` from
/// `source` to `target`, in standard-monomial bases.
pub fn graded_map_matrix(
    ring: &QuotientRing,
    source: &FreeModule,
    target: &FreeModule,
    cols: &[ModElement],
    d: i64,
) -> MatFp {
    let lt = ring.ideal_lead_terms();
    let src_basis = graded_basis(source, &lt, d);
    let tgt_basis = graded_basis(target, &lt, d);
    let index: BTreeMap<(usize, Vec<u16>), usize> = tgt_basis
        .iter()
        .enumerate()
        .map(|(k, (pos, m))| ((*pos, m.exps().to_vec()), k))
        .collect();
    let mut mat = MatFp::zero(ring.base.field, tgt_basis.len(), src_basis.len());
    for (c, (pos, mono)) in src_basis.iter().enumerate() {
        let image = cols[*pos].mul_term(&ring.base, mono, 1);
        let image = ring.nf_element(&image);
        for (tpos, poly) in image.comps() {
            for (m, coeff) in poly.terms() {
                let row = index[&(*tpos, m.exps().to_vec())];
                mat.set(row, c, *coeff);
            }
        }
    }
    mat
}

/// Standard-monomial basis of the degree-d piece of a free module over R.
pub fn graded_basis(
    cover: &FreeModule,
    lt: &crate::hilbert::LeadTermModule,
    d: i64,
) -> Vec<(usize, crate::monomial::Monomial)> {
    let mut basis = Vec::new();
    for pos in 0..cover.rank() {
        let md = d - cover.twists[pos];
        if md < 0 {
            continue;
        }
        for m in lt.standard_monomials(0, md as u32) {
            basis.push((pos, m));
        }
    }
    basis
}
