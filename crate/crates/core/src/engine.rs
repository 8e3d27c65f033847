//! The engine: configuration, the shared resolution memo/cache, and the
//! Hilbert-level module invariants (Hilbert function, dimension, length).

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex};

use crate::cache::ResolutionCache;
use crate::error::{usage, Result};
use crate::groebner::DEFAULT_DEGREE_CAP;
use crate::hilbert::{HilbertFunction, LeadTermModule};
use crate::module::PresentedModule;
use crate::monomial::Monomial;
use crate::resolution::GradedFreeResolution;

#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Homological truncation length for resolutions.
    pub res_bound: usize,
    /// Width of Hilbert-function windows.
    pub degree_bound: i64,
    /// Default index bound for Tor/Ext tables.
    pub hom_bound: usize,
    /// Monomial-degree cap for Groebner S-pairs.
    pub degree_cap: u32,
    /// Seed mixed into deterministic searches.
    pub seed: u64,
    /// Trials per slot in regular-sequence searches.
    pub trial_budget: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            res_bound: 10,
            degree_bound: 12,
            hom_bound: 10,
            degree_cap: DEFAULT_DEGREE_CAP,
            seed: 0,
            trial_budget: 200,
        }
    }
}

/// Computation context: pure operations plus an idempotent content-addressed
/// resolution store (in-memory memo and optional on-disk cache).
pub struct Engine {
    pub config: EngineConfig,
    pub(crate) disk_cache: Option<ResolutionCache>,
    pub(crate) memo: Mutex<BTreeMap<Vec<u8>, Arc<GradedFreeResolution>>>,
    pub(crate) cache_hits: AtomicU64,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(EngineConfig::default())
    }
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        Engine {
            config,
            disk_cache: None,
            memo: Mutex::new(BTreeMap::new()),
            cache_hits: AtomicU64::new(0),
        }
    }

    pub fn with_cache(config: EngineConfig, cache: ResolutionCache) -> Self {
        Engine {
            config,
            disk_cache: Some(cache),
            memo: Mutex::new(BTreeMap::new()),
            cache_hits: AtomicU64::new(0),
        }
    }

    pub fn cache_hits(&self) -> u64 {
        self.cache_hits.load(AtomicOrdering::Relaxed)
    }

    pub(crate) fn note_cache_hit(&self) {
        self.cache_hits.fetch_add(1, AtomicOrdering::Relaxed);
    }

    /// Lead-term staircase of the relation span of a module's presentation
    /// (columns plus ring relations), the basis for all counting below.
    pub fn lead_terms_of(&self, m: &PresentedModule) -> Result<LeadTermModule> {
        let cover = m.free_cover();
        let gb = m
            .ring
            .submodule_gb(&cover, m.columns(), self.config.degree_cap)?;
        let leads: Vec<(usize, Monomial)> = gb
            .elements
            .iter()
            .map(|e| {
                let (pos, mono, _) = e.lead_term(gb.order, &gb.morder).expect("nonzero");
                (pos, mono.clone())
            })
            .collect();
        Ok(LeadTermModule::new(
            cover.rank(),
            m.ring.nvars(),
            leads,
        ))
    }

    /// Exact Hilbert function of the module on a window covering both the
    /// requested bound and every generator degree.
    pub fn hilbert_function(&self, m: &PresentedModule, dmax: i64) -> Result<HilbertFunction> {
        let lt = self.lead_terms_of(m)?;
        let lo = m.twists.iter().copied().min().unwrap_or(0).min(0);
        let hi = dmax.max(lo);
        let values: Vec<u64> = (lo..=hi).map(|d| lt.count_standard(&m.twists, d)).collect();
        let mut h = HilbertFunction {
            lo,
            values,
            rational_numerator: None,
        };
        h.detect_rational(m.ring.dimension);
        Ok(h)
    }

    /// Krull dimension of a nonzero module: the dimension of its lead-term
    /// quotient, which equals 1 + the degree of the Hilbert polynomial.
    pub fn krull_dimension(&self, m: &PresentedModule) -> Result<usize> {
        let lt = self.lead_terms_of(m)?;
        match lt.quotient_dimension() {
            Some(d) => Ok(d),
            None => Err(usage("krull_dimension of the zero module is undefined")),
        }
    }

    /// Exact length: the total number of standard monomials when finite.
    pub fn module_length(&self, m: &PresentedModule) -> Result<Length> {
        let lt = self.lead_terms_of(m)?;
        Ok(match lt.finite_length() {
            Some(n) => Length::Finite(n),
            None => Length::Infinite,
        })
    }

    /// Exact zero test: every generator lies in the relation span.
    pub fn is_zero_module(&self, m: &PresentedModule) -> Result<bool> {
        if m.ngens() == 0 {
            return Ok(true);
        }
        let lt = self.lead_terms_of(m)?;
        Ok(lt.quotient_dimension().is_none())
    }
}

/// Module length: a non-negative integer or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn is_finite(&self) -> bool {
        matches!(self, Length::Finite(_))
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(*n),
            Length::Infinite => None,
        }
    }
}

impl std::fmt::Display for Length {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "infinite"),
        }
    }
}
