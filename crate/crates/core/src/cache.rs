//! Content-addressed on-disk cache for computed resolutions.
//!
//! Keys are canonical byte serializations of (ring, minimal presentation,
//! order, length); file names are a 128-bit FNV hash of the key. Entries are
//! versioned binary with a magic header; the full key is stored inside each
//! entry and verified on read, so hash collisions and corrupt entries are
//! ignored and recomputed.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use crate::freemod::ModElement;
use crate::module::PresentedModule;
use crate::monomial::Monomial;
use crate::order::TermOrder;
use crate::poly::Polynomial;
use crate::resolution::GradedFreeResolution;
use crate::ring::QuotientRing;

const MAGIC: &[u8; 4] = b"BETC";
const VERSION: u8 = 1;

pub struct ResolutionCache {
    dir: PathBuf,
}

impl ResolutionCache {
    pub fn new(dir: PathBuf) -> std::io::Result<Self> {
        fs::create_dir_all(&dir)?;
        Ok(ResolutionCache { dir })
    }

    pub fn dir(&self) -> &PathBuf {
        &self.dir
    }

    fn path_for(&self, key: &[u8]) -> PathBuf {
        self.dir.join(format!("{}.res", fnv128_hex(key)))
    }

    pub fn load(&self, key: &[u8], ring: &Arc<QuotientRing>) -> Option<GradedFreeResolution> {
        let bytes = fs::read(self.path_for(key)).ok()?;
        let mut r = Reader { b: &bytes, pos: 0 };
        if r.take(4)? != MAGIC.as_slice() || r.u8()? != VERSION {
            return None;
        }
        let klen = r.u32()? as usize;
        if r.take(klen)? != key {
            return None;
        }
        let requested_length = r.u64()? as usize;
        let nlevels = r.u64()? as usize;
        let mut twists = Vec::with_capacity(nlevels);
        for _ in 0..nlevels {
            let n = r.u64()? as usize;
            let mut ts = Vec::with_capacity(n);
            for _ in 0..n {
                ts.push(r.i64()?);
            }
            twists.push(ts);
        }
        let ndiffs = r.u64()? as usize;
        let mut diffs = Vec::with_capacity(ndiffs);
        for _ in 0..ndiffs {
            let ncols = r.u64()? as usize;
            let mut cols = Vec::with_capacity(ncols);
            for _ in 0..ncols {
                cols.push(r.element(ring)?);
            }
            diffs.push(cols);
        }
        if r.pos != bytes.len() {
            return None;
        }
        Some(GradedFreeResolution {
            ring: ring.clone(),
            requested_length,
            twists,
            diffs,
            minimal: true,
        })
    }

    pub fn store(&self, key: &[u8], res: &GradedFreeResolution) {
        let mut out = Vec::new();
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&(key.len() as u32).to_le_bytes());
        out.extend_from_slice(key);
        push_u64(&mut out, res.requested_length as u64);
        push_u64(&mut out, res.twists.len() as u64);
        for ts in &res.twists {
            push_u64(&mut out, ts.len() as u64);
            for t in ts {
                out.extend_from_slice(&t.to_le_bytes());
            }
        }
        push_u64(&mut out, res.diffs.len() as u64);
        for cols in &res.diffs {
            push_u64(&mut out, cols.len() as u64);
            for col in cols {
                push_element(&mut out, col);
            }
        }
        // Write-then-rename keeps concurrent readers safe; insertions are
        // idempotent because the content is a pure function of the key.
        let path = self.path_for(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if let Ok(mut f) = fs::File::create(&tmp) {
            if f.write_all(&out).is_ok() {
                let _ = fs::rename(&tmp, &path);
            } else {
                let _ = fs::remove_file(&tmp);
            }
        }
    }
}

struct Reader<'a> {
    b: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        if self.pos + n > self.b.len() {
            return None;
        }
        let s = &self.b[self.pos..self.pos + n];
        self.pos += n;
        Some(s)
    }

    fn u8(&mut self) -> Option<u8> {
        self.take(1).map(|s| s[0])
    }

    fn u16(&mut self) -> Option<u16> {
        self.take(2).map(|s| u16::from_le_bytes([s[0], s[1]]))
    }

    fn u32(&mut self) -> Option<u32> {
        self.take(4)
            .map(|s| u32::from_le_bytes([s[0], s[1], s[2], s[3]]))
    }

    fn u64(&mut self) -> Option<u64> {
        self.take(8)
            .map(|s| u64::from_le_bytes(s.try_into().unwrap()))
    }

    fn i64(&mut self) -> Option<i64> {
        self.take(8)
            .map(|s| i64::from_le_bytes(s.try_into().unwrap()))
    }

    fn element(&mut self, ring: &Arc<QuotientRing>) -> Option<ModElement> {
        let ncomps = self.u64()? as usize;
        let nvars = ring.nvars();
        let mut comps = Vec::with_capacity(ncomps);
        for _ in 0..ncomps {
            let pos = self.u64()? as usize;
            let nterms = self.u64()? as usize;
            let mut terms = Vec::with_capacity(nterms);
            for _ in 0..nterms {
                let mut exps = Vec::with_capacity(nvars);
                for _ in 0..nvars {
                    exps.push(self.u16()?);
                }
                let coeff = self.u64()?;
                terms.push((Monomial::from_exps(exps), coeff));
            }
            comps.push((pos, ring.base.from_terms(terms)));
        }
        Some(ModElement::from_comps(comps))
    }
}

fn push_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn push_poly(out: &mut Vec<u8>, f: &Polynomial) {
    push_u64(out, f.terms().len() as u64);
    for (m, c) in f.terms() {
        for &e in m.exps() {
            out.extend_from_slice(&e.to_le_bytes());
        }
        push_u64(out, *c);
    }
}

fn push_element(out: &mut Vec<u8>, e: &ModElement) {
    push_u64(out, e.comps().len() as u64);
    for (pos, f) in e.comps() {
        push_u64(out, *pos as u64);
        push_poly(out, f);
    }
}

/// Canonical cache key for the resolution of a (minimalized) presentation.
pub fn resolution_key(m: &PresentedModule, length: usize) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(b"res-v1");
    push_u64(&mut out, m.ring.base.field.modulus());
    push_u64(&mut out, m.ring.nvars() as u64);
    for v in &m.ring.base.vars {
        push_u64(&mut out, v.len() as u64);
        out.extend_from_slice(v.as_bytes());
    }
    out.push(match m.ring.base.order {
        TermOrder::GrevLex => 0,
        TermOrder::Lex => 1,
    });
    push_u64(&mut out, m.ring.relations.len() as u64);
    for f in &m.ring.relations {
        push_poly(&mut out, f);
    }
    push_u64(&mut out, m.twists.len() as u64);
    for t in &m.twists {
        out.extend_from_slice(&t.to_le_bytes());
    }
    push_u64(&mut out, m.ncols() as u64);
    for c in m.columns() {
        push_element(&mut out, c);
    }
    push_u64(&mut out, length as u64);
    out
}

fn fnv128_hex(bytes: &[u8]) -> String {
    let mut h1: u64 = 0xcbf29ce484222325;
    let mut h2: u64 = 0x9e3779b97f4a7c15;
    for &b in bytes {
        h1 ^= b as u64;
        h1 = h1.wrapping_mul(0x100000001b3);
        h2 = h2.wrapping_add((b as u64).wrapping_mul(0x2545f4914f6cdd1d));
        h2 ^= h2 >> 29;
        h2 = h2.wrapping_mul(0xff51afd7ed558ccd);
    }
    format!("{h1:016x}{h2:016x}")
}
