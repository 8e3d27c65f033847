//! Session execution: resolves the AST against an engine instance and
//! produces one report per command statement.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use betti_core::cache::ResolutionCache;
use betti_core::depth::Ideal;
use betti_core::engine::Length;
use betti_core::lab::{AuditVerdict, EtaOutcome, EtaTrend, SplittingForm};
use betti_core::{
    Engine, EngineConfig, Error as CoreError, GradedFreeResolution, Polynomial, PresentedModule,
    QuotientRing, TermOrder,
};

use crate::ast::{Expr, PolyExpr, Session, Span, Stmt};
use crate::report::{
    BettiEntry, HomologyEntry, Payload, Provenance, Report, RigidityWitness,
};

#[derive(Debug, Clone)]
pub struct ExecConfig {
    pub prime_override: Option<u64>,
    pub order: TermOrder,
    pub res_bound: usize,
    pub hom_bound: usize,
    pub degree_bound: i64,
    pub eta_bound: usize,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
}

impl Default for ExecConfig {
    fn default() -> Self {
        ExecConfig {
            prime_override: None,
            order: TermOrder::GrevLex,
            res_bound: 10,
            hom_bound: 10,
            degree_bound: 12,
            eta_bound: 100,
            seed: 0,
            cache_dir: None,
        }
    }
}

#[derive(Debug)]
pub struct ExecError {
    pub span: Span,
    pub error: CoreError,
}

impl std::fmt::Display for ExecError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.span, self.error)
    }
}

impl ExecError {
    fn usage(span: Span, msg: impl Into<String>) -> Self {
        ExecError {
            span,
            error: CoreError::Usage(msg.into()),
        }
    }
}

#[derive(Clone)]
enum Value {
    Ring,
    Ideal(Ideal),
    Module(PresentedModule),
    Resolution(Arc<GradedFreeResolution>),
    Int(i64),
    Seq(Vec<Polynomial>),
    Form(SplittingForm),
    Unit,
}

struct Executor {
    engine: Engine,
    cfg: ExecConfig,
    ring: Option<Arc<QuotientRing>>,
    scope: std::collections::HashMap<String, Value>,
}

pub fn execute_session(session: &Session, cfg: &ExecConfig) -> Result<Vec<Report>, ExecError> {
    let econfig = EngineConfig {
        res_bound: cfg.res_bound,
        degree_bound: cfg.degree_bound,
        hom_bound: cfg.hom_bound,
        seed: cfg.seed,
        ..EngineConfig::default()
    };
    let engine = match &cfg.cache_dir {
        Some(dir) => {
            let cache = ResolutionCache::new(dir.clone()).map_err(|e| ExecError {
                span: Span { line: 0, col: 0 },
                error: CoreError::Usage(format!("cannot open cache directory: {e}")),
            })?;
            Engine::with_cache(econfig, cache)
        }
        None => Engine::new(econfig),
    };
    let mut exec = Executor {
        engine,
        cfg: cfg.clone(),
        ring: None,
        scope: std::collections::HashMap::new(),
    };
    let mut reports = Vec::new();
    for stmt in &session.stmts {
        if let Some(report) = exec.stmt(stmt)? {
            reports.push(report);
        }
    }
    Ok(reports)
}

impl Executor {
    fn ring(&self, span: Span) -> Result<Arc<QuotientRing>, ExecError> {
        self.ring
            .clone()
            .ok_or_else(|| ExecError::usage(span, "no active ring"))
    }

    fn provenance(&self) -> Provenance {
        Provenance {
            prime: self
                .ring
                .as_ref()
                .map(|r| r.base.field.modulus())
                .unwrap_or(0),
            order: self.cfg.order.name().to_string(),
            res_bound: self.cfg.res_bound,
            hom_bound: self.cfg.hom_bound,
            degree_bound: self.cfg.degree_bound,
            eta_bound: self.cfg.eta_bound,
            seed: self.cfg.seed,
        }
    }

    fn stmt(&mut self, stmt: &Stmt) -> Result<Option<Report>, ExecError> {
        match stmt {
            Stmt::Ring {
                name,
                prime,
                vars,
                relations,
                span,
            } => {
                if self.ring.is_some() {
                    return Err(ExecError::usage(
                        *span,
                        "only one ring is allowed per session",
                    ));
                }
                let prime = self.cfg.prime_override.unwrap_or(*prime);
                // Relations parse against a relation-free probe ring.
                let probe = QuotientRing::polynomial(prime, vars.clone(), self.cfg.order)
                    .map_err(|error| ExecError { span: *span, error })?;
                let rels: Vec<Polynomial> = relations
                    .iter()
                    .map(|p| eval_poly(&probe, p, *span))
                    .collect::<Result<_, _>>()?;
                let ring = QuotientRing::new(prime, vars.clone(), rels, self.cfg.order)
                    .map_err(|error| ExecError { span: *span, error })?;
                self.scope.insert(name.clone(), Value::Ring);
                self.scope.insert(
                    "k".to_string(),
                    Value::Module(PresentedModule::residue_field(ring.clone())),
                );
                self.ring = Some(ring);
                Ok(None)
            }
            Stmt::Ideal { name, gens, span } => {
                let ring = self.ring(*span)?;
                let gens: Vec<Polynomial> = gens
                    .iter()
                    .map(|p| eval_poly(&ring, p, *span))
                    .collect::<Result<_, _>>()?;
                let ideal =
                    Ideal::new(ring, gens).map_err(|error| ExecError { span: *span, error })?;
                self.scope.insert(name.clone(), Value::Ideal(ideal));
                Ok(None)
            }
            Stmt::Module { name, expr, span } => {
                let out = self.eval(expr)?;
                let module = self.as_module(out.0, *span)?;
                self.scope.insert(name.clone(), Value::Module(module));
                Ok(None)
            }
            Stmt::Let { name, expr, .. } => {
                let (value, _) = self.eval(expr)?;
                self.scope.insert(name.clone(), value);
                Ok(None)
            }
            Stmt::Command { expr, span } => {
                let start = Instant::now();
                let hits_before = self.engine.cache_hits();
                let (value, payload) = self.eval(expr)?;
                let payload = match payload {
                    Some(p) => p,
                    None => self.value_payload(&value, *span)?,
                };
                Ok(Some(Report {
                    command: expr.to_string(),
                    result: payload,
                    provenance: self.provenance(),
                    wall_ms: start.elapsed().as_millis(),
                    cache_hits: self.engine.cache_hits() - hits_before,
                }))
            }
        }
    }

    fn eval(&mut self, expr: &Expr) -> Result<(Value, Option<Payload>), ExecError> {
        match expr {
            Expr::Int(n, _) => Ok((Value::Int(*n), None)),
            Expr::Ident(name, span) => {
                if let Some(form) = form_by_name(name) {
                    return Ok((Value::Form(form), None));
                }
                match self.scope.get(name) {
                    Some(v) => Ok((v.clone(), None)),
                    None => Err(ExecError::usage(
                        *span,
                        format!("unknown identifier `{name}`"),
                    )),
                }
            }
            Expr::Tuple { items, span } => {
                let ring = self.ring(*span)?;
                let polys: Vec<Polynomial> = items
                    .iter()
                    .map(|p| eval_poly(&ring, p, *span))
                    .collect::<Result<_, _>>()?;
                Ok((Value::Seq(polys), None))
            }
            Expr::Coker { rows, twists, span } => {
                let ring = self.ring(*span)?;
                let rows: Vec<Vec<Polynomial>> = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|p| eval_poly(&ring, p, *span))
                            .collect::<Result<_, _>>()
                    })
                    .collect::<Result<_, _>>()?;
                let module = PresentedModule::from_rows(ring, &rows, twists.clone())
                    .map_err(|error| ExecError { span: *span, error })?;
                Ok((Value::Module(module), None))
            }
            Expr::Call { name, args, span } => self.call(name, args, *span),
        }
    }

    fn call(
        &mut self,
        name: &str,
        args: &[Expr],
        span: Span,
    ) -> Result<(Value, Option<Payload>), ExecError> {
        let vals: Vec<Value> = args
            .iter()
            .map(|a| self.eval(a).map(|(v, _)| v))
            .collect::<Result<_, _>>()?;
        let wrap = |error: CoreError| ExecError { span, error };
        match name {
            "resolve" => {
                let m = self.arg_module(&vals, 0, span)?;
                let l = self.opt_usize(&vals, 1, self.cfg.res_bound, span)?;
                self.arity(&vals, 1..=2, name, span)?;
                let res = self.engine.minimal_resolution(&m, l).map_err(wrap)?;
                let payload = resolution_payload(&res);
                Ok((Value::Resolution(res), Some(payload)))
            }
            "betti" => {
                self.arity(&vals, 1..=2, name, span)?;
                let res = match &vals[0] {
                    Value::Resolution(r) => r.clone(),
                    _ => {
                        let m = self.arg_module(&vals, 0, span)?;
                        let l = self.opt_usize(&vals, 1, self.cfg.res_bound, span)?;
                        self.engine.minimal_resolution(&m, l).map_err(wrap)?
                    }
                };
                let table = self.engine.betti_table(&res).map_err(wrap)?;
                Ok((Value::Unit, Some(betti_payload(&table))))
            }
            "hilbert" => {
                self.arity(&vals, 1..=2, name, span)?;
                let m = self.arg_module(&vals, 0, span)?;
                let d = self.opt_i64(&vals, 1, self.cfg.degree_bound, span)?;
                let h = self.engine.hilbert_function(&m, d).map_err(wrap)?;
                Ok((
                    Value::Unit,
                    Some(Payload::Hilbert {
                        values: h.window(d),
                        rational_numerator: h.rational_numerator.clone(),
                    }),
                ))
            }
            "dim" => {
                self.arity(&vals, 1..=1, name, span)?;
                let m = self.arg_module(&vals, 0, span)?;
                let dim = self.engine.krull_dimension(&m).map_err(wrap)?;
                Ok((Value::Int(dim as i64), Some(Payload::Dim { dim })))
            }
            "length" => {
                self.arity(&vals, 1..=1, name, span)?;
                let m = self.arg_module(&vals, 0, span)?;
                let l = self.engine.module_length(&m).map_err(wrap)?;
                Ok((
                    Value::Unit,
                    Some(Payload::Length {
                        finite: l.is_finite(),
                        value: l.finite(),
                    }),
                ))
            }
            "depth" => {
                self.arity(&vals, 2..=2, name, span)?;
                let ideal = self.arg_ideal(&vals, 0, span)?;
                let m = self.arg_module(&vals, 1, span)?;
                let cert = self.engine.depth(&ideal, &m).map_err(wrap)?;
                Ok((
                    Value::Int(cert.depth as i64),
                    Some(Payload::Depth {
                        depth: cert.depth,
                        witness_index: cert.witness.index,
                        vanishing: cert.vanishing,
                    }),
                ))
            }
            "tor" | "ext" => {
                self.arity(&vals, 2..=3, name, span)?;
                let m = self.arg_module(&vals, 0, span)?;
                let n = self.arg_module(&vals, 1, span)?;
                let imax = self.opt_usize(&vals, 2, self.cfg.hom_bound, span)?;
                let homs = if name == "tor" {
                    self.engine.tor(&m, &n, imax).map_err(wrap)?
                } else {
                    self.engine.ext(&m, &n, imax).map_err(wrap)?
                };
                let entries: Vec<HomologyEntry> = homs
                    .iter()
                    .map(|h| HomologyEntry {
                        i: h.index,
                        zero: h.zero,
                        length: match h.length {
                            Length::Finite(n) => Some(n),
                            Length::Infinite => None,
                        },
                        hilbert: h.hilbert.window(self.cfg.degree_bound),
                    })
                    .collect();
                let payload = if name == "tor" {
                    Payload::Tor { entries }
                } else {
                    Payload::Ext { entries }
                };
                Ok((Value::Unit, Some(payload)))
            }
            "syzygy" => {
                self.arity(&vals, 2..=2, name, span)?;
                let m = self.arg_module(&vals, 0, span)?;
                let n = self.arg_usize(&vals, 1, span)?;
                let omega = self.engine.syzygy_module(&m, n).map_err(wrap)?;
                let payload = module_payload(&omega);
                Ok((Value::Module(omega), Some(payload)))
            }
            "transpose" => {
                self.arity(&vals, 1..=1, name, span)?;
                let m = self.arg_module(&vals, 0, span)?;
                let tr = self.engine.transpose(&m).map_err(wrap)?;
                let payload = module_payload(&tr);
                Ok((Value::Module(tr), Some(payload)))
            }
            "eta" => {
                self.arity(&vals, 2..=3, name, span)?;
                let m = self.arg_module(&vals, 0, span)?;
                let n = self.arg_module(&vals, 1, span)?;
                let bound = self.opt_usize(&vals, 2, self.cfg.eta_bound, span)?;
                let out = self.engine.eta_estimate(&m, &n, bound).map_err(wrap)?;
                let payload = match out {
                    EtaOutcome::Defined(eta) => Payload::Eta {
                        value: eta.exact.map(|r| r.to_string()),
                        exact: eta.exact.is_some(),
                        period: eta.period,
                        estimate: eta.estimate,
                        start_index: eta.start_index,
                        codim: eta.codim,
                        trend: trend_name(eta.trend).to_string(),
                    },
                    EtaOutcome::UndefinedAtBound { last_infinite } => {
                        Payload::EtaUndefined { last_infinite }
                    }
                };
                Ok((Value::Unit, Some(payload)))
            }
            "audit" => {
                self.arity(&vals, 3..=3, name, span)?;
                let ideal = self.arg_ideal(&vals, 0, span)?;
                let n_mod = self.arg_module(&vals, 1, span)?;
                let n = self.arg_usize(&vals, 2, span)?;
                let report = self
                    .engine
                    .audit_depth_inequality(&ideal, &n_mod, n)
                    .map_err(wrap)?;
                Ok((
                    Value::Unit,
                    Some(Payload::Audit {
                        verdict: verdict_name(&report.verdict).to_string(),
                        n: report.n,
                        depth_ring: report.depth_ring,
                        depth_module: report.depth_module,
                        bound: report.bound,
                        notes: report.hypothesis_notes.clone(),
                    }),
                ))
            }
            "probe_rigidity" => {
                if vals.len() < 4 {
                    return Err(ExecError::usage(
                        span,
                        "probe_rigidity(M, n, bound, tests...) needs at least one test module",
                    ));
                }
                let m = self.arg_module(&vals, 0, span)?;
                let n = self.arg_usize(&vals, 1, span)?;
                let bound = self.arg_usize(&vals, 2, span)?;
                let tests: Vec<PresentedModule> = (3..vals.len())
                    .map(|i| self.arg_module(&vals, i, span))
                    .collect::<Result<_, _>>()?;
                let report = self
                    .engine
                    .probe_tor_rigidity(&m, n, &tests, bound)
                    .map_err(wrap)?;
                Ok((
                    Value::Unit,
                    Some(Payload::Rigidity {
                        order: report.order,
                        bound: report.bound,
                        tests: report.tests,
                        violation: report.violation.map(|v| RigidityWitness {
                            test_index: v.test_index,
                            window_start: v.window_start,
                            first_nonzero: v.first_nonzero,
                        }),
                    }),
                ))
            }
            "verify_splitting" => {
                self.arity(&vals, 4..=4, name, span)?;
                let form = match &vals[0] {
                    Value::Form(f) => *f,
                    _ => {
                        return Err(ExecError::usage(
                            span,
                            "first argument must be lemma42, cor44 or prop28",
                        ))
                    }
                };
                let n_mod = self.arg_module(&vals, 1, span)?;
                let n = self.arg_usize(&vals, 2, span)?;
                let seq = match &vals[3] {
                    Value::Seq(polys) => polys.clone(),
                    _ => {
                        return Err(ExecError::usage(
                            span,
                            "fourth argument must be a parenthesized element list",
                        ))
                    }
                };
                let report = self
                    .engine
                    .verify_cut_syzygy_splitting(&n_mod, n, &seq, form)
                    .map_err(wrap)?;
                Ok((
                    Value::Unit,
                    Some(Payload::Splitting {
                        form: report.form.name().to_string(),
                        equivalent: report.equivalent,
                        cut_degree: report.cut_degree,
                        free_part: report.free_part.clone(),
                        left_gens: report.left.gen_degrees.clone(),
                        right_gens: report.right.gen_degrees.clone(),
                        notes: report.hypothesis_notes.clone(),
                    }),
                ))
            }
            other => Err(ExecError::usage(span, format!("unknown command `{other}`"))),
        }
    }

    fn value_payload(&self, value: &Value, span: Span) -> Result<Payload, ExecError> {
        match value {
            Value::Module(m) => Ok(module_payload(m)),
            Value::Resolution(r) => Ok(resolution_payload(r)),
            Value::Int(n) => Ok(Payload::Value {
                text: n.to_string(),
            }),
            Value::Ring => {
                let ring = self.ring(span)?;
                Ok(Payload::Value {
                    text: format!(
                        "GF({})[{}] with {} relations, dimension {}",
                        ring.base.field.modulus(),
                        ring.base.vars.join(", "),
                        ring.relations.len(),
                        ring.dimension
                    ),
                })
            }
            Value::Ideal(i) => Ok(Payload::Value {
                text: format!(
                    "ideal with {} generators",
                    i.gens.len()
                ),
            }),
            Value::Seq(polys) => Ok(Payload::Value {
                text: format!("sequence of {} elements", polys.len()),
            }),
            Value::Form(f) => Ok(Payload::Value {
                text: f.name().to_string(),
            }),
            Value::Unit => Ok(Payload::Value {
                text: "()".to_string(),
            }),
        }
    }

    fn arity(
        &self,
        vals: &[Value],
        range: std::ops::RangeInclusive<usize>,
        name: &str,
        span: Span,
    ) -> Result<(), ExecError> {
        if range.contains(&vals.len()) {
            Ok(())
        } else {
            Err(ExecError::usage(
                span,
                format!(
                    "`{name}` takes {} to {} arguments, got {}",
                    range.start(),
                    range.end(),
                    vals.len()
                ),
            ))
        }
    }

    fn as_module(&self, v: Value, span: Span) -> Result<PresentedModule, ExecError> {
        match v {
            Value::Module(m) => Ok(m),
            Value::Ring => Ok(PresentedModule::ring_module(self.ring(span)?)),
            Value::Ideal(_) => Err(ExecError::usage(
                span,
                "expected a module, found an ideal (use coker or a module binding)",
            )),
            _ => Err(ExecError::usage(span, "expected a module")),
        }
    }

    fn arg_module(&self, vals: &[Value], idx: usize, span: Span) -> Result<PresentedModule, ExecError> {
        let v = vals
            .get(idx)
            .cloned()
            .ok_or_else(|| ExecError::usage(span, format!("missing argument {}", idx + 1)))?;
        self.as_module(v, span)
    }

    fn arg_ideal(&self, vals: &[Value], idx: usize, span: Span) -> Result<Ideal, ExecError> {
        match vals.get(idx) {
            Some(Value::Ideal(i)) => Ok(i.clone()),
            Some(Value::Seq(polys)) => {
                let ring = self.ring(span)?;
                Ideal::new(ring, polys.clone()).map_err(|error| ExecError { span, error })
            }
            _ => Err(ExecError::usage(
                span,
                format!("argument {} must be an ideal", idx + 1),
            )),
        }
    }

    fn arg_usize(&self, vals: &[Value], idx: usize, span: Span) -> Result<usize, ExecError> {
        match vals.get(idx) {
            Some(Value::Int(n)) if *n >= 0 => Ok(*n as usize),
            _ => Err(ExecError::usage(
                span,
                format!("argument {} must be a non-negative integer", idx + 1),
            )),
        }
    }

    fn opt_usize(
        &self,
        vals: &[Value],
        idx: usize,
        default: usize,
        span: Span,
    ) -> Result<usize, ExecError> {
        if vals.len() <= idx {
            Ok(default)
        } else {
            self.arg_usize(vals, idx, span)
        }
    }

    fn opt_i64(
        &self,
        vals: &[Value],
        idx: usize,
        default: i64,
        span: Span,
    ) -> Result<i64, ExecError> {
        match vals.get(idx) {
            None => Ok(default),
            Some(Value::Int(n)) => Ok(*n),
            Some(_) => Err(ExecError::usage(
                span,
                format!("argument {} must be an integer", idx + 1),
            )),
        }
    }
}

fn form_by_name(name: &str) -> Option<SplittingForm> {
    match name {
        "lemma42" => Some(SplittingForm::Lemma42),
        "cor44" => Some(SplittingForm::Cor44),
        "prop28" => Some(SplittingForm::Prop28),
        _ => None,
    }
}

fn verdict_name(v: &AuditVerdict) -> &'static str {
    match v {
        AuditVerdict::HoldsWithEquality => "holds with equality",
        AuditVerdict::Holds => "holds",
        AuditVerdict::Violated => "violated",
        AuditVerdict::Vacuous => "vacuous",
    }
}

fn trend_name(t: EtaTrend) -> &'static str {
    match t {
        EtaTrend::ConvergingToZero => "converging to zero",
        EtaTrend::Stable => "stable",
        EtaTrend::Inconclusive => "inconclusive",
    }
}

fn module_payload(m: &PresentedModule) -> Payload {
    let rows = m.dense_rows();
    Payload::Module {
        twists: m.twists.clone(),
        matrix: rows
            .iter()
            .map(|row| row.iter().map(|f| m.ring.base.fmt_poly(f)).collect())
            .collect(),
        minimal: m.minimal,
    }
}

fn resolution_payload(res: &GradedFreeResolution) -> Payload {
    Payload::Resolution {
        twists: res.twists.clone(),
        totals: res.betti_totals(),
        finite: res.finite(),
    }
}

fn betti_payload(table: &betti_core::BettiTable) -> Payload {
    Payload::Betti {
        totals: table.totals(),
        entries: table
            .entries
            .iter()
            .map(|(&(i, j), &beta)| BettiEntry { i, j, beta })
            .collect(),
    }
}

fn eval_poly(
    ring: &Arc<QuotientRing>,
    expr: &PolyExpr,
    span: Span,
) -> Result<Polynomial, ExecError> {
    let base = &ring.base;
    Ok(match expr {
        PolyExpr::Var(name) => match base.vars.iter().position(|v| v == name) {
            Some(i) => base.var(i),
            None => {
                return Err(ExecError::usage(
                    span,
                    format!("`{name}` is not a variable of the active ring"),
                ))
            }
        },
        PolyExpr::Int(n) => base.constant(*n),
        PolyExpr::Neg(inner) => base.neg(&eval_poly(ring, inner, span)?),
        PolyExpr::Add(a, b) => base.add(&eval_poly(ring, a, span)?, &eval_poly(ring, b, span)?),
        PolyExpr::Sub(a, b) => base.sub(&eval_poly(ring, a, span)?, &eval_poly(ring, b, span)?),
        PolyExpr::Mul(a, b) => base.mul(&eval_poly(ring, a, span)?, &eval_poly(ring, b, span)?),
        PolyExpr::Pow(b, e) => {
            let b = eval_poly(ring, b, span)?;
            let mut acc = base.one();
            for _ in 0..*e {
                acc = base.mul(&acc, &b);
            }
            acc
        }
    })
}
