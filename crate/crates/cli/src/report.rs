//! Structured command results and their text / JSON / CSV renderings.
//!
//! JSON output is deterministic: it carries the command echo, the result and
//! the numeric configuration, but no wall-clock or cache-hit data (those are
//! shown in the text rendering only).

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Provenance {
    pub prime: u64,
    pub order: String,
    pub res_bound: usize,
    pub hom_bound: usize,
    pub degree_bound: i64,
    pub eta_bound: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BettiEntry {
    pub i: usize,
    pub j: i64,
    pub beta: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct HomologyEntry {
    pub i: usize,
    pub zero: bool,
    /// None encodes infinite length.
    pub length: Option<u64>,
    pub hilbert: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Depth {
        depth: usize,
        witness_index: usize,
        vanishing: Vec<usize>,
    },
    Betti {
        totals: Vec<u64>,
        entries: Vec<BettiEntry>,
    },
    Hilbert {
        values: Vec<u64>,
        rational_numerator: Option<Vec<i64>>,
    },
    Dim {
        dim: usize,
    },
    Length {
        finite: bool,
        value: Option<u64>,
    },
    Tor {
        entries: Vec<HomologyEntry>,
    },
    Ext {
        entries: Vec<HomologyEntry>,
    },
    Module {
        twists: Vec<i64>,
        matrix: Vec<Vec<String>>,
        minimal: bool,
    },
    Resolution {
        twists: Vec<Vec<i64>>,
        totals: Vec<u64>,
        finite: bool,
    },
    Eta {
        value: Option<String>,
        exact: bool,
        period: Option<usize>,
        estimate: f64,
        start_index: usize,
        codim: usize,
        trend: String,
    },
    EtaUndefined {
        last_infinite: usize,
    },
    Audit {
        verdict: String,
        n: usize,
        depth_ring: usize,
        depth_module: Option<usize>,
        bound: usize,
        notes: Vec<String>,
    },
    Rigidity {
        order: usize,
        bound: usize,
        tests: usize,
        violation: Option<RigidityWitness>,
    },
    Splitting {
        form: String,
        equivalent: bool,
        cut_degree: i64,
        free_part: Vec<(i64, u64)>,
        left_gens: Vec<i64>,
        right_gens: Vec<i64>,
        notes: Vec<String>,
    },
    Value {
        text: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RigidityWitness {
    pub test_index: usize,
    pub window_start: usize,
    pub first_nonzero: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub command: String,
    pub result: Payload,
    pub provenance: Provenance,
    #[serde(skip)]
    pub wall_ms: u128,
    #[serde(skip)]
    pub cache_hits: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn render(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("serializable");
            out.push(b'\n');
            out
        }
        Format::Csv => render_csv(report).into_bytes(),
        Format::Text => render_text(report).into_bytes(),
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("> {}\n", report.command));
    match &report.result {
        Payload::Depth {
            depth,
            witness_index,
            vanishing,
        } => {
            out.push_str(&format!(
                "depth = {depth} (Ext^{witness_index} is the witness; Ext^i = 0 for i in {vanishing:?})\n"
            ));
        }
        Payload::Betti { totals, entries } => {
            out.push_str(&betti_grid(totals, entries));
        }
        Payload::Hilbert {
            values,
            rational_numerator,
        } => {
            let vals: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("hilbert: {}\n", vals.join(", ")));
            if let Some(num) = rational_numerator {
                out.push_str(&format!("rational form numerator: {num:?}\n"));
            }
        }
        Payload::Dim { dim } => out.push_str(&format!("dim = {dim}\n")),
        Payload::Length { finite, value } => {
            if *finite {
                out.push_str(&format!("length = {}\n", value.unwrap_or(0)));
            } else {
                out.push_str("length = infinite\n");
            }
        }
        Payload::Tor { entries } | Payload::Ext { entries } => {
            let kind = if matches!(report.result, Payload::Tor { .. }) {
                "Tor"
            } else {
                "Ext"
            };
            for e in entries {
                let len = match e.length {
                    Some(l) => l.to_string(),
                    None => "infinite".to_string(),
                };
                out.push_str(&format!(
                    "{kind}_{}: {} (length {len})\n",
                    e.i,
                    if e.zero { "0" } else { "nonzero" },
                ));
            }
        }
        Payload::Module {
            twists,
            matrix,
            minimal,
        } => {
            out.push_str(&format!(
                "module with generator degrees {twists:?}{}\n",
                if *minimal { " (minimal)" } else { "" }
            ));
            for row in matrix {
                out.push_str(&format!("  [ {} ]\n", row.join(", ")));
            }
        }
        Payload::Resolution {
            twists,
            totals,
            finite,
        } => {
            out.push_str(&format!(
                "resolution totals: {totals:?}{}\n",
                if *finite { " (finite)" } else { "" }
            ));
            for (i, ts) in twists.iter().enumerate() {
                out.push_str(&format!("  F_{i}: degrees {ts:?}\n"));
            }
        }
        Payload::Eta {
            value,
            exact,
            period,
            estimate,
            start_index,
            codim,
            trend,
        } => {
            match value {
                Some(v) => out.push_str(&format!("eta = {v} (exact: {exact})\n")),
                None => out.push_str("eta: no exact value at this bound\n"),
            }
            out.push_str(&format!(
                "estimate {estimate:.4}, start index {start_index}, codim {codim}, period {period:?}, trend {trend}\n"
            ));
        }
        Payload::EtaUndefined { last_infinite } => {
            out.push_str(&format!(
                "eta undefined at this bound (Tor_{last_infinite} has infinite length)\n"
            ));
        }
        Payload::Audit {
            verdict,
            n,
            depth_ring,
            depth_module,
            bound,
            notes,
        } => {
            out.push_str(&format!(
                "audit (n = {n}): depth(a, R) = {depth_ring}, depth(a, Omega^n N) = {}, bound {bound}: {verdict}\n",
                depth_module.map_or("-".to_string(), |d| d.to_string())
            ));
            for n in notes {
                out.push_str(&format!("  note: {n}\n"));
            }
        }
        Payload::Rigidity {
            order,
            bound,
            tests,
            violation,
        } => match violation {
            Some(v) => out.push_str(&format!(
                "{order}-Tor-rigidity VIOLATION: test {}, window start {}, Tor_{} nonzero (bound {bound})\n",
                v.test_index, v.window_start, v.first_nonzero
            )),
            None => out.push_str(&format!(
                "no {order}-Tor-rigidity violation against {tests} test modules up to Tor_{bound}\n"
            )),
        },
        Payload::Splitting {
            form,
            equivalent,
            free_part,
            left_gens,
            right_gens,
            ..
        } => {
            out.push_str(&format!(
                "{form}: {}\n",
                if *equivalent {
                    "Betti-Hilbert equivalent"
                } else {
                    "NOT equivalent"
                }
            ));
            out.push_str(&format!(
                "  left generators {left_gens:?}, right generators {right_gens:?}\n"
            ));
            if !free_part.is_empty() {
                let parts: Vec<String> = free_part
                    .iter()
                    .map(|(j, c)| {
                        if *c == 1 {
                            format!("R(-{j})")
                        } else {
                            format!("R(-{j})^{c}")
                        }
                    })
                    .collect();
                out.push_str(&format!("  free part: {}\n", parts.join(" + ")));
            }
        }
        Payload::Value { text } => out.push_str(&format!("{text}\n")),
    }
    out.push_str(&format!(
        "[{} ms, {} cache hits]\n",
        report.wall_ms, report.cache_hits
    ));
    out
}

fn betti_grid(totals: &[u64], entries: &[BettiEntry]) -> String {
    let max_step = totals.len().saturating_sub(1);
    let offsets: Vec<i64> = {
        let mut v: Vec<i64> = entries.iter().map(|e| e.j - e.i as i64).collect();
        v.sort();
        v.dedup();
        if v.is_empty() {
            vec![0]
        } else {
            (v[0]..=v[v.len() - 1]).collect()
        }
    };
    let cell = |i: usize, off: i64| -> u64 {
        entries
            .iter()
            .find(|e| e.i == i && e.j - e.i as i64 == off)
            .map(|e| e.beta)
            .unwrap_or(0)
    };
    let mut out = String::from("betti (rows j-i, columns i):\n");
    out.push_str("       ");
    for i in 0..=max_step {
        out.push_str(&format!("{i:>5}"));
    }
    out.push('\n');
    for off in &offsets {
        out.push_str(&format!("{off:>5}: "));
        for i in 0..=max_step {
            let v = cell(i, *off);
            if v == 0 {
                out.push_str("    .");
            } else {
                out.push_str(&format!("{v:>5}"));
            }
        }
        out.push('\n');
    }
    out.push_str("total: ");
    for t in totals {
        out.push_str(&format!("{t:>5}"));
    }
    out.push('\n');
    out
}

fn render_csv(report: &Report) -> String {
    match &report.result {
        Payload::Betti { entries, .. } => {
            let mut out = String::from("i,j,beta\n");
            for e in entries {
                out.push_str(&format!("{},{},{}\n", e.i, e.j, e.beta));
            }
            out
        }
        other => {
            // Flatten the JSON object into key,value rows.
            let v = serde_json::to_value(other).expect("serializable");
            let mut out = String::from("key,value\n");
            flatten_json("", &v, &mut out);
            out
        }
    }
}

fn flatten_json(prefix: &str, v: &serde_json::Value, out: &mut String) {
    match v {
        serde_json::Value::Object(map) => {
            for (k, val) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten_json(&key, val, out);
            }
        }
        serde_json::Value::Array(items) => {
            for (idx, val) in items.iter().enumerate() {
                flatten_json(&format!("{prefix}[{idx}]"), val, out);
            }
        }
        scalar => {
            out.push_str(&format!("{prefix},{scalar}\n"));
        }
    }
}
