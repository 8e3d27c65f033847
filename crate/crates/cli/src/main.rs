//! Command-line front end: `betti run <file>` executes a session file and
//! renders its reports.

mod ast;
mod lexer;
mod parser;
mod report;
mod session;

use std::path::PathBuf;
use std::process::ExitCode;

use betti_core::{Error as CoreError, TermOrder};

use report::{render, Format};
use session::ExecConfig;

const USAGE: &str = "usage: betti run <file> [options]

options:
  --prime <p>          override the session's coefficient prime
  --order <name>       term order: grevlex (default) or lex
  --res-bound <n>      resolution truncation length (default 10)
  --hom-bound <n>      Tor/Ext index bound (default 10)
  --degree-bound <n>   Hilbert window width (default 12)
  --eta-bound <n>      eta partial-sum bound (default 100)
  --seed <n>           extra seed mixed into deterministic searches
  --json <path>        write the reports as a JSON array
  --csv <path>         write the reports as CSV
  --cache-dir <path>   content-addressed resolution cache directory
  --no-cache           disable the cache even when a directory is given

exit codes: 0 success, 1 usage/parse error, 2 resource cap, 3 internal error";

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}

fn run() -> Result<(), (u8, String)> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() || args[0] == "--help" || args[0] == "-h" {
        return Err((1, USAGE.to_string()));
    }
    if args[0] != "run" {
        return Err((1, format!("unknown subcommand `{}`\n{USAGE}", args[0])));
    }
    let mut file: Option<PathBuf> = None;
    let mut cfg = ExecConfig::default();
    let mut json_path: Option<PathBuf> = None;
    let mut csv_path: Option<PathBuf> = None;
    let mut user_seed: u64 = 0;
    let mut no_cache = false;

    let mut i = 1;
    let take_value = |args: &[String], i: &mut usize, flag: &str| -> Result<String, (u8, String)> {
        *i += 1;
        args.get(*i)
            .cloned()
            .ok_or_else(|| (1u8, format!("flag {flag} needs a value")))
    };
    while i < args.len() {
        match args[i].as_str() {
            "--prime" => {
                let v = take_value(&args, &mut i, "--prime")?;
                cfg.prime_override =
                    Some(v.parse().map_err(|_| (1, format!("bad prime `{v}`")))?);
            }
            "--order" => {
                let v = take_value(&args, &mut i, "--order")?;
                cfg.order = match v.as_str() {
                    "grevlex" => TermOrder::GrevLex,
                    "lex" => TermOrder::Lex,
                    other => return Err((1, format!("unknown order `{other}`"))),
                };
            }
            "--res-bound" => {
                let v = take_value(&args, &mut i, "--res-bound")?;
                cfg.res_bound = v.parse().map_err(|_| (1, format!("bad bound `{v}`")))?;
            }
            "--hom-bound" => {
                let v = take_value(&args, &mut i, "--hom-bound")?;
                cfg.hom_bound = v.parse().map_err(|_| (1, format!("bad bound `{v}`")))?;
            }
            "--degree-bound" => {
                let v = take_value(&args, &mut i, "--degree-bound")?;
                cfg.degree_bound = v.parse().map_err(|_| (1, format!("bad bound `{v}`")))?;
            }
            "--eta-bound" => {
                let v = take_value(&args, &mut i, "--eta-bound")?;
                cfg.eta_bound = v.parse().map_err(|_| (1, format!("bad bound `{v}`")))?;
            }
            "--seed" => {
                let v = take_value(&args, &mut i, "--seed")?;
                user_seed = v.parse().map_err(|_| (1, format!("bad seed `{v}`")))?;
            }
            "--json" => json_path = Some(PathBuf::from(take_value(&args, &mut i, "--json")?)),
            "--csv" => csv_path = Some(PathBuf::from(take_value(&args, &mut i, "--csv")?)),
            "--cache-dir" => {
                cfg.cache_dir = Some(PathBuf::from(take_value(&args, &mut i, "--cache-dir")?));
            }
            "--no-cache" => no_cache = true,
            other if file.is_none() && !other.starts_with('-') => {
                file = Some(PathBuf::from(other));
            }
            other => return Err((1, format!("unknown flag `{other}`\n{USAGE}"))),
        }
        i += 1;
    }
    if no_cache {
        cfg.cache_dir = None;
    }
    let file = file.ok_or((1, format!("no session file given\n{USAGE}")))?;
    let text = std::fs::read_to_string(&file)
        .map_err(|e| (1, format!("cannot read {}: {e}", file.display())))?;

    // Deterministic search seed: input hash mixed with the user seed.
    cfg.seed = user_seed ^ fnv64(text.as_bytes());

    let session = parser::parse_session(&text).map_err(|e| (1, format!("parse error: {e}")))?;
    let reports = session::execute_session(&session, &cfg).map_err(|e| {
        let code = match e.error {
            CoreError::Usage(_) => 1,
            CoreError::Resource { .. } => 2,
            CoreError::Internal(_) => 3,
        };
        (code, format!("error: {e}"))
    })?;

    for r in &reports {
        print!("{}", String::from_utf8_lossy(&render(r, Format::Text)));
    }
    if let Some(path) = json_path {
        let mut body = Vec::new();
        body.push(b'[');
        for (i, r) in reports.iter().enumerate() {
            if i > 0 {
                body.push(b',');
            }
            body.push(b'\n');
            let one = render(r, Format::Json);
            body.extend_from_slice(one.trim_ascii_end());
        }
        body.extend_from_slice(b"\n]\n");
        std::fs::write(&path, body).map_err(|e| (1u8, format!("cannot write JSON: {e}")))?;
    }
    if let Some(path) = csv_path {
        let mut body = Vec::new();
        for r in &reports {
            body.extend_from_slice(&render(r, Format::Csv));
        }
        std::fs::write(&path, body).map_err(|e| (1u8, format!("cannot write CSV: {e}")))?;
    }
    Ok(())
}

fn fnv64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}
