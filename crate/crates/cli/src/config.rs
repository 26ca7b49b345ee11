//! JSON run configs: `{"command": "...", "params": {...}, "out": "...", "seed": n}`.
//! Parameters become long options, so unknown keys are rejected by the same
//! parser that validates the command line.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::Deserialize;
use serde_json::Value;

use crate::{execute, Cli, Failure, Output};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunConfig {
    command: Option<String>,
    #[serde(default)]
    params: BTreeMap<String, Value>,
    out: Option<PathBuf>,
    seed: Option<u64>,
}

/// Parameters naming files, resolved against the config's directory.
const PATH_PARAMS: &[&str] = &["init"];

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn scalar(key: &str, v: &Value) -> Result<String, Failure> {
    match v {
        Value::Number(n) => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        _ => Err(Failure::Usage(format!("parameter `{key}` must be a number, string, list or boolean"))),
    }
}

pub fn to_args(cfg_path: &Path, text: &str) -> Result<Vec<String>, Failure> {
    let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Failure::Usage(format!("{}: {e}", cfg_path.display())))?;
    let base = cfg_path.parent().unwrap_or(Path::new("."));
    let Some(command) = cfg.command else {
        return Err(Failure::Usage("run config is missing required keys: command (optional: params, out, seed)".into()));
    };
    if command == "run" {
        return Err(Failure::Usage("run configs cannot nest".into()));
    }
    let mut args = vec!["integrability-lab".to_string(), command];
    for (key, v) in &cfg.params {
        let flag = format!("--{key}");
        match v {
            Value::Bool(true) => args.push(flag),
            Value::Bool(false) => {}
            Value::Array(items) => {
                let parts = items.iter().map(|i| scalar(key, i)).collect::<Result<Vec<_>, _>>()?;
                args.push(format!("{flag}={}", parts.join(",")));
            }
            other => {
                let mut s = scalar(key, other)?;
                if PATH_PARAMS.contains(&key.as_str()) {
                    s = resolve(base, Path::new(&s)).to_string_lossy().into_owned();
                }
                args.push(format!("{flag}={s}"));
            }
        }
    }
    if let Some(out) = cfg.out {
        args.push(format!("--out={}", resolve(base, &out).display()));
    }
    if let Some(seed) = cfg.seed {
        args.push(format!("--seed={seed}"));
    }
    Ok(args)
}

pub fn run(path: &Path) -> Result<Output, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let args = to_args(path, if text.trim().is_empty() { "{}" } else { &text })?;
    let cli = Cli::try_parse_from(&args).map_err(|e| Failure::Usage(e.to_string()))?;
    execute(cli)
}
