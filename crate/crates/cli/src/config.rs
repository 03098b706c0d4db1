//! `--config file.toml` support. The file is turned into ordinary flags
//! placed *before* the explicit ones, so explicit flags win and unknown keys
//! are rejected by the same parser that rejects unknown flags.
//!
//! ```toml
//! threads = 4          # global flags at top level
//! [sample]             # one table per subcommand
//! n = 256
//! trials = 1000
//! ```

use std::ffi::OsString;
use std::path::Path;

use crate::UsageError;

const SUBCOMMANDS: [&str; 4] = ["eval", "verify", "converge", "sample"];

fn config_path(args: &[OsString]) -> Option<OsString> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(p.into());
        }
    }
    None
}

fn flag_tokens(table: &toml::Table, out: &mut Vec<OsString>) -> Result<(), UsageError> {
    for (key, value) in table {
        if key == "config" {
            return Err(UsageError("a config file cannot name another config file".into()));
        }
        let flag = format!("--{}", key.replace('_', "-"));
        let text = match value {
            toml::Value::Boolean(true) => {
                out.push(flag.into());
                continue;
            }
            toml::Value::Boolean(false) | toml::Value::Table(_) => continue,
            toml::Value::String(s) => s.clone(),
            toml::Value::Integer(i) => i.to_string(),
            toml::Value::Float(f) => f.to_string(),
            toml::Value::Array(items) => items
                .iter()
                .map(|v| match v {
                    toml::Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect::<Vec<_>>()
                .join(","),
            toml::Value::Datetime(d) => d.to_string(),
        };
        out.push(format!("{flag}={text}").into());
    }
    Ok(())
}

/// Returns `args` with the config file (if any) spliced in as flags.
pub fn expand(args: Vec<OsString>) -> Result<Vec<OsString>, UsageError> {
    let Some(path) = config_path(&args) else {
        return Ok(args);
    };
    let path = Path::new(&path);
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read config file {}: {e}", path.display())))?;
    let table: toml::Table =
        text.parse().map_err(|e| UsageError(format!("config file {} is not valid TOML: {e}", path.display())))?;

    let sub_pos = args.iter().position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()));
    let mut out = vec![args[0].clone()];
    if let Some(pos) = sub_pos {
        let sub = args[pos].to_string_lossy().into_owned();
        out.push(args[pos].clone());
        flag_tokens(&table, &mut out)?;
        if let Some(toml::Value::Table(t)) = table.get(&sub) {
            flag_tokens(t, &mut out)?;
        }
        out.extend(args.iter().enumerate().skip(1).filter(|&(i, _)| i != pos).map(|(_, a)| a.clone()));
    } else {
        flag_tokens(&table, &mut out)?;
        out.extend(args.into_iter().skip(1));
    }
    Ok(out)
}
