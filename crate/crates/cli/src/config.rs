//! Flat `key = value` config files merged into the command line.
//!
//! Every key names a long flag of the chosen subcommand. Keys already given
//! on the command line are skipped, so flags always win over the file.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
}

/// Parses `key = value` lines; `#` starts a comment, blank lines are ignored.
pub fn parse(text: &str) -> Result<Vec<Entry>> {
    let mut entries = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!("config line {}: expected `key = value`, got `{raw}`", lineno + 1);
        };
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() || key.contains(char::is_whitespace) {
            bail!("config line {}: bad key `{}`", lineno + 1, key);
        }
        if key == "config" {
            bail!(
                "config line {}: config files cannot include other config files",
                lineno + 1
            );
        }
        entries.push(Entry {
            key,
            value: value.trim().trim_matches('"').to_string(),
        });
    }
    Ok(entries)
}

pub fn load(path: &Path) -> Result<Vec<Entry>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    parse(&text).with_context(|| format!("in config {}", path.display()))
}

fn given(args: &[OsString], key: &str) -> bool {
    let flag = format!("--{key}");
    let prefixed = format!("{flag}=");
    args.iter().any(|a| {
        let a = a.to_string_lossy();
        a == flag || a.starts_with(&prefixed)
    })
}

/// Appends config entries to `args` as `--key value` pairs. Boolean entries
/// become a bare `--key` when true and are dropped when false.
pub fn merge(args: &[OsString], entries: &[Entry]) -> Vec<OsString> {
    let mut out = args.to_vec();
    for e in entries {
        if given(args, &e.key) {
            continue;
        }
        match e.value.as_str() {
            "true" => out.push(format!("--{}", e.key).into()),
            "false" => {}
            value => {
                out.push(format!("--{}", e.key).into());
                out.push(value.into());
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn parses_comments_and_spacing() {
        let e = parse("# sweep settings\neps = 1e-10\n\n  all=true # everything\nout = \"r.json\"\n").unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(
            e[0],
            Entry {
                key: "eps".into(),
                value: "1e-10".into()
            }
        );
        assert_eq!(e[2].value, "r.json");
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse("eps 1e-10").is_err());
        assert!(parse(" = 3").is_err());
        assert!(parse("config = other.cfg").is_err());
    }

    #[test]
    fn flags_override_file() {
        let entries = parse("eps = 1e-6\nthreshold = 1\nall = true\ncsv = false").unwrap();
        let merged = merge(&os(&["nb", "verify", "--eps=1e-12"]), &entries);
        assert_eq!(
            merged,
            os(&["nb", "verify", "--eps=1e-12", "--threshold", "1", "--all"])
        );
    }
}
