//! Pinned counts: `claim-id = integer` lines, `#` comments allowed.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub fn parse_golden(text: &str) -> Result<BTreeMap<String, u64>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parse_err = |msg: String| Error::Parse { line: i + 1, msg };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| parse_err("expected `claim-id = integer`".into()))?;
        let key = key.trim();
        if key.is_empty() || key.contains(char::is_whitespace) {
            return Err(parse_err(format!("invalid claim id {key:?}")));
        }
        let value: u64 = value
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("invalid count {:?}", value.trim())))?;
        if out.insert(key.to_string(), value).is_some() {
            return Err(parse_err(format!("duplicate claim id {key}")));
        }
    }
    Ok(out)
}

/// Renders counts with a header recording the command that produced them.
pub fn format_golden(counts: &BTreeMap<String, u64>, command: &str) -> String {
    let mut s = format!("# generated by: {command}\n");
    for (k, v) in counts {
        s.push_str(&format!("{k} = {v}\n"));
    }
    s
}

/// Keys whose values differ, or that are missing from `actual`.
pub fn compare_golden(expected: &BTreeMap<String, u64>, actual: &BTreeMap<String, u64>) -> Vec<String> {
    expected
        .iter()
        .filter_map(|(k, v)| match actual.get(k) {
            Some(a) if a == v => None,
            Some(a) => Some(format!("{k}: expected {v}, got {a}")),
            None => Some(format!("{k}: missing")),
        })
        .collect()
}
