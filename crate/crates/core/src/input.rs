//! The sectioned key=value input format.
//!
//! ```text
//! [ring]
//! p = 2
//! vars = x, y
//! ideal = x*y
//! [module]
//! generators = 1
//! degrees = 0
//! relations = x + y
//! [criteria]
//! e = 1, 2
//! t = 1
//! window = auto
//! mode = auto
//! ```
//!
//! Keys may also follow the section header on the same line. `#` starts a
//! comment. Without a `[module]` section the module is the residue field.

use std::path::Path;

use crate::criteria::{CriterionConfig, Mode};
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::groebner::DEFAULT_STEP_BUDGET;
use crate::module::{Matrix, PresentedModule};
use crate::poly::{PolyRing, Polynomial};
use crate::ring::QuotientRing;

#[derive(Clone, Debug)]
pub struct InputFile {
    pub ring: QuotientRing,
    pub module: PresentedModule,
    pub criteria: CriterionConfig,
}

const SECTIONS: &[(&str, &[&str])] = &[
    ("ring", &["p", "vars", "ideal"]),
    ("module", &["generators", "degrees", "relations"]),
    ("criteria", &["e", "t", "window", "mode"]),
];

type Section = Vec<(String, String, usize)>;

fn split_sections(text: &str) -> Result<Vec<(String, Section, usize)>> {
    let mut sections: Vec<(String, String, usize)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('[') {
            let close =
                rest.find(']').ok_or_else(|| Error::Invalid(format!("line {}: unterminated section header", n + 1)))?;
            let name = rest[..close].trim().to_string();
            if !SECTIONS.iter().any(|(s, _)| *s == name) {
                return Err(Error::Invalid(format!("line {}: unknown section [{name}]", n + 1)));
            }
            if sections.iter().any(|(s, _, _)| *s == name) {
                return Err(Error::Invalid(format!("line {}: duplicate section [{name}]", n + 1)));
            }
            sections.push((name, format!("{}\n", &rest[close + 1..]), n + 1));
        } else {
            let Some(last) = sections.last_mut() else {
                return Err(Error::Invalid(format!("line {}: content before the first section", n + 1)));
            };
            last.1.push_str(line);
            last.1.push('\n');
        }
    }
    sections
        .into_iter()
        .map(|(name, body, line)| {
            let keys = SECTIONS.iter().find(|(s, _)| *s == name).unwrap().1;
            Ok((name.clone(), split_keys(&name, &body, keys, line)?, line))
        })
        .collect()
}

/// Splits `body` at every `key=` occurrence for a known key that starts the
/// body or follows whitespace.
fn split_keys(section: &str, body: &str, keys: &[&str], line: usize) -> Result<Section> {
    let bytes = body.as_bytes();
    let mut starts: Vec<(usize, usize, &str)> = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if i == 0 || bytes[i - 1].is_ascii_whitespace() {
            let end = body[i..].find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).map_or(body.len(), |k| i + k);
            let word = &body[i..end];
            let after = body[end..].trim_start_matches([' ', '\t']);
            if !word.is_empty() && after.starts_with('=') {
                let Some(key) = keys.iter().find(|k| **k == word) else {
                    return Err(Error::Invalid(format!("section [{section}] (line {line}): unknown key `{word}`")));
                };
                let value_start = body.len() - after.len() + 1;
                starts.push((i, value_start, key));
                i = value_start;
                continue;
            }
        }
        i += 1;
    }
    if let Some(&(first, _, _)) = starts.first() {
        if !body[..first].trim().is_empty() {
            return Err(Error::Invalid(format!("section [{section}] (line {line}): text without a key")));
        }
    } else if !body.trim().is_empty() {
        return Err(Error::Invalid(format!("section [{section}] (line {line}): text without a key")));
    }
    let mut out: Section = Vec::new();
    for (k, &(_, vs, key)) in starts.iter().enumerate() {
        let ve = starts.get(k + 1).map_or(body.len(), |s| s.0);
        if out.iter().any(|(seen, _, _)| seen == key) {
            return Err(Error::Invalid(format!("section [{section}]: duplicate key `{key}`")));
        }
        out.push((key.to_string(), body[vs..ve].split_whitespace().collect::<Vec<_>>().join(" "), line));
    }
    Ok(out)
}

fn lookup<'a>(sec: Option<&'a Section>, key: &str) -> Option<&'a str> {
    sec?.iter().find(|(k, _, _)| k == key).map(|(_, v, _)| v.as_str())
}

fn parse_int<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim().parse().map_err(|_| Error::Invalid(format!("`{key}` expects an integer, got `{v}`")))
}

fn list(v: &str, sep: char) -> Vec<&str> {
    if v.trim().is_empty() {
        return Vec::new();
    }
    v.split(sep).map(str::trim).collect()
}

pub fn parse_input(text: &str) -> Result<InputFile> {
    parse_input_with_budget(text, DEFAULT_STEP_BUDGET)
}

pub fn parse_input_with_budget(text: &str, budget: u64) -> Result<InputFile> {
    let sections = split_sections(text)?;
    let get = |name: &str| sections.iter().find(|(s, _, _)| s == name).map(|(_, sec, _)| sec);
    let ring_sec = get("ring").ok_or_else(|| Error::Invalid("missing [ring] section".into()))?;

    let p: u64 = parse_int("p", lookup(Some(ring_sec), "p").ok_or_else(|| Error::Invalid("[ring] needs p".into()))?)?;
    let vars_text = lookup(Some(ring_sec), "vars").ok_or_else(|| Error::Invalid("[ring] needs vars".into()))?;
    let vars = list(vars_text, ',');
    let poly = PolyRing::new(FieldContext::new(p)?, &vars)?;
    let ideal = list(lookup(Some(ring_sec), "ideal").unwrap_or(""), ';')
        .into_iter()
        .filter(|s| !s.is_empty())
        .map(|s| poly.parse(s))
        .collect::<Result<Vec<_>>>()?;
    let ring = QuotientRing::new(poly, ideal)?.with_budget(budget);

    let module = match get("module") {
        None => PresentedModule::residue_field(&ring),
        Some(sec) => parse_module(&ring, sec)?,
    };

    let mut criteria = CriterionConfig::default();
    if let Some(sec) = get("criteria") {
        if let Some(v) = lookup(Some(sec), "e") {
            criteria.e_list = list(v, ',').into_iter().map(|s| parse_int("e", s)).collect::<Result<_>>()?;
        }
        if let Some(v) = lookup(Some(sec), "t") {
            criteria.t = parse_int("t", v)?;
        }
        if let Some(v) = lookup(Some(sec), "window") {
            criteria.window = if v.trim() == "auto" { None } else { Some(parse_int("window", v)?) };
        }
        if let Some(v) = lookup(Some(sec), "mode") {
            criteria.mode = v.parse::<Mode>()?;
        }
    }
    Ok(InputFile { ring, module, criteria })
}

fn parse_module(ring: &QuotientRing, sec: &Section) -> Result<PresentedModule> {
    let g: usize = match lookup(Some(sec), "generators") {
        Some(v) => parse_int("generators", v)?,
        None => 1,
    };
    let degrees: Vec<i64> = match lookup(Some(sec), "degrees") {
        Some(v) => list(v, ',').into_iter().map(|s| parse_int("degrees", s)).collect::<Result<_>>()?,
        None => vec![0; g],
    };
    let mut rows: Vec<Vec<Polynomial>> = vec![Vec::new(); g];
    let mut ncols = 0;
    for (j, col) in list(lookup(Some(sec), "relations").unwrap_or(""), ';').into_iter().enumerate() {
        let entries = list(col, ',');
        if entries.len() != g {
            return Err(Error::Invalid(format!(
                "relation column {} has {} entries for {g} generators",
                j + 1,
                entries.len()
            )));
        }
        for (r, s) in entries.into_iter().enumerate() {
            rows[r].push(ring.poly().parse(s)?);
        }
        ncols += 1;
    }
    let rel = if g == 0 {
        Matrix::zeros(0, ncols)
    } else if ncols == 0 {
        Matrix::zeros(g, 0)
    } else {
        Matrix::from_rows(rows)
    };
    PresentedModule::new(ring, g, Some(degrees), rel)
}

pub fn read_input(path: &Path, budget: u64) -> Result<InputFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    parse_input_with_budget(&text, budget)
}
