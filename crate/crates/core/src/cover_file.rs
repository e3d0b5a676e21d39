//! Line-oriented text format for cover data.
//!
//! ```text
//! # degree-4 example
//! group: 2,2
//! component: 1,0 ; 6 ; s
//! component: 0,1 ; 4 ; q
//! ```
//!
//! `#` starts a comment. The group line must precede every component line;
//! the component name is optional.

use std::fmt::Write as _;
use std::path::Path;

use crate::cover::{BranchComponent, CoverData};
use crate::error::{Error, Result};
use crate::group::{parse_u32_list, FiniteAbelianGroup};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses and validates a cover description.
pub fn parse_cover(text: &str) -> Result<CoverData> {
    let mut group: Option<FiniteAbelianGroup> = None;
    let mut components = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let lineno = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| parse_err(lineno, format!("expected `key: value`, got {line:?}")))?;
        match key.trim() {
            "group" => {
                if group.is_some() {
                    return Err(parse_err(lineno, "duplicate group line"));
                }
                let factors = parse_u32_list(rest).map_err(|e| parse_err(lineno, e.to_string()))?;
                let g = FiniteAbelianGroup::new(&factors)
                    .map_err(|e| parse_err(lineno, e.to_string()))?;
                if g.invariant_factors() != factors.as_slice() {
                    return Err(parse_err(
                        lineno,
                        format!("group must be in invariant-factor form, e.g. {g}"),
                    ));
                }
                group = Some(g);
            }
            "component" => {
                let g = group
                    .as_ref()
                    .ok_or_else(|| parse_err(lineno, "component before group line"))?;
                let fields: Vec<&str> = rest.split(';').map(str::trim).collect();
                if !(2..=3).contains(&fields.len()) {
                    return Err(parse_err(
                        lineno,
                        "component needs `label ; degree [; name]`",
                    ));
                }
                let coords =
                    parse_u32_list(fields[0]).map_err(|e| parse_err(lineno, e.to_string()))?;
                let label = g
                    .element(&coords)
                    .map_err(|e| parse_err(lineno, e.to_string()))?;
                if label.is_zero() {
                    return Err(parse_err(lineno, "branch component with the zero label"));
                }
                let degree: i64 = fields[1]
                    .parse()
                    .map_err(|e| parse_err(lineno, format!("bad degree {:?}: {e}", fields[1])))?;
                if degree < 1 {
                    return Err(parse_err(lineno, "degree must be at least 1"));
                }
                let name = fields
                    .get(2)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.to_string());
                components.push(BranchComponent {
                    label,
                    degree,
                    name,
                });
            }
            other => return Err(parse_err(lineno, format!("unknown key {other:?}"))),
        }
    }
    let group = group.ok_or_else(|| parse_err(0, "missing group line"))?;
    let cover = CoverData::new(group, components);
    cover.validate()?;
    Ok(cover)
}

pub fn parse_cover_file(path: impl AsRef<Path>) -> Result<CoverData> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| parse_err(0, format!("{}: {e}", path.as_ref().display())))?;
    parse_cover(&text)
}

pub fn write_cover(cover: &CoverData) -> String {
    let mut out = format!("group: {}\n", cover.group());
    for c in cover.components() {
        let _ = write!(out, "component: {} ; {}", c.label, c.degree);
        if let Some(name) = &c.name {
            let _ = write!(out, " ; {name}");
        }
        out.push('\n');
    }
    out
}
