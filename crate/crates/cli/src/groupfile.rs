//! Line-based group files. See `docs/group-file.md` for the grammar.

use std::fmt::Write as _;
use std::path::Path;

use orbifold_core::groups::{builtin_orbifold_0_1_222, builtin_punctured_torus, Generator};
use orbifold_core::{IntMoebius, Presentation, PresentedGroup, Signature};

use crate::CliError;

/// Short-relator scan length used when a file does not set `scan`.
pub const DEFAULT_SCAN: usize = 10;

/// Resolves `builtin:<name>` or a file path.
pub fn select_group(selector: &str) -> Result<PresentedGroup, CliError> {
    match selector.strip_prefix("builtin:") {
        Some("punctured-torus") => Ok(builtin_punctured_torus()?),
        Some("orbifold-0-1-222") => Ok(builtin_orbifold_0_1_222()?),
        Some(other) => Err(CliError::Usage(format!(
            "unknown builtin group {other:?} (expected punctured-torus or orbifold-0-1-222)"
        ))),
        None => load_group_file(Path::new(selector)),
    }
}

pub fn load_group_file(path: &Path) -> Result<PresentedGroup, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Load(format!("{}: {e}", path.display())))?;
    parse_group(&text).map_err(|e| match e {
        CliError::Load(msg) => CliError::Load(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn load_err(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Load(format!("line {line}: {msg}"))
}

/// Accepts `-?[0-9]+(\.[0-9]+)?` whose value is an integer.
fn parse_entry(tok: &str, line: usize) -> Result<i128, CliError> {
    let (int_part, frac) = match tok.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (tok, None),
    };
    let digits = int_part.strip_prefix('-').unwrap_or(int_part);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(load_err(line, format!("malformed number {tok:?}")));
    }
    if let Some(f) = frac {
        if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
            return Err(load_err(line, format!("malformed number {tok:?}")));
        }
        if f.bytes().any(|b| b != b'0') {
            return Err(load_err(
                line,
                format!("{tok} is not an integer; generator entries must be integral"),
            ));
        }
    }
    int_part
        .parse()
        .map_err(|_| load_err(line, format!("{tok} out of range")))
}

fn parse_matrix(toks: &[&str], line: usize) -> Result<IntMoebius, CliError> {
    if toks.len() != 4 {
        return Err(load_err(line, format!("expected 4 matrix entries, got {}", toks.len())));
    }
    let mut e = [0i128; 4];
    for (x, t) in e.iter_mut().zip(toks) {
        *x = parse_entry(t, line)?;
    }
    IntMoebius::new(e[0], e[1], e[2], e[3]).map_err(|err| load_err(line, err))
}

fn parse_u32(tok: &str, line: usize) -> Result<u32, CliError> {
    tok.parse()
        .map_err(|_| load_err(line, format!("expected a non-negative integer, got {tok:?}")))
}

pub fn parse_group(text: &str) -> Result<PresentedGroup, CliError> {
    let mut id = None;
    let mut presentation = None;
    let mut signature = None;
    let mut generators: Vec<Generator> = Vec::new();
    let mut cusp = None;
    let mut scan = DEFAULT_SCAN;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let (key, rest) = (toks[0], &toks[1..]);
        let once = |set: bool| {
            if set {
                Err(load_err(line, format!("duplicate {key}")))
            } else {
                Ok(())
            }
        };
        match key {
            "id" => {
                once(id.is_some())?;
                let [name] = rest else {
                    return Err(load_err(line, "id takes one token"));
                };
                if !name
                    .bytes()
                    .all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_')
                {
                    return Err(load_err(
                        line,
                        format!("id {name:?} may only use letters, digits, '-' and '_'"),
                    ));
                }
                id = Some(name.to_string());
            }
            "presentation" => {
                once(presentation.is_some())?;
                let [tag] = rest else {
                    return Err(load_err(line, "presentation takes one tag"));
                };
                presentation = Some(
                    Presentation::from_tag(tag)
                        .ok_or_else(|| load_err(line, format!("unknown presentation {tag:?}")))?,
                );
            }
            "signature" => {
                once(signature.is_some())?;
                if rest.len() < 2 {
                    return Err(load_err(line, "signature needs genus and cusp count"));
                }
                let nums = rest.iter().map(|t| parse_u32(t, line)).collect::<Result<Vec<_>, _>>()?;
                signature = Some(Signature::new(nums[0], nums[1], nums[2..].to_vec()).map_err(|e| load_err(line, e))?);
            }
            "generator" => {
                let Some((name, entries)) = rest.split_first() else {
                    return Err(load_err(line, "generator needs a name and 4 entries"));
                };
                if name.contains('.') || name.contains('^') || *name == "I" {
                    return Err(load_err(line, format!("generator name {name:?} is reserved")));
                }
                if generators.iter().any(|g| g.name == *name) {
                    return Err(load_err(line, format!("duplicate generator {name}")));
                }
                generators.push(Generator {
                    name: name.to_string(),
                    matrix: parse_matrix(entries, line)?,
                });
            }
            "cusp" => {
                once(cusp.is_some())?;
                cusp = Some(parse_matrix(rest, line)?);
            }
            "scan" => {
                let [n] = rest else {
                    return Err(load_err(line, "scan takes one length"));
                };
                scan = parse_u32(n, line)? as usize;
            }
            other => return Err(load_err(line, format!("unknown key {other:?}"))),
        }
    }

    let id = id.ok_or_else(|| CliError::Load("missing id".into()))?;
    let presentation = presentation.ok_or_else(|| CliError::Load("missing presentation".into()))?;
    let signature = signature.ok_or_else(|| CliError::Load("missing signature".into()))?;
    PresentedGroup::from_generators(&id, signature, presentation, generators, cusp, scan)
        .map_err(|e| CliError::Load(e.to_string()))
}

/// Text form of a group that [`parse_group`] reads back.
pub fn export_group(g: &PresentedGroup) -> String {
    let mut out = String::new();
    let sig = &g.signature;
    writeln!(out, "id {}", g.id).unwrap();
    writeln!(out, "presentation {}", g.presentation.tag()).unwrap();
    write!(out, "signature {} {}", sig.genus(), sig.cusps()).unwrap();
    for m in sig.orders() {
        write!(out, " {m}").unwrap();
    }
    out.push('\n');
    for gen in &g.generators {
        let [a, b, c, d] = gen.matrix.entries();
        writeln!(out, "generator {} {a} {b} {c} {d}", gen.name).unwrap();
    }
    if let Some(c) = &g.cusp {
        let [a, b, cc, d] = c.parabolic.entries();
        writeln!(out, "cusp {a} {b} {cc} {d}").unwrap();
    }
    out
}
