//! Plain-text system files.
//!
//! ```text
//! file      := line*
//! line      := blank | comment | header | generator
//! comment   := ws* '#' any*
//! header    := ws* 'vars' ws* ':' ident (ws* ',' ws* ident)* comment?
//! generator := ws* ident ws* ':' expr comment?
//! ```
//!
//! The header is optional and must precede every generator; without it the
//! variables are `x1..xn` with `n` the number of generators. Lines end in LF
//! or CRLF and a leading byte-order mark is ignored.

use std::path::Path;

use lefschetz_core::{parse_poly, Error as CoreError, FieldConfig, Poly, SystemInput, VarSpace};

use crate::error::{CliError, Result};

/// A parsed file before the complete-intersection checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    pub vars: Vec<String>,
    pub names: Vec<String>,
    pub forms: Vec<Poly>,
}

impl SystemFile {
    pub fn into_system(self, field: FieldConfig) -> Result<SystemInput> {
        Ok(SystemInput::new(self.vars, self.forms, field)?)
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn strip_comment(line: &str) -> &str {
    line.find('#').map_or(line, |i| &line[..i])
}

fn expression_error(line: usize, offset: usize, e: CoreError) -> CliError {
    let pos = match &e {
        CoreError::Syntax { pos, .. }
        | CoreError::UnknownVariable { pos, .. }
        | CoreError::NonLiteralDivision { pos } => *pos,
        _ => 0,
    };
    CliError::Expression {
        line,
        column: offset + pos + 1,
        source: e,
    }
}

pub fn parse_system_text(text: &str, field: FieldConfig) -> Result<SystemFile> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut vars: Option<Vec<String>> = None;
    // (line number, name, char offset of the expression, expression)
    let mut pending: Vec<(usize, String, usize, &str)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let body = strip_comment(raw);
        if body.trim().is_empty() {
            continue;
        }
        let colon = body.find(':').ok_or_else(|| CliError::Format {
            line: line_no,
            msg: "expected 'name: expression'".into(),
        })?;
        let key = body[..colon].trim();
        let rest = &body[colon + 1..];
        if key == "vars" {
            if vars.is_some() {
                return Err(CliError::Format {
                    line: line_no,
                    msg: "duplicate vars header".into(),
                });
            }
            if !pending.is_empty() {
                return Err(CliError::Format {
                    line: line_no,
                    msg: "vars header must come before the generators".into(),
                });
            }
            let names: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).collect();
            for name in &names {
                if !is_ident(name) {
                    return Err(CliError::Format {
                        line: line_no,
                        msg: format!("invalid variable name '{name}'"),
                    });
                }
            }
            for (i, name) in names.iter().enumerate() {
                if names[..i].contains(name) {
                    return Err(CliError::Format {
                        line: line_no,
                        msg: format!("variable '{name}' listed twice"),
                    });
                }
            }
            vars = Some(names);
            continue;
        }
        if !is_ident(key) {
            return Err(CliError::Format {
                line: line_no,
                msg: format!("invalid generator name '{key}'"),
            });
        }
        if pending.iter().any(|(_, n, _, _)| n == key) {
            return Err(CliError::Format {
                line: line_no,
                msg: format!("generator '{key}' defined twice"),
            });
        }
        let offset = body[..colon + 1].chars().count();
        pending.push((line_no, key.to_string(), offset, rest));
    }
    if pending.is_empty() {
        return Err(CliError::Format {
            line: text.lines().count().max(1),
            msg: "no generators".into(),
        });
    }
    let vars = vars.unwrap_or_else(|| VarSpace::Primal.default_names(pending.len()));
    let mut names = Vec::with_capacity(pending.len());
    let mut forms = Vec::with_capacity(pending.len());
    for (line_no, name, offset, expr) in pending {
        let f = parse_poly(expr, &vars, field).map_err(|e| expression_error(line_no, offset, e))?;
        names.push(name);
        forms.push(f);
    }
    Ok(SystemFile { vars, names, forms })
}

pub fn read_system_file(path: &Path, field: FieldConfig) -> Result<SystemFile> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_system_text(&text, field)
}

/// Variables for a bare expression: `x, y, z` (plus `w`) when only those
/// letters occur, otherwise `x1..xm` for the largest index `m` seen (at least 3).
pub fn infer_vars(expr: &str) -> Vec<String> {
    let idents: Vec<&str> = expr
        .split(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
        .filter(|s| is_ident(s))
        .collect();
    if idents.iter().all(|s| matches!(*s, "x" | "y" | "z" | "w")) {
        let mut vars = vec!["x", "y", "z"];
        if idents.contains(&"w") {
            vars.push("w");
        }
        return vars.into_iter().map(String::from).collect();
    }
    let n = idents
        .iter()
        .filter_map(|s| s.strip_prefix('x').and_then(|i| i.parse::<usize>().ok()))
        .max()
        .unwrap_or(0)
        .max(3);
    VarSpace::Primal.default_names(n)
}
