//! Reading formula and structure files.

use std::path::Path;

use finsat::logic::{Formula, Logic, Signature, Structure};
use finsat::syntax::{parse_formula_infer, read_structure};

use crate::{status, LogicArg};

/// A failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(m: impl Into<String>) -> Self {
        Failure { code: status::USAGE, message: m.into() }
    }

    pub fn parse(m: impl Into<String>) -> Self {
        Failure { code: status::PARSE, message: m.into() }
    }

    pub fn internal(m: impl Into<String>) -> Self {
        Failure { code: status::INTERNAL, message: m.into() }
    }
}

pub fn logic_of(arg: LogicArg) -> Logic {
    match arg {
        LogicArg::L2 => Logic::L2,
        LogicArg::L2PoUnary => Logic::L2PoUnary,
        LogicArg::L2Po => Logic::L2Po,
        LogicArg::L2Trans => Logic::L2Trans,
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Blanks out a leading `logic:` line and `#` comments, keeping byte offsets.
pub fn split_header(text: &str) -> (Option<String>, String) {
    let mut tag = None;
    let mut body = String::with_capacity(text.len());
    for line in text.split_inclusive('\n') {
        let code = line.split('#').next().unwrap();
        let trimmed = code.trim();
        if tag.is_none() && body.trim().is_empty() {
            if let Some(t) = trimmed.strip_prefix("logic:") {
                tag = Some(t.trim().to_string());
                body.extend(line.chars().map(|c| if c == '\n' { '\n' } else { ' ' }));
                continue;
            }
        }
        body.push_str(code);
        body.extend(line[code.len()..].chars().map(|c| if c == '\n' { '\n' } else { ' ' }));
    }
    (tag, body)
}

/// Reads a formula file; the logic comes from its header, the flag, or
/// defaults to plain two-variable logic. Header and flag must agree.
pub fn read_formula(path: &Path, flag: Option<LogicArg>) -> Result<(Formula, Signature, Logic), Failure> {
    let text = read(path)?;
    let (tag, body) = split_header(&text);
    let header = match tag {
        Some(t) => Some(Logic::from_tag(&t).ok_or_else(|| Failure::parse(format!("{}: unknown logic `{t}`", path.display())))?),
        None => None,
    };
    let logic = match (header, flag.map(logic_of)) {
        (Some(h), Some(f)) if h != f => {
            return Err(Failure::usage(format!("{}: the file says {h} but --logic says {f}", path.display())))
        }
        (Some(h), _) => h,
        (None, Some(f)) => f,
        (None, None) => Logic::L2,
    };
    let (phi, sig) = parse_formula_infer(&body, logic.distinguished())
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    if !phi.is_sentence() {
        return Err(Failure::parse(format!("{}: the formula has free variables", path.display())));
    }
    if !logic.admits(&sig) {
        return Err(Failure::parse(format!("{}: binary predicates are not allowed in {logic}", path.display())));
    }
    Ok((phi, sig, logic))
}

pub fn read_structure_file(path: &Path) -> Result<Structure, Failure> {
    read_structure(&read(path)?).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_is_blanked_in_place() {
        let (tag, body) = split_header("logic: l2-1t\nforall x t(x, x) # loops\n");
        assert_eq!(tag.as_deref(), Some("l2-1t"));
        assert_eq!(body.len(), "logic: l2-1t\nforall x t(x, x) # loops\n".len());
        assert!(body.trim().starts_with("forall x t(x, x)"));
    }
}
