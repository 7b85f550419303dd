//! Set literals such as `{1,3}` or `{(1,0),(0,1)}`.

use thiserror::Error;

use crate::group::{Element, GroupTable};
use crate::set::ElementSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiteralError {
    #[error("set literal must be wrapped in braces")]
    MissingBraces,
    #[error("unbalanced parentheses in set literal")]
    Unbalanced,
    #[error("unknown element '{0}'")]
    UnknownElement(String),
}

/// Parses one element: a raw index or a label of `g`.
pub fn parse_element(g: &GroupTable, token: &str) -> Result<Element, LiteralError> {
    let token = token.trim();
    // labels first, so cyclic groups (whose labels are the indices) agree
    if let Some(e) = g.element_by_label(token) {
        return Ok(e);
    }
    match token.parse::<usize>() {
        Ok(i) if i < g.order() => Ok(i),
        _ => Err(LiteralError::UnknownElement(token.to_string())),
    }
}

pub fn parse_set_literal(g: &GroupTable, text: &str) -> Result<ElementSet, LiteralError> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or(LiteralError::MissingBraces)?;
    let mut out = ElementSet::empty(g.order());
    let mut depth = 0i32;
    let mut start = 0;
    let mut tokens = Vec::new();
    for (i, c) in inner.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(LiteralError::Unbalanced);
                }
            }
            ',' if depth == 0 => {
                tokens.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(LiteralError::Unbalanced);
    }
    tokens.push(&inner[start..]);
    for token in tokens {
        if token.trim().is_empty() {
            continue;
        }
        out.insert(parse_element(g, token)?);
    }
    Ok(out)
}
