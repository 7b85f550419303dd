//! Parser for group descriptors:
//!
//! ```text
//! desc   := factor ('x' factor)*
//! factor := 'Z' ':' prime '^' rank | 'C' ':' order
//! ```
//!
//! Whitespace is ignored everywhere. Products are flattened, so `C:2xC:4xC:3`
//! is a single three-factor product.

use std::str::FromStr;

use thiserror::Error;

use crate::group::{is_prime, GroupSpec, DEFAULT_ORDER_CAP};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message} at position {position}")]
pub struct DescriptorError {
    /// Byte offset into the original text.
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    // (byte offset in the original text, char), whitespace removed
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            pos: 0,
            text,
        }
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map_or(self.text.len(), |&(i, _)| i)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, DescriptorError> {
        Err(DescriptorError {
            position: self.offset(),
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn expect(&mut self, want: char) -> Result<(), DescriptorError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.error(format!("expected '{want}', found '{c}'")),
            None => self.error(format!("expected '{want}', found end of input")),
        }
    }

    fn number(&mut self) -> Result<(u64, usize), DescriptorError> {
        let start = self.offset();
        let mut value: u64 = 0;
        let mut digits = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = match value.checked_mul(10).and_then(|v| v.checked_add(d as u64)) {
                Some(v) => v,
                None => return self.error("number too large"),
            };
            digits += 1;
            self.pos += 1;
        }
        if digits == 0 {
            return self.error("expected a number");
        }
        Ok((value, start))
    }

    fn factor(&mut self) -> Result<GroupSpec, DescriptorError> {
        match self.peek() {
            Some('Z') => {
                self.pos += 1;
                self.expect(':')?;
                let (p, p_at) = self.number()?;
                if !is_prime(p) {
                    return Err(DescriptorError {
                        position: p_at,
                        message: format!("{p} is not prime"),
                    });
                }
                self.expect('^')?;
                let (n, n_at) = self.number()?;
                if n == 0 || n > u32::MAX as u64 {
                    return Err(DescriptorError {
                        position: n_at,
                        message: "rank must be at least 1".into(),
                    });
                }
                Ok(GroupSpec::ElementaryAbelian { p, n: n as u32 })
            }
            Some('C') => {
                self.pos += 1;
                self.expect(':')?;
                let (m, m_at) = self.number()?;
                if m == 0 {
                    return Err(DescriptorError {
                        position: m_at,
                        message: "cyclic order must be at least 1".into(),
                    });
                }
                Ok(GroupSpec::Cyclic(m as usize))
            }
            Some(c) => self.error(format!("expected 'Z' or 'C', found '{c}'")),
            None => self.error("expected a group, found end of input"),
        }
    }
}

/// Parses a descriptor and checks the order against the default cap.
pub fn parse_group_descriptor(text: &str) -> Result<GroupSpec, DescriptorError> {
    parse_group_descriptor_capped(text, DEFAULT_ORDER_CAP)
}

pub fn parse_group_descriptor_capped(text: &str, cap: usize) -> Result<GroupSpec, DescriptorError> {
    let mut parser = Parser::new(text);
    let mut factors = vec![parser.factor()?];
    while parser.peek() == Some('x') {
        parser.pos += 1;
        factors.push(parser.factor()?);
    }
    if let Some(c) = parser.peek() {
        return parser.error(format!("unexpected '{c}'"));
    }
    let spec = if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        GroupSpec::Product(factors)
    };
    if spec.order() > cap as u128 {
        return Err(DescriptorError {
            position: 0,
            message: format!("group order {} exceeds the cap of {cap}", spec.order()),
        });
    }
    Ok(spec)
}

impl FromStr for GroupSpec {
    type Err = DescriptorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_group_descriptor(s)
    }
}
