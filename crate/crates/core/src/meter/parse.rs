//! Text form of a weight sequence.
//!
//! Weights are decimal naturals separated by whitespace or commas
//! (`"1 0 0 1"`, `"1,0,0,1"`). A lone token of two or more digits is read as
//! the compact form, one weight per digit (`"1001"`).

use std::num::IntErrorKind;

use thiserror::Error;

use crate::relkit::Sequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    NotNumeric,
    Negative,
    OutOfRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty meter string")]
    Empty,
    #[error("parse error at token {position}: {token:?} is {}", describe(*.kind))]
    Token {
        position: usize,
        token: String,
        kind: ParseErrorKind,
    },
}

fn describe(kind: ParseErrorKind) -> &'static str {
    match kind {
        ParseErrorKind::Empty => "empty",
        ParseErrorKind::NotNumeric => "not a natural number",
        ParseErrorKind::Negative => "negative",
        ParseErrorKind::OutOfRange => "out of range",
    }
}

pub fn parse_meter(text: &str) -> Result<Sequence, ParseError> {
    let tokens: Vec<&str> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    match tokens.as_slice() {
        [] => Err(ParseError::Empty),
        [compact] if compact.len() > 1 && compact.bytes().all(|b| b.is_ascii_digit()) => {
            Ok(compact.bytes().map(|b| usize::from(b - b'0')).collect())
        }
        _ => tokens
            .iter()
            .enumerate()
            .map(|(k, token)| parse_token(k + 1, token))
            .collect(),
    }
}

fn parse_token(position: usize, token: &str) -> Result<usize, ParseError> {
    let fail = |kind| ParseError::Token {
        position,
        token: token.to_string(),
        kind,
    };
    token.parse::<usize>().map_err(|e| match e.kind() {
        IntErrorKind::PosOverflow => fail(ParseErrorKind::OutOfRange),
        IntErrorKind::Empty => fail(ParseErrorKind::Empty),
        _ if token
            .strip_prefix('-')
            .is_some_and(|rest| rest.parse::<usize>().is_ok()) =>
        {
            fail(ParseErrorKind::Negative)
        }
        _ => fail(ParseErrorKind::NotNumeric),
    })
}
