//! Element words: whitespace-separated `sI` and `e[i,j,...]` tokens, 1-based,
//! multiplied left to right.

use kacmoody::{IndexSet, IntersectStatus, WeylMonoid, WeylMonoidElement};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("column {column}: unknown token `{token}`")]
    UnknownToken { column: usize, token: String },
    #[error("column {column}: index {index} out of range 1..={n}")]
    IndexOutOfRange { column: usize, index: usize, n: usize },
    #[error("column {column}: {{{theta}}} is not special")]
    NonSpecialTheta { column: usize, theta: String },
}

enum Token {
    Reflection(usize),
    Idempotent(IndexSet),
}

fn parse_index(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn tokenize(word: &str, n: usize) -> Result<Vec<(usize, Token)>, WordError> {
    let mut out = Vec::new();
    let mut rest = word;
    let mut offset = 0;
    loop {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return Ok(out);
        }
        let len = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let raw = &trimmed[..len];
        let column = word[..offset].chars().count() + 1;
        let unknown = || WordError::UnknownToken { column, token: raw.to_string() };
        let check = |i: usize| {
            if (1..=n).contains(&i) {
                Ok(i - 1)
            } else {
                Err(WordError::IndexOutOfRange { column, index: i, n })
            }
        };
        let token = if let Some(idx) = raw.strip_prefix('s') {
            Token::Reflection(check(parse_index(idx).ok_or_else(unknown)?)?)
        } else if let Some(body) = raw.strip_prefix("e[").and_then(|b| b.strip_suffix(']')) {
            let mut set = IndexSet::empty();
            if !body.is_empty() {
                for part in body.split(',') {
                    set.insert(check(parse_index(part.trim()).ok_or_else(unknown)?)?);
                }
            }
            Token::Idempotent(set)
        } else {
            return Err(unknown());
        };
        out.push((column, token));
        rest = &trimmed[len..];
        offset += len;
    }
}

/// Parses and multiplies out an element word. `""` and `e[]` are the unit.
pub fn parse_element(word: &str, m: &WeylMonoid<'_>) -> Result<(WeylMonoidElement, IntersectStatus), WordError> {
    let r = m.realization();
    let mut factors = Vec::new();
    for (column, token) in tokenize(word, r.n())? {
        factors.push(match token {
            Token::Reflection(i) => m.from_weyl(&r.simple_reflection(i).expect("index checked")),
            Token::Idempotent(theta) => {
                let face = r
                    .standard_face(theta)
                    .map_err(|_| WordError::NonSpecialTheta { column, theta: theta.to_one_based().iter().map(usize::to_string).collect::<Vec<_>>().join(",") })?;
                m.idempotent(&face)
            }
        });
    }
    Ok(m.product(&factors).expect("factors share one realization"))
}
