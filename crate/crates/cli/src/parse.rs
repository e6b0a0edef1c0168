//! Input formats: `n=<int>; e={<d>:<int>,...}` and its JSON mirror
//! `{"n": 3, "e": {"1": -1, "3": 1}}`, weight systems `a,b,c;n` and
//! Seifert data `g; a1/b1,a2/b2,...`.

use std::collections::BTreeMap;

use cyclozeta::weights::{SeifertData, WeightSystem};
use cyclozeta::ZetaProduct;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InputError {
    #[error("parse error at column {}: {msg}", .pos + 1)]
    Syntax { pos: usize, msg: String },
    #[error("invalid JSON input: {0}")]
    Json(String),
    #[error("invalid input: {0}")]
    Invalid(#[from] cyclozeta::Error),
}

fn syntax(pos: usize, msg: impl Into<String>) -> InputError {
    InputError::Syntax { pos, msg: msg.into() }
}

/// Byte-level scanner that skips whitespace between tokens.
struct Scanner<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, want: char) -> Result<(), InputError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(c) => Err(syntax(self.pos, format!("expected '{want}', found '{c}'"))),
            None => Err(syntax(self.pos, format!("expected '{want}', found end of input"))),
        }
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.pos += want.len_utf8();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64, InputError> {
        self.skip_ws();
        let start = self.pos;
        let bytes = self.src.as_bytes();
        let mut end = start;
        if end < bytes.len() && (bytes[end] == b'-' || bytes[end] == b'+') {
            end += 1;
        }
        while end < bytes.len() && bytes[end].is_ascii_digit() {
            end += 1;
        }
        let text = &self.src[start..end];
        if text.is_empty() || text == "-" || text == "+" {
            return Err(syntax(start, "expected an integer"));
        }
        self.pos = end;
        text.parse().map_err(|_| syntax(start, format!("integer out of range: {text}")))
    }

    fn uint(&mut self) -> Result<u64, InputError> {
        self.skip_ws();
        let start = self.pos;
        let v = self.int()?;
        u64::try_from(v).map_err(|_| syntax(start, "expected a nonnegative integer"))
    }

    fn end(&mut self) -> Result<(), InputError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(syntax(self.pos, format!("unexpected trailing '{c}'"))),
        }
    }
}

/// Parses the text grammar; every divisor of `n` must be listed once.
pub fn parse_text(src: &str) -> Result<ZetaProduct, InputError> {
    let mut s = Scanner::new(src);
    s.expect('n')?;
    s.expect('=')?;
    let n = s.uint()?;
    s.expect(';')?;
    s.expect('e')?;
    s.expect('=')?;
    s.expect('{')?;
    let mut pairs: Vec<(u64, i64)> = Vec::new();
    if !s.eat('}') {
        loop {
            let at = {
                s.skip_ws();
                s.pos
            };
            let d = s.uint()?;
            if pairs.iter().any(|&(k, _)| k == d) {
                return Err(syntax(at, format!("duplicate key {d}")));
            }
            s.expect(':')?;
            let v = s.int()?;
            pairs.push((d, v));
            if s.eat('}') {
                break;
            }
            s.expect(',')?;
        }
    }
    s.end()?;
    Ok(ZetaProduct::new(n, pairs)?)
}

/// JSON mirror of the text grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZetaJson {
    pub n: u64,
    pub e: BTreeMap<String, i64>,
}

impl From<&ZetaProduct> for ZetaJson {
    fn from(z: &ZetaProduct) -> Self {
        Self {
            n: z.n(),
            e: z.e().iter().map(|(d, &v)| (d.to_string(), v)).collect(),
        }
    }
}

pub fn parse_json(src: &str) -> Result<ZetaProduct, InputError> {
    let j: ZetaJson = serde_json::from_str(src).map_err(|e| InputError::Json(e.to_string()))?;
    let mut pairs = Vec::with_capacity(j.e.len());
    for (k, v) in j.e {
        let d = k.trim().parse::<u64>().map_err(|_| InputError::Json(format!("key {k:?} is not a positive integer")))?;
        pairs.push((d, v));
    }
    Ok(ZetaProduct::new(j.n, pairs)?)
}

/// JSON when the input starts with `{`, the text grammar otherwise.
pub fn parse_zeta(src: &str) -> Result<ZetaProduct, InputError> {
    if src.trim_start().starts_with('{') {
        parse_json(src)
    } else {
        parse_text(src)
    }
}

/// `a,b,c;n`
pub fn parse_weights(src: &str) -> Result<WeightSystem, InputError> {
    let mut s = Scanner::new(src);
    let a = s.uint()?;
    s.expect(',')?;
    let b = s.uint()?;
    s.expect(',')?;
    let c = s.uint()?;
    s.expect(';')?;
    let n = s.uint()?;
    s.end()?;
    Ok(WeightSystem::new(a, b, c, n)?)
}

/// `g; a1/b1,a2/b2,...`; the pair list may be empty.
pub fn parse_seifert(src: &str) -> Result<SeifertData, InputError> {
    let mut s = Scanner::new(src);
    let g = s.uint()?;
    let mut pairs = Vec::new();
    if s.eat(';') && s.peek().is_some() {
        loop {
            let a = s.uint()?;
            s.expect('/')?;
            let b = s.uint()?;
            pairs.push((a, b));
            if !s.eat(',') {
                break;
            }
        }
    }
    s.end()?;
    Ok(SeifertData::new(g, pairs)?)
}
