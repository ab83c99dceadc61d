//! Text forms of multisegments and partitions.
//!
//! ```text
//! multisegment := "0" | segment ("+" segment)*
//! segment      := "[" int "," int "]" ("@" line)?
//! line         := ident | ident "(" "c=" int "," "d=" int ")"
//! ```
//!
//! Whitespace between tokens is ignored. Output is the canonical `Display` form, which
//! parses back to the same value.

use newform_core::{CuspidalLabel, LambdaVec, MultisegError, Multisegment, Segment};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("at byte {pos}: expected {expected}, found {found}")]
    Syntax { pos: usize, expected: &'static str, found: String },
    #[error(transparent)]
    Invalid(#[from] MultisegError),
    #[error("bad partition {0:?}: use a comma list such as 3,3,3,1")]
    Partition(String),
    #[error("bad integer list {0:?}")]
    Integers(String),
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().map_or(1, char::len_utf8);
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn error(&self, expected: &'static str) -> ParseError {
        let found = match self.src[self.pos..].chars().next() {
            Some(c) => format!("{c:?}"),
            None => "end of input".into(),
        };
        ParseError::Syntax { pos: self.pos, expected, found }
    }

    fn eat(&mut self, c: char, expected: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn eat_str(&mut self, s: &str, expected: &'static str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let sign = usize::from(rest.starts_with(['-', '+']));
        let digits = rest[sign..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("an integer"));
        }
        let text = &rest[..sign + digits];
        let v = text.parse().map_err(|_| self.error("an integer in range"))?;
        self.pos += text.len();
        Ok(v)
    }

    fn ident(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let ok_start = rest.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_');
        let len = rest.bytes().take_while(|b| b.is_ascii_alphanumeric() || *b == b'_').count();
        if !ok_start || len == 0 {
            return Err(self.error("a line name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn label(&mut self) -> Result<CuspidalLabel, ParseError> {
        let name = self.ident()?;
        if self.peek() != Some('(') {
            return Ok(CuspidalLabel::unipotent(name));
        }
        self.eat('(', "'('")?;
        self.eat_str("c=", "\"c=\"")?;
        let c = self.int()?;
        self.eat(',', "','")?;
        self.eat_str("d=", "\"d=\"")?;
        let d = self.int()?;
        self.eat(')', "')'")?;
        let (c, d) = (u32::try_from(c), u32::try_from(d));
        match (c, d) {
            (Ok(c), Ok(d)) => Ok(CuspidalLabel::ramified(name, c, d)?),
            _ => Err(MultisegError::InvalidLabel(name.into()).into()),
        }
    }

    fn segment(&mut self) -> Result<Segment, ParseError> {
        self.eat('[', "'['")?;
        let a = self.int()?;
        self.eat(',', "','")?;
        let b = self.int()?;
        self.eat(']', "']'")?;
        let label = if self.peek() == Some('@') {
            self.eat('@', "'@'")?;
            self.label()?
        } else {
            CuspidalLabel::chi()
        };
        Ok(Segment::new(label, a, b)?)
    }
}

pub fn parse_multisegment(src: &str) -> Result<Multisegment, ParseError> {
    let mut cur = Cursor { src, pos: 0 };
    if cur.peek() == Some('0') {
        cur.eat('0', "'0'")?;
        return match cur.peek() {
            None => Ok(Multisegment::empty()),
            Some(_) => Err(cur.error("end of input")),
        };
    }
    let mut segs = vec![cur.segment()?];
    while let Some(c) = cur.peek() {
        if c != '+' {
            return Err(cur.error("'+' or end of input"));
        }
        cur.eat('+', "'+'")?;
        segs.push(cur.segment()?);
    }
    Ok(Multisegment::canonicalize(segs)?)
}

/// Parts as a comma list in any order, zeros allowed; `0^k` stands for `k` zeros, so the
/// padded form `0^11,1,3,3,3` is accepted too.
pub fn parse_lambda(src: &str) -> Result<LambdaVec, ParseError> {
    let bad = || ParseError::Partition(src.into());
    let t = src.trim();
    if t.is_empty() || t == "∅" || t == "()" {
        return Ok(LambdaVec::empty());
    }
    let mut parts = Vec::new();
    for item in t.split(',') {
        let item = item.trim();
        if let Some(count) = item.strip_prefix("0^") {
            count.parse::<u32>().map_err(|_| bad())?;
        } else {
            parts.push(item.parse::<u32>().map_err(|_| bad())?);
        }
    }
    Ok(LambdaVec::from_parts(parts))
}

/// Comma-separated signed integers; empty input gives the empty list.
pub fn parse_int_list(src: &str) -> Result<Vec<i64>, ParseError> {
    let t = src.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(|s| s.trim().parse().map_err(|_| ParseError::Integers(src.into()))).collect()
}
