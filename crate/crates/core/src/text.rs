//! The plain-text formats.
//!
//! ```text
//! element   [a1,...,am] <word>        word: 1 | tokens x<i> X<i> t<j> T<j>, each with optional ^k
//! subgroup  group m=<m> n=<n>         then one element per line
//! morphism  endo m=<m> n=<n>          then lines x<i> -> <element> and t<j> -> <element>
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::endo::Endo;
use crate::error::{Error, Result};
use crate::free::Word;
use crate::group::GElem;

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// A cursor over one line, reporting 1-based columns.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    base: usize,
}

impl Cursor {
    fn new(src: &str, line: usize, base: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, line, base }
    }

    fn column(&self) -> usize {
        self.base + self.pos + 1
    }

    fn error(&self, message: impl Into<String>) -> Error {
        err(self.line, self.column(), message)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('+' | '-')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("validated digits"))
    }

    fn index(&mut self, bound: usize, what: char) -> Result<usize> {
        let col = self.column();
        let k = self.integer()?;
        match k.to_usize() {
            Some(i) if (1..=bound).contains(&i) => Ok(i),
            _ => Err(err(self.line, col, format!("{what}{k} out of range 1..={bound}"))),
        }
    }
}

/// Parses `[a1,...,am] word`; `m = None` infers `m` from the brackets.
fn element_at(src: &str, m: Option<usize>, n: usize, line: usize, base: usize) -> Result<GElem> {
    let mut c = Cursor::new(src, line, base);
    c.skip_ws();
    let mut avec: Vec<BigInt> = Vec::new();
    let bracket = c.column();
    if c.eat('[') {
        c.skip_ws();
        if !c.eat(']') {
            loop {
                avec.push(c.integer()?);
                c.skip_ws();
                if c.eat(']') {
                    break;
                }
                c.expect(',')?;
            }
        }
    } else {
        avec = vec![BigInt::zero(); m.unwrap_or(0)];
    }
    let m = match m {
        Some(m) if m != avec.len() => {
            return Err(Error::Dimension(format!(
                "line {line}, column {bracket}: expected {m} coordinates, got {}",
                avec.len()
            )))
        }
        Some(m) => m,
        None => avec.len(),
    };
    let mut g = GElem::new(avec, Word::identity(n));
    let mut tokens = 0;
    loop {
        c.skip_ws();
        if c.at_end() {
            break;
        }
        let col = c.column();
        let ch = c.peek().expect("not at end");
        c.pos += 1;
        let factor = match ch {
            '1' => GElem::identity(m, n),
            'x' | 'X' => {
                let i = c.index(n, 'x')?;
                let w = Word::generator(n, i);
                GElem::new(vec![BigInt::zero(); m], if ch == 'X' { w.inverse() } else { w })
            }
            't' | 'T' => {
                let j = c.index(m, 't')?;
                let t = GElem::t(m, n, j);
                if ch == 'T' {
                    t.inverse()
                } else {
                    t
                }
            }
            _ => return Err(err(line, col, format!("unexpected '{ch}'"))),
        };
        let factor = if c.eat('^') {
            let col = c.column();
            let k = c.integer()?;
            let k = k.to_i64().ok_or_else(|| err(line, col, "exponent too large"))?;
            factor.pow(k)
        } else {
            factor
        };
        g = g.mul(&factor);
        tokens += 1;
    }
    if tokens == 0 {
        return Err(c.error("expected a word (use 1 for the identity)"));
    }
    Ok(g)
}

pub fn parse_element(src: &str, m: Option<usize>, n: usize) -> Result<GElem> {
    element_at(src, m, n, 1, 0)
}

pub fn parse_word(src: &str, n: usize) -> Result<Word> {
    Ok(element_at(src, Some(0), n, 1, 0)?.word)
}

/// Content lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

/// Parses `<keyword> m=<m> n=<n>`.
fn header(line: usize, src: &str, keyword: &str) -> Result<(usize, usize)> {
    let mut parts = src.split_whitespace();
    if parts.next() != Some(keyword) {
        return Err(err(line, 1, format!("expected header '{keyword} m=<m> n=<n>'")));
    }
    let mut dim = |key: &str| -> Result<usize> {
        let p = parts.next().ok_or_else(|| err(line, src.len() + 1, format!("missing {key}=")))?;
        let col = src.find(p).unwrap_or(0) + 1;
        p.strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| err(line, col, format!("expected {key}=<number>")))
    };
    let m = dim("m")?;
    let n = dim("n")?;
    Ok((m, n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupFile {
    pub m: usize,
    pub n: usize,
    pub gens: Vec<GElem>,
}

pub fn parse_subgroup(text: &str) -> Result<SubgroupFile> {
    let mut lines = content_lines(text);
    let (no, first) = lines.next().ok_or_else(|| err(1, 1, "empty subgroup file"))?;
    let (m, n) = header(no, first, "group")?;
    let gens = lines.map(|(no, l)| element_at(l, Some(m), n, no, 0)).collect::<Result<_>>()?;
    Ok(SubgroupFile { m, n, gens })
}

pub fn format_subgroup(m: usize, n: usize, gens: &[GElem]) -> String {
    let mut s = format!("group m={m} n={n}\n");
    for g in gens {
        let _ = writeln!(s, "{g}");
    }
    s
}

pub fn parse_endo(text: &str) -> Result<Endo> {
    let mut lines = content_lines(text);
    let (no, first) = lines.next().ok_or_else(|| err(1, 1, "empty morphism file"))?;
    let (m, n) = header(no, first, "endo")?;
    let mut xs: Vec<Option<GElem>> = vec![None; n];
    let mut ts: Vec<Option<GElem>> = vec![None; m];
    for (no, l) in lines {
        let Some(arrow) = l.find("->") else {
            return Err(err(no, 1, "expected '<generator> -> <element>'"));
        };
        let lhs = l[..arrow].trim();
        let col = l.find(lhs).unwrap_or(0) + 1;
        let (slot, bound) = match lhs.chars().next() {
            Some('x') => (&mut xs, n),
            Some('t') => (&mut ts, m),
            _ => return Err(err(no, col, format!("unknown generator '{lhs}'"))),
        };
        let i: usize = lhs[1..]
            .parse()
            .ok()
            .filter(|i| (1..=bound).contains(i))
            .ok_or_else(|| err(no, col, format!("generator '{lhs}' out of range")))?;
        if slot[i - 1].is_some() {
            return Err(err(no, col, format!("generator '{lhs}' given twice")));
        }
        let rhs_base = arrow + 2;
        slot[i - 1] = Some(element_at(&l[rhs_base..], Some(m), n, no, rhs_base)?);
    }
    let missing = |k: char, v: &[Option<GElem>]| v.iter().position(Option::is_none).map(|i| format!("{k}{}", i + 1));
    if let Some(g) = missing('x', &xs).or_else(|| missing('t', &ts)) {
        return Err(Error::Invalid(format!("no image given for {g}")));
    }
    let xs: Vec<GElem> = xs.into_iter().map(Option::unwrap).collect();
    let ts: Vec<GElem> = ts.into_iter().map(Option::unwrap).collect();
    Endo::from_images(m, n, &xs, &ts)
}

/// One word per line.
pub fn parse_words(text: &str, n: usize) -> Result<Vec<Word>> {
    content_lines(text).map(|(no, l)| Ok(element_at(l, Some(0), n, no, 0)?.word)).collect()
}
