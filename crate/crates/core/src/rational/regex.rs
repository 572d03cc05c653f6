use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::RationalError;
use crate::group::{Letter, Word};

/// A regular expression over group letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Regex {
    /// The empty word.
    Epsilon,
    Lit(Letter),
    Concat(Vec<Regex>),
    Union(Vec<Regex>),
    Star(Box<Regex>),
}

impl Regex {
    pub fn star(r: Regex) -> Regex {
        Regex::Star(Box::new(r))
    }

    /// The letters occurring in the expression, sorted.
    pub fn alphabet(&self) -> Vec<Letter> {
        fn walk(r: &Regex, out: &mut Vec<Letter>) {
            match r {
                Regex::Epsilon => {}
                Regex::Lit(l) => out.push(*l),
                Regex::Concat(rs) | Regex::Union(rs) => rs.iter().for_each(|r| walk(r, out)),
                Regex::Star(r) => walk(r, out),
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out.sort();
        out.dedup();
        out
    }
}

fn lit(l: Letter) -> Regex {
    Regex::Lit(l)
}

fn shifts() -> Regex {
    Regex::star(Regex::Union(alloc::vec![
        lit(Letter::X),
        lit(Letter::XInv),
        lit(Letter::Y),
        lit(Letter::YInv)
    ]))
}

/// `{x,X,y,Y}* ((x | g0 x | ... | g(k-1) x)* y X*)* {x,X,y,Y}*`: walk
/// anywhere, sweep rows upward dropping generators while moving right, and
/// walk anywhere again.
pub fn build_l(k: usize) -> Regex {
    let mut step = alloc::vec![lit(Letter::X)];
    for i in 0..k {
        step.push(Regex::Concat(alloc::vec![
            lit(Letter::Gen(i as u32)),
            lit(Letter::X)
        ]));
    }
    let row = Regex::Concat(alloc::vec![
        Regex::star(Regex::Union(step)),
        lit(Letter::Y),
        Regex::star(lit(Letter::XInv)),
    ]);
    Regex::Concat(alloc::vec![shifts(), Regex::star(row), shifts()])
}

fn precedence(r: &Regex) -> u8 {
    match r {
        Regex::Union(rs) if rs.len() > 1 => 0,
        Regex::Concat(rs) if rs.len() > 1 => 1,
        _ => 2,
    }
}

fn write_at(f: &mut fmt::Formatter<'_>, r: &Regex, min: u8) -> fmt::Result {
    if precedence(r) < min {
        f.write_str("(")?;
        write!(f, "{r}")?;
        f.write_str(")")
    } else {
        write!(f, "{r}")
    }
}

impl fmt::Display for Regex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Regex::Epsilon => f.write_str("()"),
            Regex::Lit(l) => write!(f, "{l}"),
            Regex::Concat(rs) if rs.is_empty() => f.write_str("()"),
            Regex::Union(rs) if rs.is_empty() => f.write_str("()"),
            Regex::Concat(rs) => {
                for (i, r) in rs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write_at(f, r, 2)?;
                }
                Ok(())
            }
            Regex::Union(rs) => {
                for (i, r) in rs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("|")?;
                    }
                    write_at(f, r, 1)?;
                }
                Ok(())
            }
            Regex::Star(r) => {
                write_at(f, r, 2)?;
                f.write_str("*")
            }
        }
    }
}

/// Recursive descent over: union of concatenations of starred atoms.
struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.as_bytes().get(self.pos).copied()
    }

    fn error(&self) -> RationalError {
        RationalError::BadRegex(self.pos)
    }

    fn union(&mut self) -> Result<Regex, RationalError> {
        let mut parts = alloc::vec![self.concat()?];
        while self.peek() == Some(b'|') {
            self.pos += 1;
            parts.push(self.concat()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Regex::Union(parts)
        })
    }

    fn concat(&mut self) -> Result<Regex, RationalError> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == b'|' || c == b')' {
                break;
            }
            let mut atom = self.atom()?;
            while self.peek() == Some(b'*') {
                self.pos += 1;
                atom = Regex::star(atom);
            }
            parts.push(atom);
        }
        Ok(match parts.len() {
            0 => Regex::Epsilon,
            1 => parts.pop().unwrap(),
            _ => Regex::Concat(parts),
        })
    }

    fn atom(&mut self) -> Result<Regex, RationalError> {
        match self.peek().ok_or_else(|| self.error())? {
            b'(' => {
                self.pos += 1;
                let inner = self.union()?;
                if self.peek() != Some(b')') {
                    return Err(self.error());
                }
                self.pos += 1;
                Ok(inner)
            }
            b'x' | b'X' | b'y' | b'Y' => {
                let w: Word = self.src[self.pos..self.pos + 1]
                    .parse()
                    .map_err(|_| self.error())?;
                self.pos += 1;
                Ok(Regex::Lit(w.letters()[0]))
            }
            b'g' | b'G' => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() && self.src.as_bytes()[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let w: Word = self.src[start..self.pos]
                    .parse()
                    .map_err(|_| RationalError::BadRegex(start))?;
                Ok(Regex::Lit(w.letters()[0]))
            }
            _ => Err(self.error()),
        }
    }
}

impl FromStr for Regex {
    type Err = RationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let r = p.union()?;
        if p.peek().is_some() {
            return Err(p.error());
        }
        Ok(r)
    }
}
