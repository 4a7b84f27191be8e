//! Text grammar, one reaction per line, `#` to end of line is a comment:
//!
//! ```text
//! reaction   := complex arrow complex
//! arrow      := "=>" | "<=>"
//! complex    := "0" | term ("+" term)*
//! term       := [integer] identifier
//! identifier := letter (letter | digit | '_')*
//! ```
//!
//! `∅` and `empty` are accepted for the empty complex. Species are indexed by first
//! appearance, unless a leading `@species A B C` line fixes the order of the listed names.

use super::network::{Reaction, ReactionNetwork};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseWarning {
    pub line: usize,
    pub message: String,
}

type Complex = Vec<(String, u64)>;

struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn starts_with(&self, s: &str) -> bool {
        let n = s.chars().count();
        self.pos + n <= self.chars.len()
            && self.chars[self.pos..self.pos + n]
                .iter()
                .copied()
                .eq(s.chars())
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn complex(&mut self) -> Result<Complex> {
        self.skip_ws();
        if self.starts_with("∅") {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let save = self.pos;
        let w = self.word();
        if w == "0" || w == "empty" {
            return Ok(Vec::new());
        }
        self.pos = save;
        let mut terms = Vec::new();
        loop {
            terms.push(self.term()?);
            self.skip_ws();
            if self.peek() == Some('+') {
                self.pos += 1;
            } else {
                return Ok(terms);
            }
        }
    }

    fn term(&mut self) -> Result<(String, u64)> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let coeff: u64 = if self.pos > start {
            let digits: String = self.chars[start..self.pos].iter().collect();
            let c = digits.parse().map_err(|_| {
                let mut e = self.err("coefficient out of range");
                if let Error::Parse { col, .. } = &mut e {
                    *col = start + 1;
                }
                e
            })?;
            if c == 0 {
                return Err(Error::Parse {
                    line: self.line,
                    col: start + 1,
                    message: "zero coefficient".into(),
                });
            }
            c
        } else {
            1
        };
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_alphabetic() => {}
            Some(c) => return Err(self.err(format!("expected species name, found '{c}'"))),
            None => return Err(self.err("expected species name, found end of line")),
        }
        let name = self.word();
        Ok((name, coeff))
    }

    fn arrow(&mut self) -> Result<bool> {
        self.skip_ws();
        if self.starts_with("<=>") {
            self.pos += 3;
            Ok(true)
        } else if self.starts_with("=>") {
            self.pos += 2;
            Ok(false)
        } else {
            match self.peek() {
                Some(c) => Err(self.err(format!("expected '=>' or '<=>', found '{c}'"))),
                None => Err(self.err("expected '=>' or '<=>', found end of line")),
            }
        }
    }
}

pub fn parse_network(text: &str) -> Result<ReactionNetwork> {
    parse_network_with_warnings(text).map(|(net, _)| net)
}

/// Parses a network; duplicate reactions are kept and reported as warnings.
pub fn parse_network_with_warnings(text: &str) -> Result<(ReactionNetwork, Vec<ParseWarning>)> {
    let mut names: Vec<String> = Vec::new();
    let mut raw: Vec<(usize, Complex, Complex, bool)> = Vec::new();
    for (lineno, full) in text.lines().enumerate() {
        let content = full.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        if let Some(rest) = content.trim_start().strip_prefix("@species") {
            if !raw.is_empty() || !names.is_empty() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    col: 1,
                    message: "@species must precede all reactions".into(),
                });
            }
            for name in rest
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|w| !w.is_empty())
            {
                let valid = name.chars().next().is_some_and(char::is_alphabetic)
                    && name.chars().all(|c| c.is_alphanumeric() || c == '_');
                if !valid || names.iter().any(|n| n == name) {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        col: 1,
                        message: format!("bad species declaration '{name}'"),
                    });
                }
                names.push(name.to_string());
            }
            continue;
        }
        let mut cur = Cursor {
            chars: content.chars().collect(),
            pos: 0,
            line: lineno + 1,
        };
        let lhs = cur.complex()?;
        let reversible = cur.arrow()?;
        let rhs = cur.complex()?;
        cur.skip_ws();
        if !cur.at_end() {
            return Err(cur.err(format!("unexpected '{}'", cur.peek().unwrap())));
        }
        for (name, _) in lhs.iter().chain(&rhs) {
            if !names.contains(name) {
                names.push(name.clone());
            }
        }
        raw.push((lineno + 1, lhs, rhs, reversible));
    }
    if raw.is_empty() {
        return Err(Error::InvalidNetwork("no reactions".into()));
    }
    let n = names.len();
    let index = |name: &str| names.iter().position(|x| x == name).unwrap();
    let mut reactions = Vec::new();
    let mut warnings = Vec::new();
    for (line, lhs, rhs, reversible) in &raw {
        let mut reactant = vec![0u64; n];
        let mut product = vec![0u64; n];
        for (name, c) in lhs {
            reactant[index(name)] += c;
        }
        for (name, c) in rhs {
            product[index(name)] += c;
        }
        if let Some(i) = (0..n).find(|&i| reactant[i] > 0 && product[i] > 0) {
            return Err(Error::Catalytic {
                line: *line,
                species: names[i].clone(),
            });
        }
        if reactant == product {
            return Err(Error::Parse {
                line: *line,
                col: 1,
                message: "reaction has identical complexes".into(),
            });
        }
        let r = Reaction {
            reactant,
            product,
            reversible: *reversible,
        };
        if reactions.contains(&r) {
            warnings.push(ParseWarning {
                line: *line,
                message: "duplicate reaction retained".into(),
            });
        }
        reactions.push(r);
    }
    Ok((ReactionNetwork::new(names, reactions)?, warnings))
}
