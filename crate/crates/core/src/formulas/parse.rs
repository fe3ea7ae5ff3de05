//! Text grammar.
//!
//! ```text
//! formula := conj ('|' conj)*
//! conj    := unary ('&' unary)*
//! unary   := '!' unary | ('exists' | 'forall') var unary | '(' formula ')' | atom
//! atom    := var rels var+          one variable per relation in `rels`
//! rels    := rel (',' rel)* | letters
//! rel     := tau | lam | sig | eq | ntau | … | ntau_ne | … | '=' | '!=' | '[ETLS]' | letters
//! letters := ('~'? [ETLS] '_ne'?)+
//! ```
//!
//! A chained atom `x T,~T p q` stands for `x T p & x ~T q`.

use super::{Formula, FormulaError};
use crate::minkowski::{RelKind, RelSet};

/// Parses a formula.
pub fn parse(text: &str) -> Result<Formula, FormulaError> {
    let mut p = Parser { src: text, pos: 0 };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> FormulaError {
        FormulaError::SyntaxError { pos: self.pos, msg: msg.to_string() }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), FormulaError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> Result<String, FormulaError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if is_ident_start(c) => {
                let len = self.rest().find(|c| !is_ident_char(c)).unwrap_or(self.rest().len());
                let s = self.rest()[..len].to_string();
                self.pos += len;
                Ok(s)
            }
            _ => Err(self.error("expected a variable")),
        }
    }

    fn peek_keyword(&self, kw: &str) -> bool {
        let rest = self.rest();
        rest.starts_with(kw) && !rest[kw.len()..].starts_with(is_ident_char)
    }

    fn formula(&mut self) -> Result<Formula, FormulaError> {
        let mut parts = vec![self.conj()?];
        while self.eat('|') {
            parts.push(self.conj()?);
        }
        Ok(Formula::or(parts))
    }

    fn conj(&mut self) -> Result<Formula, FormulaError> {
        let mut parts = self.unary_parts()?;
        while self.eat('&') {
            parts.extend(self.unary_parts()?);
        }
        Ok(Formula::and(parts))
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        Ok(Formula::and(self.unary_parts()?))
    }

    /// A unary formula; a chained atom yields several conjuncts.
    fn unary_parts(&mut self) -> Result<Vec<Formula>, FormulaError> {
        self.skip_ws();
        if self.eat('!') {
            return Ok(vec![Formula::not(self.unary()?)]);
        }
        if self.eat('(') {
            let f = self.formula()?;
            self.expect(')')?;
            return Ok(vec![f]);
        }
        for (kw, exists) in [("exists", true), ("forall", false)] {
            if self.peek_keyword(kw) {
                self.pos += kw.len();
                let v = self.ident()?;
                let body = self.unary()?;
                return Ok(vec![if exists { Formula::exists(&v, body) } else { Formula::forall(&v, body) }]);
            }
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Vec<Formula>, FormulaError> {
        let left = self.ident()?;
        self.skip_ws();
        let start = self.pos;
        let len = self
            .rest()
            .find(|c: char| c.is_whitespace() || matches!(c, '(' | ')' | '&' | '|'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a relation"));
        }
        let token = &self.rest()[..len];
        self.pos += len;
        let rels = parse_rels(token).ok_or_else(|| FormulaError::UnknownRelation {
            pos: start,
            token: token.to_string(),
        })?;
        rels.into_iter()
            .map(|r| Ok(Formula::Atom(left.clone(), r, self.ident()?)))
            .collect()
    }
}

fn word(w: &str) -> Option<RelSet> {
    let (body, ne) = match w.strip_suffix("_ne") {
        Some(b) => (b, true),
        None => (w, false),
    };
    let (body, neg) = match body.strip_prefix('n') {
        Some(b) if matches!(b, "tau" | "lam" | "sig" | "eq") => (b, true),
        _ => (body, false),
    };
    let base = match body {
        "tau" => RelSet::TAU,
        "lam" => RelSet::LAM,
        "sig" => RelSet::SIG,
        "eq" => RelSet::EQ,
        _ => return None,
    };
    let set = if neg { !base } else { base };
    Some(if ne { set.without_eq() } else { set })
}

fn letter(c: char) -> Option<RelKind> {
    RelKind::ALL.into_iter().find(|k| k.letter() == c)
}

/// `T~S_neE` style sequences.
fn letters(s: &str) -> Option<Vec<RelSet>> {
    let mut out = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let (neg, r) = match rest.strip_prefix('~') {
            Some(r) => (true, r),
            None => (false, rest),
        };
        let c = r.chars().next()?;
        let base = RelSet::of(letter(c)?);
        let r = &r[1..];
        let (ne, r) = match r.strip_prefix("_ne") {
            Some(r) => (true, r),
            None => (false, r),
        };
        let set = if neg { !base } else { base };
        out.push(if ne { set.without_eq() } else { set });
        rest = r;
    }
    (!out.is_empty()).then_some(out)
}

fn parse_rel(s: &str) -> Option<Vec<RelSet>> {
    match s {
        "=" => return Some(vec![RelSet::EQ]),
        "!=" => return Some(vec![RelSet::NE]),
        _ => {}
    }
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        return inner
            .chars()
            .map(letter)
            .try_fold(RelSet::EMPTY, |acc, k| Some(acc | RelSet::of(k?)))
            .map(|r| vec![r]);
    }
    word(s).map(|r| vec![r]).or_else(|| letters(s))
}

fn parse_rels(token: &str) -> Option<Vec<RelSet>> {
    let mut out = Vec::new();
    for part in token.split(',') {
        out.extend(parse_rel(part)?);
    }
    Some(out)
}
