//! Text formats: the ATA description language, MTL surface syntax, timed
//! words and intervals. The token stream is public so sibling crates can
//! parse their own formats (timed-automaton files, zone dumps) with the same
//! lexer and positioned errors.

use crate::automaton::{AtaError, OneAta};
use crate::config::TimedWord;
use crate::formula::TransitionFormula;
use crate::interval::Interval;
use crate::mtl::Mtl;
use crate::rat::Rat;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Names that cannot be used for locations, letters or clocks.
pub const RESERVED: &[&str] = &[
    "true", "false", "x", "inf", "U", "X", "F", "G", "in", "reset", "inactive",
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("{line}:{col}: {msg}")]
    At { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Validation(String),
}

impl SyntaxError {
    pub fn at(line: usize, col: usize, msg: impl Into<String>) -> Self {
        SyntaxError::At {
            line,
            col,
            msg: msg.into(),
        }
    }
}

impl From<AtaError> for SyntaxError {
    fn from(e: AtaError) -> Self {
        SyntaxError::Validation(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// A non-negative rational literal: integer, decimal or fraction.
    Num(Rat),
    Punct(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(r) => write!(f, "`{}`", crate::rat::fmt_rat(*r)),
            Tok::Punct(c) => write!(f, "`{c}`"),
        }
    }
}

/// A positioned token stream with the usual expect/accept helpers.
pub struct Tokens {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Tokens {
    pub fn lex(input: &str) -> Result<Tokens, SyntaxError> {
        let mut toks = Vec::new();
        let mut line = 1usize;
        let mut col = 1usize;
        let mut chars = input.chars().peekable();
        while let Some(&c) = chars.peek() {
            let (tl, tc) = (line, col);
            let bump = |chars: &mut std::iter::Peekable<std::str::Chars>,
                            line: &mut usize,
                            col: &mut usize| {
                let c = chars.next().unwrap();
                if c == '\n' {
                    *line += 1;
                    *col = 1;
                } else {
                    *col += 1;
                }
                c
            };
            if c.is_whitespace() {
                bump(&mut chars, &mut line, &mut col);
                continue;
            }
            if c == '#' {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump(&mut chars, &mut line, &mut col);
                }
                continue;
            }
            if c.is_ascii_digit() {
                let mut num = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        num.push(bump(&mut chars, &mut line, &mut col));
                    } else {
                        break;
                    }
                }
                // decimal point or fraction bar, both requiring a digit next
                let mut den: Option<String> = None;
                let mut decimal = false;
                if let Some(&sep) = chars.peek() {
                    if sep == '.' || sep == '/' {
                        let mut look = chars.clone();
                        look.next();
                        if look.peek().is_some_and(|d| d.is_ascii_digit()) {
                            decimal = sep == '.';
                            bump(&mut chars, &mut line, &mut col);
                            let mut part = String::new();
                            while let Some(&c) = chars.peek() {
                                if c.is_ascii_digit() {
                                    part.push(bump(&mut chars, &mut line, &mut col));
                                } else {
                                    break;
                                }
                            }
                            den = Some(part);
                        }
                    }
                }
                let rat = match den {
                    None => Rat::from_integer(
                        num.parse::<i64>()
                            .map_err(|_| SyntaxError::at(tl, tc, "number too large"))?,
                    ),
                    Some(part) if decimal => {
                        let scale = 10i64
                            .checked_pow(part.len() as u32)
                            .ok_or_else(|| SyntaxError::at(tl, tc, "number too precise"))?;
                        let whole: i64 = num
                            .parse()
                            .map_err(|_| SyntaxError::at(tl, tc, "number too large"))?;
                        let frac: i64 = part
                            .parse()
                            .map_err(|_| SyntaxError::at(tl, tc, "number too large"))?;
                        Rat::new(whole * scale + frac, scale)
                    }
                    Some(part) => {
                        let n: i64 = num
                            .parse()
                            .map_err(|_| SyntaxError::at(tl, tc, "number too large"))?;
                        let d: i64 = part
                            .parse()
                            .map_err(|_| SyntaxError::at(tl, tc, "number too large"))?;
                        if d == 0 {
                            return Err(SyntaxError::at(tl, tc, "zero denominator"));
                        }
                        Rat::new(n, d)
                    }
                };
                toks.push((Tok::Num(rat), tl, tc));
                continue;
            }
            if c.is_alphabetic() || c == '_' {
                let mut id = String::new();
                while let Some(&c) = chars.peek() {
                    // U+0304 keeps the deactivation spelling `x̄` one token
                    if c.is_alphanumeric() || c == '_' || c == '\u{0304}' {
                        id.push(bump(&mut chars, &mut line, &mut col));
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Ident(id), tl, tc));
                continue;
            }
            if "();&|[]{},.<>=~-:/!".contains(c) {
                bump(&mut chars, &mut line, &mut col);
                toks.push((Tok::Punct(c), tl, tc));
                continue;
            }
            return Err(SyntaxError::at(tl, tc, format!("unexpected character `{c}`")));
        }
        Ok(Tokens {
            toks,
            pos: 0,
            end: (line, col),
        })
    }

    pub fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    pub fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.pos + 1).map(|(t, _, _)| t)
    }

    pub fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|(_, l, c)| (*l, *c))
            .unwrap_or(self.end)
    }

    pub fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn error(&self, msg: impl Into<String>) -> SyntaxError {
        let (l, c) = self.here();
        SyntaxError::at(l, c, msg)
    }

    pub fn accept_punct(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_punct(&mut self, c: char) -> Result<(), SyntaxError> {
        if self.accept_punct(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    pub fn accept_ident(&mut self, kw: &str) -> bool {
        if self.peek() == Some(&Tok::Ident(kw.to_string())) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect_ident(&mut self, kw: &str) -> Result<(), SyntaxError> {
        if self.accept_ident(kw) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{kw}`")))
        }
    }

    pub fn ident(&mut self) -> Result<String, SyntaxError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.error("expected an identifier")),
        }
    }

    pub fn name(&mut self) -> Result<String, SyntaxError> {
        let (l, c) = self.here();
        let id = self.ident()?;
        if RESERVED.contains(&id.as_str()) || id == "x\u{0304}" {
            return Err(SyntaxError::at(l, c, format!("`{id}` is a reserved word")));
        }
        Ok(id)
    }

    pub fn number(&mut self) -> Result<Rat, SyntaxError> {
        match self.peek() {
            Some(Tok::Num(r)) => {
                let r = *r;
                self.pos += 1;
                Ok(r)
            }
            _ => Err(self.error("expected a number")),
        }
    }

    pub fn natural(&mut self) -> Result<u32, SyntaxError> {
        let (l, c) = self.here();
        let r = self.number()?;
        if *r.denom() != 1 || *r.numer() < 0 || *r.numer() > u32::MAX as i64 {
            return Err(SyntaxError::at(l, c, "expected a natural number"));
        }
        Ok(*r.numer() as u32)
    }

    /// An integer with an optional leading minus sign.
    pub fn integer(&mut self) -> Result<i64, SyntaxError> {
        let neg = self.accept_punct('-');
        let (l, c) = self.here();
        let r = self.number()?;
        if *r.denom() != 1 {
            return Err(SyntaxError::at(l, c, "expected an integer"));
        }
        Ok(if neg { -r.numer() } else { *r.numer() })
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn expect_end(&self) -> Result<(), SyntaxError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    /// `[l,u]`, `(l,u]`, `[l,u)`, `(l,u)`, `[l,inf)`, `(l,inf)`.
    pub fn interval(&mut self) -> Result<Interval, SyntaxError> {
        let (l, c) = self.here();
        let lo_closed = if self.accept_punct('[') {
            true
        } else if self.accept_punct('(') {
            false
        } else {
            return Err(self.error("expected an interval"));
        };
        let lo = self.natural()?;
        self.expect_punct(',')?;
        let hi = if self.accept_ident("inf") {
            None
        } else {
            Some(self.natural()?)
        };
        let hi_closed = if self.accept_punct(']') {
            true
        } else if self.accept_punct(')') {
            false
        } else {
            return Err(self.error("expected `]` or `)`"));
        };
        Interval::new(lo, hi, lo_closed, hi_closed)
            .map_err(|e| SyntaxError::at(l, c, e.to_string()))
    }

    /// True when an interval literal starts here (needs two-token lookahead
    /// to tell `(1,2]` from a parenthesized formula).
    pub fn interval_ahead(&self) -> bool {
        match (self.peek(), self.peek2()) {
            (Some(Tok::Punct('[')), _) => true,
            (Some(Tok::Punct('(')), Some(Tok::Num(_))) => true,
            _ => false,
        }
    }
}

/// Parses the ATA description language:
///
/// ```text
/// ata NAME;
/// alphabet a b c;
/// init q0;
/// accepting q0 q1;
/// q0 -a-> (q0 & x.q1) | ([1,1] & q2);
/// ```
///
/// `x.` resets the clock, `~x.` (or `x̄.`) deactivates it; guards are interval
/// literals; `true` and `false` are constants. `#` starts a comment.
pub fn parse_ata(input: &str) -> Result<OneAta, SyntaxError> {
    let mut t = Tokens::lex(input)?;
    t.expect_ident("ata")?;
    let name = t.name()?;
    t.expect_punct(';')?;
    t.expect_ident("alphabet")?;
    let mut alphabet = Vec::new();
    while !t.accept_punct(';') {
        alphabet.push(t.name()?);
    }
    t.expect_ident("init")?;
    let initial = t.name()?;
    t.expect_punct(';')?;
    t.expect_ident("accepting")?;
    let mut accepting = Vec::new();
    while !t.accept_punct(';') {
        accepting.push(t.name()?);
    }
    fn push_loc(locations: &mut Vec<String>, l: &str) {
        if !locations.iter().any(|x| x == l) {
            locations.push(l.to_string());
        }
    }
    let mut locations: Vec<String> = Vec::new();
    push_loc(&mut locations, &initial);
    for l in &accepting {
        push_loc(&mut locations, l);
    }
    // First pass records rule heads and body token spans, collecting every
    // location name before any formula is resolved.
    let mut raw: Vec<(String, String, std::ops::Range<usize>)> = Vec::new();
    while !t.at_end() {
        let src = t.name()?;
        push_loc(&mut locations, &src);
        t.expect_punct('-')?;
        let letter = t.name()?;
        t.expect_punct('-')?;
        t.expect_punct('>')?;
        let start = t.pos;
        loop {
            match t.peek() {
                None => return Err(t.error("expected `;`")),
                Some(Tok::Punct(';')) => {
                    let span = start..t.pos;
                    t.next();
                    raw.push((src, letter, span));
                    break;
                }
                Some(_) => {
                    t.next();
                }
            }
        }
    }
    for (_, _, span) in &raw {
        for (tok, _, _) in &t.toks[span.clone()] {
            if let Tok::Ident(id) = tok {
                if !RESERVED.contains(&id.as_str()) && id != "x\u{0304}" {
                    push_loc(&mut locations, id);
                }
            }
        }
    }
    let resolve = |toks: &Tokens, l: usize, c: usize, n: &str| -> Result<crate::automaton::LocId, SyntaxError> {
        let _ = toks;
        locations
            .iter()
            .position(|x| x == n)
            .map(|i| crate::automaton::LocId::new(i as u32))
            .ok_or_else(|| SyntaxError::at(l, c, format!("unknown location `{n}`")))
    };
    let mut transitions = Vec::new();
    for (src, letter, span) in raw {
        let mut body = Tokens {
            toks: t.toks[span].to_vec(),
            pos: 0,
            end: t.end,
        };
        let f = parse_tf_or(&mut body, &resolve)?;
        body.expect_end()?;
        transitions.push((src, letter, f));
    }
    let ata = OneAta::new(name, locations, alphabet, &initial, &accepting, transitions)?;
    Ok(ata)
}

type Resolver<'a> = &'a dyn Fn(&Tokens, usize, usize, &str) -> Result<crate::automaton::LocId, SyntaxError>;

fn parse_tf_or(t: &mut Tokens, resolve: Resolver) -> Result<TransitionFormula, SyntaxError> {
    let mut f = parse_tf_and(t, resolve)?;
    while t.accept_punct('|') {
        let r = parse_tf_and(t, resolve)?;
        f = TransitionFormula::or(f, r);
    }
    Ok(f)
}

fn parse_tf_and(t: &mut Tokens, resolve: Resolver) -> Result<TransitionFormula, SyntaxError> {
    let mut f = parse_tf_atom(t, resolve)?;
    while t.accept_punct('&') {
        let r = parse_tf_atom(t, resolve)?;
        f = TransitionFormula::and(f, r);
    }
    Ok(f)
}

fn parse_tf_atom(t: &mut Tokens, resolve: Resolver) -> Result<TransitionFormula, SyntaxError> {
    if t.accept_punct('~') {
        t.expect_ident("x")?;
        t.expect_punct('.')?;
        return Ok(TransitionFormula::deactivate(parse_tf_atom(t, resolve)?));
    }
    if t.accept_ident("x\u{0304}") {
        t.expect_punct('.')?;
        return Ok(TransitionFormula::deactivate(parse_tf_atom(t, resolve)?));
    }
    if t.accept_ident("x") {
        t.expect_punct('.')?;
        return Ok(TransitionFormula::reset(parse_tf_atom(t, resolve)?));
    }
    if t.accept_ident("true") {
        return Ok(TransitionFormula::True);
    }
    if t.accept_ident("false") {
        return Ok(TransitionFormula::False);
    }
    if t.interval_ahead() {
        return Ok(TransitionFormula::Guard(t.interval()?));
    }
    if t.peek() == Some(&Tok::Punct('(')) {
        t.next();
        let f = parse_tf_or(t, resolve)?;
        t.expect_punct(')')?;
        return Ok(f);
    }
    let (l, c) = t.here();
    match t.peek() {
        Some(Tok::Ident(_)) => {
            let name = t.name()?;
            let id = resolve(t, l, c, &name)?;
            Ok(TransitionFormula::State(id))
        }
        _ => Err(t.error("expected a transition formula")),
    }
}

/// Canonical text for an automaton; `parse_ata(print_ata(a))` equals `a`.
pub fn print_ata(ata: &OneAta) -> String {
    let mut out = String::new();
    out.push_str(&format!("ata {};\n", ata.name));
    out.push_str("alphabet");
    for a in ata.letters() {
        out.push_str(&format!(" {}", ata.letter_name(a)));
    }
    out.push_str(";\n");
    out.push_str(&format!("init {};\n", ata.loc_name(ata.initial())));
    out.push_str("accepting");
    for q in ata.accepting() {
        out.push_str(&format!(" {}", ata.loc_name(*q)));
    }
    out.push_str(";\n");
    for (q, a, clauses) in ata.transitions() {
        let parts: Vec<String> = clauses
            .iter()
            .map(|c| {
                if c.is_false {
                    return "false".to_string();
                }
                let mut atoms: Vec<String> = Vec::new();
                if c.guard_unsat {
                    // a canonical empty intersection
                    atoms.push("[1,1]".to_string());
                    atoms.push("(1,2]".to_string());
                } else if let Some(g) = &c.guard {
                    atoms.push(g.to_string());
                }
                for l in &c.now {
                    atoms.push(ata.loc_name(*l).to_string());
                }
                for l in &c.reset {
                    atoms.push(format!("x.{}", ata.loc_name(*l)));
                }
                for l in &c.deactivate {
                    atoms.push(format!("~x.{}", ata.loc_name(*l)));
                }
                if atoms.is_empty() {
                    "true".to_string()
                } else if atoms.len() == 1 {
                    atoms.pop().unwrap()
                } else {
                    format!("({})", atoms.join(" & "))
                }
            })
            .collect();
        out.push_str(&format!(
            "{} -{}-> {};\n",
            ata.loc_name(q),
            ata.letter_name(a),
            parts.join(" | ")
        ));
    }
    out
}

/// Parses the MTL surface syntax. Negation applies to atoms only; `F` is
/// sugar for an untimed until whose left side is a tautology over a
/// designated letter; `G` is intentionally rejected (no negation closure).
pub fn parse_mtl(input: &str) -> Result<Mtl, SyntaxError> {
    let mut t = Tokens::lex(input)?;
    // The tautology behind `F` needs some letter; use the least one mentioned.
    let mut letters: BTreeSet<String> = BTreeSet::new();
    for (tok, _, _) in &t.toks {
        if let Tok::Ident(id) = tok {
            if !RESERVED.contains(&id.as_str()) {
                letters.insert(id.clone());
            }
        }
    }
    let designated = letters
        .iter()
        .next()
        .cloned()
        .ok_or_else(|| SyntaxError::at(1, 1, "formula contains no atoms"))?;
    let f = parse_mtl_or(&mut t, &designated)?;
    t.expect_end()?;
    Ok(f)
}

fn parse_mtl_or(t: &mut Tokens, designated: &str) -> Result<Mtl, SyntaxError> {
    let mut f = parse_mtl_and(t, designated)?;
    while t.accept_punct('|') {
        let r = parse_mtl_and(t, designated)?;
        f = Mtl::or(f, r);
    }
    Ok(f)
}

fn parse_mtl_and(t: &mut Tokens, designated: &str) -> Result<Mtl, SyntaxError> {
    let mut f = parse_mtl_until(t, designated)?;
    while t.accept_punct('&') {
        let r = parse_mtl_until(t, designated)?;
        f = Mtl::and(f, r);
    }
    Ok(f)
}

fn parse_mtl_until(t: &mut Tokens, designated: &str) -> Result<Mtl, SyntaxError> {
    let left = parse_mtl_unary(t, designated)?;
    if t.accept_ident("U") {
        let iv = if t.interval_ahead() {
            t.interval()?
        } else {
            Interval::full()
        };
        let right = parse_mtl_until(t, designated)?;
        return Ok(Mtl::until(iv, left, right));
    }
    Ok(left)
}

fn parse_mtl_unary(t: &mut Tokens, designated: &str) -> Result<Mtl, SyntaxError> {
    if t.accept_punct('!') {
        let (l, c) = t.here();
        match t.peek() {
            Some(Tok::Ident(id)) if !RESERVED.contains(&id.as_str()) => {
                let id = id.clone();
                t.next();
                return Ok(Mtl::NegAtom(id));
            }
            _ => {
                return Err(SyntaxError::at(
                    l,
                    c,
                    "negation applies to atoms only (the grammar is in negation normal form)",
                ))
            }
        }
    }
    if t.accept_ident("G") {
        return Err(t.error("`G` is not available (no negation closure)"));
    }
    if t.accept_ident("X") {
        let iv = if t.interval_ahead() {
            t.interval()?
        } else {
            Interval::full()
        };
        let sub = parse_mtl_unary(t, designated)?;
        return Ok(Mtl::next(iv, sub));
    }
    if t.accept_ident("F") {
        let iv = if t.interval_ahead() {
            t.interval()?
        } else {
            Interval::full()
        };
        let sub = parse_mtl_unary(t, designated)?;
        return Ok(Mtl::finally(iv, designated, sub));
    }
    if t.accept_punct('(') {
        let f = parse_mtl_or(t, designated)?;
        t.expect_punct(')')?;
        return Ok(f);
    }
    match t.peek() {
        Some(Tok::Ident(id)) if !RESERVED.contains(&id.as_str()) => {
            let id = id.clone();
            t.next();
            Ok(Mtl::Atom(id))
        }
        _ => Err(t.error("expected an MTL formula")),
    }
}

/// Parses a timed word `(d1,a1)(d2,a2)…` with decimal or fraction delays.
pub fn parse_timed_word(input: &str) -> Result<TimedWord, SyntaxError> {
    let mut t = Tokens::lex(input)?;
    let mut steps = Vec::new();
    while !t.at_end() {
        t.expect_punct('(')?;
        let (l, c) = t.here();
        let d = t.number()?;
        if *d.numer() < 0 {
            return Err(SyntaxError::at(l, c, "delays must be non-negative"));
        }
        t.expect_punct(',')?;
        let a = t.ident()?;
        t.expect_punct(')')?;
        steps.push((d, a));
    }
    Ok(TimedWord::new(steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    const A1_SRC: &str = "\
ata A1;
alphabet a;
init q0;
accepting q0 q1;
q0 -a-> q0 & x.q1;
q1 -a-> ((1,inf) & q1) | ([0,1) & q1) | ([1,1] & q2);
q2 -a-> q2;
";

    #[test]
    fn ata_round_trip() {
        let ata = parse_ata(A1_SRC).unwrap();
        assert_eq!(ata.num_locations(), 3);
        let q1 = ata.loc_by_name("q1").unwrap();
        let a = ata.letter_by_name("a").unwrap();
        assert_eq!(ata.clauses(q1, a).unwrap().len(), 3);
        let printed = print_ata(&ata);
        let again = parse_ata(&printed).unwrap();
        assert_eq!(ata, again);
    }

    #[test]
    fn deactivation_spellings() {
        let src = "\
ata A2;
alphabet a b c;
init qa;
accepting qa;
qa -a-> qa & x.qb & ~x.qc;
qa -b-> qa;
qa -c-> qa;
qb -a-> qb;
qb -b-> [1,1] | ((0,1) & qb) | ((1,inf) & qb);
qb -c-> qb;
qc -a-> qc;
qc -b-> qc;
qc -c-> true;
";
        let ata = parse_ata(src).unwrap();
        let qa = ata.loc_by_name("qa").unwrap();
        let a = ata.letter_by_name("a").unwrap();
        let cs = ata.clauses(qa, a).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].deactivate.len(), 1);
        // UTF-8 macron spelling parses to the same clause
        let src2 = src.replace("~x.", "x\u{0304}.");
        assert_eq!(parse_ata(&src2).unwrap(), ata);
    }

    #[test]
    fn mtl_examples() {
        let f = parse_mtl("(F a) U[1,2] c").unwrap();
        match &f {
            Mtl::Until(i, l, _) => {
                assert_eq!(i.to_string(), "[1,2]");
                assert!(l.is_pure_ltl());
            }
            _ => panic!("expected until"),
        }
        let g = parse_mtl("a & !b").unwrap();
        assert_eq!(g, Mtl::and(Mtl::Atom("a".into()), Mtl::NegAtom("b".into())));
        assert!(parse_mtl("!(a & b)").is_err());
        assert!(parse_mtl("G a").is_err());
    }

    #[test]
    fn timed_words_parse_exactly() {
        let w = parse_timed_word("(0.5,a)(0.7,a)").unwrap();
        assert_eq!(w.steps[0].0, rat(1, 2));
        assert_eq!(w.steps[1].0, rat(7, 10));
        let w = parse_timed_word("(1/3,a)").unwrap();
        assert_eq!(w.steps[0].0, rat(1, 3));
        assert!(parse_timed_word("(x,a)").is_err());
    }

    #[test]
    fn unsat_guards_survive_the_round_trip() {
        let src = "\
ata T;
alphabet a;
init q0;
accepting q0;
q0 -a-> ([0,0] & (0,inf) & q0) | q0;
";
        let ata = parse_ata(src).unwrap();
        let q0 = ata.loc_by_name("q0").unwrap();
        let a = ata.letter_by_name("a").unwrap();
        assert!(ata.clauses(q0, a).unwrap()[0].guard_unsat);
        let again = parse_ata(&print_ata(&ata)).unwrap();
        assert_eq!(ata, again);
    }

    #[test]
    fn mtl_and_word_printing_round_trips() {
        for text in [
            "(F a) U[1,2] c",
            "a & !b",
            "X[1,1] (a | (b U(0,2] c))",
            "(a U b) U[0,inf) c",
        ] {
            let f = parse_mtl(text).unwrap();
            assert_eq!(parse_mtl(&f.to_string()).unwrap(), f);
        }
        for text in ["(0.5,a)(0.7,a)", "(1/3,a)(2,b)", ""] {
            let w = parse_timed_word(text).unwrap();
            assert_eq!(parse_timed_word(&w.to_string()).unwrap(), w);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_ata("ata T;\nalphabet ;\ninit q0;\naccepting;\n").unwrap_err();
        match err {
            SyntaxError::Validation(msg) => assert!(msg.contains("alphabet")),
            SyntaxError::At { .. } => {}
        }
        let err = parse_mtl("a &").unwrap_err();
        assert!(matches!(err, SyntaxError::At { line: 1, col: 4, .. }));
    }
}
