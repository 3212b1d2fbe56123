//! The line-oriented problem-file format and its printer.
//!
//! ```text
//! # comment to end of line
//! ring: x, y
//! field: QQ            (or: GF 32003)
//! basis: e1=0, e2=1
//! order: grevlex, pot  (lex | grlex | grevlex, pot | top)
//! gen: x^2*e1 - y*e1
//! ```
//!
//! Terms are `[sign] [coefficient *] [var^k * …] basisname`; coefficients
//! are integers or fractions a/b; whitespace inside a line is ignored.
//! The printer emits the canonical form, which reparses bit-exactly.

use num_bigint::BigInt;

use crate::error::Error;
use crate::field::FieldSpec;
use crate::module::{FreeModule, FreeModuleSpec, ModuleElement, ModuleMonomial};
use crate::monomial::Monomial;
use crate::order::{MonomialOrder, PositionStrategy, RingOrder};

#[derive(Clone, Debug)]
pub struct ProblemFile {
    pub module: FreeModule,
    pub gens: Vec<ModuleElement>,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
    Eq,
    Comma,
    Colon,
}

struct Line {
    no: usize,
    toks: Vec<(usize, Tok)>, // (column, token)
    end_col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn tokenize(no: usize, text: &str) -> Result<Line, Error> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
            }
            '^' => {
                toks.push((col, Tok::Caret));
                i += 1;
            }
            '*' => {
                toks.push((col, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((col, Tok::Slash));
                i += 1;
            }
            '+' => {
                toks.push((col, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((col, Tok::Minus));
                i += 1;
            }
            '=' => {
                toks.push((col, Tok::Eq));
                i += 1;
            }
            ',' => {
                toks.push((col, Tok::Comma));
                i += 1;
            }
            ':' => {
                toks.push((col, Tok::Colon));
                i += 1;
            }
            '(' | ')' => {
                // only used in the GF(p) spelling; treated as spacing
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((col, Tok::Int(chars[start..i].iter().collect())));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((col, Tok::Ident(chars[start..i].iter().collect())));
            }
            other => return Err(err(no, col, format!("unexpected character '{other}'"))),
        }
    }
    Ok(Line {
        no,
        toks,
        end_col: text.len() + 1,
    })
}

struct Cursor<'a> {
    line: &'a Line,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.line.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.line
            .toks
            .get(self.pos)
            .map(|(c, _)| *c)
            .unwrap_or(self.line.end_col)
    }

    fn next(&mut self) -> Option<&Tok> {
        let t = self.line.toks.get(self.pos).map(|(_, t)| t);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_ident(&mut self, what: &str) -> Result<String, Error> {
        let (no, col) = (self.line.no, self.col());
        match self.next() {
            Some(Tok::Ident(s)) => Ok(s.clone()),
            _ => Err(err(no, col, format!("expected {what}"))),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<String, Error> {
        let (no, col) = (self.line.no, self.col());
        match self.next() {
            Some(Tok::Int(s)) => Ok(s.clone()),
            _ => Err(err(no, col, format!("expected {what}"))),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), Error> {
        let (no, col) = (self.line.no, self.col());
        match self.next() {
            Some(t) if *t == tok => Ok(()),
            _ => Err(err(no, col, format!("expected {what}"))),
        }
    }

    fn at_end(&self) -> Result<(), Error> {
        if self.pos == self.line.toks.len() {
            Ok(())
        } else {
            Err(err(self.line.no, self.col(), "unexpected trailing input"))
        }
    }
}

pub fn parse(text: &str) -> Result<ProblemFile, Error> {
    let mut ring: Option<(usize, Vec<String>)> = None;
    let mut field: Option<(usize, FieldSpec)> = None;
    let mut basis: Option<(usize, Vec<(String, u64)>)> = None;
    let mut order: Option<(usize, (RingOrder, PositionStrategy))> = None;
    let mut gen_lines: Vec<Line> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let line = tokenize(no, raw)?;
        if line.toks.is_empty() {
            continue;
        }
        let mut cur = Cursor { line: &line, pos: 0 };
        let head_col = cur.col();
        let head = cur.expect_ident("a header (ring/field/basis/order/gen)")?;
        cur.expect(Tok::Colon, &format!("':' after '{head}'"))?;
        match head.as_str() {
            "ring" => {
                if ring.is_some() {
                    return Err(err(no, head_col, "duplicate ring header"));
                }
                let mut names = vec![cur.expect_ident("a variable name")?];
                while cur.peek() == Some(&Tok::Comma) {
                    cur.next();
                    names.push(cur.expect_ident("a variable name")?);
                }
                cur.at_end()?;
                ring = Some((no, names));
            }
            "field" => {
                if field.is_some() {
                    return Err(err(no, head_col, "duplicate field header"));
                }
                let name = cur.expect_ident("QQ or GF")?;
                let f = match name.as_str() {
                    "QQ" => FieldSpec::Rationals,
                    "GF" => {
                        let pcol = cur.col();
                        let p: u64 = cur
                            .expect_int("a prime modulus")?
                            .parse()
                            .map_err(|_| err(no, pcol, "modulus does not fit in 64 bits"))?;
                        if !crate::field::is_prime_u64(p) {
                            return Err(err(no, pcol, format!("{p} is not prime")));
                        }
                        FieldSpec::Prime(p)
                    }
                    other => return Err(err(no, head_col, format!("unknown field '{other}'"))),
                };
                cur.at_end()?;
                field = Some((no, f));
            }
            "basis" => {
                if basis.is_some() {
                    return Err(err(no, head_col, "duplicate basis header"));
                }
                let mut items = Vec::new();
                loop {
                    let name = cur.expect_ident("a basis name")?;
                    cur.expect(Tok::Eq, "'=' and a degree")?;
                    let dcol = cur.col();
                    let deg: u64 = cur
                        .expect_int("a non-negative degree")?
                        .parse()
                        .map_err(|_| err(no, dcol, "degree does not fit in 64 bits"))?;
                    items.push((name, deg));
                    if cur.peek() == Some(&Tok::Comma) {
                        cur.next();
                    } else {
                        break;
                    }
                }
                cur.at_end()?;
                basis = Some((no, items));
            }
            "order" => {
                if order.is_some() {
                    return Err(err(no, head_col, "duplicate order header"));
                }
                let rcol = cur.col();
                let rname = cur.expect_ident("lex, grlex, or grevlex")?;
                let ring_order = match rname.as_str() {
                    "lex" => RingOrder::Lex,
                    "grlex" => RingOrder::GrLex,
                    "grevlex" => RingOrder::GrevLex,
                    other => return Err(err(no, rcol, format!("unknown ring order '{other}'"))),
                };
                cur.expect(Tok::Comma, "',' and a position strategy")?;
                let scol = cur.col();
                let sname = cur.expect_ident("pot or top")?;
                let strategy = match sname.as_str() {
                    "pot" => PositionStrategy::Pot,
                    "top" => PositionStrategy::Top,
                    other => {
                        return Err(err(no, scol, format!("unknown position strategy '{other}'")))
                    }
                };
                cur.at_end()?;
                order = Some((no, (ring_order, strategy)));
            }
            "gen" => gen_lines.push(line),
            other => return Err(err(no, head_col, format!("unknown header '{other}'"))),
        }
    }

    let (_, vars) = ring.ok_or_else(|| err(1, 1, "missing ring header"))?;
    let (_, field) = field.ok_or_else(|| err(1, 1, "missing field header"))?;
    let (bline, basis) = basis.ok_or_else(|| err(1, 1, "missing basis header"))?;
    let (_, (ring_order, strategy)) = order.ok_or_else(|| err(1, 1, "missing order header"))?;

    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) {
            return Err(err(1, 1, format!("duplicate variable '{v}'")));
        }
        if basis.iter().any(|(b, _)| b == v) {
            return Err(err(
                bline,
                1,
                format!("name '{v}' used for both a variable and a basis element"),
            ));
        }
    }
    for (i, (b, _)) in basis.iter().enumerate() {
        if basis[..i].iter().any(|(p, _)| p == b) {
            return Err(err(bline, 1, format!("duplicate basis name '{b}'")));
        }
    }

    let spec = FreeModuleSpec::new(vars, basis, field)
        .map_err(|e| err(1, 1, e.to_string()))?;
    let mord = MonomialOrder::new(ring_order, strategy, spec.rank());
    let fm = FreeModule::new(spec, mord);

    let mut gens = Vec::new();
    for line in &gen_lines {
        let mut cur = Cursor { line, pos: 0 };
        cur.next(); // 'gen'
        cur.next(); // ':'
        gens.push(parse_element(&fm, &mut cur)?);
    }
    Ok(ProblemFile { module: fm, gens })
}

fn parse_element(fm: &FreeModule, cur: &mut Cursor) -> Result<ModuleElement, Error> {
    let no = cur.line.no;
    if cur.peek().is_none() {
        return Err(err(no, cur.col(), "empty generator"));
    }
    let mut terms: Vec<(crate::field::Scalar, ModuleMonomial)> = Vec::new();
    let mut first = true;
    while cur.peek().is_some() {
        let negative = match cur.peek() {
            Some(Tok::Minus) => {
                cur.next();
                true
            }
            Some(Tok::Plus) => {
                cur.next();
                false
            }
            _ if first => false,
            _ => return Err(err(no, cur.col(), "expected '+' or '-' between terms")),
        };
        first = false;
        terms.push(parse_term(fm, cur, negative)?);
    }
    Ok(fm.element_from_terms(terms))
}

fn parse_term(
    fm: &FreeModule,
    cur: &mut Cursor,
    negative: bool,
) -> Result<(crate::field::Scalar, ModuleMonomial), Error> {
    let no = cur.line.no;
    let field = fm.spec.field();
    let mut coeff = field.one();
    let mut exps = vec![0u32; fm.spec.nvars()];
    let position: usize;

    // optional leading coefficient
    if let Some(Tok::Int(_)) = cur.peek() {
        let ncol = cur.col();
        let numer: BigInt = cur
            .expect_int("a coefficient")?
            .parse()
            .expect("digits parse as an integer");
        let denom = if cur.peek() == Some(&Tok::Slash) {
            cur.next();
            let dcol = cur.col();
            let d: BigInt = cur
                .expect_int("a denominator")?
                .parse()
                .expect("digits parse as an integer");
            if d == BigInt::from(0) {
                return Err(err(no, dcol, "zero denominator"));
            }
            d
        } else {
            BigInt::from(1)
        };
        coeff = field
            .from_rational(&numer, &denom)
            .map_err(|e| err(no, ncol, e.to_string()))?;
        cur.expect(Tok::Star, "'*' after the coefficient")?;
    }

    loop {
        let col = cur.col();
        let name = cur.expect_ident("a variable or basis name")?;
        if let Some(vi) = fm.spec.vars().iter().position(|v| *v == name) {
            let e: u32 = if cur.peek() == Some(&Tok::Caret) {
                cur.next();
                let ecol = cur.col();
                cur.expect_int("an exponent")?
                    .parse()
                    .map_err(|_| err(no, ecol, "exponent does not fit in 32 bits"))?
            } else {
                1
            };
            exps[vi] = exps[vi]
                .checked_add(e)
                .ok_or_else(|| err(no, col, "exponent overflow"))?;
            cur.expect(Tok::Star, "'*' and a trailing basis name")?;
        } else if let Some(bi) = fm.spec.basis_names().iter().position(|b| *b == name) {
            position = bi;
            break;
        } else {
            return Err(err(no, col, format!("unknown variable or basis name '{name}'")));
        }
    }
    let pos = position;
    if negative {
        coeff = coeff.neg();
    }
    Ok((
        coeff,
        ModuleMonomial {
            mono: Monomial::from_exps(exps),
            pos,
        },
    ))
}

/// Canonical rendering; `parse(print(p))` reproduces `p` exactly, and
/// printing a parse of canonical text is byte-identical.
pub fn print(problem: &ProblemFile) -> String {
    let fm = &problem.module;
    let spec = &fm.spec;
    let mut out = String::new();
    out.push_str(&format!("ring: {}\n", spec.vars().join(", ")));
    out.push_str(&format!("field: {}\n", spec.field()));
    let basis: Vec<String> = spec
        .basis_names()
        .iter()
        .zip(spec.basis_degrees())
        .map(|(b, d)| format!("{b}={d}"))
        .collect();
    out.push_str(&format!("basis: {}\n", basis.join(", ")));
    out.push_str(&format!(
        "order: {}, {}\n",
        fm.order.ring.name(),
        fm.order.strategy.name()
    ));
    for g in &problem.gens {
        out.push_str(&format!("gen: {}\n", fm.format_element(g)));
    }
    out
}
