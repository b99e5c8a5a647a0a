//! Text formats for fields, polynomials and curves.
//!
//! Fields are `Q`, `GF(p)` or `GF(p^k)`. Polynomials are ordinary infix
//! expressions in `x`, with `t` naming the generator of an extension field:
//! `x^5 + 3x + 1`, `(t+1)*x^2 + t`. Curves are `;`-separated `key=value`
//! lists such as `char=7;f=x^5+3x+1` or
//! `char=2^2;alpha0=1;terms=(0:1),(1:1)`.
//!
//! Every parse error carries the byte offset of the offending input.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::curves::{ASModel, BranchTerm, CurveModel, OddModel};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::Poly;

fn parse_uint(s: &str, base: usize) -> Result<u64> {
    let t = s.trim();
    let lead = s.len() - s.trim_start().len();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(base + lead, format!("expected an unsigned integer, found {t:?}")));
    }
    t.parse()
        .map_err(|_| Error::parse(base + lead, format!("integer {t} is out of range")))
}

/// `p` or `p^k`; `0` is ℚ.
fn parse_char(s: &str, base: usize) -> Result<FieldCtx> {
    let (p, k) = match s.find('^') {
        Some(i) => (parse_uint(&s[..i], base)?, parse_uint(&s[i + 1..], base + i + 1)?),
        None => (parse_uint(s, base)?, 1),
    };
    if p == 0 {
        if k != 1 {
            return Err(Error::parse(base, "characteristic 0 takes no exponent"));
        }
        return Ok(FieldCtx::rationals());
    }
    let k = u32::try_from(k).map_err(|_| Error::parse(base, "extension degree is out of range"))?;
    FieldCtx::extension(p, k)
}

/// `Q`, `GF(p)` or `GF(p^k)`.
pub fn parse_field_spec(s: &str) -> Result<FieldCtx> {
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    if t == "Q" {
        return Ok(FieldCtx::rationals());
    }
    let Some(rest) = t.strip_prefix("GF(") else {
        return Err(Error::parse(lead, "expected Q, GF(p) or GF(p^k)"));
    };
    let Some(inner) = rest.strip_suffix(')') else {
        return Err(Error::parse(lead + t.len(), "missing closing parenthesis"));
    };
    let ctx = parse_char(inner, lead + 3)?;
    if ctx.characteristic() == 0 {
        return Err(Error::parse(lead + 3, "GF(0) is not a field; use Q"));
    }
    Ok(ctx)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    T,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str, base: usize) -> Result<Vec<(Tok, usize)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let at = base + i;
        let tok = match c {
            b' ' | b'\t' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Num(s[start..i].parse().expect("digits")), at));
                continue;
            }
            b'x' => Tok::X,
            b't' => Tok::T,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = s[i..].chars().next().expect("in bounds");
                return Err(Error::parse(at, format!("unexpected character {ch:?}")));
            }
        };
        out.push((tok, at));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a FieldCtx,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn expr(&mut self) -> Result<Poly> {
        let neg = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if neg {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.factor()?;
                    if d.degree() != Some(0) {
                        return Err(Error::parse(at, "division is only by nonzero constants"));
                    }
                    let inv = d.coeff(0).inv().map_err(|_| Error::parse(at, "division by zero"))?;
                    acc = acc.scale(&inv);
                }
                // implicit multiplication: 3x, 2(x+1), (t+1)x
                Some(Tok::Num(_) | Tok::X | Tok::T | Tok::LParen) => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.primary()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.offset();
        match self.toks.get(self.pos) {
            Some((Tok::Num(n), _)) => {
                let e = u32::try_from(n.clone())
                    .ok()
                    .filter(|&e| e <= 4096)
                    .ok_or_else(|| Error::parse(at, "exponent is too large"))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => Err(Error::parse(at, "expected a nonnegative integer exponent")),
        }
    }

    fn primary(&mut self) -> Result<Poly> {
        let at = self.offset();
        let Some((tok, _)) = self.toks.get(self.pos).cloned() else {
            return Err(Error::parse(at, "unexpected end of input"));
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => {
                let q = BigRational::from_integer(n);
                let c = self
                    .ctx
                    .from_rational(&q)
                    .map_err(|e| Error::parse(at, e.to_string()))?;
                Ok(Poly::constant(c))
            }
            Tok::X => Ok(Poly::x(self.ctx)),
            Tok::T => match self.ctx.generator() {
                Some(t) => Ok(Poly::constant(t)),
                None => Err(Error::parse(
                    at,
                    format!("t names the generator of an extension field, but the field is {}", self.ctx),
                )),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(Error::parse(self.offset(), "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(Error::parse(at, "expected a number, x, t or '('")),
        }
    }
}

fn parse_poly_at(ctx: &FieldCtx, s: &str, base: usize) -> Result<Poly> {
    let toks = tokenize(s, base)?;
    if toks.is_empty() {
        return Err(Error::parse(base, "empty expression"));
    }
    let mut p = Parser {
        ctx,
        toks,
        pos: 0,
        end: base + s.len(),
    };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(p.offset(), "unexpected trailing input"));
    }
    Ok(out)
}

fn parse_elem_at(ctx: &FieldCtx, s: &str, base: usize) -> Result<FieldElem> {
    let p = parse_poly_at(ctx, s, base)?;
    if p.degree().unwrap_or(0) > 0 {
        return Err(Error::parse(base, "expected a field element, found an expression in x"));
    }
    Ok(p.coeff(0))
}

/// A polynomial in `x` over `ctx`.
pub fn parse_poly(ctx: &FieldCtx, s: &str) -> Result<Poly> {
    parse_poly_at(ctx, s, 0)
}

/// A constant of `ctx`, such as `3/4`, `-2` or `t^2+1`.
pub fn parse_elem(ctx: &FieldCtx, s: &str) -> Result<FieldElem> {
    parse_elem_at(ctx, s, 0)
}

/// Split on `sep` outside parentheses, yielding `(offset, piece)`.
fn split_top(s: &str, sep: u8, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, b) in s.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            _ if b == sep && depth == 0 => {
                out.push((base + start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((base + start, &s[start..]));
    out
}

fn parse_terms(ctx: &FieldCtx, s: &str, base: usize) -> Result<Vec<BranchTerm>> {
    let mut out = Vec::new();
    for (at, piece) in split_top(s, b',', base) {
        let lead = piece.len() - piece.trim_start().len();
        let t = piece.trim();
        let at = at + lead;
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(at, "expected a term of the form (a:alpha)"))?;
        let colon = inner
            .find(':')
            .ok_or_else(|| Error::parse(at + 1, "expected ':' between branch point and residue"))?;
        out.push(BranchTerm {
            a: parse_elem_at(ctx, &inner[..colon], at + 1)?,
            alpha: parse_elem_at(ctx, &inner[colon + 1..], at + 2 + colon)?,
        });
    }
    Ok(out)
}

/// `char=<c>;f=<poly>` or `char=<c>;alpha0=<elem>;terms=(a:alpha),...`,
/// validated into a model.
pub fn parse_curve_spec(s: &str) -> Result<CurveModel> {
    let mut fields: Vec<(usize, &str, usize, &str)> = Vec::new();
    for (at, piece) in split_top(s, b';', 0) {
        let eq = piece
            .find('=')
            .ok_or_else(|| Error::parse(at, "expected key=value"))?;
        let key = piece[..eq].trim();
        fields.push((at, key, at + eq + 1, &piece[eq + 1..]));
    }
    let get = |name: &str| fields.iter().find(|f| f.1 == name).map(|f| (f.2, f.3));
    for (at, key, _, _) in &fields {
        if !matches!(*key, "char" | "f" | "alpha0" | "terms") {
            return Err(Error::parse(*at, format!("unknown key {key:?}")));
        }
        if fields.iter().filter(|f| f.1 == *key).count() > 1 {
            return Err(Error::parse(*at, format!("duplicate key {key:?}")));
        }
    }
    let (cat, cval) = get("char").ok_or_else(|| Error::parse(0, "missing char=..."))?;
    let lead = cval.len() - cval.trim_start().len();
    let ctx = parse_char(cval.trim(), cat + lead)?;
    match (get("f"), get("alpha0"), get("terms")) {
        (Some((at, f)), None, None) => {
            let f = parse_poly_at(&ctx, f, at)?;
            Ok(OddModel::from_poly(f)?.into())
        }
        (None, Some((a0at, a0)), Some((tat, terms))) => {
            let alpha0 = parse_elem_at(&ctx, a0, a0at)?;
            let branch = parse_terms(&ctx, terms, tat)?;
            Ok(ASModel::new(alpha0, branch)?.into())
        }
        _ => Err(Error::parse(
            s.len(),
            "expected either f=... or both alpha0=... and terms=...",
        )),
    }
}
