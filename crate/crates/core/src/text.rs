//! Canonical text form and the expression parser.
//!
//! Grammar (multiplication is noncommutative, evaluated left to right):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | factor
//! factor := atom ('^' int)?
//! atom   := rational | var | '(' expr ')' | 'X(' block ')'
//!         | 'IP(' block ',' block ')' | 'NORM2(' block ')'
//! var    := <block><i> | <block>g<i> | x0 | e<i> | eg<i> | sqrtpi | L | R
//! ```
//!
//! Negative exponents and division are accepted only for invertible scalars and for `R`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{Sig, SuperElement};
use crate::error::{Error, Result};
use crate::scalar::{fmt_ratfunc, SKey, Scalar};

fn scalar_parts(s: &Scalar) -> Vec<String> {
    s.terms()
        .iter()
        .map(|(k, r)| {
            let mut f = Vec::new();
            let q = r.as_rational();
            match &q {
                Some(q) if q.is_one() && (k.sqrt_pi != 0 || k.log != 0) => {}
                Some(q) if *q == -BigRational::one() && (k.sqrt_pi != 0 || k.log != 0) => f.push("-1".to_string()),
                _ => f.push(fmt_ratfunc(r)),
            }
            if k.sqrt_pi == 1 {
                f.push("sqrtpi".into());
            } else if k.sqrt_pi != 0 {
                f.push(format!("sqrtpi^{}", k.sqrt_pi));
            }
            if k.log == 1 {
                f.push("L".into());
            } else if k.log > 1 {
                f.push(format!("L^{}", k.log));
            }
            let s = f.join("*");
            s.strip_prefix("-1*").map(|r| format!("-{r}")).unwrap_or(s)
        })
        .collect()
}

fn join_signed(parts: &[String]) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

/// Canonical text form of a scalar.
pub fn render_scalar(s: &Scalar) -> String {
    if s.is_zero() {
        return "0".into();
    }
    join_signed(&scalar_parts(s))
}

fn mono_factors(sig: &Sig, m: &crate::algebra::Mono) -> Vec<String> {
    let mut f = Vec::new();
    for (v, &e) in m.bos.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let (b, i) = sig.bos_owner(v);
        let name = format!("{}{}", sig.block(b).name, i + 1);
        f.push(if e == 1 { name } else { format!("{name}^{e}") });
    }
    let mut g = m.grass;
    while g != 0 {
        let v = g.trailing_zeros() as usize;
        g &= g - 1;
        let (b, i) = sig.ferm_owner(v);
        f.push(format!("{}g{}", sig.block(b).name, i + 1));
    }
    let mut o = m.orth;
    while o != 0 {
        let i = o.trailing_zeros();
        o &= o - 1;
        f.push(format!("e{}", i + 1));
    }
    for (p, &(q, pe)) in m.weyl.iter().enumerate() {
        if q > 0 {
            let n = format!("eg{}", 2 * p + 2);
            f.push(if q == 1 { n } else { format!("{n}^{q}") });
        }
        if pe > 0 {
            let n = format!("eg{}", 2 * p + 1);
            f.push(if pe == 1 { n } else { format!("{n}^{pe}") });
        }
    }
    if m.radial != 0 {
        f.push(if m.radial == 1 { "R".into() } else { format!("R^{}", m.radial) });
    }
    f
}

/// Canonical text form of an element: terms in canonical order, each written as
/// coefficient times the monomial in normal order.
pub fn render(e: &SuperElement) -> String {
    if e.is_zero() {
        return "0".into();
    }
    let sig = e.sig();
    let mut parts = Vec::new();
    for (m, c) in e.terms() {
        let factors = mono_factors(sig, m);
        let sp = scalar_parts(c);
        let coef_simple = sp.len() == 1 && !sp[0].contains(" ");
        let text = if factors.is_empty() {
            if sp.len() == 1 {
                sp[0].clone()
            } else {
                format!("({})", join_signed(&sp))
            }
        } else {
            let fs = factors.join("*");
            if coef_simple && c.terms()[0].0 == SKey::ONE && c.as_rational().is_some_and(|q| q.is_one()) {
                fs
            } else if coef_simple && c.as_rational().is_some_and(|q| q == -BigRational::one()) {
                format!("-{fs}")
            } else if coef_simple {
                format!("{}*{fs}", sp[0])
            } else {
                format!("({})*{fs}", join_signed(&sp))
            }
        };
        parts.push(text);
    }
    join_signed(&parts)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String, Option<usize>),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Num(s[st..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < b.len() && b[i].is_ascii_alphabetic() {
                i += 1;
            }
            let name = s[st..i].to_string();
            let ds = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let idx = if i > ds { Some(s[ds..i].parse().map_err(|_| perr(ds, "index too large"))?) } else { None };
            out.push((st, Tok::Ident(name, idx)));
        } else if "+-*/^(),".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(perr(i, &format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

fn perr(pos: usize, msg: &str) -> Error {
    Error::Parse { pos, msg: msg.to_string() }
}

struct Parser<'a> {
    sig: &'a Sig,
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.0).unwrap_or(self.end)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(perr(self.pos(), &format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<SuperElement> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<SuperElement> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let p = self.pos();
                self.i += 1;
                let d = self.unary()?;
                let inv = d
                    .as_scalar()
                    .and_then(|s| s.inv().ok())
                    .ok_or_else(|| perr(p, "division by a non-invertible expression"))?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<SuperElement> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.factor()
    }

    fn int_exponent(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let p = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                let v: i64 = n.try_into().map_err(|_| perr(p, "exponent too large"))?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(perr(p, "expected an integer exponent")),
        }
    }

    fn factor(&mut self) -> Result<SuperElement> {
        let start = self.pos();
        if let Some(Tok::Ident(name, None)) = self.peek() {
            if name == "R" {
                self.i += 1;
                let e = if self.eat('^') { self.int_exponent()? } else { 1 };
                return SuperElement::radial_power(self.sig, e as i32)
                    .map_err(|_| perr(start, "R needs a radial base"));
            }
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let ep = self.pos();
        let e = self.int_exponent()?;
        if e >= 0 {
            if e > 64 {
                return Err(perr(ep, "exponent too large"));
            }
            Ok(base.pow(e as u32))
        } else {
            let inv = base
                .as_scalar()
                .and_then(|s| s.inv().ok())
                .ok_or_else(|| perr(start, "negative power of a non-invertible expression"))?;
            Ok(SuperElement::from_scalar(self.sig, inv.pow((-e) as u32)))
        }
    }

    fn block_arg(&mut self) -> Result<usize> {
        let p = self.pos();
        match self.peek().cloned() {
            Some(Tok::Ident(name, None)) => {
                self.i += 1;
                self.sig.block_id(&name).map_err(|_| perr(p, &format!("unknown block '{name}'")))
            }
            _ => Err(perr(p, "expected a block name")),
        }
    }

    fn atom(&mut self) -> Result<SuperElement> {
        let p = self.pos();
        let sig = self.sig;
        match self.peek().cloned() {
            None => Err(perr(p, "unexpected end of input")),
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(SuperElement::from_scalar(sig, Scalar::from_bigint(n)))
            }
            Some(Tok::Op('(')) => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Op(c)) => Err(perr(p, &format!("unexpected '{c}'"))),
            Some(Tok::Ident(name, idx)) => {
                self.i += 1;
                match (name.as_str(), idx) {
                    ("X", None) | ("NORM", Some(2)) | ("IP", None) => {
                        self.expect('(')?;
                        let a = self.block_arg()?;
                        let r = if name == "IP" {
                            self.expect(',')?;
                            let b = self.block_arg()?;
                            SuperElement::inner_product(sig, a, b).map_err(|e| perr(p, &e.to_string()))?
                        } else if name == "X" {
                            SuperElement::supervector(sig, a)
                        } else {
                            SuperElement::norm_squared(sig, a)
                        };
                        self.expect(')')?;
                        Ok(r)
                    }
                    ("sqrtpi", None) => Ok(SuperElement::from_scalar(sig, Scalar::sqrt_pi_pow(1))),
                    ("L", None) => Ok(SuperElement::from_scalar(sig, Scalar::log_x0())),
                    ("x", Some(0)) => Ok(SuperElement::x0(sig)),
                    ("e", Some(i)) => {
                        if i == 0 || i > sig.n_orth() {
                            return Err(perr(p, &format!("generator e{i} out of range")));
                        }
                        Ok(SuperElement::gen_orth(sig, i))
                    }
                    ("eg", Some(i)) => {
                        if i == 0 || i > 2 * sig.n_pairs() {
                            return Err(perr(p, &format!("generator eg{i} out of range")));
                        }
                        Ok(SuperElement::gen_symp(sig, i))
                    }
                    (n, Some(i)) => {
                        let (bname, ferm) = match n.strip_suffix('g') {
                            Some(b) => (b, true),
                            None => (n, false),
                        };
                        let b = sig.block_id(bname).map_err(|_| perr(p, &format!("unknown variable '{n}{i}'")))?;
                        let blk = sig.block(b);
                        let lim = if ferm { 2 * blk.n } else { blk.m };
                        if i == 0 || i > lim {
                            return Err(perr(p, &format!("variable '{n}{i}' out of range")));
                        }
                        Ok(if ferm { SuperElement::fvar(sig, b, i) } else { SuperElement::var(sig, b, i) })
                    }
                    (n, None) => Err(perr(p, &format!("unknown identifier '{n}'"))),
                }
            }
        }
    }
}

/// Parses an expression over `sig`.
pub fn parse(sig: &Sig, s: &str) -> Result<SuperElement> {
    let toks = lex(s)?;
    let mut p = Parser { sig, toks, i: 0, end: s.len() };
    if p.toks.is_empty() {
        return Err(perr(0, "empty expression"));
    }
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return Err(perr(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}
