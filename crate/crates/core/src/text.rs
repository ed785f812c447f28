//! Canonical text form of motives.
//!
//! Summands are written `c*L^(k/2) ⊙ [A] ⊙ Y(p+q)`, joined by ` + ` / ` - `, in the
//! order of the normal form. A motive that is exactly a declared order-2 cover is
//! written `[mu_2:Name]`, and `1 - L^(1/2)` is written `[mu_2]`. The parser accepts
//! everything the renderer produces plus parentheses and `^` powers.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{MotiveError, Result};
use crate::laurent::{render_l_power, HalfLaurent};
use crate::motive::{MonSymbol, Monomial, Motive};
use crate::registry::{Registry, SpaceId};
use crate::zbundle::BundleBits;

const RESERVED: &str = "[]():,+-*^⊙";

/// Names of symbols, spaces and bundle generators: non-empty, no whitespace,
/// no characters with syntactic meaning.
pub fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && !name.contains("::") && name.chars().all(|c| !c.is_whitespace() && !RESERVED.contains(c))
}

pub fn render_monomial(m: &Monomial) -> String {
    if m.is_one() {
        return "1".into();
    }
    m.factors()
        .map(|(s, e)| {
            if e == 1 {
                format!("[{}]", s.name)
            } else {
                format!("[{}]^{e}", s.name)
            }
        })
        .collect::<Vec<_>>()
        .join(" ⊙ ")
}

fn symbol_text(reg: Option<&Registry>, ambient: &SpaceId, s: &MonSymbol) -> String {
    let qualify = if s.is_builtin() || &s.space == ambient {
        false
    } else if s.space.is_point() {
        reg.is_none_or(|r| r.symbol(ambient, &s.name).is_ok())
    } else {
        true
    };
    if qualify {
        format!("[{}::{}]", s.space, s.name)
    } else {
        format!("[{}]", s.name)
    }
}

fn bits_text(reg: Option<&Registry>, space: &SpaceId, bits: BundleBits) -> String {
    let names: Vec<String> = match reg.and_then(|r| r.bundle_space(space.as_str()).ok()) {
        Some(bs) => bs.names_of(bits).into_iter().map(String::from).collect(),
        None => bits.ones().map(|i| format!("#{i}")).collect(),
    };
    format!("Y({})", names.join("+"))
}

/// One summand without its sign.
fn summand(
    reg: Option<&Registry>,
    ambient: &SpaceId,
    abs: &BigInt,
    half_exp: i64,
    mono: &Monomial,
    bits: BundleBits,
) -> String {
    let mut parts = vec![];
    let rest_empty = mono.is_one() && bits.is_zero();
    match render_l_power(half_exp) {
        None if !abs.is_one() || rest_empty => parts.push(abs.to_string()),
        None => {}
        Some(p) if abs.is_one() => parts.push(p),
        Some(p) => parts.push(format!("{abs}*{p}")),
    }
    for (s, e) in mono.factors() {
        let t = symbol_text(reg, ambient, s);
        parts.push(if e == 1 { t } else { format!("{t}^{e}") });
    }
    if !bits.is_zero() {
        parts.push(bits_text(reg, ambient, bits));
    }
    parts.join(" ⊙ ")
}

/// A single normal-form term, for diagnostics.
pub fn render_term(reg: &Registry, mono: &Monomial, bits: BundleBits, c: &HalfLaurent) -> String {
    let m = Motive::term(SpaceId::point(), mono.clone(), bits, c.clone());
    render_summands(Some(reg), &SpaceId::point(), &m)
}

fn render_summands(reg: Option<&Registry>, ambient: &SpaceId, m: &Motive) -> String {
    let mut out = String::new();
    for ((mono, bits), c) in m.terms() {
        for (k, v) in c.terms().rev() {
            let neg = v.is_negative();
            match (out.is_empty(), neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&summand(reg, ambient, &v.abs(), k, mono, *bits));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Splits `m` as `prefix ⊙ (1 - L^(1/2) ⊙ Y(p))` with a single-summand prefix.
fn factor_cover(m: &Motive) -> Option<(Motive, BundleBits)> {
    let mut flat = vec![];
    for ((mono, b), c) in m.terms() {
        for (k, v) in c.terms() {
            flat.push((mono, *b, k, v));
            if flat.len() > 2 {
                return None;
            }
        }
    }
    flat.sort_by_key(|t| t.2);
    match flat.as_slice() {
        [(m0, b0, k0, c0), (m1, b1, k1, c1)] if m0 == m1 && *k1 == k0 + 1 && **c1 == -*c0 => {
            let prefix = Motive::term(
                m.space().clone(),
                (*m0).clone(),
                *b0,
                HalfLaurent::monomial(*k0, (*c0).clone()),
            );
            Some((prefix, b0.tensor(*b1)))
        }
        _ => None,
    }
}

/// Canonical text of `m`, using the registry for generator and cover names.
pub fn render(reg: &Registry, m: &Motive) -> String {
    render_opt(Some(reg), m)
}

pub fn render_opt(reg: Option<&Registry>, m: &Motive) -> String {
    if let Some((prefix, bits)) = factor_cover(m) {
        let cover = if bits.is_zero() {
            Some("[mu_2]".to_string())
        } else {
            reg.and_then(|r| r.cover_with_class(m.space(), bits))
                .map(|info| format!("[mu_2:{}]", info.symbol.name))
        };
        if let Some(cover) = cover {
            return match render_summands(reg, m.space(), &prefix).as_str() {
                "1" => cover,
                "-1" => format!("-{cover}"),
                p => format!("{p} ⊙ {cover}"),
            };
        }
    }
    render_summands(reg, m.space(), m)
}

impl fmt::Display for Motive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_opt(None, self))
    }
}

/// Parses the text form of a motive over `space`.
pub fn parse_motive(reg: &Registry, space: &SpaceId, text: &str) -> Result<Motive> {
    reg.space(space.as_str())?;
    let mut p = Parser {
        reg,
        space,
        text,
        chars: text.char_indices().collect(),
        pos: 0,
    };
    let m = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(m)
}

struct Parser<'a> {
    reg: &'a Registry,
    space: &'a SpaceId,
    text: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> MotiveError {
        let at = self.chars.get(self.pos).map_or(self.text.len(), |c| c.0);
        MotiveError::Parse {
            text: self.text.to_string(),
            message: format!("{message} at byte {at}"),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek_raw().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
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
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn name(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() || RESERVED.contains(c) {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        Ok(self.chars[start..self.pos].iter().map(|c| c.1).collect())
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        Ok(s.parse().expect("digits"))
    }

    fn small(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let n: i64 = self
            .integer()?
            .try_into()
            .map_err(|_| self.error("exponent too large"))?;
        Ok(if neg { -n } else { n })
    }

    fn expr(&mut self) -> Result<Motive> {
        let mut acc = Motive::zero(self.space.clone());
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else if first || self.eat('+') {
                false
            } else {
                break;
            };
            let t = self.term()?;
            acc = if neg { acc.try_sub(&t)? } else { acc.try_add(&t)? };
            first = false;
            if !matches!(self.peek(), Some('+' | '-')) {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Motive> {
        let mut acc = self.factor()?;
        while self.eat('⊙') || self.eat('*') {
            acc = acc.odot(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Motive> {
        match self.peek() {
            Some('L') => {
                self.pos += 1;
                let half = if self.eat('^') { self.l_exponent()? } else { 2 };
                Ok(Motive::l_half(self.space.clone(), half))
            }
            Some('Y') if self.chars.get(self.pos + 1).is_some_and(|c| c.1 == '(') => {
                self.pos += 2;
                let bits = self.bundle_names()?;
                Ok(Motive::upsilon(self.space.clone(), bits))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let base = Motive::integer(self.space.clone(), n);
                self.power(base)
            }
            Some('[') => {
                self.pos += 1;
                let base = self.bracket()?;
                self.power(base)
            }
            Some('(') => {
                self.pos += 1;
                let base = self.expr()?;
                self.expect(')')?;
                self.power(base)
            }
            _ => Err(self.error("expected a factor")),
        }
    }

    fn power(&mut self, base: Motive) -> Result<Motive> {
        if !self.eat('^') {
            return Ok(base);
        }
        let n = self.integer()?;
        let n: u32 = n.try_into().map_err(|_| self.error("power too large"))?;
        let mut acc = Motive::one(self.space.clone());
        for _ in 0..n {
            acc = acc.odot(&base)?;
        }
        Ok(acc)
    }

    /// `n`, `-n`, `(n)`, `(n/2)` or `(-n/2)`, returned in half units.
    fn l_exponent(&mut self) -> Result<i64> {
        if self.eat('(') {
            let n = self.small()?;
            let half = if self.eat('/') {
                let d = self.integer()?;
                if d != BigInt::from(2) {
                    return Err(self.error("only halves are allowed as fractional exponents"));
                }
                n
            } else {
                2 * n
            };
            self.expect(')')?;
            Ok(half)
        } else {
            Ok(2 * self.small()?)
        }
    }

    fn bundle_names(&mut self) -> Result<BundleBits> {
        let bs = self.reg.bundle_space(self.space.as_str())?;
        let mut bits = BundleBits::ZERO;
        if self.eat(')') {
            return Ok(bits);
        }
        loop {
            if self.peek() == Some('0') {
                self.pos += 1;
            } else {
                let n = self.name()?;
                bits = bits.tensor(bs.class_of(&[n])?.bits);
            }
            if self.eat(')') {
                return Ok(bits);
            }
            if !(self.eat('+') || self.eat(',')) {
                return Err(self.error("expected `+`, `,` or `)`"));
            }
        }
    }

    fn bracket(&mut self) -> Result<Motive> {
        let first = self.name()?;
        let out = if self.peek_raw() == Some(':') && self.chars.get(self.pos + 1).is_some_and(|c| c.1 == ':') {
            self.pos += 2;
            let name = self.name()?;
            self.qualified(&first, &name)?
        } else if self.eat(':') {
            let name = self.name()?;
            if first != "mu_2" {
                return Err(self.error("only `mu_2:` introduces a named cover"));
            }
            let info = self
                .reg
                .symbol(self.space, &name)?
                .filter(|i| i.cover.is_some())
                .ok_or_else(|| MotiveError::unknown("cover", format!("{}.{name}", self.space)))?;
            Motive::cover(self.space.clone(), info.cover.expect("checked"))
        } else {
            self.resolve(&first)?
        };
        self.expect(']')?;
        Ok(out)
    }

    fn qualified(&self, space: &str, name: &str) -> Result<Motive> {
        let sid = self.reg.space_id(space)?;
        if &sid == self.space {
            return self.resolve(name);
        }
        let info = self
            .reg
            .symbol(&sid, name)?
            .ok_or_else(|| MotiveError::unknown("symbol", name))?;
        if info.cover.is_some() {
            return Err(MotiveError::InvalidDeclaration(format!(
                "cover {space}.{name} cannot be used over {}",
                self.space
            )));
        }
        Ok(Motive::term(
            self.space.clone(),
            Monomial::symbol(info.symbol.clone()),
            BundleBits::ZERO,
            HalfLaurent::one(),
        ))
    }

    fn resolve(&self, name: &str) -> Result<Motive> {
        if let Ok(m) = self.reg.symbol_motive(self.space, name) {
            return Ok(m);
        }
        for s in self.reg.related_spaces(self.space).iter().filter(|s| *s != self.space) {
            if let Ok(Some(info)) = self.reg.symbol(s, name) {
                if info.cover.is_none() {
                    return self.qualified(s.as_str(), name);
                }
            }
        }
        if self.reg.space(name).is_ok() {
            let sym = MonSymbol::new(name, self.space.clone(), 1);
            return Ok(Motive::symbol(sym));
        }
        Err(MotiveError::unknown("symbol", format!("{}.{name}", self.space)))
    }
}
