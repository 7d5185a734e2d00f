//! Text format for shifting-rule systems.
//!
//! ```text
//! # comments run to the end of the line
//! p = 3
//! n = 4
//! alpha0 a = 1
//! alpha0 b = -1
//! 9 S(a) = b + λ_1 b + 9 Δ
//! 9 S(b) = λ_2 a + λ_1 a - 9 λ_2 Δ
//! r(c, a) = 1 + 33z + 2z r(c, b)      # a relation used as-is
//! target r(a, b)
//! ```
//!
//! `λ_i` may be written `l_i` or `lambda_i`, `Δ` as `Delta`, and `R^j(g)`
//! reflects a generator. Products may be written with `*` or by
//! juxtaposition. Generators are any other identifiers; each needs an
//! `alpha0` line giving `α(g_0)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::solver::{fss_from_r, LinearForm, PairKey, RuleSystem};
use super::symbolic::{Generator, GeneratorTable, ShiftingRule, SymbolicSequence};
use crate::error::{Error, Result};
use crate::exact::rational::big;
use crate::exact::{Rational, RationalFunction, RationalSeries};
use crate::primes::require_prime;
use crate::repring::GammaElement;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Lambda(usize),
    Delta,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Open,
    Close,
    Comma,
    Eq,
}

/// Index of a leading `λ_i`, `l_i` or `lambda_i` in `word`, and the number
/// of chars it spans when more text follows (0 when it is the whole word).
fn split_lambda(word: &str) -> Option<(usize, usize)> {
    let (pre, rest) = ["lambda", "λ", "l"]
        .iter()
        .find_map(|pre| word.strip_prefix(pre).map(|r| (*pre, r)))?;
    let under = rest.starts_with('_');
    let body = rest.strip_prefix('_').unwrap_or(rest);
    let digits: String = body.chars().take_while(|c| c.is_ascii_digit()).collect();
    if digits.is_empty() {
        return None;
    }
    let k = digits.parse().ok()?;
    if digits.len() == body.len() {
        return Some((k, 0));
    }
    // trailing text only splits off after an explicit underscore
    if !under {
        return None;
    }
    Some((k, pre.chars().count() + 1 + digits.len()))
}

fn tokenize(line: usize, text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '#' => break,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '−' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '·' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' | '[' => {
                out.push(Tok::Open);
                i += 1
            }
            ')' | ']' => {
                out.push(Tok::Close);
                i += 1
            }
            ',' => {
                out.push(Tok::Comma);
                i += 1
            }
            '=' => {
                out.push(Tok::Eq);
                i += 1
            }
            'Δ' => {
                out.push(Tok::Delta);
                i += 1
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Tok::Num(s.parse().expect("digits")));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                match split_lambda(&word) {
                    _ if word == "Delta" => out.push(Tok::Delta),
                    Some((k, 0)) => out.push(Tok::Lambda(k)),
                    // `λ_1b` is `λ_1` times `b`
                    Some((k, used)) => {
                        out.push(Tok::Lambda(k));
                        i = start + used;
                    }
                    None => out.push(Tok::Ident(word)),
                }
            }
            other => return Err(Error::parse(line, format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Tok],
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, msg)
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        match self.next() {
            Some(x) if *x == t => Ok(()),
            other => Err(self.err(format!("expected {t:?}, found {other:?}"))),
        }
    }

    fn done(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.err(format!("unexpected trailing {t:?}"))),
        }
    }

    fn integer(&mut self) -> Result<u32> {
        match self.next() {
            Some(Tok::Num(k)) => k.to_u32().ok_or_else(|| self.err("exponent too large")),
            other => Err(self.err(format!("expected an integer, found {other:?}"))),
        }
    }

    /// `R^j( … )` wrapping a generator monomial such as `a`, `g^2` or `a*b`.
    fn generator(&mut self) -> Result<(Generator, u8)> {
        if let Some(Tok::Ident(w)) = self.peek() {
            if w == "R" {
                self.pos += 1;
                let j = if self.peek() == Some(&Tok::Caret) {
                    self.pos += 1;
                    self.integer()?
                } else {
                    1
                };
                self.expect(Tok::Open)?;
                let (g, k) = self.generator()?;
                self.expect(Tok::Close)?;
                return Ok((g, ((k as u32 + j) % 2) as u8));
            }
        }
        let mut acc: Option<Generator> = None;
        while let Some(Tok::Ident(name)) = self.peek() {
            if is_reserved(name) {
                break;
            }
            self.pos += 1;
            let mut g = Generator::named(name);
            if self.peek() == Some(&Tok::Caret) {
                self.pos += 1;
                g = g.pow(self.integer()?);
            }
            acc = Some(match acc {
                None => g,
                Some(a) => a.mul(&g),
            });
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
            }
        }
        acc.map(|g| (g, 0)).ok_or_else(|| self.err("expected a generator name"))
    }
}

fn is_reserved(name: &str) -> bool {
    matches!(name, "R" | "S" | "r" | "z" | "p" | "n" | "alpha0" | "target")
}

/// Values an expression can take; the grammar is shared.
trait Value: Sized {
    fn number(c: Rational, ctx: &Ctx) -> Self;
    fn atom(cur: &mut Cursor, ctx: &Ctx) -> Result<Self>;
    fn add(self, other: Self, cur: &Cursor) -> Result<Self>;
    fn neg(self) -> Self;
    fn mul(self, other: Self, cur: &Cursor, ctx: &Ctx) -> Result<Self>;
    fn div(self, other: Self, cur: &Cursor) -> Result<Self>;
    fn pow(self, k: u32, cur: &Cursor, ctx: &Ctx) -> Result<Self>;
}

struct Ctx {
    p: u64,
    table: GeneratorTable,
}

fn starts_primary(t: Option<&Tok>) -> bool {
    matches!(t, Some(Tok::Num(_) | Tok::Ident(_) | Tok::Lambda(_) | Tok::Delta | Tok::Open))
}

fn expr<V: Value>(cur: &mut Cursor, ctx: &Ctx) -> Result<V> {
    let mut negate = false;
    match cur.peek() {
        Some(Tok::Minus) => {
            cur.pos += 1;
            negate = true;
        }
        Some(Tok::Plus) => cur.pos += 1,
        _ => {}
    }
    let mut acc: V = term(cur, ctx)?;
    if negate {
        acc = acc.neg();
    }
    loop {
        match cur.peek() {
            Some(Tok::Plus) => {
                cur.pos += 1;
                let t = term(cur, ctx)?;
                acc = acc.add(t, cur)?;
            }
            Some(Tok::Minus) => {
                cur.pos += 1;
                let t: V = term(cur, ctx)?;
                acc = acc.add(t.neg(), cur)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn term<V: Value>(cur: &mut Cursor, ctx: &Ctx) -> Result<V> {
    let mut acc: V = power(cur, ctx)?;
    loop {
        match cur.peek() {
            Some(Tok::Star) => {
                cur.pos += 1;
                let f = power(cur, ctx)?;
                acc = acc.mul(f, cur, ctx)?;
            }
            Some(Tok::Slash) => {
                cur.pos += 1;
                let f = power(cur, ctx)?;
                acc = acc.div(f, cur)?;
            }
            t if starts_primary(t) => {
                let f = power(cur, ctx)?;
                acc = acc.mul(f, cur, ctx)?;
            }
            _ => return Ok(acc),
        }
    }
}

fn power<V: Value>(cur: &mut Cursor, ctx: &Ctx) -> Result<V> {
    let base: V = primary(cur, ctx)?;
    if cur.peek() == Some(&Tok::Caret) {
        cur.pos += 1;
        let k = cur.integer()?;
        return base.pow(k, cur, ctx);
    }
    Ok(base)
}

fn primary<V: Value>(cur: &mut Cursor, ctx: &Ctx) -> Result<V> {
    match cur.peek() {
        Some(Tok::Num(k)) => {
            cur.pos += 1;
            Ok(V::number(big(k.clone()), ctx))
        }
        Some(Tok::Open) => {
            cur.pos += 1;
            let v = expr(cur, ctx)?;
            cur.expect(Tok::Close)?;
            Ok(v)
        }
        Some(_) => V::atom(cur, ctx),
        None => Err(cur.err("unexpected end of line")),
    }
}

/// A Γ-scalar or an element of Λ.
enum SeqValue {
    Scalar(GammaElement),
    Seq(SymbolicSequence),
}

impl SeqValue {
    fn constant(&self) -> Option<Rational> {
        match self {
            SeqValue::Scalar(w) if w.terms().all(|(i, _)| i == 0) => Some(w.alpha()),
            _ => None,
        }
    }
}

impl Value for SeqValue {
    fn number(c: Rational, ctx: &Ctx) -> Self {
        SeqValue::Scalar(GammaElement::scalar(ctx.p, c))
    }

    fn atom(cur: &mut Cursor, ctx: &Ctx) -> Result<Self> {
        match cur.peek() {
            Some(Tok::Lambda(i)) => {
                cur.pos += 1;
                Ok(SeqValue::Scalar(GammaElement::lambda(ctx.p, *i)))
            }
            Some(Tok::Delta) => {
                cur.pos += 1;
                Ok(SeqValue::Seq(SymbolicSequence::delta(ctx.p)))
            }
            Some(Tok::Ident(w)) if w == "R" || !is_reserved(w) => {
                // a single generator factor; products come from the grammar
                if w == "R" {
                    let (g, j) = cur.generator()?;
                    return Ok(SeqValue::Seq(SymbolicSequence::generator(ctx.p, g, j)));
                }
                cur.pos += 1;
                Ok(SeqValue::Seq(SymbolicSequence::generator(ctx.p, Generator::named(w), 0)))
            }
            other => Err(cur.err(format!("unexpected {other:?} in a rule"))),
        }
    }

    fn add(self, other: Self, cur: &Cursor) -> Result<Self> {
        match (self, other) {
            (SeqValue::Scalar(a), SeqValue::Scalar(b)) => Ok(SeqValue::Scalar(&a + &b)),
            (SeqValue::Seq(a), SeqValue::Seq(b)) => Ok(SeqValue::Seq(a.add(&b)?)),
            _ => Err(cur.err("cannot add a Γ-scalar to a sequence")),
        }
    }

    fn neg(self) -> Self {
        match self {
            SeqValue::Scalar(a) => SeqValue::Scalar(-&a),
            SeqValue::Seq(a) => SeqValue::Seq(a.neg()),
        }
    }

    fn mul(self, other: Self, _cur: &Cursor, ctx: &Ctx) -> Result<Self> {
        Ok(match (self, other) {
            (SeqValue::Scalar(a), SeqValue::Scalar(b)) => SeqValue::Scalar(&a * &b),
            (SeqValue::Scalar(w), SeqValue::Seq(s)) | (SeqValue::Seq(s), SeqValue::Scalar(w)) => {
                SeqValue::Seq(s.scalar_mul(&w)?)
            }
            (SeqValue::Seq(a), SeqValue::Seq(b)) => SeqValue::Seq(a.mul(&b, &ctx.table)?),
        })
    }

    fn div(self, other: Self, cur: &Cursor) -> Result<Self> {
        let c = other.constant().ok_or_else(|| cur.err("can only divide by a rational number"))?;
        if c.is_zero() {
            return Err(cur.err("division by zero"));
        }
        let inv = Rational::one() / c;
        Ok(match self {
            SeqValue::Scalar(a) => SeqValue::Scalar(a.scale(&inv)),
            SeqValue::Seq(a) => SeqValue::Seq(a.scale(&inv)),
        })
    }

    fn pow(self, k: u32, cur: &Cursor, ctx: &Ctx) -> Result<Self> {
        match self {
            SeqValue::Scalar(a) => Ok(SeqValue::Scalar(a.pow(k))),
            SeqValue::Seq(a) if k >= 1 => Ok(SeqValue::Seq(a.pow(k, &ctx.table)?)),
            SeqValue::Seq(_) => Err(cur.err("sequence powers start at 1")),
        }
    }
}

impl Value for LinearForm {
    fn number(c: Rational, _ctx: &Ctx) -> Self {
        LinearForm::constant(RationalFunction::constant(c))
    }

    fn atom(cur: &mut Cursor, _ctx: &Ctx) -> Result<Self> {
        match cur.next() {
            Some(Tok::Ident(w)) if w == "z" => Ok(LinearForm::constant(RationalFunction::z())),
            Some(Tok::Ident(w)) if w == "r" => {
                cur.expect(Tok::Open)?;
                let (a, i) = cur.generator()?;
                cur.expect(Tok::Comma)?;
                let (b, j) = cur.generator()?;
                cur.expect(Tok::Close)?;
                Ok(LinearForm::unknown(PairKey::new(a, b, i + j)))
            }
            other => Err(cur.err(format!("unexpected {other:?} in a relation"))),
        }
    }

    fn add(self, other: Self, _cur: &Cursor) -> Result<Self> {
        Ok(LinearForm::add(&self, &other))
    }

    fn neg(self) -> Self {
        self.scale(&RationalFunction::constant(-Rational::one()))
    }

    fn mul(self, other: Self, cur: &Cursor, _ctx: &Ctx) -> Result<Self> {
        if other.is_constant() {
            Ok(self.scale(&other.constant))
        } else if self.is_constant() {
            Ok(other.scale(&self.constant))
        } else {
            Err(cur.err("product of two unknowns is not linear"))
        }
    }

    fn div(self, other: Self, cur: &Cursor) -> Result<Self> {
        if !other.is_constant() {
            return Err(cur.err("cannot divide by an unknown"));
        }
        Ok(self.scale(&other.constant.inv().map_err(|_| cur.err("division by zero"))?))
    }

    fn pow(self, k: u32, cur: &Cursor, _ctx: &Ctx) -> Result<Self> {
        if !self.is_constant() {
            return Err(cur.err("cannot raise an unknown to a power"));
        }
        Ok(LinearForm::constant(self.constant.pow(k)))
    }
}

/// A parsed rule file.
#[derive(Clone, Debug)]
pub struct RuleFile {
    pub system: RuleSystem,
    pub rules: Vec<ShiftingRule>,
    pub target: PairKey,
}

impl RuleFile {
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, Vec<Tok>)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| tokenize(i + 1, l).map(|t| (i + 1, t)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|(_, t)| !t.is_empty())
            .collect();

        // first pass: p, n and alpha0 declarations
        let mut p: Option<u64> = None;
        let mut n: Option<u32> = None;
        let mut alpha0: BTreeMap<Generator, Rational> = BTreeMap::new();
        for (line, toks) in &lines {
            let mut cur = Cursor { toks, pos: 0, line: *line };
            match toks.first() {
                Some(Tok::Ident(w)) if w == "p" || w == "n" => {
                    cur.pos = 1;
                    if cur.peek() == Some(&Tok::Eq) {
                        cur.pos += 1;
                    }
                    let v = cur.integer()?;
                    cur.done()?;
                    if w == "p" {
                        p = Some(v as u64);
                    } else {
                        n = Some(v);
                    }
                }
                Some(Tok::Ident(w)) if w == "alpha0" => {
                    cur.pos = 1;
                    let paren = cur.peek() == Some(&Tok::Open);
                    if paren {
                        cur.pos += 1;
                    }
                    let (g, j) = cur.generator()?;
                    if j != 0 {
                        return Err(cur.err("alpha0 is declared for unreflected generators"));
                    }
                    if paren {
                        cur.expect(Tok::Close)?;
                    }
                    cur.expect(Tok::Eq)?;
                    let ctx = Ctx { p: 3, table: GeneratorTable::new() };
                    let v: LinearForm = expr(&mut cur, &ctx)?;
                    cur.done()?;
                    let c = constant_rational(&v).ok_or_else(|| cur.err("alpha0 must be a rational number"))?;
                    alpha0.insert(g, c);
                }
                _ => {}
            }
        }
        let p = p.ok_or_else(|| Error::parse(0, "missing `p = …` line"))?;
        require_prime(p)?;
        let n = n.ok_or_else(|| Error::parse(0, "missing `n = …` line"))?;
        let mut system = RuleSystem::new(p, n)?;
        let mut table = GeneratorTable::new();
        for (g, a) in &alpha0 {
            table.insert(g.clone(), a.clone());
            system.declare_alpha0(g.clone(), a.clone());
        }
        let ctx = Ctx { p, table };

        let mut rules = Vec::new();
        let mut target = None;
        for (line, toks) in &lines {
            let mut cur = Cursor { toks, pos: 0, line: *line };
            match toks.first() {
                Some(Tok::Ident(w)) if matches!(w.as_str(), "p" | "n" | "alpha0") => {}
                Some(Tok::Ident(w)) if w == "target" => {
                    cur.pos = 1;
                    let v: LinearForm = expr(&mut cur, &ctx)?;
                    cur.done()?;
                    target = Some(single_unknown(&v).ok_or_else(|| cur.err("target must be r(x, y)"))?);
                }
                Some(Tok::Ident(w)) if w == "r" => {
                    let lhs: LinearForm = expr(&mut cur, &ctx)?;
                    let key = single_unknown(&lhs).ok_or_else(|| cur.err("relation must start with r(x, y) ="))?;
                    cur.expect(Tok::Eq)?;
                    let rhs: LinearForm = expr(&mut cur, &ctx)?;
                    cur.done()?;
                    system.add_relation(key, rhs);
                }
                _ => {
                    let rule = parse_rule(&mut cur, &ctx, &alpha0)?;
                    system.add_rule(&rule)?;
                    rules.push(rule);
                }
            }
        }
        let target = target.ok_or_else(|| Error::parse(0, "missing `target r(x, y)` line"))?;
        Ok(RuleFile { system, rules, target })
    }

    pub fn p(&self) -> u64 {
        self.system.p()
    }

    pub fn n(&self) -> u32 {
        self.system.n()
    }

    /// `r_n` at the target pair.
    pub fn solve_r(&self) -> Result<RationalFunction> {
        self.system.solve(&self.target.left, &self.target.right, self.target.parity)
    }

    /// `FSS(z) = r_n/(p^{n-1} z - 1)` at the target pair.
    pub fn fss(&self) -> Result<RationalSeries> {
        fss_from_r(self.p(), self.n(), &self.solve_r()?)
    }
}

fn constant_rational(v: &LinearForm) -> Option<Rational> {
    let c = &v.constant;
    (v.is_constant() && c.denom().degree() == Some(0) && c.numer().degree().unwrap_or(0) == 0)
        .then(|| c.numer().coeff(0))
}

fn single_unknown(v: &LinearForm) -> Option<PairKey> {
    if !v.constant.is_zero() || v.coeffs.len() != 1 {
        return None;
    }
    let (k, c) = v.coeffs.iter().next()?;
    (*c == RationalFunction::one()).then(|| k.clone())
}

/// `<p^m> S(<generator>) = <sequence>`
fn parse_rule(
    cur: &mut Cursor,
    ctx: &Ctx,
    alpha0: &BTreeMap<Generator, Rational>,
) -> Result<ShiftingRule> {
    let mut scale = BigInt::one();
    loop {
        match cur.next() {
            Some(Tok::Num(k)) => {
                let mut base = k.clone();
                if cur.peek() == Some(&Tok::Caret) {
                    cur.pos += 1;
                    base = num_traits::pow(base, cur.integer()? as usize);
                }
                scale *= base;
            }
            Some(Tok::Ident(w)) if w == "p" => {
                let mut base = BigInt::from(ctx.p);
                if cur.peek() == Some(&Tok::Caret) {
                    cur.pos += 1;
                    base = num_traits::pow(base, cur.integer()? as usize);
                }
                scale *= base;
            }
            Some(Tok::Star) => {}
            Some(Tok::Ident(w)) if w == "S" => break,
            other => return Err(cur.err(format!("expected `p^m S(g) = …`, found {other:?}"))),
        }
    }
    let m = power_of(&scale, ctx.p).ok_or_else(|| cur.err(format!("scale {scale} is not a power of p = {}", ctx.p)))?;
    cur.expect(Tok::Open)?;
    let (g, parity) = cur.generator()?;
    cur.expect(Tok::Close)?;
    cur.expect(Tok::Eq)?;
    let rhs = match expr::<SeqValue>(cur, ctx)? {
        SeqValue::Seq(s) => s,
        SeqValue::Scalar(w) if w.is_zero() => SymbolicSequence::zero(ctx.p),
        SeqValue::Scalar(_) => return Err(cur.err("right side of a rule must be a sequence")),
    };
    cur.done()?;
    let a0 = alpha0
        .get(&g)
        .cloned()
        .ok_or_else(|| cur.err(format!("no alpha0 declared for generator {g}")))?;
    ShiftingRule::new(g, parity, m, rhs, a0)
}

fn power_of(x: &BigInt, p: u64) -> Option<u32> {
    let mut x = x.clone();
    let p = BigInt::from(p);
    let mut m = 0;
    if !x.is_positive() {
        return None;
    }
    while x > BigInt::one() {
        if !(&x % &p).is_zero() {
            return None;
        }
        x /= &p;
        m += 1;
    }
    Some(m)
}
