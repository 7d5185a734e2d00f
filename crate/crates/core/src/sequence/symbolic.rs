use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::truncated::TruncatedSequence;
use crate::error::{Error, Result};
use crate::exact::rational::{int, pow_big, pow_rat, sign};
use crate::exact::{format_rational, Rational};
use crate::primes::require_prime;
use crate::repring::GammaElement;

/// A product of named generators, such as `g^3` or `a*b`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(BTreeMap<String, u32>);

impl Generator {
    pub fn named(name: &str) -> Self {
        Generator(BTreeMap::from([(name.to_string(), 1)]))
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, u32)> {
        self.0.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.0.clone();
        for (k, v) in &other.0 {
            *out.entry(k.clone()).or_default() += v;
        }
        Generator(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        Generator(self.0.iter().map(|(n, e)| (n.clone(), e * k)).collect())
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Values `α(g_0)` for generators, keyed by monomial. A monomial without its
/// own entry gets the product over its factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorTable(BTreeMap<Generator, Rational>);

impl GeneratorTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, g: Generator, alpha0: Rational) {
        self.0.insert(g, alpha0);
    }

    pub fn alpha0(&self, g: &Generator) -> Result<Rational> {
        if let Some(a) = self.0.get(g) {
            return Ok(a.clone());
        }
        g.factors().try_fold(Rational::one(), |acc, (name, e)| {
            let a = self.0.get(&Generator::named(name)).ok_or_else(|| {
                Error::InvalidInput(format!("no alpha0 declared for generator {name}"))
            })?;
            Ok(acc * pow_rat(a, e))
        })
    }

    pub fn merge(&mut self, other: &GeneratorTable) {
        for (g, a) in &other.0 {
            self.0.insert(g.clone(), a.clone());
        }
    }
}

/// An element `Σ w_k R^{j_k}(g_k) + w_Δ Δ` of Λ with coefficients `w` in Γ
/// acting through θ. Reflections are kept mod 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicSequence {
    p: u64,
    terms: BTreeMap<(Generator, u8), GammaElement>,
    delta: GammaElement,
}

impl SymbolicSequence {
    pub fn zero(p: u64) -> Self {
        SymbolicSequence { p, terms: BTreeMap::new(), delta: GammaElement::zero(p) }
    }

    /// `R^parity(g)`
    pub fn generator(p: u64, g: Generator, parity: u8) -> Self {
        let mut s = Self::zero(p);
        s.terms.insert((g, parity % 2), GammaElement::one(p));
        s
    }

    pub fn delta(p: u64) -> Self {
        SymbolicSequence { p, terms: BTreeMap::new(), delta: GammaElement::one(p) }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `(generator, parity, coefficient)` for each generator term.
    pub fn terms(&self) -> impl Iterator<Item = (&Generator, u8, &GammaElement)> {
        self.terms.iter().map(|((g, j), w)| (g, *j, w))
    }

    /// The Γ-coefficient of Δ.
    pub fn delta_coeff(&self) -> &GammaElement {
        &self.delta
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.delta.is_zero()
    }

    fn check_p(&self, q: u64) -> Result<()> {
        if self.p != q {
            return Err(Error::CharacteristicMismatch(self.p, q));
        }
        Ok(())
    }

    fn push(&mut self, g: Generator, parity: u8, w: GammaElement) {
        let key = (g, parity % 2);
        let slot = self.terms.entry(key.clone()).or_insert_with(|| GammaElement::zero(self.p));
        *slot = &*slot + &w;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_p(other.p)?;
        let mut out = self.clone();
        for ((g, j), w) in &other.terms {
            out.push(g.clone(), *j, w.clone());
        }
        out.delta = &out.delta + &other.delta;
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.p);
        for ((g, j), w) in &self.terms {
            out.push(g.clone(), *j, w.scale(c));
        }
        out.delta = self.delta.scale(c);
        out
    }

    /// The Γ-action `w·u`, which multiplies every coefficient by `w`.
    pub fn scalar_mul(&self, w: &GammaElement) -> Result<Self> {
        self.check_p(w.p())?;
        let mut out = Self::zero(self.p);
        for ((g, j), c) in &self.terms {
            out.push(g.clone(), *j, w * c);
        }
        out.delta = w * &self.delta;
        Ok(out)
    }

    /// `R` flips every parity and negates the Δ part, since `R(Δ) = -Δ`.
    pub fn reflect(&self) -> Self {
        let mut out = Self::zero(self.p);
        for ((g, j), w) in &self.terms {
            out.push(g.clone(), 1 - j, w.clone());
        }
        out.delta = -&self.delta;
        out
    }

    /// Product in Λ using `R^i(u) R^j(v) = R^{i+j}(uv)`,
    /// `R^i(g)·Δ = (-1)^i α(g_0) Δ` and `Δ·Δ = Δ`.
    pub fn mul(&self, other: &Self, table: &GeneratorTable) -> Result<Self> {
        self.check_p(other.p)?;
        let mut out = Self::zero(self.p);
        for ((g, i), w) in &self.terms {
            for ((h, j), v) in &other.terms {
                out.push(g.mul(h), i + j, w * v);
            }
            let a = sign(*i as usize) * table.alpha0(g)?;
            out.delta = &out.delta + &(w * &other.delta).scale(&a);
        }
        for ((h, j), v) in &other.terms {
            let a = sign(*j as usize) * table.alpha0(h)?;
            out.delta = &out.delta + &(&self.delta * v).scale(&a);
        }
        out.delta = &out.delta + &(&self.delta * &other.delta);
        Ok(out)
    }

    pub fn pow(&self, k: u32, table: &GeneratorTable) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("symbolic powers start at 1".into()));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self, table)?;
        }
        Ok(acc)
    }

    /// Largest λ-support among all coefficients.
    pub fn support_bound(&self) -> usize {
        self.terms
            .values()
            .chain(std::iter::once(&self.delta))
            .map(GammaElement::support_bound)
            .max()
            .unwrap_or(0)
    }

    /// Substitutes concrete sequences for the named generators.
    pub fn evaluate(
        &self,
        bindings: &BTreeMap<String, TruncatedSequence>,
        levels: u32,
    ) -> Result<TruncatedSequence> {
        let p = self.p;
        let mut acc = TruncatedSequence::delta(p, levels).scalar_mul(&self.delta)?;
        for ((g, j), w) in &self.terms {
            let mut seq: Option<TruncatedSequence> = None;
            for (name, e) in g.factors() {
                let base = bindings
                    .get(name)
                    .ok_or_else(|| Error::InvalidInput(format!("no sequence bound to {name}")))?
                    .truncate(levels);
                for _ in 0..e {
                    seq = Some(match seq {
                        None => base.clone(),
                        Some(s) => s.mul(&base)?,
                    });
                }
            }
            let mut seq = seq.expect("generators have at least one factor");
            if *j == 1 {
                seq = seq.reflect();
            }
            acc = acc.add(&seq.scalar_mul(w)?)?;
        }
        Ok(acc)
    }
}

fn coeff_str(w: &GammaElement) -> String {
    let single = w.terms().count() == 1;
    match (single, w.terms().next()) {
        (true, Some((0, c))) if c.is_one() => String::new(),
        (true, Some((0, c))) if c.is_integer() => format_rational(c),
        (true, _) => w.render(),
        _ => format!("({})", w.render()),
    }
}

impl fmt::Display for SymbolicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .terms
            .iter()
            .map(|((g, j), w)| {
                let gen = if *j == 1 { format!("R({g})") } else { g.to_string() };
                let c = coeff_str(w);
                if c.is_empty() {
                    gen
                } else {
                    format!("{c} {gen}")
                }
            })
            .collect();
        if !self.delta.is_zero() {
            let c = coeff_str(&self.delta);
            parts.push(if c.is_empty() { "Δ".into() } else { format!("{c} Δ") });
        }
        if parts.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&parts.join(" + "))
    }
}

/// `p^m S(R^parity(g)) = rhs`, together with `α(g_0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftingRule {
    generator: Generator,
    parity: u8,
    scale_exp: u32,
    rhs: SymbolicSequence,
    alpha0: Rational,
}

impl ShiftingRule {
    pub fn new(
        generator: Generator,
        parity: u8,
        scale_exp: u32,
        rhs: SymbolicSequence,
        alpha0: Rational,
    ) -> Result<Self> {
        if rhs.support_bound() as u64 > rhs.p() {
            return Err(Error::SupportExceedsP(format!(
                "rule for {generator} has a coefficient supported up to λ_{}",
                rhs.support_bound() - 1
            )));
        }
        Ok(ShiftingRule { generator, parity: parity % 2, scale_exp, rhs, alpha0 })
    }

    pub fn p(&self) -> u64 {
        self.rhs.p()
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    /// 1 when the rule is stated for `R(g)` rather than `g`.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    /// The `m` in `p^m`.
    pub fn scale_exp(&self) -> u32 {
        self.scale_exp
    }

    pub fn rhs(&self) -> &SymbolicSequence {
        &self.rhs
    }

    /// `α(g_0)` of the unreflected generator.
    pub fn alpha0(&self) -> &Rational {
        &self.alpha0
    }

    pub fn table(&self) -> GeneratorTable {
        let mut t = GeneratorTable::new();
        t.insert(self.generator.clone(), self.alpha0.clone());
        t
    }

    /// The rule for `R` of the left side: `S(R(u)) = λ_{p-1} R(S(u))` for odd `p`.
    pub fn reflect(&self) -> Result<Self> {
        let p = self.p();
        if p == 2 {
            return Err(Error::Hypothesis("reflected shifting rules need p > 2".into()));
        }
        let rhs = self.rhs.reflect().scalar_mul(&GammaElement::lambda(p, p as usize - 1))?;
        Self::new(self.generator.clone(), 1 - self.parity, self.scale_exp, rhs, self.alpha0.clone())
    }

    /// The same rule stated for the unreflected generator.
    pub fn normalized(&self) -> Result<Self> {
        if self.parity == 0 {
            Ok(self.clone())
        } else {
            self.reflect()
        }
    }
}

impl fmt::Display for ShiftingRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let scale = pow_big(self.p(), self.scale_exp);
        let lhs = if self.parity == 1 {
            format!("R({})", self.generator)
        } else {
            self.generator.to_string()
        };
        write!(f, "{scale} S({lhs}) = {}", self.rhs)
    }
}

/// Rule for `u = ℒ(φ_{x^d,p})`, written with generator `u`:
/// `p S(u) = λ_M R^M(u) + d Σ_{i<M} (-1)^i λ_i Δ` when `p ≡ 1 (mod d)` and
/// `p S(u) = λ_M R^{M+1}(u) + d Σ_{i≤M} (-1)^i λ_i Δ` when `p ≡ -1 (mod d)`,
/// with `M = ⌊p/d⌋`.
pub fn diagonal_shift_rule(p: u64, d: u64) -> Result<ShiftingRule> {
    require_prime(p)?;
    if d < 2 || p <= d {
        return Err(Error::Hypothesis(format!("diagonal shifting rules need 2 ≤ d < p, got d = {d}, p = {p}")));
    }
    let m = (p / d) as usize;
    let (parity, last) = match p % d {
        1 => (m % 2, m),
        r if r == d - 1 => ((m + 1) % 2, m + 1),
        _ => return Err(Error::CongruenceUnsupported { p, d }),
    };
    let g = Generator::named("u");
    let mut rhs = SymbolicSequence::zero(p);
    rhs.push(g.clone(), parity as u8, GammaElement::lambda(p, m));
    rhs.delta = GammaElement::from_terms(p, (0..last).map(|i| (i, sign(i) * int(d as i64))));
    ShiftingRule::new(g, 0, 1, rhs, Rational::one())
}

/// The rule for `g^k` obtained by multiplying the rule for `g` with itself,
/// since `S` is multiplicative: `p^{mk} S(g^k) = rhs^k`.
pub fn rule_power(rule: &ShiftingRule, k: u32) -> Result<ShiftingRule> {
    if k == 0 {
        return Err(Error::InvalidInput("rule powers start at k = 1".into()));
    }
    let rhs = rule.rhs.pow(k, &rule.table())?;
    let alpha0 = pow_rat(&rule.alpha0, k);
    ShiftingRule::new(
        rule.generator.pow(k),
        ((rule.parity as u32 * k) % 2) as u8,
        rule.scale_exp * k,
        rhs,
        alpha0,
    )
}

impl SymbolicSequence {
    /// Coefficient of `R^parity(g)`.
    pub fn coeff(&self, g: &Generator, parity: u8) -> GammaElement {
        self.terms.get(&(g.clone(), parity % 2)).cloned().unwrap_or_else(|| GammaElement::zero(self.p))
    }
}

