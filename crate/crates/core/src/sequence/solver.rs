use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::rational::{big, pow_big, sign};
use crate::exact::{Polynomial, Rational, RationalFunction, RationalSeries};

use super::symbolic::{Generator, GeneratorTable, ShiftingRule, SymbolicSequence};

/// The unknown `r_n(g, R^parity(h))`. Stored with `g ≤ h` because
/// `r_n` is symmetric and `r_n(R g, h) = r_n(g, R h)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairKey {
    pub left: Generator,
    pub right: Generator,
    pub parity: u8,
}

impl PairKey {
    pub fn new(a: Generator, b: Generator, parity: u8) -> Self {
        let (left, right) = if a <= b { (a, b) } else { (b, a) };
        PairKey { left, right, parity: parity % 2 }
    }
}

impl fmt::Display for PairKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parity == 1 {
            write!(f, "r({}, R({}))", self.left, self.right)
        } else {
            write!(f, "r({}, {})", self.left, self.right)
        }
    }
}

/// `constant + Σ coeff·X_key` over ℚ(z).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearForm {
    pub constant: RationalFunction,
    pub coeffs: BTreeMap<PairKey, RationalFunction>,
}

impl LinearForm {
    pub fn constant(c: RationalFunction) -> Self {
        LinearForm { constant: c, coeffs: BTreeMap::new() }
    }

    pub fn unknown(key: PairKey) -> Self {
        LinearForm {
            constant: RationalFunction::zero(),
            coeffs: BTreeMap::from([(key, RationalFunction::one())]),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.constant = &out.constant + &other.constant;
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn add_term(&mut self, key: PairKey, c: RationalFunction) {
        let slot = self.coeffs.entry(key.clone()).or_insert_with(RationalFunction::zero);
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        let mut out = LinearForm::constant(&self.constant * c);
        for (k, v) in &self.coeffs {
            out.add_term(k.clone(), v * c);
        }
        out
    }
}

/// Shifting rules, relations between unknowns and `α(g_0)` values for one
/// characteristic and one ambient dimension `n`.
#[derive(Clone, Debug)]
pub struct RuleSystem {
    p: u64,
    n: u32,
    rules: BTreeMap<Generator, ShiftingRule>,
    table: GeneratorTable,
    relations: BTreeMap<PairKey, LinearForm>,
}

impl RuleSystem {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("r_n needs n ≥ 2, got {n}")));
        }
        if p == 2 {
            return Err(Error::Hypothesis("the shifting-rule solver needs p > 2".into()));
        }
        Ok(RuleSystem {
            p,
            n,
            rules: BTreeMap::new(),
            table: GeneratorTable::new(),
            relations: BTreeMap::new(),
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Adds a rule, restated for the unreflected generator if needed.
    pub fn add_rule(&mut self, rule: &ShiftingRule) -> Result<()> {
        if rule.p() != self.p {
            return Err(Error::CharacteristicMismatch(self.p, rule.p()));
        }
        let rule = rule.normalized()?;
        self.table.insert(rule.generator().clone(), rule.alpha0().clone());
        self.rules.insert(rule.generator().clone(), rule);
        Ok(())
    }

    pub fn declare_alpha0(&mut self, g: Generator, alpha0: Rational) {
        self.table.insert(g, alpha0);
    }

    /// `r_n(g, R^parity h) = form`, used instead of a rule expansion.
    pub fn add_relation(&mut self, key: PairKey, form: LinearForm) {
        self.relations.insert(key, form);
    }

    pub fn table(&self) -> &GeneratorTable {
        &self.table
    }

    fn rule_for(&self, g: &Generator, parity: u8) -> Result<ShiftingRule> {
        let rule = self
            .rules
            .get(g)
            .ok_or_else(|| Error::InvalidInput(format!("no shifting rule for generator {g}")))?;
        if parity == 1 {
            rule.reflect()
        } else {
            Ok(rule.clone())
        }
    }

    /// `r_n(a, b)` for symbolic sequences whose coefficients are supported
    /// below `p`, as a linear form in the unknowns.
    pub fn pairing(&self, a: &SymbolicSequence, b: &SymbolicSequence) -> Result<LinearForm> {
        let p = self.p as usize;
        for s in [a, b] {
            if s.support_bound() > p {
                return Err(Error::SupportExceedsP(format!(
                    "coefficient supported up to λ_{} in {s}",
                    s.support_bound() - 1
                )));
            }
        }
        let mut out = LinearForm::default();
        let mut constant = Rational::from_integer(0.into());
        for (g, i, w) in a.terms() {
            for (h, j, v) in b.terms() {
                let c = w.pairing(v);
                if c != Rational::from_integer(0.into()) {
                    out.add_term(PairKey::new(g.clone(), h.clone(), i + j), RationalFunction::constant(c));
                }
            }
            constant += w.pairing(b.delta_coeff()) * sign(i as usize) * self.table.alpha0(g)?;
        }
        for (h, j, v) in b.terms() {
            constant += a.delta_coeff().pairing(v) * sign(j as usize) * self.table.alpha0(h)?;
        }
        constant += a.delta_coeff().pairing(b.delta_coeff());
        out.constant = RationalFunction::constant(constant);
        Ok(out)
    }

    /// `X = (1 - p^{n-1} z)(-1)^par α(g_0) α(h_0) + p^{n - m_g - m_h} z r_n(rhs_g, rhs_{R^par h})`,
    /// returned as the right-hand side.
    fn rule_equation(&self, key: &PairKey) -> Result<LinearForm> {
        let rg = self.rule_for(&key.left, 0)?;
        let rh = self.rule_for(&key.right, key.parity)?;
        let a0 = sign(key.parity as usize) * self.table.alpha0(&key.left)? * self.table.alpha0(&key.right)?;
        let pn1 = big(pow_big(self.p, self.n - 1));
        let head = RationalFunction::poly(Polynomial::one_minus(pn1)).scale_const(&a0);
        let m = rg.scale_exp() as i64 + rh.scale_exp() as i64;
        let factor = Rational::from_integer(self.p.into()).pow(self.n as i32 - m as i32);
        let z = RationalFunction::z().scale_const(&factor);
        let body = self.pairing(rg.rhs(), rh.rhs())?.scale(&z);
        Ok(body.add(&LinearForm::constant(head)))
    }

    /// Solves for `r_n(g, R^parity h)`.
    pub fn solve(&self, g: &Generator, h: &Generator, parity: u8) -> Result<RationalFunction> {
        let target = PairKey::new(g.clone(), h.clone(), parity);
        let mut index: BTreeMap<PairKey, usize> = BTreeMap::new();
        let mut queue = VecDeque::from([target.clone()]);
        let mut equations: Vec<(PairKey, LinearForm)> = Vec::new();
        index.insert(target.clone(), 0);
        while let Some(key) = queue.pop_front() {
            let rhs = match self.relations.get(&key) {
                Some(form) => form.clone(),
                None => self.rule_equation(&key)?,
            };
            for k in rhs.coeffs.keys() {
                if !index.contains_key(k) {
                    index.insert(k.clone(), index.len());
                    queue.push_back(k.clone());
                }
            }
            equations.push((key, rhs));
        }
        let size = index.len();
        // rows: X_key - Σ c X = constant
        let mut rows: Vec<Vec<RationalFunction>> = Vec::with_capacity(size);
        let mut rhs_col: Vec<RationalFunction> = Vec::with_capacity(size);
        for (key, form) in &equations {
            let mut row = vec![RationalFunction::zero(); size];
            row[index[key]] = RationalFunction::one();
            for (k, c) in &form.coeffs {
                let slot = &mut row[index[k]];
                *slot = &*slot - c;
            }
            rows.push(row);
            rhs_col.push(form.constant.clone());
        }
        let solution = solve_linear(rows, rhs_col)?;
        Ok(solution[index[&target]].clone())
    }
}

/// Gaussian elimination over ℚ(z), choosing the pivot of lowest complexity.
pub fn solve_linear(
    mut a: Vec<Vec<RationalFunction>>,
    mut b: Vec<RationalFunction>,
) -> Result<Vec<RationalFunction>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].complexity())
            .ok_or(Error::SingularSystem)?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].inv()?;
        for x in &mut a[col][col..n] {
            *x = &*x * &inv;
        }
        let pivot_row = a[col].clone();
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for (x, y) in a[r][col..n].iter_mut().zip(&pivot_row[col..n]) {
                *x = &*x - &(y * &f);
            }
            let t = &b[col] * &f;
            b[r] = &b[r] - &t;
        }
    }
    Ok(b)
}

/// `r_n(u, v)` where `u` and `v` are the left sides of the two rules.
pub fn r_solve(n: u32, rule_u: &ShiftingRule, rule_v: &ShiftingRule) -> Result<RationalSeries> {
    let r = r_solve_function(n, rule_u, rule_v)?;
    RationalSeries::from_function(&r)
}

fn r_solve_function(n: u32, rule_u: &ShiftingRule, rule_v: &ShiftingRule) -> Result<RationalFunction> {
    if rule_u.p() != rule_v.p() {
        return Err(Error::CharacteristicMismatch(rule_u.p(), rule_v.p()));
    }
    let mut sys = RuleSystem::new(rule_u.p(), n)?;
    sys.add_rule(rule_u)?;
    if rule_v.generator() != rule_u.generator() {
        sys.add_rule(rule_v)?;
    } else if rule_v.normalized()? != rule_u.normalized()? {
        return Err(Error::InvalidInput(format!(
            "two different rules for generator {}",
            rule_u.generator()
        )));
    }
    sys.solve(rule_u.generator(), rule_v.generator(), rule_u.parity() + rule_v.parity())
}

/// `FSS_{f+g}(z) = r_n(u, v)/(p^{n-1} z - 1)` where `rule_v` is stated for
/// the reflected second factor `v = ℒ(φ̄_g)`.
pub fn fss_symbolic(n: u32, rule_u: &ShiftingRule, rule_v: &ShiftingRule) -> Result<RationalSeries> {
    let r = r_solve_function(n, rule_u, rule_v)?;
    fss_from_r(rule_u.p(), n, &r)
}

/// Divides `r_n` by `p^{n-1} z - 1`.
pub fn fss_from_r(p: u64, n: u32, r: &RationalFunction) -> Result<RationalSeries> {
    let pn1 = big(pow_big(p, n - 1));
    let den = RationalFunction::poly(Polynomial::from_coeffs(vec![-Rational::from_integer(1.into()), pn1]));
    RationalSeries::from_function(&(r / &den)?)
}
