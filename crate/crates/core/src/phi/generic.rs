//! Brute-force colengths for arbitrary polynomials in few variables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{checked_pow, DiagonalHypersurface, DyadicPoint, PhiTable};
use crate::error::{Error, Result};
use crate::exact::fp_rank::rank_of_rows;
use crate::exact::rational::Rational;
use crate::guard::check_size;
use crate::primes::require_prime;

/// Polynomial with integer coefficients, reduced mod `p` on use. Every term
/// has positive total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericPolynomial {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, i64>,
}

impl GenericPolynomial {
    pub fn new(
        vars: Vec<String>,
        terms: impl IntoIterator<Item = (Vec<u32>, i64)>,
    ) -> Result<Self> {
        let mut acc: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for (exp, c) in terms {
            if exp.len() != vars.len() {
                return Err(Error::InvalidInput(format!(
                    "exponent vector {exp:?} does not match {} variables",
                    vars.len()
                )));
            }
            *acc.entry(exp).or_insert(0) += c;
        }
        acc.retain(|_, c| *c != 0);
        if acc.keys().any(|e| e.iter().all(|&x| x == 0)) {
            return Err(Error::InvalidInput(
                "polynomial must lie in the maximal ideal (no constant term)".into(),
            ));
        }
        Ok(GenericPolynomial { vars, terms: acc })
    }

    pub fn from_diagonal(f: &DiagonalHypersurface) -> Self {
        let n = f.n();
        let vars = (1..=n).map(|i| format!("x{i}")).collect();
        let terms = f.degrees().iter().enumerate().map(|(i, &d)| {
            let mut e = vec![0; n];
            e[i] = d as u32;
            (e, 1)
        });
        Self::new(vars, terms).expect("diagonal terms are valid")
    }

    /// Parses sums like `y^3 - x^4 + x^2*y^2` or `2 z w^2`. Variables are
    /// identifiers (letter then letters/digits), ordered alphabetically.
    pub fn parse(s: &str) -> Result<Self> {
        let raw = parse_terms(s)?;
        let vars: BTreeSet<String> =
            raw.iter().flat_map(|(_, f)| f.iter().map(|(v, _)| v.clone())).collect();
        let vars: Vec<String> = vars.into_iter().collect();
        let terms: Vec<(Vec<u32>, i64)> = raw
            .into_iter()
            .map(|(c, factors)| {
                let mut e = vec![0u32; vars.len()];
                for (v, k) in factors {
                    e[vars.binary_search(&v).expect("collected above")] += k;
                }
                (e, c)
            })
            .collect();
        Self::new(vars, terms)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }
}

impl fmt::Display for GenericPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (exp, &c) in &self.terms {
            let mono: Vec<String> = exp
                .iter()
                .zip(&self.vars)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let sep = if first {
                if c < 0 { "-" } else { "" }
            } else if c < 0 {
                " - "
            } else {
                " + "
            };
            let a = c.unsigned_abs();
            let coef = if a == 1 { String::new() } else { format!("{a}*") };
            write!(f, "{sep}{coef}{}", mono.join("*"))?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

type RawTerm = (i64, Vec<(String, u32)>);

fn parse_terms(s: &str) -> Result<Vec<RawTerm>> {
    let err = |m: String| Error::InvalidInput(format!("cannot parse polynomial {s:?}: {m}"));
    let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    let mut out = Vec::new();
    if chars.is_empty() {
        return Err(err("empty input".into()));
    }
    while i < chars.len() {
        let mut sign = 1i64;
        while i < chars.len() && (chars[i] == '+' || chars[i] == '-') {
            if chars[i] == '-' {
                sign = -sign;
            }
            i += 1;
        }
        let mut coef: i64 = 1;
        let mut factors = Vec::new();
        let mut any = false;
        loop {
            if i < chars.len() && chars[i] == '*' && any {
                i += 1;
            }
            if i >= chars.len() || chars[i] == '+' || chars[i] == '-' {
                break;
            }
            if chars[i].is_ascii_digit() {
                let st = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let v: i64 = chars[st..i].iter().collect::<String>().parse().map_err(|_| err("coefficient overflow".into()))?;
                coef = coef.checked_mul(v).ok_or_else(|| err("coefficient overflow".into()))?;
            } else if chars[i].is_alphabetic() {
                let st = i;
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '_') {
                    i += 1;
                }
                let name: String = chars[st..i].iter().collect();
                let mut k = 1u32;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let st = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    k = chars[st..i].iter().collect::<String>().parse().map_err(|_| err("bad exponent".into()))?;
                }
                factors.push((name, k));
            } else {
                return Err(err(format!("unexpected character {:?}", chars[i])));
            }
            any = true;
        }
        if !any {
            return Err(err("empty term".into()));
        }
        out.push((sign * coef, factors));
    }
    Ok(out)
}

/// Dense truncated polynomial over 𝔽_p in mixed radix `q` per variable.
struct Truncated {
    p: u64,
    n: usize,
    q: usize,
    coeffs: Vec<u64>,
}

impl Truncated {
    fn one(p: u64, n: usize, q: usize) -> Self {
        let mut coeffs = vec![0; q.pow(n as u32)];
        coeffs[0] = 1;
        Truncated { p, n, q, coeffs }
    }

    /// Multiplies in place by a sparse polynomial given as (exponents, coeff).
    fn mul_sparse(&mut self, g: &[(Vec<usize>, u64)]) {
        let (q, n, p) = (self.q, self.n, self.p);
        let mut out = vec![0u64; self.coeffs.len()];
        let mut digits = vec![0usize; n];
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut r = idx;
            for d in digits.iter_mut().rev() {
                *d = r % q;
                r /= q;
            }
            'term: for (exp, gc) in g {
                let mut target = 0usize;
                for (d, e) in digits.iter().zip(exp) {
                    let k = d + e;
                    if k >= q {
                        continue 'term;
                    }
                    target = target * q + k;
                }
                out[target] = (out[target] + c * gc) % p;
            }
        }
        self.coeffs = out;
    }
}

/// `f^a` in `𝔽_p[x]/(x_i^{p^e})`, built as `∏_k (f^{[p^k]})^{a_k}` over the
/// base-`p` digits of `a`, since `f^{p^k} = f(x^{p^k})` in characteristic `p`.
fn truncated_power(f: &GenericPolynomial, p: u64, e: u32, a: u64) -> Truncated {
    let q = p.pow(e) as usize;
    let n = f.nvars();
    let base: Vec<(Vec<usize>, u64)> = f
        .terms()
        .filter_map(|(exp, c)| {
            let c = c.rem_euclid(p as i64) as u64;
            (c != 0).then(|| (exp.iter().map(|&x| x as usize).collect(), c))
        })
        .collect();
    let mut acc = Truncated::one(p, n, q);
    let mut digits = a;
    let mut scale = 1usize;
    while digits > 0 {
        let ak = digits % p;
        let twisted: Vec<(Vec<usize>, u64)> = base
            .iter()
            .map(|(exp, c)| (exp.iter().map(|&x| x * scale).collect(), *c))
            .collect();
        for _ in 0..ak {
            acc.mul_sparse(&twisted);
        }
        digits /= p;
        scale = scale.saturating_mul(p as usize);
    }
    acc
}

/// `dim 𝔽_p[x]/(x_i^{p^e}, f^a)` as `p^{ne} - rank(multiplication by f^a)`.
pub fn colength_generic(f: &GenericPolynomial, p: u64, e: u32, a: u64) -> Result<u64> {
    require_prime(p)?;
    let q = checked_pow(p, e)?;
    let n = f.nvars();
    let dim = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    check_size("monomial basis p^{ne}", dim)?;
    if a > q {
        return Err(Error::InvalidInput(format!("a = {a} exceeds p^e = {q}")));
    }
    let dim = dim as usize;
    if a == 0 {
        return Ok(0);
    }
    if n == 0 {
        return Ok(1);
    }
    let g = truncated_power(f, p, e, a);
    let q = q as usize;
    let support: Vec<(Vec<usize>, u64)> = g
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(idx, &c)| {
            let mut d = vec![0usize; n];
            let mut r = idx;
            for slot in d.iter_mut().rev() {
                *slot = r % q;
                r /= q;
            }
            (d, c)
        })
        .collect();
    if support.is_empty() {
        return Ok(dim as u64);
    }
    let mut digits = vec![0usize; n];
    let rows: Vec<Vec<(u32, u64)>> = (0..dim)
        .map(|m| {
            let mut r = m;
            for slot in digits.iter_mut().rev() {
                *slot = r % q;
                r /= q;
            }
            let mut row: Vec<(u32, u64)> = support
                .iter()
                .filter_map(|(exp, c)| {
                    let mut t = 0usize;
                    for (d, x) in digits.iter().zip(exp) {
                        let k = d + x;
                        if k >= q {
                            return None;
                        }
                        t = t * q + k;
                    }
                    Some((t as u32, *c))
                })
                .collect();
            row.sort_unstable();
            row
        })
        .collect();
    let rank = rank_of_rows(p, dim, rows);
    Ok((dim - rank) as u64)
}

/// `φ_{f,p}(a/p^e)` by brute force.
pub fn phi_generic(f: &GenericPolynomial, t: &DyadicPoint) -> Result<Rational> {
    let c = colength_generic(f, t.p, t.e, t.a)?;
    let total = BigInt::from(t.denominator()).pow(f.nvars() as u32);
    Ok(Rational::new(BigInt::from(c), total))
}

/// All values at level `e`, one rank computation per point.
pub fn phi_generic_table(f: &GenericPolynomial, p: u64, e: u32) -> Result<PhiTable> {
    let q = checked_pow(p, e)?;
    let total = BigInt::from(q).pow(f.nvars() as u32);
    let values = (0..=q)
        .into_par_iter()
        .map(|a| {
            if a == q {
                Ok(Rational::from_integer(1.into()))
            } else {
                colength_generic(f, p, e, a).map(|c| Rational::new(BigInt::from(c), total.clone()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    PhiTable::from_values(p, e, values)
}
