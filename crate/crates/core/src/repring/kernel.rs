//! Dense multiplication in the λ-basis over ℤ.
//!
//! Every index `m = pq + r` factors as `λ_m = θ(λ_q)·λ_s` with `s = r` for
//! even `q` and `s = p-1-r` for odd `q`. Grouping `u = Σ_s θ(U_s) λ_s`
//! turns a product into `Σ_k θ(Y_k) λ_k` where `Y_k` collects the
//! `U_s V_t` whose base-rule range covers `k`; the `Y_k` are recursive
//! products of vectors `p` times shorter.

use num_bigint::BigInt;
use num_traits::Zero;

pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Index range `[lo, hi]` of `λ_i λ_j` for `i, j < p`.
#[inline]
pub(crate) fn base_range(p: usize, i: usize, j: usize) -> (usize, usize) {
    let lo = i.abs_diff(j);
    let hi = (i + j).min(2 * p - 2 - i - j);
    (lo, hi)
}

pub(crate) fn mul_dense(p: usize, u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
    let mut out = mul_inner(p, u, v);
    trim(&mut out);
    out
}

fn scale(c: &BigInt, v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| c * x).collect()
}

fn mul_inner(p: usize, u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
    let u = strip(u);
    let v = strip(v);
    if u.is_empty() || v.is_empty() {
        return Vec::new();
    }
    if u.len() == 1 {
        return scale(&u[0], v);
    }
    if v.len() == 1 {
        return scale(&v[0], u);
    }
    if u.len() <= p && v.len() <= p {
        return base_mul(p, u, v);
    }
    let us = split(p, u);
    let vs = split(p, v);
    // diff[k] accumulates Y_k as a difference array over k
    let mut diff: Vec<Vec<BigInt>> = vec![Vec::new(); p + 1];
    for (s, us_s) in us.iter().enumerate() {
        if us_s.is_empty() {
            continue;
        }
        for (t, vs_t) in vs.iter().enumerate() {
            if vs_t.is_empty() {
                continue;
            }
            let w = mul_inner(p, us_s, vs_t);
            let (lo, hi) = base_range(p, s, t);
            add_into(&mut diff[lo], &w, false);
            add_into(&mut diff[hi + 1], &w, true);
        }
    }
    let mut acc: Vec<BigInt> = Vec::new();
    let mut out: Vec<BigInt> = Vec::new();
    for (k, d) in diff.iter().enumerate().take(p) {
        add_into(&mut acc, d, false);
        for (a, c) in acc.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = p * a + if a % 2 == 0 { k } else { p - 1 - k };
            if out.len() <= idx {
                out.resize(idx + 1, BigInt::zero());
            }
            out[idx] = c.clone();
        }
    }
    out
}

fn strip(v: &[BigInt]) -> &[BigInt] {
    let mut n = v.len();
    while n > 0 && v[n - 1].is_zero() {
        n -= 1;
    }
    &v[..n]
}

fn add_into(acc: &mut Vec<BigInt>, w: &[BigInt], negate: bool) {
    if acc.len() < w.len() {
        acc.resize(w.len(), BigInt::zero());
    }
    for (a, x) in acc.iter_mut().zip(w) {
        if negate {
            *a -= x;
        } else {
            *a += x;
        }
    }
}

/// `U_s[q] = u[m]` for `m = pq + r` and `s` the folded digit.
fn split(p: usize, u: &[BigInt]) -> Vec<Vec<BigInt>> {
    let mut parts: Vec<Vec<BigInt>> = vec![Vec::new(); p];
    for (m, c) in u.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (q, r) = (m / p, m % p);
        let s = if q % 2 == 0 { r } else { p - 1 - r };
        let part = &mut parts[s];
        if part.len() <= q {
            part.resize(q + 1, BigInt::zero());
        }
        part[q] = c.clone();
    }
    parts
}

/// Products of elements supported below `p`, via the range rule.
fn base_mul(p: usize, u: &[BigInt], v: &[BigInt]) -> Vec<BigInt> {
    let mut diff = vec![BigInt::zero(); p + 1];
    for (i, a) in u.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in v.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let c = a * b;
            let (lo, hi) = base_range(p, i, j);
            diff[hi + 1] -= &c;
            diff[lo] += c;
        }
    }
    let mut out = Vec::with_capacity(p);
    let mut run = BigInt::zero();
    for d in diff.into_iter().take(p) {
        run += d;
        out.push(run.clone());
    }
    out
}
