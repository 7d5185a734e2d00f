use std::path::Path;

use frobenius_core::exact::rational::{big, pow_big};
use frobenius_core::fermat::{
    b_equal_one_fs, bc_classify, bunyakovsky_census, fermat_b, fermat_cubic, fermat_fs_closed, fermat_fss,
    fpure_classification, fs_equal_one, watanabe_yoshida_compare, FermatQuery,
};
use frobenius_core::han_monsky::{d_number_hm, d_number_oracle, DNumberQuery};
use frobenius_core::limit::{
    convergence_report, lct, limit_fs, limit_hk, limit_phi, near_lct_form, quadric_limit_phi,
    sec_tan_coefficient,
};
use frobenius_core::phi::{
    colength_generic, fpt_bracket, fs_value, hk_value, phi_generic, phi_generic_table, ColengthProfile,
};
use frobenius_core::repring::d_number_repring;
use frobenius_core::{
    DiagonalHypersurface, DyadicPoint, Error, GenericPolynomial, PhiTable, Rational, Result, RuleFile,
};
use num_bigint::BigInt;
use num_traits::One;

use crate::render::{pieces_cell, Cell, Report, Table};

/// A hypersurface given either by its degree list or as a polynomial.
pub enum Surface {
    Diagonal(DiagonalHypersurface),
    Generic(GenericPolynomial),
}

impl Surface {
    pub fn resolve(degrees: Option<&[u64]>, poly: Option<&str>, poly_file: Option<&Path>) -> Result<Self> {
        match (degrees, poly, poly_file) {
            (Some(d), None, None) => Ok(Surface::Diagonal(DiagonalHypersurface::new(d.to_vec())?)),
            (None, Some(s), None) => Ok(Surface::Generic(GenericPolynomial::parse(s)?)),
            (None, None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::InvalidInput(format!("cannot read {}: {e}", path.display()))
                })?;
                Ok(Surface::Generic(GenericPolynomial::parse(text.trim())?))
            }
            _ => Err(Error::InvalidInput(
                "give exactly one of --degrees, --poly, --poly-file".into(),
            )),
        }
    }

    fn describe(&self) -> Cell {
        match self {
            Surface::Diagonal(f) => f.degrees().to_vec().into(),
            Surface::Generic(g) => g.to_string().into(),
        }
    }

    fn nvars(&self) -> u32 {
        match self {
            Surface::Diagonal(f) => f.n() as u32,
            Surface::Generic(g) => g.nvars() as u32,
        }
    }

    fn table(&self, p: u64, e: u32) -> Result<PhiTable> {
        match self {
            Surface::Diagonal(f) => Ok(ColengthProfile::new(f, p, e)?.table()),
            Surface::Generic(g) => phi_generic_table(g, p, e),
        }
    }

    fn phi(&self, t: &DyadicPoint) -> Result<Rational> {
        match self {
            Surface::Diagonal(f) => frobenius_core::phi::phi_diagonal(f, t),
            Surface::Generic(g) => phi_generic(g, t),
        }
    }
}

fn base(command: &str, s: &Surface) -> Report {
    Report::new().request("command", command).request("surface", s.describe())
}

pub fn phi(s: &Surface, p: u64, e: u32, a: Option<u64>, complement: bool) -> Result<Report> {
    let name = if complement { "psi" } else { "phi" };
    let flip = |v: Rational| if complement { Rational::one() - v } else { v };
    let report = base(name, s).request("p", p).request("e", e).anchor("normalized colength function");
    match a {
        Some(a) => {
            let t = DyadicPoint::new(p, a, e)?;
            let v = flip(s.phi(&t)?);
            Ok(report.request("a", a).field("t", t.value()).field(name, v))
        }
        None => {
            let table = s.table(p, e)?;
            let mut out = Table::new(&["a", "t", name]);
            for (a, v) in table.values().iter().enumerate() {
                let t = DyadicPoint::new(p, a as u64, e)?;
                out.push(vec![(a as u64).into(), t.value().into(), flip(v.clone()).into()]);
            }
            Ok(report.table(out))
        }
    }
}

pub fn hk(s: &Surface, p: u64, e: u32) -> Result<Report> {
    let value = match s {
        Surface::Diagonal(f) => hk_value(f, p, e)?,
        Surface::Generic(g) => {
            if e == 0 {
                return Err(Error::InvalidInput("hk needs e ≥ 1".into()));
            }
            colength_generic(g, p, e, 1)?.into()
        }
    };
    let normalized = Rational::new(value.clone(), pow_big(p, (s.nvars() - 1) * e));
    Ok(base("hk", s)
        .request("p", p)
        .request("e", e)
        .field("hk", value)
        .field("hk_normalized", normalized)
        .anchor("Hilbert-Kunz function"))
}

pub fn fs(s: &Surface, p: u64, e: u32) -> Result<Report> {
    let value = match s {
        Surface::Diagonal(f) => fs_value(f, p, e)?,
        Surface::Generic(g) => {
            if e == 0 {
                return Err(Error::InvalidInput("fs needs e ≥ 1".into()));
            }
            let q = pow_big(p, e);
            let q: u64 = (&q).try_into().map_err(|_| Error::InvalidInput("p^e too large".into()))?;
            pow_big(p, s.nvars() * e) - BigInt::from(colength_generic(g, p, e, q - 1)?)
        }
    };
    let normalized = Rational::new(value.clone(), pow_big(p, (s.nvars() - 1) * e));
    Ok(base("fs", s)
        .request("p", p)
        .request("e", e)
        .field("fs", value)
        .field("fs_normalized", normalized)
        .anchor("F-signature function"))
}

pub fn fpt(s: &Surface, p: u64, e: u32) -> Result<Report> {
    let (lo, hi) = match s {
        Surface::Diagonal(f) => fpt_bracket(f, p, e)?,
        Surface::Generic(_) => {
            if e == 0 {
                return Err(Error::InvalidInput("fpt needs e ≥ 1".into()));
            }
            let table = s.table(p, e)?;
            let q = table.values().len() as u64 - 1;
            let lo = (0..q).rev().find(|&a| table.value(a) < &Rational::one()).unwrap_or(0);
            (DyadicPoint::new(p, lo, e)?, DyadicPoint::new(p, (lo + 1).min(q), e)?)
        }
    };
    Ok(base("fpt", s)
        .request("p", p)
        .request("e", e)
        .field("lower", lo.value())
        .field("upper", hi.value())
        .anchor("F-pure threshold bracket"))
}

fn diagonal(degrees: &[u64]) -> Result<DiagonalHypersurface> {
    DiagonalHypersurface::new(degrees.to_vec())
}

pub fn limit_phi_cmd(degrees: &[u64], grid: Option<u64>) -> Result<Report> {
    let f = diagonal(degrees)?;
    let lim = limit_phi(&f);
    let mut report = Report::new()
        .request("command", "limit-phi")
        .request("degrees", degrees.to_vec())
        .field("breakpoints", lim.breakpoints().to_vec())
        .field("pieces", pieces_cell(&lim))
        .anchor("limit of the normalized colength functions as p grows");
    if let Some(n) = grid {
        report = report.request("grid", n).table(grid_table(&lim, n, "phi")?);
    }
    Ok(report)
}

fn grid_table(f: &frobenius_core::PiecewisePolynomial, n: u64, name: &str) -> Result<Table> {
    if n == 0 {
        return Err(Error::InvalidInput("--grid must be positive".into()));
    }
    let mut t = Table::new(&["t", name]);
    for k in 0..=n {
        let x = Rational::new(k.into(), n.into());
        let v = f.eval(&x)?;
        t.push(vec![x.into(), v.into()]);
    }
    Ok(t)
}

pub fn limit_hk_cmd(degrees: &[u64]) -> Result<Report> {
    let f = diagonal(degrees)?;
    Ok(Report::new()
        .request("command", "limit-hk")
        .request("degrees", degrees.to_vec())
        .field("limit_hk", limit_hk(&f))
        .anchor("limit Hilbert-Kunz multiplicity"))
}

pub fn limit_fs_cmd(degrees: &[u64]) -> Result<Report> {
    let f = diagonal(degrees)?;
    Ok(Report::new()
        .request("command", "limit-fs")
        .request("degrees", degrees.to_vec())
        .field("limit_fs", limit_fs(&f))
        .anchor("limit F-signature"))
}

pub fn lct_cmd(degrees: &[u64]) -> Result<Report> {
    let f = diagonal(degrees)?;
    Ok(Report::new()
        .request("command", "lct")
        .request("degrees", degrees.to_vec())
        .field("lct", lct(&f))
        .field("near_lct", format!("ψ(t) = {} for t ≤ lct near lct", near_lct_form(&f).fmt_var("t")))
        .anchor("log canonical threshold"))
}

pub fn quadric(n: usize, grid: Option<u64>) -> Result<Report> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("quadric needs n ≥ 2, got {n}")));
    }
    let c = sec_tan_coefficient(n);
    let lim = quadric_limit_phi(n);
    let mut report = Report::new()
        .request("command", "quadric")
        .request("n", n)
        .field("sec_tan_coefficient", &c)
        .field("limit_hk", Rational::one() + &c)
        .field("limit_fs", Rational::one() - &c)
        .field("pieces", pieces_cell(&lim))
        .anchor("Gessel-Monsky quadric limits");
    if let Some(g) = grid {
        report = report.request("grid", g).table(grid_table(&lim, g, "phi")?);
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum DMethod {
    Hm,
    Oracle,
    Repring,
    All,
}

pub fn d_number_cmd(p: u64, k: &[u64], method: DMethod) -> Result<Report> {
    let q = DNumberQuery::new(p, k.to_vec())?;
    let mut report = Report::new()
        .request("command", "d-number")
        .request("p", p)
        .request("k", k.to_vec())
        .anchor("D-numbers via Han-Monsky");
    if method != DMethod::All {
        let d = match method {
            DMethod::Hm => d_number_hm(&q)?,
            DMethod::Oracle => d_number_oracle(&q)?,
            _ => d_number_repring(p, k)?,
        };
        return Ok(report.field("d", d));
    }
    let mut values = Vec::new();
    if q.is_admissible() {
        values.push(("hm", d_number_hm(&q)?));
    }
    values.push(("oracle", d_number_oracle(&q)?));
    values.push(("repring", d_number_repring(p, k)?));
    let agree = values.windows(2).all(|w| w[0].1 == w[1].1);
    if !agree {
        return Err(Error::Internal(format!("D-number methods disagree: {values:?}")));
    }
    for (name, v) in &values {
        report = report.field(name, *v);
    }
    Ok(report.field("admissible", q.is_admissible()).field("d", values[0].1))
}

fn query(p: u64, d: u64, n: u32) -> FermatQuery {
    FermatQuery::new(p, d, n)
}

pub fn fs_closed(p: u64, d: u64, n: u32) -> Result<Report> {
    let q = query(p, d, n);
    let c = fermat_fs_closed(&q)?;
    let mut report = Report::new()
        .request("command", "fs-closed")
        .request("p", p)
        .request("d", d)
        .request("n", n)
        .field("s", &c.s)
        .field("B", c.b.clone())
        .field("C", c.c.clone())
        .field("formula", c.formula())
        .field("series", c.series.to_string())
        .field("fs_1", c.fs(1)?)
        .field("fs_2", c.fs(2)?)
        .anchor("two-term shape of the Fermat F-signature function");
    if d == 3 && n == 4 {
        let cubic = fermat_cubic(p)?;
        report = report.field("cubic_formula_agrees", cubic == c).anchor("Fermat cubic threefold formula");
    }
    if let Ok(s1) = b_equal_one_fs(&q) {
        report = report.field("b_equal_one_s", s1).anchor("B = 1 closed form");
    }
    Ok(report)
}

pub fn fs_series(rules: Option<&Path>, fermat: Option<(u64, u64, u32)>, terms: usize) -> Result<Report> {
    let (series, p, n, mut report) = match (rules, fermat) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
            let file = RuleFile::parse(&text)?;
            let report = Report::new()
                .request("command", "fs-series")
                .request("rules", path.display().to_string())
                .anchor("F-signature series from shifting rules");
            (file.fss()?, file.p(), file.n(), report)
        }
        (None, Some((p, d, n))) => {
            let report = Report::new()
                .request("command", "fs-series")
                .request("p", p)
                .request("d", d)
                .request("n", n)
                .anchor("F-signature series of a Fermat hypersurface");
            (fermat_fss(&query(p, d, n))?, p, n, report)
        }
        _ => {
            return Err(Error::InvalidInput(
                "give either --rules FILE or all of --p, --d, --n".into(),
            ))
        }
    };
    report = report.request("terms", terms).field("series", series.to_string());
    if let Ok(s) = series.pole_weight(&big(pow_big(p, n - 1))) {
        report = report.field("s", s);
    }
    let mut t = Table::new(&["e", "fs"]);
    for (e, c) in series.coefficients(terms).into_iter().enumerate() {
        let cell: Cell = if c.is_integer() { c.to_integer().into() } else { c.into() };
        t.push(vec![e.into(), cell]);
    }
    Ok(report.table(t))
}

pub fn classify(p: u64, d: u64, n: u32) -> Result<Report> {
    let q = query(p, d, n);
    let mut report = Report::new()
        .request("command", "classify")
        .request("p", p)
        .request("d", d)
        .request("n", n)
        .field("class", fpure_classification(&q).to_string())
        .anchor("F-purity of Fermat hypersurfaces");
    report = match bc_classify(&q) {
        Ok(c) => report.field("bc", c.to_string()),
        Err(e) => report.field("bc", format!("n/a ({e})")),
    };
    if let Ok(b) = fermat_b(&q) {
        report = report.field("B", b);
    }
    if d == n as u64 {
        if let Ok(c) = fs_equal_one(&q) {
            report = report.field("fs_constant", c.fs(1)?);
        }
    }
    Ok(report)
}

pub fn census(bound: u64) -> Result<Report> {
    Ok(Report::new()
        .request("command", "census")
        .request("bound", bound)
        .field("count", bunyakovsky_census(bound))
        .anchor("primes of the form d^2 - d - 1"))
}

pub fn wy(p: u64, d: u64) -> Result<Report> {
    let w = watanabe_yoshida_compare(p, d)?;
    Ok(Report::new()
        .request("command", "watanabe-yoshida")
        .request("p", p)
        .request("d", d)
        .field("s", w.s)
        .field("bound", w.bound)
        .field("verdict", w.verdict.to_string())
        .anchor("Watanabe-Yoshida bound"))
}

pub fn convergence(degrees: &[u64], primes: &[u64], e: u32) -> Result<Report> {
    let f = diagonal(degrees)?;
    let r = convergence_report(&f, primes, e)?;
    let mut t = Table::new(&["p", "sup_error", "scaled_error", "quotient_at_0", "quotient_at_1"]);
    for row in &r.rows {
        t.push(vec![
            row.p.into(),
            (&row.sup_error).into(),
            (&row.scaled_error).into(),
            (&row.quotient_at_0).into(),
            (&row.quotient_at_1).into(),
        ]);
    }
    Ok(Report::new()
        .request("command", "convergence")
        .request("degrees", degrees.to_vec())
        .request("primes", primes.to_vec())
        .request("e", e)
        .field("limit_hk", &r.limit_hk)
        .field("limit_fs", &r.limit_fs)
        .field("lipschitz_bound", r.lipschitz_bound.clone())
        .field("sup_strictly_decreasing", r.sup_strictly_decreasing())
        .field("scaled_error_bounded", r.scaled_error_bounded())
        .field("hk_monotone", r.hk_monotone())
        .field("fs_monotone", r.fs_monotone())
        .field("verdict", r.verdict())
        .table(t)
        .anchor("uniform convergence of the colength functions"))
}
