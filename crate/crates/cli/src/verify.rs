//! Regression checks against published values, run by `verify-paper`.

use frobenius_core::exact::rational::{int, pow_big, rat};
use frobenius_core::fermat::{
    bc_classify, bunyakovsky_census, fermat_cubic, fermat_fs_closed, fs_equal_one, watanabe_yoshida_compare,
    BcClass, FermatQuery, WyVerdict,
};
use frobenius_core::han_monsky::{d_number_hm, d_number_oracle, DNumberQuery};
use frobenius_core::limit::{limit_fs, limit_hk, limit_phi, sec_tan_coefficient};
use frobenius_core::phi::{fs_value, phi_diagonal};
use frobenius_core::primes::is_prime;
use frobenius_core::repring::d_number_repring;
use frobenius_core::{
    DiagonalHypersurface, DyadicPoint, PiecewisePolynomial, Polynomial, Rational, Result, RuleFile,
};
use num_traits::One;

use crate::render::{Report, Table};

const CHAR3_GG: &str = include_str!("../../core/fixtures/char3_gg.rules");
const CHAR3_GH: &str = include_str!("../../core/fixtures/char3_gh.rules");
const CHAR7: &str = include_str!("../../core/fixtures/char7.rules");

pub struct Check {
    pub name: &'static str,
    pub anchor: &'static str,
    pub run: fn() -> Result<(String, String)>,
}

pub struct Outcome {
    pub name: &'static str,
    pub anchor: &'static str,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

fn fermat(d: u64, n: usize) -> Result<DiagonalHypersurface> {
    DiagonalHypersurface::fermat(d, n)
}

fn pair(expected: impl ToString, computed: impl ToString) -> Result<(String, String)> {
    Ok((expected.to_string(), computed.to_string()))
}

fn phi_222() -> Result<(String, String)> {
    let v = phi_diagonal(&fermat(2, 3)?, &DyadicPoint::new(3, 2, 1)?)?;
    pair(rat(22, 27), v)
}

fn limit_x2y3() -> Result<(String, String)> {
    let want = PiecewisePolynomial::new(
        vec![int(0), rat(1, 6), rat(5, 6), int(1)],
        vec![
            Polynomial::from_ints(&[0, 2]),
            Polynomial::from_coeffs(vec![rat(-1, 24), rat(5, 2), rat(-3, 2)]),
            Polynomial::one(),
        ],
    )?;
    let got = limit_phi(&DiagonalHypersurface::new(vec![2, 3])?);
    pair(want.to_string().replace('\n', "; "), got.to_string().replace('\n', "; "))
}

fn cubic_closed(p: u64) -> Result<String> {
    Ok(fermat_fs_closed(&FermatQuery::new(p, 3, 4))?.formula())
}

fn cubic_p5() -> Result<(String, String)> {
    pair("(15/124)·5^(3e) + (109/124)·1^e", cubic_closed(5)?)
}

fn cubic_p7() -> Result<(String, String)> {
    pair("(21/170)·7^(3e) + (149/170)·3^e", cubic_closed(7)?)
}

fn cubic_fs1() -> Result<(String, String)> {
    let f = fermat(3, 4)?;
    let got: Vec<String> = [5, 7, 11].iter().map(|&p| fs_value(&f, p, 1).map(|v| v.to_string())).collect::<Result<_>>()?;
    pair("16, 45, 168", got.join(", "))
}

fn cubic_fs2() -> Result<(String, String)> {
    let f = fermat(3, 4)?;
    let mut want = Vec::new();
    let mut got = Vec::new();
    for p in [5, 7] {
        want.push(fermat_fs_closed(&FermatQuery::new(p, 3, 4))?.fs(2)?.to_string());
        got.push(fs_value(&f, p, 2)?.to_string());
    }
    pair(want.join(", "), got.join(", "))
}

fn cubic_formula() -> Result<(String, String)> {
    let mut mismatches = Vec::new();
    for p in [5, 7, 11, 13, 17, 19] {
        if fermat_cubic(p)? != fermat_fs_closed(&FermatQuery::new(p, 3, 4))? {
            mismatches.push(p.to_string());
        }
    }
    pair("agree at 5, 7, 11, 13, 17, 19", if mismatches.is_empty() {
        "agree at 5, 7, 11, 13, 17, 19".to_string()
    } else {
        format!("differ at {}", mismatches.join(", "))
    })
}

fn fs_one() -> Result<(String, String)> {
    let mut got = Vec::new();
    for (d, p) in [(3u64, 7u64), (4, 5)] {
        fs_equal_one(&FermatQuery::new(p, d, d as u32))?;
        let f = fermat(d, d as usize)?;
        for e in 1..=2 {
            got.push(fs_value(&f, p, e)?.to_string());
        }
    }
    pair("1, 1, 1, 1", got.join(", "))
}

fn quadric_threefold() -> Result<(String, String)> {
    let f = fermat(2, 3)?;
    let mut want = Vec::new();
    let mut got = Vec::new();
    for p in [3u64, 5, 7] {
        for e in 1..=3 {
            want.push(((pow_big(p, 2 * e) + 1u32) / 2u32).to_string());
            got.push(fs_value(&f, p, e)?.to_string());
        }
    }
    pair(want.join(", "), got.join(", "))
}

/// Zero and One cells over primes up to `limit`, and whether every prime
/// above `threshold` satisfying the hypotheses is Greater.
fn bc_column(d: u64, threshold: u64, limit: u64) -> String {
    let n = d as u32 + 1;
    let (mut zero, mut one, mut greater_above) = (Vec::new(), Vec::new(), true);
    for p in (d + 1..=limit).filter(|&p| is_prime(p)) {
        match bc_classify(&FermatQuery::new(p, d, n)) {
            Ok(BcClass::Zero) => zero.push(p),
            Ok(BcClass::One) => one.push(p),
            Ok(BcClass::Greater) => {}
            Err(_) => continue,
        }
        if p > threshold && !matches!(bc_classify(&FermatQuery::new(p, d, n)), Ok(BcClass::Greater)) {
            greater_above = false;
        }
    }
    format!("zero {zero:?}, one {one:?}, greater for p > {threshold}: {greater_above}")
}

fn bc_d3() -> Result<(String, String)> {
    pair("zero [], one [5], greater for p > 5: true", bc_column(3, 5, 400))
}

fn bc_d4() -> Result<(String, String)> {
    pair("zero [7], one [], greater for p > 11: true", bc_column(4, 11, 400))
}

fn bc_d7() -> Result<(String, String)> {
    pair("zero [13], one [41], greater for p > 41: true", bc_column(7, 41, 600))
}

fn bc_d21() -> Result<(String, String)> {
    pair(
        "zero [41, 83, 167, 251, 293], one [419], greater for p > 419: true",
        bc_column(21, 419, 1500),
    )
}

fn gessel_monsky() -> Result<(String, String)> {
    let mut want = Vec::new();
    let mut got = Vec::new();
    for n in 2..=10 {
        let c = sec_tan_coefficient(n);
        let f = fermat(2, n)?;
        want.push(format!("{}|{}", Rational::one() + &c, Rational::one() - &c));
        got.push(format!("{}|{}", limit_hk(&f), limit_fs(&f)));
    }
    pair(want.join(", "), got.join(", "))
}

fn wy_limit() -> Result<(String, String)> {
    let want = ["1/2", "1/8", "1/48", "1/384"].join(", ");
    let got: Vec<String> =
        (2..=5u64).map(|d| fermat(d, d as usize + 1).map(|f| limit_fs(&f).to_string())).collect::<Result<_>>()?;
    pair(want, got.join(", "))
}

fn wy_cubic() -> Result<(String, String)> {
    let got: Vec<String> = [5, 7, 11, 13]
        .iter()
        .map(|&p| watanabe_yoshida_compare(p, 3).map(|w| w.verdict.to_string()))
        .collect::<Result<_>>()?;
    pair(vec![WyVerdict::StrictlyLess.to_string(); 4].join(", "), got.join(", "))
}

fn wy_d5() -> Result<(String, String)> {
    let w = watanabe_yoshida_compare(19, 5)?;
    pair(format!("{} strict-less", rat(455, 275122)), format!("{} {}", w.s, w.verdict))
}

fn nondiagonal(text: &str) -> Result<String> {
    Ok(RuleFile::parse(text)?.fss()?.to_string())
}

fn nondiag_gg() -> Result<(String, String)> {
    pair("(1)/(1 - z)", nondiagonal(CHAR3_GG)?)
}

fn nondiag_gh() -> Result<(String, String)> {
    let fss = RuleFile::parse(CHAR3_GH)?.fss()?;
    pair("21/727", fss.pole_weight(&int(27))?)
}

fn nondiag_char7() -> Result<(String, String)> {
    let fss = RuleFile::parse(CHAR7)?.fss()?;
    pair("182139/40118308", fss.pole_weight(&int(343))?)
}

fn census() -> Result<(String, String)> {
    pair(69625, bunyakovsky_census(1_000_000))
}

fn d_numbers() -> Result<(String, String)> {
    let q = DNumberQuery::new(3, vec![2, 2, 3])?;
    pair("4, 4, 4", format!("{}, {}, {}", d_number_hm(&q)?, d_number_oracle(&q)?, d_number_repring(3, &q.k)?))
}

pub fn checks() -> Vec<Check> {
    vec![
        Check { name: "phi-222", anchor: "phi of x^2+y^2+z^2 at 2/3, p = 3", run: phi_222 },
        Check { name: "limit-phi-x2y3", anchor: "limit function of x^2+y^3", run: limit_x2y3 },
        Check { name: "cubic-p5", anchor: "Fermat cubic threefold, p = 5", run: cubic_p5 },
        Check { name: "cubic-p7", anchor: "Fermat cubic threefold, p = 7", run: cubic_p7 },
        Check { name: "cubic-fs1", anchor: "FS(1) of the Fermat cubic threefold", run: cubic_fs1 },
        Check { name: "cubic-fs2", anchor: "FS(2) of the Fermat cubic threefold", run: cubic_fs2 },
        Check { name: "cubic-formula", anchor: "general Fermat cubic formula", run: cubic_formula },
        Check { name: "fs-one", anchor: "FS = 1 when d = n and p = 1 mod d", run: fs_one },
        Check { name: "quadric-threefold", anchor: "FS of x^2+y^2+z^2 is (p^2e+1)/2", run: quadric_threefold },
        Check { name: "bc-table-d3", anchor: "B/C table, d = 3", run: bc_d3 },
        Check { name: "bc-table-d4", anchor: "B/C table, d = 4", run: bc_d4 },
        Check { name: "bc-table-d7", anchor: "B/C table, d = 7", run: bc_d7 },
        Check { name: "bc-table-d21", anchor: "B/C table, d = 21", run: bc_d21 },
        Check { name: "gessel-monsky", anchor: "quadric limits via sec + tan", run: gessel_monsky },
        Check { name: "wy-limit", anchor: "Watanabe-Yoshida bound is the limit", run: wy_limit },
        Check { name: "wy-cubic", anchor: "Watanabe-Yoshida question, d = 3", run: wy_cubic },
        Check { name: "wy-d5", anchor: "Watanabe-Yoshida question, d = 5, p = 19", run: wy_d5 },
        Check { name: "nondiagonal-gg", anchor: "characteristic 3, g + g", run: nondiag_gg },
        Check { name: "nondiagonal-gh", anchor: "characteristic 3, g + h", run: nondiag_gh },
        Check { name: "nondiagonal-char7", anchor: "characteristic 7 relations", run: nondiag_char7 },
        Check { name: "census", anchor: "primes d^2 - d - 1 with d odd, 3 < d < 10^6", run: census },
        Check { name: "d-number", anchor: "D(2,2,3) over F_3", run: d_numbers },
    ]
}

/// Runs every check whose name contains `only`.
pub fn run(list: &[Check], only: Option<&str>) -> Vec<Outcome> {
    list.iter()
        .filter(|c| only.is_none_or(|o| c.name.contains(o)))
        .map(|c| match (c.run)() {
            Ok((expected, computed)) => Outcome {
                name: c.name,
                anchor: c.anchor,
                pass: expected == computed,
                expected,
                computed,
            },
            Err(e) => Outcome {
                name: c.name,
                anchor: c.anchor,
                expected: String::new(),
                computed: format!("error: {e}"),
                pass: false,
            },
        })
        .collect()
}

pub fn report(outcomes: &[Outcome], only: Option<&str>) -> Report {
    let mut t = Table::new(&["check", "anchor", "expected", "computed", "status"]);
    for o in outcomes {
        t.push(vec![
            o.name.into(),
            o.anchor.into(),
            o.expected.clone().into(),
            o.computed.clone().into(),
            (if o.pass { "pass" } else { "FAIL" }).into(),
        ]);
    }
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let mut r = Report::new().request("command", "verify-paper");
    if let Some(o) = only {
        r = r.request("only", o);
    }
    r.field("passed", passed).field("total", outcomes.len()).table(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn wrong() -> Result<(String, String)> {
        pair("1", BigInt::from(2))
    }

    #[test]
    fn failing_checks_are_reported_by_name() {
        let list = vec![
            Check { name: "good", anchor: "", run: phi_222 },
            Check { name: "bad", anchor: "", run: wrong },
        ];
        let out = run(&list, None);
        assert_eq!(out.iter().map(|o| (o.name, o.pass)).collect::<Vec<_>>(), vec![("good", true), ("bad", false)]);
        assert_eq!(run(&list, Some("goo")).len(), 1);
    }

    #[test]
    fn every_check_passes() {
        let failed: Vec<String> = run(&checks(), None)
            .into_iter()
            .filter(|o| !o.pass)
            .map(|o| format!("{}: expected {} got {}", o.name, o.expected, o.computed))
            .collect();
        assert!(failed.is_empty(), "{failed:?}");
    }
}
