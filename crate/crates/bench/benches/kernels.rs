use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use frobenius_bench::{banded_matrix, fermat, lambda_sum, CHAR3_GH, CHAR7};
use frobenius_core::exact::fp_rank;
use frobenius_core::fermat::{bunyakovsky_census, fermat_fs_closed, FermatQuery};
use frobenius_core::han_monsky::{d_number_hm, d_number_oracle, DNumberQuery};
use frobenius_core::limit::limit_phi;
use frobenius_core::phi::{fs_value, ColengthProfile};
use frobenius_core::RuleFile;

fn exact_kernel(c: &mut Criterion) {
    let m = banded_matrix(7, 2000, 5);
    c.bench_function("fp_rank banded 2000", |b| b.iter(|| fp_rank(black_box(&m))));
}

fn rep_ring(c: &mut Criterion) {
    let u = lambda_sum(11);
    c.bench_function("gamma pow (Σλ_i)^4, p = 11", |b| b.iter(|| black_box(&u).pow(4)));
}

fn colength(c: &mut Criterion) {
    let f = fermat(3, 4);
    c.bench_function("colength profile x^3+y^3+z^3+w^3, p = 5, e = 2", |b| {
        b.iter(|| ColengthProfile::new(black_box(&f), 5, 2).unwrap())
    });
    c.bench_function("fs_value Fermat cubic, p = 7, e = 2", |b| b.iter(|| fs_value(black_box(&f), 7, 2).unwrap()));
}

fn d_numbers(c: &mut Criterion) {
    let q = DNumberQuery::new(7, vec![5, 7, 6, 4]).unwrap();
    c.bench_function("d_number_hm (5,7,6,4), p = 7", |b| b.iter(|| d_number_hm(black_box(&q)).unwrap()));
    c.bench_function("d_number_oracle (5,7,6,4), p = 7", |b| b.iter(|| d_number_oracle(black_box(&q)).unwrap()));
}

fn limits(c: &mut Criterion) {
    let f = frobenius_core::DiagonalHypersurface::new(vec![2, 3, 5, 7]).unwrap();
    c.bench_function("limit_phi (2,3,5,7)", |b| b.iter(|| limit_phi(black_box(&f))));
}

fn closed_forms(c: &mut Criterion) {
    c.bench_function("fermat_fs_closed (19,5,6)", |b| {
        b.iter(|| fermat_fs_closed(black_box(&FermatQuery::new(19, 5, 6))).unwrap())
    });
    c.bench_function("census below 10^5", |b| b.iter(|| bunyakovsky_census(black_box(100_000))));
}

fn sequences(c: &mut Criterion) {
    for (name, text) in [("char3 g+h", CHAR3_GH), ("char7", CHAR7)] {
        let file = RuleFile::parse(text).unwrap();
        c.bench_function(&format!("rule file fss {name}"), |b| b.iter(|| black_box(&file).fss().unwrap()));
    }
}

criterion_group!(benches, exact_kernel, rep_ring, colength, d_numbers, limits, closed_forms, sequences);
criterion_main!(benches);
