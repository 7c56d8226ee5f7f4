use criterion::{black_box, criterion_group, criterion_main, Criterion};

use ringlab_core::harness::{find, verify, TheoremId};
use ringlab_core::{builtin, classify_extension, close_group, Construction, Limits};

fn construction(c: &mut Criterion) {
    let limits = Limits::default();
    let f64: Construction = "gf(2,6)".parse().unwrap();
    c.bench_function("build gf(2,6)", |b| b.iter(|| f64.build(black_box(&limits)).unwrap()));
    let ideal: Construction = "idealization(gf(3,2),self)".parse().unwrap();
    c.bench_function("build F_9(+)F_9", |b| b.iter(|| ideal.build(black_box(&limits)).unwrap()));
}

fn classification(c: &mut Criterion) {
    let limits = Limits::default();
    let t = "prod(gf(3,2),gf(3,2))".parse::<Construction>().unwrap().build(&limits).unwrap();
    let diag = ringlab_core::harness::SubringSpec::Diag.resolve(&t, &limits).unwrap();
    let full = t.full();
    c.bench_function("classify diag(F_9) ⊂ F_9×F_9", |b| {
        b.iter(|| classify_extension(black_box(&diag), &full, &limits).unwrap())
    });
}

fn groups(c: &mut Criterion) {
    let limits = Limits::default();
    let t = "gf(2,6)".parse::<Construction>().unwrap().build(&limits).unwrap();
    let frob = builtin(&t, "frobenius").unwrap();
    c.bench_function("close ⟨frobenius⟩ on F_64", |b| {
        b.iter(|| close_group(&t, vec![frob.clone()], &limits).unwrap())
    });
}

fn checkers(c: &mut Criterion) {
    let limits = Limits::default();
    let inert = find("inert_f64_f8").unwrap();
    c.bench_function("verify thm_2_6 on F_8 ⊂ F_64", |b| {
        b.iter(|| verify(TheoremId::Thm26, &inert, 0, &limits).unwrap())
    });
    let ff = find("funcfield_p5_a2").unwrap();
    c.bench_function("verify thm_3_6 on F_5(x)", |b| {
        b.iter(|| verify(TheoremId::Thm36, &ff, 0, &limits).unwrap())
    });
}

criterion_group!(benches, construction, classification, groups, checkers);
criterion_main!(benches);
