use criterion::{criterion_group, criterion_main, Criterion};
use revdna_bench::{r11_code, r13_code, ring};
use revdna_core::codes::{all_ring_elements, search_divisors, verify_reversible, Symmetry, VerifyMode};
use revdna_core::{CodebookSource, DnaCodebook};

fn encode(c: &mut Criterion) {
    let code = r13_code();
    let msgs: Vec<_> = (0..64u128).map(|i| code.message_at(i * 7919)).collect();
    c.bench_function("encode_r13_n6", |b| b.iter(|| msgs.iter().map(|m| code.encode(m).unwrap()).collect::<Vec<_>>()));
}

fn reversibility(c: &mut Criterion) {
    let code = r11_code();
    let book = DnaCodebook::build(code.ring().field(), CodebookSource::Generated).unwrap();
    let mut group = c.benchmark_group("reversibility");
    group.sample_size(10);
    group.bench_function("exhaustive_r11_n4", |b| {
        b.iter(|| verify_reversible(&code, &book, VerifyMode::Exhaustive { cap: 1 << 20 }).unwrap())
    });
    let code = r13_code();
    let book = DnaCodebook::build(code.ring().field(), CodebookSource::EmbeddedReference).unwrap();
    group.bench_function("sampled_r13_n6", |b| {
        b.iter(|| verify_reversible(&code, &book, VerifyMode::Sampled { trials: 1000, seed: 3 }).unwrap())
    });
    group.finish();
}

fn search(c: &mut Criterion) {
    let r = ring(1, 1);
    let all = all_ring_elements(&r, 1 << 20).unwrap();
    c.bench_function("search_palindromic_r11_n4_deg2", |b| {
        b.iter(|| search_divisors(&r, 4, 2, Symmetry::Palindromic, &all, 1 << 20).unwrap())
    });
}

criterion_group!(benches, encode, reversibility, search);
criterion_main!(benches);
