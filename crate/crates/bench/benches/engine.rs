use criterion::{black_box, criterion_group, criterion_main, Criterion};

use equichi::curve::SheafSpec;
use equichi::engine::{chi_g, h0_omega, topo_chi};
use equichi::group::{product, symmetric};
use equichi::rep::CharacterTable;
use equichi::scenario::{run_text, Options, BUNDLED};
use equichi_bench::{hyperelliptic, p5_nodal};

fn engine(c: &mut Criterion) {
    let nodal = p5_nodal().expect("p5 nodal curve");
    let hyp = hyperelliptic(4).expect("hyperelliptic curve");
    c.bench_function("chi_g omega^2 on p5 nodal", |b| {
        let spec = SheafSpec::pluri(&nodal, 2, false);
        b.iter(|| chi_g(black_box(&nodal), &spec).expect("chi_g"))
    });
    c.bench_function("h0 omega on p5 nodal", |b| b.iter(|| h0_omega(black_box(&nodal)).expect("h0")));
    c.bench_function("topo_chi on genus 4 hyperelliptic", |b| b.iter(|| topo_chi(black_box(&hyp)).expect("topo")));
}

fn tables(c: &mut Criterion) {
    let s4 = symmetric(4).expect("S4");
    let s3 = symmetric(3).expect("S3");
    let s3s3 = product(&s3, &s3).expect("S3 x S3");
    c.bench_function("Dixon table of S4", |b| b.iter(|| CharacterTable::compute_dixon(black_box(&s4)).expect("table")));
    c.bench_function("Dixon table of S3 x S3", |b| {
        b.iter(|| CharacterTable::compute_dixon(black_box(&s3s3)).expect("table"))
    });
}

fn scenarios(c: &mut Criterion) {
    c.bench_function("bundled scenarios with checks", |b| {
        b.iter(|| {
            for (_, text) in BUNDLED {
                run_text(black_box(text), Options { check: true, seed: None }).expect("scenario");
            }
        })
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = engine, tables, scenarios
}
criterion_main!(benches);
