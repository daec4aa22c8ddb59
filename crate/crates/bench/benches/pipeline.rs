use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use confmodel::{builtin_metamodel, generate, parse, tokenize, MappingTable, Pipeline, Vendor};
use confmodel_bench::{inputs, repeated};

fn stages(c: &mut Criterion) {
    let mm = builtin_metamodel();
    let p = Pipeline::builtin();
    for input in inputs("roundtrip") {
        let mut g = c.benchmark_group(&input.name);
        g.throughput(Throughput::Bytes(input.text.len() as u64));
        let tokens = tokenize(&input.text, input.vendor).unwrap();
        let tree = parse(&tokens, input.vendor).unwrap();
        let table = MappingTable::builtin(input.vendor);
        let model = confmodel::extract(&tree, table, mm).unwrap();

        g.bench_function("tokenize", |b| b.iter(|| tokenize(black_box(&input.text), input.vendor).unwrap()));
        g.bench_function("parse", |b| b.iter(|| parse(black_box(&tokens), input.vendor).unwrap()));
        g.bench_function("extract", |b| b.iter(|| confmodel::extract(black_box(&tree), table, mm).unwrap()));
        g.bench_function("generate", |b| b.iter(|| generate(black_box(&model), mm).unwrap()));
        g.bench_function("roundtrip", |b| b.iter(|| p.roundtrip_text(black_box(&input.text), input.vendor).unwrap()));
        g.finish();
    }
}

fn scaling(c: &mut Criterion) {
    let p = Pipeline::builtin();
    let base = inputs("corpus").into_iter().find(|i| i.name == "dc").expect("dc fixture");
    let mut g = c.benchmark_group("extract_scaling");
    for n in [1, 4, 16, 64] {
        let text = repeated(&base.text, n);
        g.throughput(Throughput::Bytes(text.len() as u64));
        g.bench_with_input(BenchmarkId::from_parameter(n), &text, |b, t| {
            b.iter(|| p.extract_text(black_box(t), Vendor::Cisco).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, stages, scaling);
criterion_main!(benches);
