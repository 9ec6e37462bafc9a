use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use quartic_core::families::{f16_instance, symmetric_quartic, SymmetricFamilySpec};
use quartic_core::ff2k::FieldCtx;
use quartic_core::singular::{singular_points, EnumOptions, Scope};
use quartic_core::Parallelism;

fn enumeration(c: &mut Criterion) {
    let gf12 = FieldCtx::new(12).unwrap();
    let gf8 = FieldCtx::new(8).unwrap();
    let (f16, _) = f16_instance(&gf12).unwrap();
    let pencil = symmetric_quartic(&gf8, &SymmetricFamilySpec::pencil(&gf8, gf8.u()));
    let cases = [
        ("f16 ambient GF(2^12)", &f16, Scope::Ambient),
        ("f16 over GF(16)", &f16, Scope::Subfield(4)),
        ("pencil ambient GF(2^8)", &pencil, Scope::Ambient),
    ];

    let mut group = c.benchmark_group("singular_points");
    group.sample_size(10);
    for (name, f, scope) in cases {
        for par in [Parallelism::Sequential, Parallelism::Parallel] {
            let opts = EnumOptions {
                scope,
                parallelism: par,
                ..EnumOptions::default()
            };
            group.bench_with_input(BenchmarkId::new(name, format!("{par:?}")), f, |b, f| {
                b.iter(|| singular_points(f, &opts).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, enumeration);
criterion_main!(benches);
