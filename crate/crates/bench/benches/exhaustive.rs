use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use modlat::equation::{basis_models, check_law};
use modlat::modality::{classify_modalities, classify_words};
use modlat::repr::{fence_poset, is_s_poset, labeled_posets};
use modlat::suites::{get_suite, preset_suites, run_suite};
use modlat::{AlgebraProfile, Class, Letter, Unary, UpsetAlgebra};
use modlat_bench::{catalog_profiles, class_family, fence_algebra, neg_box_words, profile};

fn operator_tables(c: &mut Criterion) {
    let mut g = c.benchmark_group("profile");
    for name in ["r8", "lattice13"] {
        let l = profile(name).lattice;
        g.bench_function(name, |b| b.iter(|| AlgebraProfile::new(name, black_box(l.clone()))));
    }
    let fence4 = fence_algebra(4).lattice;
    g.bench_function("fence4", |b| {
        b.iter(|| AlgebraProfile::new("fence4", black_box(fence4.clone())))
    });
    g.finish();
}

fn suites(c: &mut Criterion) {
    let profiles = catalog_profiles();
    c.bench_function("suites/all on catalog", |b| {
        b.iter(|| {
            for s in preset_suites() {
                for p in &profiles {
                    black_box(run_suite(s, p));
                }
            }
        })
    });
    let fence4 = fence_algebra(4);
    let dm = get_suite("lemma-dm").unwrap();
    c.bench_function("suites/dm on fence4", |b| {
        b.iter(|| {
            for l in &dm.laws {
                black_box(check_law(&fence4, &l.law));
            }
        })
    });
}

fn bases(c: &mut Criterion) {
    let fence3 = fence_algebra(3);
    let laws: Vec<_> = get_suite("ML-boxdiamond")
        .unwrap()
        .laws
        .iter()
        .map(|l| l.law.clone())
        .collect();
    c.bench_function("basis/ML-boxdiamond on fence3", |b| {
        b.iter(|| basis_models(&fence3, &laws, &[Unary::Box, Unary::Dia], 2))
    });
}

fn modalities(c: &mut Criterion) {
    let mut g = c.benchmark_group("modalities");
    g.sample_size(20);
    let family: Vec<AlgebraProfile> = ["chain3", "square_top", "r8", "lattice13", "pentagon"]
        .into_iter()
        .map(profile)
        .collect();
    let refs: Vec<&AlgebraProfile> = family.iter().collect();
    let words = neg_box_words();
    g.bench_function("neg-box, two boxes", |b| {
        b.iter(|| classify_words(&refs, &words).unwrap())
    });
    let s = class_family(Class::S);
    let s_refs: Vec<&AlgebraProfile> = s.iter().collect();
    let alphabet = [Letter::Neg, Letter::Box, Letter::Dia];
    g.bench_function("S family, length 5", |b| {
        b.iter(|| classify_modalities(&s_refs, &alphabet, 5).unwrap())
    });
    g.finish();
}

fn representation(c: &mut Criterion) {
    let mut g = c.benchmark_group("repr");
    g.sample_size(10);
    let fence = fence_poset(4).unwrap();
    g.bench_function("upsets of fence4", |b| {
        b.iter(|| UpsetAlgebra::new(black_box(&fence)).unwrap())
    });
    g.bench_function("S-poset check, all 5-point posets", |b| {
        b.iter(|| labeled_posets(5).filter(|p| is_s_poset(p).is_s_poset).count())
    });
    g.finish();
}

criterion_group!(benches, operator_tables, suites, bases, modalities, representation);
criterion_main!(benches);
