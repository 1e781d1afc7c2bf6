use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use spectra_core::assembler::{self, OracleSettings, VerifyTolerances};
use spectra_core::{oracle, perturbation, susy};
use spectra_core::{
    AngularForm, ClosedFormW, Grid1D, GridKind, PotentialFamily, PotentialSpec, QuantumRanges,
    Superpotential,
};

fn eigen(c: &mut Criterion) {
    let grid = Grid1D::symmetric(20.0, 0.01).unwrap();
    let fam = PotentialFamily::rosen_morse_ii(3.0, 1.0).unwrap();
    c.bench_function("eigen_solve rosen_morse_ii", |b| {
        b.iter(|| oracle::eigen_solve_family(black_box(&fam), &grid, 3).unwrap())
    });
    let cells = Grid1D::angular_cells(0.0, std::f64::consts::PI, 1000).unwrap();
    let ring = AngularForm::ring(1.0, 1.0).unwrap();
    c.bench_function("solve_angular_direct ring", |b| {
        b.iter(|| oracle::solve_angular_direct(1, black_box(&ring), &cells, 2).unwrap())
    });
}

fn series(c: &mut Criterion) {
    let grid = Grid1D::symmetric(20.0, 0.01).unwrap();
    let w = Superpotential::closed(ClosedFormW::tanh(3.0, 0.0), GridKind::FullLine);
    let chi = susy::ground_state_wavefunction(&w, &grid).unwrap();
    let dv = vec![grid.sample(|z| -z.tanh())];
    c.bench_function("run_series k_max=6", |b| {
        b.iter(|| perturbation::run_series(&w, black_box(&chi), &dv, 6, &grid).unwrap())
    });
}

fn verification(c: &mut Criterion) {
    let spec = PotentialSpec::new(
        PotentialFamily::radial_coulomb(2.0, 0.0).unwrap(),
        AngularForm::ring(1.0, 1.0).unwrap(),
        0..=1,
    )
    .unwrap();
    let ranges = QuantumRanges {
        n_r: 0..=1,
        n_theta: 0..=1,
    };
    let settings = OracleSettings::default();
    let entries = assembler::total_spectrum_with(&spec, &ranges, &settings);
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    group.bench_function("coulomb ring 8 entries", |b| {
        b.iter(|| {
            assembler::verify_spectrum(
                &spec,
                black_box(&entries),
                &VerifyTolerances::default(),
                &settings,
            )
        })
    });
    group.finish();
}

criterion_group!(benches, eigen, series, verification);
criterion_main!(benches);
