use oradius_core::matrix::ComplexMatrix;
use oradius_core::radius::{numerical_radius, default_tolerance};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::time::Instant;

fn main() {
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = |s: &mut u64| {
        *s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((*s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
    };
    for n in [2usize, 4, 8] {
        let mats: Vec<ComplexMatrix> = (0..50).map(|_| {
            ComplexMatrix::new(DMatrix::from_fn(n, n, |_, _| Complex64::new(next(&mut state), next(&mut state)))).unwrap()
        }).collect();
        let t0 = Instant::now();
        let mut acc = 0.0;
        for m in &mats {
            acc += numerical_radius(m, default_tolerance(m)).unwrap().midpoint();
        }
        let dt = t0.elapsed().as_secs_f64();
        println!("dim {n}: {:.3} ms/radius (acc {acc:.3})", dt / 50.0 * 1e3);
    }
    // worst case: square-zero disk at dim 2 and a nilpotent dim 8
    let nil2 = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
    let t0 = Instant::now();
    for _ in 0..20 { let _ = numerical_radius(&nil2, 1e-9).unwrap(); }
    println!("nilpotent 2x2 disk: {:.3} ms/radius", t0.elapsed().as_secs_f64() / 20.0 * 1e3);
    let mut m8 = DMatrix::<Complex64>::zeros(8, 8);
    for i in 0..8 { for j in (i+1)..8 { m8[(i, j)] = Complex64::new(next(&mut state), next(&mut state)); } }
    let a8 = ComplexMatrix::new(m8).unwrap();
    let t0 = Instant::now();
    for _ in 0..20 { let _ = numerical_radius(&a8, default_tolerance(&a8)).unwrap(); }
    println!("nilpotent 8x8: {:.3} ms/radius", t0.elapsed().as_secs_f64() / 20.0 * 1e3);
}
