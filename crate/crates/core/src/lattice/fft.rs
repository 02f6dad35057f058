//! Multidimensional FFT on row-major data, built from cached 1d plans.
//!
//! Convention: the forward transform carries the full `1/n^dim`
//! normalization, so `forward` followed by `inverse` is the identity and
//! discrete Plancherel holds with the physical cell measure `h^dim`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

struct PlanCache {
    planner: FftPlanner<f64>,
    plans: HashMap<(usize, bool), Arc<dyn Fft<f64>>>,
}

fn plan(n: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static CACHE: OnceLock<Mutex<PlanCache>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        Mutex::new(PlanCache {
            planner: FftPlanner::new(),
            plans: HashMap::new(),
        })
    });
    let mut guard = cache.lock().unwrap();
    let PlanCache { planner, plans } = &mut *guard;
    plans
        .entry((n, inverse))
        .or_insert_with(|| {
            if inverse {
                planner.plan_fft(n, FftDirection::Inverse)
            } else {
                planner.plan_fft(n, FftDirection::Forward)
            }
        })
        .clone()
}

fn transform_axis(data: &mut [Complex64], shape: &[usize], axis: usize, inverse: bool) {
    let n = shape[axis];
    let fft = plan(n, inverse);
    let mut scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];

    // Row-major: stride of `axis` is the product of the trailing extents.
    let stride: usize = shape[axis + 1..].iter().product();
    let total: usize = shape.iter().product();

    if stride == 1 {
        for chunk in data.chunks_exact_mut(n) {
            fft.process_with_scratch(chunk, &mut scratch);
        }
        return;
    }

    // Gather strided lanes into a contiguous buffer, transform, scatter back.
    let block = n * stride;
    let mut lane = vec![Complex64::default(); n];
    for base in (0..total).step_by(block) {
        for off in 0..stride {
            for j in 0..n {
                lane[j] = data[base + off + j * stride];
            }
            fft.process_with_scratch(&mut lane, &mut scratch);
            for j in 0..n {
                data[base + off + j * stride] = lane[j];
            }
        }
    }
}

/// In-place forward DFT over every axis, normalized by `1/len`.
pub fn forward(data: &mut [Complex64], shape: &[usize]) {
    debug_assert_eq!(data.len(), shape.iter().product::<usize>());
    for axis in 0..shape.len() {
        transform_axis(data, shape, axis, false);
    }
    let scale = 1.0 / data.len() as f64;
    for v in data.iter_mut() {
        *v *= scale;
    }
}

/// In-place inverse DFT over every axis (no normalization; pairs with `forward`).
pub fn inverse(data: &mut [Complex64], shape: &[usize]) {
    debug_assert_eq!(data.len(), shape.iter().product::<usize>());
    for axis in 0..shape.len() {
        transform_axis(data, shape, axis, true);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_3d() {
        let shape = [8usize, 8, 8];
        let mut data: Vec<Complex64> = (0..512)
            .map(|i| Complex64::new((i as f64).sin(), (i as f64 * 0.7).cos()))
            .collect();
        let orig = data.clone();
        forward(&mut data, &shape);
        inverse(&mut data, &shape);
        let err: f64 = data
            .iter()
            .zip(&orig)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-12, "round trip error {err}");
    }

    #[test]
    fn forward_of_constant_concentrates_at_zero() {
        let shape = [16usize, 16];
        let mut data = vec![Complex64::new(3.5, -1.0); 256];
        forward(&mut data, &shape);
        assert!((data[0] - Complex64::new(3.5, -1.0)).norm() < 1e-13);
        let rest: f64 = data[1..].iter().map(|v| v.norm()).sum();
        assert!(rest < 1e-12);
    }
}
