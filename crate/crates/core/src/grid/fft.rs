use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

/// In-place forward DFT over every axis of a row-major array (last axis
/// fastest).
pub(crate) fn forward_nd(data: &mut [Complex64], shape: &[usize]) {
    let mut planner = FftPlanner::<f64>::new();
    let total: usize = shape.iter().product();
    assert_eq!(total, data.len());
    for (axis, &len) in shape.iter().enumerate() {
        let stride: usize = shape[axis + 1..].iter().product();
        let fft = planner.plan_fft(len, FftDirection::Forward);
        let mut lane = vec![Complex64::new(0.0, 0.0); len];
        let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
        let block = len * stride;
        for outer in (0..total).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (i, slot) in lane.iter_mut().enumerate() {
                    *slot = data[base + i * stride];
                }
                fft.process_with_scratch(&mut lane, &mut scratch);
                for (i, v) in lane.iter().enumerate() {
                    data[base + i * stride] = *v;
                }
            }
        }
    }
}
