use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Anything exposing its trainable tensors as named mutable slices, in a
/// stable order. The order must match the gradient bundle handed to
/// `grad_check`.
pub trait ParamTensors {
    fn tensors_mut(&mut self) -> Vec<(String, &mut [f64])>;
}

#[derive(Clone, Debug)]
pub struct TensorReport {
    pub name: String,
    pub max_rel_err: f64,
    pub coords_checked: usize,
}

/// Per-tensor worst relative error between analytic and numeric gradients.
#[derive(Clone, Debug)]
pub struct GradCheckReport {
    pub tensors: Vec<TensorReport>,
    pub eps: f64,
    pub tol: f64,
}

impl GradCheckReport {
    pub fn max_err(&self) -> f64 {
        self.tensors.iter().map(|t| t.max_rel_err).fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.tensors.iter().all(|t| t.max_rel_err <= self.tol)
    }
}

const MIN_COORDS: usize = 32;

/// Central finite differences against analytic gradients.
///
/// For every tensor, at least 32 coordinates (all, when the tensor is small)
/// are perturbed by ±eps and the numeric slope (f(p+ε)−f(p−ε))/2ε compared to
/// the analytic entry with relative error |a−n|/max(|a|,|n|,1e-8).
pub fn grad_check<M, F>(
    model: &mut M,
    analytic: &[(String, Vec<f64>)],
    mut loss: F,
    eps: f64,
    tol: f64,
    seed: u64,
) -> GradCheckReport
where
    M: ParamTensors,
    F: FnMut(&mut M) -> f64,
{
    let tensor_count = model.tensors_mut().len();
    assert_eq!(
        tensor_count,
        analytic.len(),
        "analytic gradient bundle must mirror the model tensors"
    );
    let mut reports = Vec::with_capacity(tensor_count);
    for ti in 0..tensor_count {
        let (name, len) = {
            let views = model.tensors_mut();
            (views[ti].0.clone(), views[ti].1.len())
        };
        let (a_name, a_grad) = &analytic[ti];
        assert_eq!(&name, a_name, "tensor order mismatch at index {ti}");
        assert_eq!(a_grad.len(), len, "gradient length mismatch for {name}");
        let coords: Vec<usize> = if len <= MIN_COORDS {
            (0..len).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(ti as u64));
            let mut picked = sample(&mut rng, len, MIN_COORDS).into_vec();
            picked.sort_unstable();
            picked
        };
        let mut max_rel = 0.0f64;
        for &ci in &coords {
            let original = {
                let views = model.tensors_mut();
                views[ti].1[ci]
            };
            set_coord(model, ti, ci, original + eps);
            let plus = loss(model);
            set_coord(model, ti, ci, original - eps);
            let minus = loss(model);
            set_coord(model, ti, ci, original);
            let numeric = (plus - minus) / (2.0 * eps);
            let analytic_v = a_grad[ci];
            let denom = analytic_v.abs().max(numeric.abs()).max(1e-8);
            let rel = (analytic_v - numeric).abs() / denom;
            max_rel = max_rel.max(rel);
        }
        reports.push(TensorReport { name, max_rel_err: max_rel, coords_checked: coords.len() });
    }
    GradCheckReport { tensors: reports, eps, tol }
}

fn set_coord<M: ParamTensors>(model: &mut M, tensor: usize, coord: usize, value: f64) {
    let mut views = model.tensors_mut();
    views[tensor].1[coord] = value;
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Quadratic {
        p: Vec<f64>,
    }

    impl ParamTensors for Quadratic {
        fn tensors_mut(&mut self) -> Vec<(String, &mut [f64])> {
            vec![("p".into(), self.p.as_mut_slice())]
        }
    }

    #[test]
    fn quadratic_gradient_matches() {
        // f(p) = Σ p_i², df/dp_i = 2 p_i.
        let mut model = Quadratic { p: vec![0.3, -1.2, 2.0] };
        let analytic = vec![("p".to_string(), model.p.iter().map(|v| 2.0 * v).collect())];
        let report =
            grad_check(&mut model, &analytic, |m| m.p.iter().map(|v| v * v).sum(), 1e-5, 1e-6, 0);
        assert!(report.passed(), "max err {}", report.max_err());
    }

    #[test]
    fn linear_model_agrees_to_eight_digits() {
        // Central differences are exact (up to rounding) for linear maps.
        let mut model = Quadratic { p: vec![0.25, -0.75, 1.5, 3.0] };
        let weights = [2.0, -1.0, 0.5, 4.0];
        let analytic = vec![("p".to_string(), weights.to_vec())];
        let report = grad_check(
            &mut model,
            &analytic,
            |m| m.p.iter().zip(&weights).map(|(p, w)| p * w).sum(),
            1e-5,
            1e-8,
            0,
        );
        assert!(report.passed(), "max err {}", report.max_err());
    }

    #[test]
    fn injected_error_is_flagged() {
        let mut model = Quadratic { p: vec![0.5, 1.0, -2.0] };
        let mut grad: Vec<f64> = model.p.iter().map(|v| 2.0 * v).collect();
        grad[1] *= 1.10; // deliberately 10% off
        let analytic = vec![("p".to_string(), grad)];
        let report =
            grad_check(&mut model, &analytic, |m| m.p.iter().map(|v| v * v).sum(), 1e-5, 1e-4, 0);
        assert!(!report.passed());
        assert!(report.max_err() > 0.05);
    }

    struct Empty;

    impl ParamTensors for Empty {
        fn tensors_mut(&mut self) -> Vec<(String, &mut [f64])> {
            Vec::new()
        }
    }

    #[test]
    fn zero_parameter_model_gives_empty_report() {
        let report = grad_check(&mut Empty, &[], |_| 0.0, 1e-5, 1e-4, 0);
        assert!(report.tensors.is_empty());
        assert!(report.passed());
    }

    #[test]
    fn large_tensors_sample_at_least_32_coords() {
        let mut model = Quadratic { p: vec![0.01; 1000] };
        let analytic = vec![("p".to_string(), vec![0.02; 1000])];
        let report =
            grad_check(&mut model, &analytic, |m| m.p.iter().map(|v| v * v).sum(), 1e-5, 1e-4, 7);
        assert_eq!(report.tensors[0].coords_checked, 32);
        assert!(report.passed());
    }
}
