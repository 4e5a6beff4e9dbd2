use super::ops::NeuralError;

/// L2 norm over all gradient slices taken together.
pub fn global_norm(grads: &[&[f64]]) -> f64 {
    grads.iter().flat_map(|g| g.iter()).map(|v| v * v).sum::<f64>().sqrt()
}

/// One SGD update p ← p − lr·g over (parameter, gradient) pairs, with
/// optional global-norm clipping applied across all pairs at once.
pub fn sgd_step(
    pairs: &mut [(&mut [f64], &[f64])],
    lr: f64,
    clip: Option<f64>,
) -> Result<(), NeuralError> {
    debug_assert!(lr > 0.0, "learning rate must be positive");
    let scale = match clip {
        Some(max_norm) => {
            let grads: Vec<&[f64]> = pairs.iter().map(|(_, g)| *g).collect();
            let norm = global_norm(&grads);
            if !norm.is_finite() {
                return Err(NeuralError::NonFinite { op: "sgd_step" });
            }
            if norm > max_norm {
                max_norm / norm
            } else {
                1.0
            }
        }
        None => 1.0,
    };
    for (params, grads) in pairs.iter_mut() {
        debug_assert_eq!(params.len(), grads.len());
        for (p, g) in params.iter_mut().zip(grads.iter()) {
            *p -= lr * scale * g;
            if !p.is_finite() {
                return Err(NeuralError::NonFinite { op: "sgd_step" });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_step() {
        let mut p = vec![1.0];
        let g = vec![1.0];
        sgd_step(&mut [(&mut p, &g)], 0.1, None).unwrap();
        assert!((p[0] - 0.9).abs() < 1e-15);
    }

    #[test]
    fn clipping_scales_by_global_norm() {
        // Gradient [6,8] has norm 10; clip 1 scales the step by 0.1.
        let mut p = vec![0.0, 0.0];
        let g = vec![6.0, 8.0];
        sgd_step(&mut [(&mut p, &g)], 1.0, Some(1.0)).unwrap();
        assert!((p[0] + 0.6).abs() < 1e-12);
        assert!((p[1] + 0.8).abs() < 1e-12);
    }

    #[test]
    fn norm_below_clip_is_untouched() {
        let mut p = vec![0.0];
        let g = vec![0.5];
        sgd_step(&mut [(&mut p, &g)], 1.0, Some(5.0)).unwrap();
        assert!((p[0] + 0.5).abs() < 1e-15);
    }

    #[test]
    fn non_finite_gradient_is_an_error() {
        let mut p = vec![0.0];
        let g = vec![f64::NAN];
        assert!(sgd_step(&mut [(&mut p, &g)], 0.1, None).is_err());
    }
}
