use rand::Rng;

use super::matrix::Matrix;
use super::ops::{ensure_finite, sigmoid, NeuralError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Activation {
    Linear,
    Relu,
    Tanh,
    Sigmoid,
}

/// Fully connected layer y = act(W·x + b).
#[derive(Clone, Debug)]
pub struct DenseLayer {
    pub w: Matrix,
    pub b: Vec<f64>,
    pub activation: Activation,
}

/// Gradients returned by `DenseLayer::backward`.
#[derive(Clone, Debug)]
pub struct DenseGrads {
    pub x: Vec<f64>,
    pub w: Matrix,
    pub b: Vec<f64>,
}

impl DenseLayer {
    /// Glorot-style uniform init: W ~ U(±sqrt(6/(in+out))), b = 0.
    pub fn new(input: usize, output: usize, activation: Activation, rng: &mut impl Rng) -> Self {
        let bound = (6.0 / (input + output) as f64).sqrt();
        DenseLayer {
            w: Matrix::uniform(output, input, bound, rng),
            b: vec![0.0; output],
            activation,
        }
    }

    pub fn input_size(&self) -> usize {
        self.w.cols()
    }

    pub fn output_size(&self) -> usize {
        self.w.rows()
    }

    pub fn forward(&self, x: &[f64]) -> Result<Vec<f64>, NeuralError> {
        if x.len() != self.w.cols() {
            return Err(NeuralError::ShapeMismatch {
                op: "dense_forward",
                expected: self.w.cols(),
                got: x.len(),
            });
        }
        let mut y = self.w.matvec(x);
        for (v, b) in y.iter_mut().zip(&self.b) {
            *v = apply(self.activation, *v + b);
        }
        ensure_finite(&y, "dense_forward")?;
        Ok(y)
    }

    /// Analytic gradients for upstream ∂L/∂y: returns (∂L/∂x, ∂L/∂W, ∂L/∂b).
    pub fn backward(&self, x: &[f64], upstream: &[f64]) -> Result<DenseGrads, NeuralError> {
        if x.len() != self.w.cols() {
            return Err(NeuralError::ShapeMismatch {
                op: "dense_backward",
                expected: self.w.cols(),
                got: x.len(),
            });
        }
        if upstream.len() != self.w.rows() {
            return Err(NeuralError::ShapeMismatch {
                op: "dense_backward",
                expected: self.w.rows(),
                got: upstream.len(),
            });
        }
        let mut z = self.w.matvec(x);
        for (v, b) in z.iter_mut().zip(&self.b) {
            *v += b;
        }
        // dL/dz = dL/dy ⊙ act'(z)
        let dz: Vec<f64> =
            z.iter().zip(upstream).map(|(&zv, &up)| up * derivative(self.activation, zv)).collect();
        let mut w_grad = Matrix::zeros(self.w.rows(), self.w.cols());
        w_grad.add_outer(&dz, x, 1.0);
        let x_grad = self.w.matvec_transposed(&dz);
        ensure_finite(&x_grad, "dense_backward")?;
        Ok(DenseGrads { x: x_grad, w: w_grad, b: dz })
    }
}

fn apply(activation: Activation, z: f64) -> f64 {
    match activation {
        Activation::Linear => z,
        Activation::Relu => z.max(0.0),
        Activation::Tanh => z.tanh(),
        Activation::Sigmoid => sigmoid(z),
    }
}

fn derivative(activation: Activation, z: f64) -> f64 {
    match activation {
        Activation::Linear => 1.0,
        Activation::Relu => {
            if z > 0.0 {
                1.0
            } else {
                0.0
            }
        }
        Activation::Tanh => {
            let t = z.tanh();
            1.0 - t * t
        }
        Activation::Sigmoid => {
            let s = sigmoid(z);
            s * (1.0 - s)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_layer_passes_through() {
        let layer = DenseLayer {
            w: Matrix::from_vec(2, 2, vec![1.0, 0.0, 0.0, 1.0]),
            b: vec![0.0, 0.0],
            activation: Activation::Linear,
        };
        assert_eq!(layer.forward(&[3.0, 4.0]).unwrap(), vec![3.0, 4.0]);
    }

    #[test]
    fn sigmoid_of_zero_preactivation() {
        let layer = DenseLayer {
            w: Matrix::from_vec(1, 2, vec![1.0, 1.0]),
            b: vec![-1.0],
            activation: Activation::Sigmoid,
        };
        let y = layer.forward(&[0.5, 0.5]).unwrap();
        assert_eq!(y, vec![0.5]);
    }

    #[test]
    fn backward_matches_finite_differences() {
        use super::super::gradcheck::{grad_check, ParamTensors};
        use rand::{Rng, SeedableRng};

        struct Harness {
            layer: DenseLayer,
            x: Vec<f64>,
            probe: Vec<f64>,
        }

        impl ParamTensors for Harness {
            fn tensors_mut(&mut self) -> Vec<(String, &mut [f64])> {
                vec![
                    ("w".into(), self.layer.w.as_mut_slice()),
                    ("b".into(), self.layer.b.as_mut_slice()),
                    ("x".into(), self.x.as_mut_slice()),
                ]
            }
        }

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for activation in [Activation::Linear, Activation::Tanh, Activation::Sigmoid] {
            let layer = DenseLayer::new(3, 4, activation, &mut rng);
            let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let probe: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let grads = layer.backward(&x, &probe).unwrap();
            let analytic = vec![
                ("w".to_string(), grads.w.as_slice().to_vec()),
                ("b".to_string(), grads.b.clone()),
                ("x".to_string(), grads.x.clone()),
            ];
            let mut harness = Harness { layer, x, probe };
            let report = grad_check(
                &mut harness,
                &analytic,
                |h| {
                    let y = h.layer.forward(&h.x).unwrap();
                    y.iter().zip(&h.probe).map(|(a, b)| a * b).sum()
                },
                1e-5,
                1e-4,
                0,
            );
            assert!(report.passed(), "{activation:?}: max err {}", report.max_err());
        }
    }

    #[test]
    fn relu_backward_matches_away_from_kink() {
        use super::super::gradcheck::{grad_check, ParamTensors};

        struct Harness {
            layer: DenseLayer,
            x: Vec<f64>,
        }
        impl ParamTensors for Harness {
            fn tensors_mut(&mut self) -> Vec<(String, &mut [f64])> {
                vec![("w".into(), self.layer.w.as_mut_slice()), ("b".into(), self.layer.b.as_mut_slice())]
            }
        }

        // Hand-picked pre-activations well away from zero so the central
        // difference never straddles the kink.
        let layer = DenseLayer {
            w: Matrix::from_vec(2, 2, vec![1.0, 0.5, -0.75, 0.25]),
            b: vec![0.5, -0.5],
            activation: Activation::Relu,
        };
        let x = vec![1.0, 2.0];
        let probe = vec![1.0, 1.0];
        let grads = layer.backward(&x, &probe).unwrap();
        let analytic = vec![
            ("w".to_string(), grads.w.as_slice().to_vec()),
            ("b".to_string(), grads.b.clone()),
        ];
        let mut harness = Harness { layer, x };
        let report = grad_check(
            &mut harness,
            &analytic,
            |h| h.layer.forward(&h.x).unwrap().iter().sum(),
            1e-5,
            1e-4,
            0,
        );
        assert!(report.passed(), "max err {}", report.max_err());
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let layer = DenseLayer {
            w: Matrix::zeros(2, 3),
            b: vec![0.0; 2],
            activation: Activation::Linear,
        };
        assert!(matches!(
            layer.forward(&[1.0, 2.0]),
            Err(NeuralError::ShapeMismatch { expected: 3, got: 2, .. })
        ));
        assert!(layer.backward(&[1.0, 2.0, 3.0], &[1.0]).is_err());
    }
}
