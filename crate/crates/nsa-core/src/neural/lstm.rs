use rand::Rng;

use super::matrix::Matrix;
use super::ops::{ensure_finite, sigmoid, NeuralError};

/// Gate order used for all per-gate arrays and tensor names.
pub const GATES: [&str; 4] = ["i", "f", "o", "g"];
const I: usize = 0;
const F: usize = 1;
const O: usize = 2;
const G: usize = 3;

/// Standard LSTM cell. Gates i, f, o are sigmoids, g is tanh:
///   c_t = f ⊙ c_{t−1} + i ⊙ g,  h_t = o ⊙ tanh(c_t)
#[derive(Clone, Debug)]
pub struct LstmCell {
    pub input_size: usize,
    pub hidden_size: usize,
    /// Input weights per gate, each hidden×input.
    pub w: [Matrix; 4],
    /// Recurrent weights per gate, each hidden×hidden.
    pub u: [Matrix; 4],
    /// Biases per gate.
    pub b: [Vec<f64>; 4],
}

/// Per-gate gradient accumulator with the same shapes as the cell.
#[derive(Clone, Debug)]
pub struct LstmGrads {
    pub w: [Matrix; 4],
    pub u: [Matrix; 4],
    pub b: [Vec<f64>; 4],
}

impl LstmGrads {
    pub fn zeros_like(cell: &LstmCell) -> Self {
        let w = std::array::from_fn(|_| Matrix::zeros(cell.hidden_size, cell.input_size));
        let u = std::array::from_fn(|_| Matrix::zeros(cell.hidden_size, cell.hidden_size));
        let b = std::array::from_fn(|_| vec![0.0; cell.hidden_size]);
        LstmGrads { w, u, b }
    }
}

struct StepCache {
    x: Vec<f64>,
    h_prev: Vec<f64>,
    c_prev: Vec<f64>,
    gates: [Vec<f64>; 4],
    c: Vec<f64>,
}

/// Cached forward pass over a sequence, consumed by `backward_run`.
pub struct LstmRun {
    caches: Vec<StepCache>,
    /// Hidden state after each step.
    pub hs: Vec<Vec<f64>>,
    pub final_c: Vec<f64>,
}

impl LstmRun {
    pub fn final_h(&self) -> &[f64] {
        self.hs.last().expect("LstmRun over a nonempty sequence")
    }
}

impl LstmCell {
    /// Uniform ±sqrt(6/(in+2h)) weights; forget-gate bias 1, others 0.
    pub fn new(input_size: usize, hidden_size: usize, rng: &mut impl Rng) -> Self {
        let bound = (6.0 / (input_size + 2 * hidden_size) as f64).sqrt();
        let w = std::array::from_fn(|_| Matrix::uniform(hidden_size, input_size, bound, rng));
        let u = std::array::from_fn(|_| Matrix::uniform(hidden_size, hidden_size, bound, rng));
        let b = std::array::from_fn(|gate| {
            if gate == F {
                vec![1.0; hidden_size]
            } else {
                vec![0.0; hidden_size]
            }
        });
        LstmCell { input_size, hidden_size, w, u, b }
    }

    fn check_shapes(&self, x: &[f64], h: &[f64], c: &[f64]) -> Result<(), NeuralError> {
        if x.len() != self.input_size {
            return Err(NeuralError::ShapeMismatch {
                op: "lstm_step",
                expected: self.input_size,
                got: x.len(),
            });
        }
        if h.len() != self.hidden_size || c.len() != self.hidden_size {
            return Err(NeuralError::ShapeMismatch {
                op: "lstm_step",
                expected: self.hidden_size,
                got: h.len().max(c.len()),
            });
        }
        Ok(())
    }

    /// Single step without caching; returns (h_t, c_t).
    pub fn step(
        &self,
        x: &[f64],
        h_prev: &[f64],
        c_prev: &[f64],
    ) -> Result<(Vec<f64>, Vec<f64>), NeuralError> {
        let (h, c, _) = self.step_inner(x, h_prev, c_prev)?;
        Ok((h, c))
    }

    fn step_inner(
        &self,
        x: &[f64],
        h_prev: &[f64],
        c_prev: &[f64],
    ) -> Result<(Vec<f64>, Vec<f64>, [Vec<f64>; 4]), NeuralError> {
        self.check_shapes(x, h_prev, c_prev)?;
        let mut gates: [Vec<f64>; 4] = std::array::from_fn(|gate| {
            let mut z = self.w[gate].matvec(x);
            let rec = self.u[gate].matvec(h_prev);
            for ((zv, rv), bv) in z.iter_mut().zip(&rec).zip(&self.b[gate]) {
                *zv += rv + bv;
            }
            z
        });
        for gate in [I, F, O] {
            for v in gates[gate].iter_mut() {
                *v = sigmoid(*v);
            }
        }
        for v in gates[G].iter_mut() {
            *v = v.tanh();
        }
        let mut c = vec![0.0; self.hidden_size];
        let mut h = vec![0.0; self.hidden_size];
        for j in 0..self.hidden_size {
            c[j] = gates[F][j] * c_prev[j] + gates[I][j] * gates[G][j];
            h[j] = gates[O][j] * c[j].tanh();
        }
        ensure_finite(&h, "lstm_step")?;
        ensure_finite(&c, "lstm_step")?;
        Ok((h, c, gates))
    }

    /// Runs the cell over `xs` from the given initial state, caching
    /// everything backpropagation needs.
    pub fn run_from(
        &self,
        h0: &[f64],
        c0: &[f64],
        xs: &[Vec<f64>],
    ) -> Result<LstmRun, NeuralError> {
        let mut caches = Vec::with_capacity(xs.len());
        let mut hs = Vec::with_capacity(xs.len());
        let mut h = h0.to_vec();
        let mut c = c0.to_vec();
        for x in xs {
            let (h_new, c_new, gates) = self.step_inner(x, &h, &c)?;
            caches.push(StepCache {
                x: x.clone(),
                h_prev: h,
                c_prev: c,
                gates,
                c: c_new.clone(),
            });
            hs.push(h_new.clone());
            h = h_new;
            c = c_new;
        }
        Ok(LstmRun { caches, hs, final_c: c })
    }

    /// Runs from the zero state.
    pub fn run(&self, xs: &[Vec<f64>]) -> Result<LstmRun, NeuralError> {
        let zero = vec![0.0; self.hidden_size];
        self.run_from(&zero, &zero.clone(), xs)
    }

    /// Backpropagation through time.
    ///
    /// `dh_per_step[t]` is ∂L/∂h_t from outside the recurrence (may be empty
    /// for "no gradient"); `d_final_c` likewise for the last cell state.
    /// Parameter gradients accumulate into `grads`. Returns per-step input
    /// gradients and the gradient w.r.t. the initial state (dh0, dc0).
    pub fn backward_run(
        &self,
        run: &LstmRun,
        dh_per_step: &[Vec<f64>],
        d_final_c: Option<&[f64]>,
        grads: &mut LstmGrads,
    ) -> Result<(Vec<Vec<f64>>, Vec<f64>, Vec<f64>), NeuralError> {
        let steps = run.caches.len();
        assert_eq!(dh_per_step.len(), steps, "one upstream h-gradient per step");
        let h = self.hidden_size;
        let mut dh_next = vec![0.0; h];
        let mut dc_next = d_final_c.map(|d| d.to_vec()).unwrap_or_else(|| vec![0.0; h]);
        let mut dxs = vec![Vec::new(); steps];
        for t in (0..steps).rev() {
            let cache = &run.caches[t];
            let mut dh = dh_next.clone();
            if !dh_per_step[t].is_empty() {
                for (a, b) in dh.iter_mut().zip(&dh_per_step[t]) {
                    *a += b;
                }
            }
            let (i, f, o, g) = (&cache.gates[I], &cache.gates[F], &cache.gates[O], &cache.gates[G]);
            let mut dz: [Vec<f64>; 4] = std::array::from_fn(|_| vec![0.0; h]);
            let mut dc_prev = vec![0.0; h];
            for j in 0..h {
                let tc = cache.c[j].tanh();
                let dc = dc_next[j] + dh[j] * o[j] * (1.0 - tc * tc);
                let d_o = dh[j] * tc;
                let d_f = dc * cache.c_prev[j];
                let d_i = dc * g[j];
                let d_g = dc * i[j];
                dz[I][j] = d_i * i[j] * (1.0 - i[j]);
                dz[F][j] = d_f * f[j] * (1.0 - f[j]);
                dz[O][j] = d_o * o[j] * (1.0 - o[j]);
                dz[G][j] = d_g * (1.0 - g[j] * g[j]);
                dc_prev[j] = dc * f[j];
            }
            let mut dx = vec![0.0; self.input_size];
            let mut dh_prev = vec![0.0; h];
            for gate in 0..4 {
                grads.w[gate].add_outer(&dz[gate], &cache.x, 1.0);
                grads.u[gate].add_outer(&dz[gate], &cache.h_prev, 1.0);
                for (bg, d) in grads.b[gate].iter_mut().zip(&dz[gate]) {
                    *bg += d;
                }
                let dxg = self.w[gate].matvec_transposed(&dz[gate]);
                for (a, b) in dx.iter_mut().zip(&dxg) {
                    *a += b;
                }
                let dhg = self.u[gate].matvec_transposed(&dz[gate]);
                for (a, b) in dh_prev.iter_mut().zip(&dhg) {
                    *a += b;
                }
            }
            ensure_finite(&dx, "lstm_backward")?;
            dxs[t] = dx;
            dh_next = dh_prev;
            dc_next = dc_prev;
        }
        Ok((dxs, dh_next, dc_next))
    }
}

/// Encodes a sequence with two LSTMs, one per direction.
///
/// Returns the summary concat(last forward h, last backward h) and per-step
/// states concat(fwd h_t, bwd h_t).
pub fn bilstm_encode(
    fwd: &LstmCell,
    bwd: &LstmCell,
    xs: &[Vec<f64>],
) -> Result<(Vec<f64>, Vec<Vec<f64>>), NeuralError> {
    if xs.is_empty() {
        return Err(NeuralError::ShapeMismatch { op: "bilstm_encode", expected: 1, got: 0 });
    }
    let forward = fwd.run(xs)?;
    let reversed: Vec<Vec<f64>> = xs.iter().rev().cloned().collect();
    let backward = bwd.run(&reversed)?;
    let steps = xs.len();
    let mut states = Vec::with_capacity(steps);
    for t in 0..steps {
        let mut state = forward.hs[t].clone();
        // Backward hidden at original position t is its step (steps−1−t).
        state.extend_from_slice(&backward.hs[steps - 1 - t]);
        states.push(state);
    }
    let mut summary = forward.final_h().to_vec();
    summary.extend_from_slice(backward.final_h());
    Ok((summary, states))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn zero_cell(input: usize, hidden: usize) -> LstmCell {
        LstmCell {
            input_size: input,
            hidden_size: hidden,
            w: std::array::from_fn(|_| Matrix::zeros(hidden, input)),
            u: std::array::from_fn(|_| Matrix::zeros(hidden, hidden)),
            b: std::array::from_fn(|_| vec![0.0; hidden]),
        }
    }

    #[test]
    fn zero_weights_give_zero_hidden_state() {
        // With all-zero parameters: g = tanh(0) = 0 so c stays 0, and
        // h = o ⊙ tanh(0) = 0 even though the o-gate is 0.5.
        let cell = zero_cell(3, 4);
        let (h, c) = cell.step(&[1.0, -2.0, 0.5], &[0.0; 4], &[0.0; 4]).unwrap();
        assert_eq!(h, vec![0.0; 4]);
        assert_eq!(c, vec![0.0; 4]);
    }

    #[test]
    fn single_element_bilstm_states_equal_summary() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let fwd = LstmCell::new(3, 2, &mut rng);
        let bwd = LstmCell::new(3, 2, &mut rng);
        let xs = vec![vec![0.3, -0.4, 0.9]];
        let (summary, states) = bilstm_encode(&fwd, &bwd, &xs).unwrap();
        assert_eq!(states.len(), 1);
        assert_eq!(states[0], summary);
        assert_eq!(summary.len(), 4);
    }

    struct SeqHarness {
        cell: LstmCell,
        xs: Vec<Vec<f64>>,
        probes: Vec<Vec<f64>>,
    }

    impl super::super::gradcheck::ParamTensors for SeqHarness {
        fn tensors_mut(&mut self) -> Vec<(String, &mut [f64])> {
            let mut out: Vec<(String, &mut [f64])> = Vec::new();
            for (gate, w) in GATES.iter().zip(self.cell.w.iter_mut()) {
                out.push((format!("w_{gate}"), w.as_mut_slice()));
            }
            for (gate, u) in GATES.iter().zip(self.cell.u.iter_mut()) {
                out.push((format!("u_{gate}"), u.as_mut_slice()));
            }
            for (gate, b) in GATES.iter().zip(self.cell.b.iter_mut()) {
                out.push((format!("b_{gate}"), b.as_mut_slice()));
            }
            for (t, x) in self.xs.iter_mut().enumerate() {
                out.push((format!("x_{t}"), x.as_mut_slice()));
            }
            out
        }
    }

    impl SeqHarness {
        fn loss(&self) -> f64 {
            let run = self.cell.run(&self.xs).unwrap();
            run.hs
                .iter()
                .zip(&self.probes)
                .map(|(h, c)| h.iter().zip(c).map(|(a, b)| a * b).sum::<f64>())
                .sum()
        }
    }

    #[test]
    fn three_step_backprop_matches_finite_differences() {
        use super::super::gradcheck::grad_check;
        use rand::Rng;

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let cell = LstmCell::new(3, 4, &mut rng);
        let xs: Vec<Vec<f64>> =
            (0..3).map(|_| (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        let probes: Vec<Vec<f64>> =
            (0..3).map(|_| (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();

        let run = cell.run(&xs).unwrap();
        let mut grads = LstmGrads::zeros_like(&cell);
        let (dxs, _, _) = cell.backward_run(&run, &probes, None, &mut grads).unwrap();

        let mut analytic: Vec<(String, Vec<f64>)> = Vec::new();
        for (gate, w) in GATES.iter().zip(grads.w.iter()) {
            analytic.push((format!("w_{gate}"), w.as_slice().to_vec()));
        }
        for (gate, u) in GATES.iter().zip(grads.u.iter()) {
            analytic.push((format!("u_{gate}"), u.as_slice().to_vec()));
        }
        for (gate, b) in GATES.iter().zip(grads.b.iter()) {
            analytic.push((format!("b_{gate}"), b.clone()));
        }
        for (t, dx) in dxs.iter().enumerate() {
            analytic.push((format!("x_{t}"), dx.clone()));
        }

        let mut harness = SeqHarness { cell, xs, probes };
        let report = grad_check(&mut harness, &analytic, |h| h.loss(), 1e-5, 1e-4, 0);
        assert!(report.passed(), "max err {}", report.max_err());
    }

    #[test]
    fn bilstm_backprop_matches_finite_differences() {
        use super::super::gradcheck::{grad_check, ParamTensors};
        use rand::Rng;

        struct BiHarness {
            fwd: LstmCell,
            bwd: LstmCell,
            xs: Vec<Vec<f64>>,
            probe: Vec<f64>,
        }

        impl ParamTensors for BiHarness {
            fn tensors_mut(&mut self) -> Vec<(String, &mut [f64])> {
                let mut out: Vec<(String, &mut [f64])> = Vec::new();
                for (dir, cell) in [("fwd", &mut self.fwd), ("bwd", &mut self.bwd)] {
                    for (gate, w) in GATES.iter().zip(cell.w.iter_mut()) {
                        out.push((format!("{dir}.w_{gate}"), w.as_mut_slice()));
                    }
                    for (gate, u) in GATES.iter().zip(cell.u.iter_mut()) {
                        out.push((format!("{dir}.u_{gate}"), u.as_mut_slice()));
                    }
                    for (gate, b) in GATES.iter().zip(cell.b.iter_mut()) {
                        out.push((format!("{dir}.b_{gate}"), b.as_mut_slice()));
                    }
                }
                out
            }
        }

        impl BiHarness {
            fn loss(&self) -> f64 {
                let (summary, _) = bilstm_encode(&self.fwd, &self.bwd, &self.xs).unwrap();
                summary.iter().zip(&self.probe).map(|(a, b)| a * b).sum()
            }
        }

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let fwd = LstmCell::new(2, 3, &mut rng);
        let bwd = LstmCell::new(2, 3, &mut rng);
        let xs: Vec<Vec<f64>> =
            (0..4).map(|_| (0..2).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        let probe: Vec<f64> = (0..6).map(|_| rng.gen_range(-1.0..1.0)).collect();

        // Analytic grads: the summary split feeds the last forward step and
        // the last backward step (which reads the reversed sequence).
        let h = 3;
        let steps = xs.len();
        let fwd_run = fwd.run(&xs).unwrap();
        let reversed: Vec<Vec<f64>> = xs.iter().rev().cloned().collect();
        let bwd_run = bwd.run(&reversed).unwrap();
        let mut dh_fwd = vec![Vec::new(); steps];
        dh_fwd[steps - 1] = probe[..h].to_vec();
        let mut dh_bwd = vec![Vec::new(); steps];
        dh_bwd[steps - 1] = probe[h..].to_vec();
        let mut fwd_grads = LstmGrads::zeros_like(&fwd);
        let mut bwd_grads = LstmGrads::zeros_like(&bwd);
        fwd.backward_run(&fwd_run, &dh_fwd, None, &mut fwd_grads).unwrap();
        bwd.backward_run(&bwd_run, &dh_bwd, None, &mut bwd_grads).unwrap();

        let mut analytic: Vec<(String, Vec<f64>)> = Vec::new();
        for (dir, grads) in [("fwd", &fwd_grads), ("bwd", &bwd_grads)] {
            for (gate, w) in GATES.iter().zip(grads.w.iter()) {
                analytic.push((format!("{dir}.w_{gate}"), w.as_slice().to_vec()));
            }
            for (gate, u) in GATES.iter().zip(grads.u.iter()) {
                analytic.push((format!("{dir}.u_{gate}"), u.as_slice().to_vec()));
            }
            for (gate, b) in GATES.iter().zip(grads.b.iter()) {
                analytic.push((format!("{dir}.b_{gate}"), b.clone()));
            }
        }

        let mut harness = BiHarness { fwd, bwd, xs, probe };
        let report = grad_check(&mut harness, &analytic, |h| h.loss(), 1e-5, 1e-4, 0);
        assert!(report.passed(), "max err {}", report.max_err());
    }

    #[test]
    fn shape_mismatch_errors() {
        let cell = zero_cell(3, 4);
        assert!(cell.step(&[1.0], &[0.0; 4], &[0.0; 4]).is_err());
        assert!(cell.step(&[1.0; 3], &[0.0; 2], &[0.0; 4]).is_err());
        let other = zero_cell(3, 4);
        assert!(bilstm_encode(&cell, &other, &[]).is_err());
    }
}
