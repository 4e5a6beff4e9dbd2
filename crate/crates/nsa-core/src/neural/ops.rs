use thiserror::Error;

/// Numeric-core errors. Any op producing a non-finite value reports it
/// instead of returning the value.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum NeuralError {
    #[error("shape mismatch in {op}: expected {expected}, got {got}")]
    ShapeMismatch { op: &'static str, expected: usize, got: usize },
    #[error("non-finite value in {op}")]
    NonFinite { op: &'static str },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

pub(crate) fn ensure_finite(values: &[f64], op: &'static str) -> Result<(), NeuralError> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(NeuralError::NonFinite { op })
    }
}

/// Numerically stable logistic function.
pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Softmax with max-subtraction; output entries are in (0,1) and sum to 1.
/// Invariant under adding a constant to all logits.
pub fn softmax(logits: &[f64]) -> Result<Vec<f64>, NeuralError> {
    if logits.is_empty() {
        return Err(NeuralError::ShapeMismatch { op: "softmax", expected: 1, got: 0 });
    }
    ensure_finite(logits, "softmax")?;
    let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut out: Vec<f64> = logits.iter().map(|&v| (v - max).exp()).collect();
    let sum: f64 = out.iter().sum();
    for v in &mut out {
        *v /= sum;
    }
    Ok(out)
}

/// Negative log likelihood of the target class: −ln(probs[target]).
pub fn cross_entropy(probs: &[f64], target: usize) -> Result<f64, NeuralError> {
    if target >= probs.len() {
        return Err(NeuralError::IndexOutOfRange { index: target, len: probs.len() });
    }
    let loss = -probs[target].ln();
    if loss.is_finite() {
        Ok(loss)
    } else {
        Err(NeuralError::NonFinite { op: "cross_entropy" })
    }
}

/// Gradient of cross-entropy w.r.t. the logits feeding softmax:
/// probs − onehot(target).
pub fn softmax_ce_grad(probs: &[f64], target: usize) -> Vec<f64> {
    let mut grad = probs.to_vec();
    grad[target] -= 1.0;
    grad
}

/// −(y·ln p + (1−y)·ln(1−p)) for a sigmoid output p and label y.
pub fn binary_cross_entropy(p: f64, y: f64) -> Result<f64, NeuralError> {
    let loss = -(y * p.ln() + (1.0 - y) * (1.0 - p).ln());
    if loss.is_finite() {
        Ok(loss)
    } else {
        Err(NeuralError::NonFinite { op: "binary_cross_entropy" })
    }
}
