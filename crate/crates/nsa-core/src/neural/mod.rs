//! From-scratch differentiable core shared by all analyses.
//!
//! Dense layers, LSTM cells with manual backpropagation through time,
//! softmax/cross-entropy, SGD with global-norm clipping, checkpoint
//! persistence, and a central-finite-difference gradient checker. All math
//! is 64-bit and single-threaded; fixed seeds give bit-identical runs.

mod checkpoint;
mod dense;
mod gradcheck;
mod lstm;
mod matrix;
mod ops;
mod sgd;

pub use checkpoint::{Checkpoint, CheckpointError, TensorData, CHECKPOINT_FORMAT};
pub use dense::{Activation, DenseGrads, DenseLayer};
pub use gradcheck::{grad_check, GradCheckReport, ParamTensors, TensorReport};
pub use lstm::{bilstm_encode, LstmCell, LstmGrads, LstmRun, GATES};
pub use matrix::Matrix;
pub use ops::{
    binary_cross_entropy, cross_entropy, sigmoid, softmax, softmax_ce_grad, NeuralError,
};
pub use sgd::{global_norm, sgd_step};
