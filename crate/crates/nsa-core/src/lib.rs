//! Desk-scale learning-based code analysis for MiniLang.
//!
//! The crate wires a five-stage pipeline — example extraction, vector
//! representation, neural modeling, querying, and validation/ranking —
//! into three analyses over a small indentation-sensitive language:
//!
//! - [`deepbugs`]: swapped-argument bug detection trained on artificially
//!   injected bugs, warnings ranked by predicted probability.
//! - [`typewriter`]: parameter/return type prediction validated by a
//!   gradual type checker via combinatorial search.
//! - [`completion`]: next-token prediction with top-k and beam search.
//!
//! Supporting layers: [`minilang`] (tokenizer, parser, AST), [`embeddings`]
//! (vocabulary + skip-gram token vectors), [`neural`] (from-scratch
//! differentiable core with gradient checking), and [`pipeline`] (corpus
//! management, synthetic corpus generation, config, CLI).

pub mod completion;
pub mod deepbugs;
pub mod embeddings;
pub mod minilang;
pub mod neural;
pub mod pipeline;
pub mod typewriter;
