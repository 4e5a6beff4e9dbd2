//! Vocabulary construction, convention-based subword splitting, and
//! pre-trained token embeddings (skip-gram with negative sampling).

mod skipgram;
mod subword;
mod vocab;

pub use skipgram::{
    cosine, skipgram_loss_and_grads, train_skipgram, EmbeddingMatrix, SkipGramModel,
    SkipGramParams,
};
pub use subword::split_subwords;
pub use vocab::{build_vocab, Vocabulary, PAD_INDEX, PAD_LEXEME, UNK_INDEX, UNK_LEXEME};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("empty corpus: no tokens to learn from")]
    EmptyCorpus,
    #[error("non-finite loss during embedding training (learning rate too high?)")]
    NonFiniteLoss,
}
