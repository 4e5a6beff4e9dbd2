use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Format tag every checkpoint file carries.
pub const CHECKPOINT_FORMAT: &str = "nsa-ckpt-v1";

#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error("checkpoint io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("checkpoint format error: {0}")]
    Format(String),
    #[error("unsupported checkpoint format {0:?} (expected {CHECKPOINT_FORMAT:?})")]
    Version(String),
}

/// One named tensor, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorData {
    pub name: String,
    pub shape: Vec<usize>,
    pub data: Vec<f64>,
}

/// Serialized named-tensor bundle for a trained model.
///
/// The JSON layout is shared by all models: fields exactly
/// `{"format","model","meta","tensors"}` with tensors ordered by name.
/// Floats round-trip exactly (shortest lossless decimal form).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Checkpoint {
    pub format: String,
    pub model: String,
    pub meta: BTreeMap<String, String>,
    pub tensors: Vec<TensorData>,
}

impl Checkpoint {
    pub fn new(model: impl Into<String>) -> Self {
        Checkpoint {
            format: CHECKPOINT_FORMAT.to_string(),
            model: model.into(),
            meta: BTreeMap::new(),
            tensors: Vec::new(),
        }
    }

    pub fn add_tensor(&mut self, name: impl Into<String>, shape: Vec<usize>, data: Vec<f64>) {
        let name = name.into();
        debug_assert_eq!(shape.iter().product::<usize>(), data.len(), "tensor {name}");
        self.tensors.push(TensorData { name, shape, data });
    }

    pub fn tensor(&self, name: &str) -> Result<&TensorData, CheckpointError> {
        self.tensors
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| CheckpointError::Format(format!("missing tensor {name:?}")))
    }

    pub fn meta_str(&self, key: &str) -> Result<&str, CheckpointError> {
        self.meta
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| CheckpointError::Format(format!("missing meta key {key:?}")))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), CheckpointError> {
        let mut copy = self.clone();
        copy.tensors.sort_by(|a, b| a.name.cmp(&b.name));
        let json = serde_json::to_string(&copy)
            .map_err(|e| CheckpointError::Format(e.to_string()))?;
        fs::write(path, json)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Checkpoint, CheckpointError> {
        let text = fs::read_to_string(path)?;
        let ckpt: Checkpoint =
            serde_json::from_str(&text).map_err(|e| CheckpointError::Format(e.to_string()))?;
        if ckpt.format != CHECKPOINT_FORMAT {
            return Err(CheckpointError::Version(ckpt.format));
        }
        for t in &ckpt.tensors {
            if t.shape.iter().product::<usize>() != t.data.len() {
                return Err(CheckpointError::Format(format!(
                    "tensor {:?}: shape {:?} does not cover {} values",
                    t.name,
                    t.shape,
                    t.data.len()
                )));
            }
        }
        Ok(ckpt)
    }

    /// Guards model-specific loads: the checkpoint must be of `expected` kind.
    pub fn expect_model(&self, expected: &str) -> Result<(), CheckpointError> {
        if self.model == expected {
            Ok(())
        } else {
            Err(CheckpointError::Format(format!(
                "model mismatch: checkpoint holds {:?}, expected {:?}",
                self.model, expected
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn save_load_identity_on_random_checkpoint() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.ckpt");
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut ckpt = Checkpoint::new("demo");
        ckpt.meta.insert("d".into(), "8".into());
        ckpt.add_tensor("b", vec![3], (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect());
        ckpt.add_tensor("a", vec![2, 4], (0..8).map(|_| rng.gen_range(-1e9..1e9)).collect());
        ckpt.save(&path).unwrap();
        let loaded = Checkpoint::load(&path).unwrap();
        assert_eq!(loaded.model, "demo");
        assert_eq!(loaded.meta, ckpt.meta);
        // Tensors come back sorted by name with bit-identical values.
        assert_eq!(loaded.tensors[0].name, "a");
        assert_eq!(loaded.tensor("b").unwrap().data, ckpt.tensor("b").unwrap().data);
        assert_eq!(loaded.tensor("a").unwrap().data, ckpt.tensor("a").unwrap().data);
    }

    #[test]
    fn saving_twice_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let p1 = dir.path().join("a.ckpt");
        let p2 = dir.path().join("b.ckpt");
        let mut ckpt = Checkpoint::new("demo");
        ckpt.add_tensor("t", vec![2], vec![0.1, -0.2]);
        ckpt.save(&p1).unwrap();
        ckpt.save(&p2).unwrap();
        assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
    }

    #[test]
    fn truncated_file_is_a_format_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.ckpt");
        let mut ckpt = Checkpoint::new("demo");
        ckpt.add_tensor("t", vec![2], vec![1.0, 2.0]);
        ckpt.save(&path).unwrap();
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() / 2]).unwrap();
        assert!(matches!(Checkpoint::load(&path), Err(CheckpointError::Format(_))));
    }

    #[test]
    fn unknown_format_is_a_version_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.ckpt");
        std::fs::write(
            &path,
            r#"{"format":"nsa-ckpt-v0","model":"demo","meta":{},"tensors":[]}"#,
        )
        .unwrap();
        match Checkpoint::load(&path) {
            Err(CheckpointError::Version(v)) => assert_eq!(v, "nsa-ckpt-v0"),
            other => panic!("expected version error, got {other:?}"),
        }
    }

    #[test]
    fn shape_data_disagreement_is_a_format_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.ckpt");
        std::fs::write(
            &path,
            r#"{"format":"nsa-ckpt-v1","model":"demo","meta":{},"tensors":[{"name":"t","shape":[3],"data":[1.0]}]}"#,
        )
        .unwrap();
        assert!(matches!(Checkpoint::load(&path), Err(CheckpointError::Format(_))));
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            Checkpoint::load("/nonexistent/m.ckpt"),
            Err(CheckpointError::Io(_))
        ));
    }
}
