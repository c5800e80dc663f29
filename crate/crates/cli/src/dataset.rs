//! JSONL dataset records.

use std::path::Path;

use serde::{Deserialize, Serialize};
use slowperc_core::codec::PerceptualRuler;
use slowperc_core::generate::sub_seed;
use slowperc_core::render::RenderConfig;

use crate::error::{read_to_string, CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Val,
    Test,
}

/// Stream used for split hashing, away from the per-attempt sample seeds.
const SPLIT_STREAM: u64 = u64::MAX - 1;

impl Split {
    /// 90% train; the rest is split 1:3 between val and test.
    pub fn assign(seed: u64, index: u64) -> Self {
        match sub_seed(seed, index, SPLIT_STREAM) % 1000 {
            0..900 => Split::Train,
            900..925 => Split::Val,
            _ => Split::Test,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetRecord {
    pub id: String,
    pub image_path: String,
    pub sequence: String,
    pub ruler: PerceptualRuler,
    pub split: Split,
    pub render: RenderConfig,
}

pub fn record_id(index: u64) -> String {
    format!("{index:08}")
}

/// Parses one JSON value per non-blank line.
pub fn read_jsonl<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let text = read_to_string(path)?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| CliError::data(format!("{}:{}: {e}", path.display(), i + 1)))
        })
        .collect()
}
