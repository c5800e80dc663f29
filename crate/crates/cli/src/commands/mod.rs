pub mod codec;
pub mod eval;
pub mod generate;
pub mod reference;
pub mod render;
pub mod stats;

use std::path::Path;

use rayon::{ThreadPool, ThreadPoolBuilder};
use slowperc_core::Figure;

use crate::error::{read_to_string, CliError, Result};

pub(crate) fn pool(workers: Option<usize>) -> Result<ThreadPool> {
    let mut b = ThreadPoolBuilder::new();
    if let Some(n) = workers {
        if n == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Usage(e.to_string()))
}

pub(crate) fn read_figure(path: &Path) -> Result<Figure> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

/// Writes to `out` when given, else stdout.
pub(crate) fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => crate::error::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
