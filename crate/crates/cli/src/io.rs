//! Law and matrix JSON files, sample CSV export.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use hyperchar_core::gaussian::validate_shape;
use hyperchar_core::{GaussianLaw, Matrix, SampleBatch};
use serde::Serialize;

use crate::error::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn read_law(path: &Path) -> Result<GaussianLaw, CliError> {
    serde_json::from_str(&read(path)?).map_err(|source| CliError::Json { path: path.to_path_buf(), source })
}

pub fn write_law(path: &Path, law: &GaussianLaw) -> Result<(), CliError> {
    write_file(path, &to_json(law))
}

/// A symmetric PSD matrix stored as a JSON array of rows.
pub fn read_shape(path: &Path) -> Result<Matrix, CliError> {
    let rows: Vec<Vec<f64>> =
        serde_json::from_str(&read(path)?).map_err(|source| CliError::Json { path: path.to_path_buf(), source })?;
    let m = Matrix::from_rows(&rows)?;
    validate_shape(&m)?;
    Ok(m)
}

/// One row per draw under the header `x1,...,xdim`.
pub fn write_samples_csv<W: Write>(batch: &SampleBatch, out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record((1..=batch.dim).map(|i| format!("x{i}")))?;
    for row in &batch.rows {
        w.write_record(row.as_slice().iter().map(|x| x.to_string()))?;
    }
    w.flush().map_err(|source| CliError::Io { path: PathBuf::from("<csv>"), source })?;
    Ok(())
}
