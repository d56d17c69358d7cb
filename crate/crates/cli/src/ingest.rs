use std::path::Path;

use intensive::estimation::Dataset;

use crate::CliError;

/// Reads one real per row from the 0-based `column` of a CSV file.
///
/// A single leading header row is skipped when its cell in `column` does not
/// parse as a number. Any later row that fails to parse, or holds NaN or an
/// infinity, is an error naming its 1-based row number.
pub fn ingest_csv(path: &Path, column: usize) -> Result<Dataset, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|e| CliError::Input(format!("row {row}: {e}")))?;
        if record.iter().all(|c| c.trim().is_empty()) {
            continue;
        }
        let cell = record.get(column).ok_or_else(|| {
            CliError::Input(format!(
                "row {row}: no column {column} (row has {} field(s))",
                record.len()
            ))
        })?;
        match cell.trim().parse::<f64>() {
            Ok(v) if v.is_finite() => values.push(v),
            Ok(v) => {
                return Err(CliError::Input(format!(
                    "row {row}: value {v} is not finite"
                )));
            }
            Err(_) if row == 1 => continue,
            Err(_) => {
                return Err(CliError::Input(format!(
                    "row {row}: cannot parse '{cell}' as a number"
                )));
            }
        }
    }
    if values.is_empty() {
        return Err(CliError::Input(format!("{} holds no data", path.display())));
    }
    Dataset::new(values).map_err(CliError::from)
}
