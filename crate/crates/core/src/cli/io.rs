use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use super::CliError;

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid JSON in {}: {e}", path.display())))
}

/// Values of the `value` column, or of the first column when there is none.
pub fn read_series(path: &Path) -> Result<Vec<f64>, CliError> {
    let bad = |e: String| CliError::Usage(format!("{}: {e}", path.display()));
    let mut rdr = csv::Reader::from_path(path).map_err(|e| bad(e.to_string()))?;
    let headers = rdr.headers().map_err(|e| bad(e.to_string()))?.clone();
    let col = headers.iter().position(|h| h.trim() == "value").unwrap_or(0);
    rdr.records()
        .enumerate()
        .map(|(i, rec)| {
            let rec = rec.map_err(|e| bad(e.to_string()))?;
            let field = rec.get(col).ok_or_else(|| bad(format!("row {} has no column {col}", i + 1)))?;
            field
                .trim()
                .parse::<f64>()
                .map_err(|e| bad(format!("row {}: {field:?}: {e}", i + 1)))
        })
        .collect()
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(File::create(p).map_err(|e| {
            CliError::Usage(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_json<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), CliError> {
    let mut w = sink(out)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(io::Error::from)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn write_csv<T: Serialize>(rows: &[T], out: Option<&Path>) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(sink(out)?);
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Io(io::Error::other(e)))?;
    }
    w.flush()?;
    Ok(())
}
