use std::io::Write;
use std::path::Path;

use serde_json::Value;

use crate::error::CliError;

/// Current report schema.
pub const SCHEMA: u32 = 1;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.display().to_string(), source }
}

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(io_err(path))?;
    Ok(serde_json::from_str(&text)?)
}

/// Stamp `schema` and `command` onto the report and render it.
pub fn render(command: &str, mut report: Value) -> Result<String, CliError> {
    if let Value::Object(map) = &mut report {
        map.insert("schema".into(), SCHEMA.into());
        map.insert("command".into(), command.into());
    }
    Ok(serde_json::to_string_pretty(&report)? + "\n")
}

pub fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(io_err(path)),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io_err(Path::new("<stdout>"))),
    }
}

pub fn write_csv<I, R>(path: &Path, header: &[&str], rows: I) -> Result<(), CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush().map_err(io_err(path))
}
