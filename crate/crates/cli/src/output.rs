//! CSV tables with a reproducibility header.

use crate::CliError;

/// Formats a float with 17 significant digits.
pub fn num(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".to_string()
    } else if v > 0.0 {
        "inf".to_string()
    } else {
        "-inf".to_string()
    }
}

/// The resolved command line recorded in the first line of every table.
#[derive(Debug, Clone)]
pub struct Invocation {
    tokens: Vec<String>,
}

impl Invocation {
    /// Starts a command line for `command`.
    pub fn new(command: &str) -> Self {
        Self {
            tokens: vec!["pds-cli".to_string(), command.to_string()],
        }
    }

    /// Appends `--flag value`.
    pub fn arg(&mut self, flag: &str, value: impl ToString) -> &mut Self {
        self.tokens.push(format!("--{flag}"));
        self.tokens.push(value.to_string());
        self
    }

    /// Appends a float flag in shortest round-trip form.
    pub fn float(&mut self, flag: &str, value: f64) -> &mut Self {
        self.arg(flag, format!("{value:e}"))
    }

    /// Appends a comma-separated float list.
    pub fn floats(&mut self, flag: &str, values: &[f64]) -> &mut Self {
        let list: Vec<String> = values.iter().map(|v| format!("{v:e}")).collect();
        self.arg(flag, list.join(","))
    }

    /// Appends a bare `--flag`.
    pub fn switch(&mut self, flag: &str) -> &mut Self {
        self.tokens.push(format!("--{flag}"));
        self
    }

    /// The command line with shell quoting where needed.
    pub fn render(&self) -> String {
        self.tokens.iter().map(|t| quote(t)).collect::<Vec<_>>().join(" ")
    }
}

fn quote(token: &str) -> String {
    let plain = !token.is_empty()
        && token
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || "-_.,:=+/".contains(c));
    if plain {
        token.to_string()
    } else {
        format!("'{}'", token.replace('\'', r"'\''"))
    }
}

/// A CSV table under construction.
pub struct Table {
    writer: csv::Writer<Vec<u8>>,
    header: String,
}

impl Table {
    /// New table with the invocation comment and the column names.
    pub fn new(invocation: &Invocation, columns: &[&str]) -> Result<Self, CliError> {
        let mut table = Self {
            writer: csv::WriterBuilder::new().flexible(true).from_writer(Vec::new()),
            header: format!("# {}\n", invocation.render()),
        };
        table.row(columns.iter().copied())?;
        Ok(table)
    }

    /// Appends one record.
    pub fn row<I, S>(&mut self, fields: I) -> Result<(), CliError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields).map_err(csv_error)
    }

    /// Finishes the table and returns its text.
    pub fn finish(self) -> Result<String, CliError> {
        let body = self
            .writer
            .into_inner()
            .map_err(|e| CliError::Output(e.into_error()))?;
        let body = String::from_utf8(body).expect("CSV fields are UTF-8");
        Ok(self.header + &body)
    }
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Output(std::io::Error::new(std::io::ErrorKind::Other, e))
}
