//! CSV emission: one `#` metadata line, a header row, then data rows.
//!
//! Output is fully buffered and written in a single shot, so a computation
//! that fails midway leaves no partial file behind.  Nothing here is
//! time- or environment-dependent: identical invocations produce
//! byte-identical bytes.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::Path;

use trapfluct_core::Error;

/// Fixed-significant-digits scientific notation, e.g. `5.00000000000e-1`
/// at 12 digits.
pub fn fmt_real(v: f64, digits: u8) -> String {
    format!("{:.*e}", digits as usize - 1, v)
}

pub struct CsvSink<'a> {
    target: Option<&'a Path>,
    buffer: String,
}

impl<'a> CsvSink<'a> {
    pub fn new(target: Option<&'a Path>, meta: &str, header: &str) -> Result<Self, Error> {
        let mut buffer = String::new();
        let version = env!("CARGO_PKG_VERSION");
        let _ = writeln!(buffer, "# trapfluct {version} | {meta}");
        let _ = writeln!(buffer, "{header}");
        Ok(CsvSink { target, buffer })
    }

    pub fn row(&mut self, args: std::fmt::Arguments<'_>) -> Result<(), Error> {
        let _ = writeln!(self.buffer, "{args}");
        Ok(())
    }

    pub fn finish(self) -> Result<(), Error> {
        match self.target {
            Some(path) => fs::write(path, self.buffer.as_bytes())?,
            None => io::stdout().write_all(self.buffer.as_bytes())?,
        }
        Ok(())
    }
}
