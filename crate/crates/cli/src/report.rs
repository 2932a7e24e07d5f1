use std::fmt;
use std::fs;
use std::path::Path;
use std::time::Instant;

use sha2::{Digest, Sha256};

use crate::Failure;

/// `key: value` lines describing one run. Timings are milliseconds since the
/// run started, so they never decrease down the report.
pub struct RunReport {
    lines: Vec<(String, String)>,
    started: Instant,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunReport {
    pub fn new(argv: &[String]) -> Self {
        let mut r = RunReport {
            lines: Vec::new(),
            started: Instant::now(),
        };
        r.put("command", argv.join(" "));
        r
    }

    pub fn put(&mut self, key: impl Into<String>, value: impl fmt::Display) {
        self.lines.push((key.into(), value.to_string()));
    }

    pub fn mark(&mut self, phase: &str) {
        let ms = self.started.elapsed().as_secs_f64() * 1000.0;
        self.put(format!("time-{phase}-ms"), format!("{ms:.3}"));
    }

    /// Reads an input file and records its digest.
    pub fn read_input(&mut self, label: &str, path: &Path) -> Result<String, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        self.put(format!("input-{label}"), path.display());
        self.put(format!("input-{label}-sha256"), sha256_hex(&bytes));
        String::from_utf8(bytes).map_err(|_| Failure::Io(format!("{}: not UTF-8 text", path.display())))
    }

    /// Writes an artifact and records its path and digest.
    pub fn write_artifact(&mut self, label: &str, path: &Path, text: &str) -> Result<(), Failure> {
        fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        self.put(format!("artifact-{label}"), path.display());
        self.put(format!("artifact-{label}-sha256"), sha256_hex(text.as_bytes()));
        Ok(())
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.lines {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_and_digest() {
        let mut r = RunReport::new(&["cfcolor".into(), "verify".into()]);
        r.put("colors-used", 2);
        r.mark("total");
        let text = r.to_string();
        assert!(text.starts_with("command: cfcolor verify\ncolors-used: 2\ntime-total-ms: "));
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
