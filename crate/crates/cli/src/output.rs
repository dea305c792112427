//! Reading inputs and writing outputs. Files are written to a temporary
//! sibling and renamed, so a failed command never leaves a partial file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde_json::Value;

use mink_core::enumerate::DrawingCatalog;

/// What a command prints: a text line (or block) and its JSON form.
pub struct Report {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Report {
    pub fn new(text: String, json: Value) -> Self {
        Report { text, json, code: 0 }
    }

    pub fn with_code(mut self, code: u8) -> Self {
        self.code = code;
        self
    }

    /// Prints to stdout; a closed pipe is not an error.
    pub fn print(&self, json: bool) {
        let body = if json { serde_json::to_string_pretty(&self.json).expect("plain data") } else { self.text.clone() };
        let _ = writeln!(std::io::stdout().lock(), "{body}");
    }
}

pub fn read_json(p: &Path) -> Result<Value> {
    let s = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    serde_json::from_str(&s).with_context(|| format!("{}: invalid JSON", p.display()))
}

fn temp_sibling(p: &Path) -> PathBuf {
    let name = p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    p.with_file_name(format!(".{name}.tmp{}", std::process::id()))
}

pub fn write_text_atomic(p: &Path, text: &str) -> Result<()> {
    let tmp = temp_sibling(p);
    fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, p).with_context(|| format!("renaming to {}", p.display()))
}

pub fn write_atomic(p: &Path, v: &Value) -> Result<()> {
    write_text_atomic(p, &(serde_json::to_string_pretty(v)? + "\n"))
}

/// Saves a catalog directory, replacing an existing one only on success.
pub fn write_catalog(cat: &DrawingCatalog, dir: &Path) -> Result<()> {
    let tmp = temp_sibling(dir);
    if tmp.exists() {
        fs::remove_dir_all(&tmp)?;
    }
    if let Err(e) = cat.save(&tmp) {
        let _ = fs::remove_dir_all(&tmp);
        return Err(e.into());
    }
    if dir.exists() {
        fs::remove_dir_all(dir).with_context(|| format!("replacing {}", dir.display()))?;
    }
    fs::rename(&tmp, dir).with_context(|| format!("renaming to {}", dir.display()))
}
