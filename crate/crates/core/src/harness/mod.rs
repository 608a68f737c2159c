//! Generators, brute-force oracles, verification suites and JSON file
//! helpers behind the `treelab` command line.

pub mod generators;
pub mod oracle;
pub mod suites;

use std::io::{Read, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::Result;

pub use generators::{generate, GeneratorName, GeneratorSpec, Generated};
pub use suites::{run_suite, Suite, SuiteConfig, SuiteReport};

/// Reads JSON from a file, or from standard input when the path is `-`.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    Ok(serde_json::from_str(&text)?)
}

/// Writes JSON to a file, or to standard output when the path is `-`.
pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string(value)?;
    text.push('\n');
    if path.as_os_str() == "-" {
        std::io::stdout().write_all(text.as_bytes())?;
    } else {
        std::fs::write(path, text)?;
    }
    Ok(())
}
