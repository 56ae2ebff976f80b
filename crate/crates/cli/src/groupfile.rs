//! Plain-text generator files: one generator per line as `a b c d`,
//! `#` starts a comment line.

use std::fmt::Write as _;
use std::path::Path;

use angle_spectrum_core::{GeneratorSet, GroupError, MoebiusElement, MoebiusError, Tolerances};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupFileError {
    #[error("cannot read group file: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: expected four finite numbers `a b c d`")]
    MalformedEntry { line: usize },
    #[error("generator {index}: determinant {det} differs from 1")]
    NonUnitDeterminant { index: usize, det: f64 },
    #[error("generator {index} is the identity")]
    IdentityGenerator { index: usize },
    #[error("group file lists no generators")]
    Empty,
}

pub fn parse_group_file(path: &Path) -> Result<GeneratorSet, GroupFileError> {
    let text = std::fs::read_to_string(path)?;
    parse_group_str(&text)
}

/// Parses the file format from a string. Line numbers in errors are 1-based,
/// generator indices 0-based.
pub fn parse_group_str(text: &str) -> Result<GeneratorSet, GroupFileError> {
    let tol = Tolerances::default();
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = GroupFileError::MalformedEntry { line: i + 1 };
        let nums: Vec<f64> = match line.split_whitespace().map(str::parse::<f64>).collect() {
            Ok(v) => v,
            Err(_) => return Err(malformed),
        };
        let [a, b, c, d] = nums[..] else {
            return Err(malformed);
        };
        let m = match MoebiusElement::with_tolerance(a, b, c, d, &tol) {
            Ok(m) => m,
            Err(MoebiusError::NonUnitDeterminant { det }) => {
                return Err(GroupFileError::NonUnitDeterminant { index: gens.len(), det })
            }
            Err(_) => return Err(malformed),
        };
        gens.push(m);
    }
    match GeneratorSet::new(gens) {
        Ok(g) => Ok(g),
        Err(GroupError::EmptyGeneratorSet) => Err(GroupFileError::Empty),
        Err(GroupError::IdentityGenerator { index }) => Err(GroupFileError::IdentityGenerator { index }),
        Err(e) => unreachable!("generator set construction failed: {e}"),
    }
}

/// Shortest round-trip decimal for every entry, so parsing the output
/// restores the matrices bit for bit.
pub fn format_group(g: &GeneratorSet) -> String {
    let mut out = String::from("# a b c d\n");
    for (m, name) in g.gens().iter().zip(g.names()) {
        let [a, b, c, d] = m.entries();
        writeln!(out, "# {name}").unwrap();
        writeln!(out, "{a} {b} {c} {d}").unwrap();
    }
    out
}

pub fn write_group_file(g: &GeneratorSet, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, format_group(g))
}
