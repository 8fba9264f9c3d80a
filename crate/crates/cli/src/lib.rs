//! Std companion to `raagpath-core`: file formats, reports, experiment
//! drivers, and the `raagpath` command-line tool.

pub mod experiments;
pub mod io;
pub mod report;

pub use io::ParseError;

/// Parses `a`, `a..b` (exclusive) or `a..=b` into the listed integers.
pub fn parse_range(s: &str) -> anyhow::Result<Vec<usize>> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..=") {
        Ok((a.trim().parse()?..=b.trim().parse()?).collect())
    } else if let Some((a, b)) = s.split_once("..") {
        Ok((a.trim().parse()?..b.trim().parse()?).collect())
    } else {
        Ok(vec![s.parse()?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4").unwrap(), [4]);
        assert_eq!(parse_range("3..6").unwrap(), [3, 4, 5]);
        assert_eq!(parse_range("3..=5").unwrap(), [3, 4, 5]);
        assert!(parse_range("x").is_err());
    }
}
