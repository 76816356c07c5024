//! OEIS b-files: plain text, optional leading `#` comments, then one
//! `<index> <value>` pair per line.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::sequence::Sign;

/// Environment variable naming the directory that holds local b-files.
pub const BFILE_DIR_VAR: &str = "THUE_BFILE_DIR";

/// Class sets `C_1 ... C_9` and their OEIS entries.
pub const CLASS_SET_IDS: [(u64, &str); 9] = [
    (1, "A079523"),
    (2, "A081706"),
    (3, "A161579"),
    (4, "A161627"),
    (5, "A161817"),
    (6, "A161824"),
    (7, "A162311"),
    (8, "A161639"),
    (9, "A161890"),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BFile {
    pub offset: i64,
    pub entries: Vec<(i64, i64)>,
}

impl BFile {
    pub fn from_values(offset: i64, values: &[i64]) -> Self {
        BFile {
            offset,
            entries: values
                .iter()
                .enumerate()
                .map(|(i, &v)| (offset + i as i64, v))
                .collect(),
        }
    }

    pub fn values(&self) -> Vec<i64> {
        self.entries.iter().map(|&(_, v)| v).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Parses b-file text. `origin` only labels errors.
    pub fn parse(text: &str, origin: &str) -> Result<BFile> {
        let err = |line: usize, reason: String| Error::BFileParse {
            path: origin.to_string(),
            line,
            reason,
        };
        let mut entries: Vec<(i64, i64)> = Vec::new();
        for (i, raw) in text.split('\n').enumerate() {
            let lineno = i + 1;
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.trim().is_empty() {
                continue;
            }
            if line.starts_with('#') {
                if entries.is_empty() {
                    continue;
                }
                return Err(err(lineno, "comment after the first data line".into()));
            }
            let mut fields = line.split_whitespace();
            let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(err(
                    lineno,
                    format!("expected '<index> <value>', got '{line}'"),
                ));
            };
            let idx: i64 = idx
                .parse()
                .map_err(|_| err(lineno, format!("bad index '{idx}'")))?;
            let val: i64 = val
                .parse()
                .map_err(|_| err(lineno, format!("bad value '{val}'")))?;
            if let Some(&(prev, _)) = entries.last() {
                if idx == prev {
                    return Err(err(lineno, format!("duplicate index {idx}")));
                }
                if idx != prev + 1 {
                    return Err(err(lineno, format!("index {idx} does not follow {prev}")));
                }
            }
            entries.push((idx, val));
        }
        let offset = entries.first().map_or(0, |&(i, _)| i);
        Ok(BFile { offset, entries })
    }

    pub fn read(path: &Path) -> Result<BFile> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        BFile::parse(&text, &path.display().to_string())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, v) in &self.entries {
            let _ = writeln!(out, "{i} {v}");
        }
        out
    }
}

pub fn export_bfile(values: &[i64], offset: i64, destination: &Path) -> Result<()> {
    if values.is_empty() {
        return Err(Error::invalid("nothing to export"));
    }
    fs::write(destination, BFile::from_values(offset, values).render()).map_err(|source| {
        Error::Io {
            path: destination.to_path_buf(),
            source,
        }
    })
}

pub fn signs_to_values(signs: &[Sign]) -> Vec<i64> {
    signs.iter().map(|s| s.to_i64()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompareReport {
    Match { compared: usize },
    Mismatch { index: i64, expected: i64, got: i64 },
    OffsetMismatch { local: i64, generated: i64 },
}

impl CompareReport {
    pub fn is_match(&self) -> bool {
        matches!(self, CompareReport::Match { .. })
    }
}

/// Compares the first `min(local, generated)` terms. `expected` in a
/// mismatch is the local (b-file) value.
pub fn compare_bfile(local: &BFile, generated: &[i64], offset: i64) -> CompareReport {
    if !local.is_empty() && local.offset != offset {
        return CompareReport::OffsetMismatch {
            local: local.offset,
            generated: offset,
        };
    }
    for (&(index, expected), &got) in local.entries.iter().zip(generated) {
        if expected != got {
            return CompareReport::Mismatch {
                index,
                expected,
                got,
            };
        }
    }
    CompareReport::Match {
        compared: local.len().min(generated.len()),
    }
}

/// `A079523` -> `b079523.txt`
pub fn bfile_name(id: &str) -> Result<String> {
    let digits = id
        .strip_prefix('A')
        .filter(|d| d.len() == 6 && d.bytes().all(|b| b.is_ascii_digit()))
        .ok_or_else(|| Error::invalid(format!("'{id}' is not an OEIS id like A079523")))?;
    Ok(format!("b{digits}.txt"))
}

/// `$THUE_BFILE_DIR`, or `data/bfiles` in this crate.
pub fn bfile_dir() -> PathBuf {
    match std::env::var_os(BFILE_DIR_VAR) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("data")
            .join("bfiles"),
    }
}

pub fn bfile_path(id: &str) -> Result<PathBuf> {
    Ok(bfile_dir().join(bfile_name(id)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn export_format() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b.txt");
        export_bfile(&[1, 5, 7], 1, &path).unwrap();
        assert_eq!(fs::read_to_string(&path).unwrap(), "1 1\n2 5\n3 7\n");
        assert!(export_bfile(&[], 1, &path).is_err());
        let bad = dir.path().join("missing").join("b.txt");
        assert!(matches!(export_bfile(&[1], 0, &bad), Err(Error::Io { .. })));
    }

    #[test]
    fn signs_serialize_as_integers() {
        let v = signs_to_values(&[Sign::Plus, Sign::Minus]);
        assert_eq!(BFile::from_values(0, &v).render(), "0 1\n1 -1\n");
    }

    #[test]
    fn parse_with_comments() {
        let b = BFile::parse("# A079523\n#\n1 1\n2 5\n3 7\n\n", "t").unwrap();
        assert_eq!(b.offset, 1);
        assert_eq!(b.values(), vec![1, 5, 7]);
    }

    #[test]
    fn parse_errors() {
        let cases = [
            ("1 1\n3 5\n", 2),
            ("1 1\n1 5\n", 2),
            ("1 1\n# late\n", 2),
            ("1 1\n2\n", 2),
            ("1 x\n", 1),
            ("1 2 3\n", 1),
        ];
        for (text, line) in cases {
            match BFile::parse(text, "t") {
                Err(Error::BFileParse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn compare_cases() {
        let local = BFile::from_values(1, &[1, 5, 7, 9]);
        assert_eq!(
            compare_bfile(&local, &[1, 5, 7, 9, 13], 1),
            CompareReport::Match { compared: 4 }
        );
        assert_eq!(
            compare_bfile(&local, &[1, 5, 8], 1),
            CompareReport::Mismatch {
                index: 3,
                expected: 7,
                got: 8
            }
        );
        assert_eq!(
            compare_bfile(&local, &[1, 5, 7], 0),
            CompareReport::OffsetMismatch {
                local: 1,
                generated: 0
            }
        );
    }

    #[test]
    fn names() {
        assert_eq!(bfile_name("A079523").unwrap(), "b079523.txt");
        assert!(bfile_name("079523").is_err());
        assert!(bfile_name("A79523").is_err());
    }

    proptest::proptest! {
        #[test]
        fn round_trip(offset in -5i64..5, values in proptest::collection::vec(-1000i64..1000, 1..50)) {
            let b = BFile::from_values(offset, &values);
            let back = BFile::parse(&b.render(), "t").unwrap();
            proptest::prop_assert_eq!(back, b);
        }
    }
}
