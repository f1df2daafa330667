use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

use super::{ConstructionRecord, DesignSnr, Method, PolarCodeSpec, ReliabilityKind, ReliabilityVector};

/// First line of a code-spec file.
pub const CODE_SPEC_FORMAT: &str = "# polar-ga code-spec v1";

/// First line of a reliability dump.
pub const RELIABILITY_FORMAT: &str = "# polar-ga reliability v1";

#[derive(Serialize, Deserialize)]
struct CodeSpecFile {
    n: u32,
    #[serde(rename = "K")]
    k: usize,
    method: Method,
    design_snr_db: f64,
    info_set: Vec<usize>,
}

fn format_err(path: &Path, detail: impl Into<String>) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        detail: detail.into(),
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes `code` as a header line, a content-hash line and a JSON body.
pub fn write_code_spec(path: &Path, code: &PolarCodeSpec) -> Result<()> {
    fs::write(path, code_spec_text(code, &[])?)?;
    Ok(())
}

/// Text of a code-spec file, with `comments` added as `#` lines after the
/// version line.
pub fn code_spec_text(code: &PolarCodeSpec, comments: &[String]) -> Result<String> {
    let body = serde_json::to_string_pretty(&CodeSpecFile {
        n: code.n(),
        k: code.k(),
        method: code.record().method,
        design_snr_db: code.record().design_snr_db,
        info_set: code.info_set().to_vec(),
    })?;
    let mut out = format!("{CODE_SPEC_FORMAT}\n");
    out += &format!("# generator polar-ga {}\n", env!("CARGO_PKG_VERSION"));
    for c in comments {
        out += &format!("# {c}\n");
    }
    out += &format!("# sha256 {}\n{body}\n", sha256_hex(body.as_bytes()));
    Ok(out)
}

/// Reads a file written by [`write_code_spec`], checking the version line
/// and, when present, the content hash.
pub fn read_code_spec(path: &Path) -> Result<PolarCodeSpec> {
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    if lines.next() != Some(CODE_SPEC_FORMAT) {
        return Err(format_err(path, format!("expected header '{CODE_SPEC_FORMAT}'")));
    }
    let mut hash = None;
    let mut body = String::new();
    for line in lines {
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(h) = comment.trim().strip_prefix("sha256 ") {
                hash = Some(h.trim().to_string());
            }
        } else {
            body.push_str(line);
            body.push('\n');
        }
    }
    let body = body.trim_end();
    if let Some(h) = hash {
        if h != sha256_hex(body.as_bytes()) {
            return Err(format_err(path, "content hash mismatch"));
        }
    }
    let file: CodeSpecFile = serde_json::from_str(body)?;
    if file.k != file.info_set.len() {
        return Err(format_err(
            path,
            format!("K = {} but info_set has {} entries", file.k, file.info_set.len()),
        ));
    }
    PolarCodeSpec::new(
        file.n,
        file.info_set,
        ConstructionRecord {
            method: file.method,
            design_snr_db: file.design_snr_db,
        },
    )
}

fn kind_name(kind: ReliabilityKind) -> &'static str {
    match kind {
        ReliabilityKind::MeanLlr => "mean-llr",
        ReliabilityKind::FlipProb => "flip-prob",
    }
}

/// Dumps `rel` as `index,value` CSV under a metadata header.
pub fn write_reliability_csv(path: &Path, rel: &ReliabilityVector) -> Result<()> {
    let mut f = fs::File::create(path)?;
    writeln!(f, "{RELIABILITY_FORMAT}")?;
    writeln!(
        f,
        "# kind={} n={} method={} design_snr_db={}",
        kind_name(rel.kind),
        rel.n,
        rel.method,
        rel.design_snr.db()
    )?;
    let mut w = csv::Writer::from_writer(f);
    w.write_record(["index", "value"])?;
    for (i, v) in rel.values.iter().enumerate() {
        w.serialize((i, v))?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a dump written by [`write_reliability_csv`].
pub fn read_reliability_csv(path: &Path) -> Result<ReliabilityVector> {
    let mut reader = BufReader::new(fs::File::open(path)?);
    let mut line = String::new();
    reader.read_line(&mut line)?;
    if line.trim_end() != RELIABILITY_FORMAT {
        return Err(format_err(path, format!("expected header '{RELIABILITY_FORMAT}'")));
    }
    line.clear();
    reader.read_line(&mut line)?;
    let meta = line
        .trim_end()
        .strip_prefix("# ")
        .ok_or_else(|| format_err(path, "missing metadata line"))?;
    let mut kind = None;
    let mut n = None;
    let mut method = None;
    let mut snr_db = None;
    for field in meta.split_whitespace() {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| format_err(path, format!("bad metadata field '{field}'")))?;
        let bad = |_| format_err(path, format!("bad value for {key}"));
        match key {
            "kind" => {
                kind = Some(match value {
                    "mean-llr" => ReliabilityKind::MeanLlr,
                    "flip-prob" => ReliabilityKind::FlipProb,
                    other => return Err(format_err(path, format!("unknown kind '{other}'"))),
                })
            }
            "n" => n = Some(value.parse::<u32>().map_err(|e| bad(e.to_string()))?),
            "method" => method = Some(value.parse::<Method>()?),
            "design_snr_db" => snr_db = Some(value.parse::<f64>().map_err(|e| bad(e.to_string()))?),
            _ => {}
        }
    }
    let missing = |what| format_err(path, format!("metadata lacks {what}"));
    let n = n.ok_or_else(|| missing("n"))?;
    let mut values = Vec::with_capacity(1 << n.min(30));
    let mut rows = csv::Reader::from_reader(reader);
    for (expected, row) in rows.deserialize::<(usize, f64)>().enumerate() {
        let (index, value) = row?;
        if index != expected {
            return Err(format_err(path, format!("row {expected} has index {index}")));
        }
        values.push(value);
    }
    if values.len() != 1usize << n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            got: values.len(),
        });
    }
    Ok(ReliabilityVector {
        kind: kind.ok_or_else(|| missing("kind"))?,
        values,
        n,
        design_snr: DesignSnr::from_db(snr_db.ok_or_else(|| missing("design_snr_db"))?)?,
        method: method.ok_or_else(|| missing("method"))?,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{run_flipping, run_ga, select_info_set};
    use super::*;
    use crate::ga_kernel::GaVariant;

    #[test]
    fn code_spec_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("code.json");
        let rel = run_ga(8, DesignSnr::from_db(-0.5).unwrap(), GaVariant::HaModified).unwrap();
        let code = select_info_set(&rel, 100).unwrap();
        write_code_spec(&path, &code).unwrap();
        assert_eq!(read_code_spec(&path).unwrap(), code);
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.contains("\"method\": \"ha-ga\""));
        assert!(text.contains("\"K\": 100"));
    }

    #[test]
    fn code_spec_detects_tampering() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("code.json");
        let rel = run_ga(3, DesignSnr::from_db(0.0).unwrap(), GaVariant::ImprovedLogDomain).unwrap();
        write_code_spec(&path, &select_info_set(&rel, 4).unwrap()).unwrap();
        let text = fs::read_to_string(&path).unwrap().replace("\"n\": 3", "\"n\": 4");
        fs::write(&path, text).unwrap();
        assert!(matches!(read_code_spec(&path), Err(Error::Format { .. })));
        fs::write(&path, "{}").unwrap();
        assert!(matches!(read_code_spec(&path), Err(Error::Format { .. })));
    }

    #[test]
    fn reliability_round_trip_is_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rel.csv");
        for rel in [
            run_ga(7, DesignSnr::from_db(1.3).unwrap(), GaVariant::ConventionalChung).unwrap(),
            run_flipping(7, DesignSnr::from_db(-2.0).unwrap()).unwrap(),
        ] {
            write_reliability_csv(&path, &rel).unwrap();
            let back = read_reliability_csv(&path).unwrap();
            assert_eq!(back.values, rel.values);
            assert_eq!(back.kind, rel.kind);
            assert_eq!(back.method, rel.method);
            assert!((back.design_snr.db() - rel.design_snr.db()).abs() < 1e-12);
        }
    }
}
