use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::construction::Method;
use crate::error::Result;

/// One row of a campaign log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignRecord {
    pub n: u32,
    #[serde(rename = "K")]
    pub k: usize,
    pub method: Method,
    pub design_snr_db: f64,
    pub channel_snr_db: f64,
    pub blocks: u64,
    pub block_errs: u64,
    pub bler: f64,
    pub ber: f64,
    pub seed: u64,
}

impl CampaignRecord {
    /// Whether `other` was run with the same code, channel and seed.
    pub fn same_point(&self, other: &CampaignRecord) -> bool {
        self.n == other.n
            && self.k == other.k
            && self.method == other.method
            && self.design_snr_db == other.design_snr_db
            && self.channel_snr_db == other.channel_snr_db
            && self.seed == other.seed
    }
}

/// Appends `rec`, writing the header first when the file is new or empty.
pub fn append_campaign(path: &Path, rec: &CampaignRecord) -> Result<()> {
    let fresh = std::fs::metadata(path).map(|m| m.len() == 0).unwrap_or(true);
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut w = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
    w.serialize(rec)?;
    w.flush()?;
    Ok(())
}

/// CSV text of `records`, column row included.
pub fn campaign_csv(records: &[CampaignRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if records.is_empty() {
        w.write_record(CAMPAIGN_COLUMNS)?;
    }
    for rec in records {
        w.serialize(rec)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Replaces the log at `path` with `header` as `#` lines followed by
/// `records`. The file is written beside `path` and renamed into place.
pub fn write_campaign(path: &Path, header: &[String], records: &[CampaignRecord]) -> Result<()> {
    let mut text = String::new();
    for line in header {
        text += &format!("# {line}\n");
    }
    text += &campaign_csv(records)?;
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = std::path::PathBuf::from(tmp);
    fs::File::create(&tmp)?.write_all(text.as_bytes())?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Column names of a campaign log.
pub const CAMPAIGN_COLUMNS: [&str; 10] = [
    "n", "K", "method", "design_snr_db", "channel_snr_db", "blocks", "block_errs", "bler", "ber", "seed",
];

/// Reads every row of a campaign log, skipping `#` lines; a missing file
/// is an empty log.
pub fn read_campaign(path: &Path) -> Result<Vec<CampaignRecord>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let mut r = csv::ReaderBuilder::new().comment(Some(b'#')).from_path(path)?;
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(channel_snr_db: f64) -> CampaignRecord {
        CampaignRecord {
            n: 10,
            k: 512,
            method: Method::IMPROVED,
            design_snr_db: -0.01,
            channel_snr_db,
            blocks: 12_345,
            block_errs: 100,
            bler: 100.0 / 12_345.0,
            ber: 1.5e-4,
            seed: 7,
        }
    }

    #[test]
    fn append_and_resume() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("log.csv");
        assert!(read_campaign(&path).unwrap().is_empty());
        append_campaign(&path, &rec(1.0)).unwrap();
        append_campaign(&path, &rec(1.5)).unwrap();
        let rows = read_campaign(&path).unwrap();
        assert_eq!(rows, vec![rec(1.0), rec(1.5)]);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("n,K,method,design_snr_db,channel_snr_db,blocks,block_errs,bler,ber,seed\n"));
        assert_eq!(text.lines().count(), 3);
        assert!(rows.iter().any(|r| r.same_point(&rec(1.5))));
        assert!(!rows.iter().any(|r| r.same_point(&rec(2.0))));
    }

    #[test]
    fn rewrite_with_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("log.csv");
        let header = vec!["polar-ga test".to_string(), "args simulate".to_string()];
        write_campaign(&path, &header, &[]).unwrap();
        assert!(read_campaign(&path).unwrap().is_empty());
        write_campaign(&path, &header, &[rec(0.5), rec(1.0)]).unwrap();
        append_campaign(&path, &rec(1.5)).unwrap();
        assert_eq!(read_campaign(&path).unwrap(), vec![rec(0.5), rec(1.0), rec(1.5)]);
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("# polar-ga test\n# args simulate\nn,K,"));
    }
}
