//! On-disk memo for A_n: a JSON object mapping canonical weights to "p/q".

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use crate::recursion::Engine;
use crate::weights::{parse_rational, Rational, WeightVector};

/// Outcome of loading a cache file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadStatus {
    Missing,
    Loaded(usize),
    /// Unreadable or malformed; the message goes to the user as a warning.
    Corrupt(String),
}

fn parse_entries(text: &str) -> Result<Vec<(WeightVector, Rational)>, String> {
    let map: BTreeMap<String, String> = serde_json::from_str(text).map_err(|e| e.to_string())?;
    map.into_iter()
        .map(|(k, v)| {
            let w = WeightVector::parse(&k).map_err(|e| format!("key {k}: {e}"))?;
            let r = parse_rational(&v).map_err(|e| format!("value for {k}: {e}"))?;
            Ok((w, r))
        })
        .collect()
}

/// Preloads `engine` from `path`. Nothing is loaded from a corrupt file.
pub fn load(engine: &Engine, path: &Path) -> LoadStatus {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return LoadStatus::Missing,
        Err(e) => return LoadStatus::Corrupt(e.to_string()),
    };
    match parse_entries(&text) {
        Ok(entries) => {
            let n = entries.len();
            engine.memo_preload(entries);
            LoadStatus::Loaded(n)
        }
        Err(e) => LoadStatus::Corrupt(e),
    }
}

pub fn save(engine: &Engine, path: &Path) -> io::Result<()> {
    let map: BTreeMap<String, String> =
        engine.memo_snapshot().into_iter().map(|(w, r)| (w.to_string(), r.to_string())).collect();
    let text = serde_json::to_string_pretty(&map).map_err(io::Error::other)?;
    fs::write(path, text + "\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::rat;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("memo.json");
        let e = Engine::new();
        assert_eq!(load(&e, &path), LoadStatus::Missing);
        let mu = WeightVector::parse("2/3,1/3,1/3,1/3,1/3").unwrap();
        assert_eq!(e.a_n(&mu), rat(1, 9));
        save(&e, &path).unwrap();
        let f = Engine::new();
        assert!(matches!(load(&f, &path), LoadStatus::Loaded(k) if k > 0));
        assert_eq!(f.a_n(&mu), rat(1, 9));
        assert!(f.memo_hits() > 0);
    }

    #[test]
    fn corrupt_file_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("memo.json");
        fs::write(&path, "{not json").unwrap();
        let e = Engine::new();
        assert!(matches!(load(&e, &path), LoadStatus::Corrupt(_)));
        fs::write(&path, r#"{"1,1": "1/2"}"#).unwrap();
        assert!(matches!(load(&e, &path), LoadStatus::Corrupt(_)));
        assert!(e.memo_snapshot().is_empty());
    }
}
