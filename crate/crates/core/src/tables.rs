//! Expected values of the n=4 and n=5 reference tables, embedded from `data/tables.json`.

use serde::Deserialize;

use crate::weights::{parse_rational, PiValue, Rational, Signature};

const FIXTURE: &str = include_str!("../data/tables.json");

#[derive(Debug, Clone, Deserialize)]
pub struct TableRow {
    pub table: u8,
    pub d: i64,
    /// The row label, listing -k_i.
    pub label: String,
    pub col3: String,
    pub ratio: String,
    pub mv_volume: String,
}

#[derive(Deserialize)]
struct Fixture {
    version: u32,
    rows: Vec<TableRow>,
}

impl TableRow {
    pub fn signature(&self) -> Signature {
        Signature::parse(&format!("{}:{}", self.label, self.d), true).expect("fixture signature")
    }

    pub fn n(&self) -> usize {
        self.label.split(',').count()
    }

    pub fn col3_value(&self) -> Rational {
        parse_rational(&self.col3).expect("fixture col3")
    }

    pub fn ratio_value(&self) -> Rational {
        parse_rational(&self.ratio).expect("fixture ratio")
    }

    pub fn mv_value(&self) -> PiValue {
        PiValue::parse(&self.mv_volume).expect("fixture volume")
    }

    /// Number of marked points with non-positive weight.
    pub fn reflex_count(&self) -> usize {
        self.signature().orders().iter().filter(|&&k| k >= 0).count()
    }
}

pub fn fixture_version() -> u32 {
    serde_json::from_str::<Fixture>(FIXTURE).expect("fixture").version
}

pub fn all_rows() -> Vec<TableRow> {
    serde_json::from_str::<Fixture>(FIXTURE).expect("fixture").rows
}

/// Rows of the table listing strata with `n` marked points.
pub fn rows_for(n: usize) -> Vec<TableRow> {
    all_rows().into_iter().filter(|r| r.n() == n).collect()
}
