//! Text encodings of a state feedback matrix.
//!
//! JSON: `{"receivers":N,"packets":K,"rows":[[0,1,...],...]}`.
//! CSV: one receiver per line, comma-separated `0`/`1` cells, no header.
//!
//! Both readers accept rows or columns that are all zero and reduce them
//! away; the writers emit the reduced matrix, so a reduced matrix round-trips
//! byte for byte.

use serde::{Deserialize, Serialize};

use super::{ModelError, StateFeedbackMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SfmFile {
    pub receivers: usize,
    pub packets: usize,
    pub rows: Vec<Vec<u8>>,
}

impl SfmFile {
    pub fn from_sfm(sfm: &StateFeedbackMatrix) -> Self {
        SfmFile {
            receivers: sfm.n_receivers(),
            packets: sfm.n_packets(),
            rows: sfm.rows(),
        }
    }

    pub fn into_sfm(self) -> Result<StateFeedbackMatrix, ModelError> {
        if self.rows.len() != self.receivers {
            return Err(ModelError::DimensionMismatch {
                expected: self.receivers,
                found: self.rows.len(),
            });
        }
        if let Some((n, row)) = self.rows.iter().enumerate().find(|(_, r)| r.len() != self.packets) {
            return Err(ModelError::RaggedRow {
                row: n,
                expected: self.packets,
                found: row.len(),
            });
        }
        if self.receivers == 0 {
            return Ok(StateFeedbackMatrix::empty());
        }
        StateFeedbackMatrix::reduce_rows(&self.rows)
    }
}

pub fn sfm_from_json(text: &str) -> Result<StateFeedbackMatrix, ModelError> {
    let file: SfmFile = serde_json::from_str(text).map_err(|e| ModelError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.into_sfm()
}

pub fn sfm_to_json(sfm: &StateFeedbackMatrix) -> String {
    serde_json::to_string(&SfmFile::from_sfm(sfm)).expect("plain struct serializes")
}

pub fn sfm_from_csv(text: &str) -> Result<StateFeedbackMatrix, ModelError> {
    let mut rows: Vec<Vec<u8>> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        let mut column = 1;
        for cell in line.split(',') {
            let value = match cell.trim() {
                "0" => 0,
                "1" => 1,
                other => {
                    return Err(ModelError::Parse {
                        line: ln + 1,
                        column,
                        message: format!("expected 0 or 1, found {other:?}"),
                    })
                }
            };
            row.push(value);
            column += cell.len() + 1;
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(ModelError::Parse {
                    line: ln + 1,
                    column: 1,
                    message: format!("row has {} cells, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Ok(StateFeedbackMatrix::empty());
    }
    StateFeedbackMatrix::reduce_rows(&rows)
}

pub fn sfm_to_csv(sfm: &StateFeedbackMatrix) -> String {
    let mut out = String::new();
    for row in sfm.rows() {
        let cells: Vec<&str> = row.iter().map(|&v| if v == 1 { "1" } else { "0" }).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}
