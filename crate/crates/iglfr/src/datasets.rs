//! Embedded reference datasets and file ingestion.
//!
//! The two bundled datasets are stored as decimal strings and parsed at
//! load time, preserving the published precision exactly.

use crate::error::{Error, Result};
use crate::fit::ObservedSample;
use std::io::Write;
use std::path::Path;

/// Annual flood discharge rates (ft³/s) of the Floyd River, 39
/// observations.
const FLOOD: &[&str] = &[
    "1460", "4050", "3570", "2060", "1300", "1390", "1720", "6280", "1360", "7440", "5320",
    "1400", "3240", "2710", "4520", "4840", "8320", "13900", "71500", "6250", "2260", "318",
    "1330", "970", "1920", "15100", "2870", "20600", "3810", "726", "7500", "7170", "2000",
    "829", "17300", "4740", "13400", "1940", "5660",
];

/// Mortality rates of Covid-19 patients in Canada, 36 observations.
const COVID: &[&str] = &[
    "1.5157", "1.5806", "1.9048", "2.1901", "2.4141", "2.4946", "2.5261", "2.6029", "2.7704",
    "2.7957", "2.8349", "2.8636", "2.9078", "3.0914", "3.1091", "3.1091", "3.1444", "3.1348",
    "3.2110", "3.2135", "3.2218", "3.2823", "3.3592", "3.3769", "3.3825", "3.5146", "3.6346",
    "3.6426", "3.8594", "4.0480", "4.1685", "4.2202", "4.2781", "4.9274", "4.9378", "6.8686",
];

/// A named sample with provenance.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    pub values: ObservedSample,
    pub source: String,
}

/// Input layout accepted by [`load`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataFormat {
    /// Any run of whitespace separates values.
    Whitespace,
    /// Comma-separated rows; read the given zero-based column.
    Csv { column: usize },
}

/// Returns a bundled dataset by name (`flood` or `covid`).
pub fn builtin(name: &str) -> Result<Dataset> {
    let (values, source) = match name.to_ascii_lowercase().as_str() {
        "flood" => (
            FLOOD,
            "Floyd River annual flood discharge rates (ft³/s), n = 39",
        ),
        "covid" => (
            COVID,
            "Covid-19 patient mortality rates, Canada, n = 36",
        ),
        other => return Err(Error::UnknownDataset(other.to_string())),
    };
    let parsed: Vec<f64> = values
        .iter()
        .map(|v| v.parse::<f64>().expect("embedded decimal literal"))
        .collect();
    Ok(Dataset {
        name: name.to_ascii_lowercase(),
        values: ObservedSample::new(parsed)?,
        source: source.to_string(),
    })
}

/// Raw decimal strings of a bundled dataset, for byte-stability checks.
pub fn builtin_raw(name: &str) -> Result<&'static [&'static str]> {
    match name.to_ascii_lowercase().as_str() {
        "flood" => Ok(FLOOD),
        "covid" => Ok(COVID),
        other => Err(Error::UnknownDataset(other.to_string())),
    }
}

/// Parses positive reals from a data file.
///
/// Rejects nonpositive, non-numeric, or empty inputs with the offending
/// line number attached.
pub fn load(path: &Path, format: DataFormat) -> Result<Dataset> {
    let text = std::fs::read_to_string(path)?;
    let values = parse_values(&text, format)?;
    Ok(Dataset {
        name: path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "data".to_string()),
        values: ObservedSample::new(values)?,
        source: path.display().to_string(),
    })
}

/// Parses values from already-read text; see [`load`].
pub fn parse_values(text: &str, format: DataFormat) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_num = lineno + 1;
        let fields: Vec<&str> = match format {
            DataFormat::Whitespace => line.split_whitespace().collect(),
            DataFormat::Csv { column } => {
                let cols: Vec<&str> = line.split(',').map(str::trim).collect();
                if cols.iter().all(|c| c.is_empty()) {
                    Vec::new()
                } else if column < cols.len() {
                    vec![cols[column]]
                } else {
                    return Err(Error::Parse {
                        line: line_num,
                        message: format!(
                            "requested column {column} but row has {} columns",
                            cols.len()
                        ),
                    });
                }
            }
        };
        for field in fields {
            if field.is_empty() {
                continue;
            }
            // skip a header row in CSV inputs
            let parsed = field.parse::<f64>();
            match (parsed, format) {
                (Ok(v), _) => {
                    if !(v.is_finite() && v > 0.0) {
                        return Err(Error::Parse {
                            line: line_num,
                            message: format!("observations must be positive, got {field}"),
                        });
                    }
                    out.push(v);
                }
                (Err(_), DataFormat::Csv { .. }) if line_num == 1 => continue,
                (Err(_), _) => {
                    return Err(Error::Parse {
                        line: line_num,
                        message: format!("not a number: {field:?}"),
                    });
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Error::Parse {
            line: 1,
            message: "no observations found".to_string(),
        });
    }
    Ok(out)
}

/// Writes one value per line (single-column CSV); `load` with
/// `DataFormat::Csv { column: 0 }` or `Whitespace` reads it back exactly.
pub fn export_csv<W: Write>(values: &[f64], mut out: W) -> Result<()> {
    for v in values {
        writeln!(out, "{v:.16e}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flood_matches_published_listing() {
        let d = builtin("flood").unwrap();
        assert_eq!(d.values.n(), 39);
        assert_eq!(d.values.values()[0], 1460.0);
        assert_eq!(*d.values.values().last().unwrap(), 5660.0);
        let max = d.values.sorted().last().copied().unwrap();
        assert_eq!(max, 71500.0);
    }

    #[test]
    fn covid_matches_published_listing() {
        let d = builtin("covid").unwrap();
        assert_eq!(d.values.n(), 36);
        assert_eq!(d.values.sorted()[0], 1.5157);
        assert_eq!(d.values.values()[0], 1.5157);
        assert_eq!(*d.values.values().last().unwrap(), 6.8686);
    }

    #[test]
    fn builtin_bytes_are_pinned() {
        // FNV-1a over the raw decimal strings; any edit to the embedded
        // listings trips this
        fn fnv(strings: &[&str]) -> u64 {
            let mut h: u64 = 0xcbf29ce484222325;
            for s in strings {
                for b in s.bytes().chain(std::iter::once(b';')) {
                    h ^= u64::from(b);
                    h = h.wrapping_mul(0x100000001b3);
                }
            }
            h
        }
        assert_eq!(fnv(builtin_raw("flood").unwrap()), 0xd85e_f536_7561_ce8f);
        assert_eq!(fnv(builtin_raw("covid").unwrap()), 0x74ee_1bb7_ee6a_1212);
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert!(matches!(builtin("nope"), Err(Error::UnknownDataset(_))));
    }

    #[test]
    fn whitespace_parsing() {
        let v = parse_values("1.0 2.0\n3.0", DataFormat::Whitespace).unwrap();
        assert_eq!(v, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn negative_value_is_rejected_with_line_number() {
        match parse_values("-1.0", DataFormat::Whitespace) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_values("1.0\nbad", DataFormat::Whitespace) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(parse_values("", DataFormat::Whitespace).is_err());
    }

    #[test]
    fn csv_column_selection_and_header_skip() {
        let v = parse_values("x,value\n1,10.5\n2,20.5", DataFormat::Csv { column: 1 }).unwrap();
        assert_eq!(v, vec![10.5, 20.5]);
        assert!(parse_values("1,2\n3", DataFormat::Csv { column: 1 }).is_err());
    }

    #[test]
    fn export_then_load_roundtrips_builtin() {
        let d = builtin("flood").unwrap();
        let mut tmp = tempfile::NamedTempFile::new().unwrap();
        export_csv(d.values.values(), &mut tmp).unwrap();
        tmp.flush().unwrap();
        let re = load(tmp.path(), DataFormat::Csv { column: 0 }).unwrap();
        assert_eq!(re.values.values(), d.values.values());
    }
}
