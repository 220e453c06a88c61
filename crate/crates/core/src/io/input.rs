use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use csv::{ReaderBuilder, StringRecord, Trim};

use crate::distribution::{BinRow, BinnedSeries};
use crate::error::{Error, Result};

/// Column names and the period label attached to the series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadOptions {
    pub benefit_column: String,
    pub count_column: String,
    pub states_column: String,
    pub period: String,
}

impl Default for LoadOptions {
    fn default() -> Self {
        LoadOptions {
            benefit_column: "benefit".into(),
            count_column: "count".into(),
            states_column: "states".into(),
            period: String::new(),
        }
    }
}

/// Data lines with comments and blank lines removed, plus the original
/// 1-based number of each kept line.
struct Stripped {
    text: String,
    lines: Vec<u64>,
}

impl Stripped {
    fn new(raw: &str) -> Self {
        let mut text = String::with_capacity(raw.len());
        let mut lines = Vec::new();
        for (i, line) in raw.lines().enumerate() {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            text.push_str(line);
            text.push('\n');
            lines.push(i as u64 + 1);
        }
        Stripped { text, lines }
    }

    fn original(&self, line: u64) -> u64 {
        line.checked_sub(1)
            .and_then(|i| self.lines.get(i as usize))
            .copied()
            .unwrap_or(line)
    }

    fn record_line(&self, record: &StringRecord) -> u64 {
        self.original(record.position().map_or(0, |p| p.line()))
    }
}

fn csv_error(e: csv::Error, src: &Stripped) -> Error {
    let line = src.original(e.position().map_or(0, |p| p.line()));
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        kind => Error::Parse {
            line,
            message: format!("{kind:?}"),
        },
    }
}

fn parse_number(field: &str, column: &str, line: u64) -> Result<f64> {
    let value: f64 = field.parse().map_err(|_| Error::Parse {
        line,
        message: format!("{column} {field:?} is not a number"),
    })?;
    if !value.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("{column} {field:?} is not finite"),
        });
    }
    if value < 0.0 {
        return Err(Error::Parse {
            line,
            message: format!("{column} {value} is negative"),
        });
    }
    Ok(value)
}

/// Reads a header-led CSV table of bins. Lines starting with `#` are
/// comments. Rows may come in any order; duplicate benefits are rejected.
pub fn read_series<R: Read>(mut reader: R, opts: &LoadOptions) -> Result<BinnedSeries> {
    let mut raw = String::new();
    reader.read_to_string(&mut raw)?;
    let src = Stripped::new(&raw);
    if src.lines.is_empty() {
        return Err(Error::InvalidInput("empty file: no header row".into()));
    }
    let mut rdr = ReaderBuilder::new()
        .trim(Trim::All)
        .from_reader(src.text.as_bytes());
    let header = rdr.headers().map_err(|e| csv_error(e, &src))?.clone();
    let header_line = src.lines[0];
    let column = |name: &str| -> Result<usize> {
        header.iter().position(|h| h == name).ok_or_else(|| Error::Parse {
            line: header_line,
            message: format!("missing column {name:?}"),
        })
    };
    let benefit_col = column(&opts.benefit_column)?;
    let count_col = column(&opts.count_column)?;
    let states_col = header.iter().position(|h| h == opts.states_column);

    let mut rows = Vec::new();
    let mut seen: HashMap<u64, u64> = HashMap::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(e, &src))?;
        let line = src.record_line(&record);
        let benefit = parse_number(&record[benefit_col], &opts.benefit_column, line)?;
        let count = parse_number(&record[count_col], &opts.count_column, line)?;
        let states = match states_col.map(|c| &record[c]) {
            None | Some("") => None,
            Some(field) => {
                let g = parse_number(field, &opts.states_column, line)?;
                if g < 1.0 || g.fract() != 0.0 {
                    return Err(Error::Parse {
                        line,
                        message: format!("{} {field:?} must be a positive integer", opts.states_column),
                    });
                }
                Some(g)
            }
        };
        // +0.0 and -0.0 compare equal, so key on the canonical bits
        if let Some(first) = seen.insert((benefit + 0.0).to_bits(), line) {
            return Err(Error::Parse {
                line,
                message: format!("duplicate benefit {benefit} (first on line {first})"),
            });
        }
        rows.push(BinRow {
            benefit,
            count,
            states,
        });
    }
    if rows.is_empty() {
        return Err(Error::InvalidInput("no data rows".into()));
    }
    rows.sort_by(|a, b| a.benefit.total_cmp(&b.benefit));
    BinnedSeries::new(rows, opts.period.clone())
}

/// [`read_series`] on a file.
pub fn load_distribution(path: &Path, opts: &LoadOptions) -> Result<BinnedSeries> {
    let file = std::fs::File::open(path)?;
    read_series(std::io::BufReader::new(file), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distribution::normalize;

    fn read(text: &str) -> Result<BinnedSeries> {
        read_series(text.as_bytes(), &LoadOptions::default())
    }

    fn line_of_error(text: &str) -> u64 {
        match read(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn three_rows() {
        let s = read("benefit,count,states\n1,10,5\n2, 20 ,4\n3,5,5\n").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.rows()[1], BinRow::with_states(2.0, 20.0, 4.0));
    }

    #[test]
    fn comments_order_and_missing_states() {
        let s = read("# income table\nbenefit,count\n# top bin first\n30,1\n10,4\n20,2\n").unwrap();
        let b: Vec<f64> = s.rows().iter().map(|r| r.benefit).collect();
        assert_eq!(b, vec![10.0, 20.0, 30.0]);
        let d = normalize(&s).unwrap();
        assert!(d.nu().iter().all(|&v| v == 1.0));
    }

    #[test]
    fn errors_name_lines() {
        assert_eq!(line_of_error("benefit,count\n1,2\n2,3\n3,4\n4,-5\n"), 5);
        assert_eq!(line_of_error("benefit,count\n1,2\n# note\n2,abc\n"), 4);
        assert_eq!(line_of_error("# a\n\nbenefit,count\n\n1,2\n\n\n2,-1\n"), 8);
        assert_eq!(line_of_error("benefit,count\n1,2\n2,3\n1,4\n"), 4);
        assert_eq!(line_of_error("benefit,count,states\n1,2,3\n2,3,1.5\n"), 3);
        assert_eq!(line_of_error("benefit,count,states\n1,2,3\n2,3,0\n"), 3);
        assert_eq!(line_of_error("benefit,count\n1,2\n2,3,4\n"), 3);
        assert_eq!(line_of_error("benefit,people\n1,2\n"), 1);
    }

    #[test]
    fn empty_and_degenerate_files() {
        assert!(matches!(read(""), Err(Error::InvalidInput(_))));
        assert!(matches!(read("benefit,count\n"), Err(Error::InvalidInput(_))));
        assert!(matches!(read("benefit,count\n1,0\n2,0\n"), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn missing_file_is_io_error() {
        let e = load_distribution(Path::new("/nonexistent/bins.csv"), &LoadOptions::default()).unwrap_err();
        assert!(matches!(e, Error::Io(_)));
        assert!(e.is_input_error());
    }
}
