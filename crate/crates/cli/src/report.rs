use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// Column-oriented result of one command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Self { command: command.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat, digits: usize) -> Result<String, String> {
        match format {
            OutputFormat::Csv => self.to_csv(digits),
            OutputFormat::Table => Ok(self.to_table(digits)),
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).map_err(|e| e.to_string())?;
                s.push('\n');
                Ok(s)
            }
        }
    }

    fn text_rows(&self, digits: usize) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| match c {
                        Cell::Num(v) => format_number(*v, digits),
                        Cell::Text(s) => s.clone(),
                    })
                    .collect()
            })
            .collect()
    }

    fn to_csv(&self, digits: usize) -> Result<String, String> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
        w.write_record(&self.columns).map_err(|e| e.to_string())?;
        for row in self.text_rows(digits) {
            w.write_record(&row).map_err(|e| e.to_string())?;
        }
        let bytes = w.into_inner().map_err(|e| e.to_string())?;
        String::from_utf8(bytes).map_err(|e| e.to_string())
    }

    fn to_table(&self, digits: usize) -> String {
        let rows = self.text_rows(digits);
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let line = |out: &mut String, cells: &[String]| {
            let parts: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            let _ = writeln!(out, "{}", parts.join("  ").trim_end());
        };
        line(&mut out, &self.columns);
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        line(&mut out, &rule);
        for row in &rows {
            line(&mut out, row);
        }
        out
    }
}

/// Fixed notation with `digits` decimals for moderate magnitudes, scientific
/// notation otherwise, and a bare `0` for exact zero.
pub fn format_number(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let a = v.abs();
    if (1e-3..1e6).contains(&a) {
        format!("{v:.digits$}")
    } else {
        format!("{v:.prec$e}", prec = digits.saturating_sub(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_formats() {
        assert_eq!(format_number(2.0, 15), "2.000000000000000");
        assert_eq!(format_number(0.0, 15), "0");
        assert_eq!(format_number(-0.0, 15), "0");
        assert_eq!(format_number(0.5, 3), "0.500");
        assert_eq!(format_number(1.25e-7, 3), "1.25e-7");
        assert_eq!(format_number(f64::NAN, 3), "NaN");
    }

    #[test]
    fn csv_and_table() {
        let mut r = Report::new("demo", &["t", "p"]);
        r.push(vec![0.125.into(), 0.5.into()]);
        assert_eq!(r.render(OutputFormat::Csv, 3).unwrap(), "t,p\n0.125,0.500\n");
        let table = r.render(OutputFormat::Table, 3).unwrap();
        assert_eq!(table, "    t      p\n-----  -----\n0.125  0.500\n");
        let json: serde_json::Value = serde_json::from_str(&r.render(OutputFormat::Json, 3).unwrap()).unwrap();
        assert_eq!(json["rows"][0][1], 0.5);
    }
}
