//! Deterministic text and tab-separated output.

use clap::ValueEnum;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned columns with prose notes.
    #[default]
    Text,
    /// Tab-separated tables; notes become `#` comment lines.
    #[value(alias = "tsv")]
    MachineReadableTabular,
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Accumulates one command's stdout.
pub struct Report {
    format: Format,
    out: String,
}

impl Report {
    pub fn new(format: Format) -> Self {
        Report { format, out: String::new() }
    }

    pub fn note(&mut self, line: impl AsRef<str>) {
        if self.format == Format::MachineReadableTabular {
            self.out.push_str("# ");
        }
        self.out.push_str(line.as_ref());
        self.out.push('\n');
    }

    /// `key: value` lines, or a two-column table.
    pub fn fields(&mut self, fields: &[(&'static str, String)]) {
        match self.format {
            Format::Text => {
                for (k, v) in fields {
                    self.out.push_str(&format!("{k}: {v}\n"));
                }
            }
            Format::MachineReadableTabular => {
                let mut t = Table::new(&["field", "value"]);
                for (k, v) in fields {
                    t.push(vec![k.to_string(), v.clone()]);
                }
                self.table(&t);
            }
        }
    }

    pub fn table(&mut self, t: &Table) {
        match self.format {
            Format::MachineReadableTabular => {
                self.out.push_str(&t.columns.join("\t"));
                self.out.push('\n');
                for r in &t.rows {
                    let cells: Vec<String> = r.iter().map(|c| c.replace(['\t', '\n'], " ")).collect();
                    self.out.push_str(&cells.join("\t"));
                    self.out.push('\n');
                }
            }
            Format::Text => {
                let mut width: Vec<usize> = t.columns.iter().map(|c| c.chars().count()).collect();
                for r in &t.rows {
                    for (w, c) in width.iter_mut().zip(r) {
                        *w = (*w).max(c.chars().count());
                    }
                }
                let line = |cells: Vec<&str>| -> String {
                    let last = cells.len().saturating_sub(1);
                    let mut s = String::new();
                    for (i, c) in cells.iter().enumerate() {
                        if i > 0 {
                            s.push_str("  ");
                        }
                        s.push_str(c);
                        if i < last {
                            s.push_str(&" ".repeat(width[i] - c.chars().count()));
                        }
                    }
                    s.trim_end().to_string() + "\n"
                };
                self.out.push_str(&line(t.columns.clone()));
                for r in &t.rows {
                    self.out.push_str(&line(r.iter().map(String::as_str).collect()));
                }
            }
        }
    }

    pub fn into_string(self) -> String {
        self.out
    }
}
