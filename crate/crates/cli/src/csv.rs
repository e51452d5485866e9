//! Minimal deterministic CSV emission.
//!
//! Floats are formatted with Rust's shortest round-trip representation, so
//! parsing the text back recovers the exact bits; `-inf` and `NaN` appear
//! as those literals. Lines end with LF; the header row is always present.

/// An in-memory table with a fixed schema.
pub struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = Vec<String>>) {
        for r in rows {
            self.push(r);
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Shortest round-trip decimal text for a float.
pub fn fmt(x: f64) -> String {
    format!("{x}")
}

/// Integer column helper.
pub fn fmt_usize(x: usize) -> String {
    format!("{x}")
}
