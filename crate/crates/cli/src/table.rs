//! Tiny CSV assembler: header row, 9-significant-digit floats,
//! `#`-prefixed comment lines ahead of the header.

use qcorr::C64;

pub struct Table {
    comments: Vec<String>,
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            comments: Vec::new(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn new_owned(header: Vec<String>) -> Self {
        Table {
            comments: Vec::new(),
            header,
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, text: &str) {
        self.comments.push(format!("# {text}"));
    }

    pub fn comment_kv(&mut self, key: &str, value: f64) {
        self.comments.push(format!("# {key} {}", fmt_float(value)));
    }

    pub fn row(&mut self, values: &[f64]) {
        debug_assert_eq!(values.len(), self.header.len());
        self.rows.push(values.to_vec());
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.comments {
            out.push_str(c);
            out.push('\n');
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(|&v| fmt_float(v)).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// 9 significant digits, exponent notation.
pub fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        return String::new();
    }
    format!("{v:.8e}")
}

pub fn fmt_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{:.8e}{}{:.8e}j", z.re, sign, z.im.abs())
}
