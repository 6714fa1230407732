//! Plain CSV output: header row, comma separators, LF line endings.
//!
//! Floats are written in shortest round-trip form. Magnitudes in
//! `[1e-4, 1e16)` use positional notation, everything else exponent notation.

use std::fmt::Write as _;

pub fn fmt_f64(v: f64) -> String {
    let mag = v.abs();
    if v == 0.0 || (1e-4..1e16).contains(&mag) || !v.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

#[derive(Debug, Default, Clone)]
pub struct CsvBuf {
    out: String,
}

impl CsvBuf {
    pub fn new() -> Self {
        Self::default()
    }

    /// A `# ...` line; readers that honor comments skip it.
    pub fn comment(&mut self, text: &str) {
        for line in text.lines() {
            let _ = writeln!(self.out, "# {line}");
        }
    }

    pub fn header(&mut self, columns: &[&str]) {
        self.out.push_str(&columns.join(","));
        self.out.push('\n');
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut first = true;
        for cell in cells {
            if !first {
                self.out.push(',');
            }
            first = false;
            self.out.push_str(&escape(cell.as_ref()));
        }
        self.out.push('\n');
    }

    pub fn as_str(&self) -> &str {
        &self.out
    }

    pub fn into_string(self) -> String {
        self.out
    }
}

fn escape(cell: &str) -> std::borrow::Cow<'_, str> {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\"")).into()
    } else {
        cell.into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_forms() {
        assert_eq!(fmt_f64(0.0), "0");
        assert_eq!(fmt_f64(0.5), "0.5");
        assert_eq!(fmt_f64(-2.0), "-2");
        assert_eq!(fmt_f64(2.27e-14), "2.27e-14");
        assert_eq!(fmt_f64(6.02e23), "6.02e23");
        assert_eq!(fmt_f64(0.1 + 0.2), "0.30000000000000004");
    }

    #[test]
    fn float_round_trip() {
        for v in [
            1e-300,
            3.5e-5,
            1.0 / 3.0,
            12345.678,
            9.99e15,
            1e16,
            -7.25e-8,
        ] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn rows_and_quoting() {
        let mut buf = CsvBuf::new();
        buf.comment("tensor=test");
        buf.header(&["a", "b"]);
        buf.row(["1", "x,y"]);
        assert_eq!(buf.as_str(), "# tensor=test\na,b\n1,\"x,y\"\n");
    }
}
