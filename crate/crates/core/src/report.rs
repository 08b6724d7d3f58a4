//! CSV output: header row, comma separated, reals with 15 significant digits
//! in scientific notation. Formatting never consults the locale.

use std::io::{self, BufWriter, Write};

/// Formats a real with 15 significant digits, e.g. `7.83201418050547e0`.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{x:.14e}")
}

pub struct CsvOut<W: Write> {
    out: BufWriter<W>,
}

impl<W: Write> CsvOut<W> {
    pub fn new(out: W) -> Self {
        Self {
            out: BufWriter::new(out),
        }
    }

    pub fn header(&mut self, cols: &[&str]) -> io::Result<()> {
        writeln!(self.out, "{}", cols.join(","))
    }

    pub fn row<S: AsRef<str>>(&mut self, cells: &[S]) -> io::Result<()> {
        let mut first = true;
        for cell in cells {
            if !first {
                self.out.write_all(b",")?;
            }
            first = false;
            self.out.write_all(cell.as_ref().as_bytes())?;
        }
        self.out.write_all(b"\n")
    }

    pub fn finish(mut self) -> io::Result<()> {
        self.out.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_formatting_has_fifteen_significant_digits() {
        assert_eq!(fmt_real(1.0), "1.00000000000000e0");
        assert_eq!(fmt_real(-1234.5), "-1.23450000000000e3");
        assert_eq!(fmt_real(std::f64::consts::PI), "3.14159265358979e0");
        let back: f64 = fmt_real(0.1 + 0.2).parse().unwrap();
        assert!((back - 0.3).abs() < 1e-15);
    }

    #[test]
    fn rows_are_comma_separated() {
        let mut buf = Vec::new();
        let mut csv = CsvOut::new(&mut buf);
        csv.header(&["a", "b"]).unwrap();
        csv.row(&["1", "x"]).unwrap();
        csv.finish().unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a,b\n1,x\n");
    }
}
