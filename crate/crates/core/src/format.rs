//! Stable text output: JSON with 17 significant digits and CSV matrix dumps.

use std::io;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

/// A `serde_json` formatter that writes every float as `{:.16e}`, i.e. with
/// 17 significant digits, so that values round-trip exactly.
#[derive(Debug, Default, Clone, Copy)]
pub struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{}", format_f64(value))
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn format_f64(value: f64) -> String {
    // -0.0 prints as "-0e0"; normalize for byte-stable output
    let value = if value == 0.0 { 0.0 } else { value };
    format!("{value:.16e}")
}

pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FullPrecision);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json writes UTF-8"))
}

/// JSON shape of a complex number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, serde::Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson { re: z.re, im: z.im }
    }
}

/// Row-major CSV, one matrix row per line.
pub fn matrix_to_csv(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(|&x| format_f64(x)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn int_matrix_to_csv(m: &DMatrix<i64>) -> String {
    let mut out = String::new();
    for row in m.row_iter() {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Row-major nested arrays.
pub fn matrix_to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(format_f64(1.0), "1.0000000000000000e0");
        assert_eq!(format_f64(-0.0), "0.0000000000000000e0");
        assert_eq!(format_f64(1.0 / 3.0), "3.3333333333333331e-1");
        let s = to_json_string(&ComplexJson { re: 0.5, im: -2.0 }).unwrap();
        assert_eq!(
            s,
            r#"{"re":5.0000000000000000e-1,"im":-2.0000000000000000e0}"#
        );
        let back: ComplexJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back, ComplexJson { re: 0.5, im: -2.0 });
    }

    #[test]
    fn csv_dump() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.25]);
        assert_eq!(
            matrix_to_csv(&m),
            "1.0000000000000000e0,0.0000000000000000e0\n0.0000000000000000e0,2.5000000000000000e-1\n"
        );
    }

    proptest! {
        #[test]
        fn floats_round_trip(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL) {
            let s = format_f64(x);
            prop_assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }
}
