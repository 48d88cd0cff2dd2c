//! CSV output: `axis,value,curve,M,C,D,chsh_max`, one row per grid point and
//! curve, LF line endings. Numbers carry 12 significant digits; columns that
//! were not requested are left empty.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::figures::CurveRows;
use crate::sweep::Quantity;

pub const HEADER: &str = "axis,value,curve,M,C,D,chsh_max";
const COLUMNS: [Quantity; 4] = [Quantity::M, Quantity::C, Quantity::D, Quantity::ChshMax];
const SIGNIFICANT: usize = 12;

/// Formats like C's `%.12g`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIGNIFICANT as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (SIGNIFICANT as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes the header and every row of every curve.
pub fn write_csv<W: Write>(out: &mut W, curves: &[CurveRows]) -> std::io::Result<()> {
    writeln!(out, "{HEADER}")?;
    for curve in curves {
        for row in &curve.rows {
            write!(out, "{},{},{}", curve.axis.name(), format_number(row.axis_value), curve.label)?;
            for q in COLUMNS {
                if curve.quantities.contains(&q) {
                    write!(out, ",{}", format_number(q.of(&row.report)))?;
                } else {
                    out.write_all(b",")?;
                }
            }
            out.write_all(b"\n")?;
        }
    }
    out.flush()
}

pub fn emit_csv(curves: &[CurveRows], path: &Path) -> Result<()> {
    let io_err = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let file = File::create(path).map_err(io_err)?;
    write_csv(&mut BufWriter::new(file), curves).map_err(io_err)
}
