use std::fmt::Write as _;
use std::io;
use std::path::Path;

use super::field::ScalarField;

/// Snapshot CSV: header `x,value` (1D) or `x,y,value` (2D), rows in storage order.
pub fn snapshot_csv(f: &ScalarField) -> String {
    let g = f.grid();
    let mut out = String::new();
    out.push_str(if g.dim() == 1 { "x,value\n" } else { "x,y,value\n" });
    for (i, v) in f.values().iter().enumerate() {
        let [x, y] = g.coords(i);
        if g.dim() == 1 {
            let _ = writeln!(out, "{x},{v}");
        } else {
            let _ = writeln!(out, "{x},{y},{v}");
        }
    }
    out
}

/// Writes `contents` to a sibling temp file and renames it into place, so the
/// target is either complete or absent.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let file_name =
        path.file_name().ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "path has no file name"))?;
    let mut tmp_name = std::ffi::OsString::from(".");
    tmp_name.push(file_name);
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::GridSpec;

    #[test]
    fn csv_header_and_row_order() {
        let g = GridSpec::new(2, 8, 8.0).unwrap();
        let f = ScalarField::from_fn(g, |x| 10.0 * x[0] + x[1]);
        let csv = snapshot_csv(&f);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "x,y,value");
        assert_eq!(lines.len(), 65);
        assert_eq!(lines[2], "0,1,1");
        assert_eq!(lines[9], "1,0,10");
        let g1 = GridSpec::new(1, 8, 8.0).unwrap();
        assert!(snapshot_csv(&ScalarField::zeros(g1)).starts_with("x,value\n0,0\n"));
    }
}
