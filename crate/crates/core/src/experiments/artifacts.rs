//! Writing reports, CSV tables and optional plotting scripts.

use std::path::{Path, PathBuf};

use super::{ExperimentReport, Table};
use crate::error::{Error, Result};
use crate::fsutil::write_atomic;

fn csv_bytes(t: &Table) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&t.headers).map_err(|e| Error::Io(e.to_string()))?;
    for r in &t.rows {
        w.write_record(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

/// A standalone matplotlib script plotting the last numeric column of every
/// table against its first column.
pub fn plot_script(report: &ExperimentReport) -> String {
    let mut s = String::from("import csv\nimport matplotlib\nmatplotlib.use(\"Agg\")\nimport matplotlib.pyplot as plt\n\n");
    for t in &report.tables {
        let (x, y) = (&t.headers[0], &t.headers[t.headers.len() - 1]);
        s += &format!(
            "rows = list(csv.DictReader(open(\"{name}.csv\")))\n\
             fig, ax = plt.subplots()\n\
             try:\n    xs = [float(r[\"{x}\"]) for r in rows]\nexcept ValueError:\n    xs = list(range(len(rows)))\n\
             ys = [float(r[\"{y}\"]) for r in rows]\n\
             ax.plot(xs, ys, \"o-\")\nax.set_xlabel(\"{x}\")\nax.set_ylabel(\"{y}\")\nax.set_title(\"{exp}: {name}\")\n\
             fig.savefig(\"{name}.png\", dpi=120)\n\n",
            name = t.name,
            exp = report.name,
        );
    }
    s
}

/// Writes `report.json`, one CSV per table and, if requested, `plot.py` into
/// `dir`; fills `report.artifacts` with the file names written.
pub fn write_report(report: &mut ExperimentReport, dir: &Path, emit_plots: bool) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    report.artifacts.clear();
    for t in &report.tables {
        let name = format!("{}.csv", t.name);
        write_atomic(&dir.join(&name), &csv_bytes(t)?)?;
        report.artifacts.push(name);
    }
    if emit_plots {
        write_atomic(&dir.join("plot.py"), plot_script(report).as_bytes())?;
        report.artifacts.push("plot.py".into());
    }
    for a in &report.artifacts {
        written.push(dir.join(a));
    }
    let path = dir.join("report.json");
    write_atomic(&path, report.to_json().as_bytes())?;
    written.push(path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::row;

    #[test]
    fn writes_all_files() {
        let tmp = tempfile::tempdir().unwrap();
        let mut rep = ExperimentReport::new("demo", &serde_json::json!({"a": 1}));
        let mut t = Table::new("tab", &["x", "y"]);
        t.push(row![1, 0.5]);
        t.push(row![2, "a,b"]);
        rep.tables.push(t);
        rep.check_le("ok", 0.0, 1.0);
        let files = write_report(&mut rep, tmp.path(), true).unwrap();
        assert_eq!(files.len(), 3);
        let csv = std::fs::read_to_string(tmp.path().join("tab.csv")).unwrap();
        assert_eq!(csv, "x,y\n1,0.5\n2,\"a,b\"\n");
        let json: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(tmp.path().join("report.json")).unwrap()).unwrap();
        assert_eq!(json["artifacts"], serde_json::json!(["tab.csv", "plot.py"]));
        assert!(std::fs::read_to_string(tmp.path().join("plot.py")).unwrap().contains("tab.png"));
    }
}
