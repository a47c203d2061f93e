//! Sampled curve and surface data for export.
//!
//! A [`SampleTable`] holds rows (t, u, v, x, y, z) on a strictly
//! increasing t-grid together with a metadata header (what was sampled,
//! with which parameters, on which grid, by which tool version). Two
//! sinks exist:
//!
//! * CSV: `#`-prefixed metadata lines, then the header `t,u,v,x,y,z`,
//!   then one row per sample with 17 significant digits and `.` as the
//!   decimal separator;
//! * JSON: `{ "meta": {...}, "rows": [[t,u,v,x,y,z], ...] }`.
//!
//! Output is deterministic: identical inputs produce byte-identical
//! text. For surface grids, which have no curve parameter, the t column
//! carries the row index.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::curve::{CurveError, ParamCurve};
use crate::expr::EvalError;
use crate::surface::RotationalSurface;

/// Tool version stamped into metadata headers.
pub const TOOL_VERSION: &str = concat!("pi-geom ", env!("CARGO_PKG_VERSION"));

/// One sample: parameter, surface coordinates, embedded point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRow {
    pub t: f64,
    pub u: f64,
    pub v: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Serialize for SampleRow {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(6))?;
        for value in [self.t, self.u, self.v, self.x, self.y, self.z] {
            seq.serialize_element(&value)?;
        }
        seq.end()
    }
}

/// Ordered metadata; ordering keeps the serialized form stable.
#[derive(Debug, Clone, Serialize)]
pub struct TableMeta {
    pub tool: String,
    /// What was sampled, e.g. `loxodrome kind=ss`.
    pub subject: String,
    /// Parameter key/value pairs in a fixed order.
    pub params: Vec<(String, String)>,
    /// Grid description, e.g. `t in [1, 2], 500 samples`.
    pub grid: String,
}

impl TableMeta {
    pub fn new(subject: impl Into<String>, grid: impl Into<String>) -> TableMeta {
        TableMeta {
            tool: TOOL_VERSION.to_owned(),
            subject: subject.into(),
            params: Vec::new(),
            grid: grid.into(),
        }
    }

    pub fn with_param(mut self, key: impl Into<String>, value: impl std::fmt::Display) -> Self {
        self.params.push((key.into(), value.to_string()));
        self
    }
}

#[derive(Debug, Error)]
pub enum TableError {
    #[error("sample count must be at least 1, got {0}")]
    EmptyGrid(usize),
    #[error("a grid with more than one sample needs min < max, got [{0}, {1}]")]
    DegenerateRange(f64, f64),
    #[error("non-finite sample in row {row} (t = {t})")]
    NonFiniteRow { row: usize, t: f64 },
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Profile(#[from] EvalError),
}

#[derive(Debug, Serialize)]
pub struct SampleTable {
    pub meta: TableMeta,
    pub rows: Vec<SampleRow>,
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| {
        if n == 1 {
            lo
        } else if i == n - 1 {
            hi
        } else {
            lo + (hi - lo) * i as f64 / (n - 1) as f64
        }
    })
}

fn check_grid(lo: f64, hi: f64, n: usize) -> Result<(), TableError> {
    if n == 0 {
        return Err(TableError::EmptyGrid(n));
    }
    if n > 1 && lo >= hi {
        return Err(TableError::DegenerateRange(lo, hi));
    }
    Ok(())
}

impl SampleTable {
    /// Samples a curve on a uniform t-grid of `n` points spanning
    /// [t_min, t_max] (a single point sits at t_min).
    pub fn from_curve(
        curve: &ParamCurve,
        meta: TableMeta,
        t_min: f64,
        t_max: f64,
        n: usize,
    ) -> Result<SampleTable, TableError> {
        check_grid(t_min, t_max, n)?;
        let mut rows = Vec::with_capacity(n);
        for (i, t) in linspace(t_min, t_max, n).enumerate() {
            let (u, v) = curve.coords(t)?;
            let p = curve.embed(t)?;
            let row = SampleRow { t, u, v, x: p.x, y: p.y, z: p.z };
            if ![row.t, row.u, row.v, row.x, row.y, row.z].iter().all(|c| c.is_finite()) {
                return Err(TableError::NonFiniteRow { row: i, t });
            }
            rows.push(row);
        }
        Ok(SampleTable { meta, rows })
    }

    /// Samples a surface on an nu x nv grid, row-major in (u, v); the t
    /// column carries the row index.
    pub fn from_surface(
        surface: &RotationalSurface,
        meta: TableMeta,
        u_range: (f64, f64),
        v_range: (f64, f64),
        nu: usize,
        nv: usize,
    ) -> Result<SampleTable, TableError> {
        check_grid(u_range.0, u_range.1, nu)?;
        check_grid(v_range.0, v_range.1, nv)?;
        let vs: Vec<f64> = linspace(v_range.0, v_range.1, nv).collect();
        let mut rows = Vec::with_capacity(nu * nv);
        for u in linspace(u_range.0, u_range.1, nu) {
            for &v in &vs {
                let p = surface.point(u, v)?;
                let i = rows.len();
                let row = SampleRow { t: i as f64, u, v, x: p.x, y: p.y, z: p.z };
                if ![row.u, row.v, row.x, row.y, row.z].iter().all(|c| c.is_finite()) {
                    return Err(TableError::NonFiniteRow { row: i, t: row.t });
                }
                rows.push(row);
            }
        }
        Ok(SampleTable { meta, rows })
    }

    /// 17 significant digits; round-trips any f64 exactly.
    fn fmt_value(x: f64) -> String {
        format!("{x:.16e}")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# tool: {}\n", self.meta.tool));
        out.push_str(&format!("# subject: {}\n", self.meta.subject));
        for (k, v) in &self.meta.params {
            out.push_str(&format!("# {k}: {v}\n"));
        }
        out.push_str(&format!("# grid: {}\n", self.meta.grid));
        out.push_str("t,u,v,x,y,z\n");
        for r in &self.rows {
            let cells =
                [r.t, r.u, r.v, r.x, r.y, r.z].map(Self::fmt_value).join(",");
            out.push_str(&cells);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;
    use crate::surface::MeridianKind;

    fn surface() -> RotationalSurface {
        RotationalSurface::new(MeridianKind::SpacelikeMeridian, parse("exp(u)").unwrap())
    }

    fn curve() -> ParamCurve {
        crate::geodesic::meridian_geodesic(
            1.0,
            1.0,
            0.0,
            MeridianKind::SpacelikeMeridian,
            parse("u^2").unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn curve_grid_shape() {
        let meta = TableMeta::new("meridian", "t in [0, 1], 11 samples");
        let t = SampleTable::from_curve(&curve(), meta, 0.0, 1.0, 11).unwrap();
        assert_eq!(t.rows.len(), 11);
        assert_eq!(t.rows[0].t, 0.0);
        assert_eq!(t.rows[10].t, 1.0);
        for w in t.rows.windows(2) {
            assert!(w[0].t < w[1].t);
        }
    }

    #[test]
    fn single_sample_table() {
        let meta = TableMeta::new("meridian", "t = 0.5, 1 sample");
        let t = SampleTable::from_curve(&curve(), meta, 0.5, 0.5, 1).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert_eq!(t.rows[0].t, 0.5);
    }

    #[test]
    fn surface_grid_row_major_with_index_parameter() {
        let meta = TableMeta::new("surface", "grid");
        let t = SampleTable::from_surface(&surface(), meta, (1.0, 2.0), (-1.0, 1.0), 3, 5)
            .unwrap();
        assert_eq!(t.rows.len(), 15);
        assert_eq!(t.rows[0].t, 0.0);
        assert_eq!(t.rows[14].t, 14.0);
        assert_eq!(t.rows[0].u, 1.0);
        assert_eq!(t.rows[0].v, -1.0);
        assert_eq!(t.rows[14].u, 2.0);
        assert_eq!(t.rows[14].v, 1.0);
        // 1x1 degenerate grid
        let meta = TableMeta::new("surface", "grid");
        let one = SampleTable::from_surface(&surface(), meta, (1.5, 1.5), (0.0, 0.0), 1, 1)
            .unwrap();
        assert_eq!(one.rows.len(), 1);
    }

    #[test]
    fn csv_layout() {
        let meta = TableMeta::new("meridian", "t in [0, 1], 2 samples")
            .with_param("slope", 1.0)
            .with_param("profile", "u^2");
        let t = SampleTable::from_curve(&curve(), meta, 0.0, 1.0, 2).unwrap();
        let csv = t.to_csv();
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with("# tool: pi-geom "));
        assert_eq!(lines.next().unwrap(), "# subject: meridian");
        assert_eq!(lines.next().unwrap(), "# slope: 1");
        assert_eq!(lines.next().unwrap(), "# profile: u^2");
        assert_eq!(lines.next().unwrap(), "# grid: t in [0, 1], 2 samples");
        assert_eq!(lines.next().unwrap(), "t,u,v,x,y,z");
        let row = lines.next().unwrap();
        assert_eq!(row.split(',').count(), 6);
        // 17 significant digits round-trip
        for cell in row.split(',') {
            let parsed: f64 = cell.parse().unwrap();
            assert_eq!(SampleTable::fmt_value(parsed), cell);
        }
    }

    #[test]
    fn json_shape() {
        let meta = TableMeta::new("meridian", "t in [0, 1], 2 samples").with_param("a", 1);
        let t = SampleTable::from_curve(&curve(), meta, 0.0, 1.0, 2).unwrap();
        let parsed: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(parsed["meta"]["subject"], "meridian");
        assert_eq!(parsed["rows"].as_array().unwrap().len(), 2);
        assert_eq!(parsed["rows"][0].as_array().unwrap().len(), 6);
    }

    #[test]
    fn deterministic_output() {
        let make = || {
            let meta = TableMeta::new("meridian", "grid").with_param("profile", "u^2");
            SampleTable::from_curve(&curve(), meta, 0.0, 1.0, 100).unwrap()
        };
        assert_eq!(make().to_csv(), make().to_csv());
        assert_eq!(make().to_json(), make().to_json());
    }

    #[test]
    fn grid_validation() {
        let meta = || TableMeta::new("x", "g");
        assert!(matches!(
            SampleTable::from_curve(&curve(), meta(), 0.0, 1.0, 0),
            Err(TableError::EmptyGrid(_))
        ));
        assert!(matches!(
            SampleTable::from_curve(&curve(), meta(), 1.0, 0.0, 5),
            Err(TableError::DegenerateRange(..))
        ));
    }

    #[test]
    fn non_finite_rows_are_rejected() {
        // exp overflows around u = 710
        let meta = TableMeta::new("surface", "overflow");
        let res = SampleTable::from_surface(&surface(), meta, (700.0, 720.0), (0.0, 0.0), 3, 1);
        assert!(res.is_err());
    }
}
