//! Rectangular parameter sweeps over a resource family.
//!
//! Rows are ordered with the second axis varying fastest. Points are
//! evaluated in parallel and collected in grid order before writing, so the
//! output is byte-identical across runs.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fmt::sig17;
use crate::resources::{bs_resource, tmst, BsSpec, TmstSpec};
use crate::teleport::{classify, Classification};

pub const MAX_GRID_POINTS: u64 = 4_000_000;

/// Exact CSV header of a sweep.
pub const CSV_HEADER: [&str; 10] =
    ["axis1", "axis2", "delta_epr", "f_epr", "det_m", "fidelity", "entangled", "epr", "qt", "class"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Tmst,
    Bs,
}

impl Family {
    /// Swept parameter names; `r` is always fixed.
    pub fn axis_names(self) -> [&'static str; 2] {
        match self {
            Self::Tmst => ["k1", "k2"],
            Self::Bs => ["k", "T"],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Axis {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn new(name: &str, min: f64, max: f64, steps: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::InvalidInput(format!("axis {name}: need finite min < max, got {min}:{max}")));
        }
        if steps < 2 {
            return Err(Error::InvalidInput(format!("axis {name}: steps must be >= 2, got {steps}")));
        }
        Ok(Self { name: name.to_owned(), min, max, steps })
    }

    /// Parses `min:max:steps`.
    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("axis {name}: expected min:max:steps, got `{text}`"));
        let parts: Vec<&str> = text.split(':').collect();
        let [min, max, steps] = parts.as_slice() else {
            return Err(bad());
        };
        let min: f64 = min.trim().parse().map_err(|_| bad())?;
        let max: f64 = max.trim().parse().map_err(|_| bad())?;
        let steps: usize = steps.trim().parse().map_err(|_| bad())?;
        Self::new(name, min, max, steps)
    }

    /// Point `i`, inclusive of both ends.
    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            self.max
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub family: Family,
    pub fixed: BTreeMap<String, f64>,
    pub axis1: Axis,
    pub axis2: Axis,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    pub format: OutputFormat,
}

impl SweepConfig {
    pub fn new(
        family: Family,
        r: f64,
        axis1: Axis,
        axis2: Axis,
        output_path: Option<PathBuf>,
        format: OutputFormat,
    ) -> Result<Self> {
        let config =
            Self { family, fixed: BTreeMap::from([("r".to_owned(), r)]), axis1, axis2, output_path, format };
        config.check()?;
        Ok(config)
    }

    pub fn grid_points(&self) -> u64 {
        self.axis1.steps as u64 * self.axis2.steps as u64
    }

    fn r(&self) -> Result<f64> {
        self.fixed.get("r").copied().ok_or_else(|| Error::InvalidInput("fixed parameter r is missing".into()))
    }

    fn check(&self) -> Result<()> {
        let names = self.family.axis_names();
        let mut got = [self.axis1.name.as_str(), self.axis2.name.as_str()];
        got.sort_unstable();
        let mut want = names;
        want.sort_unstable();
        if got != want {
            return Err(Error::InvalidInput(format!(
                "axes for this family must be {} and {}, got {} and {}",
                names[0], names[1], self.axis1.name, self.axis2.name
            )));
        }
        if let Some(unknown) = self.fixed.keys().find(|k| k.as_str() != "r") {
            return Err(Error::InvalidInput(format!("unknown fixed parameter {unknown}")));
        }
        let points = self.grid_points();
        if points > MAX_GRID_POINTS {
            return Err(Error::GridTooLarge { points, limit: MAX_GRID_POINTS });
        }
        // Corners validate every parameter range.
        for a in [self.axis1.min, self.axis1.max] {
            for b in [self.axis2.min, self.axis2.max] {
                self.state_at(a, b)?;
            }
        }
        Ok(())
    }

    fn state_at(&self, v1: f64, v2: f64) -> Result<crate::CovMat> {
        let r = self.r()?;
        let get = |name: &str| if self.axis1.name == name { v1 } else { v2 };
        Ok(match self.family {
            Family::Tmst => tmst(&TmstSpec::new(r, get("k1"), get("k2"))?),
            Family::Bs => bs_resource(&BsSpec::new(r, get("k"), get("T"))?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridRow {
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub axis1: f64,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub axis2: f64,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub delta_epr: f64,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub f_epr: f64,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub det_m: f64,
    #[serde(serialize_with = "crate::fmt::serialize_sig17")]
    pub fidelity: f64,
    pub entangled: bool,
    pub epr: bool,
    pub qt: bool,
    pub class: Classification,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionGrid {
    pub config: SweepConfig,
    pub rows: Vec<GridRow>,
}

pub fn run_sweep(config: &SweepConfig) -> Result<RegionGrid> {
    config.check()?;
    let xs = config.axis1.values();
    let ys = config.axis2.values();
    let rows = (0..xs.len() * ys.len())
        .into_par_iter()
        .map(|idx| {
            let (x, y) = (xs[idx / ys.len()], ys[idx % ys.len()]);
            let (report, class) = classify(&config.state_at(x, y)?);
            let nan = f64::NAN;
            Ok(match report {
                Some(rep) => GridRow {
                    axis1: x,
                    axis2: y,
                    delta_epr: rep.delta_epr,
                    f_epr: rep.f_epr,
                    det_m: rep.det_m,
                    fidelity: rep.fidelity,
                    entangled: rep.entangled,
                    epr: rep.epr_correlated,
                    qt: rep.qt,
                    class,
                },
                None => GridRow {
                    axis1: x,
                    axis2: y,
                    delta_epr: nan,
                    f_epr: nan,
                    det_m: nan,
                    fidelity: nan,
                    entangled: false,
                    epr: false,
                    qt: false,
                    class,
                },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionGrid { config: config.clone(), rows })
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

impl RegionGrid {
    pub fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER)?;
        for row in &self.rows {
            w.write_record([
                sig17(row.axis1).as_str(),
                &sig17(row.axis2),
                &sig17(row.delta_epr),
                &sig17(row.f_epr),
                &sig17(row.det_m),
                &sig17(row.fidelity),
                flag(row.entangled),
                flag(row.epr),
                flag(row.qt),
                row.class.label(),
            ])?;
        }
        w.flush()
    }

    pub fn write_json<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        serde_json::to_writer_pretty(&mut out, self)?;
        writeln!(out)
    }

    pub fn write_to<W: Write>(&self, format: OutputFormat, out: W) -> std::io::Result<()> {
        match format {
            OutputFormat::Csv => self.write_csv(out),
            OutputFormat::Json => self.write_json(out),
        }
    }

    pub fn write_file(&self, path: &Path, format: OutputFormat) -> Result<()> {
        let io_err = |source| Error::Io { path: path.display().to_string(), source };
        let file = File::create(path).map_err(io_err)?;
        let mut w = BufWriter::new(file);
        self.write_to(format, &mut w).map_err(io_err)?;
        w.flush().map_err(io_err)
    }
}
