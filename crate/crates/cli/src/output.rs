//! Result records and where they are written.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use gaussqt::cf_oracle::{QuadratureResult, QuadratureSpec, QuadratureWarning};
use gaussqt::fmt::{serialize_sig17, sig17};
use gaussqt::{
    classify, simon_inseparable, to_canonical, validate, CanonicalParams, Classification, CovMat,
    CriteriaReport, EntanglementVerdict, Error, ValidityReport,
};
use serde::Serialize;

use crate::{Failure, Format};

/// Oracle agreement tolerance on the fidelity.
const ORACLE_TOL: f64 = 1e-5;

pub struct Sink {
    pub out: Option<PathBuf>,
    pub quiet: bool,
}

impl Sink {
    /// Runs `write` against the output file, or stdout unless quiet.
    pub fn emit(&self, write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), Failure> {
        let (result, name) = match &self.out {
            Some(path) => {
                let io_err = |source| Error::Io { path: path.display().to_string(), source };
                let file = File::create(path).map_err(io_err)?;
                let mut w = BufWriter::new(file);
                (write(&mut w).and_then(|_| w.flush()), path.display().to_string())
            }
            None if self.quiet => return Ok(()),
            None => {
                let stdout = io::stdout();
                let mut lock = stdout.lock();
                (write(&mut lock).and_then(|_| lock.flush()), "<stdout>".to_owned())
            }
        };
        result.map_err(|source| Error::Io { path: name, source }.into())
    }
}

fn write_json<T: Serialize>(value: &T, w: &mut dyn Write) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)
}

fn write_csv(header: &[&str], values: &[String], w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "{}", header.join(","))?;
    writeln!(w, "{}", values.join(","))
}

fn flag(b: bool) -> String {
    (b as u8).to_string()
}

/// Everything known about one state. Fields other than `validity` and
/// `classification` are absent for unphysical input.
#[derive(Debug, Serialize)]
pub struct Analysis {
    validity: ValidityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    canonical: Option<CanonicalParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    entanglement: Option<EntanglementVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<CriteriaReport>,
    classification: Classification,
}

impl Analysis {
    pub fn of(v: &CovMat) -> Self {
        let (report, classification) = classify(v);
        let physical = report.is_some();
        Self {
            validity: validate(v),
            canonical: physical.then(|| to_canonical(v).ok().map(|(p, _)| p)).flatten(),
            entanglement: physical.then(|| simon_inseparable(v).ok()).flatten(),
            report,
            classification,
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.report.is_some() {
            0
        } else {
            crate::status::UNPHYSICAL
        }
    }

    pub fn write(&self, format: Format, w: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => write_json(self, w),
            Format::Csv => {
                let header = [
                    "nu_minus",
                    "nu_plus",
                    "physical",
                    "delta_epr",
                    "f_epr",
                    "det_m",
                    "fidelity",
                    "entangled",
                    "epr",
                    "qt",
                    "class",
                ];
                let v = &self.validity;
                let mut values = vec![sig17(v.nu_minus), sig17(v.nu_plus), flag(v.physical)];
                match &self.report {
                    Some(r) => values.extend([
                        sig17(r.delta_epr),
                        sig17(r.f_epr),
                        sig17(r.det_m),
                        sig17(r.fidelity),
                        flag(r.entangled),
                        flag(r.epr_correlated),
                        flag(r.qt),
                    ]),
                    None => values.extend(["nan", "nan", "nan", "nan", "0", "0", "0"].map(String::from)),
                }
                values.push(self.classification.label().to_owned());
                write_csv(&header, &values, w)
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Thresholds {
    #[serde(serialize_with = "serialize_sig17")]
    k1: f64,
    #[serde(serialize_with = "serialize_sig17")]
    k2: f64,
    #[serde(serialize_with = "serialize_sig17")]
    r_ent: f64,
    #[serde(serialize_with = "serialize_sig17")]
    r_qt: f64,
    #[serde(serialize_with = "serialize_sig17")]
    difference: f64,
}

impl Thresholds {
    pub fn new(k1: f64, k2: f64, r_ent: f64, r_qt: f64) -> Self {
        Self { k1, k2, r_ent, r_qt, difference: r_qt - r_ent }
    }

    pub fn write(&self, format: Format, w: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => write_json(self, w),
            Format::Csv => write_csv(
                &["k1", "k2", "r_ent", "r_qt", "difference"],
                &[self.k1, self.k2, self.r_ent, self.r_qt, self.difference].map(sig17),
                w,
            ),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    #[serde(serialize_with = "serialize_sig17")]
    closed_form: f64,
    #[serde(serialize_with = "serialize_sig17")]
    quadrature: f64,
    #[serde(serialize_with = "serialize_sig17")]
    abs_difference: f64,
    #[serde(serialize_with = "serialize_sig17")]
    est_error: f64,
    warning: Option<QuadratureWarning>,
    quadrature_spec: QuadratureSpec,
}

impl OracleReport {
    pub fn new(closed_form: f64, quad: &QuadratureResult, spec: QuadratureSpec) -> Self {
        Self {
            closed_form,
            quadrature: quad.value,
            abs_difference: (closed_form - quad.value).abs(),
            est_error: quad.est_error,
            warning: quad.warning,
            quadrature_spec: spec,
        }
    }

    pub fn agrees(&self) -> bool {
        self.warning.is_none() && self.abs_difference < ORACLE_TOL
    }

    pub fn write(&self, format: Format, w: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Json => write_json(self, w),
            Format::Csv => write_csv(
                &["closed_form", "quadrature", "abs_difference", "est_error", "agrees"],
                &[
                    sig17(self.closed_form),
                    sig17(self.quadrature),
                    sig17(self.abs_difference),
                    sig17(self.est_error),
                    flag(self.agrees()),
                ],
                w,
            ),
        }
    }
}
