//! Number formatting shared by the JSON and CSV writers.

use serde::Serializer;
use serde_json::value::RawValue;

/// Formats `x` with 17 significant digits in scientific notation.
///
/// Non-finite values become `nan`, `inf` or `-inf`.
pub fn sig17(x: f64) -> String {
    if x.is_nan() {
        "nan".to_owned()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_owned()
    } else {
        format!("{x:.16e}")
    }
}

/// `serialize_with` helper emitting a JSON number at 17 significant digits.
/// Non-finite values are written as `null`.
pub fn serialize_sig17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if !x.is_finite() {
        return s.serialize_none();
    }
    let raw = RawValue::from_string(sig17(*x)).map_err(serde::ser::Error::custom)?;
    s.serialize_some(&raw)
}

pub fn serialize_sig17_matrix<S: Serializer>(m: &[[f64; 4]; 4], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;

    struct Row<'a>(&'a [f64; 4]);
    impl serde::Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(4))?;
            for x in self.0 {
                seq.serialize_element(&Sig17(*x))?;
            }
            seq.end()
        }
    }

    let mut seq = s.serialize_seq(Some(4))?;
    for row in m {
        seq.serialize_element(&Row(row))?;
    }
    seq.end()
}

/// Wrapper that serializes an `f64` through [`serialize_sig17`].
#[derive(Debug, Clone, Copy)]
pub struct Sig17(pub f64);

impl serde::Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_sig17(&self.0, s)
    }
}
