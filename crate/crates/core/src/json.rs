//! Shared JSON conventions: exact rationals as strings, floats with 17
//! significant digits so identical inputs give byte-identical output.

use serde::{Serialize, Serializer};

/// An `f64` that serializes with 17 significant digits (`null` if not finite).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Float17(pub f64);

impl Serialize for Float17 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let text = format_float17(self.0);
        let number: serde_json::Number = text.parse().map_err(serde::ser::Error::custom)?;
        number.serialize(serializer)
    }
}

pub fn format_float17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn floats(values: &[f64]) -> Vec<Float17> {
    values.iter().copied().map(Float17).collect()
}
