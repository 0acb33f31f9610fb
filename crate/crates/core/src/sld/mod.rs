//! Sector-length (Shor–Laflamme) distributions: the [`Sld`] value type,
//! exact enumeration kernels, the statevector oracle, and the identity and
//! bound checkers that every pure-state distribution must satisfy.

mod enumerate;
pub(crate) use enumerate::SEQUENTIAL_BITS;
mod identities;
mod statevector;

pub use enumerate::{
    a1_exact_qudit, a2_bounds_prime, brute_force_sld, brute_force_sld_qudit, graph_sld,
    low_weight_sectors,
};
pub use identities::{
    coarse_bound_check, macwilliams_residuals, moments_from_graph, moments_from_sld, Moments,
};
pub use statevector::{
    ghz_amplitudes, graph_state_amplitudes, statevector_sld, statevector_sld_raw,
    w_state_amplitudes, SNAP_TOLERANCE,
};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, format_rational, parse_rational};
use crate::error::{Error, Result};
use crate::json::{floats, Float17};

/// Largest system size accepted from external SLD documents.
pub const MAX_DOCUMENT_N: usize = 100_000;

/// Where a distribution came from; carried into the JSON `source` field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    BruteForce,
    ClosedForm,
    Statevector,
    Group,
    LowWeight,
    Noisy,
    Input,
}

impl Source {
    pub fn as_str(&self) -> &'static str {
        match self {
            Source::BruteForce => "brute_force",
            Source::ClosedForm => "closed_form",
            Source::Statevector => "statevector",
            Source::Group => "group",
            Source::LowWeight => "low_weight",
            Source::Noisy => "noisy",
            Source::Input => "input",
        }
    }
}

/// Exact sector-length vector `A_0..=A_n` of an `n`-qudit state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sld {
    n: usize,
    d: u32,
    values: Vec<BigRational>,
    source: Source,
}

impl Sld {
    pub fn new(n: usize, d: u32, values: Vec<BigRational>, source: Source) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("sector-length vector needs n >= 1"));
        }
        if d < 2 {
            return Err(Error::invalid(format!("dimension d = {d} below 2")));
        }
        if values.len() != n + 1 {
            return Err(Error::invalid(format!(
                "expected {} entries for n = {n}, got {}",
                n + 1,
                values.len()
            )));
        }
        if let Some(k) = values.iter().position(|v| v.is_negative()) {
            return Err(Error::invalid(format!("entry A_{k} is negative")));
        }
        Ok(Sld {
            n,
            d,
            values,
            source,
        })
    }

    pub fn from_integers<I, T>(n: usize, d: u32, values: I, source: Source) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let values = values.into_iter().map(|v| arith::int(v.into())).collect();
        Self::new(n, d, values, source)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn with_source(mut self, source: Source) -> Self {
        self.source = source;
        self
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn get(&self, k: usize) -> &BigRational {
        &self.values[k]
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    /// Integer entries, if every entry is an integer.
    pub fn integers(&self) -> Option<Vec<BigInt>> {
        self.values
            .iter()
            .map(|v| v.is_integer().then(|| v.to_integer()))
            .collect()
    }

    pub fn total(&self) -> BigRational {
        self.values.iter().fold(BigRational::zero(), |acc, v| acc + v)
    }

    /// `d^n`, the total of any pure-state distribution.
    pub fn pure_total(&self) -> BigInt {
        arith::pow(self.d as u64, self.n as u32)
    }

    pub fn is_pure_normalized(&self) -> bool {
        self.total() == BigRational::from_integer(self.pure_total())
    }

    /// `a_k = A_k / d^n` as exact rationals.
    pub fn normalized(&self) -> Vec<BigRational> {
        let scale = BigRational::from_integer(self.pure_total());
        self.values.iter().map(|v| v / &scale).collect()
    }

    /// `a_k = A_k / d^n` in double precision, safe for very large `n`.
    pub fn normalized_f64(&self) -> Vec<f64> {
        let scale = self.pure_total();
        self.values
            .iter()
            .map(|v| arith::ratio_to_f64(v.numer(), &(v.denom() * &scale)))
            .collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values.iter().map(arith::to_f64).collect()
    }

    /// The pseudo-distribution `(1, 0, ..., 0)` of the maximally mixed state.
    pub fn maximally_mixed(n: usize, d: u32) -> Result<Self> {
        let mut values = vec![BigRational::zero(); n + 1];
        if let Some(v) = values.first_mut() {
            *v = BigRational::one();
        }
        Self::new(n, d, values, Source::ClosedForm)
    }

    pub fn to_document(&self, meta: BTreeMap<String, serde_json::Value>) -> SldDocument {
        SldDocument {
            n: self.n,
            d: self.d,
            exact: self.values.iter().map(format_rational).collect(),
            normalized: floats(&self.normalized_f64()),
            source: self.source.as_str().to_string(),
            meta,
        }
    }

    pub fn to_json(&self, meta: BTreeMap<String, serde_json::Value>) -> String {
        serde_json::to_string(&self.to_document(meta)).expect("SLD serialization")
    }

    /// One row per `k`: `k,A_k,a_k`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,A,a\n");
        for (k, (v, a)) in self.values.iter().zip(self.normalized_f64()).enumerate() {
            out.push_str(&format!(
                "{k},{},{}\n",
                format_rational(v),
                crate::json::format_float17(a)
            ));
        }
        out
    }

    /// Reads the JSON schema written by [`Sld::to_json`]. Only `n`, `d` and
    /// the exact `A` strings are authoritative; `a` is ignored on input.
    pub fn from_json(text: &str) -> Result<Sld> {
        let doc: SldInput = serde_json::from_str(text).map_err(|e| {
            Error::parse(
                crate::graph::io_offset(text, e.line(), e.column()),
                e.to_string(),
            )
        })?;
        if doc.n == 0 || doc.n > MAX_DOCUMENT_N {
            return Err(Error::invalid(format!("n = {} outside 1..={MAX_DOCUMENT_N}", doc.n)));
        }
        if !(2..=crate::graph::MAX_DIMENSION).contains(&doc.d) {
            return Err(Error::invalid(format!("dimension d = {} unsupported", doc.d)));
        }
        let values = doc
            .exact
            .iter()
            .enumerate()
            .map(|(k, s)| {
                parse_rational(s)
                    .ok_or_else(|| Error::invalid(format!("entry A_{k} = `{s}` is not a rational")))
            })
            .collect::<Result<Vec<_>>>()?;
        let source = match doc.source.as_deref() {
            None => Source::Input,
            Some(s) => serde_json::from_value(serde_json::Value::String(s.to_string()))
                .unwrap_or(Source::Input),
        };
        Sld::new(doc.n, doc.d, values, source)
    }
}

impl fmt::Display for Sld {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.values.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(v))?;
        }
        write!(f, ")")
    }
}

/// Serialized form of an [`Sld`].
#[derive(Clone, Debug, Serialize)]
pub struct SldDocument {
    pub n: usize,
    pub d: u32,
    #[serde(rename = "A")]
    pub exact: Vec<String>,
    #[serde(rename = "a")]
    pub normalized: Vec<Float17>,
    pub source: String,
    pub meta: BTreeMap<String, serde_json::Value>,
}

#[derive(Deserialize)]
struct SldInput {
    n: usize,
    d: u32,
    #[serde(rename = "A")]
    exact: Vec<String>,
    #[serde(default)]
    source: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn construction_checks() {
        assert!(Sld::from_integers(3, 2, [1, 0, 3], Source::Input).is_err());
        assert!(Sld::from_integers(0, 2, [1], Source::Input).is_err());
        assert!(Sld::from_integers(1, 2, [1, -1], Source::Input).is_err());
        let s = Sld::from_integers(3, 2, [1, 0, 3, 4], Source::BruteForce).unwrap();
        assert!(s.is_pure_normalized());
        assert_eq!(s.to_string(), "(1, 0, 3, 4)");
        assert_eq!(s.normalized_f64(), vec![0.125, 0.0, 0.375, 0.5]);
    }

    #[test]
    fn json_shape() {
        let s = Sld::from_integers(1, 2, [1, 1], Source::BruteForce).unwrap();
        assert_eq!(
            s.to_json(BTreeMap::new()),
            r#"{"n":1,"d":2,"A":["1","1"],"a":[5.0000000000000000e-1,5.0000000000000000e-1],"source":"brute_force","meta":{}}"#
        );
    }

    #[test]
    fn json_roundtrip_rationals() {
        let values = vec![ratio(1, 1), ratio(9, 5), ratio(18, 5), ratio(10, 1), ratio(57, 5), ratio(21, 5)];
        let s = Sld::new(5, 2, values, Source::ClosedForm).unwrap();
        let back = Sld::from_json(&s.to_json(BTreeMap::new())).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn json_rejects_bad_documents() {
        assert!(matches!(Sld::from_json("{"), Err(Error::Parse { .. })));
        assert!(Sld::from_json(r#"{"n":1,"d":2,"A":["1"]}"#).is_err());
        assert!(Sld::from_json(r#"{"n":1,"d":2,"A":["1","x"]}"#).is_err());
        assert!(Sld::from_json(r#"{"n":1,"d":1,"A":["1","1"]}"#).is_err());
        let s = Sld::from_json(r#"{"n":1,"d":2,"A":["1","1"],"source":"weird"}"#).unwrap();
        assert_eq!(s.source(), Source::Input);
    }

    #[test]
    fn csv_rows() {
        let s = Sld::from_integers(1, 2, [1, 1], Source::BruteForce).unwrap();
        assert_eq!(
            s.to_csv(),
            "k,A,a\n0,1,5.0000000000000000e-1\n1,1,5.0000000000000000e-1\n"
        );
    }
}
