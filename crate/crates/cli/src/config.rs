//! Run configuration: JSON with exact numbers carried as decimal strings.
//!
//! Polynomials are ascending coefficient lists; field elements are
//! coordinate lists in the power basis of the containing field. Every
//! coefficient may be given as a JSON integer or as a string such as
//! `"-3/2"`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use thetaloc_core::deformation::{CmDescriptor, PrimeAboveP, RamificationFlags, StabClass};

/// An exact rational read from a string or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rat(pub BigRational);

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string \"a\" or \"a/b\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
                Ok(Rat(BigRational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
                Ok(Rat(BigRational::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
                let s = v.trim();
                if let Some((a, b)) = s.split_once('/') {
                    let a = BigInt::from_str(a.trim()).map_err(|_| E::custom(format!("bad numerator in {v:?}")))?;
                    let b = BigInt::from_str(b.trim()).map_err(|_| E::custom(format!("bad denominator in {v:?}")))?;
                    if b == BigInt::from(0) {
                        return Err(E::custom(format!("zero denominator in {v:?}")));
                    }
                    Ok(Rat(BigRational::new(a, b)))
                } else {
                    let a = BigInt::from_str(s).map_err(|_| E::custom(format!("not an integer: {v:?}")))?;
                    Ok(Rat(BigRational::from_integer(a)))
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub fields: FieldsSection,
    #[serde(default)]
    pub character: Option<CharacterSection>,
    pub arithmetic: ArithmeticSection,
    pub assertions: AssertionsSection,
    #[serde(default)]
    pub task: TaskSection,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldsSection {
    #[serde(rename = "F")]
    pub f: BaseFieldSpec,
    #[serde(rename = "M")]
    pub m: QuadraticSpec,
    /// The Galois closure; needed for coefficients only.
    #[serde(rename = "H", default)]
    pub h: Option<TopFieldSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseFieldSpec {
    pub poly: Vec<Rat>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticSpec {
    pub poly: Vec<Rat>,
    /// Image of F's generator in M. May be omitted when F = ℚ.
    #[serde(default)]
    pub base_image: Option<Vec<Rat>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TopFieldSpec {
    pub poly: Vec<Rat>,
    /// Image of F's generator in H. May be omitted when F = ℚ.
    #[serde(default)]
    pub base_image: Option<Vec<Rat>>,
    pub m_image: Vec<Rat>,
    /// Images of the generator under automorphisms generating Gal(H/F).
    pub automorphisms: Vec<Vec<Rat>>,
    pub sigma: Vec<Rat>,
    #[serde(default)]
    pub conjugation: Option<Vec<Rat>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterSection {
    /// ψ takes values in μ_order.
    pub order: u32,
    pub generators: Vec<CharacterGenerator>,
    /// Opaque conductor label, echoed into the report.
    #[serde(default)]
    pub conductor: Option<String>,
    #[serde(default)]
    pub nebentypus: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CharacterGenerator {
    /// Image of H's generator under an element of Gal(H/M).
    pub image: Vec<Rat>,
    /// ψ(element) = ζ_order^exponent.
    pub exponent: i64,
}

fn default_precision() -> u32 {
    30
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArithmeticSection {
    pub p: u64,
    #[serde(default = "default_precision")]
    pub precision: u32,
    #[serde(default)]
    pub alpha_weights: Option<Vec<Rat>>,
    /// Rational primes dividing the tame level.
    #[serde(default)]
    pub tame_level: Vec<u64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssertionsSection {
    #[serde(rename = "leopoldt_M")]
    pub leopoldt_m: bool,
    pub p_regular: bool,
    /// One class per prime of F above p, in factorization order.
    pub stabilization: Vec<StabClass>,
    #[serde(default)]
    pub ramification: Option<RamificationFlags>,
    #[serde(default)]
    pub cm: Option<CmDescriptor>,
    /// Declared profile, cross-validated against the factorization.
    #[serde(default)]
    pub profile: Option<DeclaredProfile>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclaredProfile {
    #[serde(default)]
    pub r: Option<u32>,
    pub primes: Vec<PrimeAboveP>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskMode {
    Verdicts,
    Coefficients,
    #[default]
    Both,
}

fn default_ell_min() -> u64 {
    2
}

fn default_ell_max() -> u64 {
    100
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSection {
    #[serde(default)]
    pub mode: TaskMode,
    /// Explicit list of rational primes; overrides the range.
    #[serde(default)]
    pub ell: Option<Vec<u64>>,
    #[serde(default = "default_ell_min")]
    pub ell_min: u64,
    #[serde(default = "default_ell_max")]
    pub ell_max: u64,
    #[serde(default)]
    pub second_representative: bool,
    #[serde(default)]
    pub search: Option<SearchSection>,
}

impl Default for TaskSection {
    fn default() -> Self {
        TaskSection {
            mode: TaskMode::Both,
            ell: None,
            ell_min: default_ell_min(),
            ell_max: default_ell_max(),
            second_representative: false,
            search: None,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSection {
    pub max_h: u32,
    #[serde(default)]
    pub t2_scales: Option<Vec<f64>>,
    #[serde(default)]
    pub max_points: Option<usize>,
}

/// A schema violation located by its JSON path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

/// Parses a config, reporting the path of the first violation. A missing
/// field is reported at the path it should have had.
pub fn parse_config(bytes: &[u8]) -> Result<RunConfig, SchemaError> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let mut path = e.path().to_string();
        let message = e.inner().to_string();
        if let Some(name) = message.strip_prefix("missing field `").and_then(|r| r.split('`').next()) {
            path = if path == "." { name.to_string() } else { format!("{path}.{name}") };
        }
        SchemaError { path, message }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal(extra_fields: &str) -> String {
        format!(
            r#"{{"fields": {{"F": {{"poly": ["0", "1"]}} {extra_fields}}},
               "arithmetic": {{"p": 11}},
               "assertions": {{"leopoldt_M": true, "p_regular": true, "stabilization": ["I'"]}}}}"#
        )
    }

    #[test]
    fn rationals_from_strings_and_integers() {
        let v: Vec<Rat> = serde_json::from_str(r#"["-3/2", 7, "123456789012345678901234567890", "4/6"]"#).unwrap();
        assert_eq!(v[0].0, BigRational::new((-3).into(), 2.into()));
        assert_eq!(v[1].0, BigRational::from_integer(7.into()));
        assert_eq!(v[3].0, BigRational::new(2.into(), 3.into()));
        assert!(serde_json::from_str::<Rat>(r#""1/0""#).is_err());
        assert!(serde_json::from_str::<Rat>(r#""x""#).is_err());
    }

    #[test]
    fn missing_field_names_its_path() {
        let err = parse_config(minimal("").as_bytes()).unwrap_err();
        assert_eq!(err.path, "fields.M");
        let ok = parse_config(minimal(r#", "M": {"poly": ["-1", "-1", "1"]}"#).as_bytes()).unwrap();
        assert_eq!(ok.arithmetic.precision, 30);
        assert_eq!(ok.task.mode, TaskMode::Both);
    }

    #[test]
    fn nested_type_errors_are_located() {
        let bad = minimal(r#", "M": {"poly": ["-1", "q", "1"]}"#);
        let err = parse_config(bad.as_bytes()).unwrap_err();
        assert_eq!(err.path, "fields.M.poly[1]");
    }
}
