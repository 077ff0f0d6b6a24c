//! Variety spec files (JSON).
//!
//! ```json
//! {"kind":"weierstrass","base":{"p":5,"r":1},"a":[0,0,0,1,1]}
//! {"kind":"projective_space","n":2,"base":{"p":2,"r":1}}
//! {"kind":"product","base":{"p":3,"r":1},
//!  "left":{"kind":"projective_space","n":1},
//!  "right":{"kind":"projective_space","n":1}}
//! {"kind":"custom","base":{"p":5,"r":1},"counts":[9,27],"betti":[1,2,1]}
//! ```
//!
//! The base modulus is optional (deterministic search picks one) and is
//! written leading to constant: `{"p":2,"r":2,"modulus":[1,1,1]}` is
//! `x^2 + x + 1`. Product factors inherit the parent base unless they
//! declare their own. Weierstrass coefficients `a = [a1,a2,a3,a4,a6]` are
//! integers reduced into the prime field.

use super::{VarietyError, VarietyKind, VarietySpec};
use crate::finite_field::{build_field, FqField};
use num_bigint::BigInt;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileBase {
    p: u64,
    r: usize,
    modulus: Option<Vec<u64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileSpec {
    kind: String,
    base: Option<FileBase>,
    n: Option<usize>,
    a: Option<Vec<i64>>,
    left: Option<Box<FileSpec>>,
    right: Option<Box<FileSpec>>,
    counts: Option<Vec<u64>>,
    betti: Option<Vec<usize>>,
}

pub fn parse_variety_str(text: &str) -> Result<VarietySpec, VarietyError> {
    let file: FileSpec =
        serde_json::from_str(text).map_err(|e| VarietyError::Malformed(e.to_string()))?;
    build(&file, None)
}

pub fn parse_variety_file(path: &std::path::Path) -> Result<VarietySpec, VarietyError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| VarietyError::Malformed(format!("{}: {e}", path.display())))?;
    parse_variety_str(&text)
}

fn build(file: &FileSpec, inherited: Option<&FqField>) -> Result<VarietySpec, VarietyError> {
    let base = match (&file.base, inherited) {
        (Some(fb), _) => build_field(fb.p, fb.r, fb.modulus.as_deref())?,
        (None, Some(f)) => f.clone(),
        (None, None) => {
            return Err(VarietyError::Malformed(
                "spec needs a base field: {\"base\":{\"p\":..,\"r\":..}}".into(),
            ))
        }
    };
    let kind = match file.kind.as_str() {
        "projective_space" => {
            let n = file
                .n
                .ok_or_else(|| VarietyError::Malformed("projective_space needs \"n\"".into()))?;
            VarietyKind::ProjectiveSpace { n }
        }
        "weierstrass" => {
            let a = file
                .a
                .as_ref()
                .ok_or_else(|| VarietyError::Malformed("weierstrass needs \"a\"".into()))?;
            if a.len() != 5 {
                return Err(VarietyError::Malformed(
                    "\"a\" must be [a1,a2,a3,a4,a6]".into(),
                ));
            }
            let p = base.p() as i64;
            let coeffs: Vec<_> = a.iter().map(|&c| base.from_u64(c.rem_euclid(p) as u64)).collect();
            VarietyKind::WeierstrassCurve {
                a: coeffs.try_into().expect("length checked"),
            }
        }
        "product" => {
            let (Some(l), Some(r)) = (&file.left, &file.right) else {
                return Err(VarietyError::Malformed(
                    "product needs \"left\" and \"right\"".into(),
                ));
            };
            let l = build(l, Some(&base))?;
            let r = build(r, Some(&base))?;
            VarietyKind::Product(Box::new(l), Box::new(r))
        }
        "custom" => {
            let counts = file
                .counts
                .as_ref()
                .ok_or_else(|| VarietyError::Malformed("custom needs \"counts\"".into()))?
                .iter()
                .map(|&c| BigInt::from(c))
                .collect();
            let betti = file
                .betti
                .clone()
                .ok_or_else(|| VarietyError::Malformed("custom needs \"betti\"".into()))?;
            VarietyKind::Custom { counts, betti }
        }
        other => {
            return Err(VarietyError::Malformed(format!(
                "unknown kind {other:?}; expected projective_space, weierstrass, product or custom"
            )))
        }
    };
    VarietySpec::new(base, kind)
}
