//! Job configuration: a single JSON document validated field by field.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde_json::{Map, Value};

use crate::error::MorikitError;
use crate::lattice::LatticeVector;
use crate::linalg::{Int, Rat};
use crate::markman::ExtendedAlgebraicLattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Tsv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSpec {
    /// `S^[n]` for a K3 surface with the given Picard lattice and
    /// polarization in Picard coordinates.
    K3 {
        gram: Vec<Vec<Int>>,
        polarization: Vec<Int>,
        n: Int,
    },
    Raw {
        gram: Vec<Vec<Int>>,
        v: Vec<Int>,
        ample: Option<Vec<Int>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub model: ModelSpec,
    /// Polarization in `Λ_alg` coordinates; overrides the model's own.
    pub ample: Option<Vec<Int>>,
    pub height_bound: Option<Rat>,
    pub word_bound: Option<usize>,
    pub format: Option<Format>,
    pub path: Option<PathBuf>,
}

/// A validation failure located by its JSON path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self, Vec<FieldError>> {
        let root: Value = serde_json::from_str(text).map_err(|e| {
            vec![FieldError {
                path: "$".into(),
                message: format!("invalid JSON: {e}"),
            }]
        })?;
        let mut r = Reader::default();
        let cfg = r.config(&root);
        match cfg {
            Some(c) if r.errors.is_empty() => Ok(c),
            _ => Err(r.errors),
        }
    }

    /// Builds and validates the model described by the configuration.
    pub fn model(&self) -> Result<ExtendedAlgebraicLattice, Vec<FieldError>> {
        let (base, prefix) = match &self.model {
            ModelSpec::K3 {
                gram,
                polarization,
                n,
            } => (
                ExtendedAlgebraicLattice::from_k3_hilbert(gram, n, polarization),
                "model.k3",
            ),
            ModelSpec::Raw { gram, v, ample } => {
                let h = self.ample.as_ref().or(ample.as_ref()).ok_or_else(|| {
                    vec![FieldError {
                        path: "ample".into(),
                        message: "required for a raw model".into(),
                    }]
                })?;
                (
                    ExtendedAlgebraicLattice::from_raw(
                        gram.clone(),
                        LatticeVector(v.clone()),
                        LatticeVector(h.clone()),
                    ),
                    "model.raw",
                )
            }
        };
        let base = base.map_err(|e| vec![model_error(&e, prefix)])?;
        match (&self.model, &self.ample) {
            (ModelSpec::K3 { .. }, Some(h)) => base
                .with_polarization(LatticeVector(h.clone()))
                .map_err(|e| vec![model_error(&e, prefix)]),
            _ => Ok(base),
        }
    }
}

/// Field path blamed for a model construction error.
pub fn model_error(e: &MorikitError, prefix: &str) -> FieldError {
    use MorikitError::*;
    let field = match e {
        DimensionMismatch { .. }
        | NotSymmetric
        | Degenerate { .. }
        | NotEven
        | WrongSignature { .. } => format!("{prefix}.gram"),
        VNotPrimitive | BadVSquare(_) => format!("{prefix}.v"),
        NTooSmall(_) => format!("{prefix}.n"),
        HNotOrthogonal(_) | HNotPositive(_) | PolarizationOnWall(_) | PolarizationOutsideNef => {
            "ample".into()
        }
        BadBudget => "budget.height_bound".into(),
        BadCoeffBound => "--coeff-bound".into(),
        UnsupportedRank { .. } => format!("{prefix}.gram"),
        _ => "$".into(),
    };
    FieldError {
        path: field,
        message: e.to_string(),
    }
}

#[derive(Default)]
struct Reader {
    errors: Vec<FieldError>,
}

impl Reader {
    fn fail(&mut self, path: &str, message: impl Into<String>) {
        self.errors.push(FieldError {
            path: path.into(),
            message: message.into(),
        });
    }

    fn object<'a>(
        &mut self,
        v: &'a Value,
        path: &str,
        allowed: &[&str],
    ) -> Option<&'a Map<String, Value>> {
        let Some(obj) = v.as_object() else {
            self.fail(path, "expected an object");
            return None;
        };
        for k in obj.keys() {
            if !allowed.contains(&k.as_str()) {
                self.fail(&join(path, k), "unknown field");
            }
        }
        Some(obj)
    }

    fn int(&mut self, v: &Value, path: &str) -> Option<Int> {
        let parsed = match v {
            Value::Number(n) if n.is_i64() || n.is_u64() => Int::from_str(&n.to_string()).ok(),
            Value::String(s) => Int::from_str(s.trim()).ok(),
            _ => None,
        };
        if parsed.is_none() {
            self.fail(path, "expected an integer");
        }
        parsed
    }

    fn int_vec(&mut self, v: &Value, path: &str) -> Option<Vec<Int>> {
        let Some(items) = v.as_array() else {
            self.fail(path, "expected an array of integers");
            return None;
        };
        let out: Vec<Option<Int>> = items
            .iter()
            .enumerate()
            .map(|(i, x)| self.int(x, &format!("{path}[{i}]")))
            .collect();
        out.into_iter().collect()
    }

    fn int_matrix(&mut self, v: &Value, path: &str) -> Option<Vec<Vec<Int>>> {
        let Some(rows) = v.as_array() else {
            self.fail(path, "expected an array of integer rows");
            return None;
        };
        let out: Vec<Option<Vec<Int>>> = rows
            .iter()
            .enumerate()
            .map(|(i, x)| self.int_vec(x, &format!("{path}[{i}]")))
            .collect();
        let m: Vec<Vec<Int>> = out.into_iter().collect::<Option<_>>()?;
        if m.is_empty() || m.iter().any(|r| r.len() != m.len()) {
            self.fail(path, "expected a non-empty square matrix");
            return None;
        }
        Some(m)
    }

    fn positive_rat(&mut self, v: &Value, path: &str) -> Option<Rat> {
        let parsed = match v {
            Value::Number(n) if n.is_i64() || n.is_u64() => {
                Int::from_str(&n.to_string()).ok().map(Rat::from)
            }
            Value::String(s) => parse_rational(s),
            _ => None,
        };
        match parsed {
            Some(q) if q.is_positive() => Some(q),
            Some(_) => {
                self.fail(path, "must be positive");
                None
            }
            None => {
                self.fail(path, "expected a rational \"p/q\"");
                None
            }
        }
    }

    fn config(&mut self, root: &Value) -> Option<JobConfig> {
        let obj = self.object(root, "$", &["model", "ample", "budget", "output"])?;
        let model = match obj.get("model") {
            Some(m) => self.model(m),
            None => {
                self.fail("model", "missing");
                None
            }
        };
        let ample = obj.get("ample").and_then(|a| self.int_vec(a, "ample"));
        let (mut height_bound, mut word_bound) = (None, None);
        if let Some(b) = obj.get("budget") {
            if let Some(b) = self.object(b, "budget", &["height_bound", "word_bound"]) {
                height_bound = b
                    .get("height_bound")
                    .and_then(|x| self.positive_rat(x, "budget.height_bound"));
                if let Some(w) = b.get("word_bound") {
                    word_bound = match self.int(w, "budget.word_bound") {
                        Some(k) if k.is_positive() => usize::try_from(&k).ok(),
                        Some(_) => {
                            self.fail("budget.word_bound", "must be positive");
                            None
                        }
                        None => None,
                    };
                }
            }
        }
        let (mut format, mut path) = (None, None);
        if let Some(o) = obj.get("output") {
            if let Some(o) = self.object(o, "output", &["format", "path"]) {
                format = match o.get("format").map(Value::as_str) {
                    None => None,
                    Some(Some("json")) => Some(Format::Json),
                    Some(Some("tsv")) => Some(Format::Tsv),
                    Some(_) => {
                        self.fail("output.format", "expected \"json\" or \"tsv\"");
                        None
                    }
                };
                path = match o.get("path") {
                    None | Some(Value::Null) => None,
                    Some(Value::String(s)) if s == "-" || s.is_empty() => None,
                    Some(Value::String(s)) => Some(PathBuf::from(s)),
                    Some(_) => {
                        self.fail("output.path", "expected a string");
                        None
                    }
                };
            }
        }
        Some(JobConfig {
            model: model?,
            ample,
            height_bound,
            word_bound,
            format,
            path,
        })
    }

    fn model(&mut self, v: &Value) -> Option<ModelSpec> {
        let obj = self.object(v, "model", &["k3", "raw"])?;
        match (obj.get("k3"), obj.get("raw")) {
            (Some(k), None) => {
                let k = self.object(k, "model.k3", &["gram", "polarization", "n"])?;
                let gram = self.required(k, "model.k3", "gram", Self::int_matrix);
                let polarization = self.required(k, "model.k3", "polarization", Self::int_vec);
                let n = self.required(k, "model.k3", "n", Self::int);
                Some(ModelSpec::K3 {
                    gram: gram?,
                    polarization: polarization?,
                    n: n?,
                })
            }
            (None, Some(r)) => {
                let r = self.object(r, "model.raw", &["gram", "v", "ample"])?;
                let gram = self.required(r, "model.raw", "gram", Self::int_matrix);
                let v = self.required(r, "model.raw", "v", Self::int_vec);
                let ample = r
                    .get("ample")
                    .and_then(|a| self.int_vec(a, "model.raw.ample"));
                Some(ModelSpec::Raw {
                    gram: gram?,
                    v: v?,
                    ample,
                })
            }
            _ => {
                self.fail("model", "exactly one of `k3` and `raw` is required");
                None
            }
        }
    }

    fn required<T>(
        &mut self,
        obj: &Map<String, Value>,
        prefix: &str,
        key: &str,
        f: fn(&mut Self, &Value, &str) -> Option<T>,
    ) -> Option<T> {
        let path = join(prefix, key);
        match obj.get(key) {
            Some(x) => f(self, x, &path),
            None => {
                self.fail(&path, "missing");
                None
            }
        }
    }
}

fn join(prefix: &str, key: &str) -> String {
    if prefix == "$" {
        key.to_string()
    } else {
        format!("{prefix}.{key}")
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = Int::from_str(p.trim()).ok()?;
            let q = Int::from_str(q.trim()).ok()?;
            (!q.is_zero()).then(|| Rat::new(p, q))
        }
        None => Int::from_str(s).ok().map(Rat::from),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn parses_hilbert_config() {
        let c = JobConfig::from_json(
            r#"{"model":{"k3":{"gram":[[2]],"polarization":[1],"n":2}},
                "ample":[-1,5,-1],"budget":{"height_bound":"30/1","word_bound":4}}"#,
        )
        .unwrap();
        assert_eq!(c.height_bound, Some(rat(30, 1)));
        assert_eq!(c.word_bound, Some(4));
        let m = c.model().unwrap();
        assert_eq!(m.n(), &Int::from(2));
    }

    #[test]
    fn reports_field_paths() {
        let errs = JobConfig::from_json(
            r#"{"model":{"raw":{"gram":[[0,1],[1]],"v":["x"]}},"budget":{"height_bound":"-1/2"},"extra":1}"#,
        )
        .unwrap_err();
        let paths: Vec<&str> = errs.iter().map(|e| e.path.as_str()).collect();
        assert!(paths.contains(&"extra"));
        assert!(paths.contains(&"model.raw.gram"));
        assert!(paths.contains(&"model.raw.v[0]"));
        assert!(paths.contains(&"budget.height_bound"));
    }

    #[test]
    fn both_model_kinds_rejected() {
        let errs = JobConfig::from_json(r#"{"model":{"k3":{},"raw":{}}}"#).unwrap_err();
        assert_eq!(errs[0].path, "model");
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-6/4"), Some(rat(-3, 2)));
        assert_eq!(parse_rational("7"), Some(rat(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
    }
}
