//! JSON manifold definitions: sparse index-value lists for the structure
//! constants, `phi` and the metric, dense arrays for `xi` and `eta`.

use crate::error::CliError;
use accr_core::{validate_structure, AccRStructure64, Frame, LieAlgebra64, Tensor64};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// `[e_i, e_j] = value e_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: f64,
}

/// `phi e_col` has component `value` along `e_row`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhiEntry {
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MetricEntry {
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldDefinition {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub structure_constants: Vec<Bracket>,
    pub phi: Vec<PhiEntry>,
    pub xi: Vec<f64>,
    pub eta: Vec<f64>,
    pub metric: Vec<MetricEntry>,
}

fn field_err(field: String, msg: impl Into<String>) -> CliError {
    CliError::Field {
        field,
        message: msg.into(),
    }
}

impl ManifoldDefinition {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("definitions always serialize")
    }

    fn check_index(&self, field: &str, pos: usize, name: &str, v: usize) -> Result<(), CliError> {
        if v >= self.dim {
            return Err(field_err(
                format!("{field}[{pos}].{name}"),
                format!("index {v} out of range for dim {}", self.dim),
            ));
        }
        Ok(())
    }

    fn frame(&self) -> Result<Frame, CliError> {
        let frame = Frame::new(self.dim).map_err(|e| field_err("dim".into(), e.to_string()))?;
        match &self.labels {
            None => Ok(frame),
            Some(l) if l.len() == self.dim => {
                Frame::with_labels(l.clone()).map_err(|e| field_err("labels".into(), e.to_string()))
            }
            Some(l) => Err(field_err(
                "labels".into(),
                format!("{} labels for dim {}", l.len(), self.dim),
            )),
        }
    }

    /// Assembles the Lie algebra, filling `c^k_ji = -c^k_ij`.
    pub fn algebra(&self) -> Result<LieAlgebra64, CliError> {
        let frame = self.frame()?;
        let n = self.dim;
        let mut seen: BTreeMap<(usize, usize, usize), (usize, f64)> = BTreeMap::new();
        for (pos, b) in self.structure_constants.iter().enumerate() {
            self.check_index("structure_constants", pos, "i", b.i)?;
            self.check_index("structure_constants", pos, "j", b.j)?;
            self.check_index("structure_constants", pos, "k", b.k)?;
            let field = format!("structure_constants[{pos}]");
            if b.i == b.j {
                if b.value != 0.0 {
                    return Err(field_err(field, "[e_i, e_i] must vanish"));
                }
                continue;
            }
            let (key, v) = if b.i < b.j {
                ((b.i, b.j, b.k), b.value)
            } else {
                ((b.j, b.i, b.k), -b.value)
            };
            if let Some(&(prev, old)) = seen.get(&key) {
                if old != v {
                    return Err(field_err(
                        field,
                        format!("conflicts with structure_constants[{prev}] under antisymmetry"),
                    ));
                }
            }
            seen.insert(key, (pos, v));
        }
        let mut c = Tensor64::zeros(n, 3);
        for (&(i, j, k), &(_, v)) in &seen {
            c.set(&[k, i, j], v);
            c.set(&[k, j, i], -v);
        }
        LieAlgebra64::new(frame, c).map_err(CliError::Geometry)
    }

    pub fn structure(&self) -> Result<AccRStructure64, CliError> {
        let frame = self.frame()?;
        let n = self.dim;
        let mut phi = Tensor64::zeros(n, 2);
        let mut phi_seen = BTreeMap::new();
        for (pos, e) in self.phi.iter().enumerate() {
            self.check_index("phi", pos, "row", e.row)?;
            self.check_index("phi", pos, "col", e.col)?;
            if let Some(prev) = phi_seen.insert((e.row, e.col), pos) {
                return Err(field_err(format!("phi[{pos}]"), format!("duplicates phi[{prev}]")));
            }
            phi.set(&[e.row, e.col], e.value);
        }
        let mut g = Tensor64::zeros(n, 2);
        let mut g_seen = BTreeMap::new();
        for (pos, e) in self.metric.iter().enumerate() {
            self.check_index("metric", pos, "i", e.i)?;
            self.check_index("metric", pos, "j", e.j)?;
            if let Some(prev) = g_seen.insert((e.i, e.j), pos) {
                return Err(field_err(
                    format!("metric[{pos}]"),
                    format!("duplicates metric[{prev}]"),
                ));
            }
            g.set(&[e.i, e.j], e.value);
        }
        let dense = |name: &str, v: &[f64]| {
            if v.len() != n {
                return Err(field_err(
                    name.into(),
                    format!("expected {n} components, found {}", v.len()),
                ));
            }
            Ok(Tensor64::vector(v.to_vec()))
        };
        let xi = dense("xi", &self.xi)?;
        let eta = dense("eta", &self.eta)?;
        validate_structure(&frame, phi, xi, eta, g).map_err(CliError::Geometry)
    }

    pub fn load(&self) -> Result<(LieAlgebra64, AccRStructure64), CliError> {
        Ok((self.algebra()?, self.structure()?))
    }

    /// Writes every nonzero entry; brackets are listed once with `i < j`.
    pub fn from_model(alg: &LieAlgebra64, s: &AccRStructure64) -> Self {
        let n = s.dim();
        let c = alg.constants();
        let mut structure_constants = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..n {
                    let value = c.at3(k, i, j);
                    if value != 0.0 {
                        structure_constants.push(Bracket { i, j, k, value });
                    }
                }
            }
        }
        let mut phi = Vec::new();
        let mut metric = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if s.phi().at2(a, b) != 0.0 {
                    phi.push(PhiEntry {
                        row: a,
                        col: b,
                        value: s.phi().at2(a, b),
                    });
                }
                if s.g().at2(a, b) != 0.0 {
                    metric.push(MetricEntry {
                        i: a,
                        j: b,
                        value: s.g().at2(a, b),
                    });
                }
            }
        }
        let default_labels = Frame::new(n).map(|f| f.labels().to_vec()).ok();
        let labels = s.frame().labels().to_vec();
        Self {
            dim: n,
            labels: (Some(&labels) != default_labels.as_ref()).then_some(labels),
            structure_constants,
            phi,
            xi: s.xi().as_slice().to_vec(),
            eta: s.eta().as_slice().to_vec(),
            metric,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use accr_core::scenarios::build_example2;

    #[test]
    fn round_trip_is_exact() {
        let (alg, s) = build_example2(0.3, -1.7).unwrap();
        let def = ManifoldDefinition::from_model(&alg, &s);
        let back = ManifoldDefinition::from_json(&def.to_json()).unwrap();
        assert_eq!(back, def);
        let (alg2, s2) = back.load().unwrap();
        assert_eq!(alg2, alg);
        assert_eq!(s2, s);
    }

    #[test]
    fn antisymmetric_duplicates() {
        let (alg, s) = build_example2(0.0, 0.0).unwrap();
        let mut def = ManifoldDefinition::from_model(&alg, &s);
        let first = def.structure_constants[0].clone();
        def.structure_constants.push(Bracket {
            i: first.j,
            j: first.i,
            k: first.k,
            value: -first.value,
        });
        assert!(def.algebra().is_ok());
        def.structure_constants.push(Bracket {
            i: first.j,
            j: first.i,
            k: first.k,
            value: first.value,
        });
        let err = def.algebra().unwrap_err();
        assert!(err.to_string().contains("structure_constants["), "{err}");
    }

    #[test]
    fn out_of_range_index_names_the_field() {
        let (alg, s) = build_example2(0.0, 0.0).unwrap();
        let mut def = ManifoldDefinition::from_model(&alg, &s);
        def.metric[2].j = 9;
        let err = def.structure().unwrap_err();
        assert!(err.to_string().contains("metric[2].j"), "{err}");
    }

    #[test]
    fn parse_errors_carry_position() {
        match ManifoldDefinition::from_json("{\n  \"dim\": 5,\n  \"phi\": oops\n}") {
            Err(CliError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(ManifoldDefinition::from_json(r#"{"dim":3,"phi":[],"xi":[],"eta":[],"metric":[],"extra":1}"#).is_err());
    }

    #[test]
    fn metric_is_not_symmetrized() {
        let (alg, s) = build_example2(0.0, 0.0).unwrap();
        let mut def = ManifoldDefinition::from_model(&alg, &s);
        def.metric.push(MetricEntry { i: 0, j: 1, value: 0.5 });
        assert!(matches!(
            def.structure(),
            Err(CliError::Geometry(accr_core::GeometryError::NotSymmetric { .. }))
        ));
    }
}
