//! The manifold-description file format: a JSON document holding the
//! reduced intersection lattice, the named classes, the topological
//! numbers and the basic classes with exact rational coefficients
//! (always strings such as `"1/4"` or `"1/4+1/2*i"`, never floats).
//!
//! Parsing followed by canonical re-serialization is idempotent: field
//! order is fixed by the struct and named classes are kept sorted.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::exppoly::GaussRat;
use crate::series::{
    validate, BasicClass, Lattice, ManifoldDescriptor, StructureSeries,
};
use crate::Error;

/// One basic class as stored on disk.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BasicClassEntry {
    pub vector: Vec<i64>,
    /// Exact coefficient, e.g. `"1/4"`, `"-2"`, `"1/2+3/4*i"`.
    pub coeff: String,
}

/// The on-disk manifold description. The `classes` map must contain
/// `sigma` and `w`; `dbar` is optional; every other entry is a probe
/// class usable in evaluation expressions.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ManifoldFile {
    pub name: String,
    pub rank: usize,
    pub form: Vec<Vec<i64>>,
    pub classes: BTreeMap<String, Vec<i64>>,
    pub genus: i64,
    pub b_plus: i64,
    pub euler: i64,
    pub signature: i64,
    pub simple_type: bool,
    pub basic_classes: Vec<BasicClassEntry>,
}

impl ManifoldFile {
    pub fn from_json_str(input: &str) -> Result<Self, Error> {
        serde_json::from_str(input).map_err(|e| Error::Parse(format!("manifold file: {e}")))
    }

    pub fn from_path(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    /// Canonical serialization: pretty JSON with fixed field order and
    /// sorted class names, ending in a newline.
    pub fn canonical_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    /// Builds the validated structure series (descriptor included).
    /// Fails with `Parse` on structural problems and `Validation` when
    /// an invariant is violated.
    pub fn to_series(&self) -> Result<StructureSeries, Error> {
        if self.form.len() != self.rank {
            return Err(Error::Parse(format!(
                "rank is {} but the form has {} rows",
                self.rank,
                self.form.len()
            )));
        }
        let lattice = Lattice::new(self.form.clone())?;
        let take = |key: &str| -> Result<Vec<i64>, Error> {
            let v = self
                .classes
                .get(key)
                .ok_or_else(|| Error::Parse(format!("missing class `{key}`")))?;
            if v.len() != self.rank {
                return Err(Error::Validation(format!(
                    "vector length: class `{key}` has length {} but the lattice has rank {}",
                    v.len(),
                    self.rank
                )));
            }
            Ok(v.clone())
        };
        let sigma = take("sigma")?;
        let w = take("w")?;
        let dbar = if self.classes.contains_key("dbar") {
            Some(take("dbar")?)
        } else {
            None
        };
        for (name, v) in &self.classes {
            if v.len() != self.rank {
                return Err(Error::Validation(format!(
                    "vector length: class `{name}` has length {} but the lattice has rank {}",
                    v.len(),
                    self.rank
                )));
            }
        }
        let owner = ManifoldDescriptor {
            name: self.name.clone(),
            lattice,
            sigma,
            w,
            dbar,
            b_plus: self.b_plus,
            b1: 0,
            euler: self.euler,
            signature: self.signature,
            genus: self.genus,
            simple_type: self.simple_type,
        };
        let mut classes = Vec::with_capacity(self.basic_classes.len());
        for (k, entry) in self.basic_classes.iter().enumerate() {
            if entry.vector.len() != self.rank {
                return Err(Error::Validation(format!(
                    "vector length: basic class #{k} has length {} but the lattice has rank {}",
                    entry.vector.len(),
                    self.rank
                )));
            }
            let coeff: GaussRat = entry.coeff.parse()?;
            classes.push(BasicClass {
                vector: entry.vector.clone(),
                coeff,
            });
        }
        let series = StructureSeries { owner, classes };
        let report = validate(&series.owner, Some(&series));
        if !report.is_valid() {
            return Err(Error::Validation(report.to_string()));
        }
        Ok(series)
    }

    /// Resolves a named class (distinguished or probe).
    pub fn class(&self, name: &str) -> Option<&Vec<i64>> {
        self.classes.get(name)
    }

    /// Writes the twice-blown-up K3 fixture as a file document.
    pub fn k3_two_blowups() -> Self {
        let series = crate::series::k3_two_blowups();
        let mut classes = BTreeMap::new();
        classes.insert("sigma".to_string(), series.owner.sigma.clone());
        classes.insert("w".to_string(), series.owner.w.clone());
        classes.insert("dbar".to_string(), series.owner.dbar.clone().unwrap());
        classes.insert("S".to_string(), vec![1, 0, 0, 0]);
        classes.insert("E1".to_string(), vec![0, 1, 0, 0]);
        classes.insert("E2".to_string(), vec![0, 0, 1, 0]);
        ManifoldFile {
            name: series.owner.name.clone(),
            rank: 4,
            form: series.owner.lattice.form().clone(),
            classes,
            genus: 2,
            b_plus: 3,
            euler: 26,
            signature: -18,
            simple_type: true,
            basic_classes: series
                .classes
                .iter()
                .map(|bc| BasicClassEntry {
                    vector: bc.vector.clone(),
                    coeff: bc.coeff.to_string(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_round_trips_and_validates() {
        let file = ManifoldFile::k3_two_blowups();
        let json = file.canonical_json();
        let back = ManifoldFile::from_json_str(&json).unwrap();
        assert_eq!(back, file);
        // canonical form is byte-stable
        assert_eq!(back.canonical_json(), json);
        let series = back.to_series().unwrap();
        assert_eq!(series, crate::series::k3_two_blowups());
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(matches!(
            ManifoldFile::from_json_str("{"),
            Err(Error::Parse(_))
        ));
        let mut file = ManifoldFile::k3_two_blowups();
        file.basic_classes[0].coeff = "1//4".into();
        assert!(matches!(file.to_series(), Err(Error::Parse(_))));
        let mut file = ManifoldFile::k3_two_blowups();
        file.classes.remove("sigma");
        assert!(matches!(file.to_series(), Err(Error::Parse(_))));
        // malformed vector length is a named validation failure
        let mut file = ManifoldFile::k3_two_blowups();
        file.classes.insert("probe".into(), vec![1, 2]);
        match file.to_series() {
            Err(Error::Validation(msg)) => assert!(msg.contains("vector length")),
            other => panic!("expected a validation failure, got {other:?}"),
        }
    }

    #[test]
    fn invariant_violations_fail_validation() {
        let mut file = ManifoldFile::k3_two_blowups();
        file.classes.insert("sigma".into(), vec![1, 0, 0, 0]);
        assert!(matches!(file.to_series(), Err(Error::Validation(_))));
    }
}
