//! The JSON input document shared by the command-line tool and catalog export.
//!
//! ```json
//! {
//!   "lattice": {"rank": 2, "matrix": [["1", "0"], ["0", "-1"]], "labels": ["H", "E"]},
//!   "cone": {"facets": [["0", "1"], ["1", "-1"]], "light_cone": null},
//!   "classes": {"theta": ["2", "-1"], "omega": ["5", "-1"]},
//!   "query": {"command": "gamma", "theta": "theta", "omega": "omega"}
//! }
//! ```
//!
//! Toric documents carry a `fan` instead and give classes as `{"coeffs": [...]}`, one per ray.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::CatalogEntry;
use crate::cones::{NefConeModel, Surface};
use crate::error::{Error, Result};
use crate::lattice::{DivClass, IntersectionLattice};
use crate::numeric::{exact_vec, unwrap_exact, ExactRat};
use crate::toric::{Fan, ToricClass};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone: Option<ConeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub classes: BTreeMap<String, ClassSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<QuerySpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub rank: usize,
    pub matrix: Vec<Vec<ExactRat>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpec {
    #[serde(default)]
    pub facets: Vec<Vec<ExactRat>>,
    #[serde(default)]
    pub light_cone: Option<LightConeSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LightConeSpec {
    #[serde(rename = "H")]
    pub h: Vec<ExactRat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpec {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassSpec {
    Lattice(Vec<ExactRat>),
    Toric { coeffs: Vec<ExactRat> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuerySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minus_c1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<ExactRat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u32>,
}

impl InputDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDocument(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn lattice(&self) -> Result<IntersectionLattice> {
        let spec = self
            .lattice
            .as_ref()
            .ok_or_else(|| Error::InvalidDocument("missing field `lattice`".into()))?;
        if spec.matrix.len() != spec.rank {
            return Err(Error::DimensionMismatch {
                expected: spec.rank,
                found: spec.matrix.len(),
            });
        }
        let matrix = spec.matrix.iter().map(|r| unwrap_exact(r)).collect();
        IntersectionLattice::new(matrix, spec.labels.clone())
    }

    pub fn surface(&self) -> Result<Surface> {
        let lattice = self.lattice()?;
        let spec = self
            .cone
            .as_ref()
            .ok_or_else(|| Error::InvalidDocument("missing field `cone`".into()))?;
        let facets = spec
            .facets
            .iter()
            .map(|f| DivClass::new(unwrap_exact(f)))
            .collect();
        let light = spec
            .light_cone
            .as_ref()
            .map(|l| DivClass::new(unwrap_exact(&l.h)));
        Surface::new(lattice, NefConeModel::new(facets, light))
    }

    pub fn fan(&self) -> Result<Fan> {
        let spec = self
            .fan
            .as_ref()
            .ok_or_else(|| Error::InvalidDocument("missing field `fan`".into()))?;
        Fan::new(spec.dim, spec.rays.clone(), spec.max_cones.clone())
    }

    fn class_spec(&self, label: &str) -> Result<&ClassSpec> {
        self.classes
            .get(label)
            .ok_or_else(|| Error::UnknownClass(label.to_string()))
    }

    pub fn lattice_class(&self, label: &str) -> Result<DivClass> {
        match self.class_spec(label)? {
            ClassSpec::Lattice(c) => Ok(DivClass::new(unwrap_exact(c))),
            ClassSpec::Toric { .. } => Err(Error::InvalidDocument(format!(
                "class {} is a toric class, expected lattice coordinates",
                label
            ))),
        }
    }

    pub fn toric_class(&self, label: &str) -> Result<ToricClass> {
        match self.class_spec(label)? {
            ClassSpec::Toric { coeffs } => Ok(ToricClass::new(unwrap_exact(coeffs))),
            ClassSpec::Lattice(_) => Err(Error::InvalidDocument(format!(
                "class {} has lattice coordinates, expected {{\"coeffs\": [...]}}",
                label
            ))),
        }
    }

    /// Validates every part that is present and checks class dimensions and query labels.
    pub fn validate(&self) -> Result<()> {
        if self.lattice.is_none() && self.fan.is_none() {
            return Err(Error::InvalidDocument(
                "document needs a `lattice` or a `fan`".into(),
            ));
        }
        let lattice = match &self.lattice {
            Some(_) => Some(self.lattice()?),
            None => None,
        };
        if self.cone.is_some() {
            self.surface()?;
        }
        let fan = match &self.fan {
            Some(_) => Some(self.fan()?),
            None => None,
        };
        for (label, spec) in &self.classes {
            let (len, expected) = match spec {
                ClassSpec::Lattice(c) => (c.len(), lattice.as_ref().map(IntersectionLattice::rank)),
                ClassSpec::Toric { coeffs } => (coeffs.len(), fan.as_ref().map(Fan::num_rays)),
            };
            match expected {
                Some(e) if e != len => {
                    return Err(Error::DimensionMismatch {
                        expected: e,
                        found: len,
                    })
                }
                Some(_) => {}
                None => {
                    return Err(Error::InvalidDocument(format!(
                        "class {} has no matching lattice or fan",
                        label
                    )))
                }
            }
        }
        if let Some(q) = &self.query {
            for label in [&q.theta, &q.omega, &q.a, &q.minus_c1]
                .into_iter()
                .flatten()
            {
                self.class_spec(label)?;
            }
        }
        Ok(())
    }

    pub fn set_lattice_class(&mut self, label: &str, c: &DivClass) {
        self.classes
            .insert(label.to_string(), ClassSpec::Lattice(exact_vec(c.coords())));
    }

    pub fn set_toric_class(&mut self, label: &str, c: &ToricClass) {
        self.classes.insert(
            label.to_string(),
            ClassSpec::Toric {
                coeffs: exact_vec(c.coeffs()),
            },
        );
    }

    pub fn from_surface(surface: &Surface) -> Self {
        let l = surface.lattice();
        let default_labels: Vec<String> = (0..l.rank()).map(|i| format!("e{}", i)).collect();
        InputDocument {
            lattice: Some(LatticeSpec {
                rank: l.rank(),
                matrix: l.matrix().iter().map(|r| exact_vec(r)).collect(),
                labels: (l.labels() != default_labels.as_slice()).then(|| l.labels().to_vec()),
            }),
            cone: Some(ConeSpec {
                facets: surface
                    .cone()
                    .facets()
                    .iter()
                    .map(|f| exact_vec(f.coords()))
                    .collect(),
                light_cone: surface.cone().light_cone().map(|h| LightConeSpec {
                    h: exact_vec(h.coords()),
                }),
            }),
            ..Default::default()
        }
    }

    pub fn set_fan(&mut self, fan: &Fan) {
        self.fan = Some(FanSpec {
            dim: fan.dim(),
            rays: fan.rays().to_vec(),
            max_cones: fan.max_cones().to_vec(),
        });
    }

    /// Lattice classes keep their labels; toric classes are stored under `toric:<label>`.
    pub fn from_catalog(entry: &CatalogEntry) -> Self {
        let mut doc = InputDocument::from_surface(&entry.surface);
        for (label, c) in &entry.named_classes {
            doc.set_lattice_class(label, c);
        }
        if let Some(t) = &entry.toric {
            doc.set_fan(&t.fan);
            for (label, c) in &t.named {
                doc.set_toric_class(&format!("toric:{}", label), c);
            }
        }
        doc
    }
}
