//! The group-specification document: a product of quasi-split factors,
//! each with a facet type.

use serde::{Deserialize, Serialize};

use crate::dynkin::{build_affine_diagram, Family};
use crate::error::{Error, Result};
use crate::kernel::MultiType;
use crate::permgroups::{preset_galois, Twist, TwistedForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Kernel relative to the full stabilizer of the facet.
    Stabilizer,
    /// Kernel relative to the parahoric subgroup.
    Parahoric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Unramified,
    Ramified,
}

/// Marks a factor as a Weil restriction; the label is carried through to the report only.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeilRestriction {
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub family: Family,
    pub rank: usize,
    pub twist: Twist,
    pub splitting: Splitting,
    #[serde(default)]
    pub weil_restriction: Option<WeilRestriction>,
    pub facet_type: MultiType,
}

impl FactorSpec {
    pub fn form(&self) -> Result<TwistedForm> {
        TwistedForm::new(self.family, self.rank, self.twist)
    }

    /// Checks the form, the type's vertices and, for unramified factors,
    /// strong invariance under the Galois preset.
    pub fn validate(&self) -> Result<()> {
        let form = self.form()?;
        let d = build_affine_diagram(self.family, self.rank)?;
        if !self.facet_type.support().is_subset(d.all_vertices()) {
            return Err(Error::Domain(format!(
                "facet type {} has vertices outside {}..={}",
                self.facet_type,
                0,
                d.vertex_count() - 1
            )));
        }
        if self.splitting == Splitting::Unramified {
            let gamma = preset_galois(&form, &d)?;
            if let Some(s) = self.facet_type.violating_element(&gamma) {
                return Err(Error::Domain(format!(
                    "facet type {} is not invariant under {s} for {form}",
                    self.facet_type
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub mode: Mode,
    pub factors: Vec<FactorSpec>,
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Err(Error::Parse {
                path: "factors".into(),
                message: "at least one factor is required".into(),
            });
        }
        for (i, f) in self.factors.iter().enumerate() {
            f.validate().map_err(|e| Error::Semantic {
                factor: i,
                message: e.to_string(),
            })?;
        }
        Ok(())
    }
}

/// Parses and validates a JSON group specification.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let spec: GroupSpec = serde_path_to_error::deserialize(de).map_err(|e| Error::Parse {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    spec.validate()?;
    Ok(spec)
}
