//! On-disk JSON formats: instance files (inputs) and report files (outputs).
//! Arrays are row-major; the exponent ∞ is encoded as the string "inf".
//! Schemas are versioned under docs/schemas/.

use std::collections::BTreeMap;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use sumnorms::seqnorms::VectorFamily;
use sumnorms::spaces::{SpaceSpec, Vector};
use sumnorms::summing::SummingParams;
use sumnorms::tensors::MultilinearMap;
use sumnorms::Exp;

pub const INSTANCE_VERSION: &str = "1";

#[derive(Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: String,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default)]
    pub spaces: BTreeMap<String, SpaceDecl>,
    #[serde(default)]
    pub tensors: Vec<TensorDecl>,
    #[serde(default)]
    pub families: Vec<FamilyDecl>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<SummingParams>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct SpaceDecl {
    pub exponent: Exp,
    pub dim: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TensorDecl {
    pub name: String,
    pub domain: Vec<String>,
    pub codomain: String,
    /// Domain dims followed by the codomain dim.
    pub shape: Vec<usize>,
    /// Row-major coefficients.
    pub coeffs: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FamilyDecl {
    pub name: String,
    pub space: String,
    /// Multi-index box; `[m]` for flat families.
    pub shape: Vec<usize>,
    pub members: Vec<Vec<f64>>,
}

impl InstanceFile {
    pub fn load(path: &std::path::Path) -> anyhow::Result<InstanceFile> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read instance file {}", path.display()))?;
        let file: InstanceFile = serde_json::from_str(&text)
            .with_context(|| format!("malformed instance file {}", path.display()))?;
        if file.version != INSTANCE_VERSION {
            bail!(
                "unrecognized instance version {:?} (expected {:?})",
                file.version,
                INSTANCE_VERSION
            );
        }
        Ok(file)
    }

    pub fn space(&self, name: &str) -> anyhow::Result<SpaceSpec> {
        let decl = self
            .spaces
            .get(name)
            .with_context(|| format!("unknown space {name:?}"))?;
        Ok(SpaceSpec::new(decl.exponent, decl.dim)?)
    }

    pub fn family(&self, name: Option<&str>) -> anyhow::Result<VectorFamily> {
        let decl = match name {
            Some(n) => self
                .families
                .iter()
                .find(|f| f.name == n)
                .with_context(|| format!("unknown family {n:?}"))?,
            None => self.families.first().context("instance has no families")?,
        };
        let space = self.space(&decl.space)?;
        let members = decl
            .members
            .iter()
            .map(|coords| Ok(Vector::new(space, coords.clone())?))
            .collect::<anyhow::Result<Vec<_>>>()?;
        Ok(VectorFamily::with_shape(
            space,
            members,
            decl.shape.clone(),
        )?)
    }

    pub fn tensor(&self, name: Option<&str>) -> anyhow::Result<MultilinearMap> {
        let decl = match name {
            Some(n) => self
                .tensors
                .iter()
                .find(|t| t.name == n)
                .with_context(|| format!("unknown tensor {n:?}"))?,
            None => self.tensors.first().context("instance has no tensors")?,
        };
        let domain = decl
            .domain
            .iter()
            .map(|s| self.space(s))
            .collect::<anyhow::Result<Vec<_>>>()?;
        let codomain = self.space(&decl.codomain)?;
        let mut expected_shape: Vec<usize> = domain.iter().map(|s| s.dim).collect();
        expected_shape.push(codomain.dim);
        if decl.shape != expected_shape {
            bail!(
                "tensor {:?} declares shape {:?} but its spaces give {:?}",
                decl.name,
                decl.shape,
                expected_shape
            );
        }
        Ok(MultilinearMap::new(domain, codomain, decl.coeffs.clone())?)
    }
}

/// Wrapper written by every subcommand. `wall_time_ms` is the only field not
/// reproducible from the seed.
#[derive(Debug, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool_version: String,
    pub command: String,
    pub seed: u64,
    pub enum_cap: usize,
    pub items: Vec<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inconclusive: Option<bool>,
    pub wall_time_ms: u64,
}

impl ReportFile {
    pub fn write(&self, out: Option<&std::path::Path>) -> anyhow::Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        match out {
            Some(path) => std::fs::write(path, text.as_bytes())
                .with_context(|| format!("cannot write report to {}", path.display()))?,
            None => println!("{text}"),
        }
        Ok(())
    }
}
