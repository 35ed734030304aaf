use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::hypergraph::ContextHypergraph;
use crate::error::{Error, Result};
use crate::linalg::{inner_product, projector_of, validate_context, Projector, Ray, NORM_TOL};

/// The bundled 18-ray, 9-context system in dimension 4.
pub const CEG18_JSON: &str = include_str!("../../data/ceg18.json");

/// On-disk form of a ray system. Amplitudes are `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RaySystemDocument {
    pub name: String,
    pub dimension: usize,
    pub rays: Vec<Vec<[f64; 2]>>,
    pub contexts: Vec<Vec<usize>>,
}

/// One measurement basis: indices of `d` rays in the owning system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Context {
    ray_indices: Vec<usize>,
}

impl Context {
    pub fn ray_indices(&self) -> &[usize] {
        &self.ray_indices
    }
}

/// Rays plus the complete bases they form. Rays shared by several contexts
/// are stored once and referenced by index.
#[derive(Debug, Clone, PartialEq)]
pub struct RaySystem {
    name: String,
    dimension: usize,
    rays: Vec<Ray>,
    contexts: Vec<Context>,
}

impl RaySystem {
    /// Checks every context geometrically and rejects rays that coincide up
    /// to a global phase.
    pub fn new(
        name: impl Into<String>,
        dimension: usize,
        rays: Vec<Ray>,
        contexts: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::Dimension(format!(
                "ray systems need d >= 2, got {dimension}"
            )));
        }
        if let Some((i, r)) = rays.iter().enumerate().find(|(_, r)| r.dim() != dimension) {
            return Err(Error::Dimension(format!(
                "ray {i} has dimension {}, system has {dimension}",
                r.dim()
            )));
        }
        for (j, ctx) in contexts.iter().enumerate() {
            if ctx.len() != dimension {
                return Err(Error::Geometry {
                    context: Some(j),
                    detail: format!("{} rays, expected {dimension}", ctx.len()),
                });
            }
            if let Some(&bad) = ctx.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::Geometry {
                    context: Some(j),
                    detail: format!("ray index {bad} out of range"),
                });
            }
            let members: Vec<Ray> = ctx.iter().map(|&i| rays[i].clone()).collect();
            let report = validate_context(&members);
            if let Some(failure) = report.failures.first() {
                return Err(Error::Geometry {
                    context: Some(j),
                    detail: format!("{failure:?}"),
                });
            }
        }
        for i in 0..rays.len() {
            for k in (i + 1)..rays.len() {
                let overlap = inner_product(&rays[i], &rays[k])?.norm();
                if (overlap - 1.0).abs() <= NORM_TOL {
                    return Err(Error::Geometry {
                        context: None,
                        detail: format!("rays {i} and {k} are the same ray up to phase"),
                    });
                }
            }
        }
        Ok(RaySystem {
            name: name.into(),
            dimension,
            rays,
            contexts: contexts
                .into_iter()
                .map(|ray_indices| Context { ray_indices })
                .collect(),
        })
    }

    pub fn from_document(doc: RaySystemDocument) -> Result<Self> {
        let d = doc.dimension;
        let mut rays = Vec::with_capacity(doc.rays.len());
        for (i, amps) in doc.rays.iter().enumerate() {
            if amps.len() != d {
                return Err(Error::Parse(format!(
                    "ray {i} has {} amplitudes, dimension is {d}",
                    amps.len()
                )));
            }
            let components: Vec<Complex64> = amps
                .iter()
                .map(|[re, im]| Complex64::new(*re, *im))
                .collect();
            match Ray::new(components) {
                Ok(r) => rays.push(r.with_label(format!("v{i}"))),
                Err(Error::Normalization { norm, .. }) => {
                    // Reported against the first context that uses the ray.
                    let context = doc.contexts.iter().position(|c| c.contains(&i));
                    return Err(Error::Geometry {
                        context,
                        detail: format!("ray {i} has norm {norm}"),
                    });
                }
                Err(Error::NonFinite) => {
                    return Err(Error::Parse(format!("ray {i} has a non-finite amplitude")))
                }
                Err(e) => return Err(e),
            }
        }
        for (j, ctx) in doc.contexts.iter().enumerate() {
            if ctx.len() != d {
                return Err(Error::Parse(format!(
                    "context {j} lists {} rays, dimension is {d}",
                    ctx.len()
                )));
            }
            if let Some(bad) = ctx.iter().find(|&&i| i >= doc.rays.len()) {
                return Err(Error::Parse(format!(
                    "context {j} references missing ray {bad}"
                )));
            }
        }
        RaySystem::new(doc.name, d, rays, doc.contexts)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: RaySystemDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        RaySystem::from_document(doc)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        RaySystem::from_json(&text)
    }

    /// The bundled 18-ray system.
    pub fn ceg18() -> Self {
        RaySystem::from_json(CEG18_JSON).expect("bundled ray system is valid")
    }

    pub fn to_document(&self) -> RaySystemDocument {
        RaySystemDocument {
            name: self.name.clone(),
            dimension: self.dimension,
            rays: self
                .rays
                .iter()
                .map(|r| r.components().iter().map(|z| [z.re, z.im]).collect())
                .collect(),
            contexts: self
                .contexts
                .iter()
                .map(|c| c.ray_indices.clone())
                .collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    /// Index of the ray in `slot` of context `context` (both zero-based).
    pub fn ray_at(&self, context: usize, slot: usize) -> Option<usize> {
        self.contexts
            .get(context)
            .and_then(|c| c.ray_indices.get(slot))
            .copied()
    }

    pub fn hypergraph(&self) -> ContextHypergraph {
        ContextHypergraph::new(
            self.rays.len(),
            self.contexts
                .iter()
                .map(|c| c.ray_indices.clone())
                .collect(),
        )
        .expect("contexts were validated at construction")
    }

    pub fn projectors(&self) -> Vec<Projector> {
        self.rays
            .iter()
            .map(|r| projector_of(r).expect("rays are normalized"))
            .collect()
    }

    pub fn structure(&self) -> StructureSummary {
        let degrees = self.hypergraph().degrees();
        StructureSummary {
            rays: self.rays.len(),
            contexts: self.contexts.len(),
            context_size: self.dimension,
            min_degree: degrees.iter().copied().min().unwrap_or(0),
            max_degree: degrees.iter().copied().max().unwrap_or(0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructureSummary {
    pub rays: usize,
    pub contexts: usize,
    pub context_size: usize,
    pub min_degree: usize,
    pub max_degree: usize,
}
