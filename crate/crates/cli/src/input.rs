//! Loading algebras, elements and modules from paths, inline JSON or names.

use std::path::Path;

use anyhow::{Context, Result};
use baerkit::algebra::{AlgElement, AlgebraDescriptor, MatrixRing};
use baerkit::io::{algebra_from_json, element_from_json, module_from_json, parse_json, tower_for};
use baerkit::modules::ModulePresentation;
use baerkit::projections::Projection;
use serde_json::Value;

/// A file if one exists at `src`, otherwise inline JSON, otherwise a bare name.
pub fn load(src: &str) -> Result<Value> {
    if Path::new(src).is_file() {
        let text = std::fs::read_to_string(src).with_context(|| format!("reading {src}"))?;
        return parse_json(&text).with_context(|| format!("parsing {src}"));
    }
    let trimmed = src.trim_start();
    if trimmed.starts_with(['{', '[', '"']) {
        return parse_json(src).context("parsing inline JSON");
    }
    Ok(Value::String(src.to_string()))
}

pub fn algebra(src: &str) -> Result<AlgebraDescriptor> {
    Ok(algebra_from_json(&load(src)?)?)
}

/// Elements of `M_n(A)`, over a tower large enough for every input.
pub struct Elements {
    pub ring: MatrixRing,
    pub elements: Vec<AlgElement>,
}

impl Elements {
    pub fn load(algebra_src: &str, n: usize, srcs: &[String]) -> Result<Self> {
        let base = algebra(algebra_src)?;
        let values = srcs.iter().map(|s| load(s)).collect::<Result<Vec<_>>>()?;
        let refs: Vec<&Value> = values.iter().collect();
        let tower = tower_for(base.tower(), &refs)?;
        let ring = MatrixRing::new(&base.over_tower(&tower), n)?;
        let elements = values
            .iter()
            .zip(srcs)
            .map(|(v, s)| element_from_json(v, ring.algebra()).with_context(|| format!("element {s}")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ring, elements })
    }

    pub fn projection(&self, i: usize) -> Result<Projection> {
        Ok(Projection::new(self.elements[i].clone())?)
    }

    pub fn projections(&self) -> Result<Vec<Projection>> {
        (0..self.elements.len()).map(|i| self.projection(i)).collect()
    }
}

pub fn module(algebra_src: &str, module_src: &str) -> Result<ModulePresentation> {
    let base = algebra(algebra_src)?;
    let v = load(module_src)?;
    let tower = tower_for(base.tower(), &[&v])?;
    module_from_json(&v, &base.over_tower(&tower)).context("module")
}
