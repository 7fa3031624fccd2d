//! Serializable summaries of torsion computations.

use serde::Serialize;

use crate::linalg::Subspace;

/// One named torsion submodule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionPart {
    pub name: String,
    /// Field dimension, or `None` when the part was not computed.
    pub dim: Option<usize>,
    pub is_zero: Option<bool>,
    pub is_full: Option<bool>,
    /// Spanning vectors in module coordinates.
    pub basis: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TorsionPart {
    pub fn computed(name: &str, s: &Subspace) -> Self {
        Self {
            name: name.into(),
            dim: Some(s.dim()),
            is_zero: Some(s.is_zero()),
            is_full: Some(s.is_full()),
            basis: s
                .basis_vectors()
                .iter()
                .map(|v| v.entries().iter().map(ToString::to_string).collect())
                .collect(),
            note: None,
        }
    }

    /// A part of known field dimension with no basis attached.
    pub fn sized(name: &str, dim: usize, ambient: usize) -> Self {
        Self {
            name: name.into(),
            dim: Some(dim),
            is_zero: Some(dim == 0),
            is_full: Some(dim == ambient),
            basis: Vec::new(),
            note: None,
        }
    }

    pub fn not_computed(name: &str, note: &str) -> Self {
        Self {
            name: name.into(),
            dim: None,
            is_zero: None,
            is_full: None,
            basis: Vec::new(),
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: &str) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// `sub ⊆ sup`, with whether the inclusion is a theorem (`required`) or data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inclusion {
    pub sub: String,
    pub sup: String,
    pub holds: bool,
    pub required: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionReport {
    /// Field dimension of the module.
    pub module_dim: usize,
    pub ring_semisimple: bool,
    pub parts: Vec<TorsionPart>,
    pub inclusions: Vec<Inclusion>,
    pub notes: Vec<String>,
}

impl TorsionReport {
    pub fn part(&self, name: &str) -> Option<&TorsionPart> {
        self.parts.iter().find(|p| p.name == name)
    }

    /// Inclusions that must hold but do not.
    pub fn violations(&self) -> Vec<&Inclusion> {
        self.inclusions
            .iter()
            .filter(|i| i.required && !i.holds)
            .collect()
    }

    pub fn is_consistent(&self) -> bool {
        self.violations().is_empty()
    }
}
