//! JSON documents for frames and point maps.
//!
//! Frames are stored as `{"covers":[[from,to],...],"name":...,"points":[{"id":..,"label":..},...]}`
//! with keys in sorted order, points sorted by id and covers sorted, all on
//! one line. Saving is therefore canonical and a canonical file survives a
//! load/save round trip byte for byte.

use std::fs;
use std::path::Path;

use cheqlab_core::{PointMap, Poset};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::CliError;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("point ids must be exactly 0..{0}")]
    Ids(usize),
    #[error("map must list every source point exactly once (point {0})")]
    MapCoverage(usize),
    #[error(transparent)]
    Core(#[from] cheqlab_core::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointEntry {
    pub id: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameDocument {
    pub covers: Vec<[usize; 2]>,
    pub name: String,
    pub points: Vec<PointEntry>,
}

impl FrameDocument {
    pub fn from_poset(name: &str, p: &Poset) -> FrameDocument {
        FrameDocument {
            covers: p.covers().into_iter().map(|(a, b)| [a, b]).collect(),
            name: name.to_string(),
            points: p
                .points()
                .map(|id| PointEntry {
                    id,
                    label: p.label(id).to_string(),
                })
                .collect(),
        }
    }

    /// Builds the poset. Point order follows the ids; the cover list may be
    /// any acyclic relation whose transitive closure is the order.
    pub fn to_poset(&self) -> Result<Poset, DocumentError> {
        let n = self.points.len();
        let mut labels = vec![None; n];
        for pt in &self.points {
            match labels.get_mut(pt.id) {
                Some(slot @ None) => *slot = Some(pt.label.clone()),
                _ => return Err(DocumentError::Ids(n)),
            }
        }
        let labels: Vec<String> = labels.into_iter().map(|l| l.expect("dense ids")).collect();
        let pairs: Vec<(usize, usize)> = self.covers.iter().map(|&[a, b]| (a, b)).collect();
        Ok(Poset::from_covers(labels, &pairs)?)
    }

    /// Sorts points and covers so that serialization is canonical.
    pub fn canonicalize(&mut self) {
        self.points.sort_by_key(|p| p.id);
        self.covers.sort_unstable();
        self.covers.dedup();
    }

    pub fn to_json(&self) -> String {
        let mut doc = self.clone();
        doc.canonicalize();
        let mut s = serde_json::to_string(&doc).expect("frame documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<FrameDocument, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn map_to_json(m: &PointMap) -> String {
    let pairs: Vec<[usize; 2]> = m.pairs().map(|(a, b)| [a, b]).collect();
    let mut s = serde_json::to_string(&pairs).expect("pairs serialize");
    s.push('\n');
    s
}

pub fn map_from_json(
    text: &str,
    source: &Poset,
    target: &Poset,
) -> Result<PointMap, DocumentError> {
    let pairs: Vec<[usize; 2]> = serde_json::from_str(text)?;
    let mut images = vec![None; source.size()];
    for [a, b] in pairs {
        match images.get_mut(a) {
            Some(slot @ None) => *slot = Some(b),
            _ => return Err(DocumentError::MapCoverage(a)),
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(x, t)| t.ok_or(DocumentError::MapCoverage(x)))
        .collect::<Result<Vec<usize>, _>>()?;
    Ok(PointMap::new(source, target, images)?)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_frame(path: &Path) -> Result<(FrameDocument, Poset), CliError> {
    let wrap = |source| CliError::Document {
        path: path.to_path_buf(),
        source,
    };
    let doc = FrameDocument::from_json(&read(path)?).map_err(wrap)?;
    let p = doc.to_poset().map_err(wrap)?;
    Ok((doc, p))
}

pub fn load_map(path: &Path, source: &Poset, target: &Poset) -> Result<PointMap, CliError> {
    map_from_json(&read(path)?, source, target).map_err(|source| CliError::Document {
        path: path.to_path_buf(),
        source,
    })
}
