//! Finite Kripke frames for intermediate logics: chequered products of
//! forks, Medvedev frames, intuitionistic model checking, and p-morphism
//! search.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, the command
//! line tool and parallel drivers live in the `cheqlab` crate.

#![no_std]

extern crate alloc;

pub mod bits;
mod error;
pub mod formula;
pub mod frames;
pub mod iso;
pub mod lattice;
mod limits;
pub mod morphism;
pub mod poset;
mod search;
pub mod semantics;
pub mod upsets;

pub use error::{Error, Result};
pub use formula::{axiom, parse, print, Axiom, Formula};
pub use frames::{chequered, fork, frame_h, medvedev, Family};
pub use limits::{Limits, DEFAULT_MAX_POINTS, DEFAULT_MAX_SEARCH_NODES, DEFAULT_MAX_VALUATIONS};
pub use morphism::{check_p_morphism, search_p_morphism, MorphismReport, PointMap, Violation};
pub use poset::{Poset, Subframe, UpSet};
pub use semantics::{check_validity, check_validity_at, forces, ValidityResult, Valuation};
