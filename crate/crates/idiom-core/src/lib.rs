//! Computations with finite modular lattices (idioms): interval-set
//! closures, nuclei and division sets, allocations and aspects, interval
//! decompositions, and filtration-based dimensions — each structural theorem
//! realized as an executable check on concrete instances.
//!
//! The entry point is [`lattice::FiniteLattice`], built from elements and
//! covers and validated on construction. Finiteness supplies completeness
//! and upper-continuity, so a finite modular lattice is an idiom — the
//! ambient assumption of every module past [`lattice`]. The [`fixtures`]
//! module provides the standard corpus of small modular lattices and the
//! verification suites in [`suites`] re-check every implemented fact over
//! that corpus.
//!
//! All types are immutable after construction and every operation is pure,
//! so values can be shared freely across threads; the suites exploit this
//! by fanning out per-lattice checks.
//!
//! ```
//! use idiom_core::{build_lattice, interval::IntervalSet, nuclei, dimension};
//!
//! // the Boolean square: two complementary atoms
//! let ids: Vec<String> = ["0", "a", "b", "1"].iter().map(|s| s.to_string()).collect();
//! let covers: Vec<(String, String)> = [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]
//!     .iter()
//!     .map(|(x, y)| (x.to_string(), y.to_string()))
//!     .collect();
//! let square = build_lattice(&ids, &covers)?;
//! assert!(square.is_modular() && square.is_frame());
//!
//! // four nuclei, and the trivial division set climbs to everything in one
//! // derivative step
//! let nuclei = nuclei::nucleus_lattice(&square)?;
//! assert_eq!(nuclei.len(), 4);
//! let bottom = IntervalSet::trivials(&square);
//! assert_eq!(dimension::gabriel_dimension(&square, &bottom)?, Some(1));
//! # Ok::<(), idiom_core::Error>(())
//! ```

pub mod bits;
pub mod error;
pub mod lattice;

pub mod interval;
pub mod nuclei;
pub mod allocation;
pub mod decomposition;
pub mod dimension;
pub mod io;
pub mod suites;

pub mod fixtures;
pub mod oracles;

pub use error::{Error, Result};
pub use lattice::{build_lattice, El, FiniteLattice, Iv};
