//! Partial rankings with ties from noisy repeated measurements.
//!
//! Objects (algorithm variants, process variants, ...) are compared through
//! inter-quantile intervals of their measurements: one object is better than
//! another only when its interval lies strictly below the other's. The
//! resulting strict partial order is turned into a ranking with ties by one of
//! three methodologies in [`rankers`], rank stability across quantile limits
//! is scored in [`reliability`], and [`dfg`] colours directly-follows graphs of
//! activity sequences by the fast and slow classes a ranking induces.
//!
//! ```
//! use tieless::model::{build_comparison_matrix, Dataset, MeasurementSet, QuantileLimits};
//! use tieless::rankers::{methodology3, validate_partial_ranking};
//!
//! let ds = Dataset::new(vec![
//!     MeasurementSet::new("a", vec![1.0, 1.1, 1.2, 1.3])?,
//!     MeasurementSet::new("b", vec![1.15, 1.2, 1.3, 1.4])?,
//!     MeasurementSet::new("c", vec![2.0, 2.1, 2.2, 2.4])?,
//! ])?;
//! let cm = build_comparison_matrix(&ds, QuantileLimits::IQI)?;
//! let ranking = methodology3(&cm)?;
//! assert!(validate_partial_ranking(&cm, &ranking).is_valid());
//! assert_eq!(ranking.rank_sets(), vec![vec!["a", "b"], vec!["c"]]);
//! # Ok::<(), tieless::Error>(())
//! ```

pub mod cli;
pub mod dfg;
pub mod error;
pub mod fixtures;
pub mod graphs;
pub mod io;
pub mod model;
pub mod rankers;
pub mod reliability;
pub mod synth;

mod dot;

pub use error::{Error, Result};
