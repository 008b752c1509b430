//! Exact induced-cycle counting and verification toolkit.
//!
//! * [`graph`] and [`io`]: bitset graphs, co-degrees, graph6 / edge-list I/O.
//! * [`count`]: induced k-cycle counts (global, vertex-, edge- and
//!   cherry-rooted) by subset oracle and by canonical path extension, plus
//!   Zykov symmetrisation.
//! * [`constructions`]: cycles, complete bipartite graphs, blow-ups, seeded
//!   random graphs, the Petersen graph.
//! * [`bounds`]: closed-form upper and lower bounds with slack reports.
//! * [`search`]: exhaustive and local search for `I_{C_k}(n)`.
//! * [`analytic`]: grid oracles for the one- to five-variable optimisation
//!   problems behind the `128e/81` constant.

pub mod analytic;
pub mod bits;
pub mod bounds;
pub mod constructions;
pub mod corpus;
pub mod count;
pub mod error;
pub mod graph;
pub mod io;
pub mod rng;
pub mod search;

pub use count::{Count, CountReport, Detail};
pub use error::{Error, Result};
pub use graph::{DegreeProfile, Graph};
