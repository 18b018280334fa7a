//! Explicit presentations of Cartesian subgroups of graph products of groups.
//!
//! A flag complex `K` on `[m]` and groups `G_1, ..., G_m` determine the graph
//! product `G^K` and the kernel `Cart(G, K)` of the projection onto `prod G_i`.
//! This crate builds generators and relations for that kernel, bounds their
//! number by integer homology of full subcomplexes, and checks relations by
//! evaluating them in the graph product.

pub mod complex;
pub mod count;
pub mod error;
pub mod export;
pub mod graphprod;
pub mod groups;
pub mod homology;
pub mod io;
pub mod reduce;
pub mod verify;
pub mod words;

pub use complex::{Cycle, FlagComplex, VertexSet};
pub use count::Count;
pub use error::{Error, Result};
pub use export::{Expansion, Format};
pub use graphprod::{GraphProduct, Syllable};
pub use groups::{FiniteGroup, GroupSpec, TableGroup, VertexGroup};
pub use homology::{AbelianGroup, BoundsReport, CycleChoice};
pub use reduce::{build_presentation, Presentation, RedTable, Relation};
pub use verify::{verify_presentation, VerifyReport};
pub use words::{GenSymbol, Letter, Word};
