//! The relative parabose set with one paraboson and one parafermion: factor
//! search over `Z2 × Z2`, the `V(m,n)` ladder of its Fock-like module, and
//! braided tensor products of Green-ansatz representations.

mod ladder;
mod product;
mod search;

pub use ladder::{build_pbf_rep, subspace_dims, LadderLabel, LadderManifest, PbfFockRep, SectorDim};
pub use product::{braided_product_rep, BraidedProduct};
pub use search::{factor_search, factor_search_with, FactorCandidate, FactorSearch};
