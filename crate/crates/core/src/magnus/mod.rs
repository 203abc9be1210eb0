//! Magnus embedding of the free group into truncated noncommutative power
//! series, `x_i -> 1 + X_i`. A word lies in the `k`-th lower central term
//! exactly when every nonconstant term of its image of degree below `k`
//! vanishes.

mod embed;
mod lie;
mod series;
mod weight;

use thiserror::Error;

pub use embed::{magnus_embed, magnus_embed_capped, monomial_coefficient};
pub use lie::{leading_components_rank, rational_rank, witt_number};
pub use series::{DegreeCaps, Monomial, SparseSeries};
pub use weight::{
    gamma_weight, gamma_weight_report, gamma_weight_series, homogeneous_component, is_law_of_nc, lead_certificate,
    leading_terms, tree_image, GammaWeight, SeriesOptions, WeightMethod, WeightReport,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MagnusError {
    #[error("identity word has no weight")]
    IdentityWord,
    #[error("truncation degree must be at least 1")]
    ZeroTruncation,
    #[error("series has no inverse: constant term is not 1 or -1")]
    NotInvertible,
    #[error("series grew to {terms} terms, over the limit of {limit}")]
    Infeasible { terms: usize, limit: usize },
    #[error("pruned expansion only shows the weight is at least {lower}")]
    Inconclusive { lower: usize },
}
