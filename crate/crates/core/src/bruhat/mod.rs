//! Seeds on double Bruhat cells of `SL_n` and the Weyl-group combinatorics
//! behind them.

mod group;
mod seed;
mod weyl;
mod word;

pub use group::{
    bruhat_cos_chains, dbc_membership, evaluate_minor, factorized_point, random_rational,
    sample_cell_point, standard_double_word, verify_exchange_identity, exchange_identity_at, CellChain, ExchangeCheck,
    GroupPoint,
};
pub use seed::{bfz_edges, bruhat_lambda, build_bfz_seed, BfzSeed};
pub use weyl::{
    bruhat_interval, bruhat_leq, min_coset_representative, subsets_of_size, weight_leq,
    word_to_element, CartanData, WeylElement,
};
pub use word::{DoubleWord, MinorSpec};
