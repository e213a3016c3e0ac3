//! Quadtree exclusion of (γ, β) parameter boxes.
//!
//! A cell is killed by a good word W when, over the whole cell,
//! |β| + |P_W(γ, β)| < 1 and the pair (g, W(f, g)) cannot be elementary.
//! P_W is read as γ(W(f, g), g) with β = β(g). The conclusion is that every
//! non-elementary ⟨f, g⟩ with parameters in the cell is not discrete.

mod family;
mod search;

pub use family::good_word_family;
pub use search::{
    find_killer, grid_search, interval_eval, interval_eval_exact, parse_range, reverify, CellReport, CellStatus, EvalMode, Guard,
    GridReport, GridStats, KillerCertificate, ParamBox, PolyCache, SearchConfig, SearchError,
};
