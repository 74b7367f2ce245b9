//! Ice quivers, Laurent-polynomial cluster variables, seed mutation and the
//! square-move correspondence.

mod laurent;
mod quiver;
mod seed;
mod square;

pub use laurent::{LaurentJson, LaurentPoly, TermJson};
pub use quiver::{IceQuiver, QuiverVertex};
pub use seed::{
    mutation_class, seeds_match_square_moves, square_move_report, Exchange, MutationClass, Seed,
    SeedJson, SquareCheck, VertexVarJson,
};
pub use square::{square_move_closure, square_move_collection, square_move_targets};
