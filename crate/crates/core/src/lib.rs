//! Exact arithmetic in the Jones (Temperley-Lieb) monoids J_n, their
//! Green's-relations structure, and a decision procedure for word
//! identities in J_5 and J_4 cross-validated against a brute-force
//! homomorphism oracle.

pub mod diagram;
pub mod table;
pub mod word;

pub use diagram::{
    catalan, enumerate_jones, enumerate_jones_with_cap, eval_generator_word, is_noncrossing,
    Diagram, DiagramError, MonoidTable, Point, Side, WireProfile, DEFAULT_STRAND_CAP,
};
pub use table::{MulTable, TableError};
pub use word::{occurs, parse_identity, parse_identity_file, Identity, Letter, ParseError, Word};
