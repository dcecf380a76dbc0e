//! Linear temporal logic: syntax, lasso evaluation, Büchi translation and
//! existential path checking.

mod buchi;
mod eval;
mod formula;
mod parser;
mod product;

pub use buchi::{to_buchi, BoundLiterals, BuchiAutomaton};
pub use eval::eval_on_lasso;
pub use formula::Ltl;
pub use parser::{parse_ltl, LtlParseError};
pub use product::{exists_path, exists_path_with, Kripke, LassoGraph};
