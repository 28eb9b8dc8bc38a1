//! A'-groups as construction trees: abelian leaves, coprime semidirect products with an
//! odd abelian kernel, and direct products.
//!
//! Actions are authored on a generating set of the acting group and completed by
//! breadth-first closure; the closure rejects inconsistent or non-invertible data.

mod abelian;
mod action;
mod spec_file;
mod table;
mod tree;

pub use abelian::{AbElement, AbelianGroup};
pub use action::{validate_action, Action, ActionSpec, Endo};
pub use spec_file::{ActionJson, GeneratorImage, GroupSpec};
pub use table::{is_solvable_a_group, CayleyTable, DEFAULT_TABLE_CAP};
pub use tree::{ApGroupTree, Node, TreeElement, TwoSylow, DEFAULT_ENUMERATION_CAP};
