//! Realizable Steinitz classes of tame Galois extensions.
//!
//! For an A'-group `G` of odd order, `C(2)`, or a dihedral group `D_n` with `n` odd, and a
//! base field `k` that is either the rationals or an imaginary quadratic field, this crate
//! computes `R_t(k, G)`, the subgroup of the ideal class group `Cl(k)` formed by Steinitz
//! classes of tamely ramified `G`-extensions.
//!
//! The computation is built bottom-up:
//!
//! - [`grouptree`]: group trees, actions, Cayley tables and the solvable-A-group verifier.
//! - [`classgroup`]: reduced binary quadratic forms, `Cl(k)`, prime splitting and subgroup
//!   arithmetic.
//! - [`cyclotomic`]: `Gal(k(zeta_m)/k)` inside `(Z/mZ)*`, the subgroups `G_{k,mu,tau}` and
//!   `W`-groups from degree-1 prime enumeration.
//! - [`steinitz`]: discriminant and exponent calculus.
//! - [`realizable`]: the recursive `R_t` engine, the independent dihedral path, trace
//!   replay and the good-group membership report.

pub mod arith;
pub mod classgroup;
pub mod cyclotomic;
pub mod error;
pub mod grouptree;
pub mod realizable;
pub mod sieve;
pub mod snf;
pub mod steinitz;

pub use classgroup::{ClassGroup, ClassSubgroup, IdealClass, QuadField, QuadForm, Splitting};
pub use cyclotomic::{CycloSubgroup, FixedFieldDescriptor, WConfig, WGroup};
pub use error::{Error, ErrorKind, Result};
pub use grouptree::{AbElement, AbelianGroup, ActionSpec, ApGroupTree, Endo, GroupSpec, TreeElement};
pub use realizable::{rt, rt_dihedral, rt_with, RtConfig, RtResult};
