//! Finite posets, finite distributive lattices and the category of
//! distributors between them.

pub mod birkhoff;
pub mod dist;
pub mod dot;
pub mod error;
pub mod io;
pub mod karoubi;
pub mod lattice;
pub mod poset;
pub mod sample;
pub mod verify;
pub mod vietoris;

pub use birkhoff::{booleanize, downset_lattice, patch, spec_counit, spec_unit, Booleanization, DownsetLattice};
pub use dist::{compose, Distributor, Mode};
pub use error::{Error, Result};
pub use karoubi::{split_idempotent, SplitTriple};
pub use lattice::{check_hemimorphism, lattice_from_poset, FinDistLattice, Hemimorphism};
pub use poset::{enumerate_posets, FinitePoset, MonotoneMap};
