//! Exact computations around prime-order isometries of even lattices and
//! natural automorphisms of generalized Kummer varieties.
//!
//! * [`algebra`]: exact integer/rational/cyclotomic arithmetic.
//! * [`lattice`]: even lattices, discriminant groups and forms.
//! * [`isometry`]: invariant and coinvariant lattices of prime-order isometries.
//! * [`class5`]: the order-5 classification table and its numeric checks.
//! * [`lefschetz`]: Lefschetz numbers of natural automorphisms of `K_n(A)`.
//! * [`io`]: JSON job and report formats shared with the command-line tool.

pub mod algebra;
pub mod class5;
pub mod error;
pub mod io;
pub mod isometry;
pub mod lattice;
pub mod lefschetz;

pub use error::{Error, Result};
