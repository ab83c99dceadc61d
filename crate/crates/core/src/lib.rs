//! Multisegment calculus and fixed-vector dimension counts for local newforms on GL_n.
//!
//! The crate is `no_std` (with `alloc`). Modules:
//!
//! * [`multiseg`]: segments, multisegments, derivatives, duals, the ramified part and λ.
//! * [`gradedpair`]: graded nilpotent pairs over a prime field and the randomized dual oracle.
//! * [`omodule`]: finite modules over Z_p, submodule enumeration and filtration counts.
//! * [`dimension`]: dimension formulas, theorem sweeps and the Steinberg generating function.

#![no_std]

extern crate alloc;

pub mod dimension;
pub mod field;
pub mod gradedpair;
pub mod multiseg;
pub mod omodule;

pub use multiseg::{CuspidalLabel, LambdaVec, Multisegment, MultisegError, Segment};
