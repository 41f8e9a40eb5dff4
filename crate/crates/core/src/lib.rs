//! Computational workbench for finite local groupoids.
//!
//! The crate is organised bottom-up: [`groupoid`] holds the table model,
//! [`words`] the contraction/expansion calculus and associative completion,
//! [`assoc`] and [`nerve`] the associativity and simplicial diagnostics,
//! [`complexes`] and [`homotopy`] the combinatorial topology, and
//! [`geometry`], [`flows`], [`lace`] the worked continuum examples.

pub mod assoc;
pub mod complexes;
pub mod flows;
pub mod fpgroup;
pub mod geometry;
pub mod groupoid;
pub mod homotopy;
pub mod intmat;
pub mod io;
pub mod lace;
pub mod nerve;
pub mod words;

pub use groupoid::{
    make_example, Arrow, ArrowIx, ExampleKind, FiniteLocalGroupoid, ObjIx, TableError,
    ValidationReport,
};
pub use words::{Bounds, Move, MoveTrace, Verdict, Word};
