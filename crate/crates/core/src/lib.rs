//! Equivariant and ordinary cohomology of regular semisimple Hessenberg
//! varieties computed from their GKM graphs, over exact rationals.

pub mod classes;
pub mod cohomology;
pub mod gkm;
pub mod hessfn;
pub mod linalg;
pub mod perm;
pub mod polyring;
pub mod qseries;
pub mod rational;

pub use classes::{ClassSpec, ReportedFailure};
pub use cohomology::{GradedReport, Limits, SpanModel};
pub use gkm::{Cochain, LabeledGraph};
pub use hessfn::{HessError, HessenbergFunction, LollipopShape};
pub use linalg::{EchelonBasis, SparseVec};
pub use perm::{Permutation, SymmetricGroup};
pub use polyring::MultiPoly;
pub use qseries::QPoly;
pub use rational::Rat;
