//! Exact computations on the Young graph with Jack edge multiplicities.
//!
//! The crate covers partitions and Young diagrams, symmetric functions over
//! the rationals, Jack and shifted Jack polynomials, weighted dimension
//! functions and Martin kernels of the branching graph, the Thoma simplex with
//! its θ-extended symmetric functions, and harmonic functions built from
//! finitely supported boundary measures. All arithmetic is exact.

pub mod boundary;
pub mod error;
pub mod graph;
pub mod harmonic;
pub mod jack;
pub mod linalg;
pub mod partition;
pub mod rational;
pub mod shifted;
pub mod symfunc;
pub mod verify;

pub use boundary::{BoundaryKernelValue, ThomaPoint};
pub use error::{Error, Result};
pub use graph::{Multiplicity, WeightedGraphView};
pub use harmonic::{AtomicMeasure, LevelDistribution};
pub use jack::{HookData, JackBasisElement, KappaJMethod};
pub use partition::{Cell, Dominance, Frobenius, Partition};
pub use rational::Rational;
pub use shifted::ShiftedSymFunc;
pub use symfunc::{Basis, SymFunc};
