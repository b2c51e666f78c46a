//! Cohomology of root systems with coefficients in Laurent monomials, and the
//! deformed Lie algebras built from 2-cocycles.

pub mod automorphism;
pub mod chains;
pub mod cochain;
pub mod cohomology;
pub mod dot;
pub mod error;
pub mod io;
pub mod lie;
pub mod monomial;
pub mod natural;
pub mod root_facts;
pub mod root_system;

pub use chains::{boundary, boundary_sum, enumerate_chains, Chain, ChainSum};
pub use cochain::{coboundary, cup, reversal, symmetry_class, Cochain, CupConvention, SymmetryClass};
pub use cohomology::{integrate, integrate_symbolic, is_cocycle, CrossCheck, IntegrationResult};
pub use error::{Error, Result};
pub use monomial::{Monomial, VariableTable};
pub use root_system::{build_root_system, CartanType, LengthClass, Phi0, RootId, RootSum, RootSystem, Series};
