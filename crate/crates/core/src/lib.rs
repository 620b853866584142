//! Exact signature analysis of semicoherent systems.
//!
//! This crate computes system signatures, tail signatures, and
//! Barlow-Proschan importance indices from a structure function, entirely
//! in arbitrary-precision rational arithmetic. The core route goes through
//! the diagonal section `h(x)` of the reliability function: reflect it
//! within degree `n`, expand about 1, and read the tail signature off the
//! coefficients. Classical subset-enumeration formulas are retained as
//! independent oracles, and a seeded Monte Carlo simulator provides a
//! statistical cross-check of both indices.
//!
//! Modules:
//! - [`structure`]: structure functions (formula DSL, minimal path sets,
//!   truth tables), validation, relabeling.
//! - [`multilinear`]: sparse multilinear polynomials, Moebius / zeta
//!   transforms, reliability functions, derivatives, diagonals.
//! - [`unipoly`]: dense exact univariate polynomials, reflection, Taylor
//!   shift, Bernstein basis conversions.
//! - [`signature`]: the reflected-polynomial pipeline, counting oracles,
//!   probability signatures, coherence tests.
//! - [`importance`]: Barlow-Proschan index by exact integration, with the
//!   Shapley subset-sum oracle.
//! - [`modular`]: signature composition over modular decompositions and
//!   recurrent systems.
//! - [`montecarlo`]: reproducible lifetime simulation.
//!
//! Signature of the five-component bridge from its formula:
//!
//! ```
//! use sigkit_core::{tail_from_diagonal, MultiPoly, Structure};
//! # fn main() -> sigkit_core::Result<()> {
//! let bridge = Structure::parse("x1&x4 | x2&x5 | x1&x3&x5 | x2&x3&x4", 5)?;
//! let h = MultiPoly::reliability(&bridge)?;
//! let tail = tail_from_diagonal(&h.diagonal(), 5)?;
//! assert_eq!(
//!     tail.to_signature().formatted(),
//!     ["0", "1/5", "3/5", "1/5", "0"]
//! );
//! # Ok(())
//! # }
//! ```
//!
//! Composing two serially connected modules from their signatures alone:
//!
//! ```
//! use sigkit_core::{ModularSystem, Signature, Structure, TailSignature};
//! use sigkit_core::rational::{int, ratio};
//! # fn main() -> sigkit_core::Result<()> {
//! let psi = Structure::parse_with_prefix("z1&z2", 2, 'z')?;
//! let s1 = Signature::new(vec![ratio(1, 3), ratio(2, 3), int(0)])?;
//! let s2 = Signature::new(vec![int(0), ratio(2, 3), ratio(1, 3), int(0)])?;
//! let system = ModularSystem::new(
//!     psi,
//!     vec![
//!         TailSignature::from_signature(&s1),
//!         TailSignature::from_signature(&s2),
//!     ],
//! )?;
//! assert_eq!(
//!     system.signature()?.formatted(),
//!     ["1/7", "8/21", "38/105", "4/35", "0", "0", "0"]
//! );
//! # Ok(())
//! # }
//! ```

pub mod error;
pub mod importance;
pub mod modular;
pub mod montecarlo;
pub mod multilinear;
pub mod rational;
pub mod signature;
pub mod structure;
pub mod unipoly;

pub use error::{Error, Result};
pub use importance::{bp_owen, bp_shapley_oracle, BpIndex};
pub use modular::{
    flatten, module_reflected, recurrent_reflected, redundancy_tail, ModularFile, ModularSystem,
    RecurrentFile,
};
pub use montecarlo::{simulate, LifetimeModel, SimConfig, SimReport};
pub use multilinear::MultiPoly;
pub use rational::Rational;
pub use signature::{
    boland_signature, coherence_conditions, coherence_conditions_of, probability_tail_signature,
    tail_counting_oracle, tail_from_diagonal, tail_from_reflected, CoherenceReport, QualityTable,
    Signature, TailSignature,
};
pub use structure::{
    Component, Formula, PathSetFile, SemicoherenceReport, Structure, Subset, TruthTableFile,
};
pub use unipoly::{bernstein_basis, UniPoly};
