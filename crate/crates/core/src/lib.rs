//! Cyclotomic invariants of odd primes at desk scale: irregular pairs and
//! eigenspace exponents from Bernoulli data, the unit-side invariant r₀ and
//! dim V from cyclotomic units in Z[ζ_p]/(p), class-group bookkeeping
//! (R±/r±, S₁, Picard structure at level p²) with identity cross-checks,
//! auxiliary-prime corroboration of the real class group being p-free, and
//! exact brute-force verification at p ∈ {3, 5, 7}.

pub mod arith;
pub mod bernoulli;
pub mod cache;
pub mod error;
pub mod micro;
pub mod report;
pub mod residue;
pub mod scan;
pub mod vandiver;

pub use error::VanlabError;
pub use report::{invariant_report, InvariantReport};
