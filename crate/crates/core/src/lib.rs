//! Exact commutative-algebra engine over prime fields.
//!
//! Computes Groebner bases, minimal graded free resolutions, Betti tables,
//! Hilbert functions, Tor/Ext, depth certificates, syzygy and transpose
//! modules over graded quotient rings R = F_p[x_1..x_v]/I, plus a set of
//! verification operations for depth inequalities, Tor-rigidity probes,
//! syzygy-splitting identities and Dao-style eta estimates.

pub mod error;
pub mod field;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod freemod;
pub mod groebner;
pub mod linalg;
pub mod hilbert;
pub mod ring;
pub mod module;
pub mod engine;
pub mod resolution;
pub mod cache;
pub mod homology;
pub mod depth;
pub mod lab;

pub use error::{Error, Result};
pub use field::{PrimeField, DEFAULT_PRIME};
pub use monomial::Monomial;
pub use order::{monomial_cmp, ModuleOrder, TermOrder};
pub use poly::{PolyRing, Polynomial};
pub use freemod::{Degree, FreeModule, ModElement};
pub use ring::QuotientRing;
pub use module::{ModuleMap, PresentedModule};
pub use engine::{Engine, EngineConfig, Length};
pub use resolution::{BettiTable, GradedFreeResolution};
pub use homology::{HomologyKind, HomologyModule};
pub use depth::{DepthCertificate, Ideal, RegularSequence, SequenceSearch};
