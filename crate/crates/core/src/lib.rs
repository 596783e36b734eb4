//! Finite statistical-discrimination models: Bayesian task assignment under
//! possibly mistaken beliefs, Blackwell garbling, and a decomposition of the
//! pay effect of extra information.
//!
//! ```
//! use paygap::decomposition::decompose;
//! use paygap::{Dist, Firm, Rational, Scalar, SignalStructure, Task};
//!
//! let firm = Firm::new(vec![Task(vec![Rational::from_int(0), Rational::from_int(1)])])?;
//! let p = Dist::binary(Rational::from_frac(1, 2))?;
//! let q = Dist::binary(Rational::from_frac(3, 4))?;
//! let none = SignalStructure::uninformative(2);
//! let full = SignalStructure::fully_informative(2);
//! let d = decompose(&firm, &p, &q, &none, &full)?;
//! assert_eq!(d.total, Rational::from_frac(-1, 4));
//! assert_eq!(d.total, d.perception_correcting + d.instrumental);
//! # Ok::<(), paygap::ModelError>(())
//! ```

pub mod decomposition;
pub mod discrimination;
pub mod error;
pub mod experiments;
pub mod garbling;
pub mod gen;
pub mod instance;
pub mod model;
pub mod orders;
pub mod scalar;
pub mod simplex;
pub mod suites;

pub use error::{ModelError, Result};
pub use model::{Dist, Firm, Population, Signal, SignalStructure, SkillSpace, Task, TieBreak};
pub use scalar::{Mode, Rational, Scalar};
