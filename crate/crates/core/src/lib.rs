//! Exact certificates for graded Artinian Gorenstein complete intersections.
//!
//! Given homogeneous `f_1, ..., f_n` in `n` variables, the crate tabulates the
//! quotient `M = S/(f_1, ..., f_n)` degree by degree, normalizes its socle
//! functional by the Jacobian determinant, builds the associated form (a
//! Macaulay inverse system), and decides
//!
//! * smoothness of the associated form's hypersurface,
//! * whether `J_(T-1)` meets the Veronese variety of `(T-1)`-th powers,
//! * the strong Lefschetz property in a given degree.
//!
//! All arithmetic is exact, over Q or a prime field.

pub mod aci;
pub mod assocform;
pub mod error;
pub mod gradedalg;
pub mod lefschetz;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod projgeom;
pub mod scalar;

pub use error::{Error, Result};
pub use gradedalg::{GradedQuotient, MultiDegree, SocleData, SystemInput};
pub use monomial::Monomial;
pub use parse::parse_poly;
pub use poly::{Poly, VarSpace};
pub use scalar::{FieldConfig, Scalar};
