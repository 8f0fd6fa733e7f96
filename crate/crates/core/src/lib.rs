//! Exact refined counts of rational plane tropical curves through points with
//! descendant (ψ-class) conditions.

pub mod bareiss;
pub mod count;
pub mod dr;
pub mod error;
pub mod gaussian;
pub mod guided;
pub mod lattice;
pub mod moduli;
pub mod multiplicity;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod series;
pub mod solver;

pub use count::{count_refined, CountOptions, CountResult, PointSource, Strategy};
pub use error::{CountError, MultiplicityError, ProblemError};
pub use gaussian::GaussianRational;
pub use lattice::{wedge, Degree, DescendantProfile, LatticeVector, Problem};
pub use multiplicity::{Normalization, MultiplicityKind};
pub use poly::RefinedPolynomial;
pub use series::USeries;
