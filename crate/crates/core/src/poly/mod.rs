pub mod factor;
pub mod gcd;
pub mod groebner;
pub mod matrix;
pub mod mpoly;
pub mod parse;
pub mod ratfunc;
pub mod smooth;
pub mod upoly;

pub use factor::{factor, is_irreducible, Factorization};
pub use matrix::PolyMatrix;
pub use mpoly::{vars, Exp, MPoly, Vars};
pub use parse::parse_poly;
pub use ratfunc::{Evaluation, RatFunc};
pub use smooth::{is_smooth_plane_curve, CurveVerdict};
