//! Curvature tensors, decoupled skew maps, plane operators and their Jordan types.

mod bilinear;
mod forms;
mod jordan;
mod plane;
mod tensor;

pub use bilinear::{make_t_chi_xi, make_t_phi, AlternatingMap, BilinearSkewMap};
pub use forms::{omega, wedge_square, wedge_square_zero};
pub use jordan::{jordan_type, JordanTag, JordanType};
pub use plane::{is_timelike_plane, plane_operator, plane_rank_any, PlaneOperator, SkewFamily};
pub use tensor::{make_r_phi, CurvatureTensor4, SymmetryReport};
