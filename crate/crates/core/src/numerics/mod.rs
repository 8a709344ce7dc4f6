//! Shared numerical building blocks: special functions, quadrature, root
//! finding, dense linear algebra and symmetric eigenvalues.

pub mod eigen;
pub mod linalg;
pub mod quadrature;
pub mod roots;
pub mod special;

pub use eigen::{jacobi_eigenvalues, symmetric_extreme_eigen, SymmetricMatrix, Tridiagonal};
pub use linalg::{solve_dense, DenseMatrix, LuDecomposition};
pub use quadrature::{gauss_legendre_panels, gauss_legendre_rule, integrate_panels, Panel, QuadratureConfig};
pub use roots::{find_roots_scan_bisect, first_root_scan_bisect, golden_section_max, Bracket};
pub use special::{exp_diff_quotient, sinc_pi, sinc_pi_real, SINC_SERIES_THRESHOLD};
