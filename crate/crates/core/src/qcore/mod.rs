//! Fixed-size complex linear algebra for two-qubit states.

mod density;
mod eig;
mod mat;
mod takagi;

pub use density::{min_pt_eigenvalue, partial_transpose, partial_transpose_matrix, DensityMatrix};
pub use eig::{eigh, hermitian_eig, jacobi, matrix_function, matrix_log_on_support, EigenSystem};
pub use mat::{basis_ket, inner, kron, norm, Bell, Ket, Ket2, Ket4, Mat2, Mat4, Matrix, C64};
pub use takagi::takagi;

/// Eigenvalues at or below this value are treated as outside the support.
pub const SUPPORT_THRESHOLD: f64 = 1e-12;
/// Entrywise Hermiticity and trace tolerance for validated types.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Smallest eigenvalue accepted as positive semidefinite.
pub const PSD_TOL: f64 = 1e-10;
