//! Dual situations and their transport, Frobenius algebras, the `R ⊗ −`
//! functors, and monoidal-comonoidal transformations with their mates.

mod algebra;
mod dual;
mod transf;

pub use algebra::{apply_functor_to_algebra, check_frobenius_algebra, tensor_left_functor, FrobeniusAlgebra};
pub use dual::{check_triangles, transport_dual, transport_dual_within, DualSituation};
pub use transf::{
    check_mate_invertibility, check_nat_transf, mate_inverse, MateSide, MonComonNatTransf,
    TransfComponents,
};
