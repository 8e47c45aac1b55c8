use num_traits::{Float, FromPrimitive, ToPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;

/// Floating-point scalar the geometry routines are written against.
///
/// Tolerances are part of the scalar type: `linalg_tol` guards pivots,
/// determinants and matrix inverses, `check_tol` is the default threshold
/// for identity residuals.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    fn linalg_tol() -> Self;
    fn check_tol() -> Self;

    /// Converts an `f64` literal. Panics only for non-representable values,
    /// which never occur for the small constants used here.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn linalg_tol() -> Self {
        1e-12
    }
    fn check_tol() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn linalg_tol() -> Self {
        1e-6
    }
    fn check_tol() -> Self {
        1e-4
    }
}
