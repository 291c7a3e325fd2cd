//! Scalars over F = R or C.
//!
//! Every scalar is stored as a `Complex64`; under [`FieldTag::Real`] the
//! imaginary part is kept at zero. "Imaginary part" follows the convention
//! Im(a + bi) = bi, so `re_part(z) + im_part(z) == z`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Scalar = Complex64;
pub type CMat = DMatrix<Complex64>;

/// Default absolute tolerance for floating-point decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

pub const ZERO: Scalar = Complex64::new(0.0, 0.0);
pub const ONE: Scalar = Complex64::new(1.0, 0.0);
pub const I: Scalar = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldTag {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
}

impl FieldTag {
    /// Real dimension of F.
    pub fn dim_f(self) -> usize {
        match self {
            FieldTag::Real => 1,
            FieldTag::Complex => 2,
        }
    }

    pub fn is_complex(self) -> bool {
        self == FieldTag::Complex
    }

    pub fn symbol(self) -> &'static str {
        match self {
            FieldTag::Real => "R",
            FieldTag::Complex => "C",
        }
    }

    /// Checks that `z` lives in F.
    pub fn admits(self, z: Scalar, tol: f64) -> bool {
        self.is_complex() || z.im.abs() <= tol
    }

    /// Checks that `z` lives in the imaginary subspace of F.
    pub fn admits_imag(self, z: Scalar, tol: f64) -> bool {
        z.re.abs() <= tol && self.admits(z, tol)
    }
}

impl std::str::FromStr for FieldTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "R" | "r" | "real" => Ok(FieldTag::Real),
            "C" | "c" | "complex" => Ok(FieldTag::Complex),
            other => Err(Error::Parse(format!("unknown field `{other}` (use R or C)"))),
        }
    }
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.symbol())
    }
}

pub fn conj(z: Scalar) -> Scalar {
    z.conj()
}

pub fn re_part(z: Scalar) -> Scalar {
    Complex64::new(z.re, 0.0)
}

pub fn im_part(z: Scalar) -> Scalar {
    Complex64::new(0.0, z.im)
}

/// Conjugate transpose.
pub fn dagger(m: &CMat) -> CMat {
    m.adjoint()
}

/// Hermitian pairing `x y† = sum x_j conj(y_j)` of row vectors.
pub fn herm(x: &[Scalar], y: &[Scalar]) -> Scalar {
    x.iter().zip(y).map(|(a, b)| a * b.conj()).sum()
}

/// `|x|^2` for a row vector.
pub fn norm_sq(x: &[Scalar]) -> f64 {
    x.iter().map(|a| a.norm_sqr()).sum()
}

/// Largest entry modulus.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Scalar {
        Complex64::new(re, im)
    }

    #[test]
    fn conj_examples() {
        assert_eq!(conj(c(3.0, 0.0)), c(3.0, 0.0));
        assert_eq!(conj(c(1.0, 2.0)), c(1.0, -2.0));
        assert_eq!(conj(conj(c(-1.0, 5.0))), c(-1.0, 5.0));
    }

    #[test]
    fn im_part_examples() {
        assert_eq!(im_part(c(2.0, 3.0)), c(0.0, 3.0));
        assert_eq!(im_part(c(2.0, 0.0)), c(0.0, 0.0));
        let z = c(0.3, -1.7);
        assert_eq!(im_part(z) + re_part(z), z);
    }

    #[test]
    fn dagger_examples() {
        let id = CMat::identity(3, 3);
        assert_eq!(dagger(&id), id);
        let m = CMat::from_row_slice(2, 2, &[ZERO, I, ZERO, ZERO]);
        let d = CMat::from_row_slice(2, 2, &[ZERO, ZERO, -I, ZERO]);
        assert_eq!(dagger(&m), d);
    }

    #[test]
    fn dagger_reverses_products() {
        let a = CMat::from_fn(3, 3, |i, j| c(i as f64 - j as f64, (i * j) as f64 + 0.5));
        let b = CMat::from_fn(3, 3, |i, j| c((i + 2 * j) as f64, 1.0 - i as f64));
        let lhs = dagger(&(&a * &b));
        let rhs = dagger(&b) * dagger(&a);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn field_tags() {
        assert_eq!(FieldTag::Real.dim_f(), 1);
        assert_eq!(FieldTag::Complex.dim_f(), 2);
        assert!(!FieldTag::Real.admits(c(1.0, 1.0), 1e-9));
        assert!(FieldTag::Complex.admits_imag(c(0.0, 2.0), 1e-9));
        assert_eq!("C".parse::<FieldTag>().unwrap(), FieldTag::Complex);
    }

    #[test]
    fn modulus_squared_is_real_and_nonnegative() {
        for z in [c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 0.0)] {
            let p = z * conj(z);
            assert!(p.im.abs() < 1e-15 && p.re >= 0.0);
        }
    }
}
