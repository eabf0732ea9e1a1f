//! Branch-cut-consistent complex primitives and the `-1`-covering calculus.
//!
//! Every argument, logarithm and fractional power in this crate uses the
//! principal branch with `arg z` in `(-pi, pi]`; the cut sits on the negative
//! real axis. Fractional powers are defined by `z^d = exp(d * log z)` with
//! the convention `0^0 = 1`.

use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

/// A point of the complex plane. Operations taking a `ComplexPoint` reject
/// non-finite components.
pub type ComplexPoint = Complex64;

/// Default tolerance for geometric predicates (argument and modulus tests).
pub const GEOM_TOL: f64 = 1e-9;
/// Default tolerance for algebraic identities (log/exp round trips).
pub const ALGEBRA_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("operand has a non-finite component")]
    NonFinite,
    #[error("zero is outside the domain of this operation")]
    ZeroOperand,
    #[error("-1 is outside the domain of this operation")]
    MinusOne,
    #[error("angular gap {gap} between the operands exceeds pi")]
    AngularGap { gap: f64 },
}

fn ensure_finite(z: ComplexPoint) -> Result<(), GeomError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(GeomError::NonFinite)
    }
}

/// Principal argument in `(-pi, pi]`. `atan2` alone maps points with a
/// negative zero imaginary part to `-pi`; this folds them back onto the cut.
pub fn principal_arg(z: ComplexPoint) -> f64 {
    let a = z.im.atan2(z.re);
    if a == -PI {
        PI
    } else {
        a
    }
}

/// Wraps an angle difference into `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut a = a % (2.0 * PI);
    if a <= -PI {
        a += 2.0 * PI;
    } else if a > PI {
        a -= 2.0 * PI;
    }
    a
}

/// Principal logarithm `log r + i theta` with `theta` in `(-pi, pi]`.
pub fn principal_log(z: ComplexPoint) -> Result<ComplexPoint, GeomError> {
    ensure_finite(z)?;
    if z == Complex64::new(0.0, 0.0) {
        return Err(GeomError::ZeroOperand);
    }
    Ok(Complex64::new(z.norm().ln(), principal_arg(z)))
}

/// Principal fractional power `r^delta exp(i delta theta)` for `delta >= 0`,
/// with `0^0 = 1` and an error for any other power of zero.
pub fn cpow(z: ComplexPoint, delta: f64) -> Result<ComplexPoint, GeomError> {
    ensure_finite(z)?;
    assert!(delta >= 0.0 && delta.is_finite(), "cpow: delta must be a finite nonnegative real");
    if z == Complex64::new(0.0, 0.0) {
        return if delta == 0.0 {
            Ok(Complex64::new(1.0, 0.0))
        } else {
            Err(GeomError::ZeroOperand)
        };
    }
    let r = z.norm().powf(delta);
    let phase = delta * principal_arg(z);
    Ok(Complex64::new(r * phase.cos(), r * phase.sin()))
}

/// `arg(1 + z)` on the principal branch; undefined at `z = -1`.
pub fn arg1p(z: ComplexPoint) -> Result<f64, GeomError> {
    ensure_finite(z)?;
    let w = Complex64::new(1.0 + z.re, z.im);
    if w == Complex64::new(0.0, 0.0) {
        return Err(GeomError::MinusOne);
    }
    Ok(principal_arg(w))
}

/// Whether `z` is `-1`-covered by `cover`: both sit on the same ray out of
/// `-1` (arguments of `1 + .` equal within `tol`, compared circularly so the
/// branch cut cannot split a ray) and `z` is the farther of the two,
/// `|1 + z| >= |1 + cover| - tol`.
pub fn covers(cover: ComplexPoint, z: ComplexPoint, tol: f64) -> Result<bool, GeomError> {
    let a_z = arg1p(z)?;
    let a_c = arg1p(cover)?;
    let same_ray = wrap_angle(a_z - a_c).abs() <= tol;
    let farther = (Complex64::new(1.0, 0.0) + z).norm() >= (Complex64::new(1.0, 0.0) + cover).norm() - tol;
    Ok(same_ray && farther)
}

/// Witness that a scaled geometric average lands on the chord between its
/// two operands: `t * z1^alpha * z2^(1-alpha) = beta * z1 + (1-beta) * z2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverWitness {
    pub t: f64,
    pub beta: f64,
}

/// Finds the `(t, beta)` witness showing the geometric average of `z1, z2`
/// is dominated by their arithmetic average when viewed from the origin.
///
/// The witness is computed by intersecting the segment `[z2, z1]` with the
/// ray of argument `arg(z1^alpha z2^(1-alpha))`; `t` is the ratio of the
/// intersection modulus to the geometric-average modulus.
pub fn geo_mean_dominates(
    z1: ComplexPoint,
    z2: ComplexPoint,
    alpha: f64,
) -> Result<CoverWitness, GeomError> {
    ensure_finite(z1)?;
    ensure_finite(z2)?;
    assert!((0.0..=1.0).contains(&alpha), "geo_mean_dominates: alpha must lie in [0, 1]");
    let zero = Complex64::new(0.0, 0.0);
    if z1 == zero || z2 == zero {
        return Err(GeomError::ZeroOperand);
    }
    if z1 == z2 {
        // Degenerate chord; any beta works, alpha keeps the map continuous.
        return Ok(CoverWitness { t: 1.0, beta: alpha });
    }
    let th1 = principal_arg(z1);
    let th2 = principal_arg(z2);
    let gap = (th1 - th2).abs();
    if gap > PI + 1e-12 {
        return Err(GeomError::AngularGap { gap });
    }
    let gm_modulus = (alpha * z1.norm().ln() + (1.0 - alpha) * z2.norm().ln()).exp();
    if gap <= 1e-12 {
        // Collinear rays: the geometric average already sits on the chord.
        let (r1, r2) = (z1.norm(), z2.norm());
        let beta = if (r1 - r2).abs() <= f64::EPSILON * r1.max(r2) {
            alpha
        } else {
            ((gm_modulus - r2) / (r1 - r2)).clamp(0.0, 1.0)
        };
        return Ok(CoverWitness { t: 1.0, beta });
    }
    // Ray direction of the geometric average; the convex combination of the
    // principal arguments is exact here because the gap is at most pi.
    let phi = th2 + alpha * (th1 - th2);
    let u = Complex64::from_polar(1.0, phi);
    let den = (u.conj() * (z1 - z2)).im;
    let num = -(u.conj() * z2).im;
    let beta = (num / den).clamp(0.0, 1.0);
    let y = z2 + beta * (z1 - z2);
    let t = (y.norm() / gm_modulus).clamp(0.0, 1.0);
    Ok(CoverWitness { t, beta })
}
