//! Float helpers shared by the bound checks.

/// Relative tolerance for comparisons against closed-form bounds.
pub const REL_TOL: f64 = 1e-9;

/// `a <= b` up to [`REL_TOL`] relative slack.
#[inline]
pub fn le_tol(a: f64, b: f64) -> bool {
    a <= b + REL_TOL * libm::fabs(b).max(1.0)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

/// `log_{3/2} x`.
#[inline]
pub fn log_three_halves(x: f64) -> f64 {
    libm::log(x) / libm::log(1.5)
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_is_relative() {
        assert!(le_tol(1e6 + 1e-4, 1e6));
        assert!(!le_tol(1e6 + 1.0, 1e6));
        assert!(le_tol(0.0, 0.0));
    }
}
