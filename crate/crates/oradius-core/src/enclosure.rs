//! Scalar values carried together with a rigorous enclosure.
//!
//! Every quantity that passes through an eigensolver or the radius solver
//! picks up a small, explicitly tracked interval. Bound evaluators combine
//! these intervals so that a verdict is only ever declared against the
//! worst case of the accumulated numerical error.

/// A scalar known to lie inside `[lower, upper]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifiedValue {
    lower: f64,
    upper: f64,
}

impl CertifiedValue {
    /// Build an enclosure from explicit endpoints. `lower` must not exceed
    /// `upper`; infinite endpoints are allowed (overflow sentinels).
    pub fn new(lower: f64, upper: f64) -> Self {
        debug_assert!(!(lower > upper), "inverted enclosure [{lower}, {upper}]");
        Self { lower, upper }
    }

    /// A degenerate enclosure containing exactly `v`.
    pub fn exact(v: f64) -> Self {
        Self { lower: v, upper: v }
    }

    /// `v` known up to an absolute error of `err`.
    pub fn with_abs_error(v: f64, err: f64) -> Self {
        let err = err.abs();
        Self {
            lower: v - err,
            upper: v + err,
        }
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.upper - self.lower)
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn is_finite(&self) -> bool {
        self.lower.is_finite() && self.upper.is_finite()
    }

    pub fn add(self, other: Self) -> Self {
        Self::new(self.lower + other.lower, self.upper + other.upper)
    }

    /// Scale by a constant of either sign.
    pub fn scale(self, c: f64) -> Self {
        if c >= 0.0 {
            Self::new(self.lower * c, self.upper * c)
        } else {
            Self::new(self.upper * c, self.lower * c)
        }
    }

    /// Product of two enclosures of nonnegative quantities.
    pub fn mul_nonneg(self, other: Self) -> Self {
        let a = self.clamp_nonneg();
        let b = other.clamp_nonneg();
        Self::new(a.lower * b.lower, a.upper * b.upper)
    }

    /// Image under a nondecreasing map.
    pub fn map_monotone(self, f: impl Fn(f64) -> f64) -> Self {
        let lo = f(self.lower);
        let hi = f(self.upper);
        // Guard against roundoff making the map locally non-monotone.
        Self::new(lo.min(hi), lo.max(hi))
    }

    /// `x^e` for a nonnegative enclosure and exponent `e >= 0`.
    pub fn pow_nonneg(self, e: f64) -> Self {
        self.clamp_nonneg().map_monotone(|x| x.powf(e))
    }

    pub fn clamp_nonneg(self) -> Self {
        Self::new(self.lower.max(0.0), self.upper.max(0.0))
    }

    /// Enclosure of `max(a, b)`.
    pub fn max_with(self, other: Self) -> Self {
        Self::new(self.lower.max(other.lower), self.upper.max(other.upper))
    }

    /// Widen both endpoints outward by `err`.
    pub fn widen(self, err: f64) -> Self {
        let err = err.abs();
        Self::new(self.lower - err, self.upper + err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_preserves_containment() {
        let a = CertifiedValue::with_abs_error(2.0, 1e-12);
        let b = CertifiedValue::with_abs_error(3.0, 1e-12);
        let s = a.add(b);
        assert!(s.contains(5.0));
        assert!(s.width() <= 5e-12);
        let p = a.mul_nonneg(b);
        assert!(p.contains(6.0));
        let sc = a.scale(-2.0);
        assert!(sc.contains(-4.0));
        assert!(sc.lower() <= sc.upper());
    }

    #[test]
    fn monotone_map_keeps_order() {
        let a = CertifiedValue::new(1.0, 4.0);
        let sq = a.map_monotone(|x| x * x);
        assert_eq!(sq.lower(), 1.0);
        assert_eq!(sq.upper(), 16.0);
        let r = a.pow_nonneg(0.5);
        assert!(r.contains(1.5));
    }
}
