//! Orlicz functions, their kernels, and complementary pairs.
//!
//! The engine carries the scalar-level machinery the bound evaluators
//! lean on: convexity and monotonicity probes, Young's inequality with
//! its kernel equality condition, the Bohr mean inequality, the scaling
//! property `phi(alpha u) <= alpha phi(u)`, and sub-multiplicativity
//! probing. Complements are produced in closed form where one is known
//! (the normalized power family) and otherwise as a numeric convex
//! conjugate `psi(v) = sup_{u>=0} (u v - phi(u))`.

use std::f64::consts::E;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Default probe grid: 64 logarithmically spaced points on [1e-3, 50],
/// covering the magnitudes matrix eigenvalues reach in the harness
/// ensembles.
pub fn default_probe_grid() -> Vec<f64> {
    let lo = 1e-3f64.log10();
    let hi = 50f64.log10();
    (0..64)
        .map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / 63.0))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrliczError {
    #[error("Orlicz function argument must be nonnegative, got {value}")]
    NegativeArgument { value: f64 },
    #[error("{family} parameter {value} violates {constraint}")]
    ParamOutOfRange {
        family: &'static str,
        value: f64,
        constraint: &'static str,
    },
    #[error("{id} failed the convexity probe")]
    NotConvex { id: String },
    #[error("conjugate maximizer of {id} exceeded the bracket cap at v={at} (function grows too slowly)")]
    MaximizerUnbounded { id: String, at: f64 },
    #[error("unknown Orlicz specifier {spec:?} (expected power:R, pnorm:P, exppow:R or logtemp:P)")]
    UnknownSpecifier { spec: String },
    #[error("{id} failed invariant probe: {what}")]
    ProbeFailed { id: String, what: String },
}

#[derive(Clone, Debug)]
enum Kind {
    /// `t^r`, `r >= 1`
    Power { r: f64 },
    /// `t^p / p`, `p > 1`
    PowerNormalized { p: f64 },
    /// `e^{t^r} - 1`, `r > 1`
    ExpPower { r: f64 },
    /// `t^p / ln(e + t)`, `p >= 2`
    LogTempered { p: f64 },
    /// Numeric convex conjugate of another Orlicz function.
    Conjugate { base: Arc<OrliczFunction> },
}

/// An evaluable convex function `phi` with optional kernel and optional
/// closed-form complement, plus a probed sub-multiplicativity flag.
#[derive(Clone, Debug)]
pub struct OrliczFunction {
    id: String,
    kind: Kind,
    submultiplicative: bool,
}

fn fmt_param(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x as i64)
    } else {
        format!("{x}")
    }
}

impl OrliczFunction {
    /// `t -> t^r` for `r >= 1`.
    pub fn power(r: f64) -> Result<Self, OrliczError> {
        if !(r >= 1.0) || !r.is_finite() {
            return Err(OrliczError::ParamOutOfRange {
                family: "power",
                value: r,
                constraint: "r >= 1",
            });
        }
        Ok(Self::finish(format!("power:{}", fmt_param(r)), Kind::Power { r }))
    }

    /// `t -> t^p / p` for `p > 1`.
    pub fn power_normalized(p: f64) -> Result<Self, OrliczError> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(OrliczError::ParamOutOfRange {
                family: "pnorm",
                value: p,
                constraint: "p > 1",
            });
        }
        Ok(Self::finish(
            format!("pnorm:{}", fmt_param(p)),
            Kind::PowerNormalized { p },
        ))
    }

    /// `t -> e^{t^r} - 1` for `r > 1`.
    pub fn exp_power(r: f64) -> Result<Self, OrliczError> {
        if !(r > 1.0) || !r.is_finite() {
            return Err(OrliczError::ParamOutOfRange {
                family: "exppow",
                value: r,
                constraint: "r > 1",
            });
        }
        Ok(Self::finish(format!("exppow:{}", fmt_param(r)), Kind::ExpPower { r }))
    }

    /// `t -> t^p / ln(e + t)` for `p >= 2`.
    pub fn log_tempered(p: f64) -> Result<Self, OrliczError> {
        if !(p >= 2.0) || !p.is_finite() {
            return Err(OrliczError::ParamOutOfRange {
                family: "logtemp",
                value: p,
                constraint: "p >= 2",
            });
        }
        Ok(Self::finish(
            format!("logtemp:{}", fmt_param(p)),
            Kind::LogTempered { p },
        ))
    }

    /// Parse the CLI specifier grammar: `power:R`, `pnorm:P`, `exppow:R`,
    /// `logtemp:P` with decimal parameters.
    pub fn parse(spec: &str) -> Result<Self, OrliczError> {
        let unknown = || OrliczError::UnknownSpecifier { spec: spec.to_string() };
        let (family, param) = spec.split_once(':').ok_or_else(unknown)?;
        let value: f64 = param.trim().parse().map_err(|_| unknown())?;
        match family.trim() {
            "power" => Self::power(value),
            "pnorm" => Self::power_normalized(value),
            "exppow" => Self::exp_power(value),
            "logtemp" => Self::log_tempered(value),
            _ => Err(unknown()),
        }
    }

    fn finish(id: String, kind: Kind) -> Self {
        let mut f = Self {
            id,
            kind,
            submultiplicative: false,
        };
        f.submultiplicative = match f.kind {
            // (uv)^r = u^r v^r exactly.
            Kind::Power { .. } => true,
            // Conjugates are never consulted for sub-multiplicativity.
            Kind::Conjugate { .. } => false,
            _ => f.submultiplicative_probe(&default_probe_grid()),
        };
        f
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// `Some(r)` when this is the plain power family `t^r`.
    pub fn as_power(&self) -> Option<f64> {
        match self.kind {
            Kind::Power { r } => Some(r),
            _ => None,
        }
    }

    /// Result of the construction-time sub-multiplicativity probe.
    pub fn is_submultiplicative(&self) -> bool {
        self.submultiplicative
    }

    /// Evaluate `phi(u)`. Overflow is reported as the `+inf` sentinel,
    /// never silently saturated to a finite value.
    pub fn evaluate(&self, u: f64) -> Result<f64, OrliczError> {
        if u < 0.0 || u.is_nan() {
            return Err(OrliczError::NegativeArgument { value: u });
        }
        match &self.kind {
            Kind::Conjugate { base } => conjugate_eval(base, u),
            _ => Ok(self.eval_closed(u)),
        }
    }

    /// Infallible evaluation for nonnegative arguments; overflow and an
    /// unbounded conjugate maximizer both collapse to `+inf`.
    pub fn eval_or_inf(&self, u: f64) -> f64 {
        let u = u.max(0.0);
        match &self.kind {
            Kind::Conjugate { base } => conjugate_eval(base, u).unwrap_or(f64::INFINITY),
            _ => self.eval_closed(u),
        }
    }

    fn eval_closed(&self, u: f64) -> f64 {
        match self.kind {
            Kind::Power { r } => {
                if r == 1.0 {
                    u
                } else if r == 2.0 {
                    u * u
                } else {
                    u.powf(r)
                }
            }
            Kind::PowerNormalized { p } => {
                if p == 2.0 {
                    0.5 * u * u
                } else {
                    u.powf(p) / p
                }
            }
            Kind::ExpPower { r } => u.powf(r).exp_m1(),
            Kind::LogTempered { p } => u.powf(p) / (E + u).ln(),
            Kind::Conjugate { .. } => unreachable!("handled by the callers"),
        }
    }

    /// The kernel `p` of the integral representation
    /// `phi(u) = int_0^u p(t) dt`, when one is available. `power:1` is the
    /// excluded linear case and carries no kernel.
    pub fn kernel(&self, t: f64) -> Option<f64> {
        let t = t.max(0.0);
        match self.kind {
            Kind::Power { r } => (r > 1.0).then(|| r * t.powf(r - 1.0)),
            Kind::PowerNormalized { p } => Some(t.powf(p - 1.0)),
            Kind::ExpPower { r } => Some(r * t.powf(r - 1.0) * t.powf(r).exp()),
            Kind::LogTempered { p } => {
                let l = (E + t).ln();
                Some(t.powf(p - 1.0) * (p * l - t / (E + t)) / (l * l))
            }
            Kind::Conjugate { .. } => None,
        }
    }

    pub fn has_kernel(&self) -> bool {
        match self.kind {
            Kind::Power { r } => r > 1.0,
            Kind::Conjugate { .. } => false,
            _ => true,
        }
    }

    /// The complementary Orlicz function: closed form for the normalized
    /// power family (`pnorm:p -> pnorm:q` with `1/p + 1/q = 1`), a numeric
    /// convex conjugate otherwise.
    pub fn complement(&self) -> Result<OrliczFunction, OrliczError> {
        if let Kind::PowerNormalized { p } = self.kind {
            let q = p / (p - 1.0);
            return Self::power_normalized(q);
        }
        self.numeric_complement()
    }

    /// The numeric convex conjugate, regardless of whether a closed form
    /// exists. Used as the independent route when checking closed forms.
    pub fn numeric_complement(&self) -> Result<OrliczFunction, OrliczError> {
        if !self.probe_convex(&default_probe_grid()) {
            return Err(OrliczError::NotConvex { id: self.id.clone() });
        }
        let psi = OrliczFunction {
            id: format!("conj({})", self.id),
            kind: Kind::Conjugate {
                base: Arc::new(self.clone()),
            },
            submultiplicative: false,
        };
        // Sub-linear growth of phi surfaces here as an unbounded maximizer.
        for v in [0.5, 2.0, 10.0, 50.0] {
            psi.evaluate(v)?;
        }
        Ok(psi)
    }

    /// Young gap `phi(u) + psi(v) - u v`. Nonnegative up to numerics, and
    /// near zero when `v` is the kernel value `p(u)`.
    pub fn young_gap(&self, u: f64, v: f64) -> Result<f64, OrliczError> {
        if u < 0.0 || u.is_nan() {
            return Err(OrliczError::NegativeArgument { value: u });
        }
        if v < 0.0 || v.is_nan() {
            return Err(OrliczError::NegativeArgument { value: v });
        }
        let psi = self.complement()?;
        Ok(self.evaluate(u)? + psi.evaluate(v)? - u * v)
    }

    /// Bohr mean inequality probe: `phi(mean(a)) <= mean(phi(a))`.
    pub fn bohr_check(&self, a: &[f64]) -> bool {
        if a.is_empty() {
            return true;
        }
        let n = a.len() as f64;
        let mean = a.iter().sum::<f64>() / n;
        let lhs = self.eval_or_inf(mean);
        let rhs = a.iter().map(|&x| self.eval_or_inf(x)).sum::<f64>() / n;
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        if !scale.is_finite() {
            return lhs <= rhs || (lhs.is_infinite() && rhs.is_infinite());
        }
        lhs <= rhs + 1e-10 * scale
    }

    /// Scaling property probe: `phi(alpha u) <= alpha phi(u)` for
    /// `alpha` in `[0, 1]`.
    pub fn scaling_check(&self, alpha: f64, u: f64) -> bool {
        debug_assert!((0.0..=1.0).contains(&alpha));
        let lhs = self.eval_or_inf(alpha * u);
        let rhs = alpha * self.eval_or_inf(u);
        if lhs.is_infinite() || rhs.is_infinite() {
            return lhs <= rhs || (lhs.is_infinite() && rhs.is_infinite());
        }
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        lhs <= rhs + 1e-12 * scale
    }

    /// `phi(uv) <= phi(u) phi(v)` over all grid pairs. Gates eligibility
    /// for the sub-multiplicative bound family.
    pub fn submultiplicative_probe(&self, grid: &[f64]) -> bool {
        let vals: Vec<f64> = grid.iter().map(|&u| self.eval_or_inf(u)).collect();
        for (i, &u) in grid.iter().enumerate() {
            for (j, &v) in grid.iter().enumerate() {
                let lhs = self.eval_or_inf(u * v);
                let rhs = vals[i] * vals[j];
                if lhs.is_infinite() {
                    if rhs.is_infinite() {
                        continue;
                    }
                    return false;
                }
                if rhs.is_infinite() {
                    continue;
                }
                let scale = lhs.abs().max(rhs.abs()).max(1.0);
                if lhs > rhs + 1e-10 * scale {
                    return false;
                }
            }
        }
        true
    }

    fn probe_convex(&self, grid: &[f64]) -> bool {
        for &u in grid {
            for &v in grid {
                let fu = self.eval_or_inf(u);
                let fv = self.eval_or_inf(v);
                let fm = self.eval_or_inf(0.5 * (u + v));
                if !fu.is_finite() || !fv.is_finite() || !fm.is_finite() {
                    continue;
                }
                let rhs = 0.5 * (fu + fv);
                let scale = fu.abs().max(fv.abs()).max(1.0);
                if fm > rhs + 1e-12 * scale {
                    return false;
                }
            }
        }
        true
    }

    /// Run the full invariant battery on the default probe grid:
    /// `phi(0) = 0`, positivity, monotonicity, midpoint convexity, and
    /// (when a kernel is available) agreement between `phi` and the
    /// numeric integral of its kernel.
    pub fn probe_invariants(&self) -> Result<(), OrliczError> {
        let fail = |what: &str| OrliczError::ProbeFailed {
            id: self.id.clone(),
            what: what.to_string(),
        };
        let grid = default_probe_grid();
        if self.eval_or_inf(0.0) != 0.0 {
            return Err(fail("phi(0) != 0"));
        }
        let mut prev = 0.0;
        for &u in &grid {
            let y = self.eval_or_inf(u);
            if y.is_nan() {
                return Err(fail("NaN value"));
            }
            if y <= 0.0 && u > 0.0 {
                return Err(fail("vanishes at a positive argument (degenerate)"));
            }
            if y.is_finite() && y + 1e-12 * y.abs().max(1.0) < prev {
                return Err(fail("not nondecreasing"));
            }
            if y.is_finite() {
                prev = y;
            }
        }
        if !self.probe_convex(&grid) {
            return Err(fail("midpoint convexity violated"));
        }
        if self.has_kernel() {
            for &u in grid.iter().step_by(7) {
                let phi_u = self.eval_or_inf(u);
                if !phi_u.is_finite() {
                    continue;
                }
                let integral = adaptive_simpson(|t| self.kernel(t).unwrap_or(0.0), 0.0, u, 1e-9 * phi_u.max(1e-300));
                if (integral - phi_u).abs() > 1e-8 * phi_u.max(1e-300) {
                    return Err(fail("kernel integral disagrees with phi"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for OrliczFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id)
    }
}

/// Expanding bracket cap for the conjugate maximizer.
const BRACKET_CAP: f64 = 1e12;

/// `sup_{u >= 0} (u v - phi(u))` by expanding bracket plus golden-section
/// maximization of the concave objective.
fn conjugate_eval(base: &OrliczFunction, v: f64) -> Result<f64, OrliczError> {
    if v == 0.0 {
        return Ok(0.0);
    }
    let g = |u: f64| {
        let y = base.eval_or_inf(u);
        if y.is_infinite() {
            f64::NEG_INFINITY
        } else {
            u * v - y
        }
    };
    // Expand until the objective has started to decrease; concavity then
    // pins the maximizer inside [0, hi].
    let mut hi = 1.0f64;
    while g(hi) > g(0.5 * hi) {
        hi *= 2.0;
        if hi > BRACKET_CAP {
            return Err(OrliczError::MaximizerUnbounded {
                id: base.id.clone(),
                at: v,
            });
        }
    }
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (0.0f64, hi);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    let tol = 1e-10 * hi.max(1.0);
    while b - a > tol {
        if gc >= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - ratio * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + ratio * (b - a);
            gd = g(d);
        }
    }
    Ok(g(0.5 * (a + b)).max(gc).max(gd).max(0.0))
}

fn adaptive_simpson(f: impl Fn(f64) -> f64 + Copy, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b))
    }
    fn recurse(
        f: impl Fn(f64) -> f64 + Copy,
        a: f64,
        b: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, m);
        let right = simpson(f, m, b);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            recurse(f, a, m, left, 0.5 * tol, depth - 1)
                + recurse(f, m, b, right, 0.5 * tol, depth - 1)
        }
    }
    if a == b {
        return 0.0;
    }
    recurse(f, a, b, simpson(f, a, b), tol, 28)
}

/// A factor pair `(f, g)` with `f(t) g(t) = t`: the power split
/// `f = t^alpha`, `g = t^{1-alpha}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactorPair {
    alpha: f64,
}

impl FactorPair {
    pub fn power(alpha: f64) -> Result<Self, OrliczError> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(OrliczError::ParamOutOfRange {
                family: "factor pair",
                value: alpha,
                constraint: "0 <= alpha <= 1",
            });
        }
        Ok(Self { alpha })
    }

    /// `f = g = sqrt(t)`.
    pub fn sqrt() -> Self {
        Self { alpha: 0.5 }
    }

    /// Parse `pow:A` (or the shorthand `sqrt`).
    pub fn parse(spec: &str) -> Result<Self, OrliczError> {
        if spec.trim() == "sqrt" {
            return Ok(Self::sqrt());
        }
        let unknown = || OrliczError::UnknownSpecifier { spec: spec.to_string() };
        let (head, param) = spec.split_once(':').ok_or_else(unknown)?;
        if head.trim() != "pow" {
            return Err(unknown());
        }
        let alpha: f64 = param.trim().parse().map_err(|_| unknown())?;
        Self::power(alpha)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn f(&self, t: f64) -> f64 {
        t.max(0.0).powf(self.alpha)
    }

    pub fn g(&self, t: f64) -> f64 {
        t.max(0.0).powf(1.0 - self.alpha)
    }

    pub fn f_squared(&self, t: f64) -> f64 {
        t.max(0.0).powf(2.0 * self.alpha)
    }

    pub fn g_squared(&self, t: f64) -> f64 {
        t.max(0.0).powf(2.0 * (1.0 - self.alpha))
    }

    /// `|f(t) g(t) - t| <= 1e-10 max(1, t)` over the grid.
    pub fn probe_product(&self, grid: &[f64]) -> bool {
        grid.iter()
            .all(|&t| (self.f(t) * self.g(t) - t).abs() <= 1e-10 * t.max(1.0))
    }
}

impl fmt::Display for FactorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pow:{}", self.alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalog() -> Vec<OrliczFunction> {
        vec![
            OrliczFunction::power(1.0).unwrap(),
            OrliczFunction::power(2.0).unwrap(),
            OrliczFunction::power(3.0).unwrap(),
            OrliczFunction::power_normalized(2.0).unwrap(),
            OrliczFunction::power_normalized(3.0).unwrap(),
            OrliczFunction::exp_power(2.0).unwrap(),
            OrliczFunction::log_tempered(2.0).unwrap(),
        ]
    }

    #[test]
    fn evaluate_closed_forms() {
        let p2 = OrliczFunction::power(2.0).unwrap();
        assert_eq!(p2.evaluate(3.0).unwrap(), 9.0);
        let e2 = OrliczFunction::exp_power(2.0).unwrap();
        assert_eq!(e2.evaluate(0.0).unwrap(), 0.0);
        let l2 = OrliczFunction::log_tempered(2.0).unwrap();
        let expect = 1.0 / (E + 1.0).ln();
        assert!((l2.evaluate(1.0).unwrap() - expect).abs() < 1e-15);
        assert!((expect - 0.761).abs() < 1e-3);
        assert!(p2.evaluate(-1.0).is_err());
    }

    #[test]
    fn overflow_becomes_sentinel() {
        let e2 = OrliczFunction::exp_power(2.0).unwrap();
        assert!(e2.evaluate(1e3).unwrap().is_infinite());
    }

    #[test]
    fn parser_accepts_grammar_and_rejects_junk() {
        assert_eq!(OrliczFunction::parse("pnorm:2.0").unwrap().id(), "pnorm:2");
        assert_eq!(OrliczFunction::parse("power:1").unwrap().id(), "power:1");
        assert!(OrliczFunction::parse("pnorm:1").is_err()); // p > 1
        assert!(OrliczFunction::parse("power:0.5").is_err());
        assert!(OrliczFunction::parse("exppow:1").is_err());
        assert!(OrliczFunction::parse("logtemp:1.5").is_err());
        assert!(OrliczFunction::parse("gauss:2").is_err());
        assert!(OrliczFunction::parse("power").is_err());
    }

    #[test]
    fn complement_closed_forms() {
        let p2 = OrliczFunction::power_normalized(2.0).unwrap();
        assert_eq!(p2.complement().unwrap().id(), "pnorm:2");
        let p3 = OrliczFunction::power_normalized(3.0).unwrap();
        assert_eq!(p3.complement().unwrap().id(), "pnorm:1.5");
    }

    #[test]
    fn numeric_complement_matches_closed_form() {
        // Closed form is the oracle for the numeric conjugate path.
        let p3 = OrliczFunction::power_normalized(3.0).unwrap();
        let numeric = p3.numeric_complement().unwrap();
        let closed = p3.complement().unwrap();
        let mut u = 0.0f64;
        while u <= 10.0 {
            let a = numeric.evaluate(u).unwrap();
            let b = closed.evaluate(u).unwrap();
            assert!(
                (a - b).abs() <= 1e-8 * b.max(1e-12),
                "u={u}: numeric {a} vs closed {b}"
            );
            u += 0.25;
        }
    }

    #[test]
    fn complement_of_linear_power_is_rejected() {
        let p1 = OrliczFunction::power(1.0).unwrap();
        assert!(matches!(
            p1.complement(),
            Err(OrliczError::MaximizerUnbounded { .. })
        ));
    }

    #[test]
    fn young_gap_examples() {
        let p2 = OrliczFunction::power_normalized(2.0).unwrap();
        assert!(p2.young_gap(1.0, 1.0).unwrap().abs() < 1e-14);
        assert!((p2.young_gap(1.0, 2.0).unwrap() - 0.5).abs() < 1e-14);
        let p3 = OrliczFunction::power_normalized(3.0).unwrap();
        let v = p3.kernel(2.0).unwrap();
        assert!((v - 4.0).abs() < 1e-13);
        assert!(p3.young_gap(2.0, v).unwrap().abs() <= 1e-8);
    }

    #[test]
    fn young_gap_is_nonnegative_on_samples() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for phi in [
            OrliczFunction::power_normalized(2.0).unwrap(),
            OrliczFunction::power_normalized(3.0).unwrap(),
            OrliczFunction::power(2.0).unwrap(),
            OrliczFunction::exp_power(2.0).unwrap(),
            OrliczFunction::log_tempered(2.0).unwrap(),
        ] {
            for _ in 0..400 {
                let u = 8.0 * next();
                let v = 8.0 * next();
                let gap = phi.young_gap(u, v).unwrap();
                if gap.is_finite() {
                    let scale = phi.eval_or_inf(u).abs().max(u * v).max(1.0);
                    assert!(gap >= -1e-9 * scale, "{}: gap {gap} at u={u} v={v}", phi.id());
                }
            }
        }
    }

    #[test]
    fn bohr_check_examples() {
        let p2 = OrliczFunction::power(2.0).unwrap();
        assert!(p2.bohr_check(&[1.0, 1.0]));
        assert!(p2.bohr_check(&[0.0, 2.0]));
        let e2 = OrliczFunction::exp_power(2.0).unwrap();
        let mut state = 77u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..1000 {
            let len = 1 + (next() * 6.0) as usize;
            let a: Vec<f64> = (0..len).map(|_| 3.0 * next()).collect();
            assert!(e2.bohr_check(&a), "failed on {a:?}");
        }
    }

    #[test]
    fn scaling_check_examples() {
        let p3 = OrliczFunction::power(3.0).unwrap();
        assert!(p3.scaling_check(1.0, 5.0));
        assert!(p3.scaling_check(0.0, 5.0));
        assert!(p3.scaling_check(0.5, 2.0)); // 1 <= 4
        for phi in catalog() {
            for &alpha in &[0.0, 0.1, 0.37, 0.5, 0.92, 1.0] {
                for &u in &[0.0, 0.3, 1.0, 2.5, 10.0] {
                    assert!(phi.scaling_check(alpha, u), "{} a={alpha} u={u}", phi.id());
                }
            }
        }
    }

    #[test]
    fn submultiplicative_flags() {
        assert!(OrliczFunction::power(2.0).unwrap().is_submultiplicative());
        assert!(OrliczFunction::power(1.0).unwrap().is_submultiplicative());
        // phi(2*2) = 8 > phi(2)^2 = 4 for t^2/2.
        assert!(!OrliczFunction::power_normalized(2.0).unwrap().is_submultiplicative());
        assert!(!OrliczFunction::log_tempered(2.0).unwrap().is_submultiplicative());
        // Recorded, not asserted: the probe decides for exppow.
        let e2 = OrliczFunction::exp_power(2.0).unwrap();
        let _ = e2.is_submultiplicative();
        let grid: Vec<f64> = (0..31).map(|i| 0.1 * i as f64).collect();
        assert_eq!(e2.submultiplicative_probe(&grid), e2.is_submultiplicative());
    }

    #[test]
    fn catalog_passes_invariant_probe() {
        for phi in catalog() {
            phi.probe_invariants().unwrap_or_else(|e| panic!("{e}"));
        }
    }

    #[test]
    fn double_complement_recovers_pnorm() {
        for p in [1.5, 2.0, 3.0] {
            let phi = OrliczFunction::power_normalized(p).unwrap();
            let twice = phi.numeric_complement().unwrap().numeric_complement().unwrap();
            let mut u = 0.1f64;
            while u <= 10.0 {
                let a = twice.evaluate(u).unwrap();
                let b = phi.evaluate(u).unwrap();
                assert!(
                    (a - b).abs() <= 1e-6 * b.max(1e-9),
                    "p={p} u={u}: {a} vs {b}"
                );
                u *= 1.7;
            }
        }
    }

    #[test]
    fn monotone_on_sampled_pairs() {
        for phi in catalog() {
            let grid = default_probe_grid();
            for w in grid.windows(2) {
                let lo = phi.eval_or_inf(w[0]);
                let hi = phi.eval_or_inf(w[1]);
                assert!(lo <= hi || (lo.is_infinite() && hi.is_infinite()));
            }
        }
    }

    #[test]
    fn factor_pair_grammar_and_product() {
        let fg = FactorPair::parse("pow:0.3").unwrap();
        assert!((fg.alpha() - 0.3).abs() < 1e-15);
        assert_eq!(FactorPair::parse("sqrt").unwrap(), FactorPair::sqrt());
        assert!(FactorPair::parse("pow:1.5").is_err());
        assert!(FactorPair::parse("exp:0.5").is_err());
        assert!(fg.probe_product(&default_probe_grid()));
        let s = FactorPair::sqrt();
        assert!((s.f(4.0) - 2.0).abs() < 1e-15);
        assert!((s.g(4.0) - 2.0).abs() < 1e-15);
        assert!((s.f_squared(4.0) - 4.0).abs() < 1e-15);
    }
}
