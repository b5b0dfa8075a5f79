//! Per-inequality evaluation: LHS and RHS computed as certified
//! enclosures, combined into a `BoundReport`.

use num_complex::Complex64;

use super::{
    AlphaDomain, BoundError, BoundId, BoundParams, BoundReport, InputSpec, ParamSummary,
    PhiRequirement, RDomain,
};
use crate::enclosure::CertifiedValue;
use crate::matrix::{ComplexMatrix, MatrixError, EIG_ALLOWANCE, PSD_CLAMP_TOL};
use crate::orlicz::{FactorPair, OrliczFunction};
use crate::radius::{self, RadiusError};

/// Internal failure channel: scalar overflow is a verdict, not an error.
enum EvalFail {
    Overflow,
    Error(BoundError),
}

type Ev<T> = Result<T, EvalFail>;

impl From<MatrixError> for EvalFail {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::Overflow { .. } | MatrixError::NonFiniteEntry { .. } => EvalFail::Overflow,
            other => EvalFail::Error(other.into()),
        }
    }
}

impl From<RadiusError> for EvalFail {
    fn from(e: RadiusError) -> Self {
        EvalFail::Error(e.into())
    }
}

impl From<BoundError> for EvalFail {
    fn from(e: BoundError) -> Self {
        EvalFail::Error(e)
    }
}

/// Parameters after per-bound validation.
struct Resolved {
    alpha: f64,
    r: f64,
    phi: OrliczFunction,
    psi: Option<OrliczFunction>,
    fg: FactorPair,
    n: usize,
}

fn is_finite_matrix(m: &ComplexMatrix) -> bool {
    m.inner().iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Operator norm with the eigensolver allowance attached.
fn norm_cv(m: &ComplexMatrix) -> CertifiedValue {
    if !is_finite_matrix(m) {
        return CertifiedValue::exact(f64::INFINITY);
    }
    let v = m.operator_norm();
    CertifiedValue::with_abs_error(v, EIG_ALLOWANCE * v)
}

/// Certified numerical radius at the default tolerance.
fn radius_cv(m: &ComplexMatrix) -> Ev<CertifiedValue> {
    if !is_finite_matrix(m) {
        return Ok(CertifiedValue::exact(f64::INFINITY));
    }
    Ok(radius::numerical_radius(m, radius::default_tolerance(m))?)
}

/// Numerical radius of a Hermitian-by-construction operand.
fn radius_hermitian_cv(m: &ComplexMatrix) -> CertifiedValue {
    if !is_finite_matrix(m) {
        return CertifiedValue::exact(f64::INFINITY);
    }
    radius::hermitian_radius(m)
}

/// `phi` applied entrywise to a certified scalar (monotone map).
fn phi_cv(phi: &OrliczFunction, x: CertifiedValue) -> CertifiedValue {
    x.clamp_nonneg().map_monotone(|t| phi.eval_or_inf(t))
}

/// `phi(M)` for a PSD Hermitian matrix via the spectral calculus.
fn phi_of(phi: &OrliczFunction, m: &ComplexMatrix) -> Ev<ComplexMatrix> {
    Ok(m.func_calc(|t| phi.eval_or_inf(t))?)
}

/// `(A^H A)^e`, i.e. `|A|^{2e}`.
fn gram_pow(a: &ComplexMatrix, e: f64) -> Ev<ComplexMatrix> {
    Ok(a.gram().func_calc(|t| t.powf(e))?)
}

/// `(A A^H)^e`, i.e. `|A*|^{2e}`.
fn cogram_pow(a: &ComplexMatrix, e: f64) -> Ev<ComplexMatrix> {
    Ok(a.cogram().func_calc(|t| t.powf(e))?)
}

/// `|M|` for a Hermitian (possibly indefinite) matrix.
fn hermitian_abs(m: &ComplexMatrix) -> Ev<ComplexMatrix> {
    let eig = m.hermitian_eig().map_err(EvalFail::from)?;
    Ok(eig.reassemble(f64::abs))
}

fn add(a: &ComplexMatrix, b: &ComplexMatrix) -> Ev<ComplexMatrix> {
    a.add(b).map_err(EvalFail::from)
}

fn mul(a: &ComplexMatrix, b: &ComplexMatrix) -> Ev<ComplexMatrix> {
    a.mul(b).map_err(EvalFail::from)
}

/// Young-inequality probe for a user-supplied complement candidate.
fn complementary_pair_ok(phi: &OrliczFunction, psi: &OrliczFunction) -> bool {
    let grid = [0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 20.0];
    for &u in &grid {
        for &v in &grid {
            let a = phi.eval_or_inf(u);
            let b = psi.eval_or_inf(v);
            if !a.is_finite() || !b.is_finite() {
                continue;
            }
            let gap = a + b - u * v;
            let scale = a.max(b).max(u * v).max(1.0);
            if gap < -1e-9 * scale {
                return false;
            }
        }
    }
    true
}

/// The relative widening applied to RHS terms where a scalar factor
/// (an operator norm) multiplies the argument inside the functional
/// calculus; covers the factor's own enclosure width propagated through
/// the catalog functions.
const SCALAR_IN_PHI_ALLOWANCE: f64 = 1e-8;

fn widen_rel(cv: CertifiedValue, rel: f64) -> CertifiedValue {
    let w = cv.upper().abs().max(cv.lower().abs());
    if w.is_finite() {
        cv.widen(rel * w)
    } else {
        cv
    }
}

/// Evaluate one catalog inequality on named matrix inputs.
///
/// Inputs are positional, in the order given by the bound's descriptor;
/// family bounds take their inputs grouped by name (all `A_k`, then all
/// `B_k`, then all `X_k`).
pub fn evaluate_bound(
    id: BoundId,
    inputs: &[ComplexMatrix],
    params: &BoundParams,
) -> Result<BoundReport, BoundError> {
    let desc = id.descriptor();

    // Input arity and dimension checks.
    let n_family = match desc.inputs {
        InputSpec::Fixed(names) => {
            if inputs.len() != names.len() {
                return Err(BoundError::MissingInput {
                    id,
                    expected: names.len(),
                    names: names.join(", "),
                    got: inputs.len(),
                });
            }
            1
        }
        InputSpec::Family(group_names) => {
            let g = group_names.len();
            if inputs.is_empty() || inputs.len() % g != 0 {
                return Err(BoundError::MissingInput {
                    id,
                    expected: g,
                    names: format!("n copies of [{}]", group_names.join(", ")),
                    got: inputs.len(),
                });
            }
            inputs.len() / g
        }
    };
    if let Some(n) = params.n {
        if matches!(desc.inputs, InputSpec::Family(_)) && n != n_family {
            return Err(BoundError::ParamOutOfRange {
                id,
                param: "n",
                value: n as f64,
                constraint: format!("must match the inferred family length {n_family}"),
            });
        }
    }
    let dim0 = inputs[0].dim();
    if inputs.iter().any(|m| m.dim() != dim0) {
        return Err(BoundError::MismatchedInputs {
            id,
            dims: inputs.iter().map(|m| m.dim()).collect(),
        });
    }

    // Parameter domains.
    let mut alpha = params.alpha;
    if let Some(domain) = desc.alpha {
        match domain {
            AlphaDomain::ClosedUnit => {
                if !(0.0..=1.0).contains(&alpha) {
                    return Err(BoundError::ParamOutOfRange {
                        id,
                        param: "alpha",
                        value: alpha,
                        constraint: "0 <= alpha <= 1".into(),
                    });
                }
            }
            AlphaDomain::OpenUnitClamped => {
                if !(0.0..=1.0).contains(&alpha) {
                    return Err(BoundError::ParamOutOfRange {
                        id,
                        param: "alpha",
                        value: alpha,
                        constraint: "0 <= alpha <= 1 (clamped into (0,1))".into(),
                    });
                }
                alpha = alpha.clamp(1e-3, 1.0 - 1e-3);
            }
            AlphaDomain::ZeroHalf => {
                if !(alpha > 0.0 && alpha <= 0.5) {
                    return Err(BoundError::ParamOutOfRange {
                        id,
                        param: "alpha",
                        value: alpha,
                        constraint: "0 < alpha <= 1/2".into(),
                    });
                }
            }
        }
    }
    let r = params.r;
    if let Some(domain) = desc.r {
        let ok = match domain {
            RDomain::GeOne => r >= 1.0,
            RDomain::GeTwo => r >= 2.0,
            RDomain::PositiveInteger => r >= 1.0 && (r - r.round()).abs() <= 1e-9,
        };
        if !ok || !r.is_finite() {
            return Err(BoundError::ParamOutOfRange {
                id,
                param: "r",
                value: r,
                constraint: match domain {
                    RDomain::GeOne => "r >= 1".into(),
                    RDomain::GeTwo => "r >= 2".into(),
                    RDomain::PositiveInteger => "positive integer".into(),
                },
            });
        }
    }

    // Orlicz requirements.
    let psi = match desc.phi {
        PhiRequirement::WithComplement => match &params.psi {
            Some(psi) => {
                if !complementary_pair_ok(&params.phi, psi) {
                    return Err(BoundError::ParamOutOfRange {
                        id,
                        param: "psi",
                        value: f64::NAN,
                        constraint: format!(
                            "{} is not complementary to {} (Young probe failed)",
                            psi.id(),
                            params.phi.id()
                        ),
                    });
                }
                Some(psi.clone())
            }
            None => Some(params.phi.complement()?),
        },
        _ => params.psi.clone(),
    };
    if desc.phi == PhiRequirement::Submultiplicative && !params.phi.is_submultiplicative() {
        return Err(BoundError::NotSubmultiplicative {
            id,
            phi: params.phi.id().to_string(),
        });
    }

    let fg = match params.fg {
        Some(fg) => fg,
        None => FactorPair::power(alpha).map_err(BoundError::from)?,
    };
    if desc.uses_fg && !fg.probe_product(&crate::orlicz::default_probe_grid()) {
        return Err(BoundError::ParamOutOfRange {
            id,
            param: "fg",
            value: fg.alpha(),
            constraint: "f(t) g(t) = t probe failed".into(),
        });
    }

    let resolved = Resolved {
        alpha,
        r,
        phi: params.phi.clone(),
        psi,
        fg,
        n: n_family,
    };

    // Structural preconditions.
    if desc.commuting {
        let ab = inputs[0].mul(&inputs[1])?;
        let ba = inputs[1].mul(&inputs[0])?;
        let num = (ab.inner() - ba.inner()).norm();
        let den = (inputs[0].frobenius_norm() * inputs[1].frobenius_norm()).max(1e-300);
        let residual = num / den;
        if residual > 1e-8 {
            return Err(BoundError::NotCommuting { id, residual });
        }
    }
    if desc.contraction {
        let norm = inputs[2].operator_norm();
        if norm > 1.0 + 1e-12 {
            return Err(BoundError::NotContraction { id, norm });
        }
    }
    if desc.psd_inputs {
        for (name, m) in [("A", &inputs[0]), ("B", &inputs[1])] {
            let eig = m.hermitian_eig().map_err(|e| match e {
                MatrixError::NotHermitian { .. } => BoundError::NotPsd {
                    id,
                    name: if name == "A" { "A" } else { "B" },
                    min_eig: f64::NAN,
                },
                other => BoundError::Matrix(other),
            })?;
            let min_eig = eig.eigenvalues[0];
            let scale = eig
                .eigenvalues
                .iter()
                .fold(0.0f64, |acc, &l| acc.max(l.abs()));
            if min_eig < -PSD_CLAMP_TOL * scale.max(1.0) {
                return Err(BoundError::NotPsd {
                    id,
                    name: if name == "A" { "A" } else { "B" },
                    min_eig,
                });
            }
        }
    }

    let summary = summarize(&desc, &resolved);
    match dispatch(id, inputs, &resolved) {
        Ok((lhs, rhs)) => Ok(BoundReport::from_enclosures(id, summary, lhs, rhs)),
        Err(EvalFail::Overflow) => Ok(BoundReport::overflow(id, summary)),
        Err(EvalFail::Error(e)) => Err(e),
    }
}

fn summarize(desc: &super::BoundDescriptor, p: &Resolved) -> ParamSummary {
    ParamSummary {
        n: matches!(desc.inputs, InputSpec::Family(_)).then_some(p.n),
        alpha: desc.alpha.map(|_| p.alpha),
        r: desc.r.map(|_| p.r),
        phi: (desc.phi != PhiRequirement::Unused).then(|| p.phi.id().to_string()),
        psi: p.psi.as_ref().map(|f| f.id().to_string()),
    }
}

fn dispatch(
    id: BoundId,
    m: &[ComplexMatrix],
    p: &Resolved,
) -> Ev<(CertifiedValue, CertifiedValue)> {
    match id {
        BoundId::EQV => eqv(&m[0]),
        BoundId::KITT03 => kitt03(&m[0]),
        BoundId::KITT05L => kitt05l(&m[0]),
        BoundId::KITT05U => kitt05u(&m[0]),
        BoundId::HK1 => hk1(&m[0], p),
        BoundId::HK2 => hk2(&m[0], p),
        BoundId::AOK => aok(&m[0]),
        BoundId::BP => bp(&m[0], p),
        BoundId::HOLB4 => holbrook(&m[0], &m[1], 4.0),
        BoundId::HOLB2C => holbrook(&m[0], &m[1], 2.0),
        BoundId::FH => fong_holbrook(&m[0], &m[1]),
        BoundId::POWK => powk(&m[0], p),
        BoundId::KittAtbcsd => kitt_atbcsd(m, p),
        BoundId::T31 => t31(&m[0], p),
        BoundId::T33i => t33i(m, p),
        BoundId::T33ii => t33ii(m, p),
        BoundId::T34i => t34i(&m[0], p),
        BoundId::T34ii => t34ii(&m[0], p),
        BoundId::T36i => t36i(&m[0], p),
        BoundId::T36ii => t36ii(&m[0], p),
        BoundId::T38 => t38(&m[0], p),
        BoundId::T310 => t310(m, p),
        BoundId::T310C => t310c(m, p),
        BoundId::T312i => t312(m, p, true),
        BoundId::T312ii => t312(m, p, false),
        BoundId::T314 => t314(m, p),
        BoundId::T316 => t316(m, p),
        BoundId::T317 => t317(m, p),
        BoundId::T319 => t319(&m[0], p),
        BoundId::T321 => t321(&m[0], p),
        BoundId::T322 => t322(m, p),
        BoundId::T323 => t323(&m[0], p),
        BoundId::T324 => t324(m, p),
        BoundId::T41 => t41(&m[0], &m[1], p),
    }
}

// ---------------------------------------------------------------------
// Classical bounds
// ---------------------------------------------------------------------

/// `||A||/2 <= w(A) <= ||A||`; the side with smaller slack is reported,
/// and a violation on either side yields a violated report.
fn eqv(a: &ComplexMatrix) -> Ev<(CertifiedValue, CertifiedValue)> {
    let w = radius_cv(a)?;
    let nrm = norm_cv(a);
    let upper = (w, nrm);
    let lower = (nrm.scale(0.5), w);
    let slack_u = upper.1.midpoint() - upper.0.midpoint();
    let slack_l = lower.1.midpoint() - lower.0.midpoint();
    Ok(if slack_u <= slack_l { upper } else { lower })
}

fn kitt03(a: &ComplexMatrix) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = radius_cv(a)?;
    let a2 = mul(a, a)?;
    let rhs = norm_cv(a).add(norm_cv(&a2).pow_nonneg(0.5)).scale(0.5);
    Ok((lhs, rhs))
}

fn squares_sum(a: &ComplexMatrix) -> Ev<ComplexMatrix> {
    add(&a.gram(), &a.cogram())
}

fn kitt05l(a: &ComplexMatrix) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = norm_cv(&squares_sum(a)?).scale(0.25);
    let rhs = radius_cv(a)?.pow_nonneg(2.0);
    Ok((lhs, rhs))
}

fn kitt05u(a: &ComplexMatrix) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = radius_cv(a)?.pow_nonneg(2.0);
    let rhs = norm_cv(&squares_sum(a)?).scale(0.5);
    Ok((lhs, rhs))
}

fn hk1(a: &ComplexMatrix, p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = radius_cv(a)?.pow_nonneg(p.r);
    let left = gram_pow(a, p.r * p.alpha)?;
    let right = cogram_pow(a, p.r * (1.0 - p.alpha))?;
    let rhs = norm_cv(&add(&left, &right)?).scale(0.5);
    Ok((lhs, rhs))
}

fn hk2(a: &ComplexMatrix, p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = radius_cv(a)?.pow_nonneg(2.0 * p.r);
    let left = gram_pow(a, p.r)?.scale_re(p.alpha);
    let right = cogram_pow(a, p.r)?.scale_re(1.0 - p.alpha);
    let rhs = norm_cv(&add(&left, &right)?);
    Ok((lhs, rhs))
}

fn aok(a: &ComplexMatrix) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = radius_cv(a)?.pow_nonneg(2.0);
    let a2 = mul(a, a)?;
    let rhs = norm_cv(&squares_sum(a)?)
        .scale(0.25)
        .add(radius_cv(&a2)?.scale(0.5));
    Ok((lhs, rhs))
}

fn bp(a: &ComplexMatrix, p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = radius_cv(a)?.pow_nonneg(2.0 * p.r);
    let g_r = gram_pow(a, p.r)?;
    let c_r = cogram_pow(a, p.r)?;
    let abs_r = gram_pow(a, 0.5 * p.r)?;
    let coabs_r = cogram_pow(a, 0.5 * p.r)?;
    let rhs = norm_cv(&add(&g_r, &c_r)?)
        .scale(0.25)
        .add(radius_cv(&mul(&abs_r, &coabs_r)?)?.scale(0.5));
    Ok((lhs, rhs))
}

fn holbrook(a: &ComplexMatrix, b: &ComplexMatrix, c: f64) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = radius_cv(&mul(a, b)?)?;
    let rhs = radius_cv(a)?.mul_nonneg(radius_cv(b)?).scale(c);
    Ok((lhs, rhs))
}

fn fong_holbrook(a: &ComplexMatrix, b: &ComplexMatrix) -> Ev<(CertifiedValue, CertifiedValue)> {
    let anti = add(&mul(a, b)?, &mul(b, a)?)?;
    let lhs = radius_cv(&anti)?;
    let rhs = radius_cv(a)?
        .mul_nonneg(norm_cv(b))
        .scale(2.0 * std::f64::consts::SQRT_2);
    Ok((lhs, rhs))
}

fn powk(a: &ComplexMatrix, p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let k = p.r.round() as u32;
    let mut power = a.clone();
    for _ in 1..k {
        power = mul(&power, a)?;
    }
    let lhs = radius_cv(&power)?;
    let rhs = radius_cv(a)?.pow_nonneg(k as f64);
    Ok((lhs, rhs))
}

fn kitt_atbcsd(m: &[ComplexMatrix], p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let (a, b, c, d, s, t) = (&m[0], &m[1], &m[2], &m[3], &m[4], &m[5]);
    let combo = add(&mul(&mul(a, t)?, b)?, &mul(&mul(c, s)?, d)?)?;
    let lhs = radius_cv(&combo)?;
    // A |T*|^{2(1-a)} A* + B* |T|^{2a} B + C |S*|^{2(1-a)} C* + D* |S|^{2a} D
    let term1 = sandwich(a, &cogram_pow(t, 1.0 - p.alpha)?, false)?;
    let term2 = sandwich(b, &gram_pow(t, p.alpha)?, true)?;
    let term3 = sandwich(c, &cogram_pow(s, 1.0 - p.alpha)?, false)?;
    let term4 = sandwich(d, &gram_pow(s, p.alpha)?, true)?;
    let sum = add(&add(&term1, &term2)?, &add(&term3, &term4)?)?;
    let rhs = norm_cv(&sum).scale(0.5);
    Ok((lhs, rhs))
}

/// `X^H M X` when `adjoint_left`, else `X M X^H`.
fn sandwich(x: &ComplexMatrix, mid: &ComplexMatrix, adjoint_left: bool) -> Ev<ComplexMatrix> {
    let out = if adjoint_left {
        x.adjoint().inner() * mid.inner() * x.inner()
    } else {
        x.inner() * mid.inner() * x.adjoint().inner()
    };
    // Sandwiches of Hermitian mid are Hermitian; symmetrize the roundoff.
    let sym = (&out + out.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(ComplexMatrix::from_valid(sym))
}

// ---------------------------------------------------------------------
// Orlicz bounds
// ---------------------------------------------------------------------

fn t31(a: &ComplexMatrix, p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let psi = p.psi.as_ref().expect("validated");
    let lhs = radius_cv(a)?.pow_nonneg(2.0);
    let abs_a = gram_pow(a, 0.5)?;
    let abs_adj = cogram_pow(a, 0.5)?;
    let rhs = norm_cv(&add(&phi_of(&p.phi, &abs_a)?, &phi_of(psi, &abs_adj)?)?);
    Ok((lhs, rhs))
}

fn t33i(m: &[ComplexMatrix], p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let (a, b, x) = (&m[0], &m[1], &m[2]);
    let psi = p.psi.as_ref().expect("validated");
    let prod = mul(&mul(&a.adjoint(), x)?, b)?;
    let lhs = radius_cv(&prod)?.pow_nonneg(p.r);
    let abs_a_r = gram_pow(a, 0.5 * p.r)?;
    let abs_b_r = gram_pow(b, 0.5 * p.r)?;
    let inner = add(&phi_of(&p.phi, &abs_a_r)?, &phi_of(psi, &abs_b_r)?)?;
    let rhs = norm_cv(x)
        .pow_nonneg(p.r)
        .mul_nonneg(radius_hermitian_cv(&inner));
    Ok((lhs, rhs))
}

fn t33ii(m: &[ComplexMatrix], p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let (a, b, x) = (&m[0], &m[1], &m[2]);
    let psi = p.psi.as_ref().expect("validated");
    let prod = mul(&mul(&a.adjoint(), x)?, b)?;
    let lhs = radius_cv(&prod)?;
    // The second factor takes |X*|^{2(1-a)}, as the mixed Schwarz step of
    // the proof produces; the |X| form is not an upper bound.
    let m1 = sandwich(b, &gram_pow(x, p.alpha)?, true)?;
    let m2 = sandwich(a, &cogram_pow(x, 1.0 - p.alpha)?, true)?;
    let rhs = phi_cv(&p.phi, radius_hermitian_cv(&m1).pow_nonneg(0.5))
        .add(phi_cv(psi, radius_hermitian_cv(&m2).pow_nonneg(0.5)));
    Ok((lhs, rhs))
}

fn t34i(a: &ComplexMatrix, p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = phi_cv(&p.phi, radius_cv(a)?);
    let abs_a = gram_pow(a, 0.5)?;
    let abs_adj = cogram_pow(a, 0.5)?;
    let rhs = norm_cv(&add(&phi_of(&p.phi, &abs_a)?, &phi_of(&p.phi, &abs_adj)?)?).scale(0.5);
    Ok((lhs, rhs))
}

fn t34ii(a: &ComplexMatrix, p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = phi_cv(&p.phi, radius_cv(a)?);
    let left = gram_pow(a, p.alpha)?;
    let right = cogram_pow(a, 1.0 - p.alpha)?;
    let rhs = norm_cv(&add(&phi_of(&p.phi, &left)?, &phi_of(&p.phi, &right)?)?).scale(0.5);
    Ok((lhs, rhs))
}

fn t36i(a: &ComplexMatrix, p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = phi_cv(&p.phi, radius_cv(a)?.pow_nonneg(2.0));
    let left = phi_of(&p.phi, &gram_pow(a, 1.0 / (2.0 * p.alpha))?)?.scale_re(p.alpha);
    let right = phi_of(&p.phi, &cogram_pow(a, 1.0 / (2.0 * (1.0 - p.alpha)))?)?
        .scale_re(1.0 - p.alpha);
    let rhs = norm_cv(&add(&left, &right)?);
    Ok((lhs, rhs))
}

fn t36ii(a: &ComplexMatrix, p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = phi_cv(&p.phi, radius_cv(a)?.pow_nonneg(2.0));
    let left = phi_of(&p.phi, &a.gram())?.scale_re(p.alpha);
    let right = phi_of(&p.phi, &a.cogram())?.scale_re(1.0 - p.alpha);
    let rhs = norm_cv(&add(&left, &right)?);
    Ok((lhs, rhs))
}

fn t38(a: &ComplexMatrix, p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = phi_cv(&p.phi, radius_cv(a)?.pow_nonneg(2.0));
    let a2 = mul(a, a)?;
    let sum = add(&phi_of(&p.phi, &a.gram())?, &phi_of(&p.phi, &a.cogram())?)?;
    let rhs = norm_cv(&sum)
        .scale(0.25)
        .add(phi_cv(&p.phi, radius_cv(&a2)?).scale(0.5));
    Ok((lhs, rhs))
}

fn t310(m: &[ComplexMatrix], p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let (a, b, x) = (&m[0], &m[1], &m[2]);
    let prod = mul(&mul(&a.adjoint(), x)?, b)?;
    let lhs = phi_cv(&p.phi, radius_cv(&prod)?);
    let nx = norm_cv(x).midpoint();
    let left = phi_of(&p.phi, &a.gram().scale_re(nx))?;
    let right = phi_of(&p.phi, &b.gram().scale_re(nx))?;
    let rhs = widen_rel(
        radius_hermitian_cv(&add(&left, &right)?).scale(0.5),
        SCALAR_IN_PHI_ALLOWANCE,
    );
    Ok((lhs, rhs))
}

fn t310c(m: &[ComplexMatrix], p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let (a, b, x) = (&m[0], &m[1], &m[2]);
    let prod = mul(&mul(&a.adjoint(), x)?, b)?;
    let lhs = phi_cv(&p.phi, radius_cv(&prod)?);
    let sum = add(&phi_of(&p.phi, &a.gram())?, &phi_of(&p.phi, &b.gram())?)?;
    let rhs = norm_cv(x)
        .mul_nonneg(radius_hermitian_cv(&sum))
        .scale(0.5);
    Ok((lhs, rhs))
}

fn t312(m: &[ComplexMatrix], p: &Resolved, form_one: bool) -> Ev<(CertifiedValue, CertifiedValue)> {
    let (a, b, x) = (&m[0], &m[1], &m[2]);
    // A, B are PSD (validated); powers act directly on them.
    let psd_pow = |mat: &ComplexMatrix, e: f64| -> Ev<ComplexMatrix> {
        Ok(mat.func_calc(|t| t.powf(e))?)
    };
    let combo = mul(&mul(&psd_pow(a, p.alpha)?, x)?, &psd_pow(b, 1.0 - p.alpha)?)?;
    let lhs = phi_cv(&p.phi, radius_cv(&combo)?);
    let nx = norm_cv(x).midpoint();
    let rhs = if form_one {
        let left = phi_of(&p.phi, &a.scale_re(nx))?.scale_re(p.alpha);
        let right = phi_of(&p.phi, &b.scale_re(nx))?.scale_re(1.0 - p.alpha);
        radius_hermitian_cv(&add(&left, &right)?)
    } else {
        let left = phi_of(&p.phi, &psd_pow(a, 2.0 * p.alpha)?.scale_re(nx))?;
        let right = phi_of(&p.phi, &psd_pow(b, 2.0 * (1.0 - p.alpha))?.scale_re(nx))?;
        radius_hermitian_cv(&add(&left, &right)?).scale(0.5)
    };
    Ok((lhs, widen_rel(rhs, SCALAR_IN_PHI_ALLOWANCE)))
}

/// `f^2(|X|)` evaluated through the spectrum of `X^H X`.
fn f2_of_abs(fg: &FactorPair, x: &ComplexMatrix) -> Ev<ComplexMatrix> {
    Ok(x.gram().func_calc(|t| fg.f_squared(t.max(0.0).sqrt()))?)
}

/// `g^2(|X^*|)` evaluated through the spectrum of `X X^H`.
fn g2_of_coabs(fg: &FactorPair, x: &ComplexMatrix) -> Ev<ComplexMatrix> {
    Ok(x.cogram().func_calc(|t| fg.g_squared(t.max(0.0).sqrt()))?)
}

fn family_sum_product(m: &[ComplexMatrix], n: usize) -> Ev<ComplexMatrix> {
    let (a_list, rest) = m.split_at(n);
    let (b_list, x_list) = rest.split_at(n);
    let mut sum: Option<ComplexMatrix> = None;
    for k in 0..n {
        let term = mul(&mul(&a_list[k].adjoint(), &x_list[k])?, &b_list[k])?;
        sum = Some(match sum {
            Some(acc) => add(&acc, &term)?,
            None => term,
        });
    }
    Ok(sum.expect("family length validated nonzero"))
}

fn t314(m: &[ComplexMatrix], p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let n = p.n;
    let lhs = phi_cv(&p.phi, radius_cv(&family_sum_product(m, n)?)?);
    let (a_list, rest) = m.split_at(n);
    let (b_list, x_list) = rest.split_at(n);
    let nf = n as f64;
    let mut rhs = CertifiedValue::exact(0.0);
    for k in 0..n {
        let mb = sandwich(&b_list[k], &f2_of_abs(&p.fg, &x_list[k])?, true)?.scale_re(nf);
        let ma = sandwich(&a_list[k], &g2_of_coabs(&p.fg, &x_list[k])?, true)?.scale_re(nf);
        let term = norm_cv(&add(&phi_of(&p.phi, &mb)?, &phi_of(&p.phi, &ma)?)?);
        rhs = rhs.add(term);
    }
    Ok((lhs, rhs.scale(1.0 / (2.0 * nf))))
}

fn t316(m: &[ComplexMatrix], p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let n = p.n;
    let lhs = phi_cv(&p.phi, radius_cv(&family_sum_product(m, n)?)?);
    let (a_list, rest) = m.split_at(n);
    let (b_list, x_list) = rest.split_at(n);
    let nf = n as f64;
    let mut sum: Option<ComplexMatrix> = None;
    for k in 0..n {
        let mb = sandwich(&b_list[k], &f2_of_abs(&p.fg, &x_list[k])?, true)?.scale_re(nf);
        let ma = sandwich(&a_list[k], &g2_of_coabs(&p.fg, &x_list[k])?, true)?.scale_re(nf);
        let term = add(
            &phi_of(&p.phi, &mb)?,
            &phi_of(&p.phi, &ma)?.scale(Complex64::new(0.0, 1.0)),
        )?;
        sum = Some(match sum {
            Some(acc) => add(&acc, &term)?,
            None => term,
        });
    }
    // M + iN is not Hermitian: the general radius solver is required here.
    let rhs = radius_cv(&sum.expect("nonempty family"))?
        .scale(1.0 / (std::f64::consts::SQRT_2 * nf));
    Ok((lhs, rhs))
}

fn t317(m: &[ComplexMatrix], p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let (a, b, c, d, s, t) = (&m[0], &m[1], &m[2], &m[3], &m[4], &m[5]);
    let combo = add(&mul(&mul(a, t)?, b)?, &mul(&mul(c, s)?, d)?)?;
    let lhs = phi_cv(&p.phi, radius_cv(&combo)?);
    let term1 = phi_of(&p.phi, &sandwich(a, &g2_of_coabs(&p.fg, t)?, false)?)?;
    let term2 = phi_of(&p.phi, &sandwich(b, &f2_of_abs(&p.fg, t)?, true)?)?;
    let term3 = phi_of(&p.phi, &sandwich(c, &g2_of_coabs(&p.fg, s)?, false)?)?;
    let term4 = phi_of(&p.phi, &sandwich(d, &f2_of_abs(&p.fg, s)?, true)?)?;
    let sum = add(&add(&term1, &term2)?, &add(&term3, &term4)?)?;
    let rhs = norm_cv(&sum).scale(0.5);
    Ok((lhs, rhs))
}

fn t319(a: &ComplexMatrix, p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = phi_cv(&p.phi, radius_cv(a)?.pow_nonneg(2.0));
    let sum = add(&phi_of(&p.phi, &a.gram())?, &phi_of(&p.phi, &a.cogram())?)?;
    let term1 = norm_cv(&sum).scale(0.25);
    let abs_a = gram_pow(a, 0.5)?;
    let abs_adj = cogram_pow(a, 0.5)?;
    let re_prod = mul(&abs_a, &abs_adj)?.cartesian_parts().0;
    let term2 = norm_cv(&phi_of(&p.phi, &hermitian_abs(&re_prod)?)?).scale(0.5 * p.alpha);
    let a2 = mul(a, a)?;
    let term3 = phi_cv(&p.phi, radius_cv(&a2)?).scale(0.5 * (1.0 - p.alpha));
    Ok((lhs, term1.add(term2).add(term3)))
}

fn t321(a: &ComplexMatrix, p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = phi_cv(&p.phi, radius_cv(a)?.pow_nonneg(2.0));
    let sum = add(&phi_of(&p.phi, &a.gram())?, &phi_of(&p.phi, &a.cogram())?)?;
    let term1 = norm_cv(&sum).scale(0.25);
    let abs_a = gram_pow(a, 0.5)?;
    let abs_adj = cogram_pow(a, 0.5)?;
    let term2 = norm_cv(&phi_of(&p.phi, &abs_a)?)
        .mul_nonneg(norm_cv(&phi_of(&p.phi, &abs_adj)?))
        .scale(0.5 * p.alpha);
    let a2 = mul(a, a)?;
    let term3 = phi_cv(&p.phi, radius_cv(&a2)?).scale(0.5 * (1.0 - p.alpha));
    Ok((lhs, term1.add(term2).add(term3)))
}

fn family_sum(m: &[ComplexMatrix]) -> Ev<ComplexMatrix> {
    let mut sum = m[0].clone();
    for a in &m[1..] {
        sum = add(&sum, a)?;
    }
    Ok(sum)
}

fn t322(m: &[ComplexMatrix], p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let n = p.n;
    let nf = n as f64;
    let n2 = nf * nf;
    let lhs = phi_cv(&p.phi, radius_cv(&family_sum(m)?)?.pow_nonneg(2.0));
    let mut sq_sum: Option<ComplexMatrix> = None;
    let mut re_sum: Option<ComplexMatrix> = None;
    let mut term3 = CertifiedValue::exact(0.0);
    for a in m {
        let sq = add(
            &phi_of(&p.phi, &a.gram().scale_re(n2))?,
            &phi_of(&p.phi, &a.cogram().scale_re(n2))?,
        )?;
        sq_sum = Some(match sq_sum {
            Some(acc) => add(&acc, &sq)?,
            None => sq,
        });
        let abs_a = gram_pow(a, 0.5)?;
        let abs_adj = cogram_pow(a, 0.5)?;
        let re_part = mul(&abs_a, &abs_adj)?.scale_re(n2).cartesian_parts().0;
        let re_term = phi_of(&p.phi, &hermitian_abs(&re_part)?)?;
        re_sum = Some(match re_sum {
            Some(acc) => add(&acc, &re_term)?,
            None => re_term,
        });
        let a2 = mul(a, a)?;
        term3 = term3.add(phi_cv(&p.phi, radius_cv(&a2)?.scale(n2)));
    }
    let rhs = norm_cv(&sq_sum.expect("nonempty family"))
        .scale(1.0 / (4.0 * nf))
        .add(norm_cv(&re_sum.expect("nonempty family")).scale(0.5 * p.alpha / nf))
        .add(term3.scale(0.5 * (1.0 - p.alpha) / nf));
    Ok((lhs, rhs))
}

fn t323(a: &ComplexMatrix, p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let lhs = phi_cv(&p.phi, radius_cv(a)?.pow_nonneg(2.0));
    let sum = add(&phi_of(&p.phi, &a.gram())?, &phi_of(&p.phi, &a.cogram())?)?;
    let abs_a = gram_pow(a, 0.5)?;
    let abs_adj = cogram_pow(a, 0.5)?;
    let prod = mul(&abs_a, &abs_adj)?;
    let rhs = norm_cv(&sum)
        .scale(0.25)
        .add(phi_cv(&p.phi, radius_cv(&prod)?).scale(0.5));
    Ok((lhs, rhs))
}

fn t324(m: &[ComplexMatrix], p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let n = p.n;
    let nf = n as f64;
    let n2 = nf * nf;
    let lhs = phi_cv(&p.phi, radius_cv(&family_sum(m)?)?.pow_nonneg(2.0));
    let mut sq_sum: Option<ComplexMatrix> = None;
    let mut term2 = CertifiedValue::exact(0.0);
    for a in m {
        let sq = add(
            &phi_of(&p.phi, &a.gram().scale_re(n2))?,
            &phi_of(&p.phi, &a.cogram().scale_re(n2))?,
        )?;
        sq_sum = Some(match sq_sum {
            Some(acc) => add(&acc, &sq)?,
            None => sq,
        });
        let abs_a = gram_pow(a, 0.5)?;
        let abs_adj = cogram_pow(a, 0.5)?;
        let prod = mul(&abs_a, &abs_adj)?;
        term2 = term2.add(phi_cv(&p.phi, radius_cv(&prod)?.scale(n2)));
    }
    let rhs = norm_cv(&sq_sum.expect("nonempty family"))
        .scale(1.0 / (4.0 * nf))
        .add(term2.scale(0.5 / nf));
    Ok((lhs, rhs))
}

fn t41(p_mat: &ComplexMatrix, q_mat: &ComplexMatrix, p: &Resolved) -> Ev<(CertifiedValue, CertifiedValue)> {
    let block = ComplexMatrix::block_compose(p_mat, q_mat).map_err(EvalFail::from)?;
    let lhs = phi_cv(&p.phi, radius_cv(&block)?.pow_nonneg(2.0));
    // || diag(X, Y) || = max(||X||, ||Y||) on every block-diagonal term.
    let d1 = norm_cv(&add(
        &phi_of(&p.phi, &q_mat.gram())?,
        &phi_of(&p.phi, &p_mat.cogram())?,
    )?);
    let d2 = norm_cv(&add(
        &phi_of(&p.phi, &p_mat.gram())?,
        &phi_of(&p.phi, &q_mat.cogram())?,
    )?);
    let term1 = d1.max_with(d2).scale(0.25);
    let abs_q = gram_pow(q_mat, 0.5)?;
    let abs_p_adj = cogram_pow(p_mat, 0.5)?;
    let abs_p = gram_pow(p_mat, 0.5)?;
    let abs_q_adj = cogram_pow(q_mat, 0.5)?;
    let re1 = mul(&abs_q, &abs_p_adj)?.cartesian_parts().0;
    let re2 = mul(&abs_p, &abs_q_adj)?.cartesian_parts().0;
    let m1 = norm_cv(&phi_of(&p.phi, &hermitian_abs(&re1)?)?);
    let m2 = norm_cv(&phi_of(&p.phi, &hermitian_abs(&re2)?)?);
    let term2 = m1.max_with(m2).scale(0.5 * p.alpha);
    // w(diag(PQ, QP)) = max(w(PQ), w(QP)).
    let w_pq = radius_cv(&mul(p_mat, q_mat)?)?;
    let w_qp = radius_cv(&mul(q_mat, p_mat)?)?;
    let term3 = phi_cv(&p.phi, w_pq.max_with(w_qp)).scale(0.5 * (1.0 - p.alpha));
    Ok((lhs, term1.add(term2).add(term3)))
}
