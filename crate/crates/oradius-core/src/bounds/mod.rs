//! The inequality catalog: one evaluator per bound, each producing a
//! `BoundReport` with explicit LHS/RHS values, slack, an aggregated
//! numerical error budget, and a verdict.

mod eval;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::enclosure::CertifiedValue;
use crate::matrix::{ComplexMatrix, MatrixError};
use crate::orlicz::{FactorPair, OrliczError, OrliczFunction};
use crate::radius::RadiusError;

pub use eval::evaluate_bound;

/// Stable identifiers for every inequality in the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(clippy::upper_case_acronyms)]
pub enum BoundId {
    EQV,
    KITT03,
    KITT05L,
    KITT05U,
    HK1,
    HK2,
    AOK,
    BP,
    HOLB4,
    HOLB2C,
    FH,
    POWK,
    KittAtbcsd,
    T31,
    T33i,
    T33ii,
    T34i,
    T34ii,
    T36i,
    T36ii,
    T38,
    T310,
    T310C,
    T312i,
    T312ii,
    T314,
    T316,
    T317,
    T319,
    T321,
    T322,
    T323,
    T324,
    T41,
}

pub const ALL_BOUNDS: [BoundId; 34] = [
    BoundId::EQV,
    BoundId::KITT03,
    BoundId::KITT05L,
    BoundId::KITT05U,
    BoundId::HK1,
    BoundId::HK2,
    BoundId::AOK,
    BoundId::BP,
    BoundId::HOLB4,
    BoundId::HOLB2C,
    BoundId::FH,
    BoundId::POWK,
    BoundId::KittAtbcsd,
    BoundId::T31,
    BoundId::T33i,
    BoundId::T33ii,
    BoundId::T34i,
    BoundId::T34ii,
    BoundId::T36i,
    BoundId::T36ii,
    BoundId::T38,
    BoundId::T310,
    BoundId::T310C,
    BoundId::T312i,
    BoundId::T312ii,
    BoundId::T314,
    BoundId::T316,
    BoundId::T317,
    BoundId::T319,
    BoundId::T321,
    BoundId::T322,
    BoundId::T323,
    BoundId::T324,
    BoundId::T41,
];

impl BoundId {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundId::EQV => "EQV",
            BoundId::KITT03 => "KITT03",
            BoundId::KITT05L => "KITT05L",
            BoundId::KITT05U => "KITT05U",
            BoundId::HK1 => "HK1",
            BoundId::HK2 => "HK2",
            BoundId::AOK => "AOK",
            BoundId::BP => "BP",
            BoundId::HOLB4 => "HOLB4",
            BoundId::HOLB2C => "HOLB2C",
            BoundId::FH => "FH",
            BoundId::POWK => "POWK",
            BoundId::KittAtbcsd => "KITT-ATBCSD",
            BoundId::T31 => "T31",
            BoundId::T33i => "T33i",
            BoundId::T33ii => "T33ii",
            BoundId::T34i => "T34i",
            BoundId::T34ii => "T34ii",
            BoundId::T36i => "T36i",
            BoundId::T36ii => "T36ii",
            BoundId::T38 => "T38",
            BoundId::T310 => "T310",
            BoundId::T310C => "T310C",
            BoundId::T312i => "T312i",
            BoundId::T312ii => "T312ii",
            BoundId::T314 => "T314",
            BoundId::T316 => "T316",
            BoundId::T317 => "T317",
            BoundId::T319 => "T319",
            BoundId::T321 => "T321",
            BoundId::T322 => "T322",
            BoundId::T323 => "T323",
            BoundId::T324 => "T324",
            BoundId::T41 => "T41",
        }
    }

    pub fn descriptor(&self) -> BoundDescriptor {
        descriptor(*self)
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = BoundError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_BOUNDS
            .iter()
            .find(|id| id.as_str() == s)
            .copied()
            .ok_or_else(|| BoundError::UnknownBound(s.to_string()))
    }
}

/// How a bound consumes its matrix inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputSpec {
    /// A fixed tuple of named inputs.
    Fixed(&'static [&'static str]),
    /// `n` copies of a named group, e.g. `(A_k, B_k, X_k)` for k = 1..n,
    /// passed grouped by name: all A's, then all B's, then all X's.
    Family(&'static [&'static str]),
}

impl InputSpec {
    pub fn group_len(&self) -> usize {
        match self {
            InputSpec::Fixed(names) => names.len(),
            InputSpec::Family(group) => group.len(),
        }
    }

    pub fn names(&self) -> &'static [&'static str] {
        match self {
            InputSpec::Fixed(names) => names,
            InputSpec::Family(group) => group,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiRequirement {
    /// Classical bound, no Orlicz function involved.
    Unused,
    /// Any Orlicz function.
    Any,
    /// Needs the complementary pair `(phi, psi)`.
    WithComplement,
    /// `phi` must pass the sub-multiplicativity probe.
    Submultiplicative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaDomain {
    /// `0 <= alpha <= 1`.
    ClosedUnit,
    /// `(0, 1)`, clamped internally to `[1e-3, 1 - 1e-3]` because the RHS
    /// carries exponents `1/alpha` or `1/(1-alpha)`.
    OpenUnitClamped,
    /// `(0, 1/2]`.
    ZeroHalf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RDomain {
    GeOne,
    GeTwo,
    PositiveInteger,
}

/// Static description of one catalog entry: required inputs and parameters.
#[derive(Clone, Copy, Debug)]
pub struct BoundDescriptor {
    pub id: BoundId,
    pub summary: &'static str,
    pub inputs: InputSpec,
    pub phi: PhiRequirement,
    pub alpha: Option<AlphaDomain>,
    pub r: Option<RDomain>,
    pub uses_fg: bool,
    /// Inputs A and B must commute.
    pub commuting: bool,
    /// Inputs A and B must be positive semidefinite.
    pub psd_inputs: bool,
    /// Input X must be a contraction.
    pub contraction: bool,
}

fn descriptor(id: BoundId) -> BoundDescriptor {
    use AlphaDomain::*;
    use BoundId::*;
    use InputSpec::*;
    use PhiRequirement::*;
    let d = |summary, inputs, phi, alpha, r, uses_fg| BoundDescriptor {
        id,
        summary,
        inputs,
        phi,
        alpha,
        r,
        uses_fg,
        commuting: false,
        psd_inputs: false,
        contraction: false,
    };
    match id {
        EQV => d(
            "||A||/2 <= w(A) <= ||A|| (two-sided, binding side reported)",
            Fixed(&["A"]),
            Unused,
            None,
            None,
            false,
        ),
        KITT03 => d(
            "w(A) <= (||A|| + ||A^2||^(1/2)) / 2",
            Fixed(&["A"]),
            Unused,
            None,
            None,
            false,
        ),
        KITT05L => d(
            "|| |A|^2 + |A*|^2 || / 4 <= w^2(A) (lower bound)",
            Fixed(&["A"]),
            Unused,
            None,
            None,
            false,
        ),
        KITT05U => d(
            "w^2(A) <= || |A|^2 + |A*|^2 || / 2",
            Fixed(&["A"]),
            Unused,
            None,
            None,
            false,
        ),
        HK1 => d(
            "w^r(A) <= || |A|^(2ra) + |A*|^(2r(1-a)) || / 2",
            Fixed(&["A"]),
            Unused,
            Some(ClosedUnit),
            Some(RDomain::GeOne),
            false,
        ),
        HK2 => d(
            "w^(2r)(A) <= || a|A|^(2r) + (1-a)|A*|^(2r) ||",
            Fixed(&["A"]),
            Unused,
            Some(ClosedUnit),
            Some(RDomain::GeOne),
            false,
        ),
        AOK => d(
            "w^2(A) <= || |A|^2 + |A*|^2 || / 4 + w(A^2) / 2",
            Fixed(&["A"]),
            Unused,
            None,
            None,
            false,
        ),
        BP => d(
            "w^(2r)(A) <= || |A|^(2r) + |A*|^(2r) || / 4 + w(|A|^r |A*|^r) / 2",
            Fixed(&["A"]),
            Unused,
            None,
            Some(RDomain::GeOne),
            false,
        ),
        HOLB4 => d(
            "w(AB) <= 4 w(A) w(B)",
            Fixed(&["A", "B"]),
            Unused,
            None,
            None,
            false,
        ),
        HOLB2C => BoundDescriptor {
            commuting: true,
            ..d(
                "w(AB) <= 2 w(A) w(B) for commuting A, B",
                Fixed(&["A", "B"]),
                Unused,
                None,
                None,
                false,
            )
        },
        FH => d(
            "w(AB + BA) <= 2 sqrt(2) w(A) ||B||",
            Fixed(&["A", "B"]),
            Unused,
            None,
            None,
            false,
        ),
        POWK => d(
            "w(A^k) <= w(A)^k (power k taken from r)",
            Fixed(&["A"]),
            Unused,
            None,
            Some(RDomain::PositiveInteger),
            false,
        ),
        KittAtbcsd => d(
            "w(ATB + CSD) <= || A|T*|^(2(1-a))A* + B*|T|^(2a)B + C|S*|^(2(1-a))C* + D*|S|^(2a)D || / 2",
            Fixed(&["A", "B", "C", "D", "S", "T"]),
            Unused,
            Some(ClosedUnit),
            None,
            false,
        ),
        T31 => d(
            "w^2(A) <= || phi(|A|) + psi(|A*|) ||",
            Fixed(&["A"]),
            WithComplement,
            None,
            None,
            false,
        ),
        T33i => d(
            "w^r(A*XB) <= ||X||^r w(phi(|A|^r) + psi(|B|^r)), r >= 2",
            Fixed(&["A", "B", "X"]),
            WithComplement,
            None,
            Some(RDomain::GeTwo),
            false,
        ),
        T33ii => d(
            "w(A*XB) <= phi(sqrt(w(B*|X|^(2a)B))) + psi(sqrt(w(A*|X|^(2(1-a))A)))",
            Fixed(&["A", "B", "X"]),
            WithComplement,
            Some(ClosedUnit),
            None,
            false,
        ),
        T34i => d(
            "phi(w(A)) <= || phi(|A|) + phi(|A*|) || / 2",
            Fixed(&["A"]),
            Any,
            None,
            None,
            false,
        ),
        T34ii => d(
            "phi(w(A)) <= || phi(|A|^(2a)) + phi(|A*|^(2(1-a))) || / 2",
            Fixed(&["A"]),
            Any,
            Some(ClosedUnit),
            None,
            false,
        ),
        T36i => d(
            "phi(w^2(A)) <= || a phi(|A|^(1/a)) + (1-a) phi(|A*|^(1/(1-a))) ||",
            Fixed(&["A"]),
            Any,
            Some(OpenUnitClamped),
            None,
            false,
        ),
        T36ii => d(
            "phi(w^2(A)) <= || a phi(|A|^2) + (1-a) phi(|A*|^2) ||",
            Fixed(&["A"]),
            Any,
            Some(ClosedUnit),
            None,
            false,
        ),
        T38 => d(
            "phi(w^2(A)) <= || phi(|A|^2) + phi(|A*|^2) || / 4 + phi(w(A^2)) / 2",
            Fixed(&["A"]),
            Any,
            None,
            None,
            false,
        ),
        T310 => d(
            "phi(w(A*XB)) <= w(phi(||X|| |A|^2) + phi(||X|| |B|^2)) / 2",
            Fixed(&["A", "B", "X"]),
            Any,
            None,
            None,
            false,
        ),
        T310C => BoundDescriptor {
            contraction: true,
            ..d(
                "phi(w(A*XB)) <= ||X|| w(phi(|A|^2) + phi(|B|^2)) / 2 for a contraction X",
                Fixed(&["A", "B", "X"]),
                Any,
                None,
                None,
                false,
            )
        },
        T312i => BoundDescriptor {
            psd_inputs: true,
            ..d(
                "phi(w(A^a X B^(1-a))) <= w(a phi(||X||A) + (1-a) phi(||X||B)), a in (0, 1/2], A,B >= 0",
                Fixed(&["A", "B", "X"]),
                Any,
                Some(ZeroHalf),
                None,
                false,
            )
        },
        T312ii => BoundDescriptor {
            psd_inputs: true,
            ..d(
                "phi(w(A^a X B^(1-a))) <= w(phi(||X||A^(2a)) + phi(||X||B^(2(1-a)))) / 2, A,B >= 0",
                Fixed(&["A", "B", "X"]),
                Any,
                Some(ClosedUnit),
                None,
                false,
            )
        },
        T314 => d(
            "phi(w(sum A_k*X_kB_k)) <= sum || phi(n B_k*f^2(|X_k|)B_k) + phi(n A_k*g^2(|X_k*|)A_k) || / (2n)",
            Family(&["A", "B", "X"]),
            Any,
            Some(ClosedUnit),
            None,
            true,
        ),
        T316 => d(
            "phi(w(sum A_k*X_kB_k)) <= w(sum phi(n B_k*f^2(|X_k|)B_k) + i phi(n A_k*g^2(|X_k*|)A_k)) / (sqrt(2) n)",
            Family(&["A", "B", "X"]),
            Any,
            Some(ClosedUnit),
            None,
            true,
        ),
        T317 => d(
            "phi(w(ATB + CSD)) <= || phi(Ag^2(|T*|)A*) + phi(B*f^2(|T|)B) + phi(Cg^2(|S*|)C*) + phi(D*f^2(|S|)D) || / 2",
            Fixed(&["A", "B", "C", "D", "S", "T"]),
            Any,
            Some(ClosedUnit),
            None,
            true,
        ),
        T319 => d(
            "phi(w^2(A)) <= ||phi(|A|^2)+phi(|A*|^2)||/4 + (a/2)||phi(|Re(|A||A*|)|)|| + ((1-a)/2) phi(w(A^2))",
            Fixed(&["A"]),
            Any,
            Some(ClosedUnit),
            None,
            false,
        ),
        T321 => d(
            "phi(w^2(A)) <= ||phi(|A|^2)+phi(|A*|^2)||/4 + (a/2)||phi(|A|)|| ||phi(|A*|)|| + ((1-a)/2) phi(w(A^2)), phi sub-multiplicative",
            Fixed(&["A"]),
            Submultiplicative,
            Some(ClosedUnit),
            None,
            false,
        ),
        T322 => d(
            "phi(w^2(sum A_i)) <= family bound with factors n, n^2 (generalizes the a-interpolated bound)",
            Family(&["A"]),
            Any,
            Some(ClosedUnit),
            None,
            false,
        ),
        T323 => d(
            "phi(w^2(A)) <= || phi(|A|^2) + phi(|A*|^2) || / 4 + phi(w(|A||A*|)) / 2",
            Fixed(&["A"]),
            Any,
            None,
            None,
            false,
        ),
        T324 => d(
            "phi(w^2(sum A_i)) <= family bound with factors n^2, 1/(2n) (generalizes the |A||A*| form)",
            Family(&["A"]),
            Any,
            None,
            None,
            false,
        ),
        T41 => d(
            "phi(w^2([[0,P],[Q,0]])) <= block-diagonal bound via max of the component norms",
            Fixed(&["P", "Q"]),
            Any,
            Some(ClosedUnit),
            None,
            false,
        ),
    }
}

/// The full catalog with required inputs per id.
pub fn list_bounds() -> Vec<BoundDescriptor> {
    ALL_BOUNDS.iter().map(|&id| descriptor(id)).collect()
}

/// Evaluation parameters shared across the catalog. Fields not used by a
/// given bound are ignored.
#[derive(Clone, Debug)]
pub struct BoundParams {
    /// Interpolation exponent, in `[0, 1]` (tighter domains per bound).
    pub alpha: f64,
    /// Power parameter, `r >= 1` where used.
    pub r: f64,
    pub phi: OrliczFunction,
    /// Complement; computed from `phi` when absent and needed.
    pub psi: Option<OrliczFunction>,
    /// Factor pair; defaults to `f = t^alpha`, `g = t^(1-alpha)`.
    pub fg: Option<FactorPair>,
    /// Family length for the sum bounds; inferred from the inputs when
    /// absent.
    pub n: Option<usize>,
}

impl Default for BoundParams {
    fn default() -> Self {
        Self {
            alpha: 0.5,
            r: 1.0,
            phi: OrliczFunction::power(1.0).expect("power:1 is a valid catalog entry"),
            psi: None,
            fg: None,
            n: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Tight,
    Violated,
    Overflow,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Holds => "holds",
            Verdict::Tight => "tight",
            Verdict::Violated => "violated",
            Verdict::Overflow => "overflow",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Parameters actually consumed by an evaluation, for reporting.
#[derive(Clone, Debug, Default)]
pub struct ParamSummary {
    pub n: Option<usize>,
    pub alpha: Option<f64>,
    pub r: Option<f64>,
    pub phi: Option<String>,
    pub psi: Option<String>,
}

/// One inequality evaluation.
#[derive(Clone, Debug)]
pub struct BoundReport {
    pub bound_id: BoundId,
    pub params: ParamSummary,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub error_budget: f64,
    pub verdict: Verdict,
}

impl BoundReport {
    pub(crate) fn from_enclosures(
        bound_id: BoundId,
        params: ParamSummary,
        lhs: CertifiedValue,
        rhs: CertifiedValue,
    ) -> Self {
        let lhs_mid = lhs.midpoint();
        let rhs_mid = rhs.midpoint();
        if !lhs.is_finite() || !rhs.is_finite() {
            return Self {
                bound_id,
                params,
                lhs: lhs_mid,
                rhs: rhs_mid,
                slack: rhs_mid - lhs_mid,
                error_budget: f64::NAN,
                verdict: Verdict::Overflow,
            };
        }
        let slack = rhs_mid - lhs_mid;
        let scale = lhs_mid.abs().max(rhs_mid.abs()).max(1.0);
        let error_budget = lhs.half_width() + rhs.half_width() + 1e-12 * scale;
        let verdict = if slack < -error_budget {
            Verdict::Violated
        } else if slack.abs() <= error_budget {
            Verdict::Tight
        } else {
            Verdict::Holds
        };
        Self {
            bound_id,
            params,
            lhs: lhs_mid,
            rhs: rhs_mid,
            slack,
            error_budget,
            verdict,
        }
    }

    pub(crate) fn overflow(bound_id: BoundId, params: ParamSummary) -> Self {
        Self {
            bound_id,
            params,
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: f64::NAN,
            error_budget: f64::NAN,
            verdict: Verdict::Overflow,
        }
    }

    /// CSV columns: `bound_id,n,alpha,r,phi,lhs,rhs,slack,budget,verdict`.
    pub fn csv_header() -> &'static str {
        "bound_id,n,alpha,r,phi,lhs,rhs,slack,budget,verdict"
    }

    pub fn to_csv_row(&self) -> String {
        let n = self.params.n.map(|n| n.to_string()).unwrap_or_default();
        let alpha = self.params.alpha.map(fmt_g17).unwrap_or_default();
        let r = self.params.r.map(fmt_g17).unwrap_or_default();
        let phi = self.params.phi.clone().unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.bound_id,
            n,
            alpha,
            r,
            phi,
            fmt_g17(self.lhs),
            fmt_g17(self.rhs),
            fmt_g17(self.slack),
            fmt_g17(self.error_budget),
            self.verdict
        )
    }
}

/// Format with 17 significant digits: round-trip exact for f64.
pub fn fmt_g17(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundError {
    #[error("unknown bound id {0:?}")]
    UnknownBound(String),
    #[error("{id} expects {expected} matrix input(s) [{names}], got {got}")]
    MissingInput {
        id: BoundId,
        expected: usize,
        names: String,
        got: usize,
    },
    #[error("{id}: matrix inputs have mismatched dimensions {dims:?}")]
    MismatchedInputs { id: BoundId, dims: Vec<usize> },
    #[error("{id}: parameter {param} = {value} out of range ({constraint})")]
    ParamOutOfRange {
        id: BoundId,
        param: &'static str,
        value: f64,
        constraint: String,
    },
    #[error("{id}: input {name} is not positive semidefinite (min eigenvalue {min_eig:.3e})")]
    NotPsd {
        id: BoundId,
        name: &'static str,
        min_eig: f64,
    },
    #[error("{id}: X is not a contraction (operator norm {norm})")]
    NotContraction { id: BoundId, norm: f64 },
    #[error("{id}: {phi} failed the sub-multiplicativity probe")]
    NotSubmultiplicative { id: BoundId, phi: String },
    #[error("{id}: inputs A and B do not commute (relative residual {residual:.3e})")]
    NotCommuting { id: BoundId, residual: f64 },
    #[error("bounds {a} and {b} bound different functionals ({key_a} vs {key_b})")]
    IncomparableBounds {
        a: BoundId,
        b: BoundId,
        key_a: String,
        key_b: String,
    },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Orlicz(#[from] OrliczError),
    #[error(transparent)]
    Radius(#[from] RadiusError),
}

/// The functional a bound's LHS measures, in canonical string form.
/// Power-type Orlicz wrappers fold into the exponent so that, e.g.,
/// `T38` with `phi = power:1` is comparable with `AOK`.
pub fn lhs_key(id: BoundId, params: &BoundParams) -> String {
    let phi_key = |exp: f64| -> String {
        match params.phi.as_power() {
            Some(r) => format!("w^{}(A)", exp * r),
            None => format!("phi[{}](w^{}(A))", params.phi.id(), exp),
        }
    };
    match id {
        BoundId::EQV => "two-sided(w(A))".to_string(),
        BoundId::KITT03 => "w^1(A)".to_string(),
        BoundId::KITT05L => "lower(w^2(A))".to_string(),
        BoundId::KITT05U | BoundId::AOK | BoundId::T31 => "w^2(A)".to_string(),
        BoundId::HK1 => format!("w^{}(A)", params.r),
        BoundId::HK2 | BoundId::BP => format!("w^{}(A)", 2.0 * params.r),
        BoundId::POWK => format!("w(A^{})", params.r),
        BoundId::HOLB4 | BoundId::HOLB2C => "w(AB)".to_string(),
        BoundId::FH => "w(AB+BA)".to_string(),
        BoundId::KittAtbcsd => "w^1(ATB+CSD)".to_string(),
        BoundId::T33i => format!("w^{}(A*XB)", params.r),
        BoundId::T33ii => "w^1(A*XB)".to_string(),
        BoundId::T34i | BoundId::T34ii => phi_key(1.0),
        BoundId::T36i | BoundId::T36ii | BoundId::T38 | BoundId::T319 | BoundId::T321
        | BoundId::T323 => phi_key(2.0),
        BoundId::T310 | BoundId::T310C => match params.phi.as_power() {
            Some(r) => format!("w^{r}(A*XB)"),
            None => format!("phi[{}](w(A*XB))", params.phi.id()),
        },
        BoundId::T312i | BoundId::T312ii => match params.phi.as_power() {
            Some(r) => format!("w^{r}(A^a X B^(1-a))|a={}", params.alpha),
            None => format!("phi[{}](w(A^a X B^(1-a)))|a={}", params.phi.id(), params.alpha),
        },
        BoundId::T314 | BoundId::T316 => match params.phi.as_power() {
            Some(r) => format!("w^{r}(sum A*XB)"),
            None => format!("phi[{}](w(sum A*XB))", params.phi.id()),
        },
        BoundId::T317 => match params.phi.as_power() {
            Some(r) => format!("w^{r}(ATB+CSD)"),
            None => format!("phi[{}](w(ATB+CSD))", params.phi.id()),
        },
        BoundId::T322 | BoundId::T324 => match params.phi.as_power() {
            Some(r) => format!("w^{}(sum A_i)", 2.0 * r),
            None => format!("phi[{}](w^2(sum A_i))", params.phi.id()),
        },
        BoundId::T41 => match params.phi.as_power() {
            Some(r) => format!("w^{}(block(P,Q))", 2.0 * r),
            None => format!("phi[{}](w^2(block(P,Q)))", params.phi.id()),
        },
    }
}

/// Rank upper bounds of the same LHS functional by RHS value, ascending;
/// ties broken by id string.
pub fn tightness_rank(
    a: &ComplexMatrix,
    ids: &[BoundId],
    params: &BoundParams,
) -> Result<Vec<(BoundId, f64)>, BoundError> {
    if ids.is_empty() {
        return Ok(Vec::new());
    }
    let key0 = lhs_key(ids[0], params);
    for &id in &ids[1..] {
        let key = lhs_key(id, params);
        if key != key0 {
            return Err(BoundError::IncomparableBounds {
                a: ids[0],
                b: id,
                key_a: key0,
                key_b: key,
            });
        }
    }
    let inputs = vec![a.clone()];
    let mut ranked: Vec<(BoundId, f64)> = ids
        .iter()
        .map(|&id| {
            let report = evaluate_bound(id, &inputs, params)?;
            Ok((id, report.rhs))
        })
        .collect::<Result<_, BoundError>>()?;
    // RHS values within numerical resolution of each other count as a tie
    // and fall back to the id ordering.
    ranked.sort_by(|x, y| {
        let scale = x.1.abs().max(y.1.abs()).max(1.0);
        if (x.1 - y.1).abs() <= 1e-9 * scale {
            x.0.as_str().cmp(y.0.as_str())
        } else {
            x.1.total_cmp(&y.1)
        }
    });
    Ok(ranked)
}
