//! Polar-cylinder boundary certificates: exact rational decompositions of a
//! target divisor class, one-parameter coefficient families with exact
//! feasibility intervals, pencil bookkeeping, the degree-3 condition
//! battery, and common-component intersections across pencil collections.
//!
//! Everything here is lattice-level verification of supplied data. Checks
//! that would require curve geometry beyond the intersection form are
//! reported as untested rather than silently passed.

use crate::picard::{Lattice, LatticeClass, PicardError};
use crate::rational::Rat;
use num::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Errors from certificate and pencil operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CylinderError {
    DuplicateComponentName { name: String },
    NonpositiveCoefficient { name: String },
    NonpositiveScale,
    ZeroMultiplicity { member: usize, name: String },
    /// The parametric identity must hold for every parameter value.
    ParametricIdentityFails,
    /// Surface degree and lattice rank disagree (degree = 9 - n).
    DegreeMismatch { degree: i64, n: usize },
    /// The condition battery is defined on the degree-3 lattice (n = 6).
    NotDegreeThree { n: usize },
    EmptyPencilList,
    Lattice(PicardError),
}

impl fmt::Display for CylinderError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CylinderError::DuplicateComponentName { name } => {
                write!(f, "duplicate component name {name:?}")
            }
            CylinderError::NonpositiveCoefficient { name } => {
                write!(f, "component {name:?} has a nonpositive coefficient")
            }
            CylinderError::NonpositiveScale => write!(f, "scale factor must be positive"),
            CylinderError::ZeroMultiplicity { member, name } => {
                write!(f, "member {member} lists {name:?} with zero multiplicity")
            }
            CylinderError::ParametricIdentityFails => {
                write!(f, "parametric sum does not equal the target identically")
            }
            CylinderError::DegreeMismatch { degree, n } => {
                write!(f, "surface degree {degree} does not match lattice rank (expected {})", 9 - *n as i64)
            }
            CylinderError::NotDegreeThree { n } => {
                write!(f, "condition battery requires n = 6, got n = {n}")
            }
            CylinderError::EmptyPencilList => write!(f, "need at least one pencil"),
            CylinderError::Lattice(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CylinderError {}

impl From<PicardError> for CylinderError {
    fn from(e: PicardError) -> CylinderError {
        CylinderError::Lattice(e)
    }
}

// ---------------------------------------------------------------------------
// Exact certificates
// ---------------------------------------------------------------------------

/// One boundary component: a named class with a positive rational weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertComponent {
    pub name: String,
    pub class: LatticeClass,
    pub coeff: Rat,
}

/// A weighted decomposition ∑ δ_i·D_i claimed to equal a target class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    lattice: Lattice,
    components: Vec<CertComponent>,
    target: LatticeClass,
}

/// Outcome of checking the weighted sum against the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateVerdict {
    Valid,
    Mismatch { difference: LatticeClass },
}

impl CertificateVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, CertificateVerdict::Valid)
    }
}

/// Count/rank report for a certificate at a given surface degree. The
/// count thresholds only apply in degree 3; elsewhere they are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountAudit {
    pub component_count: usize,
    pub span_rank: usize,
    pub full_rank: usize,
    pub spans_full_rank: bool,
    pub at_least_seven: Option<bool>,
    pub exactly_eight: Option<bool>,
}

impl Certificate {
    pub fn new(
        lattice: Lattice,
        components: Vec<CertComponent>,
        target: LatticeClass,
    ) -> Result<Certificate, CylinderError> {
        check_dim(&lattice, &target)?;
        let mut seen = BTreeSet::new();
        for comp in &components {
            check_dim(&lattice, &comp.class)?;
            if !seen.insert(comp.name.clone()) {
                return Err(CylinderError::DuplicateComponentName {
                    name: comp.name.clone(),
                });
            }
            if !comp.coeff.is_positive() {
                return Err(CylinderError::NonpositiveCoefficient {
                    name: comp.name.clone(),
                });
            }
        }
        Ok(Certificate {
            lattice,
            components,
            target,
        })
    }

    /// Certificate against the anticanonical target -K.
    pub fn anticanonical(
        lattice: Lattice,
        components: Vec<CertComponent>,
    ) -> Result<Certificate, CylinderError> {
        let target = lattice.minus_canonical();
        Certificate::new(lattice, components, target)
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn components(&self) -> &[CertComponent] {
        &self.components
    }

    pub fn target(&self) -> &LatticeClass {
        &self.target
    }

    fn weighted_sum(&self) -> LatticeClass {
        let mut sum = LatticeClass::zero(self.lattice.n());
        for comp in &self.components {
            sum = sum.add(&comp.class.scaled(&comp.coeff));
        }
        sum
    }

    /// Valid iff the weighted component sum equals the target exactly;
    /// otherwise the verdict carries the difference sum - target.
    pub fn verify(&self) -> CertificateVerdict {
        let diff = self.weighted_sum().sub(&self.target);
        if diff.is_zero() {
            CertificateVerdict::Valid
        } else {
            CertificateVerdict::Mismatch { difference: diff }
        }
    }

    /// True iff every coefficient is strictly below 1.
    pub fn coefficient_bounds_check(&self) -> bool {
        let one = Rat::one();
        self.components.iter().all(|c| c.coeff < one)
    }

    /// Multiply all coefficients and the target by k > 0.
    pub fn scaled(&self, k: &Rat) -> Result<Certificate, CylinderError> {
        if !k.is_positive() {
            return Err(CylinderError::NonpositiveScale);
        }
        let components = self
            .components
            .iter()
            .map(|c| CertComponent {
                name: c.name.clone(),
                class: c.class.clone(),
                coeff: &c.coeff * k,
            })
            .collect();
        Certificate::new(self.lattice, components, self.target.scaled(k))
    }

    /// Component count and span rank, with degree-3 count thresholds
    /// (at least 7, exactly 8) when applicable.
    pub fn component_count_audit(&self, surface_degree: i64) -> Result<CountAudit, CylinderError> {
        let n = self.lattice.n();
        if surface_degree != 9 - n as i64 {
            return Err(CylinderError::DegreeMismatch {
                degree: surface_degree,
                n,
            });
        }
        let classes: Vec<LatticeClass> =
            self.components.iter().map(|c| c.class.clone()).collect();
        let span_rank = self.lattice.span_rank(&classes)?;
        let full_rank = self.lattice.dim();
        let count = self.components.len();
        let (at_least_seven, exactly_eight) = if surface_degree == 3 {
            (Some(count >= 7), Some(count == 8))
        } else {
            (None, None)
        };
        Ok(CountAudit {
            component_count: count,
            span_rank,
            full_rank,
            spans_full_rank: span_rank == full_rank,
            at_least_seven,
            exactly_eight,
        })
    }
}

// ---------------------------------------------------------------------------
// Parametric families
// ---------------------------------------------------------------------------

/// A coefficient affine in one parameter: constant + eps·ε.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsCoeff {
    pub constant: Rat,
    pub eps: Rat,
}

impl EpsCoeff {
    pub fn exact(c: Rat) -> EpsCoeff {
        EpsCoeff {
            constant: c,
            eps: Rat::zero(),
        }
    }

    pub fn evaluate(&self, eps: &Rat) -> Rat {
        &self.constant + &self.eps * eps
    }
}

impl fmt::Display for EpsCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::rational::format_rat;
        if self.eps.is_zero() {
            write!(f, "{}", format_rat(&self.constant))
        } else if self.constant.is_zero() {
            write!(f, "{}e", format_rat(&self.eps))
        } else if self.eps.is_positive() {
            write!(f, "{} + {}e", format_rat(&self.constant), format_rat(&self.eps))
        } else {
            write!(f, "{} - {}e", format_rat(&self.constant), format_rat(&-&self.eps))
        }
    }
}

/// Component of a one-parameter family of certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamComponent {
    pub name: String,
    pub class: LatticeClass,
    pub coeff: EpsCoeff,
}

/// A family ∑ (a_i + b_i·ε)·D_i with one global parameter ε. The identity
/// with the target must hold for every ε: both the constant and the
/// ε-linear class sums are checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParametricCertificate {
    lattice: Lattice,
    components: Vec<ParamComponent>,
    target: LatticeClass,
}

/// Outcome of the identity check, with both defect classes on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParametricVerdict {
    Valid,
    Mismatch {
        constant_defect: LatticeClass,
        linear_defect: LatticeClass,
    },
}

impl ParametricVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, ParametricVerdict::Valid)
    }
}

/// An exact open interval of feasible parameter values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EpsInterval {
    Empty,
    /// Open interval; `None` means unbounded on that side.
    Interval { lo: Option<Rat>, hi: Option<Rat> },
}

impl EpsInterval {
    pub fn is_empty(&self) -> bool {
        matches!(self, EpsInterval::Empty)
    }

    pub fn contains(&self, eps: &Rat) -> bool {
        match self {
            EpsInterval::Empty => false,
            EpsInterval::Interval { lo, hi } => {
                lo.as_ref().is_none_or(|l| eps > l) && hi.as_ref().is_none_or(|h| eps < h)
            }
        }
    }
}

impl fmt::Display for EpsInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::rational::format_rat;
        match self {
            EpsInterval::Empty => write!(f, "empty"),
            EpsInterval::Interval { lo, hi } => {
                match lo {
                    Some(l) => write!(f, "({}, ", format_rat(l))?,
                    None => write!(f, "(-inf, ")?,
                }
                match hi {
                    Some(h) => write!(f, "{})", format_rat(h)),
                    None => write!(f, "inf)"),
                }
            }
        }
    }
}

impl ParametricCertificate {
    pub fn new(
        lattice: Lattice,
        components: Vec<ParamComponent>,
        target: LatticeClass,
    ) -> Result<ParametricCertificate, CylinderError> {
        check_dim(&lattice, &target)?;
        let mut seen = BTreeSet::new();
        for comp in &components {
            check_dim(&lattice, &comp.class)?;
            if !seen.insert(comp.name.clone()) {
                return Err(CylinderError::DuplicateComponentName {
                    name: comp.name.clone(),
                });
            }
        }
        Ok(ParametricCertificate {
            lattice,
            components,
            target,
        })
    }

    pub fn anticanonical(
        lattice: Lattice,
        components: Vec<ParamComponent>,
    ) -> Result<ParametricCertificate, CylinderError> {
        let target = lattice.minus_canonical();
        ParametricCertificate::new(lattice, components, target)
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn components(&self) -> &[ParamComponent] {
        &self.components
    }

    pub fn target(&self) -> &LatticeClass {
        &self.target
    }

    /// Check ∑ coeff_i(ε)·D_i = target identically in ε.
    pub fn verify_identity(&self) -> ParametricVerdict {
        let n = self.lattice.n();
        let mut const_sum = LatticeClass::zero(n);
        let mut eps_sum = LatticeClass::zero(n);
        for comp in &self.components {
            const_sum = const_sum.add(&comp.class.scaled(&comp.coeff.constant));
            eps_sum = eps_sum.add(&comp.class.scaled(&comp.coeff.eps));
        }
        let constant_defect = const_sum.sub(&self.target);
        if constant_defect.is_zero() && eps_sum.is_zero() {
            ParametricVerdict::Valid
        } else {
            ParametricVerdict::Mismatch {
                constant_defect,
                linear_defect: eps_sum,
            }
        }
    }

    /// Specialize the parameter; the result must have all-positive
    /// coefficients or construction fails.
    pub fn instantiate(&self, eps: &Rat) -> Result<Certificate, CylinderError> {
        let components = self
            .components
            .iter()
            .map(|c| CertComponent {
                name: c.name.clone(),
                class: c.class.clone(),
                coeff: c.coeff.evaluate(eps),
            })
            .collect();
        Certificate::new(self.lattice, components, self.target.clone())
    }

    /// The exact open interval of ε making every coefficient positive
    /// (and below 1 when `require_upper_bound`). Errors when the family
    /// identity itself fails.
    pub fn epsilon_interval(&self, require_upper_bound: bool) -> Result<EpsInterval, CylinderError> {
        if !self.verify_identity().is_valid() {
            return Err(CylinderError::ParametricIdentityFails);
        }
        let mut lo: Option<Rat> = None;
        let mut hi: Option<Rat> = None;
        let mut raise_lo = |v: Rat| {
            if lo.as_ref().is_none_or(|cur| v > *cur) {
                lo = Some(v);
            }
        };
        let mut drop_hi = |v: Rat| {
            if hi.as_ref().is_none_or(|cur| v < *cur) {
                hi = Some(v);
            }
        };
        let one = Rat::one();
        for comp in &self.components {
            let c = &comp.coeff.constant;
            let e = &comp.coeff.eps;
            // c + e·ε > 0
            if e.is_zero() {
                if !c.is_positive() {
                    return Ok(EpsInterval::Empty);
                }
            } else if e.is_positive() {
                raise_lo(-(c / e));
            } else {
                drop_hi(-(c / e));
            }
            if require_upper_bound {
                // c + e·ε < 1
                if e.is_zero() {
                    if *c >= one {
                        return Ok(EpsInterval::Empty);
                    }
                } else if e.is_positive() {
                    drop_hi((&one - c) / e);
                } else {
                    raise_lo((&one - c) / e);
                }
            }
        }
        if let (Some(l), Some(h)) = (&lo, &hi) {
            if l >= h {
                return Ok(EpsInterval::Empty);
            }
        }
        Ok(EpsInterval::Interval { lo, hi })
    }
}

// ---------------------------------------------------------------------------
// Pencils
// ---------------------------------------------------------------------------

/// One piece of a degenerate pencil member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemberComponent {
    pub name: String,
    pub class: LatticeClass,
    pub multiplicity: u64,
}

/// A pencil: its class, the degenerate members as weighted component
/// lists, per-component base-point flags, and (optionally) the declared
/// list of (-1)-classes through the base point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pencil {
    lattice: Lattice,
    pencil_class: LatticeClass,
    members: Vec<Vec<MemberComponent>>,
    base_point_flags: BTreeMap<String, bool>,
    lines_through_base: Option<Vec<LatticeClass>>,
}

/// Outcome of the member-sum check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PencilVerdict {
    Valid,
    MemberMismatch { index: usize, difference: LatticeClass },
}

impl PencilVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, PencilVerdict::Valid)
    }
}

impl Pencil {
    pub fn new(
        lattice: Lattice,
        pencil_class: LatticeClass,
        members: Vec<Vec<MemberComponent>>,
        base_point_flags: BTreeMap<String, bool>,
        lines_through_base: Option<Vec<LatticeClass>>,
    ) -> Result<Pencil, CylinderError> {
        check_dim(&lattice, &pencil_class)?;
        for (idx, member) in members.iter().enumerate() {
            for piece in member {
                check_dim(&lattice, &piece.class)?;
                if piece.multiplicity == 0 {
                    return Err(CylinderError::ZeroMultiplicity {
                        member: idx,
                        name: piece.name.clone(),
                    });
                }
            }
        }
        if let Some(lines) = &lines_through_base {
            for class in lines {
                check_dim(&lattice, class)?;
            }
        }
        Ok(Pencil {
            lattice,
            pencil_class,
            members,
            base_point_flags,
            lines_through_base,
        })
    }

    pub fn lattice(&self) -> Lattice {
        self.lattice
    }

    pub fn pencil_class(&self) -> &LatticeClass {
        &self.pencil_class
    }

    pub fn members(&self) -> &[Vec<MemberComponent>] {
        &self.members
    }

    pub fn base_point_flags(&self) -> &BTreeMap<String, bool> {
        &self.base_point_flags
    }

    pub fn lines_through_base(&self) -> Option<&[LatticeClass]> {
        self.lines_through_base.as_deref()
    }

    /// Every member's weighted class sum must equal the pencil class
    /// (hence all members are mutually equivalent).
    pub fn member_consistency(&self) -> PencilVerdict {
        for (idx, member) in self.members.iter().enumerate() {
            let mut sum = LatticeClass::zero(self.lattice.n());
            for piece in member {
                let mult = Rat::from_integer(piece.multiplicity.into());
                sum = sum.add(&piece.class.scaled(&mult));
            }
            let diff = sum.sub(&self.pencil_class);
            if !diff.is_zero() {
                return PencilVerdict::MemberMismatch {
                    index: idx,
                    difference: diff,
                };
            }
        }
        PencilVerdict::Valid
    }

    /// Some(m) iff the pencil class equals m·(-K) for a positive integer m.
    pub fn pluri_anticanonical_multiple(&self) -> Option<u64> {
        let a = &self.pencil_class.coeffs()[0];
        if !a.is_integer() || !a.is_positive() {
            return None;
        }
        let a_int = a.to_integer();
        let three: num::BigInt = 3.into();
        if (&a_int % &three) != 0.into() {
            return None;
        }
        let m = a_int / three;
        let candidate = self
            .lattice
            .minus_canonical()
            .scaled(&Rat::from_integer(m.clone()));
        if candidate == self.pencil_class {
            use num::ToPrimitive;
            m.to_u64()
        } else {
            None
        }
    }

    /// True iff the pencil class is NOT a positive integer multiple of -K.
    pub fn not_pluri_anticanonical(&self) -> bool {
        self.pluri_anticanonical_multiple().is_none()
    }

    /// The distinct component names across all degenerate members.
    pub fn member_component_names(&self) -> BTreeSet<String> {
        self.members
            .iter()
            .flatten()
            .map(|piece| piece.name.clone())
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Degree-3 condition battery
// ---------------------------------------------------------------------------

/// Status of one audited condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Untested,
}

/// One line of the battery report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionOutcome {
    pub id: String,
    pub status: CheckStatus,
    pub detail: String,
}

/// The full battery report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub conditions: Vec<ConditionOutcome>,
}

impl AuditReport {
    pub fn all_tested_pass(&self) -> bool {
        self.conditions
            .iter()
            .all(|c| c.status != CheckStatus::Fail)
    }

    pub fn failures(&self) -> Vec<&ConditionOutcome> {
        self.conditions
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .collect()
    }

    pub fn condition(&self, id: &str) -> Option<&ConditionOutcome> {
        self.conditions.iter().find(|c| c.id == id)
    }
}

/// The degree-3 necessary-condition battery over a pencil and boundary
/// certificate. Lattice-testable conditions get pass/fail; conditions
/// needing curve geometry beyond the intersection form are untested.
pub fn cubic_pencil_audit(
    pencil: &Pencil,
    cert: &Certificate,
) -> Result<AuditReport, CylinderError> {
    let n = pencil.lattice().n();
    if n != 6 {
        return Err(CylinderError::NotDegreeThree { n });
    }
    if cert.lattice().n() != 6 {
        return Err(CylinderError::NotDegreeThree {
            n: cert.lattice().n(),
        });
    }
    let lattice = pencil.lattice();
    let mut conditions = Vec::new();
    let untested = |id: &str, detail: &str| ConditionOutcome {
        id: id.to_string(),
        status: CheckStatus::Untested,
        detail: detail.to_string(),
    };
    let tested = |id: &str, ok: bool, detail: String| ConditionOutcome {
        id: id.to_string(),
        status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
        detail,
    };

    conditions.push(untested(
        "1",
        "position of the base point is geometric data outside the lattice model",
    ));
    conditions.push(untested(
        "2",
        "singularity type of the member curves is geometric data outside the lattice model",
    ));

    let member_count = pencil.members().len();
    conditions.push(tested(
        "3a",
        member_count == 2,
        format!("degenerate member count {member_count} (want exactly 2)"),
    ));

    let names = pencil.member_component_names();
    conditions.push(tested(
        "3b",
        names.len() == 8,
        format!("distinct components across members: {} (want 8)", names.len()),
    ));

    let mut unflagged: Vec<String> = names
        .iter()
        .filter(|name| !pencil.base_point_flags().get(*name).copied().unwrap_or(false))
        .cloned()
        .collect();
    unflagged.sort();
    conditions.push(tested(
        "4a",
        unflagged.is_empty(),
        if unflagged.is_empty() {
            "every member component is flagged through the base point".to_string()
        } else {
            format!("components not flagged through the base point: {unflagged:?}")
        },
    ));
    conditions.push(untested(
        "4b",
        "disjointness of components away from the base point is geometric",
    ));

    match pencil.lines_through_base() {
        None => conditions.push(untested(
            "5",
            "no declared list of (-1)-classes through the base point was supplied",
        )),
        Some(lines) => {
            let component_classes: BTreeSet<&LatticeClass> =
                cert.components().iter().map(|c| &c.class).collect();
            let mut bad_shape = Vec::new();
            let mut missing = Vec::new();
            for class in lines {
                if !lattice.is_minus_one_class(class)? {
                    bad_shape.push(class.clone());
                } else if !component_classes.contains(class) {
                    missing.push(class.clone());
                }
            }
            let ok = bad_shape.is_empty() && missing.is_empty();
            let detail = if ok {
                format!(
                    "all {} declared (-1)-classes through the base point appear among the boundary components",
                    lines.len()
                )
            } else {
                let mut parts = Vec::new();
                if !bad_shape.is_empty() {
                    parts.push(format!(
                        "not (-1)-classes: {}",
                        render_classes(&bad_shape)
                    ));
                }
                if !missing.is_empty() {
                    parts.push(format!(
                        "missing from the boundary: {}",
                        render_classes(&missing)
                    ));
                }
                parts.join("; ")
            };
            conditions.push(tested("5", ok, detail));
        }
    }

    let bounds_ok = cert.coefficient_bounds_check();
    conditions.push(tested(
        "6",
        bounds_ok,
        if bounds_ok {
            "all boundary coefficients lie in (0, 1)".to_string()
        } else {
            "some boundary coefficient is 1 or larger".to_string()
        },
    ));

    conditions.push(untested(
        "7",
        "log-canonicity at the base point needs resolution data; test it via the crepant pullback when available",
    ));

    let not_pluri = pencil.not_pluri_anticanonical();
    conditions.push(tested(
        "8",
        not_pluri,
        match pencil.pluri_anticanonical_multiple() {
            None => "pencil class is not an integer multiple of -K".to_string(),
            Some(m) => format!("pencil class equals {m}·(-K)"),
        },
    ));

    Ok(AuditReport { conditions })
}

fn render_classes(classes: &[LatticeClass]) -> String {
    classes
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

// ---------------------------------------------------------------------------
// Common components across pencils
// ---------------------------------------------------------------------------

/// Intersection of the supports of a nonempty list of pencils, each given
/// as its set of component names.
pub fn ml_common_components(
    pencils: &[BTreeSet<String>],
) -> Result<BTreeSet<String>, CylinderError> {
    let (first, rest) = pencils.split_first().ok_or(CylinderError::EmptyPencilList)?;
    let mut common = first.clone();
    for pencil in rest {
        common = common.intersection(pencil).cloned().collect();
        if common.is_empty() {
            break;
        }
    }
    Ok(common)
}

fn check_dim(lattice: &Lattice, class: &LatticeClass) -> Result<(), CylinderError> {
    if class.n() != lattice.n() {
        return Err(CylinderError::Lattice(PicardError::DimensionMismatch {
            expected: lattice.dim(),
            got: class.coeffs().len(),
        }));
    }
    Ok(())
}
