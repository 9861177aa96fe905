//! Canonical-bundle-formula checks on P^n bases, the D_q vs D_π comparison
//! with type A/B verdicts, monodromy-constraint tables, the type-A group
//! classification with the symplectic-resolution filter, and Kuga–Satake
//! dimension bookkeeping.
//!
//! For an isotrivial fibration over P^n the formula K_X ~_Q π*(K_B + D_π)
//! reduces to the scalar identity Σ (1 − c_i)·deg D_i = n + 1, with c_i the
//! log canonical threshold over the generic point of the discriminant
//! component D_i. The moduli part is identically zero in the isotrivial
//! case; non-isotrivial checks are supported only through explicit
//! per-component coefficients, never inferred.

use serde::Serialize;
use thiserror::Error;

use crate::enumfib::{enumerate_configs, genus, is_type_a, to_cover, EnumError, FiberConfig};
use crate::groups::GroupSpec;
use crate::kodaira::{KodairaError, KodairaType};
use crate::rational::Rational;

#[derive(Debug, Error)]
pub enum CanonicalError {
    #[error("lct undefined for component of type {0} (infinite monodromy); supply an explicit coefficient")]
    LctUndefined(KodairaType),
    #[error("component {index} has no monodromy index; divisor comparison requires a finite m_i on every component")]
    MissingMonodromyIndex { index: usize },
    #[error("invalid discriminant model: {0}")]
    InvalidModel(String),
    #[error("base dimension {0} too small: Hilbert-scheme lifts need n >= 2")]
    BaseDimTooSmall(u32),
    #[error("transcendental dimension {0} too small: Kuga-Satake partners need t >= 2")]
    TranscendentalDimTooSmall(u32),
    #[error("group {0} is outside the classified candidate list")]
    NotClassified(GroupSpec),
    #[error(transparent)]
    Kodaira(#[from] KodairaError),
    #[error(transparent)]
    Enum(#[from] EnumError),
}

/// Where a discriminant component's coefficient 1 − c comes from: a Kodaira
/// fiber type (coefficient 1 − lct from the fiber table) or an explicit
/// rational in [0, 1].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CoefficientSource {
    Fiber(KodairaType),
    Explicit(Rational),
}

/// One weighted component of the discriminant divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub source: CoefficientSource,
    pub degree: u32,
    /// Local monodromy index m_i; defaults to the fiber type's monodromy
    /// order, must be supplied for explicit components used in divisor
    /// comparisons.
    pub monodromy_index: Option<u32>,
}

impl Component {
    pub fn fiber(t: KodairaType, degree: u32) -> Self {
        Component {
            source: CoefficientSource::Fiber(t),
            degree,
            monodromy_index: t.monodromy_order().finite(),
        }
    }

    pub fn explicit(coefficient: Rational, degree: u32, monodromy_index: Option<u32>) -> Self {
        Component {
            source: CoefficientSource::Explicit(coefficient),
            degree,
            monodromy_index,
        }
    }

    /// The coefficient 1 − c of this component in D_π.
    pub fn discriminant_coefficient(&self) -> Result<Rational, CanonicalError> {
        match &self.source {
            CoefficientSource::Fiber(t) => {
                let c = t.lct().map_err(|_| CanonicalError::LctUndefined(*t))?;
                Ok(Rational::one() - &c)
            }
            CoefficientSource::Explicit(coeff) => Ok(coeff.clone()),
        }
    }
}

/// A base dimension n with weighted discriminant components.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantModel {
    pub base_dim: u32,
    pub components: Vec<Component>,
}

impl DiscriminantModel {
    pub fn new(base_dim: u32, components: Vec<Component>) -> Result<Self, CanonicalError> {
        if base_dim < 1 {
            return Err(CanonicalError::InvalidModel(
                "base dimension must be >= 1".into(),
            ));
        }
        for (i, comp) in components.iter().enumerate() {
            if comp.degree == 0 {
                return Err(CanonicalError::InvalidModel(format!(
                    "component {i} has degree 0"
                )));
            }
            if let CoefficientSource::Explicit(c) = &comp.source {
                if c.is_negative() || c > &Rational::one() {
                    return Err(CanonicalError::InvalidModel(format!(
                        "component {i} coefficient {c} outside [0, 1]"
                    )));
                }
            }
        }
        Ok(DiscriminantModel {
            base_dim,
            components,
        })
    }

    /// The n = 1 model of a K3 fiber configuration: one degree-1 component
    /// per singular fiber.
    pub fn from_fiber_config(cfg: &FiberConfig) -> Self {
        let mut components = Vec::new();
        for &(t, c) in cfg.counts() {
            for _ in 0..c {
                components.push(Component::fiber(t, 1));
            }
        }
        DiscriminantModel {
            base_dim: 1,
            components,
        }
    }
}

/// Residual (n + 1) − Σ (1 − c_i)·deg_i of the canonical bundle formula;
/// the formula holds iff the residual is zero.
pub fn check_canonical_bundle(model: &DiscriminantModel) -> Result<Rational, CanonicalError> {
    let mut sum = Rational::zero();
    for comp in &model.components {
        let coeff = comp.discriminant_coefficient()?;
        sum += &(coeff * Rational::from_integer(comp.degree as i64));
    }
    Ok(Rational::from_integer(model.base_dim as i64 + 1) - &sum)
}

/// Per-component comparison of the quotient coefficient 1 − 1/m_i against
/// the discriminant coefficient 1 − c_i.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentComparison {
    pub quotient_coefficient: Rational,
    pub discriminant_coefficient: Rational,
    pub equal: bool,
}

/// Type A: the intermediate base compactifies to an abelian torsor.
/// Type B: it compactifies to a variety of general type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FibrationType {
    A,
    B,
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisorComparison {
    pub per_component: Vec<ComponentComparison>,
    pub verdict: FibrationType,
}

/// Compare D_q = Σ (1 − 1/m_i) D_i against D_π = Σ (1 − c_i) D_i
/// componentwise. Verdict A iff they agree on every component. The
/// inequality D_q ≥ D_π holds componentwise for every fiber-table
/// coefficient; a violation means corrupted input and is reported as an
/// invalid model.
pub fn compare_divisors(model: &DiscriminantModel) -> Result<DivisorComparison, CanonicalError> {
    let mut per_component = Vec::with_capacity(model.components.len());
    let mut all_equal = true;
    for (index, comp) in model.components.iter().enumerate() {
        let m = comp
            .monodromy_index
            .ok_or(CanonicalError::MissingMonodromyIndex { index })?;
        let quotient = Rational::one() - &Rational::new(1, m as i64);
        let discriminant = comp.discriminant_coefficient()?;
        if quotient < discriminant {
            return Err(CanonicalError::InvalidModel(format!(
                "component {index}: 1 - 1/m = {quotient} < 1 - c = {discriminant}"
            )));
        }
        let equal = quotient == discriminant;
        all_equal &= equal;
        per_component.push(ComponentComparison {
            quotient_coefficient: quotient,
            discriminant_coefficient: discriminant,
            equal,
        });
    }
    Ok(DivisorComparison {
        per_component,
        verdict: if all_equal {
            FibrationType::A
        } else {
            FibrationType::B
        },
    })
}

/// Degree of the reduced discriminant divisor when every component is I0*:
/// (n + 1) = (1/2)·deg forces deg = 2(n + 1).
pub fn discriminant_degree_all_i0star(n: u32) -> u32 {
    2 * (n + 1)
}

/// Lift a K3 configuration to the Hilbert-scheme model on P^n: one degree-1
/// component per singular fiber plus the big-diagonal component of type I0*
/// and degree 2(n − 1).
pub fn lift_k3_to_hilb(cfg: &FiberConfig, n: u32) -> Result<DiscriminantModel, CanonicalError> {
    if n < 2 {
        return Err(CanonicalError::BaseDimTooSmall(n));
    }
    let mut components = Vec::new();
    for &(t, c) in cfg.counts() {
        for _ in 0..c {
            components.push(Component::fiber(t, 1));
        }
    }
    components.push(Component::fiber(KodairaType::I0Star, 2 * (n - 1)));
    DiscriminantModel::new(n, components)
}

/// The j-invariant class of the fixed elliptic fiber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum JClass {
    J0,
    J1728,
    Generic,
}

/// Possible global monodromy group orders of an isotrivial elliptic K3
/// fibration per j-invariant class.
pub fn allowed_global_monodromy(j: JClass) -> Vec<u32> {
    match j {
        JClass::J0 => vec![2, 3, 6],
        JClass::J1728 => vec![2, 4],
        JClass::Generic => vec![2],
    }
}

/// Endomorphism field of the elliptic factor E.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EndomorphismClass {
    /// End(E) = Q (no CM).
    Q,
    /// CM by a field other than Q(i) and Q(√−3).
    CmOther,
    /// CM by the Gaussian field Q(i).
    CmGauss,
    /// CM by the Eisenstein field Q(√−3).
    CmEisenstein,
}

/// Possible local monodromy indices m_i per endomorphism class: subgroup
/// orders ≥ 2 of Aut_0 of the elliptic factor.
pub fn allowed_local_monodromy(endo: EndomorphismClass) -> Vec<u32> {
    match endo {
        EndomorphismClass::Q | EndomorphismClass::CmOther => vec![2],
        EndomorphismClass::CmGauss => vec![2, 4],
        EndomorphismClass::CmEisenstein => vec![2, 3, 6],
    }
}

/// Candidate groups for type-A fibrations of a hyper-Kähler 2n-fold:
/// S_{n+1} (standard representation), μ_m ≀ S_n for m ∈ {2, 3, 4, 6}, plus
/// the Pauli group when n = 2. For n = 1 the wreath candidates degenerate to
/// Wreath(m, 1) = Cyclic(m) and S_2 = Cyclic(2); the list is deduplicated to
/// the four cyclic groups.
pub fn type_a_groups(n: u32) -> Result<Vec<GroupSpec>, CanonicalError> {
    if n < 1 {
        return Err(CanonicalError::InvalidModel("need n >= 1".into()));
    }
    if n == 1 {
        return Ok(vec![
            GroupSpec::Cyclic(2),
            GroupSpec::Cyclic(3),
            GroupSpec::Cyclic(4),
            GroupSpec::Cyclic(6),
        ]);
    }
    let mut out = vec![
        GroupSpec::Symmetric(n + 1),
        GroupSpec::Wreath(2, n),
        GroupSpec::Wreath(3, n),
        GroupSpec::Wreath(4, n),
        GroupSpec::Wreath(6, n),
    ];
    if n == 2 {
        out.push(GroupSpec::Pauli);
    }
    Ok(out)
}

/// Whether the quotient singularity (V ⊕ V^∨)/G admits a symplectic
/// resolution: true for the wreath-shaped candidates (μ_m^{×n} ⋊ S_n,
/// including S_{n+1} through the ambient-power model and the degenerate
/// cyclic cases), false for the Pauli group.
pub fn admits_symplectic_resolution(spec: &GroupSpec) -> Result<bool, CanonicalError> {
    match spec {
        GroupSpec::Symmetric(_) | GroupSpec::Wreath(..) | GroupSpec::Cyclic(_) => Ok(true),
        GroupSpec::Pauli => Ok(false),
        GroupSpec::AbelianProduct(..) => Err(CanonicalError::NotClassified(*spec)),
    }
}

/// Which straightforward family a classified group realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FibrationFamily {
    /// Hilbert scheme of an isotrivial elliptic K3 surface.
    K3Hilb,
    /// Generalized Kummer fibration of an abelian surface.
    Kummer,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationVerdict {
    pub group: GroupSpec,
    pub admitted: bool,
    pub family: Option<FibrationFamily>,
    pub exclusion_reason: Option<String>,
}

/// The type-A candidates for base dimension n ≥ 2, each labeled by the
/// family it realizes or excluded by the symplectic-resolution filter (the
/// Pauli group appears in the candidate list and is then excluded).
pub fn classify_type_a(n: u32) -> Result<Vec<ClassificationVerdict>, CanonicalError> {
    if n < 2 {
        return Err(CanonicalError::BaseDimTooSmall(n));
    }
    let mut verdicts = Vec::new();
    for group in type_a_groups(n)? {
        let admitted = admits_symplectic_resolution(&group)?;
        let family = if !admitted {
            None
        } else if matches!(group, GroupSpec::Symmetric(_)) {
            Some(FibrationFamily::Kummer)
        } else {
            Some(FibrationFamily::K3Hilb)
        };
        verdicts.push(ClassificationVerdict {
            group,
            admitted,
            family,
            exclusion_reason: (!admitted).then(|| "no symplectic resolution".to_string()),
        });
    }
    Ok(verdicts)
}

/// Possible dimensions of the simple Kuga–Satake partner of a K3-type Hodge
/// structure of dimension t: {2^r, 2^{r+1}} for t = 2r + 1 odd,
/// {2^{r−1}, 2^r} for t = 2r even.
pub fn ks_partner_dims(t_dim: u32) -> Result<Vec<u64>, CanonicalError> {
    if t_dim < 2 {
        return Err(CanonicalError::TranscendentalDimTooSmall(t_dim));
    }
    let r = (t_dim / 2) as u64;
    if t_dim % 2 == 1 {
        Ok(vec![1u64 << r, 1u64 << (r + 1)])
    } else {
        Ok(vec![1u64 << (r - 1), 1u64 << r])
    }
}

/// Transcendental dimensions t ≥ 3 whose Kuga–Satake partner can be
/// 2-dimensional, i.e. admit an elliptic-curve partner (t = 2 is excluded:
/// a 2-dimensional K3-type structure is necessarily CM).
pub fn admissible_transcendental_dims() -> Vec<u32> {
    (3..=64)
        .filter(|&t| {
            ks_partner_dims(t)
                .map(|dims| dims.contains(&2))
                .unwrap_or(false)
        })
        .collect()
}

/// All K3 configurations across the four group orders, in table order.
pub fn all_k3_configs() -> Vec<FiberConfig> {
    let mut out = Vec::new();
    for d in [2u32, 3, 4, 6] {
        out.extend(enumerate_configs(d, 24).expect("valid orders"));
    }
    out
}

/// Cross-module check: the divisor-comparison verdict on the n = 1 model of
/// a configuration agrees with the star-type predicate, and both agree with
/// the per-component genus-1 criterion.
pub fn config_verdict_consistent(cfg: &FiberConfig) -> Result<bool, CanonicalError> {
    let model = DiscriminantModel::from_fiber_config(cfg);
    let verdict = compare_divisors(&model)?.verdict;
    let star = is_type_a(cfg);
    let genus_one = genus(&to_cover(cfg))? == 1;
    Ok((verdict == FibrationType::A) == star && star == genus_one)
}
