//! Exact character calculus for the monodromy-representation checks.
//!
//! Exterior-power characters are computed from power sums via Newton's
//! identities, e_k = (1/k)·Σ_{j=1..k} (−1)^{j−1} e_{k−j} p_j with
//! p_j = χ(g^j), so eigenvalues are never materialized and no matrix is ever
//! diagonalized. Division by k happens in exact rationals; intermediate
//! values need not be presented as algebraic integers, but every final
//! multiplicity must be a nonnegative rational integer — a non-integral
//! inner product is a hard failure, never a warning.
//!
//! Inner products iterate all group elements rather than conjugacy classes;
//! at the shipped sizes (≤ a few 10^4 elements) the exact O(|G|) sums are
//! fast, and a class-sum rewrite remains available behind this interface if
//! larger groups ever need it. Sums are associative/commutative reductions
//! of exact values, so the parallel path is bit-identical to the sequential
//! one.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::Cyclotomic;
use crate::groups::{self, Group, GroupError, GroupSpec};
use crate::rational::Rational;
use crate::DEFAULT_CONDUCTOR;

/// Element count above which inner products use the parallel reduction.
const PARALLEL_THRESHOLD: usize = 4096;

#[derive(Debug, Error)]
pub enum RepcheckError {
    #[error("non-integral multiplicity over {spec}: {detail} (this signals a bug in group or character construction)")]
    NonIntegralMultiplicity { spec: GroupSpec, detail: String },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A class function on a group, stored as one cyclotomic value per element
/// in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    spec: GroupSpec,
    values: Vec<Cyclotomic>,
}

impl Character {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    /// Pointwise complex conjugate (the character of the dual module).
    pub fn conjugate(&self) -> Character {
        Character {
            spec: self.spec,
            values: self.values.iter().map(Cyclotomic::conjugate).collect(),
        }
    }

    /// Pointwise product (the character of the tensor product).
    pub fn pointwise_mul(&self, rhs: &Character) -> Character {
        assert_eq!(self.spec, rhs.spec, "characters over different groups");
        let values = self
            .values
            .iter()
            .zip(&rhs.values)
            .map(|(a, b)| a.mul(b).expect("single conductor"))
            .collect();
        Character {
            spec: self.spec,
            values,
        }
    }
}

/// Character of the natural representation, evaluated on every element.
pub fn natural_character(group: &Group) -> Character {
    let values = group
        .elements()
        .iter()
        .map(|g| groups::natural_character(group.spec(), g).expect("enumerated element"))
        .collect();
    Character {
        spec: *group.spec(),
        values,
    }
}

/// The trivial character (all values 1).
pub fn trivial_character(group: &Group) -> Character {
    Character {
        spec: *group.spec(),
        values: vec![Cyclotomic::one(DEFAULT_CONDUCTOR); group.order()],
    }
}

/// Characters of ∧^k V for k = 0..=max_k, via Newton's identities over the
/// power sums p_j = χ(g^j). Total in k: beyond the degree the elementary
/// symmetric functions vanish identically.
pub fn exterior_powers(group: &Group, chi: &Character, max_k: usize) -> Vec<Character> {
    assert_eq!(group.spec(), chi.spec(), "character over a different group");
    let order = group.order();
    let one = Cyclotomic::one(DEFAULT_CONDUCTOR);

    // wedge_values[k][i] = (∧^k χ)(g_i)
    let mut wedge_values: Vec<Vec<Cyclotomic>> = Vec::with_capacity(max_k + 1);
    wedge_values.push(vec![one; order]);
    if max_k == 0 {
        return assemble(group, wedge_values);
    }

    let columns: Vec<Vec<Cyclotomic>> = (0..order)
        .into_par_iter()
        .map(|i| {
            // power sums p_1..p_max_k at element i, walking the power chain
            let mut power_sums = Vec::with_capacity(max_k);
            let mut idx = i;
            power_sums.push(chi.values[idx].clone());
            for _ in 2..=max_k {
                idx = group.multiply_indices(idx, i);
                power_sums.push(chi.values[idx].clone());
            }
            // Newton: e_k = (1/k) * sum_{j=1..k} (-1)^{j-1} e_{k-j} p_j
            let mut e = Vec::with_capacity(max_k + 1);
            e.push(Cyclotomic::one(DEFAULT_CONDUCTOR));
            for k in 1..=max_k {
                let mut acc = Cyclotomic::zero(DEFAULT_CONDUCTOR);
                for j in 1..=k {
                    let term = e[k - j].mul(&power_sums[j - 1]).expect("single conductor");
                    acc = if j % 2 == 1 {
                        acc.add(&term).expect("single conductor")
                    } else {
                        acc.sub(&term).expect("single conductor")
                    };
                }
                e.push(acc.scale(&Rational::new(1, k as i64)));
            }
            e
        })
        .collect();

    for k in 1..=max_k {
        wedge_values.push(columns.iter().map(|e| e[k].clone()).collect());
    }
    assemble(group, wedge_values)
}

fn assemble(group: &Group, wedge_values: Vec<Vec<Cyclotomic>>) -> Vec<Character> {
    wedge_values
        .into_iter()
        .map(|values| Character {
            spec: *group.spec(),
            values,
        })
        .collect()
}

/// Character of ∧^k V for a single k.
pub fn exterior_power_character(group: &Group, chi: &Character, k: usize) -> Character {
    exterior_powers(group, chi, k)
        .pop()
        .expect("max_k + 1 characters")
}

fn integral_multiplicity(
    group: &Group,
    sum: Cyclotomic,
    context: &str,
) -> Result<u64, RepcheckError> {
    let spec = *group.spec();
    let averaged = sum.scale(&Rational::new(1, group.order() as i64));
    let value = averaged
        .as_rational()
        .map_err(|e| RepcheckError::NonIntegralMultiplicity {
            spec,
            detail: format!("{context}: {e}"),
        })?;
    if !value.is_integer() || value.is_negative() {
        return Err(RepcheckError::NonIntegralMultiplicity {
            spec,
            detail: format!("{context}: value {value} is not a nonnegative integer"),
        });
    }
    Ok(value.to_integer().expect("small multiplicity") as u64)
}

/// ⟨χ1, χ2⟩ = (1/|G|)·Σ_g χ1(g)·conj(χ2(g)), sequential reduction.
pub fn inner_product_sequential(
    group: &Group,
    a: &Character,
    b: &Character,
) -> Result<u64, RepcheckError> {
    assert_eq!(a.spec(), b.spec(), "inner product across different groups");
    let mut sum = Cyclotomic::zero(DEFAULT_CONDUCTOR);
    for (x, y) in a.values.iter().zip(&b.values) {
        let term = x.mul(&y.conjugate()).expect("single conductor");
        sum = sum.add(&term).expect("single conductor");
    }
    integral_multiplicity(group, sum, "inner product")
}

/// ⟨χ1, χ2⟩ with a rayon parallel reduction; exact arithmetic makes the
/// result bit-identical to the sequential sum.
pub fn inner_product_parallel(
    group: &Group,
    a: &Character,
    b: &Character,
) -> Result<u64, RepcheckError> {
    assert_eq!(a.spec(), b.spec(), "inner product across different groups");
    let sum = a
        .values
        .par_iter()
        .zip(b.values.par_iter())
        .map(|(x, y)| x.mul(&y.conjugate()).expect("single conductor"))
        .reduce(
            || Cyclotomic::zero(DEFAULT_CONDUCTOR),
            |x, y| x.add(&y).expect("single conductor"),
        );
    integral_multiplicity(group, sum, "inner product")
}

/// ⟨χ1, χ2⟩, choosing the parallel reduction for large groups.
pub fn inner_product(group: &Group, a: &Character, b: &Character) -> Result<u64, RepcheckError> {
    if group.order() >= PARALLEL_THRESHOLD {
        inner_product_parallel(group, a, b)
    } else {
        inner_product_sequential(group, a, b)
    }
}

/// A violation found by [`verify_fiber_lemma`].
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FiberLemmaViolation {
    /// Which check failed: "simplicity", "pairwise", or "wedge2-invariants".
    pub check: String,
    pub p: usize,
    pub q: usize,
    pub value: u64,
}

/// One off-diagonal multiplicity ⟨∧^p χ, ∧^q χ⟩.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PairwiseEntry {
    pub p: usize,
    pub q: usize,
    pub value: u64,
}

/// Result of the exterior-power character checks for one group.
#[derive(Clone, Debug, Serialize)]
pub struct FiberLemmaReport {
    pub spec: GroupSpec,
    pub dim: usize,
    /// ⟨∧^k χ, ∧^k χ⟩ for k = 0..=n; simple iff 1.
    pub norms: Vec<u64>,
    /// ⟨∧^p χ, ∧^q χ⟩ for p < q; mutually non-isomorphic iff all 0.
    pub pairwise: Vec<PairwiseEntry>,
    /// dim (∧²V)^G = ⟨∧²χ, trivial⟩, for n ≥ 2.
    pub wedge2_invariant_dim: Option<u64>,
    pub pass: bool,
    pub first_violation: Option<FiberLemmaViolation>,
}

/// Check that ∧^k V for k = 0..n are mutually non-isomorphic simple modules
/// and that (∧²V)^G = 0 for n ≥ 2.
pub fn verify_fiber_lemma(spec: &GroupSpec) -> Result<FiberLemmaReport, RepcheckError> {
    verify_fiber_lemma_on(&Group::new(*spec)?)
}

/// [`verify_fiber_lemma`] on an already-materialized group (callers that
/// override the order cap build the group themselves).
pub fn verify_fiber_lemma_on(group: &Group) -> Result<FiberLemmaReport, RepcheckError> {
    let spec = group.spec();
    let n = spec.rep_dim();
    let chi = natural_character(group);
    let wedges = exterior_powers(group, &chi, n);

    let mut violations: Vec<FiberLemmaViolation> = Vec::new();
    let mut norms = Vec::with_capacity(n + 1);
    for (k, wedge) in wedges.iter().enumerate() {
        let norm = inner_product(group, wedge, wedge)?;
        if norm != 1 {
            violations.push(FiberLemmaViolation {
                check: "simplicity".into(),
                p: k,
                q: k,
                value: norm,
            });
        }
        norms.push(norm);
    }
    let mut pairwise = Vec::new();
    for p in 0..=n {
        for q in (p + 1)..=n {
            let value = inner_product(group, &wedges[p], &wedges[q])?;
            if value != 0 {
                violations.push(FiberLemmaViolation {
                    check: "pairwise".into(),
                    p,
                    q,
                    value,
                });
            }
            pairwise.push(PairwiseEntry { p, q, value });
        }
    }
    let wedge2_invariant_dim = if n >= 2 {
        let dim = inner_product(group, &wedges[2], &trivial_character(group))?;
        if dim != 0 {
            violations.push(FiberLemmaViolation {
                check: "wedge2-invariants".into(),
                p: 2,
                q: 2,
                value: dim,
            });
        }
        Some(dim)
    } else {
        None
    };

    // first violation in scan order: norms by k, then pairs, then wedge2
    violations.sort_by_key(|v| {
        let class = match v.check.as_str() {
            "simplicity" => 0,
            "pairwise" => 1,
            _ => 2,
        };
        (class, v.p, v.q)
    });
    let first_violation = violations.first().cloned();
    Ok(FiberLemmaReport {
        spec: *spec,
        dim: n,
        norms,
        pairwise,
        wedge2_invariant_dim,
        pass: first_violation.is_none(),
        first_violation,
    })
}

/// The G-invariant Hodge diamond of the fiber: entry (p, q) is
/// dim (∧^p V ⊗ ∧^q V̄)^G = ⟨∧^p χ · conj(∧^q χ), trivial⟩.
pub fn invariant_hodge_diamond(spec: &GroupSpec) -> Result<Vec<Vec<u64>>, RepcheckError> {
    invariant_hodge_diamond_on(&Group::new(*spec)?)
}

/// [`invariant_hodge_diamond`] on an already-materialized group.
pub fn invariant_hodge_diamond_on(group: &Group) -> Result<Vec<Vec<u64>>, RepcheckError> {
    let n = group.spec().rep_dim();
    let chi = natural_character(group);
    let wedges = exterior_powers(group, &chi, n);
    let trivial = trivial_character(group);
    let mut diamond = vec![vec![0u64; n + 1]; n + 1];
    for p in 0..=n {
        for (q, row_wedge) in wedges.iter().enumerate() {
            let product = wedges[p].pointwise_mul(&row_wedge.conjugate());
            diamond[p][q] = inner_product(group, &product, &trivial)?;
        }
    }
    Ok(diamond)
}

/// Dimensions of the G-invariant cohomology by total degree: entry k is
/// Σ_{p+q=k} diamond(p, q). Expected pattern (1, 0, 1, 0, …, 1).
pub fn invariant_cohomology_profile(spec: &GroupSpec) -> Result<Vec<u64>, RepcheckError> {
    profile_from_diamond(spec.rep_dim(), &invariant_hodge_diamond(spec)?)
}

/// [`invariant_cohomology_profile`] from a precomputed diamond.
pub fn profile_from_diamond(n: usize, diamond: &[Vec<u64>]) -> Result<Vec<u64>, RepcheckError> {
    let mut profile = vec![0u64; 2 * n + 1];
    for (p, row) in diamond.iter().enumerate() {
        for (q, &v) in row.iter().enumerate() {
            profile[p + q] += v;
        }
    }
    Ok(profile)
}

/// Hom_G(∧^p V, ∧^q V) dimensions, computed as the direct inner products
/// ⟨∧^p χ, ∧^q χ⟩ (a distinct code path from the diamond). Expected δ_pq
/// when the base has the same invariant cohomology as the fiber.
pub fn base_compatibility(spec: &GroupSpec) -> Result<Vec<Vec<u64>>, RepcheckError> {
    base_compatibility_on(&Group::new(*spec)?)
}

/// [`base_compatibility`] on an already-materialized group.
pub fn base_compatibility_on(group: &Group) -> Result<Vec<Vec<u64>>, RepcheckError> {
    let n = group.spec().rep_dim();
    let chi = natural_character(group);
    let wedges = exterior_powers(group, &chi, n);
    let mut matrix = vec![vec![0u64; n + 1]; n + 1];
    for p in 0..=n {
        for (q, wedge_q) in wedges.iter().enumerate() {
            matrix[p][q] = inner_product(group, &wedges[p], wedge_q)?;
        }
    }
    Ok(matrix)
}
