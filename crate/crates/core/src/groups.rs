//! Concrete models of the candidate monodromy groups and their natural
//! representations V = H^{1,0}(F).
//!
//! Shipped groups: symmetric groups S_{n+1} in the standard representation,
//! wreath products μ_m ≀ S_n = μ_m^{×n} ⋊ S_n in the natural monomial
//! representation, the Pauli group (16 monomial 2×2 matrices over the
//! Gaussian integers), cyclic groups μ_m, and abelian products μ_m^{×n} as
//! negative controls. Elements of the monomial groups are pairs
//! (phases, perm) with the semidirect law
//! (φ, σ)(ψ, τ) = (φ + σ·ψ, στ), (σ·ψ)_i = ψ_{σ⁻¹(i)}; the matrix of (φ, σ)
//! places ζ_m^{φ_{σ(i)}} at entry (σ(i), i), which makes the assignment a
//! homomorphism for that law.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cyclotomic::Cyclotomic;
use crate::DEFAULT_CONDUCTOR;

/// Default cap on the order of groups the toolkit will materialize.
pub const DEFAULT_ORDER_CAP: u64 = 2_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group too large: order {order} exceeds cap {cap}")]
    GroupTooLarge { order: u64, cap: u64 },
    #[error("invalid group parameter: {0}")]
    InvalidSpec(String),
    #[error("element does not belong to group {spec}: {reason}")]
    SpecMismatch { spec: GroupSpec, reason: String },
    #[error("cannot parse group spec {0:?}: expected sym:K, wreath:M:N, pauli, cyclic:M, or abelian:M:N")]
    ParseError(String),
}

/// A candidate monodromy group together with its natural representation
/// dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    /// S_k acting through the standard (k−1)-dimensional representation.
    Symmetric(u32),
    /// μ_m ≀ S_n in the natural monomial representation; m ∈ {2, 3, 4, 6}.
    Wreath(u32, u32),
    /// The non-abelian order-16 group of monomial 2×2 matrices over the Gaussian integers.
    Pauli,
    /// μ_m acting by its character on a line; m ∈ {2, 3, 4, 6}.
    Cyclic(u32),
    /// μ_m^{×n} acting diagonally; reducible for n ≥ 2 (negative control).
    AbelianProduct(u32, u32),
}

impl GroupSpec {
    pub fn validate(&self) -> Result<(), GroupError> {
        let valid_m = |m: u32| [2, 3, 4, 6].contains(&m);
        match *self {
            GroupSpec::Symmetric(k) if k >= 2 => Ok(()),
            GroupSpec::Symmetric(k) => {
                Err(GroupError::InvalidSpec(format!("sym:{k}: need k >= 2")))
            }
            GroupSpec::Wreath(m, n) | GroupSpec::AbelianProduct(m, n) => {
                if !valid_m(m) {
                    Err(GroupError::InvalidSpec(format!(
                        "root-of-unity order {m} not in {{2,3,4,6}}"
                    )))
                } else if n == 0 {
                    Err(GroupError::InvalidSpec("need n >= 1".into()))
                } else {
                    Ok(())
                }
            }
            GroupSpec::Cyclic(m) => {
                if valid_m(m) {
                    Ok(())
                } else {
                    Err(GroupError::InvalidSpec(format!(
                        "root-of-unity order {m} not in {{2,3,4,6}}"
                    )))
                }
            }
            GroupSpec::Pauli => Ok(()),
        }
    }

    /// Dimension n of the natural representation V.
    pub fn rep_dim(&self) -> usize {
        match *self {
            GroupSpec::Symmetric(k) => k as usize - 1,
            GroupSpec::Wreath(_, n) | GroupSpec::AbelianProduct(_, n) => n as usize,
            GroupSpec::Pauli => 2,
            GroupSpec::Cyclic(_) => 1,
        }
    }

    /// Group order from the closed formula (no enumeration).
    pub fn order(&self) -> u64 {
        fn factorial(k: u32) -> u64 {
            (2..=k as u64)
                .try_fold(1u64, u64::checked_mul)
                .unwrap_or(u64::MAX)
        }
        fn pow(m: u32, n: u32) -> u64 {
            (0..n)
                .try_fold(1u64, |acc, _| acc.checked_mul(m as u64))
                .unwrap_or(u64::MAX)
        }
        match *self {
            GroupSpec::Symmetric(k) => factorial(k),
            GroupSpec::Wreath(m, n) => pow(m, n).saturating_mul(factorial(n)),
            GroupSpec::Pauli => 16,
            GroupSpec::Cyclic(m) => m as u64,
            GroupSpec::AbelianProduct(m, n) => pow(m, n),
        }
    }

    /// Order of the phase group: m for the monomial families, 1 for
    /// symmetric groups (pure permutations).
    fn phase_modulus(&self) -> u32 {
        match *self {
            GroupSpec::Symmetric(_) => 1,
            GroupSpec::Wreath(m, _) | GroupSpec::AbelianProduct(m, _) | GroupSpec::Cyclic(m) => m,
            GroupSpec::Pauli => 4,
        }
    }

    /// Number of points the permutation part acts on.
    fn points(&self) -> usize {
        match *self {
            GroupSpec::Symmetric(k) => k as usize,
            GroupSpec::Wreath(_, n) | GroupSpec::AbelianProduct(_, n) => n as usize,
            GroupSpec::Cyclic(_) => 1,
            GroupSpec::Pauli => 2,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupSpec::Symmetric(k) => write!(f, "sym:{k}"),
            GroupSpec::Wreath(m, n) => write!(f, "wreath:{m}:{n}"),
            GroupSpec::Pauli => write!(f, "pauli"),
            GroupSpec::Cyclic(m) => write!(f, "cyclic:{m}"),
            GroupSpec::AbelianProduct(m, n) => write!(f, "abelian:{m}:{n}"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    /// CLI contract: "sym:4", "wreath:6:3", "pauli", "cyclic:6", "abelian:2:3".
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |p: &str| -> Result<u32, GroupError> {
            p.parse().map_err(|_| GroupError::ParseError(s.to_string()))
        };
        let spec = match parts.as_slice() {
            ["sym", k] => GroupSpec::Symmetric(num(k)?),
            ["wreath", m, n] => GroupSpec::Wreath(num(m)?, num(n)?),
            ["pauli"] => GroupSpec::Pauli,
            ["cyclic", m] => GroupSpec::Cyclic(num(m)?),
            ["abelian", m, n] => GroupSpec::AbelianProduct(num(m)?, num(n)?),
            _ => return Err(GroupError::ParseError(s.to_string())),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A group element: a monomial pair (phases, perm), or an explicit 2×2
/// matrix over Q(ζ_12) for the Pauli group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Monomial { phases: Vec<u8>, perm: Vec<u8> },
    Matrix(Box<[[Cyclotomic; 2]; 2]>),
}

impl GroupElement {
    fn monomial(phases: Vec<u8>, perm: Vec<u8>) -> Self {
        GroupElement::Monomial { phases, perm }
    }
}

fn inverse_perm(perm: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p as usize] = i as u8;
    }
    inv
}

/// The identity element of the group.
pub fn identity(spec: &GroupSpec) -> GroupElement {
    match spec {
        GroupSpec::Pauli => {
            let one = Cyclotomic::one(DEFAULT_CONDUCTOR);
            let zero = Cyclotomic::zero(DEFAULT_CONDUCTOR);
            GroupElement::Matrix(Box::new([[one.clone(), zero.clone()], [zero, one]]))
        }
        _ => {
            let pts = spec.points();
            GroupElement::monomial(vec![0; pts], (0..pts as u8).collect())
        }
    }
}

fn check_element(spec: &GroupSpec, g: &GroupElement) -> Result<(), GroupError> {
    let mismatch = |reason: &str| GroupError::SpecMismatch {
        spec: *spec,
        reason: reason.into(),
    };
    match (spec, g) {
        (GroupSpec::Pauli, GroupElement::Matrix(m)) => {
            // members are monomial with entries i^a, i^b whose exponents
            // agree mod 2 (diagonal and antidiagonal alike)
            let exponent_of = |c: &Cyclotomic| -> Option<u32> {
                (0..4).find(|&k| *c == Cyclotomic::root_of_unity(DEFAULT_CONDUCTOR, 3 * k as i64))
            };
            let (x, y, off_a, off_b) = if m[0][1].is_zero() && m[1][0].is_zero() {
                (&m[0][0], &m[1][1], &m[0][1], &m[1][0])
            } else {
                (&m[0][1], &m[1][0], &m[0][0], &m[1][1])
            };
            if !off_a.is_zero() || !off_b.is_zero() {
                return Err(mismatch("matrix is not monomial"));
            }
            match (exponent_of(x), exponent_of(y)) {
                (Some(a), Some(b)) if (a + b) % 2 == 0 => Ok(()),
                _ => Err(mismatch("matrix is not in the order-16 monomial group")),
            }
        }
        (GroupSpec::Pauli, _) => Err(mismatch("expected a matrix element")),
        (_, GroupElement::Matrix(_)) => Err(mismatch("expected a monomial element")),
        (_, GroupElement::Monomial { phases, perm }) => {
            let pts = spec.points();
            let m = spec.phase_modulus();
            if perm.len() != pts || phases.len() != pts {
                return Err(mismatch("wrong number of points"));
            }
            let mut seen = vec![false; pts];
            for &p in perm {
                if (p as usize) >= pts || seen[p as usize] {
                    return Err(mismatch("not a permutation"));
                }
                seen[p as usize] = true;
            }
            if phases.iter().any(|&p| p as u32 >= m) {
                return Err(mismatch("phase out of range"));
            }
            if matches!(spec, GroupSpec::AbelianProduct(..) | GroupSpec::Cyclic(_)) {
                let id: Vec<u8> = (0..pts as u8).collect();
                if perm != &id {
                    return Err(mismatch("abelian element with nontrivial permutation"));
                }
            }
            Ok(())
        }
    }
}

fn pauli_mat_mul(a: &[[Cyclotomic; 2]; 2], b: &[[Cyclotomic; 2]; 2]) -> [[Cyclotomic; 2]; 2] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = Cyclotomic::zero(DEFAULT_CONDUCTOR);
            for k in 0..2 {
                let term = a[i][k].mul(&b[k][j]).expect("fixed conductor");
                acc = acc.add(&term).expect("fixed conductor");
            }
            acc
        })
    })
}

/// Group law. For the monomial families this is the semidirect-product law
/// (φ, σ)(ψ, τ) = (φ + σ·ψ, στ) with (σ·ψ)_i = ψ_{σ⁻¹(i)}; for the Pauli
/// group it is the matrix product.
pub fn multiply(
    spec: &GroupSpec,
    g: &GroupElement,
    h: &GroupElement,
) -> Result<GroupElement, GroupError> {
    check_element(spec, g)?;
    check_element(spec, h)?;
    match (g, h) {
        (GroupElement::Matrix(a), GroupElement::Matrix(b)) => {
            Ok(GroupElement::Matrix(Box::new(pauli_mat_mul(a, b))))
        }
        (
            GroupElement::Monomial {
                phases: phi,
                perm: sigma,
            },
            GroupElement::Monomial {
                phases: psi,
                perm: tau,
            },
        ) => {
            let m = spec.phase_modulus() as u16;
            let sigma_inv = inverse_perm(sigma);
            let perm: Vec<u8> = tau.iter().map(|&i| sigma[i as usize]).collect();
            let phases: Vec<u8> = (0..sigma.len())
                .map(|i| {
                    let moved = psi[sigma_inv[i] as usize] as u16;
                    ((phi[i] as u16 + moved) % m) as u8
                })
                .collect();
            Ok(GroupElement::monomial(phases, perm))
        }
        _ => unreachable!("check_element rules out mixed kinds"),
    }
}

/// Inverse element.
pub fn inverse(spec: &GroupSpec, g: &GroupElement) -> Result<GroupElement, GroupError> {
    check_element(spec, g)?;
    match g {
        GroupElement::Matrix(_) => {
            // order divides 8 in the Pauli group; take the power that lands
            // back at the inverse
            let mut inv = identity(spec);
            let mut acc = identity(spec);
            loop {
                let next = multiply(spec, &acc, g)?;
                if next == identity(spec) {
                    return Ok(inv);
                }
                inv = next.clone();
                acc = next;
            }
        }
        GroupElement::Monomial { phases, perm } => {
            let m = spec.phase_modulus() as u16;
            let inv_perm = inverse_perm(perm);
            let phases: Vec<u8> = (0..perm.len())
                .map(|i| {
                    let p = phases[perm[i] as usize] as u16;
                    ((m - p) % m) as u8
                })
                .collect();
            Ok(GroupElement::monomial(phases, inv_perm))
        }
    }
}

/// Integer power of an element by square-and-multiply (negative exponents
/// via the inverse).
pub fn power(spec: &GroupSpec, g: &GroupElement, j: i64) -> Result<GroupElement, GroupError> {
    check_element(spec, g)?;
    let (mut base, mut e) = if j < 0 {
        (inverse(spec, g)?, j.unsigned_abs())
    } else {
        (g.clone(), j as u64)
    };
    let mut acc = identity(spec);
    while e > 0 {
        if e & 1 == 1 {
            acc = multiply(spec, &acc, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = multiply(spec, &base, &base)?;
        }
    }
    Ok(acc)
}

/// The n×n matrix of an element in the natural representation.
///
/// Monomial families: entry (σ(i), i) = ζ_m^{φ_{σ(i)}}. Symmetric groups:
/// the permutation representation on k points restricted to the sum-zero
/// subspace, in the basis e_0 − e_{k−1}, …, e_{k−2} − e_{k−1}. Pauli: the
/// stored matrix.
pub fn matrix(spec: &GroupSpec, g: &GroupElement) -> Result<Vec<Vec<Cyclotomic>>, GroupError> {
    check_element(spec, g)?;
    let l = DEFAULT_CONDUCTOR;
    match (spec, g) {
        (_, GroupElement::Matrix(mat)) => Ok(vec![
            vec![mat[0][0].clone(), mat[0][1].clone()],
            vec![mat[1][0].clone(), mat[1][1].clone()],
        ]),
        (GroupSpec::Symmetric(k), GroupElement::Monomial { perm, .. }) => {
            let k = *k as usize;
            let n = k - 1;
            let mut rows = vec![vec![Cyclotomic::zero(l); n]; n];
            let last = perm[k - 1] as usize;
            for (i, row_target) in perm.iter().enumerate().take(n) {
                let target = *row_target as usize;
                if target < n {
                    rows[target][i] = Cyclotomic::one(l);
                }
                if last < n {
                    rows[last][i] = rows[last][i].sub(&Cyclotomic::one(l)).expect("conductor");
                }
            }
            Ok(rows)
        }
        (_, GroupElement::Monomial { phases, perm }) => {
            let n = perm.len();
            let m = spec.phase_modulus();
            let step = (l / m) as i64;
            let mut rows = vec![vec![Cyclotomic::zero(l); n]; n];
            for (i, &target) in perm.iter().enumerate() {
                let t = target as usize;
                rows[t][i] = Cyclotomic::root_of_unity(l, step * phases[t] as i64);
            }
            Ok(rows)
        }
    }
}

/// Character of the natural representation, by the closed forms: sum of
/// ζ_m^{φ_i} over fixed points of the permutation for the monomial families,
/// (fixed points − 1) for the symmetric standard representation, matrix
/// trace for Pauli. Always equals the trace of [`matrix`].
pub fn natural_character(spec: &GroupSpec, g: &GroupElement) -> Result<Cyclotomic, GroupError> {
    check_element(spec, g)?;
    let l = DEFAULT_CONDUCTOR;
    match (spec, g) {
        (_, GroupElement::Matrix(mat)) => Ok(mat[0][0].add(&mat[1][1]).expect("fixed conductor")),
        (GroupSpec::Symmetric(_), GroupElement::Monomial { perm, .. }) => {
            let fixed = perm
                .iter()
                .enumerate()
                .filter(|(i, &p)| *i == p as usize)
                .count();
            Ok(Cyclotomic::from_integer(l, fixed as i64 - 1))
        }
        (_, GroupElement::Monomial { phases, perm }) => {
            let m = spec.phase_modulus();
            let step = (l / m) as i64;
            let mut acc = Cyclotomic::zero(l);
            for (i, &p) in perm.iter().enumerate() {
                if i == p as usize {
                    let z = Cyclotomic::root_of_unity(l, step * phases[i] as i64);
                    acc = acc.add(&z).expect("fixed conductor");
                }
            }
            Ok(acc)
        }
    }
}

/// Lexicographically next permutation in place; false once at the last one.
fn next_permutation(perm: &mut [u8]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// All elements exactly once, in a deterministic order: lexicographic on
/// (phases, permutation word) for the monomial families; closure from the
/// generators {diag(i,i), diag(i,i³), antidiag(1,1)} followed by a canonical
/// sort for the Pauli group.
pub fn enumerate_elements(spec: &GroupSpec) -> Result<Vec<GroupElement>, GroupError> {
    enumerate_elements_capped(spec, DEFAULT_ORDER_CAP)
}

pub fn enumerate_elements_capped(
    spec: &GroupSpec,
    cap: u64,
) -> Result<Vec<GroupElement>, GroupError> {
    spec.validate()?;
    let order = spec.order();
    if order > cap {
        return Err(GroupError::GroupTooLarge { order, cap });
    }
    if matches!(spec, GroupSpec::Pauli) {
        return Ok(pauli_elements());
    }
    let pts = spec.points();
    let m = spec.phase_modulus();
    let permute = !matches!(spec, GroupSpec::Cyclic(_) | GroupSpec::AbelianProduct(..));
    let mut out = Vec::with_capacity(order as usize);
    let mut phases = vec![0u8; pts];
    loop {
        let mut perm: Vec<u8> = (0..pts as u8).collect();
        loop {
            out.push(GroupElement::monomial(phases.clone(), perm.clone()));
            if !permute || !next_permutation(&mut perm) {
                break;
            }
        }
        // odometer over phases, most significant digit first
        let mut pos = pts;
        loop {
            if pos == 0 {
                debug_assert_eq!(out.len() as u64, order);
                return Ok(out);
            }
            pos -= 1;
            phases[pos] += 1;
            if (phases[pos] as u32) < m {
                break;
            }
            phases[pos] = 0;
        }
    }
}

fn pauli_elements() -> Vec<GroupElement> {
    let l = DEFAULT_CONDUCTOR;
    let i = Cyclotomic::root_of_unity(l, 3);
    let i3 = Cyclotomic::root_of_unity(l, 9);
    let one = Cyclotomic::one(l);
    let zero = Cyclotomic::zero(l);
    let generators = [
        [[i.clone(), zero.clone()], [zero.clone(), i.clone()]],
        [[i.clone(), zero.clone()], [zero.clone(), i3.clone()]],
        [[zero.clone(), one.clone()], [one.clone(), zero.clone()]],
    ];
    let mut seen: Vec<[[Cyclotomic; 2]; 2]> =
        vec![[[one.clone(), zero.clone()], [zero.clone(), one.clone()]]];
    let mut frontier = seen.clone();
    while let Some(m) = frontier.pop() {
        for g in &generators {
            let prod = pauli_mat_mul(&m, g);
            if !seen.contains(&prod) {
                seen.push(prod.clone());
                frontier.push(prod);
            }
        }
    }
    seen.sort();
    seen.into_iter()
        .map(|m| GroupElement::Matrix(Box::new(m)))
        .collect()
}

/// A materialized group: the element list in enumeration order plus an index
/// for constant-time lookup. Immutable once built; safe to share across
/// threads.
pub struct Group {
    spec: GroupSpec,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    identity_index: usize,
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Self, GroupError> {
        Self::with_cap(spec, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(spec: GroupSpec, cap: u64) -> Result<Self, GroupError> {
        let elements = enumerate_elements_capped(&spec, cap)?;
        let index: HashMap<GroupElement, usize> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, g)| (g, i))
            .collect();
        let identity_index = *index
            .get(&identity(&spec))
            .expect("identity must be enumerated");
        Ok(Group {
            spec,
            elements,
            index,
            identity_index,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Index of the product of the elements at indices `a` and `b`.
    pub fn multiply_indices(&self, a: usize, b: usize) -> usize {
        let prod = multiply(&self.spec, &self.elements[a], &self.elements[b])
            .expect("elements of this group");
        *self
            .index
            .get(&prod)
            .expect("group closed under multiplication")
    }
}

/// The natural representation of a group: a rule assigning each element its
/// matrix and its character (the matrix trace).
pub struct Representation {
    spec: GroupSpec,
}

impl Representation {
    pub fn natural(spec: GroupSpec) -> Self {
        Representation { spec }
    }

    pub fn dim(&self) -> usize {
        self.spec.rep_dim()
    }

    pub fn matrix(&self, g: &GroupElement) -> Result<Vec<Vec<Cyclotomic>>, GroupError> {
        matrix(&self.spec, g)
    }

    pub fn character(&self, g: &GroupElement) -> Result<Cyclotomic, GroupError> {
        natural_character(&self.spec, g)
    }
}
