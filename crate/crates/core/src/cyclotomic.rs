//! Exact arithmetic in the cyclotomic field Q(ζ_L).
//!
//! Elements are coefficient vectors over the power basis 1, ζ_L, …,
//! ζ_L^{φ(L)−1}, always fully reduced modulo the L-th cyclotomic polynomial
//! Φ_L. The default conductor is 12, which contains every root of unity the
//! shipped monodromy groups need (μ_2, μ_3, μ_4, μ_6, and i = ζ_12^3 for the
//! Pauli group). There is no mixed-conductor coercion: operations on elements
//! of different conductors are a caller error, reported as
//! [`CyclotomicError::ConductorMismatch`]. Callers embed explicitly via
//! [`Cyclotomic::root_of_unity`].

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("conductor mismatch: {left} vs {right}")]
    ConductorMismatch { left: u32, right: u32 },
    #[error("not rational: nonzero coefficient at basis index {index}")]
    NotRational { index: usize },
}

/// Euler totient φ(n) by trial-division factorization.
pub fn euler_phi(n: u32) -> u32 {
    assert!(n >= 1, "euler_phi of 0");
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(n: u32) -> Vec<u32> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// x^n − 1 as an ascending integer coefficient vector.
fn x_n_minus_one(n: u32) -> Vec<BigInt> {
    let mut coeffs = vec![BigInt::zero(); n as usize + 1];
    coeffs[0] = -BigInt::one();
    coeffs[n as usize] = BigInt::one();
    coeffs
}

/// Exact division of integer polynomials by a monic divisor; panics on a
/// nonzero remainder (internal use on products of cyclotomic polynomials,
/// where divisibility is guaranteed).
fn exact_div_monic(mut num: Vec<BigInt>, div: &[BigInt]) -> Vec<BigInt> {
    assert!(
        div.last().map(|c| c.is_one()).unwrap_or(false),
        "divisor not monic"
    );
    let dd = div.len() - 1;
    assert!(num.len() > dd);
    let qd = num.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = std::mem::take(&mut num[i + dd]);
        if !c.is_zero() {
            for (k, dk) in div.iter().enumerate().take(dd) {
                let sub = &c * dk;
                num[i + k] -= sub;
            }
        }
        quot[i] = c;
    }
    assert!(
        num.iter().all(|c| c.is_zero()),
        "non-exact polynomial division"
    );
    quot
}

/// The L-th cyclotomic polynomial Φ_L as an ascending integer coefficient
/// vector of degree φ(L): Φ_L = (x^L − 1) / ∏_{d | L, d < L} Φ_d.
pub fn cyclotomic_polynomial(l: u32) -> Vec<BigInt> {
    assert!(l >= 1, "cyclotomic polynomial needs L >= 1");
    if l == 1 {
        return vec![-BigInt::one(), BigInt::one()];
    }
    let mut poly = x_n_minus_one(l);
    for d in divisors(l) {
        if d < l {
            poly = exact_div_monic(poly, &cyclotomic_polynomial(d));
        }
    }
    debug_assert_eq!(poly.len() as u32 - 1, euler_phi(l));
    poly
}

/// Precomputed reduction data for one conductor.
struct FieldData {
    degree: usize,
    /// −(lower coefficients of Φ_L), so x^φ ≡ Σ_k neg_lower[k]·x^k.
    neg_lower: Vec<Rational>,
    /// Reduced coefficient vector of ζ_L^k for k = 0..L.
    zeta_powers: Vec<Vec<Rational>>,
}

static FIELDS: LazyLock<Mutex<HashMap<u32, Arc<FieldData>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

fn field(l: u32) -> Arc<FieldData> {
    let mut cache = FIELDS.lock().expect("field cache poisoned");
    if let Some(f) = cache.get(&l) {
        return Arc::clone(f);
    }
    let phi = cyclotomic_polynomial(l);
    let degree = phi.len() - 1;
    let neg_lower: Vec<Rational> = phi[..degree]
        .iter()
        .map(|c| -Rational::from_bigint(c.clone()))
        .collect();
    let mut data = FieldData {
        degree,
        neg_lower,
        zeta_powers: Vec::new(),
    };
    let mut powers = Vec::with_capacity(l as usize);
    for k in 0..l as usize {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = Rational::one();
        reduce_in_place(&mut v, &data);
        powers.push(v);
    }
    data.zeta_powers = powers;
    let arc = Arc::new(data);
    cache.insert(l, Arc::clone(&arc));
    arc
}

/// Reduce an ascending coefficient vector modulo Φ_L and truncate to φ(L).
fn reduce_in_place(v: &mut Vec<Rational>, f: &FieldData) {
    let deg = f.degree;
    for i in (deg..v.len()).rev() {
        if v[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[i], Rational::zero());
        for (k, nl) in f.neg_lower.iter().enumerate() {
            if !nl.is_zero() {
                let add = &c * nl;
                v[i - deg + k] += &add;
            }
        }
    }
    v.truncate(deg);
    v.resize(deg, Rational::zero());
}

/// An element of Q(ζ_L), stored as φ(L) rational coefficients over the power
/// basis, fully reduced modulo Φ_L. Two elements are equal iff conductors
/// match and coefficient vectors match entry-wise.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(conductor: u32) -> Self {
        let f = field(conductor);
        Cyclotomic {
            conductor,
            coeffs: vec![Rational::zero(); f.degree],
        }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, Rational::one())
    }

    pub fn from_rational(conductor: u32, r: Rational) -> Self {
        let mut x = Self::zero(conductor);
        x.coeffs[0] = r;
        x
    }

    pub fn from_integer(conductor: u32, n: i64) -> Self {
        Self::from_rational(conductor, Rational::from_integer(n))
    }

    /// Build from an arbitrary-length ascending coefficient vector, reducing
    /// modulo Φ_L. Reducing an already-reduced vector is the identity.
    pub fn from_coeffs(conductor: u32, mut coeffs: Vec<Rational>) -> Self {
        let f = field(conductor);
        reduce_in_place(&mut coeffs, &f);
        Cyclotomic { conductor, coeffs }
    }

    /// ζ_L^k, reduced; k is taken modulo L (negative k allowed).
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        let l = conductor as i64;
        let k = k.rem_euclid(l) as usize;
        let f = field(conductor);
        Cyclotomic {
            conductor,
            coeffs: f.zeta_powers[k].clone(),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    fn check_conductor(&self, rhs: &Self) -> Result<(), CyclotomicError> {
        if self.conductor != rhs.conductor {
            Err(CyclotomicError::ConductorMismatch {
                left: self.conductor,
                right: rhs.conductor,
            })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, CyclotomicError> {
        self.check_conductor(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, CyclotomicError> {
        self.check_conductor(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Cyclotomic {
            conductor: self.conductor,
            coeffs,
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, CyclotomicError> {
        self.check_conductor(rhs)?;
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let term = a * b;
                    prod[i + j] += &term;
                }
            }
        }
        Ok(Self::from_coeffs(self.conductor, prod))
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| -c).collect();
        Cyclotomic {
            conductor: self.conductor,
            coeffs,
        }
    }

    /// Multiply by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * r).collect();
        Cyclotomic {
            conductor: self.conductor,
            coeffs,
        }
    }

    /// Complex conjugation: ζ_L ↦ ζ_L^{L−1}, extended Q-linearly and
    /// re-reduced.
    pub fn conjugate(&self) -> Self {
        let f = field(self.conductor);
        let l = self.conductor as usize;
        let mut acc = Self::zero(self.conductor);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = (l - j) % l;
            for (idx, zc) in f.zeta_powers[k].iter().enumerate() {
                if !zc.is_zero() {
                    let term = c * zc;
                    acc.coeffs[idx] += &term;
                }
            }
        }
        acc
    }

    /// Small nonnegative integer power by repeated multiplication.
    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.conductor);
        for _ in 0..e {
            acc = acc.mul(self).expect("same conductor");
        }
        acc
    }

    /// The rational value, if all non-constant basis coefficients vanish;
    /// otherwise an error carrying the first offending coefficient index.
    pub fn as_rational(&self) -> Result<Rational, CyclotomicError> {
        for (index, c) in self.coeffs.iter().enumerate().skip(1) {
            if !c.is_zero() {
                return Err(CyclotomicError::NotRational { index });
            }
        }
        Ok(self.coeffs[0].clone())
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Cyclotomic", 2)?;
        s.serialize_field("conductor", &self.conductor)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(Rational::to_string).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j == 0 {
                terms.push(c.to_string());
            } else {
                terms.push(format!("{c}*z{}^{j}", self.conductor));
            }
        }
        if terms.is_empty() {
            write!(f, "0/1")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({}; {})", self.conductor, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const L: u32 = 12;

    fn zeta(k: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(L, k)
    }

    fn int(n: i64) -> Cyclotomic {
        Cyclotomic::from_integer(L, n)
    }

    /// Numeric embedding of a cyclotomic element; test oracle only.
    fn approx(x: &Cyclotomic) -> (f64, f64) {
        let l = x.conductor() as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in x.coeffs().iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / l;
            re += c.to_f64() * theta.cos();
            im += c.to_f64() * theta.sin();
        }
        (re, im)
    }

    fn assert_close(x: &Cyclotomic, re: f64, im: f64) {
        let (xr, xi) = approx(x);
        assert!(
            (xr - re).abs() < 1e-9 && (xi - im).abs() < 1e-9,
            "{x} !~ {re}+{im}i"
        );
    }

    #[test]
    fn phi_1_and_phi_4() {
        let to_i64 = |p: Vec<BigInt>| -> Vec<i64> {
            p.into_iter().map(|c| i64::try_from(c).unwrap()).collect()
        };
        assert_eq!(to_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(to_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
    }

    /// Independent oracle for Φ_12: divide x^12 − 1 by the hand-written
    /// product Φ_1 Φ_2 Φ_3 Φ_4 Φ_6 with a test-local long division.
    #[test]
    fn phi_12_against_division_oracle() {
        fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
            let mut out = vec![0; a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            out
        }
        fn div_exact(mut num: Vec<i64>, den: &[i64]) -> Vec<i64> {
            let dd = den.len() - 1;
            let qd = num.len() - 1 - dd;
            let mut q = vec![0; qd + 1];
            for i in (0..=qd).rev() {
                let c = num[i + dd];
                q[i] = c;
                for (k, d) in den.iter().enumerate() {
                    num[i + k] -= c * d;
                }
            }
            assert!(num.iter().all(|&c| c == 0));
            q
        }
        // minimal polynomials of the 1st, 2nd, 3rd, 4th, 6th roots of unity
        let product = [
            vec![-1, 1],    // x - 1
            vec![1, 1],     // x + 1
            vec![1, 1, 1],  // x^2 + x + 1
            vec![1, 0, 1],  // x^2 + 1
            vec![1, -1, 1], // x^2 - x + 1
        ]
        .into_iter()
        .reduce(|a, b| mul(&a, &b))
        .unwrap();
        let mut x12 = vec![0i64; 13];
        x12[0] = -1;
        x12[12] = 1;
        let expected = div_exact(x12, &product);
        assert_eq!(expected, vec![1, 0, -1, 0, 1]); // x^4 - x^2 + 1
        let computed: Vec<i64> = cyclotomic_polynomial(12)
            .into_iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        assert_eq!(computed, expected);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(zeta(0), int(1));
        assert_eq!(zeta(6), int(-1));
        // zeta_6 + zeta_6^5 = 1, from x^2 - x + 1 = 0
        let sum = zeta(2).add(&zeta(10)).unwrap();
        assert_eq!(sum, int(1));
        assert_close(&sum, 1.0, 0.0);
        // zeta_12^L = 1
        assert_eq!(zeta(5).pow(12), int(1));
    }

    #[test]
    fn root_of_unity_is_periodic() {
        for k in -30..30i64 {
            assert_eq!(zeta(k), zeta(k.rem_euclid(12)));
        }
    }

    #[test]
    fn multiplication_and_conjugation() {
        // i * i = -1
        assert_eq!(zeta(3).mul(&zeta(3)).unwrap(), int(-1));
        assert_eq!(zeta(2).conjugate(), zeta(10));
        // sum of the primitive cube roots of unity
        let sum = zeta(4).add(&zeta(8)).unwrap();
        assert_eq!(sum, int(-1));
        assert_close(&sum, -1.0, 0.0);
    }

    #[test]
    fn as_rational_cases() {
        assert_eq!(int(1).as_rational().unwrap(), Rational::one());
        assert_eq!(zeta(6).as_rational().unwrap(), Rational::from_integer(-1));
        assert_eq!(
            zeta(1).as_rational(),
            Err(CyclotomicError::NotRational { index: 1 })
        );
    }

    #[test]
    fn conductor_mismatch_is_an_error() {
        let a = Cyclotomic::one(12);
        let b = Cyclotomic::one(4);
        assert_eq!(
            a.add(&b),
            Err(CyclotomicError::ConductorMismatch { left: 12, right: 4 })
        );
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn reduction_is_idempotent() {
        let x = zeta(7).scale(&Rational::new(3, 5));
        let again = Cyclotomic::from_coeffs(L, x.coeffs().to_vec());
        assert_eq!(again, x);
        // high-degree vectors reduce to the same element as the power table
        let mut raw = vec![Rational::zero(); 20];
        raw[19] = Rational::one();
        assert_eq!(Cyclotomic::from_coeffs(L, raw), zeta(19));
    }

    fn random_element(rng: &mut ChaCha8Rng) -> Cyclotomic {
        let coeffs = (0..4)
            .map(|_| Rational::from_integer(rng.gen_range(-9..=9)))
            .collect();
        Cyclotomic {
            conductor: L,
            coeffs,
        }
    }

    /// Ring axioms and conjugation on 1200 seeded random triples with
    /// coefficients in [-9, 9] (inversion is not part of the toolkit, so the
    /// multiplicative-group axiom is not asserted).
    #[test]
    fn ring_axioms_on_random_triples() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x15_0F1B);
        for _ in 0..400 {
            let a = random_element(&mut rng);
            let b = random_element(&mut rng);
            let c = random_element(&mut rng);
            let ab = a.mul(&b).unwrap();
            let bc = b.mul(&c).unwrap();
            assert_eq!(
                a.add(&b).unwrap().add(&c).unwrap(),
                a.add(&b.add(&c).unwrap()).unwrap()
            );
            assert_eq!(ab.mul(&c).unwrap(), a.mul(&bc).unwrap());
            assert_eq!(ab, b.mul(&a).unwrap());
            assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                ab.add(&a.mul(&c).unwrap()).unwrap()
            );
            assert_eq!(a.add(&a.neg()).unwrap(), Cyclotomic::zero(L));
            assert_eq!(a.mul(&Cyclotomic::one(L)).unwrap(), a);
            // conjugation is a ring homomorphism and an involution
            assert_eq!(ab.conjugate(), a.conjugate().mul(&b.conjugate()).unwrap());
            assert_eq!(a.conjugate().conjugate(), a);
        }
    }

    #[test]
    fn conjugation_fixes_rationals() {
        let r = Cyclotomic::from_rational(L, Rational::new(-7, 3));
        assert_eq!(r.conjugate(), r);
    }

    /// The conductor is a parameter: arithmetic in Q(ζ_5), Q(ζ_8), Q(ζ_9)
    /// against closed-form identities and the numeric embedding.
    #[test]
    fn other_conductors() {
        assert_eq!(euler_phi(5), 4);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(9), 6);

        // sum of all primitive 5th roots of unity is -1
        let mut sum = Cyclotomic::zero(5);
        for k in 1..5 {
            sum = sum.add(&Cyclotomic::root_of_unity(5, k)).unwrap();
        }
        assert_eq!(sum, Cyclotomic::from_integer(5, -1));

        // zeta_8^2 is a primitive 4th root: its square is -1
        let i8 = Cyclotomic::root_of_unity(8, 2);
        assert_eq!(i8.mul(&i8).unwrap(), Cyclotomic::from_integer(8, -1));
        assert_close(&Cyclotomic::root_of_unity(8, 1).pow(8), 1.0, 0.0);

        // zeta_9^3 is a primitive cube root: 1 + z + z^2 = 0
        let z = Cyclotomic::root_of_unity(9, 3);
        let relation = Cyclotomic::one(9)
            .add(&z)
            .unwrap()
            .add(&z.mul(&z).unwrap())
            .unwrap();
        assert!(relation.is_zero());

        for l in [5u32, 8, 9] {
            for k in 0..l as i64 {
                let root = Cyclotomic::root_of_unity(l, k);
                assert_eq!(root.pow(l), Cyclotomic::one(l), "zeta_{l}^{k} order");
                assert_eq!(root.conjugate(), Cyclotomic::root_of_unity(l, -k));
            }
        }
    }
}
