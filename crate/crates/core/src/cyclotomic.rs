//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`, realised as
//! `Q[x] / Φ_N(x)`.
//!
//! Every [`Scalar`] carries a shared handle to its [`CyclotomicField`]; the
//! coefficient vector always has length `φ(N)` and is kept reduced, so
//! structural equality is field equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("scalars from Q(zeta_{0}) and Q(zeta_{1}) cannot be combined")]
    OrderMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field order must be at least {min}, got {got}")]
    InvalidOrder { min: u32, got: u32 },
}

/// Integer coefficients of `Φ_N`, lowest degree first.
///
/// Computed by dividing `x^N - 1` by `Φ_d` for every proper divisor `d` of
/// `N`. Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic polynomial is defined for N >= 1");
    let mut memo: HashMap<u32, Vec<BigInt>> = HashMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u32, memo: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let div = cyclotomic_memo(d, memo);
        num = exact_monic_division(&num, &div);
    }
    memo.insert(n, num.clone());
    num
}

/// Divides by a monic integer polynomial, asserting a zero remainder.
fn exact_monic_division(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "non-exact cyclotomic division");
    quot
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut result = n as u64;
    let mut m = n as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

/// `Q(ζ_N)` as a quotient ring. Obtain shared instances through [`field`].
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    /// Monic `Φ_N`, lowest degree first; length `φ(N) + 1`.
    modulus: Vec<BigInt>,
}

impl CyclotomicField {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree of the extension, `φ(N)`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Reduces an arbitrary-length coefficient vector modulo `Φ_N`.
    fn reduce(&self, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let deg = self.degree();
        while poly.len() > deg {
            let top = poly.pop().expect("non-empty");
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - deg;
            // x^{deg + shift} = -sum_{i<deg} m_i x^{i + shift}
            for (i, m) in self.modulus[..deg].iter().enumerate() {
                if !m.is_zero() {
                    poly[i + shift] -= &top * BigRational::from_integer(m.clone());
                }
            }
        }
        poly.resize(deg, BigRational::zero());
        poly
    }
}

/// Shared handle to `Q(ζ_N)`. Panics for `n < 2`; use [`try_field`] to
/// validate user input.
pub fn field(n: u32) -> Arc<CyclotomicField> {
    try_field(n).expect("field order must be >= 2")
}

pub fn try_field(n: u32) -> Result<Arc<CyclotomicField>, CyclotomicError> {
    if n < 2 {
        return Err(CyclotomicError::InvalidOrder { min: 2, got: n });
    }
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    let f = guard.entry(n).or_insert_with(|| {
        Arc::new(CyclotomicField {
            order: n,
            modulus: cyclotomic_polynomial(n),
        })
    });
    Ok(Arc::clone(f))
}

/// An element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct Scalar {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl Scalar {
    pub fn zero(field: &Arc<CyclotomicField>) -> Self {
        Scalar {
            field: Arc::clone(field),
            coeffs: vec![BigRational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<CyclotomicField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_int(field: &Arc<CyclotomicField>, v: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(field: &Arc<CyclotomicField>, v: BigRational) -> Self {
        let mut s = Self::zero(field);
        s.coeffs[0] = v;
        s
    }

    /// Builds `Σ c_i x^i` and reduces it; `coeffs` may be any length.
    pub fn from_coeffs(field: &Arc<CyclotomicField>, coeffs: Vec<BigRational>) -> Self {
        Scalar {
            field: Arc::clone(field),
            coeffs: field.reduce(coeffs),
        }
    }

    /// `ζ_N^k` for any integer `k`.
    pub fn zeta_power(field: &Arc<CyclotomicField>, k: i64) -> Self {
        let n = field.order() as i64;
        let e = k.rem_euclid(n) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::from_coeffs(field, poly)
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Canonical coefficients of `1, x, …, x^{φ(N)-1}`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Scalar) -> Result<(), CyclotomicError> {
        if self.field.order != other.field.order {
            Err(CyclotomicError::OrderMismatch(self.field.order, other.field.order))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, CyclotomicError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Scalar {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, CyclotomicError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Scalar {
            field: Arc::clone(&self.field),
            coeffs,
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, CyclotomicError> {
        self.check(other)?;
        let d = self.field.degree();
        // Fast paths: rational times anything.
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            return Ok(other.scale(&self.coeffs[0]));
        }
        if other.coeffs[1..].iter().all(Zero::is_zero) {
            return Ok(self.scale(&other.coeffs[0]));
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Scalar {
            field: Arc::clone(&self.field),
            coeffs: self.field.reduce(prod),
        })
    }

    /// Multiplies by a rational.
    pub fn scale(&self, r: &BigRational) -> Scalar {
        Scalar {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn invert(&self) -> Result<Scalar, CyclotomicError> {
        if self.is_zero() {
            return Err(CyclotomicError::DivisionByZero);
        }
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            return Ok(Scalar::from_rational(&self.field, self.coeffs[0].recip()));
        }
        let modulus: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        // Invariant: s_i * a ≡ r_i (mod Φ).
        let mut r0 = modulus;
        let mut r1 = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !(r1.len() == 1) {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            debug_assert!(!r1.is_empty(), "Φ_N is irreducible, gcd must be constant");
        }
        // r1 is a nonzero constant c with s1 * a ≡ c.
        let c_inv = r1[0].recip();
        let inv: Vec<BigRational> = s1.iter().map(|x| x * &c_inv).collect();
        Ok(Scalar::from_coeffs(&self.field, inv))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, CyclotomicError> {
        self.check(other)?;
        self.try_mul(&other.invert()?)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// JSON-friendly rendering: one `"num/den"` string per coefficient.
    pub fn to_fraction_strings(&self) -> Vec<String> {
        self.coeffs
            .iter()
            .map(|c| format!("{}/{}", c.numer(), c.denom()))
            .collect()
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Long division; `b` must be nonzero and trimmed.
fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let k = rem.len() - b.len();
        let c = rem.last().expect("non-empty") * &lead_inv;
        for (i, y) in b.iter().enumerate() {
            rem[k + i] -= &c * y;
        }
        quot[k] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// `ζ_N^{k mod N}`.
pub fn zeta_power(n: u32, k: i64) -> Scalar {
    Scalar::zeta_power(&field(n), k)
}

/// The q-integer `[n]_ζ = 1 + ζ + … + ζ^{n-1}`.
pub fn q_integer(n_order: u32, n: u32) -> Scalar {
    let f = field(n_order);
    let mut acc = Scalar::zero(&f);
    for i in 0..n {
        acc += &Scalar::zeta_power(&f, i as i64);
    }
    acc
}

/// The q-factorial `[n!]_ζ = [1]_ζ [2]_ζ ⋯ [n]_ζ`.
pub fn q_factorial(n_order: u32, n: u32) -> Scalar {
    let f = field(n_order);
    (1..=n).fold(Scalar::one(&f), |acc, k| &acc * &q_integer(n_order, k))
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics if the operands live in different fields.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$try(rhs).expect("scalar order mismatch")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        assert_eq!(self.order(), rhs.order(), "scalar order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        assert_eq!(self.order(), rhs.order(), "scalar order mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Renders `a0 + a1*z + a2*z^2 …` with `z = ζ_N`, dropping zero terms.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let mon = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mon)?;
            } else {
                write!(f, "{mag}*{mon}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar[N={}]({})", self.order(), self)
    }
}
