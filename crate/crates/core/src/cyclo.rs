//! Cyclotomic polynomials and exact arithmetic in `Q(zeta_m)`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(phi(m)-1)`,
//! i.e. as rational polynomials reduced modulo `Phi_m`. Since `Phi_m` is
//! irreducible this is a field and every nonzero element has an inverse.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;

/// Dense integer polynomial, coefficients from the constant term upward.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly(pub Vec<BigInt>);

impl IntPoly {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly(coeffs.iter().map(|&c| BigInt::from(c)).collect()).trimmed()
    }

    pub fn one() -> Self {
        IntPoly(vec![BigInt::one()])
    }

    fn trimmed(mut self) -> Self {
        while self.0.len() > 1 && self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly(out).trimmed()
    }

    pub fn pow(&self, e: u64) -> IntPoly {
        (0..e).fold(IntPoly::one(), |acc, _| acc.mul(self))
    }

    /// Exact division by a monic divisor; `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree();
        debug_assert!(divisor.0[dd].is_one());
        if self.degree() < dd {
            return self.0.iter().all(Zero::is_zero).then(|| IntPoly(vec![BigInt::zero()]));
        }
        let mut rem = self.0.clone();
        let mut quot = vec![BigInt::zero(); self.degree() - dd + 1];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].clone();
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c.clone();
            for (i, d) in divisor.0.iter().enumerate() {
                rem[k - dd + i] -= &c * d;
            }
        }
        rem.iter().all(Zero::is_zero).then(|| IntPoly(quot).trimmed())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() && !(k == 0 && first) {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || k == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `m`-th cyclotomic polynomial, computed by dividing `x^m - 1` by every
/// `Phi_d` with `d | m`, `d < m`. Results are memoized.
pub fn cyclotomic_polynomial(m: u32) -> Result<Arc<IntPoly>> {
    if m == 0 {
        return Err(Error::ZeroOrder);
    }
    if let Some(p) = phi_cache().lock().unwrap().get(&m) {
        return Ok(Arc::clone(p));
    }
    let mut xm1 = vec![BigInt::zero(); m as usize + 1];
    xm1[0] = BigInt::from(-1);
    xm1[m as usize] = BigInt::one();
    let mut acc = IntPoly(xm1);
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let phi_d = cyclotomic_polynomial(d)?;
        acc = acc
            .div_exact_monic(&phi_d)
            .ok_or_else(|| Error::Internal(format!("Phi_{d} does not divide x^{m} - 1")))?;
    }
    let acc = Arc::new(acc);
    phi_cache().lock().unwrap().insert(m, Arc::clone(&acc));
    Ok(acc)
}

fn rat(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// The field `Q(zeta_m)` as an arithmetic context.
#[derive(Debug, Clone)]
pub struct CyclotomicField {
    order: u32,
    /// `Phi_m` without its leading 1, as rationals.
    modulus: Arc<Vec<BigRational>>,
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
    }
}

impl CyclotomicField {
    pub fn new(m: u32) -> Result<Self> {
        let phi = cyclotomic_polynomial(m)?;
        let d = phi.degree();
        Ok(CyclotomicField {
            order: m,
            modulus: Arc::new(phi.0[..d].iter().map(rat).collect()),
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `phi(m)`, the degree of the field over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len()
    }

    fn reduce(&self, mut poly: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        for k in (d..poly.len()).rev() {
            let c = std::mem::take(&mut poly[k]);
            if c.is_zero() {
                continue;
            }
            // x^k = x^(k-d) * x^d and x^d = -(Phi_m - x^d)
            for (i, phi_i) in self.modulus.iter().enumerate() {
                if !phi_i.is_zero() {
                    poly[k - d + i] -= &c * phi_i;
                }
            }
        }
        poly.truncate(d);
        poly.resize(d, BigRational::zero());
        poly
    }

    /// `zeta_m^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> CycElem {
        let e = k.rem_euclid(self.order as i64) as usize;
        let mut poly = vec![BigRational::zero(); e.max(self.degree()) + 1];
        poly[e] = BigRational::one();
        CycElem { order: self.order, coeffs: self.reduce(poly) }
    }

    pub fn from_rational(&self, v: BigRational) -> CycElem {
        let mut coeffs = vec![BigRational::zero(); self.degree()];
        coeffs[0] = v;
        CycElem { order: self.order, coeffs }
    }

    /// Builds an element from power-basis integer coefficients.
    pub fn from_int_coeffs(&self, coeffs: &[i64]) -> Result<CycElem> {
        if coeffs.len() != self.degree() {
            return Err(Error::Dimension(format!(
                "expected {} power-basis coefficients for order {}, got {}",
                self.degree(),
                self.order,
                coeffs.len()
            )));
        }
        Ok(CycElem {
            order: self.order,
            coeffs: coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(),
        })
    }

    fn poly_mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }
}

impl Field for CyclotomicField {
    type Elem = CycElem;

    fn zero(&self) -> CycElem {
        CycElem { order: self.order, coeffs: vec![BigRational::zero(); self.degree()] }
    }
    fn one(&self) -> CycElem {
        self.from_rational(BigRational::one())
    }
    fn from_i64(&self, v: i64) -> CycElem {
        self.from_rational(BigRational::from_integer(v.into()))
    }
    fn is_zero(&self, a: &CycElem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &CycElem, b: &CycElem) -> CycElem {
        debug_assert_eq!(a.order, b.order);
        CycElem {
            order: self.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
    fn sub(&self, a: &CycElem, b: &CycElem) -> CycElem {
        debug_assert_eq!(a.order, b.order);
        CycElem {
            order: self.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
    fn mul(&self, a: &CycElem, b: &CycElem) -> CycElem {
        debug_assert_eq!(a.order, b.order);
        CycElem { order: self.order, coeffs: self.reduce(self.poly_mul(&a.coeffs, &b.coeffs)) }
    }
    fn neg(&self, a: &CycElem) -> CycElem {
        CycElem { order: self.order, coeffs: a.coeffs.iter().map(|x| -x).collect() }
    }
    fn inv(&self, a: &CycElem) -> Option<CycElem> {
        if a.is_zero() {
            return None;
        }
        if self.degree() == 1 {
            return Some(self.from_rational(a.coeffs[0].recip()));
        }
        // extended Euclid in Q[x] against Phi_m
        let mut phi: Vec<BigRational> = self.modulus.as_ref().clone();
        phi.push(BigRational::one());
        let (mut r0, mut r1) = (phi, trim(a.coeffs.clone()));
        let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = poly_divmod(&r0, &r1);
            let qs1 = self.poly_mul(&q, &s1);
            let next_s = poly_sub(&s0, &qs1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, next_s);
        }
        // r0 is a nonzero constant because Phi_m is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let scaled: Vec<BigRational> = s0.into_iter().map(|x| x * &c).collect();
        let mut padded = scaled;
        padded.resize(padded.len().max(self.degree()), BigRational::zero());
        Some(CycElem { order: self.order, coeffs: self.reduce(padded) })
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (vec![BigRational::zero()], trim(rem));
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        if rem[k].is_zero() {
            continue;
        }
        let c = &rem[k] * &lead_inv;
        for (i, bi) in b.iter().enumerate() {
            rem[k - db + i] -= &c * bi;
        }
        quot[k - db] = c;
    }
    rem.truncate(db.max(1));
    (trim(quot), trim(rem))
}

/// An element of `Q(zeta_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycElem {
    order: u32,
    coeffs: Vec<BigRational>,
}

/// Operation selector for [`cyc_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CycOp {
    Add,
    Mul,
    /// Inverse of the first operand; the second is ignored.
    Inverse,
}

/// Checked arithmetic on standalone elements.
pub fn cyc_arith(a: &CycElem, b: &CycElem, op: CycOp) -> Result<CycElem> {
    let field = CyclotomicField::new(a.order)?;
    match op {
        CycOp::Inverse => field.inv(a).ok_or(Error::DivisionByZero),
        _ if a.order != b.order => Err(Error::OrderMismatch(a.order, b.order)),
        CycOp::Add => Ok(field.add(a, b)),
        CycOp::Mul => Ok(field.mul(a, b)),
    }
}

impl CycElem {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(crate::field::rational_is_integer)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::lcm(acc, c.denom().clone()))
    }

    /// Integer coefficients, if all are integers and fit in `i64`.
    pub fn to_int_coeffs(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(|c| if c.is_integer() { c.numer().to_i64() } else { None })
            .collect()
    }

    pub fn scale(&self, s: &BigRational) -> CycElem {
        CycElem { order: self.order, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Image under `Q(zeta_m) -> Q(zeta_{km})`, `zeta_m -> zeta_{km}^k`.
    pub fn embed(&self, k: u32) -> Result<CycElem> {
        if k == 0 {
            return Err(Error::ZeroOrder);
        }
        let target = CyclotomicField::new(self.order * k)?;
        let mut acc = target.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = target.zeta_pow(i as i64 * k as i64).scale(c);
            acc = target.add(&acc, &term);
        }
        Ok(acc)
    }
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})z"),
                _ => format!("({c})z^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}
