use super::rational::{parse_rational, Rational};
use super::Field;
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

const DEGREE: usize = 6;

/// An element c0 + c1ζ + … + c5ζ⁵ of Q(ζ) = Q[t]/(t⁶ + t³ + 1).
///
/// The coordinate vector is the canonical representative, so derived
/// equality and hashing are field equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CyclotomicScalar {
    coeffs: [Rational; DEGREE],
}

/// Reduces a polynomial in ζ of any degree modulo Φ₉(t) = t⁶ + t³ + 1.
pub fn cyc_reduce(poly_in_zeta: &[Rational]) -> CyclotomicScalar {
    let mut c: Vec<Rational> = poly_in_zeta.to_vec();
    for k in (DEGREE..c.len()).rev() {
        if c[k].is_zero() {
            continue;
        }
        let top = std::mem::take(&mut c[k]);
        // t^k = -t^(k-3) - t^(k-6)
        c[k - 3] -= &top;
        c[k - 6] -= &top;
    }
    let mut coeffs: [Rational; DEGREE] = Default::default();
    for (slot, v) in coeffs.iter_mut().zip(c) {
        *slot = v;
    }
    CyclotomicScalar { coeffs }
}

/// Inverts a nonzero scalar by solving the 6×6 rational system of
/// multiplication by `a`.
pub fn cyc_invert(a: &CyclotomicScalar) -> Result<CyclotomicScalar> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if let Some(r) = a.as_rational() {
        return Ok(CyclotomicScalar::from_rational(r.recip()));
    }
    // Column j holds the coordinates of a·ζ^j; solve M x = e_0.
    let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); DEGREE + 1]; DEGREE];
    let mut col = a.clone();
    let zeta = CyclotomicScalar::zeta();
    for j in 0..DEGREE {
        for i in 0..DEGREE {
            m[i][j] = col.coeffs[i].clone();
        }
        col = &col * &zeta;
    }
    m[0][DEGREE] = Rational::one();
    for c in 0..DEGREE {
        let piv = (c..DEGREE).find(|&r| !m[r][c].is_zero()).ok_or(Error::DivisionByZero)?;
        m.swap(c, piv);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        for r in 0..DEGREE {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in c..=DEGREE {
                    let t = &m[c][k] * &f;
                    m[r][k] -= t;
                }
            }
        }
    }
    let mut coeffs: [Rational; DEGREE] = Default::default();
    for (i, slot) in coeffs.iter_mut().enumerate() {
        *slot = m[i][DEGREE].clone();
    }
    Ok(CyclotomicScalar { coeffs })
}

impl CyclotomicScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut s = Self::default();
        s.coeffs[0] = r;
        s
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn zeta() -> Self {
        Self::zeta_pow(1)
    }

    /// ζ^k, reduced; k may be negative.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(9) as usize;
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        cyc_reduce(&c)
    }

    /// The primitive cube root of unity ω = ζ³.
    pub fn omega() -> Self {
        Self::zeta_pow(3)
    }

    pub fn coeffs(&self) -> &[Rational; DEGREE] {
        &self.coeffs
    }

    pub fn from_coeffs(coeffs: [Rational; DEGREE]) -> Self {
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Some(c0) when the scalar is rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then_some(&self.coeffs[0])
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c *= r;
        }
        out
    }

    pub fn inv(&self) -> Result<Self> {
        cyc_invert(self)
    }

    /// Parses the rendering produced by `Display`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        let mut c = vec![Rational::zero(); DEGREE];
        for term in s.split(" + ") {
            let term = term.trim();
            let (num, power) = match term.split_once('*') {
                None => (term, 0usize),
                Some((n, z)) => {
                    let z = z.trim();
                    let p = if z == "z" {
                        1
                    } else if let Some(e) = z.strip_prefix("z^") {
                        e.parse().map_err(|_| Error::Parse(format!("bad power in `{term}`")))?
                    } else {
                        return Err(Error::Parse(format!("bad scalar term `{term}`")));
                    };
                    (n, p)
                }
            };
            if power >= DEGREE {
                return Err(Error::Parse(format!("power {power} is not reduced")));
            }
            c[power] += parse_rational(num)?;
        }
        Ok(cyc_reduce(&c))
    }
}

impl fmt::Display for CyclotomicScalar {
    /// "c0 + c1*z + … + c5*z^5" listing nonzero coordinates only; "0" for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*z")?,
                _ => write!(f, "{c}*z^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl Add for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn add(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            if !b.is_zero() {
                *a += b;
            }
        }
        out
    }
}

impl Sub for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn sub(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            if !b.is_zero() {
                *a -= b;
            }
        }
        out
    }
}

impl Neg for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> CyclotomicScalar {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut() {
            if !a.is_zero() {
                *a = -&*a;
            }
        }
        out
    }
}

impl Mul for &CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn mul(self, rhs: &CyclotomicScalar) -> CyclotomicScalar {
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        let mut prod = vec![Rational::zero(); 2 * DEGREE - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        cyc_reduce(&prod)
    }
}

impl Add for CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for CyclotomicScalar {
    type Output = CyclotomicScalar;
    fn neg(self) -> Self {
        -&self
    }
}

/// Field context for Q(ζ₉). Zero-sized; use the [`Q9`] constant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CyclotomicField;

pub const Q9: CyclotomicField = CyclotomicField;

impl Field for CyclotomicField {
    type Elem = CyclotomicScalar;

    fn zero(&self) -> CyclotomicScalar {
        CyclotomicScalar::zero()
    }
    fn one(&self) -> CyclotomicScalar {
        CyclotomicScalar::one()
    }
    fn add(&self, a: &CyclotomicScalar, b: &CyclotomicScalar) -> CyclotomicScalar {
        a + b
    }
    fn sub(&self, a: &CyclotomicScalar, b: &CyclotomicScalar) -> CyclotomicScalar {
        a - b
    }
    fn mul(&self, a: &CyclotomicScalar, b: &CyclotomicScalar) -> CyclotomicScalar {
        a * b
    }
    fn neg(&self, a: &CyclotomicScalar) -> CyclotomicScalar {
        -a
    }
    fn inv(&self, a: &CyclotomicScalar) -> Result<CyclotomicScalar> {
        cyc_invert(a)
    }
    fn is_zero(&self, a: &CyclotomicScalar) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &CyclotomicScalar) -> bool {
        a.as_rational().is_some_and(One::is_one)
    }
    fn from_i64(&self, n: i64) -> CyclotomicScalar {
        CyclotomicScalar::from_int(n)
    }
    fn zeta_pow(&self, k: i64) -> CyclotomicScalar {
        CyclotomicScalar::zeta_pow(k)
    }
    fn from_cyclotomic(&self, a: &CyclotomicScalar) -> Result<CyclotomicScalar> {
        Ok(a.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn name(&self) -> String {
        "Q(z9)".to_string()
    }
    fn render(&self, a: &CyclotomicScalar) -> String {
        a.to_string()
    }
}

impl CyclotomicScalar {
    /// True when every coordinate is an integer of absolute value at most `bound`.
    pub fn is_small_integral(&self, bound: i64) -> bool {
        self.coeffs.iter().all(|c| c.is_integer() && c.abs() <= Rational::from_integer(bound.into()))
    }
}
