use super::{CyclotomicScalar, FiniteField, Field};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

/// Primes used when no explicit list is given. All are ≡ 1 (mod 9).
pub const DEFAULT_PRIMES: [u64; 3] = [19, 37, 73];

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The prime field F_p with a fixed element `zeta` of multiplicative order 9.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
    zeta: u64,
}

impl PrimeField {
    /// F_p with ζ chosen as g^((p-1)/9) for the smallest primitive root g.
    pub fn new(p: u64) -> Result<Self> {
        Self::check_modulus(p)?;
        let factors = prime_factors(p - 1);
        let g = (2..p)
            .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
            .expect("every prime has a primitive root");
        Self::with_zeta(p, pow_mod(g, (p - 1) / 9, p))
    }

    pub fn with_zeta(p: u64, zeta: u64) -> Result<Self> {
        Self::check_modulus(p)?;
        let zeta = zeta % p;
        if pow_mod(zeta, 9, p) != 1 || pow_mod(zeta, 3, p) == 1 {
            return Err(Error::BadPrime { p, reason: format!("{zeta} does not have order 9") });
        }
        Ok(Self { p, zeta })
    }

    fn check_modulus(p: u64) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::BadPrime { p, reason: "not prime".into() });
        }
        if p % 9 != 1 {
            return Err(Error::BadPrime { p, reason: "not congruent to 1 mod 9".into() });
        }
        if p >= 1 << 31 {
            return Err(Error::BadPrime { p, reason: "modulus too large".into() });
        }
        Ok(())
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn zeta(&self) -> u64 {
        self.zeta
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits in u64")
    }

    /// Square root if one exists.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        (0..self.p).find(|&x| x * x % self.p == a)
    }

    pub fn is_square(&self, a: u64) -> bool {
        let a = a % self.p;
        a == 0 || pow_mod(a, (self.p - 1) / 2, self.p) == 1
    }
}

/// Ring homomorphism Q(ζ₉) → F_p sending ζ to `field.zeta()`.
pub fn specialize_mod_p(a: &CyclotomicScalar, field: &PrimeField) -> Result<u64> {
    let p = field.p;
    let mut acc = 0u64;
    let mut zpow = 1u64;
    for c in a.coeffs() {
        if !c.is_zero() {
            let den = field.reduce_bigint(c.denom());
            if den == 0 {
                return Err(Error::DenominatorCollision { p });
            }
            let num = field.reduce_bigint(c.numer());
            let v = num * pow_mod(den, p - 2, p) % p;
            acc = (acc + v * zpow) % p;
        }
        zpow = zpow * field.zeta % p;
    }
    Ok(acc)
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if (*a).is_multiple_of(self.p) {
            return Err(Error::DivisionByZero);
        }
        Ok(pow_mod(*a, self.p - 2, self.p))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn zeta_pow(&self, k: i64) -> u64 {
        pow_mod(self.zeta, k.rem_euclid(9) as u64, self.p)
    }
    fn from_cyclotomic(&self, a: &CyclotomicScalar) -> Result<u64> {
        specialize_mod_p(a, self)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl FiniteField for PrimeField {
    fn order(&self) -> u64 {
        self.p
    }
    fn element(&self, i: u64) -> u64 {
        i
    }
    fn index(&self, a: &u64) -> u64 {
        *a
    }
}

/// F_{p²} = F_p[s]/(s² − n) for the smallest quadratic non-residue n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticExtension {
    base: PrimeField,
    nonresidue: u64,
}

impl QuadraticExtension {
    pub fn new(base: PrimeField) -> Self {
        let nonresidue = (2..base.p).find(|&n| !base.is_square(n)).expect("odd prime has a non-residue");
        Self { base, nonresidue }
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn nonresidue(&self) -> u64 {
        self.nonresidue
    }

    pub fn embed(&self, a: u64) -> (u64, u64) {
        (a % self.base.p, 0)
    }
}

impl Field for QuadraticExtension {
    type Elem = (u64, u64);

    fn zero(&self) -> (u64, u64) {
        (0, 0)
    }
    fn one(&self) -> (u64, u64) {
        (1, 0)
    }
    fn add(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }
    fn sub(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        (self.base.sub(&a.0, &b.0), self.base.sub(&a.1, &b.1))
    }
    fn mul(&self, a: &(u64, u64), b: &(u64, u64)) -> (u64, u64) {
        let p = self.base.p;
        let re = (a.0 * b.0 + a.1 * b.1 % p * self.nonresidue) % p;
        let im = (a.0 * b.1 + a.1 * b.0) % p;
        (re, im)
    }
    fn neg(&self, a: &(u64, u64)) -> (u64, u64) {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }
    fn inv(&self, a: &(u64, u64)) -> Result<(u64, u64)> {
        // (x + ys)^-1 = (x - ys) / (x² - n y²)
        let p = self.base.p;
        let norm = (a.0 * a.0 % p + p - a.1 * a.1 % p * self.nonresidue % p) % p;
        let ninv = self.base.inv(&norm)?;
        Ok((a.0 * ninv % p, (p - a.1) % p * ninv % p))
    }
    fn is_zero(&self, a: &(u64, u64)) -> bool {
        *a == (0, 0)
    }
    fn from_i64(&self, n: i64) -> (u64, u64) {
        (self.base.from_i64(n), 0)
    }
    fn zeta_pow(&self, k: i64) -> (u64, u64) {
        (self.base.zeta_pow(k), 0)
    }
    fn from_cyclotomic(&self, a: &CyclotomicScalar) -> Result<(u64, u64)> {
        Ok((specialize_mod_p(a, &self.base)?, 0))
    }
    fn characteristic(&self) -> u64 {
        self.base.p
    }
    fn name(&self) -> String {
        format!("F_{}^2", self.base.p)
    }
    fn render(&self, a: &(u64, u64)) -> String {
        if a.1 == 0 {
            a.0.to_string()
        } else {
            format!("{}+{}s", a.0, a.1)
        }
    }
}

impl FiniteField for QuadraticExtension {
    fn order(&self) -> u64 {
        self.base.p * self.base.p
    }
    fn element(&self, i: u64) -> (u64, u64) {
        (i % self.base.p, i / self.base.p)
    }
    fn index(&self, a: &(u64, u64)) -> u64 {
        a.0 + a.1 * self.base.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational;

    /// Exhaustive order computation in F_p^*.
    fn order_of(a: u64, p: u64) -> u64 {
        let mut x = a % p;
        let mut k = 1;
        while x != 1 {
            x = x * a % p;
            k += 1;
        }
        k
    }

    #[test]
    fn nineteen_with_four() {
        assert_eq!(order_of(4, 19), 9);
        assert_eq!(pow_mod(4, 3, 19), 7);
        let f = PrimeField::with_zeta(19, 4).unwrap();
        assert_eq!(PrimeField::new(19).unwrap(), f);
        let w = specialize_mod_p(&CyclotomicScalar::omega(), &f).unwrap();
        assert_eq!(w, 7);
        assert_eq!((w * w + w + 1) % 19, 0);
        assert_eq!(specialize_mod_p(&CyclotomicScalar::one(), &f).unwrap(), 1);
    }

    #[test]
    fn default_zetas_have_order_nine() {
        for p in [19u64, 37, 73, 109] {
            let f = PrimeField::new(p).unwrap();
            assert_eq!(order_of(f.zeta(), p), 9, "p = {p}");
        }
    }

    #[test]
    fn bad_primes_and_denominators() {
        assert!(matches!(PrimeField::new(17), Err(Error::BadPrime { p: 17, .. })));
        assert!(matches!(PrimeField::new(21), Err(Error::BadPrime { .. })));
        assert!(matches!(PrimeField::with_zeta(19, 7), Err(Error::BadPrime { .. })));
        let f = PrimeField::new(19).unwrap();
        let a = CyclotomicScalar::from_rational(rational(1, 19));
        assert_eq!(specialize_mod_p(&a, &f), Err(Error::DenominatorCollision { p: 19 }));
    }

    #[test]
    fn quadratic_extension_is_a_field() {
        let base = PrimeField::new(19).unwrap();
        let k = QuadraticExtension::new(base);
        assert_eq!(k.order(), 361);
        for i in 1..k.order() {
            let a = k.element(i);
            let inv = k.inv(&a).unwrap();
            assert_eq!(k.mul(&a, &inv), k.one());
            assert_eq!(k.index(&a), i);
        }
    }
}
