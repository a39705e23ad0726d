//! Exact scalar fields: the rationals, the ninth cyclotomic field Q(ζ), and
//! prime fields F_p (p ≡ 1 mod 9) together with their quadratic extensions.
//!
//! Everything above this module is written against the [`Field`] trait, which
//! is a *context* object: elements are plain values and all arithmetic goes
//! through the field, so prime fields can carry their modulus at runtime.

mod cyclotomic;
mod prime;
mod rational;

pub use cyclotomic::{cyc_invert, cyc_reduce, CyclotomicField, CyclotomicScalar, Q9};
pub use prime::{specialize_mod_p, PrimeField, QuadraticExtension, DEFAULT_PRIMES};
pub use rational::{parse_rational, rational, Rational};

use crate::error::Result;
use std::fmt::Debug;
use std::hash::Hash;

/// A field containing a designated primitive ninth root of unity ζ.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// ζ^k for any integer k.
    fn zeta_pow(&self, k: i64) -> Self::Elem;
    /// Image of an exact cyclotomic scalar under the structure map ζ ↦ ζ.
    fn from_cyclotomic(&self, a: &CyclotomicScalar) -> Result<Self::Elem>;
    fn characteristic(&self) -> u64;
    /// Short descriptor used in reports, e.g. `"Q(z9)"` or `"F_19"`.
    fn name(&self) -> String;
    fn render(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Returns k in 0..9 with a = ζ^k, if a is a ninth root of unity.
    fn zeta_log(&self, a: &Self::Elem) -> Option<u32> {
        (0..9).find(|&k| self.zeta_pow(k as i64) == *a)
    }
}

/// A finite field whose elements can be listed.
pub trait FiniteField: Field {
    fn order(&self) -> u64;
    /// The i-th element, for i in 0..order(); index 0 is zero and 1 is one.
    fn element(&self, i: u64) -> Self::Elem;
    /// Inverse of [`FiniteField::element`].
    fn index(&self, a: &Self::Elem) -> u64;

    fn elements(&self) -> Vec<Self::Elem> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }
}
