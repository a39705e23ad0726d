use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Z9,
    Z3xZ3,
}

impl GroupKind {
    pub fn label(self) -> &'static str {
        match self {
            GroupKind::Z9 => "Z9",
            GroupKind::Z3xZ3 => "Z3xZ3",
        }
    }

    /// Order of each generator.
    pub fn generator_orders(self) -> &'static [u32] {
        match self {
            GroupKind::Z9 => &[9],
            GroupKind::Z3xZ3 => &[3, 3],
        }
    }

    /// Logarithm base ζ contributed by one unit of each generator exponent
    /// for the "first" character; ω = ζ³.
    fn unit(self) -> u32 {
        match self {
            GroupKind::Z9 => 1,
            GroupKind::Z3xZ3 => 3,
        }
    }
}

/// One of the nine group elements, as an exponent tuple of the generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub kind: GroupKind,
    pub exps: Vec<u32>,
}

impl GroupElement {
    pub fn new(kind: GroupKind, exps: &[u32]) -> Self {
        let orders = kind.generator_orders();
        assert_eq!(exps.len(), orders.len());
        Self { kind, exps: exps.iter().zip(orders).map(|(e, o)| e % o).collect() }
    }

    pub fn identity(kind: GroupKind) -> Self {
        Self::new(kind, &vec![0; kind.generator_orders().len()])
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let e: Vec<u32> = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Self::new(self.kind, &e)
    }

    pub fn pow(&self, k: u32) -> Self {
        let e: Vec<u32> = self.exps.iter().map(|a| a * k).collect();
        Self::new(self.kind, &e)
    }

    pub fn order(&self) -> u32 {
        (1..=9).find(|&k| self.pow(k).is_identity()).expect("order divides 9")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::Z9 => write!(f, "g^{}", self.exps[0]),
            GroupKind::Z3xZ3 => write!(f, "g1^{}*g2^{}", self.exps[0], self.exps[1]),
        }
    }
}

/// A character χ: G → μ₉. For Z₉, exponent a means χ(g) = ζᵃ; for Z₃², the
/// pair (i, j) means χ(g₁) = ωⁱ, χ(g₂) = ωʲ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Character {
    pub kind: GroupKind,
    pub exps: Vec<u32>,
}

impl Character {
    pub fn new(kind: GroupKind, exps: &[u32]) -> Self {
        let e = GroupElement::new(kind, exps);
        Self { kind, exps: e.exps }
    }

    pub fn trivial(kind: GroupKind) -> Self {
        Self::new(kind, &vec![0; kind.generator_orders().len()])
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// All nine characters, trivial first.
    pub fn all(kind: GroupKind) -> Vec<Character> {
        match kind {
            GroupKind::Z9 => (0..9).map(|a| Self::new(kind, &[a])).collect(),
            GroupKind::Z3xZ3 => (0..3).flat_map(|i| (0..3).map(move |j| Self::new(kind, &[i, j]))).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let e: Vec<u32> = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        Self::new(self.kind, &e)
    }

    pub fn pow(&self, k: u32) -> Self {
        let e: Vec<u32> = self.exps.iter().map(|a| a * k).collect();
        Self::new(self.kind, &e)
    }

    pub fn inverse(&self) -> Self {
        self.pow(8)
    }

    /// k with χ(g) = ζᵏ.
    pub fn value_log(&self, g: &GroupElement) -> u32 {
        let u = self.kind.unit();
        self.exps.iter().zip(&g.exps).map(|(a, b)| a * b * u).sum::<u32>() % 9
    }

    /// Character with the given ζ-logarithms on the generators, if they
    /// respect the generator orders.
    pub fn from_generator_logs(kind: GroupKind, logs: &[u32]) -> Option<Self> {
        let u = kind.unit();
        if logs.iter().any(|l| l % u != 0) {
            return None;
        }
        let e: Vec<u32> = logs.iter().map(|l| l / u).collect();
        Some(Self::new(kind, &e))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad character `{s}`"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "Z9" => Ok(Self::new(GroupKind::Z9, &[rest.parse().map_err(|_| bad())?])),
            "Z3xZ3" => {
                let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                let (i, j) = inner.split_once(',').ok_or_else(bad)?;
                Ok(Self::new(GroupKind::Z3xZ3, &[i.trim().parse().map_err(|_| bad())?, j.trim().parse().map_err(|_| bad())?]))
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::Z9 => write!(f, "Z9:{}", self.exps[0]),
            GroupKind::Z3xZ3 => write!(f, "Z3xZ3:({},{})", self.exps[0], self.exps[1]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_group_is_dual() {
        for kind in [GroupKind::Z9, GroupKind::Z3xZ3] {
            let chars = Character::all(kind);
            assert_eq!(chars.len(), 9);
            let g = AbelianGroup::new(kind);
            // orthogonality: each nontrivial character sums to zero over G,
            // i.e. its values hit every ζ-log coset evenly
            for c in &chars {
                let logs: Vec<u32> = g.elements().iter().map(|e| c.value_log(e)).collect();
                if c.is_trivial() {
                    assert!(logs.iter().all(|&l| l == 0));
                } else {
                    assert!(logs.iter().any(|&l| l != 0));
                }
                assert_eq!(Character::parse(&c.to_string()).unwrap(), *c);
                assert!(c.mul(&c.inverse()).is_trivial());
            }
        }
        assert_eq!(Character::new(GroupKind::Z3xZ3, &[1, 2]).to_string(), "Z3xZ3:(1,2)");
        assert!(Character::parse("Z4:1").is_err());
    }

    use super::super::AbelianGroup;
}
