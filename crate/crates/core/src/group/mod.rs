//! The groups Z₉ and Z₃², their characters, and linear actions on
//! polynomial rings by substitution.
//!
//! An element g acts on a polynomial by pullback, f ↦ f∘g, followed by a
//! scalar twist t(g)ᵏ where k is a linear function of the term's grading.

mod character;

pub use character::{Character, GroupElement, GroupKind};

use crate::error::{Error, Result};
use crate::polyring::{row_reduce, Poly, PolyRing, SectionSpace, Substitution};
use crate::scalars::{CyclotomicScalar, Field, Q9};
use rayon::prelude::*;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    pub kind: GroupKind,
}

impl AbelianGroup {
    pub fn new(kind: GroupKind) -> Self {
        Self { kind }
    }

    pub fn order(&self) -> usize {
        9
    }

    /// Elements in lexicographic order of their exponent tuples.
    pub fn elements(&self) -> Vec<GroupElement> {
        match self.kind {
            GroupKind::Z9 => (0..9).map(|a| GroupElement::new(self.kind, &[a])).collect(),
            GroupKind::Z3xZ3 => (0..3).flat_map(|i| (0..3).map(move |j| GroupElement::new(self.kind, &[i, j]))).collect(),
        }
    }

    pub fn nontrivial_elements(&self) -> Vec<GroupElement> {
        self.elements().into_iter().filter(|g| !g.is_identity()).collect()
    }

    pub fn generators(&self) -> Vec<GroupElement> {
        let n = self.kind.generator_orders().len();
        (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                GroupElement::new(self.kind, &e)
            })
            .collect()
    }

    /// One generator per cyclic subgroup of order 3 (for Z₉ there is one).
    pub fn order_three_subgroups(&self) -> Vec<GroupElement> {
        match self.kind {
            GroupKind::Z9 => vec![GroupElement::new(self.kind, &[3])],
            GroupKind::Z3xZ3 => [[1, 0], [0, 1], [1, 1], [1, 2]].iter().map(|e| GroupElement::new(self.kind, e)).collect(),
        }
    }
}

/// Scalar correction t(g)^k applied to a term, with k = (w · exponents) / d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    pub character: Character,
    pub weights: Vec<u32>,
    pub divisor: u32,
}

/// A group acting on a polynomial ring over `F` by per-generator
/// substitutions and a twist.
#[derive(Clone, Debug)]
pub struct LinearizedGroupAction<F: Field> {
    pub group: AbelianGroup,
    pub ring: PolyRing,
    field: F,
    generators: Vec<Substitution<F::Elem>>,
    elements: Vec<(GroupElement, Substitution<F::Elem>)>,
    pub twist: Twist,
}

/// Failure detail from [`LinearizedGroupAction::verify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionViolation<E> {
    pub relation: String,
    pub witness: Poly<E>,
}

impl LinearizedGroupAction<crate::scalars::CyclotomicField> {
    /// Action over Q(ζ₉) from generator rules written over Q(ζ₉).
    pub fn new(group: AbelianGroup, ring: PolyRing, generators: Vec<Substitution<CyclotomicScalar>>, twist: Twist) -> Result<Self> {
        Self::build(Q9, group, ring, generators, twist)
    }
}

impl<F: Field> LinearizedGroupAction<F> {
    pub fn build(field: F, group: AbelianGroup, ring: PolyRing, generators: Vec<Substitution<F::Elem>>, twist: Twist) -> Result<Self> {
        if generators.len() != group.kind.generator_orders().len() {
            return Err(Error::Precondition("one rule per generator required".into()));
        }
        if twist.weights.len() != ring.nvars() || twist.divisor == 0 || twist.character.kind != group.kind {
            return Err(Error::Precondition("twist does not match ring or group".into()));
        }
        let id = Substitution::identity(&field, &ring);
        let mut elements = Vec::new();
        for g in group.elements() {
            let mut rule = id.clone();
            for (gen, &e) in generators.iter().zip(&g.exps) {
                for _ in 0..e {
                    rule = rule.then(&field, gen)?;
                }
            }
            elements.push((g, rule));
        }
        Ok(Self { group, ring, field, generators, elements, twist })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// The same action with coefficients mapped into another field.
    pub fn specialize<G: Field>(&self, target: &G) -> Result<LinearizedGroupAction<G>>
    where
        F: Field<Elem = CyclotomicScalar>,
    {
        let gens = self.generators.iter().map(|r| r.map_coeffs(target, |c| target.from_cyclotomic(c))).collect::<Result<Vec<_>>>()?;
        LinearizedGroupAction::build(target.clone(), self.group, self.ring.clone(), gens, self.twist.clone())
    }

    pub fn with_twist(&self, character: Character) -> Self {
        let mut out = self.clone();
        out.twist.character = character;
        out
    }

    pub fn rule(&self, g: &GroupElement) -> &Substitution<F::Elem> {
        &self.elements.iter().find(|(e, _)| e == g).expect("element of this group").1
    }

    pub fn generator_rules(&self) -> &[Substitution<F::Elem>] {
        &self.generators
    }

    fn twist_exponent(&self, exps: &[u32]) -> Result<u32> {
        let w: u32 = self.twist.weights.iter().zip(exps).map(|(a, b)| a * b).sum();
        if !w.is_multiple_of(self.twist.divisor) {
            return Err(Error::DegreeMismatch(format!("twist weight {w} not divisible by {}", self.twist.divisor)));
        }
        Ok(w / self.twist.divisor)
    }

    /// g · f.
    pub fn apply(&self, g: &GroupElement, f: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        let field = &self.field;
        let base = self.twist.character.value_log(g);
        let mut by_twist: BTreeMap<u32, Poly<F::Elem>> = BTreeMap::new();
        for (m, c) in f.terms() {
            let k = (base * (self.twist_exponent(&m.0)? % 9)) % 9;
            by_twist.entry(k).or_insert_with(|| Poly::zero(f.nvars())).add_term(field, m.clone(), c);
        }
        let rule = self.rule(g);
        let mut out = Poly::zero(f.nvars());
        for (k, part) in by_twist {
            let img = part.substitute(field, rule)?;
            out = out.add(field, &img.scale(field, &field.zeta_pow(k as i64)));
        }
        Ok(out)
    }

    /// Checks the defining relations exactly on every basis element.
    pub fn verify(&self, basis: &[Poly<F::Elem>]) -> std::result::Result<(), ActionViolation<F::Elem>> {
        let gens = self.group.generators();
        let orders = self.group.kind.generator_orders();
        let fail = |relation: String, witness: &Poly<F::Elem>| ActionViolation { relation, witness: witness.clone() };
        for f in basis {
            for (gi, (g, &o)) in gens.iter().zip(orders).enumerate() {
                let mut h = f.clone();
                for _ in 0..o {
                    h = self.apply_generator(gi, g, &h).map_err(|_| fail(format!("{g}^{o}"), f))?;
                }
                if h != *f {
                    return Err(fail(format!("{g}^{o} = 1"), f));
                }
            }
            if gens.len() == 2 {
                let ab = self.apply_generator(1, &gens[1], f).and_then(|h| self.apply_generator(0, &gens[0], &h));
                let ba = self.apply_generator(0, &gens[0], f).and_then(|h| self.apply_generator(1, &gens[1], &h));
                match (ab, ba) {
                    (Ok(a), Ok(b)) if a == b => {}
                    _ => return Err(fail("[g1,g2] = 1".into(), f)),
                }
            }
        }
        Ok(())
    }

    /// Applies a single generator's rule (not the precomposed element rule),
    /// so relations are tested on the rules as given.
    fn apply_generator(&self, index: usize, g: &GroupElement, f: &Poly<F::Elem>) -> Result<Poly<F::Elem>> {
        let field = &self.field;
        let base = self.twist.character.value_log(g);
        let mut out = Poly::zero(f.nvars());
        for (m, c) in f.terms() {
            let k = (base * (self.twist_exponent(&m.0)? % 9)) % 9;
            let t = Poly::term(field, m.clone(), field.mul(c, &field.zeta_pow(k as i64)));
            out = out.add(field, &t.substitute(field, &self.generators[index])?);
        }
        Ok(out)
    }

    /// Images g · f for every element g, in [`AbelianGroup::elements`] order.
    pub fn orbit_images(&self, f: &Poly<F::Elem>) -> Result<Vec<Poly<F::Elem>>> {
        self.group.elements().par_iter().map(|g| self.apply(g, f)).collect()
    }

    fn project_images(&self, images: &[Poly<F::Elem>], chi: &Character) -> Result<Poly<F::Elem>> {
        let field = &self.field;
        let ninth = field.inv(&field.from_i64(9)).map_err(|_| Error::Precondition("Reynolds operator needs 9 invertible".into()))?;
        let mut acc = Poly::zero(self.ring.nvars());
        for (g, img) in self.group.elements().iter().zip(images) {
            let k = (9 - chi.value_log(g)) % 9;
            acc = acc.add(field, &img.scale(field, &field.zeta_pow(k as i64)));
        }
        Ok(acc.scale(field, &ninth))
    }

    /// (1/9) Σ_g χ(g)⁻¹ (g · f).
    pub fn reynolds_project(&self, f: &Poly<F::Elem>, chi: &Character) -> Result<Poly<F::Elem>> {
        let images = self.orbit_images(f)?;
        self.project_images(&images, chi)
    }

    /// The character χ with g · f = χ(g) f for all g, if f is an eigenvector.
    pub fn eigencharacter(&self, f: &Poly<F::Elem>) -> Result<Option<Character>> {
        if f.is_zero() {
            return Ok(None);
        }
        let field = &self.field;
        let (m, c) = f.terms().next().expect("nonzero");
        let mut logs = Vec::new();
        for g in self.group.generators() {
            let img = self.apply(&g, f)?;
            let Some(ic) = img.coeff(m) else { return Ok(None) };
            let ratio = field.div(ic, c)?;
            let Some(k) = field.zeta_log(&ratio) else { return Ok(None) };
            if img != f.scale(field, &ratio) {
                return Ok(None);
            }
            logs.push(k);
        }
        Ok(Character::from_generator_logs(self.group.kind, &logs))
    }

    /// Splits a space into its nine isotypic pieces.
    pub fn eigenspace_decompose(&self, space: &SectionSpace<F::Elem>) -> Result<BTreeMap<Character, SectionSpace<F::Elem>>> {
        let images = space.basis.par_iter().map(|b| self.orbit_images(b)).collect::<Result<Vec<_>>>()?;
        let mut out = BTreeMap::new();
        for chi in Character::all(self.group.kind) {
            let projected = images.iter().map(|im| self.project_images(im, &chi)).collect::<Result<Vec<_>>>()?;
            let mut piece = row_reduce(&self.ring, &self.field, &projected, &chi.to_string())?;
            if piece.grading.is_empty() {
                piece.grading = space.grading.clone();
            }
            out.insert(chi, piece);
        }
        Ok(out)
    }

    /// The unique twist making the characters of `coordinates` exactly the
    /// eight nontrivial characters.
    pub fn admissible_twist(&self, coordinates: &[Poly<F::Elem>]) -> Result<Character> {
        if coordinates.len() != 8 {
            return Err(Error::Precondition(format!("expected 8 coordinate sections, got {}", coordinates.len())));
        }
        let natural = self.with_twist(Character::trivial(self.group.kind));
        for c in coordinates {
            if natural.eigencharacter(c)?.is_none() {
                return Err(Error::NonDiagonalizable(c.render(&self.field, &self.ring)));
            }
        }
        let target: Vec<Character> = Character::all(self.group.kind).into_iter().filter(|c| !c.is_trivial()).collect();
        let mut found = Vec::new();
        for t in Character::all(self.group.kind) {
            let twisted = self.with_twist(t.clone());
            let mut chars = coordinates.iter().map(|c| twisted.eigencharacter(c).map(|x| x.expect("eigenvector"))).collect::<Result<Vec<_>>>()?;
            chars.sort();
            if chars == target {
                found.push(t);
            }
        }
        match found.len() {
            1 => Ok(found.pop().unwrap()),
            0 => Err(Error::NoAdmissibleTwist("no character omits the trivial one".into())),
            n => Err(Error::NoAdmissibleTwist(format!("{n} candidate twists"))),
        }
    }
}
