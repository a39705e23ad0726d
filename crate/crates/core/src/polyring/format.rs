//! Text form of polynomials: terms `(scalar) * x0^2*y1` in canonical order
//! joined by ` + `; a constant term is just `(scalar)` and zero is `0`.

use super::{CycPoly, Monomial, Poly, PolyRing};
use crate::error::{Error, Result};
use crate::scalars::{CyclotomicScalar, Field, Q9};

pub fn render_monomial(ring: &PolyRing, m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { ring.var_name(v).to_string() } else { format!("{}^{e}", ring.var_name(v)) })
        .collect();
    parts.join("*")
}

impl<E: Clone + PartialEq + Eq + std::hash::Hash + std::fmt::Debug + Send + Sync> Poly<E> {
    pub fn render<F: Field<Elem = E>>(&self, field: &F, ring: &PolyRing) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.sorted_terms(ring)
            .into_iter()
            .map(|(m, c)| {
                let mono = render_monomial(ring, m);
                if mono.is_empty() {
                    format!("({})", field.render(c))
                } else {
                    format!("({}) * {mono}", field.render(c))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

pub fn parse_monomial(ring: &PolyRing, s: &str) -> Result<Monomial> {
    let mut e = vec![0u32; ring.nvars()];
    for factor in s.split('*').map(str::trim).filter(|f| !f.is_empty()) {
        let (name, pow) = match factor.split_once('^') {
            Some((n, p)) => (n.trim(), p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?),
            None => (factor, 1),
        };
        let v = ring.var_index(name).ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
        e[v] += pow;
    }
    Ok(Monomial(e))
}

/// Parses the rendering of a polynomial with cyclotomic coefficients.
pub fn parse_poly(ring: &PolyRing, s: &str) -> Result<CycPoly> {
    let s = s.trim();
    let mut p = Poly::zero(ring.nvars());
    if s == "0" {
        return Ok(p);
    }
    let mut rest = s;
    loop {
        let body = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("expected `(` at `{rest}`")))?;
        let close = body.find(')').ok_or_else(|| Error::Parse("unbalanced parenthesis".into()))?;
        let coeff = CyclotomicScalar::parse(&body[..close])?;
        let after = &body[close + 1..];
        let (mono, next) = match after.find(" + (") {
            Some(i) => (&after[..i], Some(&after[i + 3..])),
            None => (after, None),
        };
        let mono = mono.trim();
        let m = if mono.is_empty() {
            Monomial::one(ring.nvars())
        } else {
            let body = mono.strip_prefix('*').ok_or_else(|| Error::Parse(format!("expected `*` before `{mono}`")))?;
            parse_monomial(ring, body)?
        };
        p.add_term(&Q9, m, &coeff);
        match next {
            Some(n) => rest = n,
            None => break,
        }
    }
    Ok(p)
}
