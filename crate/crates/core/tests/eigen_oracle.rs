//! Character tables recomputed from monomial traces and orthogonality.
//!
//! Every generator acts on variables by v ↦ ζ^p · v', so a group element maps
//! each monomial to ζ^phase times a monomial. Traces only need the monomials
//! an element fixes, and dim χ = (1/|G|) Σ_g conj χ(g) tr(g).

use campedelli_core::campedelli::{build_family, eigenspace_table, FamilyLabel};
use campedelli_core::scalars::{PrimeField, Q9};
use std::collections::BTreeMap;

/// Image of each variable as (target variable, ζ-exponent).
type Rule = Vec<(usize, u32)>;

fn apply(rule: &Rule, mono: &[u32]) -> (Vec<u32>, u32) {
    // f ∘ g: the variable v is replaced by ζ^p v'
    let mut out = vec![0; mono.len()];
    let mut phase = 0;
    for (v, &e) in mono.iter().enumerate() {
        let (t, p) = rule[v];
        out[t] += e;
        phase += p * e;
    }
    (out, phase % 9)
}

fn monomials(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    if nvars == 1 {
        return vec![vec![deg]];
    }
    let mut out = Vec::new();
    for e in 0..=deg {
        for mut rest in monomials(nvars - 1, deg - e) {
            rest.insert(0, e);
            out.push(rest);
        }
    }
    out
}

fn product(blocks: &[Vec<Vec<u32>>]) -> Vec<Vec<u32>> {
    blocks.iter().fold(vec![vec![]], |acc, b| acc.iter().flat_map(|a| b.iter().map(move |m| [a.clone(), m.clone()].concat())).collect())
}

/// One basis monomial with its twist exponent k (the twist contributes t(g)^k).
struct Basis {
    monos: Vec<(Vec<u32>, u32)>,
    /// +1 or −1: subtracted pieces of a quotient carry −1.
    sign: i64,
}

/// ζ-exponent histogram of tr(g) for g = word of generators.
fn trace(pieces: &[Basis], word: &[usize], gens: &[Rule], twist_log: &[u32]) -> [i64; 9] {
    let mut hist = [0i64; 9];
    for piece in pieces {
        for (m, k) in &piece.monos {
            let mut cur = m.clone();
            let mut phase = 0;
            for &g in word {
                let (next, p) = apply(&gens[g], &cur);
                cur = next;
                phase += p + twist_log[g] * k;
            }
            if cur == *m {
                hist[(phase % 9) as usize] += piece.sign;
            }
        }
    }
    hist
}

fn zeta_sum(hist: &[i64; 9], shift: u32) -> (f64, f64) {
    hist.iter().enumerate().fold((0.0, 0.0), |(re, im), (e, &c)| {
        let a = 2.0 * std::f64::consts::PI * ((e as u32 + 9 - shift % 9) % 9) as f64 / 9.0;
        (re + c as f64 * a.cos(), im + c as f64 * a.sin())
    })
}

/// Elements as exponent vectors over generators of the given orders, and
/// characters as exponent vectors with χ(g) = ζ^{unit · Σ aᵢbᵢ}.
fn table(pieces: &[Basis], gens: &[Rule], orders: &[u32], twist_log: &[u32]) -> BTreeMap<Vec<u32>, usize> {
    let unit = 9 / orders[0];
    let elements = product(&orders.iter().map(|&o| (0..o).map(|e| vec![e]).collect()).collect::<Vec<_>>());
    let traces: Vec<(Vec<u32>, [i64; 9])> = elements
        .iter()
        .map(|e| {
            let word: Vec<usize> = e.iter().enumerate().flat_map(|(g, &n)| std::iter::repeat_n(g, n as usize)).collect();
            (e.clone(), trace(pieces, &word, gens, twist_log))
        })
        .collect();
    let mut out = BTreeMap::new();
    for chi in &elements {
        let (mut re, mut im) = (0.0, 0.0);
        for (g, h) in &traces {
            let log = unit * chi.iter().zip(g).map(|(a, b)| a * b).sum::<u32>();
            let (r, i) = zeta_sum(h, log);
            re += r;
            im += i;
        }
        let n = elements.len() as f64;
        assert!(im.abs() < 1e-6 && (re / n - (re / n).round()).abs() < 1e-6, "non-integral multiplicity");
        out.insert(chi.clone(), (re / n).round() as usize);
    }
    out
}

fn oracle(label: FamilyLabel, m: u32) -> BTreeMap<Vec<u32>, usize> {
    let id = |n: usize| -> Rule { (0..n).map(|v| (v, 0)).collect() };
    match label {
        FamilyLabel::A => {
            let b = monomials(2, m);
            let monos = product(&[b.clone(), b.clone(), b]).into_iter().map(|mo| (mo, m)).collect();
            // x ↦ y, y ↦ z, z₀ ↦ x₀, z₁ ↦ ω x₁; twist ζ³ per unit of x-degree
            let g: Rule = vec![(2, 0), (3, 0), (4, 0), (5, 0), (0, 0), (1, 3)];
            table(&[Basis { monos, sign: 1 }], &[g], &[9], &[3])
        }
        FamilyLabel::B1 => {
            let piece = |d: u32, sign| Basis { monos: product(&[monomials(3, d), monomials(3, d)]).into_iter().map(|mo| (mo, 0)).collect(), sign };
            let mut g1 = id(6);
            g1[1].1 = 3;
            g1[2].1 = 6;
            g1[4].1 = 6;
            g1[5].1 = 3;
            let g2: Rule = vec![(1, 0), (2, 0), (0, 0), (4, 0), (5, 0), (3, 0)];
            let mut pieces = vec![piece(m, 1)];
            if m > 0 {
                pieces.push(piece(m - 1, -1));
            }
            table(&pieces, &[g1, g2], &[3, 3], &[0, 0])
        }
        FamilyLabel::B2 => {
            let mut monos = Vec::new();
            for i in 0..=m {
                for a in monomials(3, 3 * i).into_iter().filter(|a| a.iter().all(|&e| e <= 2 * i)) {
                    monos.push(([a, vec![m - i]].concat(), i));
                }
            }
            let g1: Rule = vec![(0, 0), (1, 3), (2, 6), (3, 0)];
            let g2: Rule = vec![(1, 0), (2, 0), (0, 0), (3, 3)];
            // twist character (0,2): trivial on g₁, ω² on g₂
            table(&[Basis { monos, sign: 1 }], &[g1, g2], &[3, 3], &[0, 6])
        }
    }
}

fn library(label: FamilyLabel, m: u32, prime: Option<u64>) -> BTreeMap<Vec<u32>, usize> {
    let fam = build_family(label).unwrap();
    let t = match prime {
        None => eigenspace_table(&fam, &Q9, m).unwrap(),
        Some(p) => eigenspace_table(&fam, &PrimeField::new(p).unwrap(), m).unwrap(),
    };
    t.into_iter().map(|(c, d)| (c.exps.clone(), d)).collect()
}

#[test]
fn tables_match_trace_oracle() {
    for label in FamilyLabel::ALL {
        for m in 1..=3 {
            assert_eq!(library(label, m, None), oracle(label, m), "{label} degree {m}");
        }
    }
}

#[test]
fn oracle_totals_are_section_counts() {
    for label in FamilyLabel::ALL {
        let dims: Vec<usize> = (0..=3).map(|m| oracle(label, m).values().sum()).collect();
        assert_eq!(dims, vec![1, 8, 27, 64], "{label}");
    }
}

#[test]
fn tables_agree_over_every_default_prime() {
    for label in FamilyLabel::ALL {
        let exact = library(label, 3, None);
        for p in [19, 37, 73] {
            assert_eq!(library(label, 3, Some(p)), exact, "{label} over F_{p}");
        }
    }
}
