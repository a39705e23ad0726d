//! Reference polynomials: the eigen-coordinates of each family and the bases
//! of invariant cubics they are compared against.

use crate::polyring::{CycPoly, Monomial, Poly};
use crate::scalars::{CyclotomicScalar as C, Q9};

fn zeta(k: i64) -> C {
    C::zeta_pow(k)
}

fn omega(k: i64) -> C {
    C::zeta_pow(3 * k)
}

fn form(nvars: usize, terms: &[(C, Vec<u32>)]) -> CycPoly {
    let mut p = Poly::zero(nvars);
    for (c, e) in terms {
        p.add_term(&Q9, Monomial(e.clone()), c);
    }
    p
}

/// x^a y^b z^c on (P¹)³, homogenized to multidegree (d, d, d).
fn segre_term(d: u32, [a, b, c]: [u32; 3]) -> Vec<u32> {
    vec![d - a, a, d - b, b, d - c, c]
}

fn segre_form(d: u32, terms: &[(C, [u32; 3])]) -> CycPoly {
    form(6, &terms.iter().map(|(c, e)| (c.clone(), segre_term(d, *e))).collect::<Vec<_>>())
}

/// The eight eigen-coordinates z_j of (P¹)³, indexed by j.
pub fn segre_coordinates() -> Vec<(u32, CycPoly)> {
    let one = C::one;
    let (x, y, z) = ([1, 0, 0], [0, 1, 0], [0, 0, 1]);
    let (xy, yz, xz) = ([1, 1, 0], [0, 1, 1], [1, 0, 1]);
    let lin = |ky: i64, kx: i64| segre_form(1, &[(one(), z), (zeta(ky), y), (zeta(kx), x)]);
    let quad = |kyz: i64, kxz: i64| segre_form(1, &[(one(), xy), (zeta(kyz), yz), (zeta(kxz), xz)]);
    vec![
        (1, lin(7, 5)),
        (2, quad(1, 5)),
        (3, segre_form(1, &[(one(), [0, 0, 0])])),
        (4, lin(1, 2)),
        (5, quad(7, 8)),
        (6, segre_form(1, &[(one(), [1, 1, 1])])),
        (7, lin(4, 8)),
        (8, quad(4, 2)),
    ]
}

/// The listed basis of invariant cubics on (P¹)³.
pub fn segre_invariant_cubics() -> Vec<CycPoly> {
    let one = C::one;
    let t = |terms: &[(C, [u32; 3])]| segre_form(3, terms);
    vec![
        t(&[(one(), [0, 0, 0])]),
        t(&[(one(), [3, 0, 0]), (one(), [0, 3, 0]), (one(), [0, 0, 3])]),
        t(&[(one(), [2, 1, 0]), (one(), [0, 2, 1]), (omega(1), [1, 0, 2])]),
        t(&[(one(), [2, 0, 1]), (omega(1), [1, 2, 0]), (omega(1), [0, 1, 2])]),
        t(&[(one(), [3, 3, 0]), (one(), [0, 3, 3]), (one(), [3, 0, 3])]),
        t(&[(one(), [3, 2, 1]), (omega(1), [1, 3, 2]), (one(), [2, 1, 3])]),
        t(&[(one(), [3, 1, 2]), (omega(2), [2, 3, 1]), (one(), [1, 2, 3])]),
        t(&[(one(), [3, 3, 3])]),
    ]
}

/// Σ ω^k x^α on P² × P²*, each term given as (k, α) with α of length 6.
fn flag_form(terms: &[(i64, [u32; 6])]) -> CycPoly {
    form(6, &terms.iter().map(|(k, e)| (omega(*k), e.to_vec())).collect::<Vec<_>>())
}

/// Sum over the cyclic shifts (0,1,2) → (1,2,0) → (2,0,1) of an exponent
/// pattern in x (first three) and y (last three), with ω-powers.
fn cyclic(ks: [i64; 3], xe: [u32; 3], ye: [u32; 3]) -> Vec<(i64, [u32; 6])> {
    (0..3)
        .map(|s| {
            let mut e = [0u32; 6];
            for i in 0..3 {
                e[(i + s) % 3] = xe[i];
                e[3 + (i + s) % 3] = ye[i];
            }
            (ks[s], e)
        })
        .collect()
}

fn product(a: &CycPoly, b: &CycPoly) -> CycPoly {
    a.mul(&Q9, b)
}

/// The eight nontrivial bilinear eigenforms on P² × P²*.
pub fn flag_coordinates() -> Vec<CycPoly> {
    let bil = |ks: [i64; 3], shift: u32| {
        let mut ye = [0u32; 3];
        ye[shift as usize] = 1;
        flag_form(&cyclic(ks, [1, 0, 0], ye))
    };
    vec![
        bil([0, 1, 2], 0),
        bil([0, 2, 1], 0),
        bil([0, 0, 0], 1),
        bil([0, 0, 0], 2),
        bil([0, 1, 2], 1),
        bil([0, 1, 2], 2),
        bil([0, 2, 1], 1),
        bil([0, 2, 1], 2),
    ]
}

/// The twelve listed invariants of bidegree (3,3).
pub fn flag_invariant_cubics() -> Vec<CycPoly> {
    let x = |ks: [i64; 3], e: [u32; 3]| flag_form(&cyclic(ks, e, [0, 0, 0]));
    let y = |ks: [i64; 3], e: [u32; 3]| flag_form(&cyclic(ks, [0, 0, 0], e));
    let x_cubes = |ks| x(ks, [3, 0, 0]);
    let y_cubes = |ks| y(ks, [3, 0, 0]);
    let x_prod = flag_form(&[(0, [1, 1, 1, 0, 0, 0])]);
    let y_prod = flag_form(&[(0, [0, 0, 0, 1, 1, 1])]);
    // x0²x1 + … and the reflected x1²x0 + … cycles
    let xf = |ks| x(ks, [2, 1, 0]);
    let xb = |ks: [i64; 3]| flag_form(&cyclic(ks, [1, 2, 0], [0, 0, 0]));
    let yf = |ks| y(ks, [2, 1, 0]);
    let yb = |ks: [i64; 3]| flag_form(&cyclic(ks, [0, 0, 0], [1, 2, 0]));
    let triv = [0, 0, 0];
    let (a, b) = ([0, 1, 2], [0, 2, 1]);
    vec![
        product(&x_cubes(triv), &y_cubes(triv)),
        product(&x_cubes(triv), &y_prod),
        product(&x_prod, &y_cubes(triv)),
        product(&x_prod, &y_prod),
        product(&xf(triv), &yf(triv)),
        product(&xb(triv), &yb(triv)),
        product(&xf(a), &yf(b)),
        product(&xb(a), &yb(b)),
        product(&xf(b), &yf(a)),
        product(&xb(b), &yb(a)),
        product(&x_cubes(a), &y_cubes(b)),
        product(&x_cubes(b), &y_cubes(a)),
    ]
}

/// The four listed invariants of bidegree (2,2).
pub fn flag_invariant_quadrics() -> Vec<CycPoly> {
    let triv = [0, 0, 0];
    vec![
        flag_form(&cyclic(triv, [2, 0, 0], [2, 0, 0])),
        flag_form(&cyclic(triv, [2, 0, 0], [0, 1, 1])),
        flag_form(&cyclic(triv, [0, 1, 1], [2, 0, 0])),
        flag_form(&cyclic(triv, [1, 1, 0], [1, 1, 0])),
    ]
}

/// Terms c · x^α z^e on the cone ring (x0, x1, x2, z).
fn cone_form(terms: &[(C, [u32; 4])]) -> CycPoly {
    form(4, &terms.iter().map(|(c, e)| (c.clone(), e.to_vec())).collect::<Vec<_>>())
}

/// Cyclic sum of x^α z^e with ω-powers on the shifts.
fn cone_cyclic(ks: [i64; 3], xe: [u32; 3], e: u32) -> CycPoly {
    let terms: Vec<(C, [u32; 4])> = (0..3)
        .map(|s| {
            let mut m = [0, 0, 0, e];
            for i in 0..3 {
                m[(i + s) % 3] = xe[i];
            }
            (omega(ks[s]), m)
        })
        .collect();
    cone_form(&terms)
}

/// Labels (i, j) of the cone's eight coordinates, in the order z followed by
/// the seven sections of [`crate::ambient::AmbientThreefold::cone_sigma_coordinates`].
pub const CONE_COORDINATE_LABELS: [[u32; 2]; 8] = [[0, 1], [1, 2], [2, 2], [1, 1], [2, 1], [1, 0], [2, 0], [0, 2]];

/// The listed basis of invariant cubics on the cone.
pub fn cone_invariant_cubics() -> Vec<CycPoly> {
    let triv = [0, 0, 0];
    vec![
        cone_form(&[(C::one(), [0, 0, 0, 3])]),
        cone_cyclic([0, 2, 1], [4, 1, 1], 1),
        cone_cyclic([0, 2, 1], [3, 3, 0], 1),
        cone_cyclic(triv, [6, 3, 0], 0),
        cone_cyclic(triv, [6, 0, 3], 0),
        cone_cyclic(triv, [5, 2, 2], 0),
        cone_cyclic(triv, [4, 4, 1], 0),
        cone_form(&[(C::one(), [3, 3, 3, 0])]),
    ]
}
