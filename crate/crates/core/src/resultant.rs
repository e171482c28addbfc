//! Sylvester and Macaulay resultants via fraction-free elimination.
//!
//! The Macaulay resultant of three ternary forms vanishes exactly when the
//! forms share a projective common zero over the algebraic closure. It is
//! computed as the quotient of two exact determinants (the classical
//! Macaulay matrix and its non-reduced submatrix); when the denominator
//! degenerates, a seeded invertible coordinate change is applied and the
//! computation retried. Values are normalized only up to a nonzero
//! rational constant, which is all the callers need (zero tests and root
//! finding).

use num::{BigInt, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{int, linear_change, mat3_det, Mat3, Mono, MultiPoly, Scalar};

const MACAULAY_TRIES: u32 = 12;

// ---- Fraction-free determinants ----

/// Bareiss determinant over polynomial entries; all divisions are exact.
pub(crate) fn bareiss_det_poly(mat: &mut Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = mat.len();
    if n == 0 {
        return MultiPoly::one(2);
    }
    let arity = mat[0][0].arity();
    let mut sign = false;
    let mut prev = MultiPoly::one(arity);
    for k in 0..n {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(k, i);
                    sign = !sign;
                }
                None => return MultiPoly::zero(arity),
            }
        }
        let pivot = mat[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = pivot.mul(&mat[i][j]).sub(&mat[i][k].mul(&mat[k][j]));
                mat[i][j] = num
                    .try_div_exact(&prev)
                    .expect("bareiss division is exact");
            }
            mat[i][k] = MultiPoly::zero(arity);
        }
        prev = pivot;
    }
    let det = mat[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

fn bareiss_det_int(mat: &mut Vec<Vec<BigInt>>) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(k, i);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = mat[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &pivot * &mat[i][j] - &mat[i][k] * &mat[k][j];
                mat[i][j] = num / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = pivot;
    }
    let det = mat[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

// ---- Sylvester resultant ----

/// Resultant of `p` and `q` with respect to one variable, as a polynomial
/// in the remaining variables. Follows the classical conventions:
/// `res(p, q) = p^deg(q)` when `p` is free of the variable, zero when
/// either input is the zero polynomial.
pub fn resultant(p: &MultiPoly, q: &MultiPoly, var: usize) -> Result<MultiPoly> {
    assert_eq!(p.arity(), q.arity(), "arity mismatch in resultant");
    let arity = p.arity();
    if p.is_zero() && q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_zero() || q.is_zero() {
        return Ok(MultiPoly::zero(arity));
    }
    let m = p.degree_in_var(var).unwrap_or(0) as usize;
    let n = q.degree_in_var(var).unwrap_or(0) as usize;
    if m == 0 && n == 0 {
        return Ok(MultiPoly::one(arity));
    }
    if m == 0 {
        return Ok(p.pow(n as u32));
    }
    if n == 0 {
        return Ok(q.pow(m as u32));
    }
    // Sylvester matrix with coefficients in descending powers of the
    // variable: n shifted rows of p, then m shifted rows of q.
    let pc = p.coeffs_in_var(var);
    let qc = q.coeffs_in_var(var);
    let size = m + n;
    let zero = MultiPoly::zero(arity);
    let mut mat = vec![vec![zero.clone(); size]; size];
    for row in 0..n {
        for (k, c) in pc.iter().rev().enumerate() {
            mat[row][row + k] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in qc.iter().rev().enumerate() {
            mat[n + row][row + k] = c.clone();
        }
    }
    Ok(bareiss_det_poly(&mut mat))
}

// ---- Macaulay resultant ----

fn monomials_of_degree(t: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    for a in 0..=t {
        for b in 0..=(t - a) {
            let c = t - a - b;
            out.push(Mono::new([a as u16, b as u16, c as u16]));
        }
    }
    // descending graded-lex for deterministic layouts
    out.sort_by(|x, y| y.cmp(x));
    out
}

/// Assignment index: first `i` with `x_i^(d_i)` dividing the monomial.
fn assign_row(m: &Mono, degrees: [u32; 3]) -> usize {
    (0..3)
        .find(|&i| (m.exp(i) as u32) >= degrees[i])
        .expect("every monomial of critical degree is divisible by some power")
}

fn is_reduced_mono(m: &Mono, degrees: [u32; 3]) -> bool {
    (0..3)
        .filter(|&i| (m.exp(i) as u32) >= degrees[i])
        .count()
        == 1
}

fn seeded_change(seed: u64, attempt: u32) -> Mat3 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
    loop {
        let mut m: Mat3 = Default::default();
        for row in m.iter_mut() {
            for e in row.iter_mut() {
                *e = int(rng.random_range(-3i64..=3));
            }
        }
        if !mat3_det(&m).is_zero() {
            return m;
        }
    }
}

/// Clear denominators so all coefficients are integers; scales the
/// resultant by a nonzero constant only.
fn integerize(p: &MultiPoly) -> MultiPoly {
    let mut l = BigInt::one();
    for (_, c) in p.terms() {
        l = num::integer::lcm(l, c.denom().clone());
    }
    p.scale(&Scalar::from_integer(l))
}

struct MacaulayLayout {
    cols: Vec<Mono>,
    degrees: [u32; 3],
}

impl MacaulayLayout {
    fn new(degrees: [u32; 3]) -> Self {
        let t = degrees.iter().sum::<u32>() - 2;
        MacaulayLayout {
            cols: monomials_of_degree(t),
            degrees,
        }
    }

    /// For each row monomial: (assigned form index, multiplier monomial).
    fn rows(&self) -> Vec<(usize, Mono)> {
        self.cols
            .iter()
            .map(|m| {
                let i = assign_row(m, self.degrees);
                let mut exps = [m.exp(0), m.exp(1), m.exp(2)];
                exps[i] -= self.degrees[i] as u16;
                (i, Mono::new(exps))
            })
            .collect()
    }

    fn reduced_mask(&self) -> Vec<bool> {
        self.cols
            .iter()
            .map(|m| is_reduced_mono(m, self.degrees))
            .collect()
    }
}

/// Macaulay resultant of three ternary forms with the given nominal
/// degrees, up to a nonzero rational constant. Zero iff the forms share a
/// projective common zero over the algebraic closure.
pub fn macaulay3(forms: [&MultiPoly; 3], degrees: [u32; 3], seed: u64) -> Result<Scalar> {
    assert!(forms.iter().all(|f| f.arity() == 3));
    if forms.iter().any(|f| f.is_zero()) {
        // A zero form vanishes everywhere and two plane curves always meet.
        return Ok(Scalar::zero());
    }
    if let Some(i) = (0..3).find(|&i| degrees[i] == 0) {
        // A nonzero constant never vanishes, so there is no common zero.
        let _ = i;
        return Ok(Scalar::one());
    }
    let ints: Vec<MultiPoly> = forms.iter().map(|f| integerize(f)).collect();
    for attempt in 0..MACAULAY_TRIES {
        let moved: Vec<MultiPoly> = if attempt == 0 {
            ints.clone()
        } else {
            let m = seeded_change(seed, attempt);
            ints.iter()
                .map(|f| integerize(&linear_change(f, &m).expect("seeded matrix invertible")))
                .collect()
        };
        let layout = MacaulayLayout::new(degrees);
        let rows = layout.rows();
        let reduced = layout.reduced_mask();
        let n = layout.cols.len();
        let col_index = |m: &Mono| layout.cols.iter().position(|c| c == m).expect("degree t");

        let mut big = vec![vec![BigInt::zero(); n]; n];
        for (r, (fi, mult)) in rows.iter().enumerate() {
            for (m, c) in moved[*fi].terms() {
                let col = col_index(&mult.mul(m));
                big[r][col] = c.to_integer();
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&i| !reduced[i]).collect();
        let mut minor: Vec<Vec<BigInt>> = keep
            .iter()
            .map(|&r| keep.iter().map(|&c| big[r][c].clone()).collect())
            .collect();
        let det_minor = bareiss_det_int(&mut minor);
        let det_full = bareiss_det_int(&mut big);
        if !det_minor.is_zero() {
            return Ok(Scalar::new(det_full, det_minor));
        }
        if !det_full.is_zero() {
            // resultant divides the full determinant, so it is nonzero
            return Ok(Scalar::from_integer(det_full));
        }
    }
    Err(Error::MacaulayDegenerate {
        tries: MACAULAY_TRIES,
    })
}

/// Parameterized Macaulay resultant: form `i` is `s*G_i + t*H_i` for
/// parameters `(s, t)`. Returns a binary form in the parameters, up to a
/// nonzero rational constant; identically zero when every parameter value
/// yields a common zero.
pub fn macaulay3_param(
    pairs: [(&MultiPoly, &MultiPoly); 3],
    degrees: [u32; 3],
    seed: u64,
) -> Result<MultiPoly> {
    assert!(pairs
        .iter()
        .all(|(g, h)| g.arity() == 3 && h.arity() == 3));
    if pairs.iter().any(|(g, h)| g.is_zero() && h.is_zero()) {
        return Ok(MultiPoly::zero(2));
    }
    assert!(
        degrees.iter().all(|&d| d >= 1),
        "parameterized resultant expects positive degrees"
    );
    let ints: Vec<(MultiPoly, MultiPoly)> = pairs
        .iter()
        .map(|(g, h)| {
            // one scale per pair so the parameter direction is preserved
            let mut l = BigInt::one();
            for (_, c) in g.terms().chain(h.terms()) {
                l = num::integer::lcm(l, c.denom().clone());
            }
            let s = Scalar::from_integer(l);
            (g.scale(&s), h.scale(&s))
        })
        .collect();
    let param_s = MultiPoly::var(2, 0);
    let param_t = MultiPoly::var(2, 1);
    for attempt in 0..MACAULAY_TRIES {
        let moved: Vec<(MultiPoly, MultiPoly)> = if attempt == 0 {
            ints.clone()
        } else {
            let m = seeded_change(seed, attempt ^ 0x9e37);
            ints.iter()
                .map(|(g, h)| {
                    (
                        linear_change(g, &m).expect("invertible"),
                        linear_change(h, &m).expect("invertible"),
                    )
                })
                .collect()
        };
        let layout = MacaulayLayout::new(degrees);
        let rows = layout.rows();
        let reduced = layout.reduced_mask();
        let n = layout.cols.len();
        let col_index = |m: &Mono| layout.cols.iter().position(|c| c == m).expect("degree t");

        let mut big = vec![vec![MultiPoly::zero(2); n]; n];
        for (r, (fi, mult)) in rows.iter().enumerate() {
            let (g, h) = &moved[*fi];
            for (m, c) in g.terms() {
                let col = col_index(&mult.mul(m));
                big[r][col] = big[r][col].add(&param_s.scale(c));
            }
            for (m, c) in h.terms() {
                let col = col_index(&mult.mul(m));
                big[r][col] = big[r][col].add(&param_t.scale(c));
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&i| !reduced[i]).collect();
        let mut minor: Vec<Vec<MultiPoly>> = keep
            .iter()
            .map(|&r| keep.iter().map(|&c| big[r][c].clone()).collect())
            .collect();
        let det_minor = bareiss_det_poly(&mut minor);
        let det_full = bareiss_det_poly(&mut big);
        if det_full.is_zero() {
            return Ok(MultiPoly::zero(2));
        }
        if !det_minor.is_zero() {
            if let Some(q) = det_full.try_div_exact(&det_minor) {
                return Ok(q);
            }
        }
    }
    Err(Error::MacaulayDegenerate {
        tries: MACAULAY_TRIES,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcd::coprime;
    use crate::parse::poly;
    use crate::poly::CanonicalForm;
    use crate::DEFAULT_SEED;

    fn p3(s: &str) -> MultiPoly {
        poly(s, 3).unwrap()
    }

    #[test]
    fn sylvester_examples() {
        let r = resultant(&p3("x - y"), &p3("x + y"), 0).unwrap();
        assert_eq!(r, p3("2*y"));

        let r = resultant(&p3("x*y"), &p3("z^2"), 2).unwrap();
        assert_eq!(r, p3("x^2*y^2"));

        let r = resultant(&p3("x"), &p3("x"), 0).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn resultant_vanishes_iff_common_factor_in_var() {
        let cases = [
            ("(x + y)*(x - z)", "(x + y)*(x + z)", true),
            ("x^2 + y^2", "x + z", false),
            ("(x - 2*y)*(x + z)", "(x - 2*y)*x", true),
            ("x^2 - y*z", "x^3 + z^3", false),
        ];
        for (a, b, share) in cases {
            let (a, b) = (p3(a), p3(b));
            let r = resultant(&a, &b, 0).unwrap();
            assert_eq!(r.is_zero(), share, "res_x({a}, {b})");
            assert_eq!(!coprime(&a, &b), share);
        }
    }

    #[test]
    fn macaulay_morphism_tests() {
        let seed = DEFAULT_SEED;
        let r = macaulay3([&p3("x"), &p3("y"), &p3("z")], [1, 1, 1], seed).unwrap();
        assert!(!r.is_zero());

        let r = macaulay3([&p3("x^2"), &p3("x*y"), &p3("x*z")], [2, 2, 2], seed).unwrap();
        assert!(r.is_zero());

        let r = macaulay3([&p3("x^2"), &p3("y^2"), &p3("z^2")], [2, 2, 2], seed).unwrap();
        assert!(!r.is_zero());

        let r = macaulay3(
            [&p3("x^2"), &p3("y^2"), &p3("z^2 + x*y")],
            [2, 2, 2],
            seed,
        )
        .unwrap();
        assert!(!r.is_zero());
    }

    #[test]
    fn macaulay_zero_form_short_circuits() {
        let z = MultiPoly::zero(3);
        let r = macaulay3([&p3("x^2"), &p3("y^2"), &z], [2, 2, 2], DEFAULT_SEED).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn parameterized_discriminant_of_binomial_conic_pencil() {
        // pencil (x*y, z^2): partial pairs (y,0), (x,0), (0,2z)
        let disc = macaulay3_param(
            [
                (&p3("y"), &MultiPoly::zero(3)),
                (&p3("x"), &MultiPoly::zero(3)),
                (&MultiPoly::zero(3), &p3("2*z")),
            ],
            [1, 1, 1],
            DEFAULT_SEED,
        )
        .unwrap();
        let c = CanonicalForm::new(&disc).unwrap();
        assert_eq!(c.poly(), &poly("u^2*v", 2).unwrap());
    }

    #[test]
    fn parameterized_discriminant_of_conic_pencil_with_single_base_point() {
        // pencil (x^2 + y*z, y^2): partial pairs (2x,0), (z,2y), (y,0)
        let disc = macaulay3_param(
            [
                (&p3("2*x"), &MultiPoly::zero(3)),
                (&p3("z"), &p3("2*y")),
                (&p3("y"), &MultiPoly::zero(3)),
            ],
            [1, 1, 1],
            DEFAULT_SEED,
        )
        .unwrap();
        let c = CanonicalForm::new(&disc).unwrap();
        assert_eq!(c.poly(), &poly("u^3", 2).unwrap());
    }

    #[test]
    fn parameterized_identically_zero() {
        // pencil (x^2, y^2): the z-partial pair is (0, 0)
        let disc = macaulay3_param(
            [
                (&p3("2*x"), &MultiPoly::zero(3)),
                (&MultiPoly::zero(3), &p3("2*y")),
                (&MultiPoly::zero(3), &MultiPoly::zero(3)),
            ],
            [1, 1, 1],
            DEFAULT_SEED,
        )
        .unwrap();
        assert!(disc.is_zero());
    }

    #[test]
    fn cubic_pencil_discriminant_is_zero_form() {
        // pencil (x^2*y, z^3): [0:1:0] is singular on every member
        let a = p3("x^2*y");
        let b = p3("z^3");
        let disc = macaulay3_param(
            [
                (&a.partial(0), &b.partial(0)),
                (&a.partial(1), &b.partial(1)),
                (&a.partial(2), &b.partial(2)),
            ],
            [2, 2, 2],
            DEFAULT_SEED,
        )
        .unwrap();
        assert!(disc.is_zero());
    }
}
