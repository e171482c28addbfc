//! Sparse polynomials over exact rationals in two or three variables.
//!
//! Arity 2 polynomials are binary forms in `u,v`; arity 3 polynomials are
//! ternary forms in `x,y,z`. Terms are kept in a `BTreeMap` under graded
//! lexicographic order with `x > y > z` (`u > v`), which fixes a leading
//! term, a canonical printing order and a deterministic equality.
//!
//! Coefficients are `num::BigRational`; all arithmetic is exact.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Exact rational coefficient. Always in lowest terms with positive
/// denominator (maintained by `num`).
pub type Scalar = BigRational;

/// Convenience constructor for an integer scalar.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Convenience constructor for the fraction `n/d`.
pub fn frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Variable names per arity; index order matches exponent slots.
pub fn var_names(arity: u8) -> &'static [&'static str] {
    match arity {
        2 => &["u", "v"],
        3 => &["x", "y", "z"],
        _ => unreachable!("arity is 2 or 3"),
    }
}

/// Exponent vector of a monomial. Unused trailing slots stay zero, so a
/// single fixed-size array serves both arities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mono {
    exps: [u16; 3],
}

impl Mono {
    pub fn new(exps: [u16; 3]) -> Self {
        Mono { exps }
    }

    pub fn one() -> Self {
        Mono { exps: [0, 0, 0] }
    }

    pub fn var(index: usize) -> Self {
        let mut exps = [0u16; 3];
        exps[index] = 1;
        Mono { exps }
    }

    pub fn exp(&self, index: usize) -> u16 {
        self.exps[index]
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps == [0, 0, 0]
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono {
            exps: [
                self.exps[0] + other.exps[0],
                self.exps[1] + other.exps[1],
                self.exps[2] + other.exps[2],
            ],
        }
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn div_into(&self, other: &Mono) -> Option<Mono> {
        if self.divides(other) {
            Some(Mono {
                exps: [
                    other.exps[0] - self.exps[0],
                    other.exps[1] - self.exps[1],
                    other.exps[2] - self.exps[2],
                ],
            })
        } else {
            None
        }
    }
}

/// Graded lexicographic: total degree first, then lexicographic with the
/// first variable highest.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with exact rational coefficients.
///
/// Invariant: no stored zero coefficients; every monomial uses only the
/// first `arity` exponent slots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly {
    arity: u8,
    terms: BTreeMap<Mono, Scalar>,
}

impl MultiPoly {
    pub fn zero(arity: u8) -> Self {
        assert!(arity == 2 || arity == 3, "arity must be 2 or 3");
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: u8, c: Scalar) -> Self {
        let mut p = MultiPoly::zero(arity);
        if !c.is_zero() {
            p.terms.insert(Mono::one(), c);
        }
        p
    }

    pub fn one(arity: u8) -> Self {
        MultiPoly::constant(arity, Scalar::one())
    }

    pub fn var(arity: u8, index: usize) -> Self {
        assert!((index as u8) < arity, "variable index out of range");
        let mut p = MultiPoly::zero(arity);
        p.terms.insert(Mono::var(index), Scalar::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, Scalar)>>(arity: u8, terms: I) -> Self {
        let mut p = MultiPoly::zero(arity);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::total_degree).max()
    }

    pub fn degree_in_var(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(var) as u32).max()
    }

    /// All exponent vectors sum to the same total degree. The zero
    /// polynomial counts as homogeneous (of undefined degree).
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Mono::total_degree);
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// Degree when nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        if self.is_zero() || !self.is_homogeneous() {
            None
        } else {
            self.degree()
        }
    }

    /// Validation used at input boundaries: nonzero and homogeneous.
    pub fn require_homogeneous(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        match self.homogeneous_degree() {
            Some(d) => Ok(d),
            None => {
                let mut degrees: Vec<u32> = self.terms.keys().map(Mono::total_degree).collect();
                degrees.sort_unstable();
                degrees.dedup();
                Err(Error::NotHomogeneous { degrees })
            }
        }
    }

    pub fn leading(&self) -> Option<(&Mono, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(Mono::is_one)
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            Some(Scalar::zero())
        } else if self.is_constant() {
            self.terms.get(&Mono::one()).cloned()
        } else {
            None
        }
    }

    fn add_term(&mut self, m: Mono, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, other.arity, "arity mismatch in add");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, other.arity, "arity mismatch in mul");
        let mut out = MultiPoly::zero(self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Mono, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut result = MultiPoly::one(self.arity);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Substitute `images[i]` for variable `i`. The images must share one
    /// arity, which becomes the arity of the result.
    pub fn compose(&self, images: &[MultiPoly]) -> MultiPoly {
        assert_eq!(
            images.len(),
            self.arity as usize,
            "image count must equal arity"
        );
        let out_arity = images[0].arity;
        assert!(
            images.iter().all(|p| p.arity == out_arity),
            "images must share one arity"
        );
        // Precompute image powers up to the largest exponent used.
        let mut max_exp = [0u16; 3];
        for m in self.terms.keys() {
            for i in 0..self.arity as usize {
                max_exp[i] = max_exp[i].max(m.exp(i));
            }
        }
        let pows: Vec<Vec<MultiPoly>> = images
            .iter()
            .enumerate()
            .map(|(i, img)| {
                let mut v = vec![MultiPoly::one(out_arity)];
                for _ in 0..max_exp[i] {
                    v.push(v.last().unwrap().mul(img));
                }
                v
            })
            .collect();
        let mut out = MultiPoly::zero(out_arity);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(out_arity, c.clone());
            for i in 0..self.arity as usize {
                let e = m.exp(i);
                if e > 0 {
                    t = t.mul(&pows[i][e as usize]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> MultiPoly {
        assert!((var as u8) < self.arity, "variable index out of range");
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                let mut exps = [m.exp(0), m.exp(1), m.exp(2)];
                exps[var] -= 1;
                out.add_term(Mono::new(exps), c * int(e as i64));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.arity as usize, "point arity mismatch");
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..self.arity as usize {
                for _ in 0..m.exp(i) {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute 1 for variable `var` (drop its exponents).
    pub fn dehomogenize(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            let mut exps = [m.exp(0), m.exp(1), m.exp(2)];
            exps[var] = 0;
            out.add_term(Mono::new(exps), c.clone());
        }
        out
    }

    /// Multiply each term by `var^(target - total degree)`. Requires the
    /// target to dominate every term.
    pub fn homogenize(&self, var: usize, target: u32) -> MultiPoly {
        let mut out = MultiPoly::zero(self.arity);
        for (m, c) in &self.terms {
            let t = m.total_degree();
            assert!(t <= target, "homogenize target below term degree");
            let mut exps = [m.exp(0), m.exp(1), m.exp(2)];
            exps[var] += (target - t) as u16;
            out.add_term(Mono::new(exps), c.clone());
        }
        out
    }

    /// Coefficients as a univariate polynomial in `var`: slot `e` holds the
    /// (var-free) coefficient of `var^e`.
    pub fn coeffs_in_var(&self, var: usize) -> Vec<MultiPoly> {
        let deg = match self.degree_in_var(var) {
            None => return vec![],
            Some(d) => d,
        };
        let mut out = vec![MultiPoly::zero(self.arity); (deg + 1) as usize];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            let mut exps = [m.exp(0), m.exp(1), m.exp(2)];
            exps[var] = 0;
            out[e].add_term(Mono::new(exps), c.clone());
        }
        out
    }

    pub fn from_var_coeffs(arity: u8, var: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero(arity);
        for (e, c) in coeffs.iter().enumerate() {
            for (m, k) in &c.terms {
                debug_assert_eq!(m.exp(var), 0);
                let mut exps = [m.exp(0), m.exp(1), m.exp(2)];
                exps[var] += e as u16;
                out.add_term(Mono::new(exps), k.clone());
            }
        }
        out
    }

    /// Exact division: `Some(q)` with `self = q * d` when `d` divides
    /// `self`, else `None`.
    pub fn try_div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.arity, d.arity, "arity mismatch in division");
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dm, dc) = d.leading().unwrap();
        let dm = *dm;
        let dc = dc.clone();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.arity);
        while let Some((rm, rc)) = rem.leading() {
            let qm = match dm.div_into(rm) {
                Some(m) => m,
                None => return None,
            };
            let qc = rc / &dc;
            quot.add_term(qm, qc.clone());
            rem = rem.sub(&d.mul_term(&qm, &qc));
        }
        Some(quot)
    }

    /// Remainder of reduction modulo a single polynomial under graded-lex:
    /// repeatedly cancels the largest term divisible by the leading
    /// monomial of `d`. The remainder is zero iff `d` divides `self`.
    pub fn reduce_mod(&self, d: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, d.arity, "arity mismatch in reduction");
        assert!(!d.is_zero(), "reduction by zero polynomial");
        let (dm, dc) = d.leading().unwrap();
        let dm = *dm;
        let dc = dc.clone();
        let mut work = self.clone();
        let mut rem = MultiPoly::zero(self.arity);
        while let Some((wm, wc)) = work.leading() {
            match dm.div_into(wm) {
                Some(qm) => {
                    let qc = wc / &dc;
                    work = work.sub(&d.mul_term(&qm, &qc));
                }
                None => {
                    let (wm, wc) = (*wm, wc.clone());
                    work.terms.remove(&wm);
                    rem.add_term(wm, wc);
                }
            }
        }
        rem
    }

    /// Largest monomial dividing every term (the monomial content).
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Mono::one(),
            Some(m) => m,
        };
        let mut exps = [first.exp(0), first.exp(1), first.exp(2)];
        for m in it {
            for (i, e) in exps.iter_mut().enumerate() {
                *e = (*e).min(m.exp(i));
            }
        }
        Mono::new(exps)
    }
}

// ---- Determinant constructions ----

/// Jacobian determinant of three ternary forms; for degree-d inputs the
/// result is homogeneous of degree 3(d-1) or zero.
pub fn jacobian_det3(p: &MultiPoly, q: &MultiPoly, r: &MultiPoly) -> MultiPoly {
    assert!(p.arity() == 3 && q.arity() == 3 && r.arity() == 3);
    let rows: Vec<Vec<MultiPoly>> = [p, q, r]
        .iter()
        .map(|f| (0..3).map(|v| f.partial(v)).collect())
        .collect();
    det3_poly(&rows)
}

/// 2x2 Wronskian of a binary pair; its divisor is the ramification divisor
/// of the induced line map.
pub fn wronskian2(g0: &MultiPoly, g1: &MultiPoly) -> MultiPoly {
    assert!(g0.arity() == 2 && g1.arity() == 2);
    g0.partial(0)
        .mul(&g1.partial(1))
        .sub(&g0.partial(1).mul(&g1.partial(0)))
}

/// The three 2x2 minors of the 2x3 Jacobian of `(a, b)`, in the fixed
/// order (xy, xz, yz).
pub fn minors2x3(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly, MultiPoly) {
    assert!(a.arity() == 3 && b.arity() == 3);
    let (ax, ay, az) = (a.partial(0), a.partial(1), a.partial(2));
    let (bx, by, bz) = (b.partial(0), b.partial(1), b.partial(2));
    (
        ax.mul(&by).sub(&ay.mul(&bx)),
        ax.mul(&bz).sub(&az.mul(&bx)),
        ay.mul(&bz).sub(&az.mul(&by)),
    )
}

fn det3_poly(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let a = m[0][0].mul(&m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1])));
    let b = m[0][1].mul(&m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0])));
    let c = m[0][2].mul(&m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0])));
    a.sub(&b).add(&c)
}

// ---- Linear coordinate changes ----

/// Row-major 3x3 rational matrix.
pub type Mat3 = [[Scalar; 3]; 3];

pub fn mat3_identity() -> Mat3 {
    let o = Scalar::one;
    let z = Scalar::zero;
    [[o(), z(), z()], [z(), o(), z()], [z(), z(), o()]]
}

pub fn mat3_det(m: &Mat3) -> Scalar {
    let t0 = &m[1][1] * &m[2][2] - &m[1][2] * &m[2][1];
    let t1 = &m[1][0] * &m[2][2] - &m[1][2] * &m[2][0];
    let t2 = &m[1][0] * &m[2][1] - &m[1][1] * &m[2][0];
    &m[0][0] * t0 - &m[0][1] * t1 + &m[0][2] * t2
}

pub fn mat3_inv(m: &Mat3) -> Option<Mat3> {
    let det = mat3_det(m);
    if det.is_zero() {
        return None;
    }
    let cof = |r: usize, c: usize| -> Scalar {
        let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        let minor = &m[rs[0]][cs[0]] * &m[rs[1]][cs[1]] - &m[rs[0]][cs[1]] * &m[rs[1]][cs[0]];
        if (r + c) % 2 == 0 {
            minor
        } else {
            -minor
        }
    };
    let mut inv = mat3_identity();
    for (r, row) in inv.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            // adjugate transpose
            *entry = cof(c, r) / &det;
        }
    }
    Some(inv)
}

pub fn mat3_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = mat3_identity();
    for (r, row) in out.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            *entry = (0..3).map(|k| &a[r][k] * &b[k][c]).sum();
        }
    }
    out
}

/// Compose `p` with the substitution `x_i -> sum_j m[i][j] x_j`. Degree is
/// preserved; the matrix must be invertible.
pub fn linear_change(p: &MultiPoly, m: &Mat3) -> Result<MultiPoly> {
    assert_eq!(p.arity(), 3, "linear_change acts on ternary forms");
    if mat3_det(m).is_zero() {
        return Err(Error::SingularMatrix);
    }
    let images: Vec<MultiPoly> = m
        .iter()
        .map(|row| {
            let mut img = MultiPoly::zero(3);
            for (j, c) in row.iter().enumerate() {
                img = img.add(&MultiPoly::var(3, j).scale(c));
            }
            img
        })
        .collect();
    Ok(p.compose(&images))
}

// ---- Canonical forms ----

/// A primitive, sign-normalized polynomial: integer coefficients with
/// content 1 and positive leading coefficient under graded-lex. Two
/// canonical forms are equal iff their term maps are identical, and
/// canonicalizing `c*p` for any nonzero rational `c` gives the same result.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(MultiPoly);

impl CanonicalForm {
    pub fn new(p: &MultiPoly) -> Result<CanonicalForm> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for (_, c) in p.terms() {
            den_lcm = num::integer::lcm(den_lcm, c.denom().clone());
            num_gcd = num::integer::gcd(num_gcd, c.numer().clone());
        }
        let scale = BigRational::new(den_lcm, num_gcd);
        let mut q = p.scale(&scale);
        let lead_neg = q.leading().map(|(_, c)| c.is_negative()).unwrap_or(false);
        if lead_neg {
            q = q.neg();
        }
        debug_assert!(q.terms().all(|(_, c)| c.denom().is_one()));
        Ok(CanonicalForm(q))
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.0
    }

    pub fn arity(&self) -> u8 {
        self.0.arity()
    }

    pub fn degree(&self) -> u32 {
        self.0.degree().expect("canonical forms are nonzero")
    }

    pub fn is_one(&self) -> bool {
        self.0.is_constant()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

// ---- Rendering ----

fn fmt_mono(m: &Mono, arity: u8) -> String {
    let names = var_names(arity);
    let mut parts = Vec::new();
    for (i, name) in names.iter().enumerate() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(name.to_string()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    /// Terms in descending graded-lex order with explicit `*` and `^`,
    /// rationals printed as `a/b`, e.g. `x^2*y - 3/2*z^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = fmt_mono(m, self.arity);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MultiPoly {
        MultiPoly::var(3, 0)
    }
    fn y() -> MultiPoly {
        MultiPoly::var(3, 1)
    }
    fn z() -> MultiPoly {
        MultiPoly::var(3, 2)
    }

    #[test]
    fn difference_of_squares() {
        let p = x().add(&y()).mul(&x().sub(&y()));
        assert_eq!(p, x().pow(2).sub(&y().pow(2)));
    }

    #[test]
    fn mul_by_zero_absorbs() {
        let p = x().mul(&y()).add(&z().pow(2));
        assert!(p.mul(&MultiPoly::zero(3)).is_zero());
    }

    #[test]
    fn conic_product_expands() {
        // (xy - z^2)(xy + z^2) = x^2 y^2 - z^4
        let a = x().mul(&y()).sub(&z().pow(2));
        let b = x().mul(&y()).add(&z().pow(2));
        let expect = x().pow(2).mul(&y().pow(2)).sub(&z().pow(4));
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn compose_substitutes() {
        let sq = [x().pow(2), y().pow(2), z().pow(2)];
        assert_eq!(x().compose(&sq), x().pow(2));
        assert_eq!(x().mul(&y()).compose(&sq), x().pow(2).mul(&y().pow(2)));
        let p = x().mul(&y()).sub(&z().pow(2));
        let expect = x().pow(2).mul(&y().pow(2)).sub(&z().pow(4));
        assert_eq!(p.compose(&sq), expect);
    }

    #[test]
    fn compose_homogeneous_degree_multiplies() {
        let p = x().mul(&y()).sub(&z().pow(2));
        let images = [x().pow(2), y().pow(2), z().pow(2).add(&x().mul(&y()))];
        let q = p.compose(&images);
        assert_eq!(q.homogeneous_degree(), Some(4));
    }

    #[test]
    fn partial_derivatives() {
        let p = x().pow(2).mul(&y());
        assert_eq!(p.partial(0), x().mul(&y()).scale(&int(2)));
        assert!(z().pow(3).partial(0).is_zero());
        let q = x().pow(2).add(&y().mul(&z()));
        assert_eq!(q.partial(2), y());
    }

    #[test]
    fn jacobian_of_power_maps() {
        let j = jacobian_det3(&x().pow(2), &y().pow(2), &z().pow(2));
        assert_eq!(j, x().mul(&y()).mul(&z()).scale(&int(8)));
        let j2 = jacobian_det3(&x().pow(2), &y().pow(2), &z().pow(2).add(&x().mul(&y())));
        assert_eq!(j2, x().mul(&y()).mul(&z()).scale(&int(8)));
        let j3 = jacobian_det3(&x(), &y(), &z());
        assert_eq!(j3.constant_value(), Some(int(1)));
    }

    #[test]
    fn wronskian_of_binary_pairs() {
        let u = MultiPoly::var(2, 0);
        let v = MultiPoly::var(2, 1);
        assert_eq!(
            wronskian2(&u.pow(2), &v.pow(2)),
            u.mul(&v).scale(&int(4))
        );
        let uv = u.add(&v);
        assert_eq!(
            wronskian2(&u.pow(2), &uv.pow(2)),
            u.mul(&uv).scale(&int(4))
        );
        assert_eq!(wronskian2(&u, &v).constant_value(), Some(int(1)));
    }

    #[test]
    fn minors_in_fixed_order() {
        let (m0, m1, m2) = minors2x3(&x(), &y());
        assert_eq!(m0.constant_value(), Some(int(1)));
        assert!(m1.is_zero() && m2.is_zero());

        let (m0, m1, m2) = minors2x3(&x().mul(&y()), &z().pow(2));
        assert!(m0.is_zero());
        assert_eq!(m1, y().mul(&z()).scale(&int(2)));
        assert_eq!(m2, x().mul(&z()).scale(&int(2)));

        let (m0, m1, m2) = minors2x3(&x().pow(2).add(&y().mul(&z())), &y().pow(2));
        assert_eq!(m0, x().mul(&y()).scale(&int(4)));
        assert!(m1.is_zero());
        assert_eq!(m2, y().pow(2).scale(&int(-2)));
    }

    #[test]
    fn linear_change_examples() {
        let p = x().pow(2).mul(&y());
        assert_eq!(linear_change(&p, &mat3_identity()).unwrap(), p);

        let mut swap = mat3_identity();
        swap.swap(0, 1);
        assert_eq!(linear_change(&p, &swap).unwrap(), x().mul(&y().pow(2)));

        // x -> x, y -> y, z -> z + x
        let mut shear = mat3_identity();
        shear[2][0] = int(1);
        let q = linear_change(&z().pow(2), &shear).unwrap();
        let expect = z().pow(2).add(&x().mul(&z()).scale(&int(2))).add(&x().pow(2));
        assert_eq!(q, expect);

        let mut sing = mat3_identity();
        sing[1] = sing[0].clone();
        assert_eq!(linear_change(&p, &sing), Err(Error::SingularMatrix));
    }

    #[test]
    fn exact_division() {
        let p = x().pow(2).mul(&y().pow(2)).sub(&z().pow(4));
        let a = x().mul(&y()).sub(&z().pow(2));
        let b = x().mul(&y()).add(&z().pow(2));
        assert_eq!(p.try_div_exact(&a), Some(b.clone()));
        assert_eq!(p.try_div_exact(&b), Some(a.clone()));
        assert_eq!(p.try_div_exact(&x()), None);
        let r = p.reduce_mod(&a);
        assert!(r.is_zero());
        assert!(!p.reduce_mod(&x().add(&y())).is_zero());
    }

    #[test]
    fn canonical_form_scale_invariance() {
        let p = x().pow(2).mul(&y()).scale(&frac(3, 2)).sub(&z().pow(3));
        let c0 = CanonicalForm::new(&p).unwrap();
        for (n, d) in [(1i64, 3i64), (-2, 5), (7, 1), (-1, 1), (11, 13)] {
            let c = CanonicalForm::new(&p.scale(&frac(n, d))).unwrap();
            assert_eq!(c, c0);
        }
        // integer coefficients, content 1, positive leading coefficient
        let lead = c0.poly().leading().unwrap().1.clone();
        assert!(lead.is_positive());
    }

    #[test]
    fn zero_degree_is_undefined() {
        assert_eq!(MultiPoly::zero(3).degree(), None);
        assert_eq!(x().degree(), Some(1));
    }

    #[test]
    #[should_panic(expected = "arity mismatch")]
    fn arity_mismatch_panics() {
        let _ = x().add(&MultiPoly::var(2, 0));
    }

    #[test]
    fn display_format() {
        let p = x().pow(2).mul(&y()).sub(&z().pow(3).scale(&frac(3, 2)));
        assert_eq!(p.to_string(), "x^2*y - 3/2*z^3");
        assert_eq!(MultiPoly::zero(3).to_string(), "0");
        let q = x().neg().add(&y());
        assert_eq!(q.to_string(), "-x + y");
        let b = MultiPoly::var(2, 0).add(&MultiPoly::var(2, 1).scale(&int(2)));
        assert_eq!(b.to_string(), "u + 2*v");
    }

    #[test]
    fn homogenize_round_trip() {
        let p = x().pow(2).mul(&y()).add(&z().pow(3));
        let d = p.dehomogenize(2);
        assert_eq!(d.homogenize(2, 3), p);
    }
}
