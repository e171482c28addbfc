//! Complete irreducible factorization over the rationals.
//!
//! The driver peels monomial content, runs a squarefree decomposition with
//! the multivariate gcd, and dispatches each squarefree part by the number
//! of variables it actually uses:
//!
//! - one variable: Zassenhaus (factor mod p, Hensel lift, recombine)
//! - two variables: evaluate, factor the univariate image, lift the
//!   factorization `(y-b)`-adically, recombine subsets
//! - three variables (homogeneous): dehomogenize to the bivariate case and
//!   homogenize the factors back
//!
//! Every factorization is re-expanded and compared to the input before it
//! is returned.

use num::{BigInt, BigUint, Integer, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gcd::gcd_poly;
use crate::poly::{CanonicalForm, MultiPoly, Scalar};

/// Internal seed for the equal-degree splitting; fixed so factorizations
/// are deterministic run to run.
const EDF_SEED: u64 = 0x656466;

/// `unit * prod(factor^multiplicity)` expands to exactly the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Scalar,
    pub factors: Vec<(CanonicalForm, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> MultiPoly {
        let arity = self
            .factors
            .first()
            .map(|(f, _)| f.arity())
            .unwrap_or(3);
        let mut acc = MultiPoly::constant(arity, self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.poly().pow(*m));
        }
        acc
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn total_multiplicity(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    /// All multiplicities equal to one.
    pub fn is_reduced(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }

    fn sort_merge(&mut self) {
        self.factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(CanonicalForm, u32)> = Vec::with_capacity(self.factors.len());
        for (f, m) in self.factors.drain(..) {
            match merged.last_mut() {
                Some((g, n)) if *g == f => *n += m,
                _ => merged.push((f, m)),
            }
        }
        self.factors = merged;
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.unit)?;
        for (p, m) in &self.factors {
            write!(f, " * ({p})^{m}")?;
        }
        Ok(())
    }
}

/// Complete irreducible factorization of a nonzero polynomial over Q.
///
/// Three-variable inputs must be homogeneous (all call sites here factor
/// forms); one- and two-variable inputs may be arbitrary.
pub fn factor(p: &MultiPoly, degree_bound: u32) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let degree = p.degree().expect("nonzero");
    if degree > degree_bound {
        return Err(Error::DegreeBoundExceeded {
            degree,
            bound: degree_bound,
        });
    }
    let arity = p.arity();
    let mut factors: Vec<(CanonicalForm, u32)> = Vec::new();

    // Monomial content first.
    let mc = p.monomial_content();
    let mc_poly = MultiPoly::from_terms(arity, [(mc, Scalar::one())]);
    let mut body = p
        .try_div_exact(&mc_poly)
        .expect("monomial content divides");
    for v in 0..arity as usize {
        let e = mc.exp(v);
        if e > 0 {
            factors.push((
                CanonicalForm::new(&MultiPoly::var(arity, v)).unwrap(),
                e as u32,
            ));
        }
    }

    if !body.is_constant() {
        if body.num_active_vars() == 3 && !body.is_homogeneous() {
            // No call site produces this shape; keep the contract loud.
            panic!("three-variable factorization requires a homogeneous input");
        }
        for (mult, part) in squarefree_parts(&body) {
            for irr in factor_squarefree(&part) {
                factors.push((CanonicalForm::new(&irr).unwrap(), mult));
            }
        }
        body = MultiPoly::one(arity); // consumed
    }
    let _ = body;

    let mut out = Factorization {
        unit: Scalar::one(),
        factors,
    };
    out.sort_merge();
    // Recover the unit by exact division and verify the expansion.
    let expanded = out.expand();
    let unit_poly = p
        .try_div_exact(&expanded)
        .expect("factor product divides input");
    out.unit = unit_poly
        .constant_value()
        .expect("unit quotient is constant");
    debug_assert_eq!(out.expand(), *p, "factorization must re-expand exactly");
    Ok(out)
}

impl MultiPoly {
    fn num_active_vars(&self) -> usize {
        (0..self.arity() as usize)
            .filter(|&v| self.degree_in_var(v).unwrap_or(0) > 0)
            .count()
    }
}

// ---- Squarefree decomposition ----

/// Gcd of `p` with all of its partials: for `p = prod q_i^{e_i}` this is
/// `prod q_i^{e_i - 1}` in characteristic zero.
fn partials_gcd(p: &MultiPoly) -> MultiPoly {
    let mut acc = MultiPoly::zero(p.arity());
    for v in 0..p.arity() as usize {
        let d = p.partial(v);
        if !d.is_zero() {
            acc = gcd_poly(&acc, &d);
        }
    }
    gcd_poly(p, &acc)
}

/// Squarefree decomposition: returns `(multiplicity, part)` pairs whose
/// pow-product is `p` up to a constant; each part is squarefree and the
/// parts are pairwise coprime.
pub fn squarefree_parts(p: &MultiPoly) -> Vec<(u32, MultiPoly)> {
    // kernels[j] = product of distinct factors of multiplicity > j
    let mut kernels: Vec<MultiPoly> = Vec::new();
    let mut rest = p.clone();
    while !rest.is_constant() {
        let g = partials_gcd(&rest);
        let kernel = rest.try_div_exact(&g).expect("partials gcd divides");
        kernels.push(kernel);
        rest = g;
    }
    let mut out = Vec::new();
    for j in 0..kernels.len() {
        let part = if j + 1 < kernels.len() {
            kernels[j]
                .try_div_exact(&kernels[j + 1])
                .expect("kernel chain divides")
        } else {
            kernels[j].clone()
        };
        if !part.is_constant() {
            out.push((j as u32 + 1, part));
        }
    }
    out
}

// ---- Dispatch on active variables ----

fn factor_squarefree(s: &MultiPoly) -> Vec<MultiPoly> {
    let arity = s.arity();
    let active: Vec<usize> = (0..arity as usize)
        .filter(|&v| s.degree_in_var(v).unwrap_or(0) > 0)
        .collect();
    match active.len() {
        0 => vec![],
        1 => factor_one_var(s, active[0]),
        2 => {
            if s.is_homogeneous() {
                // A homogeneous bivariate form with no monomial content
                // dehomogenizes faithfully to a univariate polynomial.
                let (vx, vy) = (active[0], active[1]);
                let deh = s.dehomogenize(vy);
                factor_one_var(&deh, vx)
                    .into_iter()
                    .map(|f| {
                        let d = f.degree().expect("nonzero factor");
                        f.homogenize(vy, d)
                    })
                    .collect()
            } else {
                factor_bivariate(s, active[0], active[1])
            }
        }
        3 => {
            debug_assert!(s.is_homogeneous());
            let deh = s.dehomogenize(2);
            factor_squarefree(&deh)
                .into_iter()
                .map(|f| {
                    let d = f.degree().expect("nonzero factor");
                    f.homogenize(2, d)
                })
                .collect()
        }
        _ => unreachable!(),
    }
}

// ---- Univariate factorization over Z (Zassenhaus) ----

/// Dense integer polynomial, little-endian, no trailing zeros.
type ZPoly = Vec<BigInt>;

fn z_trim(p: &mut ZPoly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn z_deg(p: &ZPoly) -> usize {
    p.len().saturating_sub(1)
}

fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    z_trim(&mut out);
    out
}

fn z_content(p: &ZPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
    }
    g
}

fn z_primitive(p: &ZPoly) -> ZPoly {
    let c = z_content(p);
    if c.is_zero() || c.is_one() {
        return p.clone();
    }
    p.iter().map(|x| x / &c).collect()
}

/// Exact division of integer polynomials by a monic divisor; `None` when
/// the remainder is nonzero.
fn z_div_exact_monic(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    debug_assert!(g.last().map(|c| c.is_one()).unwrap_or(false));
    if f.len() < g.len() {
        return None;
    }
    let mut rem = f.clone();
    let mut quot = vec![BigInt::zero(); f.len() - g.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + g.len() - 1].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (j, gc) in g.iter().enumerate() {
            rem[k + j] -= &c * gc;
        }
    }
    z_trim(&mut rem);
    if rem.is_empty() {
        z_trim(&mut quot);
        Some(quot)
    } else {
        None
    }
}

fn primes_table() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let limit = 10_000usize;
        let mut sieve = vec![true; limit + 1];
        let mut out = Vec::new();
        for n in 2..=limit {
            if sieve[n] {
                if n > 2 {
                    out.push(n as u64);
                }
                let mut m = n * n;
                while m <= limit {
                    sieve[m] = false;
                    m += n;
                }
            }
        }
        out
    })
}

// ---- Arithmetic mod a word-sized prime ----

type MPoly = Vec<u64>;

fn m_trim(p: &mut MPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn m_deg(p: &MPoly) -> usize {
    p.len().saturating_sub(1)
}

fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, a, p);
        }
        a = mod_mul(a, a, p);
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn m_mul(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mod_mul(ca, cb, p)) % p;
        }
    }
    m_trim(&mut out);
    out
}

fn m_sub(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    m_trim(&mut out);
    out
}

fn m_scale(a: &MPoly, c: u64, p: u64) -> MPoly {
    let mut out: MPoly = a.iter().map(|&x| mod_mul(x, c, p)).collect();
    m_trim(&mut out);
    out
}

fn m_monic(a: &MPoly, p: u64) -> MPoly {
    match a.last() {
        None => vec![],
        Some(&lc) if lc == 1 => a.clone(),
        Some(&lc) => m_scale(a, mod_inv(lc, p), p),
    }
}

/// Quotient and remainder by a monic divisor.
fn m_divmod(f: &MPoly, g: &MPoly, p: u64) -> (MPoly, MPoly) {
    debug_assert_eq!(*g.last().expect("nonzero divisor"), 1);
    if f.len() < g.len() {
        return (vec![], f.clone());
    }
    let mut rem = f.clone();
    let mut quot = vec![0u64; f.len() - g.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + g.len() - 1];
        if c == 0 {
            continue;
        }
        quot[k] = c;
        for (j, &gc) in g.iter().enumerate() {
            let t = mod_mul(c, gc, p);
            rem[k + j] = (rem[k + j] + p - t) % p;
        }
    }
    m_trim(&mut rem);
    m_trim(&mut quot);
    (quot, rem)
}

fn m_gcd(a: &MPoly, b: &MPoly, p: u64) -> MPoly {
    let mut a = m_monic(a, p);
    let mut b = m_monic(b, p);
    while !b.is_empty() {
        let (_, r) = m_divmod(&a, &b, p);
        a = b;
        b = m_monic(&r, p);
    }
    a
}

fn m_derivative(a: &MPoly, p: u64) -> MPoly {
    let mut out: MPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mod_mul(c, (i as u64) % p, p))
        .collect();
    m_trim(&mut out);
    out
}

fn m_pow_mod(base: &MPoly, e: &BigUint, modulus: &MPoly, p: u64) -> MPoly {
    let mut acc: MPoly = vec![1];
    if e.is_zero() {
        return acc;
    }
    let (_, b) = m_divmod(base, modulus, p);
    for i in (0..e.bits()).rev() {
        acc = m_divmod(&m_mul(&acc, &acc, p), modulus, p).1;
        if e.bit(i) {
            acc = m_divmod(&m_mul(&acc, &b, p), modulus, p).1;
        }
    }
    acc
}

/// Bezout coefficients mod p for coprime (g, h): s*g + t*h = 1.
fn m_bezout(g: &MPoly, h: &MPoly, p: u64) -> (MPoly, MPoly) {
    let (mut r0, mut r1) = (g.clone(), h.clone());
    let (mut s0, mut s1): (MPoly, MPoly) = (vec![1], vec![]);
    let (mut t0, mut t1): (MPoly, MPoly) = (vec![], vec![1]);
    while !r1.is_empty() {
        let lead = *r1.last().unwrap();
        let inv = mod_inv(lead, p);
        let r1m = m_scale(&r1, inv, p);
        let (q, r) = m_divmod(&r0, &r1m, p);
        let q = m_scale(&q, inv, p);
        let new_s = m_sub(&s0, &m_mul(&q, &s1, p), p);
        let new_t = m_sub(&t0, &m_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = new_s;
        t0 = t1;
        t1 = new_t;
    }
    // r0 = gcd (a unit for coprime inputs); normalize to 1
    let inv = mod_inv(*r0.last().expect("coprime inputs"), p);
    debug_assert_eq!(m_deg(&r0), 0);
    (m_scale(&s0, inv, p), m_scale(&t0, inv, p))
}

/// Distinct-degree + equal-degree factorization of a squarefree monic
/// polynomial mod p. Returns monic irreducible factors.
fn m_factor_squarefree(f: &MPoly, p: u64, rng: &mut ChaCha8Rng) -> Vec<MPoly> {
    let mut out = Vec::new();
    let mut v = f.clone();
    let x: MPoly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0usize;
    while m_deg(&v) >= 2 * (d + 1) {
        d += 1;
        h = m_pow_mod(&h, &BigUint::from(p), &v, p);
        let hx = m_sub(&h, &x, p);
        let g = m_gcd(&hx, &v, p);
        if m_deg(&g) > 0 {
            equal_degree_split(&g, d, p, rng, &mut out);
            v = m_divmod(&v, &g, p).0;
            h = m_divmod(&h, &v, p).1;
        }
    }
    if m_deg(&v) > 0 {
        out.push(v);
    }
    out
}

fn equal_degree_split(f: &MPoly, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<MPoly>) {
    if m_deg(f) == d {
        out.push(f.clone());
        return;
    }
    let exponent = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let mut a: MPoly = (0..m_deg(f)).map(|_| rng.random_range(0..p)).collect();
        m_trim(&mut a);
        if m_deg(&a) < 1 {
            continue;
        }
        let t = m_pow_mod(&a, &exponent, f, p);
        let t1 = m_sub(&t, &vec![1], p);
        let w = m_gcd(&t1, f, p);
        if m_deg(&w) > 0 && m_deg(&w) < m_deg(f) {
            let q = m_divmod(f, &w, p).0;
            equal_degree_split(&w, d, p, rng, out);
            equal_degree_split(&q, d, p, rng, out);
            return;
        }
    }
}

// ---- Hensel lifting over Z/p^e ----

fn zp_reduce(p: &ZPoly, m: &BigInt) -> ZPoly {
    let mut out: ZPoly = p.iter().map(|c| c.mod_floor(m)).collect();
    z_trim(&mut out);
    out
}

fn zp_to_m(p: &ZPoly, prime: u64) -> MPoly {
    let pm = BigInt::from(prime);
    let mut out: MPoly = p
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pm);
            r.to_string().parse::<u64>().expect("residue fits")
        })
        .collect();
    m_trim(&mut out);
    out
}

fn m_to_zp(p: &MPoly) -> ZPoly {
    let mut out: ZPoly = p.iter().map(|&c| BigInt::from(c)).collect();
    z_trim(&mut out);
    out
}

/// Lift `f = g*h (mod p)` with monic `f`, `g`, `h` to a factorization mod
/// `p^e`, linearly one power at a time.
fn hensel_pair(f: &ZPoly, g0: &MPoly, h0: &MPoly, p: u64, e: u32) -> (ZPoly, ZPoly) {
    let (s, t) = m_bezout(g0, h0, p);
    let mut g = m_to_zp(g0);
    let mut h = m_to_zp(h0);
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    for _ in 1..e {
        let next = &m * &pb;
        // err = (f - g*h) / m, reduced mod p
        let gh = z_mul(&g, &h);
        let mut err = vec![BigInt::zero(); f.len().max(gh.len())];
        for (i, o) in err.iter_mut().enumerate() {
            *o = f.get(i).cloned().unwrap_or_default()
                - gh.get(i).cloned().unwrap_or_default();
        }
        z_trim(&mut err);
        let err: ZPoly = err.iter().map(|c| c / &m).collect();
        let err_p = zp_to_m(&err, p);
        let te = m_mul(&t, &err_p, p);
        let (q, a) = m_divmod(&te, g0, p);
        let b_raw = {
            let se = m_mul(&s, &err_p, p);
            let qh = m_mul(&q, h0, p);
            let mut sum = vec![0u64; se.len().max(qh.len())];
            for (i, o) in sum.iter_mut().enumerate() {
                *o = (se.get(i).copied().unwrap_or(0) + qh.get(i).copied().unwrap_or(0)) % p;
            }
            m_trim(&mut sum);
            sum
        };
        debug_assert!(b_raw.len() < h0.len() + 1);
        for (i, c) in m_to_zp(&a).iter().enumerate() {
            while g.len() <= i {
                g.push(BigInt::zero());
            }
            g[i] += c * &m;
        }
        for (i, c) in m_to_zp(&b_raw).iter().enumerate() {
            while h.len() <= i {
                h.push(BigInt::zero());
            }
            h[i] += c * &m;
        }
        g = zp_reduce(&g, &next);
        h = zp_reduce(&h, &next);
        m = next;
    }
    (g, h)
}

fn hensel_tree(f: &ZPoly, facs: &[MPoly], p: u64, e: u32) -> Vec<ZPoly> {
    if facs.len() == 1 {
        return vec![zp_reduce(f, &BigInt::from(p).pow(e))];
    }
    let mid = facs.len() / 2;
    let g0 = facs[..mid]
        .iter()
        .fold(vec![1u64], |acc, f| m_mul(&acc, f, p));
    let h0 = facs[mid..]
        .iter()
        .fold(vec![1u64], |acc, f| m_mul(&acc, f, p));
    let (g, h) = hensel_pair(f, &g0, &h0, p, e);
    let mut out = hensel_tree(&g, &facs[..mid], p, e);
    out.extend(hensel_tree(&h, &facs[mid..], p, e));
    out
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Irreducible factors over Z of a primitive squarefree integer polynomial
/// of degree >= 1.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = z_deg(f);
    if n == 1 {
        return vec![f.clone()];
    }
    // Monicize: F(x) = lc^(n-1) f(x/lc) is monic over Z, with F[i] =
    // f[i] * lc^(n-1-i).
    let lc = f.last().unwrap().clone();
    let monic_input = lc.is_one();
    let big_f: ZPoly = if monic_input {
        f.clone()
    } else {
        let mut out = vec![BigInt::zero(); n + 1];
        out[n] = BigInt::one();
        let mut pow = BigInt::one();
        for i in (0..n).rev() {
            out[i] = &f[i] * &pow;
            pow *= &lc;
        }
        out
    };
    debug_assert!(big_f.last().unwrap().is_one(), "monicization failed");

    // Pick a prime keeping F squarefree; prefer few modular factors.
    let mut best: Option<(u64, Vec<MPoly>)> = None;
    let mut tried = 0;
    for &p in primes_table() {
        let fp = zp_to_m(&big_f, p);
        if m_deg(&fp) != n {
            continue;
        }
        let fpm = m_monic(&fp, p);
        let der = m_derivative(&fpm, p);
        if der.is_empty() || m_deg(&m_gcd(&fpm, &der, p)) > 0 {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED ^ p);
        let facs = m_factor_squarefree(&fpm, p, &mut rng);
        let count = facs.len();
        if best.as_ref().map(|(_, b)| count < b.len()).unwrap_or(true) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 3 || best.as_ref().map(|(_, b)| b.len() == 1).unwrap_or(false) {
            break;
        }
    }
    let (p, mod_factors) = best.expect("a usable prime exists");
    if mod_factors.len() == 1 {
        return vec![f.clone()];
    }

    // Landau-Mignotte style bound for coefficients of monic divisors of F.
    let norm2 = big_f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound = (BigInt::one() << (n - 1)) * norm2;
    let target = &bound * 2 + 1;
    let mut e = 1u32;
    let mut pe = BigInt::from(p);
    while pe < target {
        pe *= p;
        e += 1;
    }

    let lifted = hensel_tree(&zp_reduce(&big_f, &pe), &mod_factors, p, e);

    // Subset recombination against the monic F.
    let mut remaining: Vec<ZPoly> = lifted;
    let mut current = big_f.clone();
    let mut found_monic: Vec<ZPoly> = Vec::new();
    let mut size = 1usize;
    while 2 * size <= remaining.len() {
        let mut advanced = false;
        for combo in combinations(remaining.len(), size) {
            let mut cand: ZPoly = vec![BigInt::one()];
            for &i in &combo {
                cand = zp_reduce(&z_mul(&cand, &remaining[i]), &pe);
            }
            let cand: ZPoly = cand.iter().map(|c| symmetric(c, &pe)).collect();
            if let Some(quot) = z_div_exact_monic(&current, &cand) {
                found_monic.push(cand);
                current = quot;
                let mut keep = Vec::new();
                for (i, fp) in remaining.drain(..).enumerate() {
                    if !combo.contains(&i) {
                        keep.push(fp);
                    }
                }
                remaining = keep;
                advanced = true;
                break;
            }
        }
        if !advanced {
            size += 1;
        }
    }
    if z_deg(&current) > 0 {
        found_monic.push(current);
    }

    // Map factors of F back to primitive factors of f.
    found_monic
        .into_iter()
        .map(|g| {
            if monic_input {
                g
            } else {
                let mut pow = BigInt::one();
                let scaled: ZPoly = g
                    .iter()
                    .map(|c| {
                        let r = c * &pow;
                        pow *= &lc;
                        r
                    })
                    .collect();
                z_primitive(&scaled)
            }
        })
        .collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// ---- MultiPoly <-> univariate bridges ----

fn to_zpoly(p: &MultiPoly, var: usize) -> (ZPoly, Scalar) {
    // p = scale * zpoly(var), zpoly primitive integer
    let coeffs = p.coeffs_in_var(var);
    let mut den = BigInt::one();
    for c in &coeffs {
        if let Some(v) = c.constant_value() {
            den = den.lcm(v.denom());
        } else {
            panic!("to_zpoly needs a single active variable");
        }
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| {
            let v = c.constant_value().unwrap();
            v.numer() * (&den / v.denom())
        })
        .collect();
    let content = z_content(&ints);
    let z: ZPoly = ints.iter().map(|c| c / &content).collect();
    (z, Scalar::new(content, den))
}

fn from_zpoly(z: &ZPoly, arity: u8, var: usize) -> MultiPoly {
    let coeffs: Vec<MultiPoly> = z
        .iter()
        .map(|c| MultiPoly::constant(arity, Scalar::from_integer(c.clone())))
        .collect();
    MultiPoly::from_var_coeffs(arity, var, &coeffs)
}

fn factor_one_var(s: &MultiPoly, var: usize) -> Vec<MultiPoly> {
    let (z, _) = to_zpoly(s, var);
    if z_deg(&z) == 0 {
        return vec![];
    }
    zassenhaus(&z)
        .into_iter()
        .map(|f| from_zpoly(&f, s.arity(), var))
        .collect()
}

// ---- Bivariate factorization via (y - b)-adic lifting ----

/// Dense univariate rational polynomial, little-endian.
type QPoly = Vec<Scalar>;

fn q_trim(p: &mut QPoly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn q_deg(p: &QPoly) -> usize {
    p.len().saturating_sub(1)
}

fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    q_trim(&mut out);
    out
}

fn q_add(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![Scalar::zero(); a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = a.get(i).cloned().unwrap_or_else(Scalar::zero)
            + b.get(i).cloned().unwrap_or_else(Scalar::zero);
    }
    q_trim(&mut out);
    out
}

fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![Scalar::zero(); a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = a.get(i).cloned().unwrap_or_else(Scalar::zero)
            - b.get(i).cloned().unwrap_or_else(Scalar::zero);
    }
    q_trim(&mut out);
    out
}

fn q_divmod(f: &QPoly, g: &QPoly) -> (QPoly, QPoly) {
    assert!(!g.is_empty());
    if f.len() < g.len() {
        return (vec![], f.clone());
    }
    let lc = g.last().unwrap().clone();
    let mut rem = f.clone();
    let mut quot = vec![Scalar::zero(); f.len() - g.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + g.len() - 1] / &lc;
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (j, gc) in g.iter().enumerate() {
            let t = &c * gc;
            rem[k + j] -= t;
        }
    }
    q_trim(&mut rem);
    q_trim(&mut quot);
    (quot, rem)
}

fn q_bezout(g: &QPoly, h: &QPoly) -> (QPoly, QPoly) {
    let (mut r0, mut r1) = (g.clone(), h.clone());
    let (mut s0, mut s1): (QPoly, QPoly) = (vec![Scalar::one()], vec![]);
    let (mut t0, mut t1): (QPoly, QPoly) = (vec![], vec![Scalar::one()]);
    while !r1.is_empty() {
        let (q, r) = q_divmod(&r0, &r1);
        let new_s = q_sub(&s0, &q_mul(&q, &s1));
        let new_t = q_sub(&t0, &q_mul(&q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = new_s;
        t0 = t1;
        t1 = new_t;
    }
    debug_assert_eq!(q_deg(&r0), 0, "bezout of coprime polynomials");
    let inv = Scalar::one() / r0[0].clone();
    (
        s0.iter().map(|c| c * &inv).collect(),
        t0.iter().map(|c| c * &inv).collect(),
    )
}

/// Truncated power series in `t` with univariate rational coefficients.
type TPoly = Vec<QPoly>;

fn t_mul_trunc(a: &TPoly, b: &TPoly, k: usize) -> TPoly {
    let mut out: TPoly = vec![vec![]; k];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_empty() || i >= k {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            if i + j >= k {
                break;
            }
            if cb.is_empty() {
                continue;
            }
            out[i + j] = q_add(&out[i + j], &q_mul(ca, cb));
        }
    }
    out
}

fn lift_pair_t(q: &TPoly, g0: &QPoly, h0: &QPoly, k: usize) -> (TPoly, TPoly) {
    let (s, t) = q_bezout(g0, h0);
    let mut big_g: TPoly = vec![vec![]; k];
    let mut big_h: TPoly = vec![vec![]; k];
    big_g[0] = g0.clone();
    big_h[0] = h0.clone();
    for j in 1..k {
        let prod = t_mul_trunc(&big_g, &big_h, j + 1);
        let err = q_sub(q.get(j).unwrap_or(&vec![]), &prod[j]);
        if err.is_empty() {
            continue;
        }
        let te = q_mul(&t, &err);
        let (quo, a) = q_divmod(&te, g0);
        let b = q_add(&q_mul(&s, &err), &q_mul(&quo, h0));
        debug_assert!(q_deg(&b) < q_deg(h0) || b.is_empty());
        big_g[j] = a;
        big_h[j] = b;
    }
    (big_g, big_h)
}

fn lift_tree_t(q: &TPoly, facs: &[QPoly], k: usize) -> Vec<TPoly> {
    if facs.len() == 1 {
        return vec![q.clone()];
    }
    let mid = facs.len() / 2;
    let g0 = facs[..mid]
        .iter()
        .fold(vec![Scalar::one()], |acc, f| q_mul(&acc, f));
    let h0 = facs[mid..]
        .iter()
        .fold(vec![Scalar::one()], |acc, f| q_mul(&acc, f));
    let (g, h) = lift_pair_t(q, &g0, &h0, k);
    let mut out = lift_tree_t(&g, &facs[..mid], k);
    out.extend(lift_tree_t(&h, &facs[mid..], k));
    out
}

fn shear(p: &MultiPoly, vx: usize, vy: usize, c: i64) -> MultiPoly {
    // vy -> vy + c*vx
    let arity = p.arity();
    let images: Vec<MultiPoly> = (0..arity as usize)
        .map(|v| {
            if v == vy {
                MultiPoly::var(arity, vy).add(&MultiPoly::var(arity, vx).scale(&crate::poly::int(c)))
            } else {
                MultiPoly::var(arity, v)
            }
        })
        .collect();
    p.compose(&images)
}

fn eval_var(p: &MultiPoly, var: usize, b: &Scalar) -> MultiPoly {
    let coeffs = p.coeffs_in_var(var);
    let mut acc = MultiPoly::zero(p.arity());
    let mut pow = Scalar::one();
    for c in coeffs {
        acc = acc.add(&c.scale(&pow));
        pow *= b;
    }
    acc
}

fn t_to_multipoly(tp: &TPoly, arity: u8, vx: usize, vy: usize, b: &Scalar) -> MultiPoly {
    // sum_j coeff_j(x) * (y - b)^j
    let y_minus_b = MultiPoly::var(arity, vy).sub(&MultiPoly::constant(arity, b.clone()));
    let mut acc = MultiPoly::zero(arity);
    let mut pow = MultiPoly::one(arity);
    for qc in tp {
        if !qc.is_empty() {
            let xpoly = MultiPoly::from_var_coeffs(
                arity,
                vx,
                &qc.iter()
                    .map(|c| MultiPoly::constant(arity, c.clone()))
                    .collect::<Vec<_>>(),
            );
            acc = acc.add(&xpoly.mul(&pow));
        }
        pow = pow.mul(&y_minus_b);
    }
    acc
}

fn primitive_integer(p: &MultiPoly) -> MultiPoly {
    CanonicalForm::new(p).expect("nonzero").poly().clone()
}

/// Factor a squarefree polynomial in exactly two active variables.
fn factor_bivariate(s: &MultiPoly, vx: usize, vy: usize) -> Vec<MultiPoly> {
    let arity = s.arity();
    let n = s.degree().expect("nonzero") as usize;

    // Shear until the coefficient of x^n is a nonzero constant.
    let mut c_shift = None;
    for c in [0i64, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7] {
        let cand = shear(s, vx, vy, c);
        let lead = cand.coeffs_in_var(vx);
        if lead.len() == n + 1 && lead[n].is_constant() {
            c_shift = Some((c, cand));
            break;
        }
    }
    let (c, sheared) = c_shift.expect("a shear with constant leading coefficient exists");
    let c0 = sheared.coeffs_in_var(vx)[n]
        .constant_value()
        .expect("constant check above");
    let deg_y = sheared.degree_in_var(vy).unwrap_or(0) as usize;
    let k = deg_y + 1;

    // Evaluation point with squarefree image.
    let mut chosen = None;
    for cand in 0i64.. {
        for b in [cand, -cand] {
            let bq = crate::poly::int(b);
            let img = eval_var(&sheared, vy, &bq);
            let (z, _) = to_zpoly(&img, vx);
            if z_deg(&z) != n {
                continue;
            }
            // squarefree check via gcd with derivative over Q
            let der: ZPoly = {
                let mut d: ZPoly = z
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(i, c)| c * BigInt::from(i))
                    .collect();
                z_trim(&mut d);
                d
            };
            let qz: QPoly = z.iter().map(|c| Scalar::from_integer(c.clone())).collect();
            let qd: QPoly = der.iter().map(|c| Scalar::from_integer(c.clone())).collect();
            let g = q_gcd(&qz, &qd);
            if q_deg(&g) == 0 {
                chosen = Some((bq, z));
                break;
            }
            if b == 0 {
                break;
            }
        }
        if chosen.is_some() {
            break;
        }
        if cand > 1000 {
            panic!("no squarefree evaluation point found");
        }
    }
    let (b, z_img) = chosen.expect("evaluation point exists");

    // Factor the image; one factor means irreducible.
    let uni_factors = zassenhaus(&z_img);
    if uni_factors.len() == 1 {
        return vec![s.clone()];
    }

    // Monic rational versions for the lift.
    let monic_factors: Vec<QPoly> = uni_factors
        .iter()
        .map(|f| {
            let lc = f.last().unwrap().clone();
            f.iter()
                .map(|c| Scalar::new(c.clone(), lc.clone()))
                .collect()
        })
        .collect();

    // q_hat = sheared / c0, expanded in powers of t = y - b, monic in x.
    let shifted = {
        // substitute y -> y + b so the series base point is zero
        let images: Vec<MultiPoly> = (0..arity as usize)
            .map(|v| {
                if v == vy {
                    MultiPoly::var(arity, vy).add(&MultiPoly::constant(arity, b.clone()))
                } else {
                    MultiPoly::var(arity, v)
                }
            })
            .collect();
        sheared.compose(&images)
    };
    let inv_c0 = Scalar::one() / c0.clone();
    let mut q_hat: TPoly = vec![vec![]; k];
    for (m, coeff) in shifted.terms() {
        let i = m.exp(vx) as usize;
        let j = m.exp(vy) as usize;
        debug_assert!(j < k);
        while q_hat[j].len() <= i {
            q_hat[j].push(Scalar::zero());
        }
        q_hat[j][i] += coeff * &inv_c0;
    }
    for qc in q_hat.iter_mut() {
        q_trim(qc);
    }

    let lifted = lift_tree_t(&q_hat, &monic_factors, k);

    // Subset recombination with exact trial division against the sheared
    // polynomial.
    let mut remaining_idx: Vec<usize> = (0..lifted.len()).collect();
    let mut current = sheared.clone();
    let mut found: Vec<MultiPoly> = Vec::new();
    let mut size = 1usize;
    while 2 * size <= remaining_idx.len() {
        let mut advanced = false;
        for combo in combinations(remaining_idx.len(), size) {
            let mut cand: TPoly = vec![vec![]; k];
            cand[0] = vec![Scalar::one()];
            for &ci in &combo {
                cand = t_mul_trunc(&cand, &lifted[remaining_idx[ci]], k);
            }
            let cand_poly = t_to_multipoly(&cand, arity, vx, vy, &b);
            let cand_poly = primitive_integer(&cand_poly);
            if let Some(quot) = current.try_div_exact(&cand_poly) {
                found.push(cand_poly);
                current = quot;
                let mut keep = Vec::new();
                for (i, idx) in remaining_idx.drain(..).enumerate() {
                    if !combo.contains(&i) {
                        keep.push(idx);
                    }
                }
                remaining_idx = keep;
                advanced = true;
                break;
            }
        }
        if !advanced {
            size += 1;
        }
    }
    if !current.is_constant() {
        found.push(primitive_integer(&current));
    }

    // Undo the shear.
    found
        .into_iter()
        .map(|f| {
            if c == 0 {
                f
            } else {
                primitive_integer(&shear(&f, vx, vy, -c))
            }
        })
        .collect()
}

fn q_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let (_, r) = q_divmod(&a, &b);
        a = b;
        b = r;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::poly;
    use num::Signed;
    use crate::poly::int;
    use crate::DEFAULT_DEGREE_BOUND;

    fn p3(s: &str) -> MultiPoly {
        poly(s, 3).unwrap()
    }

    fn p2(s: &str) -> MultiPoly {
        poly(s, 2).unwrap()
    }

    fn run(p: &MultiPoly) -> Factorization {
        let f = factor(p, DEFAULT_DEGREE_BOUND).unwrap();
        assert_eq!(f.expand(), *p, "must re-expand exactly: {p}");
        f
    }

    #[test]
    fn splits_product_of_conics() {
        let f = run(&p3("x^2*y^2 - z^4"));
        assert_eq!(f.factors.len(), 2);
        let names: Vec<String> = f.factors.iter().map(|(c, _)| c.to_string()).collect();
        assert!(names.contains(&"x*y - z^2".to_string()));
        assert!(names.contains(&"x*y + z^2".to_string()));
        assert!(f.is_reduced());
    }

    #[test]
    fn prime_power() {
        let f = run(&p3("x^3"));
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].0.to_string(), "x");
        assert_eq!(f.factors[0].1, 3);
    }

    #[test]
    fn smooth_conic_is_irreducible() {
        let f = run(&p3("z^2 + x*y"));
        assert!(f.is_irreducible());
    }

    #[test]
    fn unit_is_tracked() {
        let f = run(&p3("3/2*x^2 - 3/2*y^2"));
        assert_eq!(f.unit, crate::poly::frac(3, 2));
        assert_eq!(f.factors.len(), 2);
    }

    #[test]
    fn univariate_style_binary_forms() {
        let f = run(&p2("u^2 - v^2"));
        assert_eq!(f.factors.len(), 2);
        let f = run(&p2("u^2 + v^2"));
        assert!(f.is_irreducible());
        let f = run(&p2("4*u^2*v + 2*u*v^2")); // 2uv(2u + v)
        assert_eq!(f.total_multiplicity(), 3);
    }

    #[test]
    fn wronskian_shapes() {
        let f = run(&p2("4*u^2 + 4*u*v")); // 4u(u+v)
        let names: Vec<String> = f.factors.iter().map(|(c, _)| c.to_string()).collect();
        assert!(names.contains(&"u".to_string()));
        assert!(names.contains(&"u + v".to_string()));
    }

    #[test]
    fn binomial_members_are_irreducible() {
        for s in ["z^2 + x*y", "z^3 + x*y^2", "z^3 + 2*x^2*y", "z^3 - x^2*y"] {
            let f = run(&p3(s));
            assert!(f.is_irreducible(), "{s} should be irreducible");
        }
    }

    #[test]
    fn multiplicities_in_squarefree_chain() {
        let f = run(&p3("(x + y)^3*(x - y)^2*z"));
        let mut by_mult: Vec<(String, u32)> = f
            .factors
            .iter()
            .map(|(c, m)| (c.to_string(), *m))
            .collect();
        by_mult.sort();
        assert_eq!(
            by_mult,
            vec![
                ("x + y".to_string(), 3),
                ("x - y".to_string(), 2),
                ("z".to_string(), 1)
            ]
        );
    }

    #[test]
    fn degree_bound_is_explicit() {
        let p = p3("x^5*y^5*z^5*(x^5 + y^5 + z^5)*(x^4 + x^2*y^2)");
        match factor(&p, 20) {
            Err(Error::DegreeBoundExceeded { degree, bound }) => {
                assert_eq!(degree, 24);
                assert_eq!(bound, 20);
            }
            other => panic!("expected bound error, got {other:?}"),
        }
    }

    #[test]
    fn cubic_pullback_splits() {
        // x^3 y^3 - z^6 = (xy - z^2)(x^2 y^2 + x y z^2 + z^4)
        let f = run(&p3("x^3*y^3 - z^6"));
        assert_eq!(f.factors.len(), 2);
        let names: Vec<String> = f.factors.iter().map(|(c, _)| c.to_string()).collect();
        assert!(names.contains(&"x*y - z^2".to_string()));
    }

    #[test]
    fn dense_ternary_products() {
        let a = p3("x + 2*y + 3*z");
        let b = p3("x^2 + y*z");
        let c = p3("x^2 + x*y + y^2");
        let prod = a.mul(&b).mul(&c);
        let f = run(&prod);
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.total_multiplicity(), 3);
    }

    #[test]
    fn higher_degree_univariate() {
        // (u^2 + v^2)(u^2 - 2 v^2)(u + v)^2: mixed irreducibles and a square
        let prod = p2("(u^2 + v^2)*(u^2 - 2*v^2)*(u + v)^2");
        let f = run(&prod);
        assert_eq!(f.total_multiplicity(), 4);
        assert_eq!(f.factors.len(), 3);
    }

    #[test]
    fn constants_factor_to_unit() {
        let f = run(&p3("7/3"));
        assert!(f.factors.is_empty());
        assert_eq!(f.unit, crate::poly::frac(7, 3));
    }

    #[test]
    fn non_homogeneous_bivariate() {
        // (x*y + 1)(x + y): exercises the Hensel path directly
        let prod = p3("(x*y + 1)*(x + y)");
        let f = run(&prod);
        assert_eq!(f.factors.len(), 2);
    }

    #[test]
    fn multiplicity_additivity_on_products() {
        let p = p3("(x*y - z^2)*(x + y)");
        let q = p3("(x*y - z^2)*z");
        let fp = run(&p);
        let fq = run(&q);
        let fpq = run(&p.mul(&q));
        let mut combined: Vec<(String, u32)> = Vec::new();
        for (c, m) in fp.factors.iter().chain(fq.factors.iter()) {
            match combined.iter_mut().find(|(s, _)| *s == c.to_string()) {
                Some((_, n)) => *n += m,
                None => combined.push((c.to_string(), *m)),
            }
        }
        combined.sort();
        let mut got: Vec<(String, u32)> = fpq
            .factors
            .iter()
            .map(|(c, m)| (c.to_string(), *m))
            .collect();
        got.sort();
        assert_eq!(combined, got);
    }

    #[test]
    fn zassenhaus_on_integer_polys() {
        // (2x + 1)(x^2 + x + 1)(x - 3)
        let f: ZPoly = z_mul(
            &z_mul(
                &vec![BigInt::from(1), BigInt::from(2)],
                &vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)],
            ),
            &vec![BigInt::from(-3), BigInt::from(1)],
        );
        let factors = zassenhaus(&f);
        assert_eq!(factors.len(), 3);
        let mut prod: ZPoly = vec![BigInt::one()];
        for g in &factors {
            prod = z_mul(&prod, g);
        }
        // product matches up to sign
        let sign_fix = prod.last().unwrap().signum() == f.last().unwrap().signum();
        let prod: ZPoly = if sign_fix {
            prod
        } else {
            prod.iter().map(|c| -c).collect()
        };
        assert_eq!(prod, f);
    }

    #[test]
    fn squarefree_parts_are_coprime() {
        let p = p3("(x + y)^2*(x - y)*(z)^3");
        let parts = squarefree_parts(&p);
        for (i, (_, a)) in parts.iter().enumerate() {
            for (_, b) in parts.iter().skip(i + 1) {
                assert!(crate::gcd::coprime(a, b));
            }
        }
        let mut total = MultiPoly::one(3);
        for (m, part) in &parts {
            total = total.mul(&part.pow(*m));
        }
        // equal up to a rational unit
        let u = p.try_div_exact(&total).unwrap();
        assert!(u.is_constant());
    }

    #[test]
    fn scaled_inputs() {
        let f = run(&p3("1/4*x^2 - 1/9*y^2"));
        assert_eq!(f.factors.len(), 2);
        let _ = int(0);
    }
}
