//! Exact multivariate gcd over the rationals.
//!
//! The driver recurses on the variable set: pick a main variable, split
//! both inputs into content times primitive part, take the gcd of the
//! primitive parts with a subresultant pseudo-remainder sequence (Brown's
//! divisors keep the intermediate coefficients small), and recurse on the
//! contents.

use num::One;

use crate::poly::{CanonicalForm, Mono, MultiPoly, Scalar};

/// Leading coefficient of `p` viewed as a univariate polynomial in `var`;
/// the result has no `var` exponents.
pub(crate) fn lc_in_var(p: &MultiPoly, var: usize) -> MultiPoly {
    let coeffs = p.coeffs_in_var(var);
    coeffs.last().cloned().unwrap_or_else(|| MultiPoly::zero(p.arity()))
}

/// Content of `p` with respect to `var`: gcd of its `var`-coefficients.
fn content_in_var(p: &MultiPoly, var: usize) -> MultiPoly {
    let mut acc = MultiPoly::zero(p.arity());
    for c in p.coeffs_in_var(var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_poly(&acc, &c);
        if acc.is_constant() {
            break;
        }
    }
    acc
}

fn prem(p: &MultiPoly, q: &MultiPoly, var: usize) -> MultiPoly {
    let n = p.degree_in_var(var).unwrap_or(0);
    let m = q.degree_in_var(var).unwrap_or(0);
    debug_assert!(m >= 1 && n >= m);
    let d = lc_in_var(q, var);
    let mut r = p.clone();
    let mut e = n - m + 1;
    while let Some(k) = r.degree_in_var(var) {
        if r.is_zero() || k < m {
            break;
        }
        let t = lc_in_var(&r, var);
        let shift = Mono::var(var);
        let mut vq = q.clone();
        for _ in 0..(k - m) {
            vq = vq.mul_term(&shift, &Scalar::one());
        }
        r = r.mul(&d).sub(&t.mul(&vq));
        e -= 1;
    }
    for _ in 0..e {
        r = r.mul(&d);
    }
    r
}

/// Subresultant PRS gcd of two `var`-primitive polynomials with positive
/// degree in `var`. Returns a gcd up to content in the remaining variables.
fn subresultant_gcd(p: &MultiPoly, q: &MultiPoly, var: usize) -> MultiPoly {
    let arity = p.arity();
    let (mut a, mut b) = if p.degree_in_var(var) >= q.degree_in_var(var) {
        (p.clone(), q.clone())
    } else {
        (q.clone(), p.clone())
    };
    let mut g = MultiPoly::one(arity);
    let mut h = MultiPoly::one(arity);
    loop {
        let da = a.degree_in_var(var).expect("nonzero in loop");
        let db = b.degree_in_var(var).expect("nonzero in loop");
        let delta = da - db;
        let r = prem(&a, &b, var);
        if r.is_zero() {
            return b;
        }
        if r.degree_in_var(var).unwrap_or(0) == 0 {
            // common divisor is var-free, hence constant for primitive inputs
            return MultiPoly::one(arity);
        }
        a = b;
        let divisor = g.mul(&h.pow(delta));
        b = r
            .try_div_exact(&divisor)
            .expect("subresultant divisor divides exactly");
        g = lc_in_var(&a, var);
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(delta)
                .try_div_exact(&h.pow(delta - 1))
                .expect("subresultant h update divides exactly"),
        };
    }
}

/// A gcd of `p` and `q` (unique up to a nonzero rational factor).
/// `gcd_poly(0, p) = p`; two nonzero constants give 1.
pub fn gcd_poly(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    assert_eq!(p.arity(), q.arity(), "arity mismatch in gcd");
    let arity = p.arity();
    if p.is_zero() {
        return q.clone();
    }
    if q.is_zero() {
        return p.clone();
    }
    if p.is_constant() || q.is_constant() {
        return MultiPoly::one(arity);
    }
    // Main variable: present in both if possible, smallest max-degree.
    let mut best: Option<(usize, u32)> = None;
    let mut fallback: Option<usize> = None;
    for v in 0..arity as usize {
        let dp = p.degree_in_var(v).unwrap_or(0);
        let dq = q.degree_in_var(v).unwrap_or(0);
        if dp > 0 && dq > 0 {
            let key = dp.max(dq);
            if best.map(|(_, k)| key < k).unwrap_or(true) {
                best = Some((v, key));
            }
        } else if dp > 0 || dq > 0 {
            fallback = Some(v);
        }
    }
    match best {
        Some((v, _)) => {
            let cp = content_in_var(p, v);
            let cq = content_in_var(q, v);
            let pp = p.try_div_exact(&cp).expect("content divides");
            let qq = q.try_div_exact(&cq).expect("content divides");
            let c = gcd_poly(&cp, &cq);
            let g = subresultant_gcd(&pp, &qq, v);
            let g = g
                .try_div_exact(&content_in_var(&g, v))
                .expect("content divides");
            c.mul(&g)
        }
        None => {
            // Some variable appears in exactly one input: any common divisor
            // is free of it, so replace that input by its content.
            let v = fallback.expect("nonconstant inputs have a variable");
            if p.degree_in_var(v).unwrap_or(0) > 0 {
                gcd_poly(&content_in_var(p, v), q)
            } else {
                gcd_poly(p, &content_in_var(q, v))
            }
        }
    }
}

/// Canonicalized gcd. `gcd(0, p)` is canonical `p`.
pub fn gcd(p: &MultiPoly, q: &MultiPoly) -> CanonicalForm {
    let g = gcd_poly(p, q);
    assert!(!g.is_zero(), "gcd of two zero polynomials is undefined");
    CanonicalForm::new(&g).expect("nonzero")
}

pub fn coprime(p: &MultiPoly, q: &MultiPoly) -> bool {
    gcd_poly(p, q).is_constant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::poly;

    fn p3(s: &str) -> MultiPoly {
        poly(s, 3).unwrap()
    }

    fn divides(d: &CanonicalForm, p: &MultiPoly) -> bool {
        p.try_div_exact(d.poly()).is_some()
    }

    #[test]
    fn coprime_monomials() {
        assert!(gcd(&p3("x*y"), &p3("z^2")).is_one());
    }

    #[test]
    fn common_factor_of_minors() {
        let g = gcd(&p3("2*y*z"), &p3("2*x*z"));
        assert_eq!(g.poly(), &p3("z"));
    }

    #[test]
    fn difference_of_squares_gcd() {
        let g = gcd(&p3("x^2 - y^2"), &p3("x - y"));
        assert_eq!(g.poly(), &p3("x - y"));
    }

    #[test]
    fn gcd_with_zero_is_canonical_other() {
        let g = gcd(&MultiPoly::zero(3), &p3("2*x^2 - 2*y^2"));
        assert_eq!(g.poly(), &p3("x^2 - y^2"));
    }

    #[test]
    fn gcd_divides_both() {
        let cases = [
            ("x^2*y^2 - z^4", "x*y - z^2"),
            ("(x + y)^3*(x - z)", "(x + y)*(y + z)"),
            ("x^3 + y^3", "x^2 - y^2"),
            ("(x^2 + y*z)*(x - y)^2", "(x - y)*(x + y + z)"),
            ("6*x^2*y", "4*x*y^2"),
        ];
        for (a, b) in cases {
            let (a, b) = (p3(a), p3(b));
            let g = gcd(&a, &b);
            assert!(divides(&g, &a), "gcd({a}, {b}) = {g} must divide lhs");
            assert!(divides(&g, &b), "gcd({a}, {b}) = {g} must divide rhs");
        }
    }

    #[test]
    fn gcd_of_structured_products() {
        let a = p3("(x*y - z^2)*(x + y)^2");
        let b = p3("(x*y - z^2)*(x - y)");
        assert_eq!(gcd(&a, &b).poly(), &p3("x*y - z^2"));

        let a = p3("(x + 2*y + 3*z)^3");
        let b = p3("(x + 2*y + 3*z)^2*(x - z)");
        assert_eq!(gcd(&a, &b).poly(), &p3("(x + 2*y + 3*z)^2"));
    }

    #[test]
    fn binary_gcds() {
        let a = poly("u^3*v - u*v^3", 2).unwrap();
        let b = poly("u^2*v^2 - v^4", 2).unwrap();
        let g = gcd(&a, &b);
        assert_eq!(g.poly(), &poly("u^2*v - v^3", 2).unwrap());
    }
}
