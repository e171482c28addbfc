//! Formal integer combinations of irreducible forms.
//!
//! A divisor is kept as a map from canonical irreducible forms to nonzero
//! integer multiplicities. Plane divisors hold ternary forms, line
//! divisors binary forms; a Q-irreducible form that splits over C stands
//! for its whole conjugate orbit, so a quadratic point pair on the line
//! counts with degree 2. Negative multiplicities are allowed in
//! intermediate arithmetic so identities can be checked as `lhs - rhs = 0`.

use num::{BigInt, Integer, One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::factor::factor;
use crate::poly::{CanonicalForm, MultiPoly, Scalar};

/// Divisor on the plane (arity 3) or on the line (arity 2).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Divisor {
    entries: BTreeMap<CanonicalForm, i64>,
}

pub type PlaneDivisor = Divisor;
pub type LineDivisor = Divisor;

impl Divisor {
    pub fn empty() -> Self {
        Divisor {
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I: IntoIterator<Item = (CanonicalForm, i64)>>(entries: I) -> Self {
        let mut d = Divisor::empty();
        for (f, m) in entries {
            d.add_entry(f, m);
        }
        d
    }

    pub fn add_entry(&mut self, form: CanonicalForm, mult: i64) {
        if mult == 0 {
            return;
        }
        let slot = self.entries.entry(form).or_insert(0);
        *slot += mult;
        if *slot == 0 {
            self.entries.retain(|_, m| *m != 0);
        }
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (f, m) in &other.entries {
            out.add_entry(f.clone(), *m);
        }
        out
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (f, m) in &other.entries {
            out.add_entry(f.clone(), -m);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Divisor {
        if k == 0 {
            return Divisor::empty();
        }
        Divisor {
            entries: self.entries.iter().map(|(f, m)| (f.clone(), m * k)).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.entries.values().all(|&m| m > 0)
    }

    pub fn degree(&self) -> i64 {
        self.entries
            .iter()
            .map(|(f, m)| f.degree() as i64 * m)
            .sum()
    }

    pub fn multiplicity(&self, form: &CanonicalForm) -> i64 {
        self.entries.get(form).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&CanonicalForm, i64)> {
        self.entries.iter().map(|(f, &m)| (f, m))
    }

    pub fn support(&self) -> impl Iterator<Item = &CanonicalForm> {
        self.entries.keys()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Multiplicities reduced by one: the contribution of this (effective)
    /// divisor to a ramification ledger.
    pub fn ramification_part(&self) -> Divisor {
        debug_assert!(self.is_effective());
        Divisor {
            entries: self
                .entries
                .iter()
                .filter(|(_, &m)| m > 1)
                .map(|(f, &m)| (f.clone(), m - 1))
                .collect(),
        }
    }
}

impl fmt::Display for Divisor {
    /// `m1*(form1) + m2*(form2) + ...` in canonical form order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (form, m) in &self.entries {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{m}*({form})")?;
        }
        Ok(())
    }
}

impl Serialize for Divisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            form: String,
            multiplicity: i64,
        }
        s.collect_seq(self.entries.iter().map(|(f, m)| Entry {
            form: f.to_string(),
            multiplicity: *m,
        }))
    }
}

/// Divisor of a nonzero homogeneous polynomial: its complete factorization
/// with multiplicities. The degree of the divisor equals the degree of the
/// polynomial.
pub fn divisor_of(p: &MultiPoly, degree_bound: u32) -> Result<Divisor> {
    p.require_homogeneous()?;
    let f = factor(p, degree_bound)?;
    Ok(Divisor::from_entries(
        f.factors.into_iter().map(|(c, m)| (c, m as i64)),
    ))
}

/// Pullback of a plane divisor under the map with the given components:
/// each form is composed with the map and refactored. The degree
/// multiplies by the map degree.
pub fn pullback_plane(images: &[MultiPoly; 3], d: &Divisor, degree_bound: u32) -> Result<Divisor> {
    let mut out = Divisor::empty();
    for (form, m) in d.entries() {
        let pulled = form.poly().compose(images);
        out = out.add(&divisor_of(&pulled, degree_bound)?.scale(m));
    }
    Ok(out)
}

/// Pullback of a line divisor under the pencil projection `[a : b]`: the
/// pullback of the divisor of a binary irreducible `q` is the divisor of
/// `q(a, b)`.
pub fn pullback_projection(
    a: &MultiPoly,
    b: &MultiPoly,
    d: &Divisor,
    degree_bound: u32,
) -> Result<Divisor> {
    let mut out = Divisor::empty();
    for (form, m) in d.entries() {
        assert_eq!(form.arity(), 2, "projection pullback needs binary forms");
        let pulled = form.poly().compose(&[a.clone(), b.clone()]);
        out = out.add(&divisor_of(&pulled, degree_bound)?.scale(m));
    }
    Ok(out)
}

// ---- Pencil membership ----

/// Canonical projective parameter `[lambda : mu]`: coprime integers, first
/// nonzero coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParameterPoint {
    lambda: BigInt,
    mu: BigInt,
}

impl ParameterPoint {
    pub fn new(lambda: Scalar, mu: Scalar) -> Result<Self> {
        if lambda.is_zero() && mu.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        // scale to coprime integers
        let den = lambda.denom().lcm(mu.denom());
        let mut l = lambda.numer() * (&den / lambda.denom());
        let mut m = mu.numer() * (&den / mu.denom());
        let g = l.gcd(&m);
        if !g.is_zero() {
            l /= &g;
            m /= &g;
        }
        let lead_neg = if !l.is_zero() {
            l.is_negative()
        } else {
            m.is_negative()
        };
        if lead_neg {
            l = -l;
            m = -m;
        }
        Ok(ParameterPoint { lambda: l, mu: m })
    }

    pub fn from_ints(lambda: i64, mu: i64) -> Self {
        ParameterPoint::new(
            Scalar::from_integer(BigInt::from(lambda)),
            Scalar::from_integer(BigInt::from(mu)),
        )
        .expect("not both zero")
    }

    pub fn lambda(&self) -> Scalar {
        Scalar::from_integer(self.lambda.clone())
    }

    pub fn mu(&self) -> Scalar {
        Scalar::from_integer(self.mu.clone())
    }

    /// The member `lambda*a + mu*b`.
    pub fn member(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.scale(&self.lambda()).add(&b.scale(&self.mu()))
    }

    /// Parameter of the fiber over the target point `[s0 : t0]`: the
    /// member `t0*a - s0*b` vanishes exactly on the preimage of the point.
    pub fn fiber_over(s0: &Scalar, t0: &Scalar) -> Result<Self> {
        ParameterPoint::new(t0.clone(), -s0.clone())
    }
}

impl fmt::Display for ParameterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}]", self.lambda, self.mu)
    }
}

impl Serialize for ParameterPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Decide whether the irreducible form `c` divides some member
/// `lambda*a + mu*b`, by exact reduction of `a` and `b` modulo `c` and a
/// rank test on the two remainders. The parameter is unique for a pair
/// without fixed component; if both remainders vanish (fixed component),
/// the lexicographically smallest parameter `[0:1]` is returned.
pub fn lies_in_pencil(
    c: &CanonicalForm,
    a: &MultiPoly,
    b: &MultiPoly,
) -> Option<ParameterPoint> {
    assert_eq!(c.arity(), 3, "membership is for ternary forms");
    let ra = a.reduce_mod(c.poly());
    let rb = b.reduce_mod(c.poly());
    match (ra.is_zero(), rb.is_zero()) {
        (true, true) => Some(ParameterPoint::from_ints(0, 1)),
        (true, false) => Some(ParameterPoint::from_ints(1, 0)),
        (false, true) => Some(ParameterPoint::from_ints(0, 1)),
        (false, false) => {
            // need lambda*ra + mu*rb = 0, so rb must be a scalar multiple
            // of ra
            let (ma, ca) = ra.leading().expect("nonzero");
            let cb = rb.coeff(ma);
            if cb.is_zero() {
                return None;
            }
            let k = &cb / ca;
            if rb == ra.scale(&k) {
                Some(ParameterPoint::new(-k, Scalar::one()).expect("nonzero"))
            } else {
                None
            }
        }
    }
}

/// The part of a plane divisor supported on curves lying in members of the
/// pencil `[a : b]`. Idempotent and a subdivisor of the input.
pub fn restrict_to_pencil(d: &Divisor, a: &MultiPoly, b: &MultiPoly) -> Divisor {
    Divisor {
        entries: d
            .entries
            .iter()
            .filter(|(f, _)| lies_in_pencil(f, a, b).is_some())
            .map(|(f, m)| (f.clone(), *m))
            .collect(),
    }
}
