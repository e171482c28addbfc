//! Validated endomorphisms of the plane and of the line.
//!
//! A plane endomorphism is a triple of equal-degree ternary forms with no
//! common projective zero (checked with the Macaulay resultant); a line
//! endomorphism is a coprime pair of equal-degree binary forms.

use num::Zero;
use std::fmt;

use crate::divisor::{divisor_of, pullback_plane, Divisor};
use crate::error::{Error, Result};
use crate::gcd::gcd_poly;
use crate::poly::{jacobian_det3, wronskian2, CanonicalForm, MultiPoly, Scalar};
use crate::resultant::macaulay3;
use crate::Config;

/// Endomorphism of the plane, kept with its validated algebraic degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneEndo {
    components: [MultiPoly; 3],
    degree: u32,
}

impl PlaneEndo {
    /// Validate a morphism: equal-degree homogeneous components, no common
    /// factor, and nonvanishing Macaulay resultant (no common projective
    /// zero over the algebraic closure).
    pub fn new(p: MultiPoly, q: MultiPoly, r: MultiPoly, config: &Config) -> Result<Self> {
        let dp = p.require_homogeneous()?;
        let dq = q.require_homogeneous()?;
        let dr = r.require_homogeneous()?;
        if dp != dq || dp != dr {
            return Err(Error::DegreeMismatch {
                expected: dp,
                found: if dp != dq { dq } else { dr },
            });
        }
        let g = gcd_poly(&gcd_poly(&p, &q), &r);
        if !g.is_constant() {
            return Err(Error::NotAMorphism);
        }
        let res = macaulay3([&p, &q, &r], [dp, dp, dp], config.seed)?;
        if res.is_zero() {
            return Err(Error::NotAMorphism);
        }
        Ok(PlaneEndo {
            components: [p, q, r],
            degree: dp,
        })
    }

    /// Constructor for maps already known to be morphisms (compositions of
    /// validated morphisms are morphisms).
    pub(crate) fn new_unchecked(components: [MultiPoly; 3], degree: u32) -> Self {
        PlaneEndo { components, degree }
    }

    pub fn components(&self) -> &[MultiPoly; 3] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Divisor of the Jacobian determinant; degree 3(d-1), empty for d=1.
    pub fn ramification(&self, config: &Config) -> Result<Divisor> {
        let [p, q, r] = &self.components;
        let jac = jacobian_det3(p, q, r);
        if jac.is_constant() {
            return Ok(Divisor::empty());
        }
        divisor_of(&jac, config.degree_bound)
    }

    /// `self` after `other`: `(self . other)(x) = self(other(x))`.
    pub fn compose_with(&self, other: &PlaneEndo) -> PlaneEndo {
        let images = other.components.clone();
        let components = [
            self.components[0].compose(&images),
            self.components[1].compose(&images),
            self.components[2].compose(&images),
        ];
        PlaneEndo::new_unchecked(components, self.degree * other.degree)
    }

    /// n-fold iterate, degree d^n; errors past the configured degree bound.
    pub fn iterate(&self, n: u32, config: &Config) -> Result<PlaneEndo> {
        assert!(n >= 1, "iterate needs n >= 1");
        let target = self
            .degree
            .checked_pow(n)
            .filter(|&d| d <= config.degree_bound)
            .ok_or(Error::DegreeBoundExceeded {
                degree: self.degree.saturating_pow(n),
                bound: config.degree_bound,
            })?;
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.compose_with(&acc);
        }
        debug_assert_eq!(acc.degree, target);
        Ok(acc)
    }

    /// Pullback of a plane divisor along this map.
    pub fn pullback(&self, d: &Divisor, config: &Config) -> Result<Divisor> {
        pullback_plane(&self.components, d, config.degree_bound)
    }

    /// Set-theoretic total invariance: the support of the pullback of the
    /// irreducible curve is the curve itself.
    pub fn totally_invariant_curve(&self, c: &CanonicalForm, config: &Config) -> Result<bool> {
        let pulled = c.poly().compose(&self.components);
        let d = divisor_of(&pulled, config.degree_bound)?;
        Ok(d.len() == 1 && d.support().next() == Some(c))
    }

    /// Divisorial total invariance: the pullback equals degree times the
    /// curve as a divisor.
    pub fn totally_invariant_curve_divisorial(
        &self,
        c: &CanonicalForm,
        config: &Config,
    ) -> Result<bool> {
        let pulled = c.poly().compose(&self.components);
        let d = divisor_of(&pulled, config.degree_bound)?;
        Ok(d.len() == 1 && d.multiplicity(c) == self.degree as i64)
    }
}

impl fmt::Display for PlaneEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} : {} : {}]",
            self.components[0], self.components[1], self.components[2]
        )
    }
}

/// Endomorphism of the line: a coprime pair of equal-degree binary forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineEndo {
    components: [MultiPoly; 2],
    degree: u32,
}

impl LineEndo {
    pub fn new(g0: MultiPoly, g1: MultiPoly) -> Result<Self> {
        let d0 = g0.require_homogeneous()?;
        let d1 = g1.require_homogeneous()?;
        if d0 != d1 {
            return Err(Error::DegreeMismatch {
                expected: d0,
                found: d1,
            });
        }
        let g = gcd_poly(&g0, &g1);
        if !g.is_constant() {
            return Err(Error::FixedComponent {
                common: g.to_string(),
            });
        }
        Ok(LineEndo {
            components: [g0, g1],
            degree: d0,
        })
    }

    pub fn components(&self) -> &[MultiPoly; 2] {
        &self.components
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Divisor of the Wronskian; degree 2(d-1), empty for d=1.
    pub fn ramification(&self, config: &Config) -> Result<Divisor> {
        let w = wronskian2(&self.components[0], &self.components[1]);
        if w.is_constant() {
            return Ok(Divisor::empty());
        }
        divisor_of(&w, config.degree_bound)
    }

    /// The fiber form over the target point `[s0 : t0]`.
    pub fn fiber_form(&self, s0: &Scalar, t0: &Scalar) -> MultiPoly {
        self.components[0]
            .scale(t0)
            .sub(&self.components[1].scale(s0))
    }

    /// True iff the scheme-theoretic fiber over `[s0 : t0]` is the point
    /// itself with full multiplicity: the fiber form is a d-th power of
    /// the linear form vanishing at the point.
    pub fn totally_invariant_point(&self, s0: &Scalar, t0: &Scalar) -> bool {
        assert!(!(s0.is_zero() && t0.is_zero()), "not a projective point");
        let fiber = self.fiber_form(s0, t0);
        if fiber.is_zero() {
            return false;
        }
        let vanishing = MultiPoly::var(2, 0)
            .scale(t0)
            .sub(&MultiPoly::var(2, 1).scale(s0));
        let power = vanishing.pow(self.degree);
        let (m, c) = power.leading().expect("nonzero");
        let fc = fiber.coeff(m);
        if fc.is_zero() {
            return false;
        }
        let k = fc / c;
        fiber == power.scale(&k)
    }
}

impl fmt::Display for LineEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {}]", self.components[0], self.components[1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{line_map, plane_map, poly};

    fn cfg() -> Config {
        Config::default()
    }

    fn endo(s: &str) -> PlaneEndo {
        let [p, q, r] = plane_map(s).unwrap();
        PlaneEndo::new(p, q, r, &cfg()).unwrap()
    }

    fn lendo(s: &str) -> LineEndo {
        let [g0, g1] = line_map(s).unwrap();
        LineEndo::new(g0, g1).unwrap()
    }

    fn c3(s: &str) -> CanonicalForm {
        CanonicalForm::new(&poly(s, 3).unwrap()).unwrap()
    }

    #[test]
    fn morphism_validation() {
        assert_eq!(endo("[x^2 : y^2 : z^2]").degree(), 2);
        assert_eq!(endo("[x^2 : y^2 : z^2 + x*y]").degree(), 2);

        let [p, q, r] = plane_map("[x^2 : x*y : x*z]").unwrap();
        assert_eq!(
            PlaneEndo::new(p, q, r, &cfg()),
            Err(Error::NotAMorphism)
        );

        // common zero without common factor
        let [p, q, r] = plane_map("[x^2 : x*y : y^2]").unwrap();
        assert_eq!(PlaneEndo::new(p, q, r, &cfg()), Err(Error::NotAMorphism));

        let [p, q, r] = plane_map("[x : y^2 : z^2]").unwrap();
        assert!(matches!(
            PlaneEndo::new(p, q, r, &cfg()),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn ramification_divisors() {
        let d = endo("[x^2 : y^2 : z^2]").ramification(&cfg()).unwrap();
        assert_eq!(d.degree(), 3);
        for v in ["x", "y", "z"] {
            assert_eq!(d.multiplicity(&c3(v)), 1);
        }

        let d = endo("[x^2 : y^2 : z^2 + x*y]").ramification(&cfg()).unwrap();
        assert_eq!(d.degree(), 3);
        for v in ["x", "y", "z"] {
            assert_eq!(d.multiplicity(&c3(v)), 1);
        }

        let d = endo("[x^3 : y^3 : z^3]").ramification(&cfg()).unwrap();
        assert_eq!(d.degree(), 6);
        for v in ["x", "y", "z"] {
            assert_eq!(d.multiplicity(&c3(v)), 2);
        }
    }

    #[test]
    fn degree_law_for_ramification() {
        for s in [
            "[x^2 : y^2 : z^2]",
            "[x^3 : y^3 : z^3]",
            "[x^2 : y^2 : z^2 + x*y]",
            "[x^4 : y^4 : z^2*(z^2 + x*y)]",
        ] {
            let f = endo(s);
            let d = f.ramification(&cfg()).unwrap();
            assert_eq!(d.degree(), 3 * (f.degree() as i64 - 1), "{s}");
        }
    }

    #[test]
    fn line_ramification() {
        let g = lendo("[u^2 : v^2]");
        let d = g.ramification(&cfg()).unwrap();
        assert_eq!(d.degree(), 2);

        let g = lendo("[u^2 : (u + v)^2]");
        let d = g.ramification(&cfg()).unwrap();
        assert_eq!(d.degree(), 2);
        assert_eq!(
            d.multiplicity(&CanonicalForm::new(&poly("u + v", 2).unwrap()).unwrap()),
            1
        );

        let g = lendo("[u : v]");
        assert!(g.ramification(&cfg()).unwrap().is_empty());
    }

    #[test]
    fn line_validation_errors() {
        let [g0, g1] = line_map("[u^2 : u*v]").unwrap();
        assert!(matches!(
            LineEndo::new(g0, g1),
            Err(Error::FixedComponent { .. })
        ));
        let [g0, g1] = line_map("[u^2 : v]").unwrap();
        assert!(matches!(
            LineEndo::new(g0, g1),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn iteration() {
        let f = endo("[x^2 : y^2 : z^2]");
        let f2 = f.iterate(2, &cfg()).unwrap();
        assert_eq!(f2, endo("[x^4 : y^4 : z^4]"));
        assert_eq!(f.iterate(1, &cfg()).unwrap(), f);

        let g = endo("[x^2 : y^2 : z^2 + x*y]");
        let g2 = g.iterate(2, &cfg()).unwrap();
        let expect = poly("(z^2 + x*y)^2 + x^2*y^2", 3).unwrap();
        assert_eq!(g2.components()[2], expect);
        assert_eq!(g2.degree(), 4);

        assert!(matches!(
            f.iterate(6, &cfg()),
            Err(Error::DegreeBoundExceeded { .. })
        ));
    }

    #[test]
    fn iterate_is_associative_on_small_cases() {
        let f = endo("[x^2 : y^2 : z^2 + x*y]");
        let lhs = f.iterate(2, &cfg()).unwrap().compose_with(&f);
        let rhs = f.compose_with(&f.iterate(2, &cfg()).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.degree(), 8);
    }

    #[test]
    fn totally_invariant_curves() {
        let f = endo("[x^2 : y^2 : z^2]");
        assert!(f.totally_invariant_curve(&c3("x"), &cfg()).unwrap());
        assert!(!f.totally_invariant_curve(&c3("x + y"), &cfg()).unwrap());
        assert!(!f
            .totally_invariant_curve(&c3("x*y - z^2"), &cfg())
            .unwrap());
        // set-theoretic invariance persists under iteration
        let f2 = f.iterate(2, &cfg()).unwrap();
        assert!(f2.totally_invariant_curve(&c3("x"), &cfg()).unwrap());
        // divisorial version
        assert!(f
            .totally_invariant_curve_divisorial(&c3("x"), &cfg())
            .unwrap());
    }

    #[test]
    fn totally_invariant_points() {
        use crate::poly::int;
        let g = lendo("[u^2 : v^2]");
        assert!(g.totally_invariant_point(&int(0), &int(1)));

        let g = lendo("[u^2 : (u + v)^2]");
        assert!(g.totally_invariant_point(&int(0), &int(1)));
        assert!(!g.totally_invariant_point(&int(1), &int(0)));
    }
}
