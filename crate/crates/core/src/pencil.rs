//! Pencils of plane curves.
//!
//! A pencil is a coprime, linearly independent pair `(A, B)` of ternary
//! forms of one degree `k`. Derived data:
//!
//! - rational base points with intersection multiplicities (total `k^2`)
//! - special members: parameters where the member is singular, located as
//!   roots of the binary discriminant form (the parameterized Macaulay
//!   resultant of the three partials); when a base point is singular on
//!   every member that discriminant vanishes identically, and the finite
//!   set of non-reduced members is recovered through the gcd of the 2x2
//!   Jacobian minors of `(A, B)` instead
//! - the ramification divisor: the sum of `(m-1)`-weighted components
//!   over all non-reduced members, cross-checked against the minor gcd
//! - the invariant `e = 2k - deg R_pi`, the shape classification, and the
//!   generic-line restriction audit
//!
//! Every multiple component of a member divides all three Jacobian minors
//! (the gradients of `A` and `B` are proportional along it), which is what
//! makes the minor gcd a complete source of non-reduced members.

use num::{BigInt, Integer, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::OnceLock;

use crate::divisor::{divisor_of, lies_in_pencil, Divisor, ParameterPoint};
use crate::error::{Error, Result};
use crate::factor::{factor, Factorization};
use crate::gcd::gcd_poly;
use crate::poly::{
    linear_change, mat3_inv, minors2x3, wronskian2, CanonicalForm, Mat3, MultiPoly, Scalar,
};
use crate::resultant::{macaulay3_param, resultant};
use crate::Config;

const GENERIC_TRIES: u32 = 16;

/// Canonical projective rational point: coprime integer coordinates, first
/// nonzero coordinate positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint([BigInt; 3]);

impl RationalPoint {
    pub fn new(coords: [Scalar; 3]) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::ZeroPolynomial);
        }
        let mut den = BigInt::one();
        for c in &coords {
            den = den.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        for c in ints.iter_mut() {
            *c /= &g;
        }
        if ints
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false)
        {
            for c in ints.iter_mut() {
                *c = -c.clone();
            }
        }
        Ok(RationalPoint([
            ints[0].clone(),
            ints[1].clone(),
            ints[2].clone(),
        ]))
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        RationalPoint::new([
            Scalar::from_integer(x.into()),
            Scalar::from_integer(y.into()),
            Scalar::from_integer(z.into()),
        ])
        .expect("nonzero point")
    }

    pub fn coords(&self) -> [Scalar; 3] {
        [
            Scalar::from_integer(self.0[0].clone()),
            Scalar::from_integer(self.0[1].clone()),
            Scalar::from_integer(self.0[2].clone()),
        ]
    }

    pub fn eval(&self, p: &MultiPoly) -> Scalar {
        p.eval(&self.coords())
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}:{}:{}]", self.0[0], self.0[1], self.0[2])
    }
}

impl serde::Serialize for RationalPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Rational base points with local intersection multiplicities, plus the
/// residual multiplicity carried by non-rational points so that the total
/// is `k^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasePoints {
    pub points: Vec<(RationalPoint, u32)>,
    pub residual_multiplicity: u32,
    pub total: u32,
}

/// A member at a parameter where the member is singular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecialMember {
    Resolved {
        parameter: ParameterPoint,
        factorization: Factorization,
        is_reduced: bool,
        is_irreducible: bool,
        ramification: Divisor,
        disc_multiplicity: u32,
    },
    Unresolved {
        min_poly: CanonicalForm,
        disc_multiplicity: u32,
    },
}

impl SpecialMember {
    pub fn parameter(&self) -> Option<&ParameterPoint> {
        match self {
            SpecialMember::Resolved { parameter, .. } => Some(parameter),
            SpecialMember::Unresolved { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialMembers {
    pub members: Vec<SpecialMember>,
    /// The discriminant form vanished identically (a base point is
    /// singular on every member); members were recovered through the minor
    /// gcd and list exactly the non-reduced ones.
    pub disc_degenerate: bool,
    /// Every irreducible factor of the minor gcd lies in a rational
    /// member. Only checked when needed; `true` means the non-reduced
    /// member list is provably complete.
    minor_route_complete: bool,
}

/// Ramification divisor together with the minor-gcd cross-check outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationData {
    pub divisor: Divisor,
    /// Member-wise result agrees with `div(gcd(minors))`; the member-wise
    /// result is authoritative either way.
    pub minor_check_agrees: bool,
}

/// Shape classification of a pencil.
#[derive(Debug, Clone, PartialEq)]
pub enum PencilClass {
    /// Pencil of lines through a point (degree 1).
    Elementary { base_point: RationalPoint },
    /// Projectively equivalent to `[x^h y^(k-h) : z^k]`; applying the
    /// matrix as a linear change sends the pencil onto the normal form.
    Binomial { h: u32, k: u32, matrix: Mat3 },
    Other { reason: String },
}

impl PencilClass {
    pub fn label(&self) -> String {
        match self {
            PencilClass::Elementary { base_point } => format!("Elementary {base_point}"),
            PencilClass::Binomial { h, k, .. } => format!("Binomial h={h} k={k}"),
            PencilClass::Other { reason } => format!("Other ({reason})"),
        }
    }
}

/// Result of restricting the pencil to a line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineAudit {
    pub line: [MultiPoly; 3],
    pub restricted: [MultiPoly; 2],
    /// Degree of the Wronskian of the restriction, `2k - 2`.
    pub ram_degree: u32,
    /// Part of the Wronskian divisor over points of `R_pi`.
    pub on_rpi_degree: i64,
    /// Number of tangencies between the line and members.
    pub tangency_count: i64,
    pub rpi_degree: i64,
    /// `2 = 2k - deg R_pi - t` verified with simple tangencies.
    pub identity_holds: bool,
}

/// A pencil of plane curves of degree `k`.
#[derive(Debug, Clone)]
pub struct Pencil {
    a: MultiPoly,
    b: MultiPoly,
    k: u32,
    config: Config,
    specials: OnceLock<Result<SpecialMembers>>,
    rpi: OnceLock<Result<RamificationData>>,
}

impl PartialEq for Pencil {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl fmt::Display for Pencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} : {}]", self.a, self.b)
    }
}

impl Pencil {
    /// Validate a pencil: equal-degree homogeneous ternary forms, no fixed
    /// component, not proportional.
    pub fn new(a: MultiPoly, b: MultiPoly, config: Config) -> Result<Self> {
        let da = a.require_homogeneous()?;
        let db = b.require_homogeneous()?;
        if da != db {
            return Err(Error::DegreeMismatch {
                expected: da,
                found: db,
            });
        }
        assert_eq!(a.arity(), 3, "pencils live on the plane");
        let (ma, ca) = a.leading().expect("nonzero");
        let cb = b.coeff(ma);
        if !cb.is_zero() && b == a.scale(&(&cb / ca)) {
            return Err(Error::Proportional);
        }
        let g = gcd_poly(&a, &b);
        if !g.is_constant() {
            return Err(Error::FixedComponent {
                common: g.to_string(),
            });
        }
        Ok(Pencil {
            a,
            b,
            k: da,
            config,
            specials: OnceLock::new(),
            rpi: OnceLock::new(),
        })
    }

    pub fn a(&self) -> &MultiPoly {
        &self.a
    }

    pub fn b(&self) -> &MultiPoly {
        &self.b
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    /// The member `lambda*A + mu*B`.
    pub fn member(&self, p: &ParameterPoint) -> MultiPoly {
        p.member(&self.a, &self.b)
    }

    /// Divisor of a member.
    pub fn element(&self, p: &ParameterPoint) -> Result<Divisor> {
        divisor_of(&self.member(p), self.config.degree_bound)
    }

    // ---- Base points ----

    /// All rational base points with intersection multiplicities; the
    /// residual multiplicity accounts for non-rational base points so the
    /// total is `k^2`.
    pub fn base_points_rational(&self) -> Result<BasePoints> {
        let total = self.k * self.k;
        'attempts: for attempt in 0..GENERIC_TRIES {
            let m = generic_matrix(self.config.seed, attempt);
            let (ta, tb) = match attempt {
                0 => (self.a.clone(), self.b.clone()),
                _ => (
                    linear_change(&self.a, &m).expect("invertible"),
                    linear_change(&self.b, &m).expect("invertible"),
                ),
            };
            // the eye of the projection must be off both curves
            let eye = [Scalar::zero(), Scalar::zero(), Scalar::one()];
            if ta.eval(&eye).is_zero() || tb.eval(&eye).is_zero() {
                continue;
            }
            let res = resultant(&ta, &tb, 2)?;
            if res.degree() != Some(total) || !res.is_homogeneous() {
                continue;
            }
            // the resultant is a binary form in (x, y); move it to arity 2
            let res2 = reinterpret_xy_as_binary(&res);
            let fac = factor(&res2, self.config.degree_bound.max(total))?;
            let mut points: Vec<(RationalPoint, u32)> = Vec::new();
            let mut residual = 0u32;
            for (w, mult) in &fac.factors {
                if w.degree() != 1 {
                    residual += mult * w.degree();
                    continue;
                }
                // rational fiber direction (x0 : y0)
                let (x0, y0) = linear_root_binary(w.poly());
                // restrict both forms to the fiber line (s*x0, s*y0, w)
                let images = [
                    MultiPoly::var(2, 0).scale(&x0),
                    MultiPoly::var(2, 0).scale(&y0),
                    MultiPoly::var(2, 1),
                ];
                let fa = ta.compose(&images);
                let fb = tb.compose(&images);
                let g = gcd_poly(&fa, &fb);
                if g.is_constant() {
                    continue 'attempts;
                }
                let gfac = factor(&g, self.config.degree_bound.max(total))?;
                let linear: Vec<_> = gfac
                    .factors
                    .iter()
                    .filter(|(q, _)| q.degree() == 1)
                    .collect();
                if linear.is_empty() {
                    // only conjugate base points on this fiber
                    residual += mult;
                    continue;
                }
                if linear.len() != gfac.factors.len() || linear.len() != 1 {
                    // mixed or multiple points on one fiber: eye not generic
                    continue 'attempts;
                }
                let (s0, w0) = linear_root_binary(linear[0].0.poly());
                // transformed point, then back through the coordinate change
                let tp = [&s0 * &x0, &s0 * &y0, w0.clone()];
                let orig = if attempt == 0 {
                    tp
                } else {
                    apply_mat(&m, &tp)
                };
                let point = RationalPoint::new(orig)?;
                debug_assert!(point.eval(&self.a).is_zero() && point.eval(&self.b).is_zero());
                points.push((point, *mult));
            }
            points.sort();
            let counted: u32 = points.iter().map(|(_, m)| *m).sum();
            debug_assert_eq!(counted + residual, total);
            return Ok(BasePoints {
                points,
                residual_multiplicity: residual,
                total,
            });
        }
        Err(Error::GenericPositionFailed {
            tries: GENERIC_TRIES,
        })
    }

    // ---- Special members ----

    /// The gcd of the three 2x2 Jacobian minors of `(A, B)`.
    pub fn minor_gcd(&self) -> MultiPoly {
        let (m0, m1, m2) = minors2x3(&self.a, &self.b);
        gcd_poly(&gcd_poly(&m0, &m1), &m2)
    }

    /// Divisor of the minor gcd (the cross-check route to the
    /// ramification divisor).
    pub fn minor_gcd_divisor(&self) -> Result<Divisor> {
        let g = self.minor_gcd();
        if g.is_constant() {
            return Ok(Divisor::empty());
        }
        divisor_of(&g, self.config.degree_bound)
    }

    /// Parameters of members containing some irreducible factor of the
    /// minor gcd; the bool is true when every factor found a rational
    /// member (which makes the non-reduced member list complete).
    fn minor_route_params(&self) -> Result<(Vec<ParameterPoint>, bool)> {
        let g = self.minor_gcd();
        if g.is_constant() {
            return Ok((vec![], true));
        }
        let fac = factor(&g, self.config.degree_bound)?;
        let mut params = Vec::new();
        let mut complete = true;
        for (c, _) in &fac.factors {
            match lies_in_pencil(c, &self.a, &self.b) {
                Some(p) => {
                    if !params.contains(&p) {
                        params.push(p);
                    }
                }
                None => complete = false,
            }
        }
        params.sort();
        Ok((params, complete))
    }

    fn resolve_member(&self, parameter: ParameterPoint, disc_multiplicity: u32) -> Result<SpecialMember> {
        let member = self.member(&parameter);
        let factorization = factor(&member, self.config.degree_bound)?;
        let divisor = Divisor::from_entries(
            factorization
                .factors
                .iter()
                .map(|(c, m)| (c.clone(), *m as i64)),
        );
        Ok(SpecialMember::Resolved {
            parameter,
            is_reduced: factorization.is_reduced(),
            is_irreducible: factorization.is_irreducible(),
            ramification: divisor.ramification_part(),
            factorization,
            disc_multiplicity,
        })
    }

    /// Members at parameters where the member is singular. Rational
    /// parameters are fully resolved; non-rational ones are reported with
    /// their minimal polynomial. For a pencil whose discriminant form
    /// vanishes identically the resolved list holds exactly the
    /// non-reduced members.
    pub fn special_members(&self) -> Result<&SpecialMembers> {
        self.specials
            .get_or_init(|| self.compute_special_members())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn compute_special_members(&self) -> Result<SpecialMembers> {
        if self.k == 1 {
            return Ok(SpecialMembers {
                members: vec![],
                disc_degenerate: false,
                minor_route_complete: true,
            });
        }
        let pairs = [
            (self.a.partial(0), self.b.partial(0)),
            (self.a.partial(1), self.b.partial(1)),
            (self.a.partial(2), self.b.partial(2)),
        ];
        let disc = macaulay3_param(
            [
                (&pairs[0].0, &pairs[0].1),
                (&pairs[1].0, &pairs[1].1),
                (&pairs[2].0, &pairs[2].1),
            ],
            [self.k - 1; 3],
            self.config.seed,
        )?;
        if disc.is_zero() {
            // Every member is singular (a base point is singular on all of
            // them). The finite data is the set of non-reduced members,
            // recovered through the minor gcd.
            let (params, complete) = self.minor_route_params()?;
            let mut members = Vec::new();
            for p in params {
                let m = self.resolve_member(p, 0)?;
                if let SpecialMember::Resolved { is_reduced, .. } = &m {
                    if !is_reduced {
                        members.push(m);
                    }
                }
            }
            return Ok(SpecialMembers {
                members,
                disc_degenerate: true,
                minor_route_complete: complete,
            });
        }
        let bound = self.config.degree_bound.max(3 * (self.k - 1) * (self.k - 1));
        let fac = factor(&disc, bound)?;
        let mut members = Vec::new();
        for (w, mult) in &fac.factors {
            if w.degree() == 1 {
                let (l0, m0) = linear_root_binary(w.poly());
                let parameter = ParameterPoint::new(l0, m0).expect("projective root");
                members.push(self.resolve_member(parameter, *mult)?);
            } else {
                members.push(SpecialMember::Unresolved {
                    min_poly: w.clone(),
                    disc_multiplicity: *mult,
                });
            }
        }
        Ok(SpecialMembers {
            members,
            disc_degenerate: false,
            minor_route_complete: true, // not consulted yet
        })
    }

    // ---- Ramification divisor and e ----

    /// Member-wise ramification divisor: the sum of `(m-1)`-weighted
    /// components over non-reduced members. Unresolved singular members
    /// are tolerated when the minor-gcd route certifies that every
    /// multiple component lies in a rational member; otherwise this is an
    /// explicit error.
    pub fn ramification_data(&self) -> Result<&RamificationData> {
        self.rpi
            .get_or_init(|| self.compute_ramification())
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn ramification_divisor(&self) -> Result<Divisor> {
        Ok(self.ramification_data()?.divisor.clone())
    }

    fn compute_ramification(&self) -> Result<RamificationData> {
        let specials = self.special_members()?;
        let unresolved: Vec<String> = specials
            .members
            .iter()
            .filter_map(|m| match m {
                SpecialMember::Unresolved { min_poly, .. } => Some(min_poly.to_string()),
                _ => None,
            })
            .collect();
        let mut need_certificate = !unresolved.is_empty();
        if specials.disc_degenerate && !specials.minor_route_complete {
            need_certificate = true;
        }
        if need_certificate {
            let (params, complete) = self.minor_route_params()?;
            if !complete {
                return Err(Error::UnresolvedAlgebraicMember {
                    minimal_polynomials: if unresolved.is_empty() {
                        vec!["minor gcd factor without rational member".into()]
                    } else {
                        unresolved
                    },
                });
            }
            // every multiple component lives in one of these rational
            // members, all of which are resolved among the specials
            let resolved: Vec<&ParameterPoint> = specials
                .members
                .iter()
                .filter_map(|m| m.parameter())
                .collect();
            if !params.iter().all(|p| resolved.contains(&p)) {
                // a candidate member the discriminant route missed; treat
                // as unresolved rather than guessing
                return Err(Error::UnresolvedAlgebraicMember {
                    minimal_polynomials: unresolved,
                });
            }
        }
        let mut rpi = Divisor::empty();
        for m in &specials.members {
            if let SpecialMember::Resolved { ramification, .. } = m {
                rpi = rpi.add(ramification);
            }
        }
        let minor_divisor = self.minor_gcd_divisor()?;
        Ok(RamificationData {
            minor_check_agrees: rpi == minor_divisor,
            divisor: rpi,
        })
    }

    /// `e = 2k - deg R_pi`; at least 2 on every valid pencil.
    pub fn e_invariant(&self) -> Result<i64> {
        let rpi = self.ramification_data()?;
        Ok(2 * self.k as i64 - rpi.divisor.degree())
    }

    // ---- Classification ----

    pub fn classify_shape(&self) -> Result<PencilClass> {
        if self.k == 1 {
            let base_point = line_intersection(&self.a, &self.b)?;
            return Ok(PencilClass::Elementary { base_point });
        }
        let specials = self.special_members()?;
        let has_unresolved = specials
            .members
            .iter()
            .any(|m| matches!(m, SpecialMember::Unresolved { .. }));

        // the member whose reduced support is two distinct lines, with
        // multiplicities (h, k-h)
        let mut two_line: Vec<(&ParameterPoint, &Factorization)> = Vec::new();
        // the k-fold line member
        let mut k_line: Vec<(&ParameterPoint, &Factorization)> = Vec::new();
        for m in &specials.members {
            if let SpecialMember::Resolved {
                parameter,
                factorization,
                ..
            } = m
            {
                let lines: Vec<_> = factorization
                    .factors
                    .iter()
                    .filter(|(c, _)| c.degree() == 1)
                    .collect();
                if lines.len() != factorization.factors.len() {
                    continue;
                }
                if lines.len() == 2 {
                    two_line.push((parameter, factorization));
                } else if lines.len() == 1 && factorization.factors[0].1 == self.k {
                    k_line.push((parameter, factorization));
                }
            }
        }
        if two_line.len() != 1 || k_line.len() != 1 {
            let reason = if has_unresolved || (specials.disc_degenerate && !specials.minor_route_complete) {
                "unresolved singular members".to_string()
            } else {
                format!(
                    "found {} two-line member(s) and {} k-fold line member(s)",
                    two_line.len(),
                    k_line.len()
                )
            };
            return Ok(PencilClass::Other { reason });
        }
        let (p1, fac1) = two_line[0];
        let (p2, fac2) = k_line[0];
        if p1 == p2 {
            return Ok(PencilClass::Other {
                reason: "degenerate special member pair".into(),
            });
        }
        // order the two lines canonically descending so an already-normal
        // pencil classifies with the identity matrix
        let mut lines: Vec<(&CanonicalForm, u32)> =
            fac1.factors.iter().map(|(c, m)| (c, *m)).collect();
        lines.sort_by(|x, y| y.0.cmp(x.0));
        let (l1, h) = lines[0];
        let (l2, h2) = lines[1];
        debug_assert_eq!(h + h2, self.k);
        if h.gcd(&self.k) != 1 {
            return Ok(PencilClass::Other {
                reason: format!("line multiplicities ({h}, {h2}) share a factor with k"),
            });
        }
        let l3 = &fac2.factors[0].0;
        let n = match lines_matrix(l1, l2, l3) {
            Some(n) => n,
            None => {
                return Ok(PencilClass::Other {
                    reason: "k-fold line passes through the intersection of the two lines".into(),
                })
            }
        };
        let matrix = mat3_inv(&n).expect("checked invertible");
        // certify the transform
        let g1 = linear_change(&self.member(p1), &matrix).expect("invertible");
        let g2 = linear_change(&self.member(p2), &matrix).expect("invertible");
        let normal1 = MultiPoly::var(3, 0)
            .pow(h)
            .mul(&MultiPoly::var(3, 1).pow(self.k - h));
        let normal2 = MultiPoly::var(3, 2).pow(self.k);
        if !proportional(&g1, &normal1) || !proportional(&g2, &normal2) {
            return Ok(PencilClass::Other {
                reason: "normalization certificate failed".into(),
            });
        }
        Ok(PencilClass::Binomial {
            h,
            k: self.k,
            matrix,
        })
    }

    /// Bertini-style test over Q: factor the member at three fixed sample
    /// parameters away from the known special ones; irreducible at all
    /// three means the generic member is irreducible (over Q; a smooth
    /// sampled member is irreducible over C as well).
    pub fn generic_member_irreducible(&self) -> Result<bool> {
        let special_params: Vec<ParameterPoint> = self
            .special_members()?
            .members
            .iter()
            .filter_map(|m| m.parameter().cloned())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ 0x6d656d62);
        let mut samples: Vec<ParameterPoint> = Vec::new();
        let mut fixed = vec![
            ParameterPoint::from_ints(1, -1),
            ParameterPoint::from_ints(1, -4),
            ParameterPoint::from_ints(4, -1),
        ];
        while samples.len() < 3 {
            let cand = if fixed.is_empty() {
                ParameterPoint::from_ints(rng.random_range(1..100), -rng.random_range(1..100))
            } else {
                fixed.remove(0)
            };
            if special_params.contains(&cand) || samples.contains(&cand) {
                continue;
            }
            samples.push(cand);
        }
        for p in &samples {
            let fac = factor(&self.member(p), self.config.degree_bound)?;
            if !fac.is_irreducible() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    // ---- Line audits ----

    /// Restrict the pencil to a parametrized line and split the Wronskian
    /// divisor of the restriction into the part over `R_pi` and the
    /// tangency part.
    pub fn line_audit(&self, line: &[MultiPoly; 3]) -> Result<LineAudit> {
        for l in line {
            if l.arity() != 2 || (!l.is_zero() && l.homogeneous_degree() != Some(1)) {
                return Err(Error::BadLine {
                    reason: "parametrization components must be linear binary forms".into(),
                });
            }
        }
        if !line_param_is_injective(line) {
            return Err(Error::BadLine {
                reason: "parametrization is degenerate (rank < 2)".into(),
            });
        }
        let ra = self.a.compose(line);
        let rb = self.b.compose(line);
        if ra.is_zero() || rb.is_zero() || proportional(&ra, &rb) {
            return Err(Error::BadLine {
                reason: "line lies in a member".into(),
            });
        }
        if !gcd_poly(&ra, &rb).is_constant() {
            return Err(Error::BadLine {
                reason: "line meets the base locus".into(),
            });
        }
        let rpi = self.ramification_data()?.divisor.clone();
        let rpi_degree = rpi.degree();
        let w = wronskian2(&ra, &rb);
        let expected = 2 * self.k - 2;
        if self.k >= 1 && w.is_zero() {
            return Err(Error::InconclusiveLine);
        }
        if w.homogeneous_degree().unwrap_or(0) != expected && expected > 0 {
            return Err(Error::InconclusiveLine);
        }
        let mut on_rpi_degree = 0i64;
        let mut tangency_count = 0i64;
        if expected > 0 {
            let wfac = factor(&w, self.config.degree_bound)?;
            for (q, m) in &wfac.factors {
                let on_rpi = rpi.support().any(|c| {
                    let restricted = c.poly().compose(line);
                    !restricted.is_zero() && restricted.try_div_exact(q.poly()).is_some()
                });
                if on_rpi {
                    on_rpi_degree += *m as i64 * q.degree() as i64;
                } else {
                    if *m > 1 {
                        // a non-simple tangency; this line cannot certify
                        // the count
                        return Err(Error::InconclusiveLine);
                    }
                    tangency_count += q.degree() as i64;
                }
            }
        }
        if on_rpi_degree != rpi_degree {
            // the line is not transversal to R_pi
            return Err(Error::InconclusiveLine);
        }
        let identity_holds =
            2 == 2 * self.k as i64 - rpi_degree - tangency_count;
        Ok(LineAudit {
            line: line.clone(),
            restricted: [ra, rb],
            ram_degree: expected,
            on_rpi_degree,
            tangency_count,
            rpi_degree,
            identity_holds,
        })
    }

    /// Seeded generic lines that pass the audit; used when the caller does
    /// not supply a line.
    pub fn generic_audited_lines(&self, count: usize) -> Result<Vec<LineAudit>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ 0x6c696e65);
        let mut out: Vec<LineAudit> = Vec::new();
        let mut tries = 0;
        while out.len() < count {
            tries += 1;
            if tries > 400 {
                return Err(Error::GenericPositionFailed {
                    tries: GENERIC_TRIES,
                });
            }
            let line = [
                random_linear(&mut rng),
                random_linear(&mut rng),
                random_linear(&mut rng),
            ];
            if out.iter().any(|audit| audit.line == line) {
                continue;
            }
            match self.line_audit(&line) {
                Ok(a) => out.push(a),
                Err(Error::BadLine { .. }) | Err(Error::InconclusiveLine) => continue,
                Err(e) => return Err(e),
            }
        }
        Ok(out)
    }
}

// ---- helpers ----

fn generic_matrix(seed: u64, attempt: u32) -> Mat3 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xba5e ^ (attempt as u64) << 8);
    loop {
        let mut m: Mat3 = Default::default();
        for row in m.iter_mut() {
            for e in row.iter_mut() {
                *e = crate::poly::int(rng.random_range(-4i64..=4));
            }
        }
        if !crate::poly::mat3_det(&m).is_zero() {
            return m;
        }
    }
}

fn apply_mat(m: &Mat3, v: &[Scalar; 3]) -> [Scalar; 3] {
    let mut out = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
    for (i, row) in m.iter().enumerate() {
        out[i] = row.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
    }
    out
}

/// Move a ternary form free of `z` into an honest binary form.
fn reinterpret_xy_as_binary(p: &MultiPoly) -> MultiPoly {
    debug_assert!(p.degree_in_var(2).unwrap_or(0) == 0);
    let mut out = MultiPoly::zero(2);
    for (m, c) in p.terms() {
        debug_assert_eq!(m.exp(2), 0);
        out = out.add(&MultiPoly::from_terms(
            2,
            [(crate::poly::Mono::new([m.exp(0), m.exp(1), 0]), c.clone())],
        ));
    }
    out
}

/// Root `(x0 : y0)` of a linear binary form `p*u + q*v`.
fn linear_root_binary(w: &MultiPoly) -> (Scalar, Scalar) {
    debug_assert_eq!(w.arity(), 2);
    debug_assert_eq!(w.homogeneous_degree(), Some(1));
    let p = w.coeff(&crate::poly::Mono::new([1, 0, 0]));
    let q = w.coeff(&crate::poly::Mono::new([0, 1, 0]));
    (-q, p)
}

fn proportional(a: &MultiPoly, b: &MultiPoly) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let (ma, ca) = a.leading().expect("nonzero");
    let cb = b.coeff(ma);
    if cb.is_zero() {
        return false;
    }
    *b == a.scale(&(&cb / ca))
}

/// Intersection point of two independent lines.
fn line_intersection(a: &MultiPoly, b: &MultiPoly) -> Result<RationalPoint> {
    let coeff = |p: &MultiPoly, i: usize| p.coeff(&crate::poly::Mono::var(i));
    let (a0, a1, a2) = (coeff(a, 0), coeff(a, 1), coeff(a, 2));
    let (b0, b1, b2) = (coeff(b, 0), coeff(b, 1), coeff(b, 2));
    // cross product
    RationalPoint::new([
        &a1 * &b2 - &a2 * &b1,
        &a2 * &b0 - &a0 * &b2,
        &a0 * &b1 - &a1 * &b0,
    ])
}

/// Matrix whose rows are the coefficients of three lines; `None` when the
/// lines are concurrent.
fn lines_matrix(l1: &CanonicalForm, l2: &CanonicalForm, l3: &CanonicalForm) -> Option<Mat3> {
    let row = |c: &CanonicalForm| -> [Scalar; 3] {
        [
            c.poly().coeff(&crate::poly::Mono::var(0)),
            c.poly().coeff(&crate::poly::Mono::var(1)),
            c.poly().coeff(&crate::poly::Mono::var(2)),
        ]
    };
    let n: Mat3 = [row(l1), row(l2), row(l3)];
    if crate::poly::mat3_det(&n).is_zero() {
        None
    } else {
        Some(n)
    }
}

fn line_param_is_injective(line: &[MultiPoly; 3]) -> bool {
    // rank of the 3x2 coefficient matrix must be 2
    let c = |p: &MultiPoly, i: usize| p.coeff(&crate::poly::Mono::var(i));
    let rows: Vec<(Scalar, Scalar)> = line.iter().map(|l| (c(l, 0), c(l, 1))).collect();
    for i in 0..3 {
        for j in i + 1..3 {
            let det = &rows[i].0 * &rows[j].1 - &rows[i].1 * &rows[j].0;
            if !det.is_zero() {
                return true;
            }
        }
    }
    false
}

fn random_linear(rng: &mut ChaCha8Rng) -> MultiPoly {
    loop {
        let a = rng.random_range(-4i64..=4);
        let b = rng.random_range(-4i64..=4);
        if a != 0 || b != 0 {
            return MultiPoly::var(2, 0)
                .scale(&crate::poly::int(a))
                .add(&MultiPoly::var(2, 1).scale(&crate::poly::int(b)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{line_param, poly};

    fn pencil(a: &str, b: &str) -> Pencil {
        Pencil::new(
            poly(a, 3).unwrap(),
            poly(b, 3).unwrap(),
            Config::default(),
        )
        .unwrap()
    }

    fn c3(s: &str) -> CanonicalForm {
        CanonicalForm::new(&poly(s, 3).unwrap()).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(pencil("x", "y").degree(), 1);
        assert_eq!(pencil("x*y", "z^2").degree(), 2);
        let e = Pencil::new(
            poly("x^2", 3).unwrap(),
            poly("x*y", 3).unwrap(),
            Config::default(),
        );
        assert!(matches!(e, Err(Error::FixedComponent { .. })));
        let e = Pencil::new(
            poly("2*x*y", 3).unwrap(),
            poly("x*y", 3).unwrap(),
            Config::default(),
        );
        assert_eq!(e.unwrap_err(), Error::Proportional);
        let e = Pencil::new(
            poly("x", 3).unwrap(),
            poly("y^2", 3).unwrap(),
            Config::default(),
        );
        assert!(matches!(e, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn elements() {
        let p = pencil("x*y", "z^2");
        let d = p.element(&ParameterPoint::from_ints(1, 0)).unwrap();
        assert_eq!(d.multiplicity(&c3("x")), 1);
        assert_eq!(d.multiplicity(&c3("y")), 1);
        let d = p.element(&ParameterPoint::from_ints(0, 1)).unwrap();
        assert_eq!(d.multiplicity(&c3("z")), 2);
        let d = p.element(&ParameterPoint::from_ints(1, 1)).unwrap();
        assert_eq!(d.multiplicity(&c3("x*y + z^2")), 1);
        assert_eq!(d.degree(), 2);
    }

    #[test]
    fn base_points_of_line_pencil() {
        let p = pencil("x", "y");
        let bp = p.base_points_rational().unwrap();
        assert_eq!(bp.total, 1);
        assert_eq!(bp.residual_multiplicity, 0);
        assert_eq!(bp.points, vec![(RationalPoint::from_ints(0, 0, 1), 1)]);
    }

    #[test]
    fn base_points_of_binomial_pencil() {
        let p = pencil("x*y", "z^2");
        let bp = p.base_points_rational().unwrap();
        assert_eq!(bp.total, 4);
        assert_eq!(bp.residual_multiplicity, 0);
        assert_eq!(
            bp.points,
            vec![
                (RationalPoint::from_ints(0, 1, 0), 2),
                (RationalPoint::from_ints(1, 0, 0), 2),
            ]
        );
    }

    #[test]
    fn base_points_with_multiplicity_four() {
        let p = pencil("x^2 + y*z", "y^2");
        let bp = p.base_points_rational().unwrap();
        assert_eq!(bp.total, 4);
        assert_eq!(bp.residual_multiplicity, 0);
        assert_eq!(bp.points, vec![(RationalPoint::from_ints(0, 0, 1), 4)]);
    }

    #[test]
    fn special_members_of_binomial_conic_pencil() {
        let p = pencil("x*y", "z^2");
        let sm = p.special_members().unwrap();
        assert!(!sm.disc_degenerate);
        assert_eq!(sm.members.len(), 2);
        let params: Vec<String> = sm
            .members
            .iter()
            .map(|m| m.parameter().unwrap().to_string())
            .collect();
        assert!(params.contains(&"[1:0]".to_string()));
        assert!(params.contains(&"[0:1]".to_string()));
        for m in &sm.members {
            if let SpecialMember::Resolved {
                parameter,
                is_reduced,
                is_irreducible,
                ..
            } = m
            {
                if parameter == &ParameterPoint::from_ints(1, 0) {
                    assert!(*is_reduced && !*is_irreducible);
                } else {
                    assert!(!*is_reduced);
                }
            }
        }
    }

    #[test]
    fn special_members_of_single_base_point_pencil() {
        let p = pencil("x^2 + y*z", "y^2");
        let sm = p.special_members().unwrap();
        assert!(!sm.disc_degenerate);
        assert_eq!(sm.members.len(), 1);
        match &sm.members[0] {
            SpecialMember::Resolved {
                parameter,
                factorization,
                is_reduced,
                ..
            } => {
                assert_eq!(parameter, &ParameterPoint::from_ints(0, 1));
                assert!(!is_reduced);
                assert_eq!(factorization.factors[0].0, c3("y"));
                assert_eq!(factorization.factors[0].1, 2);
            }
            _ => panic!("expected resolved member"),
        }
    }

    #[test]
    fn special_members_empty_for_line_pencil() {
        let p = pencil("x", "y");
        assert!(p.special_members().unwrap().members.is_empty());
    }

    #[test]
    fn degenerate_discriminant_cubic_binomial() {
        let p = pencil("x^2*y", "z^3");
        let sm = p.special_members().unwrap();
        assert!(sm.disc_degenerate);
        assert!(sm.minor_route_complete);
        assert_eq!(sm.members.len(), 2);
        let params: Vec<String> = sm
            .members
            .iter()
            .map(|m| m.parameter().unwrap().to_string())
            .collect();
        assert_eq!(params, vec!["[0:1]".to_string(), "[1:0]".to_string()]);
    }

    #[test]
    fn ramification_divisors_and_e() {
        let p = pencil("x", "y");
        assert!(p.ramification_divisor().unwrap().is_empty());
        assert_eq!(p.e_invariant().unwrap(), 2);

        let p = pencil("x*y", "z^2");
        let r = p.ramification_divisor().unwrap();
        assert_eq!(r.degree(), 1);
        assert_eq!(r.multiplicity(&c3("z")), 1);
        assert_eq!(p.e_invariant().unwrap(), 3);
        assert!(p.ramification_data().unwrap().minor_check_agrees);

        let p = pencil("x^2 + y*z", "y^2");
        let r = p.ramification_divisor().unwrap();
        assert_eq!(r.multiplicity(&c3("y")), 1);
        assert_eq!(r.degree(), 1);
        assert_eq!(p.e_invariant().unwrap(), 3);

        let p = pencil("x^2*y", "z^3");
        let r = p.ramification_divisor().unwrap();
        assert_eq!(r.multiplicity(&c3("x")), 1);
        assert_eq!(r.multiplicity(&c3("z")), 2);
        assert_eq!(r.degree(), 3); // 2k - 3
        assert_eq!(p.e_invariant().unwrap(), 3);
        assert!(p.ramification_data().unwrap().minor_check_agrees);
    }

    #[test]
    fn classification() {
        let p = pencil("x", "y");
        match p.classify_shape().unwrap() {
            PencilClass::Elementary { base_point } => {
                assert_eq!(base_point, RationalPoint::from_ints(0, 0, 1));
            }
            other => panic!("expected elementary, got {other:?}"),
        }

        let p = pencil("x*y", "z^2");
        match p.classify_shape().unwrap() {
            PencilClass::Binomial { h, k, matrix } => {
                assert_eq!((h, k), (1, 2));
                assert_eq!(matrix, crate::poly::mat3_identity());
            }
            other => panic!("expected binomial, got {other:?}"),
        }

        let p = pencil("x^2*y", "z^3");
        match p.classify_shape().unwrap() {
            PencilClass::Binomial { h, k, matrix } => {
                assert_eq!((h, k), (2, 3));
                assert_eq!(matrix, crate::poly::mat3_identity());
            }
            other => panic!("expected binomial, got {other:?}"),
        }

        // sheared binomial pencil: x(x+y) and (z+x)^2
        let p = pencil("x*(x + y)", "(z + x)^2");
        match p.classify_shape().unwrap() {
            PencilClass::Binomial { h, k, matrix } => {
                assert_eq!((h, k), (1, 2));
                assert_ne!(matrix, crate::poly::mat3_identity());
                // certificate: transforming the pencil gives the normal form
                let a2 = linear_change(p.a(), &matrix).unwrap();
                let b2 = linear_change(p.b(), &matrix).unwrap();
                let q = Pencil::new(a2, b2, Config::default()).unwrap();
                assert_eq!(q.classify_shape().unwrap().label(), "Binomial h=1 k=2");
            }
            other => panic!("expected binomial, got {other:?}"),
        }

        let p = pencil("x^2 + y*z", "y^2");
        assert!(matches!(
            p.classify_shape().unwrap(),
            PencilClass::Other { .. }
        ));
    }

    #[test]
    fn generic_irreducibility() {
        assert!(pencil("x*y", "z^2").generic_member_irreducible().unwrap());
        assert!(pencil("x", "y").generic_member_irreducible().unwrap());
        assert!(!pencil("x^2", "y^2").generic_member_irreducible().unwrap());
    }

    #[test]
    fn line_audit_binomial() {
        let p = pencil("x*y", "z^2");
        let line = line_param("u, u+v, v").unwrap();
        let audit = p.line_audit(&line).unwrap();
        assert_eq!(audit.ram_degree, 2);
        assert_eq!(audit.on_rpi_degree, 1);
        assert_eq!(audit.tangency_count, 1);
        assert!(audit.identity_holds);
    }

    #[test]
    fn line_audit_elementary() {
        let p = pencil("x", "y");
        let line = line_param("u, u+v, v").unwrap();
        let audit = p.line_audit(&line).unwrap();
        assert_eq!(audit.ram_degree, 0);
        assert_eq!(audit.tangency_count, 0);
        assert!(audit.identity_holds);
    }

    #[test]
    fn line_audit_rejects_bad_lines() {
        let p = pencil("x*y", "z^2");
        // line inside the member x = 0: parametrize (0, u, v)
        let line = line_param("0, u, v").unwrap();
        assert!(matches!(p.line_audit(&line), Err(Error::BadLine { .. })));
        // line through the base point [1:0:0]: spanned by (1,0,0), (0,1,0)
        let line = line_param("u, v, 0").unwrap();
        assert!(matches!(p.line_audit(&line), Err(Error::BadLine { .. })));
    }

    #[test]
    fn seeded_lines_agree_on_t() {
        let p = pencil("x*y", "z^2");
        let audits = p.generic_audited_lines(5).unwrap();
        assert_eq!(audits.len(), 5);
        for a in &audits {
            assert_eq!(a.tangency_count, 1);
            assert!(a.identity_holds);
        }
        let e = p.e_invariant().unwrap();
        assert_eq!(e, 2 + audits[0].tangency_count);
    }

    #[test]
    fn line_audit_single_base_point_pencil() {
        let p = pencil("x^2 + y*z", "y^2");
        let audits = p.generic_audited_lines(3).unwrap();
        for a in &audits {
            assert_eq!(a.ram_degree, 2);
            assert_eq!(a.tangency_count, 1);
            assert!(a.identity_holds);
        }
    }
}
