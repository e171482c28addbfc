//! Invariance certificates and the classification layer.
//!
//! A plane endomorphism preserves a pencil exactly when `A.f` and `B.f`
//! are binary forms in `(A, B)`; the certificate stores those coordinates
//! and the induced line endomorphism `g` with `pi . f = g . pi`. On top of
//! the certificate sit the ramification transfer identity
//! `R_f^P + f*(R_pi) = R_pi + pi*(R_g)`, the e-dichotomy, the verdict
//! against the two admissible shapes, the normal-form family generators
//! and the semiconjugacy solver.

use num::Zero;

use crate::divisor::{
    pullback_plane, pullback_projection, restrict_to_pencil, Divisor,
};
use crate::endo::{LineEndo, PlaneEndo};
use crate::error::{Error, Result};
use crate::pencil::{Pencil, PencilClass};
use crate::poly::{Mono, MultiPoly, Scalar};
use crate::Config;

/// Witness that `pi . f = g . pi`: the coordinates of `A.f` and `B.f` in
/// the basis `A^i B^(d-i)`, and the induced degree-d line map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceCertificate {
    pub g: LineEndo,
    pub coeffs0: Vec<Scalar>,
    pub coeffs1: Vec<Scalar>,
}

/// Express `target` in the basis of the given polynomials, exactly.
fn solve_in_basis(basis: &[MultiPoly], target: &MultiPoly) -> Option<Vec<Scalar>> {
    let arity = target.arity();
    let mut monos: Vec<Mono> = Vec::new();
    for p in basis.iter().chain(std::iter::once(target)) {
        for (m, _) in p.terms() {
            if !monos.contains(m) {
                monos.push(*m);
            }
        }
    }
    monos.sort();
    let cols = basis.len();
    let mut rows: Vec<Vec<Scalar>> = monos
        .iter()
        .map(|m| {
            let mut row: Vec<Scalar> = basis.iter().map(|p| p.coeff(m)).collect();
            row.push(target.coeff(m));
            row
        })
        .collect();
    // exact Gaussian elimination
    let mut pivot_rows: Vec<usize> = Vec::new();
    let mut r0 = 0usize;
    for c in 0..cols {
        let pivot = (r0..rows.len()).find(|&r| !rows[r][c].is_zero())?;
        rows.swap(r0, pivot);
        let pv = rows[r0][c].clone();
        for e in rows[r0].iter_mut() {
            *e /= &pv;
        }
        for r in 0..rows.len() {
            if r != r0 && !rows[r][c].is_zero() {
                let factor = rows[r][c].clone();
                for cc in 0..=cols {
                    let delta = &factor * &rows[r0][cc];
                    rows[r][cc] -= delta;
                }
            }
        }
        pivot_rows.push(r0);
        r0 += 1;
    }
    // consistency: all remaining rows must have zero rhs
    for r in r0..rows.len() {
        if !rows[r][cols].is_zero() {
            return None;
        }
    }
    let mut sol = vec![Scalar::zero(); cols];
    for (c, &r) in pivot_rows.iter().enumerate() {
        sol[c] = rows[r][cols].clone();
    }
    let _ = arity;
    Some(sol)
}

/// Binary form `sum coeffs[i] u^i v^(d-i)`.
fn binary_from_coeffs(coeffs: &[Scalar]) -> MultiPoly {
    let d = coeffs.len() - 1;
    let mut p = MultiPoly::zero(2);
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            p = p.add(&MultiPoly::from_terms(
                2,
                [(Mono::new([i as u16, (d - i) as u16, 0]), c.clone())],
            ));
        }
    }
    p
}

/// Decide pencil invariance by solving the two exact linear systems for
/// `A.f` and `B.f` against the products `A^i B^(d-i)` (linearly
/// independent since the pencil has no fixed component).
pub fn check_invariance(f: &PlaneEndo, pencil: &Pencil) -> Result<InvarianceCertificate> {
    let d = f.degree();
    let k = pencil.degree();
    let config = pencil.config();
    if k * d > config.degree_bound {
        return Err(Error::DegreeBoundExceeded {
            degree: k * d,
            bound: config.degree_bound,
        });
    }
    let basis: Vec<MultiPoly> = (0..=d)
        .map(|i| pencil.a().pow(i).mul(&pencil.b().pow(d - i)))
        .collect();
    let images = f.components();
    let target0 = pencil.a().compose(images);
    let target1 = pencil.b().compose(images);
    let coeffs0 = solve_in_basis(&basis, &target0).ok_or_else(|| Error::NotInvariant {
        reason: "first projection component is not a binary form in (A, B)".into(),
    })?;
    let coeffs1 = solve_in_basis(&basis, &target1).ok_or_else(|| Error::NotInvariant {
        reason: "second projection component is not a binary form in (A, B)".into(),
    })?;
    // re-verify by expansion
    for (coeffs, target) in [(&coeffs0, &target0), (&coeffs1, &target1)] {
        let mut acc = MultiPoly::zero(3);
        for (i, c) in coeffs.iter().enumerate() {
            acc = acc.add(&basis[i].scale(c));
        }
        assert_eq!(&acc, target, "certificate must reconstruct exactly");
    }
    let g0 = binary_from_coeffs(&coeffs0);
    let g1 = binary_from_coeffs(&coeffs1);
    let g = LineEndo::new(g0, g1).expect("induced map is a degree-d morphism");
    assert_eq!(g.degree(), d);
    Ok(InvarianceCertificate {
        g,
        coeffs0,
        coeffs1,
    })
}

/// Both sides of the ramification transfer identity, computed as plane
/// divisors with the fixed fiber convention (the fiber over `[s0:t0]` is
/// the member `[t0:-s0]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationLedger {
    pub lhs: Divisor,
    pub rhs: Divisor,
    pub equal: bool,
    pub deg_rfp: i64,
    pub e_times_dminus1: i64,
    pub rf: Divisor,
    pub rfp: Divisor,
    pub f_pull_rpi: Divisor,
    pub rpi: Divisor,
    pub rg: Divisor,
    pub pi_pull_rg: Divisor,
}

/// Check `R_f^P + f*(R_pi) = R_pi + pi*(R_g)` exactly. The pullback of
/// the divisor of a binary irreducible `q` under the projection is the
/// divisor of `q(A, B)`, which needs no root splitting.
pub fn verify_ramification_ledger(
    f: &PlaneEndo,
    pencil: &Pencil,
    cert: &InvarianceCertificate,
) -> Result<RamificationLedger> {
    let config = pencil.config();
    let rf = f.ramification(config)?;
    let rfp = restrict_to_pencil(&rf, pencil.a(), pencil.b());
    let rpi = pencil.ramification_divisor()?;
    let f_pull_rpi = pullback_plane(f.components(), &rpi, config.degree_bound)?;
    let rg = cert.g.ramification(config)?;
    let pi_pull_rg = pullback_projection(pencil.a(), pencil.b(), &rg, config.degree_bound)?;
    let lhs = rfp.add(&f_pull_rpi);
    let rhs = rpi.add(&pi_pull_rg);
    let equal = lhs == rhs;
    let e = pencil.e_invariant()?;
    Ok(RamificationLedger {
        equal,
        deg_rfp: rfp.degree(),
        e_times_dminus1: e * (f.degree() as i64 - 1),
        lhs,
        rhs,
        rf,
        rfp,
        f_pull_rpi,
        rpi,
        rg,
        pi_pull_rg,
    })
}

/// The e-invariant of a certified invariant pair with `d >= 2` is 2 or 3;
/// anything else trips an error rather than returning.
pub fn e_dichotomy(
    f: &PlaneEndo,
    pencil: &Pencil,
    _cert: &InvarianceCertificate,
) -> Result<i64> {
    if f.degree() < 2 {
        return Err(Error::Precondition {
            reason: "the e-dichotomy needs a map of degree at least 2".into(),
        });
    }
    let e = pencil.e_invariant()?;
    if e == 2 || e == 3 {
        Ok(e)
    } else {
        Err(Error::DichotomyViolation { e })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremVerdict {
    Consistent,
    Violation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairVerdict {
    pub class: PencilClass,
    pub verdict: TheoremVerdict,
}

/// Classify a certified invariant pair on an irreducible pencil. Every
/// such pair must come out elementary or binomial; `Violation` is a bug
/// trap, not an expected outcome.
pub fn classify_invariant_pair(
    f: &PlaneEndo,
    pencil: &Pencil,
    cert: &InvarianceCertificate,
) -> Result<PairVerdict> {
    let _ = (f, cert);
    if !pencil.generic_member_irreducible()? {
        return Err(Error::NotIrreducible);
    }
    let class = pencil.classify_shape()?;
    let verdict = match class {
        PencilClass::Elementary { .. } | PencilClass::Binomial { .. } => {
            TheoremVerdict::Consistent
        }
        PencilClass::Other { .. } => TheoremVerdict::Violation,
    };
    Ok(PairVerdict { class, verdict })
}

// ---- Normal-form families ----

/// Parameters of the binomial normal-form family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub d: u32,
    pub k: u32,
    pub h: u32,
    pub l: u32,
    pub c: Vec<Scalar>,
    pub swap: bool,
}

#[derive(Debug, Clone)]
pub struct GeneratedPair {
    pub endo: PlaneEndo,
    pub pencil: Pencil,
    pub certificate: InvarianceCertificate,
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::InvalidFamilySpec {
                reason: "d must be at least 2".into(),
            });
        }
        if !(self.h > 0 && self.h < self.k) {
            return Err(Error::InvalidFamilySpec {
                reason: "h must satisfy 0 < h < k".into(),
            });
        }
        if num::integer::gcd(self.h, self.k) != 1 {
            return Err(Error::InvalidFamilySpec {
                reason: "h and k must be coprime".into(),
            });
        }
        if self.k * self.l > self.d {
            return Err(Error::InvalidFamilySpec {
                reason: "l must satisfy k*l <= d".into(),
            });
        }
        if self.c.len() != self.l as usize {
            return Err(Error::InvalidFamilySpec {
                reason: format!("expected {} coefficients, found {}", self.l, self.c.len()),
            });
        }
        if self.c.iter().any(|c| c.is_zero()) {
            return Err(Error::InvalidFamilySpec {
                reason: "family coefficients must be nonzero".into(),
            });
        }
        if self.swap && self.k != 2 * self.h {
            // With the components exchanged, A.f = x^(d(k-h)) y^(dh) is a
            // binary form in (A, B) only when h = k - h; for any other
            // exponents the swapped map does not preserve the pencil.
            return Err(Error::InvalidFamilySpec {
                reason: "the swapped form preserves the pencil only when k = 2h".into(),
            });
        }
        Ok(())
    }
}

/// Build the binomial pencil `[x^h y^(k-h) : z^k]` together with the
/// normal-form map `[x^d : y^d : R]` (or its swap) for
/// `R = z^(d-kl) prod (z^k + c_i x^h y^(k-h))`, and certify invariance.
pub fn generate_family(spec: &FamilySpec, config: &Config) -> Result<GeneratedPair> {
    spec.validate()?;
    let x = MultiPoly::var(3, 0);
    let y = MultiPoly::var(3, 1);
    let z = MultiPoly::var(3, 2);
    let a = x.pow(spec.h).mul(&y.pow(spec.k - spec.h));
    let b = z.pow(spec.k);
    let pencil = Pencil::new(a.clone(), b.clone(), *config)?;
    let mut r = z.pow(spec.d - spec.k * spec.l);
    for c in &spec.c {
        r = r.mul(&b.add(&a.scale(c)));
    }
    let (p, q) = if spec.swap {
        (y.pow(spec.d), x.pow(spec.d))
    } else {
        (x.pow(spec.d), y.pow(spec.d))
    };
    let endo = PlaneEndo::new(p, q, r, config)?;
    let certificate = check_invariance(&endo, &pencil)?;
    Ok(GeneratedPair {
        endo,
        pencil,
        certificate,
    })
}

/// Build an elementary invariant pair `([P(x,y) : Q(x,y) : R(x,y,z)],
/// [x : y])` with the induced line map `[P(u,v) : Q(u,v)]`.
pub fn generate_elementary(
    p: &MultiPoly,
    q: &MultiPoly,
    r: &MultiPoly,
    config: &Config,
) -> Result<GeneratedPair> {
    for c in [p, q] {
        if c.degree_in_var(2).unwrap_or(0) > 0 {
            return Err(Error::InvalidFamilySpec {
                reason: "the first two components must not involve z".into(),
            });
        }
    }
    let endo = PlaneEndo::new(p.clone(), q.clone(), r.clone(), config)?;
    let pencil = Pencil::new(MultiPoly::var(3, 0), MultiPoly::var(3, 1), *config)?;
    let certificate = check_invariance(&endo, &pencil)?;
    Ok(GeneratedPair {
        endo,
        pencil,
        certificate,
    })
}

/// The standard verification grid over the normal-form family:
/// `2 <= d <= 4`, `k in {2, 3}`, `gcd(h, k) = 1`, `0 <= l <= d/k`,
/// coefficients drawn from `{1, 2, -1}`, and the swapped component order
/// where it is admissible (`k = 2h`).
pub fn standard_grid() -> Vec<FamilySpec> {
    let pool = [1i64, 2, -1];
    let mut out = Vec::new();
    for d in 2u32..=4 {
        for k in 2u32..=3 {
            for h in 1..k {
                if num::integer::gcd(h, k) != 1 {
                    continue;
                }
                for l in 0..=(d / k) {
                    let mut tuples: Vec<Vec<Scalar>> = vec![vec![]];
                    for _ in 0..l {
                        tuples = tuples
                            .into_iter()
                            .flat_map(|t| {
                                pool.iter().map(move |&c| {
                                    let mut t2 = t.clone();
                                    t2.push(crate::poly::int(c));
                                    t2
                                })
                            })
                            .collect();
                    }
                    for c in tuples {
                        for swap in [false, true] {
                            if swap && k != 2 * h {
                                continue;
                            }
                            out.push(FamilySpec {
                                d,
                                k,
                                h,
                                l,
                                c: c.clone(),
                                swap,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

// ---- Semiconjugacy ----

/// Solve `phi . g' = g . phi` for `g`, given `phi` and `g'`. The solution
/// is unique (up to the projective scalar) when it exists; `None` when the
/// linear system is inconsistent.
pub fn solve_semiconjugacy(phi: &LineEndo, gprime: &LineEndo) -> Result<Option<LineEndo>> {
    let d = gprime.degree();
    let [phi0, phi1] = phi.components();
    let gp = gprime.components();
    let basis: Vec<MultiPoly> = (0..=d)
        .map(|i| phi0.pow(i).mul(&phi1.pow(d - i)))
        .collect();
    let target0 = phi0.compose(&[gp[0].clone(), gp[1].clone()]);
    let target1 = phi1.compose(&[gp[0].clone(), gp[1].clone()]);
    let c0 = match solve_in_basis(&basis, &target0) {
        Some(c) => c,
        None => return Ok(None),
    };
    let c1 = match solve_in_basis(&basis, &target1) {
        Some(c) => c,
        None => return Ok(None),
    };
    let g0 = binary_from_coeffs(&c0);
    let g1 = binary_from_coeffs(&c1);
    if g0.is_zero() || g1.is_zero() {
        return Ok(None);
    }
    match LineEndo::new(g0, g1) {
        Ok(g) => {
            // verify by substitution
            let [gg0, gg1] = g.components();
            let lhs0 = gg0.compose(&[phi0.clone(), phi1.clone()]);
            let lhs1 = gg1.compose(&[phi0.clone(), phi1.clone()]);
            assert_eq!(lhs0, target0);
            assert_eq!(lhs1, target1);
            Ok(Some(g))
        }
        Err(_) => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{line_map, plane_map, poly};
    use crate::pencil::PencilClass;
    use crate::poly::int;

    fn cfg() -> Config {
        Config::default()
    }

    fn endo(s: &str) -> PlaneEndo {
        let [p, q, r] = plane_map(s).unwrap();
        PlaneEndo::new(p, q, r, &cfg()).unwrap()
    }

    fn pencil(a: &str, b: &str) -> Pencil {
        Pencil::new(poly(a, 3).unwrap(), poly(b, 3).unwrap(), cfg()).unwrap()
    }

    fn lendo(s: &str) -> LineEndo {
        let [g0, g1] = line_map(s).unwrap();
        LineEndo::new(g0, g1).unwrap()
    }

    #[test]
    fn certificate_for_split_coordinates() {
        let f = endo("[x^2 : y^2 : z^2]");
        let p = pencil("x", "y");
        let cert = check_invariance(&f, &p).unwrap();
        assert_eq!(cert.g, lendo("[u^2 : v^2]"));
    }

    #[test]
    fn certificate_for_binomial_pair() {
        let f = endo("[x^2 : y^2 : z^2 + x*y]");
        let p = pencil("x*y", "z^2");
        let cert = check_invariance(&f, &p).unwrap();
        assert_eq!(cert.g, lendo("[u^2 : (u + v)^2]"));
        assert_eq!(cert.coeffs0, vec![int(0), int(0), int(1)]);
        assert_eq!(cert.coeffs1, vec![int(1), int(2), int(1)]);
    }

    #[test]
    fn tilted_line_pencil_is_not_invariant() {
        let f = endo("[x^2 : y^2 : z^2]");
        let p = pencil("x + z", "y");
        assert!(matches!(
            check_invariance(&f, &p),
            Err(Error::NotInvariant { .. })
        ));
    }

    #[test]
    fn perturbed_binomial_map_is_not_invariant() {
        let f = endo("[x^2 : y^2 : z^2 + x^2]");
        let p = pencil("x*y", "z^2");
        assert!(matches!(
            check_invariance(&f, &p),
            Err(Error::NotInvariant { .. })
        ));
    }

    #[test]
    fn ledger_for_binomial_pair() {
        let f = endo("[x^2 : y^2 : z^2 + x*y]");
        let p = pencil("x*y", "z^2");
        let cert = check_invariance(&f, &p).unwrap();
        let ledger = verify_ramification_ledger(&f, &p, &cert).unwrap();
        assert!(ledger.equal);
        assert_eq!(ledger.deg_rfp, 3);
        assert_eq!(ledger.e_times_dminus1, 3);
        // hand side check: lhs = {x, y, z, xy + z^2}
        assert_eq!(ledger.lhs.degree(), 5);
        assert_eq!(ledger.rf, ledger.rfp);
    }

    #[test]
    fn ledger_for_elementary_pair() {
        let f = endo("[x^2 : y^2 : z^2]");
        let p = pencil("x", "y");
        let cert = check_invariance(&f, &p).unwrap();
        let ledger = verify_ramification_ledger(&f, &p, &cert).unwrap();
        assert!(ledger.equal);
        assert_eq!(ledger.deg_rfp, 2);
        assert_eq!(ledger.e_times_dminus1, 2);
        assert!(ledger.rpi.is_empty());
    }

    #[test]
    fn ledger_for_cubic_on_binomial_pencil() {
        let f = endo("[x^3 : y^3 : z^3]");
        let p = pencil("x*y", "z^2");
        let cert = check_invariance(&f, &p).unwrap();
        let ledger = verify_ramification_ledger(&f, &p, &cert).unwrap();
        assert!(ledger.equal);
        assert_eq!(ledger.deg_rfp, 6);
        assert_eq!(ledger.e_times_dminus1, 6);
    }

    #[test]
    fn dichotomy_values() {
        let f = endo("[x^2 : y^2 : z^2]");
        let p = pencil("x", "y");
        let cert = check_invariance(&f, &p).unwrap();
        assert_eq!(e_dichotomy(&f, &p, &cert).unwrap(), 2);

        let f = endo("[x^2 : y^2 : z^2 + x*y]");
        let p = pencil("x*y", "z^2");
        let cert = check_invariance(&f, &p).unwrap();
        assert_eq!(e_dichotomy(&f, &p, &cert).unwrap(), 3);

        let f = endo("[x : y : z]");
        let p = pencil("x", "y");
        let cert = check_invariance(&f, &p).unwrap();
        assert!(matches!(
            e_dichotomy(&f, &p, &cert),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn verdicts() {
        let f = endo("[x^2 : y^2 : z^2]");
        let p = pencil("x", "y");
        let cert = check_invariance(&f, &p).unwrap();
        let v = classify_invariant_pair(&f, &p, &cert).unwrap();
        assert!(matches!(v.class, PencilClass::Elementary { .. }));
        assert_eq!(v.verdict, TheoremVerdict::Consistent);

        let f = endo("[x^2 : y^2 : z^2 + x*y]");
        let p = pencil("x*y", "z^2");
        let cert = check_invariance(&f, &p).unwrap();
        let v = classify_invariant_pair(&f, &p, &cert).unwrap();
        assert!(matches!(v.class, PencilClass::Binomial { h: 1, k: 2, .. }));
        assert_eq!(v.verdict, TheoremVerdict::Consistent);

        // swap form: A.f = x^2 y^2 = A^2, B.f = B^2
        let f = endo("[y^2 : x^2 : z^2]");
        let p = pencil("x*y", "z^2");
        let cert = check_invariance(&f, &p).unwrap();
        let v = classify_invariant_pair(&f, &p, &cert).unwrap();
        assert!(matches!(v.class, PencilClass::Binomial { h: 1, k: 2, .. }));
    }

    #[test]
    fn family_generation() {
        let g = generate_family(
            &FamilySpec {
                d: 2,
                k: 2,
                h: 1,
                l: 0,
                c: vec![],
                swap: false,
            },
            &cfg(),
        )
        .unwrap();
        assert_eq!(g.endo, endo("[x^2 : y^2 : z^2]"));

        let g = generate_family(
            &FamilySpec {
                d: 2,
                k: 2,
                h: 1,
                l: 1,
                c: vec![int(1)],
                swap: false,
            },
            &cfg(),
        )
        .unwrap();
        assert_eq!(g.endo, endo("[x^2 : y^2 : z^2 + x*y]"));

        let g = generate_family(
            &FamilySpec {
                d: 3,
                k: 2,
                h: 1,
                l: 1,
                c: vec![int(2)],
                swap: true,
            },
            &cfg(),
        )
        .unwrap();
        assert_eq!(g.endo, endo("[y^3 : x^3 : z^3 + 2*x*y*z]"));
        assert_eq!(g.certificate.g.degree(), 3);
    }

    #[test]
    fn family_spec_validation() {
        let bad = FamilySpec {
            d: 3,
            k: 3,
            h: 1,
            l: 0,
            c: vec![],
            swap: true,
        };
        assert!(matches!(
            generate_family(&bad, &cfg()),
            Err(Error::InvalidFamilySpec { .. })
        ));
        let bad = FamilySpec {
            d: 2,
            k: 4,
            h: 2,
            l: 0,
            c: vec![],
            swap: false,
        };
        assert!(matches!(
            generate_family(&bad, &cfg()),
            Err(Error::InvalidFamilySpec { .. })
        ));
    }

    #[test]
    fn elementary_generation() {
        let p = poly("x^2 + y^2", 3).unwrap();
        let q = poly("x*y", 3).unwrap();
        let r = poly("z^2", 3).unwrap();
        let g = generate_elementary(&p, &q, &r, &cfg()).unwrap();
        assert_eq!(g.certificate.g, lendo("[u^2 + v^2 : u*v]"));

        let p = poly("x^2", 3).unwrap();
        let q = poly("x*y", 3).unwrap();
        assert!(generate_elementary(&p, &q, &r, &cfg()).is_err());
    }

    #[test]
    fn semiconjugacy_examples() {
        let phi = lendo("[u^2 : v^2]");
        let g = solve_semiconjugacy(&phi, &lendo("[u^2 : v^2]")).unwrap();
        assert_eq!(g, Some(lendo("[u^2 : v^2]")));

        let g = solve_semiconjugacy(&phi, &lendo("[u^3 : v^3]")).unwrap();
        assert_eq!(g, Some(lendo("[u^3 : v^3]")));

        let g = solve_semiconjugacy(&phi, &lendo("[v^2 : u^2]")).unwrap();
        assert_eq!(g, Some(lendo("[v^2 : u^2]")));
    }

    #[test]
    fn semiconjugacy_with_identity_is_identity_on_suite() {
        let id = lendo("[u : v]");
        for s in ["[u^2 : v^2]", "[u^3 : v^3]", "[u^2 : (u + v)^2]", "[v^2 : u^2]"] {
            let gp = lendo(s);
            let g = solve_semiconjugacy(&id, &gp).unwrap();
            assert_eq!(g, Some(gp));
        }
    }

    #[test]
    fn semiconjugacy_none_case() {
        // phi = [u^2 : v^2], g' = [u^2 : u*v + v^2]: sends the system
        // outside the span
        let phi = lendo("[u^2 : v^2]");
        let gp = lendo("[u^2 : u*v + v^2]");
        let g = solve_semiconjugacy(&phi, &gp).unwrap();
        assert_eq!(g, None);
    }
}
