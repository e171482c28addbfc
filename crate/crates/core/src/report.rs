//! JSON report shapes. Field order is fixed by struct order and all maps
//! are ordered, so serialized output is byte-deterministic for fixed
//! inputs and seed.

use serde::Serialize;

use crate::divisor::Divisor;
use crate::endo::{LineEndo, PlaneEndo};
use crate::invariance::RamificationLedger;
use crate::pencil::{BasePoints, Pencil, PencilClass, SpecialMember, SpecialMembers};

#[derive(Debug, Serialize)]
pub struct BasePointEntry {
    pub point: String,
    pub multiplicity: u32,
}

#[derive(Debug, Serialize)]
pub struct FactorEntry {
    pub form: String,
    pub multiplicity: u32,
}

#[derive(Debug, Serialize)]
pub struct SpecialMemberReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parameter: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_poly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factorization: Option<Vec<FactorEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_reduced: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_irreducible: Option<bool>,
    pub ramification: Option<Divisor>,
    pub disc_multiplicity: u32,
}

impl SpecialMemberReport {
    pub fn from(member: &SpecialMember) -> Self {
        match member {
            SpecialMember::Resolved {
                parameter,
                factorization,
                is_reduced,
                is_irreducible,
                ramification,
                disc_multiplicity,
            } => SpecialMemberReport {
                parameter: Some(parameter.to_string()),
                min_poly: None,
                factorization: Some(
                    factorization
                        .factors
                        .iter()
                        .map(|(c, m)| FactorEntry {
                            form: c.to_string(),
                            multiplicity: *m,
                        })
                        .collect(),
                ),
                is_reduced: Some(*is_reduced),
                is_irreducible: Some(*is_irreducible),
                ramification: Some(ramification.clone()),
                disc_multiplicity: *disc_multiplicity,
            },
            SpecialMember::Unresolved {
                min_poly,
                disc_multiplicity,
            } => SpecialMemberReport {
                parameter: None,
                min_poly: Some(min_poly.to_string()),
                factorization: None,
                is_reduced: None,
                is_irreducible: None,
                ramification: None,
                disc_multiplicity: *disc_multiplicity,
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PencilReport {
    pub pencil: String,
    pub degree: u32,
    pub base_points: Vec<BasePointEntry>,
    pub residual_base_multiplicity: u32,
    pub base_total: u32,
    pub special_members: Vec<SpecialMemberReport>,
    pub disc_degenerate: bool,
    pub r_pi: Divisor,
    pub r_pi_degree: i64,
    pub minor_check_agrees: bool,
    pub e: i64,
    pub class: String,
    pub irreducible_over_q: bool,
    pub seed: u64,
}

impl PencilReport {
    pub fn build(pencil: &Pencil) -> crate::error::Result<Self> {
        let base = pencil.base_points_rational()?;
        let specials = pencil.special_members()?;
        let ram = pencil.ramification_data()?;
        let e = pencil.e_invariant()?;
        let class = pencil.classify_shape()?;
        let irreducible = pencil.generic_member_irreducible()?;
        Ok(Self::assemble(
            pencil, &base, specials, &ram.divisor, ram.minor_check_agrees, e, &class, irreducible,
        ))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        pencil: &Pencil,
        base: &BasePoints,
        specials: &SpecialMembers,
        r_pi: &Divisor,
        minor_check_agrees: bool,
        e: i64,
        class: &PencilClass,
        irreducible_over_q: bool,
    ) -> Self {
        PencilReport {
            pencil: pencil.to_string(),
            degree: pencil.degree(),
            base_points: base
                .points
                .iter()
                .map(|(p, m)| BasePointEntry {
                    point: p.to_string(),
                    multiplicity: *m,
                })
                .collect(),
            residual_base_multiplicity: base.residual_multiplicity,
            base_total: base.total,
            special_members: specials.members.iter().map(SpecialMemberReport::from).collect(),
            disc_degenerate: specials.disc_degenerate,
            r_pi: r_pi.clone(),
            r_pi_degree: r_pi.degree(),
            minor_check_agrees,
            e,
            class: class.label(),
            irreducible_over_q,
            seed: pencil.config().seed,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct EndoReport {
    pub map: String,
    pub degree: u32,
    pub morphism: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_f: Option<Divisor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_f_degree: Option<i64>,
    pub seed: u64,
}

impl EndoReport {
    pub fn valid(f: &PlaneEndo, config: &crate::Config) -> crate::error::Result<Self> {
        let rf = f.ramification(config)?;
        Ok(EndoReport {
            map: f.to_string(),
            degree: f.degree(),
            morphism: true,
            r_f_degree: Some(rf.degree()),
            r_f: Some(rf),
            seed: config.seed,
        })
    }

    pub fn invalid(map: String, degree: u32, seed: u64) -> Self {
        EndoReport {
            map,
            degree,
            morphism: false,
            r_f: None,
            r_f_degree: None,
            seed,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LedgerReport {
    pub equal: bool,
    pub lhs: Divisor,
    pub rhs: Divisor,
    #[serde(rename = "deg_RfP")]
    pub deg_rfp: i64,
    pub expected: i64,
}

impl LedgerReport {
    pub fn from(ledger: &RamificationLedger) -> Self {
        LedgerReport {
            equal: ledger.equal,
            lhs: ledger.lhs.clone(),
            rhs: ledger.rhs.clone(),
            deg_rfp: ledger.deg_rfp,
            expected: ledger.e_times_dminus1,
        }
    }
}

/// Verdict shape shared by the invariance, ledger and classification
/// commands: `{invariant, g, lemma3, e, class, violations}`.
#[derive(Debug, Serialize)]
pub struct VerdictReport {
    pub invariant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma3: Option<LedgerReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pencil_irreducible_over_q: Option<bool>,
    pub violations: Vec<String>,
    pub seed: u64,
}

impl VerdictReport {
    pub fn not_invariant(reason: String, seed: u64) -> Self {
        VerdictReport {
            invariant: false,
            g: None,
            lemma3: None,
            e: None,
            class: None,
            pencil_irreducible_over_q: None,
            violations: vec![reason],
            seed,
        }
    }

    pub fn invariant(g: &LineEndo, seed: u64) -> Self {
        let [g0, g1] = g.components();
        VerdictReport {
            invariant: true,
            g: Some([g0.to_string(), g1.to_string()]),
            lemma3: None,
            e: None,
            class: None,
            pencil_irreducible_over_q: None,
            violations: vec![],
            seed,
        }
    }
}
