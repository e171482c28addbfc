//! Command-line front end.
//!
//! Exit codes: 0 verified/true, 1 negative result (not invariant, not a
//! morphism, identity violation, no solution), 2 input or bound error.

use clap::{Parser, Subcommand};
use serde::Serialize;

use pencilmap::diophantine::{solutions, CountingEquation};
use pencilmap::endo::{LineEndo, PlaneEndo};
use pencilmap::invariance::{
    check_invariance, classify_invariant_pair, e_dichotomy, generate_family, solve_semiconjugacy,
    standard_grid, FamilySpec, TheoremVerdict,
};
use pencilmap::parse;
use pencilmap::pencil::{Pencil, PencilClass};
use pencilmap::report::{EndoReport, LedgerReport, PencilReport, VerdictReport};
use pencilmap::{Config, Error, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "pencilmap",
    version,
    about = "Exact verification and classification of plane endomorphisms preserving a pencil of curves"
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for reproducible random choices (overrides PENCILMAP_SEED)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Total-degree bound for factorization (minimum 4)
    #[arg(long, global = true, default_value_t = 24)]
    degree_bound: u32,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Degree, base points, special members, ramification divisor, e, class
    PencilInfo {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
    /// Degree, morphism check, ramification divisor of a plane map
    EndoInfo {
        #[arg(long)]
        map: String,
    },
    /// Invariance certificate and the induced line map
    Invariance {
        #[arg(long)]
        map: String,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
    /// Full ramification-transfer ledger for an invariant pair
    Lemma3 {
        #[arg(long)]
        map: String,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
    /// Shape verdict for a certified invariant pair
    Classify {
        #[arg(long)]
        map: String,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
    /// Emit a normal-form family pair and self-verify it
    Generate {
        #[arg(long)]
        d: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        h: Option<u32>,
        #[arg(long, default_value_t = 0)]
        l: u32,
        /// Comma-separated nonzero rational coefficients, one per factor
        #[arg(long, default_value = "")]
        c: String,
        #[arg(long)]
        swap: bool,
        /// Run the whole verification grid instead of a single spec
        #[arg(long)]
        grid: bool,
    },
    /// Solve phi . g' = g . phi for g
    Semiconj {
        #[arg(long)]
        phi: String,
        #[arg(long)]
        gprime: String,
    },
    /// Enumerate the multiplicity counting equations
    Diophantine {
        /// section2 | twoline | threeline
        #[arg(long)]
        kind: String,
        #[arg(long)]
        kmax: u64,
        #[arg(long)]
        mmax: u64,
    },
    /// Restrict the pencil to a line and audit the tangency count
    LineAudit {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        /// Parametrization `l0,l1,l2` in u,v; a seeded generic line when absent
        #[arg(long)]
        line: Option<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("PENCILMAP_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
    })
    .unwrap_or(DEFAULT_SEED)
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce()) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("report serializes")
        );
    } else {
        text();
    }
}

fn input_error(e: &Error) -> i32 {
    eprintln!("error: {e}");
    2
}

fn run(cli: Cli) -> i32 {
    let config = Config::new(cli.degree_bound, resolve_seed(cli.seed));
    let json = cli.json;
    match cli.cmd {
        Cmd::PencilInfo { a, b } => pencil_info(&a, &b, config, json),
        Cmd::EndoInfo { map } => endo_info(&map, config, json),
        Cmd::Invariance { map, a, b } => invariance_cmd(&map, &a, &b, config, json),
        Cmd::Lemma3 { map, a, b } => lemma3_cmd(&map, &a, &b, config, json),
        Cmd::Classify { map, a, b } => classify_cmd(&map, &a, &b, config, json),
        Cmd::Generate {
            d,
            k,
            h,
            l,
            c,
            swap,
            grid,
        } => generate_cmd(d, k, h, l, &c, swap, grid, config, json),
        Cmd::Semiconj { phi, gprime } => semiconj_cmd(&phi, &gprime, config, json),
        Cmd::Diophantine { kind, kmax, mmax } => diophantine_cmd(&kind, kmax, mmax, json),
        Cmd::LineAudit { a, b, line } => line_audit_cmd(&a, &b, line.as_deref(), config, json),
    }
}

fn build_pencil(a: &str, b: &str, config: Config) -> Result<Pencil, Error> {
    let (a, _) = parse::poly_homogeneous(a, 3)?;
    let (b, _) = parse::poly_homogeneous(b, 3)?;
    Pencil::new(a, b, config)
}

fn build_endo(map: &str, config: &Config) -> Result<PlaneEndo, Error> {
    let [p, q, r] = parse::plane_map(map)?;
    PlaneEndo::new(p, q, r, config)
}

fn build_line_endo(map: &str) -> Result<LineEndo, Error> {
    let [g0, g1] = parse::line_map(map)?;
    LineEndo::new(g0, g1)
}

fn pencil_info(a: &str, b: &str, config: Config, json: bool) -> i32 {
    let pencil = match build_pencil(a, b, config) {
        Ok(p) => p,
        Err(e) => return input_error(&e),
    };
    let report = match PencilReport::build(&pencil) {
        Ok(r) => r,
        Err(e) => return input_error(&e),
    };
    emit(json, &report, || {
        println!("pencil {}", report.pencil);
        println!("degree k = {}", report.degree);
        let pts: Vec<String> = report
            .base_points
            .iter()
            .map(|p| format!("{} (mult {})", p.point, p.multiplicity))
            .collect();
        println!(
            "base points: {}; residual {}; total {}",
            if pts.is_empty() {
                "none rational".to_string()
            } else {
                pts.join(", ")
            },
            report.residual_base_multiplicity,
            report.base_total
        );
        println!(
            "special members ({}{}):",
            report.special_members.len(),
            if report.disc_degenerate {
                "; discriminant degenerate, non-reduced members listed"
            } else {
                ""
            }
        );
        for m in &report.special_members {
            match (&m.parameter, &m.min_poly) {
                (Some(p), _) => {
                    let fac = m
                        .factorization
                        .as_ref()
                        .map(|fs| {
                            fs.iter()
                                .map(|f| format!("({})^{}", f.form, f.multiplicity))
                                .collect::<Vec<_>>()
                                .join("*")
                        })
                        .unwrap_or_default();
                    println!(
                        "  {p}: {fac} (reduced: {}, irreducible: {})",
                        m.is_reduced.unwrap_or(false),
                        m.is_irreducible.unwrap_or(false)
                    );
                }
                (None, Some(mp)) => {
                    println!("  unresolved parameter with minimal polynomial {mp}");
                }
                _ => {}
            }
        }
        println!(
            "R_pi = {} (degree {}; minor cross-check {})",
            report.r_pi,
            report.r_pi_degree,
            if report.minor_check_agrees {
                "agrees"
            } else {
                "DISAGREES (member-wise result is authoritative)"
            }
        );
        println!("e = {}", report.e);
        println!("class: {}", report.class);
        println!("irreducible over Q: {}", report.irreducible_over_q);
        println!("seed = {}", report.seed);
    });
    0
}

fn endo_info(map: &str, config: Config, json: bool) -> i32 {
    match build_endo(map, &config) {
        Ok(f) => {
            let report = match EndoReport::valid(&f, &config) {
                Ok(r) => r,
                Err(e) => return input_error(&e),
            };
            emit(json, &report, || {
                println!("map {}", report.map);
                println!("degree d = {}", report.degree);
                println!("morphism: true");
                println!(
                    "R_f = {} (degree {})",
                    report.r_f.as_ref().unwrap(),
                    report.r_f_degree.unwrap()
                );
                println!("seed = {}", report.seed);
            });
            0
        }
        Err(Error::NotAMorphism) => {
            let report = EndoReport::invalid(map.to_string(), 0, config.seed);
            emit(json, &report, || {
                println!("map {map}");
                println!("morphism: false (common projective zero)");
                println!("seed = {}", config.seed);
            });
            1
        }
        Err(e) => input_error(&e),
    }
}

fn invariance_cmd(map: &str, a: &str, b: &str, config: Config, json: bool) -> i32 {
    let (f, pencil) = match (build_endo(map, &config), build_pencil(a, b, config)) {
        (Ok(f), Ok(p)) => (f, p),
        (Err(e), _) | (_, Err(e)) => return input_error(&e),
    };
    match check_invariance(&f, &pencil) {
        Ok(cert) => {
            let mut report = VerdictReport::invariant(&cert.g, config.seed);
            report.pencil_irreducible_over_q = pencil.generic_member_irreducible().ok();
            emit(json, &report, || {
                println!("invariant: true");
                println!("g = {}", cert.g);
                if report.pencil_irreducible_over_q == Some(false) {
                    println!("note: reducible pencil (invariance = preimages of fibers are unions of fibers)");
                }
                println!("seed = {}", config.seed);
            });
            0
        }
        Err(Error::NotInvariant { reason }) => {
            let report = VerdictReport::not_invariant(reason.clone(), config.seed);
            emit(json, &report, || {
                println!("invariant: false ({reason})");
                println!("seed = {}", config.seed);
            });
            1
        }
        Err(e) => input_error(&e),
    }
}

fn lemma3_cmd(map: &str, a: &str, b: &str, config: Config, json: bool) -> i32 {
    let (f, pencil) = match (build_endo(map, &config), build_pencil(a, b, config)) {
        (Ok(f), Ok(p)) => (f, p),
        (Err(e), _) | (_, Err(e)) => return input_error(&e),
    };
    let cert = match check_invariance(&f, &pencil) {
        Ok(c) => c,
        Err(Error::NotInvariant { reason }) => {
            let report = VerdictReport::not_invariant(reason.clone(), config.seed);
            emit(json, &report, || println!("invariant: false ({reason})"));
            return 1;
        }
        Err(e) => return input_error(&e),
    };
    let ledger = match pencilmap::invariance::verify_ramification_ledger(&f, &pencil, &cert) {
        Ok(l) => l,
        Err(e) => return input_error(&e),
    };
    let mut report = VerdictReport::invariant(&cert.g, config.seed);
    report.lemma3 = Some(LedgerReport::from(&ledger));
    report.e = pencil.e_invariant().ok();
    if !ledger.equal {
        report.violations.push("ramification ledger mismatch".into());
    }
    emit(json, &report, || {
        println!("invariant: true, g = {}", cert.g);
        println!("R_f        = {}", ledger.rf);
        println!("R_f^P      = {} (degree {})", ledger.rfp, ledger.deg_rfp);
        println!("f*R_pi     = {}", ledger.f_pull_rpi);
        println!("R_pi       = {}", ledger.rpi);
        println!("R_g        = {}", ledger.rg);
        println!("pi*R_g     = {}", ledger.pi_pull_rg);
        println!("lhs        = {}", ledger.lhs);
        println!("rhs        = {}", ledger.rhs);
        println!(
            "equal: {}; deg R_f^P = {} (expected e(d-1) = {})",
            ledger.equal, ledger.deg_rfp, ledger.e_times_dminus1
        );
        println!("seed = {}", config.seed);
    });
    if ledger.equal && ledger.deg_rfp == ledger.e_times_dminus1 {
        0
    } else {
        1
    }
}

fn classify_cmd(map: &str, a: &str, b: &str, config: Config, json: bool) -> i32 {
    let (f, pencil) = match (build_endo(map, &config), build_pencil(a, b, config)) {
        (Ok(f), Ok(p)) => (f, p),
        (Err(e), _) | (_, Err(e)) => return input_error(&e),
    };
    let cert = match check_invariance(&f, &pencil) {
        Ok(c) => c,
        Err(Error::NotInvariant { reason }) => {
            let report = VerdictReport::not_invariant(reason.clone(), config.seed);
            emit(json, &report, || println!("invariant: false ({reason})"));
            return 1;
        }
        Err(e) => return input_error(&e),
    };
    let verdict = match classify_invariant_pair(&f, &pencil, &cert) {
        Ok(v) => v,
        Err(e) => return input_error(&e),
    };
    let e_val = e_dichotomy(&f, &pencil, &cert).ok();
    let mut report = VerdictReport::invariant(&cert.g, config.seed);
    report.class = Some(verdict.class.label());
    report.e = e_val;
    report.pencil_irreducible_over_q = Some(true);
    if verdict.verdict == TheoremVerdict::Violation {
        report.violations.push("unexpected shape".into());
    }
    emit(json, &report, || {
        println!("invariant: true, g = {}", cert.g);
        if let Some(e) = e_val {
            println!("e = {e}");
        }
        println!("class: {}", verdict.class.label());
        if let PencilClass::Binomial { matrix, .. } = &verdict.class {
            for row in matrix {
                println!("  [{} {} {}]", row[0], row[1], row[2]);
            }
        }
        println!(
            "verdict: {}",
            match verdict.verdict {
                TheoremVerdict::Consistent => "consistent",
                TheoremVerdict::Violation => "VIOLATION",
            }
        );
        println!("seed = {}", config.seed);
    });
    match verdict.verdict {
        TheoremVerdict::Consistent => 0,
        TheoremVerdict::Violation => 1,
    }
}

#[derive(Serialize)]
struct GenerateReport {
    map: String,
    pencil: String,
    g: [String; 2],
    lemma3: LedgerReport,
    class: String,
    seed: u64,
}

#[allow(clippy::too_many_arguments)]
fn generate_cmd(
    d: Option<u32>,
    k: Option<u32>,
    h: Option<u32>,
    l: u32,
    c: &str,
    swap: bool,
    grid: bool,
    config: Config,
    json: bool,
) -> i32 {
    if grid {
        return generate_grid(config, json);
    }
    let (d, k, h) = match (d, k, h) {
        (Some(d), Some(k), Some(h)) => (d, k, h),
        _ => {
            eprintln!("error: --d, --k and --h are required without --grid");
            return 2;
        }
    };
    let c = match parse::scalar_list(c) {
        Ok(c) => c,
        Err(e) => return input_error(&e),
    };
    let spec = FamilySpec { d, k, h, l, c, swap };
    let pair = match generate_family(&spec, &config) {
        Ok(p) => p,
        Err(e) => return input_error(&e),
    };
    let ledger = match pencilmap::invariance::verify_ramification_ledger(
        &pair.endo,
        &pair.pencil,
        &pair.certificate,
    ) {
        Ok(l) => l,
        Err(e) => return input_error(&e),
    };
    let class = match pair.pencil.classify_shape() {
        Ok(c) => c,
        Err(e) => return input_error(&e),
    };
    let [g0, g1] = pair.certificate.g.components();
    let report = GenerateReport {
        map: pair.endo.to_string(),
        pencil: pair.pencil.to_string(),
        g: [g0.to_string(), g1.to_string()],
        lemma3: LedgerReport::from(&ledger),
        class: class.label(),
        seed: config.seed,
    };
    emit(json, &report, || {
        println!("f = {}", report.map);
        println!("pencil = {}", report.pencil);
        println!("g = [{} : {}]", report.g[0], report.g[1]);
        println!(
            "self-verify: invariant, ledger equal: {}, deg R_f^P = {} (expected {})",
            report.lemma3.equal, report.lemma3.deg_rfp, report.lemma3.expected
        );
        println!("class: {}", report.class);
        println!("seed = {}", config.seed);
    });
    if ledger.equal && ledger.deg_rfp == ledger.e_times_dminus1 {
        0
    } else {
        1
    }
}

fn generate_grid(config: Config, json: bool) -> i32 {
    let mut all_ok = true;
    let mut lines = Vec::new();
    for spec in standard_grid() {
        let label = format!(
            "d={} k={} h={} l={} c=[{}] swap={}",
            spec.d,
            spec.k,
            spec.h,
            spec.l,
            spec.c
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()
                .join(","),
            spec.swap
        );
        let ok = generate_family(&spec, &config)
            .and_then(|pair| {
                let ledger = pencilmap::invariance::verify_ramification_ledger(
                    &pair.endo,
                    &pair.pencil,
                    &pair.certificate,
                )?;
                let verdict = classify_invariant_pair(&pair.endo, &pair.pencil, &pair.certificate)?;
                Ok(ledger.equal
                    && ledger.deg_rfp == 3 * (spec.d as i64 - 1)
                    && verdict.verdict == TheoremVerdict::Consistent)
            })
            .unwrap_or(false);
        all_ok &= ok;
        lines.push((label, ok));
    }
    if json {
        #[derive(Serialize)]
        struct GridEntry {
            spec: String,
            pass: bool,
        }
        let entries: Vec<GridEntry> = lines
            .into_iter()
            .map(|(spec, pass)| GridEntry { spec, pass })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&entries).expect("serializes")
        );
    } else {
        for (label, ok) in &lines {
            println!("{} {label}", if *ok { "PASS" } else { "FAIL" });
        }
    }
    if all_ok {
        0
    } else {
        1
    }
}

#[derive(Serialize)]
struct SemiconjReport {
    solution: Option<[String; 2]>,
    seed: u64,
}

fn semiconj_cmd(phi: &str, gprime: &str, config: Config, json: bool) -> i32 {
    let (phi, gp) = match (build_line_endo(phi), build_line_endo(gprime)) {
        (Ok(p), Ok(g)) => (p, g),
        (Err(e), _) | (_, Err(e)) => return input_error(&e),
    };
    match solve_semiconjugacy(&phi, &gp) {
        Ok(Some(g)) => {
            let [g0, g1] = g.components();
            let report = SemiconjReport {
                solution: Some([g0.to_string(), g1.to_string()]),
                seed: config.seed,
            };
            emit(json, &report, || println!("g = {g}"));
            0
        }
        Ok(None) => {
            let report = SemiconjReport {
                solution: None,
                seed: config.seed,
            };
            emit(json, &report, || println!("none"));
            1
        }
        Err(e) => input_error(&e),
    }
}

fn diophantine_cmd(kind: &str, kmax: u64, mmax: u64, json: bool) -> i32 {
    let kind = match CountingEquation::from_token(kind) {
        Some(k) => k,
        None => {
            eprintln!("error: unknown kind `{kind}` (section2 | twoline | threeline)");
            return 2;
        }
    };
    if kmax < 2 || mmax < 2 {
        eprintln!("error: bounds must be at least 2");
        return 2;
    }
    let sols = solutions(kind, kmax, mmax);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&sols).expect("serializes")
        );
    } else {
        println!("{} solution(s)", sols.len());
        for s in &sols {
            match s.k {
                Some(k) => println!("k={} multiplicities={:?}", k, s.multiplicities),
                None => println!("multiplicities={:?}", s.multiplicities),
            }
        }
    }
    0
}

#[derive(Serialize)]
struct LineAuditReport {
    line: [String; 3],
    restricted: [String; 2],
    ram_degree: u32,
    on_rpi_degree: i64,
    tangency_count: i64,
    rpi_degree: i64,
    identity_holds: bool,
    seed: u64,
}

fn line_audit_cmd(a: &str, b: &str, line: Option<&str>, config: Config, json: bool) -> i32 {
    let pencil = match build_pencil(a, b, config) {
        Ok(p) => p,
        Err(e) => return input_error(&e),
    };
    let audit = match line {
        Some(text) => {
            let param = match parse::line_param(text) {
                Ok(l) => l,
                Err(e) => return input_error(&e),
            };
            match pencil.line_audit(&param) {
                Ok(a) => a,
                Err(e) => return input_error(&e),
            }
        }
        None => match pencil.generic_audited_lines(1) {
            Ok(mut v) => v.remove(0),
            Err(e) => return input_error(&e),
        },
    };
    let report = LineAuditReport {
        line: [
            audit.line[0].to_string(),
            audit.line[1].to_string(),
            audit.line[2].to_string(),
        ],
        restricted: [audit.restricted[0].to_string(), audit.restricted[1].to_string()],
        ram_degree: audit.ram_degree,
        on_rpi_degree: audit.on_rpi_degree,
        tangency_count: audit.tangency_count,
        rpi_degree: audit.rpi_degree,
        identity_holds: audit.identity_holds,
        seed: config.seed,
    };
    emit(json, &report, || {
        println!(
            "line ({}, {}, {})",
            report.line[0], report.line[1], report.line[2]
        );
        println!(
            "restriction [{} : {}]",
            report.restricted[0], report.restricted[1]
        );
        println!(
            "ram degree = {}, on R_pi = {}, tangencies t = {}",
            report.ram_degree, report.on_rpi_degree, report.tangency_count
        );
        println!(
            "identity 2 = 2k - deg R_pi - t: {}",
            if report.identity_holds { "holds" } else { "FAILS" }
        );
        println!("seed = {}", config.seed);
    });
    if report.identity_holds {
        0
    } else {
        1
    }
}
