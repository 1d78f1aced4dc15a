use prinseries_core::cells::{check_cell_closure, Perm};
use prinseries_core::characters::{extend_from_f, parse_character, parse_characters};
use prinseries_core::cosets::{
    orbit_decomposition, reduce_to_involution, s_map, symmetric_space_size, u_r_w_coverage, CosetModel,
    FiniteMatrix,
};
use prinseries_core::distinction::{
    brute_force_distinguished, central_character, central_character_trivial_on_f, is_distinguished,
    is_eta_distinguished, jacquet_counterexample_search, literal_pattern_check, sigma_selfdual,
    CounterexampleReport, PrincipalSeriesDatum, BRUTE_FORCE_MAX,
};
use prinseries_core::gamma::{gl2_distinction_by_gamma, AdditiveCharacter};
use prinseries_core::sampling::{random_invertible, seeded_rng};
use prinseries_core::{Error, Extension, Result};

use crate::report::{Record, RunReport};

pub const MODEL_NOTE: &str = "tame model: characters of K* trivial on 1+p_K, exact rational phases and magnitudes";
pub const GAMMA_CONVENTION: &str =
    "gamma convention: eps(s,chi,psi) = q_K^(-s) chi(varpi) G(chi^-1, psi) for ramified chi, 1 otherwise; psi = psi_F o Tr o (delta *)";
pub const GAMMA_TOLERANCE_NOTE: &str = "tolerance 1e-9 on |product - 1|";

fn parse_ext(input: &str) -> Result<Extension> {
    input.parse()
}

fn ext_inputs(report: &mut RunReport, ext: &Extension) {
    report.input("ext", ext);
    report.input("ext_description", ext.describe());
    report.note(MODEL_NOTE);
    if let Some(u0) = ext.u0() {
        report.note(format!("ramified d: residue of d/p is g^{u0} for the least primitive root code g"));
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "none".to_string(), |x| x.to_string())
}

pub fn distinguish(ext: &str, chars: &str) -> Result<RunReport> {
    let ext = parse_ext(ext)?;
    let chars = parse_characters(&ext, chars)?;
    let datum = PrincipalSeriesDatum::new(chars)?;
    let mut report = RunReport::new("distinguish");
    ext_inputs(&mut report, &ext);
    report.input("chars", &datum);

    let verdict = is_distinguished(&datum)?;
    let eta = is_eta_distinguished(&datum)?;
    let central = central_character(&datum);
    report.result(
        Record::new("verdict")
            .field("distinguished", yes(verdict.distinguished))
            .field("certificate", opt(verdict.certificate.as_ref()))
            .field("r", opt(verdict.r()))
            .field("eta_distinguished", yes(eta.distinguished))
            .field("eta_certificate", opt(eta.certificate.as_ref()))
            .field("sigma_selfdual", yes(sigma_selfdual(&datum)))
            .field("central_character", &central)
            .field("central_trivial", yes(central_character_trivial_on_f(&datum)))
            .field("literal_pattern_r", opt(literal_pattern_check(&datum))),
    );
    if let Some(c) = &verdict.certificate {
        report.check("certificate_revalidates", c.validate(&datum), c);
    }
    if let Some(c) = &eta.certificate {
        let eta_tilde = extend_from_f(&ext.eta_character())?;
        let twisted = datum.twist_inverse(&eta_tilde)?;
        report.check("eta_certificate_revalidates", c.validate(&twisted), c);
    }
    if datum.len() <= BRUTE_FORCE_MAX {
        let slow = brute_force_distinguished(&datum)?;
        report.check(
            "partition_search_agrees",
            slow.distinguished == verdict.distinguished,
            format!("partition search says {}", yes(slow.distinguished)),
        );
    }
    Ok(report)
}

pub fn counterexample(n: usize, ext: &str, budget: usize) -> Result<RunReport> {
    let ext = parse_ext(ext)?;
    let search = jacquet_counterexample_search(n, &ext, budget)?;
    let mut report = RunReport::new("counterexample");
    ext_inputs(&mut report, &ext);
    report.input("n", n);
    report.input("budget", budget);
    report.result(
        Record::new("search")
            .field("items", search.items.len())
            .field("candidates_examined", search.candidates_examined)
            .field("diagnostic", opt(search.diagnostic.as_ref())),
    );
    for (k, item) in search.items.iter().enumerate() {
        let r = &item.report;
        report.result(
            Record::new("item")
                .field("index", k + 1)
                .field("ext", &ext)
                .field("chars", &item.datum)
                .field("irreducible", yes(r.irreducible))
                .field("all_distinct", yes(r.all_distinct))
                .field("sigma_selfdual", yes(r.sigma_selfdual))
                .field("central_trivial", yes(r.central_trivial))
                .field("distinguished", yes(r.distinguished))
                .field("eta_distinguished", yes(r.eta_distinguished)),
        );
        let again = CounterexampleReport::verify(&item.datum)?;
        report.check(
            &format!("item_{}_reverified", k + 1),
            again.passes() && again == *r,
            "selfdual, central trivial, not distinguished, not eta-distinguished",
        );
    }
    Ok(report)
}

pub fn gamma(ext: &str, mu: &str) -> Result<RunReport> {
    let ext = parse_ext(ext)?;
    let mu = parse_character(&ext, mu, 1)?;
    let psi = AdditiveCharacter::standard(&ext)?;
    let rep = gl2_distinction_by_gamma(&mu, &psi)?;
    let mut report = RunReport::new("gamma");
    ext_inputs(&mut report, &ext);
    report.input("mu", &mu);
    report.note(GAMMA_CONVENTION);
    report.note(GAMMA_TOLERANCE_NOTE);
    report.result(
        Record::new("sweep")
            .field("chi_trivial_on_f", rep.sweep_size)
            .field("s", "1/2")
            .field("all_products_one", yes(rep.all_products_one))
            .field("worst_deviation", format!("{:.3e}", rep.worst_deviation))
            .field("tolerance", format!("{:.0e}", rep.tolerance))
            .field("poles", rep.poles.len())
            .field(
                "distinguished_by_matching",
                rep.distinction_verdict.map_or("reducible", yes),
            ),
    );
    for row in &rep.rows {
        let mut rec = Record::new("chi").field("chi", &row.chi).field("c", row.chi.c()).field(
            "phase",
            format!("{}/{}", row.chi.phase().numer(), row.chi.phase().denom()),
        );
        rec = match (row.product, row.deviation) {
            (Some(z), Some(d)) => rec
                .field("product_re", format!("{:+.12}", z.re))
                .field("product_im", format!("{:+.12}", z.im))
                .field("deviation", format!("{d:.3e}")),
            _ => rec.field("product", "pole"),
        };
        report.result(rec);
    }
    report.check(
        "products_equal_one",
        rep.witnesses.is_empty(),
        format!("worst |product - 1| = {:.3e}, tolerance {:.0e}", rep.worst_deviation, rep.tolerance),
    );
    if !rep.poles.is_empty() {
        report.note(format!(
            "{} chi excluded: L-factor pole at s = 1/2 (non-unitary mu)",
            rep.poles.len()
        ));
    }
    if let Some(agree) = rep.agrees() {
        if rep.poles.is_empty() {
            report.check("agrees_with_matching_criterion", agree, "gamma sweep vs distinction verdict");
        }
    }
    Ok(report)
}

pub struct OrbitOptions {
    pub n: usize,
    pub q: u32,
    pub full_enum: bool,
    pub random_checks: usize,
    pub seed: u64,
}

pub fn orbits(opts: &OrbitOptions) -> Result<RunReport> {
    let m = CosetModel::new(opts.q)?;
    let f = m.field();
    let mut report = RunReport::new("orbits");
    report.input("n", opts.n);
    report.input("q", opts.q);
    report.input("full_enum", yes(opts.full_enum));
    report.input("random_checks", opts.random_checks);
    report.note("finite model: K/F replaced by F_{q^2}/F_q, sigma = Frobenius, S = {M : M M^sigma = 1}");
    let formula = symmetric_space_size(opts.n as u32, opts.q as u64);
    let mut table = None;
    if opts.full_enum {
        let t = orbit_decomposition(&m, opts.n, false)?;
        let involutions = Perm::involutions(opts.n).len();
        report.result(
            Record::new("space")
                .field("s_formula", formula)
                .field("s_enumerated", t.s_size)
                .field("orbits", t.orbits.len())
                .field("involutions", involutions),
        );
        for o in &t.orbits {
            report.result(
                Record::new("orbit")
                    .field("representative", &o.representative)
                    .field("size", o.size),
            );
        }
        report.check(
            "enumeration_matches_formula",
            t.s_size as u128 == formula && t.sizes_sum() == t.s_size,
            format!("|S| = {} enumerated, {formula} by |GL_n(q^2)|/|GL_n(q)|", t.s_size),
        );
        report.check(
            "one_involution_per_orbit",
            t.orbits.iter().all(|o| o.representative.is_involution()),
            "each orbit holds exactly one permutation matrix",
        );
        report.check(
            "orbit_count_equals_involutions",
            t.orbits.len() == involutions,
            format!("{} orbits, {involutions} involutions", t.orbits.len()),
        );
        let cov = u_r_w_coverage(&m, &t)?;
        report.result(
            Record::new("coverage")
                .field("representatives", cov.representatives)
                .field("orbits_met", cov.covered_count())
                .field("orbits", cov.orbits),
        );
        report.check(
            "u_r_w_coverage",
            cov.complete(),
            format!("{}/{} orbits met", cov.covered_count(), cov.orbits),
        );
        table = Some(t);
    } else {
        report.result(Record::new("space").field("s_formula", formula));
    }
    if opts.random_checks > 0 {
        report.seed = Some(opts.seed);
        let mut rng = seeded_rng(opts.seed);
        let mut ok = 0;
        let mut consistent = 0;
        let mut first_failure = None;
        for _ in 0..opts.random_checks {
            let g = random_invertible(&m, opts.n, &mut rng);
            let s = s_map(&m, &g)?;
            match reduce_to_involution(&m, &s) {
                Ok(r) => {
                    let pw = FiniteMatrix::permutation(&r.w);
                    let back = r.y.mul(&pw, f).mul(&r.y.inverse(f)?.sigma(&m), f);
                    if back == s && r.w.is_involution() {
                        ok += 1;
                    } else if first_failure.is_none() {
                        first_failure = Some(s.to_string());
                    }
                    if let Some(t) = &table {
                        if t.orbit_of(&s).map(|k| &t.orbits[k].representative) == Some(&r.w) {
                            consistent += 1;
                        }
                    }
                }
                Err(e) => {
                    if first_failure.is_none() {
                        first_failure = Some(format!("{s}: {e}"));
                    }
                }
            }
        }
        report.result(
            Record::new("reduction")
                .field("samples", opts.random_checks)
                .field("verified", ok)
                .field("first_failure", opt(first_failure)),
        );
        report.check(
            "reduction_verified",
            ok == opts.random_checks,
            format!("{ok}/{} satisfy s = y w y^-sigma exactly", opts.random_checks),
        );
        if table.is_some() {
            report.check(
                "reduction_matches_orbit_table",
                consistent == opts.random_checks,
                format!("{consistent}/{}", opts.random_checks),
            );
        }
    }
    Ok(report)
}

pub fn cells(n: usize) -> Result<RunReport> {
    let rep = check_cell_closure(n)?;
    let mut report = RunReport::new("cells");
    report.input("n", n);
    report.result(
        Record::new("order")
            .field("cells", rep.cells.len())
            .field("pairs_checked", rep.pairs_checked)
            .field("violations", rep.violations.len()),
    );
    for (i, w) in rep.cells.iter().enumerate() {
        report.result(
            Record::new("cell")
                .field("index", i + 1)
                .field("w", w)
                .field("length", w.length()),
        );
    }
    let detail = match rep.violations.first() {
        Some((v, w)) => format!("{v} < {w} but listed later"),
        None => "every Bruhat predecessor is listed earlier".to_string(),
    };
    report.check("closure", rep.passes(), detail);
    Ok(report)
}

/// Exit status for a library error: anomalies are mathematical failures, the rest are usage errors.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Anomaly(_) | Error::Internal(_) => 1,
        _ => 2,
    }
}
