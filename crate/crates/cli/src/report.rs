//! Reproduction report: every published constant recomputed and compared.

use jetdiff::bounds::{
    claimed_threshold, constant_c, euler_quartic, surface_2jet_bound, threshold_euler_quartic,
    threshold_report,
};
use jetdiff::chow::{flag_chi_closed_form, Degree, VarietySpec};
use jetdiff::jets::fit_leading;
use jetdiff::poly::{parse_poly, q, qi, Poly, Rational, Var};
use serde_json::{json, Value};

use crate::cache::Cache;
use crate::output::{csv_field, to_json_string, Format};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    VerifiedSufficiency,
    Finding,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::VerifiedSufficiency => "verified-sufficiency",
            Status::Finding => "finding",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReportEntry {
    pub claim_id: String,
    pub paper_value: String,
    pub computed_value: String,
    pub status: Status,
}

/// Claim groups accepted by `--claims`.
pub const CLAIMS: [&str; 7] = [
    "quartic",
    "log-cubic",
    "euler-threshold",
    "sym-h2",
    "constant-c",
    "thresholds",
    "surface",
];

fn exact(id: &str, paper: &Poly, computed: &Poly) -> ReportEntry {
    ReportEntry {
        claim_id: id.into(),
        paper_value: paper.to_string(),
        computed_value: computed.to_string(),
        status: if paper == computed {
            Status::Match
        } else {
            Status::Mismatch
        },
    }
}

fn exact_int(id: &str, paper: i64, computed: i64) -> ReportEntry {
    exact(id, &Poly::int(paper), &Poly::int(computed))
}

pub struct Inputs<'a> {
    pub cache: &'a Cache,
}

impl Inputs<'_> {
    fn leading(&self, log: bool) -> jetdiff::Result<Poly> {
        let v = if log {
            VarietySpec::log_pair(Degree::Symbolic)?
        } else {
            VarietySpec::hypersurface(4, Degree::Symbolic)?
        };
        let key = format!("fit-leading|{}|order=3|degree=9", v.canonical());
        self.cache
            .get_or_compute(&key, || fit_leading(&v, 3, 9).map(|(_, lead)| lead))
    }

    fn c(&self) -> jetdiff::Result<Rational> {
        let p = self
            .cache
            .get_or_compute("constant-c|order=3|degree=9", || {
                constant_c().map(Poly::constant)
            })?;
        p.as_constant()
            .ok_or_else(|| jetdiff::Error::Internal("cached C is not a number".into()))
    }
}

pub fn paper_log_leading() -> Poly {
    parse_poly("389/81648000000*d^3 - 6913/34020000000*d^2 + 6299/4252500000*d - 1513/63787500")
        .expect("literal")
}

pub fn paper_compact_leading() -> Poly {
    euler_quartic().scale(&q(1, 81_648_000_000))
}

pub fn paper_c() -> Rational {
    q(49403, 2_520_000_000)
}

pub fn build(claims: &[String], inputs: &Inputs) -> jetdiff::Result<Vec<ReportEntry>> {
    let want = |c: &str| claims.is_empty() || claims.iter().any(|x| x == c);
    let mut out = Vec::new();
    if want("quartic") {
        out.push(exact(
            "quartic",
            &paper_compact_leading(),
            &inputs.leading(false)?,
        ));
    }
    if want("log-cubic") {
        out.push(exact(
            "log-cubic",
            &paper_log_leading(),
            &inputs.leading(true)?,
        ));
    }
    if want("euler-threshold") {
        out.push(exact_int("euler-threshold", 43, threshold_euler_quartic()));
    }
    if want("sym-h2") {
        let chi = flag_chi_closed_form(
            &VarietySpec::hypersurface(4, Degree::Symbolic)?,
            [qi(0), qi(0), qi(0)],
        )?;
        let top = chi
            .eval_var(Var::L2, &qi(0))
            .eval_var(Var::L3, &qi(0))
            .coefficient_of(Var::L1, 5);
        out.push(exact(
            "sym-h2",
            &parse_poly("1/8*d^2 - 7/24*d").expect("literal"),
            &top,
        ));
    }
    if want("constant-c") {
        out.push(exact(
            "constant-c",
            &Poly::constant(paper_c()),
            &Poly::constant(inputs.c()?),
        ));
    }
    if want("thresholds") {
        let c = inputs.c()?;
        for log in [false, true] {
            let name = if log { "log" } else { "compact" };
            let r = threshold_report(&inputs.leading(log)?, &c, log);
            out.push(ReportEntry {
                claim_id: format!("thresholds.{}", name),
                paper_value: format!("d >= {}", claimed_threshold(log)),
                computed_value: format!(
                    "delta > 0 on [{}, {}]: {}; leading coefficient positive: {}",
                    r.claimed, r.upper, r.holds_on_range, r.leading_positive
                ),
                status: if r.verified() {
                    Status::VerifiedSufficiency
                } else {
                    Status::Mismatch
                },
            });
            out.push(ReportEntry {
                claim_id: format!("thresholds.{}.minimal", name),
                paper_value: format!("d >= {}", claimed_threshold(log)),
                computed_value: match r.minimal_found {
                    Some(d) => format!("delta > 0 for all d >= {}", d),
                    None => "delta not eventually positive".into(),
                },
                status: Status::Finding,
            });
        }
    }
    if want("surface") {
        let (_, t) = surface_2jet_bound()?;
        out.push(exact_int("surface", 15, t));
    }
    Ok(out)
}

pub fn has_mismatch(entries: &[ReportEntry]) -> bool {
    entries.iter().any(|e| e.status == Status::Mismatch)
}

pub fn render(entries: &[ReportEntry], format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = String::new();
            for e in entries {
                s.push_str(&format!(
                    "{:<26} {:<21} computed: {}\n",
                    e.claim_id,
                    e.status.as_str(),
                    e.computed_value
                ));
                if e.status != Status::Match {
                    s.push_str(&format!(
                        "{:<26} {:<21} paper:    {}\n",
                        "", "", e.paper_value
                    ));
                }
            }
            let bad = entries
                .iter()
                .filter(|e| e.status == Status::Mismatch)
                .count();
            s.push_str(&format!("{} claims, {} mismatches\n", entries.len(), bad));
            s
        }
        Format::Json => {
            let items: Vec<Value> = entries
                .iter()
                .map(|e| {
                    json!({
                        "claim": e.claim_id,
                        "status": e.status.as_str(),
                        "paper": e.paper_value,
                        "computed": e.computed_value,
                    })
                })
                .collect();
            let bad = entries
                .iter()
                .filter(|e| e.status == Status::Mismatch)
                .count();
            to_json_string(&json!({ "entries": items, "mismatches": bad }))
        }
        Format::Csv => {
            let mut s = String::from("claim,status,paper,computed\n");
            for e in entries {
                s.push_str(&format!(
                    "{},{},{},{}\n",
                    csv_field(&e.claim_id),
                    e.status.as_str(),
                    csv_field(&e.paper_value),
                    csv_field(&e.computed_value)
                ));
            }
            s
        }
    }
}
