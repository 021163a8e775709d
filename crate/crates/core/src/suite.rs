//! The verification suite shared by the command line and the acceptance tests.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bgg::double::{commutator_on_trivial_generator, DoubleComplex};
use crate::bgg::{q_plus_up_to, verify_exactness, verify_phi_squared, BggComplex};
use crate::cartan::{format_root, CartanType, ParabolicData, RootSystem, Weight};
use crate::error::Result;
use crate::qfield::RankMode;
use crate::qsphere::{podles_report, PodlesConfig};
use crate::reps::{dim_identity, kostant_partition};
use crate::report::{run_check, CheckRecord, Report};
use crate::uqalg::Uq;
use crate::verma::{e_kills_via_algebra, f_kills_eta_image, singular_vectors};
use crate::weyl::{incomparability_violations, BruhatGraph, WeylGroup};

const WEYL_CAP: usize = 100_000;

/// A Cartan type and a 1-based subset S of the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagSpec {
    pub cartan: String,
    pub s: String,
}

impl FlagSpec {
    pub fn new(cartan: &str, s: &str) -> Self {
        FlagSpec {
            cartan: cartan.into(),
            s: s.into(),
        }
    }

    pub fn label(&self) -> String {
        format!("{} S={{{}}}", self.cartan, self.s)
    }

    pub fn setup(&self) -> Result<(RootSystem, WeylGroup, ParabolicData)> {
        let rs = RootSystem::from_str_type(&self.cartan)?;
        let p = ParabolicData::from_one_based(&rs, &self.s)?;
        let g = WeylGroup::generate(&rs, WEYL_CAP)?;
        Ok((rs, g, p))
    }
}

/// Every irreducible flag G/P_S of rank ≤ max_rank: S is all nodes but one
/// cominuscule node.
pub fn cominuscule_family(max_rank: usize) -> Vec<FlagSpec> {
    let mut out = Vec::new();
    for t in CartanType::all_up_to(max_rank) {
        for node in t.cominuscule_nodes() {
            let s: Vec<String> = (1..=t.rank).filter(|&i| i != node + 1).map(|i| i.to_string()).collect();
            out.push(FlagSpec::new(&t.to_string(), &s.join(",")));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub mode: RankMode,
    /// Flags for the combinatorial checks.
    pub family: Vec<FlagSpec>,
    pub negative_controls: bool,
    pub pbw_types: Vec<String>,
    pub pbw_height: i64,
    /// Flags for singular vectors and the BGG complex, with height caps.
    pub bgg: Vec<(FlagSpec, i64)>,
    /// Flags for the double complex, with (E-degree, F-degree) boxes.
    pub double: Vec<(FlagSpec, (i64, i64))>,
    pub podles: Option<PodlesConfig>,
    /// Rerun the rank-dependent checks in the other rank mode and compare.
    pub cross_validate: bool,
}

impl SuiteConfig {
    /// The full acceptance suite.
    pub fn acceptance() -> Self {
        SuiteConfig {
            mode: RankMode::Symbolic,
            family: cominuscule_family(5),
            negative_controls: true,
            pbw_types: vec!["A2".into(), "B2".into(), "G2".into()],
            pbw_height: 6,
            bgg: vec![
                (FlagSpec::new("A1", ""), 8),
                (FlagSpec::new("A2", "1"), 5),
                (FlagSpec::new("A3", "1,3"), 3),
            ],
            double: vec![(FlagSpec::new("A1", ""), (3, 3)), (FlagSpec::new("A2", "1"), (2, 2))],
            podles: Some(PodlesConfig::default()),
            cross_validate: true,
        }
    }

    /// Everything that applies to one flag.
    pub fn single(flag: FlagSpec, height: i64, bidegree_box: Option<(i64, i64)>, mode: RankMode) -> Self {
        let rank1 = flag.cartan == "A1" && flag.s.is_empty();
        SuiteConfig {
            mode,
            family: vec![flag.clone()],
            negative_controls: false,
            pbw_types: vec![flag.cartan.clone()],
            pbw_height: height.min(6),
            bgg: vec![(flag.clone(), height)],
            double: bidegree_box.map(|b| vec![(flag, b)]).unwrap_or_default(),
            podles: rank1.then(PodlesConfig::default),
            cross_validate: true,
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn check_dimension_identity(family: &[FlagSpec]) -> CheckRecord {
    run_check(
        "dimension_identity",
        "dim Λ^j(g/p_S) = Σ_{l(w)=j} dim M(w.0) for all j, with equal weight multisets",
        || {
            let mut ok = true;
            let mut rows = Vec::new();
            for f in family {
                let (rs, g, p) = f.setup()?;
                let graph = BruhatGraph::build(&rs, &g, &p)?;
                let table = dim_identity(&rs, &g, &p, &graph)?;
                let n = p.nilradical_roots.len() as u64;
                let flag_ok = table
                    .iter()
                    .all(|r| r.exterior_dim == r.levi_dim_sum && r.multisets_agree && r.exterior_dim == binomial(n, r.level as u64));
                ok &= flag_ok;
                rows.push(json!({
                    "flag": f.label(),
                    "dim_g_over_p": n,
                    "levels": table.iter().map(|r| r.levi_dim_sum).collect::<Vec<_>>(),
                    "ok": flag_ok,
                }));
            }
            Ok((ok, rows))
        },
    )
}

pub fn check_incomparability(family: &[FlagSpec], controls: bool) -> CheckRecord {
    run_check(
        "incomparability",
        "w1.0 − w2.0 ∈ Q_S \\ Q_S^+ at equal length; α_s-coefficient 1 across adjacent lengths",
        || {
            let mut ok = true;
            let mut rows = Vec::new();
            for f in family {
                let (rs, g, p) = f.setup()?;
                let graph = BruhatGraph::build(&rs, &g, &p)?;
                let v = incomparability_violations(&rs, &g, &p, &graph, &Weight::zero(rs.rank()));
                ok &= v.is_empty();
                rows.push(json!({ "flag": f.label(), "elements": graph.elements.len(), "violations": v.len() }));
            }
            let mut negative = Vec::new();
            if controls {
                // S = ∅ (a reducible flag) and μ = ω₃ on Gr(2,4) must both fail
                for (f, mu) in [(FlagSpec::new("A2", ""), vec![0, 0]), (FlagSpec::new("A3", "1,3"), vec![0, 0, 1])] {
                    let (rs, g, p) = f.setup()?;
                    let graph = BruhatGraph::build(&rs, &g, &p)?;
                    let v = incomparability_violations(&rs, &g, &p, &graph, &Weight(mu.clone()));
                    ok &= !v.is_empty();
                    negative.push(json!({
                        "flag": f.label(),
                        "mu": mu,
                        "violations": v.len(),
                        "first": v.first(),
                    }));
                }
            }
            Ok((ok, json!({ "family": rows, "negative_controls": negative })))
        },
    )
}

pub fn check_signs(family: &[FlagSpec]) -> CheckRecord {
    run_check("sign_assignment", "a ±1 labelling of arrows with product −1 around every square", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for f in family {
            let (rs, g, p) = f.setup()?;
            let graph = BruhatGraph::build(&rs, &g, &p)?;
            let valid = graph.signs_valid();
            ok &= valid;
            rows.push(json!({
                "flag": f.label(),
                "arrows": graph.arrows.len(),
                "squares": graph.squares.len(),
                "ok": valid,
            }));
        }
        Ok((ok, rows))
    })
}

pub fn check_pbw(types: &[String], height: i64) -> CheckRecord {
    run_check("pbw_dimensions", "dim U_q(n^-)_{−β} equals the Kostant partition number P(β)", || {
        let mut ok = true;
        let mut rows = Vec::new();
        for t in types {
            let rs = RootSystem::from_str_type(t)?;
            let uq = Uq::new(&rs);
            let mut checked = 0;
            let mut mismatches = Vec::new();
            let mut largest = 0;
            for beta in q_plus_up_to(rs.rank(), height) {
                let d = uq.serre_quotient_dim(&beta);
                let p = kostant_partition(&rs, &beta) as usize;
                checked += 1;
                largest = largest.max(d);
                if d != p {
                    mismatches.push(json!({ "beta": format_root(&beta), "serre": d, "kostant": p }));
                }
            }
            ok &= mismatches.is_empty();
            rows.push(json!({ "type": t, "weights": checked, "largest": largest, "mismatches": mismatches }));
        }
        Ok((ok, rows))
    })
}

pub fn check_singular_vectors(flags: &[FlagSpec]) -> CheckRecord {
    run_check(
        "singular_vectors",
        "every arrow has a one-dimensional nonzero space of singular vectors; η-images satisfy the mirrored conditions",
        || {
            let mut ok = true;
            let mut rows = Vec::new();
            for f in flags {
                let (rs, g, p) = f.setup()?;
                let uq = Uq::new(&rs);
                let graph = BruhatGraph::build(&rs, &g, &p)?;
                let zero = Weight::zero(rs.rank());
                let shifted: Vec<Weight> = graph.elements.iter().map(|&k| g.shifted_act(k, &zero)).collect();
                for arrow in &graph.arrows {
                    let lambda = &shifted[arrow.to];
                    let beta = rs.weight_to_root(&(lambda - &shifted[arrow.from]))?;
                    let sols = singular_vectors(&uq, lambda, &beta)?;
                    let nonzero = sols.first().is_some_and(|v| v.iter().any(|c| !c.is_zero()));
                    let (mut e_ok, mut f_ok) = (false, false);
                    if let Some(v) = sols.first() {
                        e_ok = e_kills_via_algebra(&uq, lambda, &beta, v)?;
                        f_ok = f_kills_eta_image(&uq, lambda, &beta, v)?;
                    }
                    let arrow_ok = sols.len() == 1 && nonzero && e_ok && f_ok;
                    ok &= arrow_ok;
                    rows.push(json!({
                        "flag": f.label(),
                        "arrow": format!("{} → {}", graph.labels[arrow.from], graph.labels[arrow.to]),
                        "beta": format_root(&beta),
                        "kernel_dim": sols.len(),
                        "e_kills": e_ok,
                        "eta_mirror": f_ok,
                    }));
                }
            }
            Ok((ok, rows))
        },
    )
}

fn bgg_witness(f: &FlagSpec, height: i64, mode: RankMode) -> Result<(bool, Value)> {
    let (rs, g, p) = f.setup()?;
    let uq = Uq::new(&rs);
    let c = BggComplex::build(&rs, &uq, &g, &p, &Weight::zero(rs.rank()))?;
    let phi = verify_phi_squared(&rs, &uq, &c)?;
    let ex = verify_exactness(&rs, &uq, &c, height, mode)?;
    let euler = ex.slices.iter().all(|s| s.euler_characteristic == 0);
    let ok = phi.ok && ex.ok && euler;
    let mut ex_json = serde_json::to_value(&ex).unwrap_or(Value::Null);
    if let Some(m) = ex_json.as_object_mut() {
        m.remove("mode");
    }
    Ok((
        ok,
        json!({
            "flag": f.label(),
            "levels": c.level_sizes(),
            "phi_squared": { "pairs": phi.pairs.len(), "ok": phi.ok },
            "euler_characteristic_zero": euler,
            "exactness": ex_json,
        }),
    ))
}

pub fn check_bgg(targets: &[(FlagSpec, i64)], mode: RankMode) -> CheckRecord {
    run_check(
        "bgg_complex",
        "φ∘φ = 0 after normalization; every weight slice up to the height cap is exact with Euler characteristic 0",
        || {
            let mut ok = true;
            let mut out = Vec::new();
            for (f, h) in targets {
                let (k, w) = bgg_witness(f, *h, mode)?;
                ok &= k;
                out.push(w);
            }
            Ok((ok, out))
        },
    )
}

pub fn check_double(targets: &[(FlagSpec, (i64, i64))]) -> CheckRecord {
    run_check(
        "double_complex",
        "horizontal and vertical maps anticommute on every verified slice; (F_sE_s − E_sF_s)·(v₀⊗ξ₀) = 0",
        || {
            let mut ok = true;
            let mut out = Vec::new();
            for (f, (a, b)) in targets {
                let (rs, g, p) = f.setup()?;
                let uq = Uq::new(&rs);
                let c = BggComplex::build(&rs, &uq, &g, &p, &Weight::zero(rs.rank()))?;
                let dc = DoubleComplex::build(&rs, &uq, &c, *a, *b)?;
                let trivial = commutator_on_trivial_generator(&dc)?;
                let wd = dc.verify_well_defined()?;
                let wd_ok = wd.iter().all(|r| r.ok);
                let ac = dc.verify_anticommute(*a, *b)?;
                let vectors: usize = ac.records.iter().map(|r| r.vectors_checked).sum();
                let this = trivial && wd_ok && ac.ok;
                ok &= this;
                out.push(json!({
                    "flag": f.label(),
                    "box": [a, b],
                    "commutator_on_generator_zero": trivial,
                    "maps_well_defined": wd_ok,
                    "squares": ac.records.len(),
                    "vectors_checked": vectors,
                    "failures": ac.records.iter().map(|r| r.failures).sum::<usize>(),
                    "generators_ok": ac.records.iter().all(|r| r.generator_zero),
                }));
            }
            Ok((ok, out))
        },
    )
}

fn rows_columns_witness(f: &FlagSpec, bx: (i64, i64), mode: RankMode) -> Result<(bool, Value)> {
    let (rs, g, p) = f.setup()?;
    let uq = Uq::new(&rs);
    let c = BggComplex::build(&rs, &uq, &g, &p, &Weight::zero(rs.rank()))?;
    let dc = DoubleComplex::build(&rs, &uq, &c, bx.0, bx.1)?;
    let rc = dc.verify_rows_columns(bx.0, bx.1, mode)?;
    let lines: Vec<Value> = rc
        .lines
        .iter()
        .map(|l| json!({ "kind": l.kind, "fixed": l.fixed, "weight": l.weight, "degree": l.degree, "dims": l.dims, "ranks": l.ranks, "exact": l.exact }))
        .collect();
    Ok((
        rc.ok,
        json!({
            "flag": f.label(),
            "box": [bx.0, bx.1],
            "lines": lines,
            "graded_failures": rc.graded.iter().filter(|g| !g.ok).count(),
            "graded_checked": rc.graded.len(),
        }),
    ))
}

pub fn check_rows_columns(targets: &[(FlagSpec, (i64, i64))], mode: RankMode) -> CheckRecord {
    run_check(
        "rows_columns",
        "rows and columns of the double complex are exact at every interior position of the verified windows; \
         graded dimensions factor as dim W(w₁.0, 0) · dim M(w₂.0)",
        || {
            let mut ok = true;
            let mut out = Vec::new();
            for (f, bx) in targets {
                let (k, w) = rows_columns_witness(f, *bx, mode)?;
                ok &= k;
                out.push(w);
            }
            Ok((ok, out))
        },
    )
}

pub fn check_podles(config: PodlesConfig) -> CheckRecord {
    run_check(
        "quantum_sphere",
        "calculus dimensions binom(1,k) for ∂, ∂̄ and binom(2,k) for d; Leibniz; d² = 0; a central coinvariant volume form",
        || {
            let r = podles_report(config)?;
            Ok((r.ok, r))
        },
    )
}

pub fn check_cross_validation(bgg: &[(FlagSpec, i64)], double: &[(FlagSpec, (i64, i64))], mode: RankMode) -> CheckRecord {
    let other = match mode {
        RankMode::Symbolic => RankMode::Evaluation,
        RankMode::Evaluation => RankMode::Symbolic,
    };
    run_check(
        "engine_cross_validation",
        "symbolic and evaluation-assisted rank computations give identical reports",
        || {
            let mut ok = true;
            let mut out = Vec::new();
            for (f, h) in bgg {
                let same = bgg_witness(f, *h, mode)? == bgg_witness(f, *h, other)?;
                ok &= same;
                out.push(json!({ "check": "bgg_complex", "flag": f.label(), "identical": same }));
            }
            for (f, bx) in double {
                let same = rows_columns_witness(f, *bx, mode)? == rows_columns_witness(f, *bx, other)?;
                ok &= same;
                out.push(json!({ "check": "rows_columns", "flag": f.label(), "identical": same }));
            }
            Ok((ok, out))
        },
    )
}

/// Runs every check the configuration asks for, in a fixed order.
pub fn run_suite(config: &SuiteConfig) -> Report {
    let mut report = Report::new(config);
    report.push(check_dimension_identity(&config.family));
    report.push(check_incomparability(&config.family, config.negative_controls));
    report.push(check_signs(&config.family));
    if !config.pbw_types.is_empty() {
        report.push(check_pbw(&config.pbw_types, config.pbw_height));
    }
    let bgg_flags: Vec<FlagSpec> = config.bgg.iter().map(|(f, _)| f.clone()).collect();
    report.push(check_singular_vectors(&bgg_flags));
    report.push(check_bgg(&config.bgg, config.mode));
    if !config.double.is_empty() {
        report.push(check_double(&config.double));
        report.push(check_rows_columns(&config.double, config.mode));
    }
    if let Some(pc) = config.podles {
        report.push(check_podles(pc));
    }
    if config.cross_validate {
        report.push(check_cross_validation(&config.bgg, &config.double, config.mode));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_list() {
        let fam = cominuscule_family(5);
        let labels: Vec<String> = fam.iter().map(|f| f.label()).collect();
        assert!(labels.contains(&"A1 S={}".to_string()));
        assert!(labels.contains(&"A3 S={1,3}".to_string()));
        assert!(labels.contains(&"B3 S={2,3}".to_string()));
        assert!(labels.contains(&"C3 S={1,2}".to_string()));
        assert!(labels.contains(&"D4 S={1,2,3}".to_string()));
        // A: 1+2+3+4+5, B: 4, C: 4, D: 3+3
        assert_eq!(fam.len(), 15 + 4 + 4 + 6);
    }

    #[test]
    fn cp1_suite() {
        let cfg = SuiteConfig::single(FlagSpec::new("A1", ""), 8, Some((2, 2)), RankMode::Symbolic);
        let r = run_suite(&cfg);
        for rec in &r.records {
            assert_eq!(rec.status, crate::report::Status::Pass, "{}: {}", rec.check_id, rec.witness);
        }
    }
}
