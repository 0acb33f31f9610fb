use std::collections::BTreeMap;

use serde_json::{json, Value};
use sldkit::arith::{self, format_rational};
use sldkit::ensemble::EnsembleReport;
use sldkit::json::Float17;
use sldkit::noise::{self, SolverOptions, ThresholdReport};
use sldkit::{sld as engine, Limits, Moments, Sld};

use crate::input::{self, Resolved, SourceArgs};
use crate::{CliError, CliResult, Criterion, Format, Method};

fn to_json(value: &impl serde::Serialize) -> String {
    serde_json::to_string(value).expect("serializable") + "\n"
}

pub fn sld(sld: &Sld, method: &str, format: Format) -> String {
    match format {
        Format::Json => {
            let mut meta = BTreeMap::new();
            meta.insert("method".to_string(), Value::from(method));
            sld.to_json(meta) + "\n"
        }
        Format::Csv => sld.to_csv(),
        Format::Table => {
            let a = sld.normalized_f64();
            let mut out = format!("n = {}, d = {}, source = {}\nk\tA_k\ta_k\n", sld.n(), sld.d(), method);
            for (k, v) in sld.values().iter().enumerate() {
                out += &format!("{k}\t{}\t{:.6}\n", format_rational(v), a[k]);
            }
            out
        }
    }
}

fn moments_text(m: &Moments, format: Format) -> String {
    let rows = [
        ("mean", &m.mean),
        ("second_moment", &m.second_moment),
        ("variance", &m.variance),
    ];
    match format {
        Format::Json => {
            let mut doc = serde_json::Map::new();
            for (name, q) in rows {
                doc.insert(name.into(), Value::from(format_rational(q)));
                doc.insert(format!("{name}_float"), json!(Float17(arith::to_f64(q))));
            }
            to_json(&doc)
        }
        Format::Csv => {
            let mut out = String::from("quantity,exact,float\n");
            for (name, q) in rows {
                out += &format!("{name},{},{}\n", format_rational(q), arith::to_f64(q));
            }
            out
        }
        Format::Table => rows
            .iter()
            .map(|(name, q)| format!("{name:<14} {:<12} {:.6}\n", format_rational(q), arith::to_f64(q)))
            .collect(),
    }
}

pub fn moments(input: &Resolved, limits: &Limits, format: Format) -> CliResult<String> {
    let m = match input {
        Resolved::Graph { graph, .. } => engine::moments_from_graph(graph)?,
        other => {
            let (sld, _) = input::compute_sld(other, Method::Auto, limits)?;
            engine::moments_from_sld(&sld)?
        }
    };
    Ok(moments_text(&m, format))
}

struct Check {
    name: &'static str,
    passed: Option<bool>,
    detail: String,
}

pub fn verify(input: &Resolved, limits: &Limits, format: Format) -> CliResult<String> {
    let (sld, graph) = match input {
        Resolved::Pair(sld, other) => match other.as_ref() {
            Resolved::Graph { graph, .. } => (sld.clone(), Some(graph)),
            _ => return Err(CliError::Input("verify pairs an SLD with a graph source".into())),
        },
        Resolved::Graph { graph, .. } => (input::compute_sld(input, Method::Auto, limits)?.0, Some(graph)),
        other => (input::compute_sld(other, Method::Auto, limits)?.0, None),
    };
    let mut checks = Vec::new();
    let mut push = |name, passed: Option<bool>, detail: String| checks.push(Check { name, passed, detail });

    push("a0_is_one", Some(*sld.get(0) == arith::int(1)), format!("A_0 = {}", format_rational(sld.get(0))));
    push(
        "normalization",
        Some(sld.is_pure_normalized()),
        format!("sum = {}, expected {}", format_rational(&sld.total()), sld.pure_total()),
    );
    let residuals = engine::macwilliams_residuals(&sld);
    let bad: Vec<usize> = (0..residuals.len()).filter(|&m| residuals[m] != arith::int(0)).collect();
    push("macwilliams", Some(bad.is_empty()), format!("nonzero residuals at m = {bad:?}"));
    push("coarse_bound", Some(engine::coarse_bound_check(&sld)), String::new());

    if let Some(graph) = graph {
        let n = graph.n();
        let floor = arith::int(arith::pow(u64::from(graph.d()) - 1, n as u32));
        push(
            "an_lower_bound",
            Some(graph.n() == sld.n() && *sld.get(sld.n()) >= floor),
            format!("A_n >= (d-1)^n = {}", format_rational(&floor)),
        );
        if graph.d() == 2 && graph.n() == sld.n() {
            let cert = graph.kernel_certificate()?;
            let (passed, detail) = match cert.all_odd_solution {
                Some(_) => {
                    let bound = arith::int(arith::pow(2, cert.kernel_dim as u32));
                    (Some(*sld.get(n) >= bound), format!("A_n >= 2^{}", cert.kernel_dim))
                }
                None => (None, "no certificate".into()),
            };
            push("kernel_certificate", passed, detail);
        }
        match engine::graph_sld(graph, limits) {
            Ok(direct) => push(
                "matches_graph",
                Some(direct.values() == sld.values() && direct.d() == sld.d()),
                format!("enumerated {direct}"),
            ),
            Err(sldkit::Error::ResourceCap { .. }) => {
                push("matches_graph", None, "skipped: enumeration cap".into())
            }
            Err(e) => return Err(e.into()),
        }
    }

    let failed: Vec<&str> = checks.iter().filter(|c| c.passed == Some(false)).map(|c| c.name).collect();
    let text = match format {
        Format::Json => {
            let list: Vec<Value> = checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect();
            to_json(&json!({"passed": failed.is_empty(), "checks": list}))
        }
        Format::Csv => {
            let mut out = String::from("check,passed,detail\n");
            for c in &checks {
                out += &format!("{},{},\"{}\"\n", c.name, status(c.passed), c.detail.replace('"', "'"));
            }
            out
        }
        Format::Table => checks
            .iter()
            .map(|c| format!("{:<20} {:<8} {}\n", c.name, status(c.passed), c.detail))
            .collect(),
    };
    if failed.is_empty() {
        Ok(text)
    } else {
        print!("{text}");
        Err(CliError::Verification(format!("failed checks: {}", failed.join(", "))))
    }
}

fn status(passed: Option<bool>) -> &'static str {
    match passed {
        Some(true) => "pass",
        Some(false) => "FAIL",
        None => "skipped",
    }
}

pub fn threshold(
    source: &SourceArgs,
    criterion: Criterion,
    m: usize,
    options: &SolverOptions,
    limits: &Limits,
    format: Format,
) -> CliResult<String> {
    let report = match criterion {
        Criterion::PptGlobal | Criterion::PptGhzLocal => {
            let (n, d) = if !source.has_source() {
                (source.n.ok_or_else(|| CliError::Input("missing --n".into()))?, source.d)
            } else {
                let resolved = input::resolve(source, false)?;
                let (sld, _) = input::compute_sld(&resolved, Method::Auto, limits)?;
                (sld.n(), sld.d())
            };
            let p = if criterion == Criterion::PptGlobal {
                noise::threshold_ppt_global_stabilizer(n, d)?
            } else {
                noise::threshold_ppt_ghz_local(n, d)?
            };
            let name = if criterion == Criterion::PptGlobal { "ppt_global" } else { "ppt_ghz_local" };
            ThresholdReport::value(name, Some(p))
        }
        Criterion::Distill => match input::resolve(source, false)? {
            Resolved::Graph { graph, .. } => ThresholdReport::value("distill", Some(noise::threshold_distillation(&graph)?)),
            _ => return Err(CliError::Input("the distillation bound needs a graph input".into())),
        },
        Criterion::Purity | Criterion::Nsl => {
            let resolved = input::resolve(source, false)?;
            let (sld, _) = input::compute_sld(&resolved, Method::Auto, limits)?;
            match criterion {
                Criterion::Nsl => noise::threshold_nsl(&sld),
                _ if m == 1 => noise::threshold_purity(&sld, options)?,
                _ => noise::threshold_purity_general(&sld, m, options)?,
            }
        }
    };
    Ok(match format {
        Format::Json => to_json(&report),
        Format::Csv => format!(
            "criterion,p_lower_bound\n{},{}\n",
            report.criterion,
            report.p_lower_bound.map_or("".into(), |p| p.to_string())
        ),
        Format::Table => format!(
            "criterion      {}\np_lower_bound  {}\n",
            report.criterion,
            report.p_lower_bound.map_or("none".into(), |p| format!("{p:.6}"))
        ),
    })
}

pub fn ensemble(report: &EnsembleReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let mut out = String::from("sample,tvd\n");
            for (i, t) in report.tvds.iter().enumerate() {
                out += &format!("{i},{}\n", sldkit::json::format_float17(*t));
            }
            out
        }
        Format::Table => {
            let mut out = format!(
                "n = {}, q = {}, samples = {}, seed = {}\nmean TVD {:.6} (std {:.6}, 68% band [{:.6}, {:.6}])\nk\tmean A_k\tstd err\texpected\n",
                report.n, report.q, report.samples, report.seed, report.mean_tvd, report.tvd_std, report.tvd_band.0, report.tvd_band.1
            );
            for k in 0..report.mean_sld.len() {
                out += &format!(
                    "{k}\t{:.6}\t{:.6}\t{:.6}\n",
                    report.mean_sld[k], report.sld_standard_error[k], report.expected_sld[k]
                );
            }
            out
        }
    }
}
