use std::fmt::Write;

use sldkit::closed_forms::{sld_ghz, sld_ring_cluster, sld_w_state};
use sldkit::graph::{make_family, Family};
use sldkit::noise::{self, SolverOptions};
use sldkit::pauli::{self, Logical, SymplecticPauli};
use sldkit::{Limits, Sld};

use crate::CliResult;

const TABLE_ONE: [(&str, &str, usize); 8] = [
    ("(0,0,0)", "1 ⊗ 1 ⊗ 1", 0),
    ("(0,0,1)", "1 ⊗ Z ⊗ X", 2),
    ("(0,1,0)", "Z ⊗ X ⊗ Z", 3),
    ("(0,1,1)", "Z ⊗ XZ ⊗ XZ", 3),
    ("(1,0,0)", "X ⊗ Z ⊗ 1", 2),
    ("(1,0,1)", "X ⊗ 1 ⊗ X", 2),
    ("(1,1,0)", "XZ ⊗ XZ ⊗ Z", 3),
    ("(1,1,1)", "XZ ⊗ X ⊗ XZ", 3),
];

const SURF9: &str = "(1, 0, 4, 12, 22, 52, 100, 148, 129, 44)";
const SURF25: &str = "(1, 0, 8, 0, 72, 80, 534, 984, 3715, 8776, 25816, 62160, 158448, 386416, \
782532, 1561984, 2726047, 3951328, 5115376, 5666352, 5136632, 3919936, 2437206, 1141160, 390829, 78040)";

fn tensor(p: &SymplecticPauli) -> String {
    p.r()
        .iter()
        .zip(p.s())
        .map(|(&x, &z)| match (x, z) {
            (0, 0) => "1",
            (1, 0) => "X",
            (0, 1) => "Z",
            _ => "XZ",
        })
        .collect::<Vec<_>>()
        .join(" ⊗ ")
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

/// Markdown report of the reference values and whether each one is met.
pub fn report(limits: &Limits) -> CliResult<(String, bool)> {
    let mut all_ok = true;
    let mut out = String::from("# sldkit reproduction report\n\n");

    out += "## Three-vertex path: colour assignments and operator weights\n\n";
    out += "| r | operator | weight | expected | status |\n|---|---|---|---|---|\n";
    let p3 = make_family(Family::Path, 3, 2)?;
    let group = pauli::graph_stabilizer_generators(&p3);
    for (label, op, weight) in TABLE_ONE {
        let bits: Vec<u32> = label.chars().filter_map(|c| c.to_digit(10)).collect();
        let element = group.element(&bits)?;
        let ok = tensor(&element) == op && pauli::symplectic_weight(&element) == weight;
        all_ok &= ok;
        let _ = writeln!(
            out,
            "| {label} | {} | {} | {weight} | {} |",
            tensor(&element),
            pauli::symplectic_weight(&element),
            mark(ok)
        );
    }
    let sld = sldkit::sld::brute_force_sld(&p3, limits)?;
    let ok = sld.to_string() == "(1, 0, 3, 4)";
    all_ok &= ok;
    let _ = writeln!(out, "\nDistribution: {sld} ({})\n", mark(ok));

    out += "## Surface-code distributions\n\n| state | computed | status |\n|---|---|---|\n";
    let mut surfaces: Vec<Sld> = Vec::new();
    for (distance, reference) in [(3, SURF9), (5, SURF25)] {
        let group = pauli::rotated_surface_code_logical_generators(distance, Logical::Zero)?;
        let sld = pauli::group_weight_distribution(&group, limits)?;
        let ok = sld.to_string() == reference;
        all_ok &= ok;
        let _ = writeln!(out, "| surf({}) | {sld} | {} |", distance * distance, mark(ok));
        surfaces.push(sld);
    }

    out += "\n## W states\n\n| n | computed | expected | status |\n|---|---|---|---|\n";
    for (n, reference) in [(4, "(1, 1, 3, 7, 4)"), (5, "(1, 9/5, 18/5, 10, 57/5, 21/5)")] {
        let sld = sld_w_state(n)?;
        let ok = sld.to_string() == reference;
        all_ok &= ok;
        let _ = writeln!(out, "| {n} | {sld} | {reference} | {} |", mark(ok));
    }

    out += "\n## Noise thresholds\n\n| quantity | computed | reference | tolerance | status |\n|---|---|---|---|---|\n";
    let options = SolverOptions::default();
    let ghz = sld_ghz(1000)?;
    let rcl = sld_ring_cluster(1000)?;
    let purity = |s: &Sld| -> CliResult<f64> {
        Ok(noise::threshold_purity(s, &options)?.p_lower_bound.unwrap_or(f64::NAN))
    };
    let nsl = |s: &Sld| noise::threshold_nsl(s).p_lower_bound.unwrap_or(f64::NAN);
    let cycle = make_family(Family::Cycle, 10, 2)?;
    let rows = [
        ("purity, surf(9)", purity(&surfaces[0])?, 0.28, 0.005),
        ("purity, surf(25)", purity(&surfaces[1])?, 0.31, 0.005),
        ("nSL, surf(9)", nsl(&surfaces[0]), 0.19, 0.005),
        ("nSL, surf(25)", nsl(&surfaces[1]), 0.20, 0.005),
        ("nSL, GHZ(1000)", nsl(&ghz), 1.0 - 0.5f64.sqrt(), 0.005),
        ("purity, RCL(1000)", purity(&rcl)?, 0.310, 0.005),
        ("nSL, RCL(1000)", nsl(&rcl), 0.174, 0.01),
        ("PPT local, GHZ(n → ∞)", noise::ppt_ghz_qubit(1 << 30), 1.0 - 1.0 / 5f64.sqrt(), 1e-6),
        ("PPT global, stabilizer n = 2", noise::threshold_ppt_global_stabilizer(2, 2)?, 2.0 / 3.0, 1e-12),
        ("distillation, cycle", noise::threshold_distillation(&cycle)?, 1.0 - 2f64.powf(-1.0 / 3.0), 1e-12),
    ];
    for (name, value, reference, tol) in rows {
        let ok = (value - reference).abs() <= tol;
        all_ok &= ok;
        let _ = writeln!(out, "| {name} | {value:.4} | {reference:.4} | {tol} | {} |", mark(ok));
    }
    let _ = writeln!(out, "\nOverall: {}", if all_ok { "all values reproduced" } else { "mismatches present" });
    Ok((out, all_ok))
}
