//! Reference claims recomputed from scratch, one table row each.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use syncorr::polytope::brute::brute_force_vertices;
use syncorr::polytope::definitional::{deterministic_sync_tables, sync_polytope};
use syncorr::polytope::{
    affine_dimension, bell_values, classical_polytope_3_2, dd_enumerate, ns_vertex_classification, w_coordinates, BellFunctional,
};
use syncorr::quantum::random::random_pvm_family;
use syncorr::quantum::{correlation_me, tsirelson_certificate, SignPattern};
use syncorr::search::{minimize, qubit_pvms, reference_saturators};
use syncorr::{rat, GameShape, Rational};

pub struct Row {
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

fn row(claim: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>, pass: bool) -> Row {
    Row { claim: claim.into(), expected: expected.into(), computed: computed.into(), pass }
}

pub fn run_all() -> Vec<Row> {
    let mut rows = Vec::new();

    let classes = ns_vertex_classification();
    rows.push(row("3x2 nonsignaling polytope vertices", "80", classes.vertices.len().to_string(), classes.vertices.len() == 80));

    let classical = dd_enumerate(&classical_polytope_3_2()).expect("bounded");
    let dim = affine_dimension(&classical).expect("nonempty");
    rows.push(row("3x2 classical polytope vertices", "8", classical.len().to_string(), classical.len() == 8));
    rows.push(row("3x2 classical polytope dimension", "6", dim.to_string(), dim == 6));

    let counts: Vec<usize> = BellFunctional::ALL.iter().map(|j| classes.violating.get(j).map_or(0, Vec::len)).collect();
    rows.push(row(
        "Bell-violating nonsignaling vertices",
        "32 = 8+8+8+8",
        format!("{} = {}", classes.violating_count(), counts.iter().map(ToString::to_string).collect::<Vec<_>>().join("+")),
        classes.violating_count() == 32 && counts.iter().all(|&c| c == 8),
    ));
    let magnitudes: Vec<&Rational> = classes.reports.iter().filter(|r| r.violated.is_some()).map(|r| &r.magnitude).collect();
    let all_half = magnitudes.iter().all(|m| **m == rat(1, 2));
    let single = classes.reports.iter().all(|r| r.violation_count <= 1);
    rows.push(row(
        "nonsignaling violation magnitude",
        "1/2, one inequality per vertex",
        if all_half && single { "1/2, one inequality per vertex".into() } else { "mismatch".to_string() },
        all_half && single,
    ));

    let saturators = reference_saturators();
    for (j, s) in &saturators {
        let k = j.index();
        let p = correlation_me(&qubit_pvms(&s.angles), 1e-12).expect("valid kets");
        let dev = p.max_abs_diff_from(&s.matrix);
        rows.push(row(format!("P{k} regenerated from its kets"), "deviation <= 1e-12", format!("{dev:.1e}"), dev <= 1e-12));
        let report = bell_values(&w_coordinates(&s.matrix).expect("3x2"), 0.0);
        if k == 0 {
            let expected = [rat(9, 8), rat(3, 8), rat(3, 8), rat(3, 8)];
            let shown: Vec<String> = report.values.iter().map(ToString::to_string).collect();
            rows.push(row("(J0,J1,J2,J3) of P0", "(9/8, 3/8, 3/8, 3/8)", format!("({})", shown.join(", ")), report.values == expected));
        } else {
            let v = report.value(*j);
            rows.push(row(format!("J{k} of P{k}"), "-1/8", v.to_string(), *v == rat(-1, 8)));
        }
    }

    for (j, s) in &saturators {
        let k = j.index();
        let r = minimize(*j, 128, 1e-10).expect("valid grid");
        let label = if k == 0 { "1-J0".to_string() } else { format!("J{k}") };
        rows.push(row(
            format!("min {label} over qubit strategies"),
            "-1/8 (+-1e-8)",
            format!("{:.12}", r.min_value),
            (r.min_value + 0.125).abs() <= 1e-8,
        ));
        let dev = r.canonical_matrix.max_abs_diff_from(&s.matrix);
        rows.push(row(
            format!("{label} minimizers give one matrix, P{k}"),
            "1 matrix, deviation <= 1e-8",
            format!("{} matrix, deviation {dev:.1e}", r.distinct_matrices),
            r.distinct_matrices == 1 && dev <= 1e-8,
        ));
    }

    let p0 = qubit_pvms(&saturators[&BellFunctional::J0].angles);
    let cert = tsirelson_certificate(&p0, SignPattern::PlusPlusPlus, 1e-12).expect("matches");
    rows.push(row("trace certificate on P0", "-1/8", format!("{:.12}", cert.value), (cert.value + 0.125).abs() <= 1e-12));

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut worst_residual, mut worst_slack, mut multi) = (0.0f64, f64::INFINITY, 0usize);
    for d in 2..=6 {
        for _ in 0..100 {
            let fam = random_pvm_family(d, 3, 2, &mut rng);
            for s in SignPattern::ALL {
                match tsirelson_certificate(&fam, s, 1e-9) {
                    Ok(c) => {
                        worst_residual = worst_residual.max(c.residual);
                        worst_slack = worst_slack.min(c.slack);
                    }
                    Err(_) => worst_residual = f64::INFINITY,
                }
            }
            let report = bell_values(&w_coordinates(&correlation_me(&fam, 1e-9).expect("real")).expect("3x2"), 1e-9);
            multi += usize::from(report.violation_count > 1);
        }
    }
    rows.push(row(
        "random PVMs, d=2..6: certificate = functional",
        "residual <= 1e-9",
        format!("{worst_residual:.1e}"),
        worst_residual <= 1e-9,
    ));
    rows.push(row(
        "random PVMs, d=2..6: slack >= -1/8, one violation",
        ">= -0.125, 0 multi",
        format!("{worst_slack:.6}, {multi} multi"),
        worst_slack >= -0.125 - 1e-9 && multi == 0,
    ));

    let shape = GameShape::new(2, 2).expect("2x2");
    let h = sync_polytope(shape);
    let dd = dd_enumerate(&h).expect("bounded");
    let bf = brute_force_vertices(&h);
    let tables = deterministic_sync_tables(shape).len();
    rows.push(row(
        "2x2 synchronous polytope vertices (recorded)",
        "DD = brute force = m^(2n^2-n)",
        format!("{} = {} = {tables}", dd.len(), bf.len()),
        dd == bf && dd.len() == tables,
    ));
    rows
}

pub fn format_table(rows: &[Row]) -> String {
    let w0 = rows.iter().map(|r| r.claim.chars().count()).max().unwrap_or(0).max(5);
    let w1 = rows.iter().map(|r| r.expected.chars().count()).max().unwrap_or(0).max(8);
    let w2 = rows.iter().map(|r| r.computed.chars().count()).max().unwrap_or(0).max(8);
    let mut out = format!("{:<w0$} | {:<w1$} | {:<w2$} | result\n", "claim", "expected", "computed");
    out.push_str(&format!("{}-+-{}-+-{}-+-------\n", "-".repeat(w0), "-".repeat(w1), "-".repeat(w2)));
    for r in rows {
        let verdict = if r.pass { "pass" } else { "FAIL" };
        out.push_str(&format!("{:<w0$} | {:<w1$} | {:<w2$} | {verdict}\n", r.claim, r.expected, r.computed));
    }
    let passed = rows.iter().filter(|r| r.pass).count();
    out.push_str(&format!("{passed}/{} claims reproduced\n", rows.len()));
    out
}
