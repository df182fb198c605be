//! Plain-text rendering of results. The `--json` output serializes the same values.

use tatecoh::surgery::{BrowderPipeline, RowGluing};
use tatecoh::{BrowderReport, CohomologyTable, GluingCertificate, RowTable};

/// Left-aligned columns separated by two spaces.
pub fn table(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// `label(i) = group  exp e` per degree.
pub fn cohomology(t: &CohomologyTable, label: impl Fn(i32) -> String) -> String {
    let rows: Vec<Vec<String>> = t
        .entries
        .iter()
        .map(|e| {
            vec![
                format!("{} = {}", label(e.degree), e.group),
                format!("exp {}", e.exponent),
            ]
        })
        .collect();
    table(&rows)
}

pub fn rows(t: &RowTable) -> String {
    let offsets: Vec<String> = t.offsets.iter().map(i32::to_string).collect();
    let mut out = format!("n = {}, offsets {}\n", t.n, offsets.join(" "));
    let body: Vec<Vec<String>> = t
        .rows
        .iter()
        .enumerate()
        .map(|(j, r)| {
            let dims: Vec<String> = r.iter().map(i32::to_string).collect();
            vec![
                format!("row {}", j + 1),
                format!("-> {}", (j as i32 + 1) * t.n),
                format!("{{{}}}", dims.join(", ")),
            ]
        })
        .collect();
    out.push_str(&table(&body));
    let sum: i32 = t.offsets.iter().sum();
    out.push_str(&format!("separation {} ({} > {sum})\n", t.separated, t.n));
    out
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

pub fn certificate(c: &GluingCertificate) -> String {
    let mut out = format!("glue {} -> {}\n", c.m, c.n);
    let mut body = vec![vec!["degree".to_string(), "before".into(), "after".into()]];
    for ((i, a), (_, b)) in c.homology_before.iter().zip(&c.homology_after) {
        body.push(vec![format!("H_{i}"), a.to_string(), b.to_string()]);
    }
    out.push_str(&table(&body));
    let w = &c.witness;
    out.push_str(&table(&[
        vec![
            "(i) unchanged outside [m, n]".into(),
            mark(c.unchanged_outside).into(),
        ],
        vec![
            format!("(ii) H_k = 0 for {} <= k < {}", c.m, c.n),
            mark(c.cleared).into(),
        ],
        vec![
            format!(
                "(iii) 0 -> {} -> {} -> Z^{} -> 0",
                w.sub, w.middle, w.quotient_rank
            ),
            mark(w.exact()).into(),
        ],
    ]));
    out
}

pub fn row_gluing(g: &RowGluing) -> String {
    let mut out = String::new();
    for c in &g.certificates {
        out.push_str(&certificate(c));
        out.push('\n');
    }
    let c = &g.complex;
    let support: Vec<String> = (c.lo()..=c.hi())
        .filter_map(|i| match c.homology(i) {
            Ok(h) if !h.is_trivial() => Some(format!("H_{i} = {h}")),
            _ => None,
        })
        .collect();
    out.push_str(&format!("final homology: {}\n", support.join(", ")));
    out
}

pub fn browder(r: &BrowderReport) -> String {
    let mut body = vec![vec![
        "j".to_string(),
        "H_j".into(),
        "H^{j+1}(G, H_j)".into(),
        "exp".into(),
    ]];
    for row in &r.rows {
        body.push(vec![
            row.degree.to_string(),
            row.homology.to_string(),
            row.cohomology.to_string(),
            row.exponent.to_string(),
        ]);
    }
    let mut out = table(&body);
    let verdict = if r.divides {
        "DIVIDES"
    } else {
        "DOES NOT DIVIDE"
    };
    out.push_str(&format!(
        "|G| = {}, product {}, verdict {verdict}\n",
        r.group_order, r.product
    ));
    out
}

pub fn pipeline(p: &BrowderPipeline) -> String {
    let mut out = browder(&p.report);
    out.push_str(&format!(
        "glued onto degree {}: {} steps, certificates {}, concentrated {}\n",
        p.n,
        p.gluing.certificates.len(),
        mark(p.gluing.certificates.iter().all(GluingCertificate::holds)),
        mark(p.concentrated)
    ));
    out.push_str(&format!(
        "Ĥ^{}(G, N) = {}  ({})\n",
        p.n + 1,
        p.penultimate_cohomology,
        if p.cross_check {
            "= Z/|G|"
        } else {
            "expected Z/|G|"
        }
    ));
    let v = &p.verdict;
    let sections: Vec<String> = v
        .section_exponents
        .iter()
        .map(ToString::to_string)
        .collect();
    out.push_str(&format!(
        "filtration: exp {} divides {} = {}: {}; sections match: {}\n",
        v.module_exponent,
        sections.join(" * "),
        v.product,
        v.divides,
        mark(p.sections_match)
    ));
    out
}
