//! Plain-text rendering of JSON reports. Every value shown comes from the
//! same report that `--format json` prints.

use std::fmt::Write;

use serde_json::Value;

/// Scalars without quotes, arrays as `[a, b]`, `null` as `-`.
fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(cell).collect::<Vec<_>>().join(", ")),
        Value::Object(map) => map.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let _ = writeln!(out, "{}", line(header.iter().map(|h| h.to_string()).collect()));
    for row in rows {
        let _ = writeln!(out, "{}", line(row.clone()));
    }
}

fn fields(out: &mut String, v: &Value, keys: &[&str]) {
    for k in keys {
        let _ = writeln!(out, "{k}: {}", cell(&v[*k]));
    }
}

fn rows<'a>(v: &'a Value, key: &str) -> &'a [Value] {
    v[key].as_array().map(Vec::as_slice).unwrap_or_default()
}

pub fn text(command: &str, v: &Value) -> String {
    let mut out = String::new();
    match command {
        "spectrum" => {
            fields(&mut out, v, &["graph", "order", "size", "char_poly"]);
            let body: Vec<Vec<String>> = rows(v, "roots")
                .iter()
                .map(|r| vec![cell(&r["eigenvalue"]), cell(&r["multiplicity"]), cell(&r["main"])])
                .collect();
            table(&mut out, &["eigenvalue", "multiplicity", "main"], &body);
            if !v["unfactored"].is_null() {
                fields(&mut out, v, &["unfactored"]);
            }
        }
        "starsets" => {
            fields(&mut out, v, &["graph", "mu", "multiplicity", "count"]);
            for x in rows(v, "star_sets") {
                let _ = writeln!(out, "{}", cell(x));
            }
        }
        "verify" => {
            fields(&mut out, v, &["graph", "mu", "X", "valid"]);
            if let Some(checks) = v["checks"].as_object() {
                for (k, c) in checks {
                    let _ = writeln!(out, "  {k}: {}", cell(c));
                }
            }
        }
        "candidates" => {
            fields(&mut out, v, &["H", "mu", "nonmain", "admissible", "count"]);
            let body: Vec<Vec<String>> = rows(v, "candidates")
                .iter()
                .enumerate()
                .map(|(i, c)| vec![i.to_string(), cell(c)])
                .collect();
            table(&mut out, &["#", "neighbourhood"], &body);
            let body: Vec<Vec<String>> = rows(v, "compatible")
                .iter()
                .map(|p| vec![cell(&p["pair"][0]), cell(&p["pair"][1]), cell(&p["class"])])
                .collect();
            table(&mut out, &["i", "j", "class"], &body);
        }
        "extend" => {
            fields(&mut out, v, &["H", "mu", "candidates", "candidate_sets", "cliques", "duplicates", "filters"]);
            let body: Vec<Vec<String>> = rows(v, "maximal")
                .iter()
                .map(|g| {
                    ["graph6", "X", "clique", "regular", "canonical"]
                        .iter()
                        .map(|k| cell(&g[*k]))
                        .collect()
                })
                .collect();
            table(&mut out, &["graph6", "X", "clique", "regular", "canonical"], &body);
        }
        "theorem" => {
            fields(&mut out, v, &["s", "t_max", "holds"]);
            let body: Vec<Vec<String>> = rows(v, "rows")
                .iter()
                .map(|r| {
                    vec![
                        cell(&r["t"]),
                        cell(&r["mu"]),
                        cell(&r["candidates"]),
                        cell(&r["corollary"]),
                        cell(&r["candidates_match_corollary"]),
                        cell(&r["cliques"]),
                        rows(r, "graphs").len().to_string(),
                    ]
                })
                .collect();
            table(&mut out, &["t", "mu", "candidates", "type", "matches", "cliques", "graphs"], &body);
            for r in rows(v, "rows") {
                for g in rows(r, "graphs") {
                    let _ = writeln!(
                        out,
                        "t={}: {} X={} regular={} cocktail={} nonmain={} spectrum={}",
                        cell(&r["t"]),
                        cell(&g["graph6"]),
                        cell(&g["X"]),
                        cell(&g["regular"]),
                        cell(&g["cocktail"]),
                        cell(&g["nonmain"]),
                        rows(g, "spectrum")
                            .iter()
                            .map(|e| format!("{}^{}", cell(&e["eigenvalue"]), cell(&e["multiplicity"])))
                            .collect::<Vec<_>>()
                            .join(" "),
                    );
                    let _ = writeln!(out, "  degrees: {}", cell(&g["degrees"]));
                }
            }
            for f in rows(v, "failures") {
                let _ = writeln!(out, "failure: {}", cell(f));
            }
        }
        "explore" => {
            let keys = ["s", "t", "mu", "a", "b", "corollary_case", "mu_integral", "verified"];
            let body: Vec<Vec<String>> = rows(v, "rows").iter().map(|r| keys.iter().map(|k| cell(&r[*k])).collect()).collect();
            table(&mut out, &keys, &body);
            fields(&mut out, v, &["dropped_non_integral_b", "skipped"]);
        }
        _ => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(v).unwrap_or_default());
        }
    }
    out
}
