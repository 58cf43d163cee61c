//! Plain-text report rendering.

use jpn_core::peirce::ComponentSummary;
use jpn_core::Report;
use serde_json::Value;

pub fn verdict(passed: bool) -> String {
    format!("verdict: {}\n", if passed { "PASS" } else { "FAIL" })
}

pub fn reports(rs: &[Report]) -> String {
    let width = rs.iter().map(|r| r.check.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in rs {
        out.push_str(&format!(
            "{:<width$}  {}  {} instances, {} violations\n",
            r.check,
            if r.passed { "PASS" } else { "FAIL" },
            r.instances_checked,
            r.total_violations
        ));
        for v in &r.violations {
            out.push_str(&format!("    [{}] {}\n", v.labels.join(", "), v.detail));
        }
    }
    out
}

pub fn table(rows: &[[String; 3]]) -> String {
    let wx = rows.iter().map(|r| r[0].len()).max().unwrap_or(0);
    let wy = rows.iter().map(|r| r[1].len()).max().unwrap_or(0);
    rows.iter()
        .map(|[x, y, p]| format!("{x:>wx$} * {y:<wy$} = {p}\n"))
        .collect()
}

pub fn components(title: &str, cs: &[ComponentSummary]) -> String {
    let mut out = format!("{title}:\n");
    for c in cs {
        out.push_str(&format!("  J_{}{}  dim {}  {{{}}}\n", c.i, c.j, c.dim, c.basis.join(", ")));
    }
    out
}

pub fn corrections(cs: &[Value]) -> String {
    if cs.is_empty() {
        return "corrections: none\n".into();
    }
    let mut out = String::from("corrections:\n");
    for c in cs {
        out.push_str(&format!(
            "  {} += {}\n",
            c["label"].as_str().unwrap_or_default(),
            c["value"].as_str().unwrap_or_default()
        ));
    }
    out
}

/// Text form of a structure-constant JSON document.
pub fn structure(j: &Value) -> String {
    let names: Vec<&str> = j["basis"]
        .as_array()
        .map(|b| b.iter().map(|e| e["name"].as_str().unwrap_or("?")).collect())
        .unwrap_or_default();
    let mut out = format!(
        "basis ({}): {}\n",
        names.len(),
        j["basis"]
            .as_array()
            .map(|b| b
                .iter()
                .map(|e| format!("{}:{}", e["name"].as_str().unwrap_or("?"), e["parity"]))
                .collect::<Vec<_>>()
                .join(" "))
            .unwrap_or_default()
    );
    let coef = |c: &Value| {
        let (n, d) = (c["num"].as_str().unwrap_or("0"), c["den"].as_str().unwrap_or("1"));
        if d == "1" {
            n.to_string()
        } else {
            format!("{n}/{d}")
        }
    };
    let terms = |ts: &Value, basis: &[&str]| -> String {
        ts.as_array()
            .map(|ts| {
                ts.iter()
                    .map(|t| format!("{}*{}", coef(&t["coef"]), basis.get(t["k"].as_u64().unwrap_or(0) as usize).unwrap_or(&"?")))
                    .collect::<Vec<_>>()
                    .join(" + ")
            })
            .unwrap_or_default()
    };
    let mut rows = Vec::new();
    if let Some(ps) = j["products"].as_array() {
        for p in ps {
            let (i, k) = (p["i"].as_u64().unwrap_or(0) as usize, p["j"].as_u64().unwrap_or(0) as usize);
            rows.push([names[i].to_string(), names[k].to_string(), terms(&p["terms"], &names)]);
        }
    }
    if let Some(a) = j.get("action").filter(|a| !a.is_null()) {
        let alg: Vec<&str> = a["algebra_basis"]
            .as_array()
            .map(|b| b.iter().map(|e| e["name"].as_str().unwrap_or("?")).collect())
            .unwrap_or_default();
        for e in a["entries"].as_array().into_iter().flatten() {
            let (x, m) = (e["a"].as_u64().unwrap_or(0) as usize, e["m"].as_u64().unwrap_or(0) as usize);
            rows.push([alg[x].to_string(), names[m].to_string(), terms(&e["terms"], &names)]);
        }
    }
    if let Some(r) = j["radical"].as_array() {
        out.push_str(&format!(
            "radical: {}\n",
            r.iter()
                .map(|k| names.get(k.as_u64().unwrap_or(0) as usize).copied().unwrap_or("?"))
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    out.push_str(&table(&rows));
    out
}
