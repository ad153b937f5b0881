//! Plain-text rendering of query results.
//!
//! Text is produced from the JSON result alone, so a cached answer prints
//! exactly like a freshly computed one.

use serde_json::Value;

fn s(v: &Value) -> String {
    match v {
        Value::String(x) => x.clone(),
        Value::Null => "null".to_string(),
        other => other.to_string(),
    }
}

fn tuple(v: &Value) -> String {
    let parts: Vec<String> = v.as_array().into_iter().flatten().map(s).collect();
    format!("({})", parts.join(","))
}

pub fn text(name: &str, v: &Value) -> String {
    match name {
        "parse" => match v["kind"].as_str() {
            Some("rep") => format!(
                "{}\nlanglands: {}\nrank: {}\nlevel: {}\ngeneric: {}",
                s(&v["value"]),
                s(&v["langlands"]),
                v["rank"],
                v["level"],
                v["generic"]
            ),
            _ => s(&v["value"]),
        },
        "derive" | "integrate" | "involute" | "removal" => s(&v["result"]),
        "hd" => s(&v["hd"]),
        "eta" => tuple(&v["eta"]),
        "mx" => s(&v["mx"]),
        "commute" => {
            let mut out = vec![format!("verdict: {}", v["verdict"])];
            for e in v["trace"].as_array().into_iter().flatten() {
                out.push(format!(
                    "  ({}, {}) {} vs {}: {} -> {}{}",
                    e["i"],
                    e["j"],
                    s(&e["d"]),
                    s(&e["dp"]),
                    tuple(&e["eta_before"]),
                    tuple(&e["eta_after"]),
                    if e["ok"] == Value::Bool(true) { "" } else { "  FAIL" }
                ));
            }
            out.join("\n")
        }
        "minimal" => format!("minimal: {}\nminimized: {}", v["minimal"], s(&v["minimized"])),
        "relevant" | "branch" => {
            if v["relevant"] == Value::Bool(true) {
                format!(
                    "relevant: true\ni*: {}\nm: {}\nn: {}\ntarget: {}",
                    v["i_star"],
                    s(&v["m"]),
                    s(&v["n"]),
                    s(&v["target"])
                )
            } else {
                "relevant: false".to_string()
            }
        }
        "layer" => s(&v["i_star"]),
        "pieri" => {
            let mut out = Vec::new();
            for row in v["rows"].as_array().into_iter().flatten() {
                let q: Vec<String> = row["quotients"]
                    .as_array()
                    .into_iter()
                    .flatten()
                    .map(|q| format!("{} via {}", s(&q["rep"]), s(&q["witness"])))
                    .collect();
                out.push(format!("{}: {}", row["i"], q.join("; ")));
            }
            out.join("\n")
        }
        "selfcheck" => {
            let mut out = Vec::new();
            for c in v["checks"].as_array().into_iter().flatten() {
                let mark = if c["failures"] == 0 { "ok" } else { "FAIL" };
                out.push(format!("{mark:4} {} ({} cases, {} failures)", s(&c["name"]), c["cases"], c["failures"]));
                for e in c["examples"].as_array().into_iter().flatten() {
                    out.push(format!("     {}", s(e)));
                }
            }
            let verdict = if v["passed"] == Value::Bool(true) { "passed" } else { "FAILED" };
            out.push(format!("self-check {verdict} (seed {}, at most {} points)", v["seed"], v["max_points"]));
            out.join("\n")
        }
        _ => v.to_string(),
    }
}
