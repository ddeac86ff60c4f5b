use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

use crate::args::Format;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// One spec's worth of output. Every field is a string so serialization never emits binary floats.
#[derive(Clone, Debug, Default)]
pub struct JobReport {
    pub request: BTreeMap<String, String>,
    pub result: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub diagnostics: Vec<String>,
    pub timing_ms: Option<u128>,
}

impl JobReport {
    pub fn new(request: BTreeMap<String, String>) -> Self {
        JobReport { request, ..Default::default() }
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.result.insert(key.to_string(), value.to_string());
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| !c.passed)
    }

    fn to_json(&self) -> Value {
        let strings = |m: &BTreeMap<String, String>| -> Value {
            Value::Object(m.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect::<Map<_, _>>())
        };
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "status": status(c.passed), "detail": c.detail}))
            .collect();
        let mut out = Map::new();
        out.insert("request".into(), strings(&self.request));
        out.insert("result".into(), strings(&self.result));
        out.insert("checks".into(), Value::Array(checks));
        out.insert("diagnostics".into(), json!(self.diagnostics));
        if let Some(t) = self.timing_ms {
            out.insert("timing_ms".into(), Value::String(t.to_string()));
        }
        Value::Object(out)
    }

    fn to_text(&self) -> String {
        let mut rows: Vec<(String, String)> = Vec::new();
        rows.extend(self.request.iter().map(|(k, v)| (format!("request.{k}"), v.clone())));
        rows.extend(self.result.iter().map(|(k, v)| (k.clone(), v.clone())));
        for c in &self.checks {
            rows.push((
                format!("check.{}", c.name),
                format!("{} {}", status(c.passed), c.detail).trim_end().to_string(),
            ));
        }
        for d in &self.diagnostics {
            rows.push(("diagnostic".into(), d.clone()));
        }
        if let Some(t) = self.timing_ms {
            rows.push(("timing_ms".into(), t.to_string()));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

/// Renders reports; a single report in JSON is an object, a grid is an array.
pub fn render(reports: &[JobReport], format: Format) -> String {
    match format {
        Format::Json => {
            let v = if reports.len() == 1 {
                reports[0].to_json()
            } else {
                Value::Array(reports.iter().map(JobReport::to_json).collect())
            };
            let mut s = serde_json::to_string_pretty(&v).expect("string-only JSON");
            s.push('\n');
            s
        }
        Format::Text => reports.iter().map(JobReport::to_text).collect::<Vec<_>>().join("\n"),
        Format::Csv => render_csv(reports),
    }
}

fn render_csv(reports: &[JobReport]) -> String {
    let mut req_keys: Vec<&String> = reports.iter().flat_map(|r| r.request.keys()).collect();
    req_keys.sort();
    req_keys.dedup();
    let mut res_keys: Vec<&String> = reports.iter().flat_map(|r| r.result.keys()).collect();
    res_keys.sort();
    res_keys.dedup();
    let with_timing = reports.iter().any(|r| r.timing_ms.is_some());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<String> = req_keys.iter().map(|k| format!("request.{k}")).collect();
    header.extend(res_keys.iter().map(|k| k.to_string()));
    header.push("checks".into());
    if with_timing {
        header.push("timing_ms".into());
    }
    w.write_record(&header).expect("in-memory CSV");
    for r in reports {
        let mut row: Vec<String> = req_keys.iter().map(|k| r.request.get(*k).cloned().unwrap_or_default()).collect();
        row.extend(res_keys.iter().map(|k| r.result.get(*k).cloned().unwrap_or_default()));
        row.push(r.checks.iter().map(|c| format!("{}={}", c.name, status(c.passed))).collect::<Vec<_>>().join(";"));
        if with_timing {
            row.push(r.timing_ms.map(|t| t.to_string()).unwrap_or_default());
        }
        w.write_record(&row).expect("in-memory CSV");
    }
    String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("UTF-8 CSV")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> JobReport {
        let mut req = BTreeMap::new();
        req.insert("n".to_string(), "2".to_string());
        let mut r = JobReport::new(req);
        r.set("value", "1/12");
        r.set("pi_exponent", 0);
        r.check("degree", true, "");
        r
    }

    #[test]
    fn json_is_string_valued_and_sorted() {
        let s = render(&[sample()], Format::Json);
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["result"]["value"], "1/12");
        assert_eq!(v["result"]["pi_exponent"], "0");
        assert!(s.find("\"checks\"").unwrap() < s.find("\"request\"").unwrap());
        assert!(v.get("timing_ms").is_none());
    }

    #[test]
    fn csv_has_one_row_per_report() {
        let s = render(&[sample(), sample()], Format::Csv);
        assert_eq!(s.lines().count(), 3);
        assert!(s.starts_with("request.n,pi_exponent,value,checks"));
    }

    #[test]
    fn text_aligns_keys() {
        let s = render(&[sample()], Format::Text);
        assert!(s.contains("request.n     2\n"));
        assert!(s.contains("check.degree  pass\n"));
    }
}
