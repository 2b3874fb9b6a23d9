use std::collections::BTreeMap;
use std::fmt::Write;

use nctap::rational::{display, format};
use nctap::Rational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

fn exact<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format(r)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CertSummary {
    pub feasible: bool,
    #[serde(serialize_with = "exact")]
    pub harmonic: Option<Rational>,
    #[serde(serialize_with = "exact")]
    pub lower_bound: Option<Rational>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Ratios {
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "exact")]
    pub greedy_over_ip: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "exact")]
    pub ip_over_lp: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "exact")]
    pub greedy_over_lower_bound: Option<Rational>,
}

/// Everything a command computed. Ratio fields appear only when both
/// operands were computed.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub command: String,
    pub instance_digest: String,
    pub kind: String,
    pub nodes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "exact")]
    pub greedy_cost: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub picked: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertSummary>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "exact")]
    pub lp_opt: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lp_rounds: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "exact")]
    pub ip_opt: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ip_solution: Option<Vec<usize>>,
    pub ratios: Ratios,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inflated: Option<Box<Report>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratios_equal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub timings_ms: BTreeMap<String, f64>,
}

fn quotient(a: &Option<Rational>, b: &Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(a), Some(b)) if !b.is_zero() => Some(a / b),
        _ => None,
    }
}

impl Report {
    pub fn fill_ratios(&mut self) {
        let lb = self.certificate.as_ref().and_then(|c| c.lower_bound.clone());
        self.ratios = Ratios {
            greedy_over_ip: quotient(&self.greedy_cost, &self.ip_opt),
            ip_over_lp: quotient(&self.ip_opt, &self.lp_opt),
            greedy_over_lower_bound: quotient(&self.greedy_cost, &lb),
        };
        if let Some(inner) = self.inflated.as_mut() {
            inner.fill_ratios();
        }
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(self).expect("report serializes");
            s.push('\n');
            s
        } else {
            let mut out = String::new();
            self.human(&mut out, "");
            out
        }
    }

    fn human(&self, out: &mut String, pad: &str) {
        let line = |out: &mut String, key: &str, value: String| {
            let _ = writeln!(out, "{pad}{key:<24} {value}");
        };
        let rat = |r: &Option<Rational>| r.as_ref().map(display);
        line(out, "command", self.command.clone());
        line(out, "instance digest", self.instance_digest.clone());
        line(out, "kind", format!("{} on {} nodes", self.kind, self.nodes));
        if let Some(l) = self.lambda {
            line(out, "lambda", l.to_string());
        }
        if let Some(m) = &self.model {
            line(out, "model", m.clone());
        }
        if let Some(v) = rat(&self.greedy_cost) {
            line(out, "greedy cost", v);
        }
        if let Some(p) = &self.picked {
            line(out, "greedy links", format!("{p:?}"));
        }
        if let Some(c) = &self.certificate {
            line(out, "certificate verified", c.feasible.to_string());
            if let Some(h) = rat(&c.harmonic) {
                line(out, "H(lambda-1)", h);
            }
            if let Some(lb) = rat(&c.lower_bound) {
                line(out, "certified lower bound", lb);
            }
        }
        if let Some(v) = rat(&self.lp_opt) {
            line(out, "LP optimum", v);
        }
        if let Some(r) = self.lp_rounds {
            line(out, "separation rounds", r.to_string());
        }
        if let Some(v) = rat(&self.ip_opt) {
            line(out, "IP optimum", v);
        }
        if let Some(s) = &self.ip_solution {
            line(out, "IP solution", format!("{s:?}"));
        }
        for (key, value) in [
            ("greedy / IP", &self.ratios.greedy_over_ip),
            ("IP / LP", &self.ratios.ip_over_lp),
            ("greedy / lower bound", &self.ratios.greedy_over_lower_bound),
        ] {
            if let Some(v) = rat(value) {
                line(out, key, v);
            }
        }
        if let Some(o) = &self.output {
            line(out, "wrote", o.clone());
        }
        for (k, ms) in &self.timings_ms {
            line(out, &format!("time {k}"), format!("{ms:.1} ms"));
        }
        if let Some(inner) = &self.inflated {
            let _ = writeln!(out, "{pad}inflated instance:");
            inner.human(out, &format!("{pad}  "));
        }
        if let Some(eq) = self.ratios_equal {
            line(out, "ratios equal", eq.to_string());
        }
    }
}
