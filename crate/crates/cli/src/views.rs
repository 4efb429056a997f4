//! Serializable views of core values, plus the text helpers shared by the
//! table and CSV renderers.

use infolab_core::{Claim, Dist, JointDist, Prob, Verdict};
use serde::Serialize;

/// Entropies in tables are printed to six places.
pub fn bits(x: f64) -> String {
    format!("{x:.6}")
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbView {
    pub exact: String,
    pub decimal: f64,
}

impl From<&Prob> for ProbView {
    fn from(p: &Prob) -> Self {
        ProbView { exact: p.to_string(), decimal: p.to_f64() }
    }
}

impl ProbView {
    pub fn text(&self) -> String {
        format!("{} ({:.6})", self.exact, self.decimal)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DistView {
    pub exact: Vec<String>,
    pub decimal: Vec<f64>,
}

impl From<&Dist> for DistView {
    fn from(d: &Dist) -> Self {
        DistView { exact: d.weights().iter().map(ToString::to_string).collect(), decimal: d.to_f64_vec() }
    }
}

impl DistView {
    pub fn text(&self) -> String {
        let parts: Vec<String> = self.exact.iter().zip(&self.decimal).map(|(e, d)| format!("{e} ({d:.6})")).collect();
        format!("[{}]", parts.join(", "))
    }
}

/// Same shape as the joint JSON input document, so it can be fed back in.
#[derive(Clone, Debug, Serialize)]
pub struct JointView {
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<Vec<String>>,
}

impl From<&JointDist> for JointView {
    fn from(j: &JointDist) -> Self {
        JointView {
            rows: j.rows(),
            cols: j.cols(),
            cells: (0..j.rows()).map(|i| j.row(i).iter().map(ToString::to_string).collect()).collect(),
        }
    }
}

impl JointView {
    pub fn text(&self) -> String {
        let rows: Vec<String> = self.cells.iter().map(|r| format!("[{}]", r.join(", "))).collect();
        format!("[{}]", rows.join(", "))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictView {
    pub claim: Claim,
    pub statement: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub slack: f64,
    pub equality: bool,
}

impl From<&Verdict> for VerdictView {
    fn from(v: &Verdict) -> Self {
        VerdictView {
            claim: v.claim,
            statement: v.claim.statement(),
            lhs: v.lhs,
            rhs: v.rhs,
            holds: v.holds,
            slack: v.slack,
            equality: v.equality,
        }
    }
}

impl VerdictView {
    pub fn text(&self) -> String {
        let status = match (self.holds, self.equality) {
            (true, true) => "holds (equality)",
            (true, false) => "holds (strict)",
            (false, _) => "VIOLATED",
        };
        format!(
            "{:<26} {:<24} lhs {}  rhs {}  slack {:+.6}  {status}",
            self.claim.as_str(),
            self.statement,
            bits(self.lhs),
            bits(self.rhs),
            self.slack
        )
    }

    pub fn records(&self, section: &str, out: &mut Vec<[String; 3]>) {
        let name = self.claim.as_str();
        out.push(rec(section, &format!("{name}.lhs"), bits(self.lhs)));
        out.push(rec(section, &format!("{name}.rhs"), bits(self.rhs)));
        out.push(rec(section, &format!("{name}.slack"), bits(self.slack)));
        out.push(rec(section, &format!("{name}.holds"), self.holds.to_string()));
        out.push(rec(section, &format!("{name}.equality"), self.equality.to_string()));
    }
}

pub fn rec(section: &str, key: &str, value: impl Into<String>) -> [String; 3] {
    [section.to_string(), key.to_string(), value.into()]
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_csv(records: &[[String; 3]]) -> String {
    let mut out = String::from("section,key,value\n");
    for r in records {
        out.push_str(&r.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    out
}
