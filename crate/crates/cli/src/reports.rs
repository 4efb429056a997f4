//! One report type per command. Each serializes to JSON and knows how to
//! print itself as a table or as `section,key,value` CSV records.

use std::fmt::Write as _;

use infolab_core::analysis::{composition_count, dist_entropy_change};
use infolab_core::io::DistInput;
use infolab_core::otp::{ciphertext_plaintext_joint, secrecy_entropy_verdict};
use infolab_core::sample::SimplexSampler;
use infolab_core::*;
use serde::Serialize;

use crate::views::{bits, rec, DistView, JointView, ProbView, VerdictView};

pub trait Report: Serialize {
    fn table(&self, out: &mut String);
    fn records(&self, out: &mut Vec<[String; 3]>);
}

// ---------------------------------------------------------------- entropy

#[derive(Serialize)]
pub struct PointwiseRow {
    pub row: usize,
    pub mass: ProbView,
    pub conditional: Option<DistView>,
    pub entropy: Option<f64>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EntropyReport {
    Dist {
        weights: DistView,
        outcomes: usize,
        entropy: f64,
        max_entropy: f64,
    },
    Joint {
        joint: JointView,
        marginal_x: DistView,
        marginal_y: DistView,
        joint_entropy: f64,
        entropy_x: f64,
        entropy_y: f64,
        conditional_entropy_avg: f64,
        pointwise: Vec<PointwiseRow>,
    },
}

pub fn pointwise_rows(joint: &JointDist) -> Vec<PointwiseRow> {
    (0..joint.rows())
        .map(|i| {
            let mass = Prob::new(joint.row_mass(i)).expect("row mass is a probability");
            let slice = conditional_slice(joint, i).ok();
            PointwiseRow {
                row: i,
                mass: ProbView::from(&mass),
                entropy: slice.as_ref().map(shannon_entropy),
                conditional: slice.as_ref().map(DistView::from),
            }
        })
        .collect()
}

impl EntropyReport {
    pub fn build(input: &DistInput) -> Self {
        match input {
            DistInput::Dist(d) => EntropyReport::Dist {
                weights: DistView::from(d),
                outcomes: d.len(),
                entropy: shannon_entropy(d),
                max_entropy: (d.len() as f64).log2(),
            },
            DistInput::Joint(j) => {
                let mx = marginal(j, Axis::X);
                let my = marginal(j, Axis::Y);
                EntropyReport::Joint {
                    joint: JointView::from(j),
                    marginal_x: DistView::from(&mx),
                    marginal_y: DistView::from(&my),
                    joint_entropy: joint_entropy(j),
                    entropy_x: shannon_entropy(&mx),
                    entropy_y: shannon_entropy(&my),
                    conditional_entropy_avg: conditional_entropy_avg(j),
                    pointwise: pointwise_rows(j),
                }
            }
        }
    }
}

impl Report for EntropyReport {
    fn table(&self, out: &mut String) {
        match self {
            EntropyReport::Dist { weights, outcomes, entropy, max_entropy } => {
                let _ = writeln!(out, "distribution   {}", weights.text());
                let _ = writeln!(out, "outcomes       {outcomes}");
                let _ = writeln!(out, "H              {} bits", bits(*entropy));
                let _ = writeln!(out, "log2(k)        {} bits", bits(*max_entropy));
            }
            EntropyReport::Joint {
                joint,
                marginal_x,
                marginal_y,
                joint_entropy,
                entropy_x,
                entropy_y,
                conditional_entropy_avg,
                pointwise,
            } => {
                let _ = writeln!(out, "joint          {}", joint.text());
                let _ = writeln!(out, "marginal x     {}", marginal_x.text());
                let _ = writeln!(out, "marginal y     {}", marginal_y.text());
                let _ = writeln!(out, "H(x,y)         {} bits", bits(*joint_entropy));
                let _ = writeln!(out, "H(x)           {} bits", bits(*entropy_x));
                let _ = writeln!(out, "H(y)           {} bits", bits(*entropy_y));
                let _ = writeln!(out, "H_x(y) avg     {} bits", bits(*conditional_entropy_avg));
                write_pointwise_table(out, pointwise);
            }
        }
    }

    fn records(&self, out: &mut Vec<[String; 3]>) {
        match self {
            EntropyReport::Dist { weights, outcomes, entropy, max_entropy } => {
                out.push(rec("dist", "weights", weights.exact.join(" ")));
                out.push(rec("dist", "outcomes", outcomes.to_string()));
                out.push(rec("dist", "entropy", bits(*entropy)));
                out.push(rec("dist", "max_entropy", bits(*max_entropy)));
            }
            EntropyReport::Joint { joint, joint_entropy, entropy_x, entropy_y, conditional_entropy_avg, pointwise, .. } => {
                out.push(rec("joint", "cells", joint.text()));
                out.push(rec("joint", "joint_entropy", bits(*joint_entropy)));
                out.push(rec("joint", "entropy_x", bits(*entropy_x)));
                out.push(rec("joint", "entropy_y", bits(*entropy_y)));
                out.push(rec("joint", "conditional_entropy_avg", bits(*conditional_entropy_avg)));
                pointwise_records(out, "joint", pointwise);
            }
        }
    }
}

fn write_pointwise_table(out: &mut String, rows: &[PointwiseRow]) {
    let _ = writeln!(out, "row  P(x=i)               H(y | x=i)  p_i(.)");
    for r in rows {
        let (h, cond) = match (&r.entropy, &r.conditional) {
            (Some(h), Some(c)) => (bits(*h), c.text()),
            _ => ("undefined".to_string(), "zero mass".to_string()),
        };
        let _ = writeln!(out, "{:<4} {:<20} {:<11} {}", r.row, r.mass.text(), h, cond);
    }
}

fn pointwise_records(out: &mut Vec<[String; 3]>, section: &str, rows: &[PointwiseRow]) {
    for r in rows {
        let value = r.entropy.map(bits).unwrap_or_else(|| "undefined".to_string());
        out.push(rec(section, &format!("pointwise.{}", r.row), value));
    }
}

// ------------------------------------------------------------------ check

#[derive(Serialize)]
pub struct JointCheck {
    pub joint: JointView,
    pub independent: bool,
    pub verdicts: Vec<VerdictView>,
    pub pointwise: Vec<PointwiseRow>,
    pub entropy_y: f64,
}

#[derive(Serialize, Default)]
pub struct SweepSummary {
    pub samples: usize,
    pub max_rows: usize,
    pub max_cols: usize,
    pub chain_rule_violations: usize,
    pub subadditivity_violations: usize,
    pub averaged_inequality_violations: usize,
    pub max_chain_rule_error: f64,
    pub independent_joints: usize,
    pub subadditivity_equalities: usize,
    pub pointwise_increases: usize,
}

pub const SWEEP_MAX_DIM: usize = 5;

/// Seeded random sweep over joints up to 5x5.
pub fn sweep(seed: u64, samples: usize) -> SweepSummary {
    let mut sampler = SimplexSampler::new(seed);
    let mut s = SweepSummary { samples, max_rows: SWEEP_MAX_DIM, max_cols: SWEEP_MAX_DIM, ..Default::default() };
    for _ in 0..samples {
        let joint = sampler.joint_up_to(SWEEP_MAX_DIM, SWEEP_MAX_DIM);
        let chain = check_chain_rule(&joint);
        if !chain.equality {
            s.chain_rule_violations += 1;
        }
        s.max_chain_rule_error = s.max_chain_rule_error.max(chain.slack.abs());
        let sub = check_subadditivity(&joint);
        if !sub.holds {
            s.subadditivity_violations += 1;
        }
        if sub.equality {
            s.subadditivity_equalities += 1;
        }
        if !check_conditioning_reduces_avg(&joint).holds {
            s.averaged_inequality_violations += 1;
        }
        if is_independent(&joint) {
            s.independent_joints += 1;
        }
        let hy = shannon_entropy(&marginal(&joint, Axis::Y));
        if (0..joint.rows()).any(|i| pointwise_conditional_entropy(&joint, i).is_ok_and(|h| h - hy > TOLERANCE)) {
            s.pointwise_increases += 1;
        }
    }
    s
}

#[derive(Serialize)]
pub struct CheckReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub joint: Option<JointCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSummary>,
}

pub fn joint_check(joint: &JointDist) -> JointCheck {
    JointCheck {
        joint: JointView::from(joint),
        independent: is_independent(joint),
        verdicts: [check_chain_rule(joint), check_subadditivity(joint), check_conditioning_reduces_avg(joint)]
            .iter()
            .map(VerdictView::from)
            .collect(),
        pointwise: pointwise_rows(joint),
        entropy_y: shannon_entropy(&marginal(joint, Axis::Y)),
    }
}

impl Report for CheckReport {
    fn table(&self, out: &mut String) {
        if let Some(j) = &self.joint {
            let _ = writeln!(out, "joint          {}", j.joint.text());
            let _ = writeln!(out, "independent    {}", j.independent);
            for v in &j.verdicts {
                let _ = writeln!(out, "{}", v.text());
            }
            let _ = writeln!(out, "H(y)           {} bits", bits(j.entropy_y));
            write_pointwise_table(out, &j.pointwise);
        }
        if let Some(s) = &self.sweep {
            let _ = writeln!(out, "random sweep   {} joints, shapes up to {}x{}", s.samples, s.max_rows, s.max_cols);
            let _ = writeln!(out, "  chain rule violations          {}", s.chain_rule_violations);
            let _ = writeln!(out, "  subadditivity violations       {}", s.subadditivity_violations);
            let _ = writeln!(out, "  averaged inequality violations {}", s.averaged_inequality_violations);
            let _ = writeln!(out, "  max chain rule error           {:.3e} bits", s.max_chain_rule_error);
            let _ = writeln!(out, "  joints with pointwise increase {}", s.pointwise_increases);
        }
    }

    fn records(&self, out: &mut Vec<[String; 3]>) {
        if let Some(j) = &self.joint {
            out.push(rec("joint", "cells", j.joint.text()));
            out.push(rec("joint", "independent", j.independent.to_string()));
            for v in &j.verdicts {
                v.records("joint", out);
            }
            pointwise_records(out, "joint", &j.pointwise);
        }
        if let Some(s) = &self.sweep {
            out.push(rec("sweep", "samples", s.samples.to_string()));
            out.push(rec("sweep", "chain_rule_violations", s.chain_rule_violations.to_string()));
            out.push(rec("sweep", "subadditivity_violations", s.subadditivity_violations.to_string()));
            out.push(rec("sweep", "averaged_inequality_violations", s.averaged_inequality_violations.to_string()));
            out.push(rec("sweep", "max_chain_rule_error", format!("{:e}", s.max_chain_rule_error)));
            out.push(rec("sweep", "pointwise_increases", s.pointwise_increases.to_string()));
        }
    }
}

// ----------------------------------------------------------------- search

#[derive(Serialize)]
pub struct HitView {
    pub joint: JointView,
    pub row: usize,
    pub pointwise: f64,
    pub marginal_entropy: f64,
    pub excess: f64,
}

#[derive(Serialize)]
pub struct SearchReport {
    pub rows: usize,
    pub cols: usize,
    pub step: String,
    pub grid_points: String,
    pub certificate: Certificate,
    pub hit_count: usize,
    pub hits: Vec<HitView>,
}

impl SearchReport {
    pub fn build(outcome: &SearchOutcome) -> Self {
        let denom: u32 = outcome.step.denom().try_into().unwrap_or(u32::MAX);
        SearchReport {
            rows: outcome.rows,
            cols: outcome.cols,
            step: outcome.step.to_string(),
            grid_points: composition_count(denom, outcome.rows * outcome.cols).to_string(),
            certificate: outcome.certificate.clone(),
            hit_count: outcome.hits.len(),
            hits: outcome
                .hits
                .iter()
                .map(|h| HitView {
                    joint: JointView::from(&h.joint),
                    row: h.row,
                    pointwise: h.pointwise,
                    marginal_entropy: h.marginal_entropy,
                    excess: h.excess,
                })
                .collect(),
        }
    }
}

impl Report for SearchReport {
    fn table(&self, out: &mut String) {
        let c = &self.certificate;
        let _ = writeln!(out, "grid           {}x{} joints with cells in multiples of {}", self.rows, self.cols, self.step);
        let _ = writeln!(out, "enumerated     {} joints", c.joints_checked);
        let _ = writeln!(out, "certificate    {} averaged-inequality violations", c.averaged_inequality_violations);
        let _ = writeln!(out, "               {} chain-rule violations (max error {:.3e} bits)", c.chain_rule_violations, c.max_chain_rule_error);
        let _ = writeln!(out, "               {} subadditivity violations", c.subadditivity_violations);
        let _ = writeln!(out, "hits           {} (joint, row) pairs with H(y | x=i) > H(y)", self.hit_count);
        if !self.hits.is_empty() {
            let _ = writeln!(out, "{:<44} {:<4} {:<10} {:<10} {:<10}", "joint", "row", "H(y|x=i)", "H(y)", "excess");
            for h in &self.hits {
                let _ = writeln!(
                    out,
                    "{:<44} {:<4} {:<10} {:<10} {:<10}",
                    h.joint.text(),
                    h.row,
                    bits(h.pointwise),
                    bits(h.marginal_entropy),
                    bits(h.excess)
                );
            }
        }
    }

    fn records(&self, out: &mut Vec<[String; 3]>) {
        let c = &self.certificate;
        out.push(rec("certificate", "joints_checked", c.joints_checked.to_string()));
        out.push(rec("certificate", "averaged_inequality_violations", c.averaged_inequality_violations.to_string()));
        out.push(rec("certificate", "chain_rule_violations", c.chain_rule_violations.to_string()));
        out.push(rec("certificate", "subadditivity_violations", c.subadditivity_violations.to_string()));
        out.push(rec("certificate", "hit_count", self.hit_count.to_string()));
        for (k, h) in self.hits.iter().enumerate() {
            let section = format!("hit.{k}");
            out.push(rec(&section, "joint", h.joint.text()));
            out.push(rec(&section, "row", h.row.to_string()));
            out.push(rec(&section, "pointwise", bits(h.pointwise)));
            out.push(rec(&section, "marginal_entropy", bits(h.marginal_entropy)));
            out.push(rec(&section, "excess", bits(h.excess)));
        }
    }
}

// -------------------------------------------------------------------- otp

#[derive(Serialize)]
pub struct PosteriorView {
    pub ciphertext: usize,
    pub posterior: DistView,
    pub prior_entropy: f64,
    pub posterior_entropy: f64,
    pub delta: f64,
    pub equals_prior: bool,
}

impl PosteriorView {
    pub fn build(model: &CipherModel, report: &PosteriorReport) -> Self {
        PosteriorView {
            ciphertext: report.ciphertext,
            posterior: DistView::from(&report.posterior),
            prior_entropy: report.prior_entropy,
            posterior_entropy: report.posterior_entropy,
            delta: report.delta,
            equals_prior: &report.posterior == model.plaintext_prior(),
        }
    }
}

#[derive(Serialize)]
pub struct BlendView {
    pub lambda: ProbView,
    pub toward: DistView,
    pub blended: DistView,
    pub prior_entropy: f64,
    pub blended_entropy: f64,
    pub change: EntropyChange,
}

impl BlendView {
    pub fn build(prior: &Dist, toward: &Dist, lambda: &Prob) -> Result<Self, Error> {
        let blended = blend_beliefs(prior, toward, lambda)?;
        let verdict = dist_entropy_change(prior, &blended);
        Ok(BlendView {
            lambda: ProbView::from(lambda),
            toward: DistView::from(toward),
            blended: DistView::from(&blended),
            prior_entropy: verdict.prior_entropy,
            blended_entropy: verdict.posterior_entropy,
            change: verdict.change,
        })
    }
}

#[derive(Serialize)]
pub struct OtpReport {
    pub alphabet_size: usize,
    pub prior: DistView,
    pub key: DistView,
    pub ciphertext_dist: DistView,
    pub observed: PosteriorView,
    pub perfect_secrecy: bool,
    pub averaged_conditional: VerdictView,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blend: Option<BlendView>,
}

impl OtpReport {
    /// `blend` mixes the prior toward the uniform plaintext belief.
    pub fn build(model: &CipherModel, ciphertext: usize, blend: Option<&Prob>) -> Result<Self, Error> {
        let observed = posterior_plaintext(model, ciphertext)?;
        let blend = match blend {
            Some(lambda) => {
                let uniform = Dist::uniform(model.alphabet_size())?;
                Some(BlendView::build(model.plaintext_prior(), &uniform, lambda)?)
            }
            None => None,
        };
        Ok(OtpReport {
            alphabet_size: model.alphabet_size(),
            prior: DistView::from(model.plaintext_prior()),
            key: DistView::from(model.key_dist()),
            ciphertext_dist: DistView::from(&ciphertext_dist(model)),
            observed: PosteriorView::build(model, &observed),
            perfect_secrecy: perfect_secrecy_check(model).perfect,
            averaged_conditional: VerdictView::from(&secrecy_entropy_verdict(model)),
            blend,
        })
    }
}

impl Report for OtpReport {
    fn table(&self, out: &mut String) {
        let _ = writeln!(out, "alphabet       Z_{} (c = m + k mod {})", self.alphabet_size, self.alphabet_size);
        let _ = writeln!(out, "prior p(m)     {}", self.prior.text());
        let _ = writeln!(out, "key p(k)       {}", self.key.text());
        let _ = writeln!(out, "p(c)           {}", self.ciphertext_dist.text());
        let o = &self.observed;
        let _ = writeln!(out, "observed c     {}", o.ciphertext);
        let _ = writeln!(out, "p(m | c)       {}", o.posterior.text());
        let _ = writeln!(
            out,
            "H(m) -> H(m|c) {} -> {} bits (delta {:+.6})",
            bits(o.prior_entropy),
            bits(o.posterior_entropy),
            o.delta
        );
        let _ = writeln!(out, "perfect secrecy {}", self.perfect_secrecy);
        let _ = writeln!(out, "averaged       H(m | c) {} <= H(m) {}", bits(self.averaged_conditional.lhs), bits(self.averaged_conditional.rhs));
        if let Some(b) = &self.blend {
            let _ = writeln!(out, "blend lambda   {} toward {}", b.lambda.text(), b.toward.text());
            let _ = writeln!(out, "blended        {}", b.blended.text());
            let _ = writeln!(out, "entropy        {} -> {} bits ({:?})", bits(b.prior_entropy), bits(b.blended_entropy), b.change);
        }
    }

    fn records(&self, out: &mut Vec<[String; 3]>) {
        out.push(rec("model", "prior", self.prior.exact.join(" ")));
        out.push(rec("model", "key", self.key.exact.join(" ")));
        out.push(rec("model", "ciphertext_dist", self.ciphertext_dist.exact.join(" ")));
        out.push(rec("posterior", "ciphertext", self.observed.ciphertext.to_string()));
        out.push(rec("posterior", "posterior", self.observed.posterior.exact.join(" ")));
        out.push(rec("posterior", "prior_entropy", bits(self.observed.prior_entropy)));
        out.push(rec("posterior", "posterior_entropy", bits(self.observed.posterior_entropy)));
        out.push(rec("posterior", "delta", bits(self.observed.delta)));
        out.push(rec("secrecy", "perfect", self.perfect_secrecy.to_string()));
        self.averaged_conditional.records("secrecy", out);
        if let Some(b) = &self.blend {
            out.push(rec("blend", "lambda", b.lambda.exact.clone()));
            out.push(rec("blend", "blended", b.blended.exact.join(" ")));
            out.push(rec("blend", "blended_entropy", bits(b.blended_entropy)));
            out.push(rec("blend", "change", format!("{:?}", b.change)));
        }
    }
}

/// The joint of ciphertext and plaintext, exposed for reports that show it.
pub fn model_joint(model: &CipherModel) -> JointView {
    JointView::from(&ciphertext_plaintext_joint(model))
}
