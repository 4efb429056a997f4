//! Embedded fixtures: the 2x2 conditional-entropy table, the late-student
//! example and the binary one-time pad.

use std::fmt::Write as _;

use infolab_core::otp::secrecy_entropy_verdict;
use infolab_core::*;
use serde::Serialize;

use crate::reports::{model_joint, pointwise_rows, BlendView, PointwiseRow, PosteriorView, Report};
use crate::views::{bits, rec, DistView, JointView, ProbView, VerdictView};

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn dist(numers: &[i64], denom: i64) -> Dist {
    Dist::from_ratios(numers, denom).expect("fixture distribution")
}

fn prob(n: i64, d: i64) -> Prob {
    Prob::ratio(n, d).expect("fixture probability")
}

/// `[[0.2, 0.3], [0.1, 0.4]]`, rows `x`, columns `y`.
pub fn table1_joint() -> JointDist {
    validate_joint(&[vec![r(2, 10), r(3, 10)], vec![r(1, 10), r(4, 10)]]).expect("fixture joint")
}

/// Prior probability of the rare event (a student arriving late).
pub fn example1_prior() -> Prob {
    prob(1, 100)
}

/// Posteriors the late-student verdict is evaluated at.
pub fn example1_posteriors() -> Vec<Prob> {
    vec![prob(5, 100), prob(3, 10), prob(1, 2), prob(9, 10), prob(99, 100), prob(995, 1000)]
}

pub fn example2_model() -> CipherModel {
    build_model(dist(&[9, 1], 10), dist(&[1, 1], 2)).expect("fixture model")
}

pub fn biased_key_model() -> CipherModel {
    build_model(dist(&[9, 1], 10), dist(&[8, 2], 10)).expect("fixture model")
}

#[derive(Serialize)]
pub struct UpdateView {
    pub weights_over_x: DistView,
    pub updated_y: DistView,
    pub entropy: f64,
}

#[derive(Serialize)]
pub struct PointwiseIncrease {
    pub row: usize,
    pub pointwise: f64,
    pub marginal_entropy: f64,
    pub excess: f64,
    pub increased: bool,
}

#[derive(Serialize)]
pub struct Table1Section {
    pub joint: JointView,
    pub marginal_x: DistView,
    pub marginal_y: DistView,
    pub joint_entropy: f64,
    pub entropy_x: f64,
    pub entropy_y: f64,
    pub conditional_entropy_avg: f64,
    pub pointwise: Vec<PointwiseRow>,
    pub updates: Vec<UpdateView>,
    pub verdicts: Vec<VerdictView>,
    pub independent: bool,
    pub pointwise_increase: PointwiseIncrease,
}

pub fn table1_section() -> Table1Section {
    let joint = table1_joint();
    let mx = marginal(&joint, Axis::X);
    let my = marginal(&joint, Axis::Y);
    let hy = shannon_entropy(&my);
    let updates = [dist(&[1, 0], 1), mx.clone(), dist(&[0, 1], 1)]
        .iter()
        .map(|q| {
            let updated = mix_update(&joint, q).expect("fixture rows have mass");
            UpdateView { weights_over_x: DistView::from(q), entropy: shannon_entropy(&updated), updated_y: DistView::from(&updated) }
        })
        .collect();
    let pointwise0 = pointwise_conditional_entropy(&joint, 0).expect("row 0 has mass");
    Table1Section {
        joint: JointView::from(&joint),
        marginal_x: DistView::from(&mx),
        marginal_y: DistView::from(&my),
        joint_entropy: joint_entropy(&joint),
        entropy_x: shannon_entropy(&mx),
        entropy_y: hy,
        conditional_entropy_avg: conditional_entropy_avg(&joint),
        pointwise: pointwise_rows(&joint),
        updates,
        verdicts: [check_chain_rule(&joint), check_subadditivity(&joint), check_conditioning_reduces_avg(&joint)]
            .iter()
            .map(VerdictView::from)
            .collect(),
        independent: is_independent(&joint),
        pointwise_increase: PointwiseIncrease {
            row: 0,
            pointwise: pointwise0,
            marginal_entropy: hy,
            excess: pointwise0 - hy,
            increased: pointwise0 - hy > TOLERANCE,
        },
    }
}

#[derive(Serialize)]
pub struct ChangeCase {
    pub posterior: ProbView,
    pub change: EntropyChange,
    pub prior_entropy: f64,
    pub posterior_entropy: f64,
}

#[derive(Serialize)]
pub struct Example1Section {
    pub prior: ProbView,
    pub cases: Vec<ChangeCase>,
}

pub fn example1_section() -> Example1Section {
    let prior = example1_prior();
    let cases = example1_posteriors()
        .iter()
        .map(|q| {
            let v = entropy_change_verdict(&prior, q);
            ChangeCase { posterior: ProbView::from(q), change: v.change, prior_entropy: v.prior_entropy, posterior_entropy: v.posterior_entropy }
        })
        .collect();
    Example1Section { prior: ProbView::from(&prior), cases }
}

#[derive(Serialize)]
pub struct ClaimedPosterior {
    /// Posterior obtained by treating every plaintext as equally likely once
    /// the ciphertext is fixed (one key per plaintext).
    pub distribution: DistView,
    pub matches_exact_bayes: bool,
}

#[derive(Serialize)]
pub struct ContrastModel {
    pub key: DistView,
    pub ciphertext_dist: DistView,
    pub posterior_c0: PosteriorView,
    pub perfect_secrecy: bool,
    pub averaged_conditional: VerdictView,
}

#[derive(Serialize)]
pub struct Example2Section {
    pub prior: DistView,
    pub key: DistView,
    pub ciphertext_plaintext_joint: JointView,
    pub ciphertext_dist: DistView,
    pub posteriors: Vec<PosteriorView>,
    pub perfect_secrecy: bool,
    pub averaged_conditional: VerdictView,
    pub claimed_posterior: ClaimedPosterior,
    pub blends: Vec<BlendView>,
    pub biased_key: ContrastModel,
}

pub fn example2_section() -> Example2Section {
    let model = example2_model();
    let posteriors: Vec<PosteriorView> = (0..model.alphabet_size())
        .map(|c| PosteriorView::build(&model, &posterior_plaintext(&model, c).expect("uniform key makes every c possible")))
        .collect();
    let equal_likelihood = Dist::uniform(model.alphabet_size()).expect("alphabet is nonempty");
    let matches = posterior_plaintext(&model, 0).map(|p| p.posterior == equal_likelihood).unwrap_or(false);
    let blends = (0..=10)
        .map(|k| BlendView::build(model.plaintext_prior(), &equal_likelihood, &prob(k, 10)).expect("same length"))
        .collect();
    let biased = biased_key_model();
    let biased_post = posterior_plaintext(&biased, 0).expect("c = 0 is possible");
    Example2Section {
        prior: DistView::from(model.plaintext_prior()),
        key: DistView::from(model.key_dist()),
        ciphertext_plaintext_joint: model_joint(&model),
        ciphertext_dist: DistView::from(&ciphertext_dist(&model)),
        posteriors,
        perfect_secrecy: perfect_secrecy_check(&model).perfect,
        averaged_conditional: VerdictView::from(&secrecy_entropy_verdict(&model)),
        claimed_posterior: ClaimedPosterior { distribution: DistView::from(&equal_likelihood), matches_exact_bayes: matches },
        blends,
        biased_key: ContrastModel {
            key: DistView::from(biased.key_dist()),
            ciphertext_dist: DistView::from(&ciphertext_dist(&biased)),
            posterior_c0: PosteriorView::build(&biased, &biased_post),
            perfect_secrecy: perfect_secrecy_check(&biased).perfect,
            averaged_conditional: VerdictView::from(&secrecy_entropy_verdict(&biased)),
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Table1,
    Example1,
    Example2,
    All,
}

#[derive(Serialize)]
pub struct ReproduceReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table1: Option<Table1Section>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example1: Option<Example1Section>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub example2: Option<Example2Section>,
}

impl ReproduceReport {
    pub fn build(target: Target) -> Self {
        let want = |t| target == t || target == Target::All;
        ReproduceReport {
            table1: want(Target::Table1).then(table1_section),
            example1: want(Target::Example1).then(example1_section),
            example2: want(Target::Example2).then(example2_section),
        }
    }
}

impl Report for ReproduceReport {
    fn table(&self, out: &mut String) {
        if let Some(t) = &self.table1 {
            let _ = writeln!(out, "== table1: joint distribution of x (rows) and y (columns)");
            let _ = writeln!(out, "joint          {}", t.joint.text());
            let _ = writeln!(out, "marginal x     {}", t.marginal_x.text());
            let _ = writeln!(out, "marginal y     {}", t.marginal_y.text());
            let _ = writeln!(out, "H(x,y)         {} bits", bits(t.joint_entropy));
            let _ = writeln!(out, "H(x)           {} bits", bits(t.entropy_x));
            let _ = writeln!(out, "H(y)           {} bits", bits(t.entropy_y));
            let _ = writeln!(out, "H_x(y) avg     {} bits", bits(t.conditional_entropy_avg));
            let _ = writeln!(out, "pointwise");
            for p in &t.pointwise {
                if let (Some(h), Some(c)) = (p.entropy, &p.conditional) {
                    let _ = writeln!(out, "  x={}  p_i(.) {}  H {} bits", p.row, c.text(), bits(h));
                }
            }
            let _ = writeln!(out, "updated beliefs sum_i q(i) p_i(.)");
            for u in &t.updates {
                let _ = writeln!(out, "  q {}  ->  {}  H {} bits", u.weights_over_x.text(), u.updated_y.text(), bits(u.entropy));
            }
            for v in &t.verdicts {
                let _ = writeln!(out, "{}", v.text());
            }
            let _ = writeln!(out, "independent    {}", t.independent);
            let p = &t.pointwise_increase;
            let _ = writeln!(
                out,
                "pointwise      H(y | x={}) - H(y) = {:+.6} bits ({})",
                p.row,
                p.excess,
                if p.increased { "increase" } else { "no increase" }
            );
        }
        if let Some(e) = &self.example1 {
            let _ = writeln!(out, "== example1: binary entropy change from prior {}", e.prior.text());
            for c in &e.cases {
                let _ = writeln!(
                    out,
                    "  posterior {:<22} {} -> {} bits  {:?}",
                    c.posterior.text(),
                    bits(c.prior_entropy),
                    bits(c.posterior_entropy),
                    c.change
                );
            }
        }
        if let Some(e) = &self.example2 {
            let _ = writeln!(out, "== example2: binary one-time pad");
            let _ = writeln!(out, "prior          {}", e.prior.text());
            let _ = writeln!(out, "key            {}", e.key.text());
            let _ = writeln!(out, "p(c, m)        {}", e.ciphertext_plaintext_joint.text());
            let _ = writeln!(out, "p(c)           {}", e.ciphertext_dist.text());
            for p in &e.posteriors {
                let _ = writeln!(out, "  c={}  p(m|c) {}  delta {:+.6} bits", p.ciphertext, p.posterior.text(), p.delta);
            }
            let _ = writeln!(out, "perfect secrecy {}", e.perfect_secrecy);
            let _ = writeln!(out, "{}", e.averaged_conditional.text());
            let _ = writeln!(
                out,
                "equal-likelihood posterior {} (matches exact Bayes: {})",
                e.claimed_posterior.distribution.text(),
                e.claimed_posterior.matches_exact_bayes
            );
            let _ = writeln!(out, "blend (1-l) prior + l uniform");
            for b in &e.blends {
                let _ = writeln!(out, "  l={:<5} {}  H {} bits  {:?}", b.lambda.exact, b.blended.text(), bits(b.blended_entropy), b.change);
            }
            let b = &e.biased_key;
            let _ = writeln!(out, "biased key     {}", b.key.text());
            let _ = writeln!(out, "  p(c)         {}", b.ciphertext_dist.text());
            let _ = writeln!(out, "  p(m | c=0)   {}  delta {:+.6} bits", b.posterior_c0.posterior.text(), b.posterior_c0.delta);
            let _ = writeln!(out, "  perfect secrecy {}", b.perfect_secrecy);
        }
    }

    fn records(&self, out: &mut Vec<[String; 3]>) {
        if let Some(t) = &self.table1 {
            out.push(rec("table1", "marginal_y", t.marginal_y.exact.join(" ")));
            out.push(rec("table1", "joint_entropy", bits(t.joint_entropy)));
            out.push(rec("table1", "entropy_x", bits(t.entropy_x)));
            out.push(rec("table1", "entropy_y", bits(t.entropy_y)));
            out.push(rec("table1", "conditional_entropy_avg", bits(t.conditional_entropy_avg)));
            for p in &t.pointwise {
                out.push(rec("table1", &format!("pointwise.{}", p.row), p.entropy.map(bits).unwrap_or_default()));
            }
            for v in &t.verdicts {
                v.records("table1", out);
            }
            out.push(rec("table1", "pointwise_excess", bits(t.pointwise_increase.excess)));
        }
        if let Some(e) = &self.example1 {
            for c in &e.cases {
                out.push(rec("example1", &format!("posterior.{}", c.posterior.exact), format!("{:?}", c.change)));
            }
        }
        if let Some(e) = &self.example2 {
            out.push(rec("example2", "ciphertext_dist", e.ciphertext_dist.exact.join(" ")));
            for p in &e.posteriors {
                out.push(rec("example2", &format!("posterior.c{}", p.ciphertext), p.posterior.exact.join(" ")));
            }
            out.push(rec("example2", "perfect_secrecy", e.perfect_secrecy.to_string()));
            for b in &e.blends {
                out.push(rec("example2", &format!("blend_entropy.{}", b.lambda.exact), bits(b.blended_entropy)));
            }
            out.push(rec("example2", "biased_key.perfect_secrecy", e.biased_key.perfect_secrecy.to_string()));
        }
    }
}
