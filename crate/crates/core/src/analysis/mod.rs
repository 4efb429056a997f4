//! Verdicts on the classical entropy inequalities, the binary entropy-change
//! predicate, and the exhaustive simplex search.

mod search;

pub use search::{composition_count, search_pointwise_increase, Certificate, SearchHit, SearchOutcome, MAX_CELLS, MAX_JOINTS};

use serde::Serialize;

use crate::dist::{marginal, Axis, Dist, JointDist};
use crate::entropy::{binary_entropy, conditional_entropy_avg, joint_entropy, shannon_entropy, Bits, JointEntropies, TOLERANCE};
use crate::prob::Prob;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Claim {
    /// `H(x,y) = H(x) + H_x(y)`
    ChainRule,
    /// `H(x,y) <= H(x) + H(y)`
    Subadditivity,
    /// `H_x(y) <= H(y)`
    ConditioningReducesAvg,
}

impl Claim {
    pub fn as_str(self) -> &'static str {
        match self {
            Claim::ChainRule => "chain_rule",
            Claim::Subadditivity => "subadditivity",
            Claim::ConditioningReducesAvg => "conditioning_reduces_avg",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Claim::ChainRule => "H(x,y) = H(x) + H_x(y)",
            Claim::Subadditivity => "H(x,y) <= H(x) + H(y)",
            Claim::ConditioningReducesAvg => "H_x(y) <= H(y)",
        }
    }
}

/// Outcome of checking `lhs <= rhs` at [`TOLERANCE`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub claim: Claim,
    pub lhs: Bits,
    pub rhs: Bits,
    pub holds: bool,
    /// `rhs - lhs`
    pub slack: Bits,
    pub equality: bool,
}

impl Verdict {
    pub fn new(claim: Claim, lhs: Bits, rhs: Bits) -> Self {
        let slack = rhs - lhs;
        Verdict { claim, lhs, rhs, holds: lhs <= rhs + TOLERANCE, slack, equality: slack.abs() < TOLERANCE }
    }
}

pub fn check_chain_rule(joint: &JointDist) -> Verdict {
    let hx = shannon_entropy(&marginal(joint, Axis::X));
    Verdict::new(Claim::ChainRule, joint_entropy(joint), hx + conditional_entropy_avg(joint))
}

pub fn check_subadditivity(joint: &JointDist) -> Verdict {
    let hx = shannon_entropy(&marginal(joint, Axis::X));
    let hy = shannon_entropy(&marginal(joint, Axis::Y));
    Verdict::new(Claim::Subadditivity, joint_entropy(joint), hx + hy)
}

pub fn check_conditioning_reduces_avg(joint: &JointDist) -> Verdict {
    let hy = shannon_entropy(&marginal(joint, Axis::Y));
    Verdict::new(Claim::ConditioningReducesAvg, conditional_entropy_avg(joint), hy)
}

/// The three verdicts above, from precomputed entropies.
pub fn verdicts_from(h: &JointEntropies) -> [Verdict; 3] {
    [
        Verdict::new(Claim::ChainRule, h.joint, h.x + h.conditional_avg),
        Verdict::new(Claim::Subadditivity, h.joint, h.x + h.y),
        Verdict::new(Claim::ConditioningReducesAvg, h.conditional_avg, h.y),
    ]
}

/// Exact test of `p(i,j) = p(i) p(j)` for every cell.
pub fn is_independent(joint: &JointDist) -> bool {
    let px = marginal(joint, Axis::X);
    let py = marginal(joint, Axis::Y);
    joint.cells() == JointDist::product(&px, &py).cells()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EntropyChange {
    Increased,
    Decreased,
    Unchanged,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyChangeVerdict {
    pub change: EntropyChange,
    pub prior_entropy: Bits,
    pub posterior_entropy: Bits,
}

impl EntropyChangeVerdict {
    fn classify(prior_entropy: Bits, posterior_entropy: Bits) -> Self {
        let diff = posterior_entropy - prior_entropy;
        let change = if diff.abs() < TOLERANCE {
            EntropyChange::Unchanged
        } else if diff > 0.0 {
            EntropyChange::Increased
        } else {
            EntropyChange::Decreased
        };
        EntropyChangeVerdict { change, prior_entropy, posterior_entropy }
    }
}

/// Compares the binary entropies of a prior and posterior event probability.
pub fn entropy_change_verdict(prior: &Prob, posterior: &Prob) -> EntropyChangeVerdict {
    EntropyChangeVerdict::classify(binary_entropy(prior), binary_entropy(posterior))
}

/// Entropy comparison for a whole distribution rather than one event.
pub fn dist_entropy_change(prior: &Dist, posterior: &Dist) -> EntropyChangeVerdict {
    EntropyChangeVerdict::classify(shannon_entropy(prior), shannon_entropy(posterior))
}
