//! Entropy functionals in bits.
//!
//! Every sum goes through [`sum_terms`]: zero-probability terms are skipped
//! outright (`0 log 0 = 0`), the remaining terms are sorted and added with
//! Neumaier compensation. Sorting makes results independent of input order
//! down to the last bit.

use num_traits::ToPrimitive;

use crate::dist::{conditional_slice, marginal, mix_update, Axis, Dist, JointDist};
use crate::error::Error;
use crate::prob::{Prob, Rational};

/// Entropy in bits (log base 2).
pub type Bits = f64;

/// Tolerance for floating-point entropy identities and verdicts.
pub const TOLERANCE: Bits = 1e-9;

fn log2_rational(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN).log2()
}

/// `-p log2 p`, or `None` for `p = 0`.
fn surprisal_term(p: &Prob) -> Option<f64> {
    (!p.is_zero()).then(|| -(p.to_f64() * log2_rational(p.value())))
}

pub(crate) fn sum_terms(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(f64::total_cmp);
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    // -0.0 only arises from an all-point-mass input
    (sum + comp) + 0.0
}

/// `-Σ_k d[k] log2 d[k]`.
pub fn shannon_entropy(d: &Dist) -> Bits {
    sum_terms(d.weights().iter().filter_map(surprisal_term).collect())
}

/// `H2(p) = -p log2 p - (1-p) log2 (1-p)`.
pub fn binary_entropy(p: &Prob) -> Bits {
    sum_terms([p.clone(), p.complement()].iter().filter_map(surprisal_term).collect())
}

/// `H(x, y) = -Σ_{i,j} p(i,j) log2 p(i,j)`.
pub fn joint_entropy(joint: &JointDist) -> Bits {
    sum_terms(joint.cells().iter().filter_map(surprisal_term).collect())
}

/// The averaged conditional entropy `H_x(y) = -Σ_{i,j} p(i,j) log2 p_i(j)`.
///
/// Evaluated cell by cell from the exact conditional `p_i(j)`, not via the
/// chain rule, so the chain rule stays an independent check.
pub fn conditional_entropy_avg(joint: &JointDist) -> Bits {
    let mut terms = Vec::with_capacity(joint.cells().len());
    for i in 0..joint.rows() {
        let mass = joint.row_mass(i);
        for p in joint.row(i).iter().filter(|p| !p.is_zero()) {
            let cond = p.value() / &mass;
            terms.push(-(p.to_f64() * log2_rational(&cond)));
        }
    }
    sum_terms(terms)
}

/// Entropy of `y` given the single observation `x = i`.
pub fn pointwise_conditional_entropy(joint: &JointDist, i: usize) -> Result<Bits, Error> {
    Ok(shannon_entropy(&conditional_slice(joint, i)?))
}

/// Entropy of the updated belief `Σ_i q[i] p_i(·)`.
pub fn updated_entropy(joint: &JointDist, q: &Dist) -> Result<Bits, Error> {
    Ok(shannon_entropy(&mix_update(joint, q)?))
}

/// `H(x)` or `H(y)` of a joint.
pub fn marginal_entropy(joint: &JointDist, axis: Axis) -> Bits {
    shannon_entropy(&marginal(joint, axis))
}

/// Every entropy functional of one joint, computed in a single pass.
#[derive(Clone, Debug, PartialEq)]
pub struct JointEntropies {
    pub joint: Bits,
    pub x: Bits,
    pub y: Bits,
    pub conditional_avg: Bits,
    /// `H(y | x = i)`, `None` for rows of zero mass.
    pub pointwise: Vec<Option<Bits>>,
}

impl JointEntropies {
    pub fn of(joint: &JointDist) -> Self {
        let pointwise = (0..joint.rows()).map(|i| pointwise_conditional_entropy(joint, i).ok()).collect();
        JointEntropies {
            joint: joint_entropy(joint),
            x: marginal_entropy(joint, Axis::X),
            y: marginal_entropy(joint, Axis::Y),
            conditional_avg: conditional_entropy_avg(joint),
            pointwise,
        }
    }
}
