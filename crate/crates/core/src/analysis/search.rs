use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::verdicts_from;
use crate::dist::JointDist;
use crate::entropy::{Bits, JointEntropies, TOLERANCE};
use crate::error::Error;
use crate::prob::Rational;

/// Largest `rows * cols` the exhaustive search accepts.
pub const MAX_CELLS: usize = 6;
/// Largest number of grid joints the exhaustive search enumerates.
pub const MAX_JOINTS: u128 = 2_000_000;

type KeyedHit = (Vec<u32>, SearchHit);

/// A joint and row where observing `x = row` leaves `y` more uncertain than
/// the marginal.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchHit {
    pub joint: JointDist,
    pub row: usize,
    pub pointwise: Bits,
    pub marginal_entropy: Bits,
    /// `pointwise - marginal_entropy`, always above [`TOLERANCE`].
    pub excess: Bits,
}

/// Proof-by-enumeration that the averaged inequalities held everywhere.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Certificate {
    pub joints_checked: u64,
    pub averaged_inequality_violations: u64,
    pub chain_rule_violations: u64,
    pub subadditivity_violations: u64,
    pub max_chain_rule_error: Bits,
}

impl Certificate {
    fn merge(mut self, other: Certificate) -> Certificate {
        self.joints_checked += other.joints_checked;
        self.averaged_inequality_violations += other.averaged_inequality_violations;
        self.chain_rule_violations += other.chain_rule_violations;
        self.subadditivity_violations += other.subadditivity_violations;
        self.max_chain_rule_error = self.max_chain_rule_error.max(other.max_chain_rule_error);
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub rows: usize,
    pub cols: usize,
    pub step: Rational,
    pub hits: Vec<SearchHit>,
    pub certificate: Certificate,
}

/// Number of compositions of `total` into `parts` nonnegative parts,
/// `C(total + parts - 1, parts - 1)`.
pub fn composition_count(total: u32, parts: usize) -> u128 {
    if parts == 0 {
        return u128::from(total == 0);
    }
    let n = total as u128 + parts as u128 - 1;
    let k = (parts as u128 - 1).min(total as u128);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Compositions of `total` into `parts` nonnegative parts, in ascending
/// lexicographic order.
pub(crate) struct Compositions {
    current: Option<Vec<u32>>,
}

impl Compositions {
    pub(crate) fn new(total: u32, parts: usize) -> Self {
        let current = (parts > 0).then(|| {
            let mut v = vec![0; parts];
            v[parts - 1] = total;
            v
        });
        Compositions { current }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let last = out.len() - 1;
        let mut suffix = out[last];
        let mut next = None;
        for i in (0..last).rev() {
            if suffix > 0 {
                let mut v = out.clone();
                v[i] += 1;
                for x in &mut v[i + 1..last] {
                    *x = 0;
                }
                v[last] = suffix - 1;
                next = Some(v);
                break;
            }
            suffix += out[i];
        }
        self.current = next;
        Some(out)
    }
}

fn grid_denominator(step: &Rational) -> Result<u32, Error> {
    let invalid = || Error::StepInvalid { step: step.clone() };
    if !step.is_positive() || step > &Rational::one() || !step.numer().is_one() {
        return Err(invalid());
    }
    step.denom().to_u32().ok_or_else(|| Error::TooLarge { reason: format!("1/step = {} exceeds u32", step.denom()) })
}

/// Enumerates every `rows x cols` joint whose cells are multiples of `step`
/// and collects each (joint, row) whose pointwise conditional entropy beats
/// `H(y)`. Every enumerated joint is also run through the averaged
/// inequalities; the certificate counts the failures.
///
/// Output order is lexicographic by cell values, then row, regardless of how
/// the work was split across threads.
pub fn search_pointwise_increase(rows: usize, cols: usize, step: &Rational) -> Result<SearchOutcome, Error> {
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyGrid);
    }
    let denom = grid_denominator(step)?;
    let cells = rows * cols;
    if cells > MAX_CELLS {
        return Err(Error::TooLarge { reason: format!("{rows}x{cols} has {cells} cells, limit is {MAX_CELLS}") });
    }
    let count = composition_count(denom, cells);
    if count > MAX_JOINTS {
        return Err(Error::TooLarge { reason: format!("{count} grid joints, limit is {MAX_JOINTS}") });
    }

    let partitions: Vec<(Vec<KeyedHit>, Certificate)> = (0..=denom)
        .into_par_iter()
        .map(|first| {
            let mut hits = Vec::new();
            let mut cert = Certificate::default();
            let tail: Box<dyn Iterator<Item = Vec<u32>>> = if cells == 1 {
                Box::new((first == denom).then(Vec::new).into_iter())
            } else {
                Box::new(Compositions::new(denom - first, cells - 1))
            };
            for rest in tail {
                let mut counts = Vec::with_capacity(cells);
                counts.push(first);
                counts.extend(rest);
                let joint = JointDist::from_counts(rows, cols, &counts, denom);
                examine(&joint, &counts, &mut hits, &mut cert);
            }
            (hits, cert)
        })
        .collect();

    let mut keyed = Vec::new();
    let mut certificate = Certificate::default();
    for (hits, cert) in partitions {
        keyed.extend(hits);
        certificate = certificate.merge(cert);
    }
    keyed.sort_by(|(a, ha), (b, hb)| a.cmp(b).then(ha.row.cmp(&hb.row)));
    let hits = keyed.into_iter().map(|(_, h)| h).collect();
    Ok(SearchOutcome { rows, cols, step: step.clone(), hits, certificate })
}

fn examine(joint: &JointDist, counts: &[u32], hits: &mut Vec<KeyedHit>, cert: &mut Certificate) {
    cert.joints_checked += 1;
    let h = JointEntropies::of(joint);
    let [chain, subadditivity, averaged] = verdicts_from(&h);
    if !chain.equality {
        cert.chain_rule_violations += 1;
    }
    cert.max_chain_rule_error = cert.max_chain_rule_error.max(chain.slack.abs());
    if !subadditivity.holds {
        cert.subadditivity_violations += 1;
    }
    if !averaged.holds {
        cert.averaged_inequality_violations += 1;
    }

    let hy = h.y;
    for (row, pointwise) in h.pointwise.iter().enumerate() {
        let Some(pointwise) = *pointwise else {
            continue;
        };
        let excess = pointwise - hy;
        if excess > TOLERANCE {
            hits.push((
                counts.to_vec(),
                SearchHit { joint: joint.clone(), row, pointwise, marginal_entropy: hy, excess },
            ));
        }
    }
}
