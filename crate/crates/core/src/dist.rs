//! Finite distributions and two-variable joint distributions over exact
//! rationals.
//!
//! Every constructor checks that the mass is exactly one, so downstream code
//! never needs a tolerance for normalization.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Error;
use crate::prob::{Prob, Rational};

/// A distribution over `0..len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Dist {
    weights: Vec<Prob>,
}

impl Dist {
    pub fn new(weights: Vec<Prob>) -> Result<Self, Error> {
        if weights.is_empty() {
            return Err(Error::EmptyGrid);
        }
        let sum: Rational = weights.iter().map(Prob::value).sum();
        check_unit_mass(sum)?;
        Ok(Dist { weights })
    }

    /// Validates raw rationals (possibly negative) as a distribution.
    pub fn from_rationals(values: Vec<Rational>) -> Result<Self, Error> {
        if values.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if let Some((col, value)) = values.iter().enumerate().find(|(_, v)| v.is_negative()) {
            return Err(Error::NegativeEntry { row: 0, col, value: value.clone() });
        }
        let sum: Rational = values.iter().sum();
        check_unit_mass(sum)?;
        Ok(Dist { weights: values.into_iter().map(Prob::from_unchecked).collect() })
    }

    /// Convenience for tests and fixtures: `numers[k] / denom`.
    pub fn from_ratios(numers: &[i64], denom: i64) -> Result<Self, Error> {
        Dist::from_rationals(numers.iter().map(|&n| Rational::new(n.into(), denom.into())).collect())
    }

    pub fn uniform(k: usize) -> Result<Self, Error> {
        if k == 0 {
            return Err(Error::EmptyGrid);
        }
        let w = Prob::from_unchecked(Rational::new(1.into(), k.into()));
        Ok(Dist { weights: vec![w; k] })
    }

    pub fn point_mass(k: usize, at: usize) -> Result<Self, Error> {
        if at >= k {
            return Err(Error::IndexOutOfRange { index: at, len: k });
        }
        let mut weights = vec![Prob::zero(); k];
        weights[at] = Prob::one();
        Ok(Dist { weights })
    }

    pub fn weights(&self) -> &[Prob] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Prob> {
        self.weights.get(i)
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.weights.iter().map(Prob::to_f64).collect()
    }

    /// Appends `extra` zero-probability outcomes.
    pub fn padded(&self, extra: usize) -> Dist {
        let mut weights = self.weights.clone();
        weights.extend(std::iter::repeat_n(Prob::zero(), extra));
        Dist { weights }
    }

    pub(crate) fn from_weights_unchecked(weights: Vec<Prob>) -> Dist {
        debug_assert!(weights.iter().map(Prob::value).sum::<Rational>().is_one());
        Dist { weights }
    }
}

fn check_unit_mass(sum: Rational) -> Result<(), Error> {
    if sum.is_one() {
        Ok(())
    } else {
        let excess = &sum - Rational::one();
        Err(Error::MassMismatch { sum, excess })
    }
}

/// Which variable a marginal is taken over: rows are `x`, columns are `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

/// An `m x n` joint distribution `p(i, j)`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct JointDist {
    rows: usize,
    cols: usize,
    cells: Vec<Prob>,
}

impl JointDist {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell(&self, i: usize, j: usize) -> &Prob {
        &self.cells[i * self.cols + j]
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[Prob] {
        &self.cells
    }

    pub fn row(&self, i: usize) -> &[Prob] {
        &self.cells[i * self.cols..(i + 1) * self.cols]
    }

    /// `Σ_j p(i, j)`.
    pub fn row_mass(&self, i: usize) -> Rational {
        self.row(i).iter().map(Prob::value).sum()
    }

    pub fn to_grid(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|p| p.value().clone()).collect()).collect()
    }

    /// The independent joint `p(i) q(j)`.
    pub fn product(px: &Dist, py: &Dist) -> JointDist {
        let cells = px
            .weights()
            .iter()
            .flat_map(|a| py.weights().iter().map(move |b| Prob::from_unchecked(a.value() * b.value())))
            .collect();
        JointDist { rows: px.len(), cols: py.len(), cells }
    }

    /// Builds a joint from nonnegative integer counts over a common
    /// denominator. Panics if the counts do not sum to `denom`.
    pub(crate) fn from_counts(rows: usize, cols: usize, counts: &[u32], denom: u32) -> JointDist {
        assert_eq!(counts.len(), rows * cols);
        assert_eq!(counts.iter().map(|&c| c as u64).sum::<u64>(), denom as u64);
        let d = Rational::from_integer(denom.into());
        let cells = counts.iter().map(|&c| Prob::from_unchecked(Rational::from_integer(c.into()) / &d)).collect();
        JointDist { rows, cols, cells }
    }
}

/// Validates a rectangular grid of rationals as a joint distribution.
///
/// Entries come back canonicalized (lowest terms), so validating the
/// output of [`JointDist::to_grid`] reproduces the same value.
pub fn validate_joint(grid: &[Vec<Rational>]) -> Result<JointDist, Error> {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyGrid);
    }
    let mut cells = Vec::with_capacity(rows * cols);
    for (i, row) in grid.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Ragged { row: i, expected: cols, found: row.len() });
        }
        for (j, value) in row.iter().enumerate() {
            if value.is_negative() {
                return Err(Error::NegativeEntry { row: i, col: j, value: value.clone() });
            }
            cells.push(value.clone());
        }
    }
    let sum: Rational = cells.iter().sum();
    check_unit_mass(sum)?;
    Ok(JointDist { rows, cols, cells: cells.into_iter().map(Prob::from_unchecked).collect() })
}

/// `(Σ_j p(i,j))_i` for [`Axis::X`], `(Σ_i p(i,j))_j` for [`Axis::Y`].
pub fn marginal(joint: &JointDist, axis: Axis) -> Dist {
    let weights = match axis {
        Axis::X => (0..joint.rows).map(|i| joint.row_mass(i)).collect::<Vec<_>>(),
        Axis::Y => (0..joint.cols)
            .map(|j| (0..joint.rows).map(|i| joint.cell(i, j).value()).sum())
            .collect(),
    };
    Dist::from_weights_unchecked(weights.into_iter().map(Prob::from_unchecked).collect())
}

/// `p_i(j) = p(i,j) / Σ_j p(i,j)`.
pub fn conditional_slice(joint: &JointDist, i: usize) -> Result<Dist, Error> {
    if i >= joint.rows {
        return Err(Error::IndexOutOfRange { index: i, len: joint.rows });
    }
    let mass = joint.row_mass(i);
    if mass.is_zero() {
        return Err(Error::ZeroMarginal { row: i });
    }
    let weights = joint.row(i).iter().map(|p| Prob::from_unchecked(p.value() / &mass)).collect();
    Ok(Dist::from_weights_unchecked(weights))
}

/// `(Σ_i q[i] p_i(j))_j`: the belief over `y` after weighting each row's
/// conditional by `q`. Rows with `q[i] = 0` are skipped, so they may have
/// zero mass.
pub fn mix_update(joint: &JointDist, q: &Dist) -> Result<Dist, Error> {
    if q.len() != joint.rows {
        return Err(Error::LengthMismatch { expected: joint.rows, found: q.len() });
    }
    let mut acc = vec![Rational::zero(); joint.cols];
    for (i, w) in q.weights().iter().enumerate() {
        if w.is_zero() {
            continue;
        }
        let slice = conditional_slice(joint, i)?;
        for (a, p) in acc.iter_mut().zip(slice.weights()) {
            *a += w.value() * p.value();
        }
    }
    Ok(Dist::from_weights_unchecked(acc.into_iter().map(Prob::from_unchecked).collect()))
}
