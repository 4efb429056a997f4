//! Reading and writing distributions, joints and cipher models.
//!
//! Cells may be written as decimals (`0.2`) or fractions (`1/5`); both are
//! converted exactly. Joints come as headerless CSV or as
//! `{"rows": m, "cols": n, "cells": [[...], ...]}`; models as
//! `{"prior": [...], "key": [...]}`. JSON cells may be strings or numbers.

use serde::{Deserialize, Serialize};

use crate::dist::{validate_joint, Dist, JointDist};
use crate::error::{LoadError, ParseError};
use crate::otp::{build_model, CipherModel};
use crate::prob::{parse_rational, Rational};

#[derive(Deserialize)]
#[serde(untagged)]
enum Cell {
    Text(String),
    Number(serde_json::Number),
}

impl Cell {
    fn to_rational(&self) -> Result<Rational, ParseError> {
        match self {
            Cell::Text(s) => parse_rational(s),
            Cell::Number(n) => parse_rational(&n.to_string()),
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JointDoc {
    rows: usize,
    cols: usize,
    cells: Vec<Vec<Cell>>,
}

#[derive(Serialize)]
struct JointDocOut {
    rows: usize,
    cols: usize,
    cells: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DistDoc {
    weights: Vec<Cell>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDoc {
    prior: Vec<Cell>,
    key: Vec<Cell>,
}

fn json_err(e: serde_json::Error) -> ParseError {
    ParseError::Json(e.to_string())
}

fn cells_to_rationals(cells: &[Cell]) -> Result<Vec<Rational>, ParseError> {
    cells.iter().map(Cell::to_rational).collect()
}

fn looks_like_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

/// Headerless CSV, one joint row per line. Lines starting with `#` are
/// comments.
pub fn parse_grid_csv(text: &str) -> Result<Vec<Vec<Rational>>, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut grid: Vec<Vec<Rational>> = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| ParseError::Csv(e.to_string()))?;
        let values = record.iter().map(parse_rational).collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = grid.first() {
            if first.len() != values.len() {
                return Err(ParseError::Ragged { row, expected: first.len(), found: values.len() });
            }
        }
        grid.push(values);
    }
    Ok(grid)
}

pub fn parse_grid_json(text: &str) -> Result<Vec<Vec<Rational>>, ParseError> {
    let doc: JointDoc = serde_json::from_str(text).map_err(json_err)?;
    let shape_err = || ParseError::Shape { declared_rows: doc.rows, declared_cols: doc.cols };
    if doc.cells.len() != doc.rows || doc.cells.iter().any(|r| r.len() != doc.cols) {
        return Err(shape_err());
    }
    doc.cells.iter().map(|r| cells_to_rationals(r)).collect()
}

/// CSV or JSON, chosen by whether the text opens with `{`.
pub fn parse_grid(text: &str) -> Result<Vec<Vec<Rational>>, ParseError> {
    if looks_like_json(text) {
        parse_grid_json(text)
    } else {
        parse_grid_csv(text)
    }
}

pub fn read_joint(text: &str) -> Result<JointDist, LoadError> {
    Ok(validate_joint(&parse_grid(text)?)?)
}

/// Either a single distribution or a full joint, as accepted by the
/// `entropy` command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistInput {
    Dist(Dist),
    Joint(JointDist),
}

/// Reads `{"weights": [...]}`, a joint document, or CSV. A grid with a
/// single row or a single column is read as a plain distribution.
pub fn read_dist_input(text: &str) -> Result<DistInput, LoadError> {
    if looks_like_json(text) {
        let value: serde_json::Value = serde_json::from_str(text).map_err(json_err)?;
        if value.get("weights").is_some() {
            let doc: DistDoc = serde_json::from_value(value).map_err(json_err)?;
            return Ok(DistInput::Dist(Dist::from_rationals(cells_to_rationals(&doc.weights)?)?));
        }
    }
    let grid = parse_grid(text)?;
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    if rows == 1 {
        return Ok(DistInput::Dist(Dist::from_rationals(grid.into_iter().next().unwrap_or_default())?));
    }
    if cols == 1 && rows > 1 {
        return Ok(DistInput::Dist(Dist::from_rationals(grid.into_iter().flatten().collect())?));
    }
    Ok(DistInput::Joint(validate_joint(&grid)?))
}

pub fn read_model_json(text: &str) -> Result<CipherModel, LoadError> {
    let doc: ModelDoc = serde_json::from_str(text).map_err(json_err)?;
    let prior = Dist::from_rationals(cells_to_rationals(&doc.prior)?)?;
    let key = Dist::from_rationals(cells_to_rationals(&doc.key)?)?;
    Ok(build_model(prior, key)?)
}

/// Exact fractions, one row per line.
pub fn write_joint_csv(joint: &JointDist) -> String {
    let mut out = String::new();
    for i in 0..joint.rows() {
        let row: Vec<String> = joint.row(i).iter().map(ToString::to_string).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_joint_json(joint: &JointDist) -> String {
    let doc = JointDocOut {
        rows: joint.rows(),
        cols: joint.cols(),
        cells: (0..joint.rows()).map(|i| joint.row(i).iter().map(ToString::to_string).collect()).collect(),
    };
    serde_json::to_string(&doc).expect("joint document serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::prob::Prob;

    #[test]
    fn csv_decimal_and_fraction_cells() {
        let j = read_joint("0.2, 3/10\n# comment\n1/10,0.4\n").unwrap();
        assert_eq!(j.cell(0, 1), &Prob::ratio(3, 10).unwrap());
        assert_eq!(j.cell(1, 0), &Prob::ratio(1, 10).unwrap());
    }

    #[test]
    fn csv_errors() {
        assert!(matches!(parse_grid_csv("0.5,0.5\n0.1\n"), Err(ParseError::Ragged { row: 1, .. })));
        assert!(matches!(parse_grid_csv("0.5,abc\n"), Err(ParseError::InvalidNumber { .. })));
        assert!(matches!(read_joint("0.6,-0.1\n0.5,0\n"), Err(LoadError::Invalid(Error::NegativeEntry { .. }))));
        assert!(matches!(read_joint("0.5,0.5\n0.1,0\n"), Err(LoadError::Invalid(Error::MassMismatch { .. }))));
        assert!(matches!(read_joint(""), Err(LoadError::Invalid(Error::EmptyGrid))));
    }

    #[test]
    fn json_joint() {
        let j = read_joint(r#"{"rows":2,"cols":2,"cells":[["0.2","3/10"],[0.1,0.4]]}"#).unwrap();
        assert_eq!(j, read_joint("0.2,0.3\n0.1,0.4").unwrap());
        assert!(matches!(
            read_joint(r#"{"rows":2,"cols":3,"cells":[["0.2","3/10"],[0.1,0.4]]}"#),
            Err(LoadError::Parse(ParseError::Shape { .. }))
        ));
        assert!(matches!(read_joint(r#"{"rows":1,"cols":1,"cells":[["1"]],"x":1}"#), Err(LoadError::Parse(ParseError::Json(_)))));
        assert!(matches!(read_joint("{"), Err(LoadError::Parse(ParseError::Json(_)))));
    }

    #[test]
    fn json_small_float_is_exact() {
        let j = read_joint(r#"{"rows":1,"cols":2,"cells":[[1e-7, "9999999/10000000"]]}"#).unwrap();
        assert_eq!(j.cell(0, 0), &Prob::ratio(1, 10_000_000).unwrap());
    }

    #[test]
    fn dist_inputs() {
        let one_row = read_dist_input("0.3,0.7\n").unwrap();
        let one_col = read_dist_input("0.3\n0.7\n").unwrap();
        let doc = read_dist_input(r#"{"weights":["3/10", 0.7]}"#).unwrap();
        let expected = DistInput::Dist(Dist::from_ratios(&[3, 7], 10).unwrap());
        assert_eq!(one_row, expected);
        assert_eq!(one_col, expected);
        assert_eq!(doc, expected);
        assert!(matches!(read_dist_input("0.2,0.3\n0.1,0.4\n").unwrap(), DistInput::Joint(_)));
        assert!(read_dist_input(r#"{"weights":["1/2"]}"#).is_err());
    }

    #[test]
    fn models() {
        let m = read_model_json(r#"{"prior":["0.9","0.1"],"key":["1/2","1/2"]}"#).unwrap();
        assert_eq!(m.alphabet_size(), 2);
        assert!(matches!(
            read_model_json(r#"{"prior":["0.9","0.1"],"key":["1/3","1/3","1/3"]}"#),
            Err(LoadError::Invalid(Error::LengthMismatch { .. }))
        ));
        assert!(matches!(read_model_json(r#"{"prior":["0.9"]}"#), Err(LoadError::Parse(_))));
    }

    #[test]
    fn writers_emit_fractions() {
        let j = read_joint("0.2,0.3\n0.1,0.4").unwrap();
        assert_eq!(write_joint_csv(&j), "1/5,3/10\n1/10,2/5\n");
        assert_eq!(write_joint_json(&j), r#"{"rows":2,"cols":2,"cells":[["1/5","3/10"],["1/10","2/5"]]}"#);
    }
}
