//! Graph and measure specifications given on the command line.

use std::fs;
use std::path::Path;

use doubling_core::{build_named, make_measure, parse_edge_list, Family, Graph, Measure, MeasureKind};

use crate::Failure;

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSpec {
    Named(Family, usize),
    File(String),
}

impl GraphSpec {
    pub fn parse(s: &str) -> Result<Self, Failure> {
        if let Some(path) = s.strip_prefix('@') {
            return Ok(GraphSpec::File(path.to_string()));
        }
        let (family, n) = s
            .split_once(':')
            .ok_or_else(|| Failure::usage(format!("graph spec `{s}` is not FAMILY:N or @FILE")))?;
        let family: Family = family.parse().map_err(Failure::from)?;
        let n: usize = n
            .parse()
            .map_err(|_| Failure::usage(format!("graph size `{n}` is not a positive integer")))?;
        Ok(GraphSpec::Named(family, n))
    }

    pub fn build(&self) -> Result<Graph, Failure> {
        match self {
            GraphSpec::Named(f, n) => build_named(*f, *n).map_err(Failure::from),
            GraphSpec::File(path) => {
                let text = read(path)?;
                parse_edge_list(&text).map_err(|e| Failure::usage(format!("{path}: {e}")))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MeasureSpec {
    Kind(MeasureKind),
    File(String),
}

impl MeasureSpec {
    pub fn parse(s: &str) -> Result<Self, Failure> {
        if let Some(path) = s.strip_prefix('@') {
            return Ok(MeasureSpec::File(path.to_string()));
        }
        match s.split_once(':') {
            None if s == "counting" => Ok(MeasureSpec::Kind(MeasureKind::Counting)),
            None if s == "sine" => Ok(MeasureSpec::Kind(MeasureKind::Sine)),
            Some(("lambda_alpha", a)) => {
                let alpha: f64 = a
                    .parse()
                    .map_err(|_| Failure::usage(format!("alpha `{a}` is not a number")))?;
                Ok(MeasureSpec::Kind(MeasureKind::LambdaAlpha(alpha)))
            }
            _ => Err(Failure::usage(format!(
                "measure spec `{s}` is not counting, sine, lambda_alpha:A or @FILE"
            ))),
        }
    }

    pub fn build(&self, n: usize) -> Result<Measure, Failure> {
        match self {
            MeasureSpec::Kind(kind) => make_measure(kind, n).map_err(Failure::from),
            MeasureSpec::File(path) => {
                let text = read(path)?;
                let mu = Measure::parse(&text).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
                if mu.len() != n {
                    return Err(Failure::usage(format!(
                        "{path}: {} weights for {n} vertices",
                        mu.len()
                    )));
                }
                Ok(mu)
            }
        }
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(Path::new(path)).map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))
}

/// `A..B`, inclusive on both ends.
pub fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::usage(format!("range `{s}` is not A..B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(Failure::usage(format!("empty range {a}..{b}")));
    }
    Ok((a, b))
}
