//! Weighted requests: a nonnegative rational weight on every (vertex, color).
//!
//! Text format, one entry per line: `v c p/q` (or `v c p`). Unlisted pairs
//! weigh 0; a pair listed twice is an error.

use num_traits::{Signed, Zero};

use super::{Coloring, Cover};
use crate::error::{parse_err, Error, Result};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedRequest {
    weights: Vec<Vec<Rational>>,
}

impl WeightedRequest {
    /// The zero request on lists of the given sizes.
    pub fn zero(sizes: &[usize]) -> WeightedRequest {
        WeightedRequest { weights: sizes.iter().map(|&h| vec![Rational::zero(); h]).collect() }
    }

    /// Weight 1 on the single pair `(v, c)`.
    pub fn indicator(sizes: &[usize], v: usize, c: usize) -> WeightedRequest {
        let mut w = WeightedRequest::zero(sizes);
        w.weights[v][c] = Rational::from_integer(1.into());
        w
    }

    pub fn set(&mut self, v: usize, c: usize, weight: Rational) -> Result<()> {
        if weight.is_negative() {
            return Err(Error::InvalidRequest(format!("negative weight at {v} {c}")));
        }
        let slot = self
            .weights
            .get_mut(v)
            .and_then(|l| l.get_mut(c))
            .ok_or_else(|| Error::InvalidRequest(format!("no color {c} at vertex {v}")))?;
        *slot = weight;
        Ok(())
    }

    pub fn weight(&self, v: usize, c: usize) -> &Rational {
        &self.weights[v][c]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.weights.iter().map(Vec::len).collect()
    }

    /// `sum_v w(v, phi(v))`
    pub fn value(&self, phi: &Coloring) -> Rational {
        phi.0.iter().enumerate().map(|(v, &c)| self.weights[v][c].clone()).sum()
    }

    /// `sum_v sum_c w(v, c)`
    pub fn total(&self) -> Rational {
        self.weights.iter().flatten().cloned().sum()
    }

    /// Nonzero entries in (vertex, color) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.weights.iter().enumerate().flat_map(|(v, l)| {
            l.iter().enumerate().filter(|(_, w)| !w.is_zero()).map(move |(c, w)| (v, c, w))
        })
    }
}

pub fn request_value(w: &WeightedRequest, phi: &Coloring) -> Rational {
    w.value(phi)
}

pub fn total_weight(w: &WeightedRequest) -> Rational {
    w.total()
}

/// Parses a `.req` document against the list sizes of `cover`.
pub fn parse_req(text: &str, cover: &Cover) -> Result<WeightedRequest> {
    let mut w = WeightedRequest::zero(cover.sizes());
    let mut seen = std::collections::HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let [v, c, weight] = fields[..] else {
            return Err(parse_err(line, "expected `v c weight`"));
        };
        let v: usize = v.parse().map_err(|_| parse_err(line, format!("bad vertex {v:?}")))?;
        let c: usize = c.parse().map_err(|_| parse_err(line, format!("bad color {c:?}")))?;
        let weight: Rational =
            weight.parse().map_err(|_| parse_err(line, format!("bad weight {weight:?}")))?;
        if !seen.insert((v, c)) {
            return Err(parse_err(line, format!("pair {v} {c} given twice")));
        }
        w.set(v, c, weight).map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(w)
}

pub fn write_req(w: &WeightedRequest) -> String {
    w.entries().map(|(v, c, x)| format!("{v} {c} {x}\n")).collect()
}
