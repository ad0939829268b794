//! Step-set algebra: representation, drift, inventory evaluation, covariance
//! and essentiality testing.
//!
//! A step set is a finite multiset of integer vectors in `d` dimensions. The
//! text format is a `;`- or `,`-separated list of vectors with optional
//! multiplicities, `"(0,1)x1;(1,-1)x2"`, plus the usual compass aliases
//! (`N`, `NE`, ..., `NW`) for two-dimensional small steps. `Display` emits the
//! canonical vector form, which parses back to the same set.

use std::fmt;
use std::str::FromStr;

use crate::enumeration;
use crate::error::{Error, Result};

/// Compass aliases for 2D small steps.
const COMPASS: [(&str, [i64; 2]); 8] = [
    ("N", [0, 1]),
    ("NE", [1, 1]),
    ("E", [1, 0]),
    ("SE", [1, -1]),
    ("S", [0, -1]),
    ("SW", [-1, -1]),
    ("W", [-1, 0]),
    ("NW", [-1, 1]),
];

/// Horizon used by the essentiality test; constraint interaction for small
/// steps shows up well within this many steps.
pub const ESSENTIAL_HORIZON_2D: usize = 8;
/// Horizon for the per-constraint test in dimension three and up.
pub const ESSENTIAL_HORIZON_ND: usize = 6;

/// One distinct step vector together with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Step {
    pub vector: Vec<i64>,
    pub multiplicity: u32,
}

/// A finite multiset of integer step vectors.
///
/// Invariants: dimension >= 1, at least one step, multiplicities >= 1, no
/// duplicate vectors (duplicates merge on construction), steps sorted
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepSet {
    dim: usize,
    steps: Vec<Step>,
}

/// The multiplicity-weighted vector sum of all steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drift(Vec<i64>);

impl Drift {
    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, k: usize) -> i64 {
        self.0[k]
    }

    /// Drift projected onto a real direction.
    pub fn dot(&self, direction: &[f64]) -> f64 {
        self.0
            .iter()
            .zip(direction)
            .map(|(&c, &n)| c as f64 * n)
            .sum()
    }
}

/// How much differential information `eval_inventory` should produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivOrder {
    Value,
    Gradient,
    Hessian,
}

/// Inventory value P(point), optionally with gradient and Hessian.
#[derive(Debug, Clone)]
pub struct InventoryValue {
    pub value: f64,
    pub gradient: Option<Vec<f64>>,
    pub hessian: Option<Vec<Vec<f64>>>,
}

impl StepSet {
    /// Builds a step set, merging duplicate vectors and sorting canonically.
    pub fn new(dim: usize, steps: impl IntoIterator<Item = (Vec<i64>, u32)>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Parse("dimension must be at least 1".into()));
        }
        let mut merged: Vec<Step> = Vec::new();
        for (vector, multiplicity) in steps {
            if vector.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: vector.len(),
                });
            }
            if multiplicity == 0 {
                return Err(Error::Parse("multiplicities must be at least 1".into()));
            }
            match merged.iter_mut().find(|s| s.vector == vector) {
                Some(s) => s.multiplicity += multiplicity,
                None => merged.push(Step {
                    vector,
                    multiplicity,
                }),
            }
        }
        if merged.is_empty() {
            return Err(Error::Parse("step set must contain at least one step".into()));
        }
        merged.sort_by(|a, b| a.vector.cmp(&b.vector));
        Ok(StepSet { dim, steps: merged })
    }

    /// Builds a set of unit-multiplicity steps.
    pub fn from_vectors(dim: usize, vectors: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        Self::new(dim, vectors.into_iter().map(|v| (v, 1)))
    }

    /// Parses compass notation such as `"N,SW,S,SE"`.
    pub fn from_compass(text: &str) -> Result<Self> {
        text.parse()
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Total step count |S|, with multiplicity.
    pub fn cardinality(&self) -> u64 {
        self.steps.iter().map(|s| s.multiplicity as u64).sum()
    }

    pub fn contains(&self, vector: &[i64]) -> bool {
        self.steps.iter().any(|s| s.vector == vector)
    }

    pub fn max_abs_coordinate(&self) -> i64 {
        self.steps
            .iter()
            .flat_map(|s| s.vector.iter().map(|c| c.abs()))
            .max()
            .unwrap_or(0)
    }

    /// True when every step lies in {0,±1}^2.
    pub fn is_small_step_2d(&self) -> bool {
        self.dim == 2 && self.max_abs_coordinate() <= 1
    }

    /// Multiplicity-weighted vector sum of the steps.
    pub fn drift(&self) -> Drift {
        let mut total = vec![0i64; self.dim];
        for s in &self.steps {
            for (t, &c) in total.iter_mut().zip(&s.vector) {
                *t += c * s.multiplicity as i64;
            }
        }
        Drift(total)
    }

    /// Evaluates the inventory P at a strictly positive point, with the
    /// requested derivatives. Exact at the all-ones point.
    #[allow(clippy::needless_range_loop)] // k/l index point, vector and hessian together
    pub fn eval_inventory(&self, point: &[f64], order: DerivOrder) -> Result<InventoryValue> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: point.len(),
            });
        }
        for (index, &value) in point.iter().enumerate() {
            if value <= 0.0 || !value.is_finite() {
                return Err(Error::NonPositivePoint { index, value });
            }
        }
        let d = self.dim;
        let mut value = 0.0f64;
        let mut gradient = vec![0.0f64; d];
        let mut hessian = vec![vec![0.0f64; d]; d];
        for s in &self.steps {
            let mut term = s.multiplicity as f64;
            for (&e, &x) in s.vector.iter().zip(point) {
                term *= x.powi(e as i32);
            }
            value += term;
            if matches!(order, DerivOrder::Gradient | DerivOrder::Hessian) {
                for k in 0..d {
                    gradient[k] += term * s.vector[k] as f64 / point[k];
                }
            }
            if matches!(order, DerivOrder::Hessian) {
                for k in 0..d {
                    for l in 0..d {
                        let f = if k == l {
                            s.vector[k] as f64 * (s.vector[k] - 1) as f64
                        } else {
                            s.vector[k] as f64 * s.vector[l] as f64
                        };
                        hessian[k][l] += term * f / (point[k] * point[l]);
                    }
                }
            }
        }
        Ok(InventoryValue {
            value,
            gradient: matches!(order, DerivOrder::Gradient | DerivOrder::Hessian)
                .then_some(gradient),
            hessian: matches!(order, DerivOrder::Hessian).then_some(hessian),
        })
    }

    /// Second-order statistic gamma = P_xy(1,1) - delta_x * delta_y, exact.
    pub fn covariance(&self) -> Result<i64> {
        if self.dim != 2 {
            return Err(Error::UnsupportedDimension {
                expected: 2,
                got: self.dim,
            });
        }
        let mixed: i64 = self
            .steps
            .iter()
            .map(|s| s.multiplicity as i64 * s.vector[0] * s.vector[1])
            .sum();
        let d = self.drift();
        Ok(mixed - d.get(0) * d.get(1))
    }

    /// Negates coordinate `k` of every step.
    pub fn reflect_coordinate(&self, k: usize) -> StepSet {
        let steps = self
            .steps
            .iter()
            .map(|s| {
                let mut v = s.vector.clone();
                v[k] = -v[k];
                (v, s.multiplicity)
            })
            .collect::<Vec<_>>();
        StepSet::new(self.dim, steps).expect("reflection preserves invariants")
    }

    /// Swaps the two coordinates of every step (2D only).
    pub fn reflect_xy(&self) -> StepSet {
        assert_eq!(self.dim, 2, "reflect_xy requires dimension 2");
        let steps = self
            .steps
            .iter()
            .map(|s| (vec![s.vector[1], s.vector[0]], s.multiplicity))
            .collect::<Vec<_>>();
        StepSet::new(2, steps).expect("reflection preserves invariants")
    }

    /// Drops coordinate `k` from every step, merging collisions.
    pub fn drop_coordinate(&self, k: usize) -> Result<StepSet> {
        if self.dim < 2 {
            return Err(Error::UnsupportedDimension {
                expected: 2,
                got: self.dim,
            });
        }
        let steps = self.steps.iter().map(|s| {
            let mut v = s.vector.clone();
            v.remove(k);
            (v, s.multiplicity)
        });
        StepSet::new(self.dim - 1, steps.collect::<Vec<_>>())
    }

    /// Multiset union: multiplicities add.
    pub fn union(&self, other: &StepSet) -> Result<StepSet> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        let items = self
            .steps
            .iter()
            .chain(&other.steps)
            .map(|s| (s.vector.clone(), s.multiplicity));
        StepSet::new(self.dim, items.collect::<Vec<_>>())
    }

    /// Comparison key: the canonical sorted (vector, multiplicity) list.
    pub fn key(&self) -> Vec<(Vec<i64>, u32)> {
        self.steps
            .iter()
            .map(|s| (s.vector.clone(), s.multiplicity))
            .collect()
    }

    /// Compass rendering for 2D small-step sets, canonical step order.
    pub fn compass_string(&self) -> Option<String> {
        if !self.is_small_step_2d() {
            return None;
        }
        let mut parts = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            let name = COMPASS
                .iter()
                .find(|(_, v)| v[0] == s.vector[0] && v[1] == s.vector[1])
                .map(|(n, _)| *n)?;
            if s.multiplicity == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{}x{}", name, s.multiplicity));
            }
        }
        Some(parts.join(","))
    }

    /// Quarter-plane essentiality with the default horizon.
    ///
    /// A 2D model is essential when (a) it admits a nonempty walk, (b) each of
    /// the two boundary constraints strictly lowers some count against the
    /// corresponding single-constraint half-plane model, and (c) the reachable
    /// positions do not all lie on one line through the origin (walks that
    /// stay on a line are a unidimensional model in disguise).
    pub fn is_quarterplane_essential(&self) -> Result<bool> {
        self.is_quarterplane_essential_with_horizon(ESSENTIAL_HORIZON_2D)
    }

    pub fn is_quarterplane_essential_with_horizon(&self, horizon: usize) -> Result<bool> {
        if self.dim != 2 {
            return Err(Error::UnsupportedDimension {
                expected: 2,
                got: self.dim,
            });
        }
        self.is_orthant_essential_with_horizon(horizon)
    }

    /// The d-dimensional essentiality criterion: per-constraint count
    /// differences plus full-rank reachability.
    pub fn is_orthant_essential_with_horizon(&self, horizon: usize) -> Result<bool> {
        let q = enumeration::count_orthant(self, horizon)?;
        if q.counts[1..].iter().all(|c| c == &num_bigint::BigUint::default()) {
            return Ok(false);
        }
        for k in 0..self.dim {
            // the orthant counts must fall short of every single-constraint
            // half-space count somewhere in the horizon
            let mut normal = vec![0i64; self.dim];
            normal[k] = 1;
            let h = enumeration::count_halfspace(self, &normal, horizon)?;
            let differs = q
                .counts
                .iter()
                .zip(&h.counts)
                .skip(1)
                .any(|(qn, hn)| qn < hn);
            if !differs {
                return Ok(false);
            }
        }
        Ok(self.reachable_rank(horizon) == self.dim)
    }

    /// Rank of the set of positions reachable within `horizon` steps.
    fn reachable_rank(&self, horizon: usize) -> usize {
        let mut frontier = vec![vec![0i64; self.dim]];
        let mut seen: std::collections::HashSet<Vec<i64>> = frontier.iter().cloned().collect();
        for _ in 0..horizon {
            let mut next = Vec::new();
            'pos: for p in &frontier {
                for s in &self.steps {
                    let q: Vec<i64> = p.iter().zip(&s.vector).map(|(&a, &b)| a + b).collect();
                    if q.iter().any(|&c| c < 0) {
                        continue;
                    }
                    if seen.insert(q.clone()) {
                        next.push(q);
                    }
                    if seen.len() > 200_000 {
                        break 'pos;
                    }
                }
            }
            frontier = next;
            if frontier.is_empty() {
                break;
            }
        }
        let points: Vec<&Vec<i64>> = seen.iter().filter(|p| p.iter().any(|&c| c != 0)).collect();
        integer_rank(&points)
    }
}

/// Rank of a set of integer vectors, by fraction-free elimination.
fn integer_rank(points: &[&Vec<i64>]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let dim = points[0].len();
    let mut basis: Vec<Vec<i128>> = Vec::new();
    for p in points {
        let mut v: Vec<i128> = p.iter().map(|&c| c as i128).collect();
        for b in &basis {
            let lead = b.iter().position(|&c| c != 0).unwrap();
            if v[lead] != 0 {
                let (bv, vv) = (b[lead], v[lead]);
                for k in 0..dim {
                    v[k] = v[k] * bv - b[k] * vv;
                }
            }
        }
        if v.iter().any(|&c| c != 0) {
            // keep entries small
            let g = v.iter().fold(0i128, |acc, &c| gcd(acc, c.abs()));
            if g > 1 {
                for c in v.iter_mut() {
                    *c /= g;
                }
            }
            basis.push(v);
            if basis.len() == dim {
                break;
            }
        }
    }
    basis.len()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for StepSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.steps {
            if !first {
                write!(f, ";")?;
            }
            first = false;
            write!(f, "(")?;
            for (k, c) in s.vector.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")x{}", s.multiplicity)?;
        }
        Ok(())
    }
}

impl serde::Serialize for StepSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl FromStr for StepSet {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let items = split_top_level(text)?;
        if items.is_empty() {
            return Err(Error::Parse("empty step-set string".into()));
        }
        let mut parsed: Vec<(Vec<i64>, u32)> = Vec::new();
        for item in items {
            parsed.push(parse_item(&item)?);
        }
        let dim = parsed[0].0.len();
        if parsed.iter().any(|(v, _)| v.len() != dim) {
            return Err(Error::Parse("mixed dimensions in step list".into()));
        }
        StepSet::new(dim, parsed)
    }
}

/// Splits on `;` and on `,` outside parentheses.
fn split_top_level(text: &str) -> Result<Vec<String>> {
    let mut items = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                current.push(ch);
            }
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| Error::Parse("unbalanced ')'".into()))?;
                current.push(ch);
            }
            ';' | ',' if depth == 0 => {
                if !current.trim().is_empty() {
                    items.push(current.trim().to_string());
                }
                current.clear();
            }
            _ => current.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced '('".into()));
    }
    if !current.trim().is_empty() {
        items.push(current.trim().to_string());
    }
    Ok(items)
}

/// Parses one item: `(1,-1)`, `(1,-1)x3`, `NE` or `NEx2`.
fn parse_item(item: &str) -> Result<(Vec<i64>, u32)> {
    let (body, mult) = match item.rfind(')') {
        Some(close) => {
            let tail = item[close + 1..].trim();
            (item[..=close].trim(), parse_multiplicity(tail)?)
        }
        None => {
            // compass token with an optional x<digits> multiplicity suffix
            let token = item.trim();
            let split = token
                .rfind(['x', 'X'])
                .filter(|&p| {
                    p + 1 < token.len() && token[p + 1..].trim().chars().all(|c| c.is_ascii_digit())
                })
                .unwrap_or(token.len());
            (token[..split].trim(), parse_multiplicity(token[split..].trim())?)
        }
    };
    if body.starts_with('(') {
        let inner = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("malformed vector '{body}'")))?;
        let coords: Result<Vec<i64>> = inner
            .split(',')
            .map(|c| {
                c.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad coordinate '{c}' in '{body}'")))
            })
            .collect();
        let coords = coords?;
        if coords.is_empty() {
            return Err(Error::Parse(format!("empty vector in '{body}'")));
        }
        Ok((coords, mult))
    } else {
        let name = body.to_ascii_uppercase();
        let vector = COMPASS
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v.to_vec())
            .ok_or_else(|| Error::Parse(format!("unknown step token '{body}'")))?;
        Ok((vector, mult))
    }
}

fn parse_multiplicity(tail: &str) -> Result<u32> {
    if tail.is_empty() {
        return Ok(1);
    }
    let digits = tail
        .strip_prefix(['x', 'X'])
        .ok_or_else(|| Error::Parse(format!("expected multiplicity suffix, got '{tail}'")))?;
    digits
        .trim()
        .parse::<u32>()
        .map_err(|_| Error::Parse(format!("bad multiplicity '{digits}'")))
}
