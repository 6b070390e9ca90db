//! Composite Gauss–Legendre rules on `[0, 1]` with geometric grading toward
//! registered singular points.
//!
//! A graded run toward a singular point `s` covers `[s, s + L]` with panels of
//! width `L/2, L/4, ..., L/2^P`. The uncovered sliver `[s, s + L/2^P]` is
//! estimated from the last two panel integrals as the tail of a geometric
//! series, which is exact for power-law behaviour `|x - s|^c` with `c > -1`.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Grading ratio between consecutive panels of a graded run.
pub const GRADING_RATIO: f64 = 0.5;
pub const DEFAULT_PANELS: usize = 64;
pub const DEFAULT_NODES_PER_PANEL: usize = 8;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let d = nf * (x * p1 - p0) / (x * x - 1.0);
    if n == 0 {
        (1.0, 0.0)
    } else {
        (p1, d)
    }
}

/// Panel layout of an interval space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub panels: usize,
    pub nodes_per_panel: usize,
    /// Points of `[0, 1]` toward which panels are graded (singularities, jumps).
    #[serde(default)]
    pub singular_points: Vec<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            panels: DEFAULT_PANELS,
            nodes_per_panel: DEFAULT_NODES_PER_PANEL,
            singular_points: Vec::new(),
        }
    }
}

impl QuadratureSpec {
    pub fn with_singular_points(points: Vec<f64>) -> Self {
        QuadratureSpec { singular_points: points, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.panels < 1 {
            return Err(Error::InvalidSpace("quadrature needs at least one panel".into()));
        }
        if self.nodes_per_panel < 2 {
            return Err(Error::InvalidSpace("quadrature needs at least two nodes per panel".into()));
        }
        if let Some(s) = self.singular_points.iter().find(|s| !(0.0..=1.0).contains(*s)) {
            return Err(Error::InvalidSpace(format!("singular point {s} outside [0, 1]")));
        }
        Ok(())
    }

    pub fn is_singular(&self, x: f64) -> bool {
        self.singular_points.contains(&x)
    }
}

#[derive(Debug, Clone, PartialEq)]
struct TailRun {
    prev: Range<usize>,
    last: Range<usize>,
}

/// Fixed node set with weights plus geometric tail corrections.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    tails: Vec<TailRun>,
}

impl QuadratureRule {
    pub fn build(spec: &QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        let (ref_nodes, ref_weights) = gauss_legendre(spec.nodes_per_panel);
        let mut breaks: Vec<f64> = vec![0.0, 1.0];
        breaks.extend(spec.singular_points.iter().copied());
        breaks.sort_by(f64::total_cmp);
        breaks.dedup();

        let mut rule = QuadratureRule { nodes: Vec::new(), weights: Vec::new(), tails: Vec::new() };
        let mut push_panel = |rule: &mut QuadratureRule, a: f64, b: f64| -> Range<usize> {
            let start = rule.nodes.len();
            let mid = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            for (t, w) in ref_nodes.iter().zip(&ref_weights) {
                rule.nodes.push(mid + half * t);
                rule.weights.push(half * w);
            }
            start..rule.nodes.len()
        };

        for pair in breaks.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let left = spec.is_singular(a);
            let right = spec.is_singular(b);
            match (left, right) {
                (false, false) => {
                    let count = ((spec.panels as f64) * (b - a)).ceil().max(1.0) as usize;
                    let h = (b - a) / count as f64;
                    for k in 0..count {
                        let hi = if k + 1 == count { b } else { a + (k + 1) as f64 * h };
                        push_panel(&mut rule, a + k as f64 * h, hi);
                    }
                }
                (true, false) => rule.graded_run(a, b - a, spec.panels, &mut push_panel),
                (false, true) => rule.graded_run(b, a - b, spec.panels, &mut push_panel),
                (true, true) => {
                    let m = 0.5 * (a + b);
                    rule.graded_run(a, m - a, spec.panels, &mut push_panel);
                    rule.graded_run(b, m - b, spec.panels, &mut push_panel);
                }
            }
        }
        Ok(rule)
    }

    /// Graded panels from `s + len` down toward `s`; `len` is negative when
    /// grading toward a right endpoint.
    fn graded_run<F>(&mut self, s: f64, len: f64, panels: usize, push_panel: &mut F)
    where
        F: FnMut(&mut QuadratureRule, f64, f64) -> Range<usize>,
    {
        // Below a few ulps of s the panels collapse; stop grading there.
        let floor = if s == 0.0 { 0.0 } else { 1024.0 * f64::EPSILON * s.abs() };
        let mut depth = panels;
        if floor > 0.0 {
            let max_depth = (len.abs() / floor).log2().floor().max(1.0) as usize;
            depth = depth.min(max_depth);
        }
        if depth < 2 {
            let (lo, hi) = ordered(s, s + len);
            push_panel(self, lo, hi);
            return;
        }
        let mut outer = 1.0;
        let mut ranges = Vec::with_capacity(depth);
        for _ in 0..depth {
            let inner = outer * GRADING_RATIO;
            let (lo, hi) = ordered(s + inner * len, s + outer * len);
            // Coarse levels are split to the uniform panel density.
            let count = ((panels as f64) * (hi - lo)).ceil().max(1.0) as usize;
            let h = (hi - lo) / count as f64;
            for k in 0..count {
                let b = if k + 1 == count { hi } else { lo + (k + 1) as f64 * h };
                ranges.push(push_panel(self, lo + k as f64 * h, b));
            }
            outer = inner;
        }
        let last = ranges.pop().unwrap();
        let prev = ranges.pop().unwrap();
        self.tails.push(TailRun { prev, last });
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integral of the function whose values at [`Self::nodes`] are `values`.
    pub fn integrate(&self, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.nodes.len());
        let body: f64 = self.weights.iter().zip(values).map(|(w, v)| w * v).sum();
        body + self.tail_correction(|r| self.partial(values, r))
    }

    /// Same as [`Self::integrate`] for a function given by closure.
    pub fn integrate_fn(&self, f: impl Fn(f64) -> f64) -> f64 {
        let values: Vec<f64> = self.nodes.iter().map(|&x| f(x)).collect();
        self.integrate(&values)
    }

    fn partial(&self, values: &[f64], r: &Range<usize>) -> f64 {
        self.weights[r.clone()].iter().zip(&values[r.clone()]).map(|(w, v)| w * v).sum()
    }

    /// Sum of geometric tail estimates given a panel-sum evaluator.
    pub(crate) fn tail_correction(&self, panel_sum: impl Fn(&Range<usize>) -> f64) -> f64 {
        self.tails
            .iter()
            .map(|run| geometric_tail(panel_sum(&run.prev), panel_sum(&run.last)))
            .sum()
    }

    /// Node index ranges `(prev, last)` of each graded run.
    pub(crate) fn tail_ranges(&self) -> impl Iterator<Item = (&Range<usize>, &Range<usize>)> {
        self.tails.iter().map(|t| (&t.prev, &t.last))
    }
}

fn ordered(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Tail `Σ_{k≥1} last·r^k` with `r = last/prev`, used only when `0 < r < 1`.
pub(crate) fn geometric_tail(prev: f64, last: f64) -> f64 {
    if prev == 0.0 || !prev.is_finite() || !last.is_finite() {
        return 0.0;
    }
    let r = last / prev;
    if r > 0.0 && r < 1.0 {
        last * r / (1.0 - r)
    } else {
        0.0
    }
}
