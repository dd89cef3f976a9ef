//! Rank correlation between centrality score vectors.
//!
//! Scores are rounded to 12 decimals before any comparison. Kendall's τ is
//! the tie-corrected τ-b. The weighted τ uses additive hyperbolic weights: an
//! exchanged pair at ranks `r` and `s` weighs `1/(r+1) + 1/(s+1)`. Ranks come
//! from sorting by decreasing `(a, b)` and, separately, by decreasing `(b, a)`,
//! with ties broken by ascending label; the two values are averaged, which
//! makes the result symmetric. Both τ are computed by merge sort in
//! `O(n log n)`.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::NodeLabels;
use crate::numeric::Scores;

/// Scores keyed by node label.
#[derive(Clone, Debug, PartialEq)]
pub struct Ranking {
    entries: Vec<(String, f64)>,
}

impl Ranking {
    pub fn new(entries: Vec<(String, f64)>) -> Result<Self> {
        let mut seen = HashSet::new();
        for (label, score) in &entries {
            if !seen.insert(label.as_str()) {
                return Err(Error::Input(format!("label {label:?} appears twice")));
            }
            if !score.is_finite() {
                return Err(Error::Input(format!("score of {label:?} is not finite")));
            }
        }
        let entries = entries.into_iter().map(|(l, s)| (l, round12(s))).collect();
        Ok(Ranking { entries })
    }

    pub fn from_scores(labels: &NodeLabels, scores: &Scores) -> Result<Self> {
        let values = scores.to_f64();
        if values.len() != labels.len() {
            return Err(Error::Input("score vector and label map differ in length".into()));
        }
        Ranking::new(labels.iter().map(str::to_owned).zip(values).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(String, f64)] {
        &self.entries
    }

    /// Labels by decreasing score, ties by ascending label.
    pub fn order(&self) -> Vec<&str> {
        let mut idx: Vec<usize> = (0..self.entries.len()).collect();
        idx.sort_by(|&i, &j| {
            let (li, si) = &self.entries[i];
            let (lj, sj) = &self.entries[j];
            sj.total_cmp(si).then_with(|| li.cmp(lj))
        });
        idx.into_iter().map(|i| self.entries[i].0.as_str()).collect()
    }
}

fn round12(x: f64) -> f64 {
    let r = (x * 1e12).round() / 1e12;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Pairs up the two rankings by label; output sorted by label.
fn align<'a>(a: &'a Ranking, b: &'a Ranking) -> Result<(Vec<&'a str>, Vec<f64>, Vec<f64>)> {
    let mut ea: Vec<&(String, f64)> = a.entries.iter().collect();
    let mut eb: Vec<&(String, f64)> = b.entries.iter().collect();
    ea.sort_by(|x, y| x.0.cmp(&y.0));
    eb.sort_by(|x, y| x.0.cmp(&y.0));
    if ea.len() != eb.len() || ea.iter().zip(&eb).any(|(x, y)| x.0 != y.0) {
        return Err(Error::Input("rankings are over different label sets".into()));
    }
    Ok((
        ea.iter().map(|e| e.0.as_str()).collect(),
        ea.iter().map(|e| e.1).collect(),
        eb.iter().map(|e| e.1).collect(),
    ))
}

/// Kendall's τ-b.
pub fn kendall_tau(a: &Ranking, b: &Ranking) -> Result<f64> {
    let (_, x, y) = align(a, b)?;
    if x.len() < 2 {
        return Err(Error::Input("need at least two labels".into()));
    }
    let ones = vec![1.0; x.len()];
    weighted_core(&x, &y, &ones).ok_or_else(undefined)
}

/// Hyperbolic weighted Kendall τ.
pub fn weighted_kendall_tau(a: &Ranking, b: &Ranking) -> Result<f64> {
    let (labels, x, y) = align(a, b)?;
    if x.len() < 2 {
        return Err(Error::Input("need at least two labels".into()));
    }
    let first = weighted_core(&x, &y, &hyperbolic_weights(&labels, &x, &y)).ok_or_else(undefined)?;
    let second = weighted_core(&y, &x, &hyperbolic_weights(&labels, &y, &x)).ok_or_else(undefined)?;
    Ok((first + second) / 2.0)
}

fn undefined() -> Error {
    Error::Input("correlation undefined for a constant ranking".into())
}

/// `w[i] = 1/(rank_i + 1)`, ranking by decreasing `(x, y)` then ascending label.
fn hyperbolic_weights(labels: &[&str], x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&i, &j| {
        x[j].total_cmp(&x[i])
            .then_with(|| y[j].total_cmp(&y[i]))
            .then_with(|| labels[i].cmp(labels[j]))
    });
    let mut w = vec![0.0; x.len()];
    for (r, &i) in idx.iter().enumerate() {
        w[i] = 1.0 / (r as f64 + 1.0);
    }
    w
}

/// `Σ_{i<j} (w_i + w_j)·sgn(x_i − x_j)·sgn(y_i − y_j)`, normalised τ-b style.
/// `None` when either side is constant.
fn weighted_core(x: &[f64], y: &[f64], w: &[f64]) -> Option<f64> {
    let n = x.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by(|&i, &j| x[j].total_cmp(&x[i]).then_with(|| y[j].total_cmp(&y[i])));

    let total: f64 = w.iter().sum::<f64>() * (n as f64 - 1.0);
    let tied_x = tie_weight(&perm, w, |i, j| x[i] == x[j]);
    let tied_xy = tie_weight(&perm, w, |i, j| x[i] == x[j] && y[i] == y[j]);
    let mut buf = vec![0usize; n];
    let exchanges = merge_count(&mut perm, &mut buf, y, w);
    let tied_y = tie_weight(&perm, w, |i, j| y[i] == y[j]);

    let den = ((total - tied_x) * (total - tied_y)).sqrt();
    if den <= 0.0 || (total - tied_x) <= 0.0 || (total - tied_y) <= 0.0 {
        return None;
    }
    let num = total - tied_x - tied_y + tied_xy - 2.0 * exchanges;
    Some((num / den).clamp(-1.0, 1.0))
}

/// Weight of the pairs inside runs of `perm` that are equal under `same`.
fn tie_weight(perm: &[usize], w: &[f64], same: impl Fn(usize, usize) -> bool) -> f64 {
    let mut total = 0.0;
    let mut start = 0;
    while start < perm.len() {
        let mut end = start + 1;
        let mut sum = w[perm[start]];
        while end < perm.len() && same(perm[start], perm[end]) {
            sum += w[perm[end]];
            end += 1;
        }
        total += (end - start - 1) as f64 * sum;
        start = end;
    }
    total
}

/// Stable merge sort of `perm` by decreasing `y`; returns the weight of the
/// pairs it had to exchange.
fn merge_count(perm: &mut [usize], buf: &mut [usize], y: &[f64], w: &[f64]) -> f64 {
    let n = perm.len();
    if n < 2 {
        return 0.0;
    }
    let mid = n / 2;
    let mut ex = merge_count(&mut perm[..mid], &mut buf[..mid], y, w)
        + merge_count(&mut perm[mid..], &mut buf[mid..], y, w);
    let mut left_weight: f64 = perm[..mid].iter().map(|&i| w[i]).sum();
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if y[perm[i]].total_cmp(&y[perm[j]]) != Ordering::Less {
            left_weight -= w[perm[i]];
            buf[k] = perm[i];
            i += 1;
        } else {
            ex += left_weight + (mid - i) as f64 * w[perm[j]];
            buf[k] = perm[j];
            j += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&perm[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&perm[j..n]);
    perm.copy_from_slice(&buf[..n]);
    ex
}

/// `|top_k(a) ∩ top_k(b)|`.
pub fn top_k_intersection(a: &Ranking, b: &Ranking, k: usize) -> Result<usize> {
    align(a, b)?;
    if k > a.len() {
        return Err(Error::Input(format!("k = {k} exceeds the {} ranked labels", a.len())));
    }
    let top_a: HashSet<&str> = a.order().into_iter().take(k).collect();
    Ok(b.order().into_iter().take(k).filter(|l| top_a.contains(l)).count())
}

/// Which metric to compute; tokens as on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    Kendall,
    Weighted,
    TopK,
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kendall" => Ok(Metric::Kendall),
            "wkendall" | "weighted" => Ok(Metric::Weighted),
            "topk" => Ok(Metric::TopK),
            _ => Err(Error::Config(format!("unknown metric {s:?} (expected kendall, wkendall or topk)"))),
        }
    }
}

/// Reference `O(n²)` implementations.
pub mod reference {
    use super::*;

    fn sgn(a: f64, b: f64) -> f64 {
        match a.total_cmp(&b) {
            Ordering::Less => -1.0,
            Ordering::Equal => 0.0,
            Ordering::Greater => 1.0,
        }
    }

    fn core(x: &[f64], y: &[f64], w: &[f64]) -> Option<f64> {
        let (mut num, mut dx, mut dy) = (0.0, 0.0, 0.0);
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                let wij = w[i] + w[j];
                let (sx, sy) = (sgn(x[i], x[j]), sgn(y[i], y[j]));
                num += wij * sx * sy;
                dx += wij * sx * sx;
                dy += wij * sy * sy;
            }
        }
        (dx > 0.0 && dy > 0.0).then(|| num / (dx * dy).sqrt())
    }

    pub fn kendall_tau(a: &Ranking, b: &Ranking) -> Option<f64> {
        let (_, x, y) = align(a, b).ok()?;
        core(&x, &y, &vec![1.0; x.len()])
    }

    pub fn weighted_kendall_tau(a: &Ranking, b: &Ranking) -> Option<f64> {
        let (labels, x, y) = align(a, b).ok()?;
        let first = core(&x, &y, &hyperbolic_weights(&labels, &x, &y))?;
        let second = core(&y, &x, &hyperbolic_weights(&labels, &y, &x))?;
        Some((first + second) / 2.0)
    }
}
