use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const EXCLUSION: f64 = 1e-12;

/// Rotation parameters for the decoupling unitary: `qs` pair the first
/// block with the third, `ts` the first with the second, `ss` the second with
/// the third.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParameterAssignment {
    pub qs: Vec<f64>,
    pub ts: Vec<f64>,
    pub ss: Vec<f64>,
}

fn pairwise_distinct(values: &[f64]) -> bool {
    values
        .iter()
        .enumerate()
        .all(|(i, a)| values[i + 1..].iter().all(|b| (a - b).abs() > EXCLUSION))
}

impl ParameterAssignment {
    pub fn len(&self) -> usize {
        self.qs.len() + self.ts.len() + self.ss.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self, odd_corner: bool) -> Result<()> {
        let all = || self.qs.iter().chain(&self.ts).chain(&self.ss);
        if let Some(v) = all().find(|v| !(**v > 0.0 && **v < 1.0)) {
            return Err(Error::InvalidParameter(format!("parameter {v} outside (0, 1)")));
        }
        let first: Vec<f64> = self.qs.iter().chain(&self.ts).copied().collect();
        if !pairwise_distinct(&first) {
            return Err(Error::InvalidParameter("qs and ts are not pairwise distinct".into()));
        }
        let second: Vec<f64> = self.ts.iter().map(|t| 1.0 - t).chain(self.ss.iter().copied()).collect();
        if !pairwise_distinct(&second) {
            return Err(Error::InvalidParameter("reflected ts and ss are not pairwise distinct".into()));
        }
        if odd_corner {
            let banned = [0.5, 1.0 / 3.0];
            let touched = all().copied().chain(self.ts.iter().map(|t| 1.0 - t));
            for v in touched {
                if banned.iter().any(|b| (v - b).abs() <= EXCLUSION) {
                    return Err(Error::InvalidParameter(format!("parameter {v} collides with the corner values")));
                }
            }
        }
        Ok(())
    }
}

fn banned(i: usize, d: usize) -> bool {
    2 * i == d || 3 * i == d || 3 * i == 2 * d
}

/// Greedy assignment from the grid i/d, starting at d = r1 + r2 + r3 + 2 and
/// growing d until every slot is filled. Values are compared as exact
/// numerators over the common denominator.
fn try_assign(r1: usize, r2: usize, r3: usize, d: usize) -> Option<(Vec<usize>, Vec<usize>, Vec<usize>)> {
    let mut pool: Vec<usize> = (1..d).filter(|&i| !banned(i, d)).collect();
    let mut take = |count: usize, ok: &dyn Fn(usize) -> bool| -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(count);
        let mut k = 0;
        while out.len() < count {
            if k >= pool.len() {
                return None;
            }
            if ok(pool[k]) {
                out.push(pool.remove(k));
            } else {
                k += 1;
            }
        }
        Some(out)
    };
    let qs = take(r1, &|_| true)?;
    let ts = take(r2, &|_| true)?;
    let reflected: Vec<usize> = ts.iter().map(|t| d - t).collect();
    let ss = take(r3, &|s| !reflected.contains(&s))?;
    Some((qs, ts, ss))
}

pub fn assign_parameters(r1: usize, r2: usize, r3: usize, odd_corner: bool) -> ParameterAssignment {
    let mut d = r1 + r2 + r3 + 2;
    let (qs, ts, ss) = loop {
        if let Some(found) = try_assign(r1, r2, r3, d) {
            break found;
        }
        d += 1;
    };
    let scale = |v: Vec<usize>| v.into_iter().map(|i| i as f64 / d as f64).collect();
    let assignment = ParameterAssignment { qs: scale(qs), ts: scale(ts), ss: scale(ss) };
    if let Err(e) = assignment.validate(odd_corner) {
        panic!("parameter scheme produced an invalid assignment: {e}");
    }
    assignment
}
