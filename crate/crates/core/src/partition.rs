//! 3-Partition instances and a brute-force solver.

use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreePartitionInstance {
    pub n: usize,
    pub values: Vec<u64>,
}

/// A partition into triplets; indices are 0-based positions in the instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub triplets: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// `|X| = 3n`, `n >= 1` and every value is positive.
    pub well_formed: bool,
    /// The target `T = sum / n`, when it is an integer.
    pub target: Option<u64>,
    /// `T/4 < x < T/2` for every value.
    pub in_range: bool,
    pub distinct: bool,
    pub strict: bool,
    pub valid: bool,
    pub problems: Vec<String>,
}

impl ThreePartitionInstance {
    pub fn new(n: usize, values: Vec<u64>) -> Self {
        ThreePartitionInstance { n, values }
    }

    pub fn sum(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn target(&self) -> Option<u64> {
        if self.n == 0 {
            return None;
        }
        let s = self.sum();
        (s % self.n as u64 == 0).then(|| s / self.n as u64)
    }

    pub fn target_or_err(&self) -> Result<u64> {
        self.target().ok_or(Error::NonIntegralTarget { sum: self.sum(), n: self.n })
    }

    pub fn validate(&self, strict: bool) -> ValidationReport {
        let mut problems = Vec::new();
        let well_formed = self.n >= 1 && self.values.len() == 3 * self.n && self.values.iter().all(|&x| x >= 1);
        if !well_formed {
            problems.push(format!("expected n >= 1 and 3n = {} positive values", 3 * self.n));
        }
        let target = self.target();
        if target.is_none() {
            problems.push("target T is not an integer".into());
        }
        let in_range = match target {
            Some(t) => self.values.iter().all(|&x| 4 * x > t && 2 * x < t),
            None => false,
        };
        let mut sorted = self.values.clone();
        sorted.sort_unstable();
        let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
        if strict {
            if !in_range {
                problems.push("some value violates T/4 < x < T/2".into());
            }
            if !distinct {
                problems.push("values are not pairwise distinct".into());
            }
        }
        let lax = well_formed && target.is_some();
        let valid = lax && (!strict || (in_range && distinct));
        ValidationReport { well_formed, target, in_range, distinct, strict, valid, problems }
    }

    pub fn to_json(&self) -> Value {
        json!({ "n": self.n, "X": self.values })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("instance json: missing `n`".into()))?;
        let xs = v
            .get("X")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("instance json: missing `X`".into()))?
            .iter()
            .map(|x| x.as_u64().ok_or_else(|| Error::Parse("instance json: X must hold integers".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(ThreePartitionInstance::new(n as usize, xs))
    }
}

impl Partition {
    /// Checks that the triplets partition the indices and each sums to `T`.
    pub fn check(&self, inst: &ThreePartitionInstance) -> Result<()> {
        let t = inst.target_or_err()?;
        if self.triplets.len() != inst.n || inst.values.len() != 3 * inst.n {
            return Err(Error::InvalidPartition(format!(
                "expected {} triplets over {} values",
                inst.n,
                3 * inst.n
            )));
        }
        let mut used = vec![false; inst.values.len()];
        for tri in &self.triplets {
            let mut s = 0;
            for &i in tri {
                if i >= used.len() || used[i] {
                    return Err(Error::InvalidPartition(format!("index {} repeated or out of range", i + 1)));
                }
                used[i] = true;
                s += inst.values[i];
            }
            if s != t {
                return Err(Error::InvalidPartition(format!("triplet sums to {s}, expected {t}")));
            }
        }
        Ok(())
    }

    /// Sorted triplets, each sorted; equal for partitions differing only in order.
    pub fn normalized(&self) -> Vec<[usize; 3]> {
        let mut out: Vec<[usize; 3]> = self
            .triplets
            .iter()
            .map(|t| {
                let mut t = *t;
                t.sort_unstable();
                t
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn to_json(&self) -> Value {
        json!({ "triplets": self.triplets.iter().map(|t| t.map(|i| i + 1)).collect::<Vec<_>>() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("partition json: expected {\"triplets\":[[i,j,k],...]} with 1-based indices".into());
        let arr = v.get("triplets").and_then(Value::as_array).ok_or_else(bad)?;
        let mut triplets = Vec::new();
        for t in arr {
            let t = t.as_array().filter(|t| t.len() == 3).ok_or_else(bad)?;
            let mut tri = [0; 3];
            for (k, x) in t.iter().enumerate() {
                let i = x.as_u64().filter(|&i| i >= 1).ok_or_else(bad)?;
                tri[k] = i as usize - 1;
            }
            triplets.push(tri);
        }
        Ok(Partition { triplets })
    }
}

/// Exhaustive search. The smallest unused index is always placed first and
/// completed by the lexicographically first feasible pair, so the answer is
/// deterministic. Returns `None` for a non-integral target.
pub fn solve_three_partition(inst: &ThreePartitionInstance) -> Option<Partition> {
    let t = inst.target()?;
    if inst.values.len() != 3 * inst.n {
        return None;
    }
    let mut used = vec![false; inst.values.len()];
    let mut triplets = Vec::new();
    if search(&inst.values, t, &mut used, &mut triplets) {
        Some(Partition { triplets })
    } else {
        None
    }
}

fn search(xs: &[u64], t: u64, used: &mut [bool], out: &mut Vec<[usize; 3]>) -> bool {
    let Some(i) = used.iter().position(|u| !u) else {
        return true;
    };
    used[i] = true;
    for j in i + 1..xs.len() {
        if used[j] || xs[i] + xs[j] >= t {
            continue;
        }
        used[j] = true;
        for k in j + 1..xs.len() {
            if used[k] || xs[i] + xs[j] + xs[k] != t {
                continue;
            }
            used[k] = true;
            out.push([i, j, k]);
            if search(xs, t, used, out) {
                return true;
            }
            out.pop();
            used[k] = false;
        }
        used[j] = false;
    }
    used[i] = false;
    false
}
