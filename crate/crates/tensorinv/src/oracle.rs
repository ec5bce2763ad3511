//! Brute-force lattice-point counting for the hypercube systems.
//!
//! A solution of the system `S_k` at weight `2d` is a vector `p ∈ N^{2^k}` with
//! `Σ p_i = 2d` and `Σ p_i V_i = c`. The counts are obtained by a dynamic program over
//! the vector of `k` running signed sums, processing one column at a time and
//! discarding states from which the target is no longer reachable.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::ellrat::EllRational;
use crate::error::{Error, Result};
use crate::hyperoct::{act_index, GroupElement};
use crate::laurent::Q;
use crate::rat::BigRat;
use crate::system::vertex;

/// A Diophantine system `Σ p_i = 2d`, `Σ p_i V_i = rhs` over `2^k` columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiophantineSystem {
    /// Number of equations.
    pub k: usize,
    /// Column vectors `V_i`, `i = 1..=2^k`.
    pub columns: Vec<Vec<i32>>,
    /// Right-hand side `c`.
    pub rhs: Vec<i32>,
    /// Half of the total weight.
    pub d: usize,
}

impl DiophantineSystem {
    /// The hypercube system with right-hand side `c`.
    pub fn hypercube(k: usize, d: usize, rhs: Vec<i32>) -> Result<Self> {
        if rhs.len() != k {
            return Err(Error::PreconditionViolated(
                "right-hand side length must equal k".into(),
            ));
        }
        let columns = (1..=(1usize << k)).map(|i| vertex(i, k)).collect();
        Ok(DiophantineSystem { k, columns, rhs, d })
    }

    /// Entry in row `r` (0-based) and column `i` (1-based).
    pub fn entry(&self, r: usize, i: usize) -> i32 {
        self.columns[i - 1][r]
    }

    /// Number of nonnegative solutions.
    pub fn count(&self) -> u128 {
        count_dp(&self.columns, &self.rhs, 2 * self.d)
    }
}

/// A counted coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesCoeff {
    /// Number of equations.
    pub k: usize,
    /// Half of the total weight.
    pub d: usize,
    /// The count.
    pub value: u128,
}

fn encode(w: usize, sums: &[i32], off: i32) -> u64 {
    let mut key = w as u64;
    for &s in sums {
        key = (key << 8) | (s + off) as u64;
    }
    key
}

fn count_dp(columns: &[Vec<i32>], rhs: &[i32], weight: usize) -> u128 {
    let k = rhs.len();
    let off = weight as i32 + 1;
    assert!(2 * off < 256 && k <= 7, "state does not fit the packed key");
    let n = columns.len();
    // state: (used weight, running sums) -> count
    let mut states: HashMap<u64, (usize, Vec<i32>, u128)> = HashMap::new();
    states.insert(encode(0, &vec![0; k], off), (0, vec![0; k], 1));
    for (col_idx, col) in columns.iter().enumerate() {
        let last = col_idx + 1 == n;
        let mut next: HashMap<u64, (usize, Vec<i32>, u128)> =
            HashMap::with_capacity(states.len() * 2);
        for (_, (w, sums, cnt)) in states {
            let room = weight - w;
            let range: Vec<usize> = if last {
                vec![room]
            } else {
                (0..=room).collect()
            };
            for p in range {
                let nw = w + p;
                let left = (weight - nw) as i32;
                let ns: Vec<i32> = sums
                    .iter()
                    .zip(col)
                    .map(|(s, v)| s + v * p as i32)
                    .collect();
                if ns.iter().zip(rhs).any(|(s, c)| (s - c).abs() > left) {
                    continue;
                }
                let key = encode(nw, &ns, off);
                next.entry(key)
                    .and_modify(|e| e.2 += cnt)
                    .or_insert((nw, ns, cnt));
            }
        }
        states = next;
    }
    states
        .into_values()
        .filter(|(w, sums, _)| *w == weight && sums.as_slice() == rhs)
        .map(|(_, _, c)| c)
        .sum()
}

/// Number of solutions `p ≥ 0` of weight `2d` with `V·p = c` (entries of `c` even).
pub fn count_solutions(k: usize, d: usize, c: &[i32]) -> Result<u128> {
    if c.len() != k {
        return Err(Error::PreconditionViolated(
            "right-hand side length must equal k".into(),
        ));
    }
    if c.iter().any(|x| x % 2 != 0) {
        return Err(Error::PreconditionViolated(
            "right-hand side entries must be even".into(),
        ));
    }
    Ok(DiophantineSystem::hypercube(k, d, c.to_vec())?.count())
}

/// `m_d(k)`: the number of solutions of `S_k` of weight `2d`.
pub fn g_coeff(k: usize, d: usize) -> Result<SeriesCoeff> {
    let value = count_solutions(k, d, &vec![0; k])?;
    Ok(SeriesCoeff { k, d, value })
}

/// Coefficient of `q^{2d}` in `W_k(q)` by inclusion–exclusion over shifted systems.
pub fn w_coeff(k: usize, d: usize) -> Result<SeriesCoeff> {
    let terms: Vec<Result<i128>> = (0..(1usize << k))
        .into_par_iter()
        .map(|mask| {
            let c: Vec<i32> = (0..k)
                .map(|j| if mask >> j & 1 == 1 { -2 } else { 0 })
                .collect();
            let n = count_solutions(k, d, &c)? as i128;
            Ok(if mask.count_ones() % 2 == 1 { -n } else { n })
        })
        .collect();
    let mut total: i128 = 0;
    for t in terms {
        total += t?;
    }
    if total < 0 {
        return Err(Error::PreconditionViolated(format!(
            "negative W coefficient {total}"
        )));
    }
    Ok(SeriesCoeff {
        k,
        d,
        value: total as u128,
    })
}

/// One row of a series comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareRow {
    /// Power of `q`.
    pub degree: usize,
    /// Oracle count (zero at odd degrees).
    pub oracle: String,
    /// Coefficient of the closed form.
    pub closed: String,
    /// Whether the two agree.
    pub ok: bool,
}

/// Result of comparing a closed form against the oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareReport {
    /// Per-degree table.
    pub rows: Vec<CompareRow>,
    /// First mismatching degree, if any.
    pub first_mismatch: Option<usize>,
}

impl CompareReport {
    /// True when every row agrees.
    pub fn ok(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Oracle values `[q^{2d}]` for `d = 0..=dmax` of `G_k` (or `W_k` when `sdd`).
pub fn oracle_table(k: usize, dmax: usize, sdd: bool) -> Result<Vec<u128>> {
    let rows: Vec<Result<u128>> = (0..=dmax)
        .into_par_iter()
        .map(|d| {
            Ok(if sdd {
                w_coeff(k, d)?.value
            } else {
                g_coeff(k, d)?.value
            })
        })
        .collect();
    rows.into_iter().collect()
}

/// Expands `f(q)` to degree `2*dmax` and compares with the oracle.
pub fn series_compare(f: &EllRational, k: usize, dmax: usize, sdd: bool) -> Result<CompareReport> {
    let series = f.series(Q, 2 * dmax)?;
    let table = oracle_table(k, dmax, sdd)?;
    let mut rows = Vec::new();
    let mut first = None;
    for (deg, c) in series.iter().enumerate() {
        let oracle = if deg % 2 == 0 {
            BigRat::from_bigint(table[deg / 2].into())
        } else {
            BigRat::zero()
        };
        let ok = &oracle == c;
        if !ok && first.is_none() {
            first = Some(deg);
        }
        rows.push(CompareRow {
            degree: deg,
            oracle: oracle.to_string(),
            closed: c.to_string(),
            ok,
        });
    }
    Ok(CompareReport {
        rows,
        first_mismatch: first,
    })
}

/// Minimal solutions of weight at most `2*dmax`, grouped into orbits of `B_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalCensus {
    /// Number of equations.
    pub k: usize,
    /// Weight bound (half).
    pub dmax: usize,
    /// All minimal solutions found, sorted.
    pub solutions: Vec<Vec<u32>>,
    /// Orbits as (lexicographically least member, size).
    pub orbits: Vec<(Vec<u32>, usize)>,
}

fn enumerate_solutions(k: usize, weight: usize) -> Vec<Vec<u32>> {
    let n = 1usize << k;
    let cols: Vec<Vec<i32>> = (1..=n).map(|i| vertex(i, k)).collect();
    let mut out = Vec::new();
    let mut p = vec![0u32; n];
    let mut sums = vec![0i32; k];
    fn rec(
        i: usize,
        left: usize,
        cols: &[Vec<i32>],
        p: &mut Vec<u32>,
        sums: &mut Vec<i32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if sums.iter().any(|s| s.unsigned_abs() as usize > left) {
            return;
        }
        if i + 1 == cols.len() {
            p[i] = left as u32;
            let ok = sums
                .iter()
                .zip(&cols[i])
                .all(|(s, v)| s + v * left as i32 == 0);
            if ok {
                out.push(p.clone());
            }
            p[i] = 0;
            return;
        }
        for x in 0..=left {
            for (s, v) in sums.iter_mut().zip(&cols[i]) {
                *s += v * x as i32;
            }
            p[i] = x as u32;
            rec(i + 1, left - x, cols, p, sums, out);
            for (s, v) in sums.iter_mut().zip(&cols[i]) {
                *s -= v * x as i32;
            }
        }
        p[i] = 0;
    }
    rec(0, weight, &cols, &mut p, &mut sums, &mut out);
    out
}

/// Solutions of weight `≤ 2*dmax` that are not sums of two nonzero solutions, with
/// their orbits under the hyperoctahedral group. Completeness of the Hilbert basis
/// beyond the weight bound is not claimed.
pub fn find_minimal(k: usize, dmax: usize) -> Result<MinimalCensus> {
    if !(1..=5).contains(&k) {
        return Err(Error::Unsupported(format!(
            "minimal-solution search needs 1 <= k <= 5, got {k}"
        )));
    }
    let mut minimal: Vec<Vec<u32>> = Vec::new();
    for d in 1..=dmax {
        let level: Vec<Vec<u32>> = enumerate_solutions(k, 2 * d)
            .into_par_iter()
            .filter(|p| !minimal.iter().any(|s| s.iter().zip(p).all(|(a, b)| a <= b)))
            .collect();
        minimal.extend(level);
    }
    minimal.sort();
    let group = GroupElement::all(k);
    let n = 1usize << k;
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
    let mut orbits: Vec<(Vec<u32>, usize)> = Vec::new();
    for p in &minimal {
        if seen.contains_key(p) {
            continue;
        }
        let mut members: Vec<Vec<u32>> = group
            .iter()
            .map(|g| {
                let mut img = vec![0u32; n];
                for i in 1..=n {
                    img[act_index(g, i, k) - 1] = p[i - 1];
                }
                img
            })
            .collect();
        members.sort();
        members.dedup();
        let idx = orbits.len();
        for m in &members {
            seen.insert(m.clone(), idx);
        }
        orbits.push((members[0].clone(), members.len()));
    }
    Ok(MinimalCensus {
        k,
        dmax,
        solutions: minimal,
        orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive enumeration of compositions, independent of the dynamic program.
    fn brute(k: usize, d: usize, c: &[i32]) -> u128 {
        let n = 1usize << k;
        let cols: Vec<Vec<i32>> = (1..=n).map(|i| vertex(i, k)).collect();
        let mut count = 0u128;
        let mut p = vec![0usize; n];
        fn go(
            i: usize,
            left: usize,
            p: &mut Vec<usize>,
            cols: &[Vec<i32>],
            c: &[i32],
            count: &mut u128,
        ) {
            if i + 1 == p.len() {
                p[i] = left;
                let ok = (0..c.len())
                    .all(|r| (0..p.len()).map(|j| cols[j][r] * p[j] as i32).sum::<i32>() == c[r]);
                if ok {
                    *count += 1;
                }
                return;
            }
            for x in 0..=left {
                p[i] = x;
                go(i + 1, left - x, p, cols, c, count);
            }
        }
        go(0, 2 * d, &mut p, &cols, c, &mut count);
        count
    }

    #[test]
    fn dp_matches_exhaustive_enumeration() {
        assert_eq!(brute(3, 1, &[0, 0, 0]), 4);
        assert_eq!(brute(3, 2, &[0, 0, 0]), 12);
        for (k, d) in [(2, 3), (3, 1), (3, 2), (3, 3)] {
            assert_eq!(
                count_solutions(k, d, &vec![0; k]).unwrap(),
                brute(k, d, &vec![0; k])
            );
            let c: Vec<i32> = (0..k).map(|j| if j == 0 { -2 } else { 0 }).collect();
            assert_eq!(count_solutions(k, d, &c).unwrap(), brute(k, d, &c));
        }
    }

    #[test]
    fn known_small_values() {
        for d in 0..6 {
            assert_eq!(g_coeff(2, d).unwrap().value, d as u128 + 1);
            assert_eq!(w_coeff(2, d).unwrap().value, 1);
        }
        assert_eq!(g_coeff(4, 1).unwrap().value, 8);
        assert_eq!(w_coeff(3, 1).unwrap().value, 0);
        assert_eq!(w_coeff(3, 2).unwrap().value, 1);
        assert_eq!(w_coeff(4, 3).unwrap().value, 4);
    }

    #[test]
    fn minimal_solutions_small_k() {
        let m2 = find_minimal(2, 3).unwrap();
        assert_eq!(m2.solutions.len(), 2);
        let m3 = find_minimal(3, 3).unwrap();
        // four pair solutions and two quadruple solutions
        assert_eq!(m3.solutions.len(), 6);
        let mut sizes: Vec<usize> = m3.orbits.iter().map(|o| o.1).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
    }
}
