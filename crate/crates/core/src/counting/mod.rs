//! Counting of inequivalent true-tripartite classes.
//!
//! The number of classes of 2×M×N states is
//!
//! ```text
//! Ω(M,N) = Σ_{i=0}^{⌊(2M−N)/3⌋} Σ_{j=0}^{2M−N−3i} S(2M−N−3i−j) · F(j, i, i+N−M) − δ_{MN}
//! ```
//!
//! where `S(n)` counts Segre symbols of size `n` and `F(j, r, c)` counts the
//! admissible singular blocks. `S` comes from the generating function
//! `Π_{i≥1} (1 − x^i)^{−P(i)}`, and `F` from a recursion bottoming out in
//! restricted partition counts `f_n^(m)` (coefficients of `Π_{k=1}^m (1 − x^k)^{−1}`).

mod segre;
mod table;

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use segre::{partitions, partitions_with_at_most, segre_enumerate, Partition, SegreSymbol};
pub use table::{CountTable, REFERENCE_OMEGA};

/// Memoizing evaluator for every count in this module.
///
/// Caches live in the instance; the free functions below each use a fresh one.
#[derive(Debug, Default)]
pub struct Counter {
    segre: Vec<BigUint>,
    restricted: HashMap<(usize, usize), BigUint>,
    f_memo: HashMap<(usize, usize, usize), BigUint>,
}

impl Counter {
    pub fn new() -> Self {
        Self::default()
    }

    /// P(n), with P(0) = 1.
    pub fn partition_count(&mut self, n: usize) -> BigUint {
        self.restricted_partition_count(n, n)
    }

    /// f_n^(m): partitions of `n` into parts no larger than `m`.
    pub fn restricted_partition_count(&mut self, n: usize, m: usize) -> BigUint {
        if n == 0 {
            return BigUint::one();
        }
        if m == 0 {
            return BigUint::zero();
        }
        let m = m.min(n);
        if let Some(v) = self.restricted.get(&(n, m)) {
            return v.clone();
        }
        let mut series = vec![BigUint::zero(); n + 1];
        series[0] = BigUint::one();
        for k in 1..=m {
            for i in k..=n {
                let prev = series[i - k].clone();
                series[i] += prev;
            }
        }
        let v = series.swap_remove(n);
        self.restricted.insert((n, m), v.clone());
        v
    }

    /// S(n): coefficient of x^n in Π_{i=1}^{n} (1 − x^i)^{−P(i)}.
    pub fn segre_count(&mut self, n: usize) -> BigUint {
        if self.segre.len() <= n {
            self.segre = self.segre_series(n);
        }
        self.segre[n].clone()
    }

    fn segre_series(&mut self, n: usize) -> Vec<BigUint> {
        let mut series = vec![BigUint::zero(); n + 1];
        series[0] = BigUint::one();
        for i in 1..=n {
            // (1 − x^i)^{−P} = Σ_k C(P + k − 1, k) x^{ik}
            let p = self.partition_count(i);
            let mut factor = vec![BigUint::zero(); n / i + 1];
            factor[0] = BigUint::one();
            for k in 1..factor.len() {
                factor[k] = &factor[k - 1] * (&p + BigUint::from(k - 1)) / BigUint::from(k);
            }
            let mut next = vec![BigUint::zero(); n + 1];
            for (a, coeff) in series.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (k, fk) in factor.iter().enumerate() {
                    let idx = a + i * k;
                    if idx > n {
                        break;
                    }
                    next[idx] += coeff * fk;
                }
            }
            series = next;
        }
        series
    }

    /// F(j, r, c), the number of singular-block forms with rank excess `j`
    /// starting from row/column ranks `r` and `c`.
    pub fn f_recursive(&mut self, j: i64, r: usize, c: usize) -> BigUint {
        if j < 0 {
            return BigUint::zero();
        }
        let j = j as usize;
        if j == 0 {
            return BigUint::one();
        }
        if c == 0 {
            return self.restricted_partition_count(j, r);
        }
        if r == 0 {
            return self.restricted_partition_count(j, c);
        }
        if let Some(v) = self.f_memo.get(&(j, r, c)) {
            return v.clone();
        }
        let mut total = self.restricted_partition_count(j, r) + self.restricted_partition_count(j, c);
        for m in 1..=r {
            for n in 1..=c {
                total += self.f_recursive(j as i64 - (m + n) as i64, m, n);
            }
        }
        self.f_memo.insert((j, r, c), total.clone());
        total
    }

    /// ω(M, N; i, j) = S(2M−N−3i−j) · F(j, i, i+N−M).
    pub fn omega(&mut self, m: usize, n: usize, i: usize, j: usize) -> Result<BigUint> {
        if m < 2 || m > n || n > 2 * m {
            return Err(Error::DomainError(format!("omega needs 2 <= M <= N <= 2M, got M={m}, N={n}")));
        }
        let slack = 2 * m - n;
        if 3 * i > slack || j > slack - 3 * i {
            return Err(Error::DomainError(format!("omega({m},{n}) undefined at i={i}, j={j}")));
        }
        let s = self.segre_count(slack - 3 * i - j);
        Ok(s * self.f_recursive(j as i64, i, i + n - m))
    }

    /// Ω(M, N). Arguments are symmetrized; N beyond 2M is clamped to 2M since
    /// the third party's local rank cannot exceed 2M.
    pub fn omega_total(&mut self, m: usize, n: usize) -> Result<BigUint> {
        if m < 2 || n < 2 {
            return Err(Error::DomainError(format!("Omega needs M, N >= 2, got M={m}, N={n}")));
        }
        let (m, n_raw) = (m.min(n), m.max(n));
        let n = n_raw.min(2 * m);
        let slack = 2 * m - n;
        let mut total = BigUint::zero();
        for i in 0..=slack / 3 {
            for j in 0..=slack - 3 * i {
                total += self.omega(m, n, i, j)?;
            }
        }
        if m == n_raw {
            total -= BigUint::one();
        }
        Ok(total)
    }
}

pub fn partition_count(n: usize) -> BigUint {
    Counter::new().partition_count(n)
}

pub fn segre_count(n: usize) -> BigUint {
    Counter::new().segre_count(n)
}

pub fn restricted_partition_count(n: usize, m: usize) -> BigUint {
    Counter::new().restricted_partition_count(n, m)
}

pub fn f_recursive(j: i64, r: usize, c: usize) -> BigUint {
    Counter::new().f_recursive(j, r, c)
}

pub fn omega(m: usize, n: usize, i: usize, j: usize) -> Result<BigUint> {
    Counter::new().omega(m, n, i, j)
}

pub fn omega_total(m: usize, n: usize) -> Result<BigUint> {
    Counter::new().omega_total(m, n)
}

/// Ω for every `2 ≤ M ≤ max_m`, `2 ≤ N ≤ max_n`, plus the mirrored cells.
pub fn build_table(max_m: usize, max_n: usize) -> Result<CountTable> {
    if max_m < 2 || max_n < 2 {
        return Err(Error::DomainError("table bounds must be at least 2".into()));
    }
    let mut counter = Counter::new();
    let mut table = CountTable::new(max_m, max_n);
    for m in 2..=max_m {
        for n in 2..=max_n {
            let v = counter.omega_total(m, n)?;
            table.insert(m, n, v.clone());
            table.insert(n, m, v);
        }
    }
    Ok(table)
}
