use std::collections::BTreeMap;

use num_bigint::BigUint;

/// Known Ω(M, N) for 2 ≤ M, N ≤ 10; row index M − 2, column index N − 2.
pub const REFERENCE_OMEGA: [[u64; 9]; 9] = [
    [2, 2, 1, 1, 1, 1, 1, 1, 1],
    [2, 6, 5, 2, 1, 1, 1, 1, 1],
    [1, 5, 16, 12, 6, 2, 1, 1, 1],
    [1, 2, 12, 34, 28, 14, 6, 2, 1],
    [1, 1, 6, 28, 77, 61, 34, 15, 6],
    [1, 1, 2, 14, 61, 157, 133, 74, 36],
    [1, 1, 1, 6, 34, 133, 328, 277, 165],
    [1, 1, 1, 2, 15, 74, 277, 655, 572],
    [1, 1, 1, 1, 6, 36, 165, 572, 1309],
];

/// Ω values keyed by `(M, N)`; always closed under `(M, N) ↦ (N, M)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    max_m: usize,
    max_n: usize,
    cells: BTreeMap<(usize, usize), BigUint>,
}

impl CountTable {
    pub(crate) fn new(max_m: usize, max_n: usize) -> Self {
        CountTable { max_m, max_n, cells: BTreeMap::new() }
    }

    pub(crate) fn insert(&mut self, m: usize, n: usize, v: BigUint) {
        self.cells.insert((m, n), v);
    }

    pub fn max_m(&self) -> usize {
        self.max_m
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn get(&self, m: usize, n: usize) -> Option<&BigUint> {
        self.cells.get(&(m, n))
    }

    pub fn cells(&self) -> &BTreeMap<(usize, usize), BigUint> {
        &self.cells
    }

    /// `(M, N, computed, expected)` for every covered cell that disagrees
    /// with `reference` (indexed from M = N = 2).
    pub fn mismatches_against(&self, reference: &[[u64; 9]; 9]) -> Vec<(usize, usize, BigUint, u64)> {
        let mut out = Vec::new();
        for (m, row) in reference.iter().enumerate() {
            for (n, &expected) in row.iter().enumerate() {
                if let Some(v) = self.get(m + 2, n + 2) {
                    if *v != BigUint::from(expected) {
                        out.push((m + 2, n + 2, v.clone(), expected));
                    }
                }
            }
        }
        out
    }

    pub fn mismatches_against_reference(&self) -> Vec<(usize, usize, BigUint, u64)> {
        self.mismatches_against(&REFERENCE_OMEGA)
    }

    fn grid(&self) -> Vec<Vec<String>> {
        let mut rows = vec![std::iter::once("M\\N".to_string())
            .chain((2..=self.max_n).map(|n| n.to_string()))
            .collect::<Vec<_>>()];
        for m in 2..=self.max_m {
            let mut row = vec![m.to_string()];
            row.extend((2..=self.max_n).map(|n| self.get(m, n).map_or_else(String::new, ToString::to_string)));
            rows.push(row);
        }
        rows
    }

    /// Header row of N values, then one tab-separated row per M.
    pub fn to_tsv(&self) -> String {
        self.grid().iter().map(|r| r.join("\t") + "\n").collect()
    }

    /// Same layout as [`CountTable::to_tsv`] with right-aligned columns.
    pub fn to_text(&self) -> String {
        let grid = self.grid();
        let width = grid.iter().flatten().map(String::len).max().unwrap_or(1);
        grid.iter()
            .map(|r| r.iter().map(|c| format!("{c:>width$}")).collect::<Vec<_>>().join(" ") + "\n")
            .collect()
    }
}
