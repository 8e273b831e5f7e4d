use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

/// Integer partition stored as weakly decreasing positive parts.
pub type Partition = Vec<usize>;

/// All partitions of `n`, lexicographically descending (`[n]` first).
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Partition, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` with at most `max_parts` parts.
pub fn partitions_with_at_most(n: usize, max_parts: usize) -> Vec<Partition> {
    partitions(n).into_iter().filter(|p| p.len() <= max_parts).collect()
}

/// Canonical order on the groups of a Segre symbol: larger sum first, then
/// lexicographically larger first.
fn group_order(a: &Partition, b: &Partition) -> Ordering {
    let (sa, sb): (usize, usize) = (a.iter().sum(), b.iter().sum());
    sb.cmp(&sa).then_with(|| b.cmp(a))
}

/// Multiset of Jordan block-size partitions, one per distinct eigenvalue,
/// with the eigenvalues themselves forgotten.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct SegreSymbol {
    groups: Vec<Partition>,
}

impl SegreSymbol {
    /// Canonicalizes: parts sorted descending, empty groups dropped, groups
    /// sorted by the canonical group order.
    pub fn new(groups: Vec<Partition>) -> Self {
        let mut groups: Vec<Partition> = groups
            .into_iter()
            .filter(|g| !g.is_empty())
            .map(|mut g| {
                g.retain(|&p| p > 0);
                g.sort_unstable_by(|a, b| b.cmp(a));
                g
            })
            .collect();
        groups.sort_by(group_order);
        SegreSymbol { groups }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn groups(&self) -> &[Partition] {
        &self.groups
    }

    /// Number of distinct eigenvalues.
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn total(&self) -> usize {
        self.groups.iter().flatten().sum()
    }

    /// `[(1…1)]`: a single eigenvalue whose blocks all have size one.
    pub fn is_scalar(&self) -> bool {
        self.groups.len() == 1 && self.groups[0].iter().all(|&p| p == 1)
    }

    /// Every Jordan block has size one.
    pub fn is_diagonalizable(&self) -> bool {
        self.groups.iter().flatten().all(|&p| p == 1)
    }
}

impl fmt::Display for SegreSymbol {
    /// Conventional notation, e.g. `[(21)1]`; parts are comma-separated when
    /// any part has more than one digit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.groups.iter().flatten().any(|&p| p >= 10);
        let sep = if wide { "," } else { "" };
        let rendered: Vec<String> = self
            .groups
            .iter()
            .map(|g| {
                let parts: Vec<String> = g.iter().map(ToString::to_string).collect();
                if g.len() == 1 {
                    parts[0].clone()
                } else {
                    format!("({})", parts.join(sep))
                }
            })
            .collect();
        write!(f, "[{}]", rendered.join(sep))
    }
}

impl fmt::Debug for SegreSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Every Segre symbol of total size `n`, each in canonical form, without
/// duplicates. `n = 0` yields the single empty symbol.
pub fn segre_enumerate(n: usize) -> Vec<SegreSymbol> {
    let mut pool: Vec<Partition> = (1..=n).flat_map(partitions).collect();
    pool.sort_by(group_order);

    fn go(pool: &[Partition], start: usize, rest: usize, cur: &mut Vec<Partition>, out: &mut Vec<SegreSymbol>) {
        if rest == 0 {
            out.push(SegreSymbol { groups: cur.clone() });
            return;
        }
        for k in start..pool.len() {
            let size: usize = pool[k].iter().sum();
            if size <= rest {
                cur.push(pool[k].clone());
                go(pool, k, rest - size, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&pool, 0, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn enumerates_small_cases() {
        assert_eq!(segre_enumerate(1), vec![SegreSymbol::new(vec![vec![1]])]);
        let two: Vec<String> = segre_enumerate(2).iter().map(ToString::to_string).collect();
        assert_eq!(two, ["[2]", "[(11)]", "[11]"]);
        let three: HashSet<String> = segre_enumerate(3).iter().map(ToString::to_string).collect();
        let expect: HashSet<String> =
            ["[3]", "[21]", "[(21)]", "[111]", "[(11)1]", "[(111)]"].iter().map(|s| s.to_string()).collect();
        assert_eq!(three, expect);
        assert_eq!(segre_enumerate(0), vec![SegreSymbol::empty()]);
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        for n in 1..=7 {
            let all = segre_enumerate(n);
            let set: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(set.len(), all.len());
            for s in &all {
                assert_eq!(&SegreSymbol::new(s.groups().to_vec()), s);
                assert_eq!(s.total(), n);
            }
        }
    }

    #[test]
    fn canonical_form_ignores_input_order() {
        let a = SegreSymbol::new(vec![vec![1], vec![1, 2], vec![3]]);
        let b = SegreSymbol::new(vec![vec![2, 1], vec![3], vec![1]]);
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "[3(21)1]");
        assert_eq!(SegreSymbol::new(vec![vec![10, 2]]).to_string(), "[(10,2)]");
        assert!(SegreSymbol::new(vec![vec![1, 1, 1]]).is_scalar());
        assert!(!SegreSymbol::new(vec![vec![1], vec![1]]).is_scalar());
    }

    #[test]
    fn partitions_of_four() {
        assert_eq!(partitions(4), vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(partitions(0), vec![Vec::<usize>::new()]);
        assert_eq!(partitions_with_at_most(4, 2).len(), 3);
    }
}
