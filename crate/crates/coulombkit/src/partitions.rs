//! Integer partitions: generation, transpose, and dominance comparison.

use serde::Serialize;

/// Weakly decreasing positive parts. The derived ordering (lexicographic on
/// the part lists) is only used for deterministic sorting.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    /// Canonicalize arbitrary nonnegative parts: drop zeros, sort decreasing.
    pub fn new(mut parts: Vec<u32>) -> Partition {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Conjugate partition: column lengths of the row diagram.
    pub fn transpose(&self) -> Partition {
        let rows = self.0.first().copied().unwrap_or(0) as usize;
        let mut t = Vec::with_capacity(rows);
        for j in 0..rows {
            t.push(self.0.iter().take_while(|&&p| p as usize > j).count() as u32);
        }
        Partition(t)
    }

    /// Multiplicity of each part size, as (size, count) pairs, largest first.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((size, count)) if *size == p => *count += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

/// All partitions of exactly `n`, first parts decreasing.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(remaining: u32, max_part: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        let mut p = max_part.min(remaining);
        while p >= 1 {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
            p -= 1;
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions with sum at most `n`, grouped by increasing sum.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// `counts[m]` = number of partitions of `m`, for `m <= n`; saturating.
/// Cheap size guard to run before materializing partition lists.
pub fn partition_counts(n: u32) -> Vec<u64> {
    let n = n as usize;
    let mut dp = vec![0u64; n + 1];
    dp[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            dp[m] = dp[m].saturating_add(dp[m - part]);
        }
    }
    dp
}

/// Dominance comparison for partitions of the same number: `a <= b` when
/// every prefix sum of `a` is at most the matching prefix sum of `b`.
/// Returns `None` when the sums differ (the order is undefined there).
pub fn dominance_leq(a: &Partition, b: &Partition) -> Option<bool> {
    if a.sum() != b.sum() {
        return None;
    }
    let mut pa: u64 = 0;
    let mut pb: u64 = 0;
    for k in 0..a.len().max(b.len()) {
        pa += a.0.get(k).copied().unwrap_or(0) as u64;
        pb += b.0.get(k).copied().unwrap_or(0) as u64;
        if pa > pb {
            return Some(false);
        }
    }
    Some(true)
}
