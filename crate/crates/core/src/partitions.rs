//! Partitions of l into at most k parts, each part at most m: the "box"
//! partitions that classify how a subset of Z_n^2 can distribute its
//! elements over rows. Counting is a memoized recursion; enumeration emits
//! partitions in lexicographically decreasing order.

use std::fmt;

/// A partition with weakly decreasing positive parts. Text form joins the
/// parts with '+': `6+5+2`; the empty partition renders as `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoxPartition {
    parts: Vec<u32>,
}

impl BoxPartition {
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Whether the partition fits in a k-by-m box: at most k parts, each at
    /// most m.
    pub fn satisfies(&self, k: usize, m: u32) -> bool {
        self.parts.len() <= k && self.parts.iter().all(|&p| p <= m)
    }
}

impl fmt::Display for BoxPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

fn count_rec(l: u32, k: usize, m: u32, memo: &mut Vec<Option<u128>>, km: (usize, u32)) -> u128 {
    if l == 0 {
        return 1;
    }
    if k == 0 || m == 0 {
        return 0;
    }
    let (kdim, mdim) = km;
    let idx = (l as usize * (kdim + 1) + k) * (mdim as usize + 1) + m as usize;
    if let Some(c) = memo[idx] {
        return c;
    }
    let mut total = 0u128;
    let top = m.min(l);
    for first in 1..=top {
        total += count_rec(l - first, k - 1, first.min(m), memo, km);
    }
    memo[idx] = Some(total);
    total
}

/// Number of partitions of l into at most k parts, each at most m.
pub fn count_box_partitions(l: u32, k: usize, m: u32) -> u128 {
    let memo_len = (l as usize + 1) * (k + 1) * (m as usize + 1);
    let mut memo = vec![None; memo_len];
    count_rec(l, k, m, &mut memo, (k, m))
}

fn enumerate_rec(l: u32, k: usize, m: u32, prefix: &mut Vec<u32>, out: &mut Vec<BoxPartition>) {
    if l == 0 {
        out.push(BoxPartition {
            parts: prefix.clone(),
        });
        return;
    }
    if k == 0 {
        return;
    }
    let top = m.min(l);
    for first in (1..=top).rev() {
        prefix.push(first);
        enumerate_rec(l - first, k - 1, first, prefix, out);
        prefix.pop();
    }
}

/// All box partitions of l, lexicographically decreasing (largest first
/// part first). The list length always equals `count_box_partitions`.
pub fn enumerate_box_partitions(l: u32, k: usize, m: u32) -> Vec<BoxPartition> {
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    enumerate_rec(l, k, m, &mut prefix, &mut out);
    out
}

/// Exact binomial coefficient C(n, k) in u128. The running product is an
/// exact binomial after every step, so the division never truncates.
pub fn choose(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * (n - k + i) as u128 / i as u128;
    }
    acc
}
