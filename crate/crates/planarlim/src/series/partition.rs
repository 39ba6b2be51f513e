//! Monomials prod a_j^{m_j}, stored as a dense multiplicity vector indexed by
//! j - 1 with trailing zeros removed (so equality and order are canonical).

use crate::algebra::rat::{factorial, ri, Rat};
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    m: Vec<u8>,
}

impl Partition {
    pub fn empty() -> Partition {
        Partition { m: vec![] }
    }
    /// The monomial a_j.
    pub fn single(j: u32) -> Partition {
        Partition::from_pairs(&[(j, 1)])
    }
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Partition {
        let mut m = Vec::new();
        for &(j, k) in pairs {
            assert!(j >= 1, "variables are a_1, a_2, ...");
            let i = (j - 1) as usize;
            if m.len() <= i {
                m.resize(i + 1, 0);
            }
            m[i] += k as u8;
        }
        let mut p = Partition { m };
        p.trim();
        p
    }
    /// Parts listed with repetition, e.g. [4, 4, 3].
    pub fn from_parts(parts: &[u32]) -> Partition {
        Partition::from_pairs(&parts.iter().map(|&j| (j, 1)).collect::<Vec<_>>())
    }
    fn trim(&mut self) {
        while self.m.last() == Some(&0) {
            self.m.pop();
        }
    }
    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }
    /// (j, m_j) with m_j >= 1, ascending j.
    pub fn pairs(&self) -> Vec<(u32, u32)> {
        self.m
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| (i as u32 + 1, k as u32))
            .collect()
    }
    /// Parts with repetition in descending order.
    pub fn parts(&self) -> Vec<u32> {
        let mut v = Vec::new();
        for (j, k) in self.pairs().into_iter().rev() {
            for _ in 0..k {
                v.push(j);
            }
        }
        v
    }
    pub fn mult(&self, j: u32) -> u32 {
        self.m.get((j - 1) as usize).copied().unwrap_or(0) as u32
    }
    pub fn weight(&self) -> u32 {
        self.m.iter().enumerate().map(|(i, &k)| (i as u32 + 1) * k as u32).sum()
    }
    pub fn num_parts(&self) -> u32 {
        self.m.iter().map(|&k| k as u32).sum()
    }
    pub fn max_part(&self) -> u32 {
        self.m.len() as u32
    }
    pub fn mul(&self, o: &Partition) -> Partition {
        let n = self.m.len().max(o.m.len());
        let mut m = vec![0u8; n];
        for (i, slot) in m.iter_mut().enumerate() {
            *slot = self.m.get(i).copied().unwrap_or(0) + o.m.get(i).copied().unwrap_or(0);
        }
        Partition { m }
    }
    /// Remove one copy of a_j, if present.
    pub fn without(&self, j: u32) -> Option<Partition> {
        let i = (j - 1) as usize;
        if self.m.get(i).copied().unwrap_or(0) == 0 {
            return None;
        }
        let mut p = self.clone();
        p.m[i] -= 1;
        p.trim();
        Some(p)
    }
    pub fn all_even(&self) -> bool {
        self.pairs().iter().all(|(j, _)| j % 2 == 0)
    }
    /// prod m_j! j^{m_j}
    pub fn symmetry_factor(&self) -> Rat {
        let mut acc = ri(1);
        for (j, k) in self.pairs() {
            acc *= Rat::from_integer(factorial(k as u64)) * ri((j as i64).pow(k));
        }
        acc
    }
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.pairs().iter().map(|&(j, k)| vec![j, k]).collect::<Vec<_>>())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self
            .pairs()
            .iter()
            .map(|&(j, k)| if k == 1 { format!("a{j}") } else { format!("a{j}^{k}") })
            .collect();
        write!(f, "{}", s.join("*"))
    }
}

/// All partitions with weight in [lo, hi] using parts from `allowed`.
pub fn partitions_with(allowed: &[u32], lo: u32, hi: u32) -> Vec<Partition> {
    fn rec(allowed: &[u32], start: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(cur.clone());
        for i in start..allowed.len() {
            let j = allowed[i];
            if j <= left {
                cur.push(j);
                rec(allowed, i, left - j, cur, out);
                cur.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(allowed, 0, hi, &mut Vec::new(), &mut raw);
    let mut out: Vec<Partition> = raw
        .into_iter()
        .map(|v| Partition::from_parts(&v))
        .filter(|p| p.weight() >= lo)
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical() {
        let a = Partition::from_parts(&[3, 1, 3]);
        let b = Partition::from_pairs(&[(1, 1), (3, 2)]);
        assert_eq!(a, b);
        assert_eq!(a.weight(), 7);
        assert_eq!(a.to_string(), "a1*a3^2");
        assert_eq!(a.symmetry_factor(), ri(2 * 9));
        assert_eq!(partitions_with(&[1, 2, 3, 4], 4, 4).len(), 5);
    }
}
