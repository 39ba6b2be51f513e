//! Brute-force map enumeration: sum N^(V - E + F) over all perfect matchings
//! of labelled half-edges, then take the formal log in the couplings.

use crate::algebra::rat::{ri, Rat};
use crate::series::partition::partitions_with;
use crate::series::Partition;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

pub const DEFAULT_ORACLE_CAP: u32 = 8;
pub const HARD_ORACLE_CAP: u32 = 10;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("matching has a fixed point at half-edge {0}")]
    FixedPoint(usize),
    #[error("oracle cap exceeded: {cap} > {limit}")]
    CapExceeded { cap: u32, limit: u32 },
}

/// Vertex valencies, one entry per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexConfig {
    pub valencies: Vec<u32>,
    pub total_halfedges: u32,
}

impl VertexConfig {
    pub fn from_partition(p: &Partition) -> VertexConfig {
        let mut valencies = p.parts();
        valencies.reverse();
        let total_halfedges = valencies.iter().sum();
        VertexConfig { valencies, total_halfedges }
    }
    /// One cycle per vertex over contiguous labels.
    pub fn rotation(&self) -> Vec<usize> {
        let mut rot = Vec::with_capacity(self.total_halfedges as usize);
        let mut start = 0;
        for &v in &self.valencies {
            let v = v as usize;
            for i in 0..v {
                rot.push(start + (i + 1) % v);
            }
            start += v;
        }
        rot
    }
    /// Vertex index owning each half-edge.
    pub fn owner(&self) -> Vec<usize> {
        let mut own = Vec::new();
        for (i, &v) in self.valencies.iter().enumerate() {
            own.extend(std::iter::repeat(i).take(v as usize));
        }
        own
    }
}

/// Cycles of rotation o matching, that is the faces of the ribbon graph.
pub fn faces_of_matching(rotation: &[usize], matching: &[usize]) -> Result<usize, OracleError> {
    let n = rotation.len();
    for (i, &j) in matching.iter().enumerate() {
        if j == i {
            return Err(OracleError::FixedPoint(i));
        }
        assert_eq!(matching[j], i, "matching is not an involution");
    }
    let mut seen = vec![false; n];
    let mut faces = 0;
    for i in 0..n {
        if seen[i] {
            continue;
        }
        faces += 1;
        let mut k = i;
        while !seen[k] {
            seen[k] = true;
            k = rotation[matching[k]];
        }
    }
    Ok(faces)
}

/// Visit all perfect matchings, pairing the lowest free label first.
fn for_each_matching(n: usize, f: &mut impl FnMut(&[usize])) -> u64 {
    fn rec(m: &mut Vec<usize>, f: &mut impl FnMut(&[usize]), count: &mut u64) {
        let n = m.len();
        match (0..n).find(|&i| m[i] == usize::MAX) {
            None => {
                *count += 1;
                f(m);
            }
            Some(i) => {
                for j in i + 1..n {
                    if m[j] == usize::MAX {
                        m[i] = j;
                        m[j] = i;
                        rec(m, f, count);
                        m[i] = usize::MAX;
                        m[j] = usize::MAX;
                    }
                }
            }
        }
    }
    let mut m = vec![usize::MAX; n];
    let mut count = 0;
    if n % 2 == 0 {
        rec(&mut m, f, &mut count);
    }
    count
}

fn double_factorial_odd(k: u64) -> u64 {
    (1..=k).map(|i| 2 * i - 1).product()
}

/// Laurent polynomial in N.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LaurentN {
    pub c: BTreeMap<i32, Rat>,
}

impl LaurentN {
    pub fn constant(x: Rat) -> LaurentN {
        let mut l = LaurentN::default();
        l.add_term(0, x);
        l
    }
    pub fn add_term(&mut self, e: i32, x: Rat) {
        let slot = self.c.entry(e).or_insert_with(Rat::zero);
        *slot += x;
        if slot.is_zero() {
            self.c.remove(&e);
        }
    }
    pub fn coeff(&self, e: i32) -> Rat {
        self.c.get(&e).cloned().unwrap_or_else(Rat::zero)
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn add(&self, o: &LaurentN) -> LaurentN {
        let mut r = self.clone();
        for (e, x) in &o.c {
            r.add_term(*e, x.clone());
        }
        r
    }
    pub fn scale(&self, k: &Rat) -> LaurentN {
        let mut r = LaurentN::default();
        for (e, x) in &self.c {
            r.add_term(*e, x * k);
        }
        r
    }
    pub fn mul(&self, o: &LaurentN) -> LaurentN {
        let mut r = LaurentN::default();
        for (e1, x1) in &self.c {
            for (e2, x2) in &o.c {
                r.add_term(e1 + e2, x1 * x2);
            }
        }
        r
    }
}

/// Coefficient of a_lambda in Z: sum of N^chi over matchings divided by
/// prod m_j! j^m_j.
pub fn z_coefficient(p: &Partition) -> LaurentN {
    z_coefficient_restricted(p, |_, _| true)
}

/// As z_coefficient, keeping only matchings whose every edge passes `allow`
/// (called with the owning vertex indices of both ends).
fn z_coefficient_restricted(p: &Partition, allow: impl Fn(usize, usize) -> bool) -> LaurentN {
    let cfg = VertexConfig::from_partition(p);
    if cfg.total_halfedges % 2 == 1 {
        return LaurentN::default();
    }
    let rot = cfg.rotation();
    let own = cfg.owner();
    let v = cfg.valencies.len() as i32;
    let e = (cfg.total_halfedges / 2) as i32;
    let mut hist: BTreeMap<i32, i64> = BTreeMap::new();
    let count = for_each_matching(cfg.total_halfedges as usize, &mut |m| {
        if (0..m.len()).all(|i| allow(own[i], own[m[i]])) {
            let f = faces_of_matching(&rot, m).expect("perfect matching") as i32;
            let chi = v - e + f;
            // each component contributes at most 2
            assert!((e == 0 || f >= 1) && chi <= 2 * v.max(1) && chi % 2 == 0, "Euler characteristic {chi}");
            *hist.entry(chi).or_insert(0) += 1;
        }
    });
    assert_eq!(count, double_factorial_odd(e as u64), "matching count");
    let sym = p.symmetry_factor();
    let mut out = LaurentN::default();
    for (chi, k) in hist {
        out.add_term(chi, ri(k) / &sym);
    }
    out
}

/// Split check: with lambda1, lambda2 sharing no part, the matchings that
/// never join the two vertex groups contribute z(lambda1) z(lambda2).
pub fn split_consistency(l1: &Partition, l2: &Partition) -> bool {
    assert!(l1.pairs().iter().all(|&(j, _)| l2.mult(j) == 0), "parts must be disjoint");
    let p = l1.mul(l2);
    let cfg = VertexConfig::from_partition(&p);
    // vertices are listed by ascending valency; tag each by membership
    let in_first: Vec<bool> = cfg.valencies.iter().map(|&j| l1.mult(j) > 0).collect();
    let restricted = z_coefficient_restricted(&p, |a, b| in_first[a] == in_first[b]);
    restricted == z_coefficient(l1).mul(&z_coefficient(l2))
}

/// Connected coefficients c_{lambda, g} for weight <= cap, via log Z.
pub fn connected_coefficients(weight_cap: u32, allow_extended: bool) -> Result<BTreeMap<(Partition, u32), Rat>, OracleError> {
    let limit = if allow_extended { HARD_ORACLE_CAP } else { DEFAULT_ORACLE_CAP };
    if weight_cap > limit {
        return Err(OracleError::CapExceeded { cap: weight_cap, limit });
    }
    let vars: Vec<u32> = (1..=weight_cap).collect();
    let mut z: BTreeMap<Partition, LaurentN> = BTreeMap::new();
    for p in partitions_with(&vars, 1, weight_cap) {
        let c = z_coefficient(&p);
        if !c.is_zero() {
            z.insert(p, c);
        }
    }
    // log(1 + X) with X = Z - 1
    let mul = |a: &BTreeMap<Partition, LaurentN>, b: &BTreeMap<Partition, LaurentN>| {
        let mut out: BTreeMap<Partition, LaurentN> = BTreeMap::new();
        for (p1, c1) in a {
            for (p2, c2) in b {
                if p1.weight() + p2.weight() <= weight_cap {
                    let e = out.entry(p1.mul(p2)).or_default();
                    *e = e.add(&c1.mul(c2));
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    let mut log: BTreeMap<Partition, LaurentN> = BTreeMap::new();
    let mut pw = z.clone();
    let mut k = 1i64;
    while !pw.is_empty() {
        let sign = if k % 2 == 1 { Rat::one() } else { -Rat::one() };
        for (p, c) in &pw {
            let e = log.entry(p.clone()).or_default();
            *e = e.add(&c.scale(&(sign.clone() / ri(k))));
        }
        pw = mul(&pw, &z);
        k += 1;
    }
    let mut out = BTreeMap::new();
    for (p, c) in log {
        for (e, x) in c.c {
            assert!(e <= 2 && e % 2 == 0, "connected term with N^{e}");
            assert!(x > Rat::zero(), "negative connected count");
            out.insert((p.clone(), ((2 - e) / 2) as u32), x);
        }
    }
    Ok(out)
}

/// Connected coefficients by testing each matching for connectivity; an
/// independent route to the genus-0 slice used in tests.
pub fn connected_by_traversal(p: &Partition) -> LaurentN {
    let cfg = VertexConfig::from_partition(p);
    if cfg.total_halfedges % 2 == 1 || cfg.valencies.is_empty() {
        return LaurentN::default();
    }
    let rot = cfg.rotation();
    let own = cfg.owner();
    let nv = cfg.valencies.len();
    let v = nv as i32;
    let e = (cfg.total_halfedges / 2) as i32;
    let mut hist: BTreeMap<i32, i64> = BTreeMap::new();
    for_each_matching(cfg.total_halfedges as usize, &mut |m| {
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for i in 0..m.len() {
            let (a, b) = (find(&mut parent, own[i]), find(&mut parent, own[m[i]]));
            parent[a] = b;
        }
        let root = find(&mut parent, 0);
        if (0..nv).all(|x| find(&mut parent, x) == root) {
            let f = faces_of_matching(&rot, m).expect("perfect matching") as i32;
            *hist.entry(v - e + f).or_insert(0) += 1;
        }
    });
    let sym = p.symmetry_factor();
    let mut out = LaurentN::default();
    for (chi, k) in hist {
        out.add_term(chi, ri(k) / &sym);
    }
    out
}

pub fn genus0(map: &BTreeMap<(Partition, u32), Rat>) -> BTreeMap<Partition, Rat> {
    map.iter().filter(|((_, g), _)| *g == 0).map(|((p, _), c)| (p.clone(), c.clone())).collect()
}

pub fn to_json(map: &BTreeMap<(Partition, u32), Rat>) -> serde_json::Value {
    serde_json::Value::Array(
        map.iter()
            .map(|((p, g), c)| serde_json::json!({"partition": p.to_json(), "genus": g, "coefficient": c.to_string()}))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn face_counts() {
        assert_eq!(faces_of_matching(&[1, 0], &[1, 0]).unwrap(), 2);
        let rot = [1, 2, 3, 0];
        assert_eq!(faces_of_matching(&rot, &[2, 3, 0, 1]).unwrap(), 1);
        assert_eq!(faces_of_matching(&rot, &[1, 0, 3, 2]).unwrap(), 3);
        assert!(faces_of_matching(&[0], &[0]).is_err());
    }

    #[test]
    fn low_weight() {
        assert_eq!(z_coefficient(&Partition::empty()), LaurentN::constant(ri(1)));
        let c = connected_coefficients(4, false).unwrap();
        assert_eq!(c[&(Partition::from_parts(&[2]), 0)], rat(1, 2));
        assert_eq!(c[&(Partition::from_parts(&[1, 1]), 0)], rat(1, 2));
        assert_eq!(c[&(Partition::from_parts(&[4]), 0)], rat(1, 2));
        assert_eq!(c[&(Partition::from_parts(&[2, 2]), 0)], rat(1, 4));
        assert!(connected_coefficients(12, true).is_err());
    }
}
