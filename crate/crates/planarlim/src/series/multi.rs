//! Multivariate series in a_1, a_2, ... truncated by a filtration degree.
//!
//! The default filtration is the weight sum j*m_j. The face filtration
//! sum (j-2)*m_j (variables a_j with j >= 3 only) truncates the same ring by
//! face degree in half units, which keeps face-graded computations small.

use super::partition::Partition;
use super::useries::USeries;
use super::SeriesError;
use crate::algebra::rat::{rat_pow, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filtration {
    /// sum j*m_j
    Weight,
    /// sum (j-2)*m_j, requires j >= 3
    Face,
}

impl Filtration {
    pub fn var_degree(&self, j: u32) -> u32 {
        match self {
            Filtration::Weight => j,
            Filtration::Face => {
                assert!(j >= 3, "face filtration has no a_1, a_2");
                j - 2
            }
        }
    }
    pub fn degree(&self, p: &Partition) -> u32 {
        p.pairs().iter().map(|&(j, k)| self.var_degree(j) * k).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Edge,
    Face,
}

#[derive(Clone, PartialEq)]
pub struct MultiSeries {
    terms: BTreeMap<Partition, Rat>,
    cap: u32,
    filt: Filtration,
}

impl std::fmt::Debug for MultiSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl MultiSeries {
    pub fn zero(cap: u32) -> MultiSeries {
        MultiSeries::zero_in(cap, Filtration::Weight)
    }
    pub fn zero_in(cap: u32, filt: Filtration) -> MultiSeries {
        MultiSeries { terms: BTreeMap::new(), cap, filt }
    }
    pub fn one(cap: u32) -> MultiSeries {
        MultiSeries::constant(cap, Filtration::Weight, Rat::one())
    }
    pub fn constant(cap: u32, filt: Filtration, c: Rat) -> MultiSeries {
        let mut s = MultiSeries::zero_in(cap, filt);
        s.add_term(Partition::empty(), c);
        s
    }
    /// The variable a_j.
    pub fn var(cap: u32, j: u32) -> MultiSeries {
        MultiSeries::var_in(cap, Filtration::Weight, j)
    }
    pub fn var_in(cap: u32, filt: Filtration, j: u32) -> MultiSeries {
        let mut s = MultiSeries::zero_in(cap, filt);
        s.add_term(Partition::single(j), Rat::one());
        s
    }
    pub fn weight_cap(&self) -> u32 {
        self.cap
    }
    pub fn filtration(&self) -> Filtration {
        self.filt
    }
    pub fn terms(&self) -> &BTreeMap<Partition, Rat> {
        &self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn degree(&self, p: &Partition) -> u32 {
        self.filt.degree(p)
    }
    /// Adds c * a_lambda unless it lies above the cap.
    pub fn add_term(&mut self, p: Partition, c: Rat) {
        if c.is_zero() || self.filt.degree(&p) > self.cap {
            return;
        }
        let slot = self.terms.entry(p.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&p);
        }
    }
    pub fn coefficient(&self, p: &Partition) -> Rat {
        self.terms.get(p).cloned().unwrap_or_else(Rat::zero)
    }
    fn check(&self, o: &MultiSeries) -> (u32, Filtration) {
        assert_eq!(self.filt, o.filt, "mixed filtrations");
        (self.cap.min(o.cap), self.filt)
    }
    pub fn add(&self, o: &MultiSeries) -> MultiSeries {
        let (cap, filt) = self.check(o);
        let mut r = MultiSeries::zero_in(cap, filt);
        for (p, c) in self.terms.iter().chain(o.terms.iter()) {
            r.add_term(p.clone(), c.clone());
        }
        r
    }
    pub fn sub(&self, o: &MultiSeries) -> MultiSeries {
        self.add(&o.scale(&-Rat::one()))
    }
    pub fn scale(&self, r: &Rat) -> MultiSeries {
        let mut out = MultiSeries::zero_in(self.cap, self.filt);
        if r.is_zero() {
            return out;
        }
        for (p, c) in &self.terms {
            out.terms.insert(p.clone(), c * r);
        }
        out
    }
    /// Truncating product; iterates the smaller operand in the outer loop.
    pub fn mul(&self, o: &MultiSeries) -> MultiSeries {
        let (cap, filt) = self.check(o);
        let (a, b) = if self.terms.len() <= o.terms.len() { (self, o) } else { (o, self) };
        let mut acc: BTreeMap<Partition, Rat> = BTreeMap::new();
        // bucket b by degree so the inner loop stops at the cap
        let mut by_deg: BTreeMap<u32, Vec<(&Partition, &Rat)>> = BTreeMap::new();
        for (p, c) in &b.terms {
            by_deg.entry(filt.degree(p)).or_default().push((p, c));
        }
        for (p1, c1) in &a.terms {
            let d1 = filt.degree(p1);
            if d1 > cap {
                continue;
            }
            for (_, items) in by_deg.range(..=cap - d1) {
                for (p2, c2) in items {
                    let k = p1.mul(p2);
                    *acc.entry(k).or_insert_with(Rat::zero) += c1 * *c2;
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MultiSeries { terms: acc, cap, filt }
    }
    pub fn pow(&self, k: u32) -> MultiSeries {
        let mut acc = MultiSeries::constant(self.cap, self.filt, Rat::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
    /// log of a series with constant term 1, by the log(1+X) sum; X has
    /// positive filtration degree so the sum stops at the cap.
    pub fn log(&self) -> Result<MultiSeries, SeriesError> {
        if self.coefficient(&Partition::empty()) != Rat::one() {
            return Err(SeriesError::LogConstantTerm);
        }
        let x = self.sub(&MultiSeries::constant(self.cap, self.filt, Rat::one()));
        let mut acc = MultiSeries::zero_in(self.cap, self.filt);
        let mut pw = x.clone();
        let mut k: i64 = 1;
        while !pw.is_empty() {
            let sign = if k % 2 == 1 { Rat::one() } else { -Rat::one() };
            acc = acc.add(&pw.scale(&(sign / Rat::from_integer(k.into()))));
            pw = pw.mul(&x);
            k += 1;
        }
        Ok(acc)
    }
    /// a_j <- value.
    pub fn substitute_scalar(&self, j: u32, value: &Rat) -> MultiSeries {
        let mut out = MultiSeries::zero_in(self.cap, self.filt);
        for (p, c) in &self.terms {
            let k = p.mult(j);
            if k == 0 {
                out.add_term(p.clone(), c.clone());
                continue;
            }
            let mut q = p.clone();
            for _ in 0..k {
                q = q.without(j).unwrap();
            }
            out.add_term(q, c * rat_pow(value, k as i64));
        }
        out
    }
    /// Keep only terms whose partitions satisfy `keep`.
    pub fn filter(&self, keep: impl Fn(&Partition) -> bool) -> MultiSeries {
        MultiSeries {
            terms: self.terms.iter().filter(|(p, _)| keep(p)).map(|(p, c)| (p.clone(), c.clone())).collect(),
            cap: self.cap,
            filt: self.filt,
        }
    }
    pub fn truncate(&self, cap: u32) -> MultiSeries {
        let mut s = self.filter(|p| self.filt.degree(p) <= cap);
        s.cap = cap.min(self.cap);
        s
    }
    /// Homogeneous component of the given filtration degree.
    pub fn component(&self, d: u32) -> MultiSeries {
        self.filter(|p| self.filt.degree(p) == d)
    }
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(p, c)| serde_json::json!({"partition": p.to_json(), "coeff": c.to_string()}))
                .collect(),
        )
    }
    /// Terms ordered by weight, then partition.
    pub fn sorted_terms(&self) -> Vec<(Partition, Rat)> {
        let mut v: Vec<(Partition, Rat)> = self.terms.iter().map(|(p, c)| (p.clone(), c.clone())).collect();
        v.sort_by(|a, b| (a.0.weight(), a.0.parts()).cmp(&(b.0.weight(), b.0.parts())));
        v
    }
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.sorted_terms()
            .iter()
            .map(|(p, c)| if p.is_empty() { c.to_string() } else { format!("{c}*{p}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Specialize a_j <- value(j) * t^{deg(a_j)} and return the series in t.
/// `u_cap` is the truncation in units of t^(1/2) (exclusive).
pub fn grade_specialize(
    s: &MultiSeries,
    grading: Grading,
    value: impl Fn(u32) -> Rat,
    u_cap: i64,
) -> Result<USeries, SeriesError> {
    let mut coeffs = vec![Rat::zero(); u_cap.max(0) as usize];
    for (p, c) in s.terms() {
        let mut v = c.clone();
        let mut deg: i64 = 0;
        for (j, k) in p.pairs() {
            let x = value(j);
            if grading == Grading::Face && j <= 2 {
                if x.is_zero() {
                    v = Rat::zero();
                    break;
                }
                return Err(SeriesError::FaceGradingLowVariables);
            }
            v *= rat_pow(&x, k as i64);
            deg += k as i64
                * match grading {
                    Grading::Edge => j as i64,
                    Grading::Face => j as i64 - 2,
                };
        }
        if !v.is_zero() && deg < u_cap {
            coeffs[deg as usize] += v;
        }
    }
    Ok(USeries::from_coeffs(0, coeffs, u_cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::ri;

    #[test]
    fn ring_basics() {
        let one = MultiSeries::one(6);
        let a2 = MultiSeries::var(6, 2);
        let s = one.add(&a2);
        let sq = s.mul(&s);
        assert_eq!(sq.coefficient(&Partition::single(2)), ri(2));
        assert_eq!(sq.coefficient(&Partition::from_parts(&[2, 2])), ri(1));
        assert_eq!(s.mul(&one), s);
        let a1 = MultiSeries::var(6, 1);
        assert_eq!(a1.mul(&a2).coefficient(&Partition::from_parts(&[1, 2])), ri(1));
        let cut = MultiSeries::var(3, 2).mul(&MultiSeries::var(3, 2));
        assert!(cut.is_empty());
    }
}
