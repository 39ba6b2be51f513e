//! P-recursive sequences: sum_j gamma_j(n) f_{n+j} = 0.

use super::AsymError;
use crate::algebra::rat::{ri, Rat};
use crate::algebra::Poly;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq)]
pub struct HolonomicRec {
    /// gamma_0 .. gamma_r
    pub gammas: Vec<Poly>,
    /// The relation holds for n >= n_start.
    pub n_start: i64,
    /// Index of the first initial value.
    pub first_index: i64,
    pub initial: Vec<Rat>,
}

impl HolonomicRec {
    pub fn order(&self) -> usize {
        self.gammas.len() - 1
    }
    /// f_0 .. f_N (entries below first_index are zero).
    pub fn evaluate(&self, big_n: usize) -> Result<Vec<Rat>, AsymError> {
        let r = self.order();
        let lead = &self.gammas[r];
        if lead.is_zero() {
            return Err(AsymError::LeadingVanishes(self.n_start));
        }
        let mut f = vec![Rat::zero(); big_n + 1];
        for (i, v) in self.initial.iter().enumerate() {
            let k = self.first_index as usize + i;
            if k <= big_n {
                f[k] = v.clone();
            }
        }
        let known = self.first_index as usize + self.initial.len();
        for m in known..=big_n {
            let n = m as i64 - r as i64;
            if n < self.n_start || n < self.first_index {
                return Err(AsymError::TooFewInitial(m));
            }
            let g = lead.eval(&ri(n));
            if g.is_zero() {
                return Err(AsymError::LeadingVanishes(n));
            }
            let mut acc = Rat::zero();
            for (j, gam) in self.gammas.iter().enumerate().take(r) {
                acc += gam.eval(&ri(n)) * &f[n as usize + j];
            }
            f[m] = -acc / g;
        }
        Ok(f)
    }
    /// Residuals of the relation on a given sequence, n_start .. len - r.
    pub fn residuals(&self, f: &[Rat]) -> Vec<Rat> {
        let r = self.order();
        let mut out = Vec::new();
        let mut n = self.n_start.max(0);
        while (n as usize) + r < f.len() {
            let mut acc = Rat::zero();
            for (j, gam) in self.gammas.iter().enumerate() {
                acc += gam.eval(&ri(n)) * &f[n as usize + j];
            }
            out.push(acc);
            n += 1;
        }
        out
    }
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "gammas": self.gammas.iter().map(|g| g.fmt_var("n")).collect::<Vec<_>>(),
            "n_start": self.n_start,
            "first_index": self.first_index,
            "initial": self.initial.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// f_0 .. f_N of a recurrence.
pub fn holonomic_evaluate(rec: &HolonomicRec, big_n: usize) -> Result<Vec<Rat>, AsymError> {
    rec.evaluate(big_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    #[test]
    fn two_term() {
        // (n+3)(n+1) f_{n+1} = 6n(1+2n) f_n
        let rec = HolonomicRec {
            gammas: vec![Poly::from_i64(&[0, -6, -12]), Poly::from_i64(&[3, 4, 1])],
            n_start: 1,
            first_index: 1,
            initial: vec![ri(1)],
        };
        let f = rec.evaluate(5).unwrap();
        assert_eq!(f[2], rat(9, 4));
        assert_eq!(f[5], rat(1458, 5));
        assert!(rec.residuals(&f).iter().all(|x| x.is_zero()));
        let bad = HolonomicRec { gammas: vec![Poly::from_i64(&[1]), Poly::from_i64(&[-3, 1])], n_start: 0, first_index: 0, initial: vec![ri(1)] };
        assert_eq!(bad.evaluate(5), Err(AsymError::LeadingVanishes(3)));
    }
}
