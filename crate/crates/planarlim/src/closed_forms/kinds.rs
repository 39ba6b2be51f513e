//! The extreme potentials: every coupling in a chosen set equals one power
//! of t, so the multivariate series collapses to a single variable.

use crate::series::{Filtration, Grading};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtremeKind {
    EdgeEven,
    EdgeAll,
    EdgeEvenMin4,
    EdgeMin2,
    EdgeMin3,
    FaceEven,
    FaceAll,
    Mixed34Edge,
    Mixed34Face,
}

use ExtremeKind::*;

impl ExtremeKind {
    pub const ALL: [ExtremeKind; 9] =
        [EdgeEven, EdgeAll, EdgeEvenMin4, EdgeMin2, EdgeMin3, FaceEven, FaceAll, Mixed34Edge, Mixed34Face];

    pub fn tag(&self) -> &'static str {
        match self {
            EdgeEven => "edge-even",
            EdgeAll => "edge-all",
            EdgeEvenMin4 => "edge-even-min4",
            EdgeMin2 => "edge-min2",
            EdgeMin3 => "edge-min3",
            FaceEven => "face-even",
            FaceAll => "face-all",
            Mixed34Edge => "mixed34-edge",
            Mixed34Face => "mixed34-face",
        }
    }
    pub fn grading(&self) -> Grading {
        match self {
            FaceEven | FaceAll | Mixed34Face => Grading::Face,
            _ => Grading::Edge,
        }
    }
    pub fn is_even(&self) -> bool {
        matches!(self, EdgeEven | EdgeEvenMin4 | FaceEven)
    }
    /// Whether a_j is switched on.
    pub fn includes(&self, j: u32) -> bool {
        match self {
            Mixed34Edge | Mixed34Face => j == 3 || j == 4,
            _ => j >= self.n0() && (!self.is_even() || j % 2 == 0),
        }
    }
    /// Smallest switched-on valency.
    pub fn n0(&self) -> u32 {
        match self {
            EdgeAll => 1,
            EdgeEven | EdgeMin2 => 2,
            EdgeMin3 | FaceAll | Mixed34Edge | Mixed34Face => 3,
            EdgeEvenMin4 | FaceEven => 4,
        }
    }
    /// a_n = u^(n - delta) with u = t^(1/2).
    pub fn delta(&self) -> u32 {
        match self.grading() {
            Grading::Edge => 0,
            Grading::Face => 2,
        }
    }
    pub fn filtration(&self) -> Filtration {
        match self.grading() {
            Grading::Edge => Filtration::Weight,
            Grading::Face => Filtration::Face,
        }
    }
    /// Switched-on variables whose filtration degree is at most `cap`.
    pub fn vars(&self, cap: u32) -> Vec<u32> {
        let f = self.filtration();
        (self.n0()..=cap + 2).filter(|&j| self.includes(j) && f.var_degree(j) <= cap).collect()
    }
}

impl fmt::Display for ExtremeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ExtremeKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ExtremeKind::ALL
            .iter()
            .find(|k| k.tag() == s)
            .copied()
            .ok_or_else(|| format!("unknown extreme kind {s}"))
    }
}
