//! Simply-laced (ADE) root systems.
//!
//! Node numbering:
//!
//! * `A_n`: nodes `0..n` along the chain.
//! * `D_n`: chain nodes `0..=n-3`, then the two fork nodes `n-2` and `n-1`,
//!   both attached to chain node `n-3`.
//! * `E_n`: Bourbaki numbering shifted to start at zero, i.e. the chain
//!   `0 - 2 - 3 - ... - (n-1)` with node `1` attached to node `3`.
//!
//! For `D_5` the nodes `0, 1, 2, 3, 4` carry the McKay labels
//! `V1, U1, V2, U2, U3` of the group `Sigma_3` (chain `V1 - U1 - V2 - U2`,
//! fork `U3` on `V2`).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    D,
    E,
}

/// A validated ADE label such as `A3`, `D5` or `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdeType {
    family: Family,
    rank: usize,
}

impl AdeType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::Config(format!("no root system {family:?}{rank}")));
        }
        Ok(AdeType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Edges of the Dynkin diagram under the module's node numbering.
    pub fn dynkin_edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (1..n).map(|i| (i - 1, i)).collect(),
            Family::D => {
                let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                edges.push((n - 3, n - 1));
                edges
            }
            Family::E => {
                let mut edges = vec![(0, 2), (1, 3)];
                edges.extend((3..n).map(|i| (i - 1, i)));
                edges
            }
        }
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for AdeType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("cannot parse root system label {s:?}"));
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        AdeType::new(family, rank)
    }
}

/// Coefficients of a root in the basis of simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVector(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// Componentwise `self <= other`.
    pub fn dominated_by(&self, other: &RootVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `C_ii = 2`, `C_ij = -1` on Dynkin edges, `0` elsewhere.
pub fn cartan_matrix(ade: AdeType) -> Vec<Vec<i64>> {
    let n = ade.rank();
    let mut c = vec![vec![0; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j) in ade.dynkin_edges() {
        c[i][j] = -1;
        c[j][i] = -1;
    }
    c
}

/// `<beta, alpha_i^vee>` for a simply-laced Cartan matrix.
fn pairing(cartan: &[Vec<i64>], beta: &[i64], i: usize) -> i64 {
    beta.iter().zip(cartan).map(|(b, row)| b * row[i]).sum()
}

/// All positive roots, sorted by height and then lexicographically with larger
/// leading coefficients first, so the simple roots appear in node order.
///
/// Built by height induction: `beta + alpha_i` is a root exactly when the
/// `alpha_i`-string through `beta` continues upward, i.e. when
/// `p - <beta, alpha_i> > 0` with `p` the number of downward steps available.
pub fn positive_roots(ade: AdeType) -> Vec<RootVector> {
    let n = ade.rank();
    let cartan = cartan_matrix(ade);
    let mut all: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n).map(|i| RootVector::simple(n, i).0).collect();
    all.extend(layer.iter().cloned());
    while !layer.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            for i in 0..n {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if down[i] < 0 || !all.contains(&down) {
                        break;
                    }
                    p += 1;
                }
                if p - pairing(&cartan, beta, i) > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if all.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        layer = next;
    }
    let mut roots: Vec<RootVector> = all.into_iter().map(RootVector).collect();
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
    roots
}

/// `h` with `rank * h = |R|`.
pub fn coxeter_number(ade: AdeType) -> usize {
    let n = ade.rank();
    match ade.family() {
        Family::A => n + 1,
        Family::D => 2 * n - 2,
        Family::E => match n {
            6 => 12,
            7 => 18,
            _ => 30,
        },
    }
}

/// The unique positive root maximal in the coefficientwise order.
pub fn highest_root(ade: AdeType) -> RootVector {
    positive_roots(ade).pop().expect("every root system has a simple root")
}

/// Everything about one root system that downstream modules consume.
#[derive(Clone, Debug)]
pub struct RootSystemData {
    pub ade: AdeType,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<RootVector>,
    pub coxeter_number: usize,
    pub highest_root: RootVector,
}

impl RootSystemData {
    pub fn new(ade: AdeType) -> Self {
        let positive_roots = positive_roots(ade);
        let highest_root = positive_roots.last().cloned().expect("nonempty");
        RootSystemData {
            ade,
            cartan: cartan_matrix(ade),
            coxeter_number: coxeter_number(ade),
            positive_roots,
            highest_root,
        }
    }

    pub fn rank(&self) -> usize {
        self.ade.rank()
    }

    pub fn neighbours(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.cartan[node]
            .iter()
            .enumerate()
            .filter(move |&(j, &c)| j != node && c != 0)
            .map(|(j, _)| j)
    }

    /// `sum_{alpha in R+} alpha alpha^T` over the given coordinates.
    pub fn root_outer_sum(&self, coords: &[usize]) -> Vec<Vec<i64>> {
        let k = coords.len();
        let mut s = vec![vec![0; k]; k];
        for alpha in &self.positive_roots {
            for (a, &i) in coords.iter().enumerate() {
                for (b, &j) in coords.iter().enumerate() {
                    s[a][b] += alpha.0[i] * alpha.0[j];
                }
            }
        }
        s
    }

    /// `sum_{alpha in R+} alpha^i alpha^j alpha^k` over the given coordinates.
    pub fn root_cubic_sum(&self, coords: &[usize]) -> Vec<Vec<Vec<i64>>> {
        let k = coords.len();
        let mut s = vec![vec![vec![0; k]; k]; k];
        for alpha in &self.positive_roots {
            for (a, &i) in coords.iter().enumerate() {
                for (b, &j) in coords.iter().enumerate() {
                    for (c, &l) in coords.iter().enumerate() {
                        s[a][b][c] += alpha.0[i] * alpha.0[j] * alpha.0[l];
                    }
                }
            }
        }
        s
    }
}

/// Exact inverse of an integer matrix, `None` when singular.
pub fn inverse_rational(m: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let r = |v: i64| BigRational::from_integer(BigInt::from(v));
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut out: Vec<BigRational> = row.iter().map(|&v| r(v)).collect();
            out.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            out
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, pivot);
        let inv = BigRational::one() / a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[col].clone();
                for (v, p) in a[i].iter_mut().zip(pivot_row) {
                    *v = &*v - &(&f * &p);
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> AdeType {
        s.parse().unwrap()
    }

    #[test]
    fn rank_bounds() {
        assert!(AdeType::new(Family::A, 0).is_err());
        assert!(AdeType::new(Family::D, 3).is_err());
        assert!(AdeType::new(Family::E, 9).is_err());
        assert!(AdeType::new(Family::E, 5).is_err());
        assert!("B3".parse::<AdeType>().is_err());
        assert_eq!(t("d5").to_string(), "D5");
    }

    #[test]
    fn small_cartan_matrices() {
        assert_eq!(cartan_matrix(t("A1")), vec![vec![2]]);
        assert_eq!(cartan_matrix(t("A2")), vec![vec![2, -1], vec![-1, 2]]);
        // V1 - U1 - V2 - U2 with U3 on V2
        assert_eq!(
            cartan_matrix(t("D5")),
            vec![
                vec![2, -1, 0, 0, 0],
                vec![-1, 2, -1, 0, 0],
                vec![0, -1, 2, -1, -1],
                vec![0, 0, -1, 2, 0],
                vec![0, 0, -1, 0, 2],
            ]
        );
    }

    #[test]
    fn small_root_lists() {
        assert_eq!(positive_roots(t("A1")), vec![RootVector(vec![1])]);
        assert_eq!(
            positive_roots(t("A2")),
            vec![RootVector(vec![1, 0]), RootVector(vec![0, 1]), RootVector(vec![1, 1])]
        );
    }

    #[test]
    fn coxeter_and_highest_roots() {
        assert_eq!(coxeter_number(t("A2")), 3);
        assert_eq!(coxeter_number(t("D5")), 8);
        assert_eq!(coxeter_number(t("E8")), 30);
        assert_eq!(highest_root(t("A1")), RootVector(vec![1]));
        assert_eq!(highest_root(t("A2")), RootVector(vec![1, 1]));
        assert_eq!(highest_root(t("D5")), RootVector(vec![1, 2, 2, 1, 1]));
        assert_eq!(highest_root(t("E8")), RootVector(vec![2, 3, 4, 6, 5, 4, 3, 2]));
    }

    #[test]
    fn e8_has_120_positive_roots() {
        let roots = positive_roots(t("E8"));
        assert_eq!(roots.len(), 120);
        assert_eq!(roots.len(), 8 * 30 / 2);
    }

    #[test]
    fn highest_root_dominates_everything() {
        for s in ["A4", "D6", "E6", "E7", "E8"] {
            let data = RootSystemData::new(t(s));
            for a in &data.positive_roots {
                assert!(a.dominated_by(&data.highest_root), "{s}: {a}");
            }
        }
    }

    #[test]
    fn inverse_of_a2() {
        let inv = inverse_rational(&cartan_matrix(t("A2"))).unwrap();
        let r = |n, d| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(inv, vec![vec![r(2, 3), r(1, 3)], vec![r(1, 3), r(2, 3)]]);
        assert!(inverse_rational(&[vec![1, 2], vec![2, 4]]).is_none());
    }
}
