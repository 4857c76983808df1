//! Equivariant intersection numbers of the resolution `Y` and of the surface
//! `Ŝ`, the McKay-quiver pairing, and the classical genus-zero potential.
//!
//! Every integral is a rational number times a pure power of the equivariant
//! parameter `t`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grouprep::{GroupSpec, McKayData};
use crate::numeric::{ratio_string, Complex, Real};
use crate::rootsys::{inverse_rational, RootSystemData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivariantScalar {
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    pub t_power: i32,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

fn ser_matrix<S: serde::Serializer>(m: &[Vec<BigRational>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<String>> = m.iter().map(|row| row.iter().map(ratio_string).collect()).collect();
    serde::Serialize::serialize(&strings, s)
}

fn ser_tensor<S: serde::Serializer>(m: &[Vec<Vec<BigRational>>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strings: Vec<Vec<Vec<String>>> = m
        .iter()
        .map(|a| a.iter().map(|row| row.iter().map(ratio_string).collect()).collect())
        .collect();
    serde::Serialize::serialize(&strings, s)
}

impl EquivariantScalar {
    pub fn new(value: BigRational, t_power: i32) -> Self {
        EquivariantScalar { value, t_power }
    }
}

impl std::fmt::Display for EquivariantScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.t_power {
            0 => write!(f, "{}", ratio_string(&self.value)),
            1 => write!(f, "{}*t", ratio_string(&self.value)),
            p => write!(f, "{}*t^{p}", ratio_string(&self.value)),
        }
    }
}

/// A matrix of rationals sharing one power of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TMatrix {
    #[serde(serialize_with = "ser_matrix")]
    pub entries: Vec<Vec<BigRational>>,
    pub t_power: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TTensor {
    #[serde(serialize_with = "ser_tensor")]
    pub entries: Vec<Vec<Vec<BigRational>>>,
    pub t_power: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionData {
    pub basis: Vec<String>,
    pub zero_point: EquivariantScalar,
    pub one_point: Vec<EquivariantScalar>,
    pub two_point: TMatrix,
    pub three_point: TTensor,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn scaled_matrix(m: &[Vec<i64>], c: &BigRational) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|row| row.iter().map(|&x| c * BigRational::from_integer(x.into())).collect())
        .collect()
}

fn scaled_tensor(m: &[Vec<Vec<i64>>], c: &BigRational) -> Vec<Vec<Vec<BigRational>>> {
    m.iter().map(|a| scaled_matrix(a, c)).collect()
}

fn assemble(
    roots: &RootSystemData,
    coords: &[usize],
    basis: Vec<String>,
    zero_point: EquivariantScalar,
    two: (BigRational, i32),
    three: (BigRational, i32),
) -> IntersectionData {
    let n = coords.len();
    IntersectionData {
        basis,
        one_point: vec![EquivariantScalar::new(BigRational::zero(), 0); n],
        zero_point,
        two_point: TMatrix {
            entries: scaled_matrix(&roots.root_outer_sum(coords), &two.0),
            t_power: two.1,
        },
        three_point: TTensor {
            entries: scaled_tensor(&roots.root_cubic_sum(coords), &three.0),
            t_power: three.1,
        },
    }
}

/// `1/(t^3 |G|)`, `0`, `-1/(2th) sum alpha alpha`, `1/4 sum alpha alpha alpha`
/// with root sums restricted to `Irr*(G)`.
pub fn threefold_integrals(data: &McKayData) -> IntersectionData {
    let h = data.roots.coxeter_number as i64;
    assemble(
        &data.roots,
        &data.class_nodes,
        data.class_labels(),
        EquivariantScalar::new(ratio(1, data.group.order as i64), -3),
        (ratio(-1, 2 * h), -1),
        (ratio(1, 4), 0),
    )
}

/// `4/(t^2 |Ĝ|)`, `0`, `-(1/h) sum alpha alpha`, `(t/2) sum alpha alpha alpha`
/// over all simple-root coordinates.
pub fn surface_integrals(data: &McKayData) -> IntersectionData {
    let h = data.roots.coxeter_number as i64;
    let all: Vec<usize> = (0..data.roots.rank()).collect();
    let basis = all.iter().map(|&n| data.node_label(n).to_string()).collect();
    assemble(
        &data.roots,
        &all,
        basis,
        EquivariantScalar::new(ratio(4, data.binary.order as i64), -2),
        (ratio(-1, h), 0),
        (ratio(1, 2), 1),
    )
}

/// `t <(V - 3) ⊗ rho, rho'>` over `Irr*(G)`, by character inner products.
pub fn mckay_pairing(data: &McKayData) -> Result<TMatrix> {
    let g = &data.group;
    let prec = g.precision;
    let three = Complex::from_real(Real::from_i64(3, prec));
    let shifted: Vec<Complex> = g.natural_values.iter().map(|v| v - &three).collect();
    let n = g.table.len();
    let mut entries = vec![vec![BigRational::zero(); n - 1]; n - 1];
    for i in 1..n {
        let f: Vec<Complex> = shifted.iter().zip(&g.table.values[i]).map(|(a, b)| a * b).collect();
        for j in 1..n {
            let v = g.inner_product(&f, &g.table.values[j]);
            let k = g.round_integer(&v, "McKay pairing entry")?;
            entries[i - 1][j - 1] = BigRational::from_integer(k.into());
        }
    }
    Ok(TMatrix { entries, t_power: 1 })
}

pub fn matrix_product(a: &TMatrix, b: &TMatrix) -> TMatrix {
    let n = a.entries.len();
    let m = b.entries.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigRational::zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            for (k, x) in a.entries[i].iter().enumerate() {
                out[i][j] += x * &b.entries[k][j];
            }
        }
    }
    TMatrix {
        entries: out,
        t_power: a.t_power + b.t_power,
    }
}

pub fn is_identity(m: &TMatrix) -> bool {
    m.t_power == 0
        && m.entries.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
        })
}

/// `-C^{-1}` by exact inversion of the Cartan matrix.
pub fn negative_inverse_cartan(roots: &RootSystemData) -> Result<Vec<Vec<BigRational>>> {
    let inv = inverse_rational(&roots.cartan)
        .ok_or_else(|| Error::Consistency(format!("Cartan matrix of {} is singular", roots.ade)))?;
    Ok(inv
        .into_iter()
        .map(|row| row.into_iter().map(|x| -x).collect())
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct CubicTerm {
    /// Multiset of basis indices `i <= j <= k`.
    pub indices: [usize; 3],
    pub integral: EquivariantScalar,
    /// Coefficient of the monomial `y_i y_j y_k` in the potential.
    pub monomial_coefficient: EquivariantScalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectorConstant {
    pub class: String,
    pub value: EquivariantScalar,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalPotential {
    pub basis: Vec<String>,
    pub cubic: Vec<CubicTerm>,
    /// `<delta_e delta_e delta_e>`.
    pub identity_sector: EquivariantScalar,
    /// `<delta_e delta_g delta_{g^-1}>` per nontrivial class.
    pub twisted_sectors: Vec<SectorConstant>,
}

/// `F_cl(y) = sum int(gamma gamma gamma) y y y / 3!` plus the classical
/// constants of the untwisted direction.
pub fn classical_potential(data: &McKayData) -> ClassicalPotential {
    let ints = threefold_integrals(data);
    let n = ints.basis.len();
    let t = &ints.three_point;
    let mut cubic = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let v = t.entries[i][j][k].clone();
                if v.is_zero() {
                    continue;
                }
                let orderings = match (i == j, j == k) {
                    (true, true) => 1,
                    (true, false) | (false, true) => 3,
                    (false, false) => 6,
                };
                cubic.push(CubicTerm {
                    indices: [i, j, k],
                    monomial_coefficient: EquivariantScalar::new(&v * ratio(orderings, 6), t.t_power),
                    integral: EquivariantScalar::new(v, t.t_power),
                });
            }
        }
    }
    let order = data.group.order as i64;
    let twisted_sectors = data
        .group
        .classes
        .iter()
        .skip(1)
        .map(|c| SectorConstant {
            class: c.label.clone(),
            value: EquivariantScalar::new(ratio(1, c.centraliser_order(data.group.order) as i64), -1),
        })
        .collect();
    ClassicalPotential {
        basis: ints.basis,
        cubic,
        identity_sector: EquivariantScalar::new(ratio(1, order), -3),
        twisted_sectors,
    }
}

pub fn threefold_integrals_for(spec: GroupSpec) -> Result<IntersectionData> {
    Ok(threefold_integrals(&McKayData::new(spec)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma3() -> McKayData {
        McKayData::new(GroupSpec::Dihedral(3)).unwrap()
    }

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect()
    }

    #[test]
    fn sigma3_threefold() {
        let d = threefold_integrals(&sigma3());
        assert_eq!(d.zero_point, EquivariantScalar::new(ratio(1, 6), -3));
        assert_eq!(d.two_point.entries[0][0], ratio(-1, 2));
        assert_eq!(d.two_point.t_power, -1);
        assert_eq!(d.three_point.entries[0][0][0], ratio(2, 1));
        assert!(d.one_point.iter().all(|s| s.value.is_zero()));
    }

    #[test]
    fn sigma3_surface() {
        let data = sigma3();
        let s = surface_integrals(&data);
        assert_eq!(s.zero_point, EquivariantScalar::new(ratio(1, 3), -2));
        assert_eq!(s.two_point.entries, negative_inverse_cartan(&data.roots).unwrap());
    }

    #[test]
    fn sigma3_pairing_inverts_two_point() {
        let data = sigma3();
        let p = mckay_pairing(&data).unwrap();
        assert_eq!(p.entries, int_matrix(&[&[-3, 1], &[1, -1]]));
        assert_eq!(p.t_power, 1);
        assert!(is_identity(&matrix_product(&p, &threefold_integrals(&data).two_point)));
    }

    #[test]
    fn sigma3_classical_potential() {
        let c = classical_potential(&sigma3());
        let y1 = c.cubic.iter().find(|t| t.indices == [0, 0, 0]).unwrap();
        assert_eq!(y1.integral.value, ratio(2, 1));
        assert_eq!(c.identity_sector, EquivariantScalar::new(ratio(1, 6), -3));
        assert_eq!(c.twisted_sectors[0].value, EquivariantScalar::new(ratio(1, 2), -1));
        assert_eq!(c.twisted_sectors[1].value, EquivariantScalar::new(ratio(1, 3), -1));
    }

    #[test]
    fn pairing_inverts_two_point_for_every_group() {
        for spec in GroupSpec::catalogue() {
            let data = McKayData::new(spec).unwrap();
            let p = mckay_pairing(&data).unwrap();
            let prod = matrix_product(&p, &threefold_integrals(&data).two_point);
            assert!(is_identity(&prod), "{spec}");
            assert!(
                p.entries.iter().enumerate().all(|(i, r)| r[i] < BigRational::zero()),
                "{spec}"
            );
        }
    }
}
