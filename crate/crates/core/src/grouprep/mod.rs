//! Polyhedral groups `G ⊂ SO(3)`, their binary covers `Ĝ ⊂ SU(2)`, and the
//! McKay correspondence between nontrivial irreps of `Ĝ` and simple roots.
//!
//! Character values are exact [`RootSum`]s; the evaluated complex matrix is
//! cached at the precision the model was built with. Integer quantities
//! derived from characters (McKay multiplicities, pairings) are obtained by
//! rounding, and the rounding residual must stay below `10^-30`.

mod tables;

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numeric::{Complex, Precision, Real, RootSum};
use crate::rootsys::{AdeType, Family, RootSystemData};

/// Exponent of the residual bound for values that must round to integers.
pub const ROUNDING_RESIDUAL_EXP: u32 = 30;

/// A finite subgroup of SO(3), up to conjugacy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    Cyclic(u32),
    Dihedral(u32),
    Tetrahedral,
    Octahedral,
    Icosahedral,
}

impl GroupSpec {
    pub fn validate(self) -> Result<Self> {
        match self {
            GroupSpec::Cyclic(k) if k < 2 => {
                Err(Error::UnsupportedGroup(format!("cyclic group needs k >= 2, got {k}")))
            }
            GroupSpec::Dihedral(m) if m < 2 => {
                Err(Error::UnsupportedGroup(format!("dihedral group needs m >= 2, got {m}")))
            }
            _ => Ok(self),
        }
    }

    pub fn order(&self) -> usize {
        match *self {
            GroupSpec::Cyclic(k) => k as usize,
            GroupSpec::Dihedral(m) => 2 * m as usize,
            GroupSpec::Tetrahedral => 12,
            GroupSpec::Octahedral => 24,
            GroupSpec::Icosahedral => 60,
        }
    }

    /// Inverse of [`root_system_of`]. An `A` label names the root system of the
    /// binary group, so `A3` is `Cyclic(2)`; even `A_n` has no polyhedral preimage.
    pub fn from_ade(ade: AdeType) -> Result<Self> {
        let n = ade.rank();
        match ade.family() {
            Family::A if n % 2 == 1 => Ok(GroupSpec::Cyclic(n.div_ceil(2) as u32)),
            Family::A => Err(Error::UnsupportedGroup(format!(
                "{ade} is not the root system of a binary polyhedral group of a subgroup of SO(3)"
            ))),
            Family::D => Ok(GroupSpec::Dihedral((n - 2) as u32)),
            Family::E => Ok(match n {
                6 => GroupSpec::Tetrahedral,
                7 => GroupSpec::Octahedral,
                _ => GroupSpec::Icosahedral,
            }),
        }
        .and_then(GroupSpec::validate)
    }

    /// Every supported group of order at most `max_order`, dihedral and cyclic
    /// parameters bounded as in the test matrix (`k <= 8`, `m <= 6`).
    pub fn catalogue() -> Vec<GroupSpec> {
        let mut out: Vec<GroupSpec> = (2..=8).map(GroupSpec::Cyclic).collect();
        out.extend((2..=6).map(GroupSpec::Dihedral));
        out.extend([GroupSpec::Tetrahedral, GroupSpec::Octahedral, GroupSpec::Icosahedral]);
        out
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(k) => write!(f, "C:{k}"),
            GroupSpec::Dihedral(m) => write!(f, "D:{m}"),
            GroupSpec::Tetrahedral => write!(f, "T"),
            GroupSpec::Octahedral => write!(f, "O"),
            GroupSpec::Icosahedral => write!(f, "I"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts `C:k`, `D:m`, `T`, `O`, `I`, or an ADE label of the binary group.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let param = |p: &str| -> Result<u32> {
            p.trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad group parameter in {s:?}")))
        };
        let spec = match s.split_once(':') {
            Some((kind, p)) => match kind.trim().to_ascii_uppercase().as_str() {
                "C" => GroupSpec::Cyclic(param(p)?),
                "D" => GroupSpec::Dihedral(param(p)?),
                _ => return Err(Error::Config(format!("unknown group family in {s:?}"))),
            },
            None => match s.to_ascii_uppercase().as_str() {
                "T" => GroupSpec::Tetrahedral,
                "O" => GroupSpec::Octahedral,
                "I" => GroupSpec::Icosahedral,
                _ => return GroupSpec::from_ade(s.parse()?),
            },
        };
        spec.validate()
    }
}

/// `Cyclic(k) -> A_{2k-1}`, `Dihedral(m) -> D_{m+2}`, `T, O, I -> E6, E7, E8`.
pub fn root_system_of(spec: GroupSpec) -> AdeType {
    let (family, rank) = match spec {
        GroupSpec::Cyclic(k) => (Family::A, 2 * k as usize - 1),
        GroupSpec::Dihedral(m) => (Family::D, m as usize + 2),
        GroupSpec::Tetrahedral => (Family::E, 6),
        GroupSpec::Octahedral => (Family::E, 7),
        GroupSpec::Icosahedral => (Family::E, 8),
    };
    AdeType::new(family, rank).expect("validated group spec")
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjClass {
    pub label: String,
    pub size: usize,
    pub element_order: u32,
    /// Rotation angle as a fraction of a full turn (classes of `G`; for the
    /// binary group this is the angle of the image rotation).
    #[serde(serialize_with = "ser_ratio")]
    pub rotation_turns: Ratio<i64>,
    /// Index of the image class in `G` (binary groups only).
    pub image: Option<usize>,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    })
}

impl ConjClass {
    /// Order of the centraliser, `|G| / |class|`.
    pub fn centraliser_order(&self, group_order: usize) -> usize {
        group_order / self.size
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Irrep {
    pub label: String,
    pub dim: u32,
}

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub irreps: Vec<Irrep>,
    /// `exact[irrep][class]`.
    pub exact: Vec<Vec<RootSum>>,
    pub values: Vec<Vec<Complex>>,
}

impl CharacterTable {
    fn new(rows: Vec<(String, Vec<RootSum>)>, prec: Precision) -> Result<Self> {
        let mut irreps = Vec::with_capacity(rows.len());
        let mut exact = Vec::with_capacity(rows.len());
        for (label, row) in rows {
            let dim = row[0].as_integer().filter(|&d| d > 0).ok_or_else(|| {
                Error::Consistency(format!("{label}: character at identity is not a positive integer"))
            })?;
            irreps.push(Irrep { label, dim: dim as u32 });
            exact.push(row);
        }
        let values = exact
            .iter()
            .map(|row| row.iter().map(|v| v.eval(prec)).collect())
            .collect();
        Ok(CharacterTable { irreps, exact, values })
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }
}

/// A finite group acting through a faithful natural representation: `V` on
/// R^3 for `G`, `U` on C^2 for `Ĝ`.
#[derive(Clone, Debug)]
pub struct GroupModel {
    pub spec: GroupSpec,
    pub binary: bool,
    pub order: usize,
    pub classes: Vec<ConjClass>,
    pub table: CharacterTable,
    pub natural: Vec<RootSum>,
    pub natural_values: Vec<Complex>,
    /// For `Ĝ`, the class of `z = -1`.
    pub central_involution: Option<usize>,
    pub precision: Precision,
}

impl GroupModel {
    pub fn name(&self) -> String {
        if self.binary {
            format!("binary {}", self.spec)
        } else {
            self.spec.to_string()
        }
    }

    /// `(1/|G|) sum_c |c| f(c) conj(g(c))` for two class functions.
    pub fn inner_product(&self, f: &[Complex], g: &[Complex]) -> Complex {
        let mut acc = Complex::zero(self.precision);
        for ((c, a), b) in self.classes.iter().zip(f).zip(g) {
            acc = &acc + &(a * &b.conj()).scale_i64(c.size as i64);
        }
        let n = Real::from_i64(self.order as i64, self.precision);
        Complex::new(&acc.re / &n, &acc.im / &n)
    }

    /// Rounds `v` to an integer, failing when the residual reaches `10^-30`.
    pub fn round_integer(&self, v: &Complex, what: &str) -> Result<i64> {
        let tol = self.precision.epsilon(ROUNDING_RESIDUAL_EXP);
        let n =
            v.re.round_to_i64()
                .ok_or_else(|| Error::Consistency(format!("{what}: value out of range")))?;
        let resid = (&v.re - &Real::from_i64(n, self.precision)).abs();
        if resid >= tol || v.im.abs() >= tol {
            return Err(Error::Consistency(format!(
                "{what}: {} is not an integer to 1e-{ROUNDING_RESIDUAL_EXP}",
                v.re
            )));
        }
        Ok(n)
    }

    /// Largest deviation of the row-orthogonality Gram matrix from the identity.
    pub fn orthogonality_defect(&self) -> Real {
        let mut worst = Real::zero(self.precision);
        let n = self.table.len();
        for i in 0..n {
            for j in 0..n {
                let ip = self.inner_product(&self.table.values[i], &self.table.values[j]);
                let target = Real::from_i64((i == j) as i64, self.precision);
                let d = (&ip - &Complex::from_real(target)).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// Largest deviation of column orthogonality:
    /// `sum_rho chi_rho(c) conj(chi_rho(c')) = delta_{cc'} |C(c)|`.
    pub fn column_orthogonality_defect(&self) -> Real {
        let mut worst = Real::zero(self.precision);
        let k = self.classes.len();
        for a in 0..k {
            for b in 0..k {
                let mut acc = Complex::zero(self.precision);
                for row in &self.table.values {
                    acc = &acc + &(&row[a] * &row[b].conj());
                }
                let target = if a == b {
                    self.classes[a].centraliser_order(self.order) as i64
                } else {
                    0
                };
                let d = (&acc - &Complex::from_real(Real::from_i64(target, self.precision))).abs();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }
}

pub fn build_group(spec: GroupSpec) -> Result<GroupModel> {
    build_group_with(spec, Precision::default())
}

pub fn build_group_with(spec: GroupSpec, prec: Precision) -> Result<GroupModel> {
    let spec = spec.validate()?;
    let raw = tables::group(spec);
    let classes: Vec<ConjClass> = raw
        .classes
        .iter()
        .map(|c| ConjClass {
            label: c.label.clone(),
            size: c.size,
            element_order: c.order,
            rotation_turns: c.turns,
            image: None,
        })
        .collect();
    let natural: Vec<RootSum> = classes
        .iter()
        .map(|c| tables::rotation_trace(c.rotation_turns))
        .collect();
    finish(spec, false, classes, raw.rows, natural, prec)
}

pub fn build_binary_group(spec: GroupSpec) -> Result<GroupModel> {
    build_binary_group_with(spec, Precision::default())
}

pub fn build_binary_group_with(spec: GroupSpec, prec: Precision) -> Result<GroupModel> {
    let spec = spec.validate()?;
    let g = tables::group(spec);
    let raw = tables::binary(spec);
    let classes: Vec<ConjClass> = raw
        .classes
        .iter()
        .map(|c| ConjClass {
            label: c.label.clone(),
            size: c.size,
            element_order: c.order,
            rotation_turns: g.classes[c.image].turns,
            image: Some(c.image),
        })
        .collect();
    let mut rows: Vec<(String, Vec<RootSum>)> = g
        .rows
        .iter()
        .map(|(label, row)| {
            (
                label.clone(),
                raw.classes.iter().map(|c| row[c.image].clone()).collect(),
            )
        })
        .collect();
    let natural = match spec {
        // U = chi_1 + chi_{-1} is reducible for cyclic groups
        GroupSpec::Cyclic(k) => {
            let n = 2 * k as i64;
            (0..n).map(|j| RootSum::two_cos(j, n)).collect()
        }
        _ => raw.extra_rows[0].1.clone(),
    };
    rows.extend(raw.extra_rows);
    finish(spec, true, classes, rows, natural, prec)
}

fn finish(
    spec: GroupSpec,
    binary: bool,
    classes: Vec<ConjClass>,
    rows: Vec<(String, Vec<RootSum>)>,
    natural: Vec<RootSum>,
    prec: Precision,
) -> Result<GroupModel> {
    let order: usize = classes.iter().map(|c| c.size).sum();
    let expected = spec.order() * if binary { 2 } else { 1 };
    if order != expected {
        return Err(Error::Consistency(format!(
            "class sizes of {spec} sum to {order}, expected {expected}"
        )));
    }
    let table = CharacterTable::new(rows, prec)?;
    let dim_sq: usize = table.irreps.iter().map(|r| (r.dim as usize).pow(2)).sum();
    if dim_sq != order {
        return Err(Error::Consistency(format!(
            "sum of squared dimensions {dim_sq} != |G| = {order}"
        )));
    }
    let natural_values = natural.iter().map(|v| v.eval(prec)).collect();
    let central_involution = if binary {
        let candidates: Vec<usize> = classes
            .iter()
            .enumerate()
            .filter(|(_, c)| c.size == 1 && c.element_order == 2)
            .map(|(i, _)| i)
            .collect();
        match candidates.as_slice() {
            [z] if natural[*z].as_integer() == Some(-2) => Some(*z),
            _ => {
                return Err(Error::Consistency(format!(
                    "binary {spec}: no unique central involution acting as -1"
                )))
            }
        }
    } else {
        None
    };
    Ok(GroupModel {
        spec,
        binary,
        order,
        classes,
        table,
        natural,
        natural_values,
        central_involution,
        precision: prec,
    })
}

/// Adjacency `a_{rho sigma}` = multiplicity of `sigma` in `U ⊗ rho`, over all
/// irreps of `Ĝ` (trivial included).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct McKayGraph {
    pub adjacency: Vec<Vec<i64>>,
}

impl McKayGraph {
    /// `true` when the vector of dimensions spans the kernel of `2I - A`.
    pub fn marks_in_kernel(&self, dims: &[i64]) -> bool {
        self.adjacency
            .iter()
            .zip(dims)
            .all(|(row, &d)| row.iter().zip(dims).map(|(a, b)| a * b).sum::<i64>() == 2 * d)
    }
}

pub fn mckay_graph(binary: &GroupModel) -> Result<McKayGraph> {
    let n = binary.table.len();
    let mut adjacency = vec![vec![0; n]; n];
    for i in 0..n {
        let tensor: Vec<Complex> = binary
            .natural_values
            .iter()
            .zip(&binary.table.values[i])
            .map(|(u, x)| u * x)
            .collect();
        for j in 0..n {
            let m = binary.inner_product(&tensor, &binary.table.values[j]);
            adjacency[i][j] = binary.round_integer(
                &m,
                &format!(
                    "multiplicity of {} in U ⊗ {}",
                    binary.table.irreps[j].label, binary.table.irreps[i].label
                ),
            )?;
        }
    }
    Ok(McKayGraph { adjacency })
}

/// `true` iff `rho` factors through `G`, i.e. `chi_rho(z) = dim rho`.
pub fn pulls_back(binary: &GroupModel, irrep: usize) -> Result<bool> {
    let z = binary
        .central_involution
        .ok_or_else(|| Error::Precondition(format!("{} is not a binary group", binary.name())))?;
    let dim = binary.table.irreps[irrep].dim as i64;
    match binary.table.exact[irrep][z].as_integer() {
        Some(v) => Ok(v == dim),
        None => {
            let v = binary.round_integer(&binary.table.values[irrep][z], "chi(z)")?;
            Ok(v == dim)
        }
    }
}

/// Finds a bijection from Dynkin nodes to nontrivial irreps that carries the
/// Dynkin edges onto McKay edges. Nodes are filled in order and irreps tried in
/// table order, so the first solution is deterministic.
fn dynkin_labelling(roots: &RootSystemData, graph: &McKayGraph) -> Option<Vec<usize>> {
    let n = roots.rank();
    let irreps: Vec<usize> = (1..graph.adjacency.len()).collect();
    if irreps.len() != n {
        return None;
    }
    let adjacent_nodes = |a: usize, b: usize| roots.cartan[a][b] == -1;
    let adjacent_irreps = |a: usize, b: usize| graph.adjacency[a][b];
    fn extend(
        node: usize,
        n: usize,
        irreps: &[usize],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        adjacent_nodes: &dyn Fn(usize, usize) -> bool,
        adjacent_irreps: &dyn Fn(usize, usize) -> i64,
    ) -> bool {
        if node == n {
            return true;
        }
        for (k, &rho) in irreps.iter().enumerate() {
            if used[k] {
                continue;
            }
            let fits = (0..node).all(|prev| {
                let want = adjacent_nodes(prev, node) as i64;
                adjacent_irreps(assign[prev], rho) == want
            });
            if !fits {
                continue;
            }
            used[k] = true;
            assign.push(rho);
            if extend(node + 1, n, irreps, assign, used, adjacent_nodes, adjacent_irreps) {
                return true;
            }
            assign.pop();
            used[k] = false;
        }
        false
    }
    let mut assign = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(0, n, &irreps, &mut assign, &mut used, &adjacent_nodes, &adjacent_irreps).then_some(assign)
}

/// The full McKay dictionary of one polyhedral group.
#[derive(Clone, Debug)]
pub struct McKayData {
    pub spec: GroupSpec,
    pub group: GroupModel,
    pub binary: GroupModel,
    pub roots: RootSystemData,
    pub graph: McKayGraph,
    /// Dynkin node -> irrep index of `Ĝ`.
    pub node_irrep: Vec<usize>,
    /// Irrep index of `G` -> irrep index of `Ĝ` (its pullback).
    pub pullback: Vec<usize>,
    /// Dynkin nodes whose irrep does not factor through `G`.
    pub binary_nodes: Vec<usize>,
    /// Position in `Irr*(G)` -> Dynkin node.
    pub class_nodes: Vec<usize>,
}

impl McKayData {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        Self::with_precision(spec, Precision::default())
    }

    pub fn with_precision(spec: GroupSpec, prec: Precision) -> Result<Self> {
        let group = build_group_with(spec, prec)?;
        let binary = build_binary_group_with(spec, prec)?;
        let roots = RootSystemData::new(root_system_of(spec));
        let graph = mckay_graph(&binary)?;
        let node_irrep = dynkin_labelling(&roots, &graph).ok_or_else(|| {
            Error::Consistency(format!(
                "McKay graph of binary {spec} minus the trivial node is not the {} diagram",
                roots.ade
            ))
        })?;
        // pulled-back rows come first in the binary table, in the order of G's rows
        let pullback: Vec<usize> = (0..group.table.len()).collect();
        let mut binary_nodes = Vec::new();
        for (node, &rho) in node_irrep.iter().enumerate() {
            if !pulls_back(&binary, rho)? {
                binary_nodes.push(node);
            }
        }
        let class_nodes: Vec<usize> = pullback[1..]
            .iter()
            .map(|&rho| {
                node_irrep
                    .iter()
                    .position(|&r| r == rho)
                    .ok_or_else(|| Error::Consistency(format!("pullback irrep {rho} has no node")))
            })
            .collect::<Result<_>>()?;
        if class_nodes.len() + binary_nodes.len() != roots.rank() {
            return Err(Error::Consistency(
                "binary and pulled-back nodes do not partition the Dynkin diagram".into(),
            ));
        }
        Ok(McKayData {
            spec,
            group,
            binary,
            roots,
            graph,
            node_irrep,
            pullback,
            binary_nodes,
            class_nodes,
        })
    }

    /// Labels of `Irr*(G)` in curve-class order.
    pub fn class_labels(&self) -> Vec<String> {
        self.group.table.irreps[1..].iter().map(|r| r.label.clone()).collect()
    }

    pub fn node_label(&self, node: usize) -> &str {
        &self.binary.table.irreps[self.node_irrep[node]].label
    }

    pub fn is_binary_node(&self, node: usize) -> bool {
        self.binary_nodes.contains(&node)
    }
}

/// Simple roots whose curve is contracted by `Ŝ -> Y`.
pub fn binary_simple_roots(spec: GroupSpec) -> Result<Vec<usize>> {
    Ok(McKayData::new(spec)?.binary_nodes)
}

/// `(k1 + k2 + k3) / n` for eigenvalues `exp(2 pi i k_j / n)`.
pub fn age(exponents: [i64; 3], modulus: i64) -> Result<Ratio<i64>> {
    if modulus < 1 {
        return Err(Error::Config(format!("modulus must be positive, got {modulus}")));
    }
    if let Some(k) = exponents.iter().find(|&&k| k < 0 || k >= modulus) {
        return Err(Error::Config(format!("eigen-exponent {k} outside [0, {modulus})")));
    }
    let sum: i64 = exponents.iter().sum();
    if sum % modulus != 0 {
        return Err(Error::Config(format!(
            "exponents {exponents:?} do not sum to 0 mod {modulus}; element is not in SL(3)"
        )));
    }
    Ok(Ratio::new(sum, modulus))
}

#[derive(Clone, Debug, Serialize)]
pub struct AgeEntry {
    pub label: String,
    pub exponents: [i64; 3],
    pub modulus: i64,
    #[serde(serialize_with = "ser_ratio")]
    pub age: Ratio<i64>,
    #[serde(serialize_with = "ser_ratio")]
    pub inverse_age: Ratio<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LefschetzReport {
    pub entries: Vec<AgeEntry>,
    /// `age(g) = age(g^-1)` for every element.
    pub hard_lefschetz: bool,
    /// Every nontrivial element has age exactly one.
    pub all_nontrivial_age_one: bool,
}

/// Ages of `g` and `g^-1` for elements given by their eigen-exponents.
pub fn lefschetz_from_exponents(elements: &[(String, [i64; 3], i64)]) -> Result<LefschetzReport> {
    let mut entries = Vec::with_capacity(elements.len());
    for (label, ks, n) in elements {
        let inv = ks.map(|k| (n - k).mod_floor(n));
        entries.push(AgeEntry {
            label: label.clone(),
            exponents: *ks,
            modulus: *n,
            age: age(*ks, *n)?,
            inverse_age: age(inv, *n)?,
        });
    }
    let hard_lefschetz = entries.iter().all(|e| e.age == e.inverse_age);
    let all_nontrivial_age_one = entries
        .iter()
        .all(|e| e.exponents == [0, 0, 0] || e.age == Ratio::from_integer(1));
    Ok(LefschetzReport {
        entries,
        hard_lefschetz,
        all_nontrivial_age_one,
    })
}

/// Ages of every class of `G` from the eigenvalues `(1, e^{i theta}, e^{-i theta})`.
pub fn hard_lefschetz_check(group: &GroupModel) -> Result<LefschetzReport> {
    let elements: Vec<(String, [i64; 3], i64)> = group
        .classes
        .iter()
        .map(|c| {
            let t = c.rotation_turns;
            let (p, q) = (t.numer().mod_floor(t.denom()), *t.denom());
            let ks = if p == 0 { [0, 0, 0] } else { [0, p, q - p] };
            (c.label.clone(), ks, q)
        })
        .collect();
    lefschetz_from_exponents(&elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma3() -> GroupSpec {
        GroupSpec::Dihedral(3)
    }

    #[test]
    fn parse_group_strings() {
        assert_eq!("C:3".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(3));
        assert_eq!("d:4".parse::<GroupSpec>().unwrap(), GroupSpec::Dihedral(4));
        assert_eq!("I".parse::<GroupSpec>().unwrap(), GroupSpec::Icosahedral);
        assert_eq!("A3".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(2));
        assert_eq!("D5".parse::<GroupSpec>().unwrap(), sigma3());
        assert_eq!("E6".parse::<GroupSpec>().unwrap(), GroupSpec::Tetrahedral);
        assert!(matches!("A4".parse::<GroupSpec>(), Err(Error::UnsupportedGroup(_))));
        assert!(matches!("C:1".parse::<GroupSpec>(), Err(Error::UnsupportedGroup(_))));
        assert!(matches!("X:2".parse::<GroupSpec>(), Err(Error::Config(_))));
        for spec in GroupSpec::catalogue() {
            assert_eq!(spec.to_string().parse::<GroupSpec>().unwrap(), spec);
        }
    }

    #[test]
    fn sigma3_irreps_and_natural_character() {
        let g = build_group(sigma3()).unwrap();
        let labels: Vec<_> = g.table.irreps[1..].iter().map(|r| (r.label.as_str(), r.dim)).collect();
        assert_eq!(labels, vec![("V1", 1), ("V2", 2)]);
        let classes: Vec<_> = g.classes.iter().map(|c| (c.size, c.element_order)).collect();
        assert_eq!(classes, vec![(1, 1), (3, 2), (2, 3)]);
        let chi_v: Vec<_> = g.natural.iter().map(|v| v.as_integer().unwrap()).collect();
        assert_eq!(chi_v, vec![3, -1, 0]);
    }

    #[test]
    fn klein_four_is_abelian() {
        let g = build_group(GroupSpec::Dihedral(2)).unwrap();
        assert_eq!(g.classes.len(), 4);
        assert!(g.table.irreps.iter().all(|r| r.dim == 1));
    }

    #[test]
    fn binary_group_shapes() {
        let b = build_binary_group(sigma3()).unwrap();
        assert_eq!(b.order, 12);
        let labels: Vec<_> = b.table.irreps[1..].iter().map(|r| r.label.as_str()).collect();
        assert_eq!(labels, vec!["V1", "V2", "U1", "U2", "U3"]);

        let z4 = build_binary_group(GroupSpec::Cyclic(2)).unwrap();
        assert_eq!(z4.order, 4);
        assert_eq!(z4.table.len(), 4);
        assert!(z4.table.irreps.iter().all(|r| r.dim == 1));

        let t = build_binary_group(GroupSpec::Tetrahedral).unwrap();
        let mut dims: Vec<_> = t.table.irreps.iter().map(|r| r.dim).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn central_involution_acts_as_minus_one() {
        for spec in GroupSpec::catalogue() {
            let b = build_binary_group(spec).unwrap();
            let z = b.central_involution.unwrap();
            assert_eq!(b.natural[z].as_integer(), Some(-2), "{spec}");
        }
    }

    #[test]
    fn root_system_labels() {
        assert_eq!(root_system_of(sigma3()).to_string(), "D5");
        assert_eq!(root_system_of(GroupSpec::Tetrahedral).to_string(), "E6");
        assert_eq!(root_system_of(GroupSpec::Cyclic(2)).to_string(), "A3");
    }

    #[test]
    fn sigma3_mckay_graph_is_affine_d5() {
        let data = McKayData::new(sigma3()).unwrap();
        let labels: Vec<_> = (0..5).map(|n| data.node_label(n).to_string()).collect();
        assert_eq!(labels, vec!["V1", "U1", "V2", "U2", "U3"]);
        assert_eq!(data.binary_nodes, vec![1, 3, 4]);
        assert_eq!(data.class_nodes, vec![0, 2]);
        let dims: Vec<i64> = data.binary.table.irreps.iter().map(|r| r.dim as i64).collect();
        assert!(data.graph.marks_in_kernel(&dims));
    }

    #[test]
    fn pullbacks_of_z4() {
        let b = build_binary_group(GroupSpec::Cyclic(2)).unwrap();
        // rows: V0, V1 (pullbacks = chi_0, chi_2), then U1 = chi_1, U2 = chi_3
        let flags: Vec<bool> = (0..4).map(|i| pulls_back(&b, i).unwrap()).collect();
        assert_eq!(flags, vec![true, true, false, false]);
        let data = McKayData::new(GroupSpec::Cyclic(2)).unwrap();
        assert_eq!(data.binary_nodes, vec![0, 2]);
    }

    #[test]
    fn every_group_has_a_mckay_dictionary() {
        let tol = Precision::default().epsilon(ROUNDING_RESIDUAL_EXP);
        for spec in GroupSpec::catalogue() {
            let data = McKayData::new(spec).unwrap();
            for model in [&data.group, &data.binary] {
                assert!(model.orthogonality_defect() < tol, "{}", model.name());
                assert!(model.column_orthogonality_defect() < tol, "{}", model.name());
            }
            assert_eq!(data.class_nodes.len(), data.group.table.len() - 1);
            let dims: Vec<i64> = data.binary.table.irreps.iter().map(|r| r.dim as i64).collect();
            assert!(data.graph.marks_in_kernel(&dims), "{spec}");
        }
    }

    #[test]
    fn ages() {
        assert_eq!(age([0, 0, 0], 1).unwrap(), Ratio::from_integer(0));
        for n in 2..9 {
            for k in 1..n {
                assert_eq!(age([0, k, n - k], n).unwrap(), Ratio::from_integer(1));
            }
        }
        assert_eq!(age([1, 1, 1], 3).unwrap(), Ratio::from_integer(1));
        assert_eq!(age([2, 2, 2], 3).unwrap(), Ratio::from_integer(2));
        assert!(age([3, 0, 0], 3).is_err());
        assert!(age([1, 0, 0], 3).is_err());
    }

    #[test]
    fn sigma3_ages() {
        let g = build_group(sigma3()).unwrap();
        let report = hard_lefschetz_check(&g).unwrap();
        let ages: Vec<_> = report.entries.iter().map(|e| *e.age.numer()).collect();
        assert_eq!(ages, vec![0, 1, 1]);
        assert!(report.hard_lefschetz && report.all_nontrivial_age_one);
    }

    #[test]
    fn diagonal_order_three_breaks_hard_lefschetz() {
        let report = lefschetz_from_exponents(&[("g".into(), [1, 1, 1], 3)]).unwrap();
        assert_eq!(report.entries[0].age, Ratio::from_integer(1));
        assert_eq!(report.entries[0].inverse_age, Ratio::from_integer(2));
        assert!(!report.hard_lefschetz);
    }
}
