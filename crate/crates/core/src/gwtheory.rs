//! Curve classes, genus-zero BPS counts, the reduced Gromov-Witten partition
//! function of the G-Hilbert scheme, its all-genus free energy, and the
//! normal bundles of exceptional curves.
//!
//! A curve class is indexed by `Irr*(G)` in character-table order (dimension
//! first). The class of a positive root is its restriction to non-binary
//! simple roots.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grouprep::{GroupSpec, McKayData};
use crate::numeric::ratio_string;
use crate::rootsys::RootVector;
use crate::series::{curve_vars, macmahon_factor, macmahon_log, sin_power_expansion, MultiSeries, Truncation, VarKind};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct CurveClass(pub Vec<i64>);

impl CurveClass {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `self / d` when every coordinate is divisible by `d`.
    pub fn divide(&self, d: i64) -> Option<CurveClass> {
        self.0
            .iter()
            .all(|c| c % d == 0)
            .then(|| CurveClass(self.0.iter().map(|c| c / d).collect()))
    }

    /// Positive integers `d` with `self / d` a lattice point.
    pub fn divisors(&self) -> Vec<i64> {
        let g = self.0.iter().fold(0i64, |acc, &c| num_integer::gcd(acc, c));
        (1..=g).filter(|d| g % d == 0).collect()
    }

    fn exps(&self) -> Vec<i32> {
        self.0.iter().map(|&c| c as i32).collect()
    }
}

impl std::fmt::Display for CurveClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Sort key: by degree, larger leading coordinates first.
fn class_order(a: &CurveClass, b: &CurveClass) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| b.0.cmp(&a.0))
}

/// `c(alpha)`: the coefficients of `alpha` at the nodes of `Irr*(G)`.
pub fn curve_class(data: &McKayData, alpha: &RootVector) -> Result<CurveClass> {
    if !data.roots.positive_roots.contains(alpha) {
        return Err(Error::Precondition(format!(
            "{alpha} is not a positive root of {}",
            data.roots.ade
        )));
    }
    Ok(restrict(data, alpha))
}

fn restrict(data: &McKayData, alpha: &RootVector) -> CurveClass {
    CurveClass(data.class_nodes.iter().map(|&n| alpha.0[n]).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BpsEntry {
    pub class: CurveClass,
    #[serde(serialize_with = "ser_rational")]
    pub n0: BigRational,
    pub fiber_size: usize,
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(r))
}

/// Genus-zero BPS counts; every higher-genus count vanishes.
#[derive(Clone, Debug, Serialize)]
pub struct BpsTable {
    pub group: String,
    pub class_labels: Vec<String>,
    pub entries: Vec<BpsEntry>,
    /// Number of positive roots with `c(alpha) = 0`.
    pub binary_roots: usize,
}

impl BpsTable {
    pub fn n0(&self, beta: &CurveClass) -> BigRational {
        self.entries
            .iter()
            .find(|e| &e.class == beta)
            .map(|e| e.n0.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn rank(&self) -> usize {
        self.class_labels.len()
    }
}

pub fn bps_table(data: &McKayData) -> BpsTable {
    let mut fibers: BTreeMap<CurveClass, usize> = BTreeMap::new();
    let mut binary_roots = 0;
    for alpha in &data.roots.positive_roots {
        let c = restrict(data, alpha);
        if c.is_zero() {
            binary_roots += 1;
        } else {
            *fibers.entry(c).or_default() += 1;
        }
    }
    let mut entries: Vec<BpsEntry> = fibers
        .into_iter()
        .map(|(class, n)| BpsEntry {
            class,
            n0: BigRational::new(BigInt::from(n), BigInt::from(2)),
            fiber_size: n,
        })
        .collect();
    entries.sort_by(|a, b| class_order(&a.class, &b.class));
    BpsTable {
        group: data.spec.to_string(),
        class_labels: data.class_labels(),
        entries,
        binary_roots,
    }
}

pub fn bps_table_for(spec: GroupSpec) -> Result<BpsTable> {
    Ok(bps_table(&McKayData::new(spec)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct Factor {
    pub class: CurveClass,
    #[serde(serialize_with = "ser_rational")]
    pub weight: BigRational,
}

/// `Z = prod_beta M(q^beta)^{n0_beta}` in the variables `q1..qn, Q`.
#[derive(Clone, Debug)]
pub struct PartitionFunction {
    pub series: MultiSeries,
    pub factors: Vec<Factor>,
}

/// The product over BPS classes, `exp(sum_beta n0_beta log M(q^beta))`.
pub fn partition_function(bps: &BpsTable, tr: Truncation) -> Result<PartitionFunction> {
    let vars = curve_vars(bps.rank());
    let mut log = MultiSeries::zero(vars.clone(), tr);
    for e in &bps.entries {
        log = log.try_add(&macmahon_log(&e.class.exps(), &e.n0, &vars, tr)?)?;
    }
    Ok(PartitionFunction {
        series: log.exp()?,
        factors: bps
            .entries
            .iter()
            .map(|e| Factor {
                class: e.class.clone(),
                weight: e.n0.clone(),
            })
            .collect(),
    })
}

/// The product over positive roots with `c(alpha) != 0` of `M(q^{c(alpha)})^{1/2}`,
/// multiplied factor by factor.
pub fn partition_function_per_root(data: &McKayData, tr: Truncation) -> Result<PartitionFunction> {
    let vars = curve_vars(data.class_nodes.len());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut z = MultiSeries::one(vars.clone(), tr);
    let mut factors = Vec::new();
    for alpha in &data.roots.positive_roots {
        let c = restrict(data, alpha);
        if c.is_zero() {
            continue;
        }
        z = z.try_mul(&macmahon_factor(&c.exps(), &half, &vars, tr)?)?;
        factors.push(Factor {
            class: c,
            weight: half.clone(),
        });
    }
    Ok(PartitionFunction { series: z, factors })
}

/// `N^0_beta = sum_{d | beta} n0_{beta/d} / d^3`.
pub fn gw_genus0(bps: &BpsTable, beta: &CurveClass) -> Result<BigRational> {
    gw_all_genus(bps, beta, 0)
}

/// `N^g_beta = sum_{d | beta} n0_{beta/d} [lambda^{2g-2}] (1/d)(2 sin(d lambda/2))^{-2}`.
pub fn gw_all_genus(bps: &BpsTable, beta: &CurveClass, g: u32) -> Result<BigRational> {
    if beta.0.len() != bps.rank() {
        return Err(Error::Precondition(format!(
            "class {beta} has {} coordinates, expected {}",
            beta.0.len(),
            bps.rank()
        )));
    }
    if beta.is_zero() || beta.0.iter().any(|&c| c < 0) {
        return Err(Error::Precondition(format!(
            "GW invariants need a nonzero effective class, got {beta}"
        )));
    }
    let power = 2 * g as i32 - 2;
    let mut total = BigRational::zero();
    for d in beta.divisors() {
        let n0 = bps.n0(&beta.divide(d).expect("divisor"));
        if n0.is_zero() {
            continue;
        }
        let s = sin_power_expansion(d as u32, 0, power.max(0))?;
        total += n0 * s.coeff(&[power]);
    }
    Ok(total)
}

/// Outcome of comparing `log Z` with the all-genus free energy.
#[derive(Clone, Debug, Serialize)]
pub struct FreeEnergyCheck {
    pub classes_checked: usize,
    pub coefficients_checked: usize,
    pub mismatches: Vec<String>,
}

impl FreeEnergyCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Expands `log Z` in `q, Q`, splits the coefficient of each `q^gamma` into the
/// blocks `B_k(Q) = -(1/k) sum_m m Q^{km}`, replaces `B_k` by the Laurent series
/// `(1/k)(2 sin(k lambda/2))^{-2}`, and compares with `sum_g N^g_gamma lambda^{2g-2}`
/// up to `lambda^L`. Only multiplicities `k <= M` are resolvable in `Q`.
pub fn free_energy_check(bps: &BpsTable, tr: Truncation) -> Result<FreeEnergyCheck> {
    let z = partition_function(bps, tr)?;
    let log = z.series.log()?;
    let qi = log.var_index(VarKind::FormalQ).expect("Q variable");
    let m_max = tr.q_series_degree as i64;

    let mut by_class: BTreeMap<Vec<i64>, BTreeMap<i64, BigRational>> = BTreeMap::new();
    for (mono, c) in log.terms() {
        let gamma: Vec<i64> = mono.exps[..qi].iter().map(|&e| e as i64).collect();
        by_class
            .entry(gamma)
            .or_default()
            .insert(mono.exps[qi] as i64, c.clone());
    }

    let mut out = FreeEnergyCheck {
        classes_checked: 0,
        coefficients_checked: 0,
        mismatches: Vec::new(),
    };
    for (gamma, mut q_coeffs) in by_class {
        let gamma = CurveClass(gamma);
        out.classes_checked += 1;
        let mut weights: BTreeMap<i64, BigRational> = BTreeMap::new();
        for k in gamma.divisors().into_iter().filter(|&k| k <= m_max) {
            // B_k = -(1/k)(Q^k + 2 Q^{2k} + ...)
            let w = -q_coeffs.get(&k).cloned().unwrap_or_else(BigRational::zero) * BigRational::from_integer(k.into());
            if !w.is_zero() {
                let mut m = 1;
                while k * m <= m_max {
                    let entry = q_coeffs.entry(k * m).or_insert_with(BigRational::zero);
                    *entry += &w * BigRational::new(BigInt::from(m), BigInt::from(k));
                    m += 1;
                }
            }
            weights.insert(k, w);
        }
        q_coeffs.retain(|_, c| !c.is_zero());
        if !q_coeffs.is_empty() {
            out.mismatches
                .push(format!("{gamma}: Q-coefficients outside the B_k span: {q_coeffs:?}"));
            continue;
        }
        let resolvable = gamma.divisors().into_iter().all(|k| k <= m_max);
        if !resolvable {
            continue;
        }
        for (k, w) in &weights {
            let expected = bps.n0(&gamma.divide(*k).expect("divisor"));
            if *w != expected {
                out.mismatches.push(format!(
                    "{gamma}: weight of B_{k} is {}, BPS count of the quotient is {}",
                    ratio_string(w),
                    ratio_string(&expected)
                ));
            }
        }
        let mut lambda_side: BTreeMap<i32, BigRational> = BTreeMap::new();
        for (k, w) in &weights {
            if w.is_zero() {
                continue;
            }
            let s = sin_power_expansion(*k as u32, 0, tr.lambda_order)?;
            for (mono, c) in s.terms() {
                *lambda_side.entry(mono.exps[0]).or_insert_with(BigRational::zero) += w * c;
            }
        }
        let mut g = 0u32;
        while 2 * g as i32 - 2 <= tr.lambda_order {
            let power = 2 * g as i32 - 2;
            let lhs = lambda_side.get(&power).cloned().unwrap_or_else(BigRational::zero);
            let rhs = gw_all_genus(bps, &gamma, g)?;
            out.coefficients_checked += 1;
            if lhs != rhs {
                out.mismatches.push(format!(
                    "{gamma}, genus {g}: log Z gives {}, BPS formula gives {}",
                    ratio_string(&lhs),
                    ratio_string(&rhs)
                ));
            }
            g += 1;
        }
    }
    Ok(out)
}

/// The reduced DT partition function: the series of [`partition_function`] with
/// `Q` standing for the box-counting variable.
#[derive(Clone, Debug)]
pub struct DtPartition {
    pub tag: &'static str,
    pub series: MultiSeries,
    pub factors: Vec<Factor>,
}

pub const DT_TAG: &str = "reduced DT prediction";

pub fn dt_partition(bps: &BpsTable, tr: Truncation) -> Result<DtPartition> {
    let z = partition_function(bps, tr)?;
    Ok(DtPartition {
        tag: DT_TAG,
        series: z.series,
        factors: z.factors,
    })
}

/// Splitting type `(-k, k-2)` of the normal bundle of the curve of `Irr*(G)`
/// member `index`, where `k` counts binary simple roots adjacent to its node.
pub fn normal_bundle_type(data: &McKayData, index: usize) -> Result<(i64, i64)> {
    let node = *data.class_nodes.get(index).ok_or_else(|| {
        Error::Precondition(format!(
            "Irr*(G) has {} members, index {index} out of range",
            data.class_nodes.len()
        ))
    })?;
    let k = data.roots.neighbours(node).filter(|&n| data.is_binary_node(n)).count() as i64;
    Ok((-k, k - 2))
}

/// `|c^{-1}(beta)|` for every class in the image of `c`.
pub fn fiber_sizes(bps: &BpsTable) -> Vec<usize> {
    bps.entries.iter().map(|e| e.fiber_size).collect()
}

pub fn is_allowed_fiber_size(n: usize) -> bool {
    matches!(n, 0 | 1 | 2 | 4 | 8)
}

/// `true` when every `2 n0` is a nonnegative integer.
pub fn half_integral(bps: &BpsTable) -> bool {
    bps.entries.iter().all(|e| {
        let twice = &e.n0 * BigRational::from_integer(2.into());
        twice.is_integer() && !twice.is_negative()
    })
}
