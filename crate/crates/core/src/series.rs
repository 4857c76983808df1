//! Truncated multivariate power series with exact rational coefficients.
//!
//! Variables come in three kinds: curve variables `q_rho`, the formal variable
//! `Q`, and the genus parameter `lambda` (whose exponent may be negative).
//! Every coefficient may additionally carry an integer power of the
//! equivariant parameter `t`, which is a grading and never a series variable.
//!
//! Truncation is by total curve degree `D`, `Q`-degree `M` and `lambda` order
//! `L`; no coefficient outside those bounds is ever stored.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VarKind {
    Curve,
    FormalQ,
    Lambda,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Var {
    pub name: String,
    pub kind: VarKind,
}

impl Var {
    pub fn curve(name: impl Into<String>) -> Self {
        Var {
            name: name.into(),
            kind: VarKind::Curve,
        }
    }

    pub fn formal_q() -> Self {
        Var {
            name: "Q".into(),
            kind: VarKind::FormalQ,
        }
    }

    pub fn lambda() -> Self {
        Var {
            name: "lambda".into(),
            kind: VarKind::Lambda,
        }
    }
}

/// `q1..qn` followed by `Q`.
pub fn curve_vars(n: usize) -> Vec<Var> {
    let mut v: Vec<Var> = (1..=n).map(|i| Var::curve(format!("q{i}"))).collect();
    v.push(Var::formal_q());
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub q_total_degree: u32,
    pub q_series_degree: u32,
    pub lambda_order: i32,
}

impl Truncation {
    pub fn new(q_total_degree: u32, q_series_degree: u32, lambda_order: i32) -> Result<Self> {
        if lambda_order < 0 || lambda_order % 2 != 0 {
            return Err(Error::Config(format!(
                "lambda order must be a nonnegative even integer, got {lambda_order}"
            )));
        }
        Ok(Truncation {
            q_total_degree,
            q_series_degree,
            lambda_order,
        })
    }

    pub fn meet(&self, other: &Truncation) -> Truncation {
        Truncation {
            q_total_degree: self.q_total_degree.min(other.q_total_degree),
            q_series_degree: self.q_series_degree.min(other.q_series_degree),
            lambda_order: self.lambda_order.min(other.lambda_order),
        }
    }
}

/// Exponent vector plus `t`-power, ordered graded-lex: by total degree, then
/// with earlier variables dominating, then by `t`-power.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: Vec<i32>,
    pub t_power: i32,
}

impl Monomial {
    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&e| e as i64).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
            .then_with(|| self.t_power.cmp(&other.t_power))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSeries {
    vars: Vec<Var>,
    trunc: Truncation,
    coeffs: BTreeMap<Monomial, BigRational>,
}

impl MultiSeries {
    pub fn zero(vars: Vec<Var>, trunc: Truncation) -> Self {
        MultiSeries {
            vars,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(vars: Vec<Var>, trunc: Truncation) -> Self {
        Self::constant(vars, trunc, BigRational::one())
    }

    pub fn constant(vars: Vec<Var>, trunc: Truncation, c: BigRational) -> Self {
        let n = vars.len();
        let mut s = Self::zero(vars, trunc);
        s.add_term(vec![0; n], 0, c);
        s
    }

    /// `c * prod x_i^{e_i} * t^{t_power}`, dropped if outside the truncation.
    pub fn monomial(vars: Vec<Var>, trunc: Truncation, exps: Vec<i32>, t_power: i32, c: BigRational) -> Self {
        let mut s = Self::zero(vars, trunc);
        s.add_term(exps, t_power, c);
        s
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn truncation(&self) -> Truncation {
        self.trunc
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> BigRational {
        self.coeff_t(exps, 0)
    }

    pub fn coeff_t(&self, exps: &[i32], t_power: i32) -> BigRational {
        self.coeffs
            .get(&Monomial {
                exps: exps.to_vec(),
                t_power,
            })
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn var_index(&self, kind: VarKind) -> Option<usize> {
        self.vars.iter().position(|v| v.kind == kind)
    }

    pub fn within(&self, exps: &[i32]) -> bool {
        within(&self.vars, &self.trunc, exps)
    }

    fn add_term(&mut self, exps: Vec<i32>, t_power: i32, c: BigRational) {
        if c.is_zero() || !self.within(&exps) {
            return;
        }
        match self.coeffs.entry(Monomial { exps, t_power }) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    fn check_compatible(&self, other: &MultiSeries) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::IncompatibleVariables(format!(
                "[{}] vs [{}]",
                names(&self.vars),
                names(&other.vars)
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.check_compatible(other)?;
        let trunc = self.trunc.meet(&other.trunc);
        let mut out = MultiSeries::zero(self.vars.clone(), trunc);
        for (k, v) in self.coeffs.iter().chain(other.coeffs.iter()) {
            out.add_term(k.exps.clone(), k.t_power, v.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &MultiSeries) -> Result<MultiSeries> {
        self.check_compatible(other)?;
        let trunc = self.trunc.meet(&other.trunc);
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        let mut exps = vec![0i32; self.vars.len()];
        for (ka, va) in &self.coeffs {
            for (kb, vb) in &other.coeffs {
                for (i, e) in exps.iter_mut().enumerate() {
                    *e = ka.exps[i] + kb.exps[i];
                }
                if !within(&self.vars, &trunc, &exps) {
                    continue;
                }
                let key = Monomial {
                    exps: exps.clone(),
                    t_power: ka.t_power + kb.t_power,
                };
                *acc.entry(key).or_insert_with(BigRational::zero) += va * vb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(MultiSeries {
            vars: self.vars.clone(),
            trunc,
            coeffs: acc,
        })
    }

    pub fn neg(&self) -> MultiSeries {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> MultiSeries {
        let mut out = MultiSeries::zero(self.vars.clone(), self.trunc);
        if c.is_zero() {
            return out;
        }
        out.coeffs = self.coeffs.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        out
    }

    /// Multiplies by `t^k`.
    pub fn shift_t(&self, k: i32) -> MultiSeries {
        let mut out = MultiSeries::zero(self.vars.clone(), self.trunc);
        out.coeffs = self
            .coeffs
            .iter()
            .map(|(m, v)| {
                (
                    Monomial {
                        exps: m.exps.clone(),
                        t_power: m.t_power + k,
                    },
                    v.clone(),
                )
            })
            .collect();
        out
    }

    /// Restricts to a smaller truncation.
    pub fn truncate(&self, trunc: Truncation) -> MultiSeries {
        let trunc = self.trunc.meet(&trunc);
        let mut out = MultiSeries::zero(self.vars.clone(), trunc);
        out.coeffs = self
            .coeffs
            .iter()
            .filter(|(k, _)| within(&self.vars, &trunc, &k.exps))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        out
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// Sum of the curve and `Q` exponents; the grading used by `exp` and `log`.
    fn weight(&self, m: &Monomial) -> i64 {
        m.exps
            .iter()
            .zip(&self.vars)
            .filter(|(_, v)| v.kind != VarKind::Lambda)
            .map(|(&e, _)| e as i64)
            .sum()
    }

    fn max_weight(&self) -> i64 {
        let has_q = self.vars.iter().any(|v| v.kind == VarKind::FormalQ);
        self.trunc.q_total_degree as i64 + if has_q { self.trunc.q_series_degree as i64 } else { 0 }
    }

    fn graded_parts(&self) -> Vec<MultiSeries> {
        let top = self.max_weight().max(0) as usize;
        let mut parts = vec![MultiSeries::zero(self.vars.clone(), self.trunc); top + 1];
        for (k, v) in &self.coeffs {
            let w = self.weight(k) as usize;
            parts[w].coeffs.insert(k.clone(), v.clone());
        }
        parts
    }

    /// Truncated exponential; the argument must vanish in weight zero.
    pub fn exp(&self) -> Result<MultiSeries> {
        if self.coeffs.keys().any(|k| self.weight(k) == 0) {
            return Err(Error::Precondition(
                "exp needs a series without weight-zero terms".into(),
            ));
        }
        let a = self.graded_parts();
        let top = a.len() - 1;
        let mut f = vec![MultiSeries::one(self.vars.clone(), self.trunc)];
        for n in 1..=top {
            let mut fn_ = MultiSeries::zero(self.vars.clone(), self.trunc);
            for k in 1..=n {
                if a[k].is_empty() || f[n - k].is_empty() {
                    continue;
                }
                let term = a[k].try_mul(&f[n - k])?.scale(&BigRational::from_integer(k.into()));
                fn_ = fn_.try_add(&term)?;
            }
            f.push(fn_.scale(&BigRational::new(BigInt::one(), n.into())));
        }
        sum_parts(f, self.vars.clone(), self.trunc)
    }

    /// Truncated logarithm; the weight-zero part must be exactly `1`.
    pub fn log(&self) -> Result<MultiSeries> {
        let a = self.graded_parts();
        if a[0] != MultiSeries::one(self.vars.clone(), self.trunc) {
            return Err(Error::Precondition(
                "log needs a series whose weight-zero part is 1".into(),
            ));
        }
        let top = a.len() - 1;
        let mut l = vec![MultiSeries::zero(self.vars.clone(), self.trunc)];
        for n in 1..=top {
            let mut acc = a[n].scale(&BigRational::from_integer(n.into()));
            for k in 1..n {
                if l[k].is_empty() || a[n - k].is_empty() {
                    continue;
                }
                let term = l[k].try_mul(&a[n - k])?.scale(&BigRational::from_integer(k.into()));
                acc = acc.try_sub(&term)?;
            }
            l.push(acc.scale(&BigRational::new(BigInt::one(), n.into())));
        }
        sum_parts(l, self.vars.clone(), self.trunc)
    }

    /// `exp(r log a)` for a series with weight-zero part `1`.
    pub fn pow_rational(&self, r: &BigRational) -> Result<MultiSeries> {
        if r.is_zero() {
            self.log()?;
            return Ok(MultiSeries::one(self.vars.clone(), self.trunc));
        }
        self.log()?.scale(r).exp()
    }

    pub fn to_json(&self) -> Vec<SeriesTermJson> {
        self.coeffs
            .iter()
            .map(|(k, v)| SeriesTermJson {
                exponents: self
                    .vars
                    .iter()
                    .zip(&k.exps)
                    .filter(|(_, &e)| e != 0)
                    .map(|(var, &e)| (var.name.clone(), e))
                    .collect(),
                t_power: k.t_power,
                numerator: v.numer().to_string(),
                denominator: v.denom().to_string(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SeriesTermJson {
    pub exponents: BTreeMap<String, i32>,
    pub t_power: i32,
    pub numerator: String,
    pub denominator: String,
}

fn names(vars: &[Var]) -> String {
    vars.iter().map(|v| v.name.as_str()).collect::<Vec<_>>().join(", ")
}

fn within(vars: &[Var], trunc: &Truncation, exps: &[i32]) -> bool {
    let mut q_total = 0i64;
    for (v, &e) in vars.iter().zip(exps) {
        match v.kind {
            VarKind::Curve => {
                if e < 0 {
                    return false;
                }
                q_total += e as i64;
            }
            VarKind::FormalQ => {
                if e < 0 || e as i64 > trunc.q_series_degree as i64 {
                    return false;
                }
            }
            VarKind::Lambda => {
                if e < -2 || e > trunc.lambda_order {
                    return false;
                }
            }
        }
    }
    q_total <= trunc.q_total_degree as i64
}

fn sum_parts(parts: Vec<MultiSeries>, vars: Vec<Var>, trunc: Truncation) -> Result<MultiSeries> {
    let mut out = MultiSeries::zero(vars, trunc);
    for p in parts {
        for (k, v) in p.coeffs {
            out.coeffs.insert(k, v);
        }
    }
    out.coeffs.retain(|_, v| !v.is_zero());
    Ok(out)
}

impl fmt::Display for MultiSeries {
    /// Human-readable sum such as `1 - q1*Q + 1/2*q2^2*Q^2*t^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.coeffs.iter().enumerate() {
            let mut factors: Vec<String> = self
                .vars
                .iter()
                .zip(&k.exps)
                .filter(|(_, &e)| e != 0)
                .map(|(var, &e)| {
                    if e == 1 {
                        var.name.clone()
                    } else {
                        format!("{}^{}", var.name, e)
                    }
                })
                .collect();
            if k.t_power != 0 {
                factors.push(if k.t_power == 1 {
                    "t".into()
                } else {
                    format!("t^{}", k.t_power)
                });
            }
            let mag = v.abs();
            let sign = if v.is_negative() { "-" } else { "+" };
            if i == 0 {
                if v.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let c = crate::numeric::ratio_string(&mag);
            match (factors.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{c}")?,
                (false, true) => write!(f, "{}", factors.join("*"))?,
                (false, false) => write!(f, "{c}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

/// `prod_{m=1..M} (1 - q^beta Q^m)^{m w}` over the variables of [`curve_vars`].
pub fn macmahon_factor(beta: &[i32], w: &BigRational, vars: &[Var], trunc: Truncation) -> Result<MultiSeries> {
    macmahon_log(beta, w, vars, trunc)?.exp()
}

/// `-w sum_m sum_k m q^{k beta} Q^{k m} / k`, the logarithm of [`macmahon_factor`].
pub fn macmahon_log(beta: &[i32], w: &BigRational, vars: &[Var], trunc: Truncation) -> Result<MultiSeries> {
    let curve: Vec<usize> = (0..vars.len()).filter(|&i| vars[i].kind == VarKind::Curve).collect();
    let big_q = vars
        .iter()
        .position(|v| v.kind == VarKind::FormalQ)
        .ok_or_else(|| Error::IncompatibleVariables("MacMahon factor needs the variable Q".into()))?;
    if beta.len() != curve.len() {
        return Err(Error::IncompatibleVariables(format!(
            "class of length {} for {} curve variables",
            beta.len(),
            curve.len()
        )));
    }
    if beta.iter().all(|&b| b == 0) || beta.iter().any(|&b| b < 0) {
        return Err(Error::Precondition(format!(
            "MacMahon factor needs a nonzero effective class, got {beta:?}"
        )));
    }
    let mut out = MultiSeries::zero(vars.to_vec(), trunc);
    if w.is_zero() {
        return Ok(out);
    }
    let deg: i64 = beta.iter().map(|&b| b as i64).sum();
    let mut k = 1i64;
    while k * deg <= trunc.q_total_degree as i64 && k <= trunc.q_series_degree as i64 {
        let mut m = 1i64;
        while k * m <= trunc.q_series_degree as i64 {
            let mut exps = vec![0i32; vars.len()];
            for (&i, &b) in curve.iter().zip(beta) {
                exps[i] = (k * b as i64) as i32;
            }
            exps[big_q] = (k * m) as i32;
            let c = -w * BigRational::new(m.into(), k.into());
            out.add_term(exps, 0, c);
            m += 1;
        }
        k += 1;
    }
    Ok(out)
}

/// Univariate power series helpers on coefficient vectors `a[0..n]`.
fn series_mul(a: &[BigRational], b: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn series_inverse(a: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); n];
    out[0] = a[0].recip();
    for k in 1..n {
        let mut s = BigRational::zero();
        for j in 1..=k.min(a.len() - 1) {
            s += &a[j] * &out[k - j];
        }
        out[k] = -s * &out[0];
    }
    out
}

fn series_pow(a: &[BigRational], e: i64, n: usize) -> Vec<BigRational> {
    let base = if e < 0 {
        series_inverse(a, n)
    } else {
        a[..n.min(a.len())].to_vec()
    };
    let mut out = vec![BigRational::zero(); n];
    out[0] = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        out = series_mul(&out, &base, n);
    }
    out
}

/// `(1/d) (2 sin(d lambda / 2))^{2g-2}` as a Laurent series in `lambda` up to
/// `lambda^L`.
pub fn sin_power_expansion(d: u32, g: u32, lambda_order: i32) -> Result<MultiSeries> {
    if d == 0 {
        return Err(Error::Precondition("sin power expansion needs d >= 1".into()));
    }
    let trunc = Truncation::new(0, 0, lambda_order)?;
    let vars = vec![Var::lambda()];
    let lead = 2 * g as i32 - 2;
    let mut out = MultiSeries::zero(vars.clone(), trunc);
    if lead > lambda_order {
        return Ok(out);
    }
    // 2 sin(x/2) = x S(x^2), S(y) = sum_j (-1)^j y^j / (4^j (2j+1)!)
    let n = ((lambda_order - lead) / 2 + 1) as usize;
    let mut s = Vec::with_capacity(n);
    let mut fact = BigInt::one();
    for j in 0..n {
        if j > 0 {
            fact *= BigInt::from((2 * j) * (2 * j + 1));
        }
        let den = BigInt::from(4).pow(j as u32) * &fact;
        let sign = if j % 2 == 0 { 1 } else { -1 };
        s.push(BigRational::new(BigInt::from(sign), den));
    }
    let p = series_pow(&s, lead as i64, n);
    let d = BigInt::from(d);
    for (j, c) in p.into_iter().enumerate() {
        let e = lead + 2 * j as i32;
        // (d lambda)^e / d
        let scale = if e > 0 {
            BigRational::from_integer(d.pow((e - 1) as u32))
        } else {
            BigRational::new(BigInt::one(), d.pow((1 - e) as u32))
        };
        out.add_term(vec![e], 0, c * scale);
    }
    Ok(out)
}
