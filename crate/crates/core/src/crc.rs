//! The predicted genus-zero orbifold potential of `[C^3/G]`.
//!
//! ```text
//! X_rho  = 2 pi dim(rho)/|G| + sum_(g) L_rho^(g) x_(g)
//! L_rho^(g) = sqrt(3 - chi_V(g)) chi_rho(g) / |C(g)|
//! F^X(x) = 1/2 sum_{alpha in R+} h(pi + sum_rho alpha^rho X_rho),   h'''(s) = tan(-s/2)/2
//! ```
//!
//! Variables `x_(g)` are indexed by the nontrivial conjugacy classes of `G` in
//! table order. Roots with `c(alpha) = 0` have a constant argument and add
//! nothing in degree three and above; every other root is checked against the
//! poles of `h'''`.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grouprep::{GroupSpec, McKayData};
use crate::intersect::threefold_integrals;
use crate::numeric::{ratio_string, Complex, Precision, Real};

/// `P_j` with `d^j/dθ^j tan θ = P_j(tan θ)`: `P_0 = T`, `P_{j+1} = (1 + T^2) P_j'`.
pub fn tan_derivative_polynomial(j: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(), BigInt::one()];
    for _ in 0..j {
        let deriv: Vec<BigInt> = p.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect();
        let mut next = vec![BigInt::zero(); deriv.len() + 2];
        for (k, c) in deriv.iter().enumerate() {
            next[k] += c;
            next[k + 2] += c;
        }
        while next.len() > 1 && next.last().is_some_and(|c| c.is_zero()) {
            next.pop();
        }
        p = next;
    }
    p
}

fn eval_poly_real(p: &[BigInt], t: &Real, prec: Precision) -> Real {
    let mut acc = Real::zero(prec);
    for c in p.iter().rev() {
        acc = &(&acc * t) + &Real::from_bigint(c, prec);
    }
    acc
}

fn eval_poly_complex(p: &[BigInt], t: &Complex, prec: Precision) -> Complex {
    let mut acc = Complex::zero(prec);
    for c in p.iter().rev() {
        acc = &(&acc * t) + &Complex::from_real(Real::from_bigint(c, prec));
    }
    acc
}

fn pole_tolerance(prec: Precision) -> Real {
    prec.epsilon(prec.decimal_digits() / 2)
}

/// `h^(n)(s) = 1/2 (-1/2)^(n-3) P_{n-3}(tan(-s/2))` for `n >= 3`.
pub fn h_derivative(n: usize, s: &Real) -> Result<Real> {
    if n < 3 {
        return Err(Error::Precondition(format!(
            "h is only determined up to terms of order below three; asked for derivative {n}"
        )));
    }
    let prec = s.precision();
    let half = s.div_i64(2);
    if half.cos().abs() < pole_tolerance(prec) {
        return Err(Error::Pole(format!("h''' has a pole at s = {s}")));
    }
    let t = (-&half).tan();
    let p = tan_derivative_polynomial(n - 3);
    let v = eval_poly_real(&p, &t, prec);
    // (-1/2)^(n-3) / 2
    let k = n - 3;
    let scaled = v.div_i64(1i64 << (k + 1));
    Ok(if k % 2 == 1 { -&scaled } else { scaled })
}

/// `X_rho` as an affine form in the class variables.
#[derive(Clone, Debug)]
pub struct LinearForm {
    pub irrep: String,
    pub constant: Real,
    pub coefficients: Vec<Complex>,
}

#[derive(Clone, Debug)]
struct RootTerm {
    root: usize,
    base: Real,
    linear: Vec<Complex>,
}

/// Everything the potential needs for one group, computed once.
#[derive(Clone, Debug)]
pub struct OrbifoldModel {
    pub spec: GroupSpec,
    pub precision: Precision,
    /// Labels of the nontrivial classes, the variables `x_(g)`.
    pub variables: Vec<String>,
    pub forms: Vec<LinearForm>,
    /// Index of the class of `g^-1`, per variable.
    pub inverse_variable: Vec<usize>,
    pub data: McKayData,
    terms: Vec<RootTerm>,
}

impl OrbifoldModel {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        Self::from_data(McKayData::new(spec)?)
    }

    pub fn with_precision(spec: GroupSpec, prec: Precision) -> Result<Self> {
        Self::from_data(McKayData::with_precision(spec, prec)?)
    }

    pub fn from_data(data: McKayData) -> Result<Self> {
        let g = &data.group;
        let prec = g.precision;
        let order = g.order as i64;
        let two_pi = Real::pi(prec).mul_i64(2);
        let nontrivial: Vec<usize> = (1..g.classes.len()).collect();
        let mut roots3 = Vec::with_capacity(nontrivial.len());
        for &c in &nontrivial {
            let arg = &Real::from_i64(3, prec) - &g.natural_values[c].re;
            if arg.is_negative() {
                return Err(Error::Consistency(format!(
                    "3 - chi_V is negative on class {}",
                    g.classes[c].label
                )));
            }
            roots3.push(arg.sqrt().div_i64(g.classes[c].centraliser_order(g.order) as i64));
        }
        let forms: Vec<LinearForm> = (1..g.table.len())
            .map(|rho| LinearForm {
                irrep: g.table.irreps[rho].label.clone(),
                constant: two_pi.mul_i64(g.table.irreps[rho].dim as i64).div_i64(order),
                coefficients: nontrivial
                    .iter()
                    .zip(&roots3)
                    .map(|(&c, r)| g.table.values[rho][c].scale(r))
                    .collect(),
            })
            .collect();

        let inverse_variable = nontrivial
            .iter()
            .map(|&c| {
                let conj: Vec<_> = g.table.exact.iter().map(|row| row[c].conj()).collect();
                nontrivial
                    .iter()
                    .position(|&d| {
                        g.table
                            .exact
                            .iter()
                            .zip(&conj)
                            .all(|(row, x)| (&row[d] + &(-x)).as_integer() == Some(0))
                    })
                    .ok_or_else(|| Error::Consistency(format!("no inverse class for {}", g.classes[c].label)))
            })
            .collect::<Result<Vec<_>>>()?;

        let mut terms = Vec::new();
        let pi = Real::pi(prec);
        for (idx, alpha) in data.roots.positive_roots.iter().enumerate() {
            let coords: Vec<i64> = data.class_nodes.iter().map(|&n| alpha.0[n]).collect();
            if coords.iter().all(|&a| a == 0) {
                continue;
            }
            let mut base = pi.clone();
            let mut linear = vec![Complex::zero(prec); nontrivial.len()];
            for (a, form) in coords.iter().zip(&forms) {
                if *a == 0 {
                    continue;
                }
                base = &base + &form.constant.mul_i64(*a);
                for (l, c) in linear.iter_mut().zip(&form.coefficients) {
                    *l = &*l + &c.scale_i64(*a);
                }
            }
            if base.div_i64(2).cos().abs() < pole_tolerance(prec) {
                return Err(Error::Pole(format!(
                    "positive root {alpha} puts h''' on a pole at x = 0"
                )));
            }
            terms.push(RootTerm {
                root: idx,
                base,
                linear,
            });
        }
        let variables = nontrivial.iter().map(|&c| g.classes[c].label.clone()).collect();
        Ok(OrbifoldModel {
            spec: data.spec,
            precision: prec,
            variables,
            forms,
            inverse_variable,
            data,
            terms,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.variables.len()
    }

    /// Positive roots contributing in degree three and above.
    pub fn contributing_roots(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.root).collect()
    }
}

/// Multi-indices of total degree `n` over `k` variables, leading variable first.
pub fn monomials(k: usize, n: u32) -> Vec<Vec<u32>> {
    fn rec(k: usize, n: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=n).rev() {
            prefix.push(e);
            rec(k - 1, n - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(k, n, &mut Vec::new(), &mut out);
    }
    out
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

/// `prod_g m_g^{k_g} / k_g!`.
fn monomial_weight(m: &[Complex], k: &[u32], prec: Precision) -> Complex {
    let mut acc = Complex::one(prec);
    let mut den = 1i64;
    for (mg, &e) in m.iter().zip(k) {
        if e > 0 {
            acc = &acc * &mg.powi(e);
            den *= factorial(e);
        }
    }
    Complex::new(acc.re.div_i64(den), acc.im.div_i64(den))
}

#[derive(Clone, Debug)]
pub struct PotentialTerm {
    pub exponents: Vec<u32>,
    pub coefficient: Complex,
}

impl PotentialTerm {
    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

/// Taylor coefficients of `F^X` at `x = 0` in degrees `3..=N`.
#[derive(Clone, Debug)]
pub struct PotentialSeries {
    pub variables: Vec<String>,
    pub max_degree: u32,
    pub terms: Vec<PotentialTerm>,
    pub precision: Precision,
}

impl PotentialSeries {
    pub fn coefficient(&self, exponents: &[u32]) -> Option<&Complex> {
        self.terms
            .iter()
            .find(|t| t.exponents == exponents)
            .map(|t| &t.coefficient)
    }

    /// Largest imaginary part over all coefficients.
    pub fn max_imaginary(&self) -> Real {
        let mut worst = Real::zero(self.precision);
        for t in &self.terms {
            let v = t.coefficient.im.abs();
            if v > worst {
                worst = v;
            }
        }
        worst
    }

    pub fn to_json(&self) -> Vec<PotentialTermJson> {
        let tol = self.precision.epsilon(20);
        self.terms
            .iter()
            .map(|t| PotentialTermJson {
                degree: t.degree(),
                exponents: t.exponents.clone(),
                coefficient: t.coefficient.re.to_decimal(30),
                rational_guess: t.coefficient.re.rational_guess(1_000_000, &tol).map(|r| {
                    ratio_string(&num_rational::BigRational::new(
                        BigInt::from(*r.numer()),
                        BigInt::from(*r.denom()),
                    ))
                }),
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PotentialTermJson {
    pub degree: u32,
    pub exponents: Vec<u32>,
    pub coefficient: String,
    pub rational_guess: Option<String>,
}

/// `1/2 sum_alpha h^(n)(s_alpha) prod_g m_{alpha,g}^{k_g}/k_g!` for each monomial.
pub fn orbifold_potential(model: &OrbifoldModel, max_degree: u32) -> Result<PotentialSeries> {
    if max_degree < 3 {
        return Err(Error::Precondition(format!(
            "the potential is defined from degree three; asked for degree {max_degree}"
        )));
    }
    let prec = model.precision;
    let mut terms = Vec::new();
    for n in 3..=max_degree {
        let h: Vec<Real> = model
            .terms
            .iter()
            .map(|t| h_derivative(n as usize, &t.base))
            .collect::<Result<_>>()?;
        for k in monomials(model.n_vars(), n) {
            let mut acc = Complex::zero(prec);
            for (t, hn) in model.terms.iter().zip(&h) {
                acc = &acc + &monomial_weight(&t.linear, &k, prec).scale(hn);
            }
            terms.push(PotentialTerm {
                exponents: k,
                coefficient: Complex::new(acc.re.div_i64(2), acc.im.div_i64(2)),
            });
        }
    }
    let series = PotentialSeries {
        variables: model.variables.clone(),
        max_degree,
        terms,
        precision: prec,
    };
    let imag = series.max_imaginary();
    if imag > prec.epsilon(prec.decimal_digits() / 2) {
        return Err(Error::Consistency(format!(
            "orbifold potential has imaginary part {imag}"
        )));
    }
    Ok(series)
}

/// `-1/4 sum_alpha m_k m_k' m_k'' tan(1/2 sum_rho alpha^rho X_rho(x) + pi/2)`.
pub fn third_partial(model: &OrbifoldModel, k: [usize; 3], x: &[Real]) -> Result<Complex> {
    let n = model.n_vars();
    if k.iter().any(|&i| i >= n) || x.len() != n {
        return Err(Error::Precondition(format!(
            "third partial needs indices below {n} and a point with {n} coordinates"
        )));
    }
    let prec = model.precision;
    let mut acc = Complex::zero(prec);
    for t in &model.terms {
        let prod = &(&t.linear[k[0]] * &t.linear[k[1]]) * &t.linear[k[2]];
        let mut arg = Complex::from_real(t.base.clone());
        for (m, xi) in t.linear.iter().zip(x) {
            arg = &arg + &m.scale(xi);
        }
        let half = Complex::new(arg.re.div_i64(2), arg.im.div_i64(2));
        if half.cos().abs() < pole_tolerance(prec) {
            return Err(Error::Pole(format!(
                "root {} hits a pole of tan",
                model.data.roots.positive_roots[t.root]
            )));
        }
        acc = &acc + &(&prod * &half.tan());
    }
    Ok(Complex::new(-acc.re.div_i64(4), -acc.im.div_i64(4)))
}

/// Taylor coefficients `b_0..b_{order-1}` of `F_{k k' k''}(u * direction)` in `u`,
/// from repeated differentiation of the closed tan formula.
pub fn third_partial_series(
    model: &OrbifoldModel,
    k: [usize; 3],
    direction: &[Real],
    order: usize,
) -> Result<Vec<Complex>> {
    let n = model.n_vars();
    if k.iter().any(|&i| i >= n) || direction.len() != n {
        return Err(Error::Precondition("bad indices or direction for third partial".into()));
    }
    let prec = model.precision;
    let polys: Vec<Vec<BigInt>> = (0..order).map(tan_derivative_polynomial).collect();
    let mut out = vec![Complex::zero(prec); order];
    for t in &model.terms {
        let prod = &(&t.linear[k[0]] * &t.linear[k[1]]) * &t.linear[k[2]];
        let tan = Complex::from_real(t.base.div_i64(2).tan());
        // slope of the tan argument along the direction
        let mut b = Complex::zero(prec);
        for (m, d) in t.linear.iter().zip(direction) {
            b = &b + &m.scale(d);
        }
        let b = Complex::new(b.re.div_i64(2), b.im.div_i64(2));
        let mut b_pow = Complex::one(prec);
        for (j, p) in polys.iter().enumerate() {
            let dj = eval_poly_complex(p, &tan, prec);
            let term = &(&prod * &dj) * &b_pow;
            let term = Complex::new(
                term.re.div_i64(factorial(j as u32)),
                term.im.div_i64(factorial(j as u32)),
            );
            out[j] = &out[j] + &term;
            b_pow = &b_pow * &b;
        }
    }
    Ok(out
        .into_iter()
        .map(|c| Complex::new(-c.re.div_i64(4), -c.im.div_i64(4)))
        .collect())
}

/// `B(u) = F_112(0, -u)` for `Σ3 = Dihedral(3)`: Taylor coefficients `b_0..b_{order-1}`.
pub fn b_series(model: &OrbifoldModel, order: usize) -> Result<Vec<Real>> {
    if model.spec != GroupSpec::Dihedral(3) {
        return Err(Error::Precondition(format!(
            "B(u) is defined for D:3, not {}",
            model.spec
        )));
    }
    let prec = model.precision;
    let dir = vec![Real::zero(prec), -&Real::one(prec)];
    let c = third_partial_series(model, [0, 0, 1], &dir, order)?;
    Ok(c.into_iter().map(|z| z.re).collect())
}

/// `y_rho = i sum_g L_rho^(g) x_(g)`, `q_rho = exp(2 pi i dim(rho)/|G|)`.
#[derive(Clone, Debug)]
pub struct ChangeOfVariables {
    pub irreps: Vec<String>,
    pub variables: Vec<String>,
    /// `y_substitution[rho][g] = i L_rho^(g)`.
    pub y_substitution: Vec<Vec<Complex>>,
    pub q_values: Vec<Complex>,
    /// `dim(rho)/|G|` as the turn count of `q_rho`.
    pub q_turns: Vec<Ratio<i64>>,
}

pub fn change_of_variables(model: &OrbifoldModel) -> ChangeOfVariables {
    let g = &model.data.group;
    let prec = model.precision;
    let q_turns: Vec<Ratio<i64>> = g.table.irreps[1..]
        .iter()
        .map(|r| Ratio::new(r.dim as i64, g.order as i64))
        .collect();
    ChangeOfVariables {
        irreps: model.forms.iter().map(|f| f.irrep.clone()).collect(),
        variables: model.variables.clone(),
        y_substitution: model
            .forms
            .iter()
            .map(|f| f.coefficients.iter().map(|c| c.mul_i()).collect())
            .collect(),
        q_values: q_turns.iter().map(|&t| Complex::from_turns(t, prec)).collect(),
        q_turns,
    }
}

/// Eulerian polynomial `A_k(z) = sum_m A(k, m) z^m`, `A_0 = 1`.
pub fn eulerian_polynomial(k: usize) -> Vec<BigInt> {
    let mut a = vec![BigInt::one()];
    for n in 1..=k {
        let mut next = vec![BigInt::zero(); n];
        for (m, slot) in next.iter_mut().enumerate() {
            let mut v = BigInt::zero();
            if m < a.len() {
                v += &a[m] * BigInt::from(m + 1);
            }
            if m >= 1 && m - 1 < a.len() {
                v += &a[m - 1] * BigInt::from(n - m);
            }
            *slot = v;
        }
        a = next;
    }
    a
}

/// `Li_{-k}(z) = z A_k(z) / (1 - z)^{k+1}` for `k >= 0`.
pub fn polylog_nonpositive(k: usize, z: &Complex, prec: Precision) -> Complex {
    let num = &eval_poly_complex(&eulerian_polynomial(k), z, prec) * z;
    let one_minus = &Complex::one(prec) - z;
    &num / &one_minus.powi(k as u32 + 1)
}

#[derive(Clone, Debug, Serialize)]
pub struct SectorCheck {
    pub class: String,
    pub expected: String,
    pub resolution_side: String,
    pub deviation: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrcCheck {
    pub max_degree: u32,
    pub coefficients_compared: usize,
    /// Largest `|F^X - F^Y|` over the compared Taylor coefficients.
    pub max_deviation: String,
    pub identity_sector: String,
    pub twisted_sectors: Vec<SectorCheck>,
    pub passed: bool,
}

/// Expands `F^Y = F_cl + sum_{alpha,d} q^{d c(alpha)} e^{d alpha.y} / (2 d^3)` under the
/// change of variables and compares its Taylor coefficients with [`orbifold_potential`]:
/// the coefficient of `x^k` (degree `n`) is
/// `1/2 sum_alpha i^n Li_{3-n}(e^{i theta_alpha}) prod m^k/k!`, plus the classical cubic
/// term in degree three. The untwisted-direction constants are compared with
/// `-sum g_{rho rho'} L_rho^(g) L_rho'^(g^-1) = 1/(t |C(g)|)`.
pub fn crc_consistency(model: &OrbifoldModel, max_degree: u32, tol_exp: u32) -> Result<CrcCheck> {
    let prec = model.precision;
    let fx = orbifold_potential(model, max_degree)?;
    let ints = threefold_integrals(&model.data);
    let nv = model.n_vars();
    let mut worst = Real::zero(prec);
    let mut compared = 0;
    for term in &fx.terms {
        let n = term.degree();
        let mut acc = Complex::zero(prec);
        for t in &model.terms {
            let z = Complex::cis(&(&t.base - &Real::pi(prec)));
            let li = polylog_nonpositive((n - 3) as usize, &z, prec);
            let i_n = Complex::i(prec).powi(n);
            acc = &acc + &(&(&i_n * &li) * &monomial_weight(&t.linear, &term.exponents, prec));
        }
        let mut fy = Complex::new(acc.re.div_i64(2), acc.im.div_i64(2));
        if n == 3 {
            // i^3 sum_{abc} <gamma_a gamma_b gamma_c> L_a L_b L_c prod / k!
            let l: Vec<Vec<Complex>> = model.forms.iter().map(|f| f.coefficients.clone()).collect();
            let idx: Vec<usize> = term
                .exponents
                .iter()
                .enumerate()
                .flat_map(|(g, &e)| std::iter::repeat_n(g, e as usize))
                .collect();
            let mut cl = Complex::zero(prec);
            let r = l.len();
            for a in 0..r {
                for b in 0..r {
                    for c in 0..r {
                        let v = &ints.three_point.entries[a][b][c];
                        if v.is_zero() {
                            continue;
                        }
                        let p = &(&l[a][idx[0]] * &l[b][idx[1]]) * &l[c][idx[2]];
                        cl = &cl + &p.scale(&Real::from_ratio(v, prec));
                    }
                }
            }
            let den: i64 = term.exponents.iter().map(|&e| factorial(e)).product();
            let cl = &Complex::new(cl.re.div_i64(den), cl.im.div_i64(den)) * &Complex::i(prec).powi(3);
            fy = &fy + &cl;
        }
        let d = (&fy - &term.coefficient).abs();
        if d > worst {
            worst = d;
        }
        compared += 1;
    }

    let g = &model.data.group;
    let tol = prec.epsilon(tol_exp);
    let mut twisted_sectors = Vec::with_capacity(nv);
    let mut sectors_ok = true;
    for v in 0..nv {
        let inv = model.inverse_variable[v];
        let mut acc = Complex::zero(prec);
        for (a, fa) in model.forms.iter().enumerate() {
            for (b, fb) in model.forms.iter().enumerate() {
                let gab = &ints.two_point.entries[a][b];
                if gab.is_zero() {
                    continue;
                }
                let p = &fa.coefficients[v] * &fb.coefficients[inv];
                acc = &acc - &p.scale(&Real::from_ratio(gab, prec));
            }
        }
        let c = g.classes[v + 1].centraliser_order(g.order) as i64;
        let expected = Real::one(prec).div_i64(c);
        let dev = (&acc - &Complex::from_real(expected.clone())).abs();
        sectors_ok &= dev < tol;
        twisted_sectors.push(SectorCheck {
            class: model.variables[v].clone(),
            expected: format!("1/{c}*t^-1"),
            resolution_side: format!("{}*t^-1", acc.re.to_decimal(25)),
            deviation: dev.to_scientific(3),
        });
    }
    let identity_ok = ints.zero_point.t_power == -3
        && ints.zero_point.value == num_rational::BigRational::new(BigInt::one(), BigInt::from(g.order));
    Ok(CrcCheck {
        max_degree,
        coefficients_compared: compared,
        max_deviation: worst.to_scientific(3),
        identity_sector: ints.zero_point.to_string(),
        twisted_sectors,
        passed: worst < tol && sectors_ok && identity_ok,
    })
}
