//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use qmckay::crc::{b_series, orbifold_potential, third_partial, OrbifoldModel};
use qmckay::grouprep::{hard_lefschetz_check, lefschetz_from_exponents, GroupSpec, McKayData, ROUNDING_RESIDUAL_EXP};
use qmckay::gwtheory::{
    bps_table, fiber_sizes, gw_genus0, partition_function, partition_function_per_root, CurveClass,
};
use qmckay::intersect::{is_identity, matrix_product, mckay_pairing, surface_integrals, threefold_integrals};
use qmckay::numeric::{Precision, Real};
use qmckay::rootsys::{positive_roots, AdeType, Family, RootSystemData};
use qmckay::series::{curve_vars, macmahon_factor, MultiSeries, Truncation, Var};

type Check = Result<(), String>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ensure(ok: bool, msg: impl Into<String>) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn d5() -> McKayData {
    McKayData::new(GroupSpec::Dihedral(3)).unwrap()
}

fn c1_d5_roots() -> Check {
    #[rustfmt::skip]
    let table: [[i64; 5]; 20] = [
        [0,0,0,1,0], [0,1,0,0,0], [0,0,0,0,1], [1,0,0,0,0], [0,0,1,0,0],
        [1,1,0,0,0], [0,1,1,0,0], [0,0,1,1,0], [0,0,1,0,1], [1,1,1,0,0],
        [0,1,1,1,0], [0,1,1,0,1], [0,0,1,1,1], [1,1,1,1,0], [1,1,1,0,1],
        [0,1,1,1,1], [0,1,2,1,1], [1,1,1,1,1], [1,1,2,1,1], [1,2,2,1,1],
    ];
    let want: BTreeSet<Vec<i64>> = table.iter().map(|r| r.to_vec()).collect();
    let roots = positive_roots(AdeType::new(Family::D, 5).unwrap());
    let got: BTreeSet<Vec<i64>> = roots.iter().map(|r| r.0.clone()).collect();
    ensure(
        roots.len() == 20 && got == want,
        format!("{} roots, sets equal: {}", roots.len(), got == want),
    )?;
    let data = d5();
    let labels: Vec<&str> = (0..5).map(|n| data.node_label(n)).collect();
    ensure(
        labels == ["V1", "U1", "V2", "U2", "U3"],
        format!("node dictionary {labels:?}"),
    )?;
    ensure(
        data.binary_nodes == [1, 3, 4],
        format!("binary nodes {:?}", data.binary_nodes),
    )
}

fn c2_d5_bps() -> Check {
    let bps = bps_table(&d5());
    let want = [
        ((1, 0), q(1, 1)),
        ((1, 1), q(2, 1)),
        ((0, 1), q(4, 1)),
        ((0, 2), q(1, 2)),
        ((1, 2), q(1, 1)),
    ];
    ensure(
        bps.entries.len() == want.len(),
        format!("{} entries", bps.entries.len()),
    )?;
    for ((a, b), n) in want {
        let e = bps
            .entries
            .iter()
            .find(|e| e.class.0 == [a, b])
            .ok_or(format!("class ({a},{b}) missing"))?;
        ensure(e.n0 == n, format!("n0({a},{b}) = {}", e.n0))?;
    }
    Ok(())
}

/// `prod_m (1 - q^beta Q^m)^(m w)` from ring primitives only.
fn macmahon_by_hand(beta: &[i32], w: &BigRational, vars: &[Var], tr: Truncation) -> MultiSeries {
    let one = MultiSeries::one(vars.to_vec(), tr);
    let mut out = one.clone();
    for m in 1..=tr.q_series_degree as i32 {
        let mut e = beta.to_vec();
        e.push(m);
        let x = MultiSeries::monomial(vars.to_vec(), tr, e, 0, BigRational::one());
        let f = one
            .try_sub(&x)
            .unwrap()
            .pow_rational(&(w * BigRational::from_integer(m.into())))
            .unwrap();
        out = out.try_mul(&f).unwrap();
    }
    out
}

fn c3_d5_partition() -> Check {
    let tr = Truncation::new(6, 6, 0).unwrap();
    let z = partition_function(&bps_table(&d5()), tr).unwrap().series;
    let vars = curve_vars(2);
    let mut direct = MultiSeries::one(vars.clone(), tr);
    for (beta, w) in [
        ([1, 0], q(1, 1)),
        ([1, 1], q(2, 1)),
        ([0, 1], q(4, 1)),
        ([0, 2], q(1, 2)),
        ([1, 2], q(1, 1)),
    ] {
        direct = direct.try_mul(&macmahon_by_hand(&beta, &w, &vars, tr)).unwrap();
    }
    ensure(z.len() > 100, format!("only {} coefficients", z.len()))?;
    ensure(
        z.coeff(&[1, 0, 1]) == q(-1, 1),
        format!("[q1 Q] = {}", z.coeff(&[1, 0, 1])),
    )?;
    ensure(z == direct, format!("{} vs {} coefficients", z.len(), direct.len()))
}

fn c4_multiple_cover() -> Check {
    let bps = bps_table(&d5());
    for d in 1..=12i64 {
        let want = q(if d % 2 == 1 { 4 } else { 8 }, d * d * d);
        let got = gw_genus0(&bps, &CurveClass(vec![0, d])).unwrap();
        ensure(got == want, format!("N(0,{d}) = {got}, expected {want}"))?;
    }
    Ok(())
}

fn c5_fiber_sizes() -> Check {
    for spec in GroupSpec::catalogue() {
        let data = McKayData::new(spec).unwrap();
        let sizes = fiber_sizes(&bps_table(&data));
        ensure(
            sizes.iter().all(|s| [0, 1, 2, 4, 8].contains(s)),
            format!("{spec}: sizes {sizes:?}"),
        )?;
        let total: usize = sizes.iter().sum();
        let binary = data
            .roots
            .positive_roots
            .iter()
            .filter(|a| data.class_nodes.iter().all(|&n| a.0[n] == 0))
            .count();
        ensure(
            total + binary == data.roots.positive_roots.len(),
            format!("{spec}: fibers do not cover R+"),
        )?;
    }
    Ok(())
}

fn c6_root_sum() -> Check {
    let mut types = Vec::new();
    types.extend((1..=8).map(|n| AdeType::new(Family::A, n).unwrap()));
    types.extend((4..=8).map(|n| AdeType::new(Family::D, n).unwrap()));
    types.extend((6..=8).map(|n| AdeType::new(Family::E, n).unwrap()));
    for ade in types {
        let r = RootSystemData::new(ade);
        let n = r.rank();
        let mut s = vec![vec![0i64; n]; n];
        for a in &r.positive_roots {
            for i in 0..n {
                for j in 0..n {
                    s[i][j] += a.0[i] * a.0[j];
                }
            }
        }
        // (sum alpha alpha^T) C = h I
        let h = r.positive_roots.len() as i64 * 2 / n as i64;
        ensure(h as usize == r.coxeter_number, format!("{ade:?}: |R| != rank h"))?;
        for i in 0..n {
            for j in 0..n {
                let v: i64 = (0..n).map(|k| s[i][k] * r.cartan[k][j]).sum();
                ensure(
                    v == if i == j { h } else { 0 },
                    format!("{ade:?}: entry ({i},{j}) = {v}"),
                )?;
            }
        }
    }
    Ok(())
}

fn c7_pairing() -> Check {
    for spec in GroupSpec::catalogue() {
        let data = McKayData::new(spec).unwrap();
        let p = mckay_pairing(&data).unwrap();
        let two = threefold_integrals(&data).two_point;
        ensure(
            is_identity(&matrix_product(&p, &two)),
            format!("{spec}: product is not the identity"),
        )?;
    }
    let p = mckay_pairing(&d5()).unwrap();
    let want = vec![vec![q(-3, 1), q(1, 1)], vec![q(1, 1), q(-1, 1)]];
    ensure(
        p.t_power == 1 && p.entries == want,
        format!("Sigma3 pairing {:?} t^{}", p.entries, p.t_power),
    )
}

fn c8_surface() -> Check {
    let s = surface_integrals(&d5());
    ensure(
        s.zero_point.value == q(1, 3) && s.zero_point.t_power == -2,
        format!("zero point {}", s.zero_point),
    )?;
    for spec in GroupSpec::catalogue() {
        let data = McKayData::new(spec).unwrap();
        let two = surface_integrals(&data).two_point;
        // -two_point is the inverse of C
        let n = data.roots.rank();
        for i in 0..n {
            for j in 0..n {
                let v: BigRational = (0..n)
                    .map(|k| -&two.entries[i][k] * BigRational::from_integer(data.roots.cartan[k][j].into()))
                    .fold(BigRational::zero(), |a, b| a + b);
                let want = if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                };
                ensure(two.t_power == 0 && v == want, format!("{spec}: (-M C)({i},{j}) = {v}"))?;
            }
        }
    }
    Ok(())
}

fn c9_hard_lefschetz() -> Check {
    for spec in GroupSpec::catalogue() {
        let data = McKayData::new(spec).unwrap();
        let r = hard_lefschetz_check(&data.group).unwrap();
        let ages_one = r
            .entries
            .iter()
            .filter(|e| e.exponents != [0, 0, 0])
            .all(|e| e.age == 1.into() && e.inverse_age == 1.into());
        ensure(
            r.hard_lefschetz && r.all_nontrivial_age_one && ages_one,
            format!("{spec}: ages not all 1"),
        )?;
    }
    let r = lefschetz_from_exponents(&[("g".into(), [1, 1, 1], 3)]).unwrap();
    let e = &r.entries[0];
    ensure(
        e.age == 1.into() && e.inverse_age == 2.into() && !r.hard_lefschetz,
        format!(
            "(1,1,1)/3: ages ({}, {}), check {}",
            e.age, e.inverse_age, r.hard_lefschetz
        ),
    )
}

fn close(a: &Real, b: &Real, exp: u32) -> bool {
    (a - b).abs() < a.precision().epsilon(exp)
}

fn c10_crc_d5() -> Check {
    let p = Precision::digits(64);
    let m = OrbifoldModel::with_precision(GroupSpec::Dihedral(3), p).unwrap();
    let f = orbifold_potential(&m, 5).unwrap();
    let want = [
        ([2, 1], 1, 2),
        ([0, 3], 1, 18),
        ([4, 0], -5, 48),
        ([2, 2], -1, 6),
        ([0, 4], -1, 36),
        ([4, 1], 1, 12),
        ([2, 3], 1, 18),
        ([0, 5], 1, 324),
    ];
    for (e, n, d) in want {
        let c = f.coefficient(&e).ok_or(format!("{e:?} missing"))?;
        let w = Real::from_i64(n, p).div_i64(d);
        ensure(
            close(&c.re, &w, 9) && c.im.abs() < p.epsilon(9),
            format!("{e:?}: {}", c.re),
        )?;
    }
    Ok(())
}

/// Taylor coefficients of `tan(a + b u) / sqrt(3)` from the sine and cosine series.
fn tan_oracle(a: &Real, b: &Real, n: usize) -> Vec<Real> {
    let p = a.precision();
    let mut sin = vec![Real::zero(p); n];
    let mut cos = vec![Real::zero(p); n];
    let mut term = Real::one(p);
    for k in 0..n {
        if k > 0 {
            term = (&term * b).div_i64(k as i64);
        }
        // d^k/du^k at 0 of sin(a + b u) is b^k sin(a + k pi/2)
        let (s, c) = match k % 4 {
            0 => (a.sin(), a.cos()),
            1 => (a.cos(), -&a.sin()),
            2 => (-&a.sin(), -&a.cos()),
            _ => (-&a.cos(), a.sin()),
        };
        sin[k] = &term * &s;
        cos[k] = &term * &c;
    }
    let mut t = vec![Real::zero(p); n];
    for k in 0..n {
        let mut acc = sin[k].clone();
        for j in 0..k {
            acc = &acc - &(&t[j] * &cos[k - j]);
        }
        t[k] = &acc / &cos[0];
    }
    let s3 = Real::from_i64(3, p).sqrt();
    t.into_iter().map(|x| &x / &s3).collect()
}

fn c11_b_series() -> Check {
    let p = Precision::digits(64);
    let m = OrbifoldModel::with_precision(GroupSpec::Dihedral(3), p).unwrap();
    let b = b_series(&m, 8).unwrap();
    let oracle = tan_oracle(
        &Real::pi(p).div_i64(3),
        &(Real::one(p) / Real::from_i64(12, p).sqrt()),
        8,
    );
    for (k, (x, y)) in b.iter().zip(&oracle).enumerate() {
        ensure(close(x, y, 9), format!("u^{k}: {x} vs {y}"))?;
    }
    Ok(())
}

fn c12_cross_method() -> Check {
    let p = Precision::digits(64);
    for spec in [GroupSpec::Dihedral(3), GroupSpec::Dihedral(2)] {
        let m = OrbifoldModel::with_precision(spec, p).unwrap();
        let f = orbifold_potential(&m, 3).unwrap();
        let n = m.n_vars();
        let zero = vec![Real::zero(p); n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut e = vec![0u32; n];
                    for i in [a, b, c] {
                        e[i] += 1;
                    }
                    let mult: i64 = e.iter().map(|&k| (1..=k as i64).product::<i64>()).product();
                    let taylor = f
                        .coefficient(&e)
                        .map(|z| z.re.mul_i64(mult))
                        .unwrap_or_else(|| Real::zero(p));
                    let direct = third_partial(&m, [a, b, c], &zero).unwrap();
                    ensure(
                        close(&taylor, &direct.re, 20) && direct.im.abs() < p.epsilon(20),
                        format!("{spec} ({a},{b},{c}): {taylor} vs {}", direct.re),
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn c13_properties() -> Check {
    let tr = Truncation::new(3, 3, 2).unwrap();
    for spec in GroupSpec::catalogue() {
        let data = McKayData::new(spec).unwrap();
        let bps = bps_table(&data);
        let z = partition_function(&bps, tr).unwrap().series;
        ensure(z.log().unwrap().exp().unwrap() == z, format!("{spec}: exp(log Z) != Z"))?;
        let per_root = partition_function_per_root(&data, tr).unwrap().series;
        ensure(per_root == z, format!("{spec}: per-root and per-class differ"))?;

        let vars = z.vars().to_vec();
        let beta: Vec<i32> = bps.entries[0].class.0.iter().map(|&c| c as i32).collect();
        let (w1, w2) = (q(2, 7), q(3, 5));
        let lhs = macmahon_factor(&beta, &w1, &vars, tr)
            .unwrap()
            .try_mul(&macmahon_factor(&beta, &w2, &vars, tr).unwrap())
            .unwrap();
        ensure(
            lhs == macmahon_factor(&beta, &(&w1 + &w2), &vars, tr).unwrap(),
            format!("{spec}: MacMahon weights not additive"),
        )?;

        let tol = Precision::default().epsilon(ROUNDING_RESIDUAL_EXP);
        for g in [&data.group, &data.binary] {
            ensure(
                g.orthogonality_defect() < tol && g.column_orthogonality_defect() < tol,
                format!("{spec}: {} characters not orthogonal", g.name()),
            )?;
        }

        let a = &data.graph.adjacency;
        let dims: Vec<i64> = data.binary.table.irreps.iter().map(|i| i.dim as i64).collect();
        let n = dims.len();
        for i in 0..n {
            let s: i64 = (0..n).map(|j| a[i][j] * dims[j]).sum();
            ensure(s == 2 * dims[i], format!("{spec}: A dims != 2 dims at {i}"))?;
            for j in 0..n {
                ensure(a[i][j] == a[j][i], format!("{spec}: McKay graph not symmetric"))?;
            }
        }
        // deleting the trivial node leaves the Dynkin diagram of the root system
        let cartan = &data.roots.cartan;
        for (u, &iu) in data.node_irrep.iter().enumerate() {
            for (v, &iv) in data.node_irrep.iter().enumerate() {
                let want = if u == v { 2 } else { -a[iu][iv] };
                ensure(cartan[u][v] == want, format!("{spec}: graph and Dynkin diagram differ"))?;
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 13] = [
        ("D5 positive roots", c1_d5_roots),
        ("D5 BPS table", c2_d5_bps),
        ("D5 partition function", c3_d5_partition),
        ("multiple-cover formula", c4_multiple_cover),
        ("fiber cardinalities", c5_fiber_sizes),
        ("root-sum identity", c6_root_sum),
        ("pairing inversion", c7_pairing),
        ("surface integrals", c8_surface),
        ("hard Lefschetz", c9_hard_lefschetz),
        ("CRC potential, D5", c10_crc_d5),
        ("B(u) tan identity", c11_b_series),
        ("cross-method third partials", c12_cross_method),
        ("property suite", c13_properties),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
