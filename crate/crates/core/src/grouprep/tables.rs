//! Closed-form class data and character tables.
//!
//! Each family produces the polyhedral group `G` (rows already sorted by
//! dimension, trivial first) and the extra rows of the binary group that do
//! not factor through `G`. Pulled-back rows of the binary table are generated
//! from the class images, so only the genuinely binary characters are listed.

use num_integer::Integer;
use num_rational::Ratio;

use super::GroupSpec;
use crate::numeric::RootSum;

#[derive(Clone, Debug)]
pub(crate) struct RawClass {
    pub label: String,
    pub size: usize,
    pub order: u32,
    /// Rotation angle in turns (classes of `G`) or the index of the image class in
    /// `G` (classes of the binary group).
    pub turns: Ratio<i64>,
    pub image: usize,
}

fn class(label: impl Into<String>, size: usize, order: u32, turns: (i64, i64)) -> RawClass {
    RawClass {
        label: label.into(),
        size,
        order,
        turns: Ratio::new(turns.0, turns.1),
        image: 0,
    }
}

fn bclass(label: impl Into<String>, size: usize, order: u32, image: usize) -> RawClass {
    RawClass {
        label: label.into(),
        size,
        order,
        turns: Ratio::new(0, 1),
        image,
    }
}

pub(crate) struct RawGroup {
    pub classes: Vec<RawClass>,
    pub rows: Vec<(String, Vec<RootSum>)>,
}

pub(crate) struct RawBinary {
    pub classes: Vec<RawClass>,
    /// Rows that do not factor through `G`; the first is the defining `U`.
    pub extra_rows: Vec<(String, Vec<RootSum>)>,
}

fn int(n: i64) -> RootSum {
    RootSum::int(n)
}

fn ints(v: &[i64]) -> Vec<RootSum> {
    v.iter().map(|&n| int(n)).collect()
}

fn order_of(j: i64, n: i64) -> u32 {
    (n / j.gcd(&n)) as u32
}

fn label_rows(rows: Vec<Vec<RootSum>>, prefix: &str, start: usize) -> Vec<(String, Vec<RootSum>)> {
    rows.into_iter()
        .enumerate()
        .map(|(i, r)| (format!("{prefix}{}", i + start), r))
        .collect()
}

pub(crate) fn group(spec: GroupSpec) -> RawGroup {
    match spec {
        GroupSpec::Cyclic(k) => cyclic(k as i64),
        GroupSpec::Dihedral(m) => dihedral(m as i64),
        GroupSpec::Tetrahedral => tetrahedral(),
        GroupSpec::Octahedral => octahedral(),
        GroupSpec::Icosahedral => icosahedral(),
    }
}

pub(crate) fn binary(spec: GroupSpec) -> RawBinary {
    match spec {
        GroupSpec::Cyclic(k) => binary_cyclic(k as i64),
        GroupSpec::Dihedral(m) => binary_dihedral(m as i64),
        GroupSpec::Tetrahedral => binary_tetrahedral(),
        GroupSpec::Octahedral => binary_octahedral(),
        GroupSpec::Icosahedral => binary_icosahedral(),
    }
}

/// `1 + 2 cos(2 pi t)`: the trace of a rotation by `t` turns on R^3.
pub(crate) fn rotation_trace(turns: Ratio<i64>) -> RootSum {
    &int(1) + &RootSum::two_cos(*turns.numer(), *turns.denom())
}

// Z_k generated by the rotation r by 1/k turn.
fn cyclic(k: i64) -> RawGroup {
    let classes = (0..k)
        .map(|j| {
            let label = if j == 0 { "e".to_string() } else { format!("r^{j}") };
            class(label, 1, order_of(j, k), (j, k))
        })
        .collect();
    let rows = (0..k)
        .map(|l| (0..k).map(|j| RootSum::root(l * j, k)).collect())
        .collect();
    RawGroup {
        classes,
        rows: label_rows(rows, "V", 0),
    }
}

// Z_2k generated by a = diag(e^{i pi/k}, e^{-i pi/k}), a -> r.
fn binary_cyclic(k: i64) -> RawBinary {
    let n = 2 * k;
    let classes = (0..n)
        .map(|j| {
            let label = if j == 0 { "e".to_string() } else { format!("a^{j}") };
            bclass(label, 1, order_of(j, n), (j % k) as usize)
        })
        .collect();
    let extra_rows = (1..n)
        .step_by(2)
        .map(|l| (0..n).map(|j| RootSum::root(l * j, n)).collect())
        .collect();
    RawBinary {
        classes,
        extra_rows: label_rows(extra_rows, "U", 1),
    }
}

// D_m = <r, s>: identity, reflection classes, then rotation classes {r^j, r^-j}.
fn dihedral(m: i64) -> RawGroup {
    let mut classes = vec![class("e", 1, 1, (0, 1))];
    if m % 2 == 1 {
        classes.push(class("s", m as usize, 2, (1, 2)));
    } else {
        classes.push(class("s", (m / 2) as usize, 2, (1, 2)));
        classes.push(class("sr", (m / 2) as usize, 2, (1, 2)));
    }
    let reflections = classes.len() - 1;
    for j in 1..=m / 2 {
        let size = if 2 * j == m { 1 } else { 2 };
        classes.push(class(format!("r^{j}"), size, order_of(j, m), (j, m)));
    }
    // character on (identity, reflection classes, rotations r^j)
    let row = |id: i64, refl: &[RootSum], rot: &dyn Fn(i64) -> RootSum| {
        let mut v = vec![int(id)];
        v.extend(refl.iter().cloned());
        v.extend((1..=m / 2).map(rot));
        v
    };
    let mut rows = vec![
        row(1, &vec![int(1); reflections], &|_| int(1)),
        row(1, &vec![int(-1); reflections], &|_| int(1)),
    ];
    if m % 2 == 0 {
        let sign = |j: i64| int(if j % 2 == 0 { 1 } else { -1 });
        rows.push(row(1, &ints(&[1, -1]), &sign));
        rows.push(row(1, &ints(&[-1, 1]), &sign));
    }
    let two_dims = if m % 2 == 0 { m / 2 - 1 } else { (m - 1) / 2 };
    for l in 1..=two_dims {
        rows.push(row(2, &vec![int(0); reflections], &|j| RootSum::two_cos(l * j, m)));
    }
    RawGroup {
        classes,
        rows: label_rows(rows, "V", 0),
    }
}

// Dic_m = <a, x | a^2m = 1, x^2 = a^m, x a x^-1 = a^-1>, a -> r, x -> s.
fn binary_dihedral(m: i64) -> RawBinary {
    let n = 2 * m;
    let odd = m % 2 == 1;
    // image indices in the dihedral class list
    let (s_img, sr_img) = if odd { (1, 1) } else { (1, 2) };
    let rot_base = if odd { 2 } else { 3 };
    let rotation_image = |j: i64| -> usize { rot_base + (j.min(m - j) - 1) as usize };
    let mut classes = vec![
        bclass("e", 1, 1, 0),
        bclass("z", 1, 2, 0),
        bclass("x", m as usize, 4, s_img),
        bclass("xa", m as usize, 4, sr_img),
    ];
    for j in 1..m {
        classes.push(bclass(format!("a^{j}"), 2, order_of(j, n), rotation_image(j)));
    }
    let row = |id: i64, z: i64, x: RootSum, xa: RootSum, rot: &dyn Fn(i64) -> RootSum| {
        let mut v = vec![int(id), int(z), x, xa];
        v.extend((1..m).map(rot));
        v
    };
    let mut extra = Vec::new();
    for l in (1..m).step_by(2) {
        extra.push(row(2, -2, int(0), int(0), &|j| RootSum::two_cos(l * j, n)));
    }
    if odd {
        let sign = |j: i64| int(if j % 2 == 0 { 1 } else { -1 });
        extra.push(row(1, -1, RootSum::root(1, 4), RootSum::root(3, 4), &sign));
        extra.push(row(1, -1, RootSum::root(3, 4), RootSum::root(1, 4), &sign));
    }
    RawBinary {
        classes,
        extra_rows: label_rows(extra, "U", 1),
    }
}

fn omega() -> RootSum {
    RootSum::root(1, 3)
}

fn omega_bar() -> RootSum {
    RootSum::root(2, 3)
}

/// The golden ratio `1 + 2 cos(2 pi/5)`.
fn phi() -> RootSum {
    &int(1) + &RootSum::two_cos(1, 5)
}

/// `1 - phi = 1 + 2 cos(4 pi/5)`.
fn phi_conj() -> RootSum {
    &int(1) + &RootSum::two_cos(2, 5)
}

fn sqrt2() -> RootSum {
    RootSum::two_cos(1, 8)
}

// A_4 as rotations of the tetrahedron.
fn tetrahedral() -> RawGroup {
    let classes = vec![
        class("e", 1, 1, (0, 1)),
        class("(12)(34)", 3, 2, (1, 2)),
        class("(123)", 4, 3, (1, 3)),
        class("(132)", 4, 3, (2, 3)),
    ];
    let rows = vec![
        ints(&[1, 1, 1, 1]),
        vec![int(1), int(1), omega(), omega_bar()],
        vec![int(1), int(1), omega_bar(), omega()],
        ints(&[3, -1, 0, 0]),
    ];
    RawGroup {
        classes,
        rows: label_rows(rows, "V", 0),
    }
}

fn binary_tetrahedral() -> RawBinary {
    let classes = vec![
        bclass("e", 1, 1, 0),
        bclass("z", 1, 2, 0),
        bclass("q4", 6, 4, 1),
        bclass("g6", 4, 6, 2),
        bclass("g6'", 4, 6, 3),
        bclass("g3", 4, 3, 2),
        bclass("g3'", 4, 3, 3),
    ];
    let u = ints(&[2, -2, 0, 1, 1, -1, -1]);
    let tensor = |w: RootSum, wb: RootSum| vec![int(2), int(-2), int(0), w.clone(), wb.clone(), -&w, -&wb];
    RawBinary {
        classes,
        extra_rows: label_rows(
            vec![u, tensor(omega(), omega_bar()), tensor(omega_bar(), omega())],
            "U",
            1,
        ),
    }
}

// S_4 as rotations of the cube.
fn octahedral() -> RawGroup {
    let classes = vec![
        class("e", 1, 1, (0, 1)),
        class("(12)(34)", 3, 2, (1, 2)),
        class("(12)", 6, 2, (1, 2)),
        class("(123)", 8, 3, (1, 3)),
        class("(1234)", 6, 4, (1, 4)),
    ];
    let rows = vec![
        ints(&[1, 1, 1, 1, 1]),
        ints(&[1, 1, -1, 1, -1]),
        ints(&[2, 2, 0, -1, 0]),
        ints(&[3, -1, -1, 0, 1]),
        ints(&[3, -1, 1, 0, -1]),
    ];
    RawGroup {
        classes,
        rows: label_rows(rows, "V", 0),
    }
}

fn binary_octahedral() -> RawBinary {
    let classes = vec![
        bclass("e", 1, 1, 0),
        bclass("z", 1, 2, 0),
        bclass("c4a", 6, 4, 1),
        bclass("c4b", 12, 4, 2),
        bclass("c6", 8, 6, 3),
        bclass("c3", 8, 3, 3),
        bclass("c8a", 6, 8, 4),
        bclass("c8b", 6, 8, 4),
    ];
    let r2 = sqrt2();
    let u = vec![int(2), int(-2), int(0), int(0), int(1), int(-1), r2.clone(), -&r2];
    let u_sgn = vec![int(2), int(-2), int(0), int(0), int(1), int(-1), -&r2, r2.clone()];
    let u_2 = ints(&[4, -4, 0, 0, -1, 1, 0, 0]);
    RawBinary {
        classes,
        extra_rows: label_rows(vec![u, u_sgn, u_2], "U", 1),
    }
}

// A_5 as rotations of the icosahedron.
fn icosahedral() -> RawGroup {
    let classes = vec![
        class("e", 1, 1, (0, 1)),
        class("(12)(34)", 15, 2, (1, 2)),
        class("(123)", 20, 3, (1, 3)),
        class("(12345)", 12, 5, (1, 5)),
        class("(13524)", 12, 5, (2, 5)),
    ];
    let rows = vec![
        ints(&[1, 1, 1, 1, 1]),
        vec![int(3), int(-1), int(0), phi(), phi_conj()],
        vec![int(3), int(-1), int(0), phi_conj(), phi()],
        ints(&[4, 0, 1, -1, -1]),
        ints(&[5, 1, -1, 0, 0]),
    ];
    RawGroup {
        classes,
        rows: label_rows(rows, "V", 0),
    }
}

fn binary_icosahedral() -> RawBinary {
    let classes = vec![
        bclass("e", 1, 1, 0),
        bclass("z", 1, 2, 0),
        bclass("c4", 30, 4, 1),
        bclass("c6", 20, 6, 2),
        bclass("c3", 20, 3, 2),
        bclass("c10a", 12, 10, 3),
        bclass("c10b", 12, 10, 4),
        bclass("c5a", 12, 5, 4),
        bclass("c5b", 12, 5, 3),
    ];
    let (p, pc) = (phi(), phi_conj());
    let u = vec![
        int(2),
        int(-2),
        int(0),
        int(1),
        int(-1),
        p.clone(),
        pc.clone(),
        -&pc,
        -&p,
    ];
    let u_conj = vec![
        int(2),
        int(-2),
        int(0),
        int(1),
        int(-1),
        pc.clone(),
        p.clone(),
        -&p,
        -&pc,
    ];
    let four = ints(&[4, -4, 0, -1, 1, 1, 1, -1, -1]);
    let six = ints(&[6, -6, 0, 0, 0, -1, -1, 1, 1]);
    RawBinary {
        classes,
        extra_rows: label_rows(vec![u, u_conj, four, six], "U", 1),
    }
}
