//! Command-line front end.
//!
//! Exit codes: `0` success, `1` verification failure, `2` bad arguments,
//! `3` unsupported group, `4` internal consistency failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::crc::{b_series, change_of_variables, crc_consistency, orbifold_potential, third_partial, OrbifoldModel};
use crate::error::{Error, Result};
use crate::grouprep::{hard_lefschetz_check, GroupModel, GroupSpec, McKayData, ROUNDING_RESIDUAL_EXP};
use crate::gwtheory::{
    bps_table, dt_partition, fiber_sizes, free_energy_check, gw_all_genus, half_integral, is_allowed_fiber_size,
    normal_bundle_type, partition_function, partition_function_per_root, CurveClass,
};
use crate::intersect::{
    classical_potential, is_identity, matrix_product, mckay_pairing, negative_inverse_cartan, surface_integrals,
    threefold_integrals,
};
use crate::numeric::{ratio_string, Complex, Precision, Real, RootSum};
use crate::rootsys::inverse_rational;
use crate::series::{MultiSeries, Truncation};

pub const PRECISION_ENV: &str = "QMCKAY_PRECISION";

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Group: C:k, D:m, T, O, I, or the ADE label of the binary group (A3, D5, E6, ...).
    #[arg(long, short = 'g', global = true, default_value = "D:3")]
    pub group: String,
    /// Total degree bound D in the curve variables.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_q_degree: u32,
    /// Degree bound M in the formal variable Q.
    #[arg(long, global = true, default_value_t = 4)]
    pub q_series_degree: u32,
    /// Highest power L of lambda (even).
    #[arg(long, global = true, default_value_t = 4)]
    pub lambda_order: i32,
    /// Working precision in decimal digits.
    #[arg(long, global = true, env = PRECISION_ENV, default_value_t = Precision::DEFAULT_DIGITS)]
    pub precision: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(
    name = "qmckay",
    version,
    about = "Quantum McKay correspondence for C^3/G, G a finite subgroup of SO(3)"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Cartan matrix, positive roots, Coxeter number and highest root.
    Roots,
    /// Conjugacy classes, character tables, McKay graph, binary nodes and ages.
    Group,
    /// Genus-zero BPS counts.
    Bps,
    /// Gromov-Witten invariants N^g_beta of every class up to the degree bound.
    Gw,
    /// Reduced GW partition function in q and Q.
    Partition,
    /// Reduced DT partition function.
    Dt,
    /// Equivariant intersection numbers, McKay pairing and classical potential.
    Intersect,
    /// Orbifold potential, third partials and the change of variables.
    Crc {
        /// Highest Taylor degree of the potential.
        #[arg(long, default_value_t = 5)]
        degree: u32,
    },
    /// Runs every invariant check for the group.
    Verify,
}

pub struct Report {
    pub json: Value,
    pub csv: Vec<Vec<String>>,
    pub text: String,
    pub passed: bool,
}

impl Report {
    fn new(json: Value, csv: Vec<Vec<String>>, text: String) -> Self {
        Report {
            json,
            csv,
            text,
            passed: true,
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)
                    .map_err(|e| Error::Consistency(format!("JSON serialisation failed: {e}")))?;
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &self.csv {
                    w.write_record(row)
                        .map_err(|e| Error::Consistency(format!("CSV serialisation failed: {e}")))?;
                }
                let bytes = w
                    .into_inner()
                    .map_err(|e| Error::Consistency(format!("CSV serialisation failed: {e}")))?;
                String::from_utf8(bytes).map_err(|e| Error::Consistency(e.to_string()))?
            }
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
        })
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Precondition(_) | Error::IncompatibleVariables(_) => 2,
        Error::UnsupportedGroup(_) => 3,
        Error::Consistency(_) | Error::Pole(_) => 4,
    }
}

impl CliConfig {
    pub fn spec(&self) -> Result<GroupSpec> {
        self.group.parse()
    }

    pub fn truncation(&self) -> Result<Truncation> {
        Truncation::new(self.max_q_degree, self.q_series_degree, self.lambda_order)
    }

    pub fn precision(&self) -> Precision {
        Precision::digits(self.precision)
    }

    fn data(&self) -> Result<McKayData> {
        McKayData::with_precision(self.spec()?, self.precision())
    }
}

/// Parses `args` (program name first), runs the command and writes the report.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match execute(&cli.command, &cli.config).and_then(|r| Ok((r.render(cli.config.format)?, r.passed))) {
        Ok((out, passed)) => {
            let written = match &cli.config.output {
                Some(path) => std::fs::write(path, out.as_bytes()).map_err(|e| e.to_string()),
                None => stdout.write_all(out.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write report: {e}");
                return 2;
            }
            if passed {
                0
            } else {
                let _ = writeln!(stderr, "verification failed");
                1
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(command: &Command, config: &CliConfig) -> Result<Report> {
    if config.precision < 20 {
        return Err(Error::Config(format!(
            "precision must be at least 20 digits, got {}",
            config.precision
        )));
    }
    config.truncation()?;
    match command {
        Command::Roots => cmd_roots(config),
        Command::Group => cmd_group(config),
        Command::Bps => cmd_bps(config),
        Command::Gw => cmd_gw(config),
        Command::Partition => cmd_partition(config, false),
        Command::Dt => cmd_partition(config, true),
        Command::Intersect => cmd_intersect(config),
        Command::Crc { degree } => cmd_crc(config, *degree),
        Command::Verify => {
            let v = verify_group(config.spec()?, config.truncation()?, config.precision())?;
            Ok(v.into_report())
        }
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serialisable report")
}

fn cmd_roots(config: &CliConfig) -> Result<Report> {
    let data = config.data()?;
    let r = &data.roots;
    let labels: Vec<&str> = (0..r.rank()).map(|n| data.node_label(n)).collect();
    let roots: Vec<&Vec<i64>> = r.positive_roots.iter().map(|a| &a.0).collect();
    let json = json!({
        "group": data.spec.to_string(),
        "ade": r.ade.to_string(),
        "node_labels": labels,
        "binary_nodes": data.binary_nodes,
        "cartan": r.cartan,
        "coxeter_number": r.coxeter_number,
        "highest_root": r.highest_root.0,
        "positive_roots": roots,
    });
    let mut csv = vec![vec![
        "index".into(),
        "height".into(),
        "coefficients".into(),
        "binary".into(),
    ]];
    let mut text = format!(
        "{} -> {} (h = {}, {} positive roots)\nnodes: {}\nhighest root: {}\n",
        data.spec,
        r.ade,
        r.coxeter_number,
        r.positive_roots.len(),
        labels.join(" "),
        r.highest_root
    );
    for (i, a) in r.positive_roots.iter().enumerate() {
        let binary = data.class_nodes.iter().all(|&n| a.0[n] == 0);
        csv.push(vec![
            i.to_string(),
            a.height().to_string(),
            join(&a.0),
            binary.to_string(),
        ]);
        text.push_str(&format!("{:>4}  {}{}\n", i, a, if binary { "  binary" } else { "" }));
    }
    Ok(Report::new(json, csv, text))
}

fn value_string(exact: &RootSum, v: &Complex) -> String {
    if let Some(n) = exact.as_integer() {
        return n.to_string();
    }
    let re = v.re.to_decimal(20);
    let tol = v.re.precision().epsilon(ROUNDING_RESIDUAL_EXP);
    if v.im.abs() < tol {
        re
    } else if v.im.is_negative() {
        format!("{re}-{}i", (-&v.im).to_decimal(20))
    } else {
        format!("{re}+{}i", v.im.to_decimal(20))
    }
}

fn group_json(g: &GroupModel) -> Value {
    let table: Vec<Value> = g
        .table
        .irreps
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let values: Vec<String> = g.table.exact[i]
                .iter()
                .zip(&g.table.values[i])
                .map(|(e, v)| value_string(e, v))
                .collect();
            json!({"label": r.label, "dim": r.dim, "values": values})
        })
        .collect();
    let natural: Vec<String> = g
        .natural
        .iter()
        .zip(&g.natural_values)
        .map(|(e, v)| value_string(e, v))
        .collect();
    json!({
        "name": g.name(),
        "order": g.order,
        "classes": to_json(&g.classes),
        "characters": table,
        "natural_character": natural,
        "central_involution": g.central_involution,
    })
}

fn cmd_group(config: &CliConfig) -> Result<Report> {
    let data = config.data()?;
    let ages = hard_lefschetz_check(&data.group)?;
    let nodes: Vec<Value> = (0..data.roots.rank())
        .map(|n| json!({"node": n, "irrep": data.node_label(n), "binary": data.is_binary_node(n)}))
        .collect();
    let json = json!({
        "group": group_json(&data.group),
        "binary_group": group_json(&data.binary),
        "root_system": data.roots.ade.to_string(),
        "mckay_graph": data.graph.adjacency,
        "nodes": nodes,
        "ages": to_json(&ages),
    });
    let mut csv = vec![vec![
        "group".into(),
        "class".into(),
        "size".into(),
        "order".into(),
        "natural_character".into(),
        "age".into(),
    ]];
    let mut text = format!(
        "{} (order {}) -> {}\n\nclasses of G:\n",
        data.spec, data.group.order, data.roots.ade
    );
    for (i, c) in data.group.classes.iter().enumerate() {
        let chi = value_string(&data.group.natural[i], &data.group.natural_values[i]);
        let age = ratio_string(&BigRational::new(
            (*ages.entries[i].age.numer()).into(),
            (*ages.entries[i].age.denom()).into(),
        ));
        csv.push(vec![
            "G".into(),
            c.label.clone(),
            c.size.to_string(),
            c.element_order.to_string(),
            chi.clone(),
            age.clone(),
        ]);
        text.push_str(&format!(
            "  {:<8} size {:>3}  order {:>2}  chi_V {:>6}  age {}\n",
            c.label, c.size, c.element_order, chi, age
        ));
    }
    for (i, c) in data.binary.classes.iter().enumerate() {
        let chi = value_string(&data.binary.natural[i], &data.binary.natural_values[i]);
        csv.push(vec![
            "binary".into(),
            c.label.clone(),
            c.size.to_string(),
            c.element_order.to_string(),
            chi,
            String::new(),
        ]);
    }
    text.push_str("\nDynkin nodes:\n");
    for n in 0..data.roots.rank() {
        text.push_str(&format!(
            "  {}  {}{}\n",
            n,
            data.node_label(n),
            if data.is_binary_node(n) { "  binary" } else { "" }
        ));
    }
    text.push_str(&format!(
        "\nhard Lefschetz: {}\n",
        if ages.hard_lefschetz { "holds" } else { "fails" }
    ));
    Ok(Report::new(json, csv, text))
}

fn cmd_bps(config: &CliConfig) -> Result<Report> {
    let data = config.data()?;
    let bps = bps_table(&data);
    let json = to_json(&bps.entries);
    let mut csv = vec![vec!["class".into(), "n0".into(), "fiber_size".into()]];
    let mut text = format!(
        "BPS states of {} (classes over {})\n",
        data.spec,
        bps.class_labels.join(", ")
    );
    for e in &bps.entries {
        csv.push(vec![join(&e.class.0), ratio_string(&e.n0), e.fiber_size.to_string()]);
        text.push_str(&format!(
            "  {:<12} n0 = {:<5} |c^-1| = {}\n",
            e.class.to_string(),
            ratio_string(&e.n0),
            e.fiber_size
        ));
    }
    Ok(Report::new(json, csv, text))
}

/// Nonzero effective classes of total degree `1..=d` in `r` coordinates.
fn classes_up_to(r: usize, d: u32) -> Vec<CurveClass> {
    let mut out = Vec::new();
    for n in 1..=d {
        for k in crate::crc::monomials(r, n) {
            out.push(CurveClass(k.into_iter().map(i64::from).collect()));
        }
    }
    out
}

fn cmd_gw(config: &CliConfig) -> Result<Report> {
    let data = config.data()?;
    let bps = bps_table(&data);
    let tr = config.truncation()?;
    let max_genus = ((tr.lambda_order + 2) / 2) as u32;
    let mut rows = Vec::new();
    for beta in classes_up_to(bps.rank(), tr.q_total_degree) {
        for g in 0..=max_genus {
            let v = gw_all_genus(&bps, &beta, g)?;
            if !v.is_zero() {
                rows.push((beta.clone(), g, v));
            }
        }
    }
    let json = Value::Array(
        rows.iter()
            .map(|(b, g, v)| json!({"class": b.0, "genus": g, "value": ratio_string(v)}))
            .collect(),
    );
    let mut csv = vec![vec!["class".into(), "genus".into(), "value".into()]];
    let mut text = format!("Gromov-Witten invariants N^g_beta of {}\n", data.spec);
    for (b, g, v) in &rows {
        csv.push(vec![join(&b.0), g.to_string(), ratio_string(v)]);
        text.push_str(&format!("  {:<12} g = {}  {}\n", b.to_string(), g, ratio_string(v)));
    }
    Ok(Report::new(json, csv, text))
}

fn series_csv(s: &MultiSeries) -> Vec<Vec<String>> {
    let mut rows = vec![{
        let mut h: Vec<String> = s.vars().iter().map(|v| v.name.clone()).collect();
        h.extend(["t_power".into(), "numerator".into(), "denominator".into()]);
        h
    }];
    for (m, c) in s.terms() {
        let mut row: Vec<String> = m.exps.iter().map(|e| e.to_string()).collect();
        row.extend([m.t_power.to_string(), c.numer().to_string(), c.denom().to_string()]);
        rows.push(row);
    }
    rows
}

fn cmd_partition(config: &CliConfig, dt: bool) -> Result<Report> {
    let data = config.data()?;
    let bps = bps_table(&data);
    let tr = config.truncation()?;
    let (series, factors, tag) = if dt {
        let z = dt_partition(&bps, tr)?;
        (z.series, z.factors, Some(z.tag))
    } else {
        let z = partition_function(&bps, tr)?;
        (z.series, z.factors, None)
    };
    let variables: Vec<&str> = series.vars().iter().map(|v| v.name.as_str()).collect();
    let mut json = json!({
        "group": data.spec.to_string(),
        "variables": variables,
        "curve_classes": bps.class_labels,
        "truncation": to_json(&tr),
        "factors": to_json(&factors),
        "series": to_json(&series.to_json()),
    });
    if let Some(tag) = tag {
        json["tag"] = json!(tag);
    }
    let text = match tag {
        Some(tag) => format!("# {tag}\n{series}\n"),
        None => format!("{series}\n"),
    };
    Ok(Report::new(json, series_csv(&series), text))
}

fn cmd_intersect(config: &CliConfig) -> Result<Report> {
    let data = config.data()?;
    let three = threefold_integrals(&data);
    let surface = surface_integrals(&data);
    let pairing = mckay_pairing(&data)?;
    let cl = classical_potential(&data);
    let inverse_ok = is_identity(&matrix_product(&pairing, &three.two_point));
    let json = json!({
        "group": data.spec.to_string(),
        "threefold": to_json(&three),
        "surface": to_json(&surface),
        "mckay_pairing": to_json(&pairing),
        "pairing_inverts_two_point": inverse_ok,
        "classical_potential": to_json(&cl),
    });
    let mut csv = vec![vec!["space".into(), "indices".into(), "value".into(), "t_power".into()]];
    csv.push(vec![
        "Y".into(),
        String::new(),
        ratio_string(&three.zero_point.value),
        three.zero_point.t_power.to_string(),
    ]);
    let n = three.basis.len();
    for i in 0..n {
        for j in 0..n {
            csv.push(vec![
                "Y".into(),
                join(&[i, j]),
                ratio_string(&three.two_point.entries[i][j]),
                three.two_point.t_power.to_string(),
            ]);
        }
    }
    for t in &cl.cubic {
        csv.push(vec![
            "Y".into(),
            join(&t.indices),
            ratio_string(&t.integral.value),
            t.integral.t_power.to_string(),
        ]);
    }
    let mut text = format!("{}: basis {}\n", data.spec, three.basis.join(", "));
    text.push_str(&format!("  int 1 = {}\n", three.zero_point));
    for i in 0..n {
        for j in i..n {
            text.push_str(&format!(
                "  int g_{} g_{} = {}\n",
                three.basis[i],
                three.basis[j],
                crate::intersect::EquivariantScalar::new(
                    three.two_point.entries[i][j].clone(),
                    three.two_point.t_power
                )
            ));
        }
    }
    for t in &cl.cubic {
        text.push_str(&format!(
            "  int g_{} g_{} g_{} = {}\n",
            three.basis[t.indices[0]], three.basis[t.indices[1]], three.basis[t.indices[2]], t.integral
        ));
    }
    text.push_str(&format!("  surface int 1 = {}\n", surface.zero_point));
    text.push_str(&format!(
        "  McKay pairing (times t): {:?}\n  pairing x two-point = identity: {}\n",
        pairing
            .entries
            .iter()
            .map(|r| r.iter().map(ratio_string).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        inverse_ok
    ));
    Ok(Report::new(json, csv, text))
}

fn cmd_crc(config: &CliConfig, degree: u32) -> Result<Report> {
    let spec = config.spec()?;
    let model = OrbifoldModel::with_precision(spec, config.precision())?;
    let pot = orbifold_potential(&model, degree)?;
    let cov = change_of_variables(&model);
    let check = crc_consistency(&model, degree.min(5), 20)?;
    let zero = vec![Real::zero(model.precision); model.n_vars()];
    let mut partials = Vec::new();
    for a in 0..model.n_vars() {
        for b in a..model.n_vars() {
            for c in b..model.n_vars() {
                let v = third_partial(&model, [a, b, c], &zero)?;
                partials.push(json!({"indices": [a, b, c], "value": v.re.to_decimal(30)}));
            }
        }
    }
    let forms: Vec<Value> = model
        .forms
        .iter()
        .map(|f| {
            json!({
                "irrep": f.irrep,
                "constant": f.constant.to_decimal(30),
                "coefficients": f.coefficients.iter().map(|c| c.re.to_decimal(30)).collect::<Vec<_>>(),
                "coefficients_imaginary": f.coefficients.iter().map(|c| c.im.to_decimal(30)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let q: Vec<Value> = cov
        .irreps
        .iter()
        .zip(&cov.q_turns)
        .map(|(r, t)| json!({"irrep": r, "q": format!("exp(2 pi i * {}/{})", t.numer(), t.denom())}))
        .collect();
    let mut json = json!({
        "group": spec.to_string(),
        "variables": model.variables,
        "linear_forms": forms,
        "q_substitution": q,
        "potential": to_json(&pot.to_json()),
        "third_partials_at_zero": partials,
        "consistency": to_json(&check),
    });
    if spec == GroupSpec::Dihedral(3) {
        let b = b_series(&model, 8)?;
        json["b_series"] = json!(b.iter().map(|x| x.to_decimal(30)).collect::<Vec<_>>());
    }
    let mut csv = vec![vec![
        "degree".into(),
        "exponents".into(),
        "coefficient".into(),
        "rational_guess".into(),
    ]];
    let mut text = format!("F^X for {} in variables {}\n", spec, model.variables.join(", "));
    for t in pot.to_json() {
        let guess = t.rational_guess.clone().unwrap_or_default();
        csv.push(vec![
            t.degree.to_string(),
            join(&t.exponents),
            t.coefficient.clone(),
            guess.clone(),
        ]);
        if t.rational_guess.as_deref() == Some("0") {
            continue;
        }
        text.push_str(&format!(
            "  deg {}  x^({})  {}{}\n",
            t.degree,
            join(&t.exponents),
            t.coefficient,
            if guess.is_empty() {
                String::new()
            } else {
                format!("  ~ {guess}")
            }
        ));
    }
    text.push_str(&format!(
        "change of variables check up to degree {}: max deviation {} ({})\n",
        check.max_degree,
        check.max_deviation,
        if check.passed { "pass" } else { "FAIL" }
    ));
    Ok(Report::new(json, csv, text))
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub group: String,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, check: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            check: check.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn into_report(self) -> Report {
        let mut csv = vec![vec!["check".into(), "passed".into(), "detail".into()]];
        let mut text = format!("verify {}\n", self.group);
        for c in &self.checks {
            csv.push(vec![c.check.clone(), c.passed.to_string(), c.detail.clone()]);
            text.push_str(&format!(
                "  [{}] {}: {}\n",
                if c.passed { "pass" } else { "FAIL" },
                c.check,
                c.detail
            ));
        }
        let passed = self.passed();
        text.push_str(if passed {
            "all checks passed\n"
        } else {
            "some checks FAILED\n"
        });
        Report {
            json: to_json(&self),
            csv,
            text,
            passed,
        }
    }
}

/// The invariant suite for one group.
pub fn verify_group(spec: GroupSpec, tr: Truncation, prec: Precision) -> Result<VerifyReport> {
    let data = McKayData::with_precision(spec, prec)?;
    let mut rep = VerifyReport {
        group: spec.to_string(),
        checks: Vec::new(),
    };
    let r = &data.roots;
    let rank = r.rank();

    let n_roots = r.positive_roots.len();
    rep.push(
        "root count",
        2 * n_roots == rank * r.coxeter_number,
        format!("|R+| = {n_roots}, rank {rank}, h = {}", r.coxeter_number),
    );

    let outer = r.root_outer_sum(&(0..rank).collect::<Vec<_>>());
    let identity_ok = match inverse_rational(&r.cartan) {
        Some(inv) => (0..rank).all(|i| {
            (0..rank).all(|j| {
                BigRational::from_integer(outer[i][j].into())
                    == &inv[i][j] * BigRational::from_integer((r.coxeter_number as i64).into())
            })
        }),
        None => false,
    };
    rep.push("root-sum identity", identity_ok, "sum alpha alpha^T = h C^-1");

    let tol = prec.epsilon(ROUNDING_RESIDUAL_EXP);
    for model in [&data.group, &data.binary] {
        let row = model.orthogonality_defect();
        let col = model.column_orthogonality_defect();
        rep.push(
            &format!("orthogonality of {}", model.name()),
            row < tol && col < tol,
            format!("rows {}, columns {}", row.to_scientific(3), col.to_scientific(3)),
        );
    }

    let dims: Vec<i64> = data.binary.table.irreps.iter().map(|i| i.dim as i64).collect();
    let symmetric =
        (0..dims.len()).all(|i| (0..dims.len()).all(|j| data.graph.adjacency[i][j] == data.graph.adjacency[j][i]));
    rep.push(
        "McKay graph is affine",
        symmetric && data.graph.marks_in_kernel(&dims),
        "symmetric, (2I - A) dims = 0, Dynkin dictionary found",
    );
    rep.push(
        "binary and pulled-back nodes",
        data.binary_nodes.len() + data.class_nodes.len() == rank,
        format!(
            "{} binary + {} pulled back = {rank}",
            data.binary_nodes.len(),
            data.class_nodes.len()
        ),
    );

    let bps = bps_table(&data);
    let sizes = fiber_sizes(&bps);
    let fibers_ok = sizes.iter().all(|&n| is_allowed_fiber_size(n));
    let total: usize = sizes.iter().sum();
    rep.push(
        "fiber cardinalities",
        fibers_ok && total + bps.binary_roots == n_roots,
        format!("sizes {sizes:?}"),
    );
    rep.push(
        "half-integral BPS counts",
        half_integral(&bps),
        format!("{} classes", bps.entries.len()),
    );

    let z = partition_function(&bps, tr)?;
    let per_root = partition_function_per_root(&data, tr)?;
    rep.push(
        "per-root and per-class factorizations agree",
        z.series == per_root.series,
        format!("{} coefficients", z.series.len()),
    );
    let round_trip = z.series.log()?.exp()?;
    rep.push("exp(log Z) = Z", round_trip == z.series, "within truncation");
    let mut additivity = true;
    if let Some(e) = bps.entries.first() {
        let vars = z.series.vars().to_vec();
        let beta: Vec<i32> = e.class.0.iter().map(|&c| c as i32).collect();
        let third = BigRational::new(1.into(), 3.into());
        let a = crate::series::macmahon_factor(&beta, &third, &vars, tr)?;
        let b = crate::series::macmahon_factor(&beta, &(BigRational::one() - &third), &vars, tr)?;
        let c = crate::series::macmahon_factor(&beta, &BigRational::one(), &vars, tr)?;
        additivity = a.try_mul(&b)? == c;
    }
    rep.push("MacMahon weight additivity", additivity, "w = 1/3 + 2/3");

    let fe = free_energy_check(&bps, tr)?;
    rep.push(
        "free energy from BPS counts",
        fe.passed(),
        if fe.passed() {
            format!(
                "{} classes, {} coefficients",
                fe.classes_checked, fe.coefficients_checked
            )
        } else {
            fe.mismatches.join("; ")
        },
    );

    let ints = threefold_integrals(&data);
    let pairing = mckay_pairing(&data)?;
    rep.push(
        "McKay pairing inverts the two-point matrix",
        is_identity(&matrix_product(&pairing, &ints.two_point)),
        "exact",
    );
    let surface = surface_integrals(&data);
    rep.push(
        "surface two-point = -C^-1",
        surface.two_point.entries == negative_inverse_cartan(r)?,
        "exact",
    );

    let mut bundles_ok = true;
    for i in 0..data.class_nodes.len() {
        let (a, b) = normal_bundle_type(&data, i)?;
        bundles_ok &= a + b == -2;
    }
    rep.push("normal bundle degrees sum to -2", bundles_ok, "");

    let ages = hard_lefschetz_check(&data.group)?;
    rep.push(
        "hard Lefschetz",
        ages.hard_lefschetz && ages.all_nontrivial_age_one,
        "every nontrivial class has age 1",
    );

    let model = OrbifoldModel::from_data(data)?;
    let check = crc_consistency(&model, 4, 20)?;
    rep.push(
        "orbifold potential against resolution",
        check.passed,
        format!(
            "{} coefficients, max deviation {}",
            check.coefficients_compared, check.max_deviation
        ),
    );
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["qmckay"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn partition_at_degree_zero_is_one() {
        let (code, out, _) = run_args(&["partition", "--group", "D5", "--max-q-degree", "0"]);
        assert_eq!(code, 0);
        assert_eq!(out, "1\n");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["bps", "--group", "A4"]).0, 3);
        assert_eq!(run_args(&["bps", "--group", "X:9"]).0, 2);
        assert_eq!(run_args(&["frobnicate"]).0, 2);
        assert_eq!(run_args(&["gw", "--lambda-order", "3"]).0, 2);
    }
}
