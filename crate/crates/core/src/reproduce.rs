//! Regenerates the reference tables and figure series from the bundled
//! scenarios and compares them with the published values.

use std::fmt;
use std::str::FromStr;

use crate::analysis;
use crate::design::{
    build_schedule, design_select_far_code, design_two_stage, near_problem, CodeLengths, FarCodeChoice,
    IcNomaScheme, Selection,
};
use crate::error::{Error, Result};
use crate::galois::{BitMatrix, BitVector};
use crate::index_coding::{min_code_length, IndexCodingProblem, LinearIndexCode, SearchLimits};
use crate::report::{format_number, Table};
use crate::scenario::Scenario;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Example1,
    Example2,
    Table5,
    Table7,
    Table9,
    Fig3,
    Fig4,
    Fig5,
}

impl Target {
    pub const ALL: [Target; 8] = [
        Target::Example1,
        Target::Example2,
        Target::Table5,
        Target::Table7,
        Target::Table9,
        Target::Fig3,
        Target::Fig4,
        Target::Fig5,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Target::Example1 => "example1",
            Target::Example2 => "example2",
            Target::Table5 => "table5",
            Target::Table7 => "table7",
            Target::Table9 => "table9",
            Target::Fig3 => "fig3",
            Target::Fig4 => "fig4",
            Target::Fig5 => "fig5",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Target::ALL.iter().map(|t| t.name()).collect();
                Error::invalid(format!("unknown target {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

/// How closely a reproduced item matched its reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Exact,
    /// Same row space as the reference code.
    RowSpace,
    /// Different row space, but the reference code is valid and equally short.
    ValidLength,
    /// A qualitative property of a data series holds.
    Property,
}

impl Level {
    pub fn label(&self) -> &'static str {
        match self {
            Level::Exact => "exact",
            Level::RowSpace => "row-space",
            Level::ValidLength => "valid+length",
            Level::Property => "property",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub item: String,
    pub expected: String,
    pub actual: String,
    /// `None` when the item does not match.
    pub level: Option<Level>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.level.is_some()
    }

    fn exact(item: impl Into<String>, expected: impl fmt::Display, actual: impl fmt::Display) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        let level = (expected == actual).then_some(Level::Exact);
        Self {
            item: item.into(),
            expected,
            actual,
            level,
        }
    }

    fn property(item: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>, holds: bool) -> Self {
        Self {
            item: item.into(),
            expected: expected.into(),
            actual: actual.into(),
            level: holds.then_some(Level::Property),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reproduction {
    pub target: Target,
    pub table: Table,
    pub checks: Vec<Check>,
}

impl Reproduction {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    /// One line per check: status, item, expected and actual value, and the
    /// comparison level that passed.
    pub fn diff_text(&self) -> String {
        let mut out = format!("target {}\n", self.target);
        for c in &self.checks {
            let status = match c.level {
                Some(l) => format!("ok   [{}]", l.label()),
                None => "DIFF".to_string(),
            };
            out.push_str(&format!(
                "{status} {}: expected {} | got {}\n",
                c.item, c.expected, c.actual
            ));
        }
        let failed = self.mismatches().count();
        out.push_str(&format!(
            "{} checks, {} mismatched\n",
            self.checks.len(),
            failed
        ));
        out
    }
}

/// Builds a code from 1-based index rows.
fn code(n: usize, rows: &[&[usize]]) -> LinearIndexCode {
    let zero: Vec<Vec<usize>> = rows.iter().map(|r| r.iter().map(|i| i - 1).collect()).collect();
    let refs: Vec<&[usize]> = zero.iter().map(Vec::as_slice).collect();
    LinearIndexCode::from_index_rows(n, &refs).expect("reference code rows are independent")
}

fn matrix(n: usize, rows: &[&[usize]]) -> BitMatrix {
    let vecs = rows
        .iter()
        .map(|r| BitVector::from_indices(n, &r.iter().map(|i| i - 1).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()
        .expect("reference rows fit the width");
    BitMatrix::from_rows(n, vecs).expect("reference rows share the width")
}

/// Row-space comparison, falling back to validity of the reference on `problem`
/// with the same length as the reproduced code.
fn compare_code(
    item: impl Into<String>,
    reference: &LinearIndexCode,
    reproduced: &LinearIndexCode,
    problem: &IndexCodingProblem,
) -> Result<Check> {
    let level = if reference.same_row_space(reproduced) {
        Some(Level::RowSpace)
    } else if reference.len() == reproduced.len() && problem.is_valid_code(reference)? {
        Some(Level::ValidLength)
    } else {
        None
    };
    Ok(Check {
        item: item.into(),
        expected: reference.to_string(),
        actual: reproduced.to_string(),
        level,
    })
}

fn users_label(users: &[usize]) -> String {
    let names: Vec<String> = users.iter().map(|u| format!("V{}", u + 1)).collect();
    format!("{{{}}}", names.join(", "))
}

fn wants_label(wants: &std::collections::BTreeSet<usize>) -> String {
    let names: Vec<String> = wants.iter().map(|w| format!("x{}", w + 1)).collect();
    format!("{{{}}}", names.join(", "))
}

fn scheme_table(l_ic: usize, s: &IcNomaScheme) -> Table {
    let mut t = Table::new(&["quantity", "value"]);
    let l = s.lengths();
    let rows: [(&str, String); 9] = [
        ("conventional_length", l_ic.to_string()),
        ("far_users", users_label(s.grouping().far())),
        ("near_users", users_label(s.grouping().near())),
        ("far_code", s.far_code().to_string()),
        ("near_code", s.near_code().to_string()),
        ("far_length", l.far.to_string()),
        ("near_length", l.near.to_string()),
        ("transmissions", s.transmissions().to_string()),
        ("case", s.case().label().to_string()),
    ];
    for (k, v) in rows {
        t.push(vec![k.to_string(), v]);
    }
    t
}

pub fn reproduce(target: Target, limits: &SearchLimits) -> Result<Reproduction> {
    let (table, checks) = match target {
        Target::Example1 => example1(limits)?,
        Target::Example2 => example2(limits)?,
        Target::Table5 => table5()?,
        Target::Table7 => table7(limits)?,
        Target::Table9 => table9(limits)?,
        Target::Fig3 => fig3(limits)?,
        Target::Fig4 => fig4(limits)?,
        Target::Fig5 => fig5(limits)?,
    };
    Ok(Reproduction { target, table, checks })
}

fn example1(limits: &SearchLimits) -> Result<(Table, Vec<Check>)> {
    let sc = Scenario::bundled("example1")?;
    let (p, g) = (sc.problem(), sc.channel().grouping());
    let l_ic = min_code_length(p, p.n(), limits)?;
    let s = design_two_stage(p, g, FarCodeChoice::FirstCanonical, limits)?;
    let far = p.subproblem(g.far())?;
    let near = near_problem(p, g, s.far_code())?;
    let checks = vec![
        Check::exact("conventional length", 2, l_ic),
        Check::exact("far users", "{V3}", users_label(g.far())),
        compare_code("far code", &code(3, &[&[3]]), s.far_code(), &far)?,
        compare_code("near code", &code(3, &[&[1, 2]]), s.near_code(), &near)?,
        Check::exact("transmissions", 1, s.transmissions()),
    ];
    Ok((scheme_table(l_ic, &s), checks))
}

fn example2_reference_far() -> LinearIndexCode {
    code(7, &[&[1, 7], &[3, 6], &[4, 7]])
}

fn example2(limits: &SearchLimits) -> Result<(Table, Vec<Check>)> {
    let sc = Scenario::bundled("example2")?;
    let (p, g) = (sc.problem(), sc.channel().grouping());
    let l_ic = min_code_length(p, p.n(), limits)?;
    let preferred = sc
        .preferred_far_code()
        .ok_or_else(|| Error::Scenario("example2 scenario lacks its preferred far code".into()))?;
    let s = design_two_stage(p, g, FarCodeChoice::Preferred(preferred), limits)?;
    let far = p.subproblem(g.far())?;
    let near = near_problem(p, g, s.far_code())?;
    let conventional = code(7, &[&[1, 4], &[2, 5], &[3, 6], &[4, 7]]);
    let conventional_valid = p.is_valid_code(&conventional)?;
    let sched = build_schedule(&s);

    let mut table = scheme_table(l_ic, &s);
    table.push(vec!["superposed".into(), sched.superposed_count().to_string()]);
    let checks = vec![
        Check::exact("conventional length", 4, l_ic),
        Check::exact(
            "reference conventional code valid with length 4",
            true,
            conventional_valid && conventional.len() == l_ic,
        ),
        Check::exact("far users", "{V4, V5}", users_label(g.far())),
        Check::exact("far length", 3, min_code_length(&far, p.n(), limits)?),
        compare_code("far code", &example2_reference_far(), s.far_code(), &far)?,
        compare_code("near code", &code(7, &[&[2, 5]]), s.near_code(), &near)?,
        Check::exact("lengths (far, near)", "(3, 1)", format!("({}, {})", s.lengths().far, s.lengths().near)),
        Check::exact("transmissions", 3, s.transmissions()),
        Check::exact("superposed transmissions", 1, sched.superposed_count()),
    ];
    Ok((table, checks))
}

fn table5() -> Result<(Table, Vec<Check>)> {
    let sc = Scenario::bundled("example2")?;
    let (p, g) = (sc.problem(), sc.channel().grouping());
    let reduced = near_problem(p, g, &example2_reference_far())?;
    let coded: [&[usize]; 3] = [&[1, 7], &[3, 6], &[4, 7]];
    let expected: [(&[usize], &[usize]); 3] = [(&[1, 2, 3], &[5]), (&[2, 3, 4], &[5]), (&[3, 4, 5], &[2])];

    let mut table = Table::new(&["user", "known", "wants"]);
    let mut checks = Vec::new();
    for ((&user, r), (known, wants)) in g.near().iter().zip(reduced.receivers()).zip(expected) {
        let label = format!("V{}", user + 1);
        table.push(vec![label.clone(), r.side_info().xor_set(), wants_label(r.wants())]);
        let mut rows: Vec<&[usize]> = known.iter().map(std::slice::from_ref).collect();
        rows.extend(coded);
        let reference = matrix(7, &rows);
        checks.push(Check {
            item: format!("{label} known"),
            expected: reference.xor_set(),
            actual: r.side_info().xor_set(),
            level: reference.same_row_space(r.side_info()).then_some(Level::RowSpace),
        });
        let want_set = wants.iter().map(|w| w - 1).collect();
        checks.push(Check::exact(format!("{label} wants"), wants_label(&want_set), wants_label(r.wants())));
    }
    Ok((table, checks))
}

fn table7(limits: &SearchLimits) -> Result<(Table, Vec<Check>)> {
    let sc = Scenario::bundled("example3")?;
    let (p, g) = (sc.problem(), sc.channel().grouping());
    let sel = design_select_far_code(p, g, limits)?;

    let mut table = Table::new(&["far_code", "far_length", "near_length", "selected"]);
    for c in &sel.candidates {
        table.push(vec![
            c.far_code.to_string(),
            c.far_code.len().to_string(),
            c.near_length.to_string(),
            c.far_code.same_row_space(sel.scheme.far_code()).to_string(),
        ]);
    }

    let reference: [(&[&[usize]], &[&[usize]], usize); 3] = [
        (&[&[1], &[2, 7], &[3]], &[&[2, 5], &[3, 6], &[4, 1]], 3),
        (&[&[1, 6], &[2, 7], &[3, 6]], &[&[2, 5], &[4]], 2),
        (&[&[1, 7], &[2, 5], &[3, 6]], &[&[4, 1]], 1),
    ];
    let mut checks = vec![
        Check::exact("conventional length", 4, sel.conventional_length),
        Check::exact("far length", 3, sel.scheme.lengths().far),
    ];
    for (far_rows, near_rows, l_n) in reference {
        let far_ref = code(7, far_rows);
        let found = sel.candidates.iter().find(|c| c.far_code.same_row_space(&far_ref));
        checks.push(Check {
            item: format!("far code {far_ref} among optimal far codes"),
            expected: format!("near length {l_n}"),
            actual: found.map_or("absent".into(), |c| format!("near length {}", c.near_length)),
            level: found.filter(|c| c.near_length == l_n).map(|_| Level::RowSpace),
        });
        let reduced = near_problem(p, g, &far_ref)?;
        let near_ref = code(7, near_rows);
        let ours = design_two_stage(p, g, FarCodeChoice::Preferred(&far_ref), limits)?;
        checks.push(compare_code(
            format!("near code for {far_ref}"),
            &near_ref,
            ours.near_code(),
            &reduced,
        )?);
    }
    checks.push(Check::exact("selected near length", 1, sel.scheme.lengths().near));
    Ok((table, checks))
}

type Table9Row = (&'static str, &'static [&'static [usize]], &'static [&'static [usize]], (usize, usize));

const TABLE9: [Table9Row; 3] = [
    ("table8_case1", &[&[1, 7], &[3, 6]], &[&[2, 4], &[4, 5]], (2, 2)),
    ("table8_case2", &[&[1, 7], &[2, 5], &[6, 3]], &[&[4, 1]], (3, 1)),
    ("table8_case3", &[&[3, 7]], &[&[1, 4], &[5, 2], &[6, 3]], (1, 3)),
];

fn table9(limits: &SearchLimits) -> Result<(Table, Vec<Check>)> {
    let mut table = Table::new(&[
        "scenario",
        "case",
        "conventional_length",
        "far_length",
        "near_length",
        "far_code",
        "near_code",
    ]);
    let mut checks = Vec::new();
    for (name, far_rows, near_rows, (l_f, l_n)) in TABLE9 {
        let sc = Scenario::bundled(name)?;
        let (p, g) = (sc.problem(), sc.channel().grouping());
        let sel = design_select_far_code(p, g, limits)?;
        let s = &sel.scheme;
        let l = s.lengths();
        table.push(vec![
            name.to_string(),
            s.case().label().to_string(),
            sel.conventional_length.to_string(),
            l.far.to_string(),
            l.near.to_string(),
            s.far_code().to_string(),
            s.near_code().to_string(),
        ]);
        checks.push(Check::exact(format!("{name} conventional length"), 4, sel.conventional_length));
        checks.push(Check::exact(
            format!("{name} lengths (far, near)"),
            format!("({l_f}, {l_n})"),
            format!("({}, {})", l.far, l.near),
        ));
        let far_ref = code(7, far_rows);
        let far = p.subproblem(g.far())?;
        checks.push(compare_code(format!("{name} far code"), &far_ref, s.far_code(), &far)?);
        let near_ref = code(7, near_rows);
        let reduced = near_problem(p, g, &far_ref)?;
        checks.push(compare_code(format!("{name} near code"), &near_ref, s.near_code(), &reduced)?);
    }
    Ok((table, checks))
}

/// Channel used for the figure series: far gain, near gain, near-layer fraction.
pub const FIGURE_CHANNEL: (f64, f64, f64) = (0.2, 1.0, 0.25);

/// Total power sweep for the rate and average-power series, in dB.
pub fn figure_power_db() -> Vec<f64> {
    (0..=15).map(|k| 2.0 * k as f64).collect()
}

pub const FIG5_ALPHAS: [f64; 2] = [0.2, 0.3];
pub const FIG5_RATES: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

/// Designed lengths of the three demand patterns plus their common
/// conventional length.
pub fn table8_designs(limits: &SearchLimits) -> Result<Vec<(String, Selection)>> {
    TABLE9
        .iter()
        .map(|(name, ..)| {
            let sc = Scenario::bundled(name)?;
            let sel = design_select_far_code(sc.problem(), sc.channel().grouping(), limits)?;
            Ok((name.to_string(), sel))
        })
        .collect()
}

fn design_lengths(limits: &SearchLimits) -> Result<(usize, [CodeLengths; 3])> {
    let designs = table8_designs(limits)?;
    let l_ic = designs.iter().map(|(_, s)| s.conventional_length).max().unwrap_or(0);
    let lengths = [0, 1, 2].map(|k| designs[k].1.scheme.lengths());
    Ok((l_ic, lengths))
}

fn fig3(limits: &SearchLimits) -> Result<(Table, Vec<Check>)> {
    let (_, [c1, c2, c3]) = design_lengths(limits)?;
    let (g_f, g_n, alpha) = FIGURE_CHANNEL;
    let mut table = Table::new(&["power_db", "power", "r_ic", "r_avg_case1", "r_avg_case2", "r_avg_case3"]);
    let mut checks = Vec::new();
    for db in figure_power_db() {
        let power = 10f64.powf(db / 10.0);
        let r1 = analysis::avg_rate(c1, power, alpha, g_f, g_n)?;
        let r2 = analysis::avg_rate(c2, power, alpha, g_f, g_n)?;
        let r3 = analysis::avg_rate(c3, power, alpha, g_f, g_n)?;
        let r_ic = analysis::rate_ic(power, g_f);
        table.push([db, power, r_ic, r1, r2, r3].iter().map(|&v| format_number(v)).collect());
        checks.push(Check::property(
            format!("P = {} dB", format_number(db)),
            "case3 > case1 > case2",
            format!("{} > {} > {}", format_number(r3), format_number(r1), format_number(r2)),
            r3 > r1 && r1 > r2,
        ));
    }
    Ok((table, checks))
}

fn fig4(limits: &SearchLimits) -> Result<(Table, Vec<Check>)> {
    let (l_ic, cases) = design_lengths(limits)?;
    let (g_f, g_n, alpha) = FIGURE_CHANNEL;
    let mut table = Table::new(&[
        "power_db",
        "p_ic",
        "p_avg_ic",
        "p_avg_case1",
        "p_avg_case2",
        "p_avg_case3",
        "p_saving_case1",
        "p_saving_case2",
        "p_saving_case3",
    ]);
    let mut checks = Vec::new();
    for db in figure_power_db() {
        let p_ic = 10f64.powf(db / 10.0);
        let reports = cases
            .iter()
            .map(|&l| analysis::power_report(l, l_ic, p_ic, alpha, g_f, g_n))
            .collect::<Result<Vec<_>>>()?;
        let mut row = vec![db, p_ic, p_ic];
        row.extend(reports.iter().map(|r| r.p_avg));
        row.extend(reports.iter().map(|r| r.saving));
        table.push(row.iter().map(|&v| format_number(v)).collect());
        let avgs: Vec<String> = reports.iter().map(|r| format_number(r.p_avg)).collect();
        checks.push(Check::property(
            format!("P_ic = {} dB", format_number(db)),
            "conventional above every case",
            format!("{} vs [{}]", format_number(p_ic), avgs.join(", ")),
            reports.iter().all(|r| r.p_avg < p_ic),
        ));
    }
    Ok((table, checks))
}

fn fig5(limits: &SearchLimits) -> Result<(Table, Vec<Check>)> {
    let (l_ic, cases) = design_lengths(limits)?;
    let (g_f, g_n, _) = FIGURE_CHANNEL;
    let mut table = Table::new(&[
        "alpha",
        "rate",
        "total_ic",
        "total_case1",
        "total_case2",
        "total_case3",
        "status",
    ]);
    let mut checks = Vec::new();
    for alpha in FIG5_ALPHAS {
        for rate in FIG5_RATES {
            let q = analysis::qos_powers(rate, alpha, g_f, g_n)?;
            let totals = cases.map(|l| analysis::qos_totals(l, l_ic, &q));
            let mut row: Vec<String> = [alpha, rate, totals[0].total_ic]
                .iter()
                .chain(totals.iter().map(|t| &t.total_icnoma))
                .map(|&v| format_number(v))
                .collect();
            row.push("ok".into());
            table.push(row);
            let case3 = totals[2];
            checks.push(Check::property(
                format!("alpha = {}, R = {}", format_number(alpha), format_number(rate)),
                "case3 total below conventional",
                format!(
                    "{} < {}",
                    format_number(case3.total_icnoma),
                    format_number(case3.total_ic)
                ),
                case3.total_icnoma < case3.total_ic,
            ));
        }
    }
    Ok((table, checks))
}
