use std::fmt::Write as _;
use std::path::Path;

use icnoma_core::analysis::{self, Operating};
use icnoma_core::design::{conventional_scheme, design_select_far_code, design_two_stage, FarCodeChoice};
use icnoma_core::linksim::run_end_to_end;
use icnoma_core::report::{format_number, Table};
use icnoma_core::reproduce::{self, Target};
use icnoma_core::{
    build_schedule, Error, Group, IcNomaScheme, Scenario, SearchLimits, SimConfig, Transmission,
};

use crate::Failure;

fn load(arg: &str) -> Result<Scenario, Error> {
    let path = Path::new(arg);
    if path.exists() {
        return Scenario::from_path(path);
    }
    if Scenario::bundled_names().any(|n| n == arg) {
        return Scenario::bundled(arg);
    }
    let names: Vec<&str> = Scenario::bundled_names().collect();
    Err(Error::Scenario(format!(
        "{arg}: no such file and no bundled scenario of that name (bundled: {})",
        names.join(", ")
    )))
}

struct Designed {
    scheme: IcNomaScheme,
    conventional_length: usize,
    candidates: Vec<(String, usize)>,
}

fn design_scheme(sc: &Scenario, algorithm: u8, limits: &SearchLimits) -> Result<Designed, Error> {
    let (p, g) = (sc.problem(), sc.channel().grouping());
    if algorithm == 1 {
        let choice = match sc.preferred_far_code() {
            Some(code) => FarCodeChoice::Preferred(code),
            None => FarCodeChoice::FirstCanonical,
        };
        let scheme = design_two_stage(p, g, choice, limits)?;
        let conventional_length = conventional_scheme(p, g, limits)?.transmissions();
        Ok(Designed {
            scheme,
            conventional_length,
            candidates: Vec::new(),
        })
    } else {
        let sel = design_select_far_code(p, g, limits)?;
        Ok(Designed {
            conventional_length: sel.conventional_length,
            candidates: sel
                .candidates
                .iter()
                .map(|c| (c.far_code.to_string(), c.near_length))
                .collect(),
            scheme: sel.scheme,
        })
    }
}

fn users(list: &[usize]) -> String {
    if list.is_empty() {
        return "-".into();
    }
    list.iter().map(|u| format!("V{}", u + 1)).collect::<Vec<_>>().join(" ")
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

pub(crate) fn design(arg: &str, algorithm: u8, limits: &SearchLimits, csv: bool) -> Result<(), Failure> {
    let sc = load(arg)?;
    let d = design_scheme(&sc, algorithm, limits)?;
    let s = &d.scheme;
    let l = s.lengths();
    if csv {
        let mut t = Table::new(&[
            "scenario",
            "algorithm",
            "case",
            "conventional_length",
            "far_length",
            "near_length",
            "transmissions",
            "far_users",
            "near_users",
            "far_code",
            "near_code",
        ]);
        t.push(vec![
            sc.name().to_string(),
            algorithm.to_string(),
            s.case().label().to_string(),
            d.conventional_length.to_string(),
            l.far.to_string(),
            l.near.to_string(),
            s.transmissions().to_string(),
            users(s.grouping().far()),
            users(s.grouping().near()),
            s.far_code().to_string(),
            s.near_code().to_string(),
        ]);
        print!("{}", t.to_csv());
        return Ok(());
    }
    let mut out = String::new();
    let _ = writeln!(out, "scenario: {}", sc.name());
    let _ = writeln!(out, "algorithm: {algorithm}");
    let _ = writeln!(out, "far users: {}", users(s.grouping().far()));
    let _ = writeln!(out, "near users: {}", users(s.grouping().near()));
    let _ = writeln!(out, "far code: {}", s.far_code());
    let _ = writeln!(out, "near code: {}", s.near_code());
    let _ = writeln!(out, "far length: {}", l.far);
    let _ = writeln!(out, "near length: {}", l.near);
    let _ = writeln!(out, "transmissions: {}", s.transmissions());
    let _ = writeln!(out, "case: {}", s.case().label());
    let _ = writeln!(out, "conventional length: {}", d.conventional_length);
    let _ = writeln!(out, "schedule:");
    for (k, e) in build_schedule(s).entries().iter().enumerate() {
        let line = match e {
            Transmission::Superposed { near, far } => {
                format!("superposed: near layer {}, far layer {}", near.xor_expr(), far.xor_expr())
            }
            Transmission::Solo { row, audience } => {
                let who = match audience {
                    Group::Far => "all users",
                    Group::Near => "near users",
                };
                format!("full power: {} ({who})", row.xor_expr())
            }
        };
        let _ = writeln!(out, "  {}. {line}", k + 1);
    }
    if !d.candidates.is_empty() {
        let _ = writeln!(out, "optimal far codes: {}", d.candidates.len());
        for (code, l_n) in &d.candidates {
            let _ = writeln!(out, "  {code} -> near length {l_n}");
        }
    }
    print!("{out}");
    Ok(())
}

pub(crate) fn analyze(
    arg: &str,
    algorithm: u8,
    limits: &SearchLimits,
    qos_rate: f64,
    alphas: &[f64],
    output: Option<&Path>,
) -> Result<(), Failure> {
    let sc = load(arg)?;
    let alphas = if alphas.is_empty() {
        vec![sc.channel().alpha()]
    } else {
        alphas.to_vec()
    };
    for &a in &alphas {
        if !(a > 0.0 && a < 0.5) {
            return Err(Error::InvalidParameter(format!("alpha must lie in (0, 0.5), got {a}")).into());
        }
    }
    let d = design_scheme(&sc, algorithm, limits)?;
    let lengths = d.scheme.lengths();
    let ch = sc.channel();
    let mut t = Table::new(&["alpha", "r_avg", "p_avg", "p_saving", "total_ic", "total_icnoma", "status"]);
    for alpha in alphas {
        let op = Operating {
            power: ch.power(),
            alpha,
            far_gain: ch.far_gain(),
            near_gain: ch.near_gain(),
        };
        let rep = analysis::analyze(lengths, d.conventional_length, op, qos_rate)?;
        let mut row = vec![
            format_number(alpha),
            format_number(rep.rates.r_avg),
            format_number(rep.power.p_avg),
            format_number(rep.power.saving),
        ];
        match rep.qos {
            Ok(q) => {
                row.push(format_number(q.totals.total_ic));
                row.push(format_number(q.totals.total_icnoma));
                row.push("ok".into());
            }
            Err(Error::QosInfeasible { .. }) => {
                row.extend([String::new(), String::new(), "qos-infeasible".into()]);
            }
            Err(e) => return Err(e.into()),
        }
        t.push(row);
    }
    emit(&t.to_csv(), output)
}

pub(crate) struct SimOverrides {
    pub snr_sweep: Vec<f64>,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub packet_bits: Option<usize>,
}

pub(crate) fn simulate(
    arg: &str,
    algorithm: u8,
    limits: &SearchLimits,
    o: SimOverrides,
    output: Option<&Path>,
) -> Result<(), Failure> {
    let sc = load(arg)?;
    let base = sc
        .sim()
        .copied()
        .ok_or_else(|| Error::Scenario(format!("{}: scenario has no [sim] block", sc.name())))?;
    let base = SimConfig::new(
        o.packet_bits.unwrap_or(base.packet_bits),
        base.noise_variance,
        o.trials.unwrap_or(base.trials),
        o.seed.unwrap_or(base.seed),
    )?;
    let ch = sc.channel();
    let points: Vec<(String, f64)> = if o.snr_sweep.is_empty() {
        let v = base.noise_variance;
        let db = if v == 0.0 {
            f64::INFINITY
        } else {
            10.0 * (ch.power() / v).log10()
        };
        vec![(format_number(db), v)]
    } else {
        o.snr_sweep
            .iter()
            .map(|&db| {
                if db.is_nan() || db == f64::NEG_INFINITY {
                    return Err(Error::InvalidParameter(format!("invalid SNR point {db}")));
                }
                Ok((format_number(db), ch.power() / 10f64.powf(db / 10.0)))
            })
            .collect::<Result<_, _>>()?
    };
    let d = design_scheme(&sc, algorithm, limits)?;
    let sched = build_schedule(&d.scheme);
    let mut t = Table::new(&["snr_db", "noise_variance", "user", "group", "success_rate", "ber"]);
    for (db, variance) in points {
        let cfg = base.with_noise_variance(variance)?;
        let res = run_end_to_end(sc.problem(), &sched, ch, &cfg)?;
        for user in 0..sc.problem().receiver_count() {
            let group = match ch.grouping().group_of(user) {
                Group::Far => "far",
                Group::Near => "near",
            };
            t.push(vec![
                db.clone(),
                format_number(variance),
                format!("V{}", user + 1),
                group.into(),
                format_number(res.success_rate(user)),
                format_number(res.ber(user)),
            ]);
        }
    }
    emit(&t.to_csv(), output)
}

pub(crate) fn reproduce(target: &str, out_dir: &Path) -> Result<(), Failure> {
    let targets: Vec<Target> = if target == "all" {
        Target::ALL.to_vec()
    } else {
        vec![target.parse()?]
    };
    std::fs::create_dir_all(out_dir)?;
    let mut failed = false;
    for t in targets {
        let r = reproduce::reproduce(t, &SearchLimits::default())?;
        std::fs::write(out_dir.join(format!("{t}.csv")), r.table.to_csv())?;
        std::fs::write(out_dir.join(format!("{t}.diff.txt")), r.diff_text())?;
        let bad = r.mismatches().count();
        println!(
            "{t}: {} ({} checks, {bad} mismatched)",
            if bad == 0 { "match" } else { "MISMATCH" },
            r.checks.len()
        );
        for c in r.mismatches() {
            eprintln!("{t}: {}: expected {} got {}", c.item, c.expected, c.actual);
        }
        failed |= bad > 0;
    }
    if failed {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}
