//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use common::{code_span, span_of, sum, vector_of, Instance, Span, SubspaceOracle};
use icnoma_core::analysis;
use icnoma_core::design::{
    build_schedule, design_select_far_code, design_two_stage, near_length_for, near_problem, FarCodeChoice,
};
use icnoma_core::index_coding::{enumerate_optimal_codes, min_code_length};
use icnoma_core::linksim::{bpsk, receive, run_end_to_end, sic_decode_near, superpose};
use icnoma_core::{
    ChannelProfile, CodeLengths, Group, IcNomaScheme, Scenario, SearchLimits, SimConfig, Transmission,
    TransmissionSchedule,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Span from 1-based index rows.
fn rows(list: &[&[usize]]) -> Span {
    span_of(
        &list
            .iter()
            .map(|r| r.iter().fold(0u32, |acc, i| acc ^ (1 << (i - 1))))
            .collect::<Vec<_>>(),
    )
}

fn visible_spans(sched: &TransmissionSchedule) -> (Span, Span) {
    let (mut far, mut near) = (Vec::new(), Vec::new());
    for e in sched.entries() {
        match *e {
            Transmission::Superposed { near: n, far: f } => {
                far.push(vector_of(&f));
                near.push(vector_of(&f));
                near.push(vector_of(&n));
            }
            Transmission::Solo { row, audience } => {
                near.push(vector_of(&row));
                if audience == Group::Far {
                    far.push(vector_of(&row));
                }
            }
        }
    }
    (span_of(&far), span_of(&near))
}

/// Per-user decodability of a schedule under the oracle.
fn oracle_decodes(inst: &Instance, ch: &ChannelProfile, sched: &TransmissionSchedule) -> Vec<bool> {
    let (far, near) = visible_spans(sched);
    (0..inst.users.len())
        .map(|i| match ch.grouping().group_of(i) {
            Group::Far => inst.user_decodes(i, far),
            Group::Near => inst.user_decodes(i, near),
        })
        .collect()
}

fn bundled(name: &str) -> Result<Scenario, String> {
    lift(Scenario::bundled(name))
}

fn criterion1() -> Outcome {
    let sc = bundled("example1")?;
    let (p, g) = (sc.problem(), sc.channel().grouping());
    let limits = SearchLimits::default();
    let l_ic = lift(min_code_length(p, p.n(), &limits))?;
    let oracle = SubspaceOracle::new(3).min_length(&Instance::from_problem(p, sc.channel().gains()));
    ensure(l_ic == 2 && oracle == 2, || format!("conventional length {l_ic}, oracle {oracle}"))?;
    let s = lift(design_two_stage(p, g, FarCodeChoice::FirstCanonical, &limits))?;
    ensure(s.transmissions() == 1, || format!("{} transmissions", s.transmissions()))?;
    ensure(code_span(s.far_code()) == rows(&[&[3]]), || format!("far code {}", s.far_code()))?;
    ensure(code_span(s.near_code()) == rows(&[&[1, 2]]), || format!("near code {}", s.near_code()))?;
    Ok(format!("l_ic = 2, one transmission: far {} near {}", s.far_code(), s.near_code()))
}

fn criterion2() -> Outcome {
    let sc = bundled("example2")?;
    let (p, g) = (sc.problem(), sc.channel().grouping());
    let limits = SearchLimits::default();
    let inst = Instance::from_problem(p, sc.channel().gains());
    let oracle = SubspaceOracle::new(7);
    let l_ic = lift(min_code_length(p, p.n(), &limits))?;
    let l_oracle = oracle.min_length(&inst);
    ensure(l_ic == 4 && l_oracle == 4, || format!("conventional length {l_ic}, oracle {l_oracle}"))?;

    let reference_far = rows(&[&[1, 7], &[3, 6], &[4, 7]]);
    let far_inst = inst.subset(g.far());
    ensure(oracle.optimal_codes(&far_inst).contains(&reference_far), || {
        "reference far code is not an optimal far code".into()
    })?;
    let preferred = sc.preferred_far_code().ok_or("no preferred far code")?;
    let s = lift(design_two_stage(p, g, FarCodeChoice::Preferred(preferred), &limits))?;
    let l = s.lengths();
    ensure((l.far, l.near, s.transmissions()) == (3, 1, 3), || {
        format!("lengths ({}, {}), {} transmissions", l.far, l.near, s.transmissions())
    })?;
    ensure(code_span(s.far_code()) == reference_far, || format!("far code {}", s.far_code()))?;
    ensure(code_span(s.near_code()) == rows(&[&[2, 5]]), || format!("near code {}", s.near_code()))?;

    let reduced = lift(near_problem(p, g, s.far_code()))?;
    let expected: [(&[usize], usize); 3] = [(&[1, 2, 3], 5), (&[2, 3, 4], 5), (&[3, 4, 5], 2)];
    for (r, (known, want)) in reduced.receivers().iter().zip(expected) {
        let mut list: Vec<&[usize]> = known.iter().map(std::slice::from_ref).collect();
        list.extend([&[1usize, 7][..], &[3, 6], &[4, 7]]);
        let side = span_of(&common::vectors_of(r.side_info()));
        ensure(side == rows(&list), || format!("reduced side information {}", r.side_info().xor_set()))?;
        let wants: Vec<usize> = r.wants().iter().map(|w| w + 1).collect();
        ensure(wants == vec![want], || format!("reduced wants {wants:?}, expected [{want}]"))?;
    }
    let first = lift(design_two_stage(p, g, FarCodeChoice::FirstCanonical, &limits))?;
    Ok(format!(
        "l_ic = 4, (3, 1), near {}, reduced wants {{x5}},{{x5}},{{x2}}; first canonical far code {} gives l_n = {}",
        s.near_code(),
        first.far_code(),
        first.lengths().near
    ))
}

fn criterion3() -> Outcome {
    let sc = bundled("example3")?;
    let (p, g) = (sc.problem(), sc.channel().grouping());
    let limits = SearchLimits::default();
    let inst = Instance::from_problem(p, sc.channel().gains());
    let oracle = SubspaceOracle::new(7);
    let far = lift(p.subproblem(g.far()))?;
    let l_f = lift(min_code_length(&far, p.n(), &limits))?;
    let codes = lift(enumerate_optimal_codes(&far, l_f, &limits))?;
    let mut ours: Vec<Span> = codes.iter().map(code_span).collect();
    ours.sort_unstable();
    let theirs = oracle.optimal_codes(&inst.subset(g.far()));
    ensure(ours == theirs, || {
        format!("{} optimal far codes enumerated, oracle has {}", ours.len(), theirs.len())
    })?;

    let listed: [(&[&[usize]], usize); 3] = [
        (&[&[1], &[2, 7], &[3]], 3),
        (&[&[1, 6], &[2, 7], &[3, 6]], 2),
        (&[&[1, 7], &[2, 5], &[3, 6]], 1),
    ];
    for (far_rows, l_n) in listed {
        let span = rows(far_rows);
        let code = codes
            .iter()
            .find(|c| code_span(c) == span)
            .ok_or_else(|| format!("listed far code {far_rows:?} not enumerated"))?;
        let ours = lift(near_length_for(p, g, code, &limits))?;
        let oracle_l = oracle.near_length(&inst, g.near(), span);
        ensure(ours == l_n && oracle_l == l_n, || {
            format!("far code {code}: near length {ours}, oracle {oracle_l}, expected {l_n}")
        })?;
    }
    let sel = lift(design_select_far_code(p, g, &limits))?;
    ensure(sel.scheme.lengths().near == 1, || format!("selected near length {}", sel.scheme.lengths().near))?;
    Ok(format!(
        "l_f = {l_f}, {} optimal far codes (oracle agrees), listed codes give l_n = 3, 2, 1; selected {}",
        codes.len(),
        sel.scheme.far_code()
    ))
}

fn criterion4() -> Outcome {
    type Case = (&'static str, &'static [&'static [usize]], &'static [&'static [usize]], (usize, usize));
    let cases: [Case; 3] = [
        ("table8_case1", &[&[1, 7], &[3, 6]], &[&[2, 4], &[4, 5]], (2, 2)),
        ("table8_case2", &[&[1, 7], &[2, 5], &[6, 3]], &[&[4, 1]], (3, 1)),
        ("table8_case3", &[&[3, 7]], &[&[1, 4], &[5, 2], &[6, 3]], (1, 3)),
    ];
    let oracle = SubspaceOracle::new(7);
    let limits = SearchLimits::default();
    let mut notes = Vec::new();
    for (name, far_rows, near_rows, lengths) in cases {
        let sc = bundled(name)?;
        let (p, g) = (sc.problem(), sc.channel().grouping());
        let inst = Instance::from_problem(p, sc.channel().gains());
        let sel = lift(design_select_far_code(p, g, &limits))?;
        let s = &sel.scheme;
        let got = (s.lengths().far, s.lengths().near);
        ensure(got == lengths && sel.conventional_length == 4, || {
            format!("{name}: lengths {got:?}, l_ic {}", sel.conventional_length)
        })?;
        ensure(oracle.min_length(&inst) == 4, || format!("{name}: oracle l_ic differs"))?;

        let (reference_far, reference_near) = (rows(far_rows), rows(near_rows));
        let far_level = if code_span(s.far_code()) == reference_far {
            "row-space"
        } else if oracle.optimal_codes(&inst.subset(g.far())).contains(&reference_far) {
            "valid+length"
        } else {
            return Err(format!("{name}: reference far code is not an optimal far code"));
        };
        let near_inst = inst.subset(g.near());
        let near_level = if code_span(s.near_code()) == reference_near {
            "row-space"
        } else if common::dim(reference_near) == lengths.1 && near_inst.all_decode(sum(reference_near, reference_far)) {
            "valid+length"
        } else {
            return Err(format!("{name}: reference near code does not serve the near users"));
        };
        let sched = build_schedule(s);
        ensure(oracle_decodes(&inst, sc.channel(), &sched).iter().all(|&d| d), || {
            format!("{name}: designed scheme leaves a user undecoded")
        })?;
        notes.push(format!("{name} {got:?} far {far_level} near {near_level}"));
    }
    Ok(notes.join("; "))
}

fn scheme_ok(inst: &Instance, ch: &ChannelProfile, s: &IcNomaScheme, l_ic: usize) -> Result<(), String> {
    ensure(s.transmissions() <= l_ic, || {
        format!("{} transmissions exceed conventional {l_ic}", s.transmissions())
    })?;
    let sched = build_schedule(s);
    ensure(oracle_decodes(inst, ch, &sched).iter().all(|&d| d), || {
        format!("scheme far {} near {} leaves a user undecoded", s.far_code(), s.near_code())
    })
}

fn criterion5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let oracles: Vec<SubspaceOracle> = (0..=6).map(SubspaceOracle::new).collect();
    let mut split = 0;
    let mut shorter = 0;
    for k in 0..500 {
        let inst = common::random_instance(&mut rng, 2..=6, 5);
        let p = inst.to_problem();
        let ch = lift(ChannelProfile::new(inst.gains(), 10.0, 0.25))?;
        let limits = SearchLimits::exhaustive(inst.n);
        let l_ic = lift(min_code_length(&p, p.n(), &limits))?;
        ensure(l_ic == oracles[inst.n].min_length(&inst), || format!("instance {k}: l_ic disagrees with oracle"))?;
        let alg1 = lift(design_two_stage(&p, ch.grouping(), FarCodeChoice::FirstCanonical, &limits))?;
        let alg2 = lift(design_select_far_code(&p, ch.grouping(), &limits))?.scheme;
        for s in [&alg1, &alg2] {
            scheme_ok(&inst, &ch, s, l_ic).map_err(|e| format!("instance {k}: {e} ({inst:?})"))?;
        }
        split += ch.grouping().is_split() as usize;
        shorter += (alg2.transmissions() < l_ic) as usize;
    }
    Ok(format!(
        "500 instances ({split} with both groups, {shorter} strictly shorter than conventional)"
    ))
}

fn criterion6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let oracles: Vec<SubspaceOracle> = (0..=5).map(SubspaceOracle::new).collect();
    let mut hist = [0usize; 6];
    for k in 0..200 {
        let inst = common::random_instance(&mut rng, 1..=5, 5);
        let p = inst.to_problem();
        let limits = SearchLimits::exhaustive(inst.n);
        let ours = lift(min_code_length(&p, p.n(), &limits))?;
        let oracle = oracles[inst.n].min_length(&inst);
        ensure(ours == oracle, || format!("instance {k}: {ours} vs oracle {oracle} ({inst:?})"))?;
        hist[ours] += 1;
    }
    Ok(format!("200 instances agree; lengths 0..5 seen {hist:?}"))
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

struct Draw {
    p: f64,
    alpha: f64,
    g_f: f64,
    g_n: f64,
}

fn draw<R: Rng>(rng: &mut R) -> Draw {
    let g_f = rng.random_range(0.01..2.0);
    Draw {
        p: rng.random_range(1e-3..100.0),
        alpha: rng.random_range(1e-3..0.499),
        g_f,
        g_n: g_f * rng.random_range(1.001..50.0),
    }
}

fn criterion7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut worst = [0.0f64; 5];
    for _ in 0..10_000 {
        let Draw { p, alpha, g_f, g_n } = draw(&mut rng);
        let r = lift(analysis::rate_noma(p, alpha, g_f, g_n))?;
        let r_ic = analysis::rate_ic(p, g_f);
        let product = ((1.0 + p * g_f) * (1.0 + alpha * p * g_n) / (1.0 + alpha * p * g_f)).log2();
        let gain = ((1.0 + alpha * p * g_n) / (1.0 + alpha * p * g_f)).log2();
        let z = analysis::zeta(p, alpha, g_f, g_n);
        let z1 = analysis::zeta1(p, g_f, g_n);
        let rate = rng.random_range(0.0..1.0) * (1.0 / alpha).log2() * 0.999 + 1e-6;
        let q = lift(analysis::qos_powers(rate, alpha, g_f, g_n))?;
        let errs = [
            rel_err(r.sum, product),
            rel_err(r.sum - r_ic, gain).max(rel_err(analysis::rate_gain(p, alpha, g_f, g_n), gain)),
            rel_err((1.0 + (p + z) * g_f).log2(), r.sum),
            rel_err((1.0 + (p + z1) * g_f).log2(), (1.0 + p * g_n).log2()),
            rel_err(q.p_d3, q.p_ic * g_f / g_n),
        ];
        for (w, e) in worst.iter_mut().zip(errs) {
            *w = w.max(e);
        }
    }
    let names = ["sum-rate forms", "gain", "zeta", "zeta1", "p_d3"];
    for (name, w) in names.iter().zip(worst) {
        ensure(w <= 1e-9, || format!("{name}: worst relative error {w:e}"))?;
    }
    Ok(format!(
        "10^4 draws, worst relative errors {}",
        worst.iter().map(|w| format!("{w:.1e}")).collect::<Vec<_>>().join(" / ")
    ))
}

fn criterion8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut infeasible = 0;
    for k in 0..10_000 {
        let Draw { p, alpha, g_f, g_n } = draw(&mut rng);
        let r = lift(analysis::rate_noma(p, alpha, g_f, g_n))?;
        ensure(r.sum > analysis::rate_ic(p, g_f), || format!("draw {k}: sum rate not above conventional"))?;
        let (lf, ln) = (rng.random_range(0..6usize), rng.random_range(0..6usize));
        if lf.max(ln) > 0 {
            let l_ic = lf.max(ln) + rng.random_range(0..3usize);
            let s = lift(analysis::power_saving(CodeLengths::new(lf, ln), l_ic, p, alpha, g_f, g_n))?;
            ensure(s >= -1e-12 * p * l_ic as f64, || format!("draw {k}: saving {s} for ({lf}, {ln}) vs {l_ic}"))?;
        }
        match analysis::qos_powers(rng.random_range(0.01..4.0), alpha, g_f, g_n) {
            Ok(q) => {
                ensure(q.p_c >= q.p_ic, || format!("draw {k}: p_c below p_ic"))?;
                ensure(q.p_d3 < q.p_ic, || format!("draw {k}: p_d3 not below p_ic"))?;
            }
            Err(icnoma_core::Error::QosInfeasible { .. }) => infeasible += 1,
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!("10^4 draws hold ({infeasible} QoS draws infeasible and skipped)"))
}

fn criterion9() -> Outcome {
    let limits = SearchLimits::default();
    let mut lengths = Vec::new();
    let mut l_ic = 0;
    for name in ["table8_case1", "table8_case2", "table8_case3"] {
        let sc = bundled(name)?;
        let sel = lift(design_select_far_code(sc.problem(), sc.channel().grouping(), &limits))?;
        l_ic = sel.conventional_length;
        lengths.push(sel.scheme.lengths());
    }
    let (c1, c2, c3) = (lengths[0], lengths[1], lengths[2]);
    let (g_f, g_n, alpha) = (0.2, 1.0, 0.25);
    let mut points = 0;
    for db in -10..=40 {
        let p = 10f64.powf(db as f64 / 10.0);
        let r = |l| analysis::avg_rate(l, p, alpha, g_f, g_n);
        let (r1, r2, r3) = (lift(r(c1))?, lift(r(c2))?, lift(r(c3))?);
        ensure(r3 > r1 && r1 > r2, || format!("rate ordering fails at {db} dB: {r3} {r1} {r2}"))?;
        for l in [c1, c2, c3] {
            let avg = lift(analysis::power_report(l, l_ic, p, alpha, g_f, g_n))?.p_avg;
            ensure(avg < p, || format!("average power {avg} not below conventional {p} at {db} dB"))?;
        }
        points += 1;
    }
    let case3 = CodeLengths::new(1, 3);
    for a in [0.2, 0.3] {
        for rate in [0.25, 0.5, 0.75, 1.0] {
            let q = lift(analysis::qos_powers(rate, a, g_f, g_n))?;
            let t = analysis::qos_totals(case3, 4, &q);
            ensure(t.total_icnoma < t.total_ic, || {
                format!("QoS total at alpha {a}, R {rate}: {} vs {}", t.total_icnoma, t.total_ic)
            })?;
        }
    }
    Ok(format!(
        "designed lengths {:?}; rate and average-power orderings hold at {points} power points; QoS ordering at 8 points",
        [c1, c2, c3].map(|l| (l.far, l.near))
    ))
}

fn criterion10() -> Outcome {
    let limits = SearchLimits::default();
    // noiseless completeness on every bundled scenario
    let mut runs = 0;
    for name in Scenario::bundled_names() {
        let sc = bundled(name)?;
        let (p, g) = (sc.problem(), sc.channel().grouping());
        let cfg = *sc.sim().ok_or("bundled scenario without sim block")?;
        let cfg = lift(cfg.with_noise_variance(0.0))?;
        let preferred = sc.preferred_far_code();
        let choice = preferred.map_or(FarCodeChoice::FirstCanonical, FarCodeChoice::Preferred);
        let schemes = [
            lift(design_two_stage(p, g, choice, &limits))?,
            lift(design_select_far_code(p, g, &limits))?.scheme,
        ];
        for s in &schemes {
            let res = lift(run_end_to_end(p, &build_schedule(s), sc.channel(), &cfg))?;
            ensure(res.success_rates().iter().all(|&r| r == 1.0), || {
                format!("{name}: noiseless success rates {:?}", res.success_rates())
            })?;
            runs += 1;
        }
    }

    // cross-oracle agreement, with schedules designed for perturbed demands
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let mut undecodable = 0;
    for k in 0..200 {
        let inst = common::random_instance(&mut rng, 2..=6, 5);
        let mut other = inst.clone();
        for u in &mut other.users {
            if rng.random_bool(0.5) {
                u.wants = (0..inst.n).filter(|_| rng.random_bool(0.3)).collect();
            }
        }
        let ch = lift(ChannelProfile::new(inst.gains(), 10.0, 0.25))?;
        let s = lift(design_select_far_code(&other.to_problem(), ch.grouping(), &SearchLimits::exhaustive(inst.n)))?;
        let sched = build_schedule(&s.scheme);
        let p = inst.to_problem();
        let expect = oracle_decodes(&inst, &ch, &sched);
        let span = lift(sched.decodable_users(&p, ch.grouping()))?;
        let res = lift(run_end_to_end(&p, &sched, &ch, &lift(SimConfig::new(16, 0.0, 3, k))?))?;
        let got: Vec<bool> = res.success_rates().iter().map(|&r| r == 1.0).collect();
        ensure(res.success_rates().iter().all(|&r| r == 0.0 || r == 1.0), || {
            format!("instance {k}: noiseless success rates not 0/1")
        })?;
        ensure(got == expect && span == expect, || {
            format!("instance {k}: simulated {got:?}, library {span:?}, oracle {expect:?}")
        })?;
        undecodable += expect.iter().filter(|d| !**d).count();
    }

    // determinism
    let sc = bundled("example2")?;
    let far = sc.preferred_far_code().ok_or("no preferred far code")?;
    let s = lift(design_two_stage(sc.problem(), sc.channel().grouping(), FarCodeChoice::Preferred(far), &limits))?;
    let sched = build_schedule(&s);
    let cfg = lift(SimConfig::new(32, 0.5, 500, 77))?;
    let a = lift(run_end_to_end(sc.problem(), &sched, sc.channel(), &cfg))?;
    let b = lift(run_end_to_end(sc.problem(), &sched, sc.channel(), &cfg))?;
    let pool = lift(rayon::ThreadPoolBuilder::new().num_threads(1).build())?;
    let c = lift(pool.install(|| run_end_to_end(sc.problem(), &sched, sc.channel(), &cfg)))?;
    ensure(a == b && a == c, || "reruns differ".into())?;

    // high-SNR checks
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    let count = 100_000;
    let near: Vec<bool> = (0..count).map(|_| rng.random()).collect();
    let far_bits: Vec<bool> = (0..count).map(|_| rng.random()).collect();
    let tx = lift(superpose(&[(0.25, &bpsk(&near)), (0.75, &bpsk(&far_bits))], 10.0))?;
    let z = lift(receive(&tx, 1.0, 0.01, &mut rng))?;
    let (f, n) = sic_decode_near(&z, 1.0, 0.25, 10.0);
    let errors = f.iter().zip(&far_bits).filter(|(a, b)| a != b).count()
        + n.iter().zip(&near).filter(|(a, b)| a != b).count();
    let ber = errors as f64 / (2 * count) as f64;
    ensure(ber < 1e-3, || format!("SIC BER {ber}"))?;

    let ch = lift(ChannelProfile::new(vec![1.0, 1.0, 1.0, 0.2, 0.2], 100.0, 0.25))?;
    let res = lift(run_end_to_end(sc.problem(), &sched, &ch, &lift(SimConfig::new(64, 0.01, 10_000, 5))?))?;
    let worst = res.success_rates().into_iter().fold(1.0, f64::min);
    ensure(worst > 0.999, || format!("high-SNR success {worst}"))?;

    Ok(format!(
        "{runs} noiseless runs at 1.0; 200 instances agree ({undecodable} undecodable users); reruns identical; SIC BER {ber:.1e}; worst high-SNR success {worst}"
    ))
}

fn main() {
    type Criterion = (&'static str, Duration, fn() -> Outcome);
    let secs = Duration::from_secs;
    let criteria: [Criterion; 10] = [
        ("two-cluster three-user example", secs(1), criterion1),
        ("five-user example, first design", secs(10), criterion2),
        ("far-code candidates and selection", secs(30), criterion3),
        ("three demand patterns", secs(60), criterion4),
        ("design never longer than conventional, always decodable", secs(600), criterion5),
        ("min code length against brute force", secs(600), criterion6),
        ("analytic identities", secs(60), criterion7),
        ("rate and power inequalities", secs(60), criterion8),
        ("figure-series orderings", secs(60), criterion9),
        ("link simulator", secs(120), criterion10),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = outcome.and_then(|d| {
            if took <= *limit {
                Ok(d)
            } else {
                Err(format!("took {took:.2?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({took:.2?}): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({took:.2?}): {why}", k + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
