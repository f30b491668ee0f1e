//! Closed-form rate, matched-rate power and QoS power expressions.
//!
//! Noise has unit variance, rates are in bits per channel use and powers are in
//! the same abstract units as the channel gains' reciprocal. `g_f < g_n` are the
//! representative far and near gains, `alpha` the near-layer power fraction.

use crate::design::{CodeLengths, SchemeCase};
use crate::error::{Error, Result};

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 0.5 {
        Ok(())
    } else {
        Err(Error::invalid(format!("alpha must lie in (0, 0.5), got {alpha}")))
    }
}

fn check_gains(g_f: f64, g_n: f64) -> Result<()> {
    if !(g_f > 0.0 && g_f.is_finite()) || !(g_n.is_finite() && g_n >= g_f) {
        return Err(Error::invalid(format!(
            "gains must satisfy 0 < g_f <= g_n, got g_f = {g_f}, g_n = {g_n}"
        )));
    }
    Ok(())
}

fn check_power(power: f64) -> Result<()> {
    if power >= 0.0 && power.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("power must be non-negative, got {power}")))
    }
}

/// Rate of a full-power index-coded packet, limited by the far user.
pub fn rate_ic(power: f64, g_f: f64) -> f64 {
    (1.0 + g_f * power).log2()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NomaRates {
    /// Far user, near layer treated as noise.
    pub far: f64,
    /// Near user after SIC.
    pub near: f64,
    pub sum: f64,
}

/// Per-layer rates of one superposed transmission.
pub fn rate_noma(power: f64, alpha: f64, g_f: f64, g_n: f64) -> Result<NomaRates> {
    check_alpha(alpha)?;
    check_gains(g_f, g_n)?;
    check_power(power)?;
    let far = (1.0 + (1.0 - alpha) * power * g_f / (alpha * power * g_f + 1.0)).log2();
    let near = (1.0 + alpha * power * g_n).log2();
    Ok(NomaRates {
        far,
        near,
        sum: far + near,
    })
}

/// Sum rate of a superposed transmission in product form,
/// `log2((1 + P g_f)(1 + a P g_n) / (1 + a P g_f))`.
pub fn rate_noma_sum_closed(power: f64, alpha: f64, g_f: f64, g_n: f64) -> f64 {
    ((1.0 + power * g_f) * (1.0 + alpha * power * g_n) / (1.0 + alpha * power * g_f)).log2()
}

/// Sum-rate advantage of a superposed transmission over a conventional one.
pub fn rate_gain(power: f64, alpha: f64, g_f: f64, g_n: f64) -> f64 {
    ((1.0 + alpha * power * g_n) / (1.0 + alpha * power * g_f)).log2()
}

/// Rate of the full-power (non-superposed) packets of a scheme: far-limited when
/// far rows are left over, near-limited when near rows are.
pub fn rate_ic_part(case: SchemeCase, power: f64, g_f: f64, g_n: f64) -> Result<f64> {
    match case {
        SchemeCase::FarHeavy | SchemeCase::Conventional => Ok(rate_ic(power, g_f)),
        SchemeCase::NearHeavy => Ok((1.0 + power * g_n).log2()),
        SchemeCase::Balanced => Err(Error::invalid(
            "a balanced scheme has no full-power index-coded part",
        )),
    }
}

/// Average rate over all transmissions of a scheme.
pub fn avg_rate(lengths: CodeLengths, power: f64, alpha: f64, g_f: f64, g_n: f64) -> Result<f64> {
    let total = lengths.total();
    if total == 0 {
        return Err(Error::invalid("scheme has no transmissions"));
    }
    let paired = lengths.superposed();
    let noma = rate_noma(power, alpha, g_f, g_n)?.sum;
    let solo = if total > paired {
        rate_ic_part(lengths.case(), power, g_f, g_n)?
    } else {
        0.0
    };
    Ok((paired as f64 * noma + (total - paired) as f64 * solo) / total as f64)
}

/// Extra power a conventional packet needs to match the sum rate of a
/// superposed packet sent at `p_a`.
pub fn zeta(p_a: f64, alpha: f64, g_f: f64, g_n: f64) -> f64 {
    (1.0 + p_a * g_f) * (alpha * p_a * (g_n - g_f)) / (g_f * (1.0 + alpha * p_a * g_f))
}

/// Extra power a far-limited packet needs to match a near-limited packet sent at
/// `p_b3`.
pub fn zeta1(p_b3: f64, g_f: f64, g_n: f64) -> f64 {
    (g_n - g_f) * p_b3 / g_f
}

const SOLVE_REL_TOL: f64 = 1e-10;

/// Power per superposed transmission whose sum rate equals the conventional rate
/// at `p_ic`. Bisection on the (monotone) sum rate; the root lies in `[0, p_ic]`.
pub fn solve_noma_power(p_ic: f64, alpha: f64, g_f: f64, g_n: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_gains(g_f, g_n)?;
    check_power(p_ic)?;
    let target = 1.0 + p_ic * g_f;
    let excess = |p: f64| (1.0 + p * g_f) * (1.0 + alpha * p * g_n) / (1.0 + alpha * p * g_f) - target;
    let (mut lo, mut hi) = (0.0_f64, p_ic);
    if excess(hi) <= 0.0 {
        return Ok(hi);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= SOLVE_REL_TOL * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Power per near-limited full-power packet matching the conventional rate at
/// `p_ic`.
pub fn near_packet_power(p_ic: f64, g_f: f64, g_n: f64) -> f64 {
    p_ic * g_f / g_n
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerReport {
    pub zeta: f64,
    pub zeta1: f64,
    /// Power per superposed transmission.
    pub p_a: f64,
    /// Power per far-limited full-power packet (equals `p_ic`).
    pub p_b2: f64,
    /// Power per near-limited full-power packet.
    pub p_b3: f64,
    /// Total power saved against conventional index coding at matched rate.
    pub saving: f64,
    /// Average power per transmission of the scheme.
    pub p_avg: f64,
}

/// Matched-rate powers for a scheme against a conventional code of length `l_ic`
/// sent at `p_ic` per packet.
pub fn power_report(
    lengths: CodeLengths,
    l_ic: usize,
    p_ic: f64,
    alpha: f64,
    g_f: f64,
    g_n: f64,
) -> Result<PowerReport> {
    if l_ic < lengths.total() {
        return Err(Error::invalid(format!(
            "conventional length {l_ic} is shorter than the scheme's {} transmissions",
            lengths.total()
        )));
    }
    let p_a = solve_noma_power(p_ic, alpha, g_f, g_n)?;
    let p_b2 = p_ic;
    let p_b3 = near_packet_power(p_ic, g_f, g_n);
    let paired = lengths.superposed() as f64;
    let surplus = (lengths.total() - lengths.superposed()) as f64;
    let solo_power = match lengths.case() {
        SchemeCase::NearHeavy => p_b3,
        _ => p_b2,
    };
    let spent = paired * p_a + surplus * solo_power;
    let saving = l_ic as f64 * p_ic - spent;
    let p_avg = if lengths.total() == 0 {
        0.0
    } else {
        spent / lengths.total() as f64
    };
    Ok(PowerReport {
        zeta: p_ic - p_a,
        zeta1: zeta1(p_b3, g_f, g_n),
        p_a,
        p_b2,
        p_b3,
        saving,
        p_avg,
    })
}

pub fn power_saving(
    lengths: CodeLengths,
    l_ic: usize,
    p_ic: f64,
    alpha: f64,
    g_f: f64,
    g_n: f64,
) -> Result<f64> {
    Ok(power_report(lengths, l_ic, p_ic, alpha, g_f, g_n)?.saving)
}

pub fn avg_power(lengths: CodeLengths, p_ic: f64, alpha: f64, g_f: f64, g_n: f64) -> Result<f64> {
    if lengths.total() == 0 {
        return Err(Error::invalid("scheme has no transmissions"));
    }
    Ok(power_report(lengths, lengths.total(), p_ic, alpha, g_f, g_n)?.p_avg)
}

/// Minimum per-transmission powers meeting a per-user rate `rate`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QosPowers {
    pub rate: f64,
    /// Conventional packet.
    pub p_ic: f64,
    /// Superposed packet, near user's constraint.
    pub p_cn: f64,
    /// Superposed packet, far user's constraint.
    pub p_cf: f64,
    /// Superposed packet, both users.
    pub p_c: f64,
    /// Far-limited full-power packet.
    pub p_d2: f64,
    /// Near-limited full-power packet.
    pub p_d3: f64,
}

pub fn qos_powers(rate: f64, alpha: f64, g_f: f64, g_n: f64) -> Result<QosPowers> {
    check_alpha(alpha)?;
    check_gains(g_f, g_n)?;
    if !(rate > 0.0 && rate.is_finite()) {
        return Err(Error::invalid(format!("QoS rate must be positive, got {rate}")));
    }
    let need = rate.exp2() - 1.0;
    let far_headroom = 1.0 - alpha - alpha * need;
    if far_headroom <= 0.0 {
        return Err(Error::QosInfeasible { rate, alpha });
    }
    let p_ic = need / g_f;
    let p_cn = need / (alpha * g_n);
    let p_cf = need / (g_f * far_headroom);
    Ok(QosPowers {
        rate,
        p_ic,
        p_cn,
        p_cf,
        p_c: p_cn.max(p_cf),
        p_d2: p_ic,
        p_d3: need / g_n,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QosTotals {
    pub total_ic: f64,
    pub total_icnoma: f64,
}

pub fn qos_totals(lengths: CodeLengths, l_ic: usize, q: &QosPowers) -> QosTotals {
    let paired = lengths.superposed() as f64;
    let surplus = (lengths.total() - lengths.superposed()) as f64;
    let solo = match lengths.case() {
        SchemeCase::NearHeavy => q.p_d3,
        _ => q.p_d2,
    };
    QosTotals {
        total_ic: q.p_ic * l_ic as f64,
        total_icnoma: q.p_c * paired + solo * surplus,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateReport {
    pub r_ic: f64,
    pub noma: NomaRates,
    /// Rate of the full-power packets, absent for balanced schemes.
    pub r_ic_part: Option<f64>,
    pub r_avg: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QosReport {
    pub powers: QosPowers,
    pub totals: QosTotals,
}

/// Rates, matched-rate powers and (when feasible) QoS powers for one scheme
/// shape on one channel.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisReport {
    pub lengths: CodeLengths,
    pub conventional_length: usize,
    pub rates: RateReport,
    pub power: PowerReport,
    pub qos: Result<QosReport>,
}

/// Inputs shared by every analysis of one channel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Operating {
    pub power: f64,
    pub alpha: f64,
    pub far_gain: f64,
    pub near_gain: f64,
}

/// Full analysis. A conventional scheme is described by `CodeLengths::new(l_ic, 0)`,
/// for which every saving is zero.
pub fn analyze(
    lengths: CodeLengths,
    conventional_length: usize,
    op: Operating,
    qos_rate: f64,
) -> Result<AnalysisReport> {
    let Operating {
        power,
        alpha,
        far_gain: g_f,
        near_gain: g_n,
    } = op;
    let noma = rate_noma(power, alpha, g_f, g_n)?;
    let r_ic_part = match lengths.case() {
        SchemeCase::Balanced => None,
        case => Some(rate_ic_part(case, power, g_f, g_n)?),
    };
    let rates = RateReport {
        r_ic: rate_ic(power, g_f),
        noma,
        r_ic_part,
        r_avg: avg_rate(lengths, power, alpha, g_f, g_n)?,
    };
    let power_rep = power_report(lengths, conventional_length, power, alpha, g_f, g_n)?;
    let qos = qos_powers(qos_rate, alpha, g_f, g_n).map(|powers| QosReport {
        totals: qos_totals(lengths, conventional_length, &powers),
        powers,
    });
    Ok(AnalysisReport {
        lengths,
        conventional_length,
        rates,
        power: power_rep,
        qos,
    })
}
