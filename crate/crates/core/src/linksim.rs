//! Monte-Carlo baseband simulation of a transmission schedule: BPSK per bit,
//! power-domain superposition, real AWGN, SIC at near users and GF(2) decoding
//! of wanted messages from received packets plus side information.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;

use crate::design::{ChannelProfile, Group, Transmission, TransmissionSchedule};
use crate::error::{Error, Result};
use crate::galois::BitVector;
use crate::index_coding::IndexCodingProblem;

const FRACTION_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SimConfig {
    pub packet_bits: usize,
    pub noise_variance: f64,
    pub trials: u64,
    pub seed: u64,
}

impl SimConfig {
    pub fn new(packet_bits: usize, noise_variance: f64, trials: u64, seed: u64) -> Result<Self> {
        let cfg = Self {
            packet_bits,
            noise_variance,
            trials,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.packet_bits == 0 {
            return Err(Error::invalid("packet_bits must be positive"));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if !(self.noise_variance >= 0.0 && self.noise_variance.is_finite()) {
            return Err(Error::invalid(format!(
                "noise_variance must be finite and non-negative, got {}",
                self.noise_variance
            )));
        }
        Ok(())
    }

    pub fn with_noise_variance(&self, noise_variance: f64) -> Result<Self> {
        Self::new(self.packet_bits, noise_variance, self.trials, self.seed)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct UserStats {
    pub successes: u64,
    pub bit_errors: u64,
    pub bits: u64,
}

impl UserStats {
    fn add(&mut self, other: &UserStats) {
        self.successes += other.successes;
        self.bit_errors += other.bit_errors;
        self.bits += other.bits;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimResult {
    trials: u64,
    users: Vec<UserStats>,
}

impl SimResult {
    pub fn trials(&self) -> u64 {
        self.trials
    }

    pub fn users(&self) -> &[UserStats] {
        &self.users
    }

    pub fn success_rate(&self, user: usize) -> f64 {
        self.users[user].successes as f64 / self.trials as f64
    }

    /// Wanted-bit error rate; undecodable wants count every bit as wrong.
    pub fn ber(&self, user: usize) -> f64 {
        let u = &self.users[user];
        if u.bits == 0 {
            0.0
        } else {
            u.bit_errors as f64 / u.bits as f64
        }
    }

    pub fn success_rates(&self) -> Vec<f64> {
        (0..self.users.len()).map(|i| self.success_rate(i)).collect()
    }

    pub fn bers(&self) -> Vec<f64> {
        (0..self.users.len()).map(|i| self.ber(i)).collect()
    }
}

pub fn bpsk(bits: &[bool]) -> Vec<f64> {
    bits.iter().map(|&b| if b { -1.0 } else { 1.0 }).collect()
}

pub fn slice(z: &[f64]) -> Vec<bool> {
    z.iter().map(|&v| v < 0.0).collect()
}

/// Elementwise `sum_i sqrt(fraction_i * power) * stream_i`.
pub fn superpose(components: &[(f64, &[f64])], power: f64) -> Result<Vec<f64>> {
    let Some((_, first)) = components.first() else {
        return Err(Error::invalid("superposition needs at least one component"));
    };
    if !(power >= 0.0 && power.is_finite()) {
        return Err(Error::invalid(format!("power must be non-negative, got {power}")));
    }
    let len = first.len();
    let mut total = 0.0;
    for (k, &(frac, stream)) in components.iter().enumerate() {
        if !(frac > 0.0) {
            return Err(Error::invalid(format!("component {k}: power fraction must be positive")));
        }
        if stream.len() != len {
            return Err(Error::DimensionMismatch {
                expected: len,
                found: stream.len(),
            });
        }
        total += frac;
    }
    if (total - 1.0).abs() > FRACTION_TOL {
        return Err(Error::invalid(format!("power fractions sum to {total}, expected 1")));
    }
    let mut out = vec![0.0; len];
    for &(frac, stream) in components {
        let amp = (frac * power).sqrt();
        for (o, s) in out.iter_mut().zip(stream) {
            *o += amp * s;
        }
    }
    Ok(out)
}

/// `sqrt(g) * tx` plus real Gaussian noise of variance `sigma2`.
pub fn receive<R: Rng + ?Sized>(tx: &[f64], g: f64, sigma2: f64, rng: &mut R) -> Result<Vec<f64>> {
    if !(g > 0.0) {
        return Err(Error::invalid(format!("channel gain must be positive, got {g}")));
    }
    if !(sigma2 >= 0.0) {
        return Err(Error::invalid(format!("noise variance must be non-negative, got {sigma2}")));
    }
    let amp = g.sqrt();
    if sigma2 == 0.0 {
        return Ok(tx.iter().map(|t| amp * t).collect());
    }
    let noise = Normal::new(0.0, sigma2.sqrt()).map_err(|e| Error::invalid(e.to_string()))?;
    Ok(tx.iter().map(|t| amp * t + noise.sample(rng)).collect())
}

/// Decodes the high-power layer, cancels it and decodes the low-power layer.
pub fn sic_decode_near(z: &[f64], g: f64, alpha: f64, power: f64) -> (Vec<bool>, Vec<bool>) {
    let far = slice(z);
    let amp = g.sqrt() * ((1.0 - alpha) * power).sqrt();
    let residual: Vec<f64> = z
        .iter()
        .zip(bpsk(&far))
        .map(|(zi, s)| zi - amp * s)
        .collect();
    (far, slice(&residual))
}

type Payload = Vec<bool>;

fn xor_into(acc: &mut Payload, other: &Payload) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a ^= *b;
    }
}

/// Echelon basis over GF(2) that carries a packet payload with each row.
struct PayloadBasis {
    rows: Vec<(u64, Payload)>,
}

impl PayloadBasis {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    fn reduce(&self, mut word: u64, payload: &mut Payload) -> u64 {
        for (row, data) in &self.rows {
            let pivot = 63 - row.leading_zeros();
            if word >> pivot & 1 == 1 {
                word ^= row;
                xor_into(payload, data);
            }
        }
        word
    }

    fn insert(&mut self, word: u64, mut payload: Payload) {
        let word = self.reduce(word, &mut payload);
        if word != 0 {
            let pos = self.rows.partition_point(|(r, _)| *r > word);
            self.rows.insert(pos, (word, payload));
        }
    }
}

fn packet_bits(row: &BitVector, messages: &[Payload], bits: usize) -> Payload {
    let mut out = vec![false; bits];
    for m in row.support() {
        xor_into(&mut out, &messages[m]);
    }
    out
}

fn check_inputs(p: &IndexCodingProblem, sched: &TransmissionSchedule, ch: &ChannelProfile) -> Result<()> {
    if sched.width() != p.n() {
        return Err(Error::ScheduleMismatch(format!(
            "schedule is over {} messages, problem has {}",
            sched.width(),
            p.n()
        )));
    }
    if ch.gains().len() != p.receiver_count() {
        return Err(Error::ScheduleMismatch(format!(
            "channel lists {} users, problem has {}",
            ch.gains().len(),
            p.receiver_count()
        )));
    }
    Ok(())
}

fn run_trial(
    p: &IndexCodingProblem,
    sched: &TransmissionSchedule,
    ch: &ChannelProfile,
    cfg: &SimConfig,
    trial: u64,
) -> Result<Vec<UserStats>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(trial);
    let bits = cfg.packet_bits;
    let (power, alpha) = (ch.power(), ch.alpha());

    let messages: Vec<Payload> = (0..p.n())
        .map(|_| (0..bits).map(|_| rng.random::<bool>()).collect())
        .collect();

    let mut heard: Vec<Vec<(BitVector, Payload)>> = vec![Vec::new(); p.receiver_count()];
    for entry in sched.entries() {
        let tx = match *entry {
            Transmission::Superposed { near, far } => {
                let s_n = bpsk(&packet_bits(&near, &messages, bits));
                let s_f = bpsk(&packet_bits(&far, &messages, bits));
                superpose(&[(alpha, &s_n), (1.0 - alpha, &s_f)], power)?
            }
            Transmission::Solo { row, .. } => {
                let s = bpsk(&packet_bits(&row, &messages, bits));
                superpose(&[(1.0, &s)], power)?
            }
        };
        for (user, got) in heard.iter_mut().enumerate() {
            let g = ch.gains()[user];
            let z = receive(&tx, g, cfg.noise_variance, &mut rng)?;
            match (*entry, ch.grouping().group_of(user)) {
                (Transmission::Superposed { far, .. }, Group::Far) => got.push((far, slice(&z))),
                (Transmission::Superposed { near, far }, Group::Near) => {
                    let (far_bits, near_bits) = sic_decode_near(&z, g, alpha, power);
                    got.push((far, far_bits));
                    got.push((near, near_bits));
                }
                (Transmission::Solo { audience: Group::Near, .. }, Group::Far) => {}
                (Transmission::Solo { row, .. }, _) => got.push((row, slice(&z))),
            }
        }
    }

    let stats = p
        .receivers()
        .iter()
        .zip(&heard)
        .map(|(r, got)| {
            let mut basis = PayloadBasis::new();
            for row in r.side_info().rows() {
                basis.insert(row.word(), packet_bits(row, &messages, bits));
            }
            for (row, payload) in got {
                basis.insert(row.word(), payload.clone());
            }
            let mut s = UserStats::default();
            let mut all_ok = true;
            for &w in r.wants() {
                let unit = BitVector::unit(p.n(), w).expect("want index within width");
                let mut est = vec![false; bits];
                let errors = if basis.reduce(unit.word(), &mut est) == 0 {
                    est.iter().zip(&messages[w]).filter(|(a, b)| a != b).count()
                } else {
                    bits
                };
                s.bits += bits as u64;
                s.bit_errors += errors as u64;
                all_ok &= errors == 0;
            }
            s.successes = all_ok as u64;
            s
        })
        .collect();
    Ok(stats)
}

/// Runs `cfg.trials` independent trials. Trial `t` draws from stream `t` of the
/// seeded generator, so the result does not depend on thread scheduling.
pub fn run_end_to_end(
    p: &IndexCodingProblem,
    sched: &TransmissionSchedule,
    ch: &ChannelProfile,
    cfg: &SimConfig,
) -> Result<SimResult> {
    cfg.validate()?;
    check_inputs(p, sched, ch)?;
    let users = p.receiver_count();
    let totals = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_trial(p, sched, ch, cfg, t))
        .try_reduce(
            || vec![UserStats::default(); users],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(&b) {
                    x.add(y);
                }
                Ok(a)
            },
        )?;
    Ok(SimResult {
        trials: cfg.trials,
        users: totals,
    })
}
