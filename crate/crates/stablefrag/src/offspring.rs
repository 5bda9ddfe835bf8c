//! Critical offspring laws and the normalizing sequence for their coding walks.
//!
//! Every law here has mean exactly one, `mu(0) > 0`, and `mu(0) + mu(1) < 1`.
//! Laws are either of finite variance (tail index treated as 2) or of the
//! polynomial-tail form `mu(k) = c * k^(-1-alpha)` with `alpha` in (1, 2),
//! normalized through the zeta function so that criticality is exact.

use crate::error::{Error, Result};
use rand::Rng;
use statrs::function::gamma::gamma;

/// Riemann zeta on s > 1 by Euler-Maclaurin summation; absolute error
/// below 1e-15 for s in (1, 4].
pub fn zeta(s: f64) -> f64 {
    debug_assert!(s > 1.0);
    const N: usize = 24;
    let mut sum = 0.0;
    for k in 1..N {
        sum += (k as f64).powf(-s);
    }
    let n = N as f64;
    sum + n.powf(1.0 - s) / (s - 1.0)
        + 0.5 * n.powf(-s)
        + s * n.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0
        + s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * n.powf(-s - 5.0) / 30240.0
}

/// Walker/Vose alias table over a fixed finite set of outcomes.
#[derive(Debug, Clone)]
struct AliasTable {
    prob: Vec<f64>,
    alias: Vec<u32>,
}

impl AliasTable {
    fn new(weights: &[f64]) -> Self {
        let n = weights.len();
        assert!(n > 0 && n <= u32::MAX as usize);
        let total: f64 = weights.iter().sum();
        let scale = n as f64 / total;
        let mut scaled: Vec<f64> = weights.iter().map(|w| w * scale).collect();
        let mut prob = vec![1.0f64; n];
        let mut alias: Vec<u32> = (0..n as u32).collect();
        let mut small: Vec<usize> = Vec::new();
        let mut large: Vec<usize> = Vec::new();
        for (i, &p) in scaled.iter().enumerate() {
            if p < 1.0 {
                small.push(i);
            } else {
                large.push(i);
            }
        }
        while let (Some(&s), Some(&l)) = (small.last(), large.last()) {
            small.pop();
            prob[s] = scaled[s];
            alias[s] = l as u32;
            scaled[l] -= 1.0 - scaled[s];
            if scaled[l] < 1.0 {
                large.pop();
                small.push(l);
            }
        }
        // Entries still on either stack keep probability one.
        AliasTable { prob, alias }
    }

    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let n = self.prob.len() as u128;
        let i = ((rng.gen::<u64>() as u128 * n) >> 64) as usize;
        if rng.gen::<f64>() < self.prob[i] {
            i
        } else {
            self.alias[i] as usize
        }
    }
}

/// Cumulative probabilities are tabulated exactly up to this offspring count;
/// beyond it the polynomial tail is inverted analytically.
const STABLE_TABLE_LEN: usize = 100_000;

#[derive(Debug, Clone)]
struct StableTail {
    alpha: f64,
    zeta_alpha: f64,
    mu0: f64,
    /// cum[k] = P(X <= k) for k = 0..=STABLE_TABLE_LEN.
    cum: Vec<f64>,
    /// Outcomes 0..=STABLE_TABLE_LEN plus one trailing cell for the tail.
    alias: AliasTable,
    tail_mass: f64,
}

impl StableTail {
    fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha < 2.0) {
            return Err(Error::AlphaOutOfRange(alpha));
        }
        let zeta_alpha = zeta(alpha);
        let mu0 = 1.0 - zeta(1.0 + alpha) / zeta_alpha;
        let mut weights = Vec::with_capacity(STABLE_TABLE_LEN + 2);
        let mut cum = Vec::with_capacity(STABLE_TABLE_LEN + 1);
        weights.push(mu0);
        cum.push(mu0);
        // Kahan summation keeps the cumulative table accurate to ~1e-15.
        let mut sum = mu0;
        let mut comp = 0.0f64;
        for k in 1..=STABLE_TABLE_LEN {
            let p = (k as f64).powf(-1.0 - alpha) / zeta_alpha;
            weights.push(p);
            let y = p - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            cum.push(sum);
        }
        let law = StableTail {
            alpha,
            zeta_alpha,
            mu0,
            cum,
            alias: AliasTable::new(&[0.0]), // placeholder, replaced below
            tail_mass: 0.0,
        };
        let tail_mass = law.survival(STABLE_TABLE_LEN as f64 + 1.0);
        // The analytic tail and the summed table must describe the same law.
        let gap = (law.cum[STABLE_TABLE_LEN] + tail_mass - 1.0).abs();
        assert!(gap < 1e-10, "tail/table mismatch: {gap}");
        weights.push(tail_mass);
        Ok(StableTail {
            alias: AliasTable::new(&weights),
            tail_mass,
            ..law
        })
    }

    /// P(X >= k) for real k >= 2, via the Euler-Maclaurin tail of the series.
    fn survival(&self, k: f64) -> f64 {
        let a = self.alpha;
        (k.powf(-a) / a + 0.5 * k.powf(-a - 1.0) + (a + 1.0) * k.powf(-a - 2.0) / 12.0)
            / self.zeta_alpha
    }

    /// Smallest k with P(X > k) <= y, valid in the far tail.
    fn tail_quantile(&self, y: f64) -> u64 {
        let a = self.alpha;
        let y = y.max(f64::MIN_POSITIVE);
        // Leading-order inversion of survival(k+1) = y, then Newton steps.
        let mut x = (y * a * self.zeta_alpha).powf(-1.0 / a);
        for _ in 0..3 {
            let f = self.survival(x) - y;
            let fp = -x.powf(-1.0 - a) / self.zeta_alpha;
            x -= f / fp;
            if !x.is_finite() || x < 2.0 {
                x = 2.0;
                break;
            }
        }
        let mut k = (x - 1.0).ceil().max(STABLE_TABLE_LEN as f64 + 1.0) as u64;
        while self.survival(k as f64 + 1.0) > y {
            k += 1;
        }
        while k > STABLE_TABLE_LEN as u64 + 1 && self.survival(k as f64) <= y {
            k -= 1;
        }
        k
    }

    fn pmf(&self, k: u64) -> f64 {
        if k == 0 {
            self.mu0
        } else {
            (k as f64).powf(-1.0 - self.alpha) / self.zeta_alpha
        }
    }

    fn quantile(&self, u: f64) -> u64 {
        if u <= self.cum[STABLE_TABLE_LEN] {
            self.cum.partition_point(|&c| c < u) as u64
        } else {
            self.tail_quantile(1.0 - u)
        }
    }

    #[inline]
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let i = self.alias.sample(rng);
        if i <= STABLE_TABLE_LEN {
            i as u64
        } else {
            self.tail_quantile((1.0 - rng.gen::<f64>()) * self.tail_mass)
        }
    }
}

#[derive(Debug, Clone)]
struct FiniteTable {
    pmf: Vec<f64>,
    cum: Vec<f64>,
    variance: f64,
    period: u64,
}

#[derive(Debug, Clone)]
enum Inner {
    GeometricHalf,
    PoissonOne,
    StableTail(StableTail),
    FiniteTable(FiniteTable),
}

/// A critical offspring distribution together with its sampling machinery.
#[derive(Debug, Clone)]
pub struct OffspringLaw {
    inner: Inner,
    tag: String,
}

impl OffspringLaw {
    /// Geometric on {0, 1, 2, ...} with success probability 1/2:
    /// mu(k) = 2^-(k+1); mean 1, variance 2.
    pub fn geometric_half() -> Self {
        OffspringLaw {
            inner: Inner::GeometricHalf,
            tag: "geometric-half".to_string(),
        }
    }

    /// Poisson with unit rate: mean 1, variance 1.
    pub fn poisson_one() -> Self {
        OffspringLaw {
            inner: Inner::PoissonOne,
            tag: "poisson-one".to_string(),
        }
    }

    /// Polynomial-tail law mu(k) = k^(-1-alpha) / zeta(alpha) for k >= 1,
    /// mu(0) chosen so the mass sums to one; criticality is exact because
    /// sum_k k * mu(k) telescopes to zeta(alpha) / zeta(alpha).
    pub fn stable_tail(alpha: f64) -> Result<Self> {
        let inner = StableTail::new(alpha)?;
        Ok(OffspringLaw {
            tag: format!("stable-tail:{alpha}"),
            inner: Inner::StableTail(inner),
        })
    }

    /// Arbitrary finite law given as pmf entries for k = 0, 1, ..., len-1.
    /// Must sum to one and have mean exactly one (both within 1e-12).
    pub fn finite_table(pmf: &[f64]) -> Result<Self> {
        let mut table: Vec<f64> = pmf.to_vec();
        while table.last() == Some(&0.0) {
            table.pop();
        }
        if table.is_empty() {
            return Err(Error::InvalidLaw("empty table".into()));
        }
        if table.iter().any(|&p| !(p.is_finite() && p >= 0.0)) {
            return Err(Error::InvalidLaw("entries must be finite and >= 0".into()));
        }
        let total: f64 = table.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidLaw(format!("mass sums to {total}, not 1")));
        }
        let mean: f64 = table.iter().enumerate().map(|(k, &p)| k as f64 * p).sum();
        if (mean - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidLaw(format!("mean is {mean}, not 1 (law must be critical)")));
        }
        if table[0] <= 0.0 {
            return Err(Error::InvalidLaw("mu(0) must be positive".into()));
        }
        let mu1 = table.get(1).copied().unwrap_or(0.0);
        if table[0] + mu1 >= 1.0 {
            return Err(Error::InvalidLaw(
                "mu(0) + mu(1) must be < 1 (law must allow branching)".into(),
            ));
        }
        let variance: f64 = table
            .iter()
            .enumerate()
            .map(|(k, &p)| (k as f64 - 1.0).powi(2) * p)
            .sum();
        let period = table
            .iter()
            .enumerate()
            .skip(1)
            .filter(|&(_, &p)| p > 0.0)
            .map(|(k, _)| k as u64)
            .fold(0, gcd);
        let mut cum = Vec::with_capacity(table.len());
        let mut sum = 0.0;
        for &p in &table {
            sum += p;
            cum.push(sum);
        }
        *cum.last_mut().expect("nonempty") = 1.0;
        let tag = format!(
            "finite-table:{}",
            serde_json::to_string(&table).expect("pmf serializes")
        );
        Ok(OffspringLaw {
            inner: Inner::FiniteTable(FiniteTable {
                pmf: table,
                cum,
                variance,
                period,
            }),
            tag,
        })
    }

    /// Parse a law selector: "geometric-half", "poisson-one",
    /// "stable-tail:<alpha>", or an inline JSON array of pmf values.
    pub fn from_tag(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        match spec {
            "geometric-half" => Ok(Self::geometric_half()),
            "poisson-one" => Ok(Self::poisson_one()),
            _ => {
                if let Some(rest) = spec.strip_prefix("stable-tail:") {
                    let alpha: f64 = rest
                        .parse()
                        .map_err(|_| Error::InvalidLaw(format!("bad alpha: {rest}")))?;
                    Self::stable_tail(alpha)
                } else if spec.starts_with('[') {
                    let pmf: Vec<f64> = serde_json::from_str(spec)?;
                    Self::finite_table(&pmf)
                } else if let Some(rest) = spec.strip_prefix("finite-table:") {
                    let pmf: Vec<f64> = serde_json::from_str(rest)?;
                    Self::finite_table(&pmf)
                } else {
                    Err(Error::InvalidLaw(format!("unknown law tag: {spec}")))
                }
            }
        }
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    /// Tail index: alpha for polynomial-tail laws, 2 otherwise.
    pub fn alpha(&self) -> f64 {
        match &self.inner {
            Inner::StableTail(s) => s.alpha,
            _ => 2.0,
        }
    }

    /// Offspring variance; None when infinite.
    pub fn variance(&self) -> Option<f64> {
        match &self.inner {
            Inner::GeometricHalf => Some(2.0),
            Inner::PoissonOne => Some(1.0),
            Inner::StableTail(_) => None,
            Inner::FiniteTable(t) => Some(t.variance),
        }
    }

    /// Constant c in mu(k) ~ c * k^(-1-alpha); None for finite-variance laws.
    pub fn tail_constant(&self) -> Option<f64> {
        match &self.inner {
            Inner::StableTail(s) => Some(1.0 / s.zeta_alpha),
            _ => None,
        }
    }

    /// gcd of the support of the law (0 excluded); 1 means aperiodic.
    pub fn period(&self) -> u64 {
        match &self.inner {
            Inner::FiniteTable(t) => t.period,
            _ => 1,
        }
    }

    pub fn pmf(&self, k: u64) -> f64 {
        match &self.inner {
            Inner::GeometricHalf => 0.5f64.powi(k as i32 + 1),
            Inner::PoissonOne => {
                let mut p = (-1.0f64).exp();
                for j in 1..=k {
                    p /= j as f64;
                }
                p
            }
            Inner::StableTail(s) => s.pmf(k),
            Inner::FiniteTable(t) => t.pmf.get(k as usize).copied().unwrap_or(0.0),
        }
    }

    /// Inverse distribution function: smallest k with u <= P(X <= k).
    pub fn quantile(&self, u: f64) -> u64 {
        debug_assert!((0.0..1.0).contains(&u));
        match &self.inner {
            Inner::GeometricHalf => {
                let mut tail = 1.0f64; // P(X > k - 1)
                let mut k = 0u64;
                loop {
                    tail *= 0.5;
                    if u <= 1.0 - tail || tail == 0.0 {
                        return k;
                    }
                    k += 1;
                }
            }
            Inner::PoissonOne => {
                let mut p = (-1.0f64).exp();
                let mut cum = p;
                let mut k = 0u64;
                while u > cum && k < 400 {
                    k += 1;
                    p /= k as f64;
                    cum += p;
                }
                k
            }
            Inner::StableTail(s) => s.quantile(u),
            Inner::FiniteTable(t) => t.cum.partition_point(|&c| c < u) as u64,
        }
    }

    /// Draw one offspring count. Equal in distribution to
    /// `quantile(U)` but free to take faster routes per law.
    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        match &self.inner {
            Inner::GeometricHalf => {
                let mut base = 0u64;
                loop {
                    let z = rng.gen::<u64>().trailing_zeros() as u64;
                    if z < 64 {
                        return base + z;
                    }
                    base += 64;
                }
            }
            Inner::PoissonOne => self.quantile(rng.gen::<f64>()),
            Inner::StableTail(s) => s.sample(rng),
            Inner::FiniteTable(t) => {
                let u = rng.gen::<f64>();
                t.cum.partition_point(|&c| c < u) as u64
            }
        }
    }

    /// Normalizing sequence B_n for the coding walk of a size-n tree:
    /// sigma * sqrt(n) in the finite-variance case, and
    /// (n * c * Gamma(2 - alpha) / (alpha * (alpha - 1)))^(1/alpha) for
    /// polynomial tails, calibrated so that the centered walk sum over n
    /// steps, divided by B_n, has limiting Laplace transform exp(lambda^alpha).
    pub fn bn(&self, n: usize) -> f64 {
        assert!(n > 0, "B_n needs n >= 1");
        let n = n as f64;
        match &self.inner {
            Inner::StableTail(s) => {
                let a = s.alpha;
                let c = 1.0 / s.zeta_alpha;
                (n * c * gamma(2.0 - a) / (a * (a - 1.0))).powf(1.0 / a)
            }
            _ => {
                let var = self.variance().expect("finite-variance law");
                (var * n).sqrt()
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
