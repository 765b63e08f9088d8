use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::scalar::{c, Real};
use crate::ComplexValue;

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
// Gauss weights for XGK[1], XGK[3], ..., XGK[9].
#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Value of a semi-infinite integral with its error budget.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: ComplexValue<T>,
    /// Sum of per-panel |Kronrod − Gauss| differences.
    pub quad_error: T,
    /// Envelope integral beyond the truncation point.
    pub tail_bound: T,
    pub panels_used: usize,
    pub evaluations: usize,
    /// Upper end of the integrated range.
    pub truncation: T,
}

impl<T: Real> QuadResult<T> {
    pub fn total_error(&self) -> T {
        self.quad_error + self.tail_bound
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EnvelopeKind {
    /// `prefactor · exp(−rate (t − threshold))`
    ExponentialInT,
    /// `prefactor · exp(−rate (√t − √threshold))`
    ExponentialInSqrtT,
}

/// Upper bound for `|f(t)|`, valid for `t ≥ threshold`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayEnvelope<T> {
    pub kind: EnvelopeKind,
    pub rate: T,
    pub prefactor: T,
    pub threshold: T,
}

impl<T: Real> DecayEnvelope<T> {
    pub fn new(kind: EnvelopeKind, rate: T, prefactor: T, threshold: T) -> Result<Self> {
        let ok = rate > T::zero()
            && rate.is_finite()
            && prefactor > T::zero()
            && prefactor.is_finite()
            && threshold >= T::zero()
            && threshold.is_finite();
        if !ok {
            return Err(Error::invalid(
                "DecayEnvelope",
                format!("rate {rate}, prefactor {prefactor}, threshold {threshold}"),
            ));
        }
        Ok(Self { kind, rate, prefactor, threshold })
    }

    pub fn exponential(rate: T, prefactor: T, threshold: T) -> Result<Self> {
        Self::new(EnvelopeKind::ExponentialInT, rate, prefactor, threshold)
    }

    pub fn exponential_sqrt(rate: T, prefactor: T, threshold: T) -> Result<Self> {
        Self::new(EnvelopeKind::ExponentialInSqrtT, rate, prefactor, threshold)
    }

    pub fn bound(&self, t: T) -> T {
        match self.kind {
            EnvelopeKind::ExponentialInT => self.prefactor * (-self.rate * (t - self.threshold)).exp(),
            EnvelopeKind::ExponentialInSqrtT => {
                self.prefactor * (-self.rate * (t.sqrt() - self.threshold.sqrt())).exp()
            }
        }
    }

    /// `∫_t^∞ bound`, for `t ≥ threshold`.
    pub fn tail(&self, t: T) -> T {
        let t = t.max(self.threshold);
        match self.kind {
            EnvelopeKind::ExponentialInT => self.bound(t) / self.rate,
            EnvelopeKind::ExponentialInSqrtT => {
                let r = self.rate;
                let two = c::<T>(2.0);
                self.bound(t) * two * (t.sqrt() / r + T::one() / (r * r))
            }
        }
    }

    /// Smallest `T ≥ threshold` with `tail(T) ≤ eps`.
    pub fn truncation_point(&self, eps: T) -> T {
        if self.tail(self.threshold) <= eps {
            return self.threshold;
        }
        match self.kind {
            EnvelopeKind::ExponentialInT => {
                self.threshold + (self.prefactor / (self.rate * eps)).ln() / self.rate
            }
            EnvelopeKind::ExponentialInSqrtT => {
                let mut lo = self.threshold;
                let mut hi = (self.threshold + T::one()) * c(2.0);
                while self.tail(hi) > eps {
                    lo = hi;
                    hi = hi * c(2.0);
                }
                for _ in 0..200 {
                    let mid = (lo + hi) * c(0.5);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.tail(mid) > eps {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                hi
            }
        }
    }
}

/// Local phase model `quadratic·t² + linear·t` used to cap initial panel widths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseHint<T> {
    pub quadratic: T,
    pub linear: T,
}

impl<T: Real> PhaseHint<T> {
    fn frequency(&self, t: T) -> T {
        c::<T>(2.0) * self.quadratic.abs() * t + self.linear.abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions<T> {
    /// Absolute target; on [0, ∞) half of it is reserved for the tail.
    pub abs_tol: T,
    /// Relative target against the running integral; 0 disables it.
    pub rel_tol: T,
    pub max_panels: usize,
    /// Cap on initial panel width.
    pub max_width: T,
    pub phase: Option<PhaseHint<T>>,
}

impl<T: Real> QuadOptions<T> {
    pub fn absolute(tol: T) -> Self {
        Self { abs_tol: tol, rel_tol: T::zero(), max_panels: 20_000, max_width: T::one(), phase: None }
    }
}

/// `∫₀^∞ f` with truncation from `envelope` and absolute tolerance `tol`.
pub fn integrate_semiline<T, F>(f: F, envelope: &DecayEnvelope<T>, tol: T) -> Result<QuadResult<T>>
where
    T: Real,
    F: Fn(T) -> ComplexValue<T>,
{
    integrate_semiline_with(f, envelope, &QuadOptions::absolute(tol))
}

pub fn integrate_semiline_with<T, F>(
    f: F,
    envelope: &DecayEnvelope<T>,
    opts: &QuadOptions<T>,
) -> Result<QuadResult<T>>
where
    T: Real,
    F: Fn(T) -> ComplexValue<T>,
{
    const OP: &str = "integrate_semiline";
    check_options(OP, opts)?;
    let half = c::<T>(0.5);
    let upper = envelope.truncation_point(opts.abs_tol * half);
    check_envelope(OP, &f, envelope, upper)?;
    let mut res = adaptive(OP, &f, T::zero(), upper, opts, opts.abs_tol * half)?;
    res.tail_bound = envelope.tail(upper);
    Ok(res)
}

/// Adaptive Gauss–Kronrod on a finite interval.
pub fn integrate_interval<T, F>(f: F, a: T, b: T, opts: &QuadOptions<T>) -> Result<QuadResult<T>>
where
    T: Real,
    F: Fn(T) -> ComplexValue<T>,
{
    const OP: &str = "integrate_interval";
    check_options(OP, opts)?;
    if !(a.is_finite() && b.is_finite()) || b < a {
        return Err(Error::invalid(OP, format!("bad interval [{a}, {b}]")));
    }
    adaptive(OP, &f, a, b, opts, opts.abs_tol)
}

fn check_options<T: Real>(op: &'static str, opts: &QuadOptions<T>) -> Result<()> {
    if !(opts.abs_tol > T::zero()) || opts.rel_tol < T::zero() || !(opts.max_width > T::zero()) {
        return Err(Error::invalid(op, "tolerances and panel width must be positive"));
    }
    Ok(())
}

fn check_envelope<T: Real>(
    op: &'static str,
    f: &dyn Fn(T) -> ComplexValue<T>,
    env: &DecayEnvelope<T>,
    upper: T,
) -> Result<()> {
    let th = env.threshold;
    let probes = [
        th,
        th + (upper - th) * c(0.5),
        upper,
        upper * c(1.1) + c(0.1),
        upper * c(1.5) + c(0.5),
        upper * c(2.0) + T::one(),
    ];
    for &t in &probes {
        let value = f(t).norm();
        let bound = env.bound(t);
        if !value.is_finite() {
            return Err(Error::NonFinite { op });
        }
        if value > bound * c(1.0 + 1e-9) + T::min_positive_value() {
            return Err(Error::EnvelopeViolation {
                op,
                t: t.as_f64(),
                value: value.as_f64(),
                bound: bound.as_f64(),
            });
        }
    }
    Ok(())
}

struct Panel<T> {
    a: T,
    b: T,
    value: ComplexValue<T>,
    err: T,
    alive: bool,
}

struct Key<T> {
    err: T,
    idx: usize,
}

impl<T: Real> PartialEq for Key<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl<T: Real> Eq for Key<T> {}
impl<T: Real> PartialOrd for Key<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T: Real> Ord for Key<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err
            .partial_cmp(&other.err)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.idx.cmp(&self.idx))
    }
}

struct Rule<T> {
    xgk: [T; 11],
    wgk: [T; 11],
    wg: [T; 5],
}

impl<T: Real> Rule<T> {
    fn new() -> Self {
        Self { xgk: XGK.map(c), wgk: WGK.map(c), wg: WG.map(c) }
    }

    fn apply(&self, f: &dyn Fn(T) -> ComplexValue<T>, a: T, b: T) -> (ComplexValue<T>, T) {
        let half = c::<T>(0.5);
        let center = (a + b) * half;
        let h = (b - a) * half;
        let fc = f(center);
        let mut kron = fc * self.wgk[10];
        let mut gauss = ComplexValue::new(T::zero(), T::zero());
        for j in 0..10 {
            let dx = h * self.xgk[j];
            let s = f(center - dx) + f(center + dx);
            kron = kron + s * self.wgk[j];
            if j % 2 == 1 {
                gauss = gauss + s * self.wg[j / 2];
            }
        }
        (kron * h, ((kron - gauss) * h).norm())
    }
}

fn initial_grid<T: Real>(a: T, b: T, opts: &QuadOptions<T>) -> Result<Vec<(T, T)>> {
    let max_advance = T::FRAC_PI_2();
    let mut grid = Vec::new();
    let mut t = a;
    while t < b {
        let mut w = opts.max_width;
        if let Some(ph) = opts.phase {
            let f0 = ph.frequency(t);
            if f0 > T::zero() {
                w = w.min(max_advance / f0);
            }
            let f1 = ph.frequency(t + w);
            if f1 > T::zero() {
                w = w.min(max_advance / f1);
            }
        }
        let end = if t + w >= b || (b - (t + w)) < w * c(1e-3) { b } else { t + w };
        grid.push((t, end));
        if grid.len() > opts.max_panels {
            return Err(Error::BudgetExceeded {
                op: "initial_grid",
                tol: opts.abs_tol.as_f64(),
                budget: opts.max_panels,
                achieved: f64::INFINITY,
            });
        }
        t = end;
    }
    if grid.is_empty() {
        grid.push((a, b));
    }
    Ok(grid)
}

fn adaptive<T: Real>(
    op: &'static str,
    f: &dyn Fn(T) -> ComplexValue<T>,
    a: T,
    b: T,
    opts: &QuadOptions<T>,
    abs_target: T,
) -> Result<QuadResult<T>> {
    let rule = Rule::<T>::new();
    let span = b - a;
    let mut panels: Vec<Panel<T>> = Vec::new();
    let mut heap = BinaryHeap::new();
    let push = |panels: &mut Vec<Panel<T>>, heap: &mut BinaryHeap<Key<T>>, lo: T, hi: T| {
        let (value, err) = rule.apply(f, lo, hi);
        if !(value.re.is_finite() && value.im.is_finite() && err.is_finite()) {
            return Err(Error::NonFinite { op });
        }
        heap.push(Key { err, idx: panels.len() });
        panels.push(Panel { a: lo, b: hi, value, err, alive: true });
        Ok(())
    };

    if span > T::zero() {
        for (lo, hi) in initial_grid(a, b, opts)? {
            push(&mut panels, &mut heap, lo, hi)?;
        }
    }
    let mut live = panels.len();

    loop {
        let (value, err) = totals(&panels);
        let target = abs_target.max(opts.rel_tol * value.norm());
        if err <= target {
            return Ok(QuadResult {
                value,
                quad_error: err,
                tail_bound: T::zero(),
                panels_used: live,
                evaluations: 21 * panels.len(),
                truncation: b,
            });
        }
        // Split the worst panels until the running error estimate could have met the target.
        let mut excess = err - target;
        while excess > T::zero() {
            let Some(Key { idx, .. }) = heap.pop() else { break };
            let (lo, hi, old) = (panels[idx].a, panels[idx].b, panels[idx].err);
            if live + 1 > opts.max_panels || (hi - lo) <= span * c(1e-13) {
                return Err(Error::BudgetExceeded {
                    op,
                    tol: target.as_f64(),
                    budget: opts.max_panels,
                    achieved: err.as_f64(),
                });
            }
            panels[idx].alive = false;
            let mid = (lo + hi) * c(0.5);
            push(&mut panels, &mut heap, lo, mid)?;
            push(&mut panels, &mut heap, mid, hi)?;
            live += 1;
            let new = panels[panels.len() - 1].err + panels[panels.len() - 2].err;
            excess = excess - (old - new);
            if old <= new {
                break;
            }
        }
    }
}

fn totals<T: Real>(panels: &[Panel<T>]) -> (ComplexValue<T>, T) {
    let mut alive: Vec<&Panel<T>> = panels.iter().filter(|p| p.alive).collect();
    alive.sort_by(|x, y| x.a.partial_cmp(&y.a).unwrap_or(Ordering::Equal));
    let mut re = Neumaier::default();
    let mut im = Neumaier::default();
    let mut err = Neumaier::default();
    for p in alive {
        re.add(p.value.re);
        im.add(p.value.im);
        err.add(p.err);
    }
    (ComplexValue::new(re.sum(), im.sum()), err.sum())
}

#[derive(Default)]
struct Neumaier<T> {
    sum: T,
    comp: T,
}

impl<T: Real> Neumaier<T> {
    fn add(&mut self, v: T) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp = self.comp + ((self.sum - t) + v);
        } else {
            self.comp = self.comp + ((v - t) + self.sum);
        }
        self.sum = t;
    }

    fn sum(&self) -> T {
        self.sum + self.comp
    }
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = T::from_usize_lossy(n);
    for i in 0..n.div_ceil(2) {
        let guess = T::PI() * (T::from_usize_lossy(i) + c(0.75)) / (nf + c(0.5));
        let mut x = guess.cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= T::epsilon() * c(4.0) {
                let (_, d) = legendre(n, x);
                dp = d;
                break;
            }
        }
        let w = c::<T>(2.0) / ((T::one() - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (p0, T::zero());
    }
    for k in 2..=n {
        let kf = T::from_usize_lossy(k);
        let p2 = ((kf + kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = T::from_usize_lossy(n);
    (p1, nf * (x * p1 - p0) / (x * x - T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn re(f: impl Fn(f64) -> f64) -> impl Fn(f64) -> Complex64 {
        move |t| Complex64::new(f(t), 0.0)
    }

    #[test]
    fn exponential() {
        let env = DecayEnvelope::exponential(1.0, 1.0, 0.0).unwrap();
        let r = integrate_semiline(re(|t| (-t).exp()), &env, 1e-12).unwrap();
        assert!((r.value.re - 1.0).abs() <= r.total_error() * (1.0 + 1e-9) + 1e-15, "{r:?}");
        assert!((r.value.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian() {
        // e^{-t²} ≤ e^{1/4} e^{-t} for all t.
        let env = DecayEnvelope::exponential(1.0, 0.25f64.exp(), 0.0).unwrap();
        let r = integrate_semiline(re(|t| (-t * t).exp()), &env, 1e-12).unwrap();
        let exact = std::f64::consts::PI.sqrt() / 2.0;
        assert!((r.value.re - exact).abs() < 1e-12);
    }

    #[test]
    fn damped_cosine() {
        let env = DecayEnvelope::exponential(1.0, 1.0, 0.0).unwrap();
        let r = integrate_semiline(re(|t| (-t).exp() * t.cos()), &env, 1e-12).unwrap();
        assert!((r.value.re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sqrt_envelope() {
        let env = DecayEnvelope::exponential_sqrt(1.0, 1.0, 0.0).unwrap();
        let r = integrate_semiline(re(|t| (-t.sqrt()).exp()), &env, 1e-9).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-9, "{r:?}");
        assert!(env.tail(r.truncation) <= 0.5e-9);
    }

    #[test]
    fn violation_is_detected() {
        let env = DecayEnvelope::exponential(2.0, 1.0, 0.0).unwrap();
        let err = integrate_semiline(re(|t| (-t).exp()), &env, 1e-10).unwrap_err();
        assert!(matches!(err, Error::EnvelopeViolation { .. }));
    }

    #[test]
    fn budget_is_enforced() {
        let env = DecayEnvelope::exponential(1.0, 1.0, 0.0).unwrap();
        let opts = QuadOptions { max_panels: 3, ..QuadOptions::absolute(1e-14) };
        let f = re(|t| (-t).exp() * (40.0 * t).cos());
        assert!(matches!(
            integrate_semiline_with(f, &env, &opts),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn phase_hint_caps_width() {
        let opts = QuadOptions {
            phase: Some(PhaseHint { quadratic: 100.0, linear: 0.0 }),
            ..QuadOptions::absolute(1e-10)
        };
        let grid = initial_grid(0.0, 2.0, &opts).unwrap();
        for (a, b) in grid {
            let phase_advance = 100.0 * (b * b - a * a);
            assert!(phase_advance <= std::f64::consts::FRAC_PI_2 * (1.0 + 1e-12));
        }
    }

    #[test]
    fn gk_is_exact_for_degree_31() {
        let opts = QuadOptions::absolute(1.0);
        let r = integrate_interval(re(|t| t.powi(31)), 0.0, 1.0, &opts).unwrap();
        assert!((r.value.re - 1.0 / 32.0).abs() < 1e-15);
        assert_eq!(r.panels_used, 1);
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre::<f64>(7);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(12)).sum();
        assert!((s - 2.0 / 13.0).abs() < 1e-14);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn single_precision_quadrature() {
        let env = DecayEnvelope::<f32>::exponential(1.0, 1.0, 0.0).unwrap();
        let r = integrate_semiline(|t: f32| num_complex::Complex32::new((-t).exp(), 0.0), &env, 1e-5)
            .unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-5);
    }
}
