//! Adaptive Gauss–Kronrod quadrature and an accelerated Fourier-cosine
//! transform for slowly decaying integrands.
//!
//! Everything here is deterministic: given the same integrand and options,
//! the subdivision sequence and the returned estimate are identical.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Kronrod abscissae on [-1, 1] (non-negative half, descending).
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

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_977_880_373,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for the 10-point rule embedded at XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 0.0,
            rel_tol: 1e-10,
            max_intervals: 2000,
        }
    }
}

impl QuadOptions {
    pub fn rel(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_err: f64,
    pub converged: bool,
}

impl QuadResult {
    fn add(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            abs_err: self.abs_err + other.abs_err,
            converged: self.converged && other.converged,
        }
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

/// Single 21-point Kronrod panel with its embedded Gauss error estimate.
pub fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_k = fc * WGK[10];
    let mut res_abs = res_k.abs();
    let mut res_g = 0.0;
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    let err = rescale_error((res_k - res_g) * half, res_abs * scale, res_asc * scale);
    (res_k * half, err)
}

#[derive(Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Globally adaptive integration of `f` over the finite interval `[a, b]`.
///
/// The panel with the largest error estimate is bisected until the summed
/// error falls below `max(abs_tol, rel_tol * |I|)` or `max_intervals` is hit.
/// Endpoints are never evaluated, so integrable endpoint singularities are
/// tolerated.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: &QuadOptions) -> QuadResult {
    if a == b {
        return QuadResult {
            value: 0.0,
            abs_err: 0.0,
            converged: true,
        };
    }
    let (v0, e0) = gk21(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        a,
        b,
        value: v0,
        err: e0,
    });
    let mut total = v0;
    let mut total_err = e0;
    let mut count = 1;
    while total_err > opts.target(total) && count < opts.max_intervals {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval cannot be split further in floating point
            heap.push(worst);
            break;
        }
        let (vl, el) = gk21(&f, worst.a, mid);
        let (vr, er) = gk21(&f, mid, worst.b);
        total += vl + vr - worst.value;
        total_err += el + er - worst.err;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: vl,
            err: el,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: vr,
            err: er,
        });
        count += 1;
    }
    // re-sum to shed the drift of the running totals
    let value: f64 = heap.iter().map(|p| p.value).sum();
    let abs_err: f64 = heap.iter().map(|p| p.err).sum();
    QuadResult {
        value,
        abs_err,
        converged: abs_err <= opts.target(value),
    }
}

/// Integral over `[a, inf)` through the map `x = a + s / (1 - s)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, opts: &QuadOptions) -> QuadResult {
    let g = |s: f64| {
        let one_minus = 1.0 - s;
        let x = a + s / one_minus;
        let jac = 1.0 / (one_minus * one_minus);
        let v = f(x) * jac;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate(g, 0.0, 1.0, opts)
}

/// `∫₀ᵇ x^e g(x) dx` for `e > -1`, via `x = b v^{1/(e+1)}`, which removes the
/// power behaviour at the origin: the transformed integrand is `g` itself.
pub fn integrate_power_origin<F: Fn(f64) -> f64>(
    g: F,
    exponent: f64,
    b: f64,
    opts: &QuadOptions,
) -> QuadResult {
    let k = exponent + 1.0;
    let scale = b.powf(k) / k;
    let inv = 1.0 / k;
    let r = integrate(|v: f64| g(b * v.powf(inv)), 0.0, 1.0, opts);
    QuadResult {
        value: r.value * scale,
        abs_err: r.abs_err * scale,
        converged: r.converged,
    }
}

/// Wynn epsilon extrapolation of a sequence of partial sums.
///
/// Returns the most recent even-column estimate together with the size of
/// its last change, which serves as an error indicator.
pub fn wynn_epsilon(partial_sums: &[f64]) -> (f64, f64) {
    let n = partial_sums.len();
    if n < 3 {
        let last = *partial_sums.last().unwrap_or(&0.0);
        return (last, f64::INFINITY);
    }
    // eps[k] holds column k of the epsilon table evaluated along the diagonal
    let mut prev: Vec<f64> = vec![0.0; n + 1];
    let mut cur: Vec<f64> = partial_sums.to_vec();
    let mut best = *partial_sums.last().unwrap();
    let mut best_err = (partial_sums[n - 1] - partial_sums[n - 2]).abs();
    let mut col = 0usize;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            let base = if col == 0 { 0.0 } else { prev[i + 1] };
            if diff == 0.0 {
                next.push(f64::INFINITY);
            } else {
                next.push(base + 1.0 / diff);
            }
        }
        col += 1;
        if col.is_multiple_of(2) && next.len() >= 2 {
            let m = next.len();
            let (a, b) = (next[m - 1], next[m - 2]);
            if a.is_finite() && b.is_finite() {
                let err = (a - b).abs();
                if err < best_err {
                    best = a;
                    best_err = err;
                }
            }
        }
        prev = cur;
        cur = next;
        if cur.iter().any(|v| !v.is_finite()) {
            break;
        }
    }
    (best, best_err)
}

/// `∫₀^∞ cos(t x) f(x) dx` for integrands that are smooth and eventually
/// monotone beyond `head`. The head `[0, head]` is handled by `head_rule`
/// (so callers can remove singular behaviour at the origin); the tail is
/// split at zeros of the cosine and the alternating series of half-period
/// integrals is accelerated with the epsilon algorithm.
pub fn cosine_transform<F, H>(f: F, t: f64, head: f64, head_rule: H, opts: &QuadOptions) -> QuadResult
where
    F: Fn(f64) -> f64,
    H: Fn(f64, &dyn Fn(f64) -> f64, &QuadOptions) -> QuadResult,
{
    let t = t.abs();
    let integrand = |x: f64| (t * x).cos() * f(x);
    if t == 0.0 {
        let head_part = head_rule(head, &integrand, opts);
        let tail = integrate_to_infinity(&f, head, opts);
        return head_part.add(tail);
    }
    let half_period = std::f64::consts::PI / t;
    // align the head end to a zero of cos(t x)
    let k0 = (head / half_period - 0.5).ceil().max(0.0);
    let start = (k0 + 0.5) * half_period;
    let head_part = head_rule(start, &integrand, opts);

    let inner = QuadOptions {
        abs_tol: 0.0,
        rel_tol: opts.rel_tol * 1e-2,
        max_intervals: opts.max_intervals,
    };
    let mut sums = Vec::with_capacity(64);
    let mut acc = 0.0;
    let mut converged = true;
    let mut last_est = f64::NAN;
    let mut est_err = f64::INFINITY;
    let scale = head_part.value.abs().max(f64::MIN_POSITIVE);
    for k in 0..400 {
        let a = start + k as f64 * half_period;
        let r = integrate(integrand, a, a + half_period, &inner);
        converged &= r.converged;
        acc += r.value;
        sums.push(acc);
        if sums.len() >= 8 {
            let window = &sums[sums.len().saturating_sub(24)..];
            let (est, _) = wynn_epsilon(window);
            if last_est.is_finite() {
                est_err = (est - last_est).abs();
                let total = (head_part.value + est).abs().max(scale * 1e-3);
                if est_err <= opts.target(total) * 0.1 && est_err <= opts.rel_tol * total {
                    last_est = est;
                    break;
                }
            }
            last_est = est;
        }
    }
    let tail_value = if last_est.is_finite() { last_est } else { acc };
    let abs_err = head_part.abs_err + est_err.min(tail_value.abs().max(1.0));
    let value = head_part.value + tail_value;
    QuadResult {
        value,
        abs_err,
        converged: converged && head_part.converged && abs_err <= opts.target(value).max(1e-14),
    }
}
