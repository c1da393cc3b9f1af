//! One-dimensional quadrature.
//!
//! Three tools cover everything the crate integrates:
//!
//! * [`adaptive`]: globally adaptive 21-point Gauss–Kronrod (QUADPACK QAG
//!   style) for piecewise smooth integrands.
//! * [`tanh_sinh_from_left`]: double-exponential quadrature for integrands
//!   with an integrable algebraic singularity at the left endpoint. The
//!   integrand receives the *offset* from that endpoint, so densities can be
//!   evaluated without the cancellation that ruins `lower + t` for tiny `t`.
//! * [`gauss_legendre`]: fixed nodes for nested tensor-product rules.
//!
//! [`integrate_left_singular`] combines the first two: a short singular
//! piece handled by tanh-sinh, the remainder by Gauss–Kronrod.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::{FRAC_PI_2, PI};

/// Width of the piece next to a singular endpoint that is handed to the
/// double-exponential rule instead of Gauss–Kronrod.
pub const SINGULAR_SPLIT: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
    pub converged: bool,
}

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
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
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

/// Single 21-point Gauss–Kronrod panel; returns (estimate, error estimate).
fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut resasc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let resasc = resasc * half.abs();
    let value = kronrod * half;
    let mut err = ((kronrod - gauss) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    (value, err)
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
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
        self.error.total_cmp(&other.error)
    }
}

const MAX_PANELS: usize = 4000;

/// Globally adaptive Gauss–Kronrod on `[a, b]`, bisecting the panel with the
/// largest error estimate until `error ≤ max(abs_tol, rel_tol·|value|)`.
pub fn adaptive<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> QuadResult {
    if a == b {
        return QuadResult {
            value: 0.0,
            error: 0.0,
            intervals: 0,
            converged: true,
        };
    }
    let (value, error) = gk21(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Panel { a, b, value, error });
    let mut total = value;
    let mut total_err = error;
    let mut converged = false;
    while heap.len() < MAX_PANELS {
        if total_err <= abs_tol.max(rel_tol * total.abs()) {
            converged = true;
            break;
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // panel cannot be split further in floating point
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk21(&f, worst.a, mid);
        let (v2, e2) = gk21(&f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Panel {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Panel {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
    }
    // re-sum to shed accumulated update round-off
    let mut panels: Vec<Panel> = heap.into_vec();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let value = panels.iter().map(|p| p.value).sum();
    let error = panels.iter().map(|p| p.error).sum();
    QuadResult {
        value,
        error,
        intervals: panels.len(),
        converged,
    }
}

/// [`adaptive`] with the crate's default tolerances.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> f64 {
    adaptive(f, a, b, 1e-14, 1e-12).value
}

/// Tanh-sinh quadrature of `f(t)` over `t ∈ [0, len]`, where `t` is the
/// distance from the left endpoint. Nodes cluster double-exponentially at
/// both ends, so integrable singularities `t^{-γ}` with `γ < 1` are handled
/// as long as `f` is accurate for tiny `t`.
pub fn tanh_sinh_from_left<F: Fn(f64) -> f64>(f: F, len: f64, rel_tol: f64) -> f64 {
    if len <= 0.0 {
        return 0.0;
    }
    let term = |u: f64| -> f64 {
        let v = FRAC_PI_2 * u.sinh();
        let t = len / (1.0 + (-2.0 * v).exp());
        if t <= 0.0 || t >= len || !t.is_finite() {
            return 0.0;
        }
        let cv = v.cosh();
        let w = 0.5 * len * FRAC_PI_2 * u.cosh() / (cv * cv);
        if w == 0.0 || !w.is_finite() {
            return 0.0;
        }
        w * f(t)
    };
    // |u| ≤ 6.6 reaches offsets near the smallest normal double.
    let u_max = 6.6;
    let mut h = 0.5;
    let mut sum = term(0.0);
    let mut k = 1;
    while (k as f64) * h <= u_max {
        let u = k as f64 * h;
        sum += term(u) + term(-u);
        k += 1;
    }
    let mut estimate = sum * h;
    for level in 0..9 {
        // add the odd nodes of the halved step
        let mut add = 0.0;
        let mut k = 1;
        while (k as f64) * h * 0.5 <= u_max {
            let u = k as f64 * h * 0.5;
            add += term(u) + term(-u);
            k += 2;
        }
        sum += add;
        h *= 0.5;
        let next = sum * h;
        let diff = (next - estimate).abs();
        estimate = next;
        if level >= 2 && diff <= rel_tol * estimate.abs() {
            break;
        }
    }
    estimate
}

/// Integrates `f(t)` over `t ∈ [0, len]` where `f` may diverge (integrably)
/// at `t = 0`: tanh-sinh on `[0, min(split, len)]`, adaptive Gauss–Kronrod on
/// the rest.
pub fn integrate_left_singular<F: Fn(f64) -> f64>(f: F, len: f64, split: f64) -> f64 {
    if len <= 0.0 {
        return 0.0;
    }
    let cut = split.min(len);
    let near = tanh_sinh_from_left(&f, cut, 1e-13);
    if cut >= len {
        return near;
    }
    near + integrate(&f, cut, len)
}

/// Gauss–Legendre nodes and weights on `[a, b]`.
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "need at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * z * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { z } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = nf * (z * p - pm1) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = center - half * z;
        nodes[n - 1 - i] = center + half * z;
        weights[i] = w * half;
        weights[n - 1 - i] = w * half;
    }
    (nodes, weights)
}
