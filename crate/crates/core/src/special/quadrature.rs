//! Globally adaptive Gauss–Kronrod (10/21) quadrature.
//!
//! Semi-infinite ranges are mapped onto [0, 1) through t = lo + u/(1−u).

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub abs_error_estimate: T,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_subdivisions: usize,
}

impl<T: Real> Default for QuadratureOptions<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::lit(1e-12),
            rel_tol: T::lit(1e-12),
            max_subdivisions: 2000,
        }
    }
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

#[derive(Debug, Clone, Copy)]
struct Segment<T> {
    lo: T,
    hi: T,
    value: T,
    error: T,
    abs_value: T,
}

fn kronrod21<T: Real, F: Fn(T) -> T>(f: &F, lo: T, hi: T) -> (T, T, T) {
    let half = T::lit(0.5);
    let center = half * (lo + hi);
    let half_len = half * (hi - lo);
    let fc = f(center);
    let mut res_g = T::zero();
    let mut res_k = fc * T::lit(WGK[10]);
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];
    for j in 0..10 {
        let dx = half_len * T::lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let w = T::lit(WGK[j]);
        res_k = res_k + w * (f1 + f2);
        res_abs = res_abs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[10]) * (fc - mean).abs();
    for j in 0..10 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half_len.abs();
    let result = res_k * half_len;
    let res_abs = res_abs * scale;
    let res_asc = res_asc * scale;
    let mut err = ((res_k - res_g) * half_len).abs();
    if res_asc != T::zero() && err != T::zero() {
        let ratio = (T::lit(200.0) * err / res_asc).powf(T::lit(1.5));
        err = res_asc * ratio.min(T::one());
    }
    let floor = T::lit(50.0) * T::epsilon() * res_abs;
    if res_abs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) {
        err = err.max(floor);
    }
    (result, err, res_abs)
}

/// Integrates `f` over `[lo, hi]` to absolute tolerance `tol`.
///
/// `hi` may be `+∞`.
pub fn integrate_adaptive<T: Real, F: Fn(T) -> T>(
    f: F,
    lo: T,
    hi: T,
    tol: T,
) -> Result<QuadratureResult<T>> {
    integrate_with(
        f,
        lo,
        hi,
        QuadratureOptions {
            abs_tol: tol,
            rel_tol: T::zero(),
            ..Default::default()
        },
    )
}

/// Like [`integrate_adaptive`], stopping once the error estimate is below
/// `max(abs_tol, rel_tol·|I|)`.
pub fn integrate_with<T: Real, F: Fn(T) -> T>(
    f: F,
    lo: T,
    hi: T,
    opts: QuadratureOptions<T>,
) -> Result<QuadratureResult<T>> {
    if lo.is_nan() || hi.is_nan() || lo.is_infinite() {
        return Err(Error::domain("integration limits must be finite (upper may be +∞)"));
    }
    if hi == lo {
        return Ok(QuadratureResult {
            value: T::zero(),
            abs_error_estimate: T::zero(),
            evaluations: 0,
        });
    }
    if hi.is_infinite() {
        if hi < T::zero() {
            return Err(Error::domain("upper limit −∞ is not supported"));
        }
        let mapped = |u: T| {
            let one_minus = T::one() - u;
            let t = lo + u / one_minus;
            f(t) / (one_minus * one_minus)
        };
        return adapt(&mapped, T::zero(), T::one(), opts);
    }
    adapt(&f, lo, hi, opts)
}

fn adapt<T: Real, F: Fn(T) -> T>(
    f: &F,
    lo: T,
    hi: T,
    opts: QuadratureOptions<T>,
) -> Result<QuadratureResult<T>> {
    let (value, error, abs_value) = kronrod21(f, lo, hi);
    let mut evaluations = 21;
    let mut segments = vec![Segment {
        lo,
        hi,
        value,
        error,
        abs_value,
    }];
    loop {
        let total: T = segments.iter().fold(T::zero(), |acc, s| acc + s.value);
        let total_err: T = segments.iter().fold(T::zero(), |acc, s| acc + s.error);
        if !total.is_finite() || !total_err.is_finite() {
            return Err(Error::Numeric("non-finite integrand value".into()));
        }
        // Below the rounding level of ∫|f| no subdivision can help.
        let abs_total = segments.iter().fold(T::zero(), |acc, s| acc + s.abs_value);
        let roundoff = T::lit(100.0) * T::epsilon() * abs_total;
        let target = opts.abs_tol.max(opts.rel_tol * total.abs()).max(roundoff);
        if total_err <= target {
            return Ok(QuadratureResult {
                value: total,
                abs_error_estimate: total_err,
                evaluations,
            });
        }
        // Split the segment with the largest error that can still be split.
        let mut worst: Option<usize> = None;
        for (i, s) in segments.iter().enumerate() {
            let mid = T::lit(0.5) * (s.lo + s.hi);
            if mid <= s.lo || mid >= s.hi {
                continue;
            }
            if worst.map_or(true, |w| s.error > segments[w].error) {
                worst = Some(i);
            }
        }
        let Some(idx) = worst.filter(|_| segments.len() < opts.max_subdivisions) else {
            return Err(Error::Quadrature {
                value: total.as_f64(),
                abs_error: total_err.as_f64(),
                subdivisions: segments.len(),
            });
        };
        let s = segments.swap_remove(idx);
        let mid = T::lit(0.5) * (s.lo + s.hi);
        let (v1, e1, a1) = kronrod21(f, s.lo, mid);
        let (v2, e2, a2) = kronrod21(f, mid, s.hi);
        evaluations += 42;
        segments.push(Segment {
            lo: s.lo,
            hi: mid,
            value: v1,
            error: e1,
            abs_value: a1,
        });
        segments.push(Segment {
            lo: mid,
            hi: s.hi,
            value: v2,
            error: e2,
            abs_value: a2,
        });
    }
}

/// Three-point Gauss–Legendre rule on `[lo, hi]` (exact through degree 5).
pub fn gauss_legendre_3<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T) -> T {
    let half = T::lit(0.5);
    let c = half * (lo + hi);
    let h = half * (hi - lo);
    let x = T::lit(0.774_596_669_241_483_4) * h;
    let w_outer = T::lit(5.0 / 9.0);
    let w_center = T::lit(8.0 / 9.0);
    h * (w_outer * (f(c - x) + f(c + x)) + w_center * f(c))
}
