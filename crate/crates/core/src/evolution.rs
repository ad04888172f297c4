//! Schrödinger evolution `g(t) = e^{itΔ} f` and its recovery from time samples.
//!
//! For `f` in `PW_omega` the evolution is recovered from `f`, `Δf` and the
//! samples `g(kπ/omega)` by the Valiron–Tschakaloff series
//!
//! ```text
//! g(t) = i t sinc(x) Δf + sinc(x) f + sum_{k != 0} (x / k) sinc(x - k) g(kπ/omega),   x = omega t / π
//! ```
//!
//! with `sinc(x) = sin(πx) / (πx)`. The series is truncated symmetrically to
//! `0 < |k| <= K` and summed in pairs `k, -k` of increasing `|k|`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::graph::{GraphId, Signal};
use crate::scalar::{sin_pi, sinc, Real};
use crate::spectral::Spectrum;

/// Relative slack on the Bernstein ratio before initial data is rejected.
pub const BANDLIMIT_SLACK: f64 = 1e-6;

/// `e^{itΔ} f`.
pub fn evolve<T: Real>(spectrum: &Spectrum<T>, f: &Signal<T>, t: T) -> Result<Signal<T>> {
    if t == T::zero() {
        spectrum.check(f)?;
        return Ok(f.clone());
    }
    spectrum.apply_function(f, |l| Complex::from_polar(T::one(), t * l))
}

/// `‖Δ‖ = λ_max`; every signal is admissible for interpolation once `omega >= ‖Δ‖`.
pub fn operator_norm_bandwidth<T: Real>(spectrum: &Spectrum<T>) -> T {
    spectrum.lambda_max()
}

/// Samples of the evolution on the time grid `kπ/omega`, `|k| <= K`.
#[derive(Debug, Clone)]
pub struct TimeSamples<T> {
    omega: T,
    k_trunc: usize,
    // samples[k + K] = g(kπ/omega)
    samples: Vec<Signal<T>>,
    laplacian_f0: Signal<T>,
    bernstein_ratio: T,
}

impl<T: Real> TimeSamples<T> {
    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn k_trunc(&self) -> usize {
        self.k_trunc
    }

    pub fn f0(&self) -> &Signal<T> {
        &self.samples[self.k_trunc]
    }

    pub fn laplacian_f0(&self) -> &Signal<T> {
        &self.laplacian_f0
    }

    /// `g(kπ/omega)`, if `|k| <= K`.
    pub fn sample(&self, k: i64) -> Option<&Signal<T>> {
        let idx = k + self.k_trunc as i64;
        if idx < 0 {
            return None;
        }
        self.samples.get(idx as usize)
    }

    pub fn time_of(&self, k: i64) -> T {
        T::of_i64(k) * T::PI() / self.omega
    }

    pub fn graph_id(&self) -> GraphId {
        self.laplacian_f0.graph_id()
    }

    /// `‖Δf‖ / (omega ‖f‖)`, zero for `f = 0`.
    pub fn bernstein_ratio(&self) -> T {
        self.bernstein_ratio
    }
}

pub fn collect_time_samples<T: Real>(
    spectrum: &Spectrum<T>,
    f: &Signal<T>,
    omega: T,
    k_trunc: usize,
) -> Result<TimeSamples<T>> {
    if omega <= T::zero() {
        return Err(Error::InvalidArgument("omega must be positive".into()));
    }
    let k = k_trunc as i64;
    let samples = (-k..=k)
        .map(|j| {
            if j == 0 {
                Ok(f.clone())
            } else {
                evolve(spectrum, f, T::of_i64(j) * T::PI() / omega)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let laplacian_f0 = spectrum.apply_function(f, |l| Complex::new(l, T::zero()))?;
    let norm_in = |s: &Signal<T>| {
        s.values()
            .iter()
            .zip(spectrum.scale())
            .fold(T::zero(), |acc, (x, &w)| acc + x.norm_sqr() * w * w)
            .sqrt()
    };
    let norm_f = norm_in(f);
    let bernstein_ratio = if norm_f == T::zero() {
        T::zero()
    } else {
        norm_in(&laplacian_f0) / (omega * norm_f)
    };
    Ok(TimeSamples {
        omega,
        k_trunc,
        samples,
        laplacian_f0,
        bernstein_ratio,
    })
}

/// Scalar weights of the truncated series at one time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct VtWeights<T> {
    /// `t sinc(omega t / π)`; multiplies `i Δf`.
    pub derivative: T,
    /// `sinc(omega t / π)`; multiplies `f`.
    pub origin: T,
    /// `(k, (x/k) sinc(x - k))`, ordered `1, -1, 2, -2, ...`.
    pub nodes: Vec<(i64, T)>,
}

/// `sinc(x - k)`, using `sin(π(x - k)) = (-1)^k sin(πx)` away from the node.
fn shifted_sinc<T: Real>(x: T, k: i64) -> T {
    let d = x - T::of_i64(k);
    if d.abs() < T::lit(0.5) {
        return sinc(d);
    }
    let s = sin_pi(x);
    let s = if k % 2 == 0 { s } else { -s };
    s / (T::PI() * d)
}

pub fn vt_weights<T: Real>(omega: T, k_trunc: usize, t: T) -> VtWeights<T> {
    let mut x = omega * t / T::PI();
    // grid times kπ/omega reproduce k only up to a few ulps
    let r = x.round();
    if (x - r).abs() <= T::lit(16.0) * T::epsilon() * r.abs().max(T::one()) {
        x = r;
    }
    let origin = sinc(x);
    let mut nodes = Vec::with_capacity(2 * k_trunc);
    for k in 1..=k_trunc as i64 {
        for kk in [k, -k] {
            let w = if x == T::zero() {
                T::zero()
            } else {
                x / T::of_i64(kk) * shifted_sinc(x, kk)
            };
            nodes.push((kk, w));
        }
    }
    VtWeights {
        derivative: t * origin,
        origin,
        nodes,
    }
}

/// Evaluates the truncated series at `t`.
pub fn vt_interpolate<T: Real>(samples: &TimeSamples<T>, t: T) -> Result<Signal<T>> {
    if samples.bernstein_ratio > T::one() + T::lit(BANDLIMIT_SLACK) {
        return Err(Error::NotBandlimited {
            ratio: samples.bernstein_ratio.to_f64().unwrap_or(f64::NAN),
        });
    }
    let w = vt_weights(samples.omega, samples.k_trunc, t);
    let deriv = Complex::new(T::zero(), w.derivative);
    let origin = Complex::new(w.origin, T::zero());
    let n = samples.laplacian_f0.len();
    let f0 = samples.f0().values();
    let lf = samples.laplacian_f0.values();
    let mut out: Vec<Complex<T>> = (0..n).map(|v| lf[v] * deriv + f0[v] * origin).collect();
    for pair in w.nodes.chunks(2) {
        let (k1, w1) = pair[0];
        let (k2, w2) = pair[1];
        let g1 = samples.sample(k1).expect("k within window").values();
        let g2 = samples.sample(k2).expect("k within window").values();
        for v in 0..n {
            out[v] = out[v] + (g1[v] * w1 + g2[v] * w2);
        }
    }
    Ok(Signal::from_parts(samples.graph_id(), out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::make_complete_bipartite;
    use crate::graph::{build_graph, Graph, MeasureMode};
    use crate::spectral::eigendecompose;

    fn k53() -> (Graph<f64>, Spectrum<f64>) {
        let (g, _) = make_complete_bipartite::<f64>(5, 3, MeasureMode::Counting).unwrap();
        let s = eigendecompose(&g).unwrap();
        (g, s)
    }

    fn test_signal(g: &Graph<f64>) -> Signal<f64> {
        Signal::new(
            g,
            (0..g.vertex_count())
                .map(|i| Complex::new((1.3 * i as f64).sin(), 0.2 * i as f64 - 0.5))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn time_zero_is_identity() {
        let (g, s) = k53();
        let f = test_signal(&g);
        assert!(evolve(&s, &f, 0.0).unwrap().sub(&f).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn eigenvector_picks_up_a_phase() {
        let (_, s) = k53();
        let e = s.eigenvector(3);
        let lam = s.eigenvalues()[3];
        let t = 0.77;
        let got = evolve(&s, &e, t).unwrap();
        let want = e.scaled(Complex::from_polar(1.0, lam * t));
        assert!(got.sub(&want).unwrap().max_abs() < 1e-13);
    }

    #[test]
    fn finite_difference_matches_equation() {
        let (g, s) = k53();
        let f = test_signal(&g);
        let (t, h) = (0.4, 1e-5);
        let a = evolve(&s, &f, t).unwrap();
        let b = evolve(&s, &f, t + h).unwrap();
        let fd = b.sub(&a).unwrap().scaled(Complex::new(1.0 / h, 0.0));
        let rhs = g
            .apply_laplacian(&a)
            .unwrap()
            .scaled(Complex::new(0.0, 1.0));
        let rel = g.norm(&fd.sub(&rhs).unwrap()).unwrap() / g.norm(&rhs).unwrap();
        assert!(rel < 1e-3, "rel = {rel}");
    }

    #[test]
    fn sample_grid() {
        let (g, s) = k53();
        let f = test_signal(&g);
        let ts = collect_time_samples(&s, &f, 4.0, 0).unwrap();
        assert!(ts.sample(0).is_some() && ts.sample(1).is_none() && ts.sample(-1).is_none());
        let ts = collect_time_samples(&s, &f, std::f64::consts::PI, 3).unwrap();
        for k in -3..=3 {
            assert!((ts.time_of(k) - k as f64).abs() < 1e-15);
            let direct = evolve(&s, &f, k as f64).unwrap();
            assert!(ts.sample(k).unwrap().sub(&direct).unwrap().max_abs() < 1e-12);
            let rel = (g.norm(ts.sample(k).unwrap()).unwrap() - g.norm(&f).unwrap()).abs()
                / g.norm(&f).unwrap();
            assert!(rel < 1e-10);
        }
        assert_eq!(ts.sample(0).unwrap(), &f);
        assert!(collect_time_samples(&s, &f, 0.0, 3).is_err());
    }

    #[test]
    fn weights_vanish_at_origin() {
        let w = vt_weights(4.0, 5, 0.0);
        assert_eq!(w.origin, 1.0);
        assert_eq!(w.derivative, 0.0);
        assert!(w.nodes.iter().all(|&(_, x)| x == 0.0));
        let order: Vec<i64> = w.nodes.iter().map(|x| x.0).collect();
        assert_eq!(order, vec![1, -1, 2, -2, 3, -3, 4, -4, 5, -5]);
    }

    #[test]
    fn scalar_series_reproduces_exponential() {
        // e^{i 3 t} has type 3 < 4
        let (omega, t) = (4.0f64, 0.3);
        let w = vt_weights(omega, 4000, t);
        let mut acc = Complex::new(0.0, 0.0);
        acc += Complex::new(0.0, w.derivative) * 3.0;
        acc += w.origin;
        for &(k, wk) in &w.nodes {
            acc += Complex::from_polar(1.0, 3.0 * k as f64 * std::f64::consts::PI / omega) * wk;
        }
        assert!((acc - Complex::from_polar(1.0, 3.0 * t)).norm() < 1e-6);
    }

    #[test]
    fn interpolation_is_exact_on_the_grid() {
        let (g, s) = k53();
        let f = crate::spectral::pw_project(&s, &test_signal(&g), 4.0)
            .unwrap()
            .signal;
        let ts = collect_time_samples(&s, &f, 4.0, 20).unwrap();
        let at0 = vt_interpolate(&ts, 0.0).unwrap();
        assert_eq!(at0.sub(&f).unwrap().max_abs(), 0.0);
        for m in -20..=20i64 {
            let got = vt_interpolate(&ts, ts.time_of(m)).unwrap();
            let err = got.sub(ts.sample(m).unwrap()).unwrap().max_abs();
            assert!(err < 1e-12, "m = {m}, err = {err}");
        }
    }

    #[test]
    fn eigenmode_error_decreases_with_truncation() {
        let (_, s) = k53();
        let j = 1; // eigenvalue 3
        assert!((s.eigenvalues()[j] - 3.0).abs() < 1e-12);
        let e = s.eigenvector(j);
        let t = 0.4;
        let want = e.scaled(Complex::from_polar(1.0, s.eigenvalues()[j] * t));
        let mut last = f64::INFINITY;
        for k in [100, 200, 400, 800] {
            let ts = collect_time_samples(&s, &e, 4.0, k).unwrap();
            let err = vt_interpolate(&ts, t)
                .unwrap()
                .sub(&want)
                .unwrap()
                .max_abs();
            assert!(err < last, "K = {k}: {err} !< {last}");
            last = err;
        }
        assert!(last < 1e-5);
    }

    #[test]
    fn rejects_out_of_band_data() {
        let (_, s) = k53();
        let top = s.eigenvector(7);
        let ts = collect_time_samples(&s, &top, 4.0, 4).unwrap();
        assert!(matches!(
            vt_interpolate(&ts, 0.1).unwrap_err(),
            Error::NotBandlimited { .. }
        ));
    }

    #[test]
    fn operator_norms() {
        let (_, s) = k53();
        assert!((operator_norm_bandwidth(&s) - 8.0).abs() < 1e-12);
        let p3 = build_graph([("0", "1", 1.0f64), ("1", "2", 1.0)], MeasureMode::Counting).unwrap();
        let s = eigendecompose(&p3).unwrap();
        assert!((operator_norm_bandwidth(&s) - 3.0).abs() < 1e-12);
        let one = Graph::<f64>::new(
            ["v"],
            Vec::<(&str, &str, f64)>::new(),
            MeasureMode::Counting,
        )
        .unwrap();
        assert_eq!(operator_norm_bandwidth(&eigendecompose(&one).unwrap()), 0.0);
    }
}
