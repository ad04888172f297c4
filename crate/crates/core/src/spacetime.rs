//! Recovery of `g(t, v)` everywhere from samples on `S x {kπ/omega}`.
//!
//! Each sampled vertex gets its own time interpolant `h_s(t)` (the truncated
//! Valiron–Tschakaloff series of the scalar function `t -> g(t, s)`), and the
//! dual frame of `S` spreads those over the graph: `g(t, v) = sum_s h_s(t) Φ_s(v)`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::evolution::{evolve, vt_weights};
use crate::graph::{Graph, Signal, VertexSet};
use crate::sampling::{DualFrame, SamplingCertificate};
use crate::scalar::Real;
use crate::spectral::{pw_project, Spectrum};

/// Relative out-of-band energy tolerated in initial data.
pub const BANDLIMIT_TOLERANCE: f64 = 1e-6;

/// `g(kπ/omega, s)` for `|k| <= K`, `s` in `S`, and optionally `(Δf)(s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceTimeSamples<T> {
    set: VertexSet,
    omega: T,
    k_trunc: usize,
    // values[k + K][r] for s = set.indices()[r]
    values: Vec<Vec<Complex<T>>>,
    laplacian_on_set: Option<Vec<Complex<T>>>,
}

impl<T: Real> SpaceTimeSamples<T> {
    /// Assembles samples from `(k, vertex index, value)` entries; every
    /// `(k, s)` in the window must be present exactly once.
    pub fn from_entries(
        graph: &Graph<T>,
        set: VertexSet,
        omega: T,
        k_trunc: usize,
        entries: impl IntoIterator<Item = (i64, usize, Complex<T>)>,
        laplacian_on_set: Option<Vec<(usize, Complex<T>)>>,
    ) -> Result<Self> {
        if set.graph_id() != graph.id() {
            return Err(Error::GraphMismatch);
        }
        let k = k_trunc as i64;
        let mut slots: Vec<Vec<Option<Complex<T>>>> = vec![vec![None; set.len()]; 2 * k_trunc + 1];
        for (kk, v, value) in entries {
            let r = set.indices().binary_search(&v).map_err(|_| {
                Error::InvalidArgument(format!(
                    "sample at vertex {} outside the sampling set",
                    graph.vertex(v)
                ))
            })?;
            if kk.abs() > k {
                return Err(Error::InvalidArgument(format!(
                    "sample index k = {kk} outside the window |k| <= {k}"
                )));
            }
            let slot = &mut slots[(kk + k) as usize][r];
            if slot.is_some() {
                return Err(Error::InvalidArgument(format!(
                    "duplicate sample k = {kk} at vertex {}",
                    graph.vertex(v)
                )));
            }
            *slot = Some(value);
        }
        let mut values = Vec::with_capacity(slots.len());
        for (i, row) in slots.into_iter().enumerate() {
            let row = row
                .into_iter()
                .enumerate()
                .map(|(r, x)| {
                    x.ok_or_else(|| Error::MissingSample {
                        k: i as i64 - k,
                        vertex: graph.vertex(set.indices()[r]).to_string(),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            values.push(row);
        }
        let laplacian_on_set = match laplacian_on_set {
            None => None,
            Some(pairs) => {
                let mut lap = vec![None; set.len()];
                for (v, x) in pairs {
                    let r = set.indices().binary_search(&v).map_err(|_| {
                        Error::InvalidArgument(format!(
                            "Laplacian value at vertex {} outside the sampling set",
                            graph.vertex(v)
                        ))
                    })?;
                    lap[r] = Some(x);
                }
                if lap.iter().any(Option::is_none) {
                    return Err(Error::MissingLaplacianData);
                }
                Some(lap.into_iter().map(Option::unwrap).collect())
            }
        };
        Ok(Self {
            set,
            omega,
            k_trunc,
            values,
            laplacian_on_set,
        })
    }

    pub fn set(&self) -> &VertexSet {
        &self.set
    }

    pub fn omega(&self) -> T {
        self.omega
    }

    pub fn k_trunc(&self) -> usize {
        self.k_trunc
    }

    /// `g(kπ/omega, s)` with `s = set.indices()[r]`.
    pub fn value(&self, k: i64, r: usize) -> Option<Complex<T>> {
        let idx = k + self.k_trunc as i64;
        if idx < 0 {
            return None;
        }
        self.values.get(idx as usize).map(|row| row[r])
    }

    pub fn laplacian_on_set(&self) -> Option<&[Complex<T>]> {
        self.laplacian_on_set.as_deref()
    }

    pub fn entry_count(&self) -> usize {
        self.values.len() * self.set.len()
    }

    /// Same samples without the Laplacian data.
    pub fn without_laplacian(&self) -> Self {
        Self {
            laplacian_on_set: None,
            ..self.clone()
        }
    }

    /// `a * self + b * other`, entry by entry; both must share set and grid.
    pub fn combine(&self, a: Complex<T>, other: &Self, b: Complex<T>) -> Result<Self> {
        if self.set != other.set || self.k_trunc != other.k_trunc || self.omega != other.omega {
            return Err(Error::InvalidArgument(
                "sample sets on different grids".into(),
            ));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| x.iter().zip(y).map(|(&p, &q)| p * a + q * b).collect())
            .collect();
        let laplacian_on_set = match (&self.laplacian_on_set, &other.laplacian_on_set) {
            (Some(x), Some(y)) => Some(x.iter().zip(y).map(|(&p, &q)| p * a + q * b).collect()),
            _ => None,
        };
        Ok(Self {
            values,
            laplacian_on_set,
            ..self.clone()
        })
    }
}

/// Samples the true evolution of `f` on `S` at `kπ/omega`, `|k| <= K`, and records `Δf` on `S`.
pub fn take_spacetime_samples<T: Real>(
    spectrum: &Spectrum<T>,
    f: &Signal<T>,
    set: &VertexSet,
    omega: T,
    k_trunc: usize,
) -> Result<SpaceTimeSamples<T>> {
    if set.graph_id() != spectrum.graph_id() {
        return Err(Error::GraphMismatch);
    }
    if omega <= T::zero() {
        return Err(Error::InvalidArgument("omega must be positive".into()));
    }
    let projected = pw_project(spectrum, f, omega)?.signal;
    let energy = |s: &Signal<T>| {
        s.values()
            .iter()
            .zip(spectrum.scale())
            .fold(T::zero(), |acc, (x, &w)| acc + x.norm_sqr() * w * w)
            .sqrt()
    };
    let total = energy(f);
    if total > T::zero() {
        let excess = energy(&f.sub(&projected)?) / total;
        if excess > T::lit(BANDLIMIT_TOLERANCE) {
            return Err(Error::NotBandlimited {
                ratio: excess.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    let k = k_trunc as i64;
    let values = (-k..=k)
        .map(|j| {
            let g = evolve(spectrum, f, T::of_i64(j) * T::PI() / omega)?;
            Ok(set.indices().iter().map(|&s| g[s]).collect())
        })
        .collect::<Result<Vec<Vec<_>>>>()?;
    let lap = spectrum.apply_function(f, |l| Complex::new(l, T::zero()))?;
    Ok(SpaceTimeSamples {
        set: set.clone(),
        omega,
        k_trunc,
        values,
        laplacian_on_set: Some(set.indices().iter().map(|&s| lap[s]).collect()),
    })
}

/// Evaluator of the space-time reconstruction formula.
#[derive(Debug, Clone)]
pub struct SpaceTimeReconstructor<T> {
    samples: SpaceTimeSamples<T>,
    dual: DualFrame<T>,
    laplacian_on_set: Vec<Complex<T>>,
    derived: bool,
}

impl<T: Real> SpaceTimeReconstructor<T> {
    /// `derive_laplacian` allows `Δf` on `S` to be computed from the `k = 0`
    /// samples when the sample set does not carry it.
    pub fn new(
        graph: &Graph<T>,
        samples: SpaceTimeSamples<T>,
        dual: DualFrame<T>,
        derive_laplacian: bool,
    ) -> Result<Self> {
        if dual.set != samples.set {
            return Err(Error::InvalidArgument(
                "dual frame belongs to a different sampling set".into(),
            ));
        }
        let tol = T::tol(1e-12) * T::one().max(samples.omega.abs());
        if (dual.omega - samples.omega).abs() > tol {
            return Err(Error::InvalidArgument(format!(
                "dual frame built for omega = {}, samples taken at omega = {}",
                dual.omega, samples.omega
            )));
        }
        let (laplacian_on_set, derived) = match (samples.laplacian_on_set.clone(), derive_laplacian)
        {
            (Some(lap), _) => (lap, false),
            (None, true) => (derive_laplacian_on_set(graph, &samples, &dual)?, true),
            (None, false) => return Err(Error::MissingLaplacianData),
        };
        Ok(Self {
            samples,
            dual,
            laplacian_on_set,
            derived,
        })
    }

    pub fn from_certificate(
        graph: &Graph<T>,
        samples: SpaceTimeSamples<T>,
        certificate: &SamplingCertificate<T>,
        derive_laplacian: bool,
    ) -> Result<Self> {
        let dual = certificate
            .dual_frame
            .clone()
            .ok_or_else(|| Error::NotSamplingSet {
                c: certificate.frame.lower.to_f64().unwrap_or(f64::NAN),
                threshold: certificate.frame.threshold.to_f64().unwrap_or(f64::NAN),
            })?;
        Self::new(graph, samples, dual, derive_laplacian)
    }

    /// Whether `Δf` on `S` was derived rather than supplied.
    pub fn laplacian_was_derived(&self) -> bool {
        self.derived
    }

    pub fn laplacian_on_set(&self) -> &[Complex<T>] {
        &self.laplacian_on_set
    }

    /// `h_s(t)` for each `s` in `S`.
    pub fn time_interpolants(&self, t: T) -> Vec<Complex<T>> {
        let s = &self.samples;
        let w = vt_weights(s.omega, s.k_trunc, t);
        let deriv = Complex::new(T::zero(), w.derivative);
        let origin = Complex::new(w.origin, T::zero());
        (0..s.set.len())
            .map(|r| {
                let mut h = self.laplacian_on_set[r] * deriv
                    + s.value(0, r).expect("k = 0 present") * origin;
                for pair in w.nodes.chunks(2) {
                    let (k1, w1) = pair[0];
                    let (k2, w2) = pair[1];
                    h = h
                        + (s.value(k1, r).expect("in window") * w1
                            + s.value(k2, r).expect("in window") * w2);
                }
                h
            })
            .collect()
    }

    /// `g(t, ·)` on every vertex.
    pub fn at(&self, t: T) -> Result<Signal<T>> {
        self.dual.reconstruct(&self.time_interpolants(t))
    }

    /// `g(t, v)` for vertex index `v`.
    pub fn at_vertex(&self, t: T, v: usize) -> Complex<T> {
        self.time_interpolants(t)
            .iter()
            .zip(&self.dual.frames)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (&h, phi)| {
                acc + phi[v] * h
            })
    }
}

/// `(Δf)|_S` with `f = sum_s g(0, s) Φ_s`.
pub fn derive_laplacian_on_set<T: Real>(
    graph: &Graph<T>,
    samples: &SpaceTimeSamples<T>,
    dual: &DualFrame<T>,
) -> Result<Vec<Complex<T>>> {
    let f0: Vec<Complex<T>> = (0..samples.set.len())
        .map(|r| samples.value(0, r).expect("k = 0 present"))
        .collect();
    let f = dual.reconstruct(&f0)?;
    let lap = graph.apply_laplacian(&f)?;
    Ok(samples.set.indices().iter().map(|&s| lap[s]).collect())
}

/// One-shot reconstruction of `g(t, ·)`.
pub fn reconstruct_spacetime<T: Real>(
    graph: &Graph<T>,
    samples: &SpaceTimeSamples<T>,
    certificate: &SamplingCertificate<T>,
    t: T,
    derive_laplacian: bool,
) -> Result<Signal<T>> {
    SpaceTimeReconstructor::from_certificate(graph, samples.clone(), certificate, derive_laplacian)?
        .at(t)
}
