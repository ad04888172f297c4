//! Text formats: edge lists, signals and space-time samples in, CSV out.
//!
//! Input files are line oriented; fields are separated by whitespace or
//! commas and `#` starts a comment. Every CSV artifact opens with a `#`
//! preamble holding the artifact version and the [`RunConfig`] that
//! produced it.

use std::fmt::Write as _;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{GeneratorSpec, LemmaReport};
use crate::graph::{Graph, MeasureMode, Signal, VertexSet};
use crate::sampling::{DualFrame, SamplingCertificate};
use crate::scalar::Real;
use crate::spacetime::SpaceTimeSamples;
use crate::spectral::Spectrum;

pub const ARTIFACT_VERSION: u32 = 1;

/// Everything needed to replay a command.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_trunc: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_grid: Option<String>,
    pub measure: MeasureMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derive_laplacian: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

/// The `#` preamble written at the top of every artifact.
pub fn artifact_header(config: &RunConfig) -> String {
    let json = serde_json::to_string(config).expect("run config serializes");
    format!("# pwsample artifact v{ARTIFACT_VERSION}\n# config: {json}\n")
}

/// Recovers the run config from an artifact's preamble.
pub fn parse_artifact_header(text: &str) -> Result<RunConfig> {
    for (i, line) in text.lines().enumerate() {
        if !line.starts_with('#') {
            break;
        }
        if let Some(json) = line.strip_prefix("# config: ") {
            return serde_json::from_str(json).map_err(|e| Error::Parse {
                line: i + 1,
                message: format!("bad run config: {e}"),
            });
        }
    }
    Err(Error::Parse {
        line: 1,
        message: "no run config in header".into(),
    })
}

/// 17 significant digits, enough to round-trip an `f64`.
pub fn fmt_float<T: Real>(x: T) -> String {
    format!("{:.16e}", x.to_f64().unwrap_or(f64::NAN))
}

fn fields(line: &str) -> Vec<&str> {
    line.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .collect()
}

// (1-based line number, fields) for every non-blank, non-comment line
fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, fields(line)))
        }
    })
}

fn parse_num(line: usize, what: &str, s: &str) -> Result<f64> {
    s.parse::<f64>().map_err(|_| Error::Parse {
        line,
        message: format!("malformed {what} {s:?}"),
    })
}

/// Edge-list lines `u v [w]`; `w` defaults to 1.
pub fn parse_edge_list(text: &str) -> Result<Vec<(String, String, f64)>> {
    let mut edges = Vec::new();
    for (line, f) in data_lines(text) {
        match f.as_slice() {
            [u, v] => edges.push((u.to_string(), v.to_string(), 1.0)),
            [u, v, w] => edges.push((u.to_string(), v.to_string(), parse_num(line, "weight", w)?)),
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected `u v [w]`, found {} fields", f.len()),
                })
            }
        }
    }
    Ok(edges)
}

/// Parses and validates a graph; an edge list without edges is rejected.
pub fn read_graph<T: Real>(text: &str, mode: MeasureMode) -> Result<Graph<T>> {
    let edges = parse_edge_list(text)?;
    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Graph::new(
        Vec::<String>::new(),
        edges.into_iter().map(|(u, v, w)| (u, v, T::lit(w))),
        mode,
    )
}

pub fn write_edge_list<T: Real>(graph: &Graph<T>, config: &RunConfig) -> String {
    let mut out = artifact_header(config);
    for (i, j, w) in graph.edges() {
        let _ = writeln!(
            out,
            "{} {} {}",
            graph.vertex(i),
            graph.vertex(j),
            fmt_float(w)
        );
    }
    out
}

fn parse_complex(line: usize, f: &[&str]) -> Result<Complex<f64>> {
    match f {
        [re] => Ok(Complex::new(parse_num(line, "real part", re)?, 0.0)),
        [re, im] => Ok(Complex::new(
            parse_num(line, "real part", re)?,
            parse_num(line, "imaginary part", im)?,
        )),
        _ => Err(Error::Parse {
            line,
            message: "expected `re [im]`".into(),
        }),
    }
}

fn vertex_at<T: Real>(graph: &Graph<T>, line: usize, v: &str) -> Result<usize> {
    graph.index_of(v).map_err(|_| Error::Parse {
        line,
        message: format!("unknown vertex {v}"),
    })
}

fn complex_of<T: Real>(z: Complex<f64>) -> Complex<T> {
    Complex::new(T::lit(z.re), T::lit(z.im))
}

/// Signal lines `v re [im]`, one per vertex.
pub fn read_signal<T: Real>(graph: &Graph<T>, text: &str) -> Result<Signal<T>> {
    let mut values: Vec<Option<Complex<T>>> = vec![None; graph.vertex_count()];
    for (line, f) in data_lines(text) {
        if f.len() < 2 {
            return Err(Error::Parse {
                line,
                message: "expected `v re [im]`".into(),
            });
        }
        let v = vertex_at(graph, line, f[0])?;
        if values[v].is_some() {
            return Err(Error::Parse {
                line,
                message: format!("vertex {} listed twice", f[0]),
            });
        }
        values[v] = Some(complex_of(parse_complex(line, &f[1..])?));
    }
    let values = values
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            x.ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "signal has no value for vertex {}",
                    graph.vertex(i)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Signal::new(graph, values)
}

/// Space-time sample lines `k v re [im]` for `g(kπ/omega, v)`, plus optional
/// `laplacian v re [im]` lines carrying `(Δf)(v)`.
pub fn read_spacetime_samples<T: Real>(
    graph: &Graph<T>,
    set: &VertexSet,
    omega: T,
    k_trunc: usize,
    text: &str,
) -> Result<SpaceTimeSamples<T>> {
    let mut entries = Vec::new();
    let mut laplacian = Vec::new();
    for (line, f) in data_lines(text) {
        if f.len() < 3 {
            return Err(Error::Parse {
                line,
                message: "expected `k v re [im]` or `laplacian v re [im]`".into(),
            });
        }
        let v = vertex_at(graph, line, f[1])?;
        let z = complex_of(parse_complex(line, &f[2..])?);
        if f[0].eq_ignore_ascii_case("laplacian") {
            laplacian.push((v, z));
        } else {
            let k = f[0].parse::<i64>().map_err(|_| Error::Parse {
                line,
                message: format!("malformed sample index {:?}", f[0]),
            })?;
            entries.push((k, v, z));
        }
    }
    let laplacian = (!laplacian.is_empty()).then_some(laplacian);
    SpaceTimeSamples::from_entries(graph, set.clone(), omega, k_trunc, entries, laplacian)
}

pub fn write_spacetime_samples<T: Real>(
    graph: &Graph<T>,
    samples: &SpaceTimeSamples<T>,
    config: &RunConfig,
) -> String {
    let mut out = artifact_header(config);
    let k = samples.k_trunc() as i64;
    let ids = samples.set().indices();
    for kk in -k..=k {
        for (r, &v) in ids.iter().enumerate() {
            let z = samples.value(kk, r).expect("in window");
            let _ = writeln!(
                out,
                "{kk} {} {} {}",
                graph.vertex(v),
                fmt_float(z.re),
                fmt_float(z.im)
            );
        }
    }
    if let Some(lap) = samples.laplacian_on_set() {
        for (z, &v) in lap.iter().zip(ids) {
            let _ = writeln!(
                out,
                "laplacian {} {} {}",
                graph.vertex(v),
                fmt_float(z.re),
                fmt_float(z.im)
            );
        }
    }
    out
}

/// Comma-separated vertex identifiers.
pub fn parse_vertex_list<T: Real>(graph: &Graph<T>, list: &str) -> Result<VertexSet> {
    let ids: Vec<&str> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    VertexSet::from_ids(graph, ids)
}

/// `start:stop:step` with `step > 0`; `stop` is included when it lies on the grid.
/// `start > stop` yields no points.
pub fn parse_t_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = |m: &str| Error::InvalidArgument(format!("bad t-grid {spec:?}: {m}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, h] = parts.as_slice() else {
        return Err(bad("expected start:stop:step"));
    };
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let (a, b, h) = (num(a)?, num(b)?, num(h)?);
    if !(a.is_finite() && b.is_finite() && h.is_finite()) || h <= 0.0 {
        return Err(bad("need finite bounds and a positive step"));
    }
    if a > b {
        return Ok(Vec::new());
    }
    let n = ((b - a) / h * (1.0 + 1e-12)).floor() as usize;
    Ok((0..=n).map(|i| a + i as f64 * h).collect())
}

pub fn spectrum_csv<T: Real>(
    graph: &Graph<T>,
    spectrum: &Spectrum<T>,
    config: &RunConfig,
) -> String {
    let mut out = artifact_header(config);
    out.push_str("j,lambda");
    for v in graph.vertices() {
        let _ = write!(out, ",{v}");
    }
    out.push('\n');
    for (j, &l) in spectrum.eigenvalues().iter().enumerate() {
        let _ = write!(out, "{j},{}", fmt_float(l));
        for v in 0..graph.vertex_count() {
            let _ = write!(out, ",{}", fmt_float(spectrum.eigenvector_entry(j, v)));
        }
        out.push('\n');
    }
    out
}

pub const CERTIFICATE_COLUMNS: &str = "set,omega,K_S,D_S,sigma,poincare_complement,c,C";

/// One row per certificate; set members are joined with `;`.
pub fn certificate_csv<T: Real>(
    graph: &Graph<T>,
    certificates: &[SamplingCertificate<T>],
    config: &RunConfig,
) -> String {
    let mut out = artifact_header(config);
    out.push_str(CERTIFICATE_COLUMNS);
    out.push('\n');
    for c in certificates {
        let ids: Vec<&str> = c.set.indices().iter().map(|&i| graph.vertex(i)).collect();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            ids.join(";"),
            fmt_float(c.omega),
            fmt_float(c.k_s),
            fmt_float(c.d_s),
            fmt_float(c.sigma),
            fmt_float(c.poincare_complement),
            fmt_float(c.frame.lower),
            fmt_float(c.frame.upper),
        );
    }
    out
}

pub fn signal_csv<T: Real>(graph: &Graph<T>, f: &Signal<T>, config: &RunConfig) -> String {
    let mut out = artifact_header(config);
    out.push_str("v,re,im\n");
    for (i, z) in f.values().iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{}",
            graph.vertex(i),
            fmt_float(z.re),
            fmt_float(z.im)
        );
    }
    out
}

/// `(file name, contents)` per dual frame element, named `dual_<s>.csv`.
pub fn dual_frame_files<T: Real>(
    graph: &Graph<T>,
    dual: &DualFrame<T>,
    config: &RunConfig,
) -> Vec<(String, String)> {
    dual.set
        .indices()
        .iter()
        .zip(&dual.frames)
        .map(|(&s, phi)| {
            (
                format!("dual_{}.csv", graph.vertex(s)),
                signal_csv(graph, phi, config),
            )
        })
        .collect()
}

/// Rows `t,v,re,im,norm`; `norm` is `‖g(t)‖`, repeated on each row of a time slice.
pub fn time_series_csv<T: Real>(
    graph: &Graph<T>,
    series: &[(T, Signal<T>)],
    config: &RunConfig,
) -> Result<String> {
    let mut out = artifact_header(config);
    out.push_str("t,v,re,im,norm\n");
    for (t, g) in series {
        let norm = fmt_float(graph.norm(g)?);
        for (i, z) in g.values().iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{},{norm}",
                fmt_float(*t),
                graph.vertex(i),
                fmt_float(z.re),
                fmt_float(z.im)
            );
        }
    }
    Ok(out)
}

/// `(t, reconstruction, ground truth)`.
pub type ReconstructionRow<T> = (T, Signal<T>, Option<Signal<T>>);

/// Rows `t,v,re,im,abs_err`; `abs_err` is left empty without ground truth.
pub fn reconstruction_csv<T: Real>(
    graph: &Graph<T>,
    rows: &[ReconstructionRow<T>],
    config: &RunConfig,
) -> String {
    let mut out = artifact_header(config);
    out.push_str("t,v,re,im,abs_err\n");
    for (t, g, truth) in rows {
        for (i, z) in g.values().iter().enumerate() {
            let err = truth
                .as_ref()
                .map(|h| fmt_float((*z - h[i]).norm()))
                .unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{err}",
                fmt_float(*t),
                graph.vertex(i),
                fmt_float(z.re),
                fmt_float(z.im)
            );
        }
    }
    out
}

pub fn lemma_report_csv<T: Real>(report: &LemmaReport<T>, config: &RunConfig) -> String {
    let mut out = artifact_header(config);
    out.push_str("item,pass,residual\n");
    for item in report
        .items
        .iter()
        .chain(std::iter::once(&report.sharpness))
    {
        let _ = writeln!(
            out,
            "\"{}\",{},{}",
            item.name,
            item.pass,
            fmt_float(item.residual)
        );
    }
    out
}

pub fn lemma_report_text<T: Real>(report: &LemmaReport<T>) -> String {
    let mut out = format!(
        "complete bipartite K_{{{},{}}}, S = {}-side\n",
        report.n, report.m, report.n
    );
    for item in report
        .items
        .iter()
        .chain(std::iter::once(&report.sharpness))
    {
        let _ = writeln!(
            out,
            "  {:<5} {:<40} residual {}",
            if item.pass { "PASS" } else { "FAIL" },
            item.name,
            fmt_float(item.residual)
        );
    }
    let _ = writeln!(
        out,
        "overall: {}",
        if report.all_pass() { "PASS" } else { "FAIL" }
    );
    out
}
