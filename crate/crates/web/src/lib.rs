//! WebAssembly bindings behind `www/index.html`.
//!
//! Every export returns a JSON string, or throws a JS `Error` carrying the
//! library's message. The `*_json` functions are the same operations with
//! plain Rust results, so they can be tested natively.

use num_rational::BigRational;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use lenspec::quatarith::{trace_spectrum, Place, QuaternionAlgebra, TraceSpectrum};
use lenspec::rootsys::{bn_cn_pair_lengths, sqrt_closed_form, Family, RootSystem};
use lenspec::{Error, Result};

/// Heights above this make the page unresponsive.
pub const MAX_DEMO_HEIGHT: u64 = 60;

#[derive(Serialize)]
pub struct RatioView {
    pub n: u32,
    pub mu: Vec<String>,
    pub lambda1: String,
    pub lambda2: String,
    pub ratio: String,
    pub ratio_interval: [String; 2],
    pub expected: String,
    pub matches_expected: bool,
}

#[derive(Serialize)]
pub struct ProjectedRoot {
    pub root: Vec<i64>,
    pub x: f64,
    pub y: f64,
    pub simple: bool,
}

#[derive(Serialize)]
pub struct ProjectionView {
    pub family: Family,
    pub rank: u32,
    pub coxeter_number: usize,
    pub roots: Vec<ProjectedRoot>,
}

#[derive(Serialize)]
pub struct SpectrumView {
    pub algebra: String,
    pub ramification: Vec<Place>,
    pub definite: bool,
    pub spectrum: TraceSpectrum,
}

fn parse_rationals(s: &str) -> Result<Vec<BigRational>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<BigRational>().map_err(|_| Error::InvalidInput(format!("not a rational number: {t:?}"))))
        .collect()
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("demo views serialize")
}

/// Length ratio of the `B_n`/`C_n` pair at log coordinates `mu`.
pub fn ratio_json(n: u32, mu: &str, precision: u32) -> Result<String> {
    let mu = parse_rationals(mu)?;
    let pair = bn_cn_pair_lengths(n, &mu, precision)?;
    let expected = BigRational::new((2 * n + 2).into(), (2 * n - 1).into());
    Ok(to_json(&RatioView {
        n,
        mu: mu.iter().map(ToString::to_string).collect(),
        lambda1: sqrt_closed_form(&pair.lambda1_sq),
        lambda2: sqrt_closed_form(&pair.lambda2_sq),
        ratio: sqrt_closed_form(&pair.ratio_sq),
        ratio_interval: pair.ratio.to_decimal_pair(precision),
        expected: sqrt_closed_form(&expected),
        matches_expected: pair.ratio_sq == expected,
    }))
}

#[derive(Clone, Copy)]
struct C(f64, f64);

impl C {
    fn sub(self, o: C) -> C {
        C(self.0 - o.0, self.1 - o.1)
    }
    fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    fn div(self, o: C) -> C {
        let d = o.0 * o.0 + o.1 * o.1;
        C((self.0 * o.0 + self.1 * o.1) / d, (self.1 * o.0 - self.0 * o.1) / d)
    }
    fn norm(self) -> f64 {
        self.0.hypot(self.1)
    }
}

/// Matrix of the Coxeter element `s_1 ⋯ s_r` acting on the ambient space.
fn coxeter_element(simple: &[Vec<f64>], dim: usize) -> Vec<Vec<f64>> {
    let mut m: Vec<Vec<f64>> = (0..dim).map(|i| (0..dim).map(|j| f64::from(i == j)).collect()).collect();
    for a in simple.iter().rev() {
        let aa: f64 = a.iter().map(|x| x * x).sum();
        // left-multiply by the reflection in a
        let cols: Vec<f64> = (0..dim).map(|j| (0..dim).map(|i| a[i] * m[i][j]).sum::<f64>() * 2.0 / aa).collect();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x -= a[i] * cols[j];
            }
        }
    }
    m
}

/// A null vector of `w − ζ` by complex Gaussian elimination.
fn eigenvector(w: &[Vec<f64>], zeta: C) -> Vec<C> {
    let n = w.len();
    let mut m: Vec<Vec<C>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { C(w[i][j], 0.0).sub(zeta) } else { C(w[i][j], 0.0) }).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm())) else { break };
        if m[p][col].norm() < 1e-9 {
            continue;
        }
        m.swap(row, p);
        for r in 0..n {
            if r != row {
                let f = m[r][col].div(m[row][col]);
                for c in col..n {
                    m[r][c] = m[r][c].sub(f.mul(m[row][c]));
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free = (0..n).find(|c| !pivots.contains(c)).unwrap_or(n - 1);
    let mut v = vec![C(0.0, 0.0); n];
    v[free] = C(1.0, 0.0);
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = C(0.0, 0.0).sub(m[r][free].div(m[r][c]));
    }
    v
}

fn orthonormalize(u: &mut [f64], v: &mut [f64]) {
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let nu = dot(u, u).sqrt();
    u.iter_mut().for_each(|x| *x /= nu);
    let k = dot(u, v);
    v.iter_mut().zip(u.iter()).for_each(|(y, x)| *y -= k * x);
    let nv = dot(v, v).sqrt();
    if nv > 1e-9 {
        v.iter_mut().for_each(|y| *y /= nv);
    } else {
        v.iter_mut().for_each(|y| *y = 0.0);
    }
}

/// Roots projected onto the Coxeter plane of the system.
pub fn projection_json(family: &str, rank: u32) -> Result<String> {
    let family: Family = family.parse()?;
    let sys = RootSystem::new(family, rank)?;
    let dim = sys.ambient_dim();
    let simple_int = sys.simple_roots();
    let simple: Vec<Vec<f64>> = simple_int.iter().map(|a| a.iter().map(|&x| x as f64).collect()).collect();
    let h = sys.roots.len() / rank as usize;
    let angle = 2.0 * std::f64::consts::PI / h as f64;
    let v = eigenvector(&coxeter_element(&simple, dim), C(angle.cos(), angle.sin()));
    let (mut u, mut w): (Vec<f64>, Vec<f64>) = v.iter().map(|c| (c.0, c.1)).unzip();
    if u.iter().all(|x| x.abs() < 1e-12) {
        std::mem::swap(&mut u, &mut w);
    }
    orthonormalize(&mut u, &mut w);
    let scale = sys.scale as f64;
    let roots = sys
        .roots
        .iter()
        .map(|r| {
            let proj = |b: &[f64]| r.iter().zip(b).map(|(&x, y)| x as f64 * y).sum::<f64>() / scale;
            ProjectedRoot { root: r.clone(), x: proj(&u), y: proj(&w), simple: simple_int.contains(r) }
        })
        .collect();
    Ok(to_json(&ProjectionView { family, rank, coxeter_number: h, roots }))
}

/// Ramification and hyperbolic trace spectrum of `(a, b)` up to `height`.
pub fn spectrum_json(a: &str, b: &str, height: u64, precision: u32) -> Result<String> {
    if height > MAX_DEMO_HEIGHT {
        return Err(Error::InvalidInput(format!("the demo caps the height at {MAX_DEMO_HEIGHT}")));
    }
    let alg = QuaternionAlgebra::parse(&format!("{a},{b}"))?;
    let spectrum = trace_spectrum(&alg, height, precision)?;
    Ok(to_json(&SpectrumView {
        algebra: alg.to_string(),
        ramification: alg.ramification().to_vec(),
        definite: alg.is_definite(),
        spectrum,
    }))
}

fn js(r: Result<String>) -> std::result::Result<String, JsError> {
    r.map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
pub fn ratio(n: u32, mu: &str, precision: u32) -> std::result::Result<String, JsError> {
    js(ratio_json(n, mu, precision))
}

#[wasm_bindgen]
pub fn root_projection(family: &str, rank: u32) -> std::result::Result<String, JsError> {
    js(projection_json(family, rank))
}

#[wasm_bindgen]
pub fn spectrum(a: &str, b: &str, height: u32, precision: u32) -> std::result::Result<String, JsError> {
    js(spectrum_json(a, b, u64::from(height), precision))
}
