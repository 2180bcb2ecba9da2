//! Volume lab: exact box intersections and Monte Carlo volume estimates
//! for the diagonal flow on a weight-line decomposition.
//!
//! A weight multiset splits the module into one-dimensional lines; the
//! flow at chart point Y scales the line with weight w by e^{w(Y)}.  The
//! box routine intersects symmetric intervals line by line with symbolic
//! endpoints, so its exponent is an independent check of the support
//! function in `weights`.  The Monte Carlo routine estimates the same
//! intersection volume for balls, boxes, and point-cloud hulls.

use num::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Error;
use crate::linalg::{LinearForm, Rational, Vector};
use crate::weights::WeightMultiset;
use crate::Result;

// Exact box intersections --------------------------------------------------

/// A product of symmetric intervals, one per weight line.  Weights of
/// multiplicity m contribute m independent lines; zero weights contribute
/// lines that the flow never rescales.
#[derive(Clone, Debug)]
pub struct BoxSpec {
    dim_a: usize,
    lines: Vec<(LinearForm, Rational)>,
}

/// Half-width s scaled by e^{exp}; the symbolic endpoint of an interval.
#[derive(Clone)]
struct ScaledHalfWidth {
    s: Rational,
    exp: Rational,
}

impl ScaledHalfWidth {
    /// Intersection of two symmetric intervals with the same base
    /// half-width: the smaller exponential factor wins.
    fn intersect_same_base(self, other: ScaledHalfWidth) -> Result<ScaledHalfWidth> {
        if self.s != other.s {
            return Err(Error::Internal(
                "interval intersection with mismatched base widths".to_string(),
            ));
        }
        if other.exp < self.exp {
            Ok(other)
        } else {
            Ok(self)
        }
    }
}

impl BoxSpec {
    pub fn new(dim_a: usize, lines: Vec<(LinearForm, Rational)>) -> Result<BoxSpec> {
        for (i, (form, s)) in lines.iter().enumerate() {
            if form.dim() != dim_a {
                return Err(Error::DimensionMismatch {
                    expected: dim_a,
                    got: form.dim(),
                });
            }
            if !s.is_positive() {
                return Err(Error::Schema {
                    pointer: format!("/half_widths/{i}"),
                    message: "half-widths must be positive".to_string(),
                });
            }
        }
        Ok(BoxSpec { dim_a, lines })
    }

    /// One line per weight copy plus the unscaled zero lines, all with the
    /// same half-width.
    pub fn uniform(weights: &WeightMultiset, s: &Rational) -> Result<BoxSpec> {
        let mut lines = Vec::new();
        for (form, mult) in weights.iter() {
            for _ in 0..mult {
                lines.push((form.clone(), s.clone()));
            }
        }
        for _ in 0..weights.dim_zero() {
            lines.push((LinearForm::zeros(weights.dim_a()), s.clone()));
        }
        BoxSpec::new(weights.dim_a(), lines)
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn lines(&self) -> &[(LinearForm, Rational)] {
        &self.lines
    }
}

/// Exact outcome of intersecting a flowed box with itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeResult {
    /// The exact t in vol(e^Y B meet B) = vol(B) e^{-t}.
    pub log_ratio_exponent: Rational,
    /// vol(B): the product of the interval lengths.
    pub vol_b: Rational,
}

/// Intersects e^Y B with B line by line.  On the line with weight w the
/// flowed copy of [-s, s] is e^{w(Y)}[-s, s]; pulling the intersection
/// back along the flow of the first factor, the surviving interval is
/// s e^{-w(Y)+} in half-width.  The exponent is read off the surviving
/// endpoints, not from any support-function code.
pub fn box_volume(spec: &BoxSpec, y: &Vector) -> Result<VolumeResult> {
    if y.dim() != spec.dim_a {
        return Err(Error::DimensionMismatch {
            expected: spec.dim_a,
            got: y.dim(),
        });
    }
    let two = Rational::from_integer(2.into());
    let mut exponent = Rational::zero();
    let mut vol_b = Rational::from_integer(1.into());
    for (form, s) in &spec.lines {
        let t = form.eval(y)?;
        let original = ScaledHalfWidth {
            s: s.clone(),
            exp: Rational::zero(),
        };
        let flowed = ScaledHalfWidth {
            s: s.clone(),
            exp: -t,
        };
        let surviving = original.intersect_same_base(flowed)?;
        exponent -= surviving.exp;
        vol_b *= &two * s;
    }
    Ok(VolumeResult {
        log_ratio_exponent: exponent,
        vol_b,
    })
}

// Monte Carlo ---------------------------------------------------------------

/// Solid region the flow acts on; lives in the expanded line space.
#[derive(Clone, Debug)]
pub enum Shape {
    Ball { radius: f64 },
    Box { half_widths: Vec<f64> },
    /// Convex hull of a finite point cloud; membership decided by an
    /// exact feasibility LP on dyadically rounded coordinates.
    Cloud { points: Vec<Vec<f64>> },
}

impl Shape {
    fn dim(&self, ambient: usize) -> usize {
        match self {
            Shape::Ball { .. } => ambient,
            Shape::Box { half_widths } => half_widths.len(),
            Shape::Cloud { points } => points.first().map_or(0, Vec::len),
        }
    }

    /// Per-axis half-widths of an enclosing box.
    fn bounding_half_widths(&self, dim: usize) -> Vec<f64> {
        match self {
            Shape::Ball { radius } => vec![*radius; dim],
            Shape::Box { half_widths } => half_widths.clone(),
            Shape::Cloud { points } => (0..dim)
                .map(|i| points.iter().map(|p| p[i].abs()).fold(0.0, f64::max))
                .collect(),
        }
    }

    fn contains(&self, x: &[f64], hull: Option<&HullTester>) -> bool {
        match self {
            Shape::Ball { radius } => {
                x.iter().map(|v| v * v).sum::<f64>() <= radius * radius
            }
            Shape::Box { half_widths } => {
                x.iter().zip(half_widths).all(|(v, s)| v.abs() <= *s)
            }
            Shape::Cloud { .. } => hull.expect("hull tester prepared").contains(x),
        }
    }
}

/// Dyadic grid used to keep LP coordinates small while perturbing sample
/// points by less than 1e-6.
const DYADIC_BITS: i64 = 20;

fn dyadic(v: f64) -> Rational {
    let scale = (1i64 << DYADIC_BITS) as f64;
    Rational::new(
        num::BigInt::from((v * scale).round() as i64),
        num::BigInt::from(1i64 << DYADIC_BITS),
    )
}

struct HullTester {
    points: Vec<Vec<Rational>>,
    dim: usize,
}

impl HullTester {
    fn new(points: &[Vec<f64>], dim: usize) -> HullTester {
        HullTester {
            points: points
                .iter()
                .map(|p| p.iter().map(|&v| dyadic(v)).collect())
                .collect(),
            dim,
        }
    }

    /// x in conv(points) iff there are c_i >= 0 with sum c_i = 1 and
    /// sum c_i p_i = x: a phase-1 feasibility problem in equality form.
    fn contains(&self, x: &[f64]) -> bool {
        let k = self.points.len();
        let mut a: Vec<Vec<Rational>> = Vec::with_capacity(self.dim + 1);
        let mut b: Vec<Rational> = Vec::with_capacity(self.dim + 1);
        for axis in 0..self.dim {
            a.push(self.points.iter().map(|p| p[axis].clone()).collect());
            b.push(dyadic(x[axis]));
        }
        a.push(vec![Rational::from_integer(1.into()); k]);
        b.push(Rational::from_integer(1.into()));
        equality_system_feasible(&a, &b)
    }
}

/// Phase-1 simplex with Bland's rule for {c : A c = b, c >= 0}.
fn equality_system_feasible(a: &[Vec<Rational>], b: &[Rational]) -> bool {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    // Tableau columns: n structural, m artificial, then the rhs; rows are
    // sign-normalized so every artificial starts feasible.
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let mut row = vec![Rational::zero(); n + m + 1];
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = Rational::from_integer(1.into());
        row[n + m] = if flip { -b[i].clone() } else { b[i].clone() };
        t.push(row);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| n + i).collect();
    loop {
        // Reduced cost of structural column j under the phase-1 objective.
        let mut entering = None;
        for j in 0..n {
            if basis.contains(&j) {
                continue;
            }
            let mut rc = Rational::zero();
            for i in 0..m {
                if basis[i] >= n {
                    rc -= &t[i][j];
                }
            }
            if rc.is_negative() {
                entering = Some(j);
                break;
            }
        }
        let Some(e) = entering else {
            let cost: Rational = (0..m)
                .filter(|&i| basis[i] >= n)
                .map(|i| t[i][n + m].clone())
                .sum();
            return cost.is_zero();
        };
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if t[i][e].is_positive() {
                let better = match leave {
                    None => true,
                    Some(l) => {
                        let ri = &t[i][n + m] / &t[i][e];
                        let rl = &t[l][n + m] / &t[l][e];
                        ri < rl || (ri == rl && basis[i] < basis[l])
                    }
                };
                if better {
                    leave = Some(i);
                }
            }
        }
        let Some(l) = leave else {
            // A feasibility problem with bounded artificial cost cannot be
            // unbounded; bail out conservatively.
            return false;
        };
        let piv = t[l][e].clone();
        for v in t[l].iter_mut() {
            *v /= &piv;
        }
        for i in 0..m {
            if i == l || t[i][e].is_zero() {
                continue;
            }
            let factor = t[i][e].clone();
            for j in 0..=(n + m) {
                let delta = &factor * &t[l][j];
                t[i][j] -= delta;
            }
        }
        basis[l] = e;
    }
}

fn rat_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(0.0) / r.denom().to_f64().unwrap_or(1.0)
}

/// Expanded per-line weight values w(Y) as floats, zero lines included.
fn line_rates(weights: &WeightMultiset, y: &[f64]) -> Result<Vec<f64>> {
    if y.len() != weights.dim_a() {
        return Err(Error::DimensionMismatch {
            expected: weights.dim_a(),
            got: y.len(),
        });
    }
    let mut rates = Vec::with_capacity(weights.total_dim());
    for (form, mult) in weights.iter() {
        let rate: f64 = form.0.iter().zip(y).map(|(c, v)| rat_f64(c) * v).sum();
        for _ in 0..mult {
            rates.push(rate);
        }
    }
    for _ in 0..weights.dim_zero() {
        rates.push(0.0);
    }
    Ok(rates)
}

const MC_CHUNK: usize = 8192;

/// Hit-or-miss estimate of vol(C meet e^{-Y} C): a sample point x from the
/// bounding box of C counts when x and the flowed point e^{Y} x both lie
/// in C.  For volume-preserving weights this equals vol(e^{Y} C meet C).
/// Samples come in fixed-size seeded substreams, so the result is
/// deterministic for a given seed and independent of the worker count.
pub fn mc_volume(
    weights: &WeightMultiset,
    shape: &Shape,
    y: &[f64],
    n: usize,
    seed: u64,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::Internal("mc_volume needs n >= 1".to_string()));
    }
    let rates = line_rates(weights, y)?;
    let dim = rates.len();
    if shape.dim(dim) != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: shape.dim(dim),
        });
    }
    let half = shape.bounding_half_widths(dim);
    let box_vol: f64 = half.iter().map(|s| 2.0 * s).product();
    if box_vol == 0.0 {
        return Ok(0.0);
    }
    let hull = match shape {
        Shape::Cloud { points } => Some(HullTester::new(points, dim)),
        _ => None,
    };
    let flow: Vec<f64> = rates.iter().map(|r| r.exp()).collect();

    let chunks = n.div_ceil(MC_CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk as u64 + 1);
            let count = MC_CHUNK.min(n - chunk * MC_CHUNK);
            let mut local = 0u64;
            let mut x = vec![0.0f64; dim];
            let mut pulled = vec![0.0f64; dim];
            for _ in 0..count {
                for (v, s) in x.iter_mut().zip(&half) {
                    *v = (2.0 * rng.gen::<f64>() - 1.0) * s;
                }
                if !shape.contains(&x, hull.as_ref()) {
                    continue;
                }
                for i in 0..dim {
                    pulled[i] = x[i] * flow[i];
                }
                if shape.contains(&pulled, hull.as_ref()) {
                    local += 1;
                }
            }
            local
        })
        .sum();
    Ok(box_vol * hits as f64 / n as f64)
}
