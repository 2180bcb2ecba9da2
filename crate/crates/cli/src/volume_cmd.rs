//! `volume box` and `volume mc`: the flowed-box lab on the command line.
//!
//! Weights files hold a bare multiset in the `g_weights` sub-format of a
//! pair file.  With no `--weights` both subcommands fall back to the
//! rank-one two-line model with weights +1 and -1, the smallest case
//! whose exponent is |y|.

use std::fs;
use std::path::{Path, PathBuf};

use num::ToPrimitive;
use serde_json::Value;
use tempered::linalg::{self, LinearForm, Rational, Vector};
use tempered::volume::{box_volume, mc_volume, BoxSpec, Shape};
use tempered::weights::WeightMultiset;
use tempered::{Error, Result};

use crate::pairfile;

fn default_model() -> WeightMultiset {
    let mut w = WeightMultiset::new(1);
    w.insert(LinearForm::from_ints(&[1]), 1).expect("rank one");
    w.insert(LinearForm::from_ints(&[-1]), 1).expect("rank one");
    w
}

fn load_weights(path: Option<&PathBuf>) -> Result<WeightMultiset> {
    match path {
        None => Ok(default_model()),
        Some(p) => pairfile::load_multiset(p),
    }
}

/// One chart point per `--Y`, components comma-separated rationals.
fn parse_point(s: &str, dim: usize) -> Result<Vector> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != dim {
        return Err(Error::InvalidFamily(format!(
            "chart point {s:?} has {} coordinates, the weights have rank {dim}",
            parts.len()
        )));
    }
    let coords: Result<Vec<Rational>> =
        parts.iter().map(|p| linalg::parse_rational(p)).collect();
    Ok(Vector(coords?))
}

/// Default Y grid: `count` points evenly spaced on [-3, 3], exact.
fn grid_points(count: usize) -> Result<Vec<Vector>> {
    if count < 2 {
        return Err(Error::InvalidFamily(
            "the default grid needs at least 2 points".to_string(),
        ));
    }
    let six = Rational::from_integer(6.into());
    let three = Rational::from_integer(3.into());
    let steps = Rational::from_integer((count as i64 - 1).into());
    Ok((0..count)
        .map(|k| {
            let t = Rational::from_integer((k as i64).into());
            Vector(vec![&six * &t / &steps - &three])
        })
        .collect())
}

fn resolve_points(y: &[String], grid: usize, weights: &WeightMultiset) -> Result<Vec<Vector>> {
    let dim = weights.dim_a();
    if !y.is_empty() {
        return y.iter().map(|s| parse_point(s, dim)).collect();
    }
    if dim != 1 {
        return Err(Error::InvalidFamily(format!(
            "the default grid is rank-one; pass --Y for rank {dim}"
        )));
    }
    grid_points(grid)
}

fn point_label(y: &Vector) -> String {
    let parts: Vec<String> = y.0.iter().map(linalg::format_rational).collect();
    parts.join(";")
}

fn rat_f64(r: &Rational) -> f64 {
    r.to_f64().expect("rational in f64 range")
}

pub fn run_box(
    weights_path: Option<&PathBuf>,
    half_width: &str,
    y: &[String],
    grid: usize,
    csv: bool,
) -> Result<()> {
    let weights = load_weights(weights_path)?;
    let s = linalg::parse_rational(half_width)?;
    let spec = BoxSpec::uniform(&weights, &s)?;
    let points = resolve_points(y, grid, &weights)?;
    if csv {
        println!("y,exponent,vol_b");
    }
    for p in &points {
        let out = box_volume(&spec, p)?;
        if csv {
            println!(
                "{},{},{}",
                point_label(p),
                linalg::format_rational(&out.log_ratio_exponent),
                linalg::format_rational(&out.vol_b)
            );
        } else {
            println!("y: {}", point_label(p));
            println!("exponent: {}", linalg::format_rational(&out.log_ratio_exponent));
            println!("vol_B: {}", linalg::format_rational(&out.vol_b));
        }
    }
    Ok(())
}

fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidFamily(format!("bad number {p:?}")))
        })
        .collect()
}

fn load_cloud(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Schema {
        pointer: String::new(),
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    let doc: Value = serde_json::from_str(&text).map_err(|e| Error::Schema {
        pointer: String::new(),
        message: format!("invalid JSON: {e}"),
    })?;
    serde_json::from_value(doc).map_err(|e| Error::Schema {
        pointer: String::new(),
        message: format!("expected an array of coordinate arrays: {e}"),
    })
}

pub struct McShape<'a> {
    pub shape: &'a str,
    pub radius: f64,
    pub half_widths: Option<&'a str>,
    pub points: Option<&'a PathBuf>,
}

fn build_shape(opts: &McShape) -> Result<Shape> {
    match opts.shape {
        "ball" => Ok(Shape::Ball { radius: opts.radius }),
        "box" => {
            let hw = opts.half_widths.ok_or_else(|| {
                Error::InvalidFamily("--shape box needs --half-widths".to_string())
            })?;
            Ok(Shape::Box {
                half_widths: parse_f64_list(hw)?,
            })
        }
        "cloud" => {
            let path = opts.points.ok_or_else(|| {
                Error::InvalidFamily("--shape cloud needs --points FILE".to_string())
            })?;
            Ok(Shape::Cloud {
                points: load_cloud(path)?,
            })
        }
        other => Err(Error::InvalidFamily(format!(
            "unknown shape {other:?}; expected ball, box, or cloud"
        ))),
    }
}

/// Rows: chart point, exact exponent of the box identity, raw estimate,
/// estimate rescaled by e^{exponent}.  The rescaled column is the one
/// that stays within constant bounds along rays.
pub fn run_mc(
    weights_path: Option<&PathBuf>,
    shape: &McShape,
    y: &[String],
    grid: usize,
    n: usize,
    seed: u64,
) -> Result<()> {
    let weights = load_weights(weights_path)?;
    let shape = build_shape(shape)?;
    let points = resolve_points(y, grid, &weights)?;
    println!("y,exact_exponent,mc_estimate,normalized");
    for p in &points {
        let exponent = weights.rho(p)?;
        let floats: Vec<f64> = p.0.iter().map(rat_f64).collect();
        let est = mc_volume(&weights, &shape, &floats, n, seed)?;
        let normalized = est * rat_f64(&exponent).exp();
        println!(
            "{},{},{},{}",
            point_label(p),
            linalg::format_rational(&exponent),
            est,
            normalized
        );
    }
    Ok(())
}
