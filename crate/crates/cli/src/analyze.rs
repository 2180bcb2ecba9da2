//! `analyze`: verdict for one pair, human or JSON, with optional
//! per-ray certificates and a Monte Carlo cross-check.

use std::path::Path;

use tempered::catalog::{build_pair, parse_ref};
use tempered::criterion::{analyze, numeric_oracle, TemperednessReport};
use tempered::fan::Arrangement;
use tempered::linalg::{format_rational, Rational, Vector};
use tempered::weights::HomogeneousPair;
use tempered::{Error, Result};

use crate::pairfile;

pub struct Opts {
    pub json: bool,
    pub certificates: bool,
    pub oracle: Option<usize>,
    pub seed: u64,
    pub max_rank: Option<usize>,
}

/// `catalog:`-prefixed refs hit the built-in table; anything else is a
/// pair file path.
pub fn resolve(target: &str) -> Result<HomogeneousPair> {
    if let Some(rest) = target.strip_prefix("catalog:") {
        build_pair(&parse_ref(rest)?)
    } else {
        pairfile::load(Path::new(target))
    }
}

fn coords(v: &Vector) -> String {
    let parts: Vec<String> = v.0.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn print_human(pair: &HomogeneousPair, report: &TemperednessReport) {
    println!("pair: {}", pair.label());
    println!("chart rank: {}", pair.dim_a());
    println!(
        "hyperplanes: {}, critical rays: {}",
        report.n_hyperplanes, report.n_rays
    );
    println!(
        "kernel compact: {}",
        if report.kernel_compact { "yes" } else { "no" }
    );
    println!("p_exact: {}", report.p.display());
    let even = report
        .p
        .almost_lp_even()
        .map_or_else(|| "inf".to_string(), |k| k.to_string());
    println!("almost-L^p even threshold: {even}");
    println!(
        "verdict: {}",
        if report.tempered { "tempered" } else { "NOT tempered" }
    );
    // The witness is the extremal ray when p is finite, and a direction
    // annihilated by every complement weight when it is not.
    if let Some(w) = &report.witness {
        if report.p.is_finite() {
            println!("extremal ray: {}", coords(w));
        } else {
            println!("witness direction: {}", coords(w));
        }
    }
    for note in &report.notes {
        println!("note: {note}");
    }
}

/// Per-ray table over the full weight arrangement: the verdict is
/// equivalent to rho_h <= rho_q on every listed ray, and the exponent
/// is the largest ratio column.
fn print_certificates(pair: &HomogeneousPair, report: &TemperednessReport) -> Result<()> {
    if pair.dim_a() == 0 {
        println!("certificates: rank-zero chart, nothing to certify");
        return Ok(());
    }
    if !report.kernel_compact {
        if let Some(w) = &report.witness {
            println!(
                "certificate: direction {} kills every complement weight \
                 but not the volume growth",
                coords(w)
            );
        }
        return Ok(());
    }
    let arr = Arrangement::from_weights(pair.dim_a(), &[pair.g()])?;
    let rays = arr.critical_rays()?;
    println!("ray certificates (verdict needs rho_h <= rho_q on every ray):");
    println!("{:<24} {:>10} {:>10} {:>10} {:>10}", "ray", "rho_h", "rho_q", "rho_g", "ratio");
    let mut best: Option<Rational> = None;
    let mut rows = Vec::with_capacity(rays.len());
    for r in &rays {
        let rho_h = pair.rho_h(r)?;
        let rho_q = pair.rho_q(r)?;
        let rho_g = pair.rho_g(r)?;
        let ratio = &rho_g / &rho_q;
        if best.as_ref().is_none_or(|b| ratio > *b) {
            best = Some(ratio.clone());
        }
        rows.push((coords(r), rho_h, rho_q, rho_g, ratio));
    }
    let best = best.expect("critical rays exist when walls span");
    for (ray, rho_h, rho_q, rho_g, ratio) in rows {
        let mark = if ratio == best { "  <- p_exact" } else { "" };
        println!(
            "{:<24} {:>10} {:>10} {:>10} {:>10}{}",
            ray,
            format_rational(&rho_h),
            format_rational(&rho_q),
            format_rational(&rho_g),
            format_rational(&ratio),
            mark
        );
    }
    Ok(())
}

pub fn run(target: &str, opts: &Opts) -> Result<()> {
    let pair = resolve(target)?;
    if let Some(cap) = opts.max_rank {
        if pair.dim_a() > cap {
            return Err(Error::InvalidFamily(format!(
                "chart rank {} exceeds --max-rank {cap}",
                pair.dim_a()
            )));
        }
    }
    let report = analyze(&pair)?;
    if opts.json {
        println!("{}", report.to_json_string(true)?);
    } else {
        print_human(&pair, &report);
    }
    if opts.certificates {
        print_certificates(&pair, &report)?;
    }
    if let Some(samples) = opts.oracle {
        let est = numeric_oracle(&pair, samples, opts.seed)?;
        println!("oracle estimate ({samples} samples, seed {}): {est}", opts.seed);
    }
    Ok(())
}
