use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::residual::{bitension_from_jet, pseudo_umbilical_residual};
use crate::ambient::Signature;
use crate::error::{Error, Result};
use crate::subgeom::{fit_stencil, mean_curvature_jet, Immersion, DEFAULT_SAMPLES, DEFAULT_STEP};

pub const REPORT_SCHEMA: u32 = 1;
pub const DEFAULT_TOL_RES: f64 = 1e-6;
pub const DEFAULT_TOL_H: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Minimal,
    ProperBiharmonic,
    Biconservative,
    NotBiharmonic,
}

impl Verdict {
    pub const ALL: [Verdict; 4] = [
        Verdict::Minimal,
        Verdict::ProperBiharmonic,
        Verdict::Biconservative,
        Verdict::NotBiharmonic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Minimal => "minimal",
            Verdict::ProperBiharmonic => "proper-biharmonic",
            Verdict::Biconservative => "biconservative",
            Verdict::NotBiharmonic => "not-biharmonic",
        }
    }

    /// Whether this engine verdict meets `expected`. A biconservative
    /// immersion is not biharmonic, so it meets a `NotBiharmonic` expectation.
    pub fn satisfies(self, expected: Verdict) -> bool {
        self == expected || (self == Verdict::Biconservative && expected == Verdict::NotBiharmonic)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Verdict::ALL
            .into_iter()
            .find(|v| v.as_str() == s)
            .ok_or_else(|| format!("unknown verdict `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckOptions {
    pub samples: usize,
    pub seed: u64,
    pub step: f64,
    pub tol_res: f64,
    pub tol_h: f64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            samples: DEFAULT_SAMPLES,
            seed: 0,
            step: DEFAULT_STEP,
            tol_res: DEFAULT_TOL_RES,
            tol_h: DEFAULT_TOL_H,
        }
    }
}

impl CheckOptions {
    /// Defaults with the sample count and seed of `im`.
    pub fn for_immersion(im: &Immersion) -> Self {
        let s = im.sampling();
        CheckOptions {
            samples: s.count,
            seed: s.seed,
            ..CheckOptions::default()
        }
    }
}

/// Residual data at one sample point.
#[derive(Debug, Clone, Serialize)]
pub struct SampleRecord {
    pub u: Vec<f64>,
    pub normal_residual: Vec<f64>,
    pub tangential_residual: Vec<f64>,
    /// Coordinate norm divided by `normalizer`.
    pub normal_norm: f64,
    pub tangential_norm: f64,
    pub normal_norm_raw: f64,
    pub tangential_norm_raw: f64,
    pub normalizer: f64,
    pub h_norm: f64,
    pub h_inner: f64,
    pub pseudo_umbilical: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BiharmonicReport {
    pub schema: u32,
    pub ambient: String,
    pub dim: usize,
    pub codim: usize,
    pub signature: Signature,
    pub options: CheckOptions,
    pub samples: Vec<SampleRecord>,
    pub max_normal: f64,
    pub max_tangential: f64,
    pub max_h_norm: f64,
    pub min_h_norm: f64,
    /// `max <H,H> - min <H,H>` over the samples.
    pub h_inner_spread: f64,
    pub max_pseudo_umbilical: f64,
    pub verdict: Verdict,
    pub warnings: Vec<String>,
}

impl BiharmonicReport {
    pub fn max_residual(&self) -> f64 {
        self.max_normal.max(self.max_tangential)
    }
}

const PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let mut out = 0.0;
    let mut f = 1.0 / base as f64;
    while i > 0 {
        out += f * (i % base) as f64;
        i /= base;
        f /= base as f64;
    }
    out
}

/// Halton points in the domain box shrunk by `margin`, starting at index
/// `seed + 1`.
pub fn sample_points(domain: &[(f64, f64)], count: usize, seed: u64, margin: f64) -> Vec<Vec<f64>> {
    (0..count as u64)
        .map(|k| {
            domain
                .iter()
                .enumerate()
                .map(|(d, &(lo, hi))| {
                    let (a, b) = if hi - lo > 2.0 * margin {
                        (lo + margin, hi - margin)
                    } else {
                        let mid = 0.5 * (lo + hi);
                        (mid, mid)
                    };
                    let base = PRIMES[d % PRIMES.len()];
                    a + (b - a) * radical_inverse(seed + k + 1, base)
                })
                .collect()
        })
        .collect()
}

/// Verdict from per-sample records.
pub fn classify_verdict(samples: &[SampleRecord], tol_res: f64, tol_h: f64) -> Result<Verdict> {
    if samples.is_empty() {
        return Err(Error::NoValidSamples);
    }
    let max = |f: fn(&SampleRecord) -> f64| samples.iter().map(f).fold(0.0, f64::max);
    let h = max(|s| s.h_norm);
    let normal = max(|s| s.normal_norm);
    let tangential = max(|s| s.tangential_norm);
    Ok(if h < tol_h {
        Verdict::Minimal
    } else if normal.max(tangential) < tol_res {
        Verdict::ProperBiharmonic
    } else if tangential < tol_res {
        Verdict::Biconservative
    } else {
        Verdict::NotBiharmonic
    })
}

/// Evaluates `im` at the sample points of `opts` and classifies it.
pub fn check_immersion(im: &Immersion, opts: &CheckOptions) -> Result<BiharmonicReport> {
    if opts.samples == 0 {
        return Err(Error::NoValidSamples);
    }
    let points = sample_points(im.domain(), opts.samples, opts.seed, 4.0 * opts.step);
    let evaluated: Vec<(SampleRecord, Option<String>, usize, Signature)> = points
        .par_iter()
        .map(|u| -> Result<_> {
            let (u, warning) = fit_stencil(im.domain(), u, 2.0 * opts.step)?;
            let jet = mean_curvature_jet(im, &u, opts.step)?;
            let bt = bitension_from_jet(&jet);
            let pg = &jet.geometry;
            Ok((
                SampleRecord {
                    normal_norm: bt.normal_norm(),
                    tangential_norm: bt.tangential_norm(),
                    normal_norm_raw: bt.normal.norm(),
                    tangential_norm_raw: bt.tangential.norm(),
                    normal_residual: bt.normal.as_slice().to_vec(),
                    tangential_residual: bt.tangential.as_slice().to_vec(),
                    normalizer: bt.normalizer,
                    h_norm: bt.h_norm,
                    h_inner: bt.h_inner,
                    pseudo_umbilical: pseudo_umbilical_residual(pg),
                    u,
                },
                warning,
                pg.codim,
                pg.signature,
            ))
        })
        .collect::<Result<_>>()?;

    let (codim, signature) = (evaluated[0].2, evaluated[0].3);
    let mut warnings = Vec::new();
    let mut samples = Vec::with_capacity(evaluated.len());
    for (rec, w, _, sig) in evaluated {
        if sig != signature {
            warnings.push(format!("induced signature changes to {sig:?} at u = {:?}", rec.u));
        }
        warnings.extend(w);
        samples.push(rec);
    }
    let verdict = classify_verdict(&samples, opts.tol_res, opts.tol_h)?;
    let fold = |f: fn(&SampleRecord) -> f64, init: f64, op: fn(f64, f64) -> f64| {
        samples.iter().map(f).fold(init, op)
    };
    let h_max = fold(|s| s.h_inner, f64::NEG_INFINITY, f64::max);
    let h_min = fold(|s| s.h_inner, f64::INFINITY, f64::min);
    Ok(BiharmonicReport {
        schema: REPORT_SCHEMA,
        ambient: im.ambient().descriptor(),
        dim: im.dim(),
        codim,
        signature,
        options: *opts,
        max_normal: fold(|s| s.normal_norm, 0.0, f64::max),
        max_tangential: fold(|s| s.tangential_norm, 0.0, f64::max),
        max_h_norm: fold(|s| s.h_norm, 0.0, f64::max),
        min_h_norm: fold(|s| s.h_norm, f64::INFINITY, f64::min),
        h_inner_spread: h_max - h_min,
        max_pseudo_umbilical: fold(|s| s.pseudo_umbilical, 0.0, f64::max),
        samples,
        verdict,
        warnings,
    })
}
