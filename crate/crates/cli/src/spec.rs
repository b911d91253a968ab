//! Immersion spec files (TOML).
//!
//! ```toml
//! [ambient]
//! kind = "sphere"        # flat | sphere | hyperbolic | chart
//! dim = 4
//! index = 0
//! radius = 1.0           # sphere and hyperbolic only
//! # chart only:
//! # coords = ["x", "y"]
//! # metric = [["1", "0"], ["0", "exp(2*x)"]]
//!
//! [immersion]
//! params = ["a", "b", "c"]
//! components = ["...", "..."]
//! domain = [[0.4, 2.7], [0.4, 2.7], [0.4, 2.7]]
//!
//! [check]                # optional
//! samples = 25
//! seed = 0
//! step = 1e-3
//! tol_res = 1e-6
//! tol_h = 1e-3
//! ```

use std::cmp::Ordering;
use std::path::Path;

use anyhow::{bail, Context, Result};
use biharm::{parse, AmbientSpace, Chart, CheckOptions, Expr, Immersion};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AmbientKind {
    Flat,
    Sphere,
    Hyperbolic,
    Chart,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmbientBlock {
    pub kind: AmbientKind,
    pub dim: Option<usize>,
    #[serde(default)]
    pub index: usize,
    pub radius: Option<f64>,
    pub coords: Option<Vec<String>>,
    pub metric: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImmersionBlock {
    pub params: Vec<String>,
    pub components: Vec<String>,
    pub domain: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckBlock {
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub step: Option<f64>,
    pub tol_res: Option<f64>,
    pub tol_h: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub ambient: AmbientBlock,
    pub immersion: ImmersionBlock,
    #[serde(default)]
    pub check: CheckBlock,
}

fn expr_at(text: &str, location: &str) -> Result<Expr> {
    parse(text).with_context(|| format!("{location}: cannot parse `{text}`"))
}

impl SpecFile {
    pub fn read(path: &Path) -> Result<SpecFile> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        SpecFile::parse(&text).with_context(|| format!("in {}", path.display()))
    }

    pub fn parse(text: &str) -> Result<SpecFile> {
        Ok(toml::from_str(text)?)
    }

    pub fn ambient(&self) -> Result<AmbientSpace> {
        let a = &self.ambient;
        let dim = || a.dim.context("ambient.dim is required");
        let radius = || a.radius.context("ambient.radius is required");
        let space = match a.kind {
            AmbientKind::Flat => AmbientSpace::flat(dim()?, a.index)?,
            AmbientKind::Sphere => AmbientSpace::sphere(dim()?, a.index, radius()?)?,
            AmbientKind::Hyperbolic => AmbientSpace::hyperbolic(dim()?, a.index, radius()?)?,
            AmbientKind::Chart => {
                let coords = a.coords.clone().context("ambient.coords is required for a chart")?;
                let rows = a.metric.as_ref().context("ambient.metric is required for a chart")?;
                let metric = rows
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, t)| expr_at(t, &format!("ambient.metric[{i}][{j}]")))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                AmbientSpace::Chart(Chart::new(coords, metric).context("ambient.metric")?)
            }
        };
        Ok(space)
    }

    pub fn immersion(&self) -> Result<Immersion> {
        let im = &self.immersion;
        let components = im
            .components
            .iter()
            .enumerate()
            .map(|(i, t)| expr_at(t, &format!("immersion.components[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        for (i, [lo, hi]) in im.domain.iter().enumerate() {
            if lo.partial_cmp(hi) != Some(Ordering::Less) {
                bail!("immersion.domain[{i}]: interval [{lo}, {hi}] is empty");
            }
        }
        let domain = im.domain.iter().map(|[lo, hi]| (*lo, *hi)).collect();
        Ok(Immersion::new(im.params.clone(), self.ambient()?, components, domain)?)
    }

    /// Check options from the file, falling back to the defaults.
    pub fn options(&self) -> CheckOptions {
        let d = CheckOptions::default();
        let c = &self.check;
        CheckOptions {
            samples: c.samples.unwrap_or(d.samples),
            seed: c.seed.unwrap_or(d.seed),
            step: c.step.unwrap_or(d.step),
            tol_res: c.tol_res.unwrap_or(d.tol_res),
            tol_h: c.tol_h.unwrap_or(d.tol_h),
        }
    }
}
