use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::ambient::AmbientSpace;
use crate::error::{Error, Result};
use crate::expr::{parse, Expr, Tape};

/// Default number of sample points per immersion.
pub const DEFAULT_SAMPLES: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SamplePolicy {
    pub count: usize,
    pub seed: u64,
}

impl Default for SamplePolicy {
    fn default() -> Self {
        SamplePolicy {
            count: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

/// An `m`-parameter map into an ambient space, with a closed domain box.
///
/// Components are ambient coordinates: flat coordinates for flat ambients,
/// embedding coordinates for quadrics, chart coordinates for charts.
#[derive(Debug, Clone)]
pub struct Immersion {
    params: Vec<String>,
    ambient: AmbientSpace,
    components: Vec<Expr>,
    domain: Vec<(f64, f64)>,
    sampling: SamplePolicy,
    phi: Vec<Tape>,
    dphi: Vec<Tape>,
    ddphi: Vec<Tape>,
}

/// Position, first and second parameter derivatives at one point.
#[derive(Debug, Clone)]
pub struct Jet {
    pub position: DVector<f64>,
    /// Columns `∂_i φ`.
    pub jacobian: DMatrix<f64>,
    /// `hessian[i * m + j] = ∂_i ∂_j φ`.
    pub hessian: Vec<DVector<f64>>,
}

impl Immersion {
    pub fn new(
        params: Vec<String>,
        ambient: AmbientSpace,
        components: Vec<Expr>,
        domain: Vec<(f64, f64)>,
    ) -> Result<Immersion> {
        let m = params.len();
        let n = ambient.coord_dim();
        if m == 0 || m > ambient.dim() {
            return Err(Error::InvalidImmersion(format!(
                "{m} parameters in a {}-dimensional ambient",
                ambient.dim()
            )));
        }
        if components.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: components.len(),
            });
        }
        if domain.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: domain.len(),
            });
        }
        for (i, &(lo, hi)) in domain.iter().enumerate() {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidRange(format!(
                    "domain interval for `{}` is [{lo}, {hi}]",
                    params[i]
                )));
            }
        }
        for (i, p) in params.iter().enumerate() {
            if params[..i].contains(p) {
                return Err(Error::InvalidImmersion(format!("duplicate parameter `{p}`")));
            }
        }
        let mut phi = Vec::with_capacity(n);
        let mut dphi = Vec::with_capacity(n * m);
        let mut ddphi = Vec::with_capacity(n * m * m);
        for c in &components {
            phi.push(Tape::compile(c, &params)?);
            let firsts: Vec<Expr> = params.iter().map(|p| c.differentiate(p)).collect();
            for d in &firsts {
                dphi.push(Tape::compile(d, &params)?);
            }
            for d in &firsts {
                for p in &params {
                    ddphi.push(Tape::compile(&d.differentiate(p), &params)?);
                }
            }
        }
        Ok(Immersion {
            params,
            ambient,
            components,
            domain,
            sampling: SamplePolicy::default(),
            phi,
            dphi,
            ddphi,
        })
    }

    /// Builds an immersion from expression strings.
    pub fn parse(
        params: &[&str],
        ambient: AmbientSpace,
        components: &[&str],
        domain: &[(f64, f64)],
    ) -> Result<Immersion> {
        let exprs = components
            .iter()
            .map(|c| parse(c))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Immersion::new(
            params.iter().map(|p| p.to_string()).collect(),
            ambient,
            exprs,
            domain.to_vec(),
        )
    }

    pub fn with_sampling(mut self, sampling: SamplePolicy) -> Self {
        self.sampling = sampling;
        self
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.params.len()
    }

    pub fn ambient(&self) -> &AmbientSpace {
        &self.ambient
    }

    pub fn components(&self) -> &[Expr] {
        &self.components
    }

    pub fn domain(&self) -> &[(f64, f64)] {
        &self.domain
    }

    pub fn sampling(&self) -> SamplePolicy {
        self.sampling
    }

    pub fn contains(&self, u: &[f64]) -> bool {
        u.len() == self.dim() && u.iter().zip(&self.domain).all(|(x, (lo, hi))| lo <= x && x <= hi)
    }

    pub fn position(&self, u: &[f64]) -> Result<DVector<f64>> {
        self.check_len(u)?;
        let mut stack = Vec::new();
        let mut x = DVector::zeros(self.phi.len());
        for (k, t) in self.phi.iter().enumerate() {
            x[k] = t.eval_with(u, &mut stack)?;
        }
        Ok(x)
    }

    pub fn jet(&self, u: &[f64]) -> Result<Jet> {
        self.check_len(u)?;
        let m = self.dim();
        let n = self.phi.len();
        let mut stack = Vec::new();
        let mut position = DVector::zeros(n);
        let mut jacobian = DMatrix::zeros(n, m);
        let mut hessian = vec![DVector::zeros(n); m * m];
        for k in 0..n {
            position[k] = self.phi[k].eval_with(u, &mut stack)?;
            for i in 0..m {
                jacobian[(k, i)] = self.dphi[k * m + i].eval_with(u, &mut stack)?;
            }
            for i in 0..m {
                for j in i..m {
                    let v = self.ddphi[(k * m + i) * m + j].eval_with(u, &mut stack)?;
                    hessian[i * m + j][k] = v;
                    hessian[j * m + i][k] = v;
                }
            }
        }
        Ok(Jet {
            position,
            jacobian,
            hessian,
        })
    }

    /// The same immersion precomposed with `u_i = scale_i * w_i + shift_i`.
    pub fn reparametrize_affine(&self, scale: &[f64], shift: &[f64]) -> Result<Immersion> {
        let m = self.dim();
        if scale.len() != m || shift.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: scale.len().min(shift.len()),
            });
        }
        if scale.iter().any(|s| *s == 0.0 || !s.is_finite()) {
            return Err(Error::InvalidRange("affine scale must be nonzero".into()));
        }
        // Fresh names avoid capture when substituting one parameter at a time.
        let fresh: Vec<String> = self.params.iter().map(|p| format!("{p}_")).collect();
        let components = self
            .components
            .iter()
            .map(|c| {
                let mut out = c.clone();
                for i in 0..m {
                    let w = Expr::constant(scale[i])
                        .mul(Expr::var(fresh[i].clone()))
                        .add(Expr::constant(shift[i]));
                    out = out.substitute(&self.params[i], &w);
                }
                out
            })
            .collect();
        let domain = (0..m)
            .map(|i| {
                let (lo, hi) = self.domain[i];
                let (a, b) = ((lo - shift[i]) / scale[i], (hi - shift[i]) / scale[i]);
                (a.min(b), a.max(b))
            })
            .collect();
        Ok(Immersion::new(fresh, self.ambient.clone(), components, domain)?.with_sampling(self.sampling))
    }

    fn check_len(&self, u: &[f64]) -> Result<()> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.len(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jet_of_a_paraboloid() {
        let im = Immersion::parse(
            &["u", "v"],
            AmbientSpace::flat(3, 0).unwrap(),
            &["u", "v", "(u^2 + v^2)/2"],
            &[(-1.0, 1.0), (-1.0, 1.0)],
        )
        .unwrap();
        let j = im.jet(&[0.5, -0.25]).unwrap();
        assert_eq!(j.position.as_slice(), &[0.5, -0.25, 0.15625]);
        assert_eq!(j.jacobian.column(1).as_slice(), &[0.0, 1.0, -0.25]);
        assert_eq!(j.hessian[0][2], 1.0);
        assert_eq!(j.hessian[1][2], 0.0);
        assert_eq!(j.hessian[3][2], 1.0);
    }

    #[test]
    fn rejects_bad_shapes() {
        let amb = AmbientSpace::flat(3, 0).unwrap();
        assert!(matches!(
            Immersion::parse(&["u"], amb.clone(), &["u", "u"], &[(0.0, 1.0)]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            Immersion::parse(&["u"], amb.clone(), &["u", "u", "w"], &[(0.0, 1.0)]),
            Err(Error::Expr(_))
        ));
        assert!(matches!(
            Immersion::parse(&["u"], amb, &["u", "u", "u"], &[(1.0, 1.0)]),
            Err(Error::InvalidRange(_))
        ));
    }

    #[test]
    fn affine_reparametrization_maps_points() {
        let im = Immersion::parse(
            &["u"],
            AmbientSpace::flat(2, 0).unwrap(),
            &["cos(u)", "sin(u)"],
            &[(0.0, 1.0)],
        )
        .unwrap();
        let re = im.reparametrize_affine(&[-2.0], &[1.0]).unwrap();
        assert_eq!(re.domain(), &[(0.0, 0.5)]);
        let a = im.position(&[0.4]).unwrap();
        let b = re.position(&[0.3]).unwrap();
        assert!((a - b).norm() < 1e-15);
    }
}
