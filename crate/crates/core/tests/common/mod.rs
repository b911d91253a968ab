#![allow(dead_code)]

use biharm::{parse, AmbientSpace, Chart, Immersion, QuadricKind};

pub fn graph_r3() -> Immersion {
    Immersion::parse(
        &["u", "v"],
        AmbientSpace::flat(3, 0).unwrap(),
        &["u", "v", "0.5*sin(u)*cos(v)"],
        &[(-1.0, 1.0), (-1.0, 1.0)],
    )
    .unwrap()
}

pub fn spacelike_graph_r31() -> Immersion {
    Immersion::parse(
        &["u", "v"],
        AmbientSpace::flat(3, 1).unwrap(),
        &["0.3*sin(u)*cos(v)", "u", "v"],
        &[(-1.0, 1.0), (-1.0, 1.0)],
    )
    .unwrap()
}

pub fn timelike_graph_r31() -> Immersion {
    Immersion::parse(
        &["u", "v"],
        AmbientSpace::flat(3, 1).unwrap(),
        &["u", "v", "0.3*sin(u)*cos(v)"],
        &[(-1.0, 1.0), (-1.0, 1.0)],
    )
    .unwrap()
}

/// A non-CMC surface of `S^3(1)`.
pub fn wobble_s3() -> Immersion {
    Immersion::parse(
        &["u", "v"],
        AmbientSpace::sphere(3, 0, 1.0).unwrap(),
        &[
            "cos(u)*cos(v+0.2*sin(u))",
            "cos(u)*sin(v+0.2*sin(u))",
            "sin(u)*cos(0.3*v)",
            "sin(u)*sin(0.3*v)",
        ],
        &[(0.3, 1.2), (0.3, 1.2)],
    )
    .unwrap()
}

/// A curve of `S^3(1)` with nonconstant curvature (codimension 2).
pub fn twisted_curve_s3() -> Immersion {
    Immersion::parse(
        &["t"],
        AmbientSpace::sphere(3, 0, 1.0).unwrap(),
        &["0.6*cos(t)", "0.6*sin(t)", "0.8*cos(2*t + 0.3*sin(t))", "0.8*sin(2*t + 0.3*sin(t))"],
        &[(0.2, 2.8)],
    )
    .unwrap()
}

/// Metric `diag(1, e^{2x}, 1 + 0.2xy)` on `(x, y, z)`.
pub fn warped_chart() -> AmbientSpace {
    let e = |s: &str| parse(s).unwrap();
    AmbientSpace::Chart(
        Chart::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![
                vec![e("1"), e("0"), e("0")],
                vec![e("0"), e("exp(2*x)"), e("0")],
                vec![e("0"), e("0"), e("1+0.2*x*y")],
            ],
        )
        .unwrap(),
    )
}

pub fn chart_surface() -> Immersion {
    Immersion::parse(
        &["u", "v"],
        warped_chart(),
        &["u", "v", "0.2*u*v + 0.1*u*u"],
        &[(-1.0, 1.0), (-1.0, 1.0)],
    )
    .unwrap()
}

/// Round `S^n(1)` in hyperspherical coordinates as a chart.
pub fn round_sphere_chart(n: usize) -> AmbientSpace {
    let names: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    let mut metric = vec![vec![parse("0").unwrap(); n]; n];
    let mut factor = String::from("1");
    for (i, name) in names.iter().enumerate() {
        metric[i][i] = parse(&factor).unwrap();
        factor = format!("{factor}*sin({name})^2");
    }
    AmbientSpace::Chart(Chart::new(names, metric).unwrap())
}

pub fn hypersurfaces() -> Vec<(&'static str, Immersion)> {
    vec![
        ("graph R^3", graph_r3()),
        ("space-like graph R^3_1", spacelike_graph_r31()),
        ("time-like graph R^3_1", timelike_graph_r31()),
        ("wobble S^3", wobble_s3()),
        ("surface in warped chart", chart_surface()),
        ("S^3(0.8) in S^4", biharm::catalog::build_small_hypersurface(QuadricKind::Sphere, 3, 0, 0.8).unwrap()),
        ("H^2(0.6) in H^3_1", biharm::catalog::build_small_hypersurface(QuadricKind::Hyperbolic, 2, 1, 0.6).unwrap()),
        ("S^2_1(0.6) in S^3_1", biharm::catalog::build_small_hypersurface(QuadricKind::Sphere, 2, 1, 0.6).unwrap()),
    ]
}

/// Midpoint of the domain box.
pub fn center(im: &Immersion) -> Vec<f64> {
    im.domain().iter().map(|(a, b)| 0.5 * (a + b)).collect()
}

/// A fixed off-center interior point.
pub fn probe(im: &Immersion) -> Vec<f64> {
    im.domain()
        .iter()
        .enumerate()
        .map(|(i, (a, b))| a + (b - a) * (0.37 + 0.11 * i as f64))
        .collect()
}
