//! SVG drawings of rank-two admissible sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use admface::{AdmissibleSet, RationalPoint, RootDatum};

const SCALE: f64 = 40.0;
const MARGIN: f64 = 1.0;
const DARK: &str = "#555555";
const LIGHT: &str = "#bbbbbb";

/// What to shade on top of the outlined admissible set.
#[derive(Debug, Default)]
pub struct Shading {
    pub dark: BTreeSet<usize>,
    pub light: BTreeSet<usize>,
}

/// Linear map from fundamental-coweight coordinates to the plane, built from
/// a Cholesky factor of the invariant form on simple coroots.
struct Realization {
    /// Plane images of the fundamental coweights.
    columns: [[f64; 2]; 2],
}

impl Realization {
    fn new(datum: &RootDatum) -> Self {
        let a = datum.cartan_matrix();
        let d = datum.symmetrizer();
        // (α_i^∨, α_j^∨) = a_ij / d_j up to a common factor.
        let g = |i: usize, j: usize| a[i][j] as f64 / d[j] as f64;
        let c0 = [g(0, 0).sqrt(), 0.0];
        let c1 = [
            g(0, 1) / c0[0],
            (g(1, 1) - (g(0, 1) / c0[0]).powi(2)).sqrt(),
        ];
        // α_i^∨ = Σ_j a_ij ω_j^∨, so ω^∨ = A^{-1} α^∨ row-wise.
        let det = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) as f64;
        let inv = [
            [a[1][1] as f64 / det, -a[0][1] as f64 / det],
            [-a[1][0] as f64 / det, a[0][0] as f64 / det],
        ];
        let omega = |i: usize| {
            [
                inv[i][0] * c0[0] + inv[i][1] * c1[0],
                inv[i][0] * c0[1] + inv[i][1] * c1[1],
            ]
        };
        Realization {
            columns: [omega(0), omega(1)],
        }
    }

    fn point(&self, v: [f64; 2]) -> [f64; 2] {
        [
            v[0] * self.columns[0][0] + v[1] * self.columns[1][0],
            v[0] * self.columns[0][1] + v[1] * self.columns[1][1],
        ]
    }

    /// The plane vector `n` with `n · point(v) = <v, α>`.
    fn normal(&self, alpha: &[i64]) -> [f64; 2] {
        let [[a, c], [b, d]] = [
            [self.columns[0][0], self.columns[1][0]],
            [self.columns[0][1], self.columns[1][1]],
        ];
        // Solve Mᵀ n = α for M = [[a, b], [c, d]] with columns ω^∨.
        let det = a * d - b * c;
        let (x, y) = (alpha[0] as f64, alpha[1] as f64);
        [(d * x - b * y) / det, (-c * x + a * y) / det]
    }
}

/// Vertices of the base alcove in cyclic order, as exact points.
fn base_alcove(datum: &RootDatum) -> Vec<RationalPoint> {
    let comps = datum.components();
    if comps.len() == 1 {
        let theta = &datum.highest_roots()[0];
        let den = theta.0[0] * theta.0[1];
        vec![
            RationalPoint {
                num: vec![0, 0],
                den,
            },
            RationalPoint {
                num: vec![den / theta.0[0], 0],
                den,
            },
            RationalPoint {
                num: vec![0, den / theta.0[1]],
                den,
            },
        ]
    } else {
        [[0, 0], [1, 0], [1, 1], [0, 1]]
            .iter()
            .map(|v| RationalPoint {
                num: v.to_vec(),
                den: 1,
            })
            .collect()
    }
}

fn fmt(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Draws the alcove tiling around `Adm(μ)`, the outline of `Adm(μ)`, the
/// requested shading and the origin.
pub fn render(adm: &AdmissibleSet, shading: &Shading) -> String {
    let datum = adm.datum();
    let real = Realization::new(datum);
    let base = base_alcove(datum);
    let alcoves: Vec<Vec<RationalPoint>> = adm
        .elements()
        .iter()
        .map(|w| base.iter().map(|p| w.act_point(p)).collect())
        .collect();
    let plane = |p: &RationalPoint| {
        real.point([
            p.num[0] as f64 / p.den as f64,
            p.num[1] as f64 / p.den as f64,
        ])
    };

    let mut lo = [0.0f64, 0.0];
    let mut hi = [0.0f64, 0.0];
    for p in alcoves.iter().flatten() {
        let q = plane(p);
        for k in 0..2 {
            lo[k] = lo[k].min(q[k]);
            hi[k] = hi[k].max(q[k]);
        }
    }
    for k in 0..2 {
        lo[k] -= MARGIN;
        hi[k] += MARGIN;
    }
    let to_svg = |q: [f64; 2]| [(q[0] - lo[0]) * SCALE, (hi[1] - q[1]) * SCALE];
    let width = (hi[0] - lo[0]) * SCALE;
    let height = (hi[1] - lo[1]) * SCALE;

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        fmt(width),
        fmt(height),
        fmt(width),
        fmt(height)
    );
    let _ = writeln!(s, "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>");

    for (set, colour) in [(&shading.light, LIGHT), (&shading.dark, DARK)] {
        for &w in set {
            let pts: Vec<String> = alcoves[w]
                .iter()
                .map(|p| {
                    let q = to_svg(plane(p));
                    format!("{},{}", fmt(q[0]), fmt(q[1]))
                })
                .collect();
            let _ = writeln!(
                s,
                "<polygon points=\"{}\" fill=\"{colour}\" stroke=\"none\"><title>{}</title></polygon>",
                pts.join(" "),
                adm.label(w)
            );
        }
    }

    // Hyperplanes <v, α> = k crossing the window.
    let _ = writeln!(s, "<g stroke=\"#999999\" stroke-width=\"0.5\">");
    for alpha in datum.positive_roots() {
        let n = real.normal(&alpha.0);
        let corners = [
            [lo[0], lo[1]],
            [hi[0], lo[1]],
            [hi[0], hi[1]],
            [lo[0], hi[1]],
        ];
        let values: Vec<f64> = corners.iter().map(|c| n[0] * c[0] + n[1] * c[1]).collect();
        let kmin = values.iter().cloned().fold(f64::INFINITY, f64::min).ceil() as i64;
        let kmax = values
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max)
            .floor() as i64;
        for k in kmin..=kmax {
            if let Some((p, q)) = clip(n, k as f64, lo, hi) {
                let (p, q) = (to_svg(p), to_svg(q));
                let _ = writeln!(
                    s,
                    "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                    fmt(p[0]),
                    fmt(p[1]),
                    fmt(q[0]),
                    fmt(q[1])
                );
            }
        }
    }
    let _ = writeln!(s, "</g>");

    // Outline: alcove edges not shared by two alcoves of the set.
    // Keyed by exact endpoints; value is (multiplicity, plane endpoints).
    type Edge = (usize, [f64; 2], [f64; 2]);
    let mut edges: BTreeMap<(Vec<i64>, Vec<i64>), Edge> = BTreeMap::new();
    for poly in &alcoves {
        for i in 0..poly.len() {
            let (p, q) = (&poly[i], &poly[(i + 1) % poly.len()]);
            let key = if p.num <= q.num {
                (p.num.clone(), q.num.clone())
            } else {
                (q.num.clone(), p.num.clone())
            };
            edges.entry(key).or_insert((0, plane(p), plane(q))).0 += 1;
        }
    }
    let _ = writeln!(
        s,
        "<g stroke=\"black\" stroke-width=\"3\" stroke-linecap=\"round\">"
    );
    for (count, p, q) in edges.values() {
        if *count == 1 {
            let (p, q) = (to_svg(*p), to_svg(*q));
            let _ = writeln!(
                s,
                "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                fmt(p[0]),
                fmt(p[1]),
                fmt(q[0]),
                fmt(q[1])
            );
        }
    }
    let _ = writeln!(s, "</g>");

    let o = to_svg([0.0, 0.0]);
    let _ = writeln!(
        s,
        "<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>",
        fmt(o[0]),
        fmt(o[1])
    );
    s.push_str("</svg>\n");
    s
}

/// Segment of the line `n · x = k` inside the box.
fn clip(n: [f64; 2], k: f64, lo: [f64; 2], hi: [f64; 2]) -> Option<([f64; 2], [f64; 2])> {
    const EPS: f64 = 1e-9;
    let mut pts: Vec<[f64; 2]> = Vec::new();
    for x in [lo[0], hi[0]] {
        if n[1].abs() > EPS {
            let y = (k - n[0] * x) / n[1];
            if y >= lo[1] - EPS && y <= hi[1] + EPS {
                pts.push([x, y]);
            }
        }
    }
    for y in [lo[1], hi[1]] {
        if n[0].abs() > EPS {
            let x = (k - n[1] * y) / n[0];
            if x >= lo[0] - EPS && x <= hi[0] + EPS {
                pts.push([x, y]);
            }
        }
    }
    pts.dedup_by(|a, b| (a[0] - b[0]).abs() < EPS && (a[1] - b[1]).abs() < EPS);
    match pts.as_slice() {
        [p, .., q] if (p[0] - q[0]).abs() > EPS || (p[1] - q[1]).abs() > EPS => Some((*p, *q)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_coroots_meet_at_120_degrees() {
        let d = RootDatum::from_label("A2").unwrap();
        let r = Realization::new(&d);
        let c0 = r.point([2.0, -1.0]);
        let c1 = r.point([-1.0, 2.0]);
        let dot = c0[0] * c1[0] + c0[1] * c1[1];
        let n0 = (c0[0] * c0[0] + c0[1] * c0[1]).sqrt();
        let n1 = (c1[0] * c1[0] + c1[1] * c1[1]).sqrt();
        assert!((dot / (n0 * n1) + 0.5).abs() < 1e-12);
    }

    #[test]
    fn normals_evaluate_pairings() {
        for label in ["A2", "B2", "C2", "G2", "D2"] {
            let d = RootDatum::from_label(label).unwrap();
            let r = Realization::new(&d);
            for alpha in d.positive_roots() {
                let n = r.normal(&alpha.0);
                for v in [[1.0, 0.0], [0.0, 1.0], [2.0, -3.0]] {
                    let p = r.point(v);
                    let expected = v[0] * alpha.0[0] as f64 + v[1] * alpha.0[1] as f64;
                    assert!(
                        (n[0] * p[0] + n[1] * p[1] - expected).abs() < 1e-9,
                        "{label}"
                    );
                }
            }
        }
    }

    #[test]
    fn reflections_are_isometries() {
        for label in ["B2", "C2", "G2"] {
            let d = RootDatum::from_label(label).unwrap();
            let r = Realization::new(&d);
            for i in 0..2 {
                let s = d.simple_reflection(i);
                for v in [[1i64, 0], [0, 1], [1, 1]] {
                    let w = s.act_coords(&v);
                    let p = r.point([v[0] as f64, v[1] as f64]);
                    let q = r.point([w[0] as f64, w[1] as f64]);
                    let len = |x: [f64; 2]| x[0] * x[0] + x[1] * x[1];
                    assert!((len(p) - len(q)).abs() < 1e-9, "{label}");
                }
            }
        }
    }

    #[test]
    fn clipping() {
        let seg = clip([1.0, 0.0], 0.5, [0.0, 0.0], [1.0, 1.0]).unwrap();
        assert_eq!(seg, ([0.5, 0.0], [0.5, 1.0]));
        assert!(clip([1.0, 0.0], 2.0, [0.0, 0.0], [1.0, 1.0]).is_none());
    }
}
