//! Static SVG pictures: an arrangement of translated braid copies in the
//! plane `x₁ + x₂ + x₃ = 0`, and the subdivided square and cube.

use std::collections::BTreeMap;
use std::fmt::Write;

use anyhow::{bail, Result};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use permadiag_arrangement::{OrderedPartitionForest, TranslationMatrix};
use permadiag_core::OrderedPartition;
use permadiag_cubic::{build_cubical, Cell, CubicalComplex, DEFAULT_CUBICAL_CAP};
use permadiag_diagonal::Variant;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 40.0;

fn header(w: f64, h: f64, title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.0}\" height=\"{h:.0}\" viewBox=\"0 0 {w:.0} {h:.0}\" \
         font-family=\"sans-serif\">\n<title>{}</title>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        escape(title)
    )
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

// ---- arrangement

/// `α·x₁ + β·x₂ = c`, the hyperplane `x_s − x_t = A(i,s,t)` with `x₃ = −x₁ − x₂`.
#[derive(Clone, Debug)]
struct Line {
    copy: usize,
    s: u32,
    t: u32,
    a: [BigRational; 2],
    c: BigRational,
}

fn coords(e: u32) -> [i64; 2] {
    match e {
        1 => [1, 0],
        2 => [0, 1],
        _ => [-1, -1],
    }
}

fn lines(m: &TranslationMatrix) -> Vec<Line> {
    let mut out = Vec::new();
    for i in 1..=m.ell() {
        for s in 1..=3u32 {
            for t in s + 1..=3 {
                let (cs, ct) = (coords(s), coords(t));
                let a = [0, 1].map(|k| BigRational::from_integer((cs[k] - ct[k]).into()));
                out.push(Line {
                    copy: i,
                    s,
                    t,
                    a,
                    c: m.big_a(i, s, t),
                });
            }
        }
    }
    out
}

fn intersect(p: &Line, q: &Line) -> Option<[BigRational; 2]> {
    let det = &p.a[0] * &q.a[1] - &p.a[1] * &q.a[0];
    if det.is_zero() {
        return None;
    }
    let x = (&p.c * &q.a[1] - &q.c * &p.a[1]) / &det;
    let y = (&p.a[0] * &q.c - &q.a[0] * &p.c) / &det;
    Some([x, y])
}

/// The face of the arrangement containing the point: in copy `i`, `s` comes
/// before `t` iff `x_s + A(i,1,s) < x_t + A(i,1,t)`.
pub fn face_at(m: &TranslationMatrix, x: &[BigRational]) -> Result<OrderedPartitionForest> {
    let n = x.len();
    let parts = (1..=m.ell())
        .map(|i| {
            let mut keyed: BTreeMap<BigRational, u32> = BTreeMap::new();
            for s in 1..=n as u32 {
                *keyed
                    .entry(&x[s as usize - 1] + m.big_a(i, 1, s))
                    .or_default() |= 1 << (s - 1);
            }
            OrderedPartition::new(n, keyed.into_values().collect())
        })
        .collect::<permadiag_core::Result<Vec<_>>>()?;
    Ok(OrderedPartitionForest::new(parts)?)
}

/// Orthonormal coordinates in the plane `x₁ + x₂ + x₃ = 0`.
fn planar(x1: f64, x2: f64) -> (f64, f64) {
    let x3 = -x1 - x2;
    ((x1 - x2) / 2f64.sqrt(), (x1 + x2 - 2.0 * x3) / 6f64.sqrt())
}

/// Intersection points of the arrangement's lines, each with its vertex label.
pub fn arrangement_vertices(
    m: &TranslationMatrix,
) -> Result<Vec<([BigRational; 2], OrderedPartitionForest)>> {
    let ls = lines(m);
    let mut pts: BTreeMap<[BigRational; 2], ()> = BTreeMap::new();
    for (k, p) in ls.iter().enumerate() {
        for q in &ls[k + 1..] {
            if let Some(x) = intersect(p, q) {
                pts.insert(x, ());
            }
        }
    }
    pts.into_keys()
        .map(|[x1, x2]| {
            let x3 = -(&x1 + &x2);
            let f = face_at(m, &[x1.clone(), x2.clone(), x3])?;
            Ok(([x1, x2], f))
        })
        .collect()
}

pub fn arrangement2d(m: &TranslationMatrix) -> Result<String> {
    if m.n() != 3 {
        bail!("arrangement2d draws n = 3 only, got n = {}", m.n());
    }
    let ls = lines(m);
    let verts = arrangement_vertices(m)?;
    let f = |r: &BigRational| r.to_f64().unwrap_or(0.0);
    let pts: Vec<(f64, f64)> = verts.iter().map(|([a, b], _)| planar(f(a), f(b))).collect();
    let (mut lo_u, mut hi_u, mut lo_v, mut hi_v) = (0f64, 0f64, 0f64, 0f64);
    for &(u, v) in &pts {
        lo_u = lo_u.min(u);
        hi_u = hi_u.max(u);
        lo_v = lo_v.min(v);
        hi_v = hi_v.max(v);
    }
    let span = (hi_u - lo_u).max(hi_v - lo_v).max(1.0) * 1.6;
    let (cu, cv) = ((lo_u + hi_u) / 2.0, (lo_v + hi_v) / 2.0);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let to_px = |u: f64, v: f64| (SIZE / 2.0 + (u - cu) * scale, SIZE / 2.0 - (v - cv) * scale);
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

    let mut out = header(
        SIZE,
        SIZE,
        &format!(
            "{} translated copies of the braid arrangement, n = 3",
            m.ell()
        ),
    );
    out.push_str("<g class=\"lines\" stroke-width=\"1.5\">\n");
    for l in &ls {
        // a point on the line and its direction e_s + e_t − 2e_r
        let c = f(&l.c);
        let mut base = [0.0; 3];
        base[l.s as usize - 1] = c / 2.0;
        base[l.t as usize - 1] = -c / 2.0;
        let mut dir = [1.0; 3];
        dir[(6 - l.s - l.t) as usize - 1] = -2.0;
        let reach = span * 2.0;
        let (u1, v1) = planar(base[0] - reach * dir[0], base[1] - reach * dir[1]);
        let (u2, v2) = planar(base[0] + reach * dir[0], base[1] + reach * dir[1]);
        let (p1, p2) = (to_px(u1, v1), to_px(u2, v2));
        writeln!(
            out,
            "<line class=\"hyperplane\" data-copy=\"{}\" data-pair=\"{}{}\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{}\"/>",
            l.copy, l.s, l.t, p1.0, p1.1, p2.0, p2.1, colors[(l.copy - 1) % colors.len()]
        )?;
    }
    out.push_str("</g>\n<g class=\"vertices\" font-size=\"11\">\n");
    for ((u, v), (_, label)) in pts.iter().zip(&verts) {
        let (x, y) = to_px(*u, *v);
        writeln!(
            out,
            "<circle class=\"vertex\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3.5\" fill=\"black\"/>"
        )?;
        writeln!(
            out,
            "<text class=\"label\" x=\"{:.2}\" y=\"{:.2}\">{}</text>",
            x + 6.0,
            y - 6.0,
            escape(&label.to_string())
        )?;
    }
    out.push_str("</g>\n</svg>\n");
    Ok(out)
}

// ---- cubical complexes

struct Panel {
    /// Axes of the complex drawn horizontally and vertically; `true` runs the axis backwards.
    axes: ((usize, bool), (usize, bool)),
    /// Fixed coordinate of a boundary square, if any.
    fixed: Option<(usize, u64)>,
    /// Top-left corner in pixels.
    origin: (f64, f64),
}

fn draw_panel(out: &mut String, cx: &CubicalComplex, p: &Panel, side: f64, e: u32) -> Result<()> {
    let unit = (1u64 << e) as f64;
    let px = |c: &Cell, hi: bool| -> (f64, f64) {
        let corner = if hi { &c.hi } else { &c.lo };
        let coord = |(k, flip): (usize, bool)| {
            let t = corner[k].scaled(e) as f64 / unit;
            if flip {
                1.0 - t
            } else {
                t
            }
        };
        let (u, v) = (coord(p.axes.0), coord(p.axes.1));
        (p.origin.0 + u * side, p.origin.1 + side - v * side)
    };
    let inside = |c: &Cell| match p.fixed {
        None => true,
        Some((k, val)) => c.lo[k].scaled(e) == val << e && c.hi[k].scaled(e) == val << e,
    };
    let mut cells: Vec<(&OrderedPartition, &Cell)> =
        cx.faces().filter(|(_, c)| inside(c)).collect();
    cells.sort_by_key(|(l, c)| (std::cmp::Reverse(c.dim()), (*l).clone()));
    for (label, c) in cells {
        let (a, b) = (px(c, false), px(c, true));
        let (x0, x1) = (a.0.min(b.0), a.0.max(b.0));
        let (y0, y1) = (a.1.min(b.1), a.1.max(b.1));
        let (mx, my) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let text = escape(&label.to_string());
        match c.dim() {
            2 => {
                writeln!(
                    out,
                    "<rect class=\"cell2\" x=\"{x0:.2}\" y=\"{y0:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#eef3fb\" stroke=\"none\"/>",
                    x1 - x0,
                    y1 - y0
                )?;
                writeln!(out, "<text class=\"label2\" x=\"{mx:.2}\" y=\"{my:.2}\" font-size=\"10\" text-anchor=\"middle\" fill=\"#555\">{text}</text>")?;
            }
            1 => {
                writeln!(out, "<line class=\"cell1\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>", a.0, a.1, b.0, b.1)?;
                writeln!(out, "<text class=\"label1\" x=\"{:.2}\" y=\"{:.2}\" font-size=\"9\" fill=\"#1f4e9b\">{text}</text>", mx + 3.0, my - 3.0)?;
            }
            0 => {
                writeln!(
                    out,
                    "<circle class=\"cell0\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"black\"/>",
                    a.0, a.1
                )?;
                writeln!(
                    out,
                    "<text class=\"label0\" x=\"{:.2}\" y=\"{:.2}\" font-size=\"10\">{text}</text>",
                    a.0 + 4.0,
                    a.1 + 12.0
                )?;
            }
            _ => {}
        }
    }
    Ok(())
}

/// Finest exponent among the complex's breakpoints.
fn finest(cx: &CubicalComplex) -> u32 {
    cx.faces()
        .flat_map(|(_, c)| c.lo.iter().chain(&c.hi).map(|d| d.exp()))
        .max()
        .unwrap_or(0)
}

pub fn cubical2d(variant: Variant) -> Result<String> {
    let cx = build_cubical(2, variant, DEFAULT_CUBICAL_CAP)?;
    let side = SIZE - 2.0 * MARGIN;
    let mut out = header(SIZE, SIZE, &format!("C_2 for {variant}"));
    draw_panel(
        &mut out,
        &cx,
        &Panel {
            axes: ((0, false), (1, false)),
            fixed: None,
            origin: (MARGIN, MARGIN),
        },
        side,
        finest(&cx),
    )?;
    out.push_str("</svg>\n");
    Ok(out)
}

/// The six boundary squares of `C_3` unfolded as a cross around `x₃ = 0`,
/// oriented so that edges shared in the cube face each other in the net.
pub fn cubical3d_net(variant: Variant) -> Result<String> {
    let cx = build_cubical(3, variant, DEFAULT_CUBICAL_CAP)?;
    let (side, gap) = (260.0, 24.0);
    let (w, h) = (
        4.0 * side + 3.0 * gap + 2.0 * MARGIN,
        3.0 * side + 2.0 * gap + 2.0 * MARGIN,
    );
    let mut out = header(w, h, &format!("boundary of C_3 for {variant}"));
    let at = |col: f64, row: f64| (MARGIN + col * (side + gap), MARGIN + row * (side + gap));
    let (fwd, back) = (false, true);
    // (fixed axis, value, panel axes, grid position)
    let panels = [
        (2, 0, ((0, fwd), (1, fwd)), at(1.0, 1.0)),
        (0, 0, ((2, back), (1, fwd)), at(0.0, 1.0)),
        (0, 1, ((2, fwd), (1, fwd)), at(2.0, 1.0)),
        (2, 1, ((0, back), (1, fwd)), at(3.0, 1.0)),
        (1, 1, ((0, fwd), (2, fwd)), at(1.0, 0.0)),
        (1, 0, ((0, fwd), (2, back)), at(1.0, 2.0)),
    ];
    let e = finest(&cx);
    for (k, val, axes, origin) in panels {
        writeln!(out, "<g class=\"square\" data-fixed=\"x{}={val}\">", k + 1)?;
        writeln!(out, "<text class=\"caption\" x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" fill=\"#888\">x{}={val}</text>", origin.0, origin.1 - 6.0, k + 1)?;
        draw_panel(
            &mut out,
            &cx,
            &Panel {
                axes,
                fixed: Some((k, val)),
                origin,
            },
            side,
            e,
        )?;
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
