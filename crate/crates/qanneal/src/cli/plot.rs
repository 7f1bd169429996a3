//! Deterministic SVG charts for the CSV outputs.
//!
//! Hand-rolled on purpose: the four chart kinds need nothing beyond log
//! axes, error bars, and a legend, and emitting the markup directly keeps
//! the output byte-stable across runs, which makes plots diffable in
//! regression tests.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::analytic::geometric_mean_n;
use crate::dynamics::TracePoint;
use crate::error::{Error, Result};
use crate::experiments::{AggregateRow, RelaxationPoint};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 76.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 44.0;
const MARGIN_B: f64 = 58.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

/// One plotted curve. `y_err`, when present, must be as long as `points`.
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub y_err: Option<Vec<f64>>,
    pub dashed: bool,
}

impl Series {
    pub fn line(label: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Series { label: label.into(), points, y_err: None, dashed: false }
    }
}

/// A complete chart: axes plus any number of series.
pub struct Figure {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
    pub series: Vec<Series>,
}

struct Axis {
    log: bool,
    min: f64,
    max: f64,
}

impl Axis {
    /// Fits the axis around the transformed, finite, plottable values.
    fn build(log: bool, values: impl Iterator<Item = f64>) -> Result<Axis> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for v in values {
            if !v.is_finite() || (log && v <= 0.0) {
                continue;
            }
            let t = if log { v.log10() } else { v };
            lo = lo.min(t);
            hi = hi.max(t);
        }
        if !lo.is_finite() {
            return Err(Error::Format("no plottable data".into()));
        }
        if hi - lo < 1e-12 {
            lo -= 0.5;
            hi += 0.5;
        } else {
            let pad = 0.05 * (hi - lo);
            lo -= pad;
            hi += pad;
        }
        Ok(Axis { log, min: lo, max: hi })
    }

    fn frac(&self, v: f64) -> Option<f64> {
        if !v.is_finite() || (self.log && v <= 0.0) {
            return None;
        }
        let t = if self.log { v.log10() } else { v };
        Some((t - self.min) / (self.max - self.min))
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            let k0 = self.min.ceil() as i64;
            let k1 = self.max.floor() as i64;
            if k1 > k0 {
                let stride = (((k1 - k0) as usize) / 6).max(1) as i64;
                return (k0..=k1)
                    .step_by(stride as usize)
                    .map(|k| (k as f64, format!("1e{k}")))
                    .collect();
            }
            // less than one decade: fall back to plain ticks on the
            // untransformed values
            return linear_ticks(self.min, self.max)
                .into_iter()
                .map(|(t, _)| (t, fmt_sig(10f64.powf(t))))
                .collect();
        }
        linear_ticks(self.min, self.max)
    }
}

fn linear_ticks(min: f64, max: f64) -> Vec<(f64, String)> {
    let raw = (max - min) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let step = mag
        * if norm < 1.5 {
            1.0
        } else if norm < 3.5 {
            2.0
        } else if norm < 7.5 {
            5.0
        } else {
            10.0
        };
    let mut t = (min / step).ceil() * step;
    let mut out = Vec::new();
    while t <= max + 1e-9 * step {
        let v = if t.abs() < 1e-9 * step { 0.0 } else { t };
        out.push((v, fmt_tick(v, step)));
        t += step;
    }
    out
}

fn fmt_tick(v: f64, step: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if v.abs() >= 1e5 || v.abs() < 1e-4 {
        return format!("{v:.1e}");
    }
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    format!("{v:.decimals$}")
}

/// Three significant digits, plain notation in the mid range.
fn fmt_sig(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-4..5).contains(&exp) {
        return format!("{v:.2e}");
    }
    let decimals = (2 - exp).max(0) as usize;
    let s = format!("{v:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn esc(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

impl Figure {
    /// Renders the chart. Fails (before anything is written anywhere) if
    /// no series contributes a single plottable point.
    pub fn to_svg(&self) -> Result<String> {
        let xs = self.series.iter().flat_map(|s| s.points.iter().map(|p| p.0));
        let xaxis = Axis::build(self.log_x, xs)?;
        let ys = self.series.iter().flat_map(|s| {
            s.points.iter().enumerate().flat_map(move |(i, p)| {
                let e = s.y_err.as_ref().map_or(0.0, |e| e[i].abs());
                let e = if e.is_finite() { e } else { 0.0 };
                [p.1, p.1 + e, p.1 - e]
            })
        });
        let yaxis = Axis::build(self.log_y, ys)?;

        let px = |f: f64| MARGIN_L + f * (WIDTH - MARGIN_L - MARGIN_R);
        let py = |f: f64| HEIGHT - MARGIN_B - f * (HEIGHT - MARGIN_T - MARGIN_B);
        let x_of = |v: f64| xaxis.frac(v).map(&px);
        let y_of = |v: f64| yaxis.frac(v).map(&py);

        let mut svg = String::with_capacity(16 * 1024);
        let _ = write!(
            svg,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
             viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"Helvetica, Arial, sans-serif\" \
             font-size=\"12\">\n"
        );
        svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");

        // grid and tick labels
        for (t, label) in xaxis.ticks() {
            let x = px((t - xaxis.min) / (xaxis.max - xaxis.min));
            let _ = write!(
                svg,
                "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#e0e0e0\"/>\n\
                 <text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
                MARGIN_T,
                HEIGHT - MARGIN_B,
                HEIGHT - MARGIN_B + 18.0,
                esc(&label)
            );
        }
        for (t, label) in yaxis.ticks() {
            let y = py((t - yaxis.min) / (yaxis.max - yaxis.min));
            let _ = write!(
                svg,
                "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#e0e0e0\"/>\n\
                 <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
                MARGIN_L,
                WIDTH - MARGIN_R,
                MARGIN_L - 8.0,
                y + 4.0,
                esc(&label)
            );
        }
        let _ = write!(
            svg,
            "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{:.2}\" height=\"{:.2}\" \
             fill=\"none\" stroke=\"#333333\"/>\n",
            WIDTH - MARGIN_L - MARGIN_R,
            HEIGHT - MARGIN_T - MARGIN_B
        );

        // series
        let mut legend: Vec<(String, &str, bool)> = Vec::new();
        for (i, s) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let pts: Vec<(f64, f64)> = s
                .points
                .iter()
                .filter_map(|&(x, y)| Some((x_of(x)?, y_of(y)?)))
                .collect();
            if pts.is_empty() {
                continue;
            }
            if let Some(errs) = &s.y_err {
                for (&(x, y), &e) in s.points.iter().zip(errs) {
                    if !(e.is_finite() && e > 0.0) {
                        continue;
                    }
                    let (Some(cx), Some(_)) = (x_of(x), y_of(y)) else { continue };
                    let hi = y_of(y + e);
                    // on a log axis the lower whisker may leave the domain
                    let lo = y_of(y - e).or_else(|| yaxis.frac(10f64.powf(yaxis.min)).map(&py));
                    let (Some(y1), Some(y2)) = (hi, lo) else { continue };
                    let _ = write!(
                        svg,
                        "<line x1=\"{cx:.2}\" y1=\"{y1:.2}\" x2=\"{cx:.2}\" y2=\"{y2:.2}\" \
                         stroke=\"{color}\" stroke-opacity=\"0.6\"/>\n\
                         <line x1=\"{:.2}\" y1=\"{y1:.2}\" x2=\"{:.2}\" y2=\"{y1:.2}\" \
                         stroke=\"{color}\" stroke-opacity=\"0.6\"/>\n",
                        cx - 3.5,
                        cx + 3.5
                    );
                }
            }
            let mut path = String::new();
            for (j, (x, y)) in pts.iter().enumerate() {
                let _ = write!(path, "{}{x:.2} {y:.2}", if j == 0 { "M" } else { " L" });
            }
            let dash = if s.dashed { " stroke-dasharray=\"6 4\"" } else { "" };
            let _ = write!(
                svg,
                "<path d=\"{path}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.6\"{dash}/>\n"
            );
            if !s.dashed {
                for (x, y) in &pts {
                    let _ = write!(svg, "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"2.8\" fill=\"{color}\"/>\n");
                }
            }
            legend.push((s.label.clone(), color, s.dashed));
        }
        if legend.is_empty() {
            return Err(Error::Format("no plottable data".into()));
        }

        // legend, top right inside the frame
        let label_chars = legend.iter().map(|(l, _, _)| l.chars().count()).max().unwrap_or(0);
        let lw = 46.0 + 6.8 * label_chars as f64;
        let lx = WIDTH - MARGIN_R - 10.0 - lw;
        let ly = MARGIN_T + 10.0;
        let _ = write!(
            svg,
            "<rect x=\"{lx:.2}\" y=\"{ly:.2}\" width=\"{lw:.2}\" height=\"{:.2}\" \
             fill=\"#ffffff\" fill-opacity=\"0.85\" stroke=\"#cccccc\"/>\n",
            8.0 + 17.0 * legend.len() as f64
        );
        for (i, (label, color, dashed)) in legend.iter().enumerate() {
            let y = ly + 17.0 * (i as f64 + 1.0) - 4.0;
            let dash = if *dashed { " stroke-dasharray=\"6 4\"" } else { "" };
            let _ = write!(
                svg,
                "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"{color}\" \
                 stroke-width=\"1.6\"{dash}/>\n<text x=\"{:.2}\" y=\"{y:.2}\">{}</text>\n",
                lx + 8.0,
                y - 4.0,
                lx + 34.0,
                y - 4.0,
                lx + 40.0,
                esc(label)
            );
        }

        // captions
        let _ = write!(
            svg,
            "<text x=\"{:.2}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}</text>\n\
             <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n\
             <text x=\"18\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">{}</text>\n",
            (MARGIN_L + WIDTH - MARGIN_R) / 2.0,
            esc(&self.title),
            (MARGIN_L + WIDTH - MARGIN_R) / 2.0,
            HEIGHT - 14.0,
            esc(&self.x_label),
            (MARGIN_T + HEIGHT - MARGIN_B) / 2.0,
            (MARGIN_T + HEIGHT - MARGIN_B) / 2.0,
            esc(&self.y_label)
        );
        svg.push_str("</svg>\n");
        Ok(svg)
    }
}

fn ok_row(row: &AggregateRow) -> bool {
    row.n_realizations > 0 && row.mean_n_bar.is_finite()
}

/// Mean excitation fraction vs coupling, one series per (protocol, N),
/// with the closed-form curve overlaid for every protocol-1 series.
pub fn n_vs_g_figure(rows: &[AggregateRow]) -> Result<Figure> {
    if rows.is_empty() {
        return Err(Error::Format("empty input: no aggregate rows".into()));
    }
    let mut groups: BTreeMap<(String, usize), Vec<(f64, f64, f64)>> = BTreeMap::new();
    for row in rows.iter().filter(|r| ok_row(r)) {
        groups
            .entry((row.protocol.clone(), row.n))
            .or_default()
            .push((row.g, row.mean_n_bar, row.std_n_bar));
    }
    let mut series = Vec::new();
    for ((protocol, n), mut pts) in groups {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        series.push(Series {
            label: format!("{protocol}, N={n}"),
            points: pts.iter().map(|&(g, y, _)| (g, y)).collect(),
            y_err: Some(pts.iter().map(|&(_, _, e)| e).collect()),
            dashed: false,
        });
        if protocol == "p1" && n <= 40 && !pts.is_empty() {
            let (g_lo, g_hi) = (pts[0].0, pts[pts.len() - 1].0);
            if g_lo > 0.0 && g_hi > g_lo {
                let dim = 1usize << n;
                let half = (dim as f64 - 1.0) / 2.0;
                let curve: Vec<(f64, f64)> = (0..64)
                    .map(|i| {
                        let g = g_lo * (g_hi / g_lo).powf(i as f64 / 63.0);
                        (g, geometric_mean_n(g, dim).map(|m| m / half))
                    })
                    .filter_map(|(g, r)| r.ok().map(|y| (g, y)))
                    .collect();
                series.push(Series {
                    label: format!("analytic, N={n}"),
                    points: curve,
                    y_err: None,
                    dashed: true,
                });
            }
        }
    }
    Ok(Figure {
        title: "mean excitation fraction vs coupling".into(),
        x_label: "g".into(),
        y_label: "mean n / ((dim-1)/2)".into(),
        log_x: true,
        log_y: true,
        series,
    })
}

/// Mean excitation fraction vs register size, one series per
/// (protocol, g), semi-log, with protocol-1 closed-form overlays.
pub fn n_vs_size_figure(rows: &[AggregateRow]) -> Result<Figure> {
    if rows.is_empty() {
        return Err(Error::Format("empty input: no aggregate rows".into()));
    }
    let mut groups: BTreeMap<(String, u64), Vec<(usize, f64, f64)>> = BTreeMap::new();
    for row in rows.iter().filter(|r| ok_row(r)) {
        groups
            .entry((row.protocol.clone(), row.g.to_bits()))
            .or_default()
            .push((row.n, row.mean_n_bar, row.std_n_bar));
    }
    let mut series = Vec::new();
    for ((protocol, g_bits), mut pts) in groups {
        let g = f64::from_bits(g_bits);
        pts.sort_by_key(|p| p.0);
        series.push(Series {
            label: format!("{protocol}, g={}", fmt_sig(g)),
            points: pts.iter().map(|&(n, y, _)| (n as f64, y)).collect(),
            y_err: Some(pts.iter().map(|&(_, _, e)| e).collect()),
            dashed: false,
        });
        if protocol == "p1" {
            let curve: Vec<(f64, f64)> = pts
                .iter()
                .filter(|p| p.0 <= 40)
                .filter_map(|&(n, _, _)| {
                    let dim = 1usize << n;
                    let half = (dim as f64 - 1.0) / 2.0;
                    geometric_mean_n(g, dim).ok().map(|m| (n as f64, m / half))
                })
                .collect();
            series.push(Series {
                label: format!("analytic, g={}", fmt_sig(g)),
                points: curve,
                y_err: None,
                dashed: true,
            });
        }
    }
    Ok(Figure {
        title: "mean excitation fraction vs register size".into(),
        x_label: "N (qubits)".into(),
        y_label: "mean n / ((dim-1)/2)".into(),
        log_x: false,
        log_y: true,
        series,
    })
}

/// Excitation trace of a single run on a logarithmic time axis.
pub fn trace_figure(rows: &[TracePoint]) -> Result<Figure> {
    if rows.is_empty() {
        return Err(Error::Format("empty input: no trace points".into()));
    }
    Ok(Figure {
        title: "excitation trace".into(),
        x_label: "t".into(),
        y_label: "probability / fraction".into(),
        log_x: true,
        log_y: false,
        series: vec![
            Series::line("mean n / ((dim-1)/2)", rows.iter().map(|p| (p.t, p.n_bar)).collect()),
            Series::line("ground probability", rows.iter().map(|p| (p.t, p.p0)).collect()),
        ],
    })
}

/// Residual energy vs solver budget, log-log.
pub fn relaxation_figure(rows: &[RelaxationPoint]) -> Result<Figure> {
    if rows.is_empty() {
        return Err(Error::Format("empty input: no relaxation points".into()));
    }
    Ok(Figure {
        title: "residual energy vs budget".into(),
        x_label: "budget".into(),
        y_label: "residual energy".into(),
        log_x: true,
        log_y: true,
        series: vec![Series::line(
            "residual energy",
            rows.iter().map(|p| (p.budget, p.eps_res)).collect(),
        )],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn agg(protocol: &str, n: usize, g: f64, y: f64) -> AggregateRow {
        AggregateRow {
            protocol: protocol.into(),
            n,
            g,
            mean_n_bar: y,
            std_n_bar: 0.1 * y,
            mean_p0: 0.5,
            mean_eps_res: y,
            n_realizations: 5,
        }
    }

    fn sample_rows() -> Vec<AggregateRow> {
        let mut rows = Vec::new();
        for protocol in ["p1", "p2", "p3"] {
            for (i, g) in [1.0, 2.0, 4.0, 8.0].into_iter().enumerate() {
                rows.push(agg(protocol, 10, g, 0.4 / (i + 1) as f64));
            }
        }
        rows
    }

    #[test]
    fn three_protocols_make_three_series_plus_one_overlay() {
        let fig = n_vs_g_figure(&sample_rows()).unwrap();
        assert_eq!(fig.series.len(), 4);
        assert_eq!(fig.series.iter().filter(|s| s.dashed).count(), 1);
        assert!(fig.log_x && fig.log_y);
        let svg = fig.to_svg().unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("analytic, N=10"));
    }

    #[test]
    fn renders_are_byte_identical() {
        let fig = n_vs_g_figure(&sample_rows()).unwrap();
        assert_eq!(fig.to_svg().unwrap(), fig.to_svg().unwrap());
    }

    #[test]
    fn size_scaling_chart_is_semi_log() {
        let rows: Vec<AggregateRow> =
            (4..=10).flat_map(|n| ["p1", "p2"].map(|p| agg(p, n, 2.0, 0.3 / n as f64))).collect();
        let fig = n_vs_size_figure(&rows).unwrap();
        assert!(!fig.log_x && fig.log_y);
        // p1, p2, and one analytic overlay for the single g value
        assert_eq!(fig.series.len(), 3);
        fig.to_svg().unwrap();
    }

    #[test]
    fn empty_inputs_are_rejected_before_rendering() {
        assert!(n_vs_g_figure(&[]).is_err());
        assert!(n_vs_size_figure(&[]).is_err());
        assert!(trace_figure(&[]).is_err());
        assert!(relaxation_figure(&[]).is_err());
        // rows exist but nothing is plottable on log axes
        let rows = vec![agg("p1", 10, 2.0, f64::NAN)];
        assert!(n_vs_g_figure(&rows).and_then(|f| f.to_svg()).is_err());
    }

    #[test]
    fn trace_axis_is_logarithmic_in_time() {
        let pts: Vec<TracePoint> = (0..40)
            .map(|i| {
                let t = 1e-2 * 10f64.powf(i as f64 / 10.0);
                TracePoint { t, n_bar: 1.0 / (1.0 + t), p0: 1.0 - 1.0 / (2.0 + t) }
            })
            .collect();
        let fig = trace_figure(&pts).unwrap();
        assert!(fig.log_x);
        let svg = fig.to_svg().unwrap();
        assert!(svg.contains(">1e-1<") && svg.contains(">1e2<"));
    }

    #[test]
    fn tick_formatting_is_compact() {
        assert_eq!(fmt_sig(0.25), "0.25");
        assert_eq!(fmt_sig(2.0), "2");
        assert_eq!(fmt_sig(1600.0), "1600");
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_tick(0.30000000000000004, 0.1), "0.3");
        assert_eq!(fmt_tick(0.0, 0.1), "0");
    }
}
