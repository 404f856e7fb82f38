//! Self-contained SVG figures.
//!
//! Output is plain text built from sorted collections, so identical inputs
//! give identical bytes. Elements carry `class` and `data-*` attributes
//! (`state`, `transition`, `self-loop`, `orbit`, `density-edge`,
//! `occupancy`) so the structure can be checked without a renderer.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::orbit::Orbit;
use crate::space::{perm_rank, State, StateSpace};
use crate::stats::{Occupancy, StateSubset, TransitionCounts};

/// Full-grid rendering limit; `5! = 120` orders.
pub const MAX_GRID_VARIABLES: usize = 5;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AxisLabelMode {
    /// Each dot or node is labelled with its state id.
    #[default]
    Ids,
    /// Only axis ticks (answer strings and orders) are labelled.
    Pairs,
}

/// Maps a count to an opacity in `(0, 1]`, linear between `floor` and 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeOpacity {
    pub floor: f64,
}

impl Default for EdgeOpacity {
    fn default() -> Self {
        EdgeOpacity { floor: 0.15 }
    }
}

impl EdgeOpacity {
    pub fn opacity(&self, count: u64, max: u64) -> f64 {
        let floor = self.floor.clamp(0.01, 1.0);
        if max == 0 {
            return 1.0;
        }
        floor + (1.0 - floor) * count.min(max) as f64 / max as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureConfig {
    pub width: u32,
    pub height: u32,
    pub dot_radius: f64,
    pub edge_opacity: EdgeOpacity,
    pub subset: Option<StateSubset>,
    pub axis_labels: AxisLabelMode,
    /// Density-graph edges below this count are omitted.
    pub min_edge_count: u64,
    /// Stroke opacity of each orbit in time-expanded plots.
    pub orbit_opacity: f64,
}

impl Default for FigureConfig {
    fn default() -> Self {
        FigureConfig {
            width: 800,
            height: 600,
            dot_radius: 4.0,
            edge_opacity: EdgeOpacity::default(),
            subset: None,
            axis_labels: AxisLabelMode::default(),
            min_edge_count: 1,
            orbit_opacity: 0.3,
        }
    }
}

impl FigureConfig {
    fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::validation("figure dimensions must be positive"));
        }
        if self.dot_radius <= 0.0 || !self.dot_radius.is_finite() {
            return Err(Error::validation("dot radius must be positive"));
        }
        Ok(())
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn open_svg(out: &mut String, config: &FigureConfig, title: &str) {
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="11">
<title>{title}</title>
<rect class="background" x="0" y="0" width="{w}" height="{h}" fill="white"/>"#,
        w = config.width,
        h = config.height,
        title = escape(title)
    );
}

fn close_svg(out: &mut String) {
    out.push_str("</svg>\n");
}

/// Drawing area inside fixed margins.
#[derive(Debug, Clone, Copy)]
struct Plot {
    left: f64,
    top: f64,
    width: f64,
    height: f64,
}

impl Plot {
    fn new(config: &FigureConfig, left: f64, bottom: f64) -> Plot {
        let (top, right) = (24.0, 24.0);
        Plot {
            left,
            top,
            width: (config.width as f64 - left - right).max(1.0),
            height: (config.height as f64 - top - bottom).max(1.0),
        }
    }

    fn bottom(&self) -> f64 {
        self.top + self.height
    }

    /// `frac` in [0, 1] from left to right.
    fn x(&self, frac: f64) -> f64 {
        self.left + frac * self.width
    }

    /// `frac` in [0, 1] from bottom to top.
    fn y(&self, frac: f64) -> f64 {
        self.bottom() - frac * self.height
    }

    fn frame(&self, out: &mut String) {
        let _ = writeln!(
            out,
            r##"<rect class="frame" x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#444"/>"##,
            num(self.left),
            num(self.top),
            num(self.width),
            num(self.height)
        );
    }
}

fn space_of(orbits: &[Orbit]) -> Result<StateSpace> {
    let first = orbits
        .first()
        .ok_or_else(|| Error::validation("nothing to render: no orbits"))?;
    let n = first.n();
    if orbits.iter().any(|o| o.n() != n) {
        return Err(Error::validation("orbits have differing variable counts"));
    }
    StateSpace::new(n)
}

fn check_grid(space: StateSpace, subset: Option<&StateSubset>) -> Result<()> {
    if space.n() > MAX_GRID_VARIABLES && subset.is_none() {
        return Err(Error::validation(format!(
            "{} variables give {} orders; pass a state subset to render more than {MAX_GRID_VARIABLES}",
            space.n(),
            space.order_count()
        )));
    }
    if let Some(s) = subset {
        if s.n != space.n() {
            return Err(Error::validation(format!(
                "subset {} is for {} variables, orbits have {}",
                s.name,
                s.n,
                space.n()
            )));
        }
    }
    Ok(())
}

/// Orbits drawn in the answer × order plane.
///
/// Columns are answer strings by ascending binary value; rows are orders by
/// ascending rank from the bottom, so ids grow rightwards then upwards.
pub fn render_state_space(orbits: &[Orbit], config: &FigureConfig) -> Result<String> {
    config.validate()?;
    let space = space_of(orbits)?;
    let subset = config.subset.as_ref();
    check_grid(space, subset)?;
    let visible = |id: u64| subset.is_none_or(|s| s.contains(id));

    let (columns, rows): (Vec<u64>, Vec<u64>) = match subset {
        Some(s) => {
            let mut cols = BTreeSet::new();
            let mut rws = BTreeSet::new();
            for &id in &s.ids {
                let st = State::from_id(space, id)?;
                cols.insert(st.answers().value());
                rws.insert(perm_rank(st.order()));
            }
            (cols.into_iter().collect(), rws.into_iter().collect())
        }
        None => (
            (0..space.answer_count()).collect(),
            (0..space.order_count()).collect(),
        ),
    };
    let col_index: BTreeMap<u64, usize> =
        columns.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let row_index: BTreeMap<u64, usize> = rows.iter().enumerate().map(|(i, &v)| (v, i)).collect();

    let mut visited: BTreeMap<u64, State> = BTreeMap::new();
    let mut moves: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    let mut idles: BTreeSet<u64> = BTreeSet::new();
    for orbit in orbits {
        for s in &orbit.states {
            if visible(s.id()) {
                visited.entry(s.id()).or_insert_with(|| s.clone());
            }
        }
        for w in orbit.states.windows(2) {
            let (a, b) = (w[0].id(), w[1].id());
            if !visible(a) || !visible(b) {
                continue;
            }
            if a == b {
                idles.insert(a);
            } else {
                *moves.entry((a, b)).or_insert(0) += 1;
            }
        }
    }

    let plot = Plot::new(config, 80.0, 60.0);
    let cell_w = plot.width / columns.len() as f64;
    let cell_h = plot.height / rows.len() as f64;
    let position = |s: &State| -> (f64, f64) {
        let c = col_index[&s.answers().value()] as f64;
        let r = row_index[&perm_rank(s.order())] as f64;
        (
            plot.left + (c + 0.5) * cell_w,
            plot.bottom() - (r + 0.5) * cell_h,
        )
    };

    let mut out = String::new();
    open_svg(&mut out, config, "Orbits in the state space");
    plot.frame(&mut out);

    out.push_str("<g class=\"axes\">\n");
    let n = space.n();
    if columns.len() <= 64 {
        for (i, &v) in columns.iter().enumerate() {
            let x = plot.left + (i as f64 + 0.5) * cell_w;
            let label = crate::space::AnswerString::from_value(n, v).to_string();
            let _ = writeln!(
                out,
                r#"<text class="tick x" x="{}" y="{}" text-anchor="middle">{label}</text>"#,
                num(x),
                num(plot.bottom() + 16.0)
            );
        }
    }
    if rows.len() <= 48 {
        for (i, &r) in rows.iter().enumerate() {
            let y = plot.bottom() - (i as f64 + 0.5) * cell_h;
            let label = crate::space::perm_unrank(n, r)?.to_string();
            let _ = writeln!(
                out,
                r#"<text class="tick y" x="{}" y="{}" text-anchor="end" dominant-baseline="middle">{label}</text>"#,
                num(plot.left - 6.0),
                num(y)
            );
        }
    }
    let _ = writeln!(
        out,
        r#"<text class="axis-title" x="{}" y="{}" text-anchor="middle">answers x</text>"#,
        num(plot.x(0.5)),
        num(plot.bottom() + 40.0)
    );
    let _ = writeln!(
        out,
        r#"<text class="axis-title" x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">order y</text>"#,
        num(plot.y(0.5)),
        num(plot.y(0.5))
    );
    out.push_str("</g>\n");

    let max_count = moves.values().copied().max().unwrap_or(0);
    out.push_str("<g class=\"transitions\">\n");
    for (&(a, b), &count) in &moves {
        let (x1, y1) = position(&visited[&a]);
        let (x2, y2) = position(&visited[&b]);
        let _ = writeln!(
            out,
            r##"<line class="transition" data-from="{a}" data-to="{b}" data-count="{count}" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#333" stroke-width="1" stroke-opacity="{}"/>"##,
            num(x1),
            num(y1),
            num(x2),
            num(y2),
            num(config.edge_opacity.opacity(count, max_count))
        );
    }
    for &id in &idles {
        let (x, y) = position(&visited[&id]);
        let _ = writeln!(
            out,
            r##"<circle class="self-loop" data-id="{id}" cx="{}" cy="{}" r="{}" fill="none" stroke="#333"/>"##,
            num(x),
            num(y),
            num(config.dot_radius * 2.0)
        );
    }
    out.push_str("</g>\n<g class=\"states\">\n");
    for (&id, s) in &visited {
        let (x, y) = position(s);
        let _ = writeln!(
            out,
            r##"<circle class="state" data-id="{id}" cx="{}" cy="{}" r="{}" fill="#1f77b4"/>"##,
            num(x),
            num(y),
            num(config.dot_radius)
        );
        if config.axis_labels == AxisLabelMode::Ids {
            let _ = writeln!(
                out,
                r#"<text class="state-label" x="{}" y="{}">{id}</text>"#,
                num(x + config.dot_radius + 2.0),
                num(y - config.dot_radius - 2.0)
            );
        }
    }
    out.push_str("</g>\n");
    close_svg(&mut out);
    Ok(out)
}

fn tick_values(lo: u64, hi: u64, max_ticks: u64) -> Vec<u64> {
    if hi <= lo {
        return vec![lo];
    }
    let span = hi - lo;
    if span < max_ticks {
        return (lo..=hi).collect();
    }
    let step = span.div_ceil(max_ticks - 1);
    let mut v: Vec<u64> = (0..max_ticks).map(|k| (lo + k * step).min(hi)).collect();
    v.dedup();
    v
}

fn time_range(times: impl Iterator<Item = i64>) -> (i64, i64) {
    let (mut lo, mut hi) = (i64::MAX, i64::MIN);
    for t in times {
        lo = lo.min(t);
        hi = hi.max(t);
    }
    (lo, hi)
}

fn time_frac(t: i64, lo: i64, hi: i64) -> f64 {
    if hi == lo {
        0.5
    } else {
        (t - lo) as f64 / (hi - lo) as f64
    }
}

fn time_axis(out: &mut String, plot: &Plot, times: &[i64], lo: i64, hi: i64) {
    let step = times.len().div_ceil(20).max(1);
    for t in times.iter().step_by(step) {
        let _ = writeln!(
            out,
            r#"<text class="tick x" x="{}" y="{}" text-anchor="middle">{t}</text>"#,
            num(plot.x(time_frac(*t, lo, hi))),
            num(plot.bottom() + 16.0)
        );
    }
    let _ = writeln!(
        out,
        r#"<text class="axis-title" x="{}" y="{}" text-anchor="middle">t</text>"#,
        num(plot.x(0.5)),
        num(plot.bottom() + 40.0)
    );
}

/// One polyline per orbit through `(t, state id)`.
///
/// With a subset, the id axis spans the subset and points outside it are
/// dropped; an orbit with no visible point emits no polyline.
pub fn render_time_expanded(orbits: &[Orbit], config: &FigureConfig) -> Result<String> {
    config.validate()?;
    let space = space_of(orbits)?;
    let subset = config.subset.as_ref();
    check_grid(space, subset)?;
    let (id_lo, id_hi) = match subset {
        Some(s) if !s.is_empty() => (*s.ids.first().unwrap(), *s.ids.last().unwrap()),
        Some(_) => return Err(Error::validation("subset is empty")),
        None => (1, space.size()),
    };
    let times: Vec<i64> = orbits
        .iter()
        .flat_map(|o| o.times.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let (t_lo, t_hi) = time_range(times.iter().copied());
    let plot = Plot::new(config, 70.0, 60.0);
    let id_frac = |id: u64| {
        if id_hi == id_lo {
            0.5
        } else {
            (id - id_lo) as f64 / (id_hi - id_lo) as f64
        }
    };

    let mut out = String::new();
    open_svg(&mut out, config, "Orbits over time");
    plot.frame(&mut out);
    out.push_str("<g class=\"axes\">\n");
    time_axis(&mut out, &plot, &times, t_lo, t_hi);
    let ticks: Vec<u64> = match subset {
        Some(s) if s.len() <= 40 => s.ids.iter().copied().collect(),
        _ => tick_values(id_lo, id_hi, 12),
    };
    for id in ticks {
        let _ = writeln!(
            out,
            r#"<text class="tick y" x="{}" y="{}" text-anchor="end" dominant-baseline="middle">{id}</text>"#,
            num(plot.left - 6.0),
            num(plot.y(id_frac(id)))
        );
    }
    let _ = writeln!(
        out,
        r#"<text class="axis-title" x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">state id</text>"#,
        num(plot.y(0.5)),
        num(plot.y(0.5))
    );
    out.push_str("</g>\n<g class=\"orbits\">\n");
    for orbit in orbits {
        let points: Vec<String> = orbit
            .times
            .iter()
            .zip(&orbit.states)
            .filter(|(_, s)| subset.is_none_or(|sub| sub.contains(s.id())))
            .map(|(&t, s)| {
                format!(
                    "{},{}",
                    num(plot.x(time_frac(t, t_lo, t_hi))),
                    num(plot.y(id_frac(s.id())))
                )
            })
            .collect();
        if points.is_empty() {
            continue;
        }
        let _ = writeln!(
            out,
            r##"<polyline class="orbit" data-subject="{}" points="{}" fill="none" stroke="#1f3a93" stroke-width="1.5" stroke-opacity="{}"/>"##,
            escape(&orbit.subject_id),
            points.join(" "),
            num(config.orbit_opacity.clamp(0.01, 1.0))
        );
    }
    out.push_str("</g>\n");
    close_svg(&mut out);
    Ok(out)
}

/// Subset states on a circle with their transition counts as labelled
/// arrows. Self-transitions are loops labelled `id <count>`.
pub fn render_density_graph(
    counts: &TransitionCounts,
    subset: &StateSubset,
    config: &FigureConfig,
) -> Result<String> {
    config.validate()?;
    if subset.is_empty() {
        return Err(Error::validation("density graph needs a non-empty subset"));
    }
    let space = StateSpace::new(counts.n)?;
    if subset.n != counts.n {
        return Err(Error::validation(format!(
            "subset {} is for {} variables, counts have {}",
            subset.name, subset.n, counts.n
        )));
    }
    let ids: Vec<u64> = subset.ids.iter().copied().collect();
    let (cx, cy) = (config.width as f64 / 2.0, config.height as f64 / 2.0);
    let radius = (config.width.min(config.height) as f64 / 2.0 - 70.0).max(20.0);
    let node_r = (config.dot_radius * 4.0).max(12.0);
    let mut pos: BTreeMap<u64, (f64, f64)> = BTreeMap::new();
    for (k, &id) in ids.iter().enumerate() {
        let angle = if ids.len() == 1 {
            0.0
        } else {
            -std::f64::consts::FRAC_PI_2 + 2.0 * std::f64::consts::PI * k as f64 / ids.len() as f64
        };
        let (x, y) = if ids.len() == 1 {
            (cx, cy)
        } else {
            (cx + radius * angle.cos(), cy + radius * angle.sin())
        };
        pos.insert(id, (x, y));
    }
    let edges: Vec<((u64, u64), u64)> = counts
        .counts
        .iter()
        .filter(|(&(a, b), &c)| {
            subset.contains(a) && subset.contains(b) && c >= config.min_edge_count
        })
        .map(|(&k, &c)| (k, c))
        .collect();
    let max_count = edges.iter().map(|e| e.1).max().unwrap_or(0);

    let mut out = String::new();
    open_svg(
        &mut out,
        config,
        &format!("Transition densities in {} ({})", subset.name, counts.label),
    );
    out.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"7\" markerHeight=\"7\" orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#333\"/></marker></defs>\n",
    );
    out.push_str("<g class=\"edges\">\n");
    for &((a, b), count) in &edges {
        let opacity = num(config.edge_opacity.opacity(count, max_count));
        let (x1, y1) = pos[&a];
        if a == b {
            // loop on the outward side of the node
            let (dx, dy) = (x1 - cx, y1 - cy);
            let len = (dx * dx + dy * dy).sqrt();
            let (ux, uy) = if len < 1e-9 {
                (0.0, -1.0)
            } else {
                (dx / len, dy / len)
            };
            let (px, py) = (-uy, ux);
            let base = node_r;
            let reach = node_r * 3.2;
            let (sx, sy) = (
                x1 + ux * base + px * node_r * 0.6,
                y1 + uy * base + py * node_r * 0.6,
            );
            let (ex, ey) = (
                x1 + ux * base - px * node_r * 0.6,
                y1 + uy * base - py * node_r * 0.6,
            );
            let (c1x, c1y) = (
                x1 + ux * reach + px * node_r * 1.8,
                y1 + uy * reach + py * node_r * 1.8,
            );
            let (c2x, c2y) = (
                x1 + ux * reach - px * node_r * 1.8,
                y1 + uy * reach - py * node_r * 1.8,
            );
            let _ = writeln!(
                out,
                r##"<path class="density-edge self-loop" data-from="{a}" data-to="{b}" data-count="{count}" d="M {} {} C {} {} {} {} {} {}" fill="none" stroke="#333" stroke-opacity="{opacity}" marker-end="url(#arrow)"/>"##,
                num(sx),
                num(sy),
                num(c1x),
                num(c1y),
                num(c2x),
                num(c2y),
                num(ex),
                num(ey)
            );
            let _ = writeln!(
                out,
                r#"<text class="edge-label" data-from="{a}" data-to="{b}" x="{}" y="{}" text-anchor="middle">id {count}</text>"#,
                num(x1 + ux * (reach + 8.0)),
                num(y1 + uy * (reach + 8.0) + 4.0)
            );
        } else {
            let (x2, y2) = pos[&b];
            let (dx, dy) = (x2 - x1, y2 - y1);
            let len = (dx * dx + dy * dy).sqrt().max(1e-9);
            let (ux, uy) = (dx / len, dy / len);
            // bend to the left of the direction so a->b and b->a separate
            let (px, py) = (uy, -ux);
            let bend = (len * 0.15).min(40.0);
            let (sx, sy) = (x1 + ux * node_r, y1 + uy * node_r);
            let (ex, ey) = (x2 - ux * node_r, y2 - uy * node_r);
            let (mx, my) = ((x1 + x2) / 2.0 + px * bend, (y1 + y2) / 2.0 + py * bend);
            let _ = writeln!(
                out,
                r##"<path class="density-edge" data-from="{a}" data-to="{b}" data-count="{count}" d="M {} {} Q {} {} {} {}" fill="none" stroke="#333" stroke-opacity="{opacity}" marker-end="url(#arrow)"/>"##,
                num(sx),
                num(sy),
                num(mx),
                num(my),
                num(ex),
                num(ey)
            );
            // the quadratic curve's midpoint sits halfway to the control point
            let (lx, ly) = (
                (x1 + x2) / 2.0 + px * bend / 2.0,
                (y1 + y2) / 2.0 + py * bend / 2.0,
            );
            let _ = writeln!(
                out,
                r#"<text class="edge-label" data-from="{a}" data-to="{b}" x="{}" y="{}" text-anchor="middle">{count}</text>"#,
                num(lx),
                num(ly)
            );
        }
    }
    out.push_str("</g>\n<g class=\"nodes\">\n");
    for &id in &ids {
        let (x, y) = pos[&id];
        let st = State::from_id(space, id)?;
        let _ = writeln!(
            out,
            r##"<g class="node" data-id="{id}"><circle cx="{}" cy="{}" r="{}" fill="#e8eef8" stroke="#1f3a93"/><text x="{}" y="{}" text-anchor="middle">{id}</text><text class="pair" x="{}" y="{}" text-anchor="middle" font-size="9">({}, {})</text></g>"##,
            num(x),
            num(y),
            num(node_r),
            num(x),
            num(y + 4.0),
            num(x),
            num(y + node_r + 12.0),
            st.answers(),
            st.order()
        );
    }
    out.push_str("</g>\n");
    close_svg(&mut out);
    Ok(out)
}

/// One polyline per state: orbits in that state at each time.
pub fn render_occupancy(occupancy: &Occupancy, config: &FigureConfig) -> Result<String> {
    config.validate()?;
    let restricted;
    let occupancy = match &config.subset {
        Some(s) => {
            restricted = occupancy.restricted(s);
            &restricted
        }
        None => occupancy,
    };
    if occupancy.is_empty() || occupancy.times.is_empty() {
        return Err(Error::validation("nothing to render: occupancy is empty"));
    }
    let (t_lo, t_hi) = time_range(occupancy.times.iter().copied());
    let max = occupancy
        .counts
        .values()
        .flat_map(|v| v.iter().copied())
        .max()
        .unwrap_or(0)
        .max(1);
    let plot = Plot::new(config, 60.0, 60.0);
    let legend_w = 90.0;
    let plot = Plot {
        width: (plot.width - legend_w).max(1.0),
        ..plot
    };

    let mut out = String::new();
    open_svg(&mut out, config, "Orbits per state over time");
    plot.frame(&mut out);
    out.push_str("<g class=\"axes\">\n");
    time_axis(&mut out, &plot, &occupancy.times, t_lo, t_hi);
    for v in tick_values(0, max, 6) {
        let _ = writeln!(
            out,
            r#"<text class="tick y" x="{}" y="{}" text-anchor="end" dominant-baseline="middle">{v}</text>"#,
            num(plot.left - 6.0),
            num(plot.y(v as f64 / max as f64))
        );
    }
    out.push_str("</g>\n<g class=\"series\">\n");
    for (k, (id, series)) in occupancy.counts.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let points: Vec<String> = occupancy
            .times
            .iter()
            .zip(series)
            .map(|(&t, &c)| {
                format!(
                    "{},{}",
                    num(plot.x(time_frac(t, t_lo, t_hi))),
                    num(plot.y(c as f64 / max as f64))
                )
            })
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="occupancy" data-id="{id}" points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            points.join(" ")
        );
    }
    out.push_str("</g>\n<g class=\"legend\">\n");
    let lx = plot.left + plot.width + 16.0;
    for (k, id) in occupancy.counts.keys().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let y = plot.top + 10.0 + 16.0 * k as f64;
        let _ = writeln!(
            out,
            r#"<g class="legend-entry" data-id="{id}"><line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}" dominant-baseline="middle">{id}</text></g>"#,
            num(lx),
            num(y),
            num(lx + 18.0),
            num(y),
            num(lx + 24.0),
            num(y)
        );
    }
    out.push_str("</g>\n");
    close_svg(&mut out);
    Ok(out)
}
