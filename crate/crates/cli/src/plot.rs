//! Level curves `|F(x, y)| = level` by marching squares.
//!
//! The grid has `samples` nodes per axis over `[-window, window]^2`. Each
//! crossing point is keyed by the grid edge it lies on and computed once per
//! edge, so neighbouring cells share endpoints bit-for-bit and connectivity
//! can be checked exactly.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use thue_area::{BinaryForm, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy)]
pub struct PlotSpec {
    pub level: f64,
    pub window: f64,
    pub samples: usize,
    pub format: Format,
}

impl PlotSpec {
    pub fn validate(&self) -> Result<()> {
        if self.samples < 16 {
            return Err(Error::InvalidArgument(format!("samples must be >= 16, got {}", self.samples)));
        }
        if !(self.window > 0.0 && self.window.is_finite()) {
            return Err(Error::InvalidArgument(format!("window must be positive, got {}", self.window)));
        }
        if !(self.level > 0.0 && self.level.is_finite()) {
            return Err(Error::InvalidArgument(format!("level must be positive, got {}", self.level)));
        }
        Ok(())
    }
}

/// Grid edge holding a crossing: `(i, j, vertical)` for the edge leaving
/// node `(i, j)` to the right or upwards.
type EdgeId = (usize, usize, bool);

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub from: (f64, f64),
    pub to: (f64, f64),
    edges: (EdgeId, EdgeId),
}

#[derive(Debug, Clone)]
pub struct LevelSet {
    pub segments: Vec<Segment>,
    pub window: f64,
    pub samples: usize,
}

impl LevelSet {
    /// Segment ends that are not joined to another segment; these only occur
    /// where the curve leaves the window.
    pub fn open_ends(&self) -> usize {
        self.edge_degrees().values().filter(|&&d| d != 2).count()
    }

    pub fn is_closed(&self) -> bool {
        !self.segments.is_empty() && self.open_ends() == 0
    }

    fn edge_degrees(&self) -> BTreeMap<EdgeId, usize> {
        let mut deg = BTreeMap::new();
        for s in &self.segments {
            *deg.entry(s.edges.0).or_insert(0) += 1;
            *deg.entry(s.edges.1).or_insert(0) += 1;
        }
        deg
    }

    /// Number of connected polylines.
    pub fn components(&self) -> usize {
        let mut by_edge: BTreeMap<EdgeId, Vec<usize>> = BTreeMap::new();
        for (k, s) in self.segments.iter().enumerate() {
            by_edge.entry(s.edges.0).or_default().push(k);
            by_edge.entry(s.edges.1).or_default().push(k);
        }
        let mut seen = vec![false; self.segments.len()];
        let mut count = 0;
        for start in 0..self.segments.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(k) = stack.pop() {
                let s = &self.segments[k];
                for e in [s.edges.0, s.edges.1] {
                    for &m in &by_edge[&e] {
                        if !seen[m] {
                            seen[m] = true;
                            stack.push(m);
                        }
                    }
                }
            }
        }
        count
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x0,y0,x1,y1\n");
        for s in &self.segments {
            let _ = writeln!(out, "{:.6},{:.6},{:.6},{:.6}", s.from.0, s.from.1, s.to.0, s.to.1);
        }
        out
    }

    pub fn to_svg(&self) -> String {
        let w = self.window;
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}" width="800" height="800">"#,
            -w,
            -w,
            2.0 * w,
            2.0 * w
        );
        let _ = writeln!(out, r#"<rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}" fill="white"/>"#, -w, -w, 2.0 * w, 2.0 * w);
        let mut d = String::new();
        for s in &self.segments {
            // SVG y grows downwards
            let _ = write!(d, "M{:.6} {:.6}L{:.6} {:.6}", s.from.0, -s.from.1, s.to.0, -s.to.1);
        }
        let _ = writeln!(
            out,
            r#"<path d="{d}" fill="none" stroke="black" stroke-width="{:.6}"/>"#,
            w / 400.0
        );
        out.push_str("</svg>\n");
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Svg => self.to_svg(),
        }
    }
}

pub fn level_set(form: &BinaryForm, spec: &PlotSpec) -> Result<LevelSet> {
    spec.validate()?;
    let n = spec.samples;
    let w = spec.window;
    let coord = |i: usize| -w + 2.0 * w * i as f64 / (n - 1) as f64;
    let values: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|j| {
            let y = coord(j);
            (0..n).map(|i| form.abs_at(coord(i), y) - spec.level).collect()
        })
        .collect();
    let inside = |i: usize, j: usize| values[j][i] < 0.0;

    let crossing = |e: EdgeId| -> (f64, f64) {
        let (i, j, vertical) = e;
        let (i2, j2) = if vertical { (i, j + 1) } else { (i + 1, j) };
        let (v0, v1) = (values[j][i], values[j2][i2]);
        let t = v0 / (v0 - v1);
        let (x0, y0) = (coord(i), coord(j));
        let (x1, y1) = (coord(i2), coord(j2));
        (x0 + t * (x1 - x0), y0 + t * (y1 - y0))
    };

    let rows: Vec<Vec<Segment>> = (0..n - 1)
        .into_par_iter()
        .map(|j| {
            let mut segs = Vec::new();
            for i in 0..n - 1 {
                let corners = [inside(i, j), inside(i + 1, j), inside(i + 1, j + 1), inside(i, j + 1)];
                // bottom, right, top, left
                let edges: [EdgeId; 4] = [(i, j, false), (i + 1, j, true), (i, j + 1, false), (i, j, true)];
                let cut = [
                    corners[0] != corners[1],
                    corners[1] != corners[2],
                    corners[3] != corners[2],
                    corners[0] != corners[3],
                ];
                let crossed: Vec<usize> = (0..4).filter(|&k| cut[k]).collect();
                let mut push = |a: usize, b: usize| {
                    segs.push(Segment { from: crossing(edges[a]), to: crossing(edges[b]), edges: (edges[a], edges[b]) });
                };
                match crossed.len() {
                    2 => push(crossed[0], crossed[1]),
                    4 => {
                        let centre = 0.25 * (values[j][i] + values[j][i + 1] + values[j + 1][i + 1] + values[j + 1][i]);
                        if (centre < 0.0) == corners[0] {
                            // corners 0 and 2 joined through the centre
                            push(0, 1);
                            push(2, 3);
                        } else {
                            push(3, 0);
                            push(1, 2);
                        }
                    }
                    _ => {}
                }
            }
            segs
        })
        .collect();
    Ok(LevelSet { segments: rows.into_iter().flatten().collect(), window: w, samples: n })
}
