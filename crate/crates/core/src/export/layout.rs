//! Deterministic force-directed layout.
//!
//! Nodes start on the unit disc from a seeded SplitMix64 stream (two draws
//! per node in id order: radius `sqrt(u)`, angle `2πv`, with `u, v` the top
//! 53 bits of each output scaled to `[0, 1)`). Each iteration gathers, for
//! every node `u` with mass `m_u = deg(u) + 1`:
//!
//! * attraction `ka · (p_v − p_u)` along each incident edge,
//! * repulsion of magnitude `kr · m_u · m_v / d` from every other node,
//! * gravity `−kg · m_u · p_u` toward the origin,
//!
//! then moves `u` by `STEP · F_u / m_u`, capped at the current temperature,
//! which cools linearly over the run. All forces are computed from the
//! previous positions before any node moves. The final layout is translated
//! so its centroid is the origin.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{LayerGraph, PersonId};

pub const DEFAULT_ITERATIONS: usize = 500;

const STEP: f64 = 0.2;
const INITIAL_TEMPERATURE: f64 = 1.0;
const FINAL_TEMPERATURE_FRACTION: f64 = 0.01;
const MIN_DISTANCE: f64 = 1e-9;

/// SplitMix64, used for portable seeded initialization.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LayoutParams {
    pub attraction: f64,
    pub repulsion: f64,
    pub gravity: f64,
}

impl Default for LayoutParams {
    fn default() -> Self {
        LayoutParams {
            attraction: 1.0,
            repulsion: 2.0,
            gravity: 0.05,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayoutResult {
    pub positions: BTreeMap<PersonId, (f64, f64)>,
    pub seed: u64,
    pub iterations: usize,
    pub params: LayoutParams,
}

/// Seeded starting positions on the unit disc, in node order.
pub fn initial_positions(g: &LayerGraph, seed: u64) -> Vec<[f64; 2]> {
    let mut rng = SplitMix64::new(seed);
    (0..g.node_count())
        .map(|_| {
            let r = rng.next_f64().sqrt();
            let theta = std::f64::consts::TAU * rng.next_f64();
            [r * theta.cos(), r * theta.sin()]
        })
        .collect()
}

/// Iteration state of a layout run; exposed so callers can observe
/// intermediate positions.
#[derive(Debug, Clone)]
pub struct ForceLayout<'g> {
    g: &'g LayerGraph,
    params: LayoutParams,
    positions: Vec<[f64; 2]>,
    iterations: usize,
    done: usize,
}

impl<'g> ForceLayout<'g> {
    pub fn new(
        g: &'g LayerGraph,
        initial: Vec<[f64; 2]>,
        iterations: usize,
        params: LayoutParams,
    ) -> Result<Self> {
        if iterations == 0 {
            return Err(Error::InvalidParameter(
                "layout needs at least one iteration".into(),
            ));
        }
        if initial.len() != g.node_count() {
            return Err(Error::InvalidParameter(format!(
                "{} initial positions for {} nodes",
                initial.len(),
                g.node_count()
            )));
        }
        Ok(ForceLayout {
            g,
            params,
            positions: initial,
            iterations,
            done: 0,
        })
    }

    fn temperature(&self) -> f64 {
        let progress = self.done as f64 / self.iterations as f64;
        INITIAL_TEMPERATURE * (1.0 - (1.0 - FINAL_TEMPERATURE_FRACTION) * progress)
    }

    /// Performs one iteration. Returns `false` once the planned number of
    /// iterations has been run.
    pub fn step(&mut self) -> bool {
        if self.done >= self.iterations {
            return false;
        }
        let n = self.g.node_count();
        let p = &self.positions;
        let mass: Vec<f64> = (0..n).map(|i| self.g.degree_of(i) as f64 + 1.0).collect();
        let LayoutParams {
            attraction,
            repulsion,
            gravity,
        } = self.params;
        let temperature = self.temperature();
        let mut next = p.clone();
        for u in 0..n {
            let mut force = [-gravity * mass[u] * p[u][0], -gravity * mass[u] * p[u][1]];
            for &v in self.g.neighbors(u) {
                force[0] += attraction * (p[v][0] - p[u][0]);
                force[1] += attraction * (p[v][1] - p[u][1]);
            }
            for v in 0..n {
                if v == u {
                    continue;
                }
                let mut dx = p[u][0] - p[v][0];
                let mut dy = p[u][1] - p[v][1];
                let mut d2 = dx * dx + dy * dy;
                if d2 < MIN_DISTANCE * MIN_DISTANCE {
                    // Coincident nodes: push apart along a fixed axis.
                    dx = if u > v { MIN_DISTANCE } else { -MIN_DISTANCE };
                    dy = 0.0;
                    d2 = MIN_DISTANCE * MIN_DISTANCE;
                }
                // magnitude kr·m_u·m_v / d along the unit vector (dx, dy) / d
                let scale = repulsion * mass[u] * mass[v] / d2;
                force[0] += scale * dx;
                force[1] += scale * dy;
            }
            let mut dx = STEP * force[0] / mass[u];
            let mut dy = STEP * force[1] / mass[u];
            let len = (dx * dx + dy * dy).sqrt();
            if len > temperature {
                dx *= temperature / len;
                dy *= temperature / len;
            }
            next[u] = [p[u][0] + dx, p[u][1] + dy];
        }
        self.positions = next;
        self.done += 1;
        true
    }

    pub fn positions(&self) -> &[[f64; 2]] {
        &self.positions
    }

    /// Runs the remaining iterations and recentres on the centroid.
    pub fn finish(mut self) -> Vec<[f64; 2]> {
        while self.step() {}
        let n = self.positions.len().max(1) as f64;
        let cx = self.positions.iter().map(|p| p[0]).sum::<f64>() / n;
        let cy = self.positions.iter().map(|p| p[1]).sum::<f64>() / n;
        for p in &mut self.positions {
            p[0] -= cx;
            p[1] -= cy;
        }
        self.positions
    }
}

pub fn force_layout(
    g: &LayerGraph,
    seed: u64,
    iterations: usize,
    params: LayoutParams,
) -> Result<LayoutResult> {
    let layout = ForceLayout::new(g, initial_positions(g, seed), iterations, params)?;
    let positions = layout.finish();
    Ok(LayoutResult {
        positions: g
            .nodes()
            .iter()
            .cloned()
            .zip(positions.into_iter().map(|[x, y]| (x, y)))
            .collect(),
        seed,
        iterations,
        params,
    })
}
