//! Gantt chart export for checked trajectories.
//!
//! A chart is a flat list of `(product, machine)` occupancy records
//! derived from a trajectory, ordered by product then machine so the
//! JSON form is deterministic and round-trips back into the trajectory.

use serde::{Deserialize, Serialize};

use crate::bakery::{event_enter, event_leave, BakeryConfig, ProductIndexing};

/// Occupancy of one machine by one product. All ids are 1-based in the
/// exported form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GanttRecord {
    pub product: usize,
    pub machine: usize,
    #[serde(rename = "type")]
    pub type_id: usize,
    pub batch: usize,
    pub start: f64,
    pub end: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GanttChart {
    pub makespan: f64,
    pub machine_names: Vec<String>,
    pub records: Vec<GanttRecord>,
}

/// Build the chart of a trajectory; `xs` must hold one event vector per
/// product (empty for an empty production day).
pub fn build_chart(cfg: &BakeryConfig, idx: &ProductIndexing, xs: &[Vec<f64>]) -> GanttChart {
    assert_eq!(xs.len(), idx.product_count(), "one event vector per product");
    let m_count = cfg.machine_count();
    let mut records = Vec::with_capacity(xs.len() * m_count);
    for (k, x) in xs.iter().enumerate() {
        for m in 1..=m_count {
            records.push(GanttRecord {
                product: k + 1,
                machine: m,
                type_id: idx.type_of[k] + 1,
                batch: idx.batch_of[k] + 1,
                start: x[event_enter(m)],
                end: x[event_leave(m)],
            });
        }
    }
    let makespan = match (xs.first(), xs.last()) {
        (Some(first), Some(last)) => last[event_leave(m_count)] - first[event_enter(1)],
        _ => 0.0,
    };
    GanttChart {
        makespan,
        machine_names: cfg.machines.iter().map(|m| m.name.clone()).collect(),
        records,
    }
}

impl GanttChart {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("chart serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Reassemble the per-product event vectors. Fails if any
    /// `(product, machine)` slot is missing or duplicated.
    pub fn trajectory(&self) -> Result<Vec<Vec<f64>>, String> {
        let m_count = self.machine_names.len();
        let q = self.records.iter().map(|r| r.product).max().unwrap_or(0);
        let mut xs = vec![vec![f64::NAN; 2 * m_count]; q];
        for r in &self.records {
            if r.product == 0 || r.product > q || r.machine == 0 || r.machine > m_count {
                return Err(format!("record ({}, {}) out of range", r.product, r.machine));
            }
            let x = &mut xs[r.product - 1];
            if !x[event_enter(r.machine)].is_nan() {
                return Err(format!("duplicate record ({}, {})", r.product, r.machine));
            }
            x[event_enter(r.machine)] = r.start;
            x[event_leave(r.machine)] = r.end;
        }
        for (k, x) in xs.iter().enumerate() {
            if x.iter().any(|v| v.is_nan()) {
                return Err(format!("product {} is missing machine records", k + 1));
            }
        }
        Ok(xs)
    }

    /// Render an SVG: one lane per machine, one rectangle per occupancy,
    /// colored by product type, with a dashed makespan marker.
    /// Consecutive products with identical intervals on a machine (a
    /// batch in the proofer or oven) merge into one rectangle.
    pub fn to_svg(&self) -> String {
        const LANE: f64 = 34.0;
        const BAR: f64 = 22.0;
        const LEFT: f64 = 120.0;
        const TOP: f64 = 24.0;
        const PLOT_W: f64 = 960.0;
        const PALETTE: [&str; 10] = [
            "#a21429", "#7e2f8e", "#4dbeee", "#77ac30", "#d95319", "#edb120", "#0072bd",
            "#666666", "#2f4f4f", "#8b4513",
        ];
        let m_count = self.machine_names.len();
        let span = self.makespan.max(1e-9);
        let scale = PLOT_W / span;
        let height = TOP + m_count as f64 * LANE + 34.0;
        let width = LEFT + PLOT_W + 30.0;
        let x_of = |t: f64| LEFT + t * scale;
        let mut svg = String::new();
        svg.push_str(&format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
             viewBox=\"0 0 {width:.0} {height:.0}\">\n\
             <style>text{{font-family:sans-serif;font-size:11px;fill:#222}}</style>\n\
             <rect width=\"{width:.0}\" height=\"{height:.0}\" fill=\"white\"/>\n"
        ));
        for (idx, name) in self.machine_names.iter().enumerate() {
            let y = TOP + idx as f64 * LANE;
            svg.push_str(&format!(
                "<text x=\"8\" y=\"{:.1}\">{}</text>\n<line x1=\"{LEFT}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#ddd\"/>\n",
                y + LANE / 2.0 + 4.0,
                name,
                y + LANE,
                LEFT + PLOT_W,
                y + LANE
            ));
        }
        // Hour ticks.
        let hours = (span / 60.0).ceil() as usize;
        let step = 1 + hours / 12;
        for h in (0..=hours).step_by(step) {
            let x = x_of(h as f64 * 60.0);
            if x > LEFT + PLOT_W + 1.0 {
                break;
            }
            let base = TOP + m_count as f64 * LANE;
            svg.push_str(&format!(
                "<line x1=\"{x:.1}\" y1=\"{TOP}\" x2=\"{x:.1}\" y2=\"{base:.1}\" stroke=\"#eee\"/>\n\
                 <text x=\"{x:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{h}h</text>\n",
                base + 16.0
            ));
        }
        // Bars, merging identical consecutive intervals per machine.
        for m in 1..=m_count {
            let mut lane: Vec<&GanttRecord> =
                self.records.iter().filter(|r| r.machine == m).collect();
            lane.sort_by_key(|r| r.product);
            let mut i = 0;
            while i < lane.len() {
                let r = lane[i];
                let mut j = i + 1;
                while j < lane.len()
                    && lane[j].type_id == r.type_id
                    && lane[j].start == r.start
                    && lane[j].end == r.end
                {
                    j += 1;
                }
                let y = TOP + (m - 1) as f64 * LANE + (LANE - BAR) / 2.0;
                let x = x_of(r.start);
                let w = ((r.end - r.start) * scale).max(0.75);
                let color = PALETTE[(r.type_id - 1) % PALETTE.len()];
                svg.push_str(&format!(
                    "<rect class=\"job\" x=\"{x:.2}\" y=\"{y:.1}\" width=\"{w:.2}\" height=\"{BAR}\" \
                     fill=\"{color}\" stroke=\"black\" stroke-width=\"0.6\"/>\n"
                ));
                i = j;
            }
        }
        let x_end = x_of(span);
        let y_end = TOP + m_count as f64 * LANE;
        svg.push_str(&format!(
            "<line x1=\"{x_end:.1}\" y1=\"{TOP}\" x2=\"{x_end:.1}\" y2=\"{y_end:.1}\" \
             stroke=\"black\" stroke-dasharray=\"6,4\"/>\n\
             <text x=\"{x_end:.1}\" y=\"16\" text-anchor=\"middle\">makespan {:.1} h</text>\n",
            self.makespan / 60.0
        ));
        svg.push_str("</svg>\n");
        svg
    }
}
