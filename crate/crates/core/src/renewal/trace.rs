//! Replayable record of a reduction. Each step stores its parameters and
//! its factor under `M(input) = factor * M(output)`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::ops::{fill_dents, gauge_scale_vertex, scale_edge_class, strip_forced_edges, DentFill};
use super::reduce::{triple_vertices, Square};
use super::sites::{apply_urban_renewal, site_at};
use crate::builders::{build_gn, mirror};
use crate::error::{Error, Result};
use crate::exact::{format_rational, serde_rational, serde_rational_vec, Rational};
use crate::graph::{Point, WeightedGraph};
use crate::matchings::matching_sum_auto;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum StepOp {
    /// Multiply every coordinate by `k`.
    Rescale { k: i64 },
    /// Split every vertex of degree other than 1 and 3 into three, along
    /// the axis pointing at its target squares.
    Triple { squares: Vec<Square> },
    Renew { corners: [Point; 4] },
    Strip,
    FillDents { fills: Vec<DentFill> },
    Gauge {
        vertex: Point,
        #[serde(with = "serde_rational")]
        lambda: Rational,
    },
    ScaleClass {
        #[serde(with = "serde_rational_vec")]
        weights: Vec<Rational>,
        #[serde(with = "serde_rational")]
        lambda: Rational,
        count: usize,
    },
}

impl StepOp {
    pub fn name(&self) -> &'static str {
        match self {
            StepOp::Rescale { .. } => "rescale",
            StepOp::Triple { .. } => "triple",
            StepOp::Renew { .. } => "renew",
            StepOp::Strip => "strip",
            StepOp::FillDents { .. } => "fill-dents",
            StepOp::Gauge { .. } => "gauge",
            StepOp::ScaleClass { .. } => "scale-class",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    #[serde(flatten)]
    pub op: StepOp,
    #[serde(with = "serde_rational")]
    pub factor: Rational,
    #[serde(with = "serde_rational")]
    pub cumulative: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub n: usize,
    pub steps: Vec<TraceStep>,
    #[serde(with = "serde_rational")]
    pub cumulative: Rational,
    /// Whether the end graph matched the mirrored smaller `G`.
    pub final_isomorphic: bool,
}

/// Applies one operation, returning the new graph and its factor.
pub fn apply_step(g: &WeightedGraph, op: &StepOp) -> Result<(WeightedGraph, Rational)> {
    match op {
        StepOp::Rescale { k } => {
            if *k <= 0 {
                return Err(Error::Precondition(format!("rescale factor {k} must be positive")));
            }
            Ok((g.scale(*k), Rational::one()))
        }
        StepOp::Triple { squares } => Ok((triple_vertices(g, squares)?.graph, Rational::one())),
        StepOp::Renew { corners } => {
            let site = site_at(g, corners)?;
            apply_urban_renewal(g, &site)
        }
        StepOp::Strip => {
            let s = strip_forced_edges(g);
            if let Some(p) = s.isolated {
                return Err(Error::Precondition(format!("stripping isolates {p}: M = 0")));
            }
            Ok((s.graph, s.factor))
        }
        StepOp::FillDents { fills } => Ok((fill_dents(g, fills)?, Rational::one())),
        StepOp::Gauge { vertex, lambda } => gauge_scale_vertex(g, *vertex, lambda),
        StepOp::ScaleClass { weights, lambda, count } => scale_edge_class(g, weights, lambda, *count),
    }
}

/// Applies operations in order, optionally checking
/// `M(before) = factor * M(after)` after every step.
pub(crate) struct Runner {
    pub graph: WeightedGraph,
    pub steps: Vec<TraceStep>,
    pub cumulative: Rational,
    verify: bool,
    current_m: Option<Rational>,
}

impl Runner {
    pub fn new(graph: WeightedGraph, verify: bool) -> Result<Self> {
        let current_m = if verify { Some(matching_sum_auto(&graph)?) } else { None };
        Ok(Self { graph, steps: Vec::new(), cumulative: Rational::one(), verify, current_m })
    }

    pub fn push(&mut self, op: StepOp) -> Result<Rational> {
        let index = self.steps.len();
        let fail = |reason: String| Error::StepFailed { index, op: op.name().into(), reason };
        let (next, factor) = apply_step(&self.graph, &op).map_err(|e| fail(e.to_string()))?;
        if self.verify {
            let after = matching_sum_auto(&next).map_err(|e| fail(e.to_string()))?;
            let before = self.current_m.take().unwrap();
            if before != &factor * &after {
                return Err(fail(format!(
                    "M before {} != factor {} x M after {}",
                    format_rational(&before),
                    format_rational(&factor),
                    format_rational(&after)
                )));
            }
            self.current_m = Some(after);
        }
        self.cumulative *= &factor;
        self.graph = next;
        self.steps.push(TraceStep { op, factor: factor.clone(), cumulative: self.cumulative.clone() });
        Ok(factor)
    }
}

pub struct Replay {
    pub final_graph: WeightedGraph,
    pub cumulative: Rational,
}

/// Re-runs a trace from `G_n`, checking every recorded factor, the
/// cumulative factor and the end graph.
pub fn replay(trace: &ReductionTrace, verify_steps: bool) -> Result<Replay> {
    if trace.n < 2 {
        return Err(Error::Precondition("trace needs n >= 2".into()));
    }
    let mut run = Runner::new(build_gn(trace.n), verify_steps)?;
    for (index, step) in trace.steps.iter().enumerate() {
        let factor = run.push(step.op.clone())?;
        if factor != step.factor || run.cumulative != step.cumulative {
            return Err(Error::StepFailed {
                index,
                op: step.op.name().into(),
                reason: format!(
                    "recorded factor {} (cumulative {}), recomputed {} (cumulative {})",
                    format_rational(&step.factor),
                    format_rational(&step.cumulative),
                    format_rational(&factor),
                    format_rational(&run.cumulative)
                ),
            });
        }
    }
    if run.cumulative != trace.cumulative {
        return Err(Error::StepFailed {
            index: trace.steps.len(),
            op: "total".into(),
            reason: format!("recorded cumulative {} differs", format_rational(&trace.cumulative)),
        });
    }
    let target = mirror(&build_gn(trace.n - 1));
    if !run.graph.coordinate_isomorphic(&target) {
        return Err(Error::StepFailed {
            index: trace.steps.len(),
            op: "final".into(),
            reason: "end graph is not the mirrored smaller graph".into(),
        });
    }
    Ok(Replay { final_graph: run.graph, cumulative: run.cumulative })
}
