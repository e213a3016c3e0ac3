use serde::Serialize;

use crate::engine::AlgorithmTrace;
use crate::StepKind;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthRow {
    pub step: usize,
    pub kind: StepKind,
    pub len_f: usize,
    pub len_g: usize,
    /// max(|tr F|, |tr G|) after the step.
    pub max_trace: f64,
    pub trace_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
    /// Steps inside a run of Fibonacci steps where the new second word broke
    /// len(F) + len(G) − 2 ≤ len ≤ len(F) + len(G).
    pub fibonacci_bound_violations: Vec<usize>,
}

impl GrowthReport {
    pub fn table(&self) -> String {
        let mut out = format!("{:>5} {:<10} {:>6} {:>6} {:>14} {:>8}\n", "step", "kind", "len F", "len G", "max |tr|", "ratio");
        for r in &self.rows {
            let kind = match r.kind {
                StepKind::Linear => "linear",
                StepKind::Fibonacci => "fibonacci",
            };
            out.push_str(&format!(
                "{:>5} {:<10} {:>6} {:>6} {:>14.6} {:>8.4}\n",
                r.step, kind, r.len_f, r.len_g, r.max_trace, r.trace_ratio
            ));
        }
        out
    }
}

pub fn growth_report(t: &AlgorithmTrace) -> GrowthReport {
    let mut rows = Vec::new();
    let mut violations = Vec::new();
    let mut prev_kind = None;
    for (i, s) in t.steps.iter().enumerate() {
        let before = s.traces_before[0].max(s.traces_before[1]);
        let after = s.traces_after[0].max(s.traces_after[1]);
        rows.push(GrowthRow {
            step: i + 1,
            kind: s.kind,
            len_f: s.lengths_after[0],
            len_g: s.lengths_after[1],
            max_trace: after,
            trace_ratio: after / before,
        });
        if s.kind == StepKind::Fibonacci && prev_kind == Some(StepKind::Fibonacci) {
            let sum = s.lengths_before[0] + s.lengths_before[1];
            let len = s.lengths_after[1];
            if len > sum || len + 2 < sum {
                violations.push(i + 1);
            }
        }
        prev_kind = Some(s.kind);
    }
    GrowthReport { rows, fibonacci_bound_violations: violations }
}
