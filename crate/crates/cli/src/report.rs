//! Verification reports and their text and machine renderings.

use std::fmt::Write as _;
use std::time::Duration;

use serde_json::{json, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit status for malformed input.
pub const EXIT_INPUT_ERROR: i32 = 3;

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Pass,
    /// `counterexample` is a complete instance document (tower included).
    Fail { counterexample: Value, reason: String },
    Inconclusive { bound: usize, reason: String },
}

impl Verdict {
    pub fn status(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail { .. } => "fail",
            Verdict::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Verdict::Pass => json!({"status": "pass"}),
            Verdict::Fail {
                counterexample,
                reason,
            } => json!({"status": "fail", "reason": reason, "counterexample": counterexample}),
            Verdict::Inconclusive { bound, reason } => {
                json!({"status": "inconclusive", "bound": bound, "reason": reason})
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct InstanceResult {
    pub index: usize,
    pub description: String,
    /// The instance document without the tower.
    pub instance: Value,
    pub verdict: Verdict,
    pub evidence: Value,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub campaign: String,
    pub tag: String,
    pub field: String,
    pub tower: Value,
    pub mode: Value,
    pub bound: usize,
    pub instances: Vec<InstanceResult>,
    pub elapsed: Duration,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
}

impl VerificationReport {
    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for r in &self.instances {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail { .. } => s.fail += 1,
                Verdict::Inconclusive { .. } => s.inconclusive += 1,
            }
        }
        s
    }

    /// 0 all pass, 1 some counterexample, 2 inconclusive but no counterexample.
    pub fn exit_code(&self) -> i32 {
        let s = self.summary();
        if s.fail > 0 {
            1
        } else if s.inconclusive > 0 {
            2
        } else {
            0
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.instances
            .iter()
            .filter(|r| matches!(r.verdict, Verdict::Fail { .. }))
    }

    /// Machine format: no timing, so identical inputs give identical bytes.
    pub fn to_json(&self) -> Value {
        let s = self.summary();
        let instances: Vec<Value> = self
            .instances
            .iter()
            .map(|r| {
                json!({
                    "index": r.index,
                    "description": r.description,
                    "instance": r.instance,
                    "verdict": r.verdict.to_json(),
                    "evidence": r.evidence,
                })
            })
            .collect();
        json!({
            "campaign": self.campaign,
            "tag": self.tag,
            "field": {"description": self.field, "tower": self.tower},
            "mode": self.mode,
            "bound": self.bound,
            "version": VERSION,
            "summary": {
                "total": self.instances.len(),
                "pass": s.pass,
                "fail": s.fail,
                "inconclusive": s.inconclusive,
            },
            "instances": instances,
        })
    }

    pub fn render_machine(&self) -> String {
        // serde_json's default map is ordered, so keys come out sorted
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let s = self.summary();
        let mut out = String::new();
        let _ = writeln!(out, "campaign {} (qp {})", self.campaign, VERSION);
        let _ = writeln!(out, "tag:    {}", self.tag);
        let _ = writeln!(out, "field:  {}", self.field);
        let _ = writeln!(out, "mode:   {}", self.mode);
        let _ = writeln!(out, "bound:  {}", self.bound);
        for r in &self.instances {
            if matches!(r.verdict, Verdict::Pass) {
                continue;
            }
            let _ = writeln!(
                out,
                "  #{:<5} {:<12} {}  [{:.1?}]",
                r.index,
                r.verdict.status(),
                r.description,
                r.elapsed
            );
            match &r.verdict {
                Verdict::Fail {
                    counterexample,
                    reason,
                } => {
                    let _ = writeln!(out, "         reason: {reason}");
                    let _ = writeln!(out, "         counterexample: {counterexample}");
                }
                Verdict::Inconclusive { bound, reason } => {
                    let _ = writeln!(out, "         {reason} (bound {bound})");
                }
                Verdict::Pass => {}
            }
        }
        let _ = writeln!(
            out,
            "{} instances: {} pass, {} fail, {} inconclusive  [{:.2?}]",
            self.instances.len(),
            s.pass,
            s.fail,
            s.inconclusive,
            self.elapsed
        );
        out
    }
}
