//! Pairwise quasi-isometry obstructions from growth and hyperbolicity.

use serde::Serialize;

use super::{GrowthClassification, HyperbolicityProfile, Trend};

/// Polynomial degree estimates further apart than this count as different.
pub const DEGREE_TOLERANCE: f64 = 0.5;

/// Invariant data for one space.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpaceProfile {
    pub name: String,
    pub growth: GrowthClassification,
    pub hyperbolicity: Option<HyperbolicityProfile>,
    pub window: String,
    pub seed: Option<u64>,
    /// Estimated number of ends, evidence only.
    pub ends: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    NotQuasiIsometric { reason: String },
    NoEmbeddingIntoHyperbolic { from: String, to: String },
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObstructionReport {
    pub spaces: (String, String),
    pub verdict: Vec<Verdict>,
    pub evidence: Vec<String>,
    pub windows: Vec<String>,
    pub seeds: Vec<u64>,
}

impl ObstructionReport {
    pub fn is_inconclusive(&self) -> bool {
        self.verdict
            .iter()
            .all(|v| matches!(v, Verdict::Inconclusive))
    }

    pub fn not_quasi_isometric(&self) -> bool {
        self.verdict
            .iter()
            .any(|v| matches!(v, Verdict::NotQuasiIsometric { .. }))
    }
}

fn describe(g: &GrowthClassification) -> String {
    match g {
        GrowthClassification::Bounded { size, .. } => format!("bounded ({size})"),
        GrowthClassification::Polynomial { degree, .. } => format!("polynomial degree {degree:.3}"),
        GrowthClassification::Exponential { rate, .. } => format!("exponential rate {rate:.3}"),
        GrowthClassification::Inconclusive { .. } => "unclassified".into(),
    }
}

fn growing(p: &Option<HyperbolicityProfile>) -> Option<bool> {
    p.as_ref().map(|h| matches!(h.trend, Trend::Growing { .. }))
}

/// Compares two spaces. Agreement of all invariants gives `Inconclusive`;
/// it never certifies a quasi-isometry.
pub fn qi_obstruction_report(a: &SpaceProfile, b: &SpaceProfile) -> ObstructionReport {
    let mut verdict = Vec::new();
    let mut evidence = vec![
        format!("{}: growth {}", a.name, describe(&a.growth)),
        format!("{}: growth {}", b.name, describe(&b.growth)),
    ];
    use GrowthClassification::*;
    match (&a.growth, &b.growth) {
        (Exponential { .. }, Polynomial { .. } | Bounded { .. })
        | (Polynomial { .. } | Bounded { .. }, Exponential { .. }) => {
            verdict.push(Verdict::NotQuasiIsometric {
                reason: "exponential versus polynomial growth".into(),
            });
        }
        _ => {
            if let (Some(da), Some(db)) = (a.growth.degree(), b.growth.degree()) {
                if (da - db).abs() > DEGREE_TOLERANCE {
                    verdict.push(Verdict::NotQuasiIsometric {
                        reason: format!("growth degrees {da:.3} vs {db:.3}"),
                    });
                }
            }
        }
    }
    for (x, y) in [(a, b), (b, a)] {
        if let (Some(true), Some(false)) = (growing(&x.hyperbolicity), growing(&y.hyperbolicity)) {
            evidence.push(format!(
                "{}: four-point delta grows; {}: delta bounded",
                x.name, y.name
            ));
            verdict.push(Verdict::NoEmbeddingIntoHyperbolic {
                from: x.name.clone(),
                to: y.name.clone(),
            });
        }
    }
    if let (Some(ea), Some(eb)) = (a.ends, b.ends) {
        if ea != eb {
            evidence.push(format!(
                "estimated ends differ ({ea} vs {eb}), e.g. half-line versus line; \
                 recorded as evidence only"
            ));
        }
    }
    if verdict.is_empty() {
        verdict.push(Verdict::Inconclusive);
    }
    let mut seeds: Vec<u64> = [a, b]
        .iter()
        .filter_map(|s| s.seed.or(s.hyperbolicity.as_ref().map(|h| h.seed)))
        .collect();
    seeds.dedup();
    ObstructionReport {
        spaces: (a.name.clone(), b.name.clone()),
        verdict,
        evidence,
        windows: vec![a.window.clone(), b.window.clone()],
        seeds,
    }
}
