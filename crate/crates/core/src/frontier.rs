//! Efficient frontiers over (qubits, depth) and cost minimization across methods.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrontierPoint {
    pub qubits: u64,
    pub depth: u64,
    pub method: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl FrontierPoint {
    pub fn new(qubits: u64, depth: u64, method: impl Into<String>) -> Self {
        FrontierPoint { qubits, depth, method: method.into(), params: BTreeMap::new() }
    }

    /// No worse on both axes and better on one.
    pub fn dominates(&self, other: &FrontierPoint) -> bool {
        self.qubits <= other.qubits && self.depth <= other.depth && (self.qubits, self.depth) != (other.qubits, other.depth)
    }
}

/// Pareto-minimal points sorted by qubits, depth strictly decreasing.
/// Among equal coordinates the first method name wins.
pub fn efficient_frontier(points: &[FrontierPoint]) -> Result<Vec<FrontierPoint>> {
    if points.is_empty() {
        return Err(Error::Empty("frontier points"));
    }
    let mut sorted: Vec<&FrontierPoint> = points.iter().collect();
    sorted.sort_by(|a, b| (a.qubits, a.depth, &a.method).cmp(&(b.qubits, b.depth, &b.method)));
    let mut out: Vec<FrontierPoint> = Vec::new();
    for p in sorted {
        if out.last().is_none_or(|last| p.depth < last.depth) {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// Built-in cost functions `g(x, y)` with `x` qubits and `y` depth.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum CostFunction {
    Depth,
    Qubits,
    Weighted { alpha: f64, beta: f64 },
    /// Depth, infeasible above the cap.
    DepthWithQubitCap(u64),
}

impl CostFunction {
    pub fn eval(&self, p: &FrontierPoint) -> Option<f64> {
        let (x, y) = (p.qubits as f64, p.depth as f64);
        match *self {
            CostFunction::Depth => Some(y),
            CostFunction::Qubits => Some(x),
            CostFunction::Weighted { alpha, beta } => Some(alpha * x + beta * y),
            CostFunction::DepthWithQubitCap(cap) => (p.qubits <= cap).then_some(y),
        }
    }
}

impl FromStr for CostFunction {
    type Err = Error;

    /// `depth`, `qubits`, `weighted:α,β` or `cap:N`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown cost function {s:?}"));
        match s.split_once(':') {
            None if s == "depth" => Ok(CostFunction::Depth),
            None if s == "qubits" => Ok(CostFunction::Qubits),
            Some(("weighted", args)) => {
                let (a, b) = args.split_once(',').ok_or_else(bad)?;
                Ok(CostFunction::Weighted {
                    alpha: a.trim().parse().map_err(|_| bad())?,
                    beta: b.trim().parse().map_err(|_| bad())?,
                })
            }
            Some(("cap", n)) => Ok(CostFunction::DepthWithQubitCap(n.trim().parse().map_err(|_| bad())?)),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Optimum {
    pub method: String,
    pub point: FrontierPoint,
    pub cost: f64,
}

/// Global argmin of `g` over every frontier; ties go to fewer qubits, then the method name.
pub fn optimize_cost(frontiers: &BTreeMap<String, Vec<FrontierPoint>>, g: CostFunction) -> Result<Optimum> {
    let mut best: Option<Optimum> = None;
    for (method, points) in frontiers {
        for p in points {
            let Some(cost) = g.eval(p) else { continue };
            if cost.is_nan() {
                return Err(Error::InvalidArgument(format!("cost is NaN at ({}, {})", p.qubits, p.depth)));
            }
            let better = match &best {
                None => true,
                Some(b) => (cost, p.qubits, method.as_str())
                    .partial_cmp(&(b.cost, b.point.qubits, b.method.as_str()))
                    .is_some_and(|o| o.is_lt()),
            };
            if better {
                best = Some(Optimum { method: method.clone(), point: p.clone(), cost });
            }
        }
    }
    best.ok_or(Error::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pts(v: &[(u64, u64)]) -> Vec<FrontierPoint> {
        v.iter().map(|&(q, d)| FrontierPoint::new(q, d, "m")).collect()
    }

    fn coords(v: &[FrontierPoint]) -> Vec<(u64, u64)> {
        v.iter().map(|p| (p.qubits, p.depth)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(coords(&efficient_frontier(&pts(&[(3, 4)])).unwrap()), vec![(3, 4)]);
        assert_eq!(coords(&efficient_frontier(&pts(&[(10, 100), (10, 90), (20, 90)])).unwrap()), vec![(10, 90)]);
        assert_eq!(coords(&efficient_frontier(&pts(&[(20, 50), (10, 100)])).unwrap()), vec![(10, 100), (20, 50)]);
        assert_eq!(efficient_frontier(&[]), Err(Error::Empty("frontier points")));
    }

    #[test]
    fn cost_functions() {
        let mut f = BTreeMap::new();
        f.insert("a".to_string(), pts(&[(10, 100), (20, 40)]));
        f.insert("b".to_string(), pts(&[(5, 300), (30, 30)]));
        assert_eq!(optimize_cost(&f, CostFunction::Depth).unwrap().point.depth, 30);
        assert_eq!(optimize_cost(&f, CostFunction::Qubits).unwrap().point.qubits, 5);
        let w = CostFunction::Weighted { alpha: 1.0, beta: 1.0 };
        let brute = f.values().flatten().map(|p| (p.qubits + p.depth) as f64).fold(f64::INFINITY, f64::min);
        assert_eq!(optimize_cost(&f, w).unwrap().cost, brute);
        assert_eq!(optimize_cost(&f, CostFunction::DepthWithQubitCap(25)).unwrap().point.depth, 40);
        assert_eq!(optimize_cost(&f, CostFunction::DepthWithQubitCap(1)), Err(Error::Infeasible));
    }

    #[test]
    fn ties_prefer_fewer_qubits_then_name() {
        let mut f = BTreeMap::new();
        f.insert("z".to_string(), pts(&[(4, 10)]));
        f.insert("y".to_string(), pts(&[(6, 10)]));
        f.insert("x".to_string(), pts(&[(6, 10)]));
        let o = optimize_cost(&f, CostFunction::Depth).unwrap();
        assert_eq!(o.method, "z");
        f.remove("z");
        assert_eq!(optimize_cost(&f, CostFunction::Depth).unwrap().method, "x");
    }

    #[test]
    fn parse_cost() {
        assert_eq!("depth".parse::<CostFunction>().unwrap(), CostFunction::Depth);
        assert_eq!("weighted:2,0.5".parse::<CostFunction>().unwrap(), CostFunction::Weighted { alpha: 2.0, beta: 0.5 });
        assert_eq!("cap:100".parse::<CostFunction>().unwrap(), CostFunction::DepthWithQubitCap(100));
        assert!("area".parse::<CostFunction>().is_err());
    }

    proptest! {
        #[test]
        fn idempotent(v in proptest::collection::vec((0u64..50, 0u64..50), 1..40)) {
            let f = efficient_frontier(&pts(&v)).unwrap();
            prop_assert_eq!(&efficient_frontier(&f).unwrap(), &f);
            prop_assert!(f.windows(2).all(|w| w[0].qubits < w[1].qubits && w[0].depth > w[1].depth));
        }

        #[test]
        fn dominated_point_changes_nothing(v in proptest::collection::vec((0u64..50, 0u64..50), 1..40), pick in 0usize..40, dq in 0u64..5, dd in 1u64..5) {
            let base = pts(&v);
            let f = efficient_frontier(&base).unwrap();
            let anchor = &base[pick % base.len()];
            let mut more = base.clone();
            more.push(FrontierPoint::new(anchor.qubits + dq, anchor.depth + dd, "m"));
            prop_assert_eq!(efficient_frontier(&more).unwrap(), f);
        }

        #[test]
        fn optimum_on_frontier(v in proptest::collection::vec((0u64..50, 0u64..50), 1..40), a in 0.0f64..3.0, b in 0.0f64..3.0) {
            let f = efficient_frontier(&pts(&v)).unwrap();
            let mut all = BTreeMap::new();
            all.insert("m".to_string(), f.clone());
            let o = optimize_cost(&all, CostFunction::Weighted { alpha: a, beta: b }).unwrap();
            let brute = pts(&v).iter().map(|p| a * p.qubits as f64 + b * p.depth as f64).fold(f64::INFINITY, f64::min);
            prop_assert!((o.cost - brute).abs() < 1e-9);
            prop_assert!(f.contains(&o.point));
        }
    }
}
