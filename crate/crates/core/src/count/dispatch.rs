use std::fmt;

use super::andor::count_and_system;
use super::{
    count_brute, count_linear, count_twdp, extract_and_or, Caps, Count, CountError, Engine,
};
use crate::graph::{closure_graph, tree_decomposition, Strategy};
use crate::post::{classify_with_cap, PostClass};
use crate::repr::ReprKind;
use crate::system::System;

/// Hard premise that applies when counting falls back to enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hardness {
    /// Lookup tables outside L over a graph class holding every planar graph.
    LookupPlanar,
    /// Formulas containing S00, S10 or D2 over stars of unbounded degree.
    FormulaDegree,
    /// AND or OR formulas over a graph class holding every planar graph.
    FormulaPlanar,
}

impl fmt::Display for Hardness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hardness::LookupPlanar => "lookup: E2/V2/D2 on planar networks",
            Hardness::FormulaDegree => "formula: S00/S10/D2 with unbounded degree",
            Hardness::FormulaPlanar => "formula: E2/V2 on planar networks",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Linear,
    AndOr,
    BoundedTreewidth,
    BoundedDegree,
    Intractable(Hardness),
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Linear => f.write_str("linear"),
            Branch::AndOr => f.write_str("and/or"),
            Branch::BoundedTreewidth => f.write_str("bounded treewidth"),
            Branch::BoundedDegree => f.write_str("bounded degree"),
            Branch::Intractable(h) => write!(f, "intractable ({h})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DispatchReport {
    pub engine: Engine,
    pub branch: Branch,
    /// Classes holding every function, or `None` when some arity is above the cap.
    pub classes: Option<Vec<PostClass>>,
    pub max_degree: usize,
    /// Min-fill width of the closure graph, when it was computed.
    pub width: Option<usize>,
    pub warnings: Vec<String>,
}

fn common_classes(s: &System, cap: usize) -> Option<Vec<PostClass>> {
    let mut common = PostClass::ALL.to_vec();
    for f in s.functions() {
        let table = f.to_table(cap).ok()?;
        let report = classify_with_cap(&table, cap).ok()?;
        common.retain(|&c| report.has(c));
    }
    Some(common)
}

/// Picks the engine the dichotomy allows and counts with it.
///
/// Order: linear, and/or (formulas and circuits only), tree decomposition
/// of the closure graph, then enumeration with a warning.
pub fn dispatch(s: &System, caps: &Caps) -> Result<(DispatchReport, Count), CountError> {
    let (report, count) = route(s, caps, true)?;
    Ok((report, count.expect("counted")))
}

/// The report `dispatch` would give, without running the enumeration
/// fallback. Tractable branches still count to decide their width checks.
pub fn dispatch_plan(s: &System, caps: &Caps) -> Result<DispatchReport, CountError> {
    Ok(route(s, caps, false)?.0)
}

fn route(
    s: &System,
    caps: &Caps,
    enumerate: bool,
) -> Result<(DispatchReport, Option<Count>), CountError> {
    let mut report = DispatchReport {
        engine: Engine::Brute,
        branch: Branch::Linear,
        classes: common_classes(s, caps.arity),
        max_degree: s.network().max_degree(),
        width: None,
        warnings: Vec::new(),
    };
    let done = |mut report: DispatchReport, engine, branch, count| {
        report.engine = engine;
        report.branch = branch;
        Ok((report, Some(count)))
    };

    match count_linear(s, caps.arity) {
        Ok(c) => return done(report, Engine::Linear, Branch::Linear, c),
        Err(CountError::NonLinearFunction { .. }) => {}
        Err(e) => return Err(e),
    }

    let all_tables = s.functions().iter().all(|f| f.kind() == ReprKind::Table);
    let succinct = s.functions().iter().all(|f| f.kind() != ReprKind::Table);
    let mut and_or_shape = false;
    if succinct {
        match extract_and_or(s, caps.arity) {
            Ok(sys) => {
                and_or_shape = true;
                match count_and_system(&sys, caps.width) {
                    Ok(c) => return done(report, Engine::AndOr, Branch::AndOr, c),
                    Err(CountError::DecompositionTooWide { width, cap }) => report.warnings.push(
                        format!("condensation width {width} exceeds the width cap {cap}"),
                    ),
                    Err(e) => return Err(e),
                }
            }
            Err(CountError::NotAndOr { .. }) => {}
            Err(e) => return Err(e),
        }
    }

    let widest = s.functions().iter().map(|f| f.arity()).max().unwrap_or(0);
    if widest > caps.arity {
        report.warnings.push(format!(
            "arity {widest} exceeds the table cap {}",
            caps.arity
        ));
    } else {
        let td = tree_decomposition(&closure_graph(s), Strategy::MinFill);
        report.width = Some(td.width());
        if td.width() <= caps.width {
            let c = count_twdp(s, &td, caps.arity)?;
            let branch = if all_tables {
                Branch::BoundedTreewidth
            } else {
                Branch::BoundedDegree
            };
            return done(report, Engine::Twdp, branch, c);
        }
        report.warnings.push(format!(
            "closure width {} exceeds the width cap {}",
            td.width(),
            caps.width
        ));
    }

    let hardness = if all_tables {
        Hardness::LookupPlanar
    } else if and_or_shape {
        Hardness::FormulaPlanar
    } else {
        Hardness::FormulaDegree
    };
    report.warnings.push(format!(
        "intractable branch ({hardness}): exponential fallback"
    ));
    report.engine = Engine::Brute;
    report.branch = Branch::Intractable(hardness);
    if !enumerate {
        return Ok((report, None));
    }
    let c = count_brute(s, caps.brute)?;
    Ok((report, Some(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repr::{FunctionRepr, TruthTable};
    use crate::system::Network;
    use num_bigint::BigUint;

    #[test]
    fn wide_xor_goes_linear() {
        let n = 2000;
        let g = Network::cycle(n);
        let fs = (0..n)
            .map(|_| FunctionRepr::formula("x1 ^ x3", 3).unwrap())
            .collect();
        let s = System::new(g, fs).unwrap();
        let (r, _) = dispatch(&s, &Caps::default()).unwrap();
        assert_eq!(r.engine, Engine::Linear);
        assert_eq!(r.branch, Branch::Linear);
    }

    #[test]
    fn and_star_goes_andor() {
        let leaves = 999;
        let centre = (2..=leaves + 1)
            .map(|j| format!("x{j}"))
            .collect::<Vec<_>>()
            .join(" & ");
        let mut fs = vec![FunctionRepr::formula(&centre, leaves + 1).unwrap()];
        fs.extend((0..leaves).map(|_| FunctionRepr::formula("x1 & x2", 2).unwrap()));
        let s = System::new(Network::star(leaves), fs).unwrap();
        let (r, _) = dispatch(&s, &Caps::default()).unwrap();
        assert_eq!((r.engine, r.branch), (Engine::AndOr, Branch::AndOr));
        assert_eq!(r.classes, None);
        assert_eq!(r.max_degree, leaves);
    }

    #[test]
    fn table_path_goes_twdp() {
        let g = Network::path(6);
        let fs = (0..6)
            .map(|v| {
                let k = g.degree(v) + 1;
                FunctionRepr::Table(TruthTable::from_fn(k, |i| i.count_ones() % 3 == 1))
            })
            .collect();
        let s = System::new(g, fs).unwrap();
        let (r, c) = dispatch(&s, &Caps::default()).unwrap();
        assert_eq!(
            (r.engine, r.branch),
            (Engine::Twdp, Branch::BoundedTreewidth)
        );
        assert_eq!(r.width, Some(2));
        assert_eq!(c, count_brute(&s, 26).unwrap());
    }

    #[test]
    fn dense_majority_falls_back() {
        let g = Network::complete(14);
        let fs = (0..14)
            .map(|_| FunctionRepr::formula("maj(x1, x2, x3)", 14).unwrap())
            .collect();
        let s = System::new(g, fs).unwrap();
        let (r, c) = dispatch(&s, &Caps::default()).unwrap();
        assert_eq!(r.engine, Engine::Brute);
        assert_eq!(r.branch, Branch::Intractable(Hardness::FormulaDegree));
        assert!(r
            .warnings
            .iter()
            .any(|w| w.contains("exponential fallback")));
        assert_eq!(
            r.classes,
            Some(vec![
                PostClass::R0,
                PostClass::R1,
                PostClass::M,
                PostClass::D,
                PostClass::S0Sq,
                PostClass::S1Sq,
                PostClass::D2
            ])
        );
        // everything is decided by x1, x2, x3 agreeing on a majority
        assert_eq!(c, BigUint::from(2u32));
    }

    #[test]
    fn plan_skips_enumeration() {
        let g = Network::complete(30);
        let fs = (0..30)
            .map(|_| FunctionRepr::formula("maj(x1, x2, x3)", 30).unwrap())
            .collect();
        let s = System::new(g, fs).unwrap();
        let r = dispatch_plan(&s, &Caps::default()).unwrap();
        assert_eq!(r.engine, Engine::Brute);
        assert!(r.warnings.iter().any(|w| w.contains("arity 30")));
    }

    #[test]
    fn brute_cap_is_reported() {
        let g = Network::complete(14);
        let fs = (0..14)
            .map(|_| FunctionRepr::formula("maj(x1, x2, x3)", 14).unwrap())
            .collect();
        let s = System::new(g, fs).unwrap();
        let caps = Caps {
            brute: 10,
            ..Caps::default()
        };
        assert_eq!(
            dispatch(&s, &caps).unwrap_err(),
            CountError::BruteCapExceeded { n: 14, cap: 10 }
        );
    }
}
