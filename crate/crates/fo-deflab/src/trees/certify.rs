//! Definability certification for diverging trees: check the radius-based
//! bound against every graph up to an order bound, classifying opponents by
//! the argument that handles them.

use super::catalog::is_diverging_tree;
use crate::efgame::distinguishing_rank;
use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, isomorphic, Distance, Graph};

/// Which argument separates the tree from an opponent class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum OpponentClass {
    /// Different diameter, including disconnected opponents.
    DifferentDiameter,
    /// Connected non-tree of the same diameter.
    NonTree,
    /// Diverging tree of the same diameter.
    BothDiverging,
    /// Non-diverging tree of the same diameter.
    DivergenceBreak,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ClassReport {
    pub class: OpponentClass,
    pub opponents: usize,
    pub max_rank: u32,
    pub bound: u32,
    pub within_bound: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct DefinabilityReport {
    pub order: usize,
    pub radius: u32,
    pub order_bound: usize,
    /// The certified bounded definability rank: the maximum distinguishing
    /// rank over all non-isomorphic opponents up to the order bound.
    pub rank: u32,
    pub rank_within_radius_bound: bool,
    pub classes: Vec<ClassReport>,
}

/// Certify that a diverging tree is defined within rank `radius + 2` among
/// all graphs of order at most `order_bound`, reporting the binding class
/// per opponent kind.
pub fn certify_tree_definability(
    t: &Graph,
    order_bound: usize,
    max_k: u32,
) -> Result<DefinabilityReport> {
    if !t.is_tree() || !is_diverging_tree(t)? {
        return Err(Error::Precondition(
            "certification needs a diverging tree".into(),
        ));
    }
    let metrics = t.metrics();
    let radius = match metrics.radius {
        Distance::Finite(r) => r,
        Distance::Infinity => unreachable!("trees are connected"),
    };
    let diameter = metrics.diameter;
    let mut classes: Vec<(OpponentClass, u32, Vec<u32>)> = vec![
        (OpponentClass::DifferentDiameter, radius + 2, Vec::new()),
        (OpponentClass::NonTree, radius + 2, Vec::new()),
        (OpponentClass::BothDiverging, radius + 1, Vec::new()),
        (OpponentClass::DivergenceBreak, radius + 2, Vec::new()),
    ];
    for n in 1..=order_bound {
        for h in enumerate_graphs(n, order_bound.max(9))? {
            if isomorphic(t, &h) {
                continue;
            }
            let class = if h.metrics().diameter != diameter {
                OpponentClass::DifferentDiameter
            } else if !h.is_tree() {
                OpponentClass::NonTree
            } else if is_diverging_tree(&h)? {
                OpponentClass::BothDiverging
            } else {
                OpponentClass::DivergenceBreak
            };
            let rank = distinguishing_rank(t, &h, max_k)?;
            classes
                .iter_mut()
                .find(|(c, _, _)| *c == class)
                .unwrap()
                .2
                .push(rank);
        }
    }
    let class_reports: Vec<ClassReport> = classes
        .into_iter()
        .map(|(class, bound, ranks)| {
            let max_rank = ranks.iter().copied().max().unwrap_or(0);
            ClassReport {
                class,
                opponents: ranks.len(),
                max_rank,
                bound,
                within_bound: max_rank <= bound,
            }
        })
        .collect();
    let rank = class_reports.iter().map(|c| c.max_rank).max().unwrap();
    Ok(DefinabilityReport {
        order: t.order(),
        radius,
        order_bound,
        rank,
        rank_within_radius_bound: rank <= radius + 2,
        classes: class_reports,
    })
}

#[cfg(test)]
mod tests {
    use super::super::catalog::gen_diverging_tree;
    use super::*;

    #[test]
    fn rejects_non_diverging_input() {
        // a star is not diverging
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(certify_tree_definability(&star, 4, 7).is_err());
    }

    #[test]
    fn small_diverging_tree_certifies_at_low_bound() {
        let t = gen_diverging_tree(7, 2).unwrap();
        let report = certify_tree_definability(&t, 6, 7).unwrap();
        assert!(report.rank_within_radius_bound, "{report:?}");
    }
}
