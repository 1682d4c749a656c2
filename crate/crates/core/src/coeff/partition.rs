use serde::Serialize;

use crate::counting::{three_valent_hypotheses, Limits};
use crate::error::{Error, Result};
use crate::gf::PrimePower;
use crate::graph::{compatible_forests, spanning_trees, EdgeSet, Graph, VertexPartition};
use crate::poly::corner_reduction;

/// Exact number of edge partitions together with its residue mod `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartitionCount {
    pub count: u64,
    pub residue: u64,
    pub p: u64,
}

/// Ordered tuples `(T_1..T_c, F_1..F_c)` of spanning trees of `h` and spanning
/// forests compatible with `partition` that use every edge exactly `c`
/// times. Each visited search node is charged against the evaluation budget.
pub fn count_tree_forest_partitions(
    h: &Graph,
    partition: &VertexPartition,
    copies: usize,
    limits: &Limits,
) -> Result<u64> {
    let trees = spanning_trees(h);
    let forests = compatible_forests(h, partition);
    let mut slots: Vec<&[EdgeSet]> = Vec::with_capacity(2 * copies);
    slots.extend(std::iter::repeat_n(trees.as_slice(), copies));
    slots.extend(std::iter::repeat_n(forests.as_slice(), copies));
    let mut search =
        Search { slots, used: vec![0; h.edge_count()], copies, nodes: 0, budget: limits.budget_evaluations };
    search.run(0)
}

struct Search<'a> {
    slots: Vec<&'a [EdgeSet]>,
    used: Vec<usize>,
    copies: usize,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<u64> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget {
                what: "partition search node",
                required: self.nodes as u128,
                budget: self.budget,
            });
        }
        let remaining = self.slots.len() - depth;
        // Every edge still needs its missing copies from the remaining slots.
        if self.used.iter().any(|&u| self.copies - u > remaining) {
            return Ok(0);
        }
        if depth == self.slots.len() {
            return Ok(1);
        }
        let mut total = 0;
        for &set in self.slots[depth] {
            if set.iter().any(|e| self.used[e.index()] == self.copies) {
                continue;
            }
            set.iter().for_each(|e| self.used[e.index()] += 1);
            total += self.run(depth + 1)?;
            set.iter().for_each(|e| self.used[e.index()] -= 1);
        }
        Ok(total)
    }
}

/// Partitions of `q - 1` copies of the edges of `H = G - v` into `q - 1`
/// spanning trees and `q - 1` forests compatible with `{b}, {a, c}`, where
/// `v` is the deterministic 3-valent corner. Limited to `q <= 3`.
pub fn count_edge_partitions(g: &Graph, order: PrimePower, limits: &Limits) -> Result<PartitionCount> {
    if order.q() > 3 {
        return Err(Error::Precondition(format!("edge-partition enumeration supports q <= 3, got q = {}", order.q())));
    }
    let corner = three_valent_hypotheses(g)?;
    let red = corner_reduction(g, corner)?;
    let [a, b, c] = corner.ends.map(|v| g.label(v).to_string());
    let partition = VertexPartition::from_labels(&red.h, &[&[b.as_str()], &[a.as_str(), c.as_str()]])?;
    let count = count_tree_forest_partitions(&red.h, &partition, (order.q() - 1) as usize, limits)?;
    Ok(PartitionCount { count, residue: count % order.p(), p: order.p() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    #[test]
    fn triangle_toy_count() {
        let t = parse_edge_list("a b\na c\nb c").unwrap();
        let p = VertexPartition::from_labels(&t, &[&["b"], &["a", "c"]]).unwrap();
        // Only T = {ab, bc} with F = {ac}.
        assert_eq!(count_tree_forest_partitions(&t, &p, 1, &Limits::default()).unwrap(), 1);
    }

    #[test]
    fn large_q_rejected() {
        let k4 = parse_edge_list("a b\na c\nb c\na d\nc d\nb d").unwrap();
        let err = count_edge_partitions(&k4, PrimePower::new(2, 2).unwrap(), &Limits::default());
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn node_budget_enforced() {
        let k4 = parse_edge_list("a b\na c\nb c\na d\nc d\nb d").unwrap();
        let tiny = Limits { budget_evaluations: 2, ..Limits::default() };
        let err = count_edge_partitions(&k4, PrimePower::new(3, 1).unwrap(), &tiny);
        assert!(matches!(err, Err(Error::Budget { .. })));
    }
}
