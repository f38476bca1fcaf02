use super::tree::{Layering, Node, PartitionTree};

/// Upper bounds on the number of tree levels in each layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerCaps {
    pub measure: usize,
    pub beat: usize,
    pub duration: usize,
}

impl LayerCaps {
    pub fn new(measure: usize, beat: usize, duration: usize) -> Self {
        LayerCaps {
            measure,
            beat,
            duration,
        }
    }
}

impl Default for LayerCaps {
    fn default() -> Self {
        LayerCaps::new(2, 2, 2)
    }
}

/// Counts subtrees by (leaves, minimum leaf depth, maximum leaf depth).
#[derive(Debug)]
struct Counter {
    depths: usize,
    memo: Vec<Option<u128>>,
}

impl Counter {
    fn new(leaves: usize, max_depth: usize) -> Self {
        let depths = max_depth + 1;
        Counter {
            depths,
            memo: vec![None; (leaves + 1) * depths * depths],
        }
    }

    fn count(&mut self, n: usize, min: usize, max: usize) -> u128 {
        if n == 0 {
            return 0;
        }
        let key = (n * self.depths + min) * self.depths + max;
        if let Some(c) = self.memo[key] {
            return c;
        }
        let mut total = u128::from(n == 1 && min == 0);
        if max > 0 && n >= 2 {
            let (cmin, cmax) = (min.saturating_sub(1), max - 1);
            for a in 1..n {
                total += self.count(a, cmin, cmax) * self.count(n - a, cmin, cmax);
            }
            for a in 1..n {
                for b in 1..n - a {
                    let c = n - a - b;
                    total += self.count(a, cmin, cmax)
                        * self.count(b, cmin, cmax)
                        * self.count(c, cmin, cmax);
                }
            }
        }
        self.memo[key] = Some(total);
        total
    }

    /// The subtree at position `rank` of the canonical order: the bare leaf
    /// first, then binary splits, then ternary ones; child sizes ascend
    /// lexicographically and the first child varies slowest.
    fn unrank(&mut self, n: usize, min: usize, max: usize, mut rank: u128) -> Node {
        if n == 1 && min == 0 {
            if rank == 0 {
                return Node::Leaf;
            }
            rank -= 1;
        }
        let (cmin, cmax) = (min.saturating_sub(1), max - 1);
        for a in 1..n {
            let sizes = [a, n - a];
            let block = self.product(&sizes, cmin, cmax);
            if rank < block {
                return self.unrank_children(&sizes, cmin, cmax, rank);
            }
            rank -= block;
        }
        for a in 1..n {
            for b in 1..n - a {
                let sizes = [a, b, n - a - b];
                let block = self.product(&sizes, cmin, cmax);
                if rank < block {
                    return self.unrank_children(&sizes, cmin, cmax, rank);
                }
                rank -= block;
            }
        }
        unreachable!("rank beyond the subtree count")
    }

    fn product(&mut self, sizes: &[usize], min: usize, max: usize) -> u128 {
        sizes.iter().map(|&s| self.count(s, min, max)).product()
    }

    fn unrank_children(&mut self, sizes: &[usize], min: usize, max: usize, mut rank: u128) -> Node {
        let mut children = Vec::with_capacity(sizes.len());
        for (i, &s) in sizes.iter().enumerate() {
            let rest = self.product(&sizes[i + 1..], min, max);
            children.push(self.unrank(s, min, max, rank / rest));
            rank %= rest;
        }
        Node::Split(children)
    }
}

/// Every partition tree with `leaf_count` leaves whose layers fit `caps`,
/// in a fixed order. Trees of more than one leaf have at least one level in
/// each layer; a single leaf is the bare tree.
///
/// The set is counted exactly up front, so a tree can also be picked by
/// index without walking the stream.
///
/// ```
/// use cantus::rhythm::{enumerate_trees, LayerCaps};
/// let mut trees = enumerate_trees(8, LayerCaps::new(1, 1, 1));
/// assert_eq!(trees.total(), 1);
/// assert_eq!(trees.get(0).unwrap().to_sexpr(), "(((X X) (X X)) ((X X) (X X)))");
/// ```
pub fn enumerate_trees(leaf_count: usize, caps: LayerCaps) -> TreeStream {
    let mut counter = Counter::new(leaf_count, caps.measure + caps.beat + caps.duration);
    let mut blocks = Vec::new();
    if leaf_count == 1 {
        blocks.push((Layering::new(0, 0), 0, 0, 1));
    } else if leaf_count > 1 {
        for md in 1..=caps.measure {
            for bd in 1..=caps.beat {
                let min = md + bd + 1;
                let max = md + bd + caps.duration;
                let c = counter.count(leaf_count, min, max);
                if c > 0 {
                    blocks.push((Layering::new(md, bd), min, max, c));
                }
            }
        }
    }
    TreeStream {
        leaf_count,
        counter,
        blocks,
        next: 0,
    }
}

/// A deterministic stream of partition trees; see [`enumerate_trees`].
#[derive(Debug)]
pub struct TreeStream {
    leaf_count: usize,
    counter: Counter,
    /// (layering, min leaf depth, max leaf depth, count)
    blocks: Vec<(Layering, usize, usize, u128)>,
    next: u128,
}

impl TreeStream {
    /// How many trees the stream holds in all.
    pub fn total(&self) -> u128 {
        self.blocks.iter().map(|b| b.3).sum()
    }

    /// The tree at `index` of the stream.
    pub fn get(&mut self, mut index: u128) -> Option<PartitionTree> {
        for &(layering, min, max, count) in &self.blocks {
            if index < count {
                let root = self.counter.unrank(self.leaf_count, min, max, index);
                return Some(
                    PartitionTree::new(root, layering).expect("enumerated trees are valid"),
                );
            }
            index -= count;
        }
        None
    }
}

impl Iterator for TreeStream {
    type Item = PartitionTree;

    fn next(&mut self) -> Option<PartitionTree> {
        let tree = self.get(self.next)?;
        self.next += 1;
        Some(tree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_leaf() {
        let all: Vec<_> = enumerate_trees(1, LayerCaps::default()).collect();
        assert_eq!(all, vec![PartitionTree::single()]);
    }

    #[test]
    fn inexpressible_counts_are_empty() {
        assert_eq!(enumerate_trees(5, LayerCaps::new(1, 1, 1)).count(), 0);
        assert_eq!(enumerate_trees(7, LayerCaps::default()).count(), 0);
        assert_eq!(enumerate_trees(0, LayerCaps::default()).count(), 0);
    }

    #[test]
    fn contains_the_duet_tree() {
        let target = "(((X X) (X X)) ((X (X X X)) ((X X) (X X))))";
        assert!(enumerate_trees(12, LayerCaps::default()).any(|t| t.to_sexpr() == target));
    }

    #[test]
    fn stream_is_sorted_by_layering_then_distinct() {
        let trees: Vec<_> = enumerate_trees(12, LayerCaps::default()).collect();
        assert_eq!(trees.len() as u128, enumerate_trees(12, LayerCaps::default()).total());
        let mut seen = std::collections::HashSet::new();
        assert!(trees.iter().all(|t| seen.insert(t.clone())));
        assert!(trees.windows(2).all(|w| w[0].layering() <= w[1].layering()));
    }

    #[test]
    fn caps_are_respected() {
        for t in enumerate_trees(12, LayerCaps::new(2, 1, 2)) {
            assert!((1..=2).contains(&t.measure_depth()));
            assert_eq!(t.beat_depth(), 1);
            assert!((1..=2).contains(&t.duration_depth()));
            assert_eq!(t.leaf_count(), 12);
        }
    }
}
