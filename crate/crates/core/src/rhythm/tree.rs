use std::fmt;

use crate::error::{Error, Result};

use super::Fraction;

/// One node of a partition tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Node {
    Leaf,
    /// Two or three equal subdivisions.
    Split(Vec<Node>),
}

impl Node {
    pub fn leaf_count(&self) -> usize {
        match self {
            Node::Leaf => 1,
            Node::Split(children) => children.iter().map(Node::leaf_count).sum(),
        }
    }

    /// Depth of the deepest leaf below this node (0 for a leaf).
    pub fn height(&self) -> usize {
        match self {
            Node::Leaf => 0,
            Node::Split(children) => 1 + children.iter().map(Node::height).max().unwrap_or(0),
        }
    }

    fn min_leaf_depth(&self) -> usize {
        match self {
            Node::Leaf => 0,
            Node::Split(children) => {
                1 + children.iter().map(Node::min_leaf_depth).min().unwrap_or(0)
            }
        }
    }

    fn check_branching(&self) -> Result<()> {
        match self {
            Node::Leaf => Ok(()),
            Node::Split(children) => {
                if !(2..=3).contains(&children.len()) {
                    return Err(Error::InvalidTree(format!(
                        "a node has {} children; only 2 or 3 are allowed",
                        children.len()
                    )));
                }
                children.iter().try_for_each(Node::check_branching)
            }
        }
    }

    fn write_sexpr(&self, out: &mut String) {
        match self {
            Node::Leaf => out.push('X'),
            Node::Split(children) => {
                out.push('(');
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    c.write_sexpr(out);
                }
                out.push(')');
            }
        }
    }
}

/// The metrical layer a node belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layer {
    Measure,
    Beat,
    Duration,
}

/// How many tree levels the measure and beat layers occupy. Everything
/// below them is the duration layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layering {
    pub measure_depth: usize,
    pub beat_depth: usize,
}

impl Layering {
    pub fn new(measure_depth: usize, beat_depth: usize) -> Self {
        Layering {
            measure_depth,
            beat_depth,
        }
    }

    /// Layer of a node at `depth`. Layers are monotone along every path.
    pub fn layer_at(self, depth: usize) -> Layer {
        if depth < self.measure_depth {
            Layer::Measure
        } else if depth < self.measure_depth + self.beat_depth {
            Layer::Beat
        } else {
            Layer::Duration
        }
    }

    fn duration_start(self) -> usize {
        self.measure_depth + self.beat_depth
    }
}

/// Metrical weight of an onset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BeatStrength {
    Downbeat,
    Beat,
    Offbeat,
}

impl BeatStrength {
    /// `X`, `O` or `o`.
    pub fn mark(self) -> char {
        match self {
            BeatStrength::Downbeat => 'X',
            BeatStrength::Beat => 'O',
            BeatStrength::Offbeat => 'o',
        }
    }
}

/// Strength and duration class of one leaf.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeafInfo {
    pub strength: BeatStrength,
    /// 1 is the slowest class.
    pub duration_class: usize,
}

/// A tree of binary and ternary subdivisions of the piece span. Leaves are
/// note onsets, in time order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionTree {
    root: Node,
    layering: Layering,
}

impl PartitionTree {
    /// Validates branching and that every leaf lies at or below the
    /// duration layer.
    pub fn new(root: Node, layering: Layering) -> Result<Self> {
        root.check_branching()?;
        if root.min_leaf_depth() < layering.duration_start() {
            return Err(Error::InvalidTree(format!(
                "a leaf sits above the duration layer (measure depth {}, beat depth {})",
                layering.measure_depth, layering.beat_depth
            )));
        }
        Ok(PartitionTree { root, layering })
    }

    /// A leaf-only tree: one note filling the whole span.
    pub fn single() -> Self {
        PartitionTree {
            root: Node::Leaf,
            layering: Layering::new(0, 0),
        }
    }

    /// A full tree splitting by each factor in turn, level by level.
    ///
    /// ```
    /// use cantus::rhythm::PartitionTree;
    /// let t = PartitionTree::uniform(&[2], &[2], &[2]).unwrap();
    /// assert_eq!(t.to_sexpr(), "(((X X) (X X)) ((X X) (X X)))");
    /// ```
    pub fn uniform(measure: &[u64], beat: &[u64], duration: &[u64]) -> Result<Self> {
        let factors: Vec<u64> = measure.iter().chain(beat).chain(duration).copied().collect();
        fn build(factors: &[u64]) -> Node {
            match factors.split_first() {
                None => Node::Leaf,
                Some((&f, rest)) => Node::Split((0..f).map(|_| build(rest)).collect()),
            }
        }
        PartitionTree::new(build(&factors), Layering::new(measure.len(), beat.len()))
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn layering(&self) -> Layering {
        self.layering
    }

    pub fn measure_depth(&self) -> usize {
        self.layering.measure_depth
    }

    pub fn beat_depth(&self) -> usize {
        self.layering.beat_depth
    }

    pub fn duration_depth(&self) -> usize {
        self.depth().saturating_sub(self.layering.duration_start())
    }

    pub fn depth(&self) -> usize {
        self.root.height()
    }

    pub fn leaf_count(&self) -> usize {
        self.root.leaf_count()
    }

    /// Leaves in time order as (depth, child-index path).
    fn leaves(&self) -> Vec<(usize, Vec<usize>)> {
        fn walk(node: &Node, path: &mut Vec<usize>, out: &mut Vec<(usize, Vec<usize>)>) {
            match node {
                Node::Leaf => out.push((path.len(), path.clone())),
                Node::Split(children) => {
                    for (i, c) in children.iter().enumerate() {
                        path.push(i);
                        walk(c, path, out);
                        path.pop();
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut Vec::new(), &mut out);
        out
    }

    /// Start of each leaf's span under uniform subdivision, ascending from 0.
    pub fn leaf_onsets(&self) -> Vec<Fraction> {
        self.leaf_spans().into_iter().map(|(s, _)| s).collect()
    }

    /// Length of each leaf's span; they sum to 1.
    pub fn leaf_durations(&self) -> Vec<Fraction> {
        self.leaf_spans().into_iter().map(|(_, w)| w).collect()
    }

    fn leaf_spans(&self) -> Vec<(Fraction, Fraction)> {
        fn walk(node: &Node, start: Fraction, width: Fraction, out: &mut Vec<(Fraction, Fraction)>) {
            match node {
                Node::Leaf => out.push((start, width)),
                Node::Split(children) => {
                    let b = children.len() as u64;
                    for (i, c) in children.iter().enumerate() {
                        let child_start = start + width.scale(i as u64, b);
                        walk(c, child_start, width.scale(1, b), out);
                    }
                }
            }
        }
        let mut out = Vec::new();
        walk(&self.root, Fraction::ZERO, Fraction::ONE, &mut out);
        out
    }

    /// Beat strength and duration class of every leaf.
    ///
    /// A leaf is a downbeat when it opens its measure, a beat when it opens
    /// its beat-layer node, and an offbeat otherwise. The duration class
    /// counts levels below the duration layer's first split.
    pub fn beat_info(&self) -> Vec<LeafInfo> {
        let md = self.layering.measure_depth;
        let dd = self.layering.duration_start();
        self.leaves()
            .into_iter()
            .map(|(depth, path)| {
                let opens = |from: usize| path.iter().skip(from).all(|&i| i == 0);
                let strength = if opens(md) {
                    BeatStrength::Downbeat
                } else if opens(dd) {
                    BeatStrength::Beat
                } else {
                    BeatStrength::Offbeat
                };
                LeafInfo {
                    strength,
                    duration_class: depth.saturating_sub(dd).max(1),
                }
            })
            .collect()
    }

    /// Number of measures: the nodes at the measure depth.
    pub fn measure_count(&self) -> usize {
        fn count(node: &Node, depth: usize) -> usize {
            match (depth, node) {
                (0, _) | (_, Node::Leaf) => 1,
                (d, Node::Split(children)) => children.iter().map(|c| count(c, d - 1)).sum(),
            }
        }
        count(&self.root, self.layering.measure_depth)
    }

    /// Leaf count of each measure subtree, in time order.
    pub fn measure_sizes(&self) -> Vec<usize> {
        fn collect(node: &Node, depth: usize, out: &mut Vec<usize>) {
            match (depth, node) {
                (0, n) | (_, n @ Node::Leaf) => out.push(n.leaf_count()),
                (d, Node::Split(children)) => {
                    children.iter().for_each(|c| collect(c, d - 1, out))
                }
            }
        }
        let mut out = Vec::new();
        collect(&self.root, self.layering.measure_depth, &mut out);
        out
    }

    /// Single-spaced s-expression with `X` leaves. A layering other than the
    /// one [`from_sexpr`](Self::from_sexpr) would infer is written in front
    /// as `[MD BD]`.
    ///
    /// ```
    /// use cantus::rhythm::{Layering, PartitionTree};
    /// let t = PartitionTree::from_sexpr("((X X) (X X))").unwrap();
    /// assert_eq!(t.to_sexpr(), "((X X) (X X))");
    /// let deep = PartitionTree::from_sexpr_with_layering("((X X) (X X))", Layering::new(1, 0)).unwrap();
    /// assert_eq!(deep.to_sexpr(), "[1 0] ((X X) (X X))");
    /// assert_eq!(PartitionTree::from_sexpr(&deep.to_sexpr()).unwrap(), deep);
    /// ```
    pub fn to_sexpr(&self) -> String {
        let mut out = String::new();
        if self.layering != inferred_layering(&self.root) {
            out.push_str(&format!(
                "[{} {}] ",
                self.layering.measure_depth, self.layering.beat_depth
            ));
        }
        self.root.write_sexpr(&mut out);
        out
    }

    /// Parse an s-expression. Without a `[MD BD]` prefix the layering is
    /// inferred from the shallowest leaf: one measure level and one beat
    /// level when every leaf is at depth 3 or more, a single beat level at
    /// depth 2, none above that.
    pub fn from_sexpr(text: &str) -> Result<Self> {
        let (root, given) = parse_sexpr(text)?;
        let layering = given.unwrap_or_else(|| inferred_layering(&root));
        PartitionTree::new(root, layering)
    }

    /// Parse with a known layering; a prefix, if present, must agree.
    pub fn from_sexpr_with_layering(text: &str, layering: Layering) -> Result<Self> {
        let (root, given) = parse_sexpr(text)?;
        if given.is_some_and(|g| g != layering) {
            return Err(Error::InvalidTree(format!(
                "layering prefix disagrees with {layering:?}"
            )));
        }
        PartitionTree::new(root, layering)
    }
}

fn inferred_layering(root: &Node) -> Layering {
    match root.min_leaf_depth() {
        0 | 1 => Layering::new(0, 0),
        2 => Layering::new(0, 1),
        _ => Layering::new(1, 1),
    }
}

impl fmt::Display for PartitionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexpr())
    }
}

fn parse_sexpr(text: &str) -> Result<(Node, Option<Layering>)> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    fn err(position: usize, message: impl Into<String>) -> Error {
        Error::TreeSyntax {
            position,
            message: message.into(),
        }
    }
    fn node(bytes: &[u8], pos: &mut usize, skip_ws: &dyn Fn(&mut usize)) -> Result<Node> {
        skip_ws(pos);
        match bytes.get(*pos) {
            Some(b'X') => {
                *pos += 1;
                Ok(Node::Leaf)
            }
            Some(b'(') => {
                let open = *pos;
                *pos += 1;
                let mut children = Vec::new();
                loop {
                    skip_ws(pos);
                    match bytes.get(*pos) {
                        Some(b')') => {
                            *pos += 1;
                            break;
                        }
                        None => return Err(err(*pos, "unclosed parenthesis")),
                        _ => children.push(node(bytes, pos, skip_ws)?),
                    }
                }
                if !(2..=3).contains(&children.len()) {
                    return Err(err(
                        open,
                        format!("{} children; only 2 or 3 are allowed", children.len()),
                    ));
                }
                Ok(Node::Split(children))
            }
            Some(&c) => Err(err(*pos, format!("unexpected `{}`", c as char))),
            None => Err(err(*pos, "unexpected end of input")),
        }
    }
    fn number(bytes: &[u8], pos: &mut usize, skip_ws: &dyn Fn(&mut usize)) -> Result<usize> {
        skip_ws(pos);
        let start = *pos;
        while bytes.get(*pos).is_some_and(u8::is_ascii_digit) {
            *pos += 1;
        }
        std::str::from_utf8(&bytes[start..*pos])
            .unwrap()
            .parse()
            .map_err(|_| err(start, "expected a layer depth"))
    }
    skip_ws(&mut pos);
    let mut layering = None;
    if bytes.get(pos) == Some(&b'[') {
        pos += 1;
        let md = number(bytes, &mut pos, &skip_ws)?;
        let bd = number(bytes, &mut pos, &skip_ws)?;
        skip_ws(&mut pos);
        if bytes.get(pos) != Some(&b']') {
            return Err(err(pos, "expected `]`"));
        }
        pos += 1;
        layering = Some(Layering::new(md, bd));
    }
    let root = node(bytes, &mut pos, &skip_ws)?;
    skip_ws(&mut pos);
    if pos != bytes.len() {
        return Err(err(pos, "trailing input"));
    }
    Ok((root, layering))
}
