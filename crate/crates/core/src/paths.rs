//! Lattice-path and tree objects: colored higher-order Motzkin paths, k-Dyck
//! paths with bounded dips, and k-ary trees, together with their validators,
//! peak statistics, and text/JSON serializations.
//!
//! A colored order-l Motzkin path uses an up step `U = (1,1)` and down steps
//! `D_i = (1,-i)` for `0 <= i <= l`, never dips below the x-axis, and colors
//! every `D_i` with `i < l`: one of `alpha_i` colors when the step ends on the
//! x-axis, one of `beta_i` colors when it ends above. `U` and the steepest
//! step `D_l` are uncolored. A k-Dyck path of depth `a` uses `U` and
//! `D = (1, 1-k)`, stays weakly above `y = -a`, and both its length and final
//! height are multiples of `k`.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("step {position} drops below the x-axis")]
    NegativeHeight { position: usize },
    #[error("step {position}: {reason}")]
    ColorOutOfRange { position: usize, reason: String },
    #[error("step {position} has drop {drop} but the scheme order is {order}")]
    BadDropIndex { position: usize, drop: usize, order: usize },
    #[error("step {position} reaches height {height}, below depth -{depth}")]
    DepthViolation { position: usize, height: i64, depth: usize },
    #[error("not k-semialigned: {0}")]
    NotSemialigned(&'static str),
    #[error("{0}")]
    BadParams(&'static str),
    #[error("operation undefined on the empty path")]
    EmptyPath,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid tree: {0}")]
    BadTree(&'static str),
}

/// Color multiplicities for an order-l Motzkin path family. `alpha[i]` colors
/// a `D_i` step ending on the x-axis, `beta[i]` one ending above it; both
/// vectors have length l and `D_l` is uncolored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColorScheme {
    alpha: Vec<u64>,
    beta: Vec<u64>,
}

impl ColorScheme {
    pub fn new(alpha: Vec<u64>, beta: Vec<u64>) -> Result<Self, PathError> {
        if alpha.is_empty() {
            return Err(PathError::BadParams("scheme order must be at least 1"));
        }
        if alpha.len() != beta.len() {
            return Err(PathError::BadParams("alpha and beta must have equal length"));
        }
        Ok(ColorScheme { alpha, beta })
    }

    /// The order l: the steepest step is `D_l`.
    pub fn order(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[u64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[u64] {
        &self.beta
    }

    /// How many colors a `D_drop` step ending at `end_height` admits;
    /// `None` for the uncolored `D_l`.
    pub fn colors_for(&self, drop: usize, end_height: usize) -> Option<u64> {
        if drop == self.order() {
            None
        } else if end_height == 0 {
            Some(self.alpha[drop])
        } else {
            Some(self.beta[drop])
        }
    }
}

impl Serialize for ColorScheme {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawScheme { order: self.order(), alpha: self.alpha.clone(), beta: self.beta.clone() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ColorScheme {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawScheme::deserialize(deserializer)?;
        if raw.order != raw.alpha.len() {
            return Err(D::Error::custom("scheme order disagrees with tuple length"));
        }
        ColorScheme::new(raw.alpha, raw.beta).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawScheme {
    order: usize,
    alpha: Vec<u64>,
    beta: Vec<u64>,
}

/// One step of a colored Motzkin path. Colors are 1-based; `color` is
/// `Some` exactly for colored drops (`drop < l`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Down { drop: usize, color: Option<u64> },
}

impl Step {
    /// Level step `D_0` with the given color.
    pub fn level(color: u64) -> Step {
        Step::Down { drop: 0, color: Some(color) }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Up => write!(f, "U"),
            Step::Down { drop, color: None } => write!(f, "D{drop}"),
            Step::Down { drop, color: Some(c) } => write!(f, "D{drop}:{c}"),
        }
    }
}

/// A validated colored Motzkin path; constructed only through
/// [`validate_motzkin`] (or deserialization, which revalidates).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotzkinPath {
    scheme: ColorScheme,
    steps: Vec<Step>,
    height: usize,
}

/// Checks a step list against a scheme and wraps it as a [`MotzkinPath`].
///
/// Verified per step: the drop index is at most the order, the path never
/// dips below the x-axis, colored drops carry a color in `1..=alpha_i` (on
/// the axis) or `1..=beta_i` (above it), and `U`/`D_l` carry none.
pub fn validate_motzkin(steps: Vec<Step>, scheme: ColorScheme) -> Result<MotzkinPath, PathError> {
    let order = scheme.order();
    let mut height: usize = 0;
    for (position, step) in steps.iter().enumerate() {
        match *step {
            Step::Up => height += 1,
            Step::Down { drop, color } => {
                if drop > order {
                    return Err(PathError::BadDropIndex { position, drop, order });
                }
                height = height.checked_sub(drop).ok_or(PathError::NegativeHeight { position })?;
                match (scheme.colors_for(drop, height), color) {
                    (None, None) => {}
                    (None, Some(c)) => {
                        return Err(PathError::ColorOutOfRange {
                            position,
                            reason: format!("D{drop} is uncolored but carries color {c}"),
                        })
                    }
                    (Some(_), None) => {
                        return Err(PathError::ColorOutOfRange {
                            position,
                            reason: format!("D{drop} requires a color"),
                        })
                    }
                    (Some(limit), Some(c)) => {
                        if c < 1 || c > limit {
                            return Err(PathError::ColorOutOfRange {
                                position,
                                reason: format!(
                                    "color {c} outside 1..={limit} for D{drop} ending at height {height}"
                                ),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(MotzkinPath { scheme, steps, height })
}

impl MotzkinPath {
    /// Number of steps.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Final height of the path.
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn scheme(&self) -> &ColorScheme {
        &self.scheme
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Height after each step.
    pub fn end_heights(&self) -> Vec<usize> {
        let mut h = 0usize;
        self.steps
            .iter()
            .map(|s| {
                match *s {
                    Step::Up => h += 1,
                    Step::Down { drop, .. } => h -= drop,
                }
                h
            })
            .collect()
    }

    /// Space-separated step list, e.g. `U D0:2 D1:1 U D2`; empty string for
    /// the empty path.
    pub fn to_text(&self) -> String {
        self.steps.iter().map(Step::to_string).collect::<Vec<_>>().join(" ")
    }

    /// Parses the text form against a scheme, validating the result.
    pub fn parse_text(text: &str, scheme: ColorScheme) -> Result<MotzkinPath, PathError> {
        let mut steps = Vec::new();
        for token in text.split_whitespace() {
            steps.push(parse_step(token)?);
        }
        validate_motzkin(steps, scheme)
    }

    pub(crate) fn from_validated_parts(
        scheme: ColorScheme,
        steps: Vec<Step>,
        height: usize,
    ) -> MotzkinPath {
        debug_assert!(
            validate_motzkin(steps.clone(), scheme.clone()).map(|p| p.height) == Ok(height)
        );
        MotzkinPath { scheme, steps, height }
    }
}

fn parse_step(token: &str) -> Result<Step, PathError> {
    if token == "U" {
        return Ok(Step::Up);
    }
    let rest = token
        .strip_prefix('D')
        .ok_or_else(|| PathError::Parse(format!("unknown step token {token:?}")))?;
    let (drop_text, color) = match rest.split_once(':') {
        Some((d, c)) => {
            let color = c
                .parse::<u64>()
                .map_err(|_| PathError::Parse(format!("bad color in {token:?}")))?;
            (d, Some(color))
        }
        None => (rest, None),
    };
    let drop = drop_text
        .parse::<usize>()
        .map_err(|_| PathError::Parse(format!("bad drop index in {token:?}")))?;
    Ok(Step::Down { drop, color })
}

impl Serialize for MotzkinPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let steps = self
            .steps
            .iter()
            .map(|s| match *s {
                Step::Up => RawStep { kind: "U".into(), drop: None, color: None },
                Step::Down { drop, color } => RawStep { kind: "D".into(), drop: Some(drop), color },
            })
            .collect();
        RawMotzkin { scheme: self.scheme.clone(), steps }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MotzkinPath {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawMotzkin::deserialize(deserializer)?;
        let mut steps = Vec::with_capacity(raw.steps.len());
        for s in raw.steps {
            steps.push(match s.kind.as_str() {
                "U" => Step::Up,
                "D" => Step::Down {
                    drop: s.drop.ok_or_else(|| D::Error::custom("D step without drop"))?,
                    color: s.color,
                },
                other => return Err(D::Error::custom(format!("unknown step kind {other:?}"))),
            });
        }
        validate_motzkin(steps, raw.scheme).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawMotzkin {
    scheme: ColorScheme,
    steps: Vec<RawStep>,
}

#[derive(Serialize, Deserialize)]
struct RawStep {
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    drop: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    color: Option<u64>,
}

/// One step of a k-Dyck path: `U = (1,1)` or `D = (1, 1-k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DyckStep {
    Up,
    Down,
}

/// A validated k-Dyck path of depth `a`: stays weakly above `y = -a`, with
/// length `kn` and final height `km`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DyckPath {
    k: usize,
    depth: usize,
    steps: Vec<DyckStep>,
}

/// Checks a `{U, D}` step list and wraps it as a [`DyckPath`].
pub fn validate_dyck(steps: Vec<DyckStep>, k: usize, depth: usize) -> Result<DyckPath, PathError> {
    check_dyck_params(k, depth)?;
    let mut h: i64 = 0;
    for (position, step) in steps.iter().enumerate() {
        h += rise(*step, k);
        if h < -(depth as i64) {
            return Err(PathError::DepthViolation { position, height: h, depth });
        }
    }
    if !steps.len().is_multiple_of(k) {
        return Err(PathError::NotSemialigned("length is not a multiple of k"));
    }
    if h < 0 || h % k as i64 != 0 {
        return Err(PathError::NotSemialigned("final height is not a nonnegative multiple of k"));
    }
    Ok(DyckPath { k, depth, steps })
}

pub(crate) fn check_dyck_params(k: usize, depth: usize) -> Result<(), PathError> {
    if k < 2 {
        return Err(PathError::BadParams("k must be at least 2"));
    }
    if depth >= k {
        return Err(PathError::BadParams("depth must satisfy 0 <= a <= k-1"));
    }
    Ok(())
}

fn rise(step: DyckStep, k: usize) -> i64 {
    match step {
        DyckStep::Up => 1,
        DyckStep::Down => 1 - k as i64,
    }
}

impl DyckPath {
    pub fn k(&self) -> usize {
        self.k
    }

    /// The depth bound `a`: the path stays weakly above `y = -a`.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn steps(&self) -> &[DyckStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Semilength `n` (the length is `kn`).
    pub fn semilength(&self) -> usize {
        self.steps.len() / self.k
    }

    /// Semiheight `m` (the final height is `km`).
    pub fn semiheight(&self) -> usize {
        let h: i64 = self.steps.iter().map(|&s| rise(s, self.k)).sum();
        h as usize / self.k
    }

    /// Height after each step (may dip as low as `-a`).
    pub fn heights(&self) -> Vec<i64> {
        let mut h = 0i64;
        self.steps
            .iter()
            .map(|&s| {
                h += rise(s, self.k);
                h
            })
            .collect()
    }

    /// Compact letter form, e.g. `UUDUUD`; empty string for the empty path.
    pub fn to_text(&self) -> String {
        self.steps
            .iter()
            .map(|s| match s {
                DyckStep::Up => 'U',
                DyckStep::Down => 'D',
            })
            .collect()
    }

    /// Parses the compact letter form, validating the result.
    pub fn parse_text(text: &str, k: usize, depth: usize) -> Result<DyckPath, PathError> {
        let steps = text
            .trim()
            .chars()
            .map(|c| match c {
                'U' => Ok(DyckStep::Up),
                'D' => Ok(DyckStep::Down),
                other => Err(PathError::Parse(format!("unknown dyck step {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        validate_dyck(steps, k, depth)
    }

    pub(crate) fn from_validated_parts(k: usize, depth: usize, steps: Vec<DyckStep>) -> DyckPath {
        debug_assert!(validate_dyck(steps.clone(), k, depth).is_ok());
        DyckPath { k, depth, steps }
    }
}

impl Serialize for DyckPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawDyck { k: self.k, depth: self.depth, steps: self.to_text() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DyckPath {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawDyck::deserialize(deserializer)?;
        DyckPath::parse_text(&raw.steps, raw.k, raw.depth).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawDyck {
    k: usize,
    depth: usize,
    steps: String,
}

/// Heights of the peaks of a k-Dyck path: for every `U` immediately followed
/// by `D`, the height at the right end of the `U`.
pub fn peaks_of(path: &DyckPath) -> Vec<i64> {
    let heights = path.heights();
    path.steps()
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] == DyckStep::Up && w[1] == DyckStep::Down)
        .map(|(i, _)| heights[i])
        .collect()
}

/// Peak-height residues of a path modulo its `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeakParity {
    /// No peaks at all; such a path belongs to every parity class.
    NoPeaks,
    /// Every peak height is congruent to this residue mod k.
    Uniform(usize),
    /// Peak heights fall in at least two residue classes.
    Mixed,
}

impl PeakParity {
    /// Whether the path belongs to parity class `i`.
    pub fn matches_class(&self, i: usize) -> bool {
        match *self {
            PeakParity::NoPeaks => true,
            PeakParity::Uniform(j) => j == i,
            PeakParity::Mixed => false,
        }
    }
}

/// Classifies the peak heights of a nonempty path modulo `k`.
pub fn peak_parity_of(path: &DyckPath) -> Result<PeakParity, PathError> {
    if path.is_empty() {
        return Err(PathError::EmptyPath);
    }
    let k = path.k() as i64;
    let mut classes = peaks_of(path).into_iter().map(|h| h.rem_euclid(k) as usize);
    match classes.next() {
        None => Ok(PeakParity::NoPeaks),
        Some(first) => {
            if classes.all(|c| c == first) {
                Ok(PeakParity::Uniform(first))
            } else {
                Ok(PeakParity::Mixed)
            }
        }
    }
}

/// Whether the path contains a subpath `U^r D` ending at height 0 (a
/// forbidden hill in the (k, r)-Fine family). Requires `1 <= r <= k-1`.
pub fn has_forbidden_hill(path: &DyckPath, r: usize) -> Result<bool, PathError> {
    if r == 0 || r >= path.k() {
        return Err(PathError::BadParams("hill width must satisfy 1 <= r <= k-1"));
    }
    let heights = path.heights();
    let steps = path.steps();
    for end in r..steps.len() {
        if heights[end] == 0
            && steps[end] == DyckStep::Down
            && steps[end - r..end].iter().all(|&s| s == DyckStep::Up)
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// An ordered rooted tree in which every vertex has at most `k` children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KaryTree {
    k: usize,
    root: TreeNode,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeNode {
    pub children: Vec<TreeNode>,
}

impl TreeNode {
    pub fn leaf() -> TreeNode {
        TreeNode { children: Vec::new() }
    }

    pub fn with_children(children: Vec<TreeNode>) -> TreeNode {
        TreeNode { children }
    }

    fn edge_count(&self) -> usize {
        self.children.iter().map(|c| 1 + c.edge_count()).sum()
    }

    fn max_arity(&self) -> usize {
        self.children.iter().map(TreeNode::max_arity).max().unwrap_or(0).max(self.children.len())
    }

    fn write_text(&self, out: &mut String) {
        out.push('(');
        for c in &self.children {
            c.write_text(out);
        }
        out.push(')');
    }
}

impl KaryTree {
    pub fn new(k: usize, root: TreeNode) -> Result<KaryTree, PathError> {
        if k < 2 {
            return Err(PathError::BadParams("k must be at least 2"));
        }
        if root.max_arity() > k {
            return Err(PathError::BadTree("a vertex has more than k children"));
        }
        Ok(KaryTree { k, root })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    /// Number of edges (the size parameter of the tree families).
    pub fn edge_count(&self) -> usize {
        self.root.edge_count()
    }

    /// Nested parentheses, one `(...)` per vertex, e.g. `(()(()))`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.root.write_text(&mut out);
        out
    }

    /// Parses the nested-parentheses form.
    pub fn parse_text(text: &str, k: usize) -> Result<KaryTree, PathError> {
        let bytes = text.trim().as_bytes();
        let (root, used) = parse_node(bytes, 0)?;
        if used != bytes.len() {
            return Err(PathError::Parse("trailing characters after tree".into()));
        }
        KaryTree::new(k, root)
    }
}

fn parse_node(bytes: &[u8], at: usize) -> Result<(TreeNode, usize), PathError> {
    if bytes.get(at) != Some(&b'(') {
        return Err(PathError::Parse(format!("expected '(' at byte {at}")));
    }
    let mut children = Vec::new();
    let mut pos = at + 1;
    loop {
        match bytes.get(pos) {
            Some(&b'(') => {
                let (child, next) = parse_node(bytes, pos)?;
                children.push(child);
                pos = next;
            }
            Some(&b')') => return Ok((TreeNode { children }, pos + 1)),
            _ => return Err(PathError::Parse(format!("unbalanced tree text at byte {pos}"))),
        }
    }
}

impl Serialize for KaryTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RawTree { k: self.k, root: node_to_value(&self.root) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for KaryTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawTree::deserialize(deserializer)?;
        let root = node_from_value(&raw.root).map_err(D::Error::custom)?;
        KaryTree::new(raw.k, root).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct RawTree {
    k: usize,
    root: serde_json::Value,
}

fn node_to_value(node: &TreeNode) -> serde_json::Value {
    serde_json::Value::Array(node.children.iter().map(node_to_value).collect())
}

fn node_from_value(value: &serde_json::Value) -> Result<TreeNode, PathError> {
    match value {
        serde_json::Value::Array(items) => {
            Ok(TreeNode { children: items.iter().map(node_from_value).collect::<Result<_, _>>()? })
        }
        _ => Err(PathError::Parse("tree nodes must be JSON arrays".into())),
    }
}
