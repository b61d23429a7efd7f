//! Constructive bijections between colored Motzkin paths and the families
//! they enumerate: row-sum lifts, k-Dyck and Fine paths via step codebooks,
//! peak-parity-0 paths, k-ary trees, and the level-step deletion map behind
//! the binomial transform. Every map here has an explicit inverse, and the
//! tests verify round trips and image sets against the brute-force oracle.

use crate::paths::{
    has_forbidden_hill, peak_parity_of, validate_dyck, validate_motzkin, ColorScheme, DyckPath,
    DyckStep, KaryTree, MotzkinPath, PathError, Step, TreeNode,
};
use crate::riordan::{dyck_scheme, fine_scheme, RiordanError};
use std::iter;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BijectionError {
    #[error("invalid scheme: {0}")]
    InvalidScheme(String),
    #[error("scheme mismatch: {0}")]
    SchemeMismatch(String),
    #[error("step {position}: color {color} has no word in a codebook of {size} words")]
    ColorOutOfCodebook { position: usize, color: u64, size: usize },
    #[error("block {block} cannot be decoded: {reason}")]
    UndecodableBlock { block: usize, reason: &'static str },
    #[error("peaks outside residue class 0: {0}")]
    NotParityZero(&'static str),
    #[error("cannot decompose the path: {0}")]
    BadDecomposition(&'static str),
    #[error("invalid path: {0}")]
    InvalidPath(&'static str),
    #[error("bad parameters: {0}")]
    BadParams(&'static str),
    #[error(transparent)]
    Scheme(#[from] RiordanError),
    #[error(transparent)]
    Path(#[from] PathError),
}

/// Ordered list of the length-k `{U, D}` words that may replace one colored
/// Motzkin step. Words contain exactly `drop + 1` down steps and are listed
/// in lexicographic order with `U < D`; color `c` maps to the word at
/// position `c - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    k: usize,
    drop: usize,
    words: Vec<Vec<DyckStep>>,
}

impl Codebook {
    /// Codebook for a drop ending above the axis: every word qualifies,
    /// because the surrounding path keeps the block too high to matter.
    pub fn ends_above(k: usize, drop: usize) -> Result<Codebook, BijectionError> {
        Codebook::build(k, drop, |_| true)
    }

    /// Codebook for a drop ending on the axis of a depth-`depth` path:
    /// keeps the words that stay weakly above `-depth` when walked down
    /// from height `k * drop`.
    pub fn ends_at_zero(k: usize, drop: usize, depth: usize) -> Result<Codebook, BijectionError> {
        if depth >= k {
            return Err(BijectionError::BadParams("depth must satisfy 0 <= a <= k-1"));
        }
        Codebook::build(k, drop, |word| min_height(word, k, drop) >= -(depth as i64))
    }

    /// Like [`Codebook::ends_at_zero`], but additionally drops the words
    /// ending with `U^r D`, which would land a forbidden hill on the axis.
    pub fn ends_at_zero_fine(
        k: usize,
        drop: usize,
        depth: usize,
        r: usize,
    ) -> Result<Codebook, BijectionError> {
        if depth >= k {
            return Err(BijectionError::BadParams("depth must satisfy 0 <= a <= k-1"));
        }
        if r == 0 || r >= k {
            return Err(BijectionError::BadParams("hill width must satisfy 1 <= r <= k-1"));
        }
        Codebook::build(k, drop, |word| {
            min_height(word, k, drop) >= -(depth as i64) && !ends_with_hill(word, r)
        })
    }

    fn build(
        k: usize,
        drop: usize,
        keep: impl Fn(&[DyckStep]) -> bool,
    ) -> Result<Codebook, BijectionError> {
        if !(2..=32).contains(&k) {
            return Err(BijectionError::BadParams("codebooks require 2 <= k <= 32"));
        }
        if drop >= k {
            return Err(BijectionError::BadParams("drop index must be below k"));
        }
        let mut words = Vec::new();
        for mask in 0u64..1 << k {
            if mask.count_ones() as usize != drop + 1 {
                continue;
            }
            let word: Vec<DyckStep> = (0..k)
                .map(|p| if mask >> (k - 1 - p) & 1 == 1 { DyckStep::Down } else { DyckStep::Up })
                .collect();
            if keep(&word) {
                words.push(word);
            }
        }
        Ok(Codebook { k, drop, words })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn drop(&self) -> usize {
        self.drop
    }

    /// Number of words, i.e. the number of colors this codebook can encode.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Vec<DyckStep>] {
        &self.words
    }

    /// The word encoding 1-based color `color`, if the codebook is large
    /// enough.
    pub fn word_for_color(&self, color: u64) -> Option<&[DyckStep]> {
        if color == 0 {
            return None;
        }
        usize::try_from(color - 1).ok().and_then(|i| self.words.get(i)).map(Vec::as_slice)
    }

    /// The 1-based color encoded by `word`, if the word is listed.
    pub fn color_for_word(&self, word: &[DyckStep]) -> Option<u64> {
        self.words.iter().position(|w| w == word).map(|i| i as u64 + 1)
    }
}

fn min_height(word: &[DyckStep], k: usize, drop: usize) -> i64 {
    let mut h = (k * drop) as i64;
    let mut min = h;
    for &step in word {
        h += match step {
            DyckStep::Up => 1,
            DyckStep::Down => 1 - k as i64,
        };
        min = min.min(h);
    }
    min
}

fn ends_with_hill(word: &[DyckStep], r: usize) -> bool {
    let k = word.len();
    word[k - 1] == DyckStep::Down && word[k - 1 - r..k - 1].iter().all(|&s| s == DyckStep::Up)
}

/// Sends a path whose tuples agree (`alpha = beta`) and whose height is `m`
/// to the height-0 path over `(alpha + e1, alpha)` in which the `m` up
/// steps visible from the right have become level steps of the new color
/// `alpha_0 + 1`.
pub fn rowsum_forward(path: &MotzkinPath) -> Result<MotzkinPath, BijectionError> {
    let scheme = path.scheme();
    if scheme.alpha() != scheme.beta() {
        return Err(BijectionError::InvalidScheme(
            "the two color tuples must agree for the row-sum map".into(),
        ));
    }
    let new_color = scheme.alpha()[0]
        .checked_add(1)
        .ok_or_else(|| BijectionError::InvalidScheme("leading color count overflow".into()))?;
    let m = path.height();
    let ends = path.end_heights();
    let mut visible: Vec<Option<usize>> = vec![None; m];
    for (pos, step) in path.steps().iter().enumerate() {
        if *step == Step::Up && ends[pos] <= m {
            visible[ends[pos] - 1] = Some(pos);
        }
    }
    let mut steps = path.steps().to_vec();
    for slot in visible {
        let pos = slot.ok_or(BijectionError::InvalidPath("a height is never reached"))?;
        steps[pos] = Step::level(new_color);
    }
    let mut alpha = scheme.alpha().to_vec();
    alpha[0] = new_color;
    let lifted = ColorScheme::new(alpha, scheme.beta().to_vec())?;
    validate_motzkin(steps, lifted).map_err(BijectionError::from)
}

/// Undoes [`rowsum_forward`]: every level step of the final zero-height
/// color becomes an up step, restoring the `(alpha, alpha)` path whose
/// height equals the number of replacements.
pub fn rowsum_inverse(path: &MotzkinPath) -> Result<MotzkinPath, BijectionError> {
    let scheme = path.scheme();
    let (alpha, beta) = (scheme.alpha(), scheme.beta());
    if alpha[0] == 0 || alpha[0] - 1 != beta[0] || alpha[1..] != beta[1..] {
        return Err(BijectionError::InvalidScheme(
            "expected tuples of the form (alpha + e1, alpha)".into(),
        ));
    }
    if path.height() != 0 {
        return Err(BijectionError::InvalidPath("the input must end at height 0"));
    }
    let marker = Step::level(alpha[0]);
    let steps = path.steps().iter().map(|&s| if s == marker { Step::Up } else { s }).collect();
    let restored = ColorScheme::new(beta.to_vec(), beta.to_vec())?;
    validate_motzkin(steps, restored).map_err(BijectionError::from)
}

/// Shared encoder between colored Motzkin paths and k-Dyck paths: each
/// Motzkin step becomes a length-k block, with colored drops spelled out
/// through the codebooks.
struct DyckCoder {
    k: usize,
    depth: usize,
    scheme: ColorScheme,
    zero: Vec<Codebook>,
    above: Vec<Codebook>,
}

impl DyckCoder {
    fn plain(k: usize, depth: usize) -> Result<DyckCoder, BijectionError> {
        let scheme = dyck_scheme(k, depth)?;
        DyckCoder::with_zero_books(k, depth, scheme, |drop| Codebook::ends_at_zero(k, drop, depth))
    }

    fn fine(k: usize, depth: usize, r: usize) -> Result<DyckCoder, BijectionError> {
        let scheme = fine_scheme(k, depth, r)?;
        DyckCoder::with_zero_books(k, depth, scheme, |drop| {
            Codebook::ends_at_zero_fine(k, drop, depth, r)
        })
    }

    fn with_zero_books(
        k: usize,
        depth: usize,
        scheme: ColorScheme,
        zero_book: impl Fn(usize) -> Result<Codebook, BijectionError>,
    ) -> Result<DyckCoder, BijectionError> {
        let zero = (0..k).map(zero_book).collect::<Result<Vec<_>, _>>()?;
        let above = (0..k).map(|drop| Codebook::ends_above(k, drop)).collect::<Result<_, _>>()?;
        Ok(DyckCoder { k, depth, scheme, zero, above })
    }

    fn check_scheme(&self, path: &MotzkinPath) -> Result<(), BijectionError> {
        if path.scheme() != &self.scheme {
            return Err(BijectionError::SchemeMismatch(format!(
                "path tuples (alpha {:?}, beta {:?}) differ from the coding tuples (alpha {:?}, beta {:?})",
                path.scheme().alpha(),
                path.scheme().beta(),
                self.scheme.alpha(),
                self.scheme.beta(),
            )));
        }
        Ok(())
    }

    fn encode(&self, path: &MotzkinPath) -> Result<DyckPath, BijectionError> {
        self.check_scheme(path)?;
        let mut out = Vec::with_capacity(self.k * path.len());
        let mut height = 0usize;
        for (position, &step) in path.steps().iter().enumerate() {
            match step {
                Step::Up => {
                    out.extend(iter::repeat_n(DyckStep::Up, self.k));
                    height += 1;
                }
                Step::Down { drop, color } => {
                    let end = height - drop;
                    let book = if end == 0 { &self.zero[drop] } else { &self.above[drop] };
                    let color = color.unwrap_or(1);
                    let word =
                        book.word_for_color(color).ok_or(BijectionError::ColorOutOfCodebook {
                            position,
                            color,
                            size: book.len(),
                        })?;
                    out.extend_from_slice(word);
                    height = end;
                }
            }
        }
        validate_dyck(out, self.k, self.depth).map_err(BijectionError::from)
    }

    fn decode(&self, path: &DyckPath) -> Result<MotzkinPath, BijectionError> {
        let mut steps = Vec::with_capacity(path.semilength());
        let mut height = 0usize;
        for (block, word) in path.steps().chunks_exact(self.k).enumerate() {
            let downs = word.iter().filter(|&&s| s == DyckStep::Down).count();
            if downs == 0 {
                steps.push(Step::Up);
                height += 1;
                continue;
            }
            let drop = downs - 1;
            let end = height.checked_sub(drop).ok_or(BijectionError::UndecodableBlock {
                block,
                reason: "the block drops below the axis",
            })?;
            let book = if end == 0 { &self.zero[drop] } else { &self.above[drop] };
            let color = book.color_for_word(word).ok_or(BijectionError::UndecodableBlock {
                block,
                reason: "the word is missing from its codebook",
            })?;
            steps.push(Step::Down { drop, color: (drop < self.k - 1).then_some(color) });
            height = end;
        }
        validate_motzkin(steps, self.scheme.clone()).map_err(BijectionError::from)
    }
}

/// Expands a colored path over the depth-`depth` k-Dyck tuples into the
/// k-Dyck path it encodes: `U` becomes `U^k` and each drop becomes its
/// codebook word. Length and height both scale by exactly k.
pub fn motzkin_to_dyck(
    path: &MotzkinPath,
    k: usize,
    depth: usize,
) -> Result<DyckPath, BijectionError> {
    DyckCoder::plain(k, depth)?.encode(path)
}

/// Reads a k-Dyck path back through the codebooks, block by block; the
/// inverse of [`motzkin_to_dyck`].
pub fn dyck_to_motzkin(path: &DyckPath) -> Result<MotzkinPath, BijectionError> {
    DyckCoder::plain(path.k(), path.depth())?.decode(path)
}

/// The Fine refinement of [`motzkin_to_dyck`]: zero-height codebooks also
/// omit the words that would end with a forbidden `U^r D` hill, so the
/// image avoids such hills entirely.
pub fn motzkin_to_fine(
    path: &MotzkinPath,
    k: usize,
    depth: usize,
    r: usize,
) -> Result<DyckPath, BijectionError> {
    let image = DyckCoder::fine(k, depth, r)?.encode(path)?;
    debug_assert!(!has_forbidden_hill(&image, r).expect("r was validated by the coder"));
    Ok(image)
}

/// The inverse of [`motzkin_to_fine`].
pub fn fine_to_motzkin(path: &DyckPath, r: usize) -> Result<MotzkinPath, BijectionError> {
    if has_forbidden_hill(path, r)? {
        return Err(BijectionError::InvalidPath("the path contains a forbidden hill"));
    }
    DyckCoder::fine(path.k(), path.depth(), r)?.decode(path)
}

/// The color tuples under which order-(k-1) paths count peak-parity-0
/// k-Dyck paths of depth `depth`: beta is all ones, and `alpha_i = 1`
/// exactly when `i >= k - 1 - depth` (smaller drops would push the image
/// below `-depth`).
pub fn peak_scheme(k: usize, depth: usize) -> Result<ColorScheme, BijectionError> {
    if k < 2 || depth >= k {
        return Err(BijectionError::BadParams("need k >= 2 and 0 <= a <= k-1"));
    }
    let alpha = (0..k - 1).map(|i| u64::from(i >= k - 1 - depth)).collect();
    ColorScheme::new(alpha, vec![1; k - 1]).map_err(BijectionError::from)
}

/// Expands a path over [`peak_scheme`] tuples into a k-Dyck path whose
/// peak heights are all divisible by k: `U` becomes `U^k` and `D_i`
/// becomes `D^(i+1) U^(k-i-1)`.
pub fn peak0_forward(
    path: &MotzkinPath,
    k: usize,
    depth: usize,
) -> Result<DyckPath, BijectionError> {
    let expected = peak_scheme(k, depth)?;
    if path.scheme() != &expected {
        return Err(BijectionError::SchemeMismatch(format!(
            "path tuples (alpha {:?}, beta {:?}) differ from the peak tuples (alpha {:?}, beta {:?})",
            path.scheme().alpha(),
            path.scheme().beta(),
            expected.alpha(),
            expected.beta(),
        )));
    }
    let mut out = Vec::with_capacity(k * path.len());
    for &step in path.steps() {
        match step {
            Step::Up => out.extend(iter::repeat_n(DyckStep::Up, k)),
            Step::Down { drop, .. } => {
                out.extend(iter::repeat_n(DyckStep::Down, drop + 1));
                out.extend(iter::repeat_n(DyckStep::Up, k - drop - 1));
            }
        }
    }
    validate_dyck(out, k, depth).map_err(BijectionError::from)
}

/// The inverse of [`peak0_forward`]: requires every peak height to be
/// divisible by k, which forces each length-k block into the form
/// `D^j U^(k-j)`.
pub fn peak0_inverse(path: &DyckPath) -> Result<MotzkinPath, BijectionError> {
    let (k, depth) = (path.k(), path.depth());
    let scheme = peak_scheme(k, depth)?;
    if path.is_empty() {
        return validate_motzkin(Vec::new(), scheme).map_err(BijectionError::from);
    }
    if !peak_parity_of(path)?.matches_class(0) {
        return Err(BijectionError::NotParityZero("every peak height must be divisible by k"));
    }
    let mut steps = Vec::with_capacity(path.semilength());
    for block in path.steps().chunks_exact(k) {
        let downs = block.iter().take_while(|&&s| s == DyckStep::Down).count();
        if block[downs..].contains(&DyckStep::Down) {
            return Err(BijectionError::NotParityZero(
                "a length-k block interleaves up and down steps",
            ));
        }
        if downs == 0 {
            steps.push(Step::Up);
        } else {
            let drop = downs - 1;
            steps.push(Step::Down { drop, color: (drop < k - 1).then_some(1) });
        }
    }
    validate_motzkin(steps, scheme).map_err(BijectionError::from)
}

/// Peels a nonempty depth-0 axis-to-axis path whose peaks all lie in
/// residue class k-1: the forced leading `U^(k-1)` and trailing `D` are
/// removed, leaving a parity-0 path of depth k-1 with one smaller
/// semilength.
pub fn peak_top_reduce(path: &DyckPath) -> Result<DyckPath, BijectionError> {
    let k = path.k();
    if path.depth() != 0 {
        return Err(BijectionError::BadDecomposition("the input must have depth 0"));
    }
    if path.is_empty() {
        return Err(BijectionError::BadDecomposition("the input must be nonempty"));
    }
    if path.semiheight() != 0 {
        return Err(BijectionError::BadDecomposition("the input must end on the axis"));
    }
    if !peak_parity_of(path)?.matches_class(k - 1) {
        return Err(BijectionError::BadDecomposition("peak heights must lie in residue class k-1"));
    }
    let steps = path.steps();
    let len = steps.len();
    if steps[..k - 1].iter().any(|&s| s != DyckStep::Up) || steps[len - 1] != DyckStep::Down {
        return Err(BijectionError::BadDecomposition(
            "the path must start with U^(k-1) and end with D",
        ));
    }
    validate_dyck(steps[k - 1..len - 1].to_vec(), k, k - 1).map_err(BijectionError::from)
}

/// Encodes a k-ary tree as an order-(k-1) path over the all-ones tuples:
/// walking the edges depth-first, an edge to a non-rightmost child emits
/// `U`, and the edge to the rightmost child of a vertex with `c` children
/// emits `D_(c-1)`. The path has one step per edge and ends on the axis.
pub fn tree_to_motzkin(tree: &KaryTree) -> MotzkinPath {
    let order = tree.k() - 1;
    let mut steps = Vec::with_capacity(tree.edge_count());
    emit_subtree(tree.root(), order, &mut steps);
    let scheme = ColorScheme::new(vec![1; order], vec![1; order])
        .expect("all-ones tuples of positive length are valid");
    MotzkinPath::from_validated_parts(scheme, steps, 0)
}

fn emit_subtree(node: &TreeNode, order: usize, out: &mut Vec<Step>) {
    let children = node.children.len();
    if children == 0 {
        return;
    }
    for child in &node.children[..children - 1] {
        out.push(Step::Up);
        emit_subtree(child, order, out);
    }
    let drop = children - 1;
    out.push(Step::Down { drop, color: (drop < order).then_some(1) });
    emit_subtree(&node.children[children - 1], order, out);
}

/// The inverse of [`tree_to_motzkin`]: each `D_i` closes a sibling group
/// whose `i` up steps are found by scanning leftward, one per height, and
/// the nesting of those matches rebuilds the tree.
pub fn motzkin_to_tree(path: &MotzkinPath, k: usize) -> Result<KaryTree, BijectionError> {
    if k < 2 {
        return Err(BijectionError::BadParams("k must be at least 2"));
    }
    let order = k - 1;
    let ones = ColorScheme::new(vec![1; order], vec![1; order])
        .expect("all-ones tuples of positive length are valid");
    if path.scheme() != &ones {
        return Err(BijectionError::SchemeMismatch(
            "tree decoding requires the all-ones tuples of order k-1".into(),
        ));
    }
    if path.height() != 0 {
        return Err(BijectionError::InvalidPath("the path must end on the axis"));
    }
    let ends = path.end_heights();
    let root = parse_subtree(path.steps(), &ends, 0, path.len(), 0)?;
    KaryTree::new(k, root).map_err(BijectionError::from)
}

fn parse_subtree(
    steps: &[Step],
    ends: &[usize],
    from: usize,
    to: usize,
    base: usize,
) -> Result<TreeNode, BijectionError> {
    if from == to {
        return Ok(TreeNode::leaf());
    }
    let close = (from..to)
        .find(|&i| ends[i] == base)
        .ok_or(BijectionError::InvalidPath("a sibling group never returns to its base height"))?;
    let Step::Down { drop, .. } = steps[close] else {
        return Err(BijectionError::InvalidPath("an up step cannot close a sibling group"));
    };
    let mut bounds = Vec::with_capacity(drop);
    let mut cut = close;
    for target in (1..=drop).rev() {
        let up = (from..cut)
            .rev()
            .find(|&i| steps[i] == Step::Up && ends[i] == base + target)
            .ok_or(BijectionError::InvalidPath("a sibling up step is missing"))?;
        bounds.push(up);
        cut = up;
    }
    bounds.reverse();
    let mut children = Vec::with_capacity(drop + 1);
    for (index, &up) in bounds.iter().enumerate() {
        let until = if index + 1 < bounds.len() { bounds[index + 1] } else { close };
        children.push(parse_subtree(steps, ends, up + 1, until, base + index + 1)?);
    }
    children.push(parse_subtree(steps, ends, close + 1, to, base)?);
    Ok(TreeNode::with_children(children))
}

/// Deletes every level step carrying the final color for its height (the
/// top zero-height color on the axis, the top above color elsewhere),
/// returning the shorter path over the decremented tuples together with
/// the deleted positions. Fibers of this map realize the binomial
/// transform between the two triangles.
pub fn strip_new_color_levels(
    path: &MotzkinPath,
) -> Result<(MotzkinPath, Vec<usize>), BijectionError> {
    let scheme = path.scheme();
    let (a0, b0) = (scheme.alpha()[0], scheme.beta()[0]);
    if a0 == 0 || b0 == 0 {
        return Err(BijectionError::InvalidScheme(
            "both leading color counts must be positive to undo a lift".into(),
        ));
    }
    let ends = path.end_heights();
    let mut kept = Vec::with_capacity(path.len());
    let mut deleted = Vec::new();
    for (pos, &step) in path.steps().iter().enumerate() {
        let final_color = if ends[pos] == 0 { a0 } else { b0 };
        if step == Step::level(final_color) {
            deleted.push(pos);
        } else {
            kept.push(step);
        }
    }
    let mut alpha = scheme.alpha().to_vec();
    let mut beta = scheme.beta().to_vec();
    alpha[0] -= 1;
    beta[0] -= 1;
    let lowered = ColorScheme::new(alpha, beta)?;
    let stripped = validate_motzkin(kept, lowered)?;
    Ok((stripped, deleted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{
        enumerate_dyck, enumerate_fine, enumerate_motzkin, enumerate_peak_parity, enumerate_trees,
        SRestriction,
    };
    use std::collections::{HashMap, HashSet};

    fn scheme(alpha: &[u64], beta: &[u64]) -> ColorScheme {
        ColorScheme::new(alpha.to_vec(), beta.to_vec()).unwrap()
    }

    fn motzkin(text: &str, sch: &ColorScheme) -> MotzkinPath {
        MotzkinPath::parse_text(text, sch.clone()).unwrap()
    }

    fn dyck(text: &str, k: usize, depth: usize) -> DyckPath {
        DyckPath::parse_text(text, k, depth).unwrap()
    }

    fn book_texts(book: &Codebook) -> Vec<String> {
        book.words()
            .iter()
            .map(|w| {
                w.iter().map(|s| if *s == DyckStep::Up { 'U' } else { 'D' }).collect::<String>()
            })
            .collect()
    }

    #[test]
    fn codebooks_list_words_lexicographically() {
        let above = Codebook::ends_above(3, 0).unwrap();
        assert_eq!(book_texts(&above), ["UUD", "UDU", "DUU"]);
        let zero = Codebook::ends_at_zero(3, 0, 1).unwrap();
        assert_eq!(book_texts(&zero), ["UUD", "UDU"]);
        let deeper = Codebook::ends_at_zero(3, 1, 1).unwrap();
        assert_eq!(book_texts(&deeper), ["UDD", "DUD", "DDU"]);
        let two = Codebook::ends_at_zero(2, 0, 1).unwrap();
        assert_eq!(book_texts(&two), ["UD", "DU"]);
        let full_drop = Codebook::ends_at_zero(3, 2, 0).unwrap();
        assert_eq!(book_texts(&full_drop), ["DDD"]);
    }

    #[test]
    fn codebook_sizes_match_the_color_tuples() {
        for k in 2..=5usize {
            for depth in 0..k {
                let sch = dyck_scheme(k, depth).unwrap();
                for drop in 0..k - 1 {
                    let zero = Codebook::ends_at_zero(k, drop, depth).unwrap();
                    let above = Codebook::ends_above(k, drop).unwrap();
                    assert_eq!(zero.len() as u64, sch.alpha()[drop], "k={k} a={depth} i={drop}");
                    assert_eq!(above.len() as u64, sch.beta()[drop], "k={k} i={drop}");
                }
                assert_eq!(Codebook::ends_at_zero(k, k - 1, depth).unwrap().len(), 1);
                for r in 1..k {
                    let sch = fine_scheme(k, depth, r).unwrap();
                    for drop in 0..k - 1 {
                        let zero = Codebook::ends_at_zero_fine(k, drop, depth, r).unwrap();
                        assert_eq!(
                            zero.len() as u64,
                            sch.alpha()[drop],
                            "k={k} a={depth} r={r} i={drop}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn fine_codebooks_drop_trailing_hills() {
        let plain = Codebook::ends_at_zero(3, 0, 1).unwrap();
        assert_eq!(book_texts(&plain), ["UUD", "UDU"]);
        let fine = Codebook::ends_at_zero_fine(3, 0, 1, 1).unwrap();
        assert_eq!(book_texts(&fine), ["UDU"]);
        let wide = Codebook::ends_at_zero_fine(4, 0, 2, 2).unwrap();
        for text in book_texts(&wide) {
            assert!(!text.ends_with("UUD"), "{text} keeps a trailing hill");
        }
    }

    #[test]
    fn codebook_lookup_round_trips() {
        let book = Codebook::ends_at_zero(3, 1, 2).unwrap();
        for (i, word) in book.words().iter().enumerate() {
            let color = i as u64 + 1;
            assert_eq!(book.word_for_color(color), Some(word.as_slice()));
            assert_eq!(book.color_for_word(word), Some(color));
        }
        assert_eq!(book.word_for_color(0), None);
        assert_eq!(book.word_for_color(book.len() as u64 + 1), None);
        assert_eq!(book.color_for_word(&[DyckStep::Up]), None);
        assert!(Codebook::ends_at_zero(40, 0, 0).is_err());
        assert!(Codebook::ends_above(3, 3).is_err());
    }

    #[test]
    fn rowsum_moves_visible_up_steps_to_the_axis() {
        let base = scheme(&[1, 1], &[1, 1]);
        let input = motzkin("U D0:1 U D2 U U D1:1 U D0:1", &base);
        assert_eq!(input.height(), 2);
        let image = rowsum_forward(&input).unwrap();
        assert_eq!(image.to_text(), "U D0:1 U D2 D0:2 U D1:1 D0:2 D0:1");
        assert_eq!(image.height(), 0);
        assert_eq!(image.scheme().alpha(), &[2, 1]);
        assert_eq!(image.scheme().beta(), &[1, 1]);
        assert_eq!(rowsum_inverse(&image).unwrap(), input);
    }

    #[test]
    fn rowsum_fixes_axis_paths_and_flattens_all_up_paths() {
        let base = scheme(&[2], &[2]);
        let flat = motzkin("D0:1 U D0:2 D1", &base);
        let image = rowsum_forward(&flat).unwrap();
        assert_eq!(image.to_text(), flat.to_text());
        let ups = motzkin("U U U", &base);
        let image = rowsum_forward(&ups).unwrap();
        assert_eq!(image.to_text(), "D0:3 D0:3 D0:3");
        assert_eq!(rowsum_inverse(&image).unwrap(), ups);
    }

    #[test]
    fn rowsum_is_a_bijection_onto_the_lifted_axis_paths() {
        let base = scheme(&[1, 1], &[1, 1]);
        let lifted = scheme(&[2, 1], &[1, 1]);
        let n = 5;
        let mut images = HashSet::new();
        let mut domain = 0usize;
        for m in 0..=n {
            for path in enumerate_motzkin(n, m, &base) {
                let image = rowsum_forward(&path).unwrap();
                assert_eq!(image.scheme(), &lifted);
                assert_eq!(image.height(), 0);
                assert_eq!(rowsum_inverse(&image).unwrap(), path, "round trip at m={m}");
                images.insert(image.to_text());
                domain += 1;
            }
        }
        let codomain = enumerate_motzkin(n, 0, &lifted);
        assert_eq!(images.len(), domain, "the map must be injective");
        assert_eq!(images.len(), codomain.len());
    }

    #[test]
    fn rowsum_rejects_mismatched_tuples() {
        let path = motzkin("U D1:1", &scheme(&[1, 2], &[3, 3]));
        assert!(matches!(rowsum_forward(&path), Err(BijectionError::InvalidScheme(_))));
        let not_lifted = motzkin("D0:1", &scheme(&[1, 1], &[1, 1]));
        assert!(matches!(rowsum_inverse(&not_lifted), Err(BijectionError::InvalidScheme(_))));
        let tall = motzkin("U", &scheme(&[2], &[1]));
        assert!(matches!(rowsum_inverse(&tall), Err(BijectionError::InvalidPath(_))));
    }

    #[test]
    fn dyck_coding_matches_the_worked_example() {
        let sch = dyck_scheme(2, 1).unwrap();
        assert_eq!((sch.alpha(), sch.beta()), (&[2u64][..], &[2u64][..]));
        let path = motzkin("D0:1 U D0:2 D0:1 D1 D0:2", &sch);
        let image = motzkin_to_dyck(&path, 2, 1).unwrap();
        assert_eq!(image.to_text(), "UDUUDUUDDDDU");
        assert_eq!(image.heights().iter().min(), Some(&-1));
        assert_eq!(dyck_to_motzkin(&image).unwrap(), path);
    }

    #[test]
    fn dyck_coding_scales_all_up_paths() {
        let sch = dyck_scheme(3, 0).unwrap();
        let path = motzkin("U U", &sch);
        let image = motzkin_to_dyck(&path, 3, 0).unwrap();
        assert_eq!(image.to_text(), "UUUUUU");
        assert_eq!(image.semiheight(), 2);
        assert_eq!(dyck_to_motzkin(&image).unwrap(), path);
        let empty = motzkin("", &sch);
        assert!(motzkin_to_dyck(&empty, 3, 0).unwrap().is_empty());
    }

    #[test]
    fn dyck_coding_is_onto_the_oracle_image() {
        let sch = dyck_scheme(3, 1).unwrap();
        let domain = enumerate_motzkin(2, 0, &sch);
        assert_eq!(domain.len(), 7);
        let mut images = HashSet::new();
        for path in &domain {
            let image = motzkin_to_dyck(path, 3, 1).unwrap();
            assert_eq!(image.len(), 3 * path.len());
            assert_eq!(dyck_to_motzkin(&image).unwrap(), *path);
            images.insert(image.to_text());
        }
        let expected: HashSet<String> =
            enumerate_dyck(3, 1, 2, 0).unwrap().iter().map(DyckPath::to_text).collect();
        assert_eq!(images, expected);
    }

    #[test]
    fn dyck_coding_round_trips_at_positive_heights() {
        for k in 2..=3usize {
            for depth in 0..k {
                let sch = dyck_scheme(k, depth).unwrap();
                for n in 0..=3usize {
                    for m in 0..=n {
                        let domain = enumerate_motzkin(n, m, &sch);
                        let codomain = enumerate_dyck(k, depth, n, m).unwrap();
                        assert_eq!(domain.len(), codomain.len(), "k={k} a={depth} n={n} m={m}");
                        for path in domain {
                            let image = motzkin_to_dyck(&path, k, depth).unwrap();
                            assert_eq!(image.semiheight(), path.height());
                            assert_eq!(dyck_to_motzkin(&image).unwrap(), path);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dyck_coding_rejects_other_schemes() {
        let path = motzkin("D0:1", &scheme(&[1], &[1]));
        assert!(matches!(motzkin_to_dyck(&path, 2, 1), Err(BijectionError::SchemeMismatch(_))));
    }

    #[test]
    fn fine_coding_avoids_hills_and_round_trips() {
        let sch = fine_scheme(3, 1, 1).unwrap();
        for n in 0..=3usize {
            let domain = enumerate_motzkin(n, 0, &sch);
            let codomain = enumerate_fine(3, 1, 1, n, 0).unwrap();
            assert_eq!(domain.len(), codomain.len(), "n={n}");
            let mut images = HashSet::new();
            for path in domain {
                let image = motzkin_to_fine(&path, 3, 1, 1).unwrap();
                assert!(!has_forbidden_hill(&image, 1).unwrap());
                assert_eq!(fine_to_motzkin(&image, 1).unwrap(), path);
                images.insert(image.to_text());
            }
            let expected: HashSet<String> = codomain.iter().map(DyckPath::to_text).collect();
            assert_eq!(images, expected, "n={n}");
        }
    }

    #[test]
    fn fine_decoding_rejects_hills() {
        let hill = dyck("UUD", 3, 1);
        assert!(has_forbidden_hill(&hill, 2).unwrap());
        assert!(matches!(fine_to_motzkin(&hill, 2), Err(BijectionError::InvalidPath(_))));
    }

    #[test]
    fn peak_scheme_opens_drops_from_the_threshold() {
        let sch = peak_scheme(3, 0).unwrap();
        assert_eq!((sch.alpha(), sch.beta()), (&[0u64, 0][..], &[1u64, 1][..]));
        let sch = peak_scheme(3, 1).unwrap();
        assert_eq!(sch.alpha(), &[0, 1]);
        let sch = peak_scheme(3, 2).unwrap();
        assert_eq!(sch.alpha(), &[1, 1]);
        let sch = peak_scheme(2, 1).unwrap();
        assert_eq!((sch.alpha(), sch.beta()), (&[1u64][..], &[1u64][..]));
        assert!(peak_scheme(1, 0).is_err());
    }

    #[test]
    fn peak_coding_matches_the_worked_example() {
        let sch = peak_scheme(3, 0).unwrap();
        let path = motzkin("U D0:1 U D1:1 U D2", &sch);
        let image = peak0_forward(&path, 3, 0).unwrap();
        assert_eq!(image.to_text(), "UUUDUUUUUDDUUUUDDD");
        let peaks: HashSet<i64> = crate::paths::peaks_of(&image).into_iter().collect();
        assert_eq!(peaks, HashSet::from([3, 6]));
        assert_eq!(peak0_inverse(&image).unwrap(), path);
    }

    #[test]
    fn peak_coding_handles_the_empty_path() {
        let sch = peak_scheme(2, 0).unwrap();
        let empty = motzkin("", &sch);
        let image = peak0_forward(&empty, 2, 0).unwrap();
        assert!(image.is_empty());
        assert_eq!(peak0_inverse(&image).unwrap(), empty);
    }

    #[test]
    fn peak_coding_is_onto_the_parity_zero_paths() {
        let sch = peak_scheme(2, 0).unwrap();
        let domain = enumerate_motzkin(4, 0, &sch);
        let mut images = HashSet::new();
        for path in &domain {
            let image = peak0_forward(path, 2, 0).unwrap();
            assert_eq!(peak0_inverse(&image).unwrap(), *path);
            images.insert(image.to_text());
        }
        assert_eq!(images.len(), 3);
        let expected: HashSet<String> =
            enumerate_peak_parity(2, 0, 0, 4, 0).unwrap().iter().map(DyckPath::to_text).collect();
        assert_eq!(images, expected);
    }

    #[test]
    fn peak_coding_round_trips_across_parameters() {
        for k in 2..=3usize {
            for depth in 0..k {
                let sch = peak_scheme(k, depth).unwrap();
                for n in 1..=3usize {
                    for m in 0..=n {
                        let domain = enumerate_motzkin(n, m, &sch);
                        let codomain = enumerate_peak_parity(k, depth, 0, n, m).unwrap();
                        assert_eq!(domain.len(), codomain.len(), "k={k} a={depth} n={n} m={m}");
                        for path in domain {
                            let image = peak0_forward(&path, k, depth).unwrap();
                            assert_eq!(peak0_inverse(&image).unwrap(), path);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn peak_decoding_rejects_other_parities() {
        let mixed = dyck("UUDDUD", 2, 0);
        assert!(matches!(peak0_inverse(&mixed), Err(BijectionError::NotParityZero(_))));
    }

    #[test]
    fn top_parity_paths_reduce_to_parity_zero_paths() {
        let path = dyck("UDUD", 2, 0);
        let reduced = peak_top_reduce(&path).unwrap();
        assert_eq!(reduced.to_text(), "DU");
        assert_eq!(reduced.depth(), 1);
        let inner = peak0_inverse(&reduced).unwrap();
        assert_eq!(inner.to_text(), "D0:1");

        let single = peak_top_reduce(&dyck("UD", 2, 0)).unwrap();
        assert!(single.is_empty());

        for (text, expected) in [("UDUDUD", "DUDU"), ("UUUDDD", "UUDD")] {
            let reduced = peak_top_reduce(&dyck(text, 2, 0)).unwrap();
            assert_eq!(reduced.to_text(), expected);
            peak0_inverse(&reduced).unwrap();
        }
    }

    #[test]
    fn top_parity_reduction_counts_match_the_oracle() {
        for (k, n) in [(2usize, 3usize), (3, 2)] {
            let domain = enumerate_peak_parity(k, 0, k - 1, n, 0).unwrap();
            let expected = enumerate_motzkin(n - 1, 0, &peak_scheme(k, k - 1).unwrap());
            assert_eq!(domain.len(), expected.len(), "k={k} n={n}");
            let mut images = HashSet::new();
            for path in domain {
                let inner = peak0_inverse(&peak_top_reduce(&path).unwrap()).unwrap();
                images.insert(inner.to_text());
            }
            let texts: HashSet<String> = expected.iter().map(MotzkinPath::to_text).collect();
            assert_eq!(images, texts, "k={k} n={n}");
        }
    }

    #[test]
    fn top_parity_reduction_rejects_bad_inputs() {
        assert!(matches!(
            peak_top_reduce(&dyck("UUDD", 2, 0)),
            Err(BijectionError::BadDecomposition(_))
        ));
        assert!(matches!(
            peak_top_reduce(&dyck("", 2, 0)),
            Err(BijectionError::BadDecomposition(_))
        ));
        assert!(matches!(
            peak_top_reduce(&dyck("DU", 2, 1)),
            Err(BijectionError::BadDecomposition(_))
        ));
    }

    fn figure_tree() -> KaryTree {
        let left = TreeNode::with_children(vec![
            TreeNode::leaf(),
            TreeNode::with_children(vec![TreeNode::leaf()]),
        ]);
        let right = TreeNode::with_children(vec![TreeNode::with_children(vec![
            TreeNode::leaf(),
            TreeNode::leaf(),
            TreeNode::leaf(),
        ])]);
        let root = TreeNode::with_children(vec![left, TreeNode::leaf(), right]);
        KaryTree::new(3, root).unwrap()
    }

    #[test]
    fn tree_coding_matches_the_worked_example() {
        let tree = figure_tree();
        assert_eq!(tree.edge_count(), 10);
        let path = tree_to_motzkin(&tree);
        assert_eq!(path.to_text(), "U U D1:1 D0:1 U D2 D0:1 U U D2");
        assert_eq!(path.height(), 0);
        assert_eq!(motzkin_to_tree(&path, 3).unwrap(), tree);
    }

    #[test]
    fn tree_coding_handles_single_vertices() {
        let tree = KaryTree::new(4, TreeNode::leaf()).unwrap();
        let path = tree_to_motzkin(&tree);
        assert!(path.is_empty());
        assert_eq!(motzkin_to_tree(&path, 4).unwrap(), tree);
    }

    #[test]
    fn tree_coding_is_onto_the_all_ones_paths() {
        for (k, max_n) in [(2usize, 5usize), (3, 4)] {
            let sch = ColorScheme::new(vec![1; k - 1], vec![1; k - 1]).unwrap();
            for n in 0..=max_n {
                let trees = enumerate_trees(k, n, &SRestriction::All).unwrap();
                let paths = enumerate_motzkin(n, 0, &sch);
                assert_eq!(trees.len(), paths.len(), "k={k} n={n}");
                let mut images = HashSet::new();
                for tree in &trees {
                    let path = tree_to_motzkin(tree);
                    assert_eq!(path.len(), tree.edge_count());
                    assert_eq!(motzkin_to_tree(&path, k).unwrap(), *tree);
                    images.insert(path.to_text());
                }
                assert_eq!(images.len(), trees.len(), "k={k} n={n} injectivity");
                let texts: HashSet<String> = paths.iter().map(MotzkinPath::to_text).collect();
                assert_eq!(images, texts, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn tree_decoding_rejects_bad_inputs() {
        let path = motzkin("D0:1", &scheme(&[2], &[2]));
        assert!(matches!(motzkin_to_tree(&path, 2), Err(BijectionError::SchemeMismatch(_))));
        let tall = motzkin("U", &scheme(&[1], &[1]));
        assert!(matches!(motzkin_to_tree(&tall, 2), Err(BijectionError::InvalidPath(_))));
        assert!(matches!(motzkin_to_tree(&tall, 1), Err(BijectionError::BadParams(_))));
    }

    #[test]
    fn stripping_removes_exactly_the_final_colors() {
        let lifted = scheme(&[2], &[2]);
        let path = motzkin("D0:2 U D0:2 D0:1 D1 D0:2", &lifted);
        let (stripped, deleted) = strip_new_color_levels(&path).unwrap();
        assert_eq!(stripped.to_text(), "U D0:1 D1");
        assert_eq!(deleted, vec![0, 2, 5]);
        assert_eq!(stripped.scheme().alpha(), &[1]);

        let untouched = motzkin("U D0:1 D1", &lifted);
        let (same, none) = strip_new_color_levels(&untouched).unwrap();
        assert_eq!(same.to_text(), untouched.to_text());
        assert!(none.is_empty());

        let all_new = motzkin("D0:2 D0:2 D0:2", &lifted);
        let (empty, all) = strip_new_color_levels(&all_new).unwrap();
        assert!(empty.is_empty());
        assert_eq!(all, vec![0, 1, 2]);
    }

    #[test]
    fn stripping_fibers_have_binomial_sizes() {
        let lifted = scheme(&[2], &[2]);
        let n = 4;
        let mut fibers: HashMap<(String, usize), usize> = HashMap::new();
        for path in enumerate_motzkin(n, 0, &lifted) {
            let (stripped, deleted) = strip_new_color_levels(&path).unwrap();
            *fibers.entry((stripped.to_text(), deleted.len())).or_default() += 1;
        }
        for ((text, removed), count) in fibers {
            let expected = crate::closedform::binomial(n as u64, removed as i64);
            assert_eq!(
                num_bigint::BigInt::from(count),
                expected,
                "fiber over {text:?} with {removed} deletions"
            );
        }
    }

    #[test]
    fn stripping_requires_positive_leading_colors() {
        let path = motzkin("U D1:1", &scheme(&[0, 1], &[1, 1]));
        assert!(matches!(strip_new_color_levels(&path), Err(BijectionError::InvalidScheme(_))));
    }
}
