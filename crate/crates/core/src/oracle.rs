//! Brute-force enumerators used to cross-validate every counting formula in
//! the crate. Each enumerator walks the full search tree of step sequences
//! (or tree shapes) directly, with only feasibility pruning; none of them
//! share logic with the Riordan-array recurrences they are checked against.
//!
//! Enumeration order is deterministic: paths appear in lexicographic order
//! of their step sequences under `U < D_0 < D_1 < ...` with colors ascending,
//! and trees by child count ascending, then subtree edge counts in
//! lexicographic order, with the leftmost subtree varying slowest.

use crate::paths::{
    check_dyck_params, has_forbidden_hill, peak_parity_of, ColorScheme, DyckPath, DyckStep,
    KaryTree, MotzkinPath, PathError, Step, TreeNode,
};
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{0}")]
    BadParams(&'static str),
    #[error("peak parity is undefined for paths of length 0")]
    EmptyLength,
    #[error(transparent)]
    Path(#[from] PathError),
}

/// All colored Motzkin paths with `n` steps ending at height `m`.
pub fn enumerate_motzkin(n: usize, m: usize, scheme: &ColorScheme) -> Vec<MotzkinPath> {
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(n);
    motzkin_dfs(&mut buf, 0, n, m, scheme, &mut out);
    out
}

fn motzkin_dfs(
    buf: &mut Vec<Step>,
    h: usize,
    n: usize,
    m: usize,
    scheme: &ColorScheme,
    out: &mut Vec<MotzkinPath>,
) {
    let remaining = n - buf.len();
    if remaining == 0 {
        if h == m {
            out.push(MotzkinPath::from_validated_parts(scheme.clone(), buf.clone(), m));
        }
        return;
    }
    if m > h + remaining || h > m + remaining * scheme.order() {
        return;
    }
    buf.push(Step::Up);
    motzkin_dfs(buf, h + 1, n, m, scheme, out);
    buf.pop();
    for drop in 0..=scheme.order().min(h) {
        let end = h - drop;
        match scheme.colors_for(drop, end) {
            None => {
                buf.push(Step::Down { drop, color: None });
                motzkin_dfs(buf, end, n, m, scheme, out);
                buf.pop();
            }
            Some(limit) => {
                for color in 1..=limit {
                    buf.push(Step::Down { drop, color: Some(color) });
                    motzkin_dfs(buf, end, n, m, scheme, out);
                    buf.pop();
                }
            }
        }
    }
}

/// Number of colored Motzkin paths with `n` steps ending at height `m`.
///
/// Walks every uncolored step shape and multiplies the color choices of its
/// down steps, so it stays brute force without materializing each colored
/// variant.
pub fn count_motzkin(n: usize, m: usize, scheme: &ColorScheme) -> BigInt {
    let mut total = BigInt::zero();
    let mut factors = Vec::with_capacity(n);
    shape_dfs(&mut factors, 0, n, m, scheme, &mut total);
    total
}

fn shape_dfs(
    factors: &mut Vec<u64>,
    h: usize,
    remaining: usize,
    m: usize,
    scheme: &ColorScheme,
    total: &mut BigInt,
) {
    if remaining == 0 {
        if h == m {
            *total += factors.iter().map(|&f| BigInt::from(f)).product::<BigInt>();
        }
        return;
    }
    if m > h + remaining || h > m + remaining * scheme.order() {
        return;
    }
    shape_dfs(factors, h + 1, remaining - 1, m, scheme, total);
    for drop in 0..=scheme.order().min(h) {
        let end = h - drop;
        let weight = scheme.colors_for(drop, end).unwrap_or(1);
        if weight == 0 {
            continue;
        }
        factors.push(weight);
        shape_dfs(factors, end, remaining - 1, m, scheme, total);
        factors.pop();
    }
}

/// All k-Dyck paths of depth `a` with semilength `n` and semiheight `m`.
pub fn enumerate_dyck(
    k: usize,
    depth: usize,
    n: usize,
    m: usize,
) -> Result<Vec<DyckPath>, OracleError> {
    check_dyck_params(k, depth)?;
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(k * n);
    dyck_dfs(&mut buf, 0, k, depth, k * n, (k * m) as i64, &mut out);
    Ok(out)
}

fn dyck_dfs(
    buf: &mut Vec<DyckStep>,
    h: i64,
    k: usize,
    depth: usize,
    len: usize,
    target: i64,
    out: &mut Vec<DyckPath>,
) {
    let remaining = (len - buf.len()) as i64;
    if remaining == 0 {
        if h == target {
            out.push(DyckPath::from_validated_parts(k, depth, buf.clone()));
        }
        return;
    }
    if target > h + remaining || target < h - remaining * (k as i64 - 1) {
        return;
    }
    buf.push(DyckStep::Up);
    dyck_dfs(buf, h + 1, k, depth, len, target, out);
    buf.pop();
    let down = h + 1 - k as i64;
    if down >= -(depth as i64) {
        buf.push(DyckStep::Down);
        dyck_dfs(buf, down, k, depth, len, target, out);
        buf.pop();
    }
}

/// All (k, r)-Fine paths of depth `a`: k-Dyck paths with no `U^r D` subpath
/// ending at height 0.
pub fn enumerate_fine(
    k: usize,
    depth: usize,
    r: usize,
    n: usize,
    m: usize,
) -> Result<Vec<DyckPath>, OracleError> {
    if r == 0 || r >= k {
        return Err(OracleError::BadParams("hill width must satisfy 1 <= r <= k-1"));
    }
    let paths = enumerate_dyck(k, depth, n, m)?;
    Ok(paths
        .into_iter()
        .filter(|p| !has_forbidden_hill(p, r).expect("hill width checked above"))
        .collect())
}

/// All paths of `enumerate_dyck(k, depth, n, m)` whose peaks all sit at
/// height `class mod k`; paths without peaks belong to every class.
/// Requires `n >= 1` because length-0 paths have no peak parity.
pub fn enumerate_peak_parity(
    k: usize,
    depth: usize,
    class: usize,
    n: usize,
    m: usize,
) -> Result<Vec<DyckPath>, OracleError> {
    if n == 0 {
        return Err(OracleError::EmptyLength);
    }
    if class >= k {
        return Err(OracleError::BadParams("parity class must satisfy 0 <= i <= k-1"));
    }
    let paths = enumerate_dyck(k, depth, n, m)?;
    Ok(paths
        .into_iter()
        .filter(|p| peak_parity_of(p).expect("paths are nonempty here").matches_class(class))
        .collect())
}

/// Which child counts internal vertices may have in an enumerated tree
/// family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SRestriction {
    /// Any arity from 1 to k.
    All,
    /// Arities in `(S intersect {1..k-1}) union {k}`: the `D_{i-1}` step
    /// encoding an `i`-child vertex is colorable only for the listed `i`,
    /// while `D_{k-1}` (a full vertex) is always available. Membership of
    /// 0 or k in `S` changes nothing; entries above k are rejected.
    Subset(BTreeSet<usize>),
}

impl SRestriction {
    fn allowed_arities(&self, k: usize) -> Result<BTreeSet<usize>, OracleError> {
        match self {
            SRestriction::All => Ok((1..=k).collect()),
            SRestriction::Subset(s) => {
                if s.iter().any(|&i| i > k) {
                    return Err(OracleError::BadParams("arity restriction entry exceeds k"));
                }
                let mut allowed: BTreeSet<usize> =
                    s.iter().copied().filter(|&i| (1..k).contains(&i)).collect();
                allowed.insert(k);
                Ok(allowed)
            }
        }
    }
}

/// All k-ary trees with `n` edges whose internal vertices have child counts
/// permitted by the restriction.
pub fn enumerate_trees(
    k: usize,
    n: usize,
    restriction: &SRestriction,
) -> Result<Vec<KaryTree>, OracleError> {
    if k < 2 {
        return Err(OracleError::BadParams("k must be at least 2"));
    }
    let allowed = restriction.allowed_arities(k)?;
    Ok(gen_trees(n, &allowed)
        .into_iter()
        .map(|root| KaryTree::new(k, root).expect("arities were bounded by k"))
        .collect())
}

fn gen_trees(edges: usize, allowed: &BTreeSet<usize>) -> Vec<TreeNode> {
    if edges == 0 {
        return vec![TreeNode::leaf()];
    }
    let mut out = Vec::new();
    for &arity in allowed.iter().filter(|&&c| c <= edges) {
        for_each_composition(edges - arity, arity, &mut |parts| {
            let lists: Vec<Vec<TreeNode>> = parts.iter().map(|&e| gen_trees(e, allowed)).collect();
            let mut chosen = Vec::with_capacity(arity);
            product_of(&lists, &mut chosen, &mut out);
        });
    }
    out
}

fn for_each_composition(total: usize, parts: usize, f: &mut impl FnMut(&[usize])) {
    let mut buf = Vec::with_capacity(parts);
    composition_rec(total, parts, &mut buf, f);
}

fn composition_rec(total: usize, parts: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if parts == 1 {
        buf.push(total);
        f(buf);
        buf.pop();
        return;
    }
    for first in 0..=total {
        buf.push(first);
        composition_rec(total - first, parts - 1, buf, f);
        buf.pop();
    }
}

fn product_of(lists: &[Vec<TreeNode>], chosen: &mut Vec<TreeNode>, out: &mut Vec<TreeNode>) {
    match lists.split_first() {
        None => out.push(TreeNode::with_children(chosen.clone())),
        Some((head, rest)) => {
            for item in head {
                chosen.push(item.clone());
                product_of(rest, chosen, out);
                chosen.pop();
            }
        }
    }
}

/// Convenience counters over the enumerators.
pub fn count_dyck(k: usize, depth: usize, n: usize, m: usize) -> Result<usize, OracleError> {
    Ok(enumerate_dyck(k, depth, n, m)?.len())
}

pub fn count_fine(
    k: usize,
    depth: usize,
    r: usize,
    n: usize,
    m: usize,
) -> Result<usize, OracleError> {
    Ok(enumerate_fine(k, depth, r, n, m)?.len())
}

pub fn count_peak_parity(
    k: usize,
    depth: usize,
    class: usize,
    n: usize,
    m: usize,
) -> Result<usize, OracleError> {
    Ok(enumerate_peak_parity(k, depth, class, n, m)?.len())
}

pub fn count_trees(k: usize, n: usize, restriction: &SRestriction) -> Result<usize, OracleError> {
    Ok(enumerate_trees(k, n, restriction)?.len())
}
