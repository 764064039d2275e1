//! Exhaustive enumeration of numerical semigroups by genus.
//!
//! The semigroup tree is rooted at N; the children of `S` are `S \ {g}` for
//! each minimal generator `g > F(S)`. Every semigroup of genus `g` appears
//! exactly once at depth `g`. A brute-force gap-set enumerator is kept as an
//! independent oracle for the tree.
//!
//! Sweeps split the tree at a fixed depth into subtree tasks and reduce the
//! per-task accumulators with commutative, associative merges, so the result
//! does not depend on the worker count.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::apery::{apery_set, symmetry_class_with, SymmetryClass};
use crate::bounds::{apery_partition_witness, pf_partition_witness_with, BoundContext, BoundId};
use crate::error::{Error, Result};
use crate::semigroup::Semigroup;

pub const DEFAULT_GENUS_CAP: u32 = 40;
pub const DEFAULT_SPLIT_DEPTH: u32 = 10;
/// Largest genus the gap-set oracle accepts.
pub const ORACLE_GENUS_CAP: u32 = 14;
pub const CAP_ENV_VAR: &str = "SEMIGROUP_FORGE_CAP";

#[derive(Debug, Clone)]
pub struct TreeNode {
    pub semigroup: Semigroup,
    /// Minimal generators greater than the Frobenius number, ascending.
    pub effective_generators: Vec<i64>,
}

impl TreeNode {
    pub fn root() -> Self {
        TreeNode {
            semigroup: Semigroup::full(),
            effective_generators: vec![1],
        }
    }

    fn new(semigroup: Semigroup) -> Self {
        let f = semigroup.frobenius();
        let effective_generators = semigroup
            .gens()
            .iter()
            .copied()
            .filter(|&g| g > f)
            .collect();
        TreeNode {
            semigroup,
            effective_generators,
        }
    }

    pub fn depth(&self) -> u32 {
        self.semigroup.genus() as u32
    }

    /// True for the root N, which has no small elements and is skipped by
    /// the bound checkers.
    pub fn is_degenerate(&self) -> bool {
        self.semigroup.is_full()
    }

    /// `S \ {g}` for every effective generator `g`.
    pub fn children(&self) -> Result<Vec<TreeNode>> {
        self.effective_generators
            .iter()
            .map(|&g| remove_generator(&self.semigroup, g).map(TreeNode::new))
            .collect()
    }
}

/// `S \ {g}` for a minimal generator `g > F`. Everything above `g` stays in
/// the semigroup, so the smaller minimal generators together with
/// `g+1 ..= 2g+1` generate it.
fn remove_generator(s: &Semigroup, g: i64) -> Result<Semigroup> {
    let mut gens: Vec<i64> = s.gens().iter().copied().filter(|&x| x < g).collect();
    gens.extend(g + 1..=2 * g + 1);
    Semigroup::from_generators(&gens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeOptions {
    pub cap: u32,
    pub workers: usize,
    pub split_depth: u32,
}

impl Default for TreeOptions {
    fn default() -> Self {
        TreeOptions {
            cap: DEFAULT_GENUS_CAP,
            workers: 1,
            split_depth: DEFAULT_SPLIT_DEPTH,
        }
    }
}

impl TreeOptions {
    /// Defaults, with the cap taken from `SEMIGROUP_FORGE_CAP` when set.
    pub fn from_env() -> Self {
        let cap = std::env::var(CAP_ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_GENUS_CAP);
        TreeOptions {
            cap,
            ..Default::default()
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

/// Folds `step` over every node of genus `<= max_genus`, root included.
///
/// `step` may run concurrently on different subtrees; each task owns its own
/// accumulator and `merge` combines them.
pub fn fold_tree<A, I, S, M>(
    max_genus: u32,
    opts: &TreeOptions,
    init: I,
    step: S,
    merge: M,
) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync + Send,
    S: Fn(&mut A, &TreeNode) -> Result<()> + Sync + Send,
    M: Fn(A, A) -> A + Sync + Send,
{
    if max_genus > opts.cap {
        return Err(Error::BudgetExceeded {
            requested: max_genus,
            cap: opts.cap,
        });
    }
    let split = opts.split_depth.min(max_genus);

    // Nodes above the split depth are visited serially while the frontier
    // is collected.
    let mut acc = init();
    let mut frontier = Vec::new();
    let mut stack = vec![TreeNode::root()];
    while let Some(node) = stack.pop() {
        if node.depth() == split {
            frontier.push(node);
            continue;
        }
        step(&mut acc, &node)?;
        stack.extend(node.children()?);
    }

    let descend = |task: TreeNode| -> Result<A> {
        let mut local = init();
        let mut stack = vec![task];
        while let Some(node) = stack.pop() {
            step(&mut local, &node)?;
            if node.depth() < max_genus {
                stack.extend(node.children()?);
            }
        }
        Ok(local)
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .expect("thread pool");
    let rest = pool.install(|| {
        frontier
            .into_par_iter()
            .map(descend)
            .try_reduce(&init, |a, b| Ok(merge(a, b)))
    })?;
    Ok(merge(acc, rest))
}

/// Calls `visitor` once per semigroup of genus `<= max_genus` and returns
/// the per-genus counts.
pub fn enumerate_tree<V>(max_genus: u32, opts: &TreeOptions, visitor: V) -> Result<Vec<u64>>
where
    V: Fn(&TreeNode) -> Result<()> + Sync + Send,
{
    let len = max_genus as usize + 1;
    fold_tree(
        max_genus,
        opts,
        || vec![0u64; len],
        |counts, node| {
            visitor(node)?;
            counts[node.depth() as usize] += 1;
            Ok(())
        },
        merge_counts,
    )
}

pub fn count_by_genus(max_genus: u32, opts: &TreeOptions) -> Result<Vec<u64>> {
    enumerate_tree(max_genus, opts, |_| Ok(()))
}

fn merge_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// A semigroup identified by genus and minimal generating system.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SemigroupKey {
    pub genus: u32,
    pub gens: Vec<i64>,
}

/// Every semigroup of genus `<= max_genus` found by walking the tree.
pub fn tree_keys(max_genus: u32, opts: &TreeOptions) -> Result<Vec<SemigroupKey>> {
    let mut keys = fold_tree(
        max_genus,
        opts,
        Vec::new,
        |keys, node| {
            keys.push(SemigroupKey {
                genus: node.depth(),
                gens: node.semigroup.gens().to_vec(),
            });
            Ok(())
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )?;
    keys.sort();
    Ok(keys)
}

/// Independent enumeration: for each genus `g`, every gap set
/// `G ⊆ {1, …, 2g − 1}` with `1 ∈ G` and `|G| = g` whose complement is closed
/// under addition.
pub fn brute_force_oracle(max_genus: u32) -> Result<BTreeSet<SemigroupKey>> {
    if max_genus > ORACLE_GENUS_CAP {
        return Err(Error::BudgetExceeded {
            requested: max_genus,
            cap: ORACLE_GENUS_CAP,
        });
    }
    let mut out = BTreeSet::new();
    out.insert(SemigroupKey {
        genus: 0,
        gens: vec![1],
    });
    for genus in 1..=max_genus {
        let limit = 2 * genus - 1;
        let universe: u64 = (1u64 << (limit + 1)) - 2; // bits 1..=limit
        for rest in (2..=limit).combinations(genus as usize - 1) {
            let gaps = rest.iter().fold(1u64 << 1, |m, &x| m | (1u64 << x));
            let elems = universe & !gaps;
            let closed = (1..=limit)
                .filter(|&a| elems >> a & 1 == 1)
                .all(|a| (elems << a) & gaps == 0);
            if closed {
                out.insert(SemigroupKey {
                    genus,
                    gens: gap_set_generators(gaps),
                });
            }
        }
    }
    Ok(out)
}

/// Minimal generators of `N \ gaps`: nonzero elements that are not a sum of
/// two nonzero elements. All of them lie below `F + g1`.
fn gap_set_generators(gaps: u64) -> Vec<i64> {
    let member = |x: i64| x >= 0 && (x >= 64 || gaps >> x & 1 == 0);
    let frobenius = 63 - gaps.leading_zeros() as i64;
    let g1 = (1..).find(|&x| member(x)).unwrap();
    (1..=frobenius + g1)
        .filter(|&x| member(x))
        .filter(|&x| !(1..=x / 2).any(|a| member(a) && member(x - a)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusCrosscheck {
    pub genus: u32,
    pub tree: u64,
    pub oracle: u64,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub max_genus: u32,
    pub per_genus: Vec<GenusCrosscheck>,
    pub only_in_tree: Vec<SemigroupKey>,
    pub only_in_oracle: Vec<SemigroupKey>,
    pub equal: bool,
}

pub fn oracle_crosscheck(max_genus: u32, opts: &TreeOptions) -> Result<CrosscheckReport> {
    let oracle = brute_force_oracle(max_genus)?;
    let tree_list = tree_keys(max_genus, opts)?;
    let tree: BTreeSet<SemigroupKey> = tree_list.iter().cloned().collect();
    let mut only_in_tree: Vec<_> = tree.difference(&oracle).cloned().collect();
    // Duplicates from the tree also count as a mismatch.
    if tree.len() != tree_list.len() {
        only_in_tree.extend(tree_list.iter().duplicates().cloned());
    }
    let only_in_oracle: Vec<_> = oracle.difference(&tree).cloned().collect();
    let per_genus = (0..=max_genus)
        .map(|genus| {
            let t = tree_list.iter().filter(|k| k.genus == genus).count() as u64;
            let o = oracle.iter().filter(|k| k.genus == genus).count() as u64;
            let same = tree
                .iter()
                .filter(|k| k.genus == genus)
                .eq(oracle.iter().filter(|k| k.genus == genus));
            GenusCrosscheck {
                genus,
                tree: t,
                oracle: o,
                equal: same && t == o,
            }
        })
        .collect::<Vec<_>>();
    let equal = only_in_tree.is_empty() && only_in_oracle.is_empty();
    Ok(CrosscheckReport {
        max_genus,
        per_genus,
        only_in_tree,
        only_in_oracle,
        equal,
    })
}

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub max_genus: u32,
    pub bounds: Vec<BoundId>,
    pub witnesses: bool,
    pub tree: TreeOptions,
}

/// How many attaining generator tuples a [`MinSlack`] keeps.
pub const MAX_ATTAINERS: usize = 32;

/// Smallest slack seen for one bound. `attainers` holds the lexicographically
/// least generating systems attaining it (at most [`MAX_ATTAINERS`]);
/// `lhs`/`rhs` belong to the first of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinSlack {
    pub bound_id: BoundId,
    pub slack: i64,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    pub attainers: Vec<Vec<i64>>,
    pub attained_by: u64,
}

impl MinSlack {
    pub fn gens(&self) -> &[i64] {
        &self.attainers[0]
    }

    fn absorb(&mut self, other: MinSlack) {
        match other.slack.cmp(&self.slack) {
            std::cmp::Ordering::Less => *self = other,
            std::cmp::Ordering::Equal => {
                self.attained_by += other.attained_by;
                if other.attainers[0] < self.attainers[0] {
                    self.lhs = other.lhs;
                    self.rhs = other.rhs;
                }
                self.attainers.extend(other.attainers);
                self.attainers.sort();
                self.attainers.dedup();
                self.attainers.truncate(MAX_ATTAINERS);
            }
            std::cmp::Ordering::Greater => {}
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub genus: u32,
    pub gens: Vec<i64>,
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub max_genus: u32,
    pub counts: Vec<u64>,
    /// Semigroups run through the checkers (every node except the root).
    pub checked: u64,
    pub bounds: Vec<BoundId>,
    pub min_slack: Vec<MinSlack>,
    pub violations: Vec<Violation>,
    pub almost_symmetric: u64,
    pub symmetric: u64,
    pub pseudo_symmetric: u64,
    /// Semigroups with `2n + t = F + 2` that fail the almost-symmetric test.
    pub identity_not_almost_symmetric: u64,
    pub identity_not_almost_symmetric_example: Option<Vec<i64>>,
    pub corollary_chain_checked: u64,
    pub witnesses_checked: u64,
    /// Not part of the serialized summary so that reports stay reproducible.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SweepSummary {
    pub fn min_slack_for(&self, id: BoundId) -> Option<&MinSlack> {
        self.min_slack.iter().find(|m| m.bound_id == id)
    }
}

#[derive(Debug, Default)]
struct SweepAcc {
    counts: Vec<u64>,
    checked: u64,
    min_slack: BTreeMap<BoundId, MinSlack>,
    violations: Vec<Violation>,
    almost_symmetric: u64,
    symmetric: u64,
    pseudo_symmetric: u64,
    identity_only: u64,
    identity_only_example: Option<Vec<i64>>,
    corollary_chain_checked: u64,
    witnesses_checked: u64,
}

impl SweepAcc {
    fn new(len: usize) -> Self {
        SweepAcc {
            counts: vec![0; len],
            ..Default::default()
        }
    }

    fn merge(mut self, other: SweepAcc) -> SweepAcc {
        self.counts = merge_counts(self.counts, other.counts);
        self.checked += other.checked;
        for (id, m) in other.min_slack {
            match self.min_slack.get_mut(&id) {
                Some(cur) => cur.absorb(m),
                None => {
                    self.min_slack.insert(id, m);
                }
            }
        }
        self.violations.extend(other.violations);
        self.almost_symmetric += other.almost_symmetric;
        self.symmetric += other.symmetric;
        self.pseudo_symmetric += other.pseudo_symmetric;
        self.identity_only += other.identity_only;
        self.identity_only_example = match (self.identity_only_example, other.identity_only_example)
        {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.corollary_chain_checked += other.corollary_chain_checked;
        self.witnesses_checked += other.witnesses_checked;
        self
    }

    fn violation(&mut self, s: &Semigroup, check: &str, detail: String) {
        self.violations.push(Violation {
            genus: s.genus() as u32,
            gens: s.gens().to_vec(),
            check: check.to_string(),
            detail,
        });
    }

    fn visit(&mut self, node: &TreeNode, opts: &SweepOptions) -> Result<()> {
        let s = &node.semigroup;
        self.counts[node.depth() as usize] += 1;
        if node.is_degenerate() {
            return Ok(());
        }
        self.checked += 1;
        match self.check(s, opts) {
            Ok(()) => Ok(()),
            Err(Error::WitnessViolation(detail)) => {
                self.violation(s, "witness", detail);
                Ok(())
            }
            Err(e) => Err(e.at(s.gens())),
        }
    }

    fn check(&mut self, s: &Semigroup, opts: &SweepOptions) -> Result<()> {
        self.structural(s)?;
        let ctx = BoundContext::new(s)?;
        let pf = &ctx.pf;
        let (f, n, t) = (s.frobenius(), s.small_count(), pf.type_t);

        let class = symmetry_class_with(s, pf)?;
        match class {
            SymmetryClass::Symmetric => self.symmetric += 1,
            SymmetryClass::PseudoSymmetric => self.pseudo_symmetric += 1,
            _ => {}
        }
        if ctx.almost_symmetric {
            self.almost_symmetric += 1;
        } else if 2 * n + t == f + 2 {
            self.identity_only += 1;
            let gens = s.gens().to_vec();
            if self
                .identity_only_example
                .as_ref()
                .is_none_or(|g| gens < *g)
            {
                self.identity_only_example = Some(gens);
            }
        }
        if (class == SymmetryClass::Symmetric) != (t == 1) {
            self.violation(
                s,
                "symmetric-iff-type-1",
                format!("class {class:?}, t = {t}"),
            );
        }

        for &id in &opts.bounds {
            if id == BoundId::CorollaryAS && !ctx.almost_symmetric {
                continue;
            }
            let r = ctx.check(id)?;
            if !r.holds {
                self.violation(s, id.as_str(), format!("{} > {}", r.lhs, r.rhs));
            }
            let entry = MinSlack {
                bound_id: id,
                slack: r.slack,
                lhs: r.lhs,
                rhs: r.rhs,
                holds: r.holds,
                attainers: vec![s.gens().to_vec()],
                attained_by: 1,
            };
            match self.min_slack.get_mut(&id) {
                Some(cur) => cur.absorb(entry),
                None => {
                    self.min_slack.insert(id, entry);
                }
            }
        }
        if opts.bounds.contains(&BoundId::CorollaryAS) {
            if let Some(chain) = ctx.corollary_chain() {
                self.corollary_chain_checked += 1;
                if !chain.holds {
                    self.violation(
                        s,
                        "corollary-chain",
                        format!("{} <= {} < {} fails", chain.lhs, chain.middle, chain.rhs),
                    );
                }
            }
        }

        if opts.witnesses {
            let ap = apery_partition_witness(s)?;
            let pw = pf_partition_witness_with(s, pf)?;
            let expected = if pf.f2.is_some() { t - 2 } else { t - 1 };
            if pw.blocks.len() as i64 != expected {
                self.violation(
                    s,
                    "pf-block-count",
                    format!("{} blocks, expected {expected}", pw.blocks.len()),
                );
            }
            debug_assert_eq!(ap.blocks.len() as i64, s.multiplicity() - 1);
            self.witnesses_checked += 1;
        }
        Ok(())
    }

    /// Invariants every semigroup must satisfy regardless of the requested
    /// bounds.
    fn structural(&mut self, s: &Semigroup) -> Result<()> {
        let (f, g1, n, q) = (s.frobenius(), s.multiplicity(), s.small_count(), s.q());
        if n + s.genus() != f + 1 {
            self.violation(s, "n+genus", format!("{n} + {} != {}", s.genus(), f + 1));
        }
        let ap = apery_set(s, g1)?;
        if ap.elements.len() as i64 != g1
            || ap.elements.last() != Some(&(f + g1))
            || ap.elements[0] != 0
        {
            self.violation(s, "apery", format!("Ap(S,g1) = {:?}", ap.elements));
        }
        if !(1 <= q && q <= n && q * g1 > f && (q - 1) * g1 <= f) {
            self.violation(s, "q", format!("q = {q}, n = {n}, g1 = {g1}, F = {f}"));
        }
        let pf = crate::apery::pseudo_frobenius(s)?;
        if pf.elements.last() != Some(&f) {
            self.violation(s, "F-in-PF", format!("PF = {:?}", pf.elements));
        }
        if !(1 <= pf.type_t && pf.type_t < g1) {
            self.violation(s, "type<=g1-1", format!("t = {}", pf.type_t));
        }
        Ok(())
    }
}

pub fn sweep(opts: &SweepOptions) -> Result<SweepSummary> {
    let start = Instant::now();
    let len = opts.max_genus as usize + 1;
    let acc = fold_tree(
        opts.max_genus,
        &opts.tree,
        || SweepAcc::new(len),
        |acc, node| acc.visit(node, opts),
        SweepAcc::merge,
    )?;
    let mut violations = acc.violations;
    violations.sort();
    let mut bounds = opts.bounds.clone();
    bounds.sort();
    bounds.dedup();
    Ok(SweepSummary {
        max_genus: opts.max_genus,
        counts: acc.counts,
        checked: acc.checked,
        bounds,
        min_slack: acc.min_slack.into_values().collect(),
        violations,
        almost_symmetric: acc.almost_symmetric,
        symmetric: acc.symmetric,
        pseudo_symmetric: acc.pseudo_symmetric,
        identity_not_almost_symmetric: acc.identity_only,
        identity_not_almost_symmetric_example: acc.identity_only_example,
        corollary_chain_checked: acc.corollary_chain_checked,
        witnesses_checked: acc.witnesses_checked,
        wall_time: start.elapsed(),
    })
}
