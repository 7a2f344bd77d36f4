//! Rooted-forest machinery: binomial and partial binomial arborescences,
//! heights, feedback descendants, guessed sizes, and the per-vertex height
//! estimate used by the parameterized solver.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::model::{DemandMaps, Player};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArborescenceError {
    #[error("subtree of {0} does not have power-of-two size")]
    NotPowerOfTwoSubtree(Player),
    #[error("not a spanning binomial arborescence")]
    NotAnSba,
    #[error("arc ({0},{1}) would break the forest (head already parented or cycle)")]
    InvalidArc(Player, Player),
}

/// Parent-map forest over players `0..n`. Every player is present; players
/// without a parent are roots. Arcs are only ever added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedForest {
    parent: Vec<Option<Player>>,
    children: Vec<Vec<Player>>,
}

impl RootedForest {
    pub fn new(n: usize) -> Self {
        RootedForest {
            parent: vec![None; n],
            children: vec![Vec::new(); n],
        }
    }

    pub fn from_arcs(
        n: usize,
        arcs: impl IntoIterator<Item = (Player, Player)>,
    ) -> Result<Self, ArborescenceError> {
        let mut f = RootedForest::new(n);
        for (u, v) in arcs {
            f.add_arc(u, v)?;
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: Player) -> Option<Player> {
        self.parent[v]
    }

    pub fn children(&self, v: Player) -> &[Player] {
        &self.children[v]
    }

    pub fn siblings(&self, v: Player) -> impl Iterator<Item = Player> + '_ {
        self.parent[v]
            .into_iter()
            .flat_map(move |u| self.children[u].iter().copied().filter(move |&w| w != v))
    }

    pub fn roots(&self) -> impl Iterator<Item = Player> + '_ {
        (0..self.n()).filter(move |&v| self.parent[v].is_none())
    }

    /// True when `a` is `d` or an ancestor of `d`.
    pub fn is_ancestor_or_self(&self, a: Player, d: Player) -> bool {
        let mut cur = Some(d);
        while let Some(v) = cur {
            if v == a {
                return true;
            }
            cur = self.parent[v];
        }
        false
    }

    /// Adds the arc `(u, v)`. Fails when `v` already has a parent or when the
    /// arc would close a cycle.
    pub fn add_arc(&mut self, u: Player, v: Player) -> Result<(), ArborescenceError> {
        if u == v || self.parent[v].is_some() || self.is_ancestor_or_self(v, u) {
            return Err(ArborescenceError::InvalidArc(u, v));
        }
        self.parent[v] = Some(u);
        self.children[u].push(v);
        Ok(())
    }

    pub fn contains_arc(&self, u: Player, v: Player) -> bool {
        self.parent[v] == Some(u)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Player, Player)> + '_ {
        (0..self.n()).filter_map(move |v| self.parent[v].map(|u| (u, v)))
    }

    pub fn arc_count(&self) -> usize {
        self.parent.iter().filter(|p| p.is_some()).count()
    }

    /// Descendants of `v` including `v`, in preorder.
    pub fn descendants(&self, v: Player) -> Vec<Player> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            out.push(x);
            stack.extend(self.children[x].iter().copied());
        }
        out
    }

    /// Subtree sizes of every player in one pass.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![1usize; self.n()];
        for v in self.topo_leaves_first() {
            if let Some(u) = self.parent[v] {
                sizes[u] += sizes[v];
            }
        }
        sizes
    }

    /// All players ordered so that children precede parents.
    pub fn topo_leaves_first(&self) -> Vec<Player> {
        let mut order = Vec::with_capacity(self.n());
        let mut stack: Vec<Player> = self.roots().collect();
        while let Some(v) = stack.pop() {
            order.push(v);
            stack.extend(self.children[v].iter().copied());
        }
        order.reverse();
        order
    }

    /// A forest is valid w.r.t. a demand set when every demand arc is present
    /// as a parent-child arc.
    pub fn is_valid_for<'a>(&self, demands: impl IntoIterator<Item = &'a (Player, Player)>) -> bool {
        demands.into_iter().all(|&(u, v)| self.contains_arc(u, v))
    }
}

/// Fixed heights for a designated set of players (the feedback vertices, plus
/// round-pinned demand losers in rounds mode). The guessed size `beta` and
/// the height estimate `alpha_star` both dispatch on membership in this map.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HeightGuess {
    values: BTreeMap<Player, u32>,
}

impl HeightGuess {
    pub fn new() -> Self {
        HeightGuess::default()
    }

    pub fn from_map(values: BTreeMap<Player, u32>) -> Self {
        HeightGuess { values }
    }

    pub fn insert(&mut self, v: Player, h: u32) {
        self.values.insert(v, h);
    }

    pub fn get(&self, v: Player) -> Option<u32> {
        self.values.get(&v).copied()
    }

    pub fn is_fixed(&self, v: Player) -> bool {
        self.values.contains_key(&v)
    }

    pub fn domain(&self) -> impl Iterator<Item = Player> + '_ {
        self.values.keys().copied()
    }
}

/// Height of `v`: log of its descendant count.
pub fn alpha(forest: &RootedForest, v: Player) -> Result<u32, ArborescenceError> {
    let size = forest.descendants(v).len();
    crate::model::log2_exact(size).ok_or(ArborescenceError::NotPowerOfTwoSubtree(v))
}

/// Checks the recursive binomial-arborescence shape: a height-`h` root has
/// children whose subtree sizes are exactly `1, 2, .., 2^(h-1)`.
pub fn is_binomial_arborescence(forest: &RootedForest, root: Player) -> bool {
    if forest.parent(root).is_some() {
        return false;
    }
    let sizes = forest.subtree_sizes();
    for v in forest.descendants(root) {
        let size = sizes[v];
        if !size.is_power_of_two() {
            return false;
        }
        let mut child_sizes: Vec<usize> = forest.children(v).iter().map(|&c| sizes[c]).collect();
        child_sizes.sort_unstable();
        if child_sizes.len() != size.trailing_zeros() as usize {
            return false;
        }
        if child_sizes.iter().enumerate().any(|(i, &s)| s != 1 << i) {
            return false;
        }
    }
    true
}

/// Vertices of `v`'s subtree whose path from `v` passes through a feedback
/// vertex that is neither endpoint.
pub fn feedback_descendants(
    forest: &RootedForest,
    v: Player,
    f_vertices: &BTreeSet<Player>,
) -> BTreeSet<Player> {
    let mut out = BTreeSet::new();
    // (vertex, true once a feedback vertex other than v lies strictly above)
    let mut stack: Vec<(Player, bool)> = forest
        .children(v)
        .iter()
        .map(|&c| (c, false))
        .collect();
    while let Some((x, past)) = stack.pop() {
        if past {
            out.insert(x);
        }
        let past_next = past || f_vertices.contains(&x);
        stack.extend(forest.children(x).iter().map(|&c| (c, past_next)));
    }
    out
}

/// Guessed size of `v`: `2^g(v)` when the height of `v` is fixed, else one
/// plus the guessed sizes of its children.
pub fn guessed_size_beta(forest: &RootedForest, v: Player, g: &HeightGuess) -> u64 {
    if let Some(h) = g.get(v) {
        return 1 << h;
    }
    let mut beta: BTreeMap<Player, u64> = BTreeMap::new();
    let mut order = forest.descendants(v);
    order.reverse();
    for x in order {
        let b = match g.get(x) {
            Some(h) => 1 << h,
            None => {
                1 + forest
                    .children(x)
                    .iter()
                    .map(|c| beta.get(c).copied().unwrap_or(0))
                    .sum::<u64>()
            }
        };
        beta.insert(x, b);
    }
    beta[&v]
}

/// Guessed sizes of every player in one leaves-first pass.
pub fn beta_all(forest: &RootedForest, g: &HeightGuess) -> Vec<u64> {
    let n = forest.n();
    let mut beta = vec![0u64; n];
    for v in forest.topo_leaves_first() {
        beta[v] = match g.get(v) {
            Some(h) => 1 << h,
            None => 1 + forest.children(v).iter().map(|&c| beta[c]).sum::<u64>(),
        };
    }
    beta
}

/// Decides whether the subtree at `root` is a partial binomial arborescence
/// of the claimed height: some height-`claimed_height` BA, with the heights
/// of surviving feedback vertices given by `g`, minus a subset of the root's
/// feedback descendants.
///
/// Present vertices are assigned host heights. Children of a vertex carry
/// pairwise-distinct heights below their parent's; the child set must be
/// complete (one child per height) wherever the host children cannot have
/// been deleted, which is everywhere except strictly below a feedback vertex
/// other than the root.
pub fn is_partial_ba(
    forest: &RootedForest,
    root: Player,
    f_vertices: &BTreeSet<Player>,
    g: &HeightGuess,
    claimed_height: u32,
) -> bool {
    if claimed_height > 63 {
        return false;
    }
    let sub = forest.descendants(root);
    let mut in_sub = BTreeSet::new();
    in_sub.extend(sub.iter().copied());

    // may_miss[v]: children of v may be absent from the host, i.e. some
    // feedback vertex other than the root lies on the path root..=v.
    let mut may_miss: BTreeMap<Player, bool> = BTreeMap::new();
    may_miss.insert(root, false);
    for &v in &sub {
        if v == root {
            continue;
        }
        let p = forest.parent(v).expect("subtree vertex has a parent");
        let m = may_miss[&p] || f_vertices.contains(&v);
        may_miss.insert(v, m);
    }

    // feasible[v] is a bitmask of host heights v can take.
    let mut feasible: BTreeMap<Player, u64> = BTreeMap::new();
    let mut order = sub.clone();
    order.reverse();
    for &v in &order {
        let mut mask = 0u64;
        for h in 0..=claimed_height {
            if feasible_at(forest, v, h, may_miss[&v], f_vertices, g, &feasible) {
                mask |= 1 << h;
            }
        }
        feasible.insert(v, mask);
    }
    feasible[&root] & (1 << claimed_height) != 0
}

fn feasible_at(
    forest: &RootedForest,
    v: Player,
    h: u32,
    may_miss: bool,
    f_vertices: &BTreeSet<Player>,
    g: &HeightGuess,
    feasible: &BTreeMap<Player, u64>,
) -> bool {
    if f_vertices.contains(&v) {
        // The height of a surviving feedback vertex is pinned by the guess.
        if g.get(v) != Some(h) {
            return false;
        }
    }
    let children = forest.children(v);
    if children.len() > h as usize {
        return false;
    }
    if !may_miss && children.len() != h as usize {
        return false;
    }
    // Injective assignment of distinct host heights < h to the children.
    let cand: Vec<u64> = children
        .iter()
        .map(|c| feasible[c] & ((1u64 << h) - 1))
        .collect();
    injective_matching(&cand, h as usize)
}

/// Augmenting-path matching of each candidate mask to a distinct slot.
fn injective_matching(cand: &[u64], slots: usize) -> bool {
    let mut slot_of: Vec<Option<usize>> = vec![None; slots];
    for c in 0..cand.len() {
        let mut visited = vec![false; slots];
        if !augment(c, cand, &mut slot_of, &mut visited) {
            return false;
        }
    }
    true
}

fn augment(c: usize, cand: &[u64], slot_of: &mut [Option<usize>], visited: &mut [bool]) -> bool {
    for s in 0..slot_of.len() {
        if cand[c] & (1 << s) == 0 || visited[s] {
            continue;
        }
        visited[s] = true;
        if slot_of[s].is_none() || augment(slot_of[s].unwrap(), cand, slot_of, visited) {
            slot_of[s] = Some(c);
            return true;
        }
    }
    false
}

/// Strength order plus O(1) position lookups. `order[0]` is the strongest
/// player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrengthOrder {
    order: Vec<Player>,
    pos: Vec<usize>,
}

impl StrengthOrder {
    pub fn new(order: Vec<Player>) -> Self {
        let mut pos = vec![0usize; order.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        StrengthOrder { order, pos }
    }

    pub fn players_strongest_first(&self) -> &[Player] {
        &self.order
    }

    pub fn position(&self, v: Player) -> usize {
        self.pos[v]
    }

    pub fn stronger(&self, a: Player, b: Player) -> bool {
        self.pos[a] < self.pos[b]
    }

    pub fn weaker(&self, a: Player, b: Player) -> bool {
        self.pos[a] > self.pos[b]
    }
}

/// Least feasible height of every player given the demand structure and the
/// fixed heights in `g`.
///
/// For a fixed player the estimate is its fixed height. Otherwise it is the
/// least value exceeding the estimates of all demand children, avoiding the
/// estimates of demand siblings that are weaker or height-fixed. Computed
/// weakest first: every constraint refers to a weaker player or to `g`.
pub fn alpha_star(dm: &DemandMaps, g: &HeightGuess, order: &StrengthOrder) -> Vec<u32> {
    let n = order.players_strongest_first().len();
    let mut out = vec![0u32; n];
    // fixed heights first: a constraint may reference a fixed vertex that is
    // stronger than the one being computed
    for v in g.domain() {
        out[v] = g.get(v).expect("domain member");
    }
    for &v in order.players_strongest_first().iter().rev() {
        if g.is_fixed(v) {
            continue;
        }
        let mut lower = 0u32;
        for &w in dm.children(v) {
            // a demand child is weaker than v or fixed, so out[w] is final
            lower = lower.max(out[w] + 1);
        }
        let mut forbidden = 0u64;
        if let Some(u) = dm.parent(v) {
            for &w in dm.children(u) {
                if w != v && (order.weaker(w, v) || g.is_fixed(w)) && out[w] < 64 {
                    forbidden |= 1 << out[w];
                }
            }
        }
        let mut h = lower;
        while h < 64 && forbidden & (1 << h) != 0 {
            h += 1;
        }
        out[v] = h;
    }
    out
}

/// An SBA is compact w.r.t. `g` when every demand loser sits at exactly its
/// estimated height.
pub fn is_compact(
    sba: &RootedForest,
    dm: &DemandMaps,
    g: &HeightGuess,
    order: &StrengthOrder,
) -> bool {
    let star = alpha_star(dm, g, order);
    let sizes = sba.subtree_sizes();
    dm.lose_set().iter().all(|&v| {
        crate::model::log2_exact(sizes[v]).is_some_and(|h| h == star[v])
    })
}
