//! The feedback-arc-set-parameterized solver: parent and height guessing,
//! sanity checks, the greedy packing pass, and its FPT and specified-rounds
//! variants.
//!
//! A run guesses, for every feedback vertex, its parent in the solution (the
//! player that beats it) and its height. Parents become extra demand arcs,
//! heights seed the per-vertex estimate `alpha_star`, and a single greedy
//! pass then packs partial binomial arborescences from the weakest player
//! upward. Guesses that cannot work are rejected either by the sanity checks
//! or mid-pass; any candidate solution is fully re-verified before being
//! returned, so a wrong guess can never produce a wrong answer.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::arborescence::{
    alpha_star, beta_all, is_binomial_arborescence, HeightGuess, RootedForest, StrengthOrder,
};
use crate::fas::minimum_fas;
use crate::model::{
    check_solution, sba_to_seeding, DemandMaps, Player, Seeding, ValidatedInstance,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FixerError {
    #[error("instance has n={n}, k={k}; guard allows n <= {max_n}, k <= {max_k}")]
    LimitExceeded { n: usize, k: usize, max_n: usize, max_k: usize },
    #[error("feedback vertex {0} loses an upset but no demand match")]
    PropertyOneViolated(Player),
    #[error("round constraints are contradictory at player {0}")]
    RoundConflict(Player),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PackError {
    #[error("pack precondition violated: {0}")]
    PreconditionViolated(&'static str),
}

/// Enumeration guards. The guess space grows like `(n * log n)^(2k)`, so the
/// defaults keep runs tractable; override via the `_with` entry points.
#[derive(Debug, Clone, Copy)]
pub struct FixerLimits {
    pub max_n: usize,
    pub max_k: usize,
}

impl Default for FixerLimits {
    fn default() -> Self {
        FixerLimits { max_n: 64, max_k: 4 }
    }
}

/// One guessed parent assignment for the feedback vertices. `None` marks the
/// vertex guessed to be the champion (no parent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParentGuess {
    assignments: BTreeMap<Player, Option<Player>>,
}

impl ParentGuess {
    pub fn parent_of(&self, v: Player) -> Option<Option<Player>> {
        self.assignments.get(&v).copied()
    }

    /// The vertex guessed parentless, if any.
    pub fn champion(&self) -> Option<Player> {
        self.assignments
            .iter()
            .find(|(_, p)| p.is_none())
            .map(|(&v, _)| v)
    }
}

/// Result of one packing call: the grown forest, the produced root, and the
/// joins in the order they were made.
#[derive(Debug, Clone)]
pub struct PackOutcome {
    pub forest: RootedForest,
    pub root: Player,
    pub joins: Vec<(Player, Player)>,
}

/// Merges the parentless roots in `p` into one partial binomial arborescence
/// of height `j`.
///
/// Loop body: if some root already has guessed size `2^j` it is returned;
/// otherwise the two roots sharing the largest equal guessed size are joined
/// by an arc from the stronger to the weaker. The guessed-size sum over the
/// live roots is conserved by each join, so the loop meets `2^j` exactly.
pub fn pack(
    forest: &RootedForest,
    p: &BTreeSet<Player>,
    j: u32,
    g: &HeightGuess,
    order: &StrengthOrder,
) -> Result<PackOutcome, PackError> {
    let mut q = forest.clone();
    let mut beta = beta_all(&q, g);
    let members: Vec<Player> = p.iter().copied().collect();
    let (root, joins) = pack_core(&mut q, &mut beta, g, members, j, order)?;
    Ok(PackOutcome { forest: q, root, joins })
}

fn pack_core(
    q: &mut RootedForest,
    beta: &mut [u64],
    g: &HeightGuess,
    mut p: Vec<Player>,
    j: u32,
    order: &StrengthOrder,
) -> Result<(Player, Vec<(Player, Player)>), PackError> {
    if j > 62 {
        return Err(PackError::PreconditionViolated("height out of range"));
    }
    let target = 1u64 << j;
    let mut total = 0u64;
    for &w in &p {
        if q.parent(w).is_some() {
            return Err(PackError::PreconditionViolated("member has a parent"));
        }
        if !beta[w].is_power_of_two() || beta[w] > target {
            return Err(PackError::PreconditionViolated("member size not a power of two at most 2^j"));
        }
        total += beta[w];
    }
    if total < target {
        return Err(PackError::PreconditionViolated("sizes sum below 2^j"));
    }
    let mut joins = Vec::new();
    loop {
        // largest sizes first; strongest first among equals
        p.sort_by(|&a, &b| {
            beta[b]
                .cmp(&beta[a])
                .then(order.position(a).cmp(&order.position(b)))
        });
        if let Some(&r) = p.iter().find(|&&w| beta[w] == target) {
            return Ok((r, joins));
        }
        let idx = (0..p.len() - 1)
            .find(|&i| beta[p[i]] == beta[p[i + 1]])
            .ok_or(PackError::PreconditionViolated("no equal pair below 2^j"))?;
        let (x, y) = (p[idx], p[idx + 1]);
        if g.is_fixed(x) {
            return Err(PackError::PreconditionViolated("fixed-size root cannot absorb"));
        }
        q.add_arc(x, y)
            .map_err(|_| PackError::PreconditionViolated("join closes a cycle"))?;
        beta[x] += beta[y];
        joins.push((x, y));
        p.remove(idx + 1);
    }
}

/// Quick rejection of a height guess before running a pass: demand winners
/// must sit strictly above their losers, demand children of one parent must
/// sit at distinct heights, a guessed champion must sit at height `log n`,
/// and no estimate may exceed `log n`.
pub fn sanity_check_guess(
    s_aug: &BTreeSet<(Player, Player)>,
    alpha_star_map: &[u32],
    champion: Option<Player>,
    log_n: u32,
) -> bool {
    if alpha_star_map.iter().any(|&a| a > log_n) {
        return false;
    }
    if let Some(b) = champion {
        if alpha_star_map[b] != log_n {
            return false;
        }
    }
    let mut child_heights: BTreeMap<Player, u64> = BTreeMap::new();
    for &(u, v) in s_aug {
        if alpha_star_map[u] <= alpha_star_map[v] {
            return false;
        }
        let seen = child_heights.entry(u).or_insert(0);
        let bit = 1u64 << alpha_star_map[v];
        if *seen & bit != 0 {
            return false;
        }
        *seen |= bit;
    }
    true
}

/// One full run of the greedy construction for a fixed guess.
///
/// Players are processed weakest first. For each height `j` below the
/// player's estimate, an existing child of guessed size `2^j` is kept;
/// otherwise the weaker parentless roots of size at most `2^j` are packed
/// into one and attached. A final pack assembles the remaining roots into
/// the spanning arborescence. Any shortfall rejects the guess, as does the
/// closing verification.
pub fn run_fixing_pass(
    inst: &ValidatedInstance,
    s_aug: &BTreeSet<(Player, Player)>,
    order: &StrengthOrder,
    g: &HeightGuess,
    alpha_star_map: &[u32],
) -> Option<RootedForest> {
    let n = inst.n();
    let t = inst.tournament();
    if alpha_star_map.iter().any(|&a| a > inst.log_n()) {
        return None;
    }
    let mut q = RootedForest::new(n);
    for &(u, v) in s_aug {
        q.add_arc(u, v).ok()?;
    }
    let mut beta = beta_all(&q, g);
    let players = order.players_strongest_first();
    for i in (0..n).rev() {
        let v = players[i];
        for j in 0..alpha_star_map[v] {
            let target = 1u64 << j;
            if q.children(v).iter().any(|&y| beta[y] == target) {
                continue;
            }
            let p_set: Vec<Player> = players[i + 1..]
                .iter()
                .copied()
                .filter(|&w| q.parent(w).is_none() && beta[w] <= target)
                .collect();
            if p_set.iter().map(|&w| beta[w]).sum::<u64>() < target {
                return None;
            }
            let (packed, _) = pack_core(&mut q, &mut beta, g, p_set, j, order).ok()?;
            let delta = beta[packed];
            q.add_arc(v, packed).ok()?;
            // the new subtree grows every ancestor's guessed size up to the
            // first fixed-height vertex, whose pinned value masks it
            let mut cur = v;
            loop {
                if g.is_fixed(cur) {
                    break;
                }
                beta[cur] += delta;
                match q.parent(cur) {
                    Some(p) => cur = p,
                    None => break,
                }
            }
        }
    }
    let p_star: Vec<Player> = q.roots().collect();
    if p_star.iter().map(|&w| beta[w]).sum::<u64>() < n as u64 {
        return None;
    }
    let (root, _) = pack_core(&mut q, &mut beta, g, p_star, inst.log_n(), order).ok()?;

    // Verify-and-reject net: a pass that "succeeded" on a bad guess must not
    // leak a wrong answer.
    if q.roots().count() != 1 || q.parent(root).is_some() {
        return None;
    }
    if !is_binomial_arborescence(&q, root) {
        return None;
    }
    if !s_aug.iter().all(|&(u, v)| q.contains_arc(u, v)) {
        return None;
    }
    if !q.arcs().all(|(u, v)| t.beats(u, v)) {
        return None;
    }
    Some(q)
}

/// Which set of players gets guessed heights.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GuessDomain {
    /// All endpoints of feedback arcs, with parent guessing.
    FeedbackVertices,
    /// Only heads of feedback arcs, no parent guessing.
    LoseF,
}

/// Solves the instance in time `n^O(k)`: enumerates parents and heights of
/// all feedback vertices and runs one fixing pass per consistent guess.
pub fn solve_xp(inst: &ValidatedInstance) -> Result<Option<Seeding>, FixerError> {
    solve_xp_with(inst, &FixerLimits::default())
}

pub fn solve_xp_with(
    inst: &ValidatedInstance,
    limits: &FixerLimits,
) -> Result<Option<Seeding>, FixerError> {
    pipeline(inst, GuessDomain::FeedbackVertices, limits, false)
}

/// FPT variant for instances where every upset loser also loses a demand
/// match: parent guessing disappears and only heads of feedback arcs keep
/// guessed heights.
pub fn solve_fpt(inst: &ValidatedInstance) -> Result<Option<Seeding>, FixerError> {
    solve_fpt_with(inst, &FixerLimits::default())
}

pub fn solve_fpt_with(
    inst: &ValidatedInstance,
    limits: &FixerLimits,
) -> Result<Option<Seeding>, FixerError> {
    pipeline(inst, GuessDomain::LoseF, limits, false)
}

/// Rounds-aware solve: the round of a match equals the height of its loser,
/// so every round-constrained demand pins its loser's height. Pins extend
/// the fixed part of the height function; only unpinned feedback vertices
/// are still guessed. Contradictory pins surface as [`FixerError::RoundConflict`].
pub fn solve_with_rounds(inst: &ValidatedInstance) -> Result<Option<Seeding>, FixerError> {
    solve_with_rounds_with(inst, &FixerLimits::default())
}

pub fn solve_with_rounds_with(
    inst: &ValidatedInstance,
    limits: &FixerLimits,
) -> Result<Option<Seeding>, FixerError> {
    pipeline(inst, GuessDomain::FeedbackVertices, limits, true)
}

fn pipeline(
    inst: &ValidatedInstance,
    domain: GuessDomain,
    limits: &FixerLimits,
    surface_round_conflicts: bool,
) -> Result<Option<Seeding>, FixerError> {
    let n = inst.n();
    if n > limits.max_n {
        return Err(FixerError::LimitExceeded {
            n,
            k: 0,
            max_n: limits.max_n,
            max_k: limits.max_k,
        });
    }
    if inst.trivially_no() {
        return Ok(None);
    }
    let log_n = inst.log_n();
    let dm = inst.demand_maps().expect("non-trivial instance has maps");
    let fs = minimum_fas(inst.tournament());
    if fs.k() > limits.max_k {
        return Err(FixerError::LimitExceeded {
            n,
            k: fs.k(),
            max_n: limits.max_n,
            max_k: limits.max_k,
        });
    }
    let order = fs.order().clone();

    // height pins from round constraints (loser height = round)
    let pins: BTreeMap<Player, u32> = inst.rounds().iter().map(|(&(_, v), &r)| (v, r)).collect();
    if let Some(v) = pin_conflict(inst, dm, &pins) {
        return if surface_round_conflicts {
            Err(FixerError::RoundConflict(v))
        } else {
            Ok(None)
        };
    }

    let gdomain: Vec<Player> = match domain {
        GuessDomain::FeedbackVertices => fs.feedback_vertices().into_iter().collect(),
        GuessDomain::LoseF => {
            let lose_s = dm.lose_set();
            if let Some(&v) = fs.lose_f().iter().find(|v| !lose_s.contains(v)) {
                return Err(FixerError::PropertyOneViolated(v));
            }
            fs.lose_f().into_iter().collect()
        }
    };
    let enumerate_parents = domain == GuessDomain::FeedbackVertices;

    for pg in parent_guesses(inst, dm, &gdomain, enumerate_parents) {
        let mut s_aug: BTreeSet<(Player, Player)> = inst.demands().clone();
        for (&v, &pv) in &pg.assignments {
            if let Some(u) = pv {
                if dm.parent(v).is_none() {
                    s_aug.insert((u, v));
                }
            }
        }
        let Some(dm_aug) = DemandMaps::new(n, s_aug.iter().copied()) else {
            continue;
        };
        let champion = pg.champion();
        for g_vec in height_guesses(&gdomain, log_n, &pins, champion) {
            let mut beta_g = HeightGuess::new();
            for (&v, &h) in gdomain.iter().zip(g_vec.iter()) {
                beta_g.insert(v, h);
            }
            let mut fixed = beta_g.clone();
            for (&v, &r) in &pins {
                fixed.insert(v, r);
            }
            let star = alpha_star(&dm_aug, &fixed, &order);
            if !sanity_check_guess(&s_aug, &star, champion, log_n) {
                continue;
            }
            let Some(sba) = run_fixing_pass(inst, &s_aug, &order, &beta_g, &star) else {
                continue;
            };
            let Ok(seeding) = sba_to_seeding(&sba) else {
                continue;
            };
            match check_solution(inst, &seeding) {
                Ok(report) if report.ok => return Ok(Some(seeding)),
                _ => continue,
            }
        }
    }
    Ok(None)
}

/// Pre-search detection of contradictory round pins.
fn pin_conflict(
    inst: &ValidatedInstance,
    dm: &DemandMaps,
    pins: &BTreeMap<Player, u32>,
) -> Option<Player> {
    for (&(u, v), &rv) in inst.rounds() {
        // the winner must still be alive: its own exit round must be later
        if let Some(&ru) = pins.get(&u) {
            if ru <= rv {
                return Some(u);
            }
        }
        // two pinned children of one winner cannot share a round
        for &w in dm.children(u) {
            if w != v && pins.get(&w) == Some(&rv) {
                return Some(u);
            }
        }
    }
    None
}

/// Lazy cartesian enumeration of parent guesses, lexicographic by feedback
/// vertex id then candidate parent id, with the no-parent option last and
/// allowed for at most one vertex.
fn parent_guesses(
    inst: &ValidatedInstance,
    dm: &DemandMaps,
    gdomain: &[Player],
    enumerate: bool,
) -> impl Iterator<Item = ParentGuess> {
    let mut choices: Vec<(Player, Vec<Option<Player>>)> = Vec::new();
    if enumerate {
        for &v in gdomain {
            let opts = match dm.parent(v) {
                // an existing demand parent is the only consistent guess
                Some(u) => vec![Some(u)],
                None => {
                    let mut opts: Vec<Option<Player>> =
                        inst.tournament().in_neighbors(v).map(Some).collect();
                    opts.push(None);
                    opts
                }
            };
            choices.push((v, opts));
        }
    }
    Cartesian::new(choices)
}

struct Cartesian {
    choices: Vec<(Player, Vec<Option<Player>>)>,
    idx: Vec<usize>,
    done: bool,
}

impl Cartesian {
    fn new(choices: Vec<(Player, Vec<Option<Player>>)>) -> Self {
        let done = choices.iter().any(|(_, c)| c.is_empty());
        let idx = vec![0; choices.len()];
        Cartesian { choices, idx, done }
    }

    fn advance(&mut self) -> bool {
        for i in (0..self.idx.len()).rev() {
            self.idx[i] += 1;
            if self.idx[i] < self.choices[i].1.len() {
                return true;
            }
            self.idx[i] = 0;
        }
        false
    }
}

impl Iterator for Cartesian {
    type Item = ParentGuess;

    fn next(&mut self) -> Option<ParentGuess> {
        loop {
            if self.done {
                return None;
            }
            let bots = self
                .idx
                .iter()
                .enumerate()
                .filter(|&(i, &c)| self.choices[i].1[c].is_none())
                .count();
            let item = (bots <= 1).then(|| ParentGuess {
                assignments: self
                    .choices
                    .iter()
                    .zip(self.idx.iter())
                    .map(|((v, opts), &c)| (*v, opts[c]))
                    .collect(),
            });
            if !self.advance() {
                self.done = true;
            }
            if let Some(item) = item {
                return Some(item);
            }
        }
    }
}

/// Lazy lexicographic enumeration of height vectors over the guess domain.
/// Round-pinned vertices and a guessed champion contribute a single forced
/// value.
fn height_guesses(
    gdomain: &[Player],
    log_n: u32,
    pins: &BTreeMap<Player, u32>,
    champion: Option<Player>,
) -> impl Iterator<Item = Vec<u32>> {
    let lists: Vec<Vec<u32>> = gdomain
        .iter()
        .map(|&v| {
            if let Some(&r) = pins.get(&v) {
                vec![r]
            } else if champion == Some(v) {
                vec![log_n]
            } else {
                (0..=log_n).collect()
            }
        })
        .collect();
    HeightOdometer {
        lists,
        idx: vec![0; gdomain.len()],
        started: false,
        done: false,
    }
}

struct HeightOdometer {
    lists: Vec<Vec<u32>>,
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

impl Iterator for HeightOdometer {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        if self.started {
            let mut carried = false;
            for i in (0..self.idx.len()).rev() {
                self.idx[i] += 1;
                if self.idx[i] < self.lists[i].len() {
                    carried = true;
                    break;
                }
                self.idx[i] = 0;
            }
            if !carried {
                self.done = true;
                return None;
            }
        }
        self.started = true;
        Some(
            self.lists
                .iter()
                .zip(self.idx.iter())
                .map(|(l, &i)| l[i])
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{dp_solve, oracle_solve};
    use crate::model::{validate_instance, DemandInstance, TournamentDigraph};

    fn validated(t: TournamentDigraph, demands: &[(Player, Player)]) -> ValidatedInstance {
        validate_instance(DemandInstance::new(t).with_demands(demands.iter().copied())).unwrap()
    }

    #[test]
    fn pack_returns_existing_root_unchanged() {
        // one root of size 4 = 2^2
        let f = RootedForest::from_arcs(4, [(0, 1), (0, 2), (1, 3)]).unwrap();
        let order = StrengthOrder::new(vec![0, 1, 2, 3]);
        let out = pack(&f, &BTreeSet::from([0]), 2, &HeightGuess::new(), &order).unwrap();
        assert_eq!(out.root, 0);
        assert!(out.joins.is_empty());
        assert_eq!(out.forest, f);
    }

    #[test]
    fn pack_joins_singletons_deterministically() {
        let f = RootedForest::new(4);
        let order = StrengthOrder::new(vec![0, 1, 2, 3]);
        let out = pack(
            &f,
            &BTreeSet::from([0, 1, 2, 3]),
            2,
            &HeightGuess::new(),
            &order,
        )
        .unwrap();
        assert_eq!(out.root, 0);
        assert_eq!(out.joins, vec![(0, 1), (2, 3), (0, 2)]);
    }

    #[test]
    fn pack_rejects_shortfall() {
        let f = RootedForest::new(4);
        let order = StrengthOrder::new(vec![0, 1, 2, 3]);
        let err = pack(&f, &BTreeSet::from([0, 1, 2]), 2, &HeightGuess::new(), &order);
        assert!(matches!(err, Err(PackError::PreconditionViolated(_))));
    }

    #[test]
    fn sanity_rejects_inverted_and_colliding_heights() {
        // (0,1) with alpha*(0) == alpha*(1)
        let s: BTreeSet<(Player, Player)> = BTreeSet::from([(0, 1)]);
        assert!(!sanity_check_guess(&s, &[1, 1], None, 2));
        assert!(sanity_check_guess(&s, &[1, 0], None, 2));
        // champion must sit at log n
        assert!(!sanity_check_guess(&s, &[1, 0], Some(0), 2));
        // estimates above log n are unrealizable
        assert!(!sanity_check_guess(&s, &[3, 0], None, 2));
        // two children of 0 at the same height
        let s: BTreeSet<(Player, Player)> = BTreeSet::from([(0, 1), (0, 2)]);
        assert!(!sanity_check_guess(&s, &[1, 0, 0], None, 2));
    }

    #[test]
    fn pass_succeeds_on_worked_example() {
        let vi = validated(TournamentDigraph::new_acyclic(4), &[(0, 1), (0, 2), (1, 3)]);
        let order = StrengthOrder::new(vec![0, 1, 2, 3]);
        let dm = vi.demand_maps().unwrap();
        let g = HeightGuess::new();
        let star = alpha_star(dm, &g, &order);
        assert_eq!(star, vec![2, 1, 0, 0]);
        let sba = run_fixing_pass(&vi, vi.demands(), &order, &g, &star).unwrap();
        let arcs: BTreeSet<_> = sba.arcs().collect();
        assert_eq!(arcs, BTreeSet::from([(0, 1), (0, 2), (1, 3)]));
    }

    #[test]
    fn pass_rejects_overcommitted_guess() {
        // pin a leaf demand loser too high: nothing weaker can fill the gap
        let vi = validated(TournamentDigraph::new_acyclic(4), &[(0, 3)]);
        let order = StrengthOrder::new(vec![0, 1, 2, 3]);
        let mut g = HeightGuess::new();
        g.insert(3, 1);
        let dm = vi.demand_maps().unwrap();
        let star = alpha_star(dm, &g, &order);
        assert_eq!(run_fixing_pass(&vi, vi.demands(), &order, &g, &star), None);
    }

    #[test]
    fn xp_matches_dp_on_acyclic_examples() {
        for demands in [
            &[(0, 1), (0, 2), (1, 3)][..],
            &[(0, 1), (1, 2), (2, 3)][..],
            &[(1, 2)][..],
            &[][..],
        ] {
            let vi = validated(TournamentDigraph::new_acyclic(4), demands);
            let dp = dp_solve(&vi).unwrap();
            let xp = solve_xp(&vi).unwrap();
            assert_eq!(dp.is_some(), xp.is_some(), "demands {demands:?}");
            if let Some(s) = xp {
                assert!(check_solution(&vi, &s).unwrap().ok);
            }
        }
    }

    #[test]
    fn xp_handles_upset_demand() {
        let mut t = TournamentDigraph::new_acyclic(4);
        t.reverse_arc(0, 3);
        let vi = validated(t, &[(3, 0)]);
        let xp = solve_xp(&vi).unwrap().expect("seed 3 vs 0 in round 0");
        assert!(check_solution(&vi, &xp).unwrap().ok);
        let oracle = oracle_solve(&vi).unwrap();
        assert!(oracle.is_some());
    }

    #[test]
    fn xp_trivial_no_short_circuits() {
        let vi = validated(TournamentDigraph::new_acyclic(4), &[(0, 3), (1, 3)]);
        assert_eq!(solve_xp(&vi).unwrap(), None);
    }

    #[test]
    fn fpt_agrees_with_xp_when_upsets_are_demanded() {
        let mut t = TournamentDigraph::new_acyclic(4);
        t.reverse_arc(0, 3);
        let vi = validated(t, &[(3, 0)]);
        let fpt = solve_fpt(&vi).unwrap();
        let xp = solve_xp(&vi).unwrap();
        assert_eq!(fpt.is_some(), xp.is_some());
    }

    #[test]
    fn fpt_requires_property_one() {
        let mut t = TournamentDigraph::new_acyclic(4);
        t.reverse_arc(0, 3);
        let vi = validated(t, &[]);
        assert_eq!(solve_fpt(&vi), Err(FixerError::PropertyOneViolated(0)));
    }

    #[test]
    fn fpt_on_acyclic_behaves_like_xp() {
        let vi = validated(TournamentDigraph::new_acyclic(4), &[(0, 1), (0, 2), (1, 3)]);
        assert_eq!(
            solve_fpt(&vi).unwrap().is_some(),
            solve_xp(&vi).unwrap().is_some()
        );
    }

    #[test]
    fn rounds_pin_heights() {
        let t = TournamentDigraph::new_acyclic(4);
        let mut inst = DemandInstance::new(t).with_demands([(1, 2)]);
        inst.rounds.insert((1, 2), 0);
        let vi = validate_instance(inst).unwrap();
        let s = solve_with_rounds(&vi).unwrap().expect("pair 1,2 in round 0");
        let report = check_solution(&vi, &s).unwrap();
        assert!(report.ok);

        let t = TournamentDigraph::new_acyclic(4);
        let mut inst = DemandInstance::new(t).with_demands([(1, 2)]);
        inst.rounds.insert((1, 2), 1);
        let vi = validate_instance(inst).unwrap();
        let got = solve_with_rounds(&vi).unwrap();
        let oracle = oracle_solve(&vi).unwrap();
        assert_eq!(got.is_some(), oracle.is_some());
        if let Some(s) = got {
            assert!(check_solution(&vi, &s).unwrap().ok);
        }
    }

    #[test]
    fn rounds_conflicts_surface_before_search() {
        // (0,1) in round 0 and (0,2) in round 0: 0 plays once per round
        let t = TournamentDigraph::new_acyclic(4);
        let mut inst = DemandInstance::new(t).with_demands([(0, 1), (0, 2)]);
        inst.rounds.insert((0, 1), 0);
        inst.rounds.insert((0, 2), 0);
        let vi = validate_instance(inst).unwrap();
        assert_eq!(solve_with_rounds(&vi), Err(FixerError::RoundConflict(0)));
        // the plain solver treats the same contradiction as a no
        assert_eq!(solve_xp(&vi).unwrap(), None);
    }

    #[test]
    fn limits_are_enforced() {
        let vi = validated(TournamentDigraph::new_acyclic(128), &[]);
        assert!(matches!(
            solve_xp(&vi),
            Err(FixerError::LimitExceeded { n: 128, .. })
        ));
    }
}
