//! Ground-truth solvers: the permutation oracle and the subset dynamic
//! program over equi-partitions, plus the weighted maximization variant.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::{check_solution, sba_to_seeding, Player, Seeding, ValidatedInstance};
use crate::arborescence::RootedForest;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("instance has {n} players, solver guard allows at most {max}")]
    TooLarge { n: usize, max: usize },
    #[error("weight {got} for demand ({u},{v}) exceeds the cap {cap}")]
    WeightCapExceeded { u: Player, v: Player, got: u64, cap: u64 },
    #[error("no weight given for demand ({u},{v})")]
    WeightsNotTotal { u: Player, v: Player },
}

/// Size guards for the exact solvers. The oracle enumerates all `n!`
/// seedings; the dynamic program fills a `2^n * n` table.
#[derive(Debug, Clone, Copy)]
pub struct ExactLimits {
    pub oracle_max_n: usize,
    pub dp_max_n: usize,
    pub weight_cap: u64,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits {
            oracle_max_n: 8,
            dp_max_n: 24,
            weight_cap: 1 << 20,
        }
    }
}

/// Lexicographic successor, in place. Returns false after the last
/// permutation.
pub fn next_permutation(perm: &mut [Player]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Exhaustive ground truth: tries every seeding in lexicographic order and
/// returns the first one realizing all demands (and round constraints).
pub fn oracle_solve(inst: &ValidatedInstance) -> Result<Option<Seeding>, ExactError> {
    oracle_solve_with(inst, &ExactLimits::default())
}

pub fn oracle_solve_with(
    inst: &ValidatedInstance,
    limits: &ExactLimits,
) -> Result<Option<Seeding>, ExactError> {
    let n = inst.n();
    if n > limits.oracle_max_n {
        return Err(ExactError::TooLarge { n, max: limits.oracle_max_n });
    }
    if inst.trivially_no() {
        return Ok(None);
    }
    let mut perm: Vec<Player> = (0..n).collect();
    loop {
        let s = Seeding::new(perm.clone()).expect("permutation by construction");
        if check_solution(inst, &s).expect("validated instance simulates").ok {
            return Ok(Some(s));
        }
        if !next_permutation(&mut perm) {
            return Ok(None);
        }
    }
}

/// The subset table: for every power-of-two subset `S` and `x` in `S`,
/// whether some seeding of `S` lets `x` win while playing every demand inside
/// `S`, with a witnessing equi-partition per true entry.
pub struct SubsetTable {
    n: usize,
    delta: Vec<u64>,
    witness: BTreeMap<(u32, Player), (u32, Player)>,
}

impl SubsetTable {
    fn new(n: usize) -> Self {
        let bits = (1usize << n) * n;
        SubsetTable {
            n,
            delta: vec![0u64; bits.div_ceil(64)],
            witness: BTreeMap::new(),
        }
    }

    pub fn holds(&self, subset: u32, x: Player) -> bool {
        let idx = (subset as usize) * self.n + x;
        self.delta[idx / 64] & (1 << (idx % 64)) != 0
    }

    fn set(&mut self, subset: u32, x: Player) {
        let idx = (subset as usize) * self.n + x;
        self.delta[idx / 64] |= 1 << (idx % 64);
    }

    /// The recorded split for a true entry: the winner-side half and the
    /// finalist from the other half.
    pub fn witness(&self, subset: u32, x: Player) -> Option<(u32, Player)> {
        self.witness.get(&(subset, x)).copied()
    }
}

/// Fills the subset table bottom-up over subset sizes 1, 2, 4, ...
///
/// A subset `S` of size `2^i` with winner `x` holds iff some equi-partition
/// `S1 (with x), S2` and finalist `y` in `S2` satisfy both halves, `x` beats
/// `y`, and no demand crosses the halves except possibly `(x, y)`, which must
/// then match its round constraint `i - 1` when one is given.
pub fn dp_table(inst: &ValidatedInstance, limits: &ExactLimits) -> Result<SubsetTable, ExactError> {
    let n = inst.n();
    // subsets are 32-bit masks
    let max = limits.dp_max_n.min(30);
    if n > max {
        return Err(ExactError::TooLarge { n, max });
    }
    let t = inst.tournament();
    let demands: Vec<(Player, Player)> = inst.demands().iter().copied().collect();
    let mut table = SubsetTable::new(n);
    for x in 0..n {
        table.set(1 << x, x);
    }
    for i in 1..=inst.log_n() {
        let size = 1usize << i;
        let mut subset = (1u32 << size) - 1;
        loop {
            split_subset(inst, t, &demands, &mut table, subset, i);
            match next_same_popcount(subset, n) {
                Some(next) => subset = next,
                None => break,
            }
        }
    }
    Ok(table)
}

fn split_subset(
    inst: &ValidatedInstance,
    t: &crate::model::TournamentDigraph,
    demands: &[(Player, Player)],
    table: &mut SubsetTable,
    subset: u32,
    i: u32,
) {
    let half = 1u32 << (i - 1);
    let anchor = subset.trailing_zeros();
    let rest = subset & !(1 << anchor);
    // enumerate halves containing the anchor
    let mut sub = rest;
    loop {
        if sub.count_ones() == half - 1 {
            let s1 = sub | (1 << anchor);
            let s2 = subset & !s1;
            consider_split(inst, t, demands, table, subset, s1, s2, i);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & rest;
    }
}

#[allow(clippy::too_many_arguments)]
fn consider_split(
    inst: &ValidatedInstance,
    t: &crate::model::TournamentDigraph,
    demands: &[(Player, Player)],
    table: &mut SubsetTable,
    subset: u32,
    s1: u32,
    s2: u32,
    i: u32,
) {
    let mut crossing = None;
    let mut crossing_count = 0;
    for &(u, v) in demands {
        let (bu, bv) = (1u32 << u, 1u32 << v);
        if (s1 & bu != 0 && s2 & bv != 0) || (s2 & bu != 0 && s1 & bv != 0) {
            crossing = Some((u, v));
            crossing_count += 1;
            if crossing_count > 1 {
                return;
            }
        }
    }
    match crossing {
        None => {
            for (wside, lside) in [(s1, s2), (s2, s1)] {
                for x in bits(wside) {
                    if !table.holds(wside, x) || table.holds(subset, x) {
                        continue;
                    }
                    if let Some(y) = bits(lside).find(|&y| table.holds(lside, y) && t.beats(x, y)) {
                        table.set(subset, x);
                        table.witness.insert((subset, x), (wside, y));
                    }
                }
            }
        }
        Some((u, v)) => {
            // the crossing demand must be the final of this sub-bracket
            if let Some(&round) = inst.rounds().get(&(u, v)) {
                if round != i - 1 {
                    return;
                }
            }
            let (wside, lside) = if s1 & (1 << u) != 0 { (s1, s2) } else { (s2, s1) };
            if wside & (1 << u) != 0
                && lside & (1 << v) != 0
                && table.holds(wside, u)
                && table.holds(lside, v)
                && !table.holds(subset, u)
            {
                table.set(subset, u);
                table.witness.insert((subset, u), (wside, v));
            }
        }
    }
}

fn bits(mask: u32) -> impl Iterator<Item = Player> {
    core::iter::successors((mask != 0).then_some(mask), |&m| {
        let next = m & (m - 1);
        (next != 0).then_some(next)
    })
    .map(|m| m.trailing_zeros() as Player)
}

fn next_same_popcount(mask: u32, n: usize) -> Option<u32> {
    // Gosper's hack
    let c = mask & mask.wrapping_neg();
    let r = mask + c;
    if r >= 1 << n {
        return None;
    }
    Some((((r ^ mask) >> 2) / c) | r)
}

/// Rebuilds the winning arborescence from the recorded splits.
pub fn reconstruct_sba(table: &SubsetTable, subset: u32, x: Player) -> RootedForest {
    let mut forest = RootedForest::new(table.n);
    let mut stack = vec![(subset, x)];
    while let Some((s, w)) = stack.pop() {
        if s.count_ones() == 1 {
            continue;
        }
        let (wside, y) = table
            .witness(s, w)
            .expect("true table entries carry a witness");
        forest.add_arc(w, y).expect("splits are disjoint");
        stack.push((wside, w));
        stack.push((s & !wside, y));
    }
    forest
}

/// Decides the instance by the subset dynamic program and reconstructs a
/// seeding on yes.
pub fn dp_solve(inst: &ValidatedInstance) -> Result<Option<Seeding>, ExactError> {
    dp_solve_with(inst, &ExactLimits::default())
}

pub fn dp_solve_with(
    inst: &ValidatedInstance,
    limits: &ExactLimits,
) -> Result<Option<Seeding>, ExactError> {
    if inst.trivially_no() {
        return Ok(None);
    }
    let n = inst.n();
    if n == 1 {
        return Ok(Some(Seeding::new(vec![0]).unwrap()));
    }
    let table = dp_table(inst, limits)?;
    let full = ((1u64 << n) - 1) as u32;
    for x in 0..n {
        if table.holds(full, x) {
            let sba = reconstruct_sba(&table, full, x);
            let seeding = sba_to_seeding(&sba).expect("reconstruction yields an SBA");
            return Ok(Some(seeding));
        }
    }
    Ok(None)
}

/// Maximum achievable total weight of played demand matches over all
/// seedings, with a witnessing seeding.
///
/// `weights` must cover every demand. A demand with a round constraint only
/// scores when played in that round.
pub fn dp_max_weight(
    inst: &ValidatedInstance,
    weights: &BTreeMap<(Player, Player), u64>,
) -> Result<(u64, Seeding), ExactError> {
    dp_max_weight_with(inst, weights, &ExactLimits::default())
}

pub fn dp_max_weight_with(
    inst: &ValidatedInstance,
    weights: &BTreeMap<(Player, Player), u64>,
    limits: &ExactLimits,
) -> Result<(u64, Seeding), ExactError> {
    let n = inst.n();
    let max = limits.dp_max_n.min(30);
    if n > max {
        return Err(ExactError::TooLarge { n, max });
    }
    for &(u, v) in inst.demands() {
        match weights.get(&(u, v)) {
            None => return Err(ExactError::WeightsNotTotal { u, v }),
            Some(&w) if w > limits.weight_cap => {
                return Err(ExactError::WeightCapExceeded { u, v, got: w, cap: limits.weight_cap })
            }
            _ => {}
        }
    }
    if n == 1 {
        return Ok((0, Seeding::new(vec![0]).unwrap()));
    }
    let t = inst.tournament();
    let size = (1usize << n) * n;
    // best is meaningful only where reachable: x must be able to win the
    // sub-bracket at all.
    let mut best: Vec<u64> = vec![0; size];
    let mut reachable: Vec<bool> = vec![false; size];
    for x in 0..n {
        reachable[(1usize << x) * n + x] = true;
    }
    let mut witness: BTreeMap<(u32, Player), (u32, Player)> = BTreeMap::new();
    for i in 1..=inst.log_n() {
        let setsize = 1usize << i;
        let mut subset = (1u32 << setsize) - 1;
        loop {
            let anchor = subset.trailing_zeros();
            let rest = subset & !(1 << anchor);
            let mut sub = rest;
            loop {
                if sub.count_ones() == (setsize / 2 - 1) as u32 {
                    let s1 = sub | (1 << anchor);
                    let s2 = subset & !s1;
                    for (wside, lside) in [(s1, s2), (s2, s1)] {
                        for x in bits(wside) {
                            if !reachable[(wside as usize) * n + x] {
                                continue;
                            }
                            for y in bits(lside) {
                                if !t.beats(x, y) || !reachable[(lside as usize) * n + y] {
                                    continue;
                                }
                                let bonus = final_weight(inst, weights, x, y, i);
                                let cand = best[(wside as usize) * n + x]
                                    + best[(lside as usize) * n + y]
                                    + bonus;
                                let slot = (subset as usize) * n + x;
                                if !reachable[slot] || cand > best[slot] {
                                    reachable[slot] = true;
                                    best[slot] = cand;
                                    witness.insert((subset, x), (wside, y));
                                }
                            }
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            match next_same_popcount(subset, n) {
                Some(next) => subset = next,
                None => break,
            }
        }
    }
    let full = ((1u64 << n) - 1) as u32;
    let (winner, score) = (0..n)
        .filter(|&x| reachable[(full as usize) * n + x])
        .map(|x| (x, best[(full as usize) * n + x]))
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .expect("every tournament has a realizable champion");
    let mut forest = RootedForest::new(n);
    let mut stack = vec![(full, winner)];
    while let Some((s, w)) = stack.pop() {
        if s.count_ones() == 1 {
            continue;
        }
        let (wside, y) = witness[&(s, w)];
        forest.add_arc(w, y).expect("splits are disjoint");
        stack.push((wside, w));
        stack.push((s & !wside, y));
    }
    let seeding = sba_to_seeding(&forest).expect("reconstruction yields an SBA");
    Ok((score, seeding))
}

fn final_weight(
    inst: &ValidatedInstance,
    weights: &BTreeMap<(Player, Player), u64>,
    x: Player,
    y: Player,
    i: u32,
) -> u64 {
    if !inst.demands().contains(&(x, y)) {
        return 0;
    }
    if let Some(&round) = inst.rounds().get(&(x, y)) {
        if round != i - 1 {
            return 0;
        }
    }
    weights.get(&(x, y)).copied().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate_instance, DemandInstance, TournamentDigraph};

    fn validated(t: TournamentDigraph, demands: &[(Player, Player)]) -> ValidatedInstance {
        validate_instance(DemandInstance::new(t).with_demands(demands.iter().copied())).unwrap()
    }

    fn unit_weights(inst: &ValidatedInstance) -> BTreeMap<(Player, Player), u64> {
        inst.demands().iter().map(|&d| (d, 1)).collect()
    }

    #[test]
    fn next_permutation_is_lexicographic() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0],
            ]
        );
    }

    #[test]
    fn oracle_two_players() {
        let vi = validated(TournamentDigraph::new_acyclic(2), &[(0, 1)]);
        let s = oracle_solve(&vi).unwrap().unwrap();
        assert_eq!(s.players(), &[0, 1]);
    }

    #[test]
    fn oracle_pairs_demand_in_round_zero_or_final() {
        let vi = validated(TournamentDigraph::new_acyclic(4), &[(1, 2)]);
        let s = oracle_solve(&vi).unwrap().unwrap();
        assert!(check_solution(&vi, &s).unwrap().ok);
    }

    #[test]
    fn oracle_guard() {
        let vi = validated(TournamentDigraph::new_acyclic(16), &[]);
        assert!(matches!(
            oracle_solve(&vi),
            Err(ExactError::TooLarge { n: 16, max: 8 })
        ));
    }

    #[test]
    fn dp_empty_demands_is_yes() {
        for n in [1usize, 2, 4, 8] {
            let vi = validated(TournamentDigraph::new_acyclic(n), &[]);
            let s = dp_solve(&vi).unwrap().unwrap();
            assert!(check_solution(&vi, &s).unwrap().ok);
        }
    }

    #[test]
    fn dp_worked_example() {
        let vi = validated(TournamentDigraph::new_acyclic(4), &[(0, 1), (0, 2), (1, 3)]);
        let s = dp_solve(&vi).unwrap().unwrap();
        let sim = crate::model::simulate(vi.tournament(), &s).unwrap();
        let arcs: alloc::collections::BTreeSet<_> = sim.sba.arcs().collect();
        assert_eq!(arcs, alloc::collections::BTreeSet::from([(0, 1), (0, 2), (1, 3)]));
    }

    #[test]
    fn dp_matches_oracle_on_chain_demands() {
        let vi = validated(TournamentDigraph::new_acyclic(4), &[(0, 1), (1, 2), (2, 3)]);
        let dp = dp_solve(&vi).unwrap();
        let oracle = oracle_solve(&vi).unwrap();
        assert_eq!(dp.is_some(), oracle.is_some());
        if let Some(s) = dp {
            assert!(check_solution(&vi, &s).unwrap().ok);
        }
    }

    #[test]
    fn dp_trivial_no_short_circuits() {
        let vi = validated(TournamentDigraph::new_acyclic(4), &[(0, 3), (1, 3)]);
        assert_eq!(dp_solve(&vi).unwrap(), None);
    }

    #[test]
    fn dp_honors_rounds() {
        // (1,2) in round 0 is playable; in round 1 it is not, because 0 wins
        // whichever half contains it and reaches the final
        for (round, feasible) in [(0u32, true), (1u32, false)] {
            let t = TournamentDigraph::new_acyclic(4);
            let mut inst = DemandInstance::new(t).with_demands([(1, 2)]);
            inst.rounds.insert((1, 2), round);
            let vi = validate_instance(inst).unwrap();
            let dp = dp_solve(&vi).unwrap();
            let oracle = oracle_solve(&vi).unwrap();
            assert_eq!(dp.is_some(), feasible);
            assert_eq!(oracle.is_some(), feasible);
            if let Some(s) = dp {
                assert!(check_solution(&vi, &s).unwrap().ok);
            }
        }

        // (0,1) in the final and (0,2) in the final both demanded: impossible
        let t = TournamentDigraph::new_acyclic(4);
        let mut inst = DemandInstance::new(t).with_demands([(0, 1), (0, 2)]);
        inst.rounds.insert((0, 1), 1);
        inst.rounds.insert((0, 2), 1);
        let vi = validate_instance(inst).unwrap();
        assert_eq!(dp_solve(&vi).unwrap(), None);
    }

    #[test]
    fn weighted_fully_satisfiable_reaches_demand_count() {
        let vi = validated(TournamentDigraph::new_acyclic(4), &[(0, 1), (0, 2), (1, 3)]);
        let (best, s) = dp_max_weight(&vi, &unit_weights(&vi)).unwrap();
        assert_eq!(best, 3);
        assert!(check_solution(&vi, &s).unwrap().ok);
    }

    #[test]
    fn weighted_in_degree_two_caps_at_one() {
        // 3 loses at most one match
        let vi = validated(TournamentDigraph::new_acyclic(4), &[(0, 3), (1, 3)]);
        let (best, _) = dp_max_weight(&vi, &unit_weights(&vi)).unwrap();
        assert_eq!(best, 1);
    }

    #[test]
    fn weighted_requires_total_weights() {
        let vi = validated(TournamentDigraph::new_acyclic(4), &[(0, 1)]);
        assert!(matches!(
            dp_max_weight(&vi, &BTreeMap::new()),
            Err(ExactError::WeightsNotTotal { u: 0, v: 1 })
        ));
    }

    #[test]
    fn weighted_cap_enforced() {
        let vi = validated(TournamentDigraph::new_acyclic(4), &[(0, 1)]);
        let mut w = BTreeMap::new();
        w.insert((0usize, 1usize), u64::MAX / 2);
        assert!(matches!(
            dp_max_weight(&vi, &w),
            Err(ExactError::WeightCapExceeded { .. })
        ));
    }

    #[test]
    fn dp_reconstruction_splits_never_cross_demands() {
        let vi = validated(TournamentDigraph::new_acyclic(8), &[(0, 1), (2, 3), (0, 4)]);
        let table = dp_table(&vi, &ExactLimits::default()).unwrap();
        let full = 0xffu32;
        let x = (0..8).find(|&x| table.holds(full, x)).expect("yes instance");
        // walk the trace
        let mut stack = vec![(full, x)];
        while let Some((s, w)) = stack.pop() {
            if s.count_ones() == 1 {
                continue;
            }
            let (wside, y) = table.witness(s, w).unwrap();
            let lside = s & !wside;
            for &(u, v) in vi.demands() {
                let cross = (wside & (1 << u) != 0 && lside & (1 << v) != 0)
                    || (lside & (1 << u) != 0 && wside & (1 << v) != 0);
                assert!(!cross || (u == w && v == y), "split {s:#b} crossed by ({u},{v})");
            }
            stack.push((wside, w));
            stack.push((lside, y));
        }
    }
}
