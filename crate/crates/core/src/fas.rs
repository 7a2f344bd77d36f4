//! Minimum feedback arc set of a tournament and the induced strength order.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::arborescence::StrengthOrder;
use crate::model::{Player, TournamentDigraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FasError {
    #[error("removing the given arcs leaves a directed cycle")]
    NotAFeedbackArcSet,
}

/// A minimum feedback arc set `F`, the strength order `sigma` under which the
/// backward arcs are exactly `F`, and derived vertex sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeedbackStructure {
    arcs: BTreeSet<(Player, Player)>,
    order: StrengthOrder,
}

impl FeedbackStructure {
    pub fn k(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &BTreeSet<(Player, Player)> {
        &self.arcs
    }

    pub fn order(&self) -> &StrengthOrder {
        &self.order
    }

    /// Endpoints of the feedback arcs.
    pub fn feedback_vertices(&self) -> BTreeSet<Player> {
        self.arcs.iter().flat_map(|&(u, v)| [u, v]).collect()
    }

    /// Heads of the feedback arcs: players losing some upset match.
    pub fn lose_f(&self) -> BTreeSet<Player> {
        self.arcs.iter().map(|&(_, v)| v).collect()
    }
}

/// Topologically sorts `T - F`, breaking ties by smallest player id. All
/// surviving arcs run from earlier to later positions.
pub fn strength_order(
    t: &TournamentDigraph,
    f: &BTreeSet<(Player, Player)>,
) -> Result<StrengthOrder, FasError> {
    let n = t.n();
    let mut indeg = vec![0usize; n];
    for (u, v) in t.arcs() {
        if !f.contains(&(u, v)) {
            indeg[v] += 1;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut done = vec![false; n];
    for _ in 0..n {
        let next = (0..n).find(|&v| !done[v] && indeg[v] == 0).ok_or(FasError::NotAFeedbackArcSet)?;
        done[next] = true;
        order.push(next);
        for v in 0..n {
            if !done[v] && t.beats(next, v) && !f.contains(&(next, v)) {
                indeg[v] -= 1;
            }
        }
    }
    Ok(StrengthOrder::new(order))
}

/// Computes a minimum feedback arc set by iterative deepening on the budget:
/// every feedback arc set must hit each directed triangle, so branch three
/// ways on the lowest-indexed triangle, reversing the chosen arc. A
/// tournament without a directed triangle is acyclic.
pub fn minimum_fas(t: &TournamentDigraph) -> FeedbackStructure {
    let mut work = t.clone();
    let mut reversed = Vec::new();
    for budget in 0..=(t.n() * t.n()) {
        if search(&mut work, budget, &mut reversed) {
            let arcs: BTreeSet<(Player, Player)> = reversed.iter().copied().collect();
            let order = strength_order(t, &arcs).expect("reversal set is a feedback arc set");
            debug_assert!(backward_arcs_match(t, &arcs, &order));
            return FeedbackStructure { arcs, order };
        }
        debug_assert!(reversed.is_empty());
    }
    unreachable!("every tournament has a feedback arc set of size at most n^2")
}

fn search(t: &mut TournamentDigraph, budget: usize, reversed: &mut Vec<(Player, Player)>) -> bool {
    let Some(tri) = first_triangle(t) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for (u, v) in tri {
        t.reverse_arc(u, v);
        reversed.push((u, v));
        if search(t, budget - 1, reversed) {
            return true;
        }
        reversed.pop();
        t.reverse_arc(u, v);
    }
    false
}

/// Lowest-indexed directed triangle in a fixed scan over triples `a < b < c`,
/// returned as its three arcs in cycle order.
fn first_triangle(t: &TournamentDigraph) -> Option<[(Player, Player); 3]> {
    let n = t.n();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let ab = t.beats(a, b);
                let bc = t.beats(b, c);
                let ca = t.beats(c, a);
                if ab && bc && ca {
                    return Some([(a, b), (b, c), (c, a)]);
                }
                if !ab && !bc && !ca {
                    return Some([(a, c), (c, b), (b, a)]);
                }
            }
        }
    }
    None
}

fn backward_arcs_match(
    t: &TournamentDigraph,
    f: &BTreeSet<(Player, Player)>,
    order: &StrengthOrder,
) -> bool {
    t.arcs().all(|(u, v)| f.contains(&(u, v)) == order.weaker(u, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acyclic_tournament_has_empty_fas() {
        let t = TournamentDigraph::new_acyclic(5);
        let fs = minimum_fas(&t);
        assert_eq!(fs.k(), 0);
        assert_eq!(fs.order().players_strongest_first(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn single_upset_is_the_unique_minimum() {
        let mut t = TournamentDigraph::new_acyclic(4);
        t.reverse_arc(0, 3);
        let fs = minimum_fas(&t);
        assert_eq!(fs.arcs(), &BTreeSet::from([(3, 0)]));
        assert_eq!(fs.order().players_strongest_first(), &[0, 1, 2, 3]);
        assert_eq!(fs.feedback_vertices(), BTreeSet::from([0, 3]));
        assert_eq!(fs.lose_f(), BTreeSet::from([0]));
    }

    #[test]
    fn disjoint_triangles_need_two_arcs() {
        // 0,1,2 and 3,4,5 both oriented cyclically
        let mut t = TournamentDigraph::new_acyclic(6);
        t.reverse_arc(0, 2);
        t.reverse_arc(3, 5);
        let fs = minimum_fas(&t);
        assert_eq!(fs.k(), 2);
    }

    #[test]
    fn strength_order_with_all_arcs_removed_is_identity() {
        let t = TournamentDigraph::new_acyclic(4);
        let all: BTreeSet<_> = t.arcs().collect();
        let order = strength_order(&t, &all).unwrap();
        assert_eq!(order.players_strongest_first(), &[0, 1, 2, 3]);
    }

    #[test]
    fn strength_order_rejects_non_fas() {
        let mut t = TournamentDigraph::new_acyclic(3);
        t.reverse_arc(0, 2);
        assert_eq!(strength_order(&t, &BTreeSet::new()), Err(FasError::NotAFeedbackArcSet));
    }

    /// Exhaustive minimality oracle: the minimum number of backward arcs over
    /// all orderings.
    fn brute_force_k(t: &TournamentDigraph) -> usize {
        let n = t.n();
        let mut perm: Vec<Player> = (0..n).collect();
        let mut best = usize::MAX;
        loop {
            let mut pos = vec![0; n];
            for (i, &v) in perm.iter().enumerate() {
                pos[v] = i;
            }
            let backward = t.arcs().filter(|&(u, v)| pos[u] > pos[v]).count();
            best = best.min(backward);
            if !crate::next_permutation(&mut perm) {
                break;
            }
        }
        best
    }

    #[test]
    fn minimum_against_exhaustive_orderings() {
        // all tournaments on 5 vertices over a deterministic sweep of arc
        // patterns, plus every tournament on 4
        for bits in 0..(1u32 << 6) {
            let t = TournamentDigraph::from_winner_fn(4, |u, v| {
                let idx = match (u, v) {
                    (0, 1) => 0,
                    (0, 2) => 1,
                    (0, 3) => 2,
                    (1, 2) => 3,
                    (1, 3) => 4,
                    (2, 3) => 5,
                    _ => unreachable!(),
                };
                bits & (1 << idx) != 0
            });
            let fs = minimum_fas(&t);
            assert_eq!(fs.k(), brute_force_k(&t), "bits={bits:#b}");
            assert!(backward_arcs_match(&t, fs.arcs(), fs.order()));
        }
        for n in [5usize, 6] {
            for seed in 0..40u64 {
                let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(n as u64);
                let mut next = || {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    state
                };
                let t = TournamentDigraph::from_winner_fn(n, |_, _| next() % 2 == 0);
                let fs = minimum_fas(&t);
                assert_eq!(fs.k(), brute_force_k(&t), "n={n} seed={seed}");
                assert!(backward_arcs_match(&t, fs.arcs(), fs.order()));
            }
        }
    }
}
