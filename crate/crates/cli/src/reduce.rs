//! Embedding a tournament-fixing instance into a demand instance.
//!
//! The target must win the whole bracket. A dummy acyclic tournament of the
//! same size is attached whose source `d1` beats exactly the target among
//! the originals and loses to everyone else, while all other dummies lose to
//! all originals. Demanding the final `(d1, target)` plus `d1`'s matches
//! inside a fixed dummy bracket forces one half of the seeding to be the
//! dummy side, so the target must win the original half.

use demand_tf::model::{simulate, DemandInstance, Seeding, TournamentDigraph};

use crate::format::TfInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("player count {0} is not a power of two")]
    NotPowerOfTwo(usize),
}

/// Produces the 2n-player demand instance that is a yes-instance exactly
/// when `target` can win the original n-player instance. Dummies take ids
/// `n..2n` with `d1 = n`; the demand set has `log n + 1` arcs.
pub fn reduce_tf(tf: &TfInstance) -> Result<DemandInstance, ReduceError> {
    let n = tf.tournament.n();
    if !n.is_power_of_two() {
        return Err(ReduceError::NotPowerOfTwo(n));
    }
    let target = tf.target;
    let d1 = n;
    let t2 = TournamentDigraph::from_winner_fn(2 * n, |u, v| {
        // u < v
        match (u < n, v < n) {
            (true, true) => tf.tournament.beats(u, v),
            (false, false) => true, // dummies are acyclic with source d1
            (true, false) => {
                if v == d1 {
                    u != target // d1 beats only the target among originals
                } else {
                    true // originals beat every other dummy
                }
            }
            (false, true) => unreachable!("u < v and u is a dummy"),
        }
    });

    // d1's matches in the canonical dummy bracket: identity seeding of the
    // acyclic dummy tournament, strongest-available pairing throughout.
    let dummy = TournamentDigraph::new_acyclic(n);
    let identity = Seeding::new((0..n).collect()).expect("identity permutation");
    let sim = simulate(&dummy, &identity).expect("power-of-two bracket");
    let mut demands = vec![(d1, target)];
    for (u, v) in sim.sba.arcs() {
        if u == 0 {
            demands.push((d1, v + n));
        }
    }
    demands.sort_unstable();
    Ok(DemandInstance::new(t2).with_demands(demands))
}

#[cfg(test)]
mod tests {
    use super::*;
    use demand_tf::exact::{dp_solve, oracle_solve};
    use demand_tf::model::validate_instance;

    #[test]
    fn two_player_reduction_has_two_demands() {
        let tf = TfInstance { tournament: TournamentDigraph::new_acyclic(2), target: 0 };
        let inst = reduce_tf(&tf).unwrap();
        assert_eq!(inst.tournament.n(), 4);
        assert_eq!(inst.demands.len(), 2); // log 2 + 1
    }

    #[test]
    fn strongest_target_reduces_to_yes() {
        let tf = TfInstance { tournament: TournamentDigraph::new_acyclic(4), target: 0 };
        let vi = validate_instance(reduce_tf(&tf).unwrap()).unwrap();
        assert_eq!(vi.demands().len(), 3); // log 4 + 1
        let s = dp_solve(&vi).unwrap().expect("strongest player wins any bracket");
        assert!(demand_tf::model::check_solution(&vi, &s).unwrap().ok);
    }

    #[test]
    fn weakest_target_of_acyclic_reduces_to_no() {
        let tf = TfInstance { tournament: TournamentDigraph::new_acyclic(4), target: 3 };
        let vi = validate_instance(reduce_tf(&tf).unwrap()).unwrap();
        assert_eq!(oracle_solve(&vi).unwrap(), None);
        assert_eq!(dp_solve(&vi).unwrap(), None);
    }
}
