//! Seeded instance generation for experiments and the test corpus.

use std::collections::BTreeSet;

use demand_tf::model::{simulate, DemandInstance, Player, Seeding, TournamentDigraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenMode {
    /// Demands sampled from the arcs of a realized bracket: always a
    /// yes-instance.
    Yes,
    /// Demands sampled uniformly among arcs, demand in-degrees kept at most
    /// one by rejection: answer unknown.
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("player count {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("cannot place {d} demands with distinct losers among {max} candidates")]
    InfeasibleDemandCount { d: usize, max: usize },
    #[error("cannot reverse {k} arcs, the tournament has only {max}")]
    TooManyUpsets { k: usize, max: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct GenParams {
    pub n: usize,
    /// Number of arcs reversed in the acyclic base order; the true minimum
    /// feedback arc set is at most this.
    pub k_target: usize,
    pub demands: usize,
    pub mode: GenMode,
    pub seed: u64,
}

/// Deterministically generates an instance: an acyclic tournament on a random
/// strength order, `k_target` reversed arcs, and `demands` demand arcs drawn
/// per the mode.
pub fn gen_instance(params: &GenParams) -> Result<DemandInstance, GenError> {
    let GenParams { n, k_target, demands: d, mode, seed } = *params;
    if !n.is_power_of_two() {
        return Err(GenError::NotPowerOfTwo(n));
    }
    let max_arcs = n * (n - 1) / 2;
    if k_target > max_arcs {
        return Err(GenError::TooManyUpsets { k: k_target, max: max_arcs });
    }
    if d > n.saturating_sub(1) {
        return Err(GenError::InfeasibleDemandCount { d, max: n - 1 });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut strength: Vec<Player> = (0..n).collect();
    strength.shuffle(&mut rng);
    let mut pos = vec![0usize; n];
    for (i, &v) in strength.iter().enumerate() {
        pos[v] = i;
    }
    let mut t = TournamentDigraph::from_winner_fn(n, |u, v| pos[u] < pos[v]);

    let mut pairs: Vec<(Player, Player)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    for &(u, v) in pairs.iter().take(k_target) {
        t.reverse_arc(u, v);
    }

    let demand_set: BTreeSet<(Player, Player)> = match mode {
        GenMode::Yes => {
            let mut seeding: Vec<Player> = (0..n).collect();
            seeding.shuffle(&mut rng);
            let sim = simulate(&t, &Seeding::new(seeding).expect("shuffled permutation"))
                .expect("power-of-two bracket");
            let mut arcs: Vec<(Player, Player)> = sim.sba.arcs().collect();
            arcs.sort_unstable();
            arcs.shuffle(&mut rng);
            arcs.into_iter().take(d).collect()
        }
        GenMode::Uniform => {
            let mut chosen = BTreeSet::new();
            let mut used_heads = vec![false; n];
            while chosen.len() < d {
                let u = rng.random_range(0..n);
                let v = rng.random_range(0..n);
                if u == v {
                    continue;
                }
                let (w, l) = t.winner_loser(u, v);
                if used_heads[l] {
                    continue;
                }
                used_heads[l] = true;
                chosen.insert((w, l));
            }
            chosen
        }
    };

    Ok(DemandInstance::new(t).with_demands(demand_set))
}
