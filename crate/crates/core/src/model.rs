//! Core domain types: tournament digraphs, demand instances, seedings, and
//! the single-elimination machinery (simulation, seeding reconstruction,
//! solution verification).

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::arborescence::RootedForest;

/// Players are dense integer ids `0..n`.
pub type Player = usize;

/// Returns `Some(r)` when `n == 2^r`.
pub fn log2_exact(n: usize) -> Option<u32> {
    if n > 0 && n.is_power_of_two() {
        Some(n.trailing_zeros())
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("player count {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("matrix entry ({u},{v}) breaks completeness: exactly one of (u,v),(v,u) must be an arc")]
    NotATournament { u: Player, v: Player },
    #[error("seeding has {got} entries, tournament has {expected} players")]
    SeedingLengthMismatch { got: usize, expected: usize },
    #[error("seeding is not a permutation of 0..{0}")]
    NotAPermutation(usize),
}

/// Complete orientation of all player pairs: `beats(u, v)` answers who wins
/// the match between `u` and `v`, deterministically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TournamentDigraph {
    n: usize,
    beats: Vec<bool>,
}

impl TournamentDigraph {
    /// Acyclic tournament where lower ids are stronger: `u` beats `v` iff `u < v`.
    pub fn new_acyclic(n: usize) -> Self {
        Self::from_winner_fn(n, |_, _| true)
    }

    /// Builds a tournament by asking, for every pair `u < v`, whether `u`
    /// beats `v`. Completeness holds by construction.
    pub fn from_winner_fn(n: usize, mut u_beats_v: impl FnMut(Player, Player) -> bool) -> Self {
        let mut beats = vec![false; n * n];
        for u in 0..n {
            for v in (u + 1)..n {
                if u_beats_v(u, v) {
                    beats[u * n + v] = true;
                } else {
                    beats[v * n + u] = true;
                }
            }
        }
        TournamentDigraph { n, beats }
    }

    /// Builds a tournament from a full adjacency matrix, rejecting self-arcs
    /// and asymmetry violations.
    pub fn from_matrix(n: usize, beats: Vec<bool>) -> Result<Self, ModelError> {
        assert_eq!(beats.len(), n * n, "matrix must be n*n");
        for u in 0..n {
            if beats[u * n + u] {
                return Err(ModelError::NotATournament { u, v: u });
            }
            for v in (u + 1)..n {
                if beats[u * n + v] == beats[v * n + u] {
                    return Err(ModelError::NotATournament { u, v });
                }
            }
        }
        Ok(TournamentDigraph { n, beats })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `log2(n)` when the player count is a power of two.
    pub fn log_n(&self) -> Option<u32> {
        log2_exact(self.n)
    }

    pub fn beats(&self, u: Player, v: Player) -> bool {
        self.beats[u * self.n + v]
    }

    /// Winner and loser of the match between `a` and `b`.
    pub fn winner_loser(&self, a: Player, b: Player) -> (Player, Player) {
        if self.beats(a, b) {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Flips the direction of the arc between `u` and `v`.
    pub fn reverse_arc(&mut self, u: Player, v: Player) {
        debug_assert_ne!(u, v);
        let (a, b) = (u * self.n + v, v * self.n + u);
        self.beats.swap(a, b);
    }

    /// All arcs `(winner, loser)` in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (Player, Player)> + '_ {
        (0..self.n).flat_map(move |u| {
            (0..self.n).filter_map(move |v| self.beats(u, v).then_some((u, v)))
        })
    }

    /// Players beating `v`, ascending.
    pub fn in_neighbors(&self, v: Player) -> impl Iterator<Item = Player> + '_ {
        (0..self.n).filter(move |&u| self.beats(u, v))
    }
}

/// A demand instance: the tournament, the demanded matches `S`, and optional
/// per-demand round constraints and weights.
///
/// `demands` may contain duplicates at this stage; validation rejects them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandInstance {
    pub tournament: TournamentDigraph,
    pub demands: Vec<(Player, Player)>,
    pub rounds: BTreeMap<(Player, Player), u32>,
    pub weights: BTreeMap<(Player, Player), u64>,
}

impl DemandInstance {
    pub fn new(tournament: TournamentDigraph) -> Self {
        DemandInstance {
            tournament,
            demands: Vec::new(),
            rounds: BTreeMap::new(),
            weights: BTreeMap::new(),
        }
    }

    pub fn with_demands(mut self, demands: impl IntoIterator<Item = (Player, Player)>) -> Self {
        self.demands = demands.into_iter().collect();
        self
    }
}

/// First-round bracket: position `i` meets position `i ^ 1` in round 0 and
/// winners occupy position `i / 2` of the next round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seeding(Vec<Player>);

impl Seeding {
    pub fn new(order: Vec<Player>) -> Result<Self, ModelError> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &p in &order {
            if p >= n || seen[p] {
                return Err(ModelError::NotAPermutation(n));
            }
            seen[p] = true;
        }
        Ok(Seeding(order))
    }

    pub fn players(&self) -> &[Player] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl core::fmt::Display for Seeding {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// One played match. `round` is 0-indexed and equals the height at which the
/// loser exits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchRecord {
    pub winner: Player,
    pub loser: Player,
    pub round: u32,
}

/// Outcome of simulating a seeding: the played matches by round and the
/// induced spanning binomial arborescence (winner-to-loser arcs).
#[derive(Debug, Clone)]
pub struct Simulation {
    pub sba: RootedForest,
    pub matches: Vec<MatchRecord>,
    pub winner: Player,
}

/// Plays out the single-elimination tournament defined by `s` under the
/// outcomes in `t`.
pub fn simulate(t: &TournamentDigraph, s: &Seeding) -> Result<Simulation, ModelError> {
    let n = t.n();
    if s.len() != n {
        return Err(ModelError::SeedingLengthMismatch {
            got: s.len(),
            expected: n,
        });
    }
    if log2_exact(n).is_none() {
        return Err(ModelError::NotPowerOfTwo(n));
    }
    let mut sba = RootedForest::new(n);
    let mut matches = Vec::with_capacity(n - 1);
    let mut alive: Vec<Player> = s.players().to_vec();
    let mut round = 0;
    while alive.len() > 1 {
        let mut next = Vec::with_capacity(alive.len() / 2);
        for pair in alive.chunks_exact(2) {
            let (w, l) = t.winner_loser(pair[0], pair[1]);
            matches.push(MatchRecord {
                winner: w,
                loser: l,
                round,
            });
            sba.add_arc(w, l).expect("winners are alive, losers are fresh roots");
            next.push(w);
        }
        alive = next;
        round += 1;
    }
    Ok(Simulation {
        sba,
        matches,
        winner: alive[0],
    })
}

/// Recovers a seeding whose simulation reproduces exactly the arcs of the
/// given spanning binomial arborescence.
///
/// The block of a height-`h` root is its block at height `h-1` followed by
/// the block of its height-`h-1` child, so the final round pairs the two
/// half-bracket winners.
pub fn sba_to_seeding(sba: &RootedForest) -> Result<Seeding, crate::arborescence::ArborescenceError> {
    use crate::arborescence::ArborescenceError;
    let n = sba.n();
    let mut roots = sba.roots();
    let root = match (roots.next(), roots.next()) {
        (Some(r), None) => r,
        _ => return Err(ArborescenceError::NotAnSba),
    };
    if !crate::arborescence::is_binomial_arborescence(sba, root) {
        return Err(ArborescenceError::NotAnSba);
    }
    let sizes = sba.subtree_sizes();
    let mut order = Vec::with_capacity(n);
    unfold(sba, &sizes, root, &mut order);
    Ok(Seeding::new(order).expect("an SBA spans a permutation of the players"))
}

fn unfold(sba: &RootedForest, sizes: &[usize], v: Player, out: &mut Vec<Player>) {
    // Children of a BA root have pairwise-distinct sizes; ascending size
    // order is the bracket order of the sub-finals.
    let mut children: Vec<Player> = sba.children(v).to_vec();
    children.sort_by_key(|&c| sizes[c]);
    out.push(v);
    for c in children {
        unfold(sba, sizes, c, out);
    }
}

/// Verdict of [`check_solution`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionReport {
    pub ok: bool,
    /// Demands that were not played at all.
    pub missed: BTreeSet<(Player, Player)>,
    /// Demands played in a round other than the one specified.
    pub round_violations: BTreeSet<(Player, Player)>,
}

/// Checks whether a seeding realizes every demand of the instance, and every
/// round constraint where one is given.
pub fn check_solution(inst: &ValidatedInstance, s: &Seeding) -> Result<SolutionReport, ModelError> {
    let sim = simulate(inst.tournament(), s)?;
    let mut played: BTreeMap<(Player, Player), u32> = BTreeMap::new();
    for m in &sim.matches {
        played.insert((m.winner, m.loser), m.round);
    }
    let mut missed = BTreeSet::new();
    let mut round_violations = BTreeSet::new();
    for &(u, v) in inst.demands() {
        match played.get(&(u, v)) {
            None => {
                missed.insert((u, v));
            }
            Some(&r) => {
                if let Some(&want) = inst.rounds().get(&(u, v)) {
                    if r != want {
                        round_violations.insert((u, v));
                    }
                }
            }
        }
    }
    Ok(SolutionReport {
        ok: missed.is_empty() && round_violations.is_empty(),
        missed,
        round_violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValidateError {
    #[error("player count {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("player {player} out of range for n={n}")]
    PlayerOutOfRange { player: Player, n: usize },
    #[error("demand ({u},{v}) is not an arc of the tournament")]
    DemandNotAnArc { u: Player, v: Player },
    #[error("demand ({u},{v}) listed more than once")]
    DuplicateDemand { u: Player, v: Player },
    #[error("round {round} for demand ({u},{v}) outside [0,{max}]")]
    BadRound { u: Player, v: Player, round: u32, max: u32 },
    #[error("round given for ({u},{v}) which is not a demand")]
    RoundForNonDemand { u: Player, v: Player },
    #[error("weight given for ({u},{v}) which is not a demand")]
    WeightForNonDemand { u: Player, v: Player },
}

/// Demand adjacency: each player's demand parent (the player that must beat
/// it) and demand children (the players it must beat).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemandMaps {
    parent: Vec<Option<Player>>,
    children: Vec<Vec<Player>>,
}

impl DemandMaps {
    /// Builds the maps; fails when some player has demand in-degree > 1.
    pub fn new(n: usize, demands: impl IntoIterator<Item = (Player, Player)>) -> Option<Self> {
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        for (u, v) in demands {
            if parent[v].is_some() {
                return None;
            }
            parent[v] = Some(u);
            children[u].push(v);
        }
        for c in &mut children {
            c.sort_unstable();
        }
        Some(DemandMaps { parent, children })
    }

    pub fn parent(&self, v: Player) -> Option<Player> {
        self.parent[v]
    }

    pub fn children(&self, u: Player) -> &[Player] {
        &self.children[u]
    }

    /// Heads of demand arcs: the players that lose some demand match.
    pub fn lose_set(&self) -> BTreeSet<Player> {
        (0..self.parent.len()).filter(|&v| self.parent[v].is_some()).collect()
    }
}

/// A structurally checked instance, ready for the solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedInstance {
    inst: DemandInstance,
    demand_set: BTreeSet<(Player, Player)>,
    log_n: u32,
    trivially_no: bool,
    maps: Option<DemandMaps>,
}

impl ValidatedInstance {
    pub fn tournament(&self) -> &TournamentDigraph {
        &self.inst.tournament
    }

    pub fn n(&self) -> usize {
        self.inst.tournament.n()
    }

    pub fn log_n(&self) -> u32 {
        self.log_n
    }

    pub fn demands(&self) -> &BTreeSet<(Player, Player)> {
        &self.demand_set
    }

    pub fn rounds(&self) -> &BTreeMap<(Player, Player), u32> {
        &self.inst.rounds
    }

    pub fn weights(&self) -> &BTreeMap<(Player, Player), u64> {
        &self.inst.weights
    }

    /// True when some player has demand in-degree > 1: no player can lose two
    /// matches, so the instance is a no-instance without any search.
    pub fn trivially_no(&self) -> bool {
        self.trivially_no
    }

    /// Demand adjacency; `None` exactly when the instance is trivially no.
    pub fn demand_maps(&self) -> Option<&DemandMaps> {
        self.maps.as_ref()
    }

    pub fn instance(&self) -> &DemandInstance {
        &self.inst
    }
}

/// Checks the structural invariants of an instance and precomputes the
/// demand adjacency.
pub fn validate_instance(inst: DemandInstance) -> Result<ValidatedInstance, ValidateError> {
    let n = inst.tournament.n();
    let log_n = log2_exact(n).ok_or(ValidateError::NotPowerOfTwo(n))?;
    let mut demand_set = BTreeSet::new();
    for &(u, v) in &inst.demands {
        if u >= n {
            return Err(ValidateError::PlayerOutOfRange { player: u, n });
        }
        if v >= n {
            return Err(ValidateError::PlayerOutOfRange { player: v, n });
        }
        if u == v || !inst.tournament.beats(u, v) {
            return Err(ValidateError::DemandNotAnArc { u, v });
        }
        if !demand_set.insert((u, v)) {
            return Err(ValidateError::DuplicateDemand { u, v });
        }
    }
    let max_round = log_n.saturating_sub(1);
    for (&(u, v), &round) in &inst.rounds {
        if !demand_set.contains(&(u, v)) {
            return Err(ValidateError::RoundForNonDemand { u, v });
        }
        if log_n == 0 || round > max_round {
            return Err(ValidateError::BadRound { u, v, round, max: max_round });
        }
    }
    for &(u, v) in inst.weights.keys() {
        if !demand_set.contains(&(u, v)) {
            return Err(ValidateError::WeightForNonDemand { u, v });
        }
    }
    let maps = DemandMaps::new(n, demand_set.iter().copied());
    Ok(ValidatedInstance {
        trivially_no: maps.is_none(),
        log_n,
        demand_set,
        maps,
        inst,
    })
}
