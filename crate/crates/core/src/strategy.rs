//! Class-based strategies: a mixture (or a single choice) over a team's unused
//! players for every history class.

use std::borrow::Cow;
use std::collections::HashMap;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{is_distribution, GameSpec, HistoryClassKey, PlayerSet, Team};
use crate::rational::{self, Rational};

/// A distribution over players: `(player, weight)` pairs with positive weights.
pub type Mixture = Vec<(usize, Rational)>;

/// Anything that tells a team what to do at a history class.
pub trait ClassStrategy {
    fn team(&self) -> Team;

    /// The team's mixture at `key`, or `None` when the strategy is silent there.
    fn mixture(&self, key: &HistoryClassKey) -> Option<Cow<'_, [(usize, Rational)]>>;
}

/// Checks that `mix` is a distribution supported on the unplayed players.
pub(crate) fn check_mixture(
    spec: &GameSpec,
    team: Team,
    key: &HistoryClassKey,
    mix: &[(usize, Rational)],
) -> Result<()> {
    let size = spec.team_size(team);
    let played = key.played(team);
    for (p, w) in mix {
        if *p >= size || played.contains(*p) {
            return Err(Error::Coverage(format!(
                "team {team} puts weight on unavailable player {} at {key}",
                p + 1
            )));
        }
        if w.is_negative() {
            return Err(Error::Coverage(format!("negative weight at {key}")));
        }
    }
    let weights: Vec<Rational> = mix.iter().map(|(_, w)| w.clone()).collect();
    if !is_distribution(&weights) {
        return Err(Error::Coverage(format!("team {team} weights at {key} do not sum to 1")));
    }
    Ok(())
}

pub(crate) fn lookup<'a, S: ClassStrategy + ?Sized>(
    strategy: &'a S,
    spec: &GameSpec,
    key: &HistoryClassKey,
) -> Result<Cow<'a, [(usize, Rational)]>> {
    let mix = strategy
        .mixture(key)
        .ok_or_else(|| Error::Coverage(format!("team {} strategy has no entry for {key}", strategy.team())))?;
    check_mixture(spec, strategy.team(), key, &mix)?;
    Ok(mix)
}

/// A behavioral strategy restricted to history classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BehavioralStrategy {
    team: Option<Team>,
    mixtures: HashMap<HistoryClassKey, Mixture>,
}

impl BehavioralStrategy {
    pub fn new(team: Team) -> BehavioralStrategy {
        BehavioralStrategy {
            team: Some(team),
            mixtures: HashMap::new(),
        }
    }

    /// Records the mixture at `key`, dropping zero weights.
    pub fn insert(&mut self, key: HistoryClassKey, mix: Mixture) {
        let mix = mix.into_iter().filter(|(_, w)| w.is_positive()).collect();
        self.mixtures.insert(key, mix);
    }

    /// Like [`insert`](Self::insert) but validates the mixture against `spec`.
    pub fn insert_checked(&mut self, spec: &GameSpec, key: HistoryClassKey, mix: Mixture) -> Result<()> {
        check_mixture(spec, self.team(), &key, &mix)?;
        self.insert(key, mix);
        Ok(())
    }

    pub fn get(&self, key: &HistoryClassKey) -> Option<&[(usize, Rational)]> {
        self.mixtures.get(key).map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.mixtures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mixtures.is_empty()
    }

    /// Entries sorted by class key.
    pub fn sorted_entries(&self) -> Vec<(&HistoryClassKey, &Mixture)> {
        let mut entries: Vec<_> = self.mixtures.iter().collect();
        entries.sort_by_key(|(k, _)| (k.round(), **k));
        entries
    }

    /// Full weight vector over the team's unplayed players (ascending index)
    /// at `key`, with explicit zeros.
    pub fn weights_at(&self, spec: &GameSpec, key: &HistoryClassKey) -> Option<Vec<(usize, Rational)>> {
        let mix = self.get(key)?;
        let team = self.team();
        let free = key.played(team).complement(spec.team_size(team));
        Some(
            free.iter()
                .map(|p| {
                    let w = mix.iter().find(|(q, _)| *q == p).map_or_else(rational::zero, |(_, w)| w.clone());
                    (p, w)
                })
                .collect(),
        )
    }
}

impl ClassStrategy for BehavioralStrategy {
    fn team(&self) -> Team {
        self.team.expect("strategy constructed with a team")
    }

    fn mixture(&self, key: &HistoryClassKey) -> Option<Cow<'_, [(usize, Rational)]>> {
        self.get(key).map(Cow::Borrowed)
    }
}

/// A deterministic class-based strategy: one unused player per class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureAdaptiveStrategy {
    team: Team,
    choices: HashMap<HistoryClassKey, usize>,
}

impl PureAdaptiveStrategy {
    pub fn new(team: Team) -> PureAdaptiveStrategy {
        PureAdaptiveStrategy {
            team,
            choices: HashMap::new(),
        }
    }

    pub fn from_choices(team: Team, choices: HashMap<HistoryClassKey, usize>) -> PureAdaptiveStrategy {
        PureAdaptiveStrategy { team, choices }
    }

    pub fn set(&mut self, key: HistoryClassKey, player: usize) {
        self.choices.insert(key, player);
    }

    pub fn choice(&self, key: &HistoryClassKey) -> Option<usize> {
        self.choices.get(key).copied()
    }

    pub fn len(&self) -> usize {
        self.choices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    /// Always plays the lowest-indexed unused player.
    pub fn lowest_index_first(spec: &GameSpec, team: Team) -> PureAdaptiveStrategy {
        let mut s = PureAdaptiveStrategy::new(team);
        for key in all_decision_classes(spec) {
            let free = key.played(team).complement(spec.team_size(team));
            if let Some(p) = free.iter().next() {
                s.set(key, p);
            }
        }
        s
    }
}

impl ClassStrategy for PureAdaptiveStrategy {
    fn team(&self) -> Team {
        self.team
    }

    fn mixture(&self, key: &HistoryClassKey) -> Option<Cow<'_, [(usize, Rational)]>> {
        self.choice(key).map(|p| Cow::Owned(vec![(p, Rational::one())]))
    }
}

/// Every non-terminal class `(X, Y, w)`, level by level from the root.
pub fn all_decision_classes(spec: &GameSpec) -> Vec<HistoryClassKey> {
    let (m, n) = (spec.team1_size(), spec.team2_size());
    let mut out = Vec::new();
    for k in 0..spec.rounds() {
        for x in PlayerSet::subsets_of_size(m, k) {
            for y in PlayerSet::subsets_of_size(n, k) {
                for w in 0..=k {
                    out.push(HistoryClassKey::new(x, y, w as u8));
                }
            }
        }
    }
    out
}

/// Picks uniformly among the team's remaining players at every class.
pub fn uniform_strategy(spec: &GameSpec, team: Team) -> BehavioralStrategy {
    uniform_over(spec, team, PlayerSet::full(spec.team_size(team)))
}

/// Picks uniformly among the unused members of `pool` at every class; falls
/// back to all unused players if none of the pool is left.
pub fn uniform_over(spec: &GameSpec, team: Team, pool: PlayerSet) -> BehavioralStrategy {
    let size = spec.team_size(team);
    let mut s = BehavioralStrategy::new(team);
    for key in all_decision_classes(spec) {
        let free = key.played(team).complement(size);
        let preferred = PlayerSet::from_bits(free.bits() & pool.bits());
        let support = if preferred.is_empty() { free } else { preferred };
        let w = rational::ratio(1, support.len() as i64);
        s.insert(key, support.iter().map(|p| (p, w.clone())).collect());
    }
    s
}

/// Serializable snapshot of a mixture, players 1-based.
#[derive(Clone, Debug, Serialize)]
pub struct MixtureDoc {
    pub player: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub weight: Rational,
}

pub fn mixture_doc(mix: &[(usize, Rational)]) -> Vec<MixtureDoc> {
    mix.iter()
        .map(|(p, w)| MixtureDoc {
            player: p + 1,
            weight: w.clone(),
        })
        .collect()
}
