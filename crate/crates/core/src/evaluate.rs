//! Evaluation against fixed strategies: best-response values, matching and
//! meeting probabilities, and enumeration of pure adaptive strategies.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{GameSpec, HistoryClassKey, PlayerSet, Team};
use crate::rational::{self, Rational};
use crate::solver::outcomes;
use crate::strategy::{lookup, ClassStrategy, PureAdaptiveStrategy};

/// Team one's expected utility when `fixed` is played by its team and the
/// other team best-responds at every class.
pub fn evaluate_fixed<S: ClassStrategy + ?Sized>(spec: &GameSpec, fixed: &S) -> Result<Rational> {
    let mut memo = HashMap::new();
    evaluate_at(spec, fixed, &HistoryClassKey::ROOT, &mut memo)
}

/// Like [`evaluate_fixed`] but from an arbitrary class.
pub fn evaluate_fixed_from<S: ClassStrategy + ?Sized>(
    spec: &GameSpec,
    fixed: &S,
    key: &HistoryClassKey,
) -> Result<Rational> {
    let mut memo = HashMap::new();
    evaluate_at(spec, fixed, key, &mut memo)
}

fn evaluate_at<S: ClassStrategy + ?Sized>(
    spec: &GameSpec,
    fixed: &S,
    key: &HistoryClassKey,
    memo: &mut HashMap<HistoryClassKey, Rational>,
) -> Result<Rational> {
    if key.round() == spec.rounds() {
        return Ok(spec.utility().value(key.wins as usize).clone());
    }
    if let Some(v) = memo.get(key) {
        return Ok(v.clone());
    }
    let fixed_team = fixed.team();
    let free_team = fixed_team.other();
    let mix = lookup(fixed, spec, key)?.into_owned();
    let free = key.played(free_team).complement(spec.team_size(free_team));
    let mut best: Option<Rational> = None;
    for choice in free.iter() {
        let mut expected = Rational::zero();
        for (p, weight) in &mix {
            let (a, b) = match fixed_team {
                Team::One => (*p, choice),
                Team::Two => (choice, *p),
            };
            for (won, q) in outcomes(spec.win_prob(a, b)) {
                let v = evaluate_at(spec, fixed, &key.advance(a, b, won), memo)?;
                expected += weight * q * v;
            }
        }
        best = Some(match (best, free_team) {
            (None, _) => expected,
            (Some(b), Team::One) => b.max(expected),
            (Some(b), Team::Two) => b.min(expected),
        });
    }
    let value = best.expect("a free player always exists below the last round");
    memo.insert(*key, value.clone());
    Ok(value)
}

/// A complete matching: `pairs[i]` is the team-two player that met `A_i`.
pub type Matching = Vec<usize>;

/// Exact probability of every perfect matching when both teams have exactly
/// `T` players. All `T!` matchings are listed, including impossible ones.
pub fn matching_distribution<S1, S2>(spec: &GameSpec, s1: &S1, s2: &S2) -> Result<BTreeMap<Matching, Rational>>
where
    S1: ClassStrategy + ?Sized,
    S2: ClassStrategy + ?Sized,
{
    let t = spec.rounds();
    if spec.team1_size() != t || spec.team2_size() != t {
        return Err(Error::Redundant(format!(
            "matching distribution needs m = n = T, got m = {}, n = {}, T = {t}",
            spec.team1_size(),
            spec.team2_size()
        )));
    }
    check_teams(s1, s2)?;
    // state: (partial pairing with usize::MAX for unmatched, wins)
    let mut states: BTreeMap<(Vec<usize>, u8), Rational> = BTreeMap::new();
    states.insert((vec![usize::MAX; t], 0), rational::one());
    for _ in 0..t {
        let mut next: BTreeMap<(Vec<usize>, u8), Rational> = BTreeMap::new();
        for ((pairs, wins), mass) in states {
            let played1 = PlayerSet::from_players((0..t).filter(|&i| pairs[i] != usize::MAX));
            let played2 = PlayerSet::from_players(pairs.iter().copied().filter(|&j| j != usize::MAX));
            let key = HistoryClassKey::new(played1, played2, wins);
            let mix1 = lookup(s1, spec, &key)?;
            let mix2 = lookup(s2, spec, &key)?;
            for (a, x) in mix1.iter() {
                for (b, y) in mix2.iter() {
                    for (won, q) in outcomes(spec.win_prob(*a, *b)) {
                        let mut np = pairs.clone();
                        np[*a] = *b;
                        *next.entry((np, wins + u8::from(won))).or_insert_with(Rational::zero) += &mass * x * y * q;
                    }
                }
            }
        }
        states = next;
    }
    let mut dist: BTreeMap<Matching, Rational> = permutations(t).into_iter().map(|p| (p, Rational::zero())).collect();
    for ((pairs, _), mass) in states {
        *dist.get_mut(&pairs).expect("complete matching") += mass;
    }
    Ok(dist)
}

fn check_teams<S1, S2>(s1: &S1, s2: &S2) -> Result<()>
where
    S1: ClassStrategy + ?Sized,
    S2: ClassStrategy + ?Sized,
{
    if s1.team() != Team::One || s2.team() != Team::Two {
        return Err(Error::Params("expected a team-one strategy and a team-two strategy".into()));
    }
    Ok(())
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v);
                go(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    go(n, &mut current, &mut used, &mut out);
    out
}

/// `Q[i][j]`: probability that `A_i` and `B_j` play each other in some round.
pub fn meeting_probabilities<S1, S2>(spec: &GameSpec, s1: &S1, s2: &S2) -> Result<Vec<Vec<Rational>>>
where
    S1: ClassStrategy + ?Sized,
    S2: ClassStrategy + ?Sized,
{
    check_teams(s1, s2)?;
    let (m, n) = (spec.team1_size(), spec.team2_size());
    let mut q = vec![vec![Rational::zero(); n]; m];
    let mut level: BTreeMap<HistoryClassKey, Rational> = BTreeMap::new();
    level.insert(HistoryClassKey::ROOT, rational::one());
    for _ in 0..spec.rounds() {
        let mut next: BTreeMap<HistoryClassKey, Rational> = BTreeMap::new();
        for (key, mass) in level {
            let mix1 = lookup(s1, spec, &key)?;
            let mix2 = lookup(s2, spec, &key)?;
            for (a, x) in mix1.iter() {
                for (b, y) in mix2.iter() {
                    let joint = &mass * x * y;
                    q[*a][*b] += &joint;
                    for (won, p) in outcomes(spec.win_prob(*a, *b)) {
                        *next.entry(key.advance(*a, *b, won)).or_insert_with(Rational::zero) += &joint * p;
                    }
                }
            }
        }
        level = next;
    }
    Ok(q)
}

/// Default cap on the number of pure strategies an enumeration may produce.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1_000_000;

/// Calls `visit` once for every class-based pure adaptive strategy of `team`,
/// defined on exactly the classes the strategy itself can reach (against any
/// opponent play and any match outcomes). Returns the number visited.
///
/// The enumeration is counted first and refused with [`Error::Budget`] if it
/// would exceed `budget`.
pub fn for_each_pure_strategy(
    spec: &GameSpec,
    team: Team,
    budget: u64,
    mut visit: impl FnMut(&PureAdaptiveStrategy),
) -> Result<u64> {
    let mut counter = Enumerator {
        spec,
        team,
        budget,
        count: 0,
        stack: Vec::new(),
    };
    counter.walk(0, vec![HistoryClassKey::ROOT], &mut |_| {})?;
    let total = counter.count;
    let mut runner = Enumerator {
        spec,
        team,
        budget,
        count: 0,
        stack: Vec::new(),
    };
    runner.walk(0, vec![HistoryClassKey::ROOT], &mut |stack| {
        let choices: HashMap<HistoryClassKey, usize> = stack.iter().copied().collect();
        visit(&PureAdaptiveStrategy::from_choices(team, choices));
    })?;
    debug_assert_eq!(total, runner.count);
    Ok(total)
}

/// Collects every pure adaptive strategy (see [`for_each_pure_strategy`]).
pub fn enumerate_pure_strategies(spec: &GameSpec, team: Team, budget: u64) -> Result<Vec<PureAdaptiveStrategy>> {
    let mut out = Vec::new();
    for_each_pure_strategy(spec, team, budget, |s| out.push(s.clone()))?;
    Ok(out)
}

/// Number of pure adaptive strategies, or a budget error.
pub fn count_pure_strategies(spec: &GameSpec, team: Team, budget: u64) -> Result<u64> {
    let mut counter = Enumerator {
        spec,
        team,
        budget,
        count: 0,
        stack: Vec::new(),
    };
    counter.walk(0, vec![HistoryClassKey::ROOT], &mut |_| {})?;
    Ok(counter.count)
}

struct Enumerator<'a> {
    spec: &'a GameSpec,
    team: Team,
    budget: u64,
    count: u64,
    stack: Vec<(HistoryClassKey, usize)>,
}

/// Receives each complete pure strategy as `(class, choice)` pairs.
type Emit<'a> = dyn FnMut(&[(HistoryClassKey, usize)]) + 'a;

impl Enumerator<'_> {
    /// Assigns a choice to every class in `frontier` (all at round `k`) in
    /// every possible way, then recurses on the classes those choices reach.
    fn walk(
        &mut self,
        k: usize,
        frontier: Vec<HistoryClassKey>,
        emit: &mut Emit<'_>,
    ) -> Result<()> {
        if k == self.spec.rounds() {
            self.count += 1;
            if self.count > self.budget {
                return Err(Error::Budget(format!(
                    "more than {} pure strategies for team {}",
                    self.budget, self.team
                )));
            }
            emit(&self.stack);
            return Ok(());
        }
        let (own_size, other_size) = (self.spec.team_size(self.team), self.spec.team_size(self.team.other()));
        let options: Vec<Vec<usize>> = frontier
            .iter()
            .map(|key| key.played(self.team).complement(own_size).iter().collect())
            .collect();
        // every assignment of this frontier completes to at least one strategy
        let at_least = options
            .iter()
            .try_fold(1u64, |acc, o| acc.checked_mul(o.len() as u64))
            .unwrap_or(u64::MAX);
        if self.count.saturating_add(at_least) > self.budget {
            return Err(Error::Budget(format!(
                "more than {} pure strategies for team {}",
                self.budget, self.team
            )));
        }
        let mut digits = vec![0usize; frontier.len()];
        loop {
            let base = self.stack.len();
            let mut next: BTreeSet<HistoryClassKey> = BTreeSet::new();
            for (idx, key) in frontier.iter().enumerate() {
                let own = options[idx][digits[idx]];
                self.stack.push((*key, own));
                for other in key.played(self.team.other()).complement(other_size).iter() {
                    let (a, b) = match self.team {
                        Team::One => (own, other),
                        Team::Two => (other, own),
                    };
                    next.insert(key.advance(a, b, true));
                    next.insert(key.advance(a, b, false));
                }
            }
            self.walk(k + 1, next.into_iter().collect(), emit)?;
            self.stack.truncate(base);
            // odometer increment
            let mut pos = 0;
            loop {
                if pos == digits.len() {
                    return Ok(());
                }
                digits[pos] += 1;
                if digits[pos] < options[pos].len() {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
        }
    }
}

/// Largest `Q[a][b]` any team-one strategy can force when team two plays
/// uniformly at random. Computed by backward induction over `(X, Y)`; match
/// outcomes do not move the played sets, so win counts are irrelevant.
pub fn max_meeting_probability_vs_uniform(spec: &GameSpec, a: usize, b: usize) -> Rational {
    let mut memo: HashMap<(PlayerSet, PlayerSet), Rational> = HashMap::new();
    max_meet(spec, a, b, PlayerSet::EMPTY, PlayerSet::EMPTY, &mut memo)
}

fn max_meet(
    spec: &GameSpec,
    a: usize,
    b: usize,
    x: PlayerSet,
    y: PlayerSet,
    memo: &mut HashMap<(PlayerSet, PlayerSet), Rational>,
) -> Rational {
    if x.len() == spec.rounds() || x.contains(a) || y.contains(b) {
        return Rational::zero();
    }
    if let Some(v) = memo.get(&(x, y)) {
        return v.clone();
    }
    let free2: Vec<usize> = y.complement(spec.team2_size()).iter().collect();
    let share = rational::ratio(1, free2.len() as i64);
    let mut best = Rational::zero();
    for own in x.complement(spec.team1_size()).iter() {
        let mut total = Rational::zero();
        for &other in &free2 {
            if own == a && other == b {
                total += rational::one();
            } else {
                total += max_meet(spec, a, b, x.with(own), y.with(other), memo);
            }
        }
        let value = total * &share;
        if value > best {
            best = value;
        }
    }
    memo.insert((x, y), best.clone());
    best
}
