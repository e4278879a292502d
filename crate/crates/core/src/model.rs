//! Game specifications: strength matrices, utility tables, player sets and
//! history-class keys.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Upper bound on the number of players per team.
pub const MAX_PLAYERS: usize = 20;

/// One of the two competing teams. Team one is the maximizer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Team {
    One,
    Two,
}

impl Team {
    pub fn from_number(n: u8) -> Result<Team> {
        match n {
            1 => Ok(Team::One),
            2 => Ok(Team::Two),
            _ => Err(Error::Params(format!("team must be 1 or 2, got {n}"))),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Team::One => 1,
            Team::Two => 2,
        }
    }

    pub fn other(self) -> Team {
        match self {
            Team::One => Team::Two,
            Team::Two => Team::One,
        }
    }
}

impl fmt::Display for Team {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl Serialize for Team {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.number())
    }
}

impl<'de> Deserialize<'de> for Team {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = u8::deserialize(d)?;
        Team::from_number(n).map_err(serde::de::Error::custom)
    }
}

/// A set of players of one team, as a bit set over zero-based indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlayerSet(u32);

impl PlayerSet {
    pub const EMPTY: PlayerSet = PlayerSet(0);

    pub fn from_bits(bits: u32) -> PlayerSet {
        PlayerSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> PlayerSet {
        debug_assert!(n <= 32);
        if n == 32 {
            PlayerSet(u32::MAX)
        } else {
            PlayerSet((1u32 << n) - 1)
        }
    }

    pub fn from_players<I: IntoIterator<Item = usize>>(players: I) -> PlayerSet {
        players.into_iter().fold(PlayerSet::EMPTY, |s, p| s.with(p))
    }

    pub fn contains(self, player: usize) -> bool {
        self.0 >> player & 1 == 1
    }

    #[must_use]
    pub fn with(self, player: usize) -> PlayerSet {
        PlayerSet(self.0 | 1 << player)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Players in `{0, .., n-1}` not in this set.
    pub fn complement(self, n: usize) -> PlayerSet {
        PlayerSet(!self.0 & PlayerSet::full(n).0)
    }

    /// Iterates members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let p = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(p)
            }
        })
    }

    /// All subsets of `{0, .., n-1}` with exactly `k` members, in increasing
    /// order of their bit patterns.
    pub fn subsets_of_size(n: usize, k: usize) -> Vec<PlayerSet> {
        if k > n {
            return Vec::new();
        }
        if k == 0 {
            return vec![PlayerSet::EMPTY];
        }
        let mut out = Vec::new();
        let limit: u64 = 1u64 << n;
        let mut v: u64 = (1u64 << k) - 1;
        while v < limit {
            out.push(PlayerSet(v as u32));
            // Gosper's hack: next integer with the same popcount.
            let c = v & v.wrapping_neg();
            let r = v + c;
            v = (((r ^ v) >> 2) / c) | r;
        }
        out
    }
}

impl fmt::Display for PlayerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, p) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", p + 1)?;
        }
        write!(f, "}}")
    }
}

/// An equivalence class of histories: which players each team has used and
/// how many rounds team one has won. The round number is `played1.len()`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HistoryClassKey {
    pub played1: PlayerSet,
    pub played2: PlayerSet,
    pub wins: u8,
}

impl HistoryClassKey {
    pub const ROOT: HistoryClassKey = HistoryClassKey {
        played1: PlayerSet::EMPTY,
        played2: PlayerSet::EMPTY,
        wins: 0,
    };

    pub fn new(played1: PlayerSet, played2: PlayerSet, wins: u8) -> HistoryClassKey {
        HistoryClassKey { played1, played2, wins }
    }

    pub fn round(&self) -> usize {
        self.played1.len()
    }

    pub fn played(&self, team: Team) -> PlayerSet {
        match team {
            Team::One => self.played1,
            Team::Two => self.played2,
        }
    }

    /// The class reached after `a` meets `b`, with team one winning or not.
    pub fn advance(&self, a: usize, b: usize, team1_wins: bool) -> HistoryClassKey {
        HistoryClassKey {
            played1: self.played1.with(a),
            played2: self.played2.with(b),
            wins: self.wins + u8::from(team1_wins),
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.played1.len() == self.played2.len() && usize::from(self.wins) <= self.played1.len()
    }
}

impl fmt::Display for HistoryClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(k={}, X={}, Y={}, w={})", self.round(), self.played1, self.played2, self.wins)
    }
}

/// Win probabilities of team-one players (rows) against team-two players
/// (columns). Every entry lies in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrengthMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl StrengthMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<StrengthMatrix> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::Size("strength matrix has no rows".into()));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::Size("strength matrix has no columns".into()));
        }
        let mut entries = Vec::with_capacity(m * n);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!(
                    "P row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, p) in row.into_iter().enumerate() {
                if !rational::is_probability(&p) {
                    return Err(Error::Range(format!("P[{}][{}] = {p} is outside [0, 1]", i + 1, j + 1)));
                }
                entries.push(p);
            }
        }
        Ok(StrengthMatrix { rows: m, cols: n, entries })
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_ratios(rows: &[&[(i64, i64)]]) -> Result<StrengthMatrix> {
        StrengthMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&(n, d)| rational::ratio(n, d)).collect())
                .collect(),
        )
    }

    /// Convenience constructor from integer entries (0 or 1 in practice).
    pub fn from_ints(rows: &[&[i64]]) -> Result<StrengthMatrix> {
        StrengthMatrix::new(rows.iter().map(|r| r.iter().map(|&v| rational::int(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Column `j` seen from team two: the probabilities that `B_j` wins.
    pub fn column_win_probs(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| Rational::one() - self.get(i, j)).collect()
    }

    pub fn without_rows(&self, drop: PlayerSet) -> Result<StrengthMatrix> {
        StrengthMatrix::new(
            (0..self.rows)
                .filter(|&i| !drop.contains(i))
                .map(|i| self.row(i).to_vec())
                .collect(),
        )
    }

    pub fn without_cols(&self, drop: PlayerSet) -> Result<StrengthMatrix> {
        StrengthMatrix::new(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols)
                        .filter(|&j| !drop.contains(j))
                        .map(|j| self.get(i, j).clone())
                        .collect()
                })
                .collect(),
        )
    }

    /// Appends `count` rows of zeros (players who never win).
    pub fn with_zero_rows(&self, count: usize) -> StrengthMatrix {
        let mut entries = self.entries.clone();
        entries.extend(std::iter::repeat_with(Rational::zero).take(count * self.cols));
        StrengthMatrix {
            rows: self.rows + count,
            cols: self.cols,
            entries,
        }
    }

    /// The same competition with the teams' roles exchanged:
    /// entry `(j, i)` becomes `1 - P[i][j]`.
    pub fn mirrored(&self) -> StrengthMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(Rational::one() - self.get(i, j));
            }
        }
        StrengthMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn permute_rows(&self, order: &[usize]) -> StrengthMatrix {
        assert_eq!(order.len(), self.rows);
        let mut entries = Vec::with_capacity(self.entries.len());
        for &i in order {
            entries.extend_from_slice(self.row(i));
        }
        StrengthMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }
}

/// Team-one utility for each possible final win count `t = 0..=T`.
/// Team two's utility is the negation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UtilityTable {
    values: Vec<Rational>,
}

impl UtilityTable {
    pub fn new(values: Vec<Rational>) -> Result<UtilityTable> {
        if values.is_empty() {
            return Err(Error::Shape("utility table is empty".into()));
        }
        Ok(UtilityTable { values })
    }

    /// Expected-wins utility `t - T/2`.
    pub fn expected_wins(rounds: usize) -> Result<UtilityTable> {
        if rounds < 1 {
            return Err(Error::Size("round count must be at least 1".into()));
        }
        let half = rational::ratio(rounds as i64, 2);
        Ok(UtilityTable {
            values: (0..=rounds).map(|t| rational::int(t as i64) - &half).collect(),
        })
    }

    /// Majority utility: 1 for a strict majority of rounds, 0 for a tie, -1 otherwise.
    pub fn majority(rounds: usize) -> Result<UtilityTable> {
        if rounds < 1 {
            return Err(Error::Size("round count must be at least 1".into()));
        }
        Ok(UtilityTable {
            values: (0..=rounds)
                .map(|t| match (2 * t).cmp(&rounds) {
                    std::cmp::Ordering::Greater => rational::int(1),
                    std::cmp::Ordering::Equal => rational::int(0),
                    std::cmp::Ordering::Less => rational::int(-1),
                })
                .collect(),
        })
    }

    /// `1` when team one wins at least `needed` rounds, `-1` otherwise.
    pub fn threshold(rounds: usize, needed: usize) -> UtilityTable {
        UtilityTable {
            values: (0..=rounds)
                .map(|t| if t >= needed { rational::int(1) } else { rational::int(-1) })
                .collect(),
        }
    }

    pub fn rounds(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, wins: usize) -> &Rational {
        &self.values[wins]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `U(t) + U(T - t) = 0` for every `t`.
    pub fn is_antisymmetric(&self) -> bool {
        let t_max = self.rounds();
        (0..=t_max).all(|t| (&self.values[t] + &self.values[t_max - t]).is_zero())
    }

    /// The condition `U(T) + U(T - t) = 0` for every `t`, read literally.
    pub fn literal_form_holds(&self) -> bool {
        let t_max = self.rounds();
        (0..=t_max).all(|t| (&self.values[t_max] + &self.values[t_max - t]).is_zero())
    }

    pub fn is_monotone(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn min_value(&self) -> &Rational {
        self.values.iter().min().expect("nonempty")
    }

    pub fn max_value(&self) -> &Rational {
        self.values.iter().max().expect("nonempty")
    }

    /// Names the table when it coincides with one of the standard forms.
    pub fn standard_name(&self) -> Option<UtilityKind> {
        let rounds = self.rounds();
        if rounds >= 1 {
            if UtilityTable::expected_wins(rounds).ok().as_ref() == Some(self) {
                return Some(UtilityKind::ExpectedWins);
            }
            if UtilityTable::majority(rounds).ok().as_ref() == Some(self) {
                return Some(UtilityKind::Majority);
            }
        }
        None
    }
}

/// The two standard utility shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UtilityKind {
    #[serde(rename = "UE")]
    ExpectedWins,
    #[serde(rename = "UM")]
    Majority,
}

impl UtilityKind {
    pub fn table(self, rounds: usize) -> Result<UtilityTable> {
        match self {
            UtilityKind::ExpectedWins => UtilityTable::expected_wins(rounds),
            UtilityKind::Majority => UtilityTable::majority(rounds),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            UtilityKind::ExpectedWins => "UE",
            UtilityKind::Majority => "UM",
        }
    }
}

impl std::str::FromStr for UtilityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "UE" | "E" => Ok(UtilityKind::ExpectedWins),
            "UM" | "M" => Ok(UtilityKind::Majority),
            _ => Err(Error::parse("utility", format!("expected UE or UM, got {s:?}"))),
        }
    }
}

/// A validated competition `G(T, P, U)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GameSpec {
    rounds: usize,
    strength: StrengthMatrix,
    utility: UtilityTable,
}

/// Flags reported by [`GameSpec::validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpecCheck {
    /// `U(t) + U(T - t) = 0` for all `t`.
    pub antisymmetric: bool,
    /// The literal `U(T) + U(T - t) = 0` form.
    pub literal_form: bool,
    pub monotone: bool,
}

impl GameSpec {
    pub fn new(rounds: usize, strength: StrengthMatrix, utility: UtilityTable) -> Result<GameSpec> {
        let spec = GameSpec {
            rounds,
            strength,
            utility,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_kind(rounds: usize, strength: StrengthMatrix, kind: UtilityKind) -> Result<GameSpec> {
        GameSpec::new(rounds, strength, kind.table(rounds)?)
    }

    /// Re-checks every invariant and reports the utility flags.
    pub fn validate(&self) -> Result<SpecCheck> {
        let (m, n) = (self.strength.rows(), self.strength.cols());
        if self.rounds < 1 {
            return Err(Error::Size("T must be at least 1".into()));
        }
        if m > MAX_PLAYERS || n > MAX_PLAYERS {
            return Err(Error::Size(format!("team sizes {m}x{n} exceed the limit of {MAX_PLAYERS}")));
        }
        if self.rounds > m.min(n) {
            return Err(Error::Size(format!("T = {} exceeds min(m, n) = {}", self.rounds, m.min(n))));
        }
        if self.utility.rounds() != self.rounds {
            return Err(Error::Shape(format!(
                "utility table has {} entries, expected T + 1 = {}",
                self.utility.values().len(),
                self.rounds + 1
            )));
        }
        for i in 0..m {
            for (j, p) in self.strength.row(i).iter().enumerate() {
                if !rational::is_probability(p) {
                    return Err(Error::Range(format!("P[{}][{}] = {p} is outside [0, 1]", i + 1, j + 1)));
                }
            }
        }
        Ok(SpecCheck {
            antisymmetric: self.utility.is_antisymmetric(),
            literal_form: self.utility.literal_form_holds(),
            monotone: self.utility.is_monotone(),
        })
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn strength(&self) -> &StrengthMatrix {
        &self.strength
    }

    pub fn utility(&self) -> &UtilityTable {
        &self.utility
    }

    /// Team one's player count `m`.
    pub fn team1_size(&self) -> usize {
        self.strength.rows()
    }

    /// Team two's player count `n`.
    pub fn team2_size(&self) -> usize {
        self.strength.cols()
    }

    pub fn team_size(&self, team: Team) -> usize {
        match team {
            Team::One => self.team1_size(),
            Team::Two => self.team2_size(),
        }
    }

    pub fn win_prob(&self, a: usize, b: usize) -> &Rational {
        self.strength.get(a, b)
    }

    pub fn has_redundant_players(&self) -> bool {
        self.team1_size() != self.rounds || self.team2_size() != self.rounds
    }

    /// Same rounds and strength with a different utility table.
    pub fn with_utility(&self, utility: UtilityTable) -> Result<GameSpec> {
        GameSpec::new(self.rounds, self.strength.clone(), utility)
    }

    pub fn with_strength(&self, strength: StrengthMatrix) -> Result<GameSpec> {
        GameSpec::new(self.rounds, strength, self.utility.clone())
    }

    /// The mirrored game: teams swap roles, `P` is transposed through
    /// `p -> 1 - p`, and utilities are re-expressed from the new team one's side.
    pub fn mirrored(&self) -> GameSpec {
        let t = self.rounds;
        let values = (0..=t).map(|w| -self.utility.value(t - w).clone()).collect();
        GameSpec {
            rounds: t,
            strength: self.strength.mirrored(),
            utility: UtilityTable { values },
        }
    }

    /// Total number of history classes `sum_k C(m,k) C(n,k) (k+1)`.
    pub fn class_count(&self) -> u128 {
        (0..=self.rounds)
            .map(|k| binomial(self.team1_size(), k) * binomial(self.team2_size(), k) * (k as u128 + 1))
            .sum()
    }
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// True when every entry of `weaker` is `<=` the matching entry of `stronger`.
pub fn componentwise_le(weaker: &[Rational], stronger: &[Rational]) -> bool {
    weaker.iter().zip(stronger).all(|(a, b)| a <= b)
}

pub(crate) fn is_distribution(weights: &[Rational]) -> bool {
    weights.iter().all(|w| !w.is_negative()) && weights.iter().sum::<Rational>().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn card_game() -> GameSpec {
        let p = StrengthMatrix::from_ints(&[&[1, 0, 0], &[0, 1, 1], &[0, 1, 1]]).unwrap();
        GameSpec::with_kind(3, p, UtilityKind::Majority).unwrap()
    }

    #[test]
    fn card_game_is_valid_and_antisymmetric() {
        let check = card_game().validate().unwrap();
        assert!(check.antisymmetric);
        assert!(check.monotone);
    }

    #[test]
    fn minimal_instance() {
        let p = StrengthMatrix::from_ratios(&[&[(1, 2)]]).unwrap();
        let spec = GameSpec::with_kind(1, p, UtilityKind::ExpectedWins).unwrap();
        assert!(spec.validate().unwrap().antisymmetric);
    }

    #[test]
    fn out_of_range_entry() {
        let err = StrengthMatrix::from_ints(&[&[1, 0], &[0, 2]]).unwrap_err();
        assert!(matches!(err, Error::Range(_)));
    }

    #[test]
    fn size_and_shape_errors() {
        let p = StrengthMatrix::from_ints(&[&[1, 0], &[0, 1]]).unwrap();
        assert!(matches!(
            GameSpec::with_kind(3, p.clone(), UtilityKind::ExpectedWins),
            Err(Error::Size(_))
        ));
        assert!(matches!(
            GameSpec::new(0, p.clone(), UtilityTable::new(vec![int(0)]).unwrap()),
            Err(Error::Size(_))
        ));
        assert!(matches!(
            GameSpec::new(2, p, UtilityTable::expected_wins(1).unwrap()),
            Err(Error::Shape(_))
        ));
        let ragged = StrengthMatrix::new(vec![vec![int(0), int(1)], vec![int(1)]]);
        assert!(matches!(ragged, Err(Error::Shape(_))));
        let big = StrengthMatrix::new(vec![vec![int(0); 21]]).unwrap();
        assert!(matches!(
            GameSpec::with_kind(1, big, UtilityKind::ExpectedWins),
            Err(Error::Size(_))
        ));
    }

    #[test]
    fn expected_wins_tables() {
        assert_eq!(UtilityTable::expected_wins(2).unwrap().values(), &[int(-1), int(0), int(1)]);
        assert_eq!(
            UtilityTable::expected_wins(3).unwrap().values(),
            &[ratio(-3, 2), ratio(-1, 2), ratio(1, 2), ratio(3, 2)]
        );
        assert!(UtilityTable::expected_wins(0).is_err());
    }

    #[test]
    fn majority_tables() {
        assert_eq!(UtilityTable::majority(3).unwrap().values(), &[int(-1), int(-1), int(1), int(1)]);
        assert_eq!(UtilityTable::majority(2).unwrap().values(), &[int(-1), int(0), int(1)]);
        assert!(UtilityTable::majority(0).is_err());
    }

    #[test]
    fn two_rounds_ue_equals_um() {
        assert_eq!(UtilityTable::expected_wins(2).unwrap(), UtilityTable::majority(2).unwrap());
    }

    #[test]
    fn standard_tables_are_antisymmetric() {
        for t in 1..=9 {
            assert!(UtilityTable::expected_wins(t).unwrap().is_antisymmetric());
            assert!(UtilityTable::majority(t).unwrap().is_antisymmetric());
        }
        // threshold tables generally are not
        assert!(!UtilityTable::threshold(3, 1).is_antisymmetric());
    }

    #[test]
    fn literal_form_is_reported_separately() {
        let u = UtilityTable::expected_wins(2).unwrap();
        assert!(u.is_antisymmetric());
        assert!(!u.literal_form_holds());
    }

    #[test]
    fn validate_is_idempotent() {
        let spec = card_game();
        assert_eq!(spec.validate().unwrap(), spec.validate().unwrap());
    }

    #[test]
    fn player_set_subsets() {
        let subsets = PlayerSet::subsets_of_size(5, 2);
        assert_eq!(subsets.len(), 10);
        assert!(subsets.iter().all(|s| s.len() == 2));
        assert_eq!(PlayerSet::subsets_of_size(3, 0), vec![PlayerSet::EMPTY]);
        assert_eq!(PlayerSet::subsets_of_size(20, 10).len(), 184_756);
        let s = PlayerSet::from_players([0, 3, 4]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3, 4]);
        assert_eq!(s.complement(5).iter().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(s.to_string(), "{1,4,5}");
    }

    #[test]
    fn mirrored_twice_is_identity() {
        let spec = card_game();
        assert_eq!(spec.mirrored().mirrored(), spec);
    }

    #[test]
    fn class_count_matches_formula() {
        let spec = card_game();
        // k=0:1, k=1: 9*2, k=2: 9*3, k=3: 1*4
        assert_eq!(spec.class_count(), 1 + 18 + 27 + 4);
    }
}
