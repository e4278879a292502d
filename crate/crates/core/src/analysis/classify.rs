use num_traits::{One, Zero};
use serde::Serialize;

use crate::model::{componentwise_le, GameSpec, Team};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PlayerFlags {
    /// Weaker than (or equal to) every teammate.
    pub weakest: bool,
    /// Never wins against any opponent.
    pub dominated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TeamClassification {
    pub team: Team,
    pub players: Vec<PlayerFlags>,
    pub transitive: bool,
    /// Zero-based player indices from strongest to weakest, when transitive.
    pub ranking: Option<Vec<usize>>,
}

impl TeamClassification {
    /// The `count` strongest players (requires transitivity).
    pub fn top(&self, count: usize) -> Option<Vec<usize>> {
        self.ranking.as_ref().map(|r| r[..count.min(r.len())].to_vec())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlayerClassification {
    pub team1: TeamClassification,
    pub team2: TeamClassification,
}

impl PlayerClassification {
    pub fn team(&self, team: Team) -> &TeamClassification {
        match team {
            Team::One => &self.team1,
            Team::Two => &self.team2,
        }
    }
}

/// Each player's own win probabilities against every opponent.
pub(crate) fn win_profiles(spec: &GameSpec, team: Team) -> Vec<Vec<Rational>> {
    let p = spec.strength();
    match team {
        Team::One => p.to_rows(),
        Team::Two => (0..p.cols()).map(|j| p.column_win_probs(j)).collect(),
    }
}

/// `i` is weaker than `j` (non-strict).
pub fn weaker(spec: &GameSpec, team: Team, i: usize, j: usize) -> bool {
    let profiles = win_profiles(spec, team);
    componentwise_le(&profiles[i], &profiles[j])
}

fn classify_team(spec: &GameSpec, team: Team) -> TeamClassification {
    let profiles = win_profiles(spec, team);
    let size = profiles.len();
    let players = (0..size)
        .map(|i| PlayerFlags {
            weakest: (0..size).all(|j| j == i || componentwise_le(&profiles[i], &profiles[j])),
            dominated: profiles[i].iter().all(Zero::is_zero),
        })
        .collect();
    // A chain under componentwise order is also sorted by row sum, so sorting
    // by sum and checking neighbours decides transitivity.
    let sums: Vec<Rational> = profiles.iter().map(|r| r.iter().sum()).collect();
    let mut order: Vec<usize> = (0..size).collect();
    order.sort_by(|&a, &b| sums[b].cmp(&sums[a]).then(a.cmp(&b)));
    let transitive = order
        .windows(2)
        .all(|w| componentwise_le(&profiles[w[1]], &profiles[w[0]]));
    TeamClassification {
        team,
        players,
        transitive,
        ranking: transitive.then_some(order),
    }
}

pub fn classify(spec: &GameSpec) -> PlayerClassification {
    PlayerClassification {
        team1: classify_team(spec, Team::One),
        team2: classify_team(spec, Team::Two),
    }
}

/// True when every team-one player never wins (used by the recruiting checks).
pub fn is_dominated_row(row: &[Rational]) -> bool {
    row.iter().all(Zero::is_zero)
}

/// True when team-two player's column is all ones.
pub fn is_dominated_col(spec: &GameSpec, j: usize) -> bool {
    (0..spec.team1_size()).all(|i| spec.win_prob(i, j).is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::{StrengthMatrix, UtilityKind};
    use proptest::prelude::*;

    fn spec(rows: &[&[i64]], t: usize) -> GameSpec {
        GameSpec::with_kind(t, StrengthMatrix::from_ints(rows).unwrap(), UtilityKind::ExpectedWins).unwrap()
    }

    #[test]
    fn dominated_player_in_nontransitive_team() {
        let c = classify(&fixtures::dominated_helps());
        assert!(c.team1.players[2].dominated);
        assert!(c.team1.players[2].weakest);
        assert!(!c.team1.transitive);
        assert!(c.team1.ranking.is_none());
    }

    #[test]
    fn identical_zero_rows() {
        let c = classify(&spec(&[&[0, 0], &[0, 0]], 2));
        assert!(c.team1.transitive);
        assert!(c.team1.players.iter().all(|p| p.weakest && p.dominated));
        // every team-two player always wins: columns of zeros are not dominated
        assert!(c.team2.players.iter().all(|p| !p.dominated));
    }

    #[test]
    fn simple_chain() {
        let c = classify(&spec(&[&[1, 1], &[1, 0], &[0, 0]], 2));
        assert!(c.team1.transitive);
        assert_eq!(c.team1.ranking, Some(vec![0, 1, 2]));
        assert!(c.team1.players[2].weakest && c.team1.players[2].dominated);
        assert!(!c.team1.players[0].weakest);
    }

    #[test]
    fn team_two_uses_its_own_win_probabilities() {
        // B_2 always loses, B_1 always wins
        let c = classify(&spec(&[&[0, 1], &[0, 1]], 2));
        assert!(c.team2.transitive);
        assert_eq!(c.team2.ranking, Some(vec![0, 1]));
        assert!(c.team2.players[1].dominated && c.team2.players[1].weakest);
    }

    fn arb_rows() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..4).prop_flat_map(|(m, n)| {
            proptest::collection::vec(proptest::collection::vec(0i64..3, n), m)
        })
    }

    fn to_spec(rows: &[Vec<i64>]) -> GameSpec {
        let m = StrengthMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| crate::rational::ratio(v, 2)).collect())
                .collect(),
        )
        .unwrap();
        GameSpec::with_kind(1, m, UtilityKind::ExpectedWins).unwrap()
    }

    proptest! {
        #[test]
        fn mutual_weakness_means_identical_rows(rows in arb_rows()) {
            let s = to_spec(&rows);
            for i in 0..rows.len() {
                for j in 0..rows.len() {
                    if weaker(&s, Team::One, i, j) && weaker(&s, Team::One, j, i) {
                        prop_assert_eq!(&rows[i], &rows[j]);
                    }
                }
            }
        }

        #[test]
        fn flags_follow_row_permutations(rows in arb_rows(), seed in 0u64..1000) {
            let s = to_spec(&rows);
            let mut order: Vec<usize> = (0..rows.len()).collect();
            let mut rng = crate::generate::instance_rng(seed, 0);
            rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut rng);
            let permuted = s.with_strength(s.strength().permute_rows(&order)).unwrap();
            let a = classify(&s);
            let b = classify(&permuted);
            prop_assert_eq!(a.team1.transitive, b.team1.transitive);
            for (new_pos, &old) in order.iter().enumerate() {
                prop_assert_eq!(a.team1.players[old], b.team1.players[new_pos]);
            }
        }

        #[test]
        fn transitivity_matches_pairwise_definition(rows in arb_rows()) {
            let s = to_spec(&rows);
            let m = rows.len();
            // brute force: some permutation forms a chain
            let brute = crate::evaluate::permutations(m).into_iter().any(|perm| {
                perm.windows(2).all(|w| weaker(&s, Team::One, w[1], w[0]))
            });
            prop_assert_eq!(classify(&s).team1.transitive, brute);
        }
    }
}
