//! Named reference instances.

use crate::error::{Error, Result};
use crate::model::{GameSpec, StrengthMatrix, UtilityKind};
use crate::rational;

/// Three-card suit-matching game: one heart and two spades per side, team one
/// wins a round when the suits match, majority utility.
pub fn card_game() -> GameSpec {
    let p = StrengthMatrix::from_ints(&[&[1, 0, 0], &[0, 1, 1], &[0, 1, 1]]).expect("valid");
    GameSpec::with_kind(3, p, UtilityKind::Majority).expect("valid")
}

/// Two rounds, team two has a redundant player; uniform play is not optimal
/// for team one.
pub fn selection_example() -> GameSpec {
    let p = StrengthMatrix::from_ints(&[&[0, 0, 1], &[1, 1, 0]]).expect("valid");
    GameSpec::with_kind(2, p, UtilityKind::ExpectedWins).expect("valid")
}

/// Three-by-three, two rounds, `A_3` never wins.
pub fn dominated_helps() -> GameSpec {
    let p = StrengthMatrix::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]).expect("valid");
    GameSpec::with_kind(2, p, UtilityKind::ExpectedWins).expect("valid")
}

/// Identity strengths for three rounds plus one dominated team-one player.
pub fn largest_loss(kind: UtilityKind) -> GameSpec {
    let p = StrengthMatrix::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]).expect("valid");
    GameSpec::with_kind(3, p, kind).expect("valid")
}

/// `m = T`, `n = T + extra`, `P[i][j] = 1` iff `i = j`.
fn diagonal(rounds: usize, extra: usize, kind: UtilityKind) -> Result<GameSpec> {
    let n = rounds + extra;
    let rows = (0..rounds)
        .map(|i| (0..n).map(|j| rational::int(i64::from(i == j))).collect())
        .collect();
    GameSpec::with_kind(rounds, StrengthMatrix::new(rows)?, kind)
}

/// Base instance for the expected-wins recruiting claims: team two has `T - 1`
/// extra unbeatable players.
pub fn recruit_ue_base(rounds: usize) -> Result<GameSpec> {
    diagonal(rounds, rounds.saturating_sub(1), UtilityKind::ExpectedWins)
}

/// Base instance for the majority recruiting claims: team two has `floor(T/2)`
/// extra unbeatable players.
pub fn recruit_um_base(rounds: usize) -> Result<GameSpec> {
    diagonal(rounds, rounds / 2, UtilityKind::Majority)
}

/// Resolves `card`, `ex1`, `ex2`, `ex3`, `ex4:T`, `ex5:T`. `utility`
/// overrides the fixture's default table.
pub fn named(name: &str, utility: Option<UtilityKind>) -> Result<GameSpec> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a)),
        None => (name, None),
    };
    let rounds = |default: usize| -> Result<usize> {
        match arg {
            None => Ok(default),
            Some(a) => a
                .parse()
                .map_err(|_| Error::parse("example", format!("bad round count in {name:?}"))),
        }
    };
    let spec = match base {
        "card" => card_game(),
        "ex1" => selection_example(),
        "ex2" => dominated_helps(),
        "ex3" => largest_loss(UtilityKind::Majority),
        "ex4" => recruit_ue_base(rounds(3)?)?,
        "ex5" => recruit_um_base(rounds(3)?)?,
        _ => {
            return Err(Error::parse(
                "example",
                format!("unknown example {name:?} (card, ex1, ex2, ex3, ex4:T, ex5:T)"),
            ))
        }
    };
    match utility {
        Some(kind) => spec.with_utility(kind.table(spec.rounds())?),
        None => Ok(spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        assert_eq!(named("card", None).unwrap(), card_game());
        assert_eq!(named("ex3", Some(UtilityKind::ExpectedWins)).unwrap(), largest_loss(UtilityKind::ExpectedWins));
        let ex4 = named("ex4:4", None).unwrap();
        assert_eq!((ex4.team1_size(), ex4.team2_size(), ex4.rounds()), (4, 7, 4));
        let ex5 = named("ex5:5", None).unwrap();
        assert_eq!((ex5.team1_size(), ex5.team2_size()), (5, 7));
        assert!(named("ex9", None).is_err());
        assert!(named("ex4:x", None).is_err());
    }
}
