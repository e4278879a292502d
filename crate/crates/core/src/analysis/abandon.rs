use crate::error::{Error, Result};
use crate::model::{GameSpec, PlayerSet, Team, MAX_PLAYERS};
use crate::rational::Rational;
use crate::solver::game_value;

/// The same competition with `players` of `team` removed before play.
pub fn abandon(spec: &GameSpec, team: Team, players: PlayerSet) -> Result<GameSpec> {
    let size = spec.team_size(team);
    if let Some(p) = players.iter().find(|&p| p >= size) {
        return Err(Error::Index(format!("team {team} has no player {}", p + 1)));
    }
    let remaining = size - players.len();
    if remaining < spec.rounds() {
        return Err(Error::Size(format!(
            "only {remaining} players of team {team} would remain for {} rounds",
            spec.rounds()
        )));
    }
    if players.is_empty() {
        return Ok(spec.clone());
    }
    let strength = match team {
        Team::One => spec.strength().without_rows(players)?,
        Team::Two => spec.strength().without_cols(players)?,
    };
    spec.with_strength(strength)
}

/// How much `team` loses, in its own utility, by abandoning `players`.
/// Positive means the abandoned players were helping.
pub fn abandonment_delta(spec: &GameSpec, team: Team, players: PlayerSet, budget: u128) -> Result<Rational> {
    let reduced = abandon(spec, team, players)?;
    let full = game_value(spec, budget)?;
    let without = game_value(&reduced, budget)?;
    Ok(match team {
        Team::One => full - without,
        Team::Two => without - full,
    })
}

/// Appends `count` team-one players who lose every match.
pub fn add_dominated(spec: &GameSpec, count: usize) -> Result<GameSpec> {
    if spec.team1_size() + count > MAX_PLAYERS {
        return Err(Error::Size(format!(
            "{} + {count} players exceeds the limit of {MAX_PLAYERS}",
            spec.team1_size()
        )));
    }
    spec.with_strength(spec.strength().with_zero_rows(count))
}
