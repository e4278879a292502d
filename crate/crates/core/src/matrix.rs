//! Exact solution of finite zero-sum matrix games.
//!
//! The row player maximizes. Payoffs are shifted so every entry is positive,
//! after which the column player's problem
//!
//! ```text
//! maximize  sum_j v_j   subject to   M' v <= 1,  v >= 0
//! ```
//!
//! is solved with a dense primal simplex tableau in exact integer arithmetic, using
//! Bland's rule for both the entering and the leaving variable. The row
//! player's strategy is read off the slack columns of the final objective row.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::is_distribution;
use crate::rational::Rational;

/// A zero-sum game in normal form; entries are the row player's payoffs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixGame {
    rows: usize,
    cols: usize,
    payoff: Vec<Rational>,
}

impl MatrixGame {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<MatrixGame> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::Size("matrix game must have at least one row and one column".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged payoff matrix".into()));
        }
        Ok(MatrixGame {
            rows: r,
            cols: c,
            payoff: rows.into_iter().flatten().collect(),
        })
    }

    pub(crate) fn from_flat(rows: usize, cols: usize, payoff: Vec<Rational>) -> MatrixGame {
        debug_assert_eq!(payoff.len(), rows * cols);
        MatrixGame { rows, cols, payoff }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.payoff[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.payoff[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn min_entry(&self) -> &Rational {
        self.payoff.iter().min().expect("nonempty")
    }

    pub fn max_entry(&self) -> &Rational {
        self.payoff.iter().max().expect("nonempty")
    }

    /// `a * M + b` entrywise.
    pub fn affine(&self, a: &Rational, b: &Rational) -> MatrixGame {
        MatrixGame {
            rows: self.rows,
            cols: self.cols,
            payoff: self.payoff.iter().map(|v| a * v + b).collect(),
        }
    }

    pub fn without_row(&self, drop: usize) -> MatrixGame {
        MatrixGame::new((0..self.rows).filter(|&i| i != drop).map(|i| self.row(i).to_vec()).collect())
            .expect("at least one row remains")
    }

    /// `(x^T M)_j` for every column `j`.
    pub fn row_mixture_payoffs(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| &x[i] * self.get(i, j)).sum())
            .collect()
    }

    /// `(M y)_i` for every row `i`.
    pub fn col_mixture_payoffs(&self, y: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(y).map(|(m, w)| m * w).sum())
            .collect()
    }
}

/// Value and one pair of optimal mixed strategies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixSolution {
    pub value: Rational,
    pub row_strategy: Vec<Rational>,
    pub col_strategy: Vec<Rational>,
}

/// Solves `game` exactly. Deterministic for a fixed input.
pub fn solve_matrix(game: &MatrixGame) -> MatrixSolution {
    if game.rows == 1 || game.cols == 1 {
        return solve_degenerate(game);
    }
    if let Some(solution) = saddle_point(game) {
        return solution;
    }
    let shift = Rational::one() - game.min_entry();
    let shift = if shift.is_positive() { shift } else { Rational::zero() };
    solve_tableau(game, &shift)
}

/// One row or one column: the value is a pure max/min and strategies are pure.
fn solve_degenerate(game: &MatrixGame) -> MatrixSolution {
    if game.rows == 1 {
        let (j, v) = argmin(game.row(0));
        MatrixSolution {
            value: v.clone(),
            row_strategy: vec![Rational::one()],
            col_strategy: unit(game.cols, j),
        }
    } else {
        let column: Vec<Rational> = (0..game.rows).map(|i| game.get(i, 0).clone()).collect();
        let (i, v) = argmax(&column);
        MatrixSolution {
            value: v.clone(),
            row_strategy: unit(game.rows, i),
            col_strategy: vec![Rational::one()],
        }
    }
}

/// Pure solution when the best row floor meets the best column ceiling.
fn saddle_point(game: &MatrixGame) -> Option<MatrixSolution> {
    let floors: Vec<Rational> = (0..game.rows).map(|i| argmin(game.row(i)).1.clone()).collect();
    let (i, lower) = argmax(&floors);
    let ceilings: Vec<Rational> = (0..game.cols)
        .map(|j| {
            let column: Vec<Rational> = (0..game.rows).map(|r| game.get(r, j).clone()).collect();
            argmax(&column).1.clone()
        })
        .collect();
    let (j, upper) = argmin(&ceilings);
    (lower == upper).then(|| MatrixSolution {
        value: lower.clone(),
        row_strategy: unit(game.rows, i),
        col_strategy: unit(game.cols, j),
    })
}

fn unit(len: usize, at: usize) -> Vec<Rational> {
    (0..len).map(|k| if k == at { Rational::one() } else { Rational::zero() }).collect()
}

/// First index attaining the minimum.
fn argmin(values: &[Rational]) -> (usize, &Rational) {
    let mut best = 0;
    for (k, v) in values.iter().enumerate().skip(1) {
        if v < &values[best] {
            best = k;
        }
    }
    (best, &values[best])
}

/// First index attaining the maximum.
fn argmax(values: &[Rational]) -> (usize, &Rational) {
    let mut best = 0;
    for (k, v) in values.iter().enumerate().skip(1) {
        if v > &values[best] {
            best = k;
        }
    }
    (best, &values[best])
}

/// Integer type for the pivoting tableau. Arithmetic reports overflow with
/// `None` so a machine-word run can fall back to arbitrary precision.
trait PivotInt: Clone + Ord + Sized {
    fn small(v: i64) -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
    /// Division known to be exact.
    fn div_exact(&self, other: &Self) -> Self;
    fn signum_i8(&self) -> i8;
}

impl PivotInt for i128 {
    fn small(v: i64) -> Self {
        v.into()
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        self.checked_sub(*other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn signum_i8(&self) -> i8 {
        self.signum() as i8
    }
}

impl PivotInt for BigInt {
    fn small(v: i64) -> Self {
        v.into()
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn signum_i8(&self) -> i8 {
        match self.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

/// Shifted payoffs as one integer matrix `scale * M'`.
struct IntegralGame {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
    scale: BigInt,
}

impl IntegralGame {
    fn new(game: &MatrixGame, shift: &Rational) -> IntegralGame {
        let shifted: Vec<Rational> = game.payoff.iter().map(|v| v + shift).collect();
        let scale = shifted.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let entries = shifted.iter().map(|v| v.numer() * (&scale / v.denom())).collect();
        IntegralGame {
            rows: game.rows,
            cols: game.cols,
            entries,
            scale,
        }
    }
}

/// Dense simplex tableau for `(scale * M') v + s = scale`, kept in integers.
///
/// Entries are the true tableau entries multiplied by `det`, the last pivot
/// element (initially 1). Each pivot updates the other rows with
/// `(t[i][k] * p - t[i][e] * t[l][k]) / det`, a division that is always exact,
/// so no fraction is ever reduced inside the loop.
struct Tableau<N> {
    rows: usize,
    cols: usize,
    // rows x (cols + rows) constraint coefficients
    a: Vec<Vec<N>>,
    rhs: Vec<N>,
    // scaled reduced costs of the objective row; negative means improving
    obj: Vec<N>,
    obj_value: N,
    det: N,
    basis: Vec<usize>,
}

impl<N: PivotInt> Tableau<N> {
    fn new(game: &IntegralGame) -> Option<Tableau<N>> {
        let (r, c) = (game.rows, game.cols);
        let mut a = Vec::with_capacity(r);
        for i in 0..r {
            let mut line = Vec::with_capacity(c + r);
            for v in &game.entries[i * c..(i + 1) * c] {
                line.push(N::from_big(v)?);
            }
            line.extend((0..r).map(|k| N::small(i64::from(k == i))));
            a.push(line);
        }
        let mut obj = vec![N::small(-1); c];
        obj.extend((0..r).map(|_| N::small(0)));
        Some(Tableau {
            rows: r,
            cols: c,
            a,
            rhs: vec![N::from_big(&game.scale)?; r],
            obj,
            obj_value: N::small(0),
            det: N::small(1),
            basis: (c..c + r).collect(),
        })
    }

    /// Runs to optimality; `None` on overflow.
    fn run(&mut self) -> Option<()> {
        // Bland's rule guarantees termination; the problem is feasible at the
        // origin and bounded because every shifted payoff is positive.
        while let Some(enter) = self.obj.iter().position(|v| v.signum_i8() < 0) {
            let leave = self.leaving_row(enter)?.expect("bounded LP always has a leaving row");
            self.pivot(leave, enter)?;
        }
        Some(())
    }

    fn leaving_row(&self, enter: usize) -> Option<Option<usize>> {
        let mut best: Option<usize> = None;
        for i in 0..self.rows {
            if self.a[i][enter].signum_i8() <= 0 {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    // rhs[i] / a[i][e] against rhs[b] / a[b][e], both denominators positive
                    let lhs = self.rhs[i].mul(&self.a[b][enter])?;
                    let rhs = self.rhs[b].mul(&self.a[i][enter])?;
                    if lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[b]) {
                        Some(i)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        Some(best)
    }

    fn pivot(&mut self, leave: usize, enter: usize) -> Option<()> {
        let width = self.cols + self.rows;
        let p = self.a[leave][enter].clone();
        let pivot_row = self.a[leave].clone();
        let pivot_rhs = self.rhs[leave].clone();
        let det = &self.det;
        let update = |line: &mut [N], rhs: &mut N| -> Option<()> {
            let factor = line[enter].clone();
            for k in 0..width {
                let v = line[k].mul(&p)?.sub(&factor.mul(&pivot_row[k])?)?;
                line[k] = v.div_exact(det);
            }
            let v = rhs.mul(&p)?.sub(&factor.mul(&pivot_rhs)?)?;
            *rhs = v.div_exact(det);
            Some(())
        };
        for i in 0..self.rows {
            if i != leave {
                let (line, rhs) = (&mut self.a[i], &mut self.rhs[i]);
                update(line, rhs)?;
            }
        }
        update(&mut self.obj, &mut self.obj_value)?;
        self.det = p;
        self.basis[leave] = enter;
        Some(())
    }

    fn extract(&self, scale: &BigInt, shift: &Rational) -> MatrixSolution {
        // sum_j v_j = obj_value / det is the reciprocal of the shifted value,
        // so v_j / sum = rhs / obj_value, and the slack duals of the scaled
        // constraints give the row strategy as obj * scale / obj_value
        let total = self.obj_value.to_big();
        let mut col_strategy = vec![Rational::zero(); self.cols];
        for (i, &var) in self.basis.iter().enumerate() {
            if var < self.cols {
                col_strategy[var] = Rational::new(self.rhs[i].to_big(), total.clone());
            }
        }
        let row_strategy = (0..self.rows)
            .map(|i| Rational::new(self.obj[self.cols + i].to_big() * scale, total.clone()))
            .collect();
        MatrixSolution {
            value: Rational::new(self.det.to_big(), total) - shift,
            row_strategy,
            col_strategy,
        }
    }
}

/// Solves with machine integers when they suffice, otherwise with `BigInt`.
/// Both runs take the same pivots, so the result does not depend on which
/// one finished.
fn solve_tableau(game: &MatrixGame, shift: &Rational) -> MatrixSolution {
    let integral = IntegralGame::new(game, shift);
    if let Some(mut t) = Tableau::<i128>::new(&integral) {
        if t.run().is_some() {
            return t.extract(&integral.scale, shift);
        }
    }
    let mut t = Tableau::<BigInt>::new(&integral).expect("BigInt never overflows");
    t.run().expect("BigInt never overflows");
    t.extract(&integral.scale, shift)
}

/// True iff row `i` is componentwise at least row `j`.
pub fn row_dominates(game: &MatrixGame, i: usize, j: usize) -> Result<bool> {
    check_index(game.rows, i, "row")?;
    check_index(game.rows, j, "row")?;
    Ok(game.row(i).iter().zip(game.row(j)).all(|(a, b)| a >= b))
}

/// True iff column `i` is componentwise at most column `j` (better for the
/// minimizing column player).
pub fn col_dominates(game: &MatrixGame, i: usize, j: usize) -> Result<bool> {
    check_index(game.cols, i, "column")?;
    check_index(game.cols, j, "column")?;
    Ok((0..game.rows).all(|r| game.get(r, i) <= game.get(r, j)))
}

fn check_index(len: usize, idx: usize, what: &str) -> Result<()> {
    if idx >= len {
        Err(Error::Index(format!("{what} {idx} out of range 0..{len}")))
    } else {
        Ok(())
    }
}

/// `max_i (M y)_i`: the row player's best payoff against column mixture `y`.
pub fn best_row_response_value(game: &MatrixGame, col_strategy: &[Rational]) -> Result<Rational> {
    check_distribution(col_strategy, game.cols, "column")?;
    let payoffs = game.col_mixture_payoffs(col_strategy);
    Ok(argmax(&payoffs).1.clone())
}

/// `min_j (x^T M)_j`: the column player's best reply value against `x`.
pub fn best_col_response_value(game: &MatrixGame, row_strategy: &[Rational]) -> Result<Rational> {
    check_distribution(row_strategy, game.rows, "row")?;
    let payoffs = game.row_mixture_payoffs(row_strategy);
    Ok(argmin(&payoffs).1.clone())
}

fn check_distribution(weights: &[Rational], len: usize, what: &str) -> Result<()> {
    if weights.len() != len {
        return Err(Error::Dist(format!("{what} strategy has {} weights, expected {len}", weights.len())));
    }
    if !is_distribution(weights) {
        return Err(Error::Dist(format!("{what} strategy weights must be nonnegative and sum to 1")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn game(rows: &[&[i64]]) -> MatrixGame {
        MatrixGame::new(rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()).unwrap()
    }

    fn assert_certificate(g: &MatrixGame, s: &MatrixSolution) {
        assert!(is_distribution(&s.row_strategy), "row strategy {:?}", s.row_strategy);
        assert!(is_distribution(&s.col_strategy), "col strategy {:?}", s.col_strategy);
        assert_eq!(best_col_response_value(g, &s.row_strategy).unwrap(), s.value);
        assert_eq!(best_row_response_value(g, &s.col_strategy).unwrap(), s.value);
    }

    #[test]
    fn selection_example_matrix() {
        let g = game(&[&[-1, -1, 1], &[0, 0, -1]]);
        let s = solve_matrix(&g);
        assert_eq!(s.value, ratio(-1, 3));
        assert_eq!(s.row_strategy, vec![ratio(1, 3), ratio(2, 3)]);
        assert_certificate(&g, &s);
    }

    #[test]
    fn one_by_one() {
        let g = game(&[&[5]]);
        let s = solve_matrix(&g);
        assert_eq!(s.value, int(5));
        assert_eq!(s.row_strategy, vec![int(1)]);
        assert_eq!(s.col_strategy, vec![int(1)]);
    }

    #[test]
    fn matching_pennies() {
        let g = game(&[&[1, -1], &[-1, 1]]);
        let s = solve_matrix(&g);
        assert_eq!(s.value, int(0));
        assert_eq!(s.row_strategy, vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(s.col_strategy, vec![ratio(1, 2), ratio(1, 2)]);
    }

    #[test]
    fn rock_paper_scissors_variant() {
        let g = game(&[&[0, 2, -1], &[-1, 0, 1], &[1, -1, 0]]);
        let s = solve_matrix(&g);
        assert_eq!(s.value, ratio(1, 12));
        assert_certificate(&g, &s);
    }

    #[test]
    fn dominance_checks() {
        let g = game(&[&[1, 1], &[0, 0]]);
        assert!(row_dominates(&g, 0, 1).unwrap());
        let g = game(&[&[1, 0], &[0, 1]]);
        assert!(!row_dominates(&g, 0, 1).unwrap());
        assert!(matches!(row_dominates(&g, 0, 2), Err(Error::Index(_))));
        assert!(col_dominates(&game(&[&[0, 1], &[0, 1]]), 0, 1).unwrap());
    }

    #[test]
    fn best_response_values() {
        let g = game(&[&[1, -1], &[-1, 1]]);
        assert_eq!(best_row_response_value(&g, &[ratio(1, 2), ratio(1, 2)]).unwrap(), int(0));
        let g = game(&[&[-1, -1, 1], &[0, 0, -1]]);
        let third = ratio(1, 3);
        assert_eq!(
            best_row_response_value(&g, &[third.clone(), third.clone(), third]).unwrap(),
            ratio(-1, 3)
        );
        assert_eq!(best_row_response_value(&game(&[&[5]]), &[int(1)]).unwrap(), int(5));
    }

    #[test]
    fn best_response_rejects_bad_distributions() {
        let g = game(&[&[1, -1], &[-1, 1]]);
        assert!(matches!(best_row_response_value(&g, &[int(1), int(1)]), Err(Error::Dist(_))));
        assert!(matches!(best_row_response_value(&g, &[int(2), int(-1)]), Err(Error::Dist(_))));
        assert!(matches!(best_row_response_value(&g, &[int(1)]), Err(Error::Dist(_))));
    }

    #[test]
    fn empty_game_is_rejected() {
        assert!(MatrixGame::new(vec![]).is_err());
        assert!(MatrixGame::new(vec![vec![]]).is_err());
    }

    /// Independent 2x2 oracle: a pure saddle point if one exists, otherwise the
    /// closed-form mixed value `(ad - bc) / (a + d - b - c)`.
    fn two_by_two_oracle(a: i64, b: i64, c: i64, d: i64) -> Rational {
        let m = [[a, b], [c, d]];
        for i in 0..2 {
            for j in 0..2 {
                let v = m[i][j];
                let row_min = m[i].iter().all(|&x| v <= x);
                let col_max = (0..2).all(|r| v >= m[r][j]);
                if row_min && col_max {
                    return int(v);
                }
            }
        }
        ratio(a * d - b * c, a + d - b - c)
    }

    #[test]
    fn exhaustive_two_by_two_over_small_alphabet() {
        let alphabet = [-1i64, 0, 1];
        for &a in &alphabet {
            for &b in &alphabet {
                for &c in &alphabet {
                    for &d in &alphabet {
                        let g = game(&[&[a, b], &[c, d]]);
                        let s = solve_matrix(&g);
                        assert_eq!(s.value, two_by_two_oracle(a, b, c, d), "{a} {b} {c} {d}");
                        assert_certificate(&g, &s);
                    }
                }
            }
        }
    }

    fn arb_game() -> impl Strategy<Value = MatrixGame> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-9i64..10, 1i64..5), r * c).prop_map(move |cells| {
                MatrixGame::from_flat(r, c, cells.into_iter().map(|(n, d)| ratio(n, d)).collect())
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn duality_certificate_and_bounds(g in arb_game()) {
            let s = solve_matrix(&g);
            prop_assert!(is_distribution(&s.row_strategy));
            prop_assert!(is_distribution(&s.col_strategy));
            prop_assert_eq!(best_col_response_value(&g, &s.row_strategy).unwrap(), s.value.clone());
            prop_assert_eq!(best_row_response_value(&g, &s.col_strategy).unwrap(), s.value.clone());
            prop_assert!(g.min_entry() <= &s.value && &s.value <= g.max_entry());
        }

        #[test]
        fn scaling_covariance(g in arb_game(), a in 1i64..5, an in 1i64..4, b in -5i64..6) {
            let a = ratio(a, an);
            let b = int(b);
            let s = solve_matrix(&g);
            let scaled = g.affine(&a, &b);
            let t = solve_matrix(&scaled);
            prop_assert_eq!(t.value.clone(), &a * &s.value + &b);
            prop_assert_eq!(best_col_response_value(&scaled, &s.row_strategy).unwrap(), t.value.clone());
            prop_assert_eq!(best_row_response_value(&scaled, &s.col_strategy).unwrap(), t.value);
        }

        #[test]
        fn deleting_a_dominated_row_keeps_the_value(g in arb_game()) {
            let value = solve_matrix(&g).value;
            for j in 0..g.rows() {
                let dominated = (0..g.rows()).any(|i| i != j && row_dominates(&g, i, j).unwrap());
                if dominated && g.rows() > 1 {
                    prop_assert_eq!(solve_matrix(&g.without_row(j)).value, value.clone());
                }
            }
        }

        #[test]
        fn deterministic(g in arb_game()) {
            prop_assert_eq!(solve_matrix(&g), solve_matrix(&g));
        }
    }
}
