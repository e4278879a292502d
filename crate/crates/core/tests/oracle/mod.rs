//! Independent reference computations used only by tests.
//!
//! Nothing here calls the solver. Matrix games are solved by enumerating the
//! vertices of the row player's feasible region, and competitions are valued
//! by walking the full game tree over ordered histories (no history classes,
//! no memoization).

#![allow(dead_code)]

use teamgame::rational::{one, zero};
use teamgame::Rational;

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Solves a square linear system by Gauss-Jordan elimination; `None` if singular.
fn solve_linear(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        b[col] = &b[col] / &p;
        let pivot_row = a[col].clone();
        for r in 0..n {
            if r != col && a[r][col] != zero() {
                let f = a[r][col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
                let d = &f * &b[col];
                b[r] -= d;
            }
        }
    }
    Some(b)
}

/// Value of the zero-sum game with row payoffs `m` (row player maximizes).
///
/// The row player's optimum `max_x min_j x.M_j` is attained at a vertex of
/// `{(x, v) : x in simplex, x.M_j >= v}`. Each vertex makes some support `S`
/// and an equally large set of columns `C` tight, so solving every square
/// system `x.M_j = v (j in C), sum x = 1` over `S` visits all of them.
pub fn matrix_value(m: &[Vec<Rational>]) -> Rational {
    let (rows, cols) = (m.len(), m[0].len());
    let mut best: Option<Rational> = None;
    for k in 1..=rows.min(cols) {
        for support in subsets(rows, k) {
            for tight in subsets(cols, k) {
                // unknowns: x_s for s in support, then v
                let mut a = Vec::with_capacity(k + 1);
                let mut b = Vec::with_capacity(k + 1);
                for &j in &tight {
                    let mut line: Vec<Rational> = support.iter().map(|&i| m[i][j].clone()).collect();
                    line.push(-one());
                    a.push(line);
                    b.push(zero());
                }
                let mut sum: Vec<Rational> = vec![one(); k];
                sum.push(zero());
                a.push(sum);
                b.push(one());
                let Some(sol) = solve_linear(a, b) else { continue };
                if sol[..k].iter().any(|x| *x < zero()) {
                    continue;
                }
                let guarantee = (0..cols)
                    .map(|j| support.iter().zip(&sol).map(|(&i, x)| x * &m[i][j]).sum::<Rational>())
                    .min()
                    .expect("at least one column");
                if best.as_ref().is_none_or(|b| &guarantee > b) {
                    best = Some(guarantee);
                }
            }
        }
    }
    best.expect("some vertex exists")
}

/// Value of the competition by exhaustive recursion over ordered histories.
pub fn tree_value(p: &[Vec<Rational>], rounds: usize, utility: &[Rational]) -> Rational {
    fn go(
        p: &[Vec<Rational>],
        rounds: usize,
        utility: &[Rational],
        used1: &mut Vec<bool>,
        used2: &mut Vec<bool>,
        round: usize,
        wins: usize,
    ) -> Rational {
        if round == rounds {
            return utility[wins].clone();
        }
        let free1: Vec<usize> = (0..used1.len()).filter(|&i| !used1[i]).collect();
        let free2: Vec<usize> = (0..used2.len()).filter(|&j| !used2[j]).collect();
        let mut stage = Vec::with_capacity(free1.len());
        for &a in &free1 {
            let mut line = Vec::with_capacity(free2.len());
            for &b in &free2 {
                used1[a] = true;
                used2[b] = true;
                let win = go(p, rounds, utility, used1, used2, round + 1, wins + 1);
                let lose = go(p, rounds, utility, used1, used2, round + 1, wins);
                used1[a] = false;
                used2[b] = false;
                let q = &p[a][b];
                line.push(q * win + (one() - q) * lose);
            }
            stage.push(line);
        }
        matrix_value(&stage)
    }
    let (m, n) = (p.len(), p[0].len());
    go(p, rounds, utility, &mut vec![false; m], &mut vec![false; n], 0, 0)
}

/// Convenience wrapper taking a validated spec.
pub fn spec_tree_value(spec: &teamgame::GameSpec) -> Rational {
    tree_value(&spec.strength().to_rows(), spec.rounds(), spec.utility().values())
}
