//! Mine Layer: every clue counts the mines in its 3×3 neighbourhood
//! (clipped at the border). The number of rows is odd; find how many mines
//! lie in the middle row.

use super::ProblemError;
use crate::fd::{self, BnbOptions, BnbOutcome};
use crate::lp::{self, LpSolution};
use crate::model::{Expr, Model, VarId};

/// Grids with more cells than this are refused by the exhaustive search.
pub const BRUTEFORCE_MAX_CELLS: usize = 36;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MineLayerCase {
    pub clues: Vec<Vec<i64>>,
}

impl MineLayerCase {
    pub fn new(clues: Vec<Vec<i64>>) -> Result<Self, ProblemError> {
        let bad = |m: String| Err(ProblemError::InvalidCase(m));
        let r = clues.len();
        if r.is_multiple_of(2) {
            return bad(format!("row count {r} is not odd"));
        }
        let c = clues[0].len();
        if c == 0 || clues.iter().any(|row| row.len() != c) {
            return bad("rows must be non-empty and of equal length".into());
        }
        if let Some(v) = clues.iter().flatten().find(|v| !(0..=9).contains(*v)) {
            return bad(format!("clue {v} outside 0..=9"));
        }
        Ok(MineLayerCase { clues })
    }

    /// Clue grid of a mine grid (`true` = mine).
    pub fn from_mines(mines: &[Vec<bool>]) -> Result<Self, ProblemError> {
        let (r, c) = (mines.len(), mines.first().map_or(0, Vec::len));
        let clues = (0..r)
            .map(|i| {
                (0..c)
                    .map(|j| neighbourhood(i, j, r, c).filter(|&(a, b)| mines[a][b]).count() as i64)
                    .collect()
            })
            .collect();
        MineLayerCase::new(clues)
    }

    pub fn rows(&self) -> usize {
        self.clues.len()
    }

    pub fn cols(&self) -> usize {
        self.clues[0].len()
    }

    pub fn middle(&self) -> usize {
        self.rows() / 2
    }
}

pub fn middle_row_count(mines: &[Vec<bool>]) -> i64 {
    mines[mines.len() / 2].iter().filter(|&&m| m).count() as i64
}

fn clipped(i: usize, n: usize) -> std::ops::RangeInclusive<usize> {
    i.saturating_sub(1)..=(i + 1).min(n - 1)
}

fn neighbourhood(i: usize, j: usize, r: usize, c: usize) -> impl Iterator<Item = (usize, usize)> {
    clipped(i, r).flat_map(move |a| clipped(j, c).map(move |b| (a, b)))
}

#[derive(Debug, Clone)]
pub struct MineLayerModel {
    pub model: Model,
    pub mines: Vec<Vec<VarId>>,
    pub middle_sum: VarId,
}

/// Binary mine per cell, one equality per clue, maximize the middle row.
pub fn minelayer_mip_model(c: &MineLayerCase) -> MineLayerModel {
    let (r, cols) = (c.rows(), c.cols());
    let mut model = Model::new();
    let mines: Vec<Vec<VarId>> = (0..r)
        .map(|_| (0..cols).map(|_| model.add_bool_var()).collect())
        .collect();
    for i in 0..r {
        for j in 0..cols {
            let around = Expr::sum(neighbourhood(i, j, r, cols).map(|(a, b)| mines[a][b]));
            model.post(around.equals(c.clues[i][j])).expect("declared variables");
        }
    }
    let middle_sum = model.add_int_var(0, cols as i64).expect("valid domain");
    model.set_name(middle_sum, "MiddleSum");
    let row = Expr::sum(mines[c.middle()].iter().copied());
    model
        .post(Expr::from(middle_sum).equals(row))
        .expect("declared variables");
    model.maximize(middle_sum).expect("declared variables");
    MineLayerModel {
        model,
        mines,
        middle_sum,
    }
}

fn inconsistent() -> ProblemError {
    ProblemError::Infeasible("clues are inconsistent with every mine grid".into())
}

pub fn minelayer_mip(c: &MineLayerCase) -> Result<i64, ProblemError> {
    let m = minelayer_mip_model(c);
    let problem = lp::lower_to_lp(&m.model)?;
    match lp::mip_solve(&problem)? {
        LpSolution::Optimal { x, .. } => Ok(x[m.middle_sum.index()].round() as i64),
        _ => Err(inconsistent()),
    }
}

/// The same model solved by propagation and branch-and-bound on
/// `-MiddleSum`.
pub fn minelayer_cp(c: &MineLayerCase) -> Result<i64, ProblemError> {
    let mut m = minelayer_mip_model(c);
    let cost = m.model.add_int_var(-(c.cols() as i64), 0)?;
    m.model.post(Expr::from(cost).equals(-Expr::from(m.middle_sum)))?;
    let mut opts = BnbOptions::new(cost);
    opts.order = Some(m.mines.iter().flatten().copied().collect());
    match fd::bb_minimize(&m.model, &opts)? {
        BnbOutcome::Optimal { cost, .. } => Ok(-cost),
        BnbOutcome::Infeasible => Err(inconsistent()),
    }
}

/// Splits `first..=last` of an axis of length `n` into clipped neighbourhood
/// ranges and returns their centres.
fn tile(first: usize, last: usize, n: usize) -> Option<Vec<usize>> {
    // reach[k]: centres tiling first..k, or None
    let len = last + 1 - first;
    let mut reach: Vec<Option<Vec<usize>>> = vec![None; len + 1];
    reach[0] = Some(Vec::new());
    for done in 0..len {
        let Some(prefix) = reach[done].clone() else { continue };
        let start = first + done;
        for centre in start..(start + 2).min(n) {
            let range = clipped(centre, n);
            if *range.start() != start || *range.end() > last {
                continue;
            }
            let next = range.end() + 1 - first;
            if reach[next].is_none() {
                let mut v = prefix.clone();
                v.push(centre);
                reach[next] = Some(v);
            }
        }
    }
    reach[len].take()
}

/// Mines in rows `first..end`, read off clues of a block tiling.
fn section(c: &MineLayerCase, first: usize, end: usize) -> Option<i64> {
    if first >= end {
        return Some(0);
    }
    let rows = tile(first, end - 1, c.rows())?;
    let cols = tile(0, c.cols() - 1, c.cols())?;
    Some(
        rows.iter()
            .flat_map(|&i| cols.iter().map(move |&j| c.clues[i][j]))
            .sum(),
    )
}

/// Counts the middle row exactly by tiling row sections with 3×3 blocks
/// (2 wide against a border) whose totals are single clues.
pub fn minelayer_block_count(c: &MineLayerCase) -> i64 {
    let (r, mid) = (c.rows(), c.middle());
    let whole = section(c, 0, r).expect("whole grid always tiles");
    if let (Some(top), Some(bottom)) = (section(c, 0, mid), section(c, mid + 1, r)) {
        return whole - top - bottom;
    }
    // sections that include the middle row overlap in exactly that row
    let top = section(c, 0, mid + 1).expect("top section tiles");
    let bottom = section(c, mid, r).expect("bottom section tiles");
    top + bottom - whole
}

/// Every mine grid consistent with the clues, as `(min, max)` of the middle
/// row count. Depth-first over cells in row-major order; a clue is checked
/// as soon as its whole neighbourhood is decided.
pub fn minelayer_bruteforce_range(c: &MineLayerCase) -> Result<(i64, i64), ProblemError> {
    let (r, cols) = (c.rows(), c.cols());
    if r * cols > BRUTEFORCE_MAX_CELLS {
        return Err(ProblemError::TooLarge(format!("{r}x{cols} grid")));
    }
    // clues whose neighbourhood is complete once cell k is set
    let mut closes: Vec<Vec<(usize, usize)>> = vec![Vec::new(); r * cols];
    for i in 0..r {
        for j in 0..cols {
            let last = neighbourhood(i, j, r, cols).map(|(a, b)| a * cols + b).max().unwrap();
            closes[last].push((i, j));
        }
    }
    let mut grid = vec![vec![false; cols]; r];
    let mut range: Option<(i64, i64)> = None;
    fn go(
        k: usize,
        c: &MineLayerCase,
        closes: &[Vec<(usize, usize)>],
        grid: &mut Vec<Vec<bool>>,
        range: &mut Option<(i64, i64)>,
    ) {
        let (r, cols) = (c.rows(), c.cols());
        if k == r * cols {
            let v = middle_row_count(grid);
            *range = Some(range.map_or((v, v), |(lo, hi)| (lo.min(v), hi.max(v))));
            return;
        }
        for mine in [false, true] {
            grid[k / cols][k % cols] = mine;
            let ok = closes[k].iter().all(|&(i, j)| {
                neighbourhood(i, j, r, cols).filter(|&(a, b)| grid[a][b]).count() as i64 == c.clues[i][j]
            });
            if ok {
                go(k + 1, c, closes, grid, range);
            }
        }
        grid[k / cols][k % cols] = false;
    }
    go(0, c, &closes, &mut grid, &mut range);
    range.ok_or_else(inconsistent)
}

/// Largest middle-row count over all consistent mine grids.
pub fn minelayer_bruteforce(c: &MineLayerCase) -> Result<i64, ProblemError> {
    Ok(minelayer_bruteforce_range(c)?.1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(rows: &[&[i64]]) -> MineLayerCase {
        MineLayerCase::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn all_methods(c: &MineLayerCase) -> [i64; 4] {
        [
            minelayer_mip(c).unwrap(),
            minelayer_cp(c).unwrap(),
            minelayer_block_count(c),
            minelayer_bruteforce(c).unwrap(),
        ]
    }

    #[test]
    fn single_cell() {
        assert_eq!(all_methods(&case(&[&[1]])), [1; 4]);
        assert_eq!(all_methods(&case(&[&[0]])), [0; 4]);
    }

    #[test]
    fn full_three_by_three() {
        let c = case(&[&[4, 6, 4], &[6, 9, 6], &[4, 6, 4]]);
        assert_eq!(all_methods(&c), [3; 4]);
    }

    #[test]
    fn one_by_three() {
        assert_eq!(all_methods(&case(&[&[2, 3, 2]])), [3; 4]);
    }

    #[test]
    fn clues_from_mines() {
        let mines = vec![
            vec![true, false, false],
            vec![false, false, true],
            vec![false, false, false],
        ];
        let c = MineLayerCase::from_mines(&mines).unwrap();
        assert_eq!(c.clues, vec![vec![1, 2, 1], vec![1, 2, 1], vec![0, 1, 1]]);
        assert_eq!(middle_row_count(&mines), 1);
        assert_eq!(all_methods(&c), [1; 4]);
    }

    #[test]
    fn tiling_lengths() {
        // interior ranges are 3 long, border ranges 2
        assert_eq!(tile(0, 4, 5), Some(vec![0, 3]));
        assert_eq!(tile(0, 0, 1), Some(vec![0]));
        assert_eq!(tile(0, 1, 7), Some(vec![0]));
        assert_eq!(tile(0, 2, 7), Some(vec![1]));
        assert_eq!(tile(0, 3, 7), None);
        assert_eq!(tile(4, 6, 7), Some(vec![5]));
    }

    #[test]
    fn every_odd_height_is_countable() {
        for r in (1..=15).step_by(2) {
            for cols in 1..=6 {
                let mines: Vec<Vec<bool>> = (0..r)
                    .map(|i| (0..cols).map(|j| (i * 7 + j * 3) % 5 < 2).collect())
                    .collect();
                let c = MineLayerCase::from_mines(&mines).unwrap();
                assert_eq!(minelayer_block_count(&c), middle_row_count(&mines), "{r}x{cols}");
            }
        }
    }

    #[test]
    fn inconsistent_clues() {
        let c = case(&[&[2]]);
        assert!(minelayer_bruteforce(&c).is_err());
        assert!(minelayer_mip(&c).is_err());
    }

    #[test]
    fn bruteforce_refuses_large_grids() {
        let c = MineLayerCase::new(vec![vec![0; 8]; 5]).unwrap();
        assert!(matches!(minelayer_bruteforce(&c), Err(ProblemError::TooLarge(_))));
    }
}
