//! Star Wars: place a cruiser at a real point `(x, y, z)` minimizing the
//! power `Y` such that every ship `i` is within Manhattan distance `p_i · Y`.

use super::ProblemError;
use crate::lp::{self, LpSolution};
use crate::model::{Expr, Model, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ship {
    pub x: i64,
    pub y: i64,
    pub z: i64,
    pub p: i64,
}

impl Ship {
    pub fn new(x: i64, y: i64, z: i64, p: i64) -> Self {
        Ship { x, y, z, p }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarWarsCase {
    pub ships: Vec<Ship>,
}

impl StarWarsCase {
    pub fn new(ships: Vec<Ship>) -> Result<Self, ProblemError> {
        if ships.is_empty() {
            return Err(ProblemError::InvalidCase("no ships".into()));
        }
        if let Some(s) = ships.iter().find(|s| s.p <= 0) {
            return Err(ProblemError::InvalidCase(format!("ship power {} is not positive", s.p)));
        }
        Ok(StarWarsCase { ships })
    }

    pub fn translated(&self, dx: i64, dy: i64, dz: i64) -> StarWarsCase {
        let ships = self
            .ships
            .iter()
            .map(|s| Ship::new(s.x + dx, s.y + dy, s.z + dz, s.p))
            .collect();
        StarWarsCase { ships }
    }
}

#[derive(Debug, Clone)]
pub struct StarWarsModel {
    pub model: Model,
    pub x: VarId,
    pub y: VarId,
    pub z: VarId,
    pub power: VarId,
}

/// Continuous model: the distance bound of every ship is expanded into its
/// eight sign patterns; minimize the power.
pub fn starwars_lp_model(c: &StarWarsCase) -> StarWarsModel {
    let mut model = Model::new();
    let free = |m: &mut Model| m.add_real_var(f64::NEG_INFINITY, f64::INFINITY).expect("valid bounds");
    let (x, y, z) = (free(&mut model), free(&mut model), free(&mut model));
    let power = model.add_real_var(0.0, f64::INFINITY).expect("valid bounds");
    for (v, name) in [(x, "X"), (y, "Y"), (z, "Z"), (power, "P")] {
        model.set_name(v, name);
    }
    for s in &c.ships {
        let terms = [Expr::Const(s.x) - x, Expr::Const(s.y) - y, Expr::Const(s.z) - z];
        let rows = lp::linearize_abs_sum_leq(&terms, &(s.p * power)).expect("linear terms");
        for r in rows {
            model.post(r).expect("declared variables");
        }
    }
    model.minimize(power).expect("declared variables");
    StarWarsModel { model, x, y, z, power }
}

pub fn starwars_lp(c: &StarWarsCase) -> Result<f64, ProblemError> {
    let m = starwars_lp_model(c);
    let problem = lp::lower_to_lp(&m.model)?;
    match lp::simplex_solve(&problem)? {
        LpSolution::Optimal { objective, .. } => Ok(objective),
        other => Err(ProblemError::Infeasible(format!("linear program ended {other:?}"))),
    }
}

/// Whether some point is within `p_i · y` of every ship. In the rotated
/// coordinates `a = x+y+z`, `b = x+y-z`, `c = x-y+z`, `d = -x+y+z` the
/// Manhattan ball is a box, and a box point is a real point iff
/// `a = b + c + d`.
fn reachable(ships: &[Ship], y: f64) -> bool {
    let mut lo = [f64::NEG_INFINITY; 4];
    let mut hi = [f64::INFINITY; 4];
    for s in ships {
        let (sx, sy, sz) = (s.x as f64, s.y as f64, s.z as f64);
        let r = s.p as f64 * y;
        let centre = [sx + sy + sz, sx + sy - sz, sx - sy + sz, -sx + sy + sz];
        for k in 0..4 {
            lo[k] = lo[k].max(centre[k] - r);
            hi[k] = hi[k].min(centre[k] + r);
        }
    }
    if (0..4).any(|k| lo[k] > hi[k]) {
        return false;
    }
    let (sum_lo, sum_hi) = (lo[1] + lo[2] + lo[3], hi[1] + hi[2] + hi[3]);
    lo[0] <= sum_hi && sum_lo <= hi[0]
}

/// Bisection on the power until the bracket is narrower than `eps`;
/// returns the feasible end.
pub fn starwars_binary_search(c: &StarWarsCase, eps: f64) -> f64 {
    let mut hi = c
        .ships
        .iter()
        .map(|s| (s.x.abs() + s.y.abs() + s.z.abs()) as f64 / s.p as f64)
        .fold(0.0, f64::max)
        + 1.0;
    let mut lo = 0.0;
    if reachable(&c.ships, 0.0) {
        return 0.0;
    }
    while hi - lo > eps {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if reachable(&c.ships, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(ships: &[(i64, i64, i64, i64)]) -> StarWarsCase {
        StarWarsCase::new(ships.iter().map(|&(x, y, z, p)| Ship::new(x, y, z, p)).collect()).unwrap()
    }

    #[test]
    fn single_ship() {
        let c = case(&[(0, 0, 0, 1)]);
        assert_eq!(starwars_binary_search(&c, 1e-9), 0.0);
        assert!(starwars_lp(&c).unwrap().abs() < 1e-9);
    }

    #[test]
    fn two_ships_meet_in_the_middle() {
        let c = case(&[(0, 0, 0, 1), (6, 0, 0, 1)]);
        assert!((starwars_binary_search(&c, 1e-9) - 3.0).abs() < 1e-6);
        assert!((starwars_lp(&c).unwrap() - 3.0).abs() < 1e-6);
    }

    #[test]
    fn weighted_ships() {
        let c = case(&[(0, 0, 0, 1), (6, 0, 0, 2)]);
        assert!((starwars_binary_search(&c, 1e-9) - 2.0).abs() < 1e-6);
        let m = starwars_lp_model(&c);
        let problem = lp::lower_to_lp(&m.model).unwrap();
        let sol = lp::simplex_solve(&problem).unwrap();
        assert!((sol.objective().unwrap() - 2.0).abs() < 1e-6);
        assert!((sol.value(m.x).unwrap() - 2.0).abs() < 1e-6);
    }

    #[test]
    fn eight_rows_per_ship() {
        let m = starwars_lp_model(&case(&[(1, 2, 3, 1), (4, 5, 6, 2)]));
        assert_eq!(m.model.num_constraints(), 16);
    }

    #[test]
    fn off_axis() {
        // (0,0,0) and (2,2,2): distance 6 split evenly
        let c = case(&[(0, 0, 0, 1), (2, 2, 2, 1)]);
        assert!((starwars_binary_search(&c, 1e-9) - 3.0).abs() < 1e-6);
        assert!((starwars_lp(&c).unwrap() - 3.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_empty_and_nonpositive_power() {
        assert!(StarWarsCase::new(vec![]).is_err());
        assert!(StarWarsCase::new(vec![Ship::new(0, 0, 0, 0)]).is_err());
    }
}
