//! Code Jam file formats and seeded instance generation.
//!
//! Input files start with the case count `T`; each case then occupies one
//! or more lines of whitespace-separated integers:
//!
//! | problem | layout |
//! |---|---|
//! | triangle | `N M A` |
//! | dancing | `N S p t1 .. tN` |
//! | starwars | `N`, then `N` lines `x y z p` |
//! | minelayer | `R C`, then `R` lines of `C` clues |
//!
//! Blank lines are ignored. Output files hold one `Case #i: <answer>` line
//! per case.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::problems::{
    dancing, minelayer, starwars, triangle, Answer, Case, DancingCase, MineLayerCase, Problem, ProblemError, Ship,
    StarWarsCase, TriangleAnswer, TriangleCase, STARWARS_EPS,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GcjError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("case #{0} has no answer")]
    MissingAnswer(usize),
}

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T, GcjError> {
    Err(GcjError::Parse { line, msg: msg.into() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseRecord {
    /// 1-based.
    pub index: usize,
    pub case: Case,
    pub answer: Option<Answer>,
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
            last: 0,
        }
    }

    /// Next non-blank line as `(line number, tokens)`.
    fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, l) in self.inner.by_ref() {
            let toks: Vec<&str> = l.split_whitespace().collect();
            if !toks.is_empty() {
                self.last = i + 1;
                return Some((i + 1, toks));
            }
        }
        None
    }

    /// Next line of integers, optionally of an exact length.
    fn ints(&mut self, expect: Option<usize>, what: &str) -> Result<(usize, Vec<i64>), GcjError> {
        let Some((line, toks)) = self.next_tokens() else {
            return parse_err(self.last + 1, format!("unexpected end of input, expected {what}"));
        };
        if let Some(n) = expect {
            if toks.len() != n {
                return parse_err(line, format!("expected {n} tokens for {what}, found {}", toks.len()));
            }
        }
        let vals = toks
            .iter()
            .map(|t| {
                t.parse::<i64>()
                    .or_else(|_| parse_err(line, format!("`{t}` is not an integer")))
            })
            .collect::<Result<_, _>>()?;
        Ok((line, vals))
    }
}

fn count(v: i64, line: usize, what: &str) -> Result<usize, GcjError> {
    if v < 1 {
        return parse_err(line, format!("{what} must be at least 1, got {v}"));
    }
    Ok(v as usize)
}

fn invalid(line: usize) -> impl Fn(ProblemError) -> GcjError {
    move |e| GcjError::Parse {
        line,
        msg: e.to_string(),
    }
}

fn parse_case(problem: Problem, lines: &mut Lines) -> Result<Case, GcjError> {
    Ok(match problem {
        Problem::Triangle => {
            let (line, v) = lines.ints(Some(3), "`N M A`")?;
            Case::Triangle(TriangleCase::new(v[0], v[1], v[2]).map_err(invalid(line))?)
        }
        Problem::Dancing => {
            let (line, v) = lines.ints(None, "`N S p t1 .. tN`")?;
            if v.len() < 3 {
                return parse_err(line, "expected `N S p t1 .. tN`");
            }
            let n = count(v[0], line, "N")?;
            if v.len() != n + 3 {
                return parse_err(
                    line,
                    format!("expected {} tokens for N = {n}, found {}", n + 3, v.len()),
                );
            }
            let s = usize::try_from(v[1]).or_else(|_| parse_err(line, "S is negative"))?;
            Case::Dancing(DancingCase::new(s, v[2], v[3..].to_vec()).map_err(invalid(line))?)
        }
        Problem::StarWars => {
            let (line, v) = lines.ints(Some(1), "ship count")?;
            let n = count(v[0], line, "ship count")?;
            let mut ships = Vec::with_capacity(n);
            for _ in 0..n {
                let (at, s) = lines.ints(Some(4), "`x y z p`")?;
                if s[3] <= 0 {
                    return parse_err(at, format!("ship power {} is not positive", s[3]));
                }
                ships.push(Ship::new(s[0], s[1], s[2], s[3]));
            }
            Case::StarWars(StarWarsCase::new(ships).map_err(invalid(line))?)
        }
        Problem::MineLayer => {
            let (line, v) = lines.ints(Some(2), "`R C`")?;
            let r = count(v[0], line, "R")?;
            let c = count(v[1], line, "C")?;
            if r % 2 == 0 {
                return parse_err(line, format!("row count {r} is not odd"));
            }
            let mut clues = Vec::with_capacity(r);
            for _ in 0..r {
                clues.push(lines.ints(Some(c), "a clue row")?.1);
            }
            Case::MineLayer(MineLayerCase::new(clues).map_err(invalid(line))?)
        }
    })
}

pub fn parse_input(problem: Problem, text: &str) -> Result<Vec<CaseRecord>, GcjError> {
    let mut lines = Lines::new(text);
    let (line, v) = lines.ints(Some(1), "the case count")?;
    let t = count(v[0], line, "case count")?;
    let mut out = Vec::with_capacity(t);
    for index in 1..=t {
        let case = parse_case(problem, &mut lines)?;
        out.push(CaseRecord {
            index,
            case,
            answer: None,
        });
    }
    if let Some((line, _)) = lines.next_tokens() {
        return parse_err(line, format!("trailing data after {t} cases"));
    }
    Ok(out)
}

/// Inverse of [`parse_input`].
pub fn render_input(cases: &[Case]) -> String {
    let mut s = format!("{}\n", cases.len());
    let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
    for case in cases {
        match case {
            Case::Triangle(c) => writeln!(s, "{} {} {}", c.n, c.m, c.a),
            Case::Dancing(c) => writeln!(s, "{} {} {} {}", c.sums.len(), c.surprising, c.p, join(&c.sums)),
            Case::StarWars(c) => {
                let _ = writeln!(s, "{}", c.ships.len());
                c.ships
                    .iter()
                    .try_for_each(|sh| writeln!(s, "{} {} {} {}", sh.x, sh.y, sh.z, sh.p))
            }
            Case::MineLayer(c) => {
                let _ = writeln!(s, "{} {}", c.rows(), c.cols());
                c.clues.iter().try_for_each(|row| writeln!(s, "{}", join(row)))
            }
        }
        .expect("writing to a String");
    }
    s
}

pub fn format_answer(a: &Answer) -> String {
    match a {
        Answer::Triangle(TriangleAnswer::Impossible) => "IMPOSSIBLE".into(),
        Answer::Triangle(TriangleAnswer::Points(p)) => p.iter().map(i64::to_string).collect::<Vec<_>>().join(" "),
        Answer::Count(n) => n.to_string(),
        Answer::Real(y) => {
            let s = format!("{y:.6}");
            if s.strip_prefix('-')
                .is_some_and(|r| r.bytes().all(|b| b == b'0' || b == b'.'))
            {
                s[1..].to_string()
            } else {
                s
            }
        }
    }
}

pub fn format_output(records: &[CaseRecord]) -> Result<String, GcjError> {
    let mut s = String::new();
    for r in records {
        let a = r.answer.as_ref().ok_or(GcjError::MissingAnswer(r.index))?;
        writeln!(s, "Case #{}: {}", r.index, format_answer(a)).expect("writing to a String");
    }
    Ok(s)
}

fn parse_answer(problem: Problem, body: &str, line: usize) -> Result<Answer, GcjError> {
    let toks: Vec<&str> = body.split_whitespace().collect();
    let answer = match (problem, toks.as_slice()) {
        (Problem::Triangle, ["IMPOSSIBLE"]) => Some(Answer::Triangle(TriangleAnswer::Impossible)),
        (Problem::Triangle, _) => toks
            .iter()
            .map(|t| t.parse::<i64>().ok())
            .collect::<Option<Vec<i64>>>()
            .and_then(|v| <[i64; 6]>::try_from(v).ok())
            .map(|p| Answer::Triangle(TriangleAnswer::Points(p))),
        (Problem::StarWars, [t]) => t.parse::<f64>().ok().filter(|y| y.is_finite()).map(Answer::Real),
        (Problem::Dancing | Problem::MineLayer, [t]) => t.parse::<i64>().ok().map(Answer::Count),
        _ => None,
    };
    answer.map_or_else(
        || parse_err(line, format!("malformed {problem} answer `{}`", body.trim())),
        Ok,
    )
}

/// Reads `Case #i: ...` lines; indices must run 1, 2, ... in order.
pub fn parse_output(problem: Problem, text: &str) -> Result<Vec<Answer>, GcjError> {
    let mut out = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        if l.trim().is_empty() {
            continue;
        }
        let want = format!("Case #{}:", out.len() + 1);
        let Some(body) = l.trim_end().strip_prefix(&want) else {
            return parse_err(line, format!("expected a line starting with `{want}`"));
        };
        out.push(parse_answer(problem, body, line)?);
    }
    Ok(out)
}

/// Whether `actual` is an acceptable answer where `expected` is the
/// reference. Triangle witnesses are not unique, so they are compared by
/// feasibility and area (and against the case itself when it is known);
/// Star Wars values match within `tol`, absolute or relative.
pub fn answers_match(expected: &Answer, actual: &Answer, tol: f64, case: Option<&Case>) -> bool {
    match (expected, actual) {
        (Answer::Triangle(e), Answer::Triangle(a)) => {
            let areas = e.doubled_area() == a.doubled_area();
            match case {
                Some(Case::Triangle(c)) => areas && a.is_valid_for(c),
                _ => areas,
            }
        }
        (Answer::Real(e), Answer::Real(a)) => {
            let d = (e - a).abs();
            d <= tol || d <= tol * e.abs()
        }
        (Answer::Count(e), Answer::Count(a)) => e == a,
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Size {
    Small,
    Large,
}

impl Size {
    pub fn name(self) -> &'static str {
        match self {
            Size::Small => "small",
            Size::Large => "large",
        }
    }
}

impl FromStr for Size {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "small" => Ok(Size::Small),
            "large" => Ok(Size::Large),
            _ => Err(format!("unknown size `{s}` (expected small or large)")),
        }
    }
}

/// A triangle with a hidden lattice witness (about four cases in five), or
/// one whose area exceeds the box.
pub fn random_triangle(rng: &mut impl Rng, max_side: i64) -> TriangleCase {
    let n = rng.gen_range(1..=max_side);
    let m = rng.gen_range(1..=max_side);
    if rng.gen_bool(0.2) {
        let a = rng.gen_range(n * m + 1..=2 * n * m);
        return TriangleCase::new(n, m, a).expect("positive");
    }
    loop {
        let mut p = [0i64; 6];
        for k in 0..3 {
            p[2 * k] = rng.gen_range(0..=n);
            p[2 * k + 1] = rng.gen_range(0..=m);
        }
        if let Some(a) = TriangleAnswer::Points(p).doubled_area().filter(|&a| a > 0) {
            return TriangleCase::new(n, m, a).expect("positive");
        }
    }
}

/// Totals of hidden score triplets; `S` is the number of hidden surprising
/// ones.
pub fn random_dancing(rng: &mut impl Rng, n: usize) -> DancingCase {
    let mut surprising = 0;
    let sums = (0..n)
        .map(|_| {
            let spread = rng.gen_range(0..=2i64);
            let lo = rng.gen_range(0..=10 - spread);
            let mid = rng.gen_range(lo..=lo + spread);
            surprising += (spread == 2) as usize;
            lo + mid + lo + spread
        })
        .collect();
    DancingCase::new(surprising, rng.gen_range(0..=10), sums).expect("valid by construction")
}

pub fn random_starwars(rng: &mut impl Rng, ships: usize, coord: i64, max_power: i64) -> StarWarsCase {
    let ships = (0..ships)
        .map(|_| {
            let mut c = || rng.gen_range(-coord..=coord);
            let (x, y, z) = (c(), c(), c());
            Ship::new(x, y, z, rng.gen_range(1..=max_power))
        })
        .collect();
    StarWarsCase::new(ships).expect("valid by construction")
}

/// Clues of a hidden random mine grid, returned with that grid.
pub fn random_minelayer(rng: &mut impl Rng, rows: usize, cols: usize) -> (MineLayerCase, Vec<Vec<bool>>) {
    let density = rng.gen_range(0.1..0.7);
    let mines: Vec<Vec<bool>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_bool(density)).collect())
        .collect();
    (MineLayerCase::from_mines(&mines).expect("odd row count"), mines)
}

/// Cases and oracle answers for one generated file.
#[derive(Debug, Clone, PartialEq)]
pub struct Instances {
    pub problem: Problem,
    pub cases: Vec<Case>,
    pub answers: Vec<Answer>,
}

impl Instances {
    pub fn input_text(&self) -> String {
        render_input(&self.cases)
    }

    pub fn answer_text(&self) -> String {
        let records: Vec<CaseRecord> = self
            .cases
            .iter()
            .zip(&self.answers)
            .enumerate()
            .map(|(i, (c, a))| CaseRecord {
                index: i + 1,
                case: c.clone(),
                answer: Some(a.clone()),
            })
            .collect();
        format_output(&records).expect("every case answered")
    }
}

/// Deterministic in `(problem, count, size, seed)`.
pub fn generate_instances(problem: Problem, count: usize, size: Size, seed: u64) -> Instances {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let large = size == Size::Large;
    let mut cases = Vec::with_capacity(count);
    let mut answers = Vec::with_capacity(count);
    for _ in 0..count {
        let (case, answer) = match problem {
            Problem::Triangle => {
                let c = random_triangle(&mut rng, if large { 1000 } else { 50 });
                (Case::Triangle(c), Answer::Triangle(triangle::triangle_constructive(&c)))
            }
            Problem::Dancing => {
                let n = if large { 1000 } else { rng.gen_range(1..=3) };
                let c = random_dancing(&mut rng, n);
                let a = Answer::Count(dancing::dancing_formula(&c));
                (Case::Dancing(c), a)
            }
            Problem::StarWars => {
                let c = if large {
                    random_starwars(&mut rng, 100, 1000, 100)
                } else {
                    let n = rng.gen_range(1..=10);
                    random_starwars(&mut rng, n, 20, 5)
                };
                let a = Answer::Real(starwars::starwars_binary_search(&c, STARWARS_EPS));
                (Case::StarWars(c), a)
            }
            Problem::MineLayer => {
                let (r, c) = if large {
                    (2 * rng.gen_range(0..=24) + 1, rng.gen_range(1..=49))
                } else {
                    (2 * rng.gen_range(0..=2) + 1, rng.gen_range(1..=5))
                };
                let (case, mines) = random_minelayer(&mut rng, r, c);
                let count = minelayer::middle_row_count(&mines);
                debug_assert_eq!(minelayer::minelayer_block_count(&case), count);
                (Case::MineLayer(case), Answer::Count(count))
            }
        };
        cases.push(case);
        answers.push(answer);
    }
    Instances {
        problem,
        cases,
        answers,
    }
}

pub fn file_stem(problem: Problem, size: Size, seed: u64) -> String {
    format!("{}-{}-{}", problem, size.name(), seed)
}

/// Writes `<problem>-<size>-<seed>.in` and `.ans` into `dir`.
pub fn write_instances(
    dir: &Path,
    problem: Problem,
    count: usize,
    size: Size,
    seed: u64,
) -> io::Result<(PathBuf, PathBuf)> {
    let inst = generate_instances(problem, count, size, seed);
    fs::create_dir_all(dir)?;
    let stem = file_stem(problem, size, seed);
    let input = dir.join(format!("{stem}.in"));
    let answers = dir.join(format!("{stem}.ans"));
    fs::write(&input, inst.input_text())?;
    fs::write(&answers, inst.answer_text())?;
    Ok((input, answers))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_triangle() {
        let r = parse_input(Problem::Triangle, "1\n2 3 6\n").unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].case, Case::Triangle(TriangleCase::new(2, 3, 6).unwrap()));
    }

    #[test]
    fn parse_dancing() {
        let r = parse_input(Problem::Dancing, "1\n3 1 5 15 13 11\n").unwrap();
        let Case::Dancing(c) = &r[0].case else { panic!() };
        assert_eq!((c.surprising, c.p, c.sums.clone()), (1, 5, vec![15, 13, 11]));
        assert_eq!(dancing::dancing_bruteforce(c), Ok(3));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_input(Problem::Triangle, "1\n2 3\nx y\n").unwrap_err();
        assert!(matches!(e, GcjError::Parse { line: 2, .. }), "{e}");
        let e = parse_input(Problem::Triangle, "1\n2 x 3\n").unwrap_err();
        assert!(matches!(e, GcjError::Parse { line: 2, .. }));
        let e = parse_input(Problem::Triangle, "0\n").unwrap_err();
        assert!(matches!(e, GcjError::Parse { line: 1, .. }));
        let e = parse_input(Problem::Triangle, "2\n\n1 1 1\n").unwrap_err();
        assert!(matches!(e, GcjError::Parse { line: 4, .. }));
        let e = parse_input(Problem::Triangle, "1\n1 1 1\n1 1 1\n").unwrap_err();
        assert!(matches!(e, GcjError::Parse { line: 3, .. }));
        let e = parse_input(Problem::MineLayer, "1\n2 2\n0 0\n0 0\n").unwrap_err();
        assert!(matches!(e, GcjError::Parse { line: 2, .. }));
    }

    #[test]
    fn blank_lines_and_trailing_space() {
        let r = parse_input(Problem::StarWars, "\n1\n\n2 \n0 0 0 1\n  6 0 0 1  \n\n").unwrap();
        let Case::StarWars(c) = &r[0].case else { panic!() };
        assert_eq!(c.ships.len(), 2);
    }

    #[test]
    fn formatting() {
        let rec = |a| CaseRecord {
            index: 1,
            case: Case::Triangle(TriangleCase::new(2, 3, 6).unwrap()),
            answer: Some(a),
        };
        let out = format_output(&[rec(Answer::Triangle(TriangleAnswer::Points([0, 0, 2, 0, 0, 3])))]).unwrap();
        assert_eq!(out, "Case #1: 0 0 2 0 0 3\n");
        let out = format_output(&[rec(Answer::Triangle(TriangleAnswer::Impossible))]).unwrap();
        assert_eq!(out, "Case #1: IMPOSSIBLE\n");
        assert_eq!(format_answer(&Answer::Real(3.0)), "3.000000");
        assert_eq!(format_answer(&Answer::Real(-1e-9)), "0.000000");
        assert_eq!(format_answer(&Answer::Real(-0.5)), "-0.500000");
        let mut missing = rec(Answer::Count(0));
        missing.answer = None;
        assert_eq!(format_output(&[missing]), Err(GcjError::MissingAnswer(1)));
    }

    #[test]
    fn output_round_trip() {
        for p in Problem::ALL {
            let inst = generate_instances(p, 6, Size::Small, 3);
            let back = parse_output(p, &inst.answer_text()).unwrap();
            assert_eq!(back.len(), 6);
            for (a, b) in inst.answers.iter().zip(&back) {
                assert!(answers_match(a, b, 1e-6, None));
                assert_eq!(format_answer(a), format_answer(b));
            }
        }
    }

    #[test]
    fn input_round_trip() {
        for p in Problem::ALL {
            for size in [Size::Small, Size::Large] {
                let inst = generate_instances(p, 3, size, 5);
                let parsed = parse_input(p, &inst.input_text()).unwrap();
                let cases: Vec<Case> = parsed.into_iter().map(|r| r.case).collect();
                assert_eq!(cases, inst.cases);
            }
        }
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_instances(Problem::Triangle, 10, Size::Small, 42);
        let b = generate_instances(Problem::Triangle, 10, Size::Small, 42);
        assert_eq!(a.input_text(), b.input_text());
        assert_eq!(a.answer_text(), b.answer_text());
        let c = generate_instances(Problem::Triangle, 10, Size::Small, 43);
        assert_ne!(a.input_text(), c.input_text());
    }

    #[test]
    fn generated_dancing_is_feasible() {
        let inst = generate_instances(Problem::Dancing, 5, Size::Small, 7);
        for (case, ans) in inst.cases.iter().zip(&inst.answers) {
            let Case::Dancing(c) = case else { panic!() };
            assert_eq!(Answer::Count(dancing::dancing_bruteforce(c).unwrap()), *ans);
        }
    }

    #[test]
    fn generated_minelayer_is_consistent() {
        let inst = generate_instances(Problem::MineLayer, 5, Size::Small, 7);
        for (case, ans) in inst.cases.iter().zip(&inst.answers) {
            let Case::MineLayer(c) = case else { panic!() };
            assert_eq!(Answer::Count(minelayer::minelayer_bruteforce(c).unwrap()), *ans);
        }
    }

    #[test]
    fn triangle_matching_uses_area_and_bounds() {
        let c = Case::Triangle(TriangleCase::new(2, 3, 6).unwrap());
        let e = Answer::Triangle(TriangleAnswer::Points([0, 0, 2, 0, 0, 3]));
        let other = Answer::Triangle(TriangleAnswer::Points([0, 3, 2, 3, 0, 0]));
        assert!(answers_match(&e, &other, 0.0, Some(&c)));
        let out_of_box = Answer::Triangle(TriangleAnswer::Points([0, 0, 6, 0, 0, 1]));
        assert!(answers_match(&e, &out_of_box, 0.0, None));
        assert!(!answers_match(&e, &out_of_box, 0.0, Some(&c)));
        assert!(!answers_match(
            &e,
            &Answer::Triangle(TriangleAnswer::Impossible),
            0.0,
            None
        ));
    }

    #[test]
    fn real_tolerance() {
        assert!(answers_match(&Answer::Real(3.0), &Answer::Real(3.0000005), 1e-6, None));
        assert!(!answers_match(&Answer::Real(3.0), &Answer::Real(3.001), 1e-6, None));
    }
}
