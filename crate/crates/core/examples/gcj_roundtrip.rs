//! Generates an instance file, solves it with every backend a problem
//! supports, and checks the answers against the generator's.
//!
//! ```text
//! cargo run --example gcj_roundtrip
//! ```

use dualsolve::gcj::{self, CaseRecord, Size};
use dualsolve::problems::{self, Backend, Problem};

fn main() {
    for problem in Problem::ALL {
        let inst = gcj::generate_instances(problem, 5, Size::Small, 2024);
        let text = inst.input_text();
        let expected = gcj::parse_output(problem, &inst.answer_text()).unwrap();
        print!("{problem}: {} cases;", expected.len());
        for backend in Backend::ALL.into_iter().filter(|&b| problem.supports(b)) {
            let mut records: Vec<CaseRecord> = gcj::parse_input(problem, &text).unwrap();
            for r in &mut records {
                r.answer = Some(problems::solve(&r.case, backend).unwrap());
            }
            let out = gcj::format_output(&records).unwrap();
            let got = gcj::parse_output(problem, &out).unwrap();
            let agree = records
                .iter()
                .zip(expected.iter().zip(&got))
                .all(|(r, (e, g))| gcj::answers_match(e, g, 1e-6, Some(&r.case)));
            print!(" {backend} {}", if agree { "agrees" } else { "DISAGREES" });
        }
        println!();
    }
    let first = gcj::generate_instances(Problem::Triangle, 2, Size::Small, 1);
    println!(
        "\nsample input:\n{}sample answers:\n{}",
        first.input_text(),
        first.answer_text()
    );
}
