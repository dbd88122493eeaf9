#![allow(dead_code)]

use patsforge::reduction::{solve_1in3_bruteforce, Formula};
use patsforge::rtas::{ColorId, Pattern};
use rand::seq::SliceRandom;
use rand::Rng;

/// A random monotone formula with m in 3..=max_m and k in 1..=max_k.
pub fn random_formula(rng: &mut impl Rng, max_m: usize, max_k: usize) -> Formula {
    let m = rng.gen_range(3..=max_m);
    let k = rng.gen_range(1..=max_k);
    let vars: Vec<usize> = (1..=m).collect();
    let clauses = (0..k)
        .map(|_| {
            let mut c: Vec<usize> = vars.choose_multiple(rng, 3).copied().collect();
            c.sort_unstable();
            [c[0], c[1], c[2]]
        })
        .collect();
    Formula::new(m, clauses).unwrap()
}

pub fn random_satisfiable(rng: &mut impl Rng, max_m: usize, max_k: usize) -> Formula {
    loop {
        let f = random_formula(rng, max_m, max_k);
        if solve_1in3_bruteforce(&f).unwrap().is_some() {
            return f;
        }
    }
}

pub fn random_pattern(rng: &mut impl Rng, w: usize, h: usize, colors: u16) -> Pattern {
    let cells = (0..w * h)
        .map(|_| ColorId(rng.gen_range(0..colors)))
        .collect();
    Pattern::new(w, h, cells).unwrap()
}

/// Every pattern of the given shape over colors 0 and 1.
pub fn all_binary_patterns(w: usize, h: usize) -> Vec<Pattern> {
    (0..1u32 << (w * h))
        .map(|bits| {
            let cells = (0..w * h)
                .map(|i| ColorId((bits >> i & 1) as u16))
                .collect();
            Pattern::new(w, h, cells).unwrap()
        })
        .collect()
}
