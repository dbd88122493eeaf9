mod common;

use std::collections::{BTreeMap, HashSet};

use patsforge::formats::{
    parse_pattern, parse_seed, parse_tileset, write_pattern, write_seed, write_tileset,
};
use patsforge::reduction::{
    all_solutions, build_circuit_seed, encode_x, encode_y, paint_circuit, parse_formula,
    satisfies_1in3, write_formula, Assignment, Formula,
};
use patsforge::rtas::{
    canonicalize, is_directed, isomorphic, simulate, simulate_in_order, ColorId, Glue, LSeed,
    Pattern, TileSet, TileType,
};
use patsforge::solver::{brute_force_min, min_tileset};
use patsforge::teval::t_eval;
use proptest::prelude::*;

fn glue(i: u8) -> Glue {
    Glue::new(&format!("g{i}"))
}

/// Directed tile sets over a small alphabet: one type per chosen (W, S) key.
fn directed_tileset() -> impl Strategy<Value = TileSet> {
    prop::collection::btree_map((0..3u8, 0..3u8), (0..3u8, 0..3u8, 0..3u16), 1..9).prop_map(
        |m: BTreeMap<(u8, u8), (u8, u8, u16)>| {
            let types = m
                .into_iter()
                .map(|((w, s), (n, e, c))| {
                    TileType::new(glue(n), glue(w), glue(s), glue(e), ColorId(c))
                })
                .collect();
            TileSet::new(types).unwrap()
        },
    )
}

fn seed(max: usize) -> impl Strategy<Value = LSeed> {
    (
        prop::collection::vec(0..3u8, 1..=max),
        prop::collection::vec(0..3u8, 1..=max),
    )
        .prop_map(|(x, y)| {
            LSeed::new(
                x.into_iter().map(glue).collect(),
                y.into_iter().map(glue).collect(),
            )
            .unwrap()
        })
}

fn pattern(max_w: usize, max_h: usize, colors: u16) -> impl Strategy<Value = Pattern> {
    (1..=max_w, 1..=max_h).prop_flat_map(move |(w, h)| {
        prop::collection::vec(0..colors, w * h)
            .prop_map(move |c| Pattern::new(w, h, c.into_iter().map(ColorId).collect()).unwrap())
    })
}

fn formula() -> impl Strategy<Value = Formula> {
    (3..=6usize).prop_flat_map(|m| {
        let clause = prop::sample::subsequence((1..=m).collect::<Vec<_>>(), 3)
            .prop_map(|c| [c[0], c[1], c[2]]);
        prop::collection::vec(clause, 0..=3).prop_map(move |cs| Formula::new(m, cs).unwrap())
    })
}

fn row_major(w: usize, h: usize) -> Vec<(usize, usize)> {
    (1..=h).flat_map(|y| (1..=w).map(move |x| (x, y))).collect()
}

fn column_major(w: usize, h: usize) -> Vec<(usize, usize)> {
    (1..=w).flat_map(|x| (1..=h).map(move |y| (x, y))).collect()
}

proptest! {
    #[test]
    fn simulation_is_deterministic_and_order_free(ts in directed_tileset(), s in seed(6)) {
        prop_assert!(is_directed(&ts));
        let a = simulate(&ts, &s);
        prop_assert_eq!(&a, &simulate(&ts, &s));
        let (w, h) = (s.width(), s.height());
        prop_assert_eq!(&a, &simulate_in_order(&ts, &s, &row_major(w, h)));
        prop_assert_eq!(&a, &simulate_in_order(&ts, &s, &column_major(w, h)));
        if let Some(asm) = a.completed() {
            prop_assert!(asm.respects(&s));
        }
    }

    #[test]
    fn tileset_roundtrip(ts in directed_tileset()) {
        prop_assert_eq!(parse_tileset(&write_tileset(&ts)).unwrap(), ts);
    }

    #[test]
    fn seed_roundtrip(s in seed(10)) {
        prop_assert_eq!(parse_seed(&write_seed(&s)).unwrap(), s);
    }

    #[test]
    fn pattern_roundtrip(p in pattern(6, 6, 11)) {
        prop_assert_eq!(parse_pattern(&write_pattern(&p)).unwrap(), p);
    }

    #[test]
    fn formula_roundtrip(f in formula()) {
        prop_assert_eq!(parse_formula(&write_formula(&f)).unwrap(), f);
    }

    #[test]
    fn canonical_form_ignores_names_and_order(
        ts in directed_tileset(),
        shift in 1..7u8,
        perm in any::<prop::sample::Index>(),
    ) {
        let renamed: Vec<TileType> = ts
            .types()
            .iter()
            .map(|t| {
                let r = |g: Glue| Glue::new(&format!("h{shift}{}", g.name()));
                TileType::new(r(t.north), r(t.west), r(t.south), r(t.east), t.color)
            })
            .collect();
        let mut shuffled = renamed.clone();
        let k = perm.index(shuffled.len());
        shuffled.rotate_left(k);
        let other = TileSet::new(shuffled).unwrap();
        prop_assert_eq!(canonicalize(&ts), canonicalize(&other));
        prop_assert!(isomorphic(&ts, &other));
    }

    #[test]
    fn encoding_lengths(f in formula(), h in 1..5usize, mask in any::<u64>()) {
        let (m, k) = (f.m, f.k());
        prop_assert_eq!(encode_x(&f, h).len(), k * (1 + h + m) + k * k.saturating_sub(1) / 2 + 1);
        let a = Assignment::from_mask(m, mask);
        prop_assert_eq!(encode_y(&a, k).len(), m + k);
        let s = build_circuit_seed(&f, &a, h);
        prop_assert_eq!((s.width(), s.height()), (paint_circuit(&f, h).width, h + m + k));
    }

    #[test]
    fn circuit_completes_iff_satisfied(f in formula(), h in 1..4usize, mask in any::<u64>()) {
        let a = Assignment::from_mask(f.m, mask);
        let out = simulate(&t_eval(), &build_circuit_seed(&f, &a, h));
        let reproduces = out.completed().is_some_and(|asm| asm.pattern() == paint_circuit(&f, h));
        prop_assert_eq!(reproduces, satisfies_1in3(&f, &a));
    }

    #[test]
    fn oracle_solutions_are_exactly_the_satisfying_masks(f in formula()) {
        let found: HashSet<Assignment> = all_solutions(&f).unwrap().into_iter().collect();
        for mask in 0..1u64 << f.m {
            let a = Assignment::from_mask(f.m, mask);
            prop_assert_eq!(found.contains(&a), satisfies_1in3(&f, &a));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_matches_brute_force(p in pattern(3, 4, 3)) {
        let cells = p.width * p.height;
        let sol = min_tileset(&p, cells).unwrap();
        prop_assert_eq!(sol.as_ref().map(|s| s.size), brute_force_min(&p, cells).unwrap());
        if let Some(s) = sol {
            prop_assert!(is_directed(&s.tiles));
            let again = simulate(&s.tiles, &s.seed).completed().map(|a| a.pattern());
            prop_assert_eq!(again, Some(p));
        }
    }

    #[test]
    fn merging_colors_never_costs_more(p in pattern(3, 4, 3), from in 0..3u16, into in 0..3u16) {
        let cells: Vec<ColorId> = p
            .cells()
            .iter()
            .map(|&c| if c == ColorId(from) { ColorId(into) } else { c })
            .collect();
        let merged = Pattern::new(p.width, p.height, cells).unwrap();
        let n = p.width * p.height;
        let before = min_tileset(&p, n).unwrap().unwrap().size;
        let after = min_tileset(&merged, n).unwrap().unwrap().size;
        prop_assert!(after <= before);
    }
}

#[test]
fn random_formula_helper_is_monotone() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for _ in 0..20 {
        let f = common::random_satisfiable(&mut rng, 8, 4);
        assert!(f.clauses.iter().all(|c| c[0] < c[1] && c[1] < c[2]));
        assert!(!all_solutions(&f).unwrap().is_empty());
    }
}
