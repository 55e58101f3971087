mod common;

use proptest::prelude::*;
use rand::Rng;

use common::{classify_oracle, random_config, rng};
use tilt::grid::{classify, parse_board, serialize_board, step, step_worklist, Direction};

const DIRS: [Direction; 4] = Direction::ALL;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn step_keeps_configurations_valid(seed in any::<u64>(), d in 0usize..4) {
        let mut r = rng(seed);
        let Some(c) = random_config(&mut r, 8, 8, 6, 0.3) else { return Ok(()) };
        let n = step(&c, DIRS[d]);
        prop_assert!(n.validate().is_ok());
        prop_assert_eq!(n.tiles.len(), c.tiles.len());
        for (k, p) in &c.tiles {
            let q = n.tiles[k];
            prop_assert!(p.row.abs_diff(q.row) + p.col.abs_diff(q.col) <= 1);
        }
    }

    #[test]
    fn step_matches_worklist_fixpoint(seed in any::<u64>(), d in 0usize..4) {
        let mut r = rng(seed);
        let Some(c) = random_config(&mut r, 8, 8, 8, 0.25) else { return Ok(()) };
        prop_assert_eq!(step(&c, DIRS[d]), step_worklist(&c, DIRS[d]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn south_east_drift_is_monotone(seed in any::<u64>(), word in proptest::collection::vec(any::<bool>(), 0..30)) {
        let mut r = rng(seed);
        let Some(mut c) = random_config(&mut r, 8, 8, 5, 0.25) else { return Ok(()) };
        for s in word {
            let n = step(&c, if s { Direction::S } else { Direction::E });
            for (k, p) in &c.tiles {
                prop_assert!(n.tiles[k].row >= p.row && n.tiles[k].col >= p.col);
            }
            c = n;
        }
    }

    #[test]
    fn text_format_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let Some(c) = random_config(&mut r, 8, 8, 6, 0.3) else { return Ok(()) };
        let text = serialize_board(&c);
        prop_assert_eq!(parse_board(&text).unwrap(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn classify_matches_definitions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let fill = r.gen_range(0.0..0.5);
        let Some(c) = random_config(&mut r, 7, 7, 0, fill) else { return Ok(()) };
        prop_assert_eq!(classify(&c.board), classify_oracle(&c.board));
    }
}
