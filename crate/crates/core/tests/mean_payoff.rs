mod common;

use common::*;
use coopverif_core::coop::Status;
use coopverif_core::format::{parse_game, parse_joint, parse_profile};
use coopverif_core::mp::{
    lower_bound_characterisation, mp_core_membership, mp_is_beneficial_deviation, profile_payoffs, Rational,
};
use coopverif_core::strategy::run_of;

const GAME: &str = include_str!("data/memory_beats_memoryless.game");
const PROFILE: &str = include_str!("data/memory_beats_memoryless.strat");

// Seven-step loop s0 s2 s2 s1 s1 s1 s1, one machine state per position.
fn cycling_deviation() -> String {
    let moves = [("a0", "a0"), ("a0", "a0"), ("a1", "a0"), ("a0", "a1"), ("a0", "a1"), ("a0", "a1"), ("a0", "a0")];
    let mut text = String::new();
    for agent in 1..=2 {
        text += &format!("strategy {agent}\nmachine\nmstates 7\nminit 0\n");
        for (q, (x, y)) in moves.iter().enumerate() {
            text += &format!("out {q} : {}\nnext {q} * -> {}\n", if agent == 1 { x } else { y }, (q + 1) % 7);
        }
    }
    text
}

#[test]
fn memoryless_membership_misses_finite_memory_deviations() {
    let game = parse_game(GAME).unwrap();
    let g = game.as_mp().unwrap();
    let p = parse_profile(PROFILE, &g.structure).unwrap();
    let half = Rational::new(1, 2);
    assert_eq!(profile_payoffs(g, &p).unwrap(), vec![half, Rational::from_integer(1)]);

    assert_eq!(mp_core_membership(g, &p).unwrap().status, Status::Holds);
    assert!(mp_in_core_memoryless(g, &p));
    let run = run_of(&g.structure, &p).unwrap();
    assert!(!lower_bound_characterisation(g, &run).unwrap());

    let dev = parse_joint(&cycling_deviation(), &g.structure).unwrap();
    let after = run_of(&g.structure, &p.with_deviation(&dev)).unwrap();
    assert_eq!(loop_mean(g, &after), vec![Rational::new(4, 7), Rational::new(9, 7)]);
    assert!(mp_is_beneficial_deviation(g, &p, &dev).unwrap());
}
