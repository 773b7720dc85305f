use gap::env::{
    generate_maze, BinaryAddition, Blocksworld, Environment, ErrorInjector, HanoiAbstraction, LocationAbstraction,
    MazeTaxi, Neighborhood, SimpleTaxi, StripsWorld, TowerOfHanoi,
};
use gap::harness::Domain;
use gap::model::{ActionId, Model};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{HashMap, HashSet};

fn all_domains() -> Vec<Domain> {
    vec![
        Domain::Strips,
        Domain::TaxiSimple { abstraction: LocationAbstraction::Half },
        Domain::TaxiMaze { neighborhood: Neighborhood::Eight, with_action: true },
        Domain::Toh { pegs: 3, disks: 3, abstraction: HanoiAbstraction::AII },
        Domain::Blocks { blocks: 4 },
        Domain::Binadd { digits: 3 },
    ]
}

fn rollout(env: &mut dyn Environment, seed: u64, steps: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut obs = vec![env.reset(&mut rng)];
    for _ in 0..steps {
        let a = ActionId(rng.gen_range(0..env.action_count()) as u32);
        obs.push(env.step(a));
    }
    obs
}

#[test]
fn seeded_worlds_replay_identically() {
    for d in all_domains() {
        let a = rollout(d.build().as_mut(), 17, 300);
        let b = rollout(d.build().as_mut(), 17, 300);
        assert_eq!(a, b, "{d:?}");
        // observations register to stable ids
        let mut m = Model::new(1);
        let ids: Vec<_> = a.iter().map(|o| m.observe(o)).collect();
        let again: Vec<_> = a.iter().map(|o| m.observe(o)).collect();
        assert_eq!(ids, again);
    }
}

#[test]
fn goal_predicate_agrees_with_world() {
    for d in all_domains() {
        let mut env = d.build();
        let goal = env.goal();
        let mut m = Model::new(1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        env.reset(&mut rng);
        for _ in 0..2000 {
            let obs = env.observation();
            let id = m.observe(&obs);
            if env.at_goal() {
                assert!(goal.is_goal(id, &m.registry), "{d:?}: {obs}");
                env.reset(&mut rng);
            }
            env.step(ActionId(rng.gen_range(0..env.action_count()) as u32));
        }
    }
}

#[test]
fn strips_canonical_optimum_is_seventeen() {
    let mut w = StripsWorld::new().with_fixed_start();
    w.reset(&mut ChaCha8Rng::seed_from_u64(0));
    assert_eq!(w.optimal_steps(), Some(17));
    // random starts sit in the right half and are all solvable
    let mut w = StripsWorld::new();
    let width = w.grid().width;
    let starts = w.random_starts().to_vec();
    assert!(!starts.is_empty());
    for p in starts {
        assert!(p.0 >= width / 2);
        w.place(p);
        assert!(w.optimal_steps().is_some());
    }
}

#[test]
fn strips_door_status_is_not_observed() {
    // position and the held item only
    let obs = rollout(&mut StripsWorld::new(), 8, 2000);
    for o in obs {
        assert_eq!(o.split(',').count(), 3, "{o}");
    }
}

#[test]
fn hanoi_optima() {
    for (d, want) in [(3, 7), (5, 31)] {
        let t = TowerOfHanoi::new(3, d, HanoiAbstraction::Full);
        assert_eq!(t.optimal_steps(), Some(want));
    }
    // four pegs: Frame-Stewart numbers
    for (d, want) in [(1, 1), (2, 3), (3, 5), (4, 9), (5, 13)] {
        let t = TowerOfHanoi::new(4, d, HanoiAbstraction::Full);
        assert_eq!(t.optimal_steps(), Some(want));
    }
    assert_eq!(TowerOfHanoi::new(4, 2, HanoiAbstraction::Full).action_count(), 12);
}

#[test]
fn hanoi_abstractions_are_coarsenings() {
    let t = TowerOfHanoi::new(3, 4, HanoiAbstraction::Full);
    let states = t.reachable_states();
    assert_eq!(states.len(), 81);
    let mut counts_of = HashMap::new();
    let mut full = HashSet::new();
    for s in &states {
        let mut w = TowerOfHanoi::new(3, 4, HanoiAbstraction::Full);
        w.set_state(s.clone());
        let pegs = w.pegs();
        full.insert(HanoiAbstraction::Full.observe(&pegs));
        // AIII carries the AIV counts
        let a3 = HanoiAbstraction::AIII.observe(&pegs);
        let a4 = HanoiAbstraction::AIV.observe(&pegs);
        let counts: Vec<String> = pegs.iter().map(|p| p.len().to_string()).collect();
        assert_eq!(a4, format!("[{}]", counts.join(",")));
        assert!(counts_of.insert(a3, a4.clone()).map_or(true, |prev| prev == a4));
    }
    assert_eq!(full.len(), 81);
    let distinct = |abs: HanoiAbstraction| {
        states
            .iter()
            .map(|s| {
                let mut w = TowerOfHanoi::new(3, 4, HanoiAbstraction::Full);
                w.set_state(s.clone());
                abs.observe(&w.pegs())
            })
            .collect::<HashSet<_>>()
            .len()
    };
    assert!(distinct(HanoiAbstraction::AIV) < distinct(HanoiAbstraction::AIII));
    assert!(distinct(HanoiAbstraction::AI) < 81);
}

#[test]
fn blocks_start_is_sticky_unless_resampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut w = Blocksworld::new(4);
    let first = w.reset(&mut rng);
    for _ in 0..20 {
        w.step(ActionId(rng.gen_range(0..16)));
        assert_eq!(w.reset(&mut rng), first);
    }
    let mut w = Blocksworld::new(4).resampling();
    let seen: HashSet<_> = (0..50).map(|_| w.reset(&mut rng)).collect();
    assert!(seen.len() > 10);
}

#[test]
fn sorted_blocks_start_at_goal() {
    let mut w = Blocksworld::new(3);
    // 1 on 2, 2 on 3, 3 on the table
    w.set_support(vec![2, 3, 0]);
    assert!(w.at_goal());
    assert_eq!(w.optimal_steps(), Some(0));
    assert_eq!(w.observation(), "[3,2,1]");
}

#[test]
fn blocks_moves_obey_clearness() {
    let mut w = Blocksworld::new(3);
    // 1 on 3, 2 on the table: the Sussman start
    w.set_support(vec![3, 0, 0]);
    let before = w.observation();
    // block 3 is covered, so moving it onto 2 does nothing
    assert_eq!(w.step(ActionId(2 * 3 + 1)), before);
    // block 1 to the table
    assert_eq!(w.step(ActionId(0)), "[1][2][3]");
    // optimum from the Sussman start is three moves
    w.set_support(vec![3, 0, 0]);
    assert_eq!(w.optimal_steps(), Some(3));
}

#[test]
fn sussman_fraction_by_enumeration() {
    let w = Blocksworld::new(3);
    let states = w.all_states();
    let flagged = states
        .iter()
        .filter(|s| {
            let mut b = Blocksworld::new(3);
            b.set_support(s.to_vec());
            gap::env::has_sussman_conditions(&b.stacks())
        })
        .count();
    // a clean start has every tower descending upwards, one per set
    // partition of the blocks: Bell(3) = 5
    assert_eq!(states.len(), 13);
    assert_eq!(flagged, 13 - 5);
}

#[test]
fn binadd_matches_integer_addition() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let n = rng.gen_range(1..8);
        let a: u32 = rng.gen_range(0..1 << n);
        let b: u32 = rng.gen_range(0..1 << n);
        let bits = |v: u32| (0..n).map(|i| ((v >> i) & 1) as u8).collect::<Vec<_>>();
        let mut env = BinaryAddition::new(n);
        env.set_operands(bits(a), bits(b));
        let sum = a + b;
        // write each set bit of the sum, walking right
        for i in 0..=n {
            if (sum >> i) & 1 == 1 {
                env.step(ActionId(0));
            }
            env.step(ActionId(2));
        }
        assert!(env.at_goal(), "{a} + {b}");
        assert!(env.optimal_steps() == Some(0));
    }
}

#[test]
fn binadd_toggling_a_correct_bit_costs_one() {
    let mut env = BinaryAddition::new(3);
    env.set_operands(vec![1, 0, 0], vec![0, 0, 0]);
    // result 000 vs sum 0001: three of four bits already right
    let correct = |o: &str| o.rsplit('|').next().unwrap().parse::<usize>().unwrap();
    let start = env.observation();
    assert_eq!(correct(&start), 3);
    env.step(ActionId(2));
    let o = env.step(ActionId(0));
    assert_eq!(correct(&o), 2);
    // index clamps at zero
    let mut env = BinaryAddition::new(2);
    env.set_operands(vec![1, 1], vec![0, 1]);
    let o = env.observation();
    assert_eq!(env.step(ActionId(3)), o);
}

#[test]
fn taxi_half_abstraction_quarters_locations() {
    let mut cells: HashMap<String, usize> = HashMap::new();
    for x in 0..14 {
        for y in 0..14 {
            *cells.entry(LocationAbstraction::Half.apply((x, y))).or_default() += 1;
        }
    }
    assert_eq!(cells.len(), 49);
    assert!(cells.values().all(|&c| c == 4));
    assert_eq!(LocationAbstraction::TwoThirds.apply((4, 1)), "2,0");
    assert_eq!(LocationAbstraction::ColumnThird.apply((8, 5)), "2");
}

#[test]
fn taxi_layouts_are_connected_and_solvable() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut t = SimpleTaxi::new(LocationAbstraction::Exact);
    for _ in 0..20 {
        t.reset(&mut rng);
        assert!(t.grid().is_connected());
        let walls = 225 - t.grid().open_cells().len();
        assert!(walls <= 23 && walls >= 15, "{walls}");
        assert!(t.optimal_steps().is_some());
    }
}

#[test]
fn carved_maze_is_a_spanning_tree() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (w, h) in [(4, 4), (3, 6), (7, 2)] {
        let g = generate_maze(w, h, 0, &mut rng);
        // cells plus the passages between them
        assert_eq!(g.open_cells().len(), w * h + (w * h - 1));
        assert!(g.is_connected());
        let g = generate_maze(w, h, 2, &mut rng);
        assert!(g.is_connected());
    }
}

#[test]
fn maze_observations_compose() {
    // the same seed draws the same maze, so the variants see one world
    let variants = [
        (Neighborhood::Eight, true),
        (Neighborhood::Eight, false),
        (Neighborhood::Four, true),
        (Neighborhood::Four, false),
    ];
    let streams: Vec<Vec<String>> =
        variants.iter().map(|&(n, a)| rollout(&mut MazeTaxi::new(n, a), 9, 400)).collect();
    for t in 0..streams[0].len() {
        let parts: Vec<Vec<&str>> = streams.iter().map(|s| s[t].split('|').collect()).collect();
        // four-neighbourhood bits are the orthogonal subset of the eight
        let eight: Vec<char> = parts[1][0].chars().collect();
        let four: String = [0, 2, 4, 6].iter().map(|&i| eight[i]).collect();
        assert_eq!(parts[3][0], four);
        // adding the last action inserts one field and leaves the rest
        for (with, without) in [(0, 1), (2, 3)] {
            let mut stripped = parts[with].clone();
            stripped.remove(3);
            assert_eq!(stripped, parts[without]);
        }
        assert_eq!(parts[0][1..], parts[2][1..]);
    }
}

#[test]
fn injector_rates() {
    let n = 1_000_000;
    let mut inj = ErrorInjector::new(0.3, ChaCha8Rng::seed_from_u64(1));
    let subs = (0..n).filter(|_| inj.inject_traced(ActionId(0), 6).1).count();
    assert!((subs as f64 / n as f64 - 0.3).abs() < 0.005);

    let mut inj = ErrorInjector::new(1.0, ChaCha8Rng::seed_from_u64(2));
    let mut hist = [0usize; 4];
    for _ in 0..n {
        hist[inj.inject(ActionId(0), 4).index()] += 1;
    }
    let expected = n as f64 / 4.0;
    let chi2: f64 = hist.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // 3 degrees of freedom, 99.9% quantile
    assert!(chi2 < 16.27, "{hist:?}");
    assert!(hist.iter().all(|&c| (c as f64 / expected - 1.0).abs() < 0.01));

    let mut inj = ErrorInjector::new(0.0, ChaCha8Rng::seed_from_u64(3));
    assert!((0..1000).all(|i| inj.inject(ActionId(i % 5), 5) == ActionId(i % 5)));
}
