//! Property tests for the structural invariants the library promises:
//! route agreement, exactness of the linear algebra, substitution identities,
//! model conversions, and parser totality.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{seq::SliceRandom, Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use polygraphs::games::ent::{EntProfile, EntStructure};
use polygraphs::games::extensive::TreeError;
use polygraphs::games::normal::{sample_normal_form, strategy_variable_name, MixedProfile};
use polygraphs::io::{parse_game_file, parse_point_file};
use polygraphs::multilinear::{Assignment, Monomial, MultilinearPoly, VarSpace};
use polygraphs::numerics::{
    format_rational, parse_rational, permanent_naive, permanent_ryser, rat, solve_linear_exact,
    LinearSolution, RationalMatrix, DEFAULT_DIMENSION_CAP,
};
use polygraphs::oracles::sample_polygraph;

mod common;
use common::{random_hierarchy, random_tree};

fn square_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (0usize..=6).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::vec(-4i64..=4, n), n)
    })
}

fn to_bigints(matrix: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    matrix
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

proptest! {
    /// The inclusion–exclusion permanent and the permutation-sum permanent
    /// agree on arbitrary small integer matrices.
    #[test]
    fn ryser_equals_naive(matrix in square_matrix()) {
        let m = to_bigints(&matrix);
        prop_assert_eq!(permanent_ryser(&m).unwrap(), permanent_naive(&m));
    }

    /// The permanent is invariant under independent row and column
    /// permutations.
    #[test]
    fn permanent_ignores_row_and_column_order(matrix in square_matrix(), seed in any::<u64>()) {
        let n = matrix.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows: Vec<usize> = (0..n).collect();
        let mut cols: Vec<usize> = (0..n).collect();
        rows.shuffle(&mut rng);
        cols.shuffle(&mut rng);
        let shuffled: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| BigInt::from(matrix[r][c])).collect())
            .collect();
        prop_assert_eq!(
            permanent_ryser(&shuffled).unwrap(),
            permanent_ryser(&to_bigints(&matrix)).unwrap()
        );
    }

    /// Rendered rationals parse back to the same value, and integers render
    /// without a slash.
    #[test]
    fn rational_rendering_round_trips(p in -100_000i64..=100_000, q in 1i64..=9_999) {
        let r = rat(p, q);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
        let whole = rat(p, 1);
        prop_assert_eq!(format_rational(&whole), p.to_string());
    }

    /// The rational parser is total: arbitrary short strings either parse or
    /// error, but never panic.
    #[test]
    fn rational_parser_never_panics(s in "\\PC{0,20}") {
        let _ = parse_rational(&s);
    }

    /// Solutions returned by exact elimination really solve the system, and
    /// a system built from a known solution is never reported inconsistent.
    #[test]
    fn elimination_solutions_satisfy_their_systems(
        dims in (1usize..=5, 1usize..=5),
        entries in prop::collection::vec(-4i64..=4, 25),
        solution in prop::collection::vec((-6i64..=6, 1i64..=3), 5),
    ) {
        let (m, n) = dims;
        let mut matrix = RationalMatrix::zeros(m, n);
        for r in 0..m {
            for c in 0..n {
                matrix.set(r, c, rat(entries[r * 5 + c], 1));
            }
        }
        let x_true: Vec<BigRational> =
            solution[..n].iter().map(|&(p, q)| rat(p, q)).collect();
        let b = matrix.mul_vec(&x_true);
        match solve_linear_exact(&matrix, &b) {
            LinearSolution::Unique(x) => {
                prop_assert_eq!(&x, &x_true, "unique solutions are the known one");
                prop_assert_eq!(matrix.mul_vec(&x), b);
            }
            LinearSolution::Underdetermined { particular, .. } => {
                prop_assert_eq!(matrix.mul_vec(&particular), b);
            }
            LinearSolution::Inconsistent => {
                prop_assert!(false, "a satisfiable system was called inconsistent");
            }
        }
    }

    /// Substituting each block's first variable by one minus the rest
    /// commutes with evaluation at any point satisfying those block sums,
    /// and eliminates the substituted variables from the support.
    #[test]
    fn dehomogenization_commutes_with_evaluation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n_blocks = rng.gen_range(2..=3usize);
        let sizes: Vec<usize> = (0..n_blocks).map(|_| rng.gen_range(1..=3)).collect();
        let mut vars = Vec::new();
        for (b, &size) in sizes.iter().enumerate() {
            for k in 0..size {
                vars.push((format!("x{b}_{k}"), b));
            }
        }
        let space = VarSpace::new(vars).unwrap();
        let distinguished: Vec<usize> =
            (0..n_blocks).map(|b| space.block_members(b)[0]).collect();

        // a random block-linear polynomial: each monomial takes at most one
        // variable per block
        let mut poly = MultilinearPoly::zero(&space);
        for _ in 0..rng.gen_range(1..=6) {
            let mut mono_vars = Vec::new();
            for b in 0..n_blocks {
                if rng.gen_bool(0.6) {
                    let members = space.block_members(b);
                    mono_vars.push(members[rng.gen_range(0..members.len())]);
                }
            }
            poly.add_term(
                Monomial::from_vars(mono_vars),
                rat(rng.gen_range(-5i64..=5), 1),
            );
        }

        // a point whose blocks sum to one, the first coordinate implied
        let mut point = Assignment::empty(&space);
        for b in 0..n_blocks {
            let members = space.block_members(b);
            let mut first = BigRational::one();
            for &v in &members[1..] {
                let value = rat(rng.gen_range(-3i64..=3), rng.gen_range(1..=4));
                first -= &value;
                point.set(v, value);
            }
            point.set(members[0], first);
        }

        let reduced = poly.dehomogenize(&distinguished).unwrap();
        prop_assert_eq!(
            poly.evaluate(&point).unwrap(),
            reduced.evaluate(&point).unwrap()
        );
        for (mono, _) in reduced.terms() {
            for &v in &distinguished {
                prop_assert!(!mono.contains(v), "substituted variable survived");
            }
        }
    }

    /// The game-file parser is total over arbitrary input text.
    #[test]
    fn game_file_parser_never_panics(s in "\\PC{0,120}") {
        let _ = parse_game_file(&s);
        let _ = parse_point_file(&s);
    }

    /// Counts of complete games depend only on the strategy counts, never on
    /// the payoffs.
    #[test]
    fn complete_game_counts_ignore_payoffs(
        shape_idx in 0usize..5,
        seed_a in any::<u64>(),
        seed_b in any::<u64>(),
    ) {
        let shapes: [&[usize]; 5] = [&[2, 2], &[2, 3], &[2, 2, 2], &[3, 3], &[2, 2, 3]];
        let shape = shapes[shape_idx];
        let a = sample_normal_form(shape, seed_a)
            .complete_polygraph()
            .unwrap()
            .count(DEFAULT_DIMENSION_CAP)
            .unwrap();
        let b = sample_normal_form(shape, seed_b)
            .complete_polygraph()
            .unwrap()
            .count(DEFAULT_DIMENSION_CAP)
            .unwrap();
        prop_assert_eq!(a.permanent, b.permanent);
        prop_assert_eq!(a.count, b.count);
    }

    /// The generated indifference equations evaluate, at any profile, to the
    /// expected-utility difference they claim to encode: "play this strategy"
    /// minus "play the first strategy".
    #[test]
    fn residuals_are_expected_utility_differences(
        shape_idx in 0usize..4,
        game_seed in any::<u64>(),
        point_seed in any::<u64>(),
    ) {
        let shapes: [&[usize]; 4] = [&[2, 2], &[2, 3], &[3, 2], &[2, 2, 2]];
        let game = sample_normal_form(shapes[shape_idx], game_seed);
        let system = game.indifference_system().unwrap();

        let mut rng = ChaCha8Rng::seed_from_u64(point_seed);
        let mut reduced = BTreeMap::new();
        for p in game.players() {
            for s in p.strategies.iter().skip(1) {
                reduced.insert(
                    strategy_variable_name(&p.name, s),
                    rat(rng.gen_range(-3i64..=3), rng.gen_range(1..=4)),
                );
            }
        }
        let profile = MixedProfile::from_reduced(game.players(), &reduced).unwrap();
        let point = Assignment::from_named(system.space(), &reduced).unwrap();
        let residual = system.residual(&point).unwrap();

        let mut k = 0;
        for (i, p) in game.players().iter().enumerate() {
            let base = game.expected_utility(i, &profile.with_pure(i, 0));
            for s in 1..p.strategies.len() {
                let dev = game.expected_utility(i, &profile.with_pure(i, s));
                prop_assert_eq!(&residual[k], &(dev - &base), "player {} strategy {}", i, s);
                k += 1;
            }
        }
        prop_assert_eq!(k, residual.len());
    }

    /// Viewing a game as a fully connected graphical model and expanding it
    /// back is the identity.
    #[test]
    fn graphical_view_round_trips(shape_idx in 0usize..4, seed in any::<u64>()) {
        let shapes: [&[usize]; 4] = [&[2, 2], &[2, 3], &[3, 3], &[2, 2, 2]];
        let game = sample_normal_form(shapes[shape_idx], seed);
        prop_assert_eq!(&game.to_graphical().to_normal_form(), &game);
    }

    /// Wrapping a game in a one-level hierarchy (all players direct children
    /// of the root) changes nothing: same equations, same graph.
    #[test]
    fn one_level_hierarchy_is_transparent(shape_idx in 0usize..4, seed in any::<u64>()) {
        let shapes: [&[usize]; 4] = [&[2, 2], &[2, 3], &[3, 3], &[2, 2, 2]];
        let game = sample_normal_form(shapes[shape_idx], seed);
        let ent = EntStructure::trivial(&game);
        prop_assert_eq!(
            ent.relaxed_system().unwrap(),
            game.indifference_system().unwrap()
        );
        let a = ent.relaxed_polygraph().unwrap();
        let b = game.complete_polygraph().unwrap();
        prop_assert_eq!(a.block_sizes(), b.block_sizes());
        prop_assert_eq!(a.edges(), b.edges());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Folding chance nodes into expected-payoff leaves does not change the
    /// induced normal form.
    #[test]
    fn chance_collapse_preserves_the_normal_form(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_tree(&mut rng);
        match tree.normal_form_of(20_000) {
            Ok(game) => {
                let collapsed = tree.collapse_chance_leaves().normal_form_of(20_000).unwrap();
                prop_assert_eq!(game, collapsed);
            }
            Err(TreeError::StrategySpaceTooLarge { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    /// Reach probabilities under any complete choice assignment form a
    /// probability distribution over leaves.
    #[test]
    fn leaf_distributions_sum_to_one(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_tree(&mut rng);
        let choices = tree.backward_induction().choices;
        let reach = tree.leaf_distribution(&choices).unwrap();
        let total: BigRational = reach.iter().map(|(_, p)| p.clone()).sum();
        prop_assert_eq!(total, BigRational::one());
        prop_assert!(reach.iter().all(|(_, p)| p > &BigRational::zero()));
    }

    /// Profiles aggregated bottom-up from the leaves satisfy every
    /// consistency row by construction.
    #[test]
    fn bottom_up_profiles_are_consistent(seed in any::<u64>(), probs in prop::collection::vec((0i64..=4, 1i64..=4), 6)) {
        let ent = random_hierarchy(seed);
        let leaves = ent.leaf_names().len();
        let rows: Vec<Vec<BigRational>> = probs[..leaves]
            .iter()
            .map(|&(num, den)| {
                let p = rat(num.min(den), den);
                vec![BigRational::one() - &p, p]
            })
            .collect();
        let profile = EntProfile::from_leaves(&ent, rows).unwrap();
        let residual = ent.hierarchical_residual(&profile).unwrap();
        for (node, diff) in &residual.consistency {
            prop_assert!(diff.iter().all(Zero::is_zero), "inconsistent at {}", node);
        }
    }

    /// A positive count, a feasible assignment in the fast matcher, and the
    /// graph-level matching test always agree.
    #[test]
    fn positive_counts_coincide_with_matchings(seed in any::<u64>()) {
        let graph = sample_polygraph(seed, 8);
        let report = graph.count(DEFAULT_DIMENSION_CAP).unwrap();
        prop_assert_eq!(report.count > BigInt::zero(), report.matching_feasible);
        prop_assert_eq!(report.matching_feasible, graph.has_perfect_matching());
    }
}
