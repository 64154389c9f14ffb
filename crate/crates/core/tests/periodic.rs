mod suites;

use misere::games::{parse_octal_code, Alphabet, Outcome};
use misere::periodic::{
    ap_normalize, ap_outcome, ap_phi, ap_phi_position, parse_ap_element, tw_values, ApElement, ApGame, ApGenerator,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn oracle_closed_form_and_quotient_agree_on_0_26() {
    suites::three_way(ApGame::G026, 3, 25);
}

#[test]
fn oracle_closed_form_and_quotient_agree_on_4_7() {
    suites::three_way(ApGame::G47, 4, 16);
}

#[test]
fn closed_form_matches_quotient_on_four_heaps() {
    for (game, max) in [(ApGame::G026, 30), (ApGame::G47, 16)] {
        for x in suites::small_positions(4, max) {
            let quotient = if ap_phi_position(game, &x).in_p() { Outcome::P } else { Outcome::N };
            assert_eq!(ap_outcome(game, &x), quotient, "{game} {x}");
        }
    }
}

#[test]
fn grundy_values_match_mex() {
    for (game, n) in [(ApGame::G026, 64), (ApGame::G47, 24)] {
        let code = parse_octal_code(game.code()).unwrap();
        let alphabet = Alphabet::for_code(&code, n);
        let g = misere::games::generator_grundy_values(&alphabet);
        for k in 1..=n {
            assert_eq!(tw_values(game, k).g, g[k - 1], "{game} heap {k}");
        }
    }
}

fn a_b(game: ApGame, a: u32, b: u64) -> ApElement {
    let gens: Vec<ApGenerator> = std::iter::repeat_n(ApGenerator::A, a as usize)
        .chain(std::iter::repeat_n(ApGenerator::B, b as usize))
        .collect();
    ap_normalize(game, &gens).unwrap()
}

#[test]
fn bridge_identities() {
    for game in ApGame::ALL {
        for k in 1..=40 {
            let v = tw_values(game, k);
            let lead = a_b(game, v.g, v.t);
            for k2 in k..=40 {
                let lhs = ap_phi(game, k).mul(&ap_phi(game, k2)).unwrap();
                let rhs = lead.mul(&ap_phi(game, k2)).unwrap();
                assert_eq!(lhs, rhs, "{game}: H{k} H{k2}");
            }
            for m in v.w..=v.w + 20 {
                let lhs = a_b(game, 0, m).mul(&ap_phi(game, k)).unwrap();
                assert_eq!(lhs, a_b(game, v.g, m + v.t), "{game}: b^{m} H{k}");
            }
        }
    }
}

#[test]
fn every_pair_of_normal_forms_is_separated() {
    suites::every_pair_of_normal_forms_is_separated();
}

fn random_generator(game: ApGame, rng: &mut StdRng) -> ApGenerator {
    match rng.gen_range(0..if game == ApGame::G47 { 4 } else { 3 }) {
        0 => ApGenerator::A,
        1 => ApGenerator::B,
        2 => ApGenerator::Family(rng.gen_range(0..8)),
        _ => ApGenerator::C,
    }
}

/// Multiplies by splitting the product at random points.
fn tree_product(game: ApGame, gens: &[ApGenerator], rng: &mut StdRng) -> ApElement {
    match gens.len() {
        0 => ApElement::identity(game),
        1 => ap_normalize(game, gens).unwrap(),
        n => {
            let cut = rng.gen_range(1..n);
            tree_product(game, &gens[..cut], rng)
                .mul(&tree_product(game, &gens[cut..], rng))
                .unwrap()
        }
    }
}

#[test]
fn normalization_is_confluent() {
    let mut rng = StdRng::seed_from_u64(26);
    for trial in 0..10_000 {
        let game = ApGame::ALL[trial % 2];
        let len = rng.gen_range(0..10);
        let mut gens: Vec<ApGenerator> = (0..len).map(|_| random_generator(game, &mut rng)).collect();
        let left = ap_normalize(game, &gens).unwrap();
        let tree = tree_product(game, &gens, &mut rng);
        gens.reverse();
        let right = ap_normalize(game, &gens).unwrap();
        assert_eq!(left, tree, "{game} {gens:?}");
        assert_eq!(left, right, "{game} {gens:?}");
    }
}

fn generator_word(game: ApGame) -> impl Strategy<Value = Vec<ApGenerator>> {
    let kinds = if game == ApGame::G47 { 4 } else { 3 };
    prop::collection::vec((0..kinds, 0u64..12), 0..8).prop_map(|v| {
        v.into_iter()
            .map(|(k, n)| match k {
                0 => ApGenerator::A,
                1 => ApGenerator::B,
                2 => ApGenerator::Family(n),
                _ => ApGenerator::C,
            })
            .collect()
    })
}

fn element(game: ApGame) -> impl Strategy<Value = ApElement> {
    generator_word(game).prop_map(move |w| ap_normalize(game, &w).unwrap())
}

fn game() -> impl Strategy<Value = ApGame> {
    prop_oneof![Just(ApGame::G026), Just(ApGame::G47)]
}

proptest! {
    #[test]
    fn products_commute_and_associate(
        (x, y, z) in game().prop_flat_map(|g| (element(g), element(g), element(g)))
    ) {
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(x.mul(&ApElement::identity(x.game)).unwrap(), x);
    }

    #[test]
    fn rendered_elements_parse_back(x in game().prop_flat_map(element)) {
        prop_assert_eq!(parse_ap_element(x.game, &x.to_string()).unwrap(), x);
    }
}
