//! Sampling games whose stopping time has the law of the independence
//! number of a random tree, plus the Monte-Carlo machinery around them.

mod harness;
mod random;
mod sample;
mod stats;

use thiserror::Error;

pub use harness::{run_trials, run_trials_serial, TrialHistogram};
pub use random::{derive_seed, mix64, Dealer, RandomSource};
pub use sample::{sample_family, sample_uniform_labelled_tree, sample_uniform_rooted_tree, Family};
pub use stats::{chi_square, ks_discrete_normal, tv_distance, ChiSquare, Normalized};

use crate::codec::coupon_alpha;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("sequence exhausted before the game ended")]
    Exhausted,
    #[error("deck multiplicities sum to {sum}, need n - 1 = {expected}")]
    BadDeck { sum: usize, expected: usize },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("empty histogram")]
    EmptyHistogram,
    #[error("observed value {0} has zero expected probability")]
    SupportMismatch(usize),
}

/// Dice-game stopping rule applied to a given throw sequence.
pub fn coupon_read(sequence: &[usize], n: usize) -> Result<usize, GameError> {
    coupon_alpha(sequence.iter().copied(), n).ok_or(GameError::Exhausted)
}

/// Rolls an `n`-sided die until the first `alpha` throws show at least
/// `n - alpha` distinct numbers.
pub fn dice_trial(n: usize, rng: &mut RandomSource) -> usize {
    coupon_alpha(std::iter::repeat_with(|| rng.die(n)), n).expect("an endless stream always stops")
}

/// Card multiplicities `d_1..d_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deck {
    multiplicities: Vec<usize>,
}

impl Deck {
    /// A deck for `n = multiplicities.len()` vertices; the counts must sum
    /// to `n - 1`.
    pub fn new(multiplicities: Vec<usize>) -> Result<Self, GameError> {
        let sum: usize = multiplicities.iter().sum();
        let expected = multiplicities.len().saturating_sub(1);
        if multiplicities.is_empty() || sum != expected {
            return Err(GameError::BadDeck { sum, expected });
        }
        Ok(Deck { multiplicities })
    }

    /// Two cards for each of `1..=m`, on `n = 2m + 1` vertices.
    pub fn full_binary(m: usize) -> Self {
        let mut d = vec![0; 2 * m + 1];
        d[..m].iter_mut().for_each(|x| *x = 2);
        Deck { multiplicities: d }
    }

    pub fn n(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Cards in canonical (sorted) order.
    pub fn cards(&self) -> Vec<usize> {
        self.multiplicities
            .iter()
            .enumerate()
            .flat_map(|(i, &d)| std::iter::repeat_n(i + 1, d))
            .collect()
    }
}

/// Shuffles the deck and reads `alpha` off the deal.
pub fn card_trial(deck: &Deck, rng: &mut RandomSource) -> usize {
    let mut cards = deck.cards();
    rng.shuffle(&mut cards);
    coupon_alpha(cards, deck.n()).expect("n - 1 cards always suffice")
}

/// The card game for full binary trees with internal vertices `1..=m`.
pub fn full_binary_trial(m: usize, rng: &mut RandomSource) -> usize {
    card_trial(&Deck::full_binary(m), rng)
}

/// Deals from `2n` cards `1L, 1R, ..., nL, nR`; distinctness is counted on
/// vertex labels, ignoring the side.
pub fn binary_lr_trial(n: usize, rng: &mut RandomSource) -> usize {
    let mut cards: Vec<usize> = (1..=n).flat_map(|v| [v, v]).collect();
    let mut dealer = Dealer::new(&mut cards);
    coupon_alpha(std::iter::from_fn(|| dealer.deal(rng)).take(n.saturating_sub(1)), n)
        .expect("n - 1 cards always suffice")
}

/// Shuffles `n` red cards numbered `1..=n` with `n` black cards and returns
/// the smallest `alpha` such that red cards `1..=alpha` lie in at least
/// `n - alpha` distinct runs of consecutive red cards.
pub fn plane_trial(n: usize, rng: &mut RandomSource) -> usize {
    plane_alpha(&plane_deal(n, rng), n)
}

/// A shuffled plane deck: `0` is a black card, `k >= 1` the red card `k`.
pub fn plane_deal(n: usize, rng: &mut RandomSource) -> Vec<usize> {
    let mut cards: Vec<usize> = (1..=n).chain(std::iter::repeat_n(0, n)).collect();
    rng.shuffle(&mut cards);
    cards
}

/// The plane-game reading rule on a fixed deal.
pub fn plane_alpha(deal: &[usize], n: usize) -> usize {
    let mut block_of = vec![0usize; n + 1];
    let mut block = 0;
    let mut in_run = false;
    for &card in deal {
        if card == 0 {
            in_run = false;
        } else {
            if !in_run {
                block += 1;
                in_run = true;
            }
            block_of[card] = block;
        }
    }
    coupon_alpha((1..=n).map(|k| block_of[k]), n).expect("alpha = n always qualifies")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coupon_read_examples() {
        assert_eq!(coupon_read(&[1, 2, 4], 4), Ok(2));
        for x in 1..=4 {
            assert_eq!(coupon_read(&[2, 2, x], 4), Ok(3));
        }
        assert_eq!(coupon_read(&[1], 2), Ok(1));
        assert_eq!(coupon_read(&[], 1), Ok(1));
        assert_eq!(coupon_read(&[3, 3], 4), Err(GameError::Exhausted));
    }

    #[test]
    fn decks() {
        assert_eq!(Deck::new(vec![3, 0, 0, 0]).unwrap().cards(), vec![1, 1, 1]);
        assert_eq!(Deck::new(vec![3, 1, 0, 0]), Err(GameError::BadDeck { sum: 4, expected: 3 }));
        assert!(Deck::new(vec![]).is_err());
        assert_eq!(Deck::full_binary(2).cards(), vec![1, 1, 2, 2]);
        assert_eq!(Deck::full_binary(2).n(), 5);
    }

    #[test]
    fn degenerate_games() {
        let mut rng = RandomSource::new(5);
        let star = Deck::new(vec![3, 0, 0, 0]).unwrap();
        for _ in 0..20 {
            assert_eq!(card_trial(&star, &mut rng), 3);
            assert_eq!(full_binary_trial(1, &mut rng), 2);
            assert_eq!(dice_trial(1, &mut rng), 1);
        }
    }

    #[test]
    fn plane_rule_on_fixed_deals() {
        // Runs: [1 2] [3]; red cards 1 touch one run, need n - 1 = 2.
        assert_eq!(plane_alpha(&[1, 2, 0, 3, 0, 0], 3), 2);
        // One run holding everything.
        assert_eq!(plane_alpha(&[0, 3, 1, 2, 0, 0], 3), 2);
        // Three singleton runs: card 1 alone touches 1 < 2; cards 1,2 touch 2 >= 1.
        assert_eq!(plane_alpha(&[1, 0, 2, 0, 3, 0], 3), 2);
        assert_eq!(plane_alpha(&[1, 0], 1), 1);
    }
}
