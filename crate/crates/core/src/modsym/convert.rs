use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::congruence::Mat2;
use crate::triangle::Letter;

fn letter_lift(l: Letter) -> Mat2 {
    let m = |v: [i64; 4]| v.map(BigInt::from);
    match l {
        Letter::Sigma => m([0, -1, 1, 0]),
        Letter::Tau(1) => m([1, -1, 1, 0]),
        Letter::Tau(_) => m([0, -1, 1, -1]),
    }
}

fn push_reduced(word: &mut Vec<Letter>, l: Letter) {
    match (word.last().copied(), l) {
        (Some(Letter::Sigma), Letter::Sigma) => {
            word.pop();
        }
        (Some(Letter::Tau(a)), Letter::Tau(b)) => {
            word.pop();
            let k = (a + b) % 3;
            if k != 0 {
                word.push(Letter::Tau(k));
            }
        }
        _ => word.push(l),
    }
}

/// Letters of `U^q` with `U = [[1,1],[0,1]] = ±τσ` (up to sign).
fn push_translation(word: &mut Vec<Letter>, q: &BigInt) {
    let count = q.abs();
    let mut i = BigInt::zero();
    while i < count {
        if q.is_positive() {
            push_reduced(word, Letter::Tau(1));
            push_reduced(word, Letter::Sigma);
        } else {
            push_reduced(word, Letter::Sigma);
            push_reduced(word, Letter::Tau(2));
        }
        i += 1;
    }
}

/// Writes `g ∈ SL₂(Z)` as `±` the letter-wise lift of a reduced word in
/// `σ, τ` of `Δ₃`; the flag is set for the minus sign.
pub fn sl2z_word(g: &Mat2) -> (Vec<Letter>, bool) {
    let mut word = Vec::new();
    let mut h = g.clone();
    while !h[2].is_zero() {
        let q = h[0].div_floor(&h[2]);
        h[0] = &h[0] - &q * &h[2];
        h[1] = &h[1] - &q * &h[3];
        push_translation(&mut word, &q);
        push_reduced(&mut word, Letter::Sigma);
        // h ← S⁻¹h
        h = [h[2].clone(), h[3].clone(), -&h[0], -&h[1]];
    }
    // h = [[a, b], [0, a]] with a = ±1
    let shift = &h[0] * &h[1];
    push_translation(&mut word, &shift);
    let prod = word_matrix(&word);
    let negated = prod[0] != g[0] || prod[1] != g[1];
    debug_assert!(
        (!negated && prod == *g) || (negated && prod.iter().zip(g).all(|(x, y)| *x == -y)),
        "word decomposition"
    );
    (word, negated)
}

/// The letter-wise integer lift of a word in `σ, τ` of `Δ₃`.
pub(crate) fn word_matrix(word: &[Letter]) -> Mat2 {
    word.iter()
        .fold([1, 0, 0, 1].map(BigInt::from), |acc, &l| mat_mul(&acc, &letter_lift(l)))
}

pub(crate) fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [
        &a[0] * &b[0] + &a[1] * &b[2],
        &a[0] * &b[1] + &a[1] * &b[3],
        &a[2] * &b[0] + &a[3] * &b[2],
        &a[2] * &b[1] + &a[3] * &b[3],
    ]
}

pub(crate) fn is_sl2(g: &Mat2) -> bool {
    (&g[0] * &g[3] - &g[1] * &g[2]).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn words_multiply_back(a in -500i64..500, b in -500i64..500, t in -20i64..20) {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let e = a.extended_gcd(&b);
            prop_assume!(e.gcd.is_one());
            // a·x + b·y = 1 makes [[x + tb, at − y], [b, a]] unimodular
            let g: Mat2 = [e.x.clone() + &b * t, &a * t - &e.y, b.clone(), a.clone()];
            prop_assume!(is_sl2(&g));
            let (w, neg) = sl2z_word(&g);
            let prod = w.iter().fold([1, 0, 0, 1].map(BigInt::from), |acc, &l| mat_mul(&acc, &letter_lift(l)));
            let expect: Mat2 = if neg { g.clone().map(|x| -x) } else { g.clone() };
            prop_assert_eq!(prod, expect);
            // reduced
            prop_assert!(w.windows(2).all(|p| !matches!(p, [Letter::Sigma, Letter::Sigma] | [Letter::Tau(_), Letter::Tau(_)])));
        }
    }

    #[test]
    fn small_words() {
        let id = [1, 0, 0, 1].map(BigInt::from);
        assert_eq!(sl2z_word(&id), (vec![], false));
        let minus = [-1, 0, 0, -1].map(BigInt::from);
        assert_eq!(sl2z_word(&minus), (vec![], true));
        let s = [0, -1, 1, 0].map(BigInt::from);
        assert_eq!(sl2z_word(&s), (vec![Letter::Sigma], false));
    }
}
