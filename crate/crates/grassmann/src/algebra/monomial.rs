use std::fmt;

/// Bit `i - 1` of a mask stands for the generator `x_i`.
pub type Mask = u32;

/// Largest supported number of generators.
pub const MAX_N: usize = 16;

/// A monomial x^α = x_{i₁}⋯x_{i_k} with i₁ < ⋯ < i_k, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial {
    pub mask: Mask,
}

impl Monomial {
    pub fn new(mask: Mask) -> Self {
        Monomial { mask }
    }

    /// Builds x_{i₁}⋯x_{i_k} from 1-based indices, ignoring their order.
    pub fn from_indices(indices: &[usize]) -> Self {
        Monomial { mask: mask_of(indices) }
    }

    pub fn degree(self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        indices(self.mask).collect()
    }

    pub fn contains(self, i: usize) -> bool {
        self.mask & bit(i) != 0
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mask == 0 {
            return write!(f, "1");
        }
        for i in indices(self.mask) {
            write!(f, "x{i}")?;
        }
        Ok(())
    }
}

/// The mask of the single generator `x_i`.
#[inline]
pub fn bit(i: usize) -> Mask {
    1 << (i - 1)
}

/// The mask of x_1⋯x_n.
#[inline]
pub fn full_mask(n: usize) -> Mask {
    if n >= 32 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

pub fn mask_of(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | bit(i))
}

/// The 1-based indices of a mask in ascending order.
pub fn indices(mask: Mask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize + 1;
            m &= m - 1;
            Some(i)
        }
    })
}

/// Whether x^α·x^β = −x^{α∪β} for disjoint α, β: the parity of the number of
/// pairs (a, b) with a ∈ α, b ∈ β and a > b.
#[inline]
pub fn product_sign_negative(alpha: Mask, beta: Mask) -> bool {
    let mut count = 0u32;
    let mut b = beta;
    while b != 0 {
        let low = b.trailing_zeros();
        let above = if low >= 31 { 0 } else { alpha >> (low + 1) };
        count += above.count_ones();
        b &= b - 1;
    }
    count & 1 == 1
}

/// All masks of the given degree inside `universe`, in increasing numeric order.
pub fn subsets_of_degree(universe: Mask, degree: usize) -> Vec<Mask> {
    let mut out = Vec::new();
    let mut sub = universe;
    loop {
        if sub.count_ones() as usize == degree {
            out.push(sub);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & universe;
    }
    out.reverse();
    out
}

/// Binomial coefficient as an exact integer.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Sorts the concatenated letter word by adjacent swaps and counts them.
    fn bubble_sign(alpha: Mask, beta: Mask) -> bool {
        let mut word: Vec<usize> = indices(alpha).chain(indices(beta)).collect();
        let mut swaps = 0;
        for i in 0..word.len() {
            for j in 0..word.len() - 1 - i {
                if word[j] > word[j + 1] {
                    word.swap(j, j + 1);
                    swaps += 1;
                }
            }
        }
        swaps % 2 == 1
    }

    #[test]
    fn sign_matches_letter_swaps() {
        for alpha in 0..64u32 {
            for beta in 0..64u32 {
                if alpha & beta == 0 {
                    assert_eq!(product_sign_negative(alpha, beta), bubble_sign(alpha, beta));
                }
            }
        }
    }

    #[test]
    fn x1x3_times_x2_is_negative() {
        assert!(product_sign_negative(mask_of(&[1, 3]), mask_of(&[2])));
    }

    #[test]
    fn subsets_are_counted_by_binomials() {
        for d in 0..=6 {
            assert_eq!(subsets_of_degree(full_mask(6), d).len() as u64, binomial(6, d));
        }
        assert_eq!(binomial(7, 3), 35);
    }

    #[test]
    fn display_lists_ascending_indices() {
        assert_eq!(Monomial::from_indices(&[3, 1]).to_string(), "x1x3");
        assert_eq!(Monomial::new(0).to_string(), "1");
    }
}
