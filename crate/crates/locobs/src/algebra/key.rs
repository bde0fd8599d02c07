//! Packed monomial keys.
//!
//! A normal monomial `ħ^h · word · M^k` is stored as one `u128`: five bits of
//! exponent per generator (PBW order makes the word an exponent vector),
//! then the mass power and the ħ power as offset 16-bit fields.

use super::generator::Gen;

const BITS: u32 = 5;
const EXP_MAX: u128 = (1 << BITS) - 1;
const MASS_SHIFT: u32 = 80;
const HBAR_SHIFT: u32 = 96;
const OFFSET: i32 = 1 << 15;
pub(crate) const WORD_MASK: u128 = (1u128 << (BITS * Gen::COUNT as u32)) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Key(pub u128);

/// Exponent field of `g`, all ones.
pub(crate) const fn field(g: u8) -> u128 {
    EXP_MAX << (BITS * g as u32)
}

impl Key {
    pub fn new(word: u128, mass: i32, hbar: i32) -> Key {
        debug_assert!(word & !WORD_MASK == 0);
        assert!((-OFFSET..OFFSET).contains(&mass) && (-OFFSET..OFFSET).contains(&hbar), "power out of range");
        Key(word | (((mass + OFFSET) as u128) << MASS_SHIFT) | (((hbar + OFFSET) as u128) << HBAR_SHIFT))
    }

    pub fn word(self) -> u128 {
        self.0 & WORD_MASK
    }

    pub fn mass(self) -> i32 {
        ((self.0 >> MASS_SHIFT) & 0xffff) as i32 - OFFSET
    }

    pub fn hbar(self) -> i32 {
        ((self.0 >> HBAR_SHIFT) & 0xffff) as i32 - OFFSET
    }
}

pub(crate) fn exp(word: u128, g: u8) -> u32 {
    ((word >> (BITS * g as u32)) & EXP_MAX) as u32
}

/// `word · g` when `g` sorts last; panics if an exponent would overflow its field.
pub(crate) fn push(word: u128, g: u8) -> u128 {
    assert!(exp(word, g) < EXP_MAX as u32, "generator exponent overflow");
    word + (1u128 << (BITS * g as u32))
}

pub(crate) fn pop(word: u128, g: u8) -> u128 {
    debug_assert!(exp(word, g) > 0);
    word - (1u128 << (BITS * g as u32))
}

/// Largest generator present.
pub(crate) fn top(word: u128) -> Option<u8> {
    if word == 0 {
        return None;
    }
    let bit = 127 - word.leading_zeros();
    Some((bit / BITS) as u8)
}

pub(crate) fn len(word: u128) -> usize {
    (0..Gen::COUNT as u8).map(|g| exp(word, g) as usize).sum()
}

pub(crate) fn from_gens(gens: &[Gen]) -> u128 {
    gens.iter().fold(0, |w, g| push(w, g.id()))
}

/// Letters in PBW order, with multiplicity.
pub(crate) fn letters(word: u128) -> impl Iterator<Item = Gen> {
    (0..Gen::COUNT as u8).flat_map(move |g| std::iter::repeat_n(Gen::from_id(g), exp(word, g) as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let w = from_gens(&[Gen::c(1), Gen::d(), Gen::p(3), Gen::p(3)]);
        let k = Key::new(w, -2, 3);
        assert_eq!(k.word(), w);
        assert_eq!(k.mass(), -2);
        assert_eq!(k.hbar(), 3);
        assert_eq!(top(w), Some(Gen::p(3).id()));
        assert_eq!(len(w), 4);
        let ls: Vec<Gen> = letters(w).collect();
        assert_eq!(ls, vec![Gen::c(1), Gen::d(), Gen::p(3), Gen::p(3)]);
        assert_eq!(top(pop(pop(w, 14), 14)), Some(4));
    }
}
