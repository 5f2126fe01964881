//! Binary odometers ("adding machines") on truncated Cantor space: the
//! +1-with-carry map on all `L` stored bits, and its truncations acting on
//! the first `n` bits only.

use serde::{Deserialize, Serialize};

use crate::space::CantorWord;
use crate::{Error, Result};

/// How much of the word the odometer acts on. Serializes as the string
/// `"full"` or as the plain truncation index `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// +1 with carry across all stored bits; a carry off the end is dropped
    /// and the evaluation is flagged as precision-saturated.
    Full,
    /// +1 with carry on the first `n` bits only (carry out of bit `n` is
    /// discarded by definition); the remaining bits are left unchanged.
    FirstN(usize),
}

impl Serialize for Truncation {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Truncation::Full => ser.serialize_str("full"),
            Truncation::FirstN(n) => ser.serialize_u64(*n as u64),
        }
    }
}

impl<'de> Deserialize<'de> for Truncation {
    fn deserialize<D: serde::Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Truncation, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Truncation;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("\"full\" or a positive truncation index")
            }

            fn visit_u64<E: serde::de::Error>(self, n: u64) -> std::result::Result<Truncation, E> {
                if n == 0 {
                    return Err(E::custom("truncation index must be positive"));
                }
                Ok(Truncation::FirstN(n as usize))
            }

            fn visit_str<E: serde::de::Error>(self, s: &str) -> std::result::Result<Truncation, E> {
                if s == "full" {
                    Ok(Truncation::Full)
                } else {
                    Err(E::custom(format!("expected \"full\", got {s:?}")))
                }
            }
        }
        de.deserialize_any(V)
    }
}

/// The adding machine `x -> x + 1` in base 2 with carry, least significant
/// bit first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AddingMachineMap {
    truncation: Truncation,
}

/// Result of one odometer step; `saturated` marks a carry dropped at the
/// precision boundary of a full-width step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OdometerStep {
    pub word: CantorWord,
    pub saturated: bool,
}

impl AddingMachineMap {
    pub fn full() -> AddingMachineMap {
        AddingMachineMap { truncation: Truncation::Full }
    }

    pub fn first_n(n: usize) -> Result<AddingMachineMap> {
        if n == 0 {
            return Err(Error::Domain("truncation index must be positive".into()));
        }
        Ok(AddingMachineMap { truncation: Truncation::FirstN(n) })
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn evaluate(&self, x: &CantorWord) -> Result<OdometerStep> {
        let mut word = x.clone();
        let saturated = self.advance(&mut word)?;
        Ok(OdometerStep { word, saturated })
    }

    /// In-place step; returns whether the carry saturated (full maps only —
    /// truncated maps drop the carry by definition, which is not a
    /// precision loss).
    pub fn advance(&self, word: &mut CantorWord) -> Result<bool> {
        let len = word.len();
        let active = match self.truncation {
            Truncation::Full => len,
            Truncation::FirstN(n) => {
                if n > len {
                    return Err(Error::Domain(format!(
                        "truncation {n} exceeds word length {len}"
                    )));
                }
                n
            }
        };
        let bits = word.bits_mut();
        for bit in bits.iter_mut().take(active) {
            if *bit == 0 {
                *bit = 1;
                return Ok(false);
            }
            *bit = 0;
        }
        // Carry ran off the active region.
        Ok(matches!(self.truncation, Truncation::Full))
    }

    /// `k`-fold iterate; reports whether any step saturated.
    pub fn iterate(&self, x: &CantorWord, k: usize) -> Result<OdometerStep> {
        let mut word = x.clone();
        let mut saturated = false;
        for _ in 0..k {
            saturated |= self.advance(&mut word)?;
        }
        Ok(OdometerStep { word, saturated })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> CantorWord {
        CantorWord::parse(s).unwrap()
    }

    #[test]
    fn full_step_carries() {
        // Little-endian: 111000 encodes 7; 7 + 1 = 8 = 000100.
        let f = AddingMachineMap::full();
        let step = f.evaluate(&word("111000")).unwrap();
        assert_eq!(step.word, word("000100"));
        assert!(!step.saturated);
    }

    #[test]
    fn saturation_is_flagged() {
        let f = AddingMachineMap::full();
        let step = f.evaluate(&word("1111")).unwrap();
        assert_eq!(step.word, word("0000"));
        assert!(step.saturated);
    }

    #[test]
    fn truncated_step_leaves_tail_unchanged() {
        let f = AddingMachineMap::first_n(3).unwrap();
        let step = f.evaluate(&word("110101")).unwrap();
        // First 3 bits encode 3; 3 + 1 = 4 = 001; tail 101 untouched.
        assert_eq!(step.word, word("001101"));
        assert!(!step.saturated);
        // Carry out of the active region is dropped silently.
        let wrap = f.evaluate(&word("111101")).unwrap();
        assert_eq!(wrap.word, word("000101"));
        assert!(!wrap.saturated);
    }

    #[test]
    fn truncated_map_has_period_two_to_the_n() {
        // Iterating 2^3 = 8 times returns every word to itself; fewer moves
        // at least one word.
        let f = AddingMachineMap::first_n(3).unwrap();
        for code in 0u32..64 {
            let bits: Vec<u8> = (0..6).map(|i| ((code >> i) & 1) as u8).collect();
            let w = CantorWord::new(bits).unwrap();
            let back = f.iterate(&w, 8).unwrap();
            assert_eq!(back.word, w);
        }
        for k in 1..8 {
            let moved = (0u32..64).any(|code| {
                let bits: Vec<u8> = (0..6).map(|i| ((code >> i) & 1) as u8).collect();
                let w = CantorWord::new(bits).unwrap();
                f.iterate(&w, k).unwrap().word != w
            });
            assert!(moved, "period divides {k}?");
        }
    }

    #[test]
    fn truncation_beyond_length_is_rejected() {
        let f = AddingMachineMap::first_n(9).unwrap();
        assert!(f.evaluate(&word("0000")).is_err());
    }
}
