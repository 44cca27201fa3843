//! Basis-state indexing convention.
//!
//! Mode/qubit γ occupies bit γ of the integer index (contribution b_γ·2^γ).
//! Display strings print b_0 first, so |b_0 b_1 ⋯⟩ reads left to right.

use crate::error::{Error, Result};

/// Renders a basis index as a bitstring with b_0 first.
pub fn bitstring(index: u64, width: usize) -> String {
    (0..width).map(|g| if (index >> g) & 1 == 1 { '1' } else { '0' }).collect()
}

/// Parses a b_0-first bitstring back to an index.
pub fn parse_bitstring(s: &str) -> Result<(u64, usize)> {
    if s.is_empty() || s.len() > 64 {
        return Err(Error::Schema(format!("bad bitstring length {}", s.len())));
    }
    let mut index = 0u64;
    for (g, ch) in s.chars().enumerate() {
        match ch {
            '0' => {}
            '1' => index |= 1 << g,
            _ => return Err(Error::Schema(format!("bad bitstring character {ch:?}"))),
        }
    }
    Ok((index, s.len()))
}

/// Key that sorts indices in lexicographic order of their display strings
/// (b_0 is the most significant comparison position).
pub fn lex_key(index: u64, width: usize) -> u64 {
    index.reverse_bits() >> (64 - width)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        assert_eq!(bitstring(0b1100, 4), "0011");
        assert_eq!(parse_bitstring("0011").unwrap(), (0b1100, 4));
        assert_eq!(parse_bitstring("10").unwrap(), (0b01, 2));
    }

    #[test]
    fn lex_order_matches_string_order() {
        let width = 4;
        let mut by_key: Vec<u64> = (0..16).collect();
        by_key.sort_by_key(|&i| lex_key(i, width));
        let mut by_string: Vec<u64> = (0..16).collect();
        by_string.sort_by_key(|&i| bitstring(i, width));
        assert_eq!(by_key, by_string);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_bitstring("01x").is_err());
        assert!(parse_bitstring("").is_err());
    }
}
