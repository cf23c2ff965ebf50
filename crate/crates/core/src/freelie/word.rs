//! Words over the alphabet `1..=n` and the Lyndon words among them.

use crate::error::{Error, Result};

/// Letters are 1-based generator indices.
pub type Word = Vec<u8>;

pub const MAX_GENERATORS: usize = 6;
pub const MAX_DEGREE: usize = 8;

pub fn check_caps(n: usize, degree: usize) -> Result<()> {
    if n == 0 || n > MAX_GENERATORS {
        return Err(Error::CapExceeded(format!(
            "free Lie algebras support 1..={MAX_GENERATORS} generators, got {n}"
        )));
    }
    if degree == 0 || degree > MAX_DEGREE {
        return Err(Error::CapExceeded(format!(
            "degrees 1..={MAX_DEGREE} are supported, got {degree}"
        )));
    }
    Ok(())
}

/// Strictly smaller than each of its proper rotations.
pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|k| w[k..].iter().chain(&w[..k]).gt(w.iter()))
}

/// Lyndon words of length `1..=max_len` over `1..=n` in lexicographic order
/// (Duval's generation).
pub fn lyndon_words_up_to(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if n == 0 || max_len == 0 {
        return out;
    }
    let n = n as u8;
    let mut w: Word = vec![1];
    while !w.is_empty() {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&n) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

/// Lyndon words of exactly length `degree`, lexicographically sorted.
pub fn lyndon_basis(n: usize, degree: usize) -> Result<Vec<Word>> {
    check_caps(n, degree)?;
    Ok(lyndon_words_up_to(n, degree).into_iter().filter(|w| w.len() == degree).collect())
}

/// `w = u v` with `v` the longest proper suffix that is Lyndon. For a Lyndon
/// word of length at least 2 both halves are Lyndon and `u < v`.
pub fn standard_factorization(w: &[u8]) -> (&[u8], &[u8]) {
    debug_assert!(w.len() >= 2);
    let split = (1..w.len()).find(|&k| is_lyndon(&w[k..])).expect("last letter is Lyndon");
    (&w[..split], &w[split..])
}

pub fn word_to_string(w: &[u8]) -> String {
    w.iter().map(|d| char::from(b'0' + d)).collect()
}

pub fn word_from_str(s: &str, n: usize) -> Result<Word> {
    let w: Option<Word> = s
        .chars()
        .map(|c| c.to_digit(10).map(|d| d as u8).filter(|&d| d >= 1 && (d as usize) <= n))
        .collect();
    match w {
        Some(w) if !w.is_empty() => Ok(w),
        _ => Err(Error::InvalidInput(format!("`{s}` is not a word over 1..={n}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Enumerate every word and keep the Lyndon ones.
    fn brute_force(n: usize, d: usize) -> Vec<Word> {
        let total = n.pow(d as u32);
        let mut out: Vec<Word> = (0..total)
            .map(|mut idx| {
                let mut w = vec![0u8; d];
                for pos in (0..d).rev() {
                    w[pos] = (idx % n) as u8 + 1;
                    idx /= n;
                }
                w
            })
            .filter(|w| is_lyndon(w))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn basis_examples() {
        assert_eq!(lyndon_basis(4, 1).unwrap().len(), 4);
        assert_eq!(lyndon_basis(2, 3).unwrap(), vec![vec![1, 1, 2], vec![1, 2, 2]]);
        assert_eq!(lyndon_basis(3, 2).unwrap(), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn generation_matches_enumeration() {
        for n in 1..=4 {
            for d in 1..=6 {
                assert_eq!(lyndon_basis(n, d).unwrap(), brute_force(n, d), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn caps_are_enforced() {
        assert!(lyndon_basis(7, 2).is_err());
        assert!(lyndon_basis(2, 9).is_err());
        assert!(lyndon_basis(0, 1).is_err());
        assert!(lyndon_basis(2, 0).is_err());
    }

    #[test]
    fn standard_factorizations() {
        assert_eq!(standard_factorization(&[1, 1, 2]), (&[1u8][..], &[1u8, 2][..]));
        assert_eq!(standard_factorization(&[1, 2, 2]), (&[1u8, 2][..], &[2u8][..]));
        assert_eq!(standard_factorization(&[1, 2, 1, 3]), (&[1u8, 2][..], &[1u8, 3][..]));
    }

    #[test]
    fn word_text_round_trip() {
        assert_eq!(word_to_string(&[1, 1, 2]), "112");
        assert_eq!(word_from_str("112", 2).unwrap(), vec![1, 1, 2]);
        assert!(word_from_str("13", 2).is_err());
        assert!(word_from_str("", 2).is_err());
    }
}
