//! Binary words up to rotation: necklace classes, densities and runs.

use num_bigint::BigInt;

use super::rational::Rational;

/// Smallest rotation in lexicographic order.
pub fn canonical_rotation(word: &[u8]) -> Vec<u8> {
    (0..word.len().max(1))
        .map(|k| word.iter().cycle().skip(k).take(word.len()).copied().collect::<Vec<u8>>())
        .min()
        .unwrap_or_default()
}

/// A word is primitive when it is not a proper power of a shorter word.
pub fn is_primitive(word: &[u8]) -> bool {
    let n = word.len();
    (1..n).filter(|d| n % d == 0).all(|d| word.chunks(d).any(|c| c != &word[..d]))
}

pub fn complement(word: &[u8]) -> Vec<u8> {
    word.iter().map(|&b| 1 - b).collect()
}

/// Lyndon words of length exactly `len` in lexicographic order (Duval's generator).
///
/// These are the canonical representatives of the primitive rotation classes.
pub fn lyndon_words(len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if len == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == len {
            out.push(w.clone());
        }
        // extend periodically to length `len`, then increment the last non-maximal letter
        let m = w.len();
        while w.len() < len {
            let c = w[w.len() - m];
            w.push(c);
        }
        while w.last() == Some(&1) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last = 1,
            None => break,
        }
    }
    out
}

/// One canonical period word per primitive rotation class of length `len`.
///
/// With `dedupe_complement`, a class and its bitwise complement are merged and the
/// representative with the smaller value (equivalently the lexicographically smaller) is kept.
pub fn enumerate_necklace_classes(len: usize, dedupe_complement: bool) -> Vec<Vec<u8>> {
    let words = lyndon_words(len);
    if !dedupe_complement {
        return words;
    }
    words
        .into_iter()
        .filter(|w| {
            let partner = canonical_rotation(&complement(w));
            *w <= partner
        })
        .collect()
}

/// Fraction of cyclic positions where the bit changes.
pub fn transition_density(period: &[u8]) -> Rational {
    assert!(!period.is_empty(), "empty period");
    let n = period.len();
    let changes = (0..n).filter(|&i| period[i] != period[(i + 1) % n]).count();
    Rational::new(BigInt::from(changes), BigInt::from(n))
}

/// Longest run of equal bits, read cyclically. A constant word has run `usize::MAX`.
pub fn max_cyclic_run(period: &[u8]) -> usize {
    let n = period.len();
    if n == 0 || period.iter().all(|&b| b == period[0]) {
        return usize::MAX;
    }
    // start right after a change so runs do not wrap
    let start = (0..n).find(|&i| period[i] != period[(i + n - 1) % n]).unwrap();
    let mut best = 0;
    let mut run = 0;
    let mut prev = None;
    for k in 0..n {
        let b = period[(start + k) % n];
        run = if prev == Some(b) { run + 1 } else { 1 };
        best = best.max(run);
        prev = Some(b);
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::expansion::{format_bits, parse_bits};
    use crate::exact::rational::rat;
    use std::collections::BTreeSet;

    fn strs(words: &[Vec<u8>]) -> Vec<String> {
        words.iter().map(|w| format_bits(w)).collect()
    }

    /// Brute force: all 2^L words, keep primitive ones, collapse by canonical rotation.
    fn brute_force_classes(len: usize, dedupe: bool) -> BTreeSet<Vec<u8>> {
        let mut classes = BTreeSet::new();
        for code in 0u32..(1 << len) {
            let w: Vec<u8> = (0..len).rev().map(|i| ((code >> i) & 1) as u8).collect();
            if !is_primitive(&w) {
                continue;
            }
            let c = canonical_rotation(&w);
            let rep = if dedupe { c.clone().min(canonical_rotation(&complement(&c))) } else { c };
            classes.insert(rep);
        }
        classes
    }

    #[test]
    fn length_five_and_seven() {
        assert_eq!(strs(&enumerate_necklace_classes(5, true)), ["00001", "00011", "00101"]);
        assert_eq!(enumerate_necklace_classes(7, true).len(), 9);
        assert_eq!(enumerate_necklace_classes(7, false).len(), 18);
        assert_eq!(strs(&enumerate_necklace_classes(1, true)), ["0"]);
        assert_eq!(strs(&enumerate_necklace_classes(1, false)), ["0", "1"]);
        let seven = strs(&enumerate_necklace_classes(7, true));
        assert!(seven.contains(&"0001011".to_string()) && seven.contains(&"0001101".to_string()));
    }

    #[test]
    fn matches_brute_force_up_to_twelve() {
        for len in 1..=12 {
            for dedupe in [false, true] {
                let fast: BTreeSet<Vec<u8>> = enumerate_necklace_classes(len, dedupe).into_iter().collect();
                assert_eq!(fast, brute_force_classes(len, dedupe), "len {len} dedupe {dedupe}");
            }
        }
    }

    #[test]
    fn densities() {
        assert_eq!(transition_density(&parse_bits("01").unwrap()), rat(1, 1));
        assert_eq!(transition_density(&parse_bits("0").unwrap()), rat(0, 1));
        assert_eq!(transition_density(&parse_bits("0000001").unwrap()), rat(2, 7));
    }

    #[test]
    fn runs() {
        assert_eq!(max_cyclic_run(&parse_bits("01").unwrap()), 1);
        assert_eq!(max_cyclic_run(&parse_bits("0011").unwrap()), 2);
        assert_eq!(max_cyclic_run(&parse_bits("0110").unwrap()), 2);
        assert_eq!(max_cyclic_run(&parse_bits("1001110").unwrap()), 3);
        assert_eq!(max_cyclic_run(&parse_bits("0").unwrap()), usize::MAX);
    }

    #[test]
    fn primitivity() {
        assert!(is_primitive(&parse_bits("0").unwrap()));
        assert!(!is_primitive(&parse_bits("0101").unwrap()));
        assert!(!is_primitive(&parse_bits("00").unwrap()));
        assert!(is_primitive(&parse_bits("0010").unwrap()));
    }
}
