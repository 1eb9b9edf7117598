//! Fixed-output checks against independent reference implementations.

use std::collections::HashMap;

use srtchat::matcher::{bow_distance, levenshtein};
use srtchat::text::{normalize, stem, Norm, TermVector};

/// Straight from the recursive definition, memoized.
fn reference_levenshtein(
    a: &[char],
    b: &[char],
    memo: &mut HashMap<(usize, usize), usize>,
) -> usize {
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    if let Some(&d) = memo.get(&(a.len(), b.len())) {
        return d;
    }
    let cost = usize::from(a[0] != b[0]);
    let d = (reference_levenshtein(&a[1..], b, memo) + 1)
        .min(reference_levenshtein(a, &b[1..], memo) + 1)
        .min(reference_levenshtein(&a[1..], &b[1..], memo) + cost);
    memo.insert((a.len(), b.len()), d);
    d
}

fn strings_over_ab(max_len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut frontier = vec![String::new()];
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|s| [format!("{s}a"), format!("{s}b")])
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

#[test]
fn levenshtein_matches_recursive_definition() {
    let words = strings_over_ab(5);
    assert_eq!(words.len(), 63);
    let mut pairs = 0;
    for a in &words {
        for b in &words {
            let (ac, bc): (Vec<char>, Vec<char>) = (a.chars().collect(), b.chars().collect());
            let expected = reference_levenshtein(&ac, &bc, &mut HashMap::new());
            assert_eq!(levenshtein(a, b), expected, "{a:?} {b:?}");
            pairs += 1;
        }
    }
    assert_eq!(pairs, 3969);
}

#[test]
fn levenshtein_known_values() {
    assert_eq!(levenshtein("kitten", "sitting"), 3);
    assert_eq!(levenshtein("", "abc"), 3);
    assert_eq!(levenshtein("hello", "hello"), 0);
    assert_eq!(levenshtein("Hello", "hELLO"), 0);
    assert_eq!(levenshtein("flaw", "lawn"), 2);
    assert_eq!(levenshtein("café", "cafe"), 1);
}

#[test]
fn porter_matches_frozen_vocabulary() {
    let table = include_str!("data/porter_vocab.tsv");
    let mut checked = 0;
    let mut wrong = Vec::new();
    for line in table
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
    {
        let (word, expected) = line.split_once('\t').expect("word<TAB>stem");
        let got = stem(word);
        if got != expected {
            wrong.push(format!("{word}: got {got}, want {expected}"));
        }
        checked += 1;
    }
    assert!(checked > 8000, "vocabulary truncated: {checked}");
    assert!(
        wrong.is_empty(),
        "{} mismatches:\n{}",
        wrong.len(),
        wrong.join("\n")
    );
}

#[test]
fn bow_hand_computed() {
    let v = |pairs: &[(&str, u32)]| TermVector::from_counts(pairs.iter().copied());
    assert_eq!(
        bow_distance(&v(&[("a", 1)]), &v(&[("b", 1)]), Norm::L1),
        2.0
    );
    assert_eq!(
        bow_distance(&v(&[("pick", 3)]), &v(&[("pick", 1)]), Norm::L1),
        0.0
    );
    assert_eq!(bow_distance(&v(&[]), &v(&[]), Norm::L2), 0.0);
    assert_eq!(bow_distance(&v(&[("a", 2)]), &v(&[]), Norm::L1), 1.0);
    assert_eq!(bow_distance(&v(&[("a", 2)]), &v(&[]), Norm::L2), 1.0);
    // {a:1/2, b:1/2} vs {a:1}: |1/2 - 1| + |1/2 - 0| = 1.
    assert_eq!(
        bow_distance(&v(&[("a", 1), ("b", 1)]), &v(&[("a", 1)]), Norm::L1),
        1.0
    );
    // L2: (1/√2, 1/√2) vs (1, 0).
    let expected = ((1.0 - 0.5f64.sqrt()).powi(2) + 0.5).sqrt();
    let got = bow_distance(&v(&[("a", 1), ("b", 1)]), &v(&[("a", 1)]), Norm::L2);
    assert!((got - expected).abs() < 1e-12, "{got} vs {expected}");
    let n = normalize(&v(&[("x", 3), ("y", 1)]), Norm::L1);
    assert_eq!((n.get("x"), n.get("y")), (Some(0.75), Some(0.25)));
}
