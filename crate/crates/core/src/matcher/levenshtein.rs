/// Edit distance between the lowercased inputs, counted over Unicode scalar
/// values: the fewest single-character insertions, deletions and
/// substitutions turning `a` into `b`.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().flat_map(char::to_lowercase).collect();
    let b: Vec<char> = b.chars().flat_map(char::to_lowercase).collect();
    let mut row = Vec::new();
    bounded(&a, &b, usize::MAX, &mut row).expect("unbounded search always completes")
}

/// Two-row DP that gives up once every cell of a row exceeds `bound`.
///
/// Returns `Some(d)` iff `d <= bound`. `row` is scratch space, reused across
/// calls to avoid an allocation per comparison.
pub(crate) fn bounded(a: &[char], b: &[char], bound: usize, row: &mut Vec<usize>) -> Option<usize> {
    // Keep the row over the shorter string.
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if long.len() - short.len() > bound {
        return None;
    }
    if short.is_empty() {
        return Some(long.len());
    }

    row.clear();
    row.extend(0..=short.len());
    for (i, &lc) in long.iter().enumerate() {
        let mut diag = row[0];
        row[0] = i + 1;
        let mut row_min = row[0];
        for (j, &sc) in short.iter().enumerate() {
            let above = row[j + 1];
            let cost = if lc == sc { diag } else { diag + 1 };
            let best = cost.min(above + 1).min(row[j] + 1);
            diag = above;
            row[j + 1] = best;
            row_min = row_min.min(best);
        }
        if row_min > bound {
            return None;
        }
    }
    let d = row[short.len()];
    (d <= bound).then_some(d)
}
